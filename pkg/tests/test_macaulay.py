from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quotfit import macaulay_growth, macaulay_rep, monomial_basis
from quotfit.macaulay import monomials_of_degree


def brute_force_rep(n, d):
    """All strictly decreasing (m_d > ... > m_1 >= 0) with the right sum and m_i >= i where used."""
    best = None
    for length in range(0, d + 1):
        for ms in combinations(range(n + d, -1, -1), length):
            # ms is strictly decreasing
            if all(m >= d - k for k, m in enumerate(ms)):
                if sum(comb(m, d - k) for k, m in enumerate(ms)) == n:
                    best = ms if best is None or ms > best else best
    return best


@pytest.mark.parametrize("d", [1, 2, 3])
def test_matches_exhaustive_search(d):
    # the representation is unique; greedy must agree with brute force
    for n in range(0, 25):
        assert macaulay_rep(n, d).parts == brute_force_rep(n, d), (n, d)


def test_known_values():
    assert macaulay_rep(5, 2).terms() == [(3, 2), (2, 1)]
    assert macaulay_growth(5, 2) == comb(4, 3) + comb(3, 2)
    assert macaulay_growth(0, 4) == 0
    assert macaulay_growth(1, 1) == 1
    assert macaulay_growth(3, 1) == 6


def test_input_validation():
    with pytest.raises(ValueError):
        macaulay_rep(3, 0)
    with pytest.raises(ValueError):
        macaulay_rep(-1, 2)


@given(st.integers(0, 5000), st.integers(1, 10))
def test_reconstruction(n, d):
    rep = macaulay_rep(n, d)
    assert rep.resum() == n
    parts = rep.parts
    assert all(a > b for a, b in zip(parts, parts[1:]))
    assert all(m >= d - k for k, m in enumerate(parts))


@given(st.integers(1, 12), st.integers(0, 3))
def test_small_n_is_fixed_by_growth(d, s):
    for n in range(1, d + 1):
        assert macaulay_growth(n, d + s) == n


def test_growth_of_full_degree_component():
    # dim of degree-d forms in k variables grows to dim of degree d+1 forms
    for k in range(1, 5):
        for d in range(1, 6):
            assert macaulay_growth(comb(d + k - 1, k - 1), d) == comb(d + k, k - 1)


def test_monomial_basis():
    B = monomial_basis(3, 2)
    assert len(B) == 6
    assert B.monomials[0] == (2, 0, 0)
    assert B.monomials[-1] == (0, 0, 2)
    assert B.index((0, 1, 1)) == 4
    assert monomials_of_degree(2, -1) == []
    assert monomials_of_degree(2, 3) == [(3, 0), (2, 1), (1, 2), (0, 3)]
