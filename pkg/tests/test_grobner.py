import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quotfit import (
    Ideal,
    PolyRing,
    ResourceError,
    TermOrder,
    buchberger,
    ideal_equal,
    normal_form,
    radical_member,
)
from quotfit.grobner import linear_presolve

R = PolyRing(["u", "v", "w"])
A5 = PolyRing(["a1", "a2", "a3", "a4", "a5"])


def ideal(ring, *texts):
    return Ideal(ring, [ring.parse(t) for t in texts])


def P2():
    return ideal(A5, "a2*a4 - a1*a5", "a2*a3 - a5", "a1*a3 - a4")


def test_single_generator_is_its_own_basis():
    assert [str(g) for g in buchberger(ideal(R, "u*v - w"))] == ["u*v - w"]


def test_zero_ideal():
    I = Ideal(R, [R.zero()])
    assert I.generators == []
    assert buchberger(I) == []
    assert normal_form(R.parse("u"), I) == R.parse("u")


def test_linear_example_lex():
    lex = PolyRing(["x", "y", "z"], TermOrder.LEX)
    gb = buchberger(ideal(lex, "x - y", "y - z"))
    assert sorted(str(g) for g in gb) == ["x - z", "y - z"]


def test_normal_form_examples():
    I = ideal(R, "u*v - w")
    assert normal_form(R.parse("u*v - w"), I).is_zero()
    assert normal_form(R.one(), I) == R.one()
    f = A5.parse("(a2*a4 - a1*a5) + a3*(a1*a3 - a4)")
    assert normal_form(f, P2()).is_zero()


def test_ideal_equal_examples():
    f = "u*v - w"
    assert ideal_equal(ideal(R, f), ideal(R, f"2*({f})"))
    assert ideal_equal(ideal(R, f), ideal(R, f, f"u*({f})"))
    assert not ideal_equal(ideal(R, f), ideal(R, "u*v", "w"))


def test_radical_member_examples():
    I2 = ideal(R, "(u*v - w)^2")
    f = R.parse("u*v - w")
    assert not I2.contains(f)
    assert radical_member(f, I2)
    assert not radical_member(R.parse("u"), ideal(R, "u*v - w"))
    assert radical_member(R.zero(), ideal(R, "u"))


def test_unit_ideal():
    I = ideal(R, "u*v - 1", "u")
    assert I.is_unit()
    assert [str(g) for g in buchberger(I)] == ["1"]


def test_budget_raises_resource_error():
    I = ideal(R, "u^3 - v*w^2 + 1", "v^3 - u*w", "w^3 - u^2*v + u")
    with pytest.raises(ResourceError):
        I.groebner_basis(budget=3)


def test_linear_presolve_preserves_membership():
    I = ideal(R, "u - v*w", "v^2 - w^3")
    pre = linear_presolve(I)
    assert len(pre.substitutions) == 1
    assert pre.residual.ring == R
    f = R.parse("u^2 - v*w^4")
    assert I.contains(f) == (not normal_form(f, Ideal(R, buchberger(I))))


def _random_poly(ring, rng, nterms=3, maxdeg=2):
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        e = tuple(rng.randint(0, maxdeg) for _ in range(ring.nvars))
        terms[e] = rng.randint(-3, 3)
    return ring.from_dict(terms)


@pytest.mark.parametrize("order", ["degrevlex", "lex"])
def test_matches_sympy_on_random_ideals(order):
    rng = random.Random(11 if order == "lex" else 7)
    ring = PolyRing(["x", "y", "z"], order)
    syms = sympy.symbols("x y z")
    sy_order = "grevlex" if order == "degrevlex" else "lex"
    checked = 0
    while checked < 25:
        gens = [g for g in (_random_poly(ring, rng) for _ in range(rng.randint(1, 3))) if g]
        if not gens:
            continue
        ours = sorted(str(g.normalize_primitive()) for g in buchberger(Ideal(ring, gens)))
        G = sympy.groebner([sympy.sympify(str(g).replace("^", "**")) for g in gens], *syms, order=sy_order)
        theirs = sorted(
            str(ring.parse(str(sympy.expand(e)).replace("**", "^")).normalize_primitive())
            for e in G.exprs
        )
        assert ours == theirs, [str(g) for g in gens]
        checked += 1


small_polys = st.builds(
    lambda seed: _random_poly(R, random.Random(seed)), st.integers(0, 10_000)
)


@settings(max_examples=40, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3), st.lists(small_polys, min_size=1, max_size=3))
def test_explicit_combinations_reduce_to_zero(gens, multipliers):
    I = Ideal(R, gens)
    combo = R.zero()
    for g, m in zip(gens, multipliers):
        combo = combo + g * m
    assert normal_form(combo, I).is_zero()
    assert I.contains(combo)


@settings(max_examples=30, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3))
def test_basis_is_idempotent_and_order_stable(gens):
    gb = buchberger(Ideal(R, gens))
    assert buchberger(Ideal(R, gb)) == gb
    assert buchberger(Ideal(R, list(reversed(gens)))) == gb


@settings(max_examples=20, deadline=None)
@given(
    st.lists(small_polys, min_size=1, max_size=2),
    st.lists(small_polys, min_size=1, max_size=2),
    st.lists(small_polys, min_size=1, max_size=2),
)
def test_ideal_equal_is_an_equivalence(a, b, c):
    I, J, K = Ideal(R, a), Ideal(R, b), Ideal(R, c)
    assert ideal_equal(I, I)
    assert ideal_equal(I, J) == ideal_equal(J, I)
    if ideal_equal(I, J) and ideal_equal(J, K):
        assert ideal_equal(I, K)
    # a rescaled, permuted and padded copy is always equal
    padded = Ideal(R, [3 * g for g in reversed(a)] + [a[0] * R.parse("u + 1")])
    assert ideal_equal(I, padded)


@settings(max_examples=15, deadline=None)
@given(small_polys, st.lists(small_polys, min_size=1, max_size=2), st.integers(1, 3))
def test_radical_membership_ignores_powers(f, gens, k):
    I = Ideal(R, gens)
    assert radical_member(f ** k, I) == radical_member(f, I)


def test_ideal_json_round_trip():
    I = P2()
    J = Ideal.from_json(I.to_json())
    assert J.ring == I.ring
    assert J.generators == I.generators
