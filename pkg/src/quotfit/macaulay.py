"""Macaulay representations, the growth bound n^<d>, and monomial bases."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .polyring import TermOrder


def binomial(m: int, i: int) -> int:
    """C(m, i), zero when m < i or i < 0."""
    if i < 0 or m < i:
        return 0
    return comb(m, i)


@dataclass(frozen=True)
class MacaulayRep:
    """n = C(m_d, d) + C(m_{d-1}, d-1) + ... with strictly decreasing parts.

    ``parts[0]`` pairs with ``degree``, ``parts[1]`` with ``degree - 1`` and so
    on. Only the prefix that can contribute is stored; trailing positions
    would carry zero binomials.
    """

    degree: int
    parts: tuple[int, ...]
    value: int

    def terms(self) -> list[tuple[int, int]]:
        """(m_i, i) pairs in decreasing i."""
        return [(m, self.degree - k) for k, m in enumerate(self.parts)]

    def resum(self) -> int:
        return sum(binomial(m, i) for m, i in self.terms())

    def growth(self) -> int:
        return sum(binomial(m + 1, i + 1) for m, i in self.terms())


def macaulay_rep(n: int, d: int) -> MacaulayRep:
    """Greedy d-th Macaulay representation of ``n``."""
    if d < 1:
        raise ValueError("the Macaulay degree must be at least 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    parts = []
    rem = n
    i = d
    while rem > 0 and i >= 1:
        m = i
        while binomial(m + 1, i) <= rem:
            m += 1
        # C(m, i) <= rem < C(m + 1, i), and C(i, i) = 1 <= rem
        parts.append(m)
        rem -= binomial(m, i)
        i -= 1
    if rem:
        raise AssertionError("greedy Macaulay expansion failed")  # unreachable
    return MacaulayRep(d, tuple(parts), n)


def macaulay_growth(n: int, d: int) -> int:
    """n^<d>: each C(m_i, i) becomes C(m_i + 1, i + 1)."""
    return macaulay_rep(n, d).growth()


def monomials_of_degree(nvars: int, m: int, order="degrevlex") -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``m``, decreasing in the term order."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    if m < 0:
        return []
    out = []

    def rec(prefix, left, k):
        if k == 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, k - 1)

    rec([], m, nvars)
    key = TermOrder(order).key
    out.sort(key=key, reverse=True)
    return out


@dataclass(frozen=True)
class MonomialBasis:
    nvars: int
    degree: int
    monomials: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.monomials)

    def index(self, exps: Sequence[int]) -> int:
        return self.monomials.index(tuple(exps))


def monomial_basis(nvars: int, m: int, order="degrevlex") -> MonomialBasis:
    """Basis of the degree-m forms in ``nvars`` variables; size C(m+nvars-1, nvars-1)."""
    return MonomialBasis(nvars, m, tuple(monomials_of_degree(nvars, m, order)))
