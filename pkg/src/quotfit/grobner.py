"""Buchberger's algorithm over Q and the ideal-level certificates built on it.

Internally polynomials are handled as primitive integer term dictionaries;
reduction is fraction free (the remainder is rescaled instead of dividing
coefficients), which keeps the hot loop on machine-friendly ints.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, ResourceError
from .polyring import PolyRing, Polynomial, polynomial_from_json

DEFAULT_BUDGET = 100_000


def _neg_key_fn(ring: PolyRing):
    """Key for a min-heap that pops the largest monomial first."""
    if ring.order.value == "lex":
        return lambda e: tuple([-x for x in e])
    return lambda e: (-sum(e), e[::-1])


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _support(e) -> int:
    """Bitmask of the variables occurring in ``e``."""
    mask = 0
    for k, x in enumerate(e):
        if x:
            mask |= 1 << k
    return mask


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _primitive(terms: dict, lead) -> dict:
    g = 0
    for c in terms.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    if terms[lead] < 0:
        g = -g
    if g == 1:
        return terms
    return {e: c // g for e, c in terms.items()}


def _to_int_terms(f: Polynomial) -> dict:
    return f.primitive_integer_terms()


class _Basis:
    """Working basis: parallel lists of leading monomials and term dicts."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.key = ring.key
        self.nkey = _neg_key_fn(ring)
        self.lms: list = []
        self.lcs: list = []
        self.polys: list = []  # list of list[(exps, coeff)]
        self.masks: list = []
        self.degs: list = []

    def add(self, terms: dict) -> int:
        lm = max(terms, key=self.key)
        self.lms.append(lm)
        self.masks.append(_support(lm))
        self.degs.append(sum(lm))
        self.lcs.append(terms[lm])
        self.polys.append(list(terms.items()))
        return len(self.lms) - 1

    def find_divisor(self, m, indices) -> int:
        lms, masks, degs = self.lms, self.masks, self.degs
        outside = ~_support(m)
        dm = sum(m)
        for i in indices:
            if masks[i] & outside or degs[i] > dm:
                continue
            if _divides(lms[i], m):
                return i
        return -1

    def reduce(self, terms: dict, indices: Sequence[int], counter=None):
        """Reduce ``terms`` by the basis elements in ``indices``.

        Returns ``(remainder, scale)`` where ``remainder == scale * r`` for the
        rational normal form ``r``.
        """
        rem = dict(terms)
        nkey = self.nkey
        heap = [(nkey(e), e) for e in rem]
        heapq.heapify(heap)
        result: dict = {}
        scale = 1
        lms, lcs, polys = self.lms, self.lcs, self.polys
        while heap:
            _, m = heapq.heappop(heap)
            c = rem.pop(m, 0)
            if not c:
                continue
            i = self.find_divisor(m, indices)
            if i < 0:
                result[m] = c
                continue
            if counter is not None:
                counter.tick()
            lc = lcs[i]
            g = math.gcd(c, lc)
            a = lc // g
            b = c // g
            if a != 1:
                if a == -1:
                    for e in rem:
                        rem[e] = -rem[e]
                    for e in result:
                        result[e] = -result[e]
                else:
                    for e in rem:
                        rem[e] *= a
                    for e in result:
                        result[e] *= a
                scale *= a
            q = [x - y for x, y in zip(m, lms[i])]
            for e, v in polys[i]:
                t = tuple([x + y for x, y in zip(e, q)])
                if t == m:
                    continue
                old = rem.get(t)
                if old is None:
                    rem[t] = -b * v
                    heapq.heappush(heap, (nkey(t), t))
                else:
                    rem[t] = old - b * v
            if len(result) + len(rem) > 8 and scale != 1 and abs(scale).bit_length() > 256:
                scale = _shrink(rem, result, scale)
        return result, scale


def _shrink(rem: dict, result: dict, scale):
    g = 0
    for v in rem.values():
        g = math.gcd(g, v)
    for v in result.values():
        g = math.gcd(g, v)
    g = math.gcd(g, scale)
    if g > 1:
        for e in rem:
            rem[e] //= g
        for e in result:
            result[e] //= g
        return scale // g
    return scale


class ReductionCounter:
    """Counts reduction steps and raises :class:`ResourceError` past ``budget``.

    One counter may be shared by many calls so that a whole decision
    procedure runs under a single budget.
    """

    def __init__(self, budget: int):
        self.budget = budget
        self.count = 0

    def tick(self):
        self.count += 1
        if self.count > self.budget:
            raise ResourceError(
                f"Groebner basis computation exceeded the budget of {self.budget} reductions"
            )


def _spoly(basis: _Basis, i: int, j: int) -> dict:
    lm_i, lm_j = basis.lms[i], basis.lms[j]
    lc_i, lc_j = basis.lcs[i], basis.lcs[j]
    L = _lcm(lm_i, lm_j)
    g = math.gcd(lc_i, lc_j)
    a, b = lc_j // g, lc_i // g
    qi = [x - y for x, y in zip(L, lm_i)]
    qj = [x - y for x, y in zip(L, lm_j)]
    out: dict = {}
    for e, v in basis.polys[i]:
        t = tuple([x + y for x, y in zip(e, qi)])
        out[t] = out.get(t, 0) + a * v
    for e, v in basis.polys[j]:
        t = tuple([x + y for x, y in zip(e, qj)])
        out[t] = out.get(t, 0) - b * v
    return {e: v for e, v in out.items() if v}


def _update(basis: _Basis, pairs: list, G: list, h: int) -> tuple[list, list]:
    """Gebauer-Moeller installation of the new element ``h``.

    Applies the product (coprime leading terms) and chain criteria.
    """
    lms, masks = basis.lms, basis.masks
    lm_h = lms[h]
    mask_h = masks[h]

    lcms = {g: _lcm(lms[g], lm_h) for g in G}
    lmasks = {g: masks[g] | mask_h for g in G}

    # Chain criterion on the new pairs: keep only lcms minimal under
    # divisibility, one per value; a value shared with a coprime pair is
    # dropped altogether (product criterion).
    minimal: list = []  # [lcm, mask, g, coprime]
    for g in sorted(G, key=lambda g: (sum(lcms[g]), g)):
        L, m = lcms[g], lmasks[g]
        cop = not masks[g] & mask_h
        for entry in minimal:
            if entry[1] & ~m or not _divides(entry[0], L):
                continue
            if cop and entry[0] == L:
                entry[3] = True
            break
        else:
            minimal.append([L, m, g, cop])
    E = [entry[2] for entry in minimal if not entry[3]]
    # Chain criterion on the old pairs: drop (g1, g2) when lm(h) divides
    # their lcm strictly more finely than both lcm(g1, h) and lcm(g2, h).
    new_pairs = []
    for pair in pairs:
        L, mL = pair[3], pair[4]
        if mask_h & ~mL or not _divides(lm_h, L):
            new_pairs.append(pair)
            continue
        g1, g2 = pair[1], pair[2]
        L1 = lcms.get(g1) or _lcm(lms[g1], lm_h)
        if L1 == L or (lcms.get(g2) or _lcm(lms[g2], lm_h)) == L:
            new_pairs.append(pair)
    key = basis.key
    for g in E:
        L = lcms[g]
        new_pairs.append((key(L), g, h, L, lmasks[g]))
    new_G = [g for g in G if not _divides(lm_h, lms[g])]
    new_G.append(h)
    return new_pairs, new_G


def _buchberger_int(ring: PolyRing, gens: list, budget: int) -> list:
    """Reduced Groebner basis of integer term dicts; returns primitive dicts."""
    basis = _Basis(ring)
    key = ring.key
    gens = [g for g in gens if g]
    if not gens:
        return []
    zero = (0,) * ring.nvars
    for g in gens:
        if len(g) == 1 and zero in g:
            return [{zero: 1}]
    # deterministic input order: by leading monomial ascending, then original index
    order = sorted(range(len(gens)), key=lambda i: (key(max(gens[i], key=key)), i))
    counter = ReductionCounter(budget)
    G: list = []
    pairs: list = []
    for i in order:
        terms = gens[i]
        rem, _ = basis.reduce(terms, G, counter=counter)
        if not rem:
            continue
        lm = max(rem, key=key)
        if lm == zero:
            return [{zero: 1}]
        h = basis.add(_primitive(rem, lm))
        pairs, G = _update(basis, pairs, G, h)
    while pairs:
        # normal selection strategy: smallest lcm, ties by generator indices
        best = pairs.index(min(pairs))
        i, j = pairs.pop(best)[1:3]
        counter.tick()
        s = _spoly(basis, i, j)
        if not s:
            continue
        rem, _ = basis.reduce(s, G, counter=counter)
        if not rem:
            continue
        lm = max(rem, key=key)
        if lm == zero:
            return [{zero: 1}]
        h = basis.add(_primitive(rem, lm))
        pairs, G = _update(basis, pairs, G, h)
    return _interreduce(basis, G, counter)


def _interreduce(basis: _Basis, G: list, counter) -> list:
    key = basis.key
    lms = basis.lms
    minimal = [
        g for g in G if not any(h != g and _divides(lms[h], lms[g]) for h in G)
    ]
    minimal.sort(key=lambda g: key(lms[g]))
    out_idx = []
    for g in minimal:
        others = [h for h in minimal if h != g]
        terms = dict(basis.polys[g])
        lead = lms[g]
        tail = {e: v for e, v in terms.items() if e != lead}
        rem, scale = basis.reduce(tail, others, counter=counter)
        # scale * (reduced tail) = rem, so the element is scale*lead_term + rem
        new = dict(rem)
        new[lead] = basis.lcs[g] * scale
        out_idx.append(_primitive({e: int(v) for e, v in new.items()}, lead))
    # stable output order: ascending leading monomial
    out_idx.sort(key=lambda t: key(max(t, key=key)))
    return out_idx


def _from_int(ring: PolyRing, terms: dict) -> Polynomial:
    return Polynomial(ring, dict(terms))


class Ideal:
    """Finitely generated ideal with a lazily computed reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            elif g.ring != ring:
                g = g.to_ring(ring)
            if g:
                gens.append(g)
        self.generators: list[Polynomial] = gens
        self._gb: list[Polynomial] | None = None
        self._gb_int: list[dict] | None = None
        self._presolved: Presolved | None = None
        self._reducer: _Basis | None = None
        self._primitive: frozenset | None = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __len__(self):
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def groebner_basis(self, budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
        if self._gb is None:
            ints = _buchberger_int(
                self.ring, [_to_int_terms(g) for g in self.generators], budget
            )
            self._gb_int = ints
            self._gb = [_from_int(self.ring, t) for t in ints]
        return self._gb

    def is_unit(self, budget: int = DEFAULT_BUDGET) -> bool:
        gb = self.groebner_basis(budget)
        return len(gb) == 1 and gb[0].is_constant()

    def normal_form(self, f: Polynomial, budget: int = DEFAULT_BUDGET, counter: ReductionCounter | None = None) -> Polynomial:
        f = self._coerce(f)
        if not f:
            return f
        self.groebner_basis(budget)
        basis = self._reducer
        if basis is None:
            basis = self._reducer = _Basis(self.ring)
            for t in self._gb_int:
                basis.add(t)
        den = 1
        for c in f.terms.values():
            if type(c) is not int:
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in f.terms.items()}
        rem, scale = basis.reduce(
            ints, range(len(self._gb_int)), counter=counter or ReductionCounter(budget)
        )
        if not rem:
            return self.ring.zero()
        factor = Fraction(1, scale * den)
        return self.ring.from_dict({e: v * factor for e, v in rem.items()})

    def presolved(self) -> Presolved:
        """Equivalent triangular substitutions plus a residual ideal (cached)."""
        if self._presolved is None:
            self._presolved = linear_presolve(self)
        return self._presolved

    def contains(self, f: Polynomial, budget: int = DEFAULT_BUDGET) -> bool:
        """Membership test; eliminates linearly occurring variables first."""
        f = self._coerce(f)
        if not f:
            return True
        if self._primitive is None:
            self._primitive = frozenset(g.normalize_primitive() for g in self.generators)
        if f.normalize_primitive() in self._primitive:
            return True
        pre = self.presolved()
        g = pre.apply(f)
        if not g:
            return True
        if pre.residual is self:
            return not self.normal_form(g, budget)
        return pre.residual.contains(g, budget)

    def __contains__(self, f):
        return self.contains(f)

    def _coerce(self, f) -> Polynomial:
        if not isinstance(f, Polynomial):
            return self.ring.constant(f)
        if f.ring != self.ring:
            return f.to_ring(self.ring)
        return f

    def to_json(self) -> dict:
        return {
            "ring": {"vars": list(self.ring.names), "order": self.ring.order.value},
            "generators": [g.to_json() for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Ideal:
        try:
            ring = PolyRing.from_json(data["ring"])
            gens = [polynomial_from_json(g, ring) for g in data["generators"]]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed ideal JSON: {exc}") from exc
        return cls(ring, gens)


def buchberger(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Reduced Groebner basis (primitive integer normalisation)."""
    return ideal.groebner_basis(budget)


def normal_form(f: Polynomial, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> Polynomial:
    return ideal.normal_form(f, budget)


def ideal_equal(I: Ideal, J: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """Mutual membership of generators."""
    if I.ring != J.ring:
        from .errors import RingMismatchError

        raise RingMismatchError(f"{I.ring!r} vs {J.ring!r}")
    return all(I.contains(g, budget) for g in J.generators) and all(
        J.contains(g, budget) for g in I.generators
    )


def ideal_contains(I: Ideal, J: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff J is a subset of I."""
    return all(I.contains(g, budget) for g in J.generators)


def _fresh_name(ring: PolyRing, base="t") -> str:
    name = base
    k = 0
    while name in ring.names:
        k += 1
        name = f"{base}{k}"
    return name


def radical_member(f: Polynomial, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide whether ``f`` lies in the radical of ``ideal``.

    Plain membership is tried first; otherwise 1 is tested for membership in
    ``ideal + (1 - t*f)`` over the ring with one extra variable ``t``.
    """
    f = ideal._coerce(f)
    if not f:
        return True
    if ideal.contains(f, budget):
        return True
    pre = ideal.presolved()
    if pre.residual is not ideal:
        # x - h generators identify the quotient with a smaller polynomial ring
        return radical_member(pre.apply(f), pre.residual, budget)
    t = _fresh_name(ideal.ring)
    ext = PolyRing(ideal.ring.names + (t,), "degrevlex")
    gens = [g.to_ring(ext) for g in ideal.generators]
    gens.append(ext.one() - ext.var(t) * f.to_ring(ext))
    return Ideal(ext, gens).is_unit(budget)


class Presolved:
    """I = (x_1 - h_1, ..., x_k - h_k) + J with J free of x_1..x_k.

    Substituting the h's (in order) maps the quotient ring isomorphically onto
    the quotient by J, so membership and radical membership transfer.
    """

    def __init__(self, substitutions: list, residual: Ideal):
        self.substitutions = substitutions
        self.residual = residual

    def apply(self, f: Polynomial) -> Polynomial:
        for i, h in self.substitutions:
            f = f.subs_var(i, h)
        return f


def _linear_candidate(g: Polynomial):
    """Variables occurring in exactly one term of ``g``, that term being c*x."""
    owners: dict[int, list] = {}
    for e in g.terms:
        for i, k in enumerate(e):
            if k:
                owners.setdefault(i, []).append(e)
    out = []
    for i, es in owners.items():
        if len(es) == 1 and es[0][i] == 1 and sum(es[0]) == 1:
            out.append(i)
    return out


def linear_presolve(ideal: Ideal) -> Presolved:
    ring = ideal.ring
    gens = list(dict.fromkeys(g.normalize_primitive() for g in ideal.generators))
    subs = []
    while True:
        best = None
        for pos, g in enumerate(gens):
            for i in _linear_candidate(g):
                cost = (len(g), g.total_degree(), pos, i)
                if best is None or cost < best[0]:
                    best = (cost, pos, i)
        if best is None:
            break
        _, pos, i = best
        g = gens.pop(pos)
        e = [0] * ring.nvars
        e[i] = 1
        c = g.terms[tuple(e)]
        h = (g - ring.monomial(e, c)) * Fraction(-1, 1) / c
        subs.append((i, h))
        new = {}
        for f in gens:
            f = f.subs_var(i, h)
            if f:
                new[f.normalize_primitive()] = None
        gens = list(new)
        if any(f.is_constant() for f in gens):
            gens = [ring.one()]
            break
    if not subs:
        return Presolved([], ideal)
    return Presolved(subs, Ideal(ring, gens))
