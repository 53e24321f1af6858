"""Quot schemes of length-n quotients of O^p on P^r, chart by chart.

On a standard chart of the Grassmannian of rank-n quotients of F_d (F the
free graded module of rank p over Q[X_0..X_r]) the universal kernel is free
with explicit generators. The graded submodule they generate gives graded
quotients E_m, and the Quot scheme is cut out by the ideals
Fitt_{n-1}(E_{d+s}), s >= 1.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .exactla import (
    PolyMatrix,
    canonical_generators,
    eliminate_unit_pivots,
    iter_minors,
    minors,
    rank_at_point,
)
from .grobner import DEFAULT_BUDGET, Ideal, ReductionCounter, radical_member
from .macaulay import macaulay_growth, monomials_of_degree
from .polyring import PolyRing, Polynomial

NOT_STABILIZED = "not stabilized"


@dataclass(frozen=True)
class QuotProblem:
    """Quot^n of O^p on P^r, embedded via the degree-d Grassmannian (d >= n)."""

    p: int
    r: int
    n: int
    d: int

    def __post_init__(self):
        for name in ("p", "r", "n", "d"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.d < self.n:
            raise ValueError(f"need d >= n, got d={self.d}, n={self.n}")

    @property
    def x_names(self) -> tuple[str, ...]:
        if self.r == 1:
            return ("X", "Y")
        if self.r == 2:
            return ("X", "Y", "Z")
        return tuple(f"X{i}" for i in range(self.r + 1))

    def rank(self, m: int) -> int:
        """N_m = p * C(m + r, r), the rank of F_m."""
        return self.p * comb(m + self.r, self.r) if m >= 0 else 0

    @property
    def N(self) -> int:
        return self.rank(self.d)

    def basis(self, m: int) -> list[tuple[int, tuple[int, ...]]]:
        """Basis of F_m: (component, exponents), component-major, decreasing degrevlex."""
        monos = monomials_of_degree(self.r + 1, m)
        return [(c, mono) for c in range(self.p) for mono in monos]

    def basis_label(self, elem: tuple[int, tuple[int, ...]]) -> str:
        c, mono = elem
        return f"e{c + 1}*{_mono_text(self.x_names, mono)}"

    def chart_count(self) -> int:
        return comb(self.N, self.n)

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "n": self.n, "d": self.d}


def _mono_text(names, mono) -> str:
    parts = []
    for v, k in zip(names, mono):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"


def _mono_ident(names, mono) -> str:
    return "".join(v + (str(k) if k > 1 else "") for v, k in zip(names, mono) if k) or "1"


class GrassmannChart:
    """Standard open where the basis elements indexed by ``pivots`` map to a basis.

    Chart coordinates phi[i][j] (i a pivot, j a non-pivot) are the entries of
    the quotient map F_d -> A^n, whose pivot columns form the identity.
    """

    def __init__(self, problem: QuotProblem, pivots: Sequence[int] | None = None):
        N, n = problem.N, problem.n
        if pivots is None:
            pivots = tuple(range(n))
        pivots = tuple(sorted(int(i) for i in pivots))
        if len(pivots) != n or len(set(pivots)) != n:
            raise ValueError(f"need {n} distinct pivots, got {pivots}")
        if pivots and (pivots[0] < 0 or pivots[-1] >= N):
            raise ValueError(f"pivot indices must lie in [0, {N})")
        self.problem = problem
        self.pivots = pivots
        self.nonpivots = tuple(j for j in range(N) if j not in set(pivots))
        self.basis_d = problem.basis(problem.d)
        # one variable per (pivot, non-pivot) pair; for n > 1 they run pivot-major
        if n == 1:
            pairs = [(pivots[0], j) for j in self.nonpivots]
            names = [f"u{k + 1}" for k in range(len(pairs))]
        else:
            pairs = [(i, j) for i in pivots for j in self.nonpivots]
            names = [f"phi_{i + 1}_{j + 1}" for i, j in pairs]
        self.var_index: dict[tuple[int, int], int] = {ij: k for k, ij in enumerate(pairs)}
        self.chart_ring = PolyRing(names)
        self.x_names = problem.x_names
        self.ring = PolyRing(tuple(names) + self.x_names)  # combined ring
        self.nchart = len(names)

    @property
    def N(self) -> int:
        return self.problem.N

    def __repr__(self):
        return f"GrassmannChart({self.problem}, pivots={self.pivots})"

    def __eq__(self, other):
        return isinstance(other, GrassmannChart) and (self.problem, self.pivots) == (
            other.problem,
            other.pivots,
        )

    def __hash__(self):
        return hash((self.problem, self.pivots))

    def coordinate(self, i: int, j: int) -> Polynomial:
        """phi_{i,j} as a chart-ring element (i pivot, j non-pivot)."""
        e = [0] * self.nchart
        e[self.var_index[(i, j)]] = 1
        return self.chart_ring.monomial(e)

    def quotient_matrix(self) -> PolyMatrix:
        """n x N matrix of the chart's quotient map F_d -> A^n."""
        R = self.chart_ring
        rows = []
        for i in self.pivots:
            row = []
            for j in range(self.N):
                if j == i:
                    row.append(R.one())
                elif j in self.pivots:
                    row.append(R.zero())
                else:
                    row.append(self.coordinate(i, j))
            rows.append(row)
        return PolyMatrix(R, rows, self.N)

    def pivot_labels(self) -> list[str]:
        return [self.problem.basis_label(self.basis_d[i]) for i in self.pivots]

    @classmethod
    def all_charts(cls, problem: QuotProblem) -> list[GrassmannChart]:
        return [cls(problem, J) for J in combinations(range(problem.N), problem.n)]

    @classmethod
    def sample_charts(cls, problem: QuotProblem, k: int, seed: int = 0) -> list[GrassmannChart]:
        """``k`` pivot sets: the first chart plus a seeded random sample."""
        total = problem.chart_count()
        if total <= k:
            return cls.all_charts(problem)
        rng = random.Random(seed)
        chosen = {tuple(range(problem.n))}
        while len(chosen) < k:
            chosen.add(tuple(sorted(rng.sample(range(problem.N), problem.n))))
        return [cls(problem, J) for J in sorted(chosen)]


@dataclass(frozen=True)
class ModuleElement:
    """Element of F_m: p components in the combined ring, X-homogeneous of degree m."""

    degree: int
    components: tuple[Polynomial, ...]

    def times_monomial(self, xexps: Sequence[int], nchart: int) -> ModuleElement:
        e = (0,) * nchart + tuple(xexps)
        return ModuleElement(
            self.degree + sum(xexps),
            tuple(c.mul_term(e) for c in self.components),
        )

    def is_homogeneous(self, nchart: int) -> bool:
        for c in self.components:
            for e in c.terms:
                if sum(e[nchart:]) != self.degree:
                    return False
        return True

    def coordinates(self, problem: QuotProblem, nchart: int, chart_ring: PolyRing) -> dict[int, Polynomial]:
        """Coefficients over the chart ring in the basis of F_m."""
        index = {b: k for k, b in enumerate(problem.basis(self.degree))}
        acc: dict[int, dict] = {}
        for c, comp in enumerate(self.components):
            for e, v in comp.terms.items():
                row = index[(c, e[nchart:])]
                terms = acc.setdefault(row, {})
                ce = e[:nchart]
                terms[ce] = terms.get(ce, 0) + v
        return {k: chart_ring.from_dict(t) for k, t in acc.items() if any(t.values())}


@dataclass
class ConeModule:
    chart: GrassmannChart
    kernel_gens: list[ModuleElement]


@dataclass
class FittingStratum:
    s: int
    ideal: Ideal
    minor_size: int
    reduced_shape: tuple[int, int] = (0, 0)

    @property
    def generators(self) -> list[Polynomial]:
        return self.ideal.generators


def chart_kernel(chart: GrassmannChart) -> ConeModule:
    """Generators e_j - sum_i phi_{i,j} e_i of the universal kernel R_d."""
    problem = chart.problem
    R = chart.ring
    nc = chart.nchart
    p = problem.p
    gens = []
    for j in chart.nonpivots:
        comps = [dict() for _ in range(p)]
        cj, mj = chart.basis_d[j]
        comps[cj][(0,) * nc + mj] = 1
        for i in chart.pivots:
            ci, mi = chart.basis_d[i]
            e = [0] * nc
            e[chart.var_index[(i, j)]] = 1
            comps[ci][tuple(e) + mi] = -1
        gens.append(ModuleElement(problem.d, tuple(Polynomial(R, c) for c in comps)))
    return ConeModule(chart, gens)


def apply_quotient(chart: GrassmannChart, elem: ModuleElement) -> list[Polynomial]:
    """Image of a degree-d element under the chart quotient map F_d -> A^n."""
    if elem.degree != chart.problem.d:
        raise ValueError("quotient map is defined on F_d only")
    coords = elem.coordinates(chart.problem, chart.nchart, chart.chart_ring)
    Q = chart.quotient_matrix()
    out = []
    for a in range(len(chart.pivots)):
        total = chart.chart_ring.zero()
        for j, coef in coords.items():
            if Q[a, j]:
                total = total + Q[a, j] * coef
        out.append(total)
    return out


def cone_component_generators(cone: ConeModule, m: int, iterative: bool = False) -> list[ModuleElement]:
    """Generators of R_m: kernel generators times all X-monomials of degree m - d.

    Ordered by (kernel generator, multiplier in decreasing degrevlex). With
    ``iterative`` the set is built degree by degree, multiplying by single
    variables and discarding repeats.
    """
    chart = cone.chart
    d = chart.problem.d
    if m < d:
        raise ValueError(f"cone components start in degree d={d}")
    nx = chart.problem.r + 1
    nc = chart.nchart
    if not iterative:
        monos = monomials_of_degree(nx, m - d)
        return [g.times_monomial(mu, nc) for g in cone.kernel_gens for mu in monos]
    current = list(cone.kernel_gens)
    for _ in range(m - d):
        seen = {}
        for g in current:
            for v in range(nx):
                e = [0] * nx
                e[v] = 1
                h = g.times_monomial(e, nc)
                seen.setdefault(h.components, h)
        current = list(seen.values())
    return current


def presentation_matrix(cone: ConeModule, m: int, iterative: bool = False) -> PolyMatrix:
    """Matrix over the chart ring whose cokernel is E_m = F_m / R_m."""
    chart = cone.chart
    problem = chart.problem
    Nm = problem.rank(m)
    R = chart.chart_ring
    z = R.zero()
    cols = []
    for g in cone_component_generators(cone, m, iterative):
        coords = g.coordinates(problem, chart.nchart, R)
        cols.append([coords.get(i, z) for i in range(Nm)])
    return PolyMatrix.from_columns(R, Nm, cols)


def fitting_ideal(M: PolyMatrix, k: int, reduce: bool = True) -> tuple[list[Polynomial], int, tuple[int, int]]:
    """Generators of Fitt_k(coker M).

    Returns ``(generators, minor_size, reduced_shape)``; an empty generator
    list is the zero ideal and ``[1]`` the unit ideal. With ``reduce`` the
    minors are taken of a smaller presentation of the same module.
    """
    ring = M.ring
    size = M.nrows - k
    if k < 0:
        return [], size, M.shape
    if size <= 0:
        return [ring.one()], size, M.shape
    if not reduce:
        return minors(M, size), size, M.shape
    Mr = eliminate_unit_pivots(M)
    rsize = Mr.nrows - k
    if rsize <= 0:
        return [ring.one()], size, Mr.shape
    if rsize > Mr.ncols:
        return [], size, Mr.shape
    return minors(Mr, rsize), size, Mr.shape


def fitting_stratum(cone: ConeModule, s: int, k: int | None = None, reduce: bool = True) -> FittingStratum:
    """Fitt_k(E_{d+s}); k defaults to n - 1."""
    if s < 1:
        raise ValueError("the offset s must be at least 1")
    chart = cone.chart
    if k is None:
        k = chart.problem.n - 1
    M = presentation_matrix(cone, chart.problem.d + s)
    gens, size, shape = fitting_ideal(M, k, reduce)
    return FittingStratum(s, Ideal(chart.chart_ring, gens), size, shape)


class QuotResult:
    """Cumulative ideal of one chart; strata are computed on first access."""

    def __init__(self, cone: ConeModule, s_max: int, ideal: Ideal, contributed: list[int], strata=None, threads: int = 1):
        self.cone = cone
        self.chart = cone.chart
        self.s_max = s_max
        self.ideal = ideal
        self.contributed = contributed  # new generators per stratum
        self._strata: dict[int, FittingStratum] = dict(strata or {})
        self._threads = threads

    def stratum(self, s: int) -> FittingStratum:
        if s not in self._strata:
            self._strata[s] = fitting_stratum(self.cone, s)
        return self._strata[s]

    @property
    def strata(self) -> list[FittingStratum]:
        missing = [s for s in range(1, self.s_max + 1) if s not in self._strata]
        if self._threads > 1 and len(missing) > 1:
            with ThreadPoolExecutor(max_workers=self._threads) as pool:
                for st in pool.map(lambda s: fitting_stratum(self.cone, s), missing):
                    self._strata[st.s] = st
        return [self.stratum(s) for s in range(1, self.s_max + 1)]


def fitting_contained(M: PolyMatrix, k: int, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide whether Fitt_k(coker M) lies in ``ideal``.

    Fitting ideals commute with base change, so it is enough that the minors
    of M read modulo the ideal vanish there. Entries are replaced by their
    normal forms, which usually exposes more constant pivots, and the minors
    of what is left are tested one at a time. ``budget`` bounds the
    reduction steps of the whole test, not of each normal form.
    """
    pre = ideal.presolved()
    J = pre.residual
    if J.is_unit(budget):
        return True
    Mr = M.map(pre.apply) if pre.substitutions else M
    counter = ReductionCounter(budget)
    while True:
        shape = Mr.shape
        Mr = eliminate_unit_pivots(Mr.map(lambda e: J.normal_form(e, budget, counter)))
        if Mr.shape == shape:
            break
    size = Mr.nrows - k
    if size <= 0:
        return False  # unit Fitting ideal, proper ideal
    if size > Mr.ncols:
        return True
    return all(not J.normal_form(m, budget, counter) for m in iter_minors(Mr, size))


def cumulative_equations(
    problem: QuotProblem,
    chart: GrassmannChart,
    s_max: int = 3,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> QuotResult:
    """Ideal generated by Fitt_{n-1}(E_{d+s}) for s = 1..s_max.

    Generators of later strata already in the ideal of the earlier ones are
    dropped. A stratum whose whole Fitting ideal is contained in the current
    ideal (decided on the presentation matrix) contributes nothing, and its
    minors are only listed if someone asks for them.
    """
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    if chart.problem != problem:
        raise ValueError("chart belongs to a different problem")
    cone = chart_kernel(chart)
    k = problem.n - 1
    first = fitting_stratum(cone, 1)
    result = QuotResult(cone, s_max, first.ideal, [len(first.generators)], {1: first}, threads)
    current = first.ideal
    for s in range(2, s_max + 1):
        M = presentation_matrix(cone, problem.d + s)
        if fitting_contained(M, k, current, budget):
            result.contributed.append(0)
            continue
        st = result.stratum(s)
        new = [g for g in st.generators if not current.contains(g, budget)]
        if new:
            current = Ideal(chart.chart_ring, current.generators + new)
        result.contributed.append(len(new))
    result.ideal = current
    return result


def quot_equations(problem, chart, s_max: int = 3, threads: int = 1, budget: int = DEFAULT_BUDGET) -> Ideal:
    return cumulative_equations(problem, chart, s_max, threads, budget).ideal


def stabilization_offset(problem, chart, s_max: int = 3, budget: int = DEFAULT_BUDGET, result: QuotResult | None = None):
    """Smallest s0 < s_max after which no stratum up to s_max enlarges the ideal.

    Returns :data:`NOT_STABILIZED` when stratum s_max still contributes.
    """
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    if result is None:
        result = cumulative_equations(problem, chart, s_max, budget=budget)
    last = 1
    for s, count in enumerate(result.contributed, start=1):
        if s > 1 and count:
            last = s
    if last >= s_max:
        return NOT_STABILIZED
    return last


def radical_stability_check(problem, chart, s_max: int = 3, budget: int = DEFAULT_BUDGET, result: QuotResult | None = None) -> bool:
    """Every generator of strata 2..s_max lies in the radical of stratum 1.

    A stratum contained in stratum 1 outright passes without listing its
    generators; otherwise each generator goes through :func:`radical_member`.
    """
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    if result is None:
        cone = chart_kernel(chart)
        result = QuotResult(cone, s_max, Ideal(chart.chart_ring), [])
    base = result.stratum(1).ideal
    k = problem.n - 1
    for s in range(2, s_max + 1):
        M = presentation_matrix(result.cone, problem.d + s)
        if fitting_contained(M, k, base, budget):
            continue
        if not all(radical_member(g, base, budget) for g in result.stratum(s).generators):
            return False
    return True


# -- homogenisation (n = 1) -----------------------------------------------------

def homogeneous_ring(problem: QuotProblem) -> tuple[PolyRing, dict[str, str]]:
    """Ring with one variable per basis element of F_d, plus the alias table.

    Letters a, b, c, ... are used when there are at most 26 basis elements,
    otherwise ``x<component>_<monomial>``.
    """
    basis = problem.basis(problem.d)
    names = []
    for k, (c, mono) in enumerate(basis):
        if len(basis) <= 26:
            names.append(chr(ord("a") + k))
        else:
            names.append(f"x{c + 1}_{_mono_ident(problem.x_names, mono)}")
    aliases = {v: problem.basis_label(b) for v, b in zip(names, basis)}
    return PolyRing(names), aliases


def homogenize_chart_ideal(problem: QuotProblem, chart: GrassmannChart, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> Ideal:
    """Homogeneous ideal in the coordinates of P(F_d) for rank-one quotients.

    Each chart coordinate u_j becomes x_j / x_pivot. A degrevlex Groebner
    basis is homogenised so that the result is the full homogenisation of the
    chart ideal rather than of one generating set.
    """
    if problem.n != 1:
        raise ValueError("homogenization implemented only for rank-one quotients")
    H, _ = homogeneous_ring(problem)
    if ideal.is_zero():
        return Ideal(H, [])
    piv = chart.pivots[0]
    targets = list(chart.nonpivots)  # u_k <-> basis element nonpivots[k]
    gb = ideal.groebner_basis(budget)
    out = []
    for f in gb:
        D = f.total_degree()
        terms = {}
        for e, c in f.terms.items():
            h = [0] * problem.N
            for k, a in enumerate(e):
                h[targets[k]] += a
            h[piv] += D - sum(e)
            terms[tuple(h)] = c
        low = min(t[piv] for t in terms)
        if low:
            terms = {
                t[:piv] + (t[piv] - low,) + t[piv + 1:]: c for t, c in terms.items()
            }
        out.append(H.from_dict(terms))
    return Ideal(H, canonical_generators(out, H))


# -- fiber dimensions -------------------------------------------------------------

def random_point(nvars: int, rng: random.Random) -> list[Fraction]:
    return [
        Fraction(rng.randint(-10, 10), rng.randint(1, 5)) for _ in range(nvars)
    ]


def fiber_dimensions(cone: ConeModule, m: int, point) -> list[int]:
    """dim E_j at ``point`` for j = d..m."""
    d = cone.chart.problem.d
    out = []
    for j in range(d, m + 1):
        M = presentation_matrix(cone, j)
        out.append(M.nrows - rank_at_point(M, point))
    return out


def fiber_dimension_check(cone: ConeModule, m: int, trials: int = 20, seed: int = 0, matrices=None) -> bool:
    """Growth bound on fiber dimensions at random rational chart points.

    At each point dim E_d must equal n, and dim E_{j+1} <= (dim E_j)^<j> for
    d <= j < m; in particular dim E_{d+1} <= n^<d>.
    """
    chart = cone.chart
    problem = chart.problem
    d, n = problem.d, problem.n
    if m < d or trials < 1:
        raise ValueError("need m >= d and trials >= 1")
    if matrices is None:
        matrices = [presentation_matrix(cone, j) for j in range(d, m + 1)]
    rng = random.Random(seed)
    for _ in range(trials):
        pt = random_point(chart.nchart, rng)
        dims = [M.nrows - rank_at_point(M, pt) for M in matrices]
        if dims[0] != n:
            return False
        for j, (a, b) in enumerate(zip(dims, dims[1:]), start=d):
            if b > macaulay_growth(a, j):
                return False
        if m > d and dims[1] > macaulay_growth(n, d):
            return False
    return True


# -- reports ------------------------------------------------------------------------

def chart_report(
    problem: QuotProblem,
    chart: GrassmannChart,
    s_max: int = 3,
    homogenize: bool = False,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Everything computed for one chart, as plain JSON-ready data."""
    res = cumulative_equations(problem, chart, s_max, threads, budget)
    report = {
        "problem": problem.to_json(),
        "chart": {
            "pivots": list(chart.pivots),
            "pivot_labels": chart.pivot_labels(),
            "variables": list(chart.chart_ring.names),
        },
        "s_max": s_max,
        "strata": [
            {
                "s": st.s,
                "degree": problem.d + st.s,
                "minor_size": st.minor_size,
                "generators": [str(g) for g in st.generators],
            }
            for st in res.strata
        ],
        "cumulative_ideal": [str(g) for g in res.ideal.generators],
    }
    if s_max >= 2:
        report["stabilization_offset"] = stabilization_offset(problem, chart, s_max, budget, res)
        report["radical_check"] = radical_stability_check(problem, chart, s_max, budget, res)
    else:
        report["stabilization_offset"] = None
        report["radical_check"] = None
    if homogenize:
        H, aliases = homogeneous_ring(problem)
        hom = homogenize_chart_ideal(problem, chart, res.ideal, budget)
        report["homogenized"] = {
            "variables": list(H.names),
            "aliases": aliases,
            "ideal": [str(g) for g in hom.generators],
        }
    return report


def dumps_report(report) -> str:
    """Canonical JSON text (sorted keys, fixed indentation)."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_report(report: dict) -> str:
    """Plain-text rendering of a chart report."""
    pr = report["problem"]
    ch = report["chart"]
    lines = [
        f"Quot^{pr['n']} of O^{pr['p']} on P^{pr['r']}  (d = {pr['d']})",
        f"chart pivots: {', '.join(ch['pivot_labels'])}  {ch['pivots']}",
        f"chart variables: {' '.join(ch['variables']) or '(none)'}",
    ]
    for st in report["strata"]:
        gens = st["generators"]
        body = "0" if not gens else ", ".join(gens)
        lines.append(f"  Fitt_{pr['n'] - 1}(E_{st['degree']}) [minors of size {st['minor_size']}]: ({body})")
    cum = report["cumulative_ideal"]
    lines.append(f"cumulative ideal: ({', '.join(cum) if cum else '0'})")
    if report.get("stabilization_offset") is not None:
        lines.append(f"stabilization offset: {report['stabilization_offset']}")
        lines.append(f"radical check: {'pass' if report['radical_check'] else 'fail'}")
    hom = report.get("homogenized")
    if hom:
        lines.append(f"homogenized: ({', '.join(hom['ideal']) if hom['ideal'] else '0'})")
        lines.append(
            "  where " + ", ".join(f"{k} = {v}" for k, v in hom["aliases"].items())
        )
    return "\n".join(lines) + "\n"
