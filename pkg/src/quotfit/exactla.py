"""Exact linear algebra over Q and over polynomial rings.

Determinants (fraction-free Bareiss and Laplace expansion), enumeration of
all minors of a given size, rank of a polynomial matrix at a rational point,
and a cokernel-preserving reduction that eliminates unit pivots.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import ParseError, ResourceError
from .polyring import PolyRing, Polynomial, polynomial_from_json

DEFAULT_MINOR_CAP = 200_000


def minor_cap() -> int:
    """Current cap on enumerated minors (``QUOT_MINOR_CAP`` overrides)."""
    value = os.environ.get("QUOT_MINOR_CAP")
    if value:
        try:
            return int(value)
        except ValueError:
            pass
    return DEFAULT_MINOR_CAP


class PolyMatrix:
    """Dense matrix of polynomials sharing one ring."""

    __slots__ = ("ring", "nrows", "ncols", "data")

    def __init__(self, ring: PolyRing, data: Sequence[Sequence], ncols: int | None = None):
        self.ring = ring
        rows = []
        for row in data:
            rows.append([
                e if isinstance(e, Polynomial) else ring.constant(e) for e in row
            ])
        self.nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
            for e in row:
                if e.ring != ring:
                    raise ValueError("matrix entries must share the matrix ring")
        self.ncols = ncols
        self.data = rows

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int) -> PolyMatrix:
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, ring: PolyRing, nrows: int, columns: Sequence[Sequence[Polynomial]]) -> PolyMatrix:
        data = [[col[i] for col in columns] for i in range(nrows)]
        return cls(ring, data, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> list[Polynomial]:
        """Row-major flat list of entries."""
        return [e for row in self.data for e in row]

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.data[i])

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.data]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, self.columns(), self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.data[i][j] for j in cols] for i in rows], len(cols))

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> PolyMatrix:
        return self.submatrix(row_perm, col_perm)

    def with_column(self, column: Sequence[Polynomial]) -> PolyMatrix:
        return PolyMatrix(self.ring, [row + [c] for row, c in zip(self.data, column)], self.ncols + 1)

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.data for e in row)

    def map(self, fn) -> PolyMatrix:
        """Apply ``fn`` to every entry (it must return polynomials in the same ring)."""
        return PolyMatrix(self.ring, [[fn(e) for e in row] for row in self.data], self.ncols)

    def evaluate(self, point: Sequence) -> list[list]:
        """The rational matrix obtained by substituting ``point``."""
        if len(point) != self.ring.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, ring has {self.ring.nvars}"
            )
        return [[e.evaluate(point) for e in row] for row in self.data]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.data)
        return f"PolyMatrix({self.nrows}x{self.ncols}: [{body}])"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, data: Mapping, ring: PolyRing | None = None) -> PolyMatrix:
        try:
            if ring is None:
                ring = PolyRing(data["vars"], data.get("order", "degrevlex"))
            r, c = int(data["rows"]), int(data["cols"])
            flat = [polynomial_from_json(e, ring) for e in data["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed matrix JSON: {exc}") from exc
        if len(flat) != r * c:
            raise ParseError(f"expected {r * c} entries, found {len(flat)}")
        return cls(ring, [flat[i * c:(i + 1) * c] for i in range(r)], c)


# -- determinants ---------------------------------------------------------------

def det_bareiss(M: PolyMatrix) -> Polynomial:
    """Fraction-free Bareiss elimination; every division is exact."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = M.ring
    if n == 0:
        return ring.one()
    a = [list(row) for row in M.data]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                val = row_i[j] * pivot
                if aik and row_k[j]:
                    val = val - aik * row_k[j]
                row_i[j] = val.exact_div(prev) if val else val
            row_i[k] = ring.zero()
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def det_laplace(M: PolyMatrix) -> Polynomial:
    """Cofactor expansion along rows, memoised over column subsets."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = M.ring
    if n == 0:
        return ring.one()
    return _laplace_rows(M.data, list(range(n)), tuple(range(n)), ring, {})


def _laplace_rows(data, rows, cols: tuple, ring, memo) -> Polynomial:
    # det of rows[:len(cols)] x cols, expanding along the last row
    k = len(cols)
    if k == 0:
        return ring.one()
    key = (tuple(rows[:k]), cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    r = rows[k - 1]
    total = ring.zero()
    for pos, c in enumerate(cols):
        entry = data[r][c]
        if not entry:
            continue
        sub = _laplace_rows(data, rows, cols[:pos] + cols[pos + 1:], ring, memo)
        if not sub:
            continue
        term = entry * sub
        # sign of the cofactor at (k-1, pos) within the k x k block
        if (k - 1 + pos) % 2:
            total = total - term
        else:
            total = total + term
    memo[key] = total
    return total


def determinant(M: PolyMatrix) -> Polynomial:
    """Exact determinant.

    Bareiss is used for constant matrices and for sizes above 4, cofactor
    expansion otherwise.
    """
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    if M.nrows > 4 or M.is_constant():
        return det_bareiss(M)
    return det_laplace(M)


# -- minors -----------------------------------------------------------------------

def count_minors(nrows: int, ncols: int, size: int) -> int:
    if size < 0 or size > nrows or size > ncols:
        return 0
    return math.comb(nrows, size) * math.comb(ncols, size)


def _sort_key(ring: PolyRing):
    key = ring.key

    def k(f: Polynomial):
        return tuple(key(e) for e, _ in f.sorted_terms()), tuple(
            str(c) for _, c in f.sorted_terms()
        )

    return k


def canonical_generators(polys, ring: PolyRing) -> list[Polynomial]:
    """Primitive-normalise, drop zeros, dedupe and sort deterministically."""
    seen = {}
    for f in polys:
        if not f:
            continue
        g = f.normalize_primitive()
        seen[g] = None
    return sorted(seen, key=_sort_key(ring))


def all_minors(M: PolyMatrix, size: int, cap: int | None = None) -> list[Polynomial]:
    """Every size x size minor (raw, including zeros), rows-major order of subsets."""
    cap = minor_cap() if cap is None else cap
    if size == 0:
        return [M.ring.one()]
    if size > M.nrows or size > M.ncols:
        return []
    total = count_minors(M.nrows, M.ncols, size)
    if total > cap:
        raise ResourceError(
            f"{total} minors of size {size} exceed the cap of {cap}"
        )
    return list(iter_minors(M, size))


def iter_minors(M: PolyMatrix, size: int):
    """Yield the size x size minors one at a time (no cap, no normalisation)."""
    if size == 0:
        yield M.ring.one()
        return
    for rows in combinations(range(M.nrows), size):
        rows = list(rows)
        memo: dict = {}
        for cols in combinations(range(M.ncols), size):
            yield _laplace_rows(M.data, rows, cols, M.ring, memo)


def minors(M: PolyMatrix, size: int, cap: int | None = None) -> list[Polynomial]:
    """All size x size minors, primitive-normalised, deduplicated, zeros dropped."""
    return canonical_generators(all_minors(M, size, cap), M.ring)


# -- rank over Q ------------------------------------------------------------------

def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    work = []
    for row in rows:
        vals = [Fraction(x) for x in row]
        den = 1
        for v in vals:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in vals]
        if any(ints):
            work.append(ints)
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank]
        for i in range(rank + 1, len(work)):
            q = work[i][c]
            if q:
                row = work[i]
                new = [p[c] * row[j] - q * p[j] for j in range(ncols)]
                g = 0
                for v in new:
                    g = math.gcd(g, v)
                if g > 1:
                    new = [v // g for v in new]
                work[i] = new
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_at_point(M: PolyMatrix, point: Sequence) -> int:
    """Rank of ``M`` after substituting the rational ``point``."""
    return rational_rank(M.evaluate(point))


# -- presentation reduction -------------------------------------------------------

class SparseMatrix:
    """Mutable row-sparse matrix of polynomials used for pivot elimination."""

    def __init__(self, M: PolyMatrix):
        self.ring = M.ring
        self.rows: dict[int, dict[int, Polynomial]] = {}
        self.cols: dict[int, set[int]] = {j: set() for j in range(M.ncols)}
        for i, row in enumerate(M.data):
            self.rows[i] = {}
            for j, e in enumerate(row):
                if e:
                    self.rows[i][j] = e
                    self.cols[j].add(i)
        self.next_col = M.ncols

    def to_matrix(self) -> tuple[PolyMatrix, list[int], list[int]]:
        rows = sorted(self.rows)
        cols = sorted(j for j, s in self.cols.items() if s)
        z = self.ring.zero()
        data = [[self.rows[i].get(j, z) for j in cols] for i in rows]
        return PolyMatrix(self.ring, data, len(cols)), rows, cols

    def find_unit(self):
        """Constant entry with the smallest Markowitz cost (ties: row, column)."""
        best = None
        for i, row in self.rows.items():
            ri = len(row) - 1
            for j, e in row.items():
                if e.is_constant():
                    cost = (ri * (len(self.cols[j]) - 1), len(e.terms), i, j)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
        return None if best is None else (best[1], best[2])

    def pivot(self, i: int, j: int):
        """Eliminate row ``i`` and column ``j`` using the unit entry there."""
        prow = self.rows.pop(i)
        c = prow.pop(j).constant_value()
        inv = Fraction(1) / Fraction(c)
        col_rows = self.cols.pop(j)
        col_rows.discard(i)
        for l in prow:
            self.cols[l].discard(i)
        for k in col_rows:
            row_k = self.rows[k]
            factor = row_k.pop(j) * inv
            for l, a_il in prow.items():
                new = row_k.get(l)
                upd = a_il * factor
                new = -upd if new is None else new - upd
                if new:
                    row_k[l] = new
                    self.cols[l].add(k)
                else:
                    row_k.pop(l, None)
                    self.cols[l].discard(k)

    def reduce_columns_over_q(self) -> bool:
        """Replace the columns by a reduced echelon basis of their Q-span.

        Returns True if the column set changed.
        """
        active = sorted(j for j, s in self.cols.items() if s)
        if not active:
            return False
        coords = {}
        vectors = []
        for j in active:
            vec = {}
            for i in self.cols[j]:
                for e, c in self.rows[i][j].terms.items():
                    vec[(i, e)] = c
            vectors.append(vec)
        # canonical coordinate order: row index, then decreasing monomial
        key = self.ring.key
        all_coords = set()
        for v in vectors:
            all_coords.update(v)
        order = sorted(all_coords, key=lambda t: (t[0], _neg(key(t[1]))))
        for pos, t in enumerate(order):
            coords[t] = pos
        basis = _echelon(vectors, coords)
        if len(basis) == len(vectors) and all(b == v for b, v in zip(basis, vectors)):
            return False
        for j in active:
            for i in self.cols[j]:
                self.rows[i].pop(j, None)
            self.cols[j] = set()
        ring = self.ring
        for vec in basis:
            j = self.next_col
            self.next_col += 1
            self.cols[j] = set()
            per_row: dict[int, dict] = {}
            for (i, e), c in vec.items():
                per_row.setdefault(i, {})[e] = c
            for i, terms in per_row.items():
                self.rows[i][j] = ring.from_dict(terms)
                self.cols[j].add(i)
        return True


def _neg(k):
    # order-reversing transform of a nested tuple/int key
    if isinstance(k, tuple):
        return tuple(_neg(x) for x in k)
    return -k


def _echelon(vectors: list[dict], coords: dict) -> list[dict]:
    """Reduced row echelon basis (as sparse dicts) of the Q-span of ``vectors``."""
    pivots: dict = {}  # coord -> vector with leading coeff 1 at coord
    order: list = []
    for vec in vectors:
        v = {k: Fraction(c) for k, c in vec.items()}
        while v:
            lead = min(v, key=coords.__getitem__)
            if lead in pivots:
                c = v[lead]
                for k, x in pivots[lead].items():
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
            else:
                c = v[lead]
                v = {k: x / c for k, x in v.items()}
                # back-substitute into existing pivots
                for p in pivots:
                    pv = pivots[p]
                    a = pv.get(lead)
                    if a:
                        for k, x in v.items():
                            nv = pv.get(k, 0) - a * x
                            if nv:
                                pv[k] = nv
                            else:
                                pv.pop(k, None)
                # reduce the new vector by existing pivots
                for p, pv in pivots.items():
                    a = v.get(p)
                    if a:
                        for k, x in pv.items():
                            nv = v.get(k, 0) - a * x
                            if nv:
                                v[k] = nv
                            else:
                                v.pop(k, None)
                pivots[lead] = v
                order.append(lead)
                break
    order.sort(key=coords.__getitem__)
    out = []
    for p in order:
        vec = pivots[p]
        den = 1
        for x in vec.values():
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = {k: int(x * den) for k, x in vec.items()}
        g = 0
        for x in ints.values():
            g = math.gcd(g, x)
        out.append({k: x // g for k, x in ints.items()})
    return out


def eliminate_unit_pivots(M: PolyMatrix, q_linear: bool = True) -> PolyMatrix:
    """A smaller presentation with the same cokernel.

    Repeatedly pivots on constant entries (removing one generator and one
    relation each time) and, when ``q_linear`` is set, replaces the relation
    columns by a reduced basis of their Q-linear span. Fitting ideals of the
    cokernel are unchanged, with indices shifted by the number of removed rows.
    """
    S = SparseMatrix(M)
    while True:
        unit = S.find_unit()
        while unit is not None:
            S.pivot(*unit)
            unit = S.find_unit()
        if not q_linear or not S.reduce_columns_over_q():
            break
        if S.find_unit() is None:
            break
    out, _, _ = S.to_matrix()
    return out
