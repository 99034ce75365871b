"""Exact integer linear algebra on sparse row matrices.

Rows are stored as ``{column: value}`` dicts with no zero entries.  All
arithmetic is on Python ints, so nothing ever overflows.  The echelon
routine below is the workhorse: Hermite and Smith forms, saturation and
exact solving are all built on it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Row = dict[int, int]


class IntMatrix:
    """Immutable sparse integer matrix."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Row | Sequence[int]], ncols: int | None = None):
        stored: list[Row] = []
        width = 0
        for r in rows:
            if isinstance(r, dict):
                row = {int(c): int(v) for c, v in r.items() if v}
                if row:
                    width = max(width, max(row) + 1)
            else:
                row = {j: int(v) for j, v in enumerate(r) if v}
                width = max(width, len(r))
            stored.append(row)
        if ncols is None:
            ncols = width
        elif width > ncols:
            raise ValueError(f"row entry in column {width - 1} exceeds ncols={ncols}")
        self.nrows = len(stored)
        self.ncols = ncols
        self._rows = tuple(stored)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls([{} for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([{i: 1} for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> Row:
        return dict(self._rows[i])

    def rows(self) -> list[Row]:
        return [dict(r) for r in self._rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self._rows[i].get(j, 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> IntMatrix:
        cols: list[Row] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return IntMatrix(cols, self.nrows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self._rows:
            acc: Row = {}
            for k, a in r.items():
                _axpy(acc, a, other._rows[k])
            out.append(acc)
        return IntMatrix(out, other.ncols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_dense()!r})"


def _axpy(acc: Row, a: int, row: Row) -> None:
    """acc += a * row, dropping zeros."""
    for j, v in row.items():
        w = acc.get(j, 0) + a * v
        if w:
            acc[j] = w
        else:
            acc.pop(j, None)


def _lead(row: Row) -> int:
    return min(row)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _echelon(
    rows: list[Row], limit: int, aug: list[Row] | None = None
) -> tuple[list[tuple[Row, Row | None]], list[Row | None]]:
    """Integer row echelon form restricted to columns below ``limit``.

    Returns ``(pivots, zero_aug)`` where ``pivots`` is a list of (row, aug)
    sorted by pivot column with positive pivots, and ``zero_aug`` holds the
    companion parts of rows that became zero.  ``aug`` rows receive the same
    unimodular operations as ``rows``.
    """
    if aug is None:
        work = [(r, None) for r in rows]
    else:
        work = list(zip(rows, aug))
    buckets: dict[int, list[tuple[Row, Row | None]]] = {}
    heap: list[int] = []
    zero_aug: list[Row | None] = []

    def place(item: tuple[Row, Row | None]) -> None:
        r = item[0]
        if not r:
            zero_aug.append(item[1])
            return
        c = _lead(r)
        if c >= limit:
            zero_aug.append(item[1])
            return
        if c not in buckets:
            buckets[c] = []
            heapq.heappush(heap, c)
        buckets[c].append(item)

    for item in work:
        place(item)

    pivots: list[tuple[Row, Row | None]] = []
    while heap:
        c = heapq.heappop(heap)
        group = buckets.pop(c)
        while len(group) > 1:
            group.sort(key=lambda it: (abs(it[0][c]), len(it[0])))
            prow, paug = group[0]
            p = prow[c]
            rest = []
            for r, a in group[1:]:
                v = r[c]
                if v % p == 0:
                    q = v // p
                    _axpy(r, -q, prow)
                    if a is not None:
                        _axpy(a, -q, paug)
                    place((r, a))
                else:
                    # xgcd combine: (prow, r) -> (g-row, zero-lead row), unimodular
                    g, s, t = _xgcd(p, v)
                    new = {}
                    _axpy(new, s, prow)
                    _axpy(new, t, r)
                    other = {}
                    _axpy(other, v // g, prow)
                    _axpy(other, -(p // g), r)
                    naug = oaug = None
                    if a is not None:
                        naug = {}
                        _axpy(naug, s, paug)
                        _axpy(naug, t, a)
                        oaug = {}
                        _axpy(oaug, v // g, paug)
                        _axpy(oaug, -(p // g), a)
                    prow, paug, p = new, naug, g
                    place((other, oaug))
            group = [(prow, paug)] + rest
        r, a = group[0]
        if r[c] < 0:
            for j in r:
                r[j] = -r[j]
            if a is not None:
                for j in a:
                    a[j] = -a[j]
        pivots.append((r, a))
    return pivots, zero_aug


def _reduce_above(pivots: list[tuple[Row, Row | None]]) -> None:
    """Reduce entries above each pivot into [0, pivot), in place."""
    where = {_lead(r): idx for idx, (r, _) in enumerate(pivots)}
    for idx, (r, a) in enumerate(pivots):
        lead = _lead(r)
        cand = [j for j in r if j != lead and j in where]
        heapq.heapify(cand)
        seen = set()
        while cand:
            j = heapq.heappop(cand)
            if j in seen or j not in r:
                continue
            seen.add(j)
            prow, paug = pivots[where[j]]
            q = r[j] // prow[j]
            if q:
                _axpy(r, -q, prow)
                if a is not None:
                    _axpy(a, -q, paug)
                for jj in prow:
                    if jj > j and jj in where and jj not in seen:
                        heapq.heappush(cand, jj)


@dataclass(frozen=True)
class HermiteForm:
    """Row-style Hermite normal form ``transform @ original == H``.

    ``transform`` is ``None`` when it was not requested.
    """

    H: IntMatrix
    transform: IntMatrix | None
    rank: int
    pivot_cols: tuple[int, ...]


def hnf(m: IntMatrix, *, with_transform: bool = True) -> HermiteForm:
    rows = m.rows()
    aug = [{i: 1} for i in range(m.nrows)] if with_transform else None
    pivots, zero_aug = _echelon(rows, m.ncols, aug)
    _reduce_above(pivots)
    H = [r for r, _ in pivots]
    rank = len(H)
    H += [{} for _ in range(m.nrows - rank)]
    transform = None
    if with_transform:
        transform = IntMatrix([a for _, a in pivots] + list(zero_aug), m.nrows)
    return HermiteForm(
        H=IntMatrix(H, m.ncols),
        transform=transform,
        rank=rank,
        pivot_cols=tuple(_lead(r) for r, _ in pivots),
    )


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix."""

    invariants: tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)


def _dense_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense matrix."""
    a = [row[:] for row in mat if any(row)]
    diag = []
    while a and a[0]:
        nr, nc = len(a), len(a[0])
        # pick the smallest nonzero entry as pivot
        best = None
        for i in range(nr):
            for j in range(nc):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[0], a[pi] = a[pi], a[0]
        for row in a:
            row[0], row[pj] = row[pj], row[0]
        while True:
            p = a[0][0]
            dirty = False
            for i in range(1, nr):
                v = a[i][0]
                if v:
                    q = v // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                    if a[i][0]:
                        dirty = True
            for j in range(1, nc):
                v = a[0][j]
                if v:
                    q = v // p
                    for row in a:
                        row[j] -= q * row[0]
                    if a[0][j]:
                        dirty = True
            if not dirty:
                break
            # move the smallest nonzero entry in row/col 0 into the corner
            cands = [(abs(a[i][0]), i, 0) for i in range(nr) if a[i][0]]
            cands += [(abs(a[0][j]), 0, j) for j in range(nc) if a[0][j]]
            _, i, j = min(cands)
            if i:
                a[0], a[i] = a[i], a[0]
            if j:
                for row in a:
                    row[0], row[j] = row[j], row[0]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:] if any(row[1:])]
    return _chain(diag)


def _chain(values: list[int]) -> list[int]:
    vals = sorted(v for v in values if v)
    n = len(vals)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(vals[i], vals[j])
            vals[i], vals[j] = g, vals[i] * vals[j] // g
    return vals


def _split_units(pivots: list[Row]) -> tuple[list[Row], list[Row], set[int]]:
    """Separate unit-pivot rows and clear their columns from the other rows.

    After this the non-unit rows have no entries in unit-pivot columns, so
    Z^n / span(all) is isomorphic to Z^(n-u) / span(non-unit rows).
    """
    units = {}
    others = []
    for r in pivots:
        if r[_lead(r)] == 1:
            units[_lead(r)] = r
        else:
            others.append(r)
    cleared = []
    for r in others:
        r = dict(r)
        cand = [j for j in r if j in units]
        heapq.heapify(cand)
        while cand:
            j = heapq.heappop(cand)
            v = r.get(j)
            if not v:
                continue
            u = units[j]
            _axpy(r, -v, u)
            for jj in u:
                if jj > j and jj in units and jj in r:
                    heapq.heappush(cand, jj)
        cleared.append(r)
    return list(units.values()), cleared, set(units)


def _compress(rows: list[Row], drop: set[int]) -> tuple[list[list[int]], list[int]]:
    cols = sorted({j for r in rows for j in r} - drop)
    index = {j: i for i, j in enumerate(cols)}
    dense = []
    for r in rows:
        d = [0] * len(cols)
        for j, v in r.items():
            d[index[j]] = v
        dense.append(d)
    return dense, cols


def echelon_rows(rows: Iterable[Row], ncols: int) -> list[Row]:
    """Row echelon basis (positive pivots, not reduced) of the span of ``rows``."""
    pivots, _ = _echelon([dict(r) for r in rows], ncols)
    return [r for r, _ in pivots]


def invariant_factors_of_rows(rows: Iterable[Row], ncols: int) -> tuple[int, ...]:
    pivots = echelon_rows(rows, ncols)
    units, others, unit_cols = _split_units(pivots)
    if not others:
        return (1,) * len(units)
    dense, _ = _compress(others, unit_cols)
    return (1,) * len(units) + tuple(_dense_invariants(dense))


def snf(m: IntMatrix) -> SmithForm:
    inv = invariant_factors_of_rows(m.rows(), m.ncols)
    return SmithForm(invariants=inv, rank=len(inv))


def rational_rank(m: IntMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on a dense copy."""
    a = m.to_dense()
    nr, nc = m.nrows, m.ncols
    rank = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, nr):
            for j in range(c + 1, nc):
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == nr:
            break
    return rank


def _mod_left_kernel(dense: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x in F_p^r : x A = 0 mod p} for a dense r x n matrix A."""
    r = len(dense)
    rows = [[v % p for v in row] + [1 if i == j else 0 for j in range(r)] for i, row in enumerate(dense)]
    n = len(dense[0]) if dense else 0
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, r) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(r):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return [row[n:] for row in rows[rank:]]


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _saturate_dense(dense: list[list[int]]) -> list[list[int]]:
    """Saturate the row lattice of a small dense full-row-rank matrix."""
    ncols = len(dense[0])
    rows = [{j: v for j, v in enumerate(r) if v} for r in dense]
    basis = echelon_rows(rows, ncols)
    det = 1
    for r in basis:
        det *= r[_lead(r)]
    for p in _prime_factors(det):
        while True:
            mat = [[r.get(j, 0) for j in range(ncols)] for r in basis]
            ker = _mod_left_kernel(mat, p)
            if not ker:
                break
            extra = []
            for x in ker:
                v = [sum(xi * row[j] for xi, row in zip(x, mat)) for j in range(ncols)]
                extra.append({j: w // p for j, w in enumerate(v) if w})
            basis = echelon_rows(basis + extra, ncols)
    return [[r.get(j, 0) for j in range(ncols)] for r in basis]


def saturate_rows(rows: Iterable[Row], ncols: int) -> list[Row]:
    """Echelon basis of the saturation of the span of ``rows`` in Z^ncols."""
    pivots = echelon_rows(rows, ncols)
    units, others, unit_cols = _split_units(pivots)
    if not others:
        return pivots
    dense, cols = _compress(others, unit_cols)
    lifted = [{cols[i]: v for i, v in enumerate(r) if v} for r in _saturate_dense(dense)]
    return echelon_rows(units + lifted, ncols)


@dataclass(frozen=True, eq=False)
class Lattice:
    """Subgroup of Z^ambient_rank spanned by the rows of ``generators``.

    Two lattices compare equal when their Hermite forms agree.
    """

    ambient_rank: int
    generators: IntMatrix
    _hnf: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if self.generators.ncols != self.ambient_rank:
            raise ValueError("generator width does not match ambient rank")

    @classmethod
    def from_rows(cls, rows: Iterable[Row | Sequence[int]], ambient_rank: int) -> Lattice:
        return cls(ambient_rank, IntMatrix(rows, ambient_rank))

    def hermite(self) -> HermiteForm:
        if not self._hnf:
            self._hnf.append(hnf(self.generators, with_transform=False))
        return self._hnf[0]

    def basis(self) -> list[Row]:
        h = self.hermite()
        return h.H.rows()[: h.rank]

    @property
    def rank(self) -> int:
        return len(echelon_rows(self.generators.rows(), self.ambient_rank))

    def __contains__(self, v: Sequence[int]) -> bool:
        return minimal_multiplier(v, self) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis() == other.basis()

    def __hash__(self) -> int:
        return hash((self.ambient_rank, tuple(tuple(sorted(r.items())) for r in self.basis())))


def saturate(lat: Lattice) -> Lattice:
    return Lattice.from_rows(saturate_rows(lat.generators.rows(), lat.ambient_rank), lat.ambient_rank)


def solve_rational(v: Row, basis: list[Row]) -> dict[int, Fraction] | None:
    """Coefficients y with sum y_i basis_i == v, or None if v is outside the Q-span.

    ``basis`` must be in echelon form (distinct increasing lead columns).
    """
    residual = {j: Fraction(x) for j, x in v.items() if x}
    y: dict[int, Fraction] = {}
    for i, row in enumerate(basis):
        c = _lead(row)
        if any(j < c for j in residual):
            return None
        coef = residual.get(c)
        if not coef:
            continue
        coef = coef / row[c]
        y[i] = coef
        for j, w in row.items():
            nv = residual.get(j, 0) - coef * w
            if nv:
                residual[j] = nv
            else:
                residual.pop(j, None)
    if residual:
        return None
    return y


def minimal_multiplier_rows(v: Row, basis: list[Row]) -> int | None:
    y = solve_rational(v, basis)
    if y is None:
        return None
    return lcm(1, *(q.denominator for q in y.values()))


def minimal_multiplier(v: Sequence[int] | Row, lat: Lattice) -> int | None:
    """Smallest m > 0 with m*v in ``lat``, or None when no multiple lies in it."""
    if isinstance(v, dict):
        if v and (min(v) < 0 or max(v) >= lat.ambient_rank):
            raise ValueError("vector index outside the ambient lattice")
        row = {j: x for j, x in v.items() if x}
    else:
        if len(v) != lat.ambient_rank:
            raise ValueError(f"vector of length {len(v)} in ambient of rank {lat.ambient_rank}")
        row = {j: int(x) for j, x in enumerate(v) if x}
    return minimal_multiplier_rows(row, echelon_rows(lat.generators.rows(), lat.ambient_rank))
