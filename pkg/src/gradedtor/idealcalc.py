"""Degreewise calculus of homogeneous ideals over the integers.

A homogeneous ideal meets each graded piece of the ring in a lattice of
the free abelian group on the monomials of that degree.  Everything here
works one degree at a time on those lattices.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .exactlin import (
    Lattice,
    Row,
    echelon_rows,
    invariant_factors_of_rows,
    minimal_multiplier_rows,
    saturate_rows,
)
from .polyring import NONE, Monomial, Polynomial, RingSpec, monomial_basis, on_side
from .symfam import h_poly, newton_s


@dataclass(frozen=True)
class GeneratorFamily:
    """The infinite family ``{s_i : i >= start}`` or ``{h_i(n, k) : i >= start}``,
    optionally placed on one tensor side."""

    kind: str
    start: int
    n: int = 0
    k: int = 0
    side: int = NONE

    def __post_init__(self):
        if self.kind not in ("s", "h"):
            raise ValueError(f"unknown generator family {self.kind!r}")
        if self.start < 1:
            raise ValueError("family must start at a positive index")

    def member(self, i: int) -> Polynomial:
        if self.kind == "s":
            p = newton_s(i)
            return on_side(p, self.side) if self.side != NONE else p
        return h_poly(i, self.n, self.k, self.side)

    def up_to(self, d: int) -> list[Polynomial]:
        """Members of degree <= d (member i has degree 2i)."""
        return [self.member(i) for i in range(self.start, d // 2 + 1)]


@dataclass(frozen=True)
class PresentationSpec:
    """ring / (closure(ideal(closed_families)) + ideal(plain_generators))."""

    name: str
    ring: RingSpec
    closed_families: tuple[GeneratorFamily, ...] = ()
    plain_generators: tuple[Polynomial, ...] = field(default=(), hash=False)
    k: int | None = None

    def __post_init__(self):
        for g in self.plain_generators:
            if not g or not g.is_homogeneous() or g.degree <= 0 or g.degree % 2:
                raise ValueError(f"plain generator {g} is not homogeneous of positive even degree")
            self.ring.check(g)

    def with_max_degree(self, d: int) -> PresentationSpec:
        return PresentationSpec(
            self.name, self.ring.with_max_degree(d), self.closed_families, self.plain_generators, self.k
        )


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    ambient_rank: int
    ideal_rank: int
    quotient_rank: int
    torsion_invariants: tuple[int, ...]

    @property
    def is_free(self) -> bool:
        return not self.torsion_invariants


@dataclass(frozen=True)
class MembershipResult:
    """``InIdeal``, ``InClosure(m)`` or ``Outside``."""

    multiplier: int | None

    @property
    def kind(self) -> str:
        if self.multiplier is None:
            return "Outside"
        return "InIdeal" if self.multiplier == 1 else "InClosure"

    def __str__(self) -> str:
        if self.kind == "InClosure":
            return f"InClosure({self.multiplier})"
        return self.kind


IN_IDEAL = MembershipResult(1)
OUTSIDE = MembershipResult(None)


def _index(ring: RingSpec, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(ring, d))}


def generator_rows(ring: RingSpec, gens: list[Polynomial], d: int) -> list[Row]:
    """Rows m*g for each generator g of degree <= d and monomial m of degree d - deg g."""
    index = _index(ring, d)
    rows = []
    for g in gens:
        dg = g.degree
        if dg > d:
            continue
        terms = list(g.terms.items())
        for m in monomial_basis(ring, d - dg):
            rows.append({index[m * gm]: coef for gm, coef in terms})
    return rows


def _family_gens(p: PresentationSpec, d: int) -> list[Polynomial]:
    gens = []
    for fam in p.closed_families:
        gens += fam.up_to(d)
    return gens


def degree_piece(p: PresentationSpec, d: int, closure: bool, close_plain: bool) -> tuple[int, list[Row]]:
    """Ambient rank and an echelon basis of the degree-d ideal lattice."""
    if d > p.ring.max_degree:
        raise ValueError(f"degree {d} exceeds max_degree {p.ring.max_degree} of {p.name}")
    n = len(monomial_basis(p.ring, d))
    if n == 0:
        return 0, []
    fam = generator_rows(p.ring, _family_gens(p, d), d)
    plain = generator_rows(p.ring, list(p.plain_generators), d)
    if not closure:
        return n, echelon_rows(fam + plain, n)
    if close_plain:
        return n, saturate_rows(fam + plain, n)
    closed = saturate_rows(fam, n)
    if not plain:
        return n, closed
    return n, echelon_rows(closed + plain, n)


def ideal_lattice(
    p: PresentationSpec, d: int, use_closure: bool = True, close_plain: bool = False
) -> Lattice:
    """Degree-d piece of the ideal in monomial-basis coordinates.

    With ``use_closure`` the closed families are saturated before the plain
    generators are added; ``close_plain`` saturates after adding them instead.
    """
    n, basis = degree_piece(p, d, use_closure, close_plain)
    return Lattice.from_rows(basis, n)


def vector_of(f: Polynomial, ring: RingSpec, d: int) -> Row:
    index = _index(ring, d)
    row = {}
    for m, coef in f.terms.items():
        if m not in index:
            raise ValueError(f"monomial {m} is not in degree {d} of {ring.name}")
        row[index[m]] = coef
    return row


def membership(
    f: Polynomial, p: PresentationSpec, closure: bool = False, close_plain: bool = False
) -> MembershipResult:
    """Decide whether f, or some multiple of it, lies in the ideal of ``p``.

    By default the ideal is taken without rational closure, so that
    ``InClosure(m)`` reports the order of f in the quotient.
    """
    if not f:
        return IN_IDEAL
    if not f.is_homogeneous():
        raise ValueError(f"{f} is not homogeneous")
    p.ring.check(f)
    d = f.degree
    if d > p.ring.max_degree:
        p = p.with_max_degree(d)
    n, basis = degree_piece(p, d, closure, close_plain)
    mult = minimal_multiplier_rows(vector_of(f, p.ring, d), basis)
    return MembershipResult(mult)


def report_from_basis(d: int, n: int, basis: list[Row]) -> DegreeReport:
    torsion = tuple(v for v in invariant_factors_of_rows(basis, n) if v > 1) if basis else ()
    return DegreeReport(d, n, len(basis), n - len(basis), torsion)


def quotient_report(
    p: PresentationSpec, d: int, closure: bool = True, close_plain: bool = False
) -> DegreeReport:
    if d % 2:
        if d > p.ring.max_degree:
            raise ValueError(f"degree {d} exceeds max_degree {p.ring.max_degree} of {p.name}")
        return DegreeReport(d, 0, 0, 0, ())
    n, basis = degree_piece(p, d, closure, close_plain)
    return report_from_basis(d, n, basis)


def thread_count() -> int:
    """Worker cap from GRADEDTOR_THREADS (default 1)."""
    raw = os.environ.get("GRADEDTOR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"GRADEDTOR_THREADS must be an integer, got {raw!r}") from None


def _report_job(args) -> DegreeReport:
    return quotient_report(*args)


def scan_reports(
    p: PresentationSpec,
    D: int,
    closure: bool = True,
    close_plain: bool = False,
    threads: int | None = None,
) -> list[DegreeReport]:
    """Reports for every even degree 0..D, in degree order."""
    if D > p.ring.max_degree:
        raise ValueError(f"degree {D} exceeds max_degree {p.ring.max_degree} of {p.name}")
    jobs = [(p, d, closure, close_plain) for d in range(0, D + 1, 2)]
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(jobs) <= 2:
        return [_report_job(j) for j in jobs]
    # heaviest degrees first so workers stay busy; results re-sorted below
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        out = list(pool.map(_report_job, reversed(jobs)))
    return sorted(out, key=lambda r: r.degree)


def poincare_scan(
    p: PresentationSpec, D: int, closure: bool = True, threads: int | None = None
) -> list[tuple[int, int]]:
    return [(r.degree, r.quotient_rank) for r in scan_reports(p, D, closure, threads=threads)]


@lru_cache(maxsize=None)
def ambient_series(ring: RingSpec, D: int) -> tuple[int, ...]:
    """Coefficients of prod over variables of 1/(1 - t^deg v), t^0..t^D."""
    coeffs = [1] + [0] * D
    for v in ring.variables():
        for i in range(v.degree, D + 1):
            coeffs[i] += coeffs[i - v.degree]
    return tuple(coeffs)
