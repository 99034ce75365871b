import itertools

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from gradedtor.catalog import get_entry
from gradedtor.exactlin import Lattice, minimal_multiplier, saturate
from gradedtor.idealcalc import (
    GeneratorFamily,
    PresentationSpec,
    generator_rows,
    ideal_lattice,
    membership,
    poincare_scan,
    quotient_report,
    vector_of,
)
from gradedtor.polyring import RingSpec, c, monomial_basis, x
from gradedtor.symfam import h_poly

BGU21 = get_entry("BGU(2,1)", 12).presentation
SO3 = get_entry("SO3", 12).presentation


def series_by_counting(degrees, D):
    """Coefficient of t^d in prod 1/(1-t^g) by counting exponent vectors."""
    out = []
    for d in range(0, D + 1, 2):
        ranges = [range(d // g + 1) for g in degrees]
        out.append(sum(1 for e in itertools.product(*ranges) if sum(a * g for a, g in zip(e, degrees)) == d))
    return out


def sympy_torsion(rows, n):
    if not rows:
        return ()
    dense = Matrix([[r.get(j, 0) for j in range(n)] for r in rows])
    return tuple(int(v) for v in invariant_factors(dense, domain=ZZ) if abs(v) > 1)


def test_ideal_lattice_examples():
    assert ideal_lattice(BGU21, 4, use_closure=False).rank == 1
    assert ideal_lattice(BGU21, 2, use_closure=False).rank == 0
    assert ideal_lattice(SO3, 2).rank == 1


def test_membership_examples(y):
    assert str(membership(y, BGU21)) == "InClosure(2)"
    assert str(membership(h_poly(2, 2, 1), BGU21)) == "InIdeal"
    assert str(membership(c(1) ** 2, BGU21)) == "Outside"


def test_membership_c1_squared_outside_by_hand():
    # degree-4 lattice is spanned by h2 alone; c1^2 is not a rational multiple of it
    lat = ideal_lattice(BGU21, 4, use_closure=False)
    assert lat == Lattice.from_rows([vector_of(h_poly(2, 2, 1), BGU21.ring, 4)], 5)
    assert minimal_multiplier(vector_of(c(1) ** 2, BGU21.ring, 4), lat) is None


def test_membership_with_closure(y):
    assert str(membership(y, BGU21, closure=True)) == "InIdeal"


def test_membership_errors():
    with pytest.raises(ValueError):
        membership(c(1) + c(2), BGU21)
    with pytest.raises(ValueError):
        membership(c(3), BGU21)


def test_membership_extends_degree_bound():
    small = get_entry("BGU(2,1)", 4).presentation
    assert str(membership(h_poly(5, 2, 1), small)) == "InIdeal"


def test_quotient_report_examples():
    closed = quotient_report(BGU21, 8)
    assert (closed.quotient_rank, closed.torsion_invariants) == (9, ())
    unclosed = quotient_report(BGU21, 8, closure=False)
    assert 2 in unclosed.torsion_invariants
    for p in (BGU21, SO3, get_entry("Spinc4(1)", 4).presentation, get_entry("loopU(3)", 4).presentation):
        r = quotient_report(p, 0)
        assert (r.ambient_rank, r.quotient_rank, r.torsion_invariants) == (1, 1, ())


@pytest.mark.parametrize("d", [8, 10, 12])
def test_unclosed_torsion_matches_sympy(d):
    gens = [h_poly(i, 2, 1) for i in range(2, d // 2 + 1)]
    rows = generator_rows(BGU21.ring, gens, d)
    n = len(monomial_basis(BGU21.ring, d))
    assert quotient_report(BGU21, d, closure=False).torsion_invariants == sympy_torsion(rows, n)


def test_unclosed_degree8_full_invariants():
    assert quotient_report(BGU21, 8, closure=False).torsion_invariants == (2,)


def test_poincare_scan_examples():
    assert poincare_scan(BGU21, 8) == list(zip(range(0, 9, 2), [1, 2, 4, 6, 9]))
    assert [r for _, r in poincare_scan(SO3, 8)] == [1, 1, 2, 2, 3]
    loop = get_entry("loopU(2)", 8).presentation
    assert [r for _, r in poincare_scan(loop, 8)] == [1, 1, 1, 1, 1]


def test_series_oracle_values():
    assert series_by_counting([2, 2, 4], 8) == [1, 2, 4, 6, 9]
    assert series_by_counting([2, 4], 8) == [1, 1, 2, 2, 3]
    assert series_by_counting([2], 8) == [1, 1, 1, 1, 1]


PRESENTATIONS = [
    get_entry("BGU(2,1)", 12).presentation,
    get_entry("BGU(2,0)", 12).presentation,
    get_entry("BGU(3,1)", 12).presentation,
    get_entry("loopU(3)", 12).presentation,
    get_entry("SO3", 12).presentation,
    get_entry("Spinc4(1)", 8).presentation,
    get_entry("SO4", 8).presentation,
]


@pytest.mark.parametrize("p", PRESENTATIONS, ids=lambda p: p.name)
def test_rank_bookkeeping_and_freeness(p):
    for d in range(0, p.ring.max_degree + 1, 2):
        for closure in (True, False):
            r = quotient_report(p, d, closure)
            assert r.quotient_rank + r.ideal_rank == r.ambient_rank
            assert r.ambient_rank == len(monomial_basis(p.ring, d))
        assert quotient_report(p, d).torsion_invariants == ()


@pytest.mark.parametrize("p", PRESENTATIONS, ids=lambda p: p.name)
def test_closure_is_saturation_of_unclosed(p):
    fams_only = PresentationSpec(p.name, p.ring, p.closed_families)
    for d in range(2, p.ring.max_degree + 1, 2):
        closed = ideal_lattice(fams_only, d, use_closure=True)
        unclosed = ideal_lattice(fams_only, d, use_closure=False)
        assert closed == saturate(unclosed)


@pytest.mark.parametrize("d", [8, 10])
def test_closure_characterised_independently(d):
    """Closed lattice contains the unclosed one with equal rank and a free quotient (checked by sympy)."""
    closed = ideal_lattice(BGU21, d)
    unclosed = ideal_lattice(BGU21, d, use_closure=False)
    assert closed.rank == unclosed.rank
    for row in unclosed.generators.rows():
        assert minimal_multiplier(row, closed) == 1
    for row in closed.generators.rows():
        assert minimal_multiplier(row, unclosed) is not None
    assert sympy_torsion(closed.generators.rows(), closed.ambient_rank) == ()


def test_membership_multiplier_properties(y):
    for f in (y, c(1) * y, x(1) * y, h_poly(3, 2, 1) + y * 0):
        res = membership(f, BGU21)
        if res.multiplier is None:
            continue
        m = res.multiplier
        assert str(membership(m * f, BGU21)) == "InIdeal"
        for k in range(1, 4):
            assert str(membership(k * m * f, BGU21)) == "InIdeal"
        for mm in range(1, m):
            assert str(membership(mm * f, BGU21)) != "InIdeal"


def test_bruteforce_membership_degree6():
    ring = RingSpec("U2", c_count=2, max_degree=6)
    pres = PresentationSpec("U2", ring, (GeneratorFamily("h", 2, 2, 1),))
    gens = [h_poly(2, 2, 1), h_poly(3, 2, 1)]
    rows = generator_rows(ring, gens, 6)
    n = len(monomial_basis(ring, 6))
    reach = {}
    for combo in itertools.product(range(-5, 6), repeat=len(rows)):
        v = tuple(sum(a * r.get(j, 0) for a, r in zip(combo, rows)) for j in range(n))
        reach.setdefault(v, combo)
    basis = monomial_basis(ring, 6)
    from math import gcd
    from gradedtor.polyring import Polynomial

    checked = 0
    for v in list(reach):
        g = 0
        for a in v:
            g = gcd(g, a)
        if g <= 1:
            continue
        prim = tuple(a // g for a in v)
        f = Polynomial({m: a for m, a in zip(basis, prim) if a})
        brute = next(m for m in range(1, g + 1) if tuple(m * a for a in prim) in reach)
        assert membership(f, pres).multiplier == brute
        checked += 1
    assert checked > 0
    # every reachable vector is InIdeal
    for v in list(reach)[:200]:
        f = Polynomial({m: a for m, a in zip(basis, v) if a})
        assert membership(f, pres).multiplier == 1


def test_close_plain_flag_is_exposed():
    so3 = get_entry("SO3", 8).presentation
    for d in range(0, 9, 2):
        a = quotient_report(so3, d)
        b = quotient_report(so3, d, close_plain=True)
        assert b.torsion_invariants == ()
        assert a.quotient_rank == b.quotient_rank


def test_presentation_rejects_bad_plain_generator():
    with pytest.raises(ValueError):
        PresentationSpec("bad", BGU21.ring, (), (c(1) + c(2),))
    with pytest.raises(ValueError):
        GeneratorFamily("q", 2)
