import itertools

import pytest

from gradedtor.catalog import (
    SHIFT,
    STANDARD_ENTRIES,
    PoincareProduct,
    bgauge_series,
    default_degree,
    even_coefficients,
    get_entry,
    is_two_sided,
    loop_series,
    parse_entry_name,
    series_coefficients,
)
from gradedtor.idealcalc import poincare_scan, quotient_report


def counted(num, den, D):
    """Expand prod(1-t^e) / prod(1-t^g) by brute force over exponent vectors."""
    out = []
    for d in range(D + 1):
        total = 0
        for signs in itertools.product((0, 1), repeat=len(num)):
            shift = sum(e for e, s in zip(num, signs) if s)
            if shift > d:
                continue
            rest = d - shift
            ways = sum(
                1
                for v in itertools.product(*[range(rest // g + 1) for g in den])
                if sum(a * g for a, g in zip(v, den)) == rest
            )
            total += (-1) ** sum(signs) * ways
        out.append(total)
    return out


def test_series_examples():
    assert series_coefficients(PoincareProduct((), ((2, 1),)), 6) == [1, 0, 1, 0, 1, 0, 1]
    assert even_coefficients(bgauge_series(2), 8) == [1, 2, 4, 6, 9]
    assert series_coefficients(PoincareProduct(((2, 1),), ((2, 1),)), 6) == [1, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize(
    "series, num, den",
    [
        (loop_series(3), [], [2, 4]),
        (bgauge_series(2), [], [2, 4, 2]),
        (SHIFT * bgauge_series(2), [2], [2, 4, 2]),
        (SHIFT * bgauge_series(2) * bgauge_series(2), [2], [2, 4, 2, 2, 4, 2]),
        (SHIFT * SHIFT * bgauge_series(3), [2, 2], [2, 4, 6, 2, 4]),
    ],
)
def test_series_against_counting(series, num, den):
    assert series_coefficients(series, 12) == counted(num, den, 12)


def test_bad_factor_rejected():
    with pytest.raises(ValueError):
        PoincareProduct((), ((3, 1),))


@pytest.mark.parametrize("n", [2, 3])
def test_loop_entries_match_bott(n):
    e = get_entry(f"loopU({n})", 12)
    assert [r for _, r in poincare_scan(e.presentation, 12)] == e.expected(12)


def test_bgauge_one_has_polynomial_series():
    e = get_entry("BGU(1,0)", 4)
    assert [r for _, r in poincare_scan(e.presentation, 4)] == [1, 1, 1]


@pytest.mark.parametrize("k", [-3, 0, 1, 2, 5])
def test_bgauge_ranks_do_not_depend_on_k(k):
    e = get_entry(f"BGU(2,{k})", 10)
    assert [r for _, r in poincare_scan(e.presentation, 10)] == [1, 2, 4, 6, 9, 12]


def test_small_degree_ranks():
    assert quotient_report(get_entry("Spinc4(1)", 2).presentation, 2).quotient_rank == 3
    assert quotient_report(get_entry("Spinc3(0)", 4).presentation, 4).quotient_rank == 4
    assert quotient_report(get_entry("SO3", 2).presentation, 2).quotient_rank == 1
    assert quotient_report(get_entry("SO4", 2).presentation, 2).quotient_rank == 2


@pytest.mark.parametrize("name", STANDARD_ENTRIES)
def test_standard_entries_low_degree(name):
    e = get_entry(name, 8)
    assert [r for _, r in poincare_scan(e.presentation, 8)] == e.expected(8)
    assert e.name == name
    assert e.provenance


def test_name_parsing():
    assert parse_entry_name("BGU(2,1)") == ("BGU", (2, 1))
    assert parse_entry_name(" SO3 ") == ("SO3", ())
    assert parse_entry_name("Spinc4(-1)") == ("Spinc4", (-1,))
    assert is_two_sided("SO4") and not is_two_sided("SO3")
    assert default_degree("Spinc4(0)") == 16 and default_degree("loopU(2)") == 20
    assert get_entry("SO4").presentation.ring.max_degree == 16


@pytest.mark.parametrize("bad", ["BGU(2)", "SO5", "loopU(x)", "BGU(2,1,3)", "", "SO3(1)"])
def test_bad_names(bad):
    with pytest.raises(KeyError):
        get_entry(bad)


@pytest.mark.parametrize("bad", ["loopU(1)", "BGU(0,1)"])
def test_bad_parameters(bad):
    with pytest.raises(ValueError):
        get_entry(bad)


def test_odd_degree_rejected():
    with pytest.raises(ValueError):
        get_entry("SO3", 7)
