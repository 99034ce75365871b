"""Named gauge-group presentations and their expected Poincaré series."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .idealcalc import GeneratorFamily, PresentationSpec
from .polyring import LEFT, RIGHT, RingSpec, c, x

DEFAULT_DEGREE = 20
DEFAULT_DEGREE_TWO_SIDED = 16
MAX_DEGREE_CAP = 40


@dataclass(frozen=True)
class PoincareProduct:
    """prod (1 - t^e)^m over ``numerator_factors`` divided by the same over
    ``denominator_factors``."""

    numerator_factors: tuple[tuple[int, int], ...] = ()
    denominator_factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for e, m in self.numerator_factors + self.denominator_factors:
            if e <= 0 or e % 2 or m < 0:
                raise ValueError(f"bad factor (1 - t^{e})^{m}")

    def __mul__(self, other: PoincareProduct) -> PoincareProduct:
        return PoincareProduct(
            _merge(self.numerator_factors + other.numerator_factors),
            _merge(self.denominator_factors + other.denominator_factors),
        )

    def __str__(self) -> str:
        def fmt(fs):
            return "".join(f"(1-t^{e})" + (f"^{m}" if m > 1 else "") for e, m in fs) or "1"

        return f"{fmt(self.numerator_factors)} / {fmt(self.denominator_factors)}"


def _merge(factors) -> tuple[tuple[int, int], ...]:
    acc = Counter()
    for e, m in factors:
        acc[e] += m
    return tuple(sorted((e, m) for e, m in acc.items() if m))


def series_coefficients(s: PoincareProduct, D: int) -> list[int]:
    """Coefficients of t^0..t^D."""
    coeffs = [1] + [0] * D
    for e, m in s.numerator_factors:
        for _ in range(m):
            # multiply by (1 - t^e), high to low
            for i in range(D, e - 1, -1):
                coeffs[i] -= coeffs[i - e]
    for e, m in s.denominator_factors:
        for _ in range(m):
            # divide by (1 - t^e)
            for i in range(e, D + 1):
                coeffs[i] += coeffs[i - e]
    return coeffs


def even_coefficients(s: PoincareProduct, D: int) -> list[int]:
    return series_coefficients(s, D)[::2]


def _geometric(exps) -> PoincareProduct:
    return PoincareProduct((), _merge((e, 1) for e in exps))


def loop_series(n: int) -> PoincareProduct:
    return _geometric(2 * i for i in range(1, n))


def bgauge_series(n: int) -> PoincareProduct:
    return _geometric(2 * i for i in range(1, n + 1)) * loop_series(n)


SHIFT = PoincareProduct(((2, 1),), ())


@dataclass(frozen=True)
class CatalogEntry:
    presentation: PresentationSpec
    expected_series: PoincareProduct | None
    provenance: str

    @property
    def name(self) -> str:
        return self.presentation.name

    @property
    def two_sided(self) -> bool:
        return self.presentation.ring.two_sided

    def expected(self, D: int) -> list[int] | None:
        if self.expected_series is None:
            return None
        return even_coefficients(self.expected_series, D)


def _check_degree(D: int) -> int:
    if D < 0 or D % 2:
        raise ValueError(f"degree bound must be a non-negative even integer, got {D}")
    return D


def entry_loop_U(n: int, D: int = DEFAULT_DEGREE) -> CatalogEntry:
    if n < 2:
        raise ValueError("loopU needs n >= 2")
    ring = RingSpec("Z[x]", c_count=0, max_degree=_check_degree(D))
    pres = PresentationSpec(f"loopU({n})", ring, (GeneratorFamily("s", n),))
    return CatalogEntry(pres, loop_series(n), "integral cohomology of the loop space of U(n) (Bott)")


def entry_bgauge_U(n: int, k: int, D: int = DEFAULT_DEGREE) -> CatalogEntry:
    if n < 1:
        raise ValueError("BGU needs n >= 1")
    ring = RingSpec(f"Z[c1..c{n},x]", c_count=n, max_degree=_check_degree(D))
    pres = PresentationSpec(f"BGU({n},{k})", ring, (GeneratorFamily("h", n, n, k),), k=k)
    return CatalogEntry(
        pres,
        bgauge_series(n),
        "cohomology of BG_k(S^2,U(n)): rational closure of (h_n, h_n+1, ...)",
    )


def entry_spinc3(k: int, D: int = DEFAULT_DEGREE) -> CatalogEntry:
    base = entry_bgauge_U(2, k, D)
    pres = PresentationSpec(f"Spinc3({k})", base.presentation.ring, base.presentation.closed_families, k=k)
    return CatalogEntry(pres, base.expected_series, "Spin^c(3) = U(2): same presentation as BGU(2,k)")


def _two_sided_ring(D: int) -> RingSpec:
    return RingSpec("Z[c1,c2,x]^(x2)", c_count=2, two_sided=True, max_degree=_check_degree(D))


def entry_spinc4(k: int, D: int = DEFAULT_DEGREE_TWO_SIDED) -> CatalogEntry:
    fams = (GeneratorFamily("h", 2, 2, k, LEFT), GeneratorFamily("h", 2, 2, k, RIGHT))
    pres = PresentationSpec(
        f"Spinc4({k})", _two_sided_ring(D), fams, (c(1, LEFT) - c(1, RIGHT),), k=k
    )
    return CatalogEntry(
        pres,
        SHIFT * bgauge_series(2) * bgauge_series(2),
        "Spin^c(4) in U(2)xU(2): both h-families closed, then c1(x)1 - 1(x)c1",
    )


def entry_SO3(D: int = DEFAULT_DEGREE) -> CatalogEntry:
    base = entry_bgauge_U(2, 1, D).presentation
    pres = PresentationSpec("SO3", base.ring, base.closed_families, (x(1),), k=1)
    return CatalogEntry(pres, SHIFT * bgauge_series(2), "BG_1(S^2,SO(3)): BGU(2,1) modulo x1")


def entry_SO4(D: int = DEFAULT_DEGREE_TWO_SIDED) -> CatalogEntry:
    base = entry_spinc4(1, D).presentation
    pres = PresentationSpec(
        "SO4", base.ring, base.closed_families, base.plain_generators + (x(1, LEFT),), k=1
    )
    return CatalogEntry(
        pres,
        SHIFT * SHIFT * bgauge_series(2) * bgauge_series(2),
        "BG_1(S^2,SO(4)): Spinc4(1) modulo x1(x)1",
    )


_NAME = re.compile(r"^\s*(?P<head>loopU|BGU|Spinc3|Spinc4|SO3|SO4)\s*(?:\((?P<args>[^)]*)\))?\s*$")
_ARITY = {"loopU": 1, "BGU": 2, "Spinc3": 1, "Spinc4": 1, "SO3": 0, "SO4": 0}


def parse_entry_name(name: str) -> tuple[str, tuple[int, ...]]:
    mt = _NAME.match(name)
    if not mt:
        raise KeyError(f"unknown catalog entry {name!r}")
    head = mt.group("head")
    raw = mt.group("args")
    try:
        args = tuple(int(a) for a in raw.split(",")) if raw not in (None, "") else ()
    except ValueError:
        raise KeyError(f"malformed arguments in catalog entry {name!r}") from None
    if len(args) != _ARITY[head]:
        raise KeyError(f"{head} takes {_ARITY[head]} argument(s), got {name!r}")
    return head, args


def is_two_sided(name: str) -> bool:
    return parse_entry_name(name)[0] in ("Spinc4", "SO4")


def default_degree(name: str) -> int:
    return DEFAULT_DEGREE_TWO_SIDED if is_two_sided(name) else DEFAULT_DEGREE


def get_entry(name: str, D: int | None = None) -> CatalogEntry:
    """Look up ``loopU(n)``, ``BGU(n,k)``, ``Spinc3(k)``, ``Spinc4(k)``, ``SO3`` or ``SO4``."""
    head, args = parse_entry_name(name)
    if D is None:
        D = default_degree(name)
    if head == "loopU":
        return entry_loop_U(args[0], D)
    if head == "BGU":
        return entry_bgauge_U(args[0], args[1], D)
    if head == "Spinc3":
        return entry_spinc3(args[0], D)
    if head == "Spinc4":
        return entry_spinc4(args[0], D)
    if head == "SO3":
        return entry_SO3(D)
    return entry_SO4(D)


STANDARD_ENTRIES = (
    "BGU(2,0)",
    "BGU(2,1)",
    "BGU(3,1)",
    "loopU(2)",
    "loopU(3)",
    "SO3",
    "Spinc3(0)",
    "Spinc3(1)",
    "Spinc4(0)",
    "Spinc4(1)",
    "SO4",
)
