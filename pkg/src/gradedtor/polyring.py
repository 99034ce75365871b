"""Graded sparse polynomials with integer coefficients.

Every variable has positive even degree.  Polynomials are not tied to a
particular ring: they live in the polynomial ring on all variables, and a
:class:`RingSpec` decides which variables a computation may use.
"""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple

# families and sides, ordered as they sort
C, X, T = 0, 1, 2
NONE, LEFT, RIGHT = 0, 1, 2

_FAMILY_NAMES = {C: "c", X: "x", T: "t"}
_FAMILY_CODES = {v: k for k, v in _FAMILY_NAMES.items()}
_SIDE_PREFIX = {NONE: "", LEFT: "L.", RIGHT: "R."}


class Variable(NamedTuple):
    side: int
    family: int
    index: int

    @property
    def degree(self) -> int:
        return 2 if self.family == T else 2 * self.index

    @property
    def name(self) -> str:
        return f"{_SIDE_PREFIX[self.side]}{_FAMILY_NAMES[self.family]}{self.index}"

    def __str__(self) -> str:
        return self.name


def var(family: str, index: int, side: int = NONE) -> Variable:
    if index < 1:
        raise ValueError("variable index must be positive")
    return Variable(side, _FAMILY_CODES[family], index)


class Monomial(tuple):
    """Sorted tuple of ``(Variable, exponent)`` pairs; ``Monomial()`` is 1."""

    __slots__ = ()

    def __new__(cls, items: Iterable[tuple[Variable, int]] = ()):
        acc: dict[Variable, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                acc[v] = acc.get(v, 0) + e
        return super().__new__(cls, sorted(acc.items()))

    @classmethod
    def _raw(cls, items: tuple) -> Monomial:
        return tuple.__new__(cls, items)

    @property
    def degree(self) -> int:
        return sum(v.degree * e for v, e in self)

    def key(self) -> tuple:
        """Canonical sort key: degree, then lex with larger exponents of earlier variables first."""
        return (self.degree, tuple((v, -e) for v, e in self))

    def __mul__(self, other: Monomial) -> Monomial:
        if not other:
            return self
        if not self:
            return other
        acc = dict(self)
        for v, e in other:
            acc[v] = acc.get(v, 0) + e
        return Monomial._raw(tuple(sorted(acc.items())))

    def variables(self) -> tuple[Variable, ...]:
        return tuple(v for v, _ in self)

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in self)

    def __repr__(self) -> str:
        return f"Monomial({self})"


ONE = Monomial()


class Polynomial:
    """Immutable sparse polynomial ``{Monomial: int}`` with no zero coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> Polynomial:
        return cls({ONE: c})

    @classmethod
    def variable(cls, v: Variable) -> Polynomial:
        return cls({Monomial._raw(((v, 1),)): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: int = 1) -> Polynomial:
        return cls({m: c})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms in canonical monomial order."""
        return sorted(self._terms.items(), key=lambda mc: mc[0].key())

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def degrees(self) -> set[int]:
        return {m.degree for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a nonzero homogeneous polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("degree is defined only for nonzero homogeneous polynomials")
        return next(iter(ds))

    def variables(self) -> set[Variable]:
        return {v for m in self._terms for v, _ in m}

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def times_monomial(self, m: Monomial) -> Polynomial:
        return Polynomial({m * k: c for k, c in self._terms.items()})

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def map_variables(self, f) -> Polynomial:
        """Rename variables through ``f``, which must be injective."""
        return Polynomial({Monomial((f(v), e) for v, e in m): c for m, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"


def coefficient_of(p: Polynomial, m: Monomial) -> int:
    return p.coefficient(m)


def render(p: Polynomial) -> str:
    items = p.items()
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = str(a)
        elif a == 1:
            body = str(m)
        else:
            body = f"{a}*{m}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def c(i: int, side: int = NONE) -> Polynomial:
    return Polynomial.variable(Variable(side, C, i))


def x(i: int, side: int = NONE) -> Polynomial:
    return Polynomial.variable(Variable(side, X, i))


def t(i: int) -> Polynomial:
    return Polynomial.variable(Variable(NONE, T, i))


def on_side(p: Polynomial, side: int) -> Polynomial:
    """Copy of ``p`` with every variable moved to ``side`` (p ⊗ 1 or 1 ⊗ p)."""
    return p.map_variables(lambda v: Variable(side, v.family, v.index))


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring on ``c_1..c_{c_count}``, the ``x_j`` (if ``with_x``) and
    ``t_1..t_{t_count}``, optionally duplicated on Left/Right sides.

    Only variables of degree <= ``max_degree`` are materialised.
    """

    name: str
    c_count: int = 0
    with_x: bool = True
    t_count: int = 0
    two_sided: bool = False
    max_degree: int = 20

    def __post_init__(self):
        if self.max_degree < 0 or self.max_degree % 2:
            raise ValueError(f"max_degree must be a non-negative even integer, got {self.max_degree}")

    @property
    def sides(self) -> tuple[int, ...]:
        return (LEFT, RIGHT) if self.two_sided else (NONE,)

    def variables(self) -> tuple[Variable, ...]:
        out = []
        for s in self.sides:
            out += [Variable(s, C, i) for i in range(1, self.c_count + 1)]
            if self.with_x:
                out += [Variable(s, X, j) for j in range(1, self.max_degree // 2 + 1)]
            out += [Variable(s, T, i) for i in range(1, self.t_count + 1)]
        return tuple(v for v in sorted(out) if v.degree <= self.max_degree)

    def has_variable(self, v: Variable) -> bool:
        if v.side not in self.sides:
            return False
        if v.family == C:
            return v.index <= self.c_count
        if v.family == X:
            return self.with_x
        return v.index <= self.t_count

    def contains(self, p: Polynomial) -> bool:
        return all(self.has_variable(v) for v in p.variables())

    def check(self, p: Polynomial) -> Polynomial:
        bad = sorted(v for v in p.variables() if not self.has_variable(v))
        if bad:
            raise ValueError(f"{', '.join(v.name for v in bad)} not in ring {self.name}")
        return p

    def with_max_degree(self, d: int) -> RingSpec:
        return RingSpec(self.name, self.c_count, self.with_x, self.t_count, self.two_sided, d)


@lru_cache(maxsize=None)
def _basis(variables: tuple[Variable, ...], d: int) -> tuple[Monomial, ...]:
    vs = [v for v in variables if v.degree <= d]
    out: list[Monomial] = []

    def rec(i: int, left: int, acc: list[tuple[Variable, int]]) -> None:
        if left == 0:
            out.append(Monomial._raw(tuple(acc)))
            return
        if i == len(vs):
            return
        v = vs[i]
        for e in range(left // v.degree, -1, -1):
            if e:
                acc.append((v, e))
            rec(i + 1, left - e * v.degree, acc)
            if e:
                acc.pop()

    rec(0, d, [])
    return tuple(sorted(out, key=Monomial.key))


def monomial_basis(ring: RingSpec, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree exactly ``d`` in canonical order."""
    if d > ring.max_degree:
        raise ValueError(f"degree {d} exceeds max_degree {ring.max_degree} of {ring.name}")
    if d < 0 or d % 2:
        return ()
    return _basis(ring.variables(), d)


@dataclass(frozen=True)
class Homomorphism:
    """Ring map determined by variable images; each image must be homogeneous
    of the variable's degree."""

    source: RingSpec
    target: RingSpec
    images: Mapping[Variable, Polynomial] = field(hash=False)

    def __post_init__(self):
        for v, img in self.images.items():
            if img and (not img.is_homogeneous() or img.degree != v.degree):
                raise ValueError(f"image of {v.name} is not homogeneous of degree {v.degree}")
            self.target.check(img)


def apply_hom(h: Homomorphism, p: Polynomial) -> Polynomial:
    h.source.check(p)
    powers: dict[tuple[Variable, int], Polynomial] = {}
    acc: dict[Monomial, int] = {}
    for m, coef in p.terms.items():
        term = Polynomial.const(coef)
        for v, e in m:
            if v not in h.images:
                raise KeyError(f"no image for variable {v.name}")
            key = (v, e)
            if key not in powers:
                powers[key] = h.images[v] ** e
            term = term * powers[key]
        for mm, cc in term.terms.items():
            acc[mm] = acc.get(mm, 0) + cc
    return Polynomial(acc)


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<var>(?:[LR]\.)?[A-Za-z]+\d*)|(?P<int>\d+)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup
        start = mt.start(kind)
        toks.append((kind, mt.group(kind), start))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


_VAR = re.compile(r"(?:(?P<side>[LR])\.)?(?P<fam>[cxt])(?P<idx>[1-9]\d*)$")


def parse_poly(text: str) -> Polynomial:
    """Parse integers, ``c<i>``/``x<i>``/``t<i>`` (optionally ``L.``/``R.``),
    ``+ - * ^`` and parentheses.  No implicit multiplication."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def expr() -> Polynomial:
        out = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term() -> Polynomial:
        out = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            out = out * factor()
        return out

    def factor() -> Polynomial:
        if peek()[0] == "op" and peek()[1] == "-":
            take()
            return -factor()
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, val, pos = take()
            if kind != "int":
                raise PolySyntaxError("expected integer exponent", pos)
            base = base ** int(val)
        return base

    def atom() -> Polynomial:
        kind, val, pos = take()
        if kind == "int":
            return Polynomial.const(int(val))
        if kind == "var":
            mv = _VAR.match(val)
            if not mv:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            side = {"L": LEFT, "R": RIGHT, None: NONE}[mv.group("side")]
            return Polynomial.variable(Variable(side, _FAMILY_CODES[mv.group("fam")], int(mv.group("idx"))))
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, p2 = take()
            if (k2, v2) != ("op", ")"):
                raise PolySyntaxError("expected ')'", p2)
            return inner
        raise PolySyntaxError(f"unexpected {val or 'end of input'!r}", pos)

    out = expr()
    kind, val, pos = peek()
    if kind != "end":
        raise PolySyntaxError(f"unexpected {val!r}", pos)
    return out
