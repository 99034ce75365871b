"""Newton power sums in elementary symmetric variables and the h_i relations.

``x_i`` plays the i-th elementary symmetric function and ``s_n`` the n-th
power sum, so that ``s_n(e_1(t), e_2(t), ...) = t_1^n + ... + t_N^n``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .polyring import (
    NONE,
    Homomorphism,
    Polynomial,
    RingSpec,
    Variable,
    X,
    apply_hom,
    c,
    on_side,
    t,
    x,
)


@lru_cache(maxsize=None)
def newton_s(n: int) -> Polynomial:
    """Power sum s_n via s_n = (-1)^(n+1) n x_n + sum_{i<n} (-1)^(n+i+1) x_{n-i} s_i."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Polynomial.const(1)
    out = x(n) * ((-1) ** (n + 1) * n)
    for i in range(1, n):
        out = out + x(n - i) * newton_s(i) * (-1) ** (n + i + 1)
    return out


def _weighted_partitions(n: int):
    """Exponent tuples (r_1..r_n) with sum i*r_i == n."""

    def rec(i: int, left: int, acc: list[int]):
        if i > n:
            if left == 0:
                yield tuple(acc)
            return
        for r in range(left // i + 1):
            acc.append(r)
            yield from rec(i + 1, left - i * r, acc)
            acc.pop()

    yield from rec(1, n, [])


def girard_s(n: int) -> Polynomial:
    """Closed Girard-Newton sum over weighted partitions of n."""
    if n < 1:
        raise ValueError("n must be positive")
    out = Polynomial()
    for rs in _weighted_partitions(n):
        total = sum(rs)
        coef = Fraction((-1) ** n * n * factorial(total - 1), prod(factorial(r) for r in rs))
        coef *= (-1) ** total  # from prod (-x_i)^{r_i}
        if coef.denominator != 1:
            raise ArithmeticError(f"non-integral Girard coefficient {coef} for {rs}")
        term = Polynomial.const(int(coef))
        for i, r in enumerate(rs, start=1):
            if r:
                term = term * x(i) ** r
        out = out + term
    return out


def elementary(i: int, N: int) -> Polynomial:
    """e_i(t_1, ..., t_N); zero for i > N."""
    if i > N:
        return Polynomial()
    acc = Polynomial()

    def rec(start: int, left: int, m: Polynomial):
        nonlocal acc
        if left == 0:
            acc = acc + m
            return
        for j in range(start, N + 1):
            rec(j + 1, left - 1, m * t(j))

    rec(1, i, Polynomial.const(1))
    return acc


def powersum_oracle(n: int, N: int) -> Polynomial:
    """newton_s(n) with x_i replaced by e_i(t_1..t_N)."""
    if n < 1:
        raise ValueError("n must be positive")
    if N < n:
        raise ValueError(f"need N >= n for the power-sum identity (n={n}, N={N})")
    source = RingSpec("x-ring", max_degree=2 * n)
    target = RingSpec("t-ring", with_x=False, t_count=N, max_degree=2 * n)
    images = {Variable(NONE, X, i): elementary(i, N) for i in range(1, n + 1)}
    return apply_hom(Homomorphism(source, target, images), newton_s(n))


@lru_cache(maxsize=None)
def h_poly(i: int, n: int, k: int, side: int = NONE) -> Polynomial:
    """h_i = k c_i + sum_{j=1}^i (-1)^j s_j c_{i-j}, with c_0 = 1 and c_j = 0 for j > n."""
    if i < 1:
        raise ValueError("i must be positive")

    def cc(j: int) -> Polynomial:
        if j == 0:
            return Polynomial.const(1)
        if j > n:
            return Polynomial()
        return c(j)

    out = cc(i) * k
    for j in range(1, i + 1):
        out = out + newton_s(j) * cc(i - j) * (-1) ** j
    return on_side(out, side) if side != NONE else out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_p_divisibility(p: int) -> bool:
    """Whether every coefficient of s_p - x_1^p is divisible by the prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    diff = newton_s(p) - x(1) ** p
    return all(coef % p == 0 for coef in diff.terms.values())
