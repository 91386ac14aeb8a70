"""Exact arithmetic on factored integers and rationals.

Radicands are kept as signed prime-exponent maps from ingestion onward, so
every power-class question (is x a perfect p-th power? is x minus a square?)
reduces to congruences on exponent vectors.  Negative exponents encode
denominators, which makes the same code path serve integer and rational
inputs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .errors import CapacityError, DomainError

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_FACTOR_BOUND = 2**64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

Rationalish = Union[int, Fraction, "FactoredRational"]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every input below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho: a nontrivial factor of odd composite n.

    Seeded from n itself so repeated runs split identically.
    """
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    for _ in range(64):
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y  # ys survives the loop for the backtracking pass
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise CapacityError(f"pollard rho failed to split {n}")


@dataclass(frozen=True)
class FactoredRational:
    """A nonzero rational as a sign and a canonical prime -> exponent map.

    The empty map with sign +1 is the number 1.  All exponents are nonzero;
    negative exponents represent denominator primes.
    """

    sign: int
    exponents: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        last = 1
        for p, e in self.exponents:
            if p <= last or not is_prime(p):
                raise DomainError(f"exponent keys must be strictly increasing primes, got {p}")
            if e == 0:
                raise DomainError(f"exponent for prime {p} must be nonzero")
            last = p

    @staticmethod
    def one() -> "FactoredRational":
        return FactoredRational(1, ())

    @staticmethod
    def minus_one() -> "FactoredRational":
        return FactoredRational(-1, ())

    @classmethod
    def from_map(cls, sign: int, exponents: Mapping[int, int]) -> "FactoredRational":
        items = tuple(sorted((p, e) for p, e in exponents.items() if e != 0))
        return cls(sign, items)

    def exponent(self, p: int) -> int:
        for q, e in self.exponents:
            if q == p:
                return e
        return 0

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exponents)

    def value(self) -> Fraction:
        """Exact reconstruction sign * prod p**e."""
        num, den = self.sign, 1
        for p, e in self.exponents:
            if e > 0:
                num *= p**e
            else:
                den *= p**-e
        return Fraction(num, den)

    def is_one(self) -> bool:
        return self.sign == 1 and not self.exponents

    def is_integral(self) -> bool:
        return all(e > 0 for _, e in self.exponents)

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        exps = dict(self.exponents)
        for p, e in other.exponents:
            ne = exps.get(p, 0) + e
            if ne:
                exps[p] = ne
            else:
                del exps[p]
        return FactoredRational(self.sign * other.sign, tuple(sorted(exps.items())))

    def __neg__(self) -> "FactoredRational":
        return FactoredRational(-self.sign, self.exponents)

    def __pow__(self, k: int) -> "FactoredRational":
        if k == 0:
            return FactoredRational.one()
        sign = self.sign if k % 2 else 1
        return FactoredRational(sign, tuple((p, e * k) for p, e in self.exponents))

    def inverse(self) -> "FactoredRational":
        return self**-1

    def __str__(self) -> str:
        return str(self.value())


def factor(n: int, *, bound: int = DEFAULT_FACTOR_BOUND) -> FactoredRational:
    """Exact prime factorization of a nonzero integer.

    Trial division up to 10**6, then Pollard rho with a deterministic
    primality check.  Inputs beyond `bound` are rejected rather than left to
    run unboundedly.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    if abs(n) > bound:
        raise CapacityError(f"|{n}| exceeds the factorization bound {bound}")
    sign = 1 if n > 0 else -1
    n = abs(n)
    exps: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p <= TRIAL_DIVISION_LIMIT and p * p <= n:
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step  # 5, 7, 11, 13, ... the 6k+-1 wheel
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            exps[m] = exps.get(m, 0) + 1
            continue
        root = _perfect_power_root(m)
        if root is not None:
            base, k = root
            stack.extend([base] * k)
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return FactoredRational.from_map(sign, exps)


def _integer_root(m: int, k: int) -> int:
    """Floor of the k-th root of m, exact for any size."""
    if k == 2:
        return math.isqrt(m)
    r = int(round(m ** (1.0 / k))) or 1
    while r > 1 and r**k > m:
        r -= 1
    while (r + 1) ** k <= m:
        r += 1
    return r


def _perfect_power_root(m: int) -> tuple[int, int] | None:
    """(b, k) with b**k == m and k > 1 maximal, if m > 1 is a perfect power."""
    for k in range(m.bit_length(), 1, -1):
        b = _integer_root(m, k)
        if b > 1 and b**k == m:
            return b, k
    return None


def factor_fraction(q: Rationalish, *, bound: int = DEFAULT_FACTOR_BOUND) -> FactoredRational:
    """Factor a nonzero integer or Fraction (or pass a FactoredRational through)."""
    if isinstance(q, FactoredRational):
        return q
    q = Fraction(q)
    if q == 0:
        raise DomainError("cannot factor 0")
    num = factor(q.numerator, bound=bound)
    if q.denominator == 1:
        return num
    return num * factor(q.denominator, bound=bound).inverse()


def pth_root(x: FactoredRational, p: int) -> FactoredRational | None:
    """The exact p-th root of x when x is a perfect p-th power, else None.

    For odd p the sign is absorbed into the root; for p = 2 membership
    requires a positive value with all exponents even.  In factored form the
    test is identical over Z and over Q.
    """
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if p == 2 and x.sign < 0:
        return None
    if any(e % p for _, e in x.exponents):
        return None
    sign = x.sign if p % 2 else 1
    return FactoredRational(sign, tuple((q, e // p) for q, e in x.exponents))


def neg_square_root(x: FactoredRational) -> FactoredRational | None:
    """Positive d with x == -d*d when x is the negative of a perfect square, else None."""
    if x.sign > 0:
        return None
    return pth_root(-x, 2)


def power_product(values: Sequence[FactoredRational], exponents: Sequence[int]) -> FactoredRational:
    """Exact product prod values[i] ** exponents[i] with nonnegative exponents."""
    if len(values) != len(exponents):
        raise DomainError("values and exponents must have equal length")
    acc = FactoredRational.one()
    for v, e in zip(values, exponents):
        if e < 0:
            raise DomainError("exponents must be nonnegative")
        if e:
            acc = acc * v**e
    return acc


def square_class(x: FactoredRational) -> tuple[int, tuple[int, ...]]:
    """Canonical tag of x modulo nonzero rational squares: (sign, odd-exponent primes)."""
    return x.sign, tuple(p for p, e in x.exponents if e % 2)
