"""Exact factorization of univariate polynomials over Q.

Pipeline: content extraction, Yun squarefree decomposition, Cantor-Zassenhaus
factorization modulo a well-chosen odd prime, quadratic Hensel lifting past
the Mignotte bound, then bounded subset recombination (Zassenhaus).  All
arithmetic is integer-exact; every factorization is re-multiplied and checked
against its input before it is returned.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .arith import is_prime
from .errors import CapacityError, DomainError

RECOMBINATION_CAP = 2**20
CANDIDATE_PRIME_COUNT = 25


class NotSquarefreeModPError(ValueError):
    """The reduction mod p is not squarefree; the caller must pick another prime."""


# ---------------------------------------------------------------------------
# dense integer polynomials as python lists, ascending degree


def _strip(cs: Sequence[int]) -> list[int]:
    i = len(cs)
    while i > 0 and cs[i - 1] == 0:
        i -= 1
    return list(cs[:i])


def _degree(cs: Sequence[int]) -> int:
    return len(cs) - 1  # the zero polynomial is [] with degree -1


def _add(a, b):
    n = max(len(a), len(b))
    return _strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _sub(a, b):
    n = max(len(a), len(b))
    return _strip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _neg(a):
    return [-c for c in a]


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _strip(out)


def _mul_ground(a, c):
    if c == 0:
        return []
    return [x * c for x in a]


def _deriv(a):
    return _strip([i * a[i] for i in range(1, len(a))])


def _l1(a) -> int:
    return sum(abs(c) for c in a)


def _max_norm(a) -> int:
    return max((abs(c) for c in a), default=0)


def _content(a) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _pos_primitive(a):
    """Primitive part with positive leading coefficient."""
    a = _strip(a)
    if not a:
        return []
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _rem_Q(a, b):
    """Remainder of a by b over the rationals; coefficients are Fractions."""
    a = list(a)
    db, lb = _degree(b), b[-1]
    while _degree(a) >= db:
        q = a[-1] / lb
        shift = _degree(a) - db
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a = _strip(a)
        if not a:
            break
    return a


def _gcd_Z(a, b):
    """Gcd of integer polynomials: primitive with positive leading coefficient."""
    a, b = _strip(a), _strip(b)
    if not a:
        return _pos_primitive(b)
    if not b:
        return _pos_primitive(a)
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb:
        fa, fb = fb, _rem_Q(fa, fb)
    scale = math.lcm(*(c.denominator for c in fa))
    return _pos_primitive([int(c * scale) for c in fa])


def _div_exact(a, b):
    """Quotient a / b over Z, asserting that the division is exact."""
    if _degree(b) == 0:
        c = b[0]
        assert all(x % c == 0 for x in a)
        return [x // c for x in a]
    fa = [Fraction(c) for c in a]
    q: list[Fraction] = [Fraction(0)] * (len(a) - len(b) + 1)
    db, lb = _degree(b), b[-1]
    while _degree(fa) >= db:
        shift = _degree(fa) - db
        coef = fa[-1] / lb
        q[shift] = coef
        for i, c in enumerate(b):
            fa[i + shift] -= coef * c
        fa = _strip(fa)
    assert not fa, "division was not exact"
    assert all(c.denominator == 1 for c in q)
    return _strip([int(c) for c in q])


def _divmod_monic(a, b):
    """Integer divmod by a monic divisor (exact synthetic division)."""
    assert b and b[-1] == 1
    a = list(a)
    db = _degree(b)
    q = [0] * max(0, len(a) - db)
    while _degree(a) >= db:
        shift = _degree(a) - db
        coef = a[-1]
        q[shift] = coef
        for i, c in enumerate(b):
            a[i + shift] -= coef * c
        a = _strip(a)
    return q, a


def _trunc(cs, m):
    """Coefficients reduced into the symmetric residue system (-m/2, m/2]."""
    half = m // 2
    out = []
    for c in cs:
        r = c % m
        if r > half:
            r -= m
        out.append(r)
    return _strip(out)


# ---------------------------------------------------------------------------
# arithmetic modulo a prime p (coefficients kept in [0, p))


def _gf_trunc(cs, p):
    return _strip([c % p for c in cs])


def _gf_add(a, b, p):
    n = max(len(a), len(b))
    return _strip([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _gf_sub(a, b, p):
    n = max(len(a), len(b))
    return _strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _strip(out)


def _gf_divmod(a, b, p):
    a = list(a)
    db = _degree(b)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - db)
    while _degree(a) >= db:
        shift = _degree(a) - db
        coef = a[-1] * inv % p
        q[shift] = coef
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * c) % p
        a = _strip(a)
    return _strip(q), a


def _gf_monic(a, p):
    if not a:
        return 0, []
    lc = a[-1]
    if lc == 1:
        return lc, list(a)
    inv = pow(lc, -1, p)
    return lc, [c * inv % p for c in a]


def _gf_gcd(a, b, p):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    return _gf_monic(a, p)[1]


def _gf_gcdex(a, b, p):
    """(s, t, g) with s*a + t*b = g, g the monic gcd of a and b mod p."""
    r0, r1 = _strip(a), _strip(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    lc, g = _gf_monic(r0, p)
    if lc and lc != 1:
        inv = pow(lc, -1, p)
        s0 = _gf_trunc(_mul_ground(s0, inv), p)
        t0 = _gf_trunc(_mul_ground(t0, inv), p)
    return s0, t0, g


def _gf_pow_mod(base, e, f, p):
    result = [1]
    base = _gf_divmod(base, f, p)[1]
    while e:
        if e & 1:
            result = _gf_divmod(_gf_mul(result, base, p), f, p)[1]
        base = _gf_divmod(_gf_mul(base, base, p), f, p)[1]
        e >>= 1
    return result


def _ddf(f, p):
    """Distinct-degree decomposition of a monic squarefree f mod p."""
    out = []
    x = [0, 1]
    h = list(x)
    d = 0
    while _degree(f) >= 2 * (d + 1):
        d += 1
        h = _gf_pow_mod(h, p, f, p)
        g = _gf_gcd(_gf_sub(h, x, p), f, p)
        if _degree(g) > 0:
            out.append((g, d))
            f = _gf_divmod(f, g, p)[0]
            h = _gf_divmod(h, f, p)[1]
    if _degree(f) > 0:
        out.append((f, _degree(f)))
    return out


def _edf(f, d, p, rng):
    """Cantor-Zassenhaus equal-degree splitting of monic f into degree-d factors."""
    n = _degree(f)
    if n == d:
        return [f]
    while True:
        a = _strip([rng.randrange(p) for _ in range(n)])
        if _degree(a) < 1:
            continue
        if p == 2:
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                acc = _gf_pow_mod(acc, 2, f, 2)
                t = _gf_add(t, acc, 2)
            h = _gf_gcd(t, f, p)
        else:
            t = _gf_pow_mod(a, (p**d - 1) // 2, f, p)
            h = _gf_gcd(_gf_sub(t, [1], p), f, p)
        if 0 < _degree(h) < n:
            return _edf(h, d, p, rng) + _edf(_gf_divmod(f, h, p)[0], d, p, rng)


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise DomainError("the zero polynomial is not representable")
        if self.coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(_strip(list(coeffs))) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x: Union[int, Fraction]) -> Union[int, Fraction]:
        acc: Union[int, Fraction] = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(tuple(_mul(list(self.coeffs), list(other.coeffs))))

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            raise DomainError("derivative of a constant is the zero polynomial")
        return IntPolynomial(tuple(_deriv(list(self.coeffs))))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            elif i == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


def binomial_poly(n: int, a: Union[int, Fraction]) -> list[Fraction]:
    """Coefficients of x**n - a, ascending."""
    if n < 1:
        raise DomainError("exponent must be at least 1")
    return [Fraction(-a)] + [Fraction(0)] * (n - 1) + [Fraction(1)]


@dataclass(frozen=True)
class FactorizationResult:
    """unit * prod(factor**multiplicity) reconstructs the input exactly."""

    unit: Fraction
    factors: tuple[tuple[IntPolynomial, int], ...]

    def is_irreducible(self) -> bool:
        return (
            len(self.factors) == 1
            and self.factors[0][1] == 1
            and self.factors[0][0].degree >= 1
        )

    def degree_multiset(self) -> tuple[int, ...]:
        out: list[int] = []
        for poly, mult in self.factors:
            out.extend([poly.degree] * mult)
        return tuple(sorted(out))

    def product_coeffs(self) -> list[Fraction]:
        acc = [Fraction(1)]
        for poly, mult in self.factors:
            for _ in range(mult):
                acc = [
                    sum((acc[i] * poly.coeffs[j] for i, j in _pairs(k, len(acc), len(poly.coeffs))), Fraction(0))
                    for k in range(len(acc) + len(poly.coeffs) - 1)
                ]
        return [c * self.unit for c in acc]


def _pairs(k, la, lb):
    return ((i, k - i) for i in range(max(0, k - lb + 1), min(la, k + 1)))


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun)


def squarefree_decomposition(f: IntPolynomial) -> tuple[int, list[tuple[IntPolynomial, int]]]:
    """Yun decomposition: content c and pairwise-coprime squarefree parts.

    c * prod(part ** multiplicity) reconstructs f exactly; each part is
    primitive with positive leading coefficient.
    """
    if f.degree < 1:
        raise DomainError("degree must be at least 1")
    cs = list(f.coeffs)
    cont = _content(cs)
    if cs[-1] < 0:
        cont = -cont
    f0 = [c // cont for c in cs]
    parts: list[tuple[list[int], int]] = []
    fp = _deriv(f0)
    g = _gcd_Z(f0, fp)
    if _degree(g) == 0:
        parts.append((f0, 1))
    else:
        v = _div_exact(f0, g)
        w = _div_exact(fp, g)
        i = 1
        while _degree(v) > 0:
            z = _sub(w, _deriv(v))
            h = _gcd_Z(v, z)
            if _degree(h) > 0:
                parts.append((h, i))
            v = _div_exact(v, h)
            w = _div_exact(z, h)
            i += 1
    recon = [cont]
    for part, mult in parts:
        for _ in range(mult):
            recon = _mul(recon, part)
    assert recon == cs, "squarefree decomposition failed to reconstruct its input"
    return cont, [(IntPolynomial(tuple(p)), m) for p, m in parts]


# ---------------------------------------------------------------------------
# factorization mod p


def factor_mod_p(f: IntPolynomial, p: int) -> list[IntPolynomial]:
    """Complete factorization of f mod p into monic irreducibles.

    Requires p prime, p not dividing the leading coefficient, and f squarefree
    mod p (raises NotSquarefreeModPError otherwise so the caller can choose a
    different prime).
    """
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if f.leading % p == 0:
        raise DomainError(f"{p} divides the leading coefficient")
    fp = _gf_trunc(list(f.coeffs), p)
    if _degree(fp) < 1:
        raise DomainError("degree mod p must be at least 1")
    _, fm = _gf_monic(fp, p)
    der = _gf_trunc(_deriv(fm), p)
    if not der or _degree(_gf_gcd(fm, der, p)) > 0:
        raise NotSquarefreeModPError(f"input is not squarefree mod {p}")
    rng = random.Random(f"cz:{p}:{tuple(fm)}")
    out: list[list[int]] = []
    for part, d in _ddf(fm, p):
        out.extend(_edf(part, d, p, rng))
    out.sort(key=lambda g: (len(g), g))
    prod = [f.leading % p]
    for g in out:
        prod = _gf_mul(prod, g, p)
    assert prod == fp, "modular factorization failed to reconstruct its input"
    return [IntPolynomial(tuple(g)) for g in out]


# ---------------------------------------------------------------------------
# Hensel lifting


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lift: from a factorization of f mod m to one mod m**2.

    Preconditions: f = g*h (mod m), s*g + t*h = 1 (mod m), lc(h) = 1,
    deg(s) < deg(h), deg(t) < deg(g).
    """
    mm = m * m
    e = _trunc(_sub(f, _mul(g, h)), mm)
    q, r = _divmod_monic(_mul(s, e), h)
    q, r = _trunc(q, mm), _trunc(r, mm)
    u = _add(_mul(t, e), _mul(q, g))
    g1 = _trunc(_add(g, u), mm)
    h1 = _trunc(_add(h, r), mm)
    b = _trunc(_sub(_add(_mul(s, g1), _mul(t, h1)), [1]), mm)
    c, d = _divmod_monic(_mul(s, b), h1)
    c, d = _trunc(c, mm), _trunc(d, mm)
    s1 = _trunc(_sub(s, d), mm)
    t1 = _trunc(_sub(t, _add(_mul(t, b), _mul(c, g1))), mm)
    return g1, h1, s1, t1


def _hensel_lift(p, f, facs, l):
    """Lift monic factors of f mod p to factors mod p**l (divide and conquer)."""
    r = len(facs)
    lc = f[-1]
    pl = p**l
    if r == 1:
        inv = pow(lc % pl, -1, pl)
        return [_trunc(_mul_ground(f, inv), pl)]
    k = r // 2
    steps = max(1, math.ceil(math.log2(l)))
    g = [lc % p]
    for fi in facs[:k]:
        g = _gf_mul(g, _gf_trunc(fi, p), p)
    h = _gf_trunc(facs[k], p)
    for fi in facs[k + 1:]:
        h = _gf_mul(h, _gf_trunc(fi, p), p)
    s, t, one = _gf_gcdex(g, h, p)
    assert one == [1], "lift halves are not coprime mod p"
    g, h, s, t = (_trunc(v, p) for v in (g, h, s, t))
    m = p
    for _ in range(steps):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, facs[:k], l) + _hensel_lift(p, h, facs[k:], l)


# ---------------------------------------------------------------------------
# Zassenhaus over Z


def _candidate_primes(f):
    """Usable odd primes with their modular factorizations, best (fewest factors) first.

    Scans odd primes in order, keeping those that do not divide the leading
    coefficient and preserve squarefreeness; stops early if some prime proves
    f irreducible outright.
    """
    candidates = []
    p = 2
    poly = IntPolynomial(tuple(f))
    while len(candidates) < CANDIDATE_PRIME_COUNT:
        p += 1
        while not is_prime(p):
            p += 1
        if f[-1] % p == 0:
            continue
        try:
            facs = factor_mod_p(poly, p)
        except NotSquarefreeModPError:
            continue
        if len(facs) == 1:
            return [(1, p, facs)]
        candidates.append((len(facs), p, facs))
    candidates.sort(key=lambda t: (t[0], t[1]))
    return candidates


def _recombine(f, p, mod_facs):
    """Zassenhaus subset recombination of Hensel-lifted modular factors."""
    n = _degree(f)
    A = _max_norm(f)
    b = f[-1]
    bound = (math.isqrt(n + 1) + 1) * 2**n * A * abs(b)
    l = 1
    pl = p
    while pl <= 2 * bound:
        pl *= p
        l += 1
    lifted = [list(g.coeffs) for g in mod_facs]
    lifted = _hensel_lift(p, list(f), lifted, l)

    cur = list(f)
    sorted_T = list(range(len(lifted)))
    remaining = set(sorted_T)
    factors: list[list[int]] = []
    s = 1
    tested = 0
    while 2 * s <= len(remaining):
        accepted = False
        for S in itertools.combinations(sorted_T, s):
            tested += 1
            if tested > RECOMBINATION_CAP:
                raise CapacityError("recombination subset cap exceeded")
            b = cur[-1]
            if b == 1 and cur[0] != 0:
                q = 1
                for i in S:
                    q = q * lifted[i][0] % pl
                if q > pl // 2:
                    q -= pl
                if q and cur[0] % q != 0:
                    continue
            G = [b]
            for i in S:
                G = _mul(G, lifted[i])
            G = _trunc(G, pl)
            if _l1(G) > bound:
                continue
            H = [b]
            for i in remaining - set(S):
                H = _mul(H, lifted[i])
            H = _trunc(H, pl)
            if _l1(G) * _l1(H) <= bound:
                factors.append(_pos_primitive(G))
                cur = _pos_primitive(H)
                remaining -= set(S)
                sorted_T = [i for i in sorted_T if i not in S]
                accepted = True
                break
        if not accepted:
            s += 1
    factors.append(cur)
    return factors


def _factor_squarefree(f):
    """Irreducible factors of a primitive squarefree f with positive lc."""
    if _degree(f) == 1:
        return [list(f)]
    candidates = _candidate_primes(f)
    if candidates[0][0] == 1:
        return [list(f)]
    last_error = None
    for _, p, facs in candidates[:2]:
        try:
            return _recombine(f, p, facs)
        except CapacityError as err:
            last_error = err
    raise CapacityError(f"recombination failed for both best primes: {last_error}")


def factor_over_Z(f: IntPolynomial) -> FactorizationResult:
    """Complete irreducible factorization over Q of an integer polynomial."""
    if f.degree < 1:
        raise DomainError("degree must be at least 1")
    cont, parts = squarefree_decomposition(f)
    factors: list[tuple[IntPolynomial, int]] = []
    for part, mult in parts:
        for irr in _factor_squarefree(list(part.coeffs)):
            factors.append((IntPolynomial(tuple(irr)), mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    result = FactorizationResult(unit=Fraction(cont), factors=tuple(factors))
    recon = result.product_coeffs()
    assert recon == [Fraction(c) for c in f.coeffs], "factorization failed to reconstruct its input"
    return result


def factor_over_Q(coeffs: Sequence[Union[int, Fraction]]) -> FactorizationResult:
    """Factor a polynomial with rational coefficients (ascending order)."""
    fracs = [Fraction(c) for c in coeffs]
    stripped = fracs[: len(_strip(fracs))]
    if _degree(stripped) < 1:
        raise DomainError("degree must be at least 1")
    scale = math.lcm(*(c.denominator for c in stripped))
    ints = [int(c * scale) for c in stripped]
    res = factor_over_Z(IntPolynomial(tuple(ints)))
    result = FactorizationResult(unit=res.unit / scale, factors=res.factors)
    assert result.product_coeffs() == stripped
    return result


def is_irreducible_over_Q(f: IntPolynomial) -> bool:
    """True iff f is irreducible in Q[x] (up to rational units)."""
    if f.degree < 1:
        raise DomainError("degree must be at least 1")
    return factor_over_Z(f).is_irreducible()
