"""Independent brute-force oracle for the degree of a radical stack.

Builds the commutative algebra A = Q[x_1, ..., x_l]/(x_i**m_i - N_i) of
dimension m_1 * ... * m_l and tests whether A is a field by computing the
minimal polynomial of a random small-coefficient combination of the
generators and factoring it.  A is a finite product of number fields, so a
generic element generates, its minimal polynomial has degree equal to dim A,
and A is a field exactly when that polynomial is irreducible.  The whole
computation is exact; the verdict never depends on a choice of complex root.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .arith import is_prime
from .criteria import RadicalTower
from .errors import CapacityError, DomainError, InternalInvariantError, OracleInconclusiveError
from .polyfactor import factor_over_Q

DEFAULT_MAX_DIM = 32
MODULAR_DIM_THRESHOLD = 32
MAX_GENERATOR_RETRIES = 32

_COEFF_POOL = tuple(range(-9, 0)) + tuple(range(1, 10))

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class RadicalAlgebra:
    """Q[x_1, ..., x_l]/(x_i**m_i - N_i) on the monomial basis, lexicographic order."""

    tower: RadicalTower

    @property
    def dims(self) -> tuple[int, ...]:
        return self.tower.degrees

    @cached_property
    def dim(self) -> int:
        return math.prod(self.dims)

    @cached_property
    def radicands(self) -> tuple[Fraction, ...]:
        return tuple(n.value() for n in self.tower.radicands)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for m in reversed(self.dims):
            out.append(acc)
            acc *= m
        return tuple(reversed(out))

    @cached_property
    def basis_exponents(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for idx in range(self.dim):
            exp = []
            rest = idx
            for s in self._strides:
                exp.append(rest // s)
                rest %= s
            out.append(tuple(exp))
        return tuple(out)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (0,) * self.dim)

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, (1,) + (0,) * (self.dim - 1))

    def generator(self, i: int) -> "AlgebraElement":
        """The class of x_i; for m_i = 1 this is the constant N_i."""
        coeffs: list[Scalar] = [0] * self.dim
        if self.dims[i] == 1:
            n = self.radicands[i]
            coeffs[0] = n.numerator if n.denominator == 1 else n
        else:
            coeffs[self._strides[i]] = 1
        return AlgebraElement(self, tuple(coeffs))

    def element(self, coeffs: Sequence[Scalar]) -> "AlgebraElement":
        if len(coeffs) != self.dim:
            raise DomainError(f"need {self.dim} coefficients, got {len(coeffs)}")
        return AlgebraElement(self, tuple(coeffs))


@dataclass(frozen=True)
class AlgebraElement:
    """Dense coefficient vector over the monomial basis; exact rational entries."""

    algebra: RadicalAlgebra
    coeffs: tuple[Scalar, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self.algebra, self, other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coeffs))


def build_algebra(tower: RadicalTower, max_dim: int = DEFAULT_MAX_DIM) -> RadicalAlgebra:
    """Multiplication-ready algebra; rejects dimensions beyond max_dim."""
    dim = tower.product_degree
    if dim > max_dim:
        raise CapacityError(f"dimension {dim} exceeds the cap {max_dim}")
    return RadicalAlgebra(tower)


def _mul_raw(algebra: RadicalAlgebra, u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
    """Product of two coefficient vectors; stays in int when everything is integral."""
    dims = algebra.dims
    strides = algebra._strides
    exps = algebra.basis_exponents
    ns = algebra.radicands
    out = [0] * algebra.dim
    nz_v = [(j, cv, exps[j]) for j, cv in enumerate(v) if cv]
    for i, cu in enumerate(u):
        if not cu:
            continue
        ei = exps[i]
        for j, cv, ej in nz_v:
            coef = cu * cv
            idx = 0
            for axis in range(len(dims)):
                e = ei[axis] + ej[axis]
                if e >= dims[axis]:
                    e -= dims[axis]
                    n = ns[axis]
                    coef = coef * (n.numerator if n.denominator == 1 else n)
                idx += e * strides[axis]
            out[idx] = out[idx] + coef
    return out


def multiply(algebra: RadicalAlgebra, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Exact product in the algebra, reducing x_i**m_i to N_i."""
    if u.algebra is not algebra and u.algebra != algebra:
        raise DomainError("element does not belong to this algebra")
    if v.algebra is not algebra and v.algebra != algebra:
        raise DomainError("element does not belong to this algebra")
    return AlgebraElement(algebra, tuple(_mul_raw(algebra, u.coeffs, v.coeffs)))


def _mul_mod(algebra: RadicalAlgebra, u: Sequence[int], v: Sequence[int], p: int, ns_mod: Sequence[int]) -> list[int]:
    dims = algebra.dims
    strides = algebra._strides
    exps = algebra.basis_exponents
    out = [0] * algebra.dim
    nz_v = [(j, cv, exps[j]) for j, cv in enumerate(v) if cv]
    for i, cu in enumerate(u):
        if not cu:
            continue
        ei = exps[i]
        for j, cv, ej in nz_v:
            coef = cu * cv
            idx = 0
            for axis in range(len(dims)):
                e = ei[axis] + ej[axis]
                if e >= dims[axis]:
                    e -= dims[axis]
                    coef = coef * ns_mod[axis]
                idx += e * strides[axis]
            out[idx] = (out[idx] + coef) % p
    return out


# ---------------------------------------------------------------------------
# minimal polynomials


def _first_nonzero(row: Sequence) -> int | None:
    for i, c in enumerate(row):
        if c:
            return i
    return None


def _minpoly_exact(algebra: RadicalAlgebra, u: AlgebraElement) -> tuple[Fraction, ...]:
    """First linear dependence among 1, u, u**2, ... by fraction-free elimination.

    Each power vector is scaled to integers (row scaling does not move the
    first dependent index); reduction is cross-multiplication with content
    stripping, so the vector side stays in exact integer arithmetic.
    """
    dim = algebra.dim
    pivots: dict[int, tuple[list[int], list[Fraction]]] = {}
    powers: list[list[Scalar]] = []
    u_raw: list[Scalar] = [
        c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
        for c in u.coeffs
    ]
    power: list[Scalar] = [1] + [0] * (dim - 1)
    for k in range(dim + 1):
        powers.append(list(power))
        scale = math.lcm(*(c.denominator for c in power))
        row = [int(c * scale) for c in power]
        combo: list[Fraction] = [Fraction(0)] * k + [Fraction(scale)]
        while True:
            col = _first_nonzero(row)
            if col is None:
                coeffs = tuple(c / combo[k] for c in combo)
                _assert_annihilates(coeffs, powers)
                return coeffs
            if col not in pivots:
                g = math.gcd(*row)
                pivots[col] = ([c // g for c in row], [c / g for c in combo])
                break
            prow, pcombo = pivots[col]
            lead, coef = prow[col], row[col]
            g = math.gcd(lead, coef)
            a, b = lead // g, coef // g
            row = [a * x - b * y for x, y in zip(row, prow)]
            g2 = math.gcd(*row)
            if g2 > 1:
                row = [c // g2 for c in row]
            pcombo_padded = pcombo + [Fraction(0)] * (len(combo) - len(pcombo))
            combo = [a * x - b * y for x, y in zip(combo, pcombo_padded)]
            if g2 > 1:
                combo = [c / g2 for c in combo]
        power = _mul_raw(algebra, power, u_raw)
    raise InternalInvariantError("no dependence found among dim + 1 power vectors")


def _assert_annihilates(coeffs: Sequence[Fraction], powers: Sequence[Sequence[Scalar]]) -> None:
    dim = len(powers[0])
    for coord in range(dim):
        total = sum((c * powers[j][coord] for j, c in enumerate(coeffs)), Fraction(0))
        if total != 0:
            raise InternalInvariantError("computed minimal polynomial does not annihilate its element")


def _next_prime(n: int) -> int:
    n += 1 + (n % 2)
    while not is_prime(n):
        n += 2
    return n


def _minpoly_mod_p(algebra: RadicalAlgebra, u_ints: Sequence[int], p: int) -> tuple[int, list[int]]:
    """Degree and monic coefficients of the dependence of the powers of u mod p."""
    dim = algebra.dim
    ns_mod = [n.numerator % p for n in algebra.radicands]
    pivots: dict[int, tuple[list[int], list[int]]] = {}
    power = [1 % p] + [0] * (dim - 1)
    u_mod = [c % p for c in u_ints]
    for k in range(dim + 1):
        row = list(power)
        combo = [0] * k + [1]
        while True:
            col = _first_nonzero(row)
            if col is None:
                inv = pow(combo[k], -1, p)
                return k, [c * inv % p for c in combo]
            if col not in pivots:
                inv = pow(row[col], -1, p)
                pivots[col] = ([c * inv % p for c in row], [c * inv % p for c in combo])
                break
            prow, pcombo = pivots[col]
            coef = row[col]
            row = [(x - coef * y) % p for x, y in zip(row, prow)]
            pcombo_padded = pcombo + [0] * (len(combo) - len(pcombo))
            combo = [(x - coef * y) % p for x, y in zip(combo, pcombo_padded)]
        power = _mul_mod(algebra, power, u_mod, p, ns_mod)
    raise InternalInvariantError("no dependence found among dim + 1 power vectors mod p")


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    t = (r2 - r1) * pow(m1 % m2, -1, m2) % m2
    return r1 + m1 * t


def _minpoly_modular(algebra: RadicalAlgebra, u: AlgebraElement) -> tuple[Fraction, ...]:
    """Multi-modular minimal polynomial with a deterministic certificate.

    Coefficients are CRT-reconstructed from primes whose modular dependence
    degree is maximal, with enough primes to exceed a conjugate-modulus
    coefficient bound; the result is then certified by Horner evaluation
    modulo fresh primes whose product exceeds an a-priori bound on any
    nonzero coordinate of the evaluation.
    """
    dim = algebra.dim
    u_ints = [int(c) for c in u.coeffs]
    weights = [
        math.prod(abs(n) ** (e / m) for n, e, m in zip(algebra.radicands, exp, algebra.dims))
        for exp in algebra.basis_exponents
    ]
    root_bound = sum(abs(c) * w for c, w in zip(u_ints, weights)) + 1
    log2_coeff = dim * (1 + math.log2(1 + root_bound)) + 2
    if not math.isfinite(log2_coeff):
        raise CapacityError("coefficient bound overflows; the instance is far beyond desk scale")

    p = 2**30
    k_star = -1
    residues: dict[int, list[int]] = {}
    acc_log = 0.0
    while acc_log < log2_coeff:
        p = _next_prime(p)
        k_p, coeffs_p = _minpoly_mod_p(algebra, u_ints, p)
        if k_p > k_star:
            k_star = k_p
            residues = {p: coeffs_p}
            acc_log = math.log2(p)
        elif k_p == k_star:
            residues[p] = coeffs_p
            acc_log += math.log2(p)

    modulus = 1
    combined = [0] * (k_star + 1)
    for p, coeffs_p in residues.items():
        if modulus == 1:
            combined = list(coeffs_p)
            modulus = p
        else:
            combined = [_crt_pair(r, modulus, c, p) for r, c in zip(combined, coeffs_p)]
            modulus *= p
    half = modulus // 2
    lifted = [c - modulus if c > half else c for c in (c % modulus for c in combined)]

    l1_u = sum(abs(c) for c in u_ints)
    pmax = math.prod(max(1, abs(n.numerator)) for n in algebra.radicands)
    max_coeff = max(abs(c) for c in lifted)
    log2_value = (
        math.log2(k_star + 2)
        + (math.log2(max_coeff) if max_coeff else 0)
        + k_star * math.log2(max(2, pmax * l1_u))
        + 2
    )
    acc_log = 0.0
    while acc_log < log2_value:
        p = _next_prime(p)
        ns_mod = [n.numerator % p for n in algebra.radicands]
        u_mod = [c % p for c in u_ints]
        acc = [0] * dim
        acc[0] = lifted[-1] % p
        for c in reversed(lifted[:-1]):
            acc = _mul_mod(algebra, acc, u_mod, p, ns_mod)
            acc[0] = (acc[0] + c) % p
        if any(acc):
            raise InternalInvariantError("modular minimal polynomial failed its certificate")
        acc_log += math.log2(p)
    return tuple(Fraction(c) for c in lifted)


def minimal_polynomial(algebra: RadicalAlgebra, u: AlgebraElement) -> tuple[Fraction, ...]:
    """Monic generator of the ideal of rational polynomials vanishing at u.

    Returned as ascending coefficients with trailing entry 1; the degree is
    at most dim.  Above MODULAR_DIM_THRESHOLD, integral inputs take a
    multi-modular path (mod-p Krylov plus CRT) that is certified before it
    returns; everything else runs the exact fraction-free path.
    """
    integral = all(n.denominator == 1 for n in algebra.radicands) and all(
        c.denominator == 1 for c in u.coeffs
    )
    if algebra.dim > MODULAR_DIM_THRESHOLD and integral:
        return _minpoly_modular(algebra, u)
    return _minpoly_exact(algebra, u)


# ---------------------------------------------------------------------------
# the field test


@dataclass(frozen=True)
class FieldTestResult:
    """Verdict of the oracle: is the algebra a field, and how does it split."""

    is_field: bool
    generator: AlgebraElement
    generator_coefficients: tuple[int, ...]
    minpoly: tuple[Fraction, ...]
    factor_degrees: tuple[int, ...]
    retries_used: int

    def __post_init__(self) -> None:
        dim = self.generator.algebra.dim
        if len(self.minpoly) - 1 == dim and sum(self.factor_degrees) != dim:
            raise InternalInvariantError("factor degrees do not sum to the dimension")
        if self.is_field != (self.factor_degrees == (dim,)):
            raise InternalInvariantError("field flag disagrees with the factor degrees")


def is_field(algebra: RadicalAlgebra, seed: int = 0) -> FieldTestResult:
    """Decide whether the algebra is a field, reporting how it factors if not.

    Draws a random integer combination of the generators; a generic one
    generates the algebra, so degenerate draws (minimal polynomial of degree
    below dim) are redrawn up to MAX_GENERATOR_RETRIES times.  The factor
    degrees of the minimal polynomial are the degrees of the field factors of
    the algebra, i.e. the possible degrees of the radical extension over all
    root choices.
    """
    rng = random.Random(seed)
    dens = [n.value().denominator for n in algebra.tower.radicands]
    retries = 0
    u = None
    minpoly: tuple[Fraction, ...] = ()
    eff: list[int] = []
    for _ in range(MAX_GENERATOR_RETRIES):
        draws = [rng.choice(_COEFF_POOL) for _ in range(algebra.tower.ell)]
        eff = [c * d for c, d in zip(draws, dens)]
        u = algebra.zero()
        for i, c in enumerate(eff):
            u = u + algebra.generator(i).scale(c)
        minpoly = minimal_polynomial(algebra, u)
        if len(minpoly) - 1 == algebra.dim:
            break
        retries += 1
    else:
        raise OracleInconclusiveError(
            f"no generating element found in {MAX_GENERATOR_RETRIES} draws; this signals a bug"
        )
    factorization = factor_over_Q(list(minpoly))
    if any(mult != 1 for _, mult in factorization.factors):
        raise InternalInvariantError("minimal polynomial of a generating element must be squarefree")
    return FieldTestResult(
        is_field=factorization.is_irreducible(),
        generator=u,
        generator_coefficients=tuple(eff),
        minpoly=minpoly,
        factor_degrees=factorization.degree_multiset(),
        retries_used=retries,
    )


def verify_primitive_sum(algebra: RadicalAlgebra, b: Sequence[Scalar]) -> bool:
    """True iff the weighted sum of the radicals generates the whole algebra.

    For a field algebra this must hold for every choice of nonzero weights;
    callers should have established is_field first.
    """
    if len(b) != algebra.tower.ell:
        raise DomainError(f"need {algebra.tower.ell} weights, got {len(b)}")
    if any(not c for c in b):
        raise DomainError("weights must be nonzero")
    u = algebra.zero()
    for i, c in enumerate(b):
        u = u + algebra.generator(i).scale(c)
    return len(minimal_polynomial(algebra, u)) - 1 == algebra.dim
