"""Decision procedures for the degree of a stack of radicals over Q.

Adjoining m_i-th roots of nonzero rationals N_i to Q multiplies degrees,
i.e. reaches degree m_1 * ... * m_l, exactly when for every prime p dividing
some m_i none of the anchored power products of the N_i (taken over entries
whose m_i the prime divides) is a perfect p-th power, and additionally, at
p = 2, when the tower carries no "even defect": a product equal to minus a
square whose support forces a compensating square via the factor 2d.

Everything here works on exponent vectors of factored values; no floating
point, no root choices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .arith import (
    FactoredRational,
    factor,
    factor_fraction,
    neg_square_root,
    power_product,
    pth_root,
    square_class,
)
from .errors import (
    CapacityError,
    DomainError,
    InternalInvariantError,
    UnsupportedInputError,
)

RawEntry = tuple[Union[int, Fraction, FactoredRational], int]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class RadicalTower:
    """The ordered input (N_1, m_1), ..., (N_l, m_l), radicands pre-factored."""

    entries: tuple[tuple[FactoredRational, int], ...]

    @property
    def ell(self) -> int:
        return len(self.entries)

    @property
    def radicands(self) -> tuple[FactoredRational, ...]:
        return tuple(n for n, _ in self.entries)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.entries)

    @property
    def lcm_m(self) -> int:
        return math.lcm(*self.degrees)

    @property
    def prime_support(self) -> tuple[int, ...]:
        return factor(self.lcm_m).primes

    @property
    def product_degree(self) -> int:
        return math.prod(self.degrees)


@dataclass(frozen=True)
class PrimeLocalView:
    """The sublist of a tower whose m_i the prime p divides, in original order.

    `indices` are 0-based positions into the tower; `local_m[i]` is the p-part
    of the corresponding m (the largest power of p dividing it).
    """

    p: int
    indices: tuple[int, ...]
    values: tuple[FactoredRational, ...]
    local_m: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class AnchoredProduct:
    """A product N_{j_1}**e_1 * ... * N_{j_k}**e_k whose last exponent is exactly 1.

    Positions refer to a PrimeLocalView; `exponents` has length top_index + 1
    with trailing entry 1 and all earlier entries in [0, p).
    """

    value: FactoredRational
    exponents: tuple[int, ...]
    top_index: int


@dataclass(frozen=True)
class PthPowerWitness:
    """An anchored product that is a perfect p-th power, with its exact root."""

    p: int
    view: PrimeLocalView
    element: AnchoredProduct
    root: FactoredRational


@dataclass(frozen=True)
class SpeWitness:
    """A verified instance of the compensating-square condition.

    sign * 2d * prod_{j != i} N_j**e_j is the square of `root`, where i is a
    view position on the defect support and each e_j is 0 or 1.
    """

    i: int
    sign: int
    exponents: tuple[tuple[int, int], ...]  # (view position j, e_j) for j != i
    root: FactoredRational


@dataclass(frozen=True)
class EvenDefect:
    """The unique minus-square member of the p = 2 product family, with its analysis.

    m_value = -d**2 is the only anchored product (over the view) lying in the
    minus-square class; f is its 0/1 exponent vector over the view, m_sharp
    its support.  The tower is blocked at 2 ("defective") exactly when 4
    divides the local degree at every support position and the
    compensating-square search succeeds.
    """

    view: PrimeLocalView
    m_value: FactoredRational
    d: FactoredRational
    f: tuple[int, ...]
    m_sharp: tuple[int, ...]
    four_divides: bool
    spe_witness: SpeWitness | None
    defective: bool

    def __post_init__(self) -> None:
        if self.defective != (self.four_divides and self.spe_witness is not None):
            raise InternalInvariantError("defect flag disagrees with its defining clauses")


@dataclass(frozen=True)
class PrimeEvidence:
    """Outcome of the degree check at one prime."""

    p: int
    view: PrimeLocalView
    witness: PthPowerWitness | None
    defect: EvenDefect | None

    @property
    def passed(self) -> bool:
        return self.witness is None and (self.defect is None or not self.defect.defective)

    @property
    def status(self) -> str:
        if self.witness is not None:
            return "pth_power"
        if self.defect is not None and self.defect.defective:
            return "defect"
        return "pass"


@dataclass(frozen=True)
class DecisionReport:
    """Overall verdict with per-prime evidence and explicit witnesses."""

    tower: RadicalTower
    full_degree: bool
    product_degree: int
    per_prime: tuple[PrimeEvidence, ...]
    notes: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.full_degree != all(e.passed for e in self.per_prime):
            raise InternalInvariantError("full_degree flag disagrees with per-prime evidence")


@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Verdict for x**n - a over Q, carrying the violated clause if reducible."""

    n: int
    a: FactoredRational
    irreducible: bool
    prime_obstruction: tuple[int, FactoredRational] | None  # (p, root) with root**p == a
    minus_four_obstruction: FactoredRational | None  # c with a == -4 * c**4


# ---------------------------------------------------------------------------
# tower construction and prime-local restriction


def build_tower(raw: Iterable[RawEntry]) -> RadicalTower:
    """Validate and factor the input list of (radicand, root index) pairs.

    Entries with m = 1 are retained but take part in no prime-local check.
    """
    entries = []
    for n, m in raw:
        if not isinstance(m, int) or m < 1:
            raise DomainError(f"root index must be a positive integer, got {m!r}")
        entries.append((factor_fraction(n), m))
    if not entries:
        raise DomainError("a tower needs at least one entry")
    return RadicalTower(tuple(entries))


def _p_part(m: int, p: int) -> int:
    out = 1
    while m % p == 0:
        out *= p
        m //= p
    return out


def local_view(tower: RadicalTower, p: int) -> PrimeLocalView:
    """Restrict the tower to the entries whose m_i the prime p divides."""
    if p not in tower.prime_support:
        raise DomainError(f"{p} does not divide any root index of the tower")
    indices = tuple(i for i, (_, m) in enumerate(tower.entries) if m % p == 0)
    return PrimeLocalView(
        p=p,
        indices=indices,
        values=tuple(tower.entries[i][0] for i in indices),
        local_m=tuple(_p_part(tower.entries[i][1], p) for i in indices),
    )


def anchored_products(view: PrimeLocalView) -> Iterator[AnchoredProduct]:
    """Stream all products with a distinguished top factor of exponent exactly 1.

    For each k the top factor is the k-th view entry; the earlier entries
    carry exponents in [0, p), enumerated lexicographically.  Total count is
    1 + p + ... + p**(ell-1); the stream is never materialized.
    """
    p = view.p
    for k in range(view.ell):
        top = view.values[k]
        for tail in itertools.product(range(p), repeat=k):
            value = top
            for j, e in enumerate(tail):
                if e:
                    value = value * view.values[j] ** e
            yield AnchoredProduct(value=value, exponents=(*tail, 1), top_index=k)


# ---------------------------------------------------------------------------
# per-prime verdicts


def _first_pth_power(view: PrimeLocalView) -> PthPowerWitness | None:
    for element in anchored_products(view):
        root = pth_root(element.value, view.p)
        if root is not None:
            return PthPowerWitness(p=view.p, view=view, element=element, root=root)
    return None


def odd_prime_obstruction(view: PrimeLocalView) -> PthPowerWitness | None:
    """First anchored product that is a perfect p-th power (odd p), if any.

    None means the degree check passes at this prime.  Enumeration order is
    deterministic and the scan short-circuits at the first witness.
    """
    if view.p == 2:
        raise ValueError("odd_prime_obstruction requires an odd prime")
    return _first_pth_power(view)


def _spe_search(view: PrimeLocalView, d: FactoredRational, i: int) -> SpeWitness | None:
    """Search sign and exponents e_j in {0, 1} with sign*2d*prod N_j**e_j a square."""
    two_d = factor_fraction(2) * d
    others = [j for j in range(view.ell) if j != i]
    for exps in itertools.product((0, 1), repeat=len(others)):
        base = two_d
        for j, e in zip(others, exps):
            if e:
                base = base * view.values[j]
        for sign in (1, -1):
            candidate = base if sign == 1 else -base
            root = pth_root(candidate, 2)
            if root is not None:
                return SpeWitness(i=i, sign=sign, exponents=tuple(zip(others, exps)), root=root)
    return None


def find_even_defect(view: PrimeLocalView) -> EvenDefect | None:
    """Locate the unique minus-square anchored product at p = 2 and analyze it.

    The caller must already have verified that no anchored product is a
    square; under that precondition the minus-square member is unique and its
    exponent vector is determined, both of which are re-checked here and
    raise InternalInvariantError when violated (that would be a bug, not bad
    input).  The compensating-square search runs for every support position
    and its outcome is asserted to be independent of the choice.
    """
    if view.p != 2:
        raise ValueError("find_even_defect requires p = 2")
    hits: list[tuple[AnchoredProduct, FactoredRational]] = []
    for element in anchored_products(view):
        d = neg_square_root(element.value)
        if d is not None:
            hits.append((element, d))
    if not hits:
        return None
    values = {square_class(e.value) for e, _ in hits}
    if len(hits) > 1:
        raise InternalInvariantError(
            f"{len(hits)} anchored products lie in the minus-square class "
            f"({len(values)} distinct); at most one is possible when no product is a square"
        )
    element, d = hits[0]
    f = element.exponents + (0,) * (view.ell - len(element.exponents))
    target = square_class(element.value)
    for g in itertools.product((0, 1), repeat=view.ell):
        if any(g) and g != f and square_class(power_product(view.values, g)) == target:
            raise InternalInvariantError(
                "the exponent vector of the minus-square member is not unique"
            )
    m_sharp = tuple(j for j, fj in enumerate(f) if fj)
    if not m_sharp:
        raise InternalInvariantError("the minus-square member has empty support")
    four_divides = all(view.local_m[j] % 4 == 0 for j in m_sharp)
    searches = [_spe_search(view, d, i) for i in m_sharp]
    outcomes = {w is not None for w in searches}
    if len(outcomes) > 1:
        raise InternalInvariantError(
            "the compensating-square search depends on the support position chosen"
        )
    witness = searches[0]
    return EvenDefect(
        view=view,
        m_value=element.value,
        d=d,
        f=f,
        m_sharp=m_sharp,
        four_divides=four_divides,
        spe_witness=witness,
        defective=four_divides and witness is not None,
    )


def even_prime_obstruction(view: PrimeLocalView) -> PthPowerWitness | EvenDefect | None:
    """Blocking witness at p = 2: a square in the product family, or a defect.

    None means the degree check passes at 2.
    """
    if view.p != 2:
        raise ValueError("even_prime_obstruction requires p = 2")
    witness = _first_pth_power(view)
    if witness is not None:
        return witness
    defect = find_even_defect(view)
    if defect is not None and defect.defective:
        return defect
    return None


# ---------------------------------------------------------------------------
# the full decision


def _note_for(evidence: PrimeEvidence, tower: RadicalTower) -> str:
    p = evidence.p
    view = evidence.view
    labels = [f"N{i + 1}" for i in view.indices]
    if evidence.witness is not None:
        el = evidence.witness.element
        terms = [
            f"{labels[j]}^{e}"
            for j, e in enumerate(el.exponents)
            if e
        ]
        return (
            f"p={p}: {'*'.join(terms)} = {el.value} is a perfect {p}-th power "
            f"({evidence.witness.root})^{p}; the degree collapses at {p}."
        )
    defect = evidence.defect
    if defect is not None and defect.defective:
        w = defect.spe_witness
        assert w is not None
        factors = [f"2*{defect.d}"]
        factors += [f"{labels[j]}" for j, e in w.exponents if e]
        sign = "" if w.sign == 1 else "-"
        return (
            f"p=2: {defect.m_value} = -({defect.d})^2 appears among the products, "
            f"4 divides every local degree on its support, and "
            f"{sign}{'*'.join(factors)} = ({w.root})^2; the degree collapses at 2."
        )
    if defect is not None:
        why = (
            "some local degree on its support is not divisible by 4"
            if not defect.four_divides
            else "no sign and 0/1 exponent choice makes 2d times a complementary product a square"
        )
        return (
            f"p=2: {defect.m_value} = -({defect.d})^2 appears among the products, "
            f"but {why}; no degree loss at 2."
        )
    count = (view.p ** view.ell - 1) // (view.p - 1)
    return f"p={p}: none of the {count} anchored products is a perfect {p}-th power."


def decide_full_degree(tower: RadicalTower) -> DecisionReport:
    """Decide whether the stacked radicals reach degree m_1 * ... * m_l over Q.

    The check runs independently at each prime dividing some m_i: odd primes
    look for a perfect p-th power among the anchored products of the entries
    the prime touches; p = 2 additionally analyzes the minus-square defect.
    An empty prime support (all m_i = 1) passes trivially.
    """
    evidence = []
    notes = []
    for p in tower.prime_support:
        view = local_view(tower, p)
        witness: PthPowerWitness | None = None
        defect: EvenDefect | None = None
        if p == 2:
            witness = _first_pth_power(view)
            if witness is None:
                defect = find_even_defect(view)
        else:
            witness = odd_prime_obstruction(view)
        ev = PrimeEvidence(p=p, view=view, witness=witness, defect=defect)
        evidence.append(ev)
        notes.append(_note_for(ev, tower))
    if not evidence:
        notes.append("no prime divides any root index; the degree is trivially full.")
    return DecisionReport(
        tower=tower,
        full_degree=all(e.passed for e in evidence),
        product_degree=tower.product_degree,
        per_prime=tuple(evidence),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# single binomial irreducibility


def binomial_irreducibility(n: int, a: Union[int, Fraction, FactoredRational]) -> IrreducibilityVerdict:
    """Classical criterion for x**n - a over Q.

    Irreducible iff a is not a perfect p-th power for any prime p dividing n,
    and, when 4 divides n, a is not of the form -4c**4.  Reducible verdicts
    carry the violated clause with an explicit witness.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"exponent must be a positive integer, got {n!r}")
    af = factor_fraction(a)
    p = 2
    m = n
    while m > 1:
        if m % p == 0:
            root = pth_root(af, p)
            if root is not None:
                return IrreducibilityVerdict(
                    n=n, a=af, irreducible=False,
                    prime_obstruction=(p, root), minus_four_obstruction=None,
                )
            while m % p == 0:
                m //= p
        p += 1
    if n % 4 == 0:
        quarter = af * factor_fraction(Fraction(-1, 4))
        if quarter.sign > 0 and all(e % 4 == 0 for _, e in quarter.exponents):
            c = FactoredRational(1, tuple((q, e // 4) for q, e in quarter.exponents))
            return IrreducibilityVerdict(
                n=n, a=af, irreducible=False,
                prime_obstruction=None, minus_four_obstruction=c,
            )
    return IrreducibilityVerdict(
        n=n, a=af, irreducible=True, prime_obstruction=None, minus_four_obstruction=None
    )


# ---------------------------------------------------------------------------
# multiplicative independence of positive radicals


def _diagonalize_with_column_ops(matrix: list[list[int]], ncols: int):
    """Integer diagonalization A -> U A V by row and column operations.

    Returns (diag, V) where diag lists the diagonal entries (padded with 0 to
    ncols) and V is the accumulated unimodular column transform.  Row
    transforms are not tracked; solution sets of A x == 0 (mod anything) are
    x = V y with diag[j] * y_j == 0.
    """
    a = [row[:] for row in matrix]
    nrows = len(a)
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    t = 0
    while t < nrows and t < ncols:
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        while True:
            i0, j0 = pivot
            a[t], a[i0] = a[i0], a[t]
            if j0 != t:
                for row in a:
                    row[t], row[j0] = row[j0], row[t]
                for row in v:
                    row[t], row[j0] = row[j0], row[t]
            clean = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(ncols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if clean:
                break
            pivot = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
        t += 1
    diag = [a[j][j] if j < min(nrows, ncols) else 0 for j in range(ncols)]
    for j in range(t, ncols):
        diag[j] = 0
    return diag, v


def multiplicative_independence(tower: RadicalTower) -> tuple[int, ...] | None:
    """Multiplicative independence of positive real radicals.

    Holds (returns None) iff no nontrivial power product of the positive real
    roots N_i**(1/m_i) lands in Q; equivalently no exponent vector a with
    0 <= a_i < m_i, not all zero, makes prod N_i**(a_i * m/m_i) a perfect
    m-th power.  Decided by exact linear algebra on factorization exponent
    vectors modulo m; a violating vector is returned otherwise.

    Restricted to positive radicands: with negative ones the statement
    depends on which complex root is meant.
    """
    if any(n.sign < 0 for n in tower.radicands):
        raise UnsupportedInputError("multiplicative independence requires positive radicands")
    m = tower.lcm_m
    ms = tower.degrees
    ell = tower.ell
    primes = sorted({p for n in tower.radicands for p in n.primes})
    matrix = [
        [(m // ms[i]) * tower.radicands[i].exponent(q) for i in range(ell)]
        for q in primes
    ]
    diag, v = _diagonalize_with_column_ops(matrix, ell)
    for j in range(ell):
        c = m // math.gcd(diag[j], m)
        gen = [c * v[i][j] for i in range(ell)]
        if any(gen[i] % ms[i] for i in range(ell)):
            return tuple(gen[i] % ms[i] for i in range(ell))
    return None


def multiplicative_independence_bruteforce(
    tower: RadicalTower, *, cap: int = 4096
) -> tuple[int, ...] | None:
    """Reference implementation by direct enumeration, for cross-checking.

    Scans exponent vectors in lexicographic order, so the returned violation
    is the smallest one.
    """
    if any(n.sign < 0 for n in tower.radicands):
        raise UnsupportedInputError("multiplicative independence requires positive radicands")
    if tower.product_degree > cap:
        raise CapacityError(f"product of root indices exceeds the brute-force cap {cap}")
    m = tower.lcm_m
    ms = tower.degrees
    for a in itertools.product(*(range(mi) for mi in ms)):
        if not any(a):
            continue
        acc = power_product(tower.radicands, [ai * (m // mi) for ai, mi in zip(a, ms)])
        if all(e % m == 0 for _, e in acc.exponents):
            return a
    return None
