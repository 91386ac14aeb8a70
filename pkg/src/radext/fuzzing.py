"""Randomized cross-checking of the criterion against the algebra oracle.

Instances are generated from per-instance seeds derived as master_seed + index,
so any failure can be replayed bit-for-bit by running a single-instance fuzz
with that derived seed as the master.  Half of the instances carry a planted
multiplicative relation (a square, a minus-square, a product collision, or a
small defect-shaped pair), because uniform sampling almost never exercises the
defect branch at p = 2.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .criteria import build_tower, decide_full_degree
from .etale import build_algebra, is_field

_SEED_MASK = 2**64 - 1


@dataclass(frozen=True)
class FuzzBounds:
    max_ell: int = 3
    max_m: int = 8
    max_abs_n: int = 30
    max_dim: int = 24


@dataclass(frozen=True)
class InstanceRecord:
    index: int
    seed: int
    entries: tuple[tuple[int, int], ...]
    full_degree: bool
    is_field: bool
    factor_degrees: tuple[int, ...]

    @property
    def agrees(self) -> bool:
        return self.full_degree == self.is_field


@dataclass(frozen=True)
class FuzzReport:
    count: int
    seed: int
    bounds: FuzzBounds
    records: tuple[InstanceRecord, ...]
    mismatch_record: InstanceRecord | None
    invariant_failures: tuple[str, ...]

    @property
    def clean(self) -> bool:
        return self.mismatch_record is None and not self.invariant_failures

    @property
    def full_degree_count(self) -> int:
        return sum(1 for r in self.records if r.full_degree)


def instance_seed(master_seed: int, index: int) -> int:
    return (master_seed + index) & _SEED_MASK


def generate_tower(seed: int, bounds: FuzzBounds) -> list[tuple[int, int]]:
    """Deterministic random tower within the given bounds."""
    rng = random.Random(seed)
    ell = rng.randint(1, bounds.max_ell)
    while True:
        ms = [rng.randint(1, bounds.max_m) for _ in range(ell)]
        if math.prod(ms) <= bounds.max_dim:
            break
    ns = []
    for _ in range(ell):
        n = 0
        while n == 0:
            n = rng.randint(-bounds.max_abs_n, bounds.max_abs_n)
        ns.append(n)
    if rng.random() < 0.5:
        kind = rng.choice(("square", "neg_square", "relation", "defect_shape"))
        i = rng.randrange(ell)
        c = rng.randint(1, 5)
        if kind == "square":
            ns[i] = c * c
        elif kind == "neg_square":
            ns[i] = -c * c
        elif kind == "relation" and ell >= 2:
            others = [j for j in range(ell) if j != i]
            chosen = [j for j in others if rng.random() < 0.7] or [others[0]]
            prod = math.prod(ns[j] for j in chosen)
            ns[i] = rng.choice((1, -1)) * rng.choice((1, 4)) * prod
        elif kind == "defect_shape":
            d = rng.choice((1, 2, 3))
            if ell >= 2 and 16 <= bounds.max_dim:
                ns[0], ms[0] = -d * d, 4
                ns[1], ms[1] = rng.choice((2, 3, 5, 8)), 4
                for j in range(2, ell):
                    ms[j] = 1
            elif 4 <= bounds.max_dim:
                ns[0], ms[0] = -d * d, 4
                for j in range(1, ell):
                    ms[j] = 1
    return list(zip(ns, ms))


def _restricted_entries(entries, p):
    out = []
    for n, m in entries:
        if m % p == 0:
            part = 1
            while m % p == 0:
                part *= p
                m //= p
            out.append((n, part))
    return out


def criterion_invariant_failures(entries: list[tuple[int, int]], rng: random.Random) -> list[str]:
    """Check the order/scale/monotonicity invariants of the criterion alone."""
    failures = []
    tower = build_tower(entries)
    report = decide_full_degree(tower)
    full = report.full_degree
    ell = len(entries)

    perms = (
        list(itertools.permutations(range(ell)))
        if ell <= 3
        else [tuple(rng.sample(range(ell), ell)) for _ in range(6)]
    )
    for perm in perms:
        permuted = [entries[i] for i in perm]
        if decide_full_degree(build_tower(permuted)).full_degree != full:
            failures.append(f"permutation {perm} changed the verdict")

    i = rng.randrange(ell)
    c = rng.choice((-3, -2, -1, 1, 2, 3))
    scaled = list(entries)
    n, m = scaled[i]
    scaled[i] = (n * c**m, m)
    if decide_full_degree(build_tower(scaled)).full_degree != full:
        failures.append(f"scaling entry {i} by {c}**{m} changed the verdict")

    if full and ell > 1:
        for drop in range(ell):
            sub = [e for j, e in enumerate(entries) if j != drop]
            if not decide_full_degree(build_tower(sub)).full_degree:
                failures.append(f"sub-tower without entry {drop} lost full degree")

    if full:
        for j, (n, m) in enumerate(entries):
            for div in range(1, m):
                if m % div == 0:
                    reduced = list(entries)
                    reduced[j] = (n, div)
                    if not decide_full_degree(build_tower(reduced)).full_degree:
                        failures.append(f"reducing m_{j} from {m} to {div} lost full degree")

    per_prime_and = all(
        decide_full_degree(build_tower(_restricted_entries(entries, p))).full_degree
        for p in tower.prime_support
    )
    if per_prime_and != full:
        failures.append("per-prime restriction AND disagrees with the verdict")

    return failures


def run_instance(index: int, master_seed: int, bounds: FuzzBounds) -> tuple[InstanceRecord, list[str]]:
    seed = instance_seed(master_seed, index)
    entries = generate_tower(seed, bounds)
    tower = build_tower(entries)
    report = decide_full_degree(tower)
    oracle = is_field(build_algebra(tower, max_dim=bounds.max_dim), seed=seed)
    record = InstanceRecord(
        index=index,
        seed=seed,
        entries=tuple(entries),
        full_degree=report.full_degree,
        is_field=oracle.is_field,
        factor_degrees=oracle.factor_degrees,
    )
    failures = criterion_invariant_failures(entries, random.Random(seed ^ 0x5EED))
    return record, failures


def run_fuzz(count: int, master_seed: int, bounds: FuzzBounds) -> FuzzReport:
    """Run `count` instances; stop at the first disagreement or invariant failure."""
    records = []
    for index in range(count):
        record, failures = run_instance(index, master_seed, bounds)
        records.append(record)
        if not record.agrees or failures:
            return FuzzReport(
                count=count,
                seed=master_seed,
                bounds=bounds,
                records=tuple(records),
                mismatch_record=record if not record.agrees else None,
                invariant_failures=tuple(failures),
            )
    return FuzzReport(
        count=count,
        seed=master_seed,
        bounds=bounds,
        records=tuple(records),
        mismatch_record=None,
        invariant_failures=(),
    )
