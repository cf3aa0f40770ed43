"""Brute-force ground truth: exhaustive subgroup machinery, hiding-oracle
validation, solver-output verification, and sampler statistics.

These paths may be exponential by design; they are the oracle side of every
acceptance check and never feed back into the solvers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from scipy.stats import chi2 as _chi2

from .core import BlackBoxGroup, GroupElement, HidingOracle, enumerate_closure, enum_bound
from .errors import BoundExceeded
from .sim import RngStream

EXHAUSTIVE_CAP = 1 << 10


@dataclass
class VerificationReport:
    instance: str
    expected_order: int
    result_order: int
    equal: bool
    f_queries: int
    wall_time: float

    def __post_init__(self):
        if self.equal:
            assert self.expected_order == self.result_order


def brute_force_hsp(
    G: BlackBoxGroup, elements: Sequence[GroupElement], f: HidingOracle
) -> list[GroupElement]:
    """The universal oracle: {g : f(g) = f(identity)} over an enumerated G."""
    base = f.peek(G.identity())
    return [x for x in elements if f.peek(x) == base]


def verify_hiding(
    G: BlackBoxGroup,
    elements: Sequence[GroupElement],
    f: HidingOracle,
    h_gens: Sequence[GroupElement],
) -> bool:
    """Exhaustive two-sided check that f is constant exactly on left cosets
    of <h_gens>."""
    h_keys = {G.key(x) for x in enumerate_closure(G, h_gens)}
    for a in elements:
        a_inv = G.invert(a)
        la = f.peek(a)
        for b in elements:
            same_coset = G.key(G.multiply(a_inv, b)) in h_keys
            if (la == f.peek(b)) != same_coset:
                return False
    return True


def subgroup_key(G: BlackBoxGroup, elements: Sequence[GroupElement]) -> frozenset:
    return frozenset(G.key(x) for x in elements)


def subgroups_of(
    G: BlackBoxGroup,
    elements: Sequence[GroupElement],
    max_count: Optional[int] = None,
    rng: Optional[RngStream] = None,
) -> list[list[GroupElement]]:
    """All subgroups (exhaustive fixpoint, |G| <= 2^10) or max_count seeded
    random ones via random element closures."""
    if max_count is None:
        if len(elements) > EXHAUSTIVE_CAP:
            raise BoundExceeded(
                f"exhaustive subgroup enumeration capped at {EXHAUSTIVE_CAP}"
            )
        found: dict[frozenset, list[GroupElement]] = {}
        trivial = [G.identity()]
        found[subgroup_key(G, trivial)] = trivial
        work = [trivial]
        while work:
            sub = work.pop()
            sub_gens = sub  # closing over all members keeps the fixpoint simple
            for x in elements:
                extended = enumerate_closure(G, sub_gens + [x], len(elements))
                key = subgroup_key(G, extended)
                if key not in found:
                    found[key] = extended
                    work.append(extended)
        return list(found.values())
    rng = rng or RngStream(0)
    out: dict[frozenset, list[GroupElement]] = {}
    attempts = 0
    while len(out) < max_count and attempts < 50 * max_count:
        attempts += 1
        seeds = [rng.choice(elements) for _ in range(rng.randrange(3))]
        try:
            sub = enumerate_closure(G, seeds)
        except BoundExceeded:
            continue
        out.setdefault(subgroup_key(G, sub), sub)
    return list(out.values())


def chi_square_uniform(samples: Sequence, support: Sequence) -> tuple[float, float]:
    """Pearson statistic and p-value against the uniform null on `support`."""
    support = list(support)
    assert support
    counts = {s: 0 for s in support}
    for s in samples:
        counts[s] += 1
    n = len(samples)
    k = len(support)
    if k == 1:
        return 0.0, 1.0
    expected = n / k
    stat = sum((c - expected) ** 2 / expected for c in counts.values())
    p = float(_chi2.sf(stat, k - 1))
    return stat, p


def verify_result(
    G: BlackBoxGroup,
    elements: Sequence[GroupElement],
    f: HidingOracle,
    result_gens: Sequence[GroupElement],
    instance: str = "",
    f_queries: int = 0,
    started: Optional[float] = None,
) -> VerificationReport:
    """Compare closure(result) against the brute-force oracle."""
    expected = brute_force_hsp(G, elements, f)
    got = enumerate_closure(G, result_gens, len(elements) + 1)
    equal = subgroup_key(G, expected) == subgroup_key(G, got)
    return VerificationReport(
        instance=instance,
        expected_order=len(expected),
        result_order=len(got) if equal else len(got),
        equal=equal,
        f_queries=f_queries,
        wall_time=(time.monotonic() - started) if started else 0.0,
    )
