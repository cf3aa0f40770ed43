"""Exact simulation of the quantum primitives: Fourier sampling over finite
Abelian groups, the Abelian hidden-subgroup solver, and order finding.

Two sampler backends produce uniform draws from H-perp:

* ``ideal`` determines the hidden subgroup on the harness side (by label
  collision search, or by a structure-aware provider attached to the oracle)
  and then draws directly from the dual subgroup.  Its classical probing is
  harness-privileged and tallied separately from solver queries.
* ``statevector`` runs the five circuit steps literally on an explicit
  amplitude vector and measures the first register.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import ceil, gcd, log2, prod
from typing import Callable, Optional, Sequence

import numpy as np

from .core import BlackBoxGroup, GroupElement, QueryStats
from .errors import (
    HspError,
    NoOrderBound,
    OracleInconsistent,
    RoundBudgetExceeded,
    TooLarge,
)
from .linalg import (
    AbelianStructure,
    BlackBoxView,
    CharacterVector,
    GroupView,
    dual_subgroup,
    solve_character_kernel,
    subgroup_elements,
    subgroup_order,
    row_basis,
)

STATEVECTOR_CAP = 1 << 16


def splitmix64(x: int) -> int:
    """One step of the splitmix64 sequence; used to derive child seeds."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


class RngStream:
    """Seeded RNG with a draw counter (rng_draws in QueryStats)."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)
        self.draws = 0

    def randrange(self, n: int) -> int:
        self.draws += 1
        return self._rng.randrange(n)

    def random(self) -> float:
        self.draws += 1
        return self._rng.random()

    def choice(self, seq):
        return seq[self.randrange(len(seq))]


@dataclass
class SolverConfig:
    """Per-solve configuration: failure budget, round cap, and seed."""

    epsilon: float = 2.0**-10
    max_rounds: int = 100_000
    seed: int = 0
    backend: str = "ideal"  # sampler kind: ideal | statevector

    def __post_init__(self):
        if not 0 < self.epsilon < 0.5:
            raise HspError(f"epsilon must be in (0, 1/2), got {self.epsilon}")
        self._rng: Optional[RngStream] = None
        self._child_counter = 0

    @property
    def rng(self) -> RngStream:
        if self._rng is None:
            self._rng = RngStream(self.seed)
        return self._rng

    @property
    def stable_rounds(self) -> int:
        """Consecutive non-shrinking rounds required: (1/2)^r <= epsilon."""
        return max(1, ceil(log2(1.0 / self.epsilon)))

    def child(self, tag: str = "") -> "SolverConfig":
        """Derive an independently seeded sub-configuration (splitmix64)."""
        self._child_counter += 1
        mix = splitmix64(self.seed ^ splitmix64(self._child_counter))
        for ch in tag:
            mix = splitmix64(mix ^ ord(ch))
        cfg = SolverConfig(self.epsilon, self.max_rounds, mix, self.backend)
        return cfg

    def rng_draws(self) -> int:
        total = self._rng.draws if self._rng else 0
        return total


class Superposition:
    """Sparse state over basis labels (tuple, oracle label) -> amplitude."""

    def __init__(self, amplitudes: dict):
        self.amplitudes = dict(amplitudes)

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def check_normalized(self, tol: float = 1e-9) -> None:
        if abs(self.norm_squared() - 1.0) > tol:
            raise HspError(f"state norm {self.norm_squared()} out of tolerance")


class QuantumFunctionOracle:
    """Counted function from domain tuples to opaque labels.

    Equal labels stand for equal (coset) states; distinct labels stand for
    orthogonal states.  ``peek`` is the harness-privileged path, and
    ``subgroup_provider`` (when set) lets the harness determine the hidden
    subgroup without a full collision sweep.
    """

    def __init__(
        self,
        structure: AbelianStructure,
        eval_fn: Callable[[tuple], str],
        peek_fn: Optional[Callable[[tuple], str]] = None,
        subgroup_provider: Optional[Callable[[], list[tuple]]] = None,
    ):
        self.structure = structure
        self._eval = eval_fn
        self._peek = peek_fn or eval_fn
        self.query_count = 0
        self.harness_queries = 0
        self._provider = subgroup_provider
        self._ideal_cache: Optional[dict] = None

    def eval(self, t: Sequence[int]) -> str:
        self.query_count += 1
        return self._eval(self.structure.reduce(t))

    def peek(self, t: Sequence[int]) -> str:
        self.harness_queries += 1
        return self._peek(self.structure.reduce(t))

    def hidden_subgroup_gens(self) -> list[tuple]:
        """Harness-side determination of the hidden subgroup's generators."""
        if self._provider is not None:
            return [self.structure.reduce(t) for t in self._provider()]
        return self._collision_search()

    def _collision_search(self) -> list[tuple]:
        A = self.structure
        zero_label = self.peek(A.zero())
        members = [t for t in A.elements() if self.peek(t) == zero_label]
        member_set = set(members)
        for a in members:
            if A.neg(a) not in member_set:
                raise OracleInconsistent("collision class not closed under inverse")
            for b in members:
                if A.add(a, b) not in member_set:
                    raise OracleInconsistent("collision class not closed under addition")
        return [t for t in row_basis(members) if any(x % m for x, m in zip(t, A.moduli))]


def _ideal_state(f: QuantumFunctionOracle) -> dict:
    if f._ideal_cache is None:
        h_gens = f.hidden_subgroup_gens()
        A = f.structure
        perp_gens = [list(c.coeffs) for c in dual_subgroup(A, h_gens)]
        perp = subgroup_elements(A, perp_gens)
        f._ideal_cache = {"h_gens": h_gens, "perp": perp}
    return f._ideal_cache


def sample_character(
    structure: AbelianStructure,
    f: QuantumFunctionOracle,
    backend: str = "ideal",
    rng: Optional[RngStream] = None,
) -> CharacterVector:
    """One Fourier-sampling round: a character drawn uniformly from H-perp."""
    rng = rng or RngStream(0)
    if backend == "ideal":
        state = _ideal_state(f)
        perp = state["perp"]
        draw = perp[rng.randrange(len(perp))]
        # sanity: the draw annihilates the hidden subgroup it was derived from
        for h in state["h_gens"]:
            assert structure.pairing(draw, h) == 0
        return CharacterVector(tuple(draw))
    if backend == "statevector":
        return _statevector_sample(structure, f, rng)
    raise HspError(f"unknown sampler backend {backend!r}")


def _statevector_sample(
    structure: AbelianStructure, f: QuantumFunctionOracle, rng: RngStream
) -> CharacterVector:
    A = structure
    if A.order > STATEVECTOR_CAP:
        raise TooLarge(f"statevector cap {STATEVECTOR_CAP} exceeded by |A| = {A.order}")
    if not A.moduli:
        return CharacterVector(())
    order = A.order
    elements = A.elements()
    # Step 1+2: uniform superposition over A with an empty label register.
    # Step 3: oracle write; amplitudes grouped by label class.
    classes: dict[str, list[tuple]] = {}
    for t in elements:
        classes.setdefault(f.eval(t), []).append(t)
    state = Superposition(
        {(t, label): 1.0 / np.sqrt(order) for label, ts in classes.items() for t in ts}
    )
    state.check_normalized()
    # Step 4: exact QFT over each cyclic factor, done per label class since
    # the label register is untouched by the transform.
    shape = tuple(A.moduli)
    probs = np.zeros(shape)
    for label, ts in classes.items():
        grid = np.zeros(shape, dtype=complex)
        for t in ts:
            grid[t] = 1.0 / np.sqrt(order)
        amp = np.fft.fftn(grid) / np.sqrt(order)
        probs += np.abs(amp) ** 2
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise HspError(f"statevector probabilities sum to {total}")
    flat = probs.reshape(-1)
    flat = np.where(flat < 1e-12, 0.0, flat)
    flat = flat / flat.sum()
    # Step 5: measure the first register.
    u = rng.random()
    idx = int(np.searchsorted(np.cumsum(flat), u, side="right"))
    idx = min(idx, len(flat) - 1)
    coeffs = []
    for m in reversed(A.moduli):
        coeffs.append(idx % m)
        idx //= m
    return CharacterVector(tuple(reversed(coeffs)))


def annihilates(structure: AbelianStructure, c: Sequence[int], x: Sequence[int]) -> bool:
    return structure.pairing(c, x) == 0


def abelian_hsp(
    structure: AbelianStructure,
    f: QuantumFunctionOracle,
    cfg: SolverConfig,
) -> list[tuple[int, ...]]:
    """Generators of the subgroup hidden by f, failure probability <= epsilon.

    Draws characters and maintains the joint kernel; stops once the kernel is
    unchanged for ceil(log2(1/epsilon)) consecutive rounds (each fresh uniform
    draw halves a strictly-too-large kernel with probability >= 1/2).
    """
    if not structure.moduli or structure.order == 1:
        return []
    rng = cfg.rng
    samples: list[tuple[int, ...]] = []
    kernel_gens = None  # None means "whole group so far"
    kernel_order = structure.order
    stable = 0
    rounds = 0
    while stable < cfg.stable_rounds:
        rounds += 1
        if rounds > cfg.max_rounds:
            raise RoundBudgetExceeded(f"no convergence in {cfg.max_rounds} rounds")
        c = sample_character(structure, f, cfg.backend, rng)
        samples.append(tuple(c.coeffs))
        current = (
            kernel_gens
            if kernel_gens is not None
            else [u for u in _unit_tuples(structure)]
        )
        if all(annihilates(structure, c, x) for x in current):
            stable += 1
            continue
        kernel_gens = solve_character_kernel(structure, samples)
        new_order = subgroup_order(structure, kernel_gens)
        assert new_order < kernel_order
        kernel_order = new_order
        stable = 0
    if kernel_gens is None:
        kernel_gens = [u for u in _unit_tuples(structure)]
    return [t for t in kernel_gens if any(t)]


def _unit_tuples(structure: AbelianStructure):
    for i, m in enumerate(structure.moduli):
        if m > 1:
            unit = [0] * len(structure.moduli)
            unit[i] = 1
            yield tuple(unit)


def order_from_multiple(view: GroupView, g, m: int) -> int:
    """Exact order of g given a multiple m of it (harness-side shortcut)."""
    from sympy import factorint

    id_key = view.hkey(view.identity())
    d = m
    for p in factorint(m):
        while d % p == 0 and view.hkey(view.pow(g, d // p)) == id_key:
            d //= p
    return d


def cyclic_power_oracle(view: GroupView, g, m: int) -> QuantumFunctionOracle:
    """Oracle k -> label(g^k) over Z_m, with a harness order provider."""
    structure = AbelianStructure((m,))
    cache: dict[int, object] = {}

    def elem(t):
        k = t[0]
        if k not in cache:
            cache[k] = view.pow(g, k)
        return cache[k]

    def eval_fn(t):
        return view.key(elem(t))

    def peek_fn(t):
        return view.hkey(elem(t))

    def provider():
        d = order_from_multiple(view, g, m)
        return [(d % m,)] if d < m else []

    return QuantumFunctionOracle(structure, eval_fn, peek_fn, provider)


def find_order(
    source,
    g,
    cfg: SolverConfig,
    order_bound: Optional[int] = None,
) -> int:
    """Exact order of g (or of its coset when `source` is a quotient view),
    realized as the Abelian HSP over Z_m with f(k) = label(g^k)."""
    if isinstance(source, BlackBoxGroup):
        view = BlackBoxView(source)
        if order_bound is None:
            order_bound = source.order_hint
    else:
        view = source
    if order_bound is None:
        raise NoOrderBound("need a known multiple of the order")
    m = int(order_bound)
    if m < 1:
        raise NoOrderBound(f"bad order bound {m}")
    if view.key(g) == view.key(view.identity()):
        return 1
    if m == 1:
        return 1
    oracle = cyclic_power_oracle(view, g, m)
    gens = abelian_hsp(AbelianStructure((m,)), oracle, cfg)
    d = m
    for t in gens:
        d = gcd(d, t[0])
    return d


def coset_label(group: BlackBoxGroup, x: GroupElement, n_elements: Sequence[GroupElement]) -> str:
    """Canonical label of the coset x*N: minimum canonical key over x*N."""
    return min(group.key(group.multiply(x, n)) for n in n_elements)
