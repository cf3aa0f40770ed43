"""The two headline hidden-subgroup solvers: small commutator subgroup, and
elementary Abelian normal 2-subgroup with small or cyclic quotient.

Query accounting: with the ideal sampler, quantum rounds are simulated on the
harness side and exempt from solver accounting; the f-queries counted against
the budgets below are the classical-control queries the solver itself issues
(enumeration scans, baseline labels, label-keyed quotient arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, lcm, log2
from typing import Optional, Sequence

from .core import (
    BlackBoxGroup,
    GroupElement,
    HidingOracle,
    QueryStats,
    enumerate_closure,
    enum_bound,
)
from .errors import (
    BoundExceeded,
    CommutatorBoundExceeded,
    NotCyclicQuotient,
    NotElementaryAbelian2,
    NotNormal,
    QuotientBoundExceeded,
)
from .linalg import (
    AbelianDecomposition,
    AbelianStructure,
    CosetQuotientView,
    decompose_abelian,
)
from .normalsub import hidden_normal_subgroup
from .sim import QuantumFunctionOracle, SolverConfig, abelian_hsp, find_order


@dataclass
class SubgroupResult:
    gens: list[GroupElement]
    stats: QueryStats
    method: str
    f_query_budget: Optional[int] = None
    coset_reps: Optional[list[GroupElement]] = None  # V, for the elem2 solvers


@dataclass
class CosetPick:
    z: GroupElement
    u: Optional[GroupElement] = None  # element of N with u^-1 z in H


class CosetLabelOracle:
    """F: x -> sorted tuple of f-labels over x*C for a fixed enumerated C.

    Hides the subgroup H*C when C is the commutator subgroup; one F-query
    costs |C| queries to f.
    """

    def __init__(self, G: BlackBoxGroup, f: HidingOracle, c_elements: Sequence[GroupElement]):
        self.group = G
        self.f = f
        self.c_elements = list(c_elements)
        self.query_count = 0
        self.harness_queries = 0

    def _label(self, g: GroupElement, probe) -> str:
        return "|".join(sorted(probe(self.group.multiply(g, c)) for c in self.c_elements))

    def eval(self, g: GroupElement) -> str:
        self.query_count += 1
        return self._label(g, self.f.eval)

    def peek(self, g: GroupElement) -> str:
        self.harness_queries += 1
        return self._label(g, self.f.peek)


def commutator_query_budget(c: int, L: float, epsilon: float) -> int:
    """Documented closed-form f-query budget B1 for solve_small_commutator.

    c = |G'|, L = log2 of the order bound, epsilon = failure budget.  The
    dominant term is the label-keyed decomposition of G/HG' (at most
    q = 2^L / c coset classes, quadratic scan), each label costing c queries.
    """
    q = max(1.0, 2.0**L / c)
    r = max(1, ceil(log2(1.0 / epsilon)))
    f_direct = (c + 1) + (L + 8) * c  # intersection scan + coset scans
    f_labels = c * (8 * q * q + 16 * q + 12 * (L + r + 8))
    return int(f_direct + f_labels)


def elem2_query_budget(v: int, n: int, epsilon: float) -> int:
    """Documented closed-form f-query budget B2 for the elem2 solvers.

    v = |V| (coset representatives probed), n = |N|.  With the ideal sampler
    only baselines and per-probe verification touch f directly.
    """
    r = max(1, ceil(log2(1.0 / epsilon)))
    return 8 * (v + 2) + 4 * r + n


def solve_abelian(
    G: BlackBoxGroup, f: HidingOracle, cfg: SolverConfig
) -> SubgroupResult:
    """Hidden subgroup of an Abelian black-box group, via its decomposition."""
    f_start = f.query_count
    ops_start = G.stats.group_ops
    dec = decompose_abelian(G, G.generators)
    gens = intersect_with_normal(dec, f, cfg)
    stats = QueryStats(
        f.query_count - f_start, G.stats.group_ops - ops_start, cfg.rng.draws
    )
    return SubgroupResult(gens, stats, "abelian")


def solve_small_commutator(
    G: BlackBoxGroup,
    f: HidingOracle,
    cfg: SolverConfig,
    commutator_bound: int = 64,
) -> SubgroupResult:
    """Hidden subgroup when |G'| is small, by the H = H1 assembly:
    H1 is generated by H on G' together with one member of each coset
    x*G' over the generators x of H*G'."""
    f_start = f.query_count
    ops_start = G.stats.group_ops
    identity = G.identity()

    # (1) enumerate G' as the normal closure of the generator commutators
    comms = []
    for i, a in enumerate(G.generators):
        for b in G.generators[i + 1 :]:
            comms.append(G.commutator(a, b))
    from .normalsub import normal_closure

    try:
        nc = normal_closure(G, comms, bound=commutator_bound)
    except BoundExceeded as exc:
        raise CommutatorBoundExceeded(str(exc)) from exc
    g_prime = nc.closure_certificate

    # (2) H on G' by direct scan
    base = f.eval(identity)
    h_cap_gprime = [x for x in g_prime if f.eval(x) == base]

    # (3)+(4) F hides H*G', which is normal since G/G' is Abelian
    F = CosetLabelOracle(G, f, g_prime)
    hgp = hidden_normal_subgroup(G, F, cfg.child("hgprime"))

    # (5) scan each coset x*G' in fixed bitstring order for a member of H
    picks = []
    for x in hgp.gens:
        coset = sorted((G.multiply(x, c) for c in g_prime), key=lambda y: y.bits)
        pick = next(y for y in coset if f.eval(y) == base)
        picks.append(pick)

    # (6) assemble H1
    gens = picks + [x for x in h_cap_gprime if not G.is_identity(x)]
    order_bound = G.order_hint or enum_bound()
    budget = commutator_query_budget(
        len(g_prime), max(1.0, log2(order_bound)), cfg.epsilon
    )
    used = f.query_count - f_start
    assert used <= budget, f"f-query budget exceeded: {used} > {budget}"
    stats = QueryStats(
        f_queries=used,
        group_ops=G.stats.group_ops - ops_start,
        rng_draws=cfg.rng.draws,
    )
    return SubgroupResult(gens, stats, "commutator", budget)


def check_elem2_normal(
    G: BlackBoxGroup,
    n_gens: Sequence[GroupElement],
    bound: Optional[int] = None,
) -> list[GroupElement]:
    """Verify <n_gens> is an elementary Abelian 2-group, normal in G; return
    its enumerated elements."""
    for i, a in enumerate(n_gens):
        if not G.is_identity(G.multiply(a, a)):
            raise NotElementaryAbelian2("a generator has order > 2")
        for b in n_gens[i + 1 :]:
            if not G.equal(G.multiply(a, b), G.multiply(b, a)):
                raise NotElementaryAbelian2("generators do not commute")
    n_elements = enumerate_closure(G, n_gens, bound)
    keys = {G.key(x) for x in n_elements}
    for g in G.generators:
        for x in n_gens:
            if G.key(G.conjugate(g, x)) not in keys:
                raise NotNormal("conjugate of a subgroup generator escapes N")
    return n_elements


def intersect_with_normal(
    dec: AbelianDecomposition, f: HidingOracle, cfg: SolverConfig
) -> list[GroupElement]:
    """Generators of H on N via the Abelian HSP over N's decomposition."""
    structure = dec.structure
    oracle = QuantumFunctionOracle(
        structure,
        lambda t: f.eval(dec.element_of(t)),
        lambda t: f.peek(dec.element_of(t)),
    )
    gens = abelian_hsp(structure, oracle, cfg)
    return [dec.element_of(t) for t in gens]


def coset_intersection_pick(
    G: BlackBoxGroup,
    dec: AbelianDecomposition,
    f: HidingOracle,
    z: GroupElement,
    cfg: SolverConfig,
) -> CosetPick:
    """Probe z*N for a member of H: the function on Z2 x N with
    F(0, x) = f(x), F(1, x) = f(x z) hides a subgroup whose (1, u) generators
    certify z*N on H nonempty and yield the pick u^-1 z."""
    structure = AbelianStructure((2,) + dec.structure.moduli)

    def elem(t):
        x = dec.element_of(t[1:])
        return x if t[0] == 0 else G.multiply(x, z)

    oracle = QuantumFunctionOracle(
        structure, lambda t: f.eval(elem(t)), lambda t: f.peek(elem(t))
    )
    gens = abelian_hsp(structure, oracle, cfg)
    u = None
    for t in gens:
        if t[0] == 1:
            u = dec.element_of(t[1:])
            break
    if u is not None:
        pick = G.multiply(G.invert(u), z)
        if f.eval(pick) != f.eval(G.identity()):
            # failed sampling round (probability <= epsilon); retry once
            oracle2 = QuantumFunctionOracle(
                structure, lambda t: f.eval(elem(t)), lambda t: f.peek(elem(t))
            )
            gens = abelian_hsp(structure, oracle2, cfg.child("retry"))
            u = next((dec.element_of(t[1:]) for t in gens if t[0] == 1), None)
    return CosetPick(z, u)


def _assemble(
    G: BlackBoxGroup,
    f: HidingOracle,
    picks: list[CosetPick],
    h_cap_n: list[GroupElement],
) -> list[GroupElement]:
    gens = []
    for cp in picks:
        if cp.u is not None:
            gens.append(G.multiply(G.invert(cp.u), cp.z))
    return gens + [x for x in h_cap_n if not G.is_identity(x)]


def solve_elem2_small_quotient(
    G: BlackBoxGroup,
    n_gens: Sequence[GroupElement],
    f: HidingOracle,
    cfg: SolverConfig,
    quotient_bound: int = 256,
) -> SubgroupResult:
    """Hidden subgroup given an elementary Abelian normal 2-subgroup N with
    small G/N: probe every coset representative."""
    f_start = f.query_count
    ops_start = G.stats.group_ops
    n_elements = check_elem2_normal(G, n_gens)
    dec = decompose_abelian(G, list(n_gens))
    h_cap_n = intersect_with_normal(dec, f, cfg.child("cap"))

    # coset representatives by the worklist over the generators
    qview = CosetQuotientView(G, n_elements)
    reps = [G.identity()]
    rep_keys = {qview.key(reps[0])}
    work = [reps[0]]
    while work:
        v = work.pop(0)
        for g in G.generators:
            c = G.multiply(v, g)
            k = qview.key(c)
            if k not in rep_keys:
                if len(reps) >= quotient_bound:
                    raise QuotientBoundExceeded(f"|G/N| exceeds {quotient_bound}")
                rep_keys.add(k)
                reps.append(c)
                work.append(c)

    picks = [
        coset_intersection_pick(G, dec, f, z, cfg.child("pick"))
        for z in reps[1:]
    ]
    gens = _assemble(G, f, picks, h_cap_n)
    budget = elem2_query_budget(len(reps), len(n_elements), cfg.epsilon)
    used = f.query_count - f_start
    assert used <= budget, f"f-query budget exceeded: {used} > {budget}"
    stats = QueryStats(used, G.stats.group_ops - ops_start, cfg.rng.draws)
    return SubgroupResult(gens, stats, "elem2-small", budget, coset_reps=reps)


def solve_elem2_cyclic(
    G: BlackBoxGroup,
    n_gens: Sequence[GroupElement],
    f: HidingOracle,
    cfg: SolverConfig,
) -> SubgroupResult:
    """Hidden subgroup for cyclic G/N: V is assembled from powers of Sylow
    generators of the quotient, so |V| stays logarithmic in |G/N|."""
    from sympy import factorint

    f_start = f.query_count
    ops_start = G.stats.group_ops
    n_elements = check_elem2_normal(G, n_gens)
    dec = decompose_abelian(G, list(n_gens))
    h_cap_n = intersect_with_normal(dec, f, cfg.child("cap"))

    qview = CosetQuotientView(G, n_elements)
    id_key = qview.key(G.identity())

    def quotient_order(x: GroupElement) -> int:
        ambient = find_order(G, x, cfg.child("amb"), order_bound=G.order_hint)
        return find_order(qview, x, cfg.child("quot"), order_bound=ambient)

    orders = [quotient_order(g) for g in G.generators]
    q = lcm(*orders) if orders else 1

    steps = list(G.generators) + [G.invert(g) for g in G.generators]

    def random_element() -> GroupElement:
        length = 16 + 2 * q.bit_length()
        x = G.identity()
        for _ in range(length):
            x = G.multiply(x, cfg.rng.choice(steps))
        return x

    reps = [G.identity()]
    rep_keys = {id_key}
    sylow_exponents = {}
    for p, h in sorted(factorint(q).items()):
        target = p**h
        attempts = max(1, ceil(log2(1.0 / cfg.epsilon))) + 2
        x_p = None
        for _ in range(attempts):
            cand = G.power(random_element(), q // target)
            if quotient_order(cand) == target:
                x_p = cand
                break
        if x_p is None:
            raise NotCyclicQuotient(f"no generator found for the Sylow {p}-subgroup")
        sylow_exponents[p] = h
        # powers x_p^(p^j) walk down the subgroup chain of the cyclic Sylow
        for j in range(h):
            cur = G.power(x_p, p**j)
            k = qview.key(cur)
            if k != id_key and k not in rep_keys:
                rep_keys.add(k)
                reps.append(cur)

    assert len(reps) <= 1 + sum(sylow_exponents.values())

    picks = [
        coset_intersection_pick(G, dec, f, z, cfg.child("pick"))
        for z in reps[1:]
    ]
    gens = _assemble(G, f, picks, h_cap_n)
    budget = elem2_query_budget(len(reps), len(n_elements), cfg.epsilon)
    used = f.query_count - f_start
    assert used <= budget, f"f-query budget exceeded: {used} > {budget}"
    stats = QueryStats(used, G.stats.group_ops - ops_start, cfg.rng.draws)
    return SubgroupResult(gens, stats, "elem2-cyclic", budget, coset_reps=reps)
