"""Hidden normal subgroups via presentations and normal closure.

Restricted to Abelian quotients G/N, which is exactly what the
small-commutator solver consumes; non-Abelian quotients are refused.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import BlackBoxGroup, GroupElement, HidingOracle, enumerate_closure, enum_bound
from .errors import BoundExceeded, ExpressFailure, QuotientNotAbelian
from .linalg import LabelQuotientView, decompose_abelian
from .membership import constructive_membership
from .sim import RngStream, SolverConfig


@dataclass
class AbelianPresentation:
    """Presentation of an Abelian quotient G/N, carried as G-encodings.

    Relators are the powers t_i^{d_i} and all pairwise commutators [t_i, t_j].
    """

    generators: list[GroupElement]
    moduli: tuple[int, ...]


@dataclass
class NormalGenerators:
    gens: list[GroupElement]
    closure_certificate: Optional[list[GroupElement]] = None


def abelian_quotient_presentation(
    G: BlackBoxGroup, f: HidingOracle, cfg: SolverConfig
) -> AbelianPresentation:
    """Decompose G/N over f-labels; generators are lifted to G-encodings."""
    view = LabelQuotientView(G, f)
    gens = G.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if not view.commute(a, b):
                raise QuotientNotAbelian("generators do not commute modulo the hidden subgroup")
    dec = decompose_abelian(view, gens)
    return AbelianPresentation(list(dec.basis), dec.structure.moduli)


def relator_values(G: BlackBoxGroup, p: AbelianPresentation) -> list[GroupElement]:
    """Relators evaluated in G (not modulo N): t_i^{d_i} and [t_i, t_j]."""
    values = []
    for t, d in zip(p.generators, p.moduli):
        values.append(G.power(t, d))
    for i, a in enumerate(p.generators):
        for b in p.generators[i + 1 :]:
            values.append(G.commutator(a, b))
    return values


def generator_quotients(
    G: BlackBoxGroup,
    f: HidingOracle,
    p: AbelianPresentation,
    original_gens: Sequence[GroupElement],
    cfg: SolverConfig,
) -> list[GroupElement]:
    """For each original generator x, express xN over the presentation
    generators and emit y^-1 x; every output lies in N."""
    out = []
    for x in original_gens:
        answer = constructive_membership(
            G, p.generators, x, cfg.child("genquot"), mode="mod-hidden", f=f
        )
        if not answer.member:
            raise ExpressFailure(
                "presentation generators fail to cover an original generator"
            )
        y = G.identity()
        for t, a in zip(p.generators, answer.exponents.values):
            y = G.multiply(y, G.power(t, a))
        out.append(G.multiply(G.invert(y), x))
    return out


def normal_closure(
    G: BlackBoxGroup,
    seeds: Sequence[GroupElement],
    bound: Optional[int] = None,
    randomized: bool = False,
    rng: Optional[RngStream] = None,
) -> NormalGenerators:
    """Smallest normal subgroup of G containing the seeds.

    Deterministic worklist: close the generating set under conjugation by the
    group generators, interleaved with subgroup closure.  The randomized
    subproducts variant is an optional fast path; its result is certified by
    a final deterministic sweep, so the two always agree.
    """
    bound = bound or enum_bound()
    gens = [s for s in seeds if not G.is_identity(s)]
    closure = enumerate_closure(G, gens, bound)
    keys = {G.key(x) for x in closure}

    if randomized and gens:
        rng = rng or RngStream(0)
        for _ in range(4 * max(1, bound.bit_length())):
            sub = G.identity()
            for s in gens:
                if rng.randrange(2):
                    sub = G.multiply(sub, s)
            word = G.identity()
            for g in G.generators:
                if rng.randrange(2):
                    word = G.multiply(word, g)
            cand = G.conjugate(word, sub)
            if G.key(cand) not in keys:
                gens.append(cand)
                closure = enumerate_closure(G, gens, bound)
                keys = {G.key(x) for x in closure}

    work = list(gens)
    while work:
        x = work.pop()
        for g in G.generators:
            c = G.conjugate(g, x)
            if G.key(c) not in keys:
                gens.append(c)
                work.append(c)
                closure = enumerate_closure(G, gens, bound)
                keys = {G.key(x) for x in closure}
    return NormalGenerators(gens, closure)


def hidden_normal_subgroup(
    G: BlackBoxGroup, f: HidingOracle, cfg: SolverConfig
) -> NormalGenerators:
    """Generators of the hidden normal subgroup N: normal closure of the
    relator values R0 and the generator quotients S0."""
    p = abelian_quotient_presentation(G, f, cfg)
    r0 = relator_values(G, p)
    s0 = generator_quotients(G, f, p, G.generators, cfg)
    base_label = f.eval(G.identity())
    for v in r0 + s0:
        if f.eval(v) != base_label:
            raise ExpressFailure("relator or quotient value escaped the hidden subgroup")
    return normal_closure(G, r0 + s0)
