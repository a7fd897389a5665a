"""
Predicate registry: the partial Pi-property, the Pi-property and the
classical embedding properties that imply them

Every evaluator returns an Outcome; ``predicate`` wraps it into a
PredicateReport. Quantifiers over subgroups, supplements and chief factors
are exhaustive, so results are exact within the configured caps.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Callable, Dict, List, Optional

from src.classify.formations import FormationTag
from src.core.exceptions import NotASubgroupError, UnknownPredicateError
from src.embeddings.context import EmbeddingContext, context_for
from src.embeddings.models import EdgeDiagnostic, PredicateReport, SubgroupSummary
from src.lattice.normal_lattice import Edge
from src.lattice.reach import chain_orders, reach, witness_chain
from src.perm.enumeration import cyclic_subgroups
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import (
    core,
    core_and_closure,
    intersect,
    is_normal,
    is_pi_number,
    join,
    normalizer,
    permutes,
    primes_of,
    p_part,
)
from src.perm.sylow import sylow_of_subgroup
from src.utils.logging import embeddings_logger as logger


class PredicateId(str, Enum):
    """Embedding properties the registry decides"""
    PI = "pi"
    PARTIAL_PI = "partial-pi"
    CAP = "cap"
    PARTIAL_CAP = "partial-cap"
    QUASINORMAL = "quasinormal"
    S_QUASINORMAL = "s-quasinormal"
    S_SEMIPERMUTABLE = "s-semipermutable"
    SS_QUASINORMAL = "ss-quasinormal"
    S_QN_EMBEDDED = "s-qn-embedded"
    S_COND_PERMUTABLE = "s-cond-permutable"
    TAU_QUASINORMAL = "tau-quasinormal"
    U_HYP_EMBEDDED = "u-hyp-embedded"
    S_EMBEDDED = "s-embedded"
    PI_NORMAL = "pi-normal"
    WEAKLY_S_PERMUTABLE = "weakly-s-permutable"
    WEAKLY_S_SEMIPERMUTABLE = "weakly-s-semipermutable"
    WEAKLY_TAU_QUASINORMAL = "weakly-tau-quasinormal"
    U_QUASINORMAL = "u-quasinormal"
    US_QUASINORMAL = "us-quasinormal"

    @classmethod
    def parse(cls, text: str) -> "PredicateId":
        """Accept ``partial-pi``, ``partial_pi`` or ``PARTIAL_PI``"""
        value = text.strip().lower().replace("_", "-")
        if value == "pi-property":
            value = "pi"
        try:
            return cls(value)
        except ValueError:
            raise UnknownPredicateError(f"unknown predicate {text!r}") from None


@dataclass
class Outcome:
    verdict: bool
    chain: List[int] = field(default_factory=list)
    violations: List[EdgeDiagnostic] = field(default_factory=list)
    partner: Optional[SubgroupRef] = None
    intermediate: Optional[SubgroupRef] = None
    note: Optional[str] = None


Evaluator = Callable[[EmbeddingContext, SubgroupRef], Outcome]
_U = FormationTag("U")


# Chief-factor predicates

def good_edge(G: GroupHandle, H: SubgroupRef, edge: Edge) -> EdgeDiagnostic:
    """Normalizer-index test of H on one cover edge of the normal lattice of G"""
    ctx = context_for(G)
    if not ctx.lattice.is_edge(edge):
        raise NotASubgroupError(f"{edge} is not a cover edge of {G.name}")
    return ctx.good_edge(H, edge)


def _partial_pi(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    if is_normal(G, H):
        return Outcome(True, chain=witness_chain(ctx.lattice), note="normal")
    lattice = ctx.lattice
    result = reach(lattice, lambda lo, hi: _edge_verdict(ctx, H, (lo, hi)))
    if result.verdict:
        return Outcome(True, chain=result.chain)
    bad = sorted(
        (d for d in result.diagnostics.values() if not d.good),
        key=lambda d: d.edge,
    )
    return Outcome(False, violations=bad, note=f"stuck below {len(result.frontier)} reachable nodes")


def _edge_verdict(ctx: EmbeddingContext, H: SubgroupRef, edge: Edge):
    diagnostic = ctx.good_edge(H, edge)
    logger.debug(f"edge {edge}: |G:N(D)| = {diagnostic.index}, pi = {diagnostic.pi}, good = {diagnostic.good}")
    return diagnostic.good, diagnostic


def _pi_property(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    if is_normal(G, H):
        return Outcome(True, chain=witness_chain(ctx.lattice), note="normal")
    lattice = ctx.lattice
    bad = [d for d in (ctx.good_edge(H, e) for e in lattice.edges) if not d.good]
    if bad:
        return Outcome(False, violations=bad)
    return Outcome(True, chain=witness_chain(lattice))


def _cap_edge(ctx: EmbeddingContext, H: SubgroupRef, edge: Edge):
    """H covers (HL = HK) or avoids (H n L = H n K) the chief factor, i.e. D is K or L"""
    diagnostic = ctx.good_edge(H, edge)
    lo, hi = diagnostic.edge_orders
    ok = diagnostic.section_order in (1, hi // lo)
    return ok, diagnostic.model_copy(update={"good": ok})


def _cap(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    if is_normal(ctx.group, H):
        return Outcome(True, chain=witness_chain(ctx.lattice), note="normal")
    lattice = ctx.lattice
    bad = [d for ok, d in (_cap_edge(ctx, H, e) for e in lattice.edges) if not ok]
    if bad:
        return Outcome(False, violations=bad)
    return Outcome(True, chain=witness_chain(lattice))


def _partial_cap(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    if is_normal(ctx.group, H):
        return Outcome(True, chain=witness_chain(ctx.lattice), note="normal")
    result = reach(ctx.lattice, lambda lo, hi: _cap_edge(ctx, H, (lo, hi)))
    if result.verdict:
        return Outcome(True, chain=result.chain)
    bad = sorted((d for d in result.diagnostics.values() if not d.good), key=lambda d: d.edge)
    return Outcome(False, violations=bad)


# Permutability predicates

def _first_non_permuting(G: GroupHandle, H: SubgroupRef, candidates) -> Optional[SubgroupRef]:
    return next((S for S in candidates if not permutes(G, H, S)), None)


def _quasinormal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    """H permutes with every subgroup iff it permutes with every cyclic subgroup"""
    G = ctx.group
    if is_normal(G, H):
        return Outcome(True, note="normal")
    partner = _first_non_permuting(G, H, cyclic_subgroups(G))
    return Outcome(partner is None, partner=partner)


def _s_quasinormal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    if is_normal(G, H):
        return Outcome(True, note="normal")
    partner = _first_non_permuting(G, H, ctx.all_sylows)
    return Outcome(partner is None, partner=partner)


def _s_semipermutable(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    coprime = [S for p in ctx.primes if H.order % p != 0 for S in ctx.sylows(p)]
    partner = _first_non_permuting(G, H, coprime)
    return Outcome(partner is None, partner=partner)


def _ss_quasinormal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    for K in ctx.supplements(H):
        sylows = (S for p in primes_of(K.order) for S in ctx.sylows_within(K, p))
        if _first_non_permuting(G, H, sylows) is None:
            return Outcome(True, partner=K)
    return Outcome(False)


def _s_qn_embedded(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    """One Sylow subgroup of H per prime; conjugates of S-quasinormal subgroups are S-quasinormal"""
    G = ctx.group
    witness = None
    for p in primes_of(H.order):
        P = sylow_of_subgroup(G, H, p)
        T = next(
            (
                T for T in ctx.subgroups
                if P <= T and p_part(T.order, p) == P.order and _holds(ctx, PredicateId.S_QUASINORMAL, T)
            ),
            None,
        )
        if T is None:
            return Outcome(False, partner=P, note=f"no S-quasinormal subgroup has this Sylow {p}-subgroup as Sylow")
        witness = witness or T
    return Outcome(True, partner=witness)


def _s_cond_permutable(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    for p in ctx.primes:
        if not any(permutes(G, H, S) for S in ctx.sylows(p)):
            return Outcome(False, partner=ctx.sylows(p)[0], note=f"no Sylow {p}-subgroup permutes with H")
    return Outcome(True)


def _tau_quasinormal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    for p in ctx.primes:
        if H.order % p == 0 or gcd(H.order, ctx.normal_closure_of_sylow(p).order) == 1:
            continue
        partner = _first_non_permuting(G, H, ctx.sylows(p))
        if partner is not None:
            return Outcome(False, partner=partner)
    return Outcome(True)


# Hypercentre and interior predicates

def _u_hyp_embedded(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    H_G, closure = core_and_closure(G, H)
    Z = ctx.hypercentre(_U, modulo=H_G)
    return Outcome(closure <= Z, partner=Z)


def _interior(ctx: EmbeddingContext, H: SubgroupRef, pid: "PredicateId") -> SubgroupRef:
    """Join of the subgroups of H that satisfy ``pid`` in G"""
    key = (f"interior:{pid.value}", H.mask)
    found = ctx.verdicts.get(key)
    if found is None:
        G = ctx.group
        found = G.trivial
        for S in ctx.subgroups_within(H):
            if not S <= found and _holds(ctx, pid, S):
                found = join(G, found, S)
        ctx.verdicts[key] = found
    return found


def _s_embedded(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    H_sG = _interior(ctx, H, PredicateId.S_QUASINORMAL)
    for K in ctx.lattice.nodes:
        HK = join(G, H, K)
        if intersect(G, H, K) <= H_sG and _holds(ctx, PredicateId.S_QUASINORMAL, HK):
            return Outcome(True, partner=K, intermediate=H_sG)
    return Outcome(False, intermediate=H_sG)


def _pi_normal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    inside = [I for I in ctx.subgroups_within(H) if _holds(ctx, PredicateId.PI, I)]
    for K in ctx.supplements(H, subnormal=True):
        meet = intersect(G, H, K)
        I = next((I for I in inside if meet <= I), None)
        if I is not None:
            return Outcome(True, partner=K, intermediate=I)
    return Outcome(False)


def _weakly(base: "PredicateId") -> Evaluator:
    def evaluate(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
        G = ctx.group
        interior = _interior(ctx, H, base)
        for K in ctx.supplements(H, subnormal=True):
            if intersect(G, H, K) <= interior:
                return Outcome(True, partner=K, intermediate=interior)
        return Outcome(False, intermediate=interior)

    return evaluate


def _weakly_s_semipermutable(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    """Some single S-semipermutable T <= H must contain H n K"""
    G = ctx.group
    inside = [T for T in ctx.subgroups_within(H) if _holds(ctx, PredicateId.S_SEMIPERMUTABLE, T)]
    for K in ctx.supplements(H, subnormal=True):
        meet = intersect(G, H, K)
        T = next((T for T in inside if meet <= T), None)
        if T is not None:
            return Outcome(True, partner=K, intermediate=T)
    return Outcome(False)


def _hypercentral_meet(ctx: EmbeddingContext, H: SubgroupRef, K: SubgroupRef) -> bool:
    """(H n K)H_G/H_G <= Z_U(G/H_G)"""
    G = ctx.group
    H_G = core(G, H)
    return join(G, intersect(G, H, K), H_G) <= ctx.hypercentre(_U, modulo=H_G)


def _u_quasinormal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    for K in ctx.subgroups:
        if not _holds(ctx, PredicateId.QUASINORMAL, K):
            continue
        HK = join(G, H, K)
        if _holds(ctx, PredicateId.QUASINORMAL, HK) and _hypercentral_meet(ctx, H, K):
            return Outcome(True, partner=K)
    return Outcome(False)


def _us_quasinormal(ctx: EmbeddingContext, H: SubgroupRef) -> Outcome:
    G = ctx.group
    for K in ctx.lattice.nodes:
        HK = join(G, H, K)
        if _holds(ctx, PredicateId.S_QUASINORMAL, HK) and _hypercentral_meet(ctx, H, K):
            return Outcome(True, partner=K)
    return Outcome(False)


_EVALUATORS: Dict[PredicateId, Evaluator] = {
    PredicateId.PI: _pi_property,
    PredicateId.PARTIAL_PI: _partial_pi,
    PredicateId.CAP: _cap,
    PredicateId.PARTIAL_CAP: _partial_cap,
    PredicateId.QUASINORMAL: _quasinormal,
    PredicateId.S_QUASINORMAL: _s_quasinormal,
    PredicateId.S_SEMIPERMUTABLE: _s_semipermutable,
    PredicateId.SS_QUASINORMAL: _ss_quasinormal,
    PredicateId.S_QN_EMBEDDED: _s_qn_embedded,
    PredicateId.S_COND_PERMUTABLE: _s_cond_permutable,
    PredicateId.TAU_QUASINORMAL: _tau_quasinormal,
    PredicateId.U_HYP_EMBEDDED: _u_hyp_embedded,
    PredicateId.S_EMBEDDED: _s_embedded,
    PredicateId.PI_NORMAL: _pi_normal,
    PredicateId.WEAKLY_S_PERMUTABLE: _weakly(PredicateId.S_QUASINORMAL),
    PredicateId.WEAKLY_S_SEMIPERMUTABLE: _weakly_s_semipermutable,
    PredicateId.WEAKLY_TAU_QUASINORMAL: _weakly(PredicateId.TAU_QUASINORMAL),
    PredicateId.U_QUASINORMAL: _u_quasinormal,
    PredicateId.US_QUASINORMAL: _us_quasinormal,
}


def _evaluate(ctx: EmbeddingContext, pid: PredicateId, H: SubgroupRef) -> Outcome:
    key = (pid.value, H.mask)
    outcome = ctx.verdicts.get(key)
    if outcome is None:
        outcome = _EVALUATORS[pid](ctx, H)
        ctx.verdicts[key] = outcome
    return outcome


def _holds(ctx: EmbeddingContext, pid: PredicateId, H: SubgroupRef) -> bool:
    return _evaluate(ctx, pid, H).verdict


def _report(G: GroupHandle, pid: PredicateId, H: SubgroupRef, outcome: Outcome, elapsed_ms: float) -> PredicateReport:
    lattice = context_for(G).lattice if outcome.chain else None
    return PredicateReport(
        predicate=pid.value,
        group=G.name,
        subject=SubgroupSummary.of(H),
        verdict=outcome.verdict,
        witness_nodes=list(outcome.chain),
        witness_chain=chain_orders(lattice, outcome.chain) if lattice is not None else [],
        violations=list(outcome.violations),
        partner=SubgroupSummary.of(outcome.partner) if outcome.partner is not None else None,
        intermediate=SubgroupSummary.of(outcome.intermediate) if outcome.intermediate is not None else None,
        note=outcome.note,
        elapsed_ms=round(elapsed_ms, 3),
    )


def holds(G: GroupHandle, H: SubgroupRef, pid) -> bool:
    """Bare verdict, sharing the cache of G's context"""
    pid = pid if isinstance(pid, PredicateId) else PredicateId.parse(pid)
    _check_member(G, H)
    return _holds(context_for(G), pid, H)


def predicate(G: GroupHandle, H: SubgroupRef, pid) -> PredicateReport:
    """
    Decide one embedding predicate for H in G

    Args:
        G: ambient group
        H: subgroup of G
        pid: PredicateId or its name

    Returns:
        PredicateReport with verdict and witness

    Raises:
        UnknownPredicateError: pid is not in the registry
        NotASubgroupError: H belongs to another group
        CapExceededError: the quantifiers need a subgroup list above the cap
    """
    pid = pid if isinstance(pid, PredicateId) else PredicateId.parse(pid)
    _check_member(G, H)
    started = time.perf_counter()
    outcome = _evaluate(context_for(G), pid, H)
    elapsed = (time.perf_counter() - started) * 1000
    logger.debug(f"{pid.value}({H.describe()}) in {G.name} -> {outcome.verdict}")
    return _report(G, pid, H, outcome, elapsed)


def partial_pi(G: GroupHandle, H: SubgroupRef) -> PredicateReport:
    return predicate(G, H, PredicateId.PARTIAL_PI)


def pi_property(G: GroupHandle, H: SubgroupRef) -> PredicateReport:
    return predicate(G, H, PredicateId.PI)


def _check_member(G: GroupHandle, H: SubgroupRef) -> None:
    if H.parent is not G:
        raise NotASubgroupError(f"subgroup does not belong to {G.name}")


# Independent re-verification of witnesses

def recheck_edge(G: GroupHandle, H: SubgroupRef, K: SubgroupRef, L: SubgroupRef) -> bool:
    """
    Recompute the edge test from scratch: D = HK n L with an element-filter
    normalizer, bypassing every cache of the registry
    """
    D = intersect(G, join(G, H, K), L)
    section = D.order // K.order
    if section == 1:
        return True
    index = G.order // normalizer(G, D).order
    return is_pi_number(index, primes_of(section))


def recheck_chain(G: GroupHandle, H: SubgroupRef, report: PredicateReport) -> bool:
    """A true partial-pi report re-validates edge by edge along its witness chain"""
    if not report.verdict:
        return False
    lattice = context_for(G).lattice
    chain = [lattice.nodes[i] for i in report.witness_nodes]
    if not chain or not chain[0].is_trivial or not chain[-1].is_whole:
        return False
    return all(
        lattice.is_edge((a, b)) and recheck_edge(G, H, K, L)
        for (a, b), (K, L) in zip(zip(report.witness_nodes, report.witness_nodes[1:]), zip(chain, chain[1:]))
    )


def recheck_violation(G: GroupHandle, H: SubgroupRef, violation: EdgeDiagnostic) -> bool:
    """A reported bad edge is still bad when recomputed"""
    lattice = context_for(G).lattice
    lo, hi = violation.edge
    return lattice.is_edge(violation.edge) and not recheck_edge(G, H, lattice.nodes[lo], lattice.nodes[hi])
