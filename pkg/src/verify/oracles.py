"""
Brute-force oracles

Each oracle recomputes a fast result by the slow definition and reports
agreement. Groups above an oracle's cap are skipped with the reason.
"""

from typing import Callable, Dict, List, Tuple

from src.classify.formations import all_tags, greedy_climb, hypercentre_report
from src.core.config import settings
from src.core.exceptions import CapExceededError
from src.embeddings.context import context_for
from src.embeddings.metamorphic import metamorphic_sweep
from src.embeddings.predicates import (
    PredicateId,
    holds,
    predicate,
    recheck_chain,
    recheck_edge,
    recheck_violation,
)
from src.lattice.reach import all_maximal_chains, jh_multiset
from src.perm.enumeration import all_subgroups, enumerate_subgroups
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import intersect, is_normal, join, primes_of, set_product
from src.perm.permutation import Permutation
from src.utils.logging import verify_logger as logger
from src.verify.models import OracleRow, SkippedEntry

Chain = Tuple[int, ...]


def _row(name: str, G: GroupHandle, checked: int, mismatches: List[str]) -> OracleRow:
    if mismatches:
        logger.error(f"Oracle {name} disagrees on {G.name}: {mismatches[:3]}")
    return OracleRow(
        oracle=name,
        group=G.name,
        checked=checked,
        agree=not mismatches,
        details="; ".join(mismatches[:3]) or None,
    )


def lattice_oracle(G: GroupHandle) -> OracleRow:
    """Lattice nodes equal the normal subgroups found by filtering every subgroup"""
    lattice = context_for(G).lattice
    brute = {S.key for S in all_subgroups(G) if is_normal(G, S)}
    fast = {N.key for N in lattice.nodes}
    mismatches = []
    if brute != fast:
        mismatches.append(f"{len(fast - brute)} extra nodes, {len(brute - fast)} missing nodes")
    return _row("lattice", G, len(brute), mismatches)


def _cap_ok(G: GroupHandle, H: SubgroupRef, K: SubgroupRef, L: SubgroupRef) -> bool:
    D = intersect(G, join(G, H, K), L)
    return D.mask in (K.mask, L.mask)


def reach_oracle(G: GroupHandle) -> OracleRow:
    """
    Reachability verdicts against every maximal chain, for each subgroup class:
    partial-pi and partial-cap need one chain, pi and cap need all edges
    """
    lattice = context_for(G).lattice
    chains: List[Chain] = list(all_maximal_chains(lattice))
    nodes = lattice.nodes
    checked = 0
    mismatches = []
    for H in enumerate_subgroups(G, up_to_conjugacy=True):
        good: Dict[Tuple[int, int], bool] = {}
        cap: Dict[Tuple[int, int], bool] = {}
        for lo, hi in lattice.edges:
            good[(lo, hi)] = recheck_edge(G, H, nodes[lo], nodes[hi])
            cap[(lo, hi)] = _cap_ok(G, H, nodes[lo], nodes[hi])

        def some_chain(table) -> bool:
            return any(all(table[e] for e in zip(c, c[1:])) for c in chains)

        expected = {
            PredicateId.PARTIAL_PI: some_chain(good),
            PredicateId.PI: all(good.values()),
            PredicateId.PARTIAL_CAP: some_chain(cap),
            PredicateId.CAP: all(cap.values()),
        }
        for pid, verdict in expected.items():
            checked += 1
            if holds(G, H, pid) != verdict:
                mismatches.append(f"{pid.value} of {H.describe()}: lattice {not verdict}, chains {verdict}")
    return _row("reach", G, checked, mismatches)


def witness_oracle(G: GroupHandle) -> OracleRow:
    """Witness chains of true partial-pi reports and violations of false pi reports re-validate"""
    checked = 0
    mismatches = []
    for H in enumerate_subgroups(G, up_to_conjugacy=True):
        report = predicate(G, H, PredicateId.PARTIAL_PI)
        if report.verdict:
            checked += 1
            if not recheck_chain(G, H, report):
                mismatches.append(f"witness chain of {H.describe()} does not re-validate")
        for pid in (PredicateId.PARTIAL_PI, PredicateId.PI):
            for violation in predicate(G, H, pid).violations:
                checked += 1
                if not recheck_violation(G, H, violation):
                    mismatches.append(f"{pid.value} violation at {violation.edge} of {H.describe()} is good")
    return _row("witness", G, checked, mismatches)


def closure_oracle(G: GroupHandle) -> OracleRow:
    """Product of basic transversal sizes equals a breadth-first closure of the generators"""
    _, sizes = G.stabilizer_chain
    chain_order = 1
    for size in sizes:
        chain_order *= size
    identity = Permutation.identity(G.degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in G.generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    mismatches = []
    if not chain_order == len(seen) == G.order:
        mismatches.append(f"stabilizer chain {chain_order}, closure {len(seen)}, order {G.order}")
    return _row("closure", G, 1, mismatches)


def jh_oracle(G: GroupHandle) -> OracleRow:
    """Every maximal chain has the same multiset of factor orders"""
    lattice = context_for(G).lattice
    expected = jh_multiset(lattice)
    checked = 0
    mismatches = []
    for chain in all_maximal_chains(lattice):
        checked += 1
        factors = sorted(lattice.nodes[b].order // lattice.nodes[a].order for a, b in zip(chain, chain[1:]))
        if factors != expected:
            mismatches.append(f"chain {list(chain)} has factors {factors}, expected {expected}")
    return _row("jordan-holder", G, checked, mismatches)


def hypercentre_oracle(G: GroupHandle) -> OracleRow:
    """Join of hypercentral nodes equals the greedy climb, for every formation tag"""
    checked = 0
    mismatches = []
    for tag in all_tags(primes_of(G.order)):
        checked += 1
        report = hypercentre_report(G, tag)
        climbed = greedy_climb(G, tag)
        if not report.join_is_hypercentral:
            mismatches.append(f"{tag.label}: join of hypercentral nodes is not hypercentral")
        if report.subgroup != climbed:
            mismatches.append(f"{tag.label}: join has order {report.subgroup.order}, climb {climbed.order}")
    return _row("hypercentre", G, checked, mismatches)


def set_product_oracle(G: GroupHandle) -> OracleRow:
    """|HK| = |H||K|/|H n K| against the materialized product set"""
    reps = enumerate_subgroups(G, up_to_conjugacy=True)
    checked = 0
    mismatches = []
    for H in reps:
        for K in reps:
            checked += 1
            size, _ = set_product(G, H, K)
            brute = len({G.mul(h, k) for h in H.elements for k in K.elements})
            if size != brute:
                mismatches.append(f"|HK| formula {size}, product set {brute} for orders {H.order}, {K.order}")
    return _row("set-product", G, checked, mismatches)


def transfer_oracle(G: GroupHandle) -> OracleRow:
    """Transfer rules of the partial Pi-property under conjugation, restriction and quotients"""
    reports = metamorphic_sweep(G, enumerate_subgroups(G, up_to_conjugacy=True))
    checked = sum(r.checked for r in reports)
    mismatches = [f"rule {r.variant}: {v}" for r in reports for v in r.violations]
    mismatches += [f"rule {r.variant} finding: {f}" for r in reports for f in r.findings]
    return _row("transfer-rules", G, checked, mismatches)


ORACLES: Dict[str, Tuple[Callable[[GroupHandle], OracleRow], str]] = {
    "lattice": (lattice_oracle, "oracle_max_order"),
    "reach": (reach_oracle, "oracle_max_order"),
    "witness": (witness_oracle, "oracle_max_order"),
    "closure": (closure_oracle, "closure_oracle_max_order"),
    "jordan-holder": (jh_oracle, "oracle_max_order"),
    "hypercentre": (hypercentre_oracle, "oracle_max_order"),
    "set-product": (set_product_oracle, "sweep_max_order"),
    "transfer-rules": (transfer_oracle, "sweep_max_order"),
}


def run_oracles(G: GroupHandle) -> Tuple[List[OracleRow], List[SkippedEntry]]:
    """Every oracle whose cap admits G; the rest become skipped rows"""
    rows = []
    skipped = []
    for name, (oracle, cap_name) in ORACLES.items():
        limit = getattr(settings, cap_name)
        if G.order > limit:
            skipped.append(SkippedEntry(group=G.name, suite=f"oracles:{name}", reason=f"order {G.order} above {cap_name} {limit}"))
            continue
        try:
            rows.append(oracle(G))
        except CapExceededError as e:
            logger.warning(f"Oracle {name} skipped for {G.name}: {e}")
            skipped.append(SkippedEntry(group=G.name, suite=f"oracles:{name}", reason=str(e)))
    return rows, skipped
