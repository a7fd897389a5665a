"""
Transfer rules for the partial Pi-property under conjugation, restriction
to normal subgroups and passage to quotients

Each check evaluates the rule's hypothesis, recomputes the conclusion in
the named group or quotient, and reports violations. None are expected.
"""

import random
from math import gcd
from typing import Dict, Iterable, List, Optional

from src.core.config import settings
from src.embeddings.context import context_for
from src.embeddings.models import MetamorphicReport, SubgroupSummary
from src.embeddings.predicates import PredicateId, holds
from src.lattice.reach import reach
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import conjugate, is_p_group, primes_of
from src.perm.quotient import Epimorphism, quotient
from src.perm.sylow import maximal_subgroups_of_p_group, sylow_of_subgroup
from src.utils.logging import embeddings_logger as logger

VARIANTS = (1, 2, 3, 4, 5)
_PARTIAL = PredicateId.PARTIAL_PI


def _partial(G: GroupHandle, H: SubgroupRef) -> bool:
    return holds(G, H, _PARTIAL)


def _conjugation(G, H, N, report, rng, samples, epi):
    """Partial Pi-property is invariant under conjugation"""
    report.hypothesis_held = True
    verdict = _partial(G, H)
    for g in rng.sample(range(G.order), min(samples, G.order)):
        report.checked += 1
        if _partial(G, conjugate(G, H, g)) != verdict:
            report.violations.append(f"conjugate by element {g} changes the verdict from {verdict}")


def _restriction(G, H, N, report, rng, samples, epi):
    """A p-subgroup H <= N with the property in G has it in N"""
    if not (is_p_group(H) and H <= N and _partial(G, H)):
        return
    report.hypothesis_held = True
    report.checked += 1
    inner = N.as_group()
    if not _partial(inner, inner.subgroup(H.permutations)):
        report.violations.append("fails partial Pi-property inside N")


def _quotient_image(G, H, N, report, rng, samples, epi):
    """N <= H or (|H|, |N|) = 1 carries the property to HN/N in G/N"""
    if not ((N <= H or gcd(H.order, N.order) == 1) and _partial(G, H)):
        return
    report.hypothesis_held = True
    report.checked += 1
    target = epi().target
    if not _partial(target, epi().image_subgroup(H)):
        report.violations.append("HN/N fails partial Pi-property in G/N")


def _sylow_maximals(G, H, N, report, rng, samples, epi):
    """With N <= H, maximal subgroups of a Sylow P of H pass to maximal subgroups of PN/N"""
    if not N <= H:
        return
    for p in primes_of(H.order):
        P = sylow_of_subgroup(G, H, p)
        if not all(_partial(G, M) for M in maximal_subgroups_of_p_group(G, P)):
            continue
        report.hypothesis_held = True
        Q = epi().image_subgroup(P)
        if Q.is_trivial:
            continue
        target = epi().target
        for M in maximal_subgroups_of_p_group(target, Q):
            report.checked += 1
            if not _partial(target, M):
                report.violations.append(f"maximal subgroup of order {M.order} of PN/N (p={p}) fails in G/N")


def _lifting(G, H, N, report, rng, samples, epi):
    """
    HN/N has the property in G/N and some chief series of G below N is good
    for H, so H has it in G. The section above N is read twice: in the
    materialized quotient and in the lattice of G from N upwards.
    """
    ctx = context_for(G)
    lattice = ctx.lattice
    top_of_n = lattice.id_of(N)

    def good(lo: int, hi: int):
        diagnostic = ctx.good_edge(H, (lo, hi))
        return diagnostic.good, diagnostic

    below = reach(lattice, good, target=top_of_n)
    above = reach(lattice, good, source=top_of_n)
    in_quotient = _partial(epi().target, epi().image_subgroup(H))
    if above.verdict != in_quotient:
        report.findings.append(
            f"section above N: lattice reading {above.verdict}, quotient reading {in_quotient}"
        )
    if not (below.verdict and in_quotient):
        return
    report.hypothesis_held = True
    report.checked += 1
    if not _partial(G, H):
        report.violations.append("chain below N and quotient chain do not lift to G")


_CHECKS = {
    1: _conjugation,
    2: _restriction,
    3: _quotient_image,
    4: _sylow_maximals,
    5: _lifting,
}


def metamorphic_2_1(
    G: GroupHandle,
    H: SubgroupRef,
    N: SubgroupRef,
    variant: int,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    quotients: Optional[Dict[int, Epimorphism]] = None,
) -> MetamorphicReport:
    """
    Check one transfer rule on (G, H, N)

    Args:
        G: ambient group
        H: subgroup of G
        N: normal subgroup of G
        variant: rule number 1..5
        seed: RNG seed for the conjugation samples (settings.seed by default)
        samples: number of conjugating elements (settings.metamorphic_samples by default)
        quotients: shared cache of G/N epimorphisms keyed by kernel mask

    Raises:
        ValueError: unknown variant
        NotASubgroupError: N is not normal in G
    """
    if variant not in _CHECKS:
        raise ValueError(f"unknown transfer rule {variant}")
    context_for(G).lattice.id_of(N)
    rng = random.Random(settings.seed if seed is None else seed)
    samples = settings.metamorphic_samples if samples is None else samples
    cache = quotients if quotients is not None else {}

    def epi() -> Epimorphism:
        if N.mask not in cache:
            cache[N.mask] = quotient(G, N)
        return cache[N.mask]

    report = MetamorphicReport(
        variant=variant,
        group=G.name,
        subject=SubgroupSummary.of(H),
        kernel=SubgroupSummary.of(N),
        hypothesis_held=False,
    )
    _CHECKS[variant](G, H, N, report, rng, samples, epi)
    if report.violations:
        logger.error(f"Transfer rule {variant} violated in {G.name}: {report.violations}")
    for finding in report.findings:
        logger.warning(f"Transfer rule {variant} on {G.name}: {finding}")
    return report


def metamorphic_sweep(
    G: GroupHandle,
    subgroups: Iterable[SubgroupRef],
    kernels: Optional[List[SubgroupRef]] = None,
    variants: Iterable[int] = VARIANTS,
    seed: Optional[int] = None,
) -> List[MetamorphicReport]:
    """Every rule on every (H, N) pair; rule 1 ignores N and runs once per H"""
    kernels = kernels if kernels is not None else context_for(G).lattice.nodes
    quotients: Dict[int, Epimorphism] = {}
    reports = []
    for H in subgroups:
        for variant in variants:
            pairs = kernels[:1] if variant == 1 else kernels
            for N in pairs:
                reports.append(metamorphic_2_1(G, H, N, variant, seed=seed, quotients=quotients))
    return reports
