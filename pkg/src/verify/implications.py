"""
Implication matrix between embedding predicates

Each row is premise => conclusion restricted to a scope. Subgroups are swept
up to conjugacy; every predicate here is conjugation invariant.
"""

from typing import Callable, Dict, Iterable, List, Optional, Tuple

from src.core.config import settings
from src.core.exceptions import CapExceededError
from src.embeddings.context import context_for
from src.embeddings.predicates import PredicateId, holds
from src.perm.enumeration import enumerate_subgroups
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import is_p_group
from src.utils.logging import verify_logger as logger
from src.verify.models import ImplicationRow

P = PredicateId
EXAMPLE_LIMIT = 3

IMPLICATIONS: List[Tuple[PredicateId, PredicateId, str]] = [
    (P.CAP, P.PI, "all"),
    (P.U_HYP_EMBEDDED, P.PI, "all"),
    (P.S_QUASINORMAL, P.PI, "all"),
    (P.S_SEMIPERMUTABLE, P.PI, "p-subgroups"),
    (P.SS_QUASINORMAL, P.PI, "p-subgroups"),
    (P.PARTIAL_CAP, P.PARTIAL_PI, "all"),
    (P.S_EMBEDDED, P.PARTIAL_PI, "all"),
    (P.U_QUASINORMAL, P.PARTIAL_PI, "all"),
    (P.US_QUASINORMAL, P.PARTIAL_PI, "all"),
    (P.PI_NORMAL, P.PARTIAL_PI, "p-subgroups"),
    (P.WEAKLY_S_PERMUTABLE, P.PARTIAL_PI, "p-subgroups"),
    (P.WEAKLY_S_SEMIPERMUTABLE, P.PARTIAL_PI, "p-subgroups"),
    (P.WEAKLY_TAU_QUASINORMAL, P.PARTIAL_PI, "p-subgroups"),
    (P.S_QN_EMBEDDED, P.PI, "solvable-normal"),
    (P.S_COND_PERMUTABLE, P.PI, "solvable-normal"),
    (P.PI, P.PARTIAL_PI, "all"),
    (P.QUASINORMAL, P.S_QUASINORMAL, "all"),
    (P.S_QUASINORMAL, P.S_SEMIPERMUTABLE, "all"),
]


def _in_solvable_radical(G: GroupHandle, H: SubgroupRef) -> bool:
    return H <= context_for(G).solvable_radical


SCOPES: Dict[str, Callable[[GroupHandle, SubgroupRef], bool]] = {
    "all": lambda G, H: True,
    "p-subgroups": lambda G, H: is_p_group(H),
    "solvable-normal": _in_solvable_radical,
}


def _row_key(row: ImplicationRow) -> Tuple[str, str, str]:
    return row.premise, row.conclusion, row.scope


def empty_rows() -> List[ImplicationRow]:
    return [ImplicationRow(premise=a.value, conclusion=b.value, scope=scope) for a, b, scope in IMPLICATIONS]


def implication_rows(G: GroupHandle, subgroups: Optional[Iterable[SubgroupRef]] = None) -> List[ImplicationRow]:
    """
    Evaluate every implication on the subgroups of one group

    Args:
        G: ambient group
        subgroups: subgroups to test (conjugacy class representatives by default)

    Returns:
        One row per implication, in table order

    Raises:
        CapExceededError: G is above sweep_max_order and no subgroups were given
    """
    if subgroups is None:
        if G.order > settings.sweep_max_order:
            raise CapExceededError("sweep_max_order", settings.sweep_max_order, G.order, detail=G.name)
        subgroups = enumerate_subgroups(G, up_to_conjugacy=True)
    subgroups = list(subgroups)
    rows = empty_rows()
    for row, (premise, conclusion, scope) in zip(rows, IMPLICATIONS):
        in_scope = SCOPES[scope]
        for H in subgroups:
            if not in_scope(G, H) or not holds(G, H, premise):
                continue
            row.premise_hits += 1
            if holds(G, H, conclusion):
                continue
            row.violations += 1
            example = f"{G.name}: {H.describe()}"
            if len(row.examples) < EXAMPLE_LIMIT:
                row.examples.append(example)
            logger.error(f"{premise.value} => {conclusion.value} fails for {example}")
    logger.info(f"Implication sweep of {G.name}: {len(subgroups)} subgroups")
    return rows


def merge_rows(batches: Iterable[List[ImplicationRow]]) -> List[ImplicationRow]:
    """Sum per-group rows into corpus-wide rows, keeping table order"""
    merged = {_row_key(row): row for row in empty_rows()}
    for batch in batches:
        for row in batch:
            total = merged[_row_key(row)]
            total.premise_hits += row.premise_hits
            total.violations += row.violations
            room = EXAMPLE_LIMIT - len(total.examples)
            total.examples.extend(row.examples[:max(room, 0)])
    return list(merged.values())


def implication_matrix(groups: Iterable[GroupHandle]) -> List[ImplicationRow]:
    """Corpus-wide matrix; groups above the sweep cap are left out"""
    batches = []
    for G in groups:
        try:
            batches.append(implication_rows(G))
        except CapExceededError as e:
            logger.warning(f"Implication sweep skipped for {G.name}: {e}")
    return merge_rows(batches)
