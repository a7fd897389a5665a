"""
Report models for embedding predicates
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from src.perm.group import SubgroupRef


class SubgroupSummary(BaseModel):
    """Subgroup as it appears in reports"""
    order: int
    key: str
    generators: List[str] = Field(default_factory=list)

    @classmethod
    def of(cls, sub: SubgroupRef) -> "SubgroupSummary":
        return cls(order=sub.order, key=sub.key, generators=[str(p) for p in sub.permutations])


class EdgeDiagnostic(BaseModel):
    """Normalizer-index test on one cover edge (K, L)"""
    edge: Tuple[int, int]
    edge_orders: Tuple[int, int]
    section_order: int
    index: int
    pi: List[int] = Field(default_factory=list)
    good: bool


class PredicateReport(BaseModel):
    """Verdict of one embedding predicate with its witness"""
    predicate: str
    group: str
    subject: SubgroupSummary
    verdict: bool
    witness_nodes: List[int] = Field(default_factory=list)
    witness_chain: List[int] = Field(default_factory=list)
    violations: List[EdgeDiagnostic] = Field(default_factory=list)
    partner: Optional[SubgroupSummary] = None
    intermediate: Optional[SubgroupSummary] = None
    note: Optional[str] = None
    elapsed_ms: float = 0.0


class MetamorphicReport(BaseModel):
    """Outcome of one transfer-rule check"""
    variant: int
    group: str
    subject: SubgroupSummary
    kernel: Optional[SubgroupSummary] = None
    hypothesis_held: bool
    checked: int = 0
    violations: List[str] = Field(default_factory=list)
    findings: List[str] = Field(default_factory=list)
