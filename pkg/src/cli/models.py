"""
JSON payloads printed by the command line under --json
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from src.embeddings.models import SubgroupSummary
from src.verify.models import VerifierReport


class OrderReport(BaseModel):
    """Order and stabilizer chain of a group"""
    group: str
    order: int
    degree: int
    base: List[int] = Field(default_factory=list)
    transversal_sizes: List[int] = Field(default_factory=list)


class LatticeNode(BaseModel):
    id: int
    subgroup: SubgroupSummary


class LatticeEdge(BaseModel):
    edge: Tuple[int, int]
    factor_order: int
    is_abelian: bool
    prime: Optional[int] = None


class LatticeReport(BaseModel):
    """Normal subgroups and cover edges"""
    group: str
    nodes: List[LatticeNode] = Field(default_factory=list)
    edges: List[LatticeEdge] = Field(default_factory=list)


class ChiefSeriesReport(BaseModel):
    """Canonical chief series with its factor orders"""
    group: str
    nodes: List[int] = Field(default_factory=list)
    orders: List[int] = Field(default_factory=list)
    factor_orders: List[int] = Field(default_factory=list)


class ClassReport(BaseModel):
    group: str
    group_class: str
    p: Optional[int] = None
    verdict: bool


class CharReport(BaseModel):
    group: str
    kind: str
    p: Optional[int] = None
    subgroup: SubgroupSummary


class VerifyReport(BaseModel):
    """All instances of one statement on one group"""
    group: str
    statement: str
    reports: List[VerifierReport] = Field(default_factory=list)
