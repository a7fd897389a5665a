"""
Report models for the verification harness
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class StatementStatus(str, Enum):
    """Outcome of one statement instance"""
    HYPOTHESIS_FAILED = "hypothesis_failed"
    VERIFIED = "verified"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    SKIPPED = "skipped"


class VerifierReport(BaseModel):
    """One statement checked on one binding of its parameters"""
    statement: str
    group: str
    bindings: Dict[str, Any] = Field(default_factory=dict)
    status: StatementStatus
    details: Optional[str] = None
    elapsed_ms: float = 0.0

    def sort_key(self):
        return (self.statement, self.group, sorted((k, str(v)) for k, v in self.bindings.items()), self.status.value)


class ImplicationRow(BaseModel):
    """Premise => conclusion over a subgroup sweep"""
    premise: str
    conclusion: str
    scope: str = "all"
    premise_hits: int = 0
    violations: int = 0
    examples: List[str] = Field(default_factory=list)


class OracleRow(BaseModel):
    """Agreement of a fast computation with its brute-force reference"""
    oracle: str
    group: str
    checked: int = 0
    agree: bool = True
    details: Optional[str] = None


class SkippedEntry(BaseModel):
    """Corpus entry or suite that did not run, with the reason"""
    group: str
    suite: str
    reason: str


class EntryResult(BaseModel):
    """Everything one corpus entry produced"""
    group: str
    order: int = 0
    statements: List[VerifierReport] = Field(default_factory=list)
    implications: List[ImplicationRow] = Field(default_factory=list)
    oracles: List[OracleRow] = Field(default_factory=list)
    skipped: List[SkippedEntry] = Field(default_factory=list)


class CorpusSummary(BaseModel):
    """Aggregated corpus run"""
    groups: List[str] = Field(default_factory=list)
    suites: List[str] = Field(default_factory=list)
    status_counts: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    counterexamples: int = 0
    implications: List[ImplicationRow] = Field(default_factory=list)
    oracles: List[OracleRow] = Field(default_factory=list)
    statements: List[VerifierReport] = Field(default_factory=list)
    skipped: List[SkippedEntry] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.counterexamples == 0
            and all(row.violations == 0 for row in self.implications)
            and all(row.agree for row in self.oracles)
        )
