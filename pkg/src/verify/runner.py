"""
Corpus runner: statement, implication and oracle suites over a manifest
"""

import json
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from prometheus_client import CollectorRegistry, Counter, write_to_textfile

from src.core.config import override, settings
from src.core.exceptions import PartialPiError
from src.utils.logging import verify_logger as logger
from src.verify.corpus import CorpusEntry, CorpusManifest, build_group, entry_subgroup, load_manifest
from src.verify.implications import implication_rows, merge_rows
from src.verify.models import CorpusSummary, EntryResult, SkippedEntry, StatementStatus
from src.verify.oracles import run_oracles
from src.verify.statements import check_all

SUITES = ("statements", "implications", "oracles")
_FORWARDED = (
    "max_order", "max_degree", "enumeration_max_order", "chain_cap",
    "sweep_max_order", "oracle_max_order", "closure_oracle_max_order",
    "metamorphic_samples", "seed",
)


def resolve_suites(suites: Union[str, Iterable[str], None]) -> List[str]:
    """``all`` or None means every suite; unknown names raise ValueError"""
    if suites is None or suites == "all":
        return list(SUITES)
    names = [suites] if isinstance(suites, str) else list(suites)
    if "all" in names:
        return list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {list(SUITES)} or all")
    return [s for s in SUITES if s in names]


def run_entry(
    entry: CorpusEntry,
    base_dir: Path,
    suites: Sequence[str],
    overrides: Optional[Dict[str, Any]] = None,
) -> EntryResult:
    """
    Run the selected suites on one corpus entry

    Load failures and cap refusals become skipped rows; nothing escapes.
    """
    if overrides:
        override(**overrides)
    started = time.perf_counter()
    result = EntryResult(group=entry.name)
    try:
        G = build_group(entry, base_dir)
        subject = entry_subgroup(G, entry, entry.separation, base_dir) if entry.separation else None
    except PartialPiError as e:
        logger.warning(f"Corpus entry {entry.name} not loaded: {e}")
        result.skipped.append(SkippedEntry(group=entry.name, suite="load", reason=str(e)))
        return result
    result.order = G.order

    if "statements" in suites:
        try:
            result.statements = check_all(G, subject)
        except PartialPiError as e:
            logger.error(f"Statements on {entry.name} aborted: {e}")
            result.skipped.append(SkippedEntry(group=entry.name, suite="statements", reason=str(e)))
    if "implications" in suites:
        try:
            result.implications = implication_rows(G)
        except PartialPiError as e:
            result.skipped.append(SkippedEntry(group=entry.name, suite="implications", reason=str(e)))
    if "oracles" in suites:
        try:
            result.oracles, skipped = run_oracles(G)
            result.skipped.extend(skipped)
        except PartialPiError as e:
            result.skipped.append(SkippedEntry(group=entry.name, suite="oracles", reason=str(e)))

    elapsed = time.perf_counter() - started
    logger.info(f"Corpus entry {entry.name} (order {G.order}) done in {elapsed:.2f}s")
    return result


def summarize(results: List[EntryResult], suites: Sequence[str], groups: List[str]) -> CorpusSummary:
    """Aggregate entry results in canonical order"""
    statements = sorted((r for res in results for r in res.statements), key=lambda r: r.sort_key())
    counts: Dict[str, Dict[str, int]] = defaultdict(lambda: defaultdict(int))
    for report in statements:
        counts[report.statement][report.status.value] += 1
    implications = merge_rows(res.implications for res in results) if "implications" in suites else []
    return CorpusSummary(
        groups=groups,
        suites=list(suites),
        status_counts={k: dict(sorted(v.items())) for k, v in sorted(counts.items())},
        counterexamples=sum(1 for r in statements if r.status == StatementStatus.COUNTEREXAMPLE),
        implications=implications,
        oracles=sorted((o for res in results for o in res.oracles), key=lambda o: (o.oracle, o.group)),
        statements=statements,
        skipped=sorted(
            (s for res in results for s in res.skipped),
            key=lambda s: (s.group, s.suite, s.reason),
        ),
    )


def record_metrics(summary: CorpusSummary, registry: CollectorRegistry) -> None:
    outcomes = Counter(
        "partialpi_statement_outcomes",
        "Statement instances by outcome",
        ["statement", "status"],
        registry=registry,
    )
    hits = Counter(
        "partialpi_implication_premise_hits",
        "Subgroups satisfying an implication premise",
        ["premise", "conclusion"],
        registry=registry,
    )
    violations = Counter(
        "partialpi_implication_violations",
        "Subgroups satisfying a premise but not its conclusion",
        ["premise", "conclusion"],
        registry=registry,
    )
    oracle_checks = Counter(
        "partialpi_oracle_checks",
        "Comparisons made by brute-force oracles",
        ["oracle", "agree"],
        registry=registry,
    )
    for statement, by_status in summary.status_counts.items():
        for status, count in by_status.items():
            outcomes.labels(statement=statement, status=status).inc(count)
    for row in summary.implications:
        hits.labels(premise=row.premise, conclusion=row.conclusion).inc(row.premise_hits)
        violations.labels(premise=row.premise, conclusion=row.conclusion).inc(row.violations)
    for row in summary.oracles:
        oracle_checks.labels(oracle=row.oracle, agree=str(row.agree).lower()).inc(row.checked)


def corpus_run(
    manifest: Union[CorpusManifest, str, Path, None] = None,
    suites: Union[str, Iterable[str], None] = "all",
    jobs: Optional[int] = None,
    metrics_out: Optional[Union[str, Path]] = None,
) -> CorpusSummary:
    """
    Run suites over every manifest entry

    Args:
        manifest: loaded manifest or its path (bundled corpus by default)
        suites: suite names or ``all``
        jobs: worker processes (settings.jobs by default)
        metrics_out: write Prometheus text metrics here

    Returns:
        CorpusSummary, identical for every value of ``jobs`` apart from timings
    """
    if not isinstance(manifest, CorpusManifest):
        manifest = load_manifest(manifest)
    selected = resolve_suites(suites)
    jobs = jobs or settings.jobs
    overrides = {key: getattr(settings, key) for key in _FORWARDED}
    logger.info(f"Corpus run: {len(manifest.groups)} groups, suites {selected}, jobs {jobs}")

    entries = manifest.groups
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                run_entry,
                entries,
                [manifest.base_dir] * len(entries),
                [selected] * len(entries),
                [overrides] * len(entries),
            ))
    else:
        results = [run_entry(entry, manifest.base_dir, selected) for entry in entries]

    summary = summarize(results, selected, manifest.names)
    if metrics_out is not None:
        registry = CollectorRegistry()
        record_metrics(summary, registry)
        write_to_textfile(str(metrics_out), registry)
    if summary.counterexamples:
        logger.error(f"Corpus run found {summary.counterexamples} counterexample(s)")
    return summary


def canonical_dict(summary: CorpusSummary, timing: bool = False) -> Dict[str, Any]:
    """JSON-ready summary; without timing it is the form compared across runs"""
    data = summary.model_dump(mode="json")
    if not timing:
        for report in data["statements"]:
            report.pop("elapsed_ms", None)
    data["ok"] = summary.ok
    return data


def canonical_json(summary: CorpusSummary, timing: bool = False) -> str:
    return json.dumps(canonical_dict(summary, timing), sort_keys=True, indent=2)
