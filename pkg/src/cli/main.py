"""
Command line: inspect groups, decide predicates, verify statements, run the corpus

Exit codes: 0 success, 1 false verdict or counterexample, 2 usage or input
error, 3 a size cap refused the computation.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, List, Optional

from pydantic import BaseModel

from src.cli.models import (
    CharReport,
    ChiefSeriesReport,
    ClassReport,
    LatticeEdge,
    LatticeNode,
    LatticeReport,
    OrderReport,
    VerifyReport,
)
from src.cli.schemas import REPORT_MODELS, schema_for, write_schemas
from src.classify.characteristic import CharKind, char_subgroup
from src.classify.classes import GroupClass, group_class
from src.core.config import override
from src.core.exceptions import CapExceededError, GroupFormatError, PartialPiError
from src.embeddings.models import PredicateReport, SubgroupSummary
from src.embeddings.predicates import PredicateId, predicate
from src.lattice.normal_lattice import normal_lattice
from src.lattice.reach import chain_orders, witness_chain
from src.perm.builtins import BUILTINS
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.grp_format import load_grp, load_sub, parse_subgroup, write_grp
from src.utils.logging import cli_logger as logger
from src.verify.models import StatementStatus
from src.verify.runner import SUITES, canonical_json, corpus_run
from src.verify.statements import StatementId, check_statement

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def load_group(text: str) -> GroupHandle:
    """
    A .grp path, or ``builtin:NAME[:ARG,ARG...]`` such as ``builtin:symmetric:4``

    Raises:
        GroupFormatError: unreadable file or unknown builtin
    """
    if text.startswith("builtin:"):
        _, name, *rest = text.split(":", 2)
        if name not in BUILTINS:
            raise GroupFormatError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        try:
            params = [int(v) for v in rest[0].split(",")] if rest and rest[0] else []
        except ValueError:
            raise GroupFormatError(f"builtin parameters must be integers: {rest[0]!r}") from None
        try:
            return BUILTINS[name](*params)
        except TypeError as e:
            raise GroupFormatError(f"bad parameters for {name}: {e}") from e
    return load_grp(Path(text))


def _subject(G: GroupHandle, args: argparse.Namespace) -> Optional[SubgroupRef]:
    if getattr(args, "subgroup_file", None):
        return load_sub(G, args.subgroup_file)
    if getattr(args, "subgroup", None) is not None:
        return parse_subgroup(G, args.subgroup)
    return None


def _emit(args: argparse.Namespace, model: BaseModel, text: Callable[[], List[str]]) -> None:
    if args.json:
        print(json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2))
    else:
        print("\n".join(text()))


def _gens(sub: SubgroupRef) -> str:
    return ", ".join(str(p) for p in sub.permutations) or "()"


# Commands

def cmd_order(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    base, sizes = G.stabilizer_chain
    if args.dump:
        write_grp(G, args.dump)
        logger.info(f"Wrote {G.name} to {args.dump}")
    report = OrderReport(group=G.name, order=G.order, degree=G.degree, base=list(base), transversal_sizes=list(sizes))
    _emit(args, report, lambda: [str(G.order)])
    return EXIT_OK


def cmd_lattice(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    lattice = normal_lattice(G)
    report = LatticeReport(
        group=G.name,
        nodes=[LatticeNode(id=i, subgroup=SubgroupSummary.of(n)) for i, n in enumerate(lattice.nodes)],
        edges=[
            LatticeEdge(edge=f.edge, factor_order=f.order, is_abelian=f.is_abelian, prime=f.prime)
            for f in lattice.factors()
        ],
    )

    def text() -> List[str]:
        lines = [f"{len(lattice.nodes)} normal subgroups of {G.name}"]
        lines += [f"  #{i} order {n.order}: {_gens(n)}" for i, n in enumerate(lattice.nodes)]
        lines.append(f"{len(report.edges)} cover edges")
        lines += [
            f"  #{e.edge[0]} < #{e.edge[1]}: factor order {e.factor_order}{'' if e.is_abelian else ' (non-abelian)'}"
            for e in report.edges
        ]
        return lines

    _emit(args, report, text)
    return EXIT_OK


def cmd_chief_series(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    lattice = normal_lattice(G)
    chain = witness_chain(lattice)
    orders = chain_orders(lattice, chain)
    report = ChiefSeriesReport(
        group=G.name,
        nodes=chain,
        orders=orders,
        factor_orders=[b // a for a, b in zip(orders, orders[1:])],
    )
    _emit(args, report, lambda: [
        " < ".join(str(o) for o in orders),
        "factors: " + " ".join(str(f) for f in report.factor_orders),
    ])
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    cls = GroupClass(args.group_class)
    verdict = group_class(G, cls, args.p)
    report = ClassReport(group=G.name, group_class=cls.value, p=args.p, verdict=verdict)
    _emit(args, report, lambda: [str(verdict).lower()])
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_char(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    kind = CharKind(args.kind)
    S = char_subgroup(G, kind, args.p)
    report = CharReport(group=G.name, kind=kind.value, p=args.p, subgroup=SubgroupSummary.of(S))
    _emit(args, report, lambda: [f"order {S.order}: {_gens(S)}"])
    return EXIT_OK


def _predicate_text(report: PredicateReport) -> List[str]:
    lines = [f"{report.predicate}: {str(report.verdict).lower()} (subgroup of order {report.subject.order})"]
    if report.note:
        lines.append(f"note: {report.note}")
    if report.witness_chain:
        lines.append("chain: " + " < ".join(str(o) for o in report.witness_chain))
    for v in report.violations:
        lines.append(
            f"violating edge {v.edge} orders {v.edge_orders}: |D/K| = {v.section_order}, "
            f"|G:N(D)| = {v.index}, pi = {v.pi}"
        )
    if report.partner is not None:
        lines.append(f"partner: order {report.partner.order}")
    return lines


def cmd_check(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    H = _subject(G, args)
    if H is None:
        raise GroupFormatError("check needs --subgroup or --subgroup-file")
    report = predicate(G, H, PredicateId.parse(args.predicate))
    _emit(args, report, lambda: _predicate_text(report))
    return EXIT_OK if report.verdict else EXIT_FALSE


def cmd_verify(args: argparse.Namespace) -> int:
    G = load_group(args.group)
    sid = StatementId.parse(args.statement)
    reports = check_statement(G, sid, subject=_subject(G, args))
    report = VerifyReport(group=G.name, statement=sid.value, reports=reports)

    def text() -> List[str]:
        lines = [f"{sid.value} on {G.name}: {len(reports)} instance(s)"]
        for r in reports:
            bindings = ", ".join(f"{k}={v}" for k, v in sorted(r.bindings.items()))
            lines.append(f"  [{r.status.value}] {bindings}" + (f": {r.details}" if r.details else ""))
        return lines

    _emit(args, report, text)
    failed = any(r.status == StatementStatus.COUNTEREXAMPLE for r in reports)
    return EXIT_FALSE if failed else EXIT_OK


def cmd_corpus_run(args: argparse.Namespace) -> int:
    summary = corpus_run(args.manifest, args.suite, jobs=args.jobs, metrics_out=args.metrics_out)
    payload = canonical_json(summary, timing=not args.no_timing)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        logger.info(f"Wrote corpus report to {args.out}")
    if args.json or not args.out:
        print(payload)
    else:
        for statement, counts in summary.status_counts.items():
            print(f"{statement}: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
        print(f"counterexamples: {summary.counterexamples}, ok: {str(summary.ok).lower()}")
    return EXIT_OK if summary.ok else EXIT_FALSE


def cmd_schema(args: argparse.Namespace) -> int:
    if args.out:
        for path in write_schemas(args.out):
            logger.info(f"Wrote {path}")
        return EXIT_OK
    if args.report is None:
        raise GroupFormatError("schema needs a report name or --out")
    print(json.dumps(schema_for(args.report), sort_keys=True, indent=2))
    return EXIT_OK


# Argument parsing

def _global_flags(top_level: bool) -> argparse.ArgumentParser:
    """Flags accepted before or after the command; only the top level sets defaults"""
    def default(value):
        return value if top_level else argparse.SUPPRESS

    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--max-order", dest="max_order", type=int, default=default(None), help="element-enumeration cap")
    flags.add_argument("--jobs", type=int, default=default(None), help="worker processes for corpus runs")
    flags.add_argument("--seed", type=int, default=default(None), help="seed for sampled diagnostics")
    flags.add_argument("--json", action="store_true", default=default(False), help="JSON output")
    return flags


def _add_subject(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--subgroup", help="inline generators, e.g. '(1 2 3),(1 2)'")
    group.add_argument("--subgroup-file", dest="subgroup_file", type=Path, help=".sub file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partialpi",
        description="Partial Pi-property engine for finite permutation groups",
        parents=[_global_flags(top_level=True)],
    )
    common = [_global_flags(top_level=False)]
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("order", parents=common, help="group order")
    p.add_argument("group", help=".grp file or builtin:NAME:ARGS")
    p.add_argument("--dump", type=Path, help="write the group back as .grp")
    p.set_defaults(handler=cmd_order)

    p = commands.add_parser("lattice", parents=common, help="normal subgroups and cover edges")
    p.add_argument("group")
    p.set_defaults(handler=cmd_lattice)

    p = commands.add_parser("chief-series", parents=common, help="canonical chief series")
    p.add_argument("group")
    p.set_defaults(handler=cmd_chief_series)

    p = commands.add_parser("classify", parents=common, help="class membership")
    p.add_argument("group")
    p.add_argument("--class", dest="group_class", required=True, choices=[c.value for c in GroupClass])
    p.add_argument("--p", type=int)
    p.set_defaults(handler=cmd_classify)

    p = commands.add_parser("char", parents=common, help="characteristic subgroup")
    p.add_argument("group")
    p.add_argument("--kind", required=True, choices=[k.value for k in CharKind])
    p.add_argument("--p", type=int)
    p.set_defaults(handler=cmd_char)

    p = commands.add_parser("check", parents=common, help="decide an embedding predicate")
    p.add_argument("group")
    p.add_argument("--predicate", required=True, help=", ".join(pid.value for pid in PredicateId))
    _add_subject(p)
    p.set_defaults(handler=cmd_check)

    p = commands.add_parser("verify", parents=common, help="check one statement on every binding")
    p.add_argument("group")
    p.add_argument("--statement", required=True, help=", ".join(sid.value for sid in StatementId))
    _add_subject(p)
    p.set_defaults(handler=cmd_verify)

    corpus = commands.add_parser("corpus", parents=common, help="corpus runs")
    corpus_commands = corpus.add_subparsers(dest="corpus_command", required=True)
    p = corpus_commands.add_parser("run", parents=common, help="run suites over a manifest")
    p.add_argument("--manifest", type=Path, help="YAML manifest (bundled corpus by default)")
    p.add_argument("--suite", action="append", choices=list(SUITES) + ["all"], help="repeatable; default all")
    p.add_argument("--out", type=Path, help="write the JSON report here")
    p.add_argument("--metrics-out", dest="metrics_out", type=Path, help="Prometheus text metrics file")
    p.add_argument("--no-timing", dest="no_timing", action="store_true", help="omit elapsed_ms for byte-stable reports")
    p.set_defaults(handler=cmd_corpus_run)

    p = commands.add_parser("schema", parents=common, help="JSON schemas of the --json reports")
    p.add_argument("report", nargs="?", choices=list(REPORT_MODELS))
    p.add_argument("--out", type=Path, help="write every schema into this directory")
    p.set_defaults(handler=cmd_schema)

    return parser


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        override(max_order=args.max_order, jobs=args.jobs, seed=args.seed)
        return args.handler(args)
    except CapExceededError as e:
        logger.warning(f"Refused: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (PartialPiError, ValueError, KeyError) as e:
        logger.debug(f"Input error: {e!r}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
