"""
Tests for implication sweeps, oracles, the corpus manifest and corpus runs
"""

import json

import pytest

from src.core.config import settings
from src.core.exceptions import CapExceededError, GroupFormatError, NotASubgroupError
from src.lattice.normal_lattice import normal_lattice
from src.perm.builtins import dihedral, symmetric
from src.perm.enumeration import all_subgroups
from src.verify.corpus import CorpusEntry, build_group, entry_subgroup, load_manifest
from src.verify.implications import IMPLICATIONS, implication_matrix, implication_rows, merge_rows
from src.verify.oracles import ORACLES, lattice_oracle, reach_oracle, run_oracles
from src.verify.runner import canonical_dict, canonical_json, corpus_run, resolve_suites, run_entry

SMALL_MANIFEST = """
groups:
  - name: C6
    builtin: cyclic
    params: [6]
    order: 6
  - name: S3
    builtin: symmetric
    params: [3]
    order: 6
  - name: D8
    builtin: dihedral
    params: [8]
    order: 8
"""


@pytest.fixture
def small_manifest(tmp_path):
    path = tmp_path / "corpus.yaml"
    path.write_text(SMALL_MANIFEST)
    return path


class TestImplications:
    """Test the implication sweep"""

    @pytest.mark.parametrize("fixture", ["s4", "d8", "q8"])
    def test_no_violations(self, request, fixture):
        G = request.getfixturevalue(fixture)
        rows = implication_rows(G)
        assert len(rows) == len(IMPLICATIONS)
        assert all(row.violations == 0 for row in rows)
        assert all(row.examples == [] for row in rows)

    def test_pi_premise_hits_in_s4(self, s4):
        """Normal subgroups and <(1 2)> have the Pi-property"""
        rows = implication_rows(s4)
        row = next(r for r in rows if r.premise == "pi" and r.conclusion == "partial-pi")
        assert row.premise_hits > 0

    def test_sweep_cap(self, s4, monkeypatch):
        """Groups above the sweep cap are refused unless subgroups are given"""
        monkeypatch.setattr(settings, "sweep_max_order", 10)
        with pytest.raises(CapExceededError):
            implication_rows(s4)
        rows = implication_rows(s4, subgroups=[s4.trivial, s4.whole])
        assert all(row.violations == 0 for row in rows)

    def test_merge(self, s4, d8):
        merged = merge_rows([implication_rows(s4), implication_rows(d8)])
        separate = implication_matrix([s4, d8])
        assert [r.premise_hits for r in merged] == [r.premise_hits for r in separate]


class TestOracles:
    """Test that fast paths agree with their brute-force references"""

    @pytest.mark.parametrize("fixture", ["s3", "s4", "d8", "q8"])
    def test_all_agree(self, request, fixture):
        G = request.getfixturevalue(fixture)
        rows, skipped = run_oracles(G)
        assert skipped == []
        assert {row.oracle for row in rows} == set(ORACLES)
        for row in rows:
            assert row.agree, f"{row.oracle}: {row.details}"

    def test_single_oracles(self, a4):
        assert lattice_oracle(a4).agree
        row = reach_oracle(a4)
        assert row.agree
        assert row.checked > 0

    def test_capped_oracles_are_skipped(self, monkeypatch):
        """Oracles above their cap become skipped rows"""
        monkeypatch.setattr(settings, "oracle_max_order", 10)
        monkeypatch.setattr(settings, "sweep_max_order", 10)
        G = dihedral(12)
        rows, skipped = run_oracles(G)
        assert {row.oracle for row in rows} == {"closure"}
        assert all(s.suite.startswith("oracles:") for s in skipped)
        assert len(rows) + len(skipped) == len(ORACLES)


class TestManifest:
    """Test the corpus manifest"""

    def test_bundled_manifest(self):
        manifest = load_manifest()
        assert "ex12" in manifest.names
        assert manifest.entry("ex12").separation == "hprime"

    def test_unknown_entry(self):
        with pytest.raises(KeyError):
            load_manifest().entry("nope")

    def test_bad_yaml(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("groups: [\n")
        with pytest.raises(GroupFormatError):
            load_manifest(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(GroupFormatError):
            load_manifest(tmp_path / "absent.yaml")

    @pytest.mark.parametrize(
        "text",
        [
            "groups:\n  - name: X\n",
            "groups:\n  - name: X\n    builtin: cyclic\n    file: x.grp\n",
            "groups:\n  - name: X\n    builtin: nosuch\n",
            "groups:\n  - name: X\n    builtin: cyclic\n    params: [2]\n    separation: h\n",
            "groups:\n  - {name: X, builtin: cyclic, params: [2]}\n  - {name: X, builtin: cyclic, params: [3]}\n",
        ],
    )
    def test_invalid_entries(self, tmp_path, text):
        path = tmp_path / "corpus.yaml"
        path.write_text(text)
        with pytest.raises(GroupFormatError):
            load_manifest(path)

    def test_order_mismatch(self):
        entry = CorpusEntry(name="C5", builtin="cyclic", params=[5], order=6)
        with pytest.raises(GroupFormatError):
            build_group(entry)

    def test_bad_params(self):
        entry = CorpusEntry(name="C5", builtin="cyclic", params=[5, 6, 7])
        with pytest.raises(GroupFormatError):
            build_group(entry)

    def test_product_and_keyword_params(self):
        entry = CorpusEntry(
            name="C2xV4",
            builtin="product",
            factors=[
                CorpusEntry(name="C2", builtin="cyclic", params=[2]),
                CorpusEntry(name="V4", builtin="elementary_abelian", params={"p": 2, "k": 2}),
            ],
            order=8,
        )
        G = build_group(entry)
        assert G.name == "C2xV4"
        assert G.order == 8

    def test_inline_subgroup(self, corpus_dir):
        manifest = load_manifest()
        entry = manifest.entry("S4")
        G = build_group(entry, corpus_dir)
        assert entry_subgroup(G, entry, "c4", corpus_dir).order == 4
        assert entry_subgroup(G, entry, "v4prime", corpus_dir).order == 4


class TestRunner:
    """Test entry runs and corpus runs"""

    def test_resolve_suites(self):
        assert resolve_suites("all") == ["statements", "implications", "oracles"]
        assert resolve_suites(["oracles", "statements"]) == ["statements", "oracles"]
        with pytest.raises(ValueError):
            resolve_suites(["nosuch"])

    def test_unloadable_entry_is_skipped(self, tmp_path):
        entry = CorpusEntry(name="ghost", file="missing.grp")
        result = run_entry(entry, tmp_path, ["statements"])
        assert result.statements == []
        assert [s.suite for s in result.skipped] == ["load"]

    def test_capped_suite_is_skipped(self, monkeypatch):
        monkeypatch.setattr(settings, "sweep_max_order", 10)
        entry = CorpusEntry(name="S4", builtin="symmetric", params=[4])
        result = run_entry(entry, load_manifest().base_dir, ["implications"])
        assert result.order == 24
        assert [s.suite for s in result.skipped] == ["implications"]

    def test_failing_statement_suite_is_skipped(self, monkeypatch):
        """An engine error inside the statements suite leaves the other suites running"""
        def broken(G, subject=None):
            raise NotASubgroupError("kernel is not normal")

        monkeypatch.setattr("src.verify.runner.check_all", broken)
        entry = CorpusEntry(name="S3", builtin="symmetric", params=[3])
        result = run_entry(entry, load_manifest().base_dir, ["statements", "implications"])
        assert result.statements == []
        assert [(s.suite, s.reason) for s in result.skipped] == [("statements", "kernel is not normal")]
        assert result.implications

    def test_small_run(self, small_manifest):
        summary = corpus_run(small_manifest, suites="all", jobs=1)
        assert summary.groups == ["C6", "S3", "D8"]
        assert summary.counterexamples == 0
        assert summary.ok
        data = canonical_dict(summary)
        assert data["ok"] is True
        assert all("elapsed_ms" not in r for r in data["statements"])

    def test_parallel_run_is_identical(self, small_manifest):
        """Worker count does not change the canonical summary"""
        serial = canonical_json(corpus_run(small_manifest, jobs=1))
        parallel = canonical_json(corpus_run(small_manifest, jobs=2))
        assert serial == parallel
        assert json.loads(serial)["groups"] == ["C6", "S3", "D8"]

    def test_metrics_file(self, small_manifest, tmp_path):
        out = tmp_path / "metrics.prom"
        corpus_run(small_manifest, suites=["statements", "implications"], metrics_out=out)
        text = out.read_text()
        assert "partialpi_statement_outcomes" in text
        assert "partialpi_implication_premise_hits" in text

    @pytest.mark.slow
    def test_bundled_corpus(self):
        """The bundled corpus runs clean, non-vacuously and identically for 1 and 8 workers"""
        summary = corpus_run(suites="all", jobs=1)
        assert summary.counterexamples == 0
        assert summary.ok
        assert "ex12" in summary.groups
        sep = [r for r in summary.statements if r.statement == "SEP"]
        assert [r.status.value for r in sep] == ["verified"]

        for statement in ("P1.3", "P1.5", "P1.6", "L2.14", "L2.15"):
            counts = summary.status_counts[statement]
            satisfied = counts.get("verified", 0) + counts.get("COUNTEREXAMPLE", 0)
            assert satisfied >= 5, statement

        assert all(row.violations == 0 for row in summary.implications)
        assert all(row.premise_hits >= 10 for row in summary.implications)

        manifest = load_manifest()
        swept = [build_group(entry, manifest.base_dir) for entry in manifest.groups]
        normal_count = sum(
            len(normal_lattice(G).nodes) for G in swept if G.order <= settings.sweep_max_order
        )
        quasinormal = next(row for row in summary.implications if row.premise == "quasinormal")
        assert quasinormal.premise_hits >= normal_count

        assert canonical_json(corpus_run(suites="all", jobs=8)) == canonical_json(summary)


class TestSubgroupSweepSanity:
    def test_symmetric_three_sweep(self):
        G = symmetric(3)
        rows = implication_rows(G, subgroups=all_subgroups(G))
        assert all(row.violations == 0 for row in rows)
