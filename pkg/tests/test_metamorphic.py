"""
Tests for the transfer rules under conjugation, restriction and quotients
"""

import pytest

from src.core.exceptions import NotASubgroupError
from src.embeddings.metamorphic import VARIANTS, metamorphic_2_1, metamorphic_sweep
from src.lattice.normal_lattice import normal_lattice
from src.perm.enumeration import all_subgroups
from src.perm.grp_format import parse_subgroup


class TestTransferRules:
    """Test single transfer-rule checks"""

    def test_conjugation(self, s4, s4_c4):
        """Conjugates of <(1 2 3 4)> all fail the partial Pi-property"""
        report = metamorphic_2_1(s4, s4_c4, s4.trivial, 1, seed=7, samples=10)
        assert report.hypothesis_held
        assert report.checked == 10
        assert report.violations == []

    def test_quotient_image_needs_hypothesis(self, s4, s4_c4, s4_v4):
        """V4 is neither inside C4 nor of coprime order, so the rule does not apply"""
        report = metamorphic_2_1(s4, s4_c4, s4_v4, 3)
        assert not report.hypothesis_held
        assert report.checked == 0

    def test_quotient_image(self, s4):
        """<(1 2)> has the property and passes to the trivial quotient"""
        H = parse_subgroup(s4, "(1 2)")
        report = metamorphic_2_1(s4, H, s4.trivial, 3)
        assert report.hypothesis_held
        assert report.violations == []

    def test_restriction(self, s4, s4_v4):
        """A normal 2-subgroup restricts to A4"""
        A4 = normal_lattice(s4).nodes[2]
        report = metamorphic_2_1(s4, s4_v4, A4, 2)
        assert report.hypothesis_held
        assert report.violations == []

    def test_lifting_has_no_findings(self, s4, s4_v4):
        """Lattice and quotient readings agree above V4"""
        H = parse_subgroup(s4, "(1 2)")
        report = metamorphic_2_1(s4, H, s4_v4, 5)
        assert report.findings == []
        assert report.violations == []

    def test_unknown_variant(self, s4, s4_c4):
        with pytest.raises(ValueError):
            metamorphic_2_1(s4, s4_c4, s4.trivial, 9)

    def test_non_normal_kernel(self, s4, s4_c4, s4_v4prime):
        with pytest.raises(NotASubgroupError):
            metamorphic_2_1(s4, s4_c4, s4_v4prime, 3)


class TestSweep:
    """Test sweeping every rule over a group"""

    @pytest.mark.parametrize("fixture", ["s4", "d8", "q8"])
    def test_no_violations(self, request, fixture):
        """No rule is violated on any subgroup of small groups"""
        G = request.getfixturevalue(fixture)
        reports = metamorphic_sweep(G, all_subgroups(G), seed=0)
        assert reports
        assert all(r.violations == [] for r in reports)
        assert all(r.findings == [] for r in reports)

    def test_rule_one_runs_once_per_subgroup(self, d8):
        subgroups = all_subgroups(d8)
        reports = metamorphic_sweep(d8, subgroups, variants=[1])
        assert len(reports) == len(subgroups)
        assert {r.variant for r in reports} == {1}

    def test_variants(self):
        assert VARIANTS == (1, 2, 3, 4, 5)
