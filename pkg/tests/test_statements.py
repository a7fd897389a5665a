"""
Tests for the statement harness: hypotheses, conclusions and statuses
"""

import pytest

from src.core.exceptions import UnknownStatementError
from src.perm.builtins import cyclic, dihedral, elementary_abelian, frobenius, sl2
from src.perm.grp_format import parse_subgroup
from src.verify.models import StatementStatus
from src.verify.statements import (
    StatementId,
    check_all,
    check_statement,
    cyclic_hypothesis,
    maximal_hypothesis,
)


class TestStatementId:
    """Test statement name parsing"""

    def test_case_insensitive(self):
        assert StatementId.parse("thma") is StatementId.THM_A
        assert StatementId.parse("P1.4") is StatementId.P1_4

    def test_unknown(self, s4):
        with pytest.raises(UnknownStatementError):
            StatementId.parse("P9.9")
        with pytest.raises(UnknownStatementError):
            check_statement(s4, "P9.9")


class TestHypotheses:
    """Test the shared hypothesis builders"""

    def test_maximal_hypothesis_fails_in_s4(self, s4):
        """<(1 2 3 4)> is a maximal subgroup of a Sylow 2-subgroup of S4 without the property"""
        assert not maximal_hypothesis(s4, s4.whole, 2)

    def test_cyclic_hypothesis_in_s4(self, s4):
        """Order-3 subgroups of S4 have the partial Pi-property, <(1 2)(3 4)> does not"""
        assert cyclic_hypothesis(s4, s4.whole, 3)
        assert not cyclic_hypothesis(s4, s4.whole, 2)

    def test_abelian_group(self, c6):
        """Every subgroup of an abelian group is normal"""
        assert maximal_hypothesis(c6, c6.whole, 2)
        assert cyclic_hypothesis(c6, c6.whole, 3)


class TestStatements:
    """Test statement checks on named groups"""

    def test_p1_4_on_s4(self, s4):
        """E = S4 with p = 2 fails the maximal-subgroup hypothesis"""
        reports = check_statement(s4, "P1.4", bindings={"p": 2, "E": "#3|24"})
        assert len(reports) == 1
        assert reports[0].status == StatementStatus.HYPOTHESIS_FAILED

    def test_l2_14_on_c15(self):
        """C15 has cyclic Sylow subgroups and (15, p - 1) = 1 for p = 3, 5"""
        reports = check_statement(cyclic(15), StatementId.L2_14)
        assert [r.bindings["p"] for r in reports] == [3, 5]
        assert all(r.status == StatementStatus.VERIFIED for r in reports)

    def test_jordan_holder(self):
        """All chief series of C2^3 share one factor multiset"""
        reports = check_statement(elementary_abelian(2, 3), "JH")
        assert [r.status for r in reports] == [StatementStatus.VERIFIED]

    def test_sep_needs_subject(self, s4):
        """Without a subject SEP has no instances"""
        assert check_statement(s4, "SEP") == []

    def test_sep_on_transposition_fails(self, s4):
        """<(1 2)> has the Pi-property in S4, so it does not separate"""
        H = parse_subgroup(s4, "(1 2)")
        reports = check_statement(s4, "SEP", subject=H)
        assert reports[0].status == StatementStatus.COUNTEREXAMPLE

    @pytest.mark.slow
    def test_sep_on_example(self, ex12, hprime):
        """H' separates the two properties and both witnesses re-validate"""
        reports = check_statement(ex12, StatementId.SEP, subject=hprime)
        assert len(reports) == 1
        assert reports[0].status == StatementStatus.VERIFIED
        assert "[1, 25, 625, 1875]" in reports[0].details

    def test_bindings_filter(self, s4):
        reports = check_statement(s4, "P1.6", bindings={"p": 3})
        assert reports
        assert all(r.bindings["p"] == 3 for r in reports)


class TestNoCounterexamples:
    """Every statement stays free of counterexamples on small groups"""

    @pytest.mark.parametrize(
        "factory",
        [
            lambda: cyclic(6),
            lambda: dihedral(8),
            lambda: dihedral(12),
            lambda: elementary_abelian(3, 2),
            lambda: frobenius(7, 3),
            lambda: sl2(3),
        ],
    )
    def test_small_groups(self, factory):
        G = factory()
        reports = check_all(G)
        assert reports
        bad = [r for r in reports if r.status == StatementStatus.COUNTEREXAMPLE]
        assert bad == []

    def test_s4(self, s4):
        reports = check_all(s4)
        assert all(r.status != StatementStatus.COUNTEREXAMPLE for r in reports)
        assert {r.statement for r in reports} >= {"P1.4", "ThmA", "JH"}
