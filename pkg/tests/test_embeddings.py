"""
Tests for the predicate registry, edge diagnostics and witness re-verification
"""

import pytest

from src.core.exceptions import NotASubgroupError, UnknownPredicateError
from src.embeddings.predicates import (
    PredicateId,
    good_edge,
    holds,
    partial_pi,
    pi_property,
    predicate,
    recheck_chain,
    recheck_edge,
    recheck_violation,
)
from src.lattice.normal_lattice import normal_lattice
from src.perm.builtins import symmetric
from src.perm.enumeration import all_subgroups, enumerate_subgroups
from src.perm.grp_format import parse_subgroup
from src.perm.sylow import sylow


class TestPredicateId:
    """Test predicate name parsing"""

    @pytest.mark.parametrize("text", ["partial-pi", "partial_pi", "PARTIAL_PI", " Partial-Pi "])
    def test_spellings(self, text):
        assert PredicateId.parse(text) is PredicateId.PARTIAL_PI

    def test_pi_alias(self):
        assert PredicateId.parse("pi-property") is PredicateId.PI

    def test_unknown(self, s4, s4_c4):
        """Unknown names raise from parse and from the registry"""
        with pytest.raises(UnknownPredicateError):
            PredicateId.parse("nonsense")
        with pytest.raises(UnknownPredicateError):
            predicate(s4, s4_c4, "nonsense")


class TestChiefFactorPredicates:
    """Test the partial Pi-property, the Pi-property and CAP on small groups"""

    def test_cyclic_four_in_s4(self, s4, s4_c4):
        """<(1 2 3 4)> meets V4 in an order-2 subgroup with normalizer index 3"""
        report = partial_pi(s4, s4_c4)
        assert not report.verdict
        assert report.witness_chain == []
        first = report.violations[0]
        assert first.edge == (0, 1)
        assert first.section_order == 2
        assert first.index == 3
        assert first.pi == [2]

    def test_transposition_in_s3(self, s3):
        """<(1 2)> has the Pi-property in S3"""
        H = parse_subgroup(s3, "(1 2)")
        report = pi_property(s3, H)
        assert report.verdict
        assert report.witness_chain == [1, 3, 6]
        assert report.violations == []

    def test_transposition_in_s4(self, s4):
        """<(1 2)> avoids V4 and covers the top factors of S4"""
        H = parse_subgroup(s4, "(1 2)")
        assert holds(s4, H, "pi")
        assert holds(s4, H, "cap")

    def test_non_normal_klein_is_not_cap(self, s4, s4_v4prime):
        """<(1 3), (2 4)> neither covers nor avoids 1 < V4"""
        report = predicate(s4, s4_v4prime, PredicateId.CAP)
        assert not report.verdict
        assert report.violations[0].edge == (0, 1)
        assert not holds(s4, s4_v4prime, PredicateId.PARTIAL_CAP)

    def test_normal_shortcut(self, s4, s4_v4):
        """Normal subgroups hold every chief-factor predicate, witnessed by any chief series"""
        for pid in (PredicateId.PI, PredicateId.PARTIAL_PI, PredicateId.CAP, PredicateId.PARTIAL_CAP):
            report = predicate(s4, s4_v4, pid)
            assert report.verdict
            assert report.note == "normal"
            assert report.witness_chain == [1, 4, 12, 24]
        assert recheck_chain(s4, s4_v4, predicate(s4, s4_v4, PredicateId.PARTIAL_PI))

    def test_pi_implies_partial_pi_on_s4(self, s4):
        """Every subgroup of S4 with the Pi-property has the partial Pi-property"""
        for H in all_subgroups(s4):
            if holds(s4, H, PredicateId.PI):
                assert holds(s4, H, PredicateId.PARTIAL_PI)

    def test_report_subject(self, s4, s4_c4):
        report = predicate(s4, s4_c4, "partial-pi")
        assert report.predicate == "partial-pi"
        assert report.group == s4.name
        assert report.subject.order == 4
        assert report.subject.key == s4_c4.key

    def test_foreign_subgroup(self, s4):
        """Subgroups of another group are refused"""
        other = symmetric(3)
        with pytest.raises(NotASubgroupError):
            predicate(s4, other.whole, PredicateId.PI)


class TestPermutabilityPredicates:
    """Test the permutability family"""

    def test_q8_is_hamiltonian(self, q8):
        """Every subgroup of Q8 is quasinormal"""
        for H in all_subgroups(q8):
            assert holds(q8, H, PredicateId.QUASINORMAL)
            assert holds(q8, H, PredicateId.S_QUASINORMAL)

    def test_non_normal_transposition_in_s3(self, s3):
        """<(1 2)> does not permute with <(1 3)>"""
        H = parse_subgroup(s3, "(1 2)")
        report = predicate(s3, H, PredicateId.QUASINORMAL)
        assert not report.verdict
        assert report.partner is not None

    def test_quasinormal_implies_s_quasinormal(self, d8):
        for H in all_subgroups(d8):
            if holds(d8, H, PredicateId.QUASINORMAL):
                assert holds(d8, H, PredicateId.S_QUASINORMAL)

    def test_every_predicate_holds_for_normal_subgroups(self, s4, s4_v4):
        """V4 is normal in S4, so every registered property holds"""
        for pid in PredicateId:
            assert holds(s4, s4_v4, pid), pid.value


class TestEdgeDiagnostics:
    """Test single-edge decisions and their independent re-checks"""

    def test_good_edge_on_s4(self, s4, s4_c4):
        diagnostic = good_edge(s4, s4_c4, (1, 2))
        assert diagnostic.edge_orders == (4, 12)
        assert diagnostic.good

    def test_non_edge(self, s4, s4_c4):
        with pytest.raises(NotASubgroupError):
            good_edge(s4, s4_c4, (0, 2))

    def test_recheck_matches_cached_decision(self, s4):
        """The cache-free recomputation agrees with good_edge on every subgroup and edge"""
        lattice = normal_lattice(s4)
        for H in all_subgroups(s4):
            for lo, hi in lattice.edges:
                expected = good_edge(s4, H, (lo, hi)).good
                assert recheck_edge(s4, H, lattice.nodes[lo], lattice.nodes[hi]) == expected

    def test_recheck_chain_rejects_false_report(self, s4, s4_c4):
        assert not recheck_chain(s4, s4_c4, partial_pi(s4, s4_c4))

    def test_recheck_violation(self, s4, s4_c4):
        report = partial_pi(s4, s4_c4)
        assert all(recheck_violation(s4, s4_c4, v) for v in report.violations)


class TestSeparatingExample:
    """Test H' = <a, a'> in the order-1875 example"""

    def test_partial_pi_holds(self, ex12, hprime):
        """A chief series through L2 is good for H'"""
        report = partial_pi(ex12, hprime)
        assert report.verdict
        assert report.witness_chain == [1, 25, 625, 1875]
        assert recheck_chain(ex12, hprime, report)

    def test_pi_fails(self, ex12, hprime):
        """The bottom edge 1 < L1 has normalizer index 3 for the 5-section"""
        report = pi_property(ex12, hprime)
        assert not report.verdict
        bottom = [v for v in report.violations if v.edge[0] == 0]
        assert len(bottom) == 6
        assert any(v.index == 3 and v.pi == [5] for v in bottom)
        assert all(v.edge_orders == (1, 25) for v in bottom)
        assert all(recheck_violation(ex12, hprime, v) for v in report.violations)

    def test_bottom_edge_count(self, ex12, hprime):
        """20 of the 26 bottom edges are good for H'"""
        lattice = normal_lattice(ex12)
        bottom = [e for e in lattice.edges if e[0] == 0]
        assert len(bottom) == 26
        assert sum(good_edge(ex12, hprime, e).good for e in bottom) == 20

    def test_subgroup_order(self, hprime):
        assert hprime.order == 25

    @pytest.mark.slow
    def test_order_25_subgroups_of_a_sylow(self, ex12):
        """Every order-25 subgroup H of P has a chief series 1 < N < HN = P < G"""
        P = sylow(ex12, 5)
        assert P.order == 625
        candidates = [ex12.subgroup_from(S) for S in enumerate_subgroups(P.as_group(), orders=[25])]
        assert len(set(candidates)) >= 20
        sample = candidates[:30]
        for H in sample:
            assert H <= P
            report = partial_pi(ex12, H)
            assert report.verdict, H.describe()
            assert recheck_chain(ex12, H, report)
