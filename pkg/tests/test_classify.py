"""
Tests for group classes, characteristic subgroups and formation hypercentres
"""

import pytest

from src.classify.characteristic import (
    CharKind,
    char_subgroup,
    fitting,
    frattini,
    fstar,
    fstar_p,
    hypercenter,
    layer,
    o_p,
    o_p_prime,
    o_upper_p,
    omega,
    psi,
    socle,
)
from src.classify.classes import GroupClass, group_class
from src.classify.formations import (
    FormationTag,
    all_tags,
    containing_u,
    containing_up,
    greedy_climb,
    hypercentre,
    hypercentre_report,
    quaternion_free,
)
from src.core.exceptions import NotASubgroupError
from src.lattice.normal_lattice import normal_lattice
from src.perm.builtins import cyclic, dihedral, elementary_abelian, frobenius, quaternion, sl2, symmetric
from src.perm.grp_format import parse_subgroup
from src.perm.quotient import quotient
from src.perm.sylow import sylow


class TestGroupClass:
    """Test class membership decisions"""

    @pytest.mark.parametrize(
        "cls, expected",
        [
            (GroupClass.ABELIAN, False),
            (GroupClass.NILPOTENT, False),
            (GroupClass.SOLVABLE, True),
            (GroupClass.SUPERSOLVABLE, False),
            (GroupClass.SIMPLE, False),
            (GroupClass.QUASINILPOTENT, False),
        ],
    )
    def test_s4(self, s4, cls, expected):
        """S4 is solvable but not supersolvable"""
        assert group_class(s4, cls) is expected

    def test_p_classes_of_s4(self, s4):
        """S4 is 3-supersolvable but not 2-supersolvable, and not 3-nilpotent"""
        assert group_class(s4, GroupClass.P_SUPERSOLVABLE, 3)
        assert not group_class(s4, GroupClass.P_SUPERSOLVABLE, 2)
        assert not group_class(s4, GroupClass.P_NILPOTENT, 3)
        assert group_class(s4, GroupClass.P_SOLVABLE, 2)

    def test_a5(self, a5):
        """A5 is simple and quasisimple, not solvable"""
        assert group_class(a5, GroupClass.SIMPLE)
        assert group_class(a5, GroupClass.QUASISIMPLE)
        assert group_class(a5, GroupClass.QUASINILPOTENT)
        assert not group_class(a5, GroupClass.SOLVABLE)
        assert not group_class(a5, GroupClass.P_SOLVABLE, 5)

    def test_sl25_quasisimple(self):
        """SL(2,5) is quasisimple but not simple"""
        G = sl2(5)
        assert group_class(G, GroupClass.QUASISIMPLE)
        assert not group_class(G, GroupClass.SIMPLE)

    def test_nilpotent_chain(self, q8, d8):
        """2-groups are nilpotent, hence supersolvable and solvable"""
        for G in (q8, d8):
            assert group_class(G, GroupClass.NILPOTENT)
            assert group_class(G, GroupClass.SUPERSOLVABLE)
            assert group_class(G, GroupClass.SOLVABLE)

    def test_frobenius_21(self):
        """C7:C3 is supersolvable but not nilpotent"""
        G = frobenius(7, 3)
        assert group_class(G, GroupClass.SUPERSOLVABLE)
        assert not group_class(G, GroupClass.NILPOTENT)
        assert group_class(G, GroupClass.P_NILPOTENT, 3)
        assert not group_class(G, GroupClass.P_NILPOTENT, 7)

    def test_example_group(self, ex12):
        """The example is 5-solvable but not supersolvable (its 5-chief factors have order 25)"""
        assert group_class(ex12, GroupClass.SOLVABLE)
        assert not group_class(ex12, GroupClass.SUPERSOLVABLE)
        assert group_class(ex12, GroupClass.P_SUPERSOLVABLE, 3)

    def test_section_matches_quotient(self, s4, s4_v4):
        """Deciding S4/V4 through the lattice agrees with the materialized quotient"""
        target = quotient(s4, s4_v4).target
        for cls in (GroupClass.NILPOTENT, GroupClass.SUPERSOLVABLE, GroupClass.ABELIAN):
            assert group_class(s4, cls, modulo=s4_v4) == group_class(target, cls)

    def test_missing_prime(self, s4):
        """p-classes need a prime"""
        with pytest.raises(ValueError):
            group_class(s4, GroupClass.P_NILPOTENT)


class TestCharacteristic:
    """Test characteristic subgroups"""

    def test_o_p_of_s4(self, s4):
        """O_2(S4) = V4, O_3(S4) = 1, O_2'(S4) = 1"""
        assert o_p(s4, 2).order == 4
        assert o_p(s4, 3).is_trivial
        assert o_p_prime(s4, 2).is_trivial

    def test_o_upper_p(self, s4):
        """O^2(S4) = A4 and O^3(S4) = S4"""
        assert o_upper_p(s4, 2).order == 12
        assert o_upper_p(s4, 3).is_whole

    def test_fitting(self, s4, c6):
        assert fitting(s4).order == 4
        assert fitting(c6).is_whole

    def test_hypercenter(self, s4, d8):
        """Z_inf(S4) = 1 and nilpotent groups are their own hypercentre"""
        assert hypercenter(s4).is_trivial
        assert hypercenter(d8).is_whole

    def test_frattini(self, s4, q8):
        assert frattini(s4).is_trivial
        assert frattini(q8).order == 2

    def test_socle(self, s4, ex12):
        assert socle(s4).order == 4
        assert socle(ex12).order == 625

    def test_layer_and_fstar(self, s4, a5):
        """Solvable groups have trivial layer and F* = F"""
        assert layer(s4).is_trivial
        assert fstar(s4) == fitting(s4)
        assert layer(a5).is_whole
        assert fstar(a5).is_whole

    def test_fstar_of_sl25(self):
        """SL(2,5) is quasisimple, so F* is everything"""
        G = sl2(5)
        assert fstar(G).is_whole
        assert fitting(G).order == 2

    def test_fstar_inside_fstar_p(self, s4):
        """F(G) <= F*(G) <= F*_p(G)"""
        for p in (2, 3):
            assert fitting(s4) <= fstar(s4) <= fstar_p(s4, p)

    def test_omega(self, q8):
        """Omega_1(Q8) is the centre, Omega_2(Q8) is Q8"""
        assert omega(q8, q8.whole, 1).order == 2
        assert omega(q8, q8.whole, 2).is_whole

    def test_omega_needs_p_group(self, s4):
        with pytest.raises(NotASubgroupError):
            omega(s4, s4.whole, 1)

    def test_psi(self, s4):
        """Psi_3(S4) = A4 and Psi_2(S4) = S4"""
        assert psi(s4, 3).order == 12
        assert psi(s4, 2).is_whole

    @pytest.mark.parametrize("kind, p, order", [("Z", None, 1), ("F", None, 4), ("Op", 2, 4), ("Soc", None, 4), ("Psi", 3, 12)])
    def test_char_subgroup_dispatch(self, s4, kind, p, order):
        """char_subgroup routes every kind"""
        assert char_subgroup(s4, CharKind(kind), p).order == order

    def test_char_subgroup_of_normal_subgroup(self, s4):
        """Z(A4) computed inside S4"""
        A4 = normal_lattice(s4).nodes[2]
        assert char_subgroup(s4, CharKind.CENTER, X=A4).is_trivial
        assert char_subgroup(s4, CharKind.FITTING, X=A4).order == 4


class TestFormations:
    """Test formation tags, F-centrality and hypercentres"""

    def test_tag_parse(self):
        assert FormationTag.parse("Up(3)") == FormationTag("Up", 3)
        assert FormationTag.parse("N").label == "N"
        with pytest.raises(ValueError):
            FormationTag.parse("Q")
        with pytest.raises(ValueError):
            FormationTag("Np", 4)

    def test_tag_families(self):
        """Containment families follow U in Up(p) and N in every tag"""
        assert containing_up(3) == [FormationTag("Up", 3)]
        assert FormationTag("U") in containing_u([2, 3])
        assert len(all_tags([2, 3])) == 6

    def test_supersolvable_hypercentre_of_s4(self, s4):
        """Z_U(S4) = 1: the bottom factor has order 4"""
        assert hypercentre(s4, FormationTag("U")).is_trivial

    def test_supersolvable_hypercentre_of_c6(self, c6):
        assert hypercentre(c6, FormationTag("U")).is_whole

    def test_nilpotent_hypercentre_matches_upper_central_series(self, s4, d8):
        """Z_N(G) = Z_inf(G)"""
        for G in (s4, d8, dihedral(12)):
            assert hypercentre(G, FormationTag("N")) == hypercenter(G)

    def test_local_hypercentre(self, s4):
        """Every chief factor of S4 is 3-supersolvably central"""
        assert hypercentre(s4, FormationTag("Up", 3)).is_whole

    def test_modulo(self, s4, s4_v4):
        """Z_U(S4/V4) pulls back to S4, since S4/V4 = S3 is supersolvable"""
        assert hypercentre(s4, FormationTag("U"), modulo=s4_v4).is_whole

    @pytest.mark.parametrize("factory", [lambda: symmetric(4), lambda: dihedral(12), lambda: elementary_abelian(3, 2), lambda: sl2(3)])
    def test_greedy_climb_agrees(self, factory):
        """Greedy climbing reaches the join of hypercentral nodes for every tag"""
        G = factory()
        for tag in all_tags([2, 3]):
            report = hypercentre_report(G, tag)
            assert report.join_is_hypercentral
            assert greedy_climb(G, tag) == report.subgroup

    def test_monotone_in_formation(self, s4):
        """U <= Up(p) and N <= Np(p) give nested hypercentres"""
        for p in (2, 3):
            assert hypercentre(s4, FormationTag("U")) <= hypercentre(s4, FormationTag("Up", p))
            assert hypercentre(s4, FormationTag("N")) <= hypercentre(s4, FormationTag("Np", p))


class TestQuaternionFree:
    """Test the quaternion-free predicate"""

    def test_dihedral_is_quaternion_free(self, d8):
        assert quaternion_free(d8, d8.whole)

    def test_q8_and_q16(self, q8):
        assert not quaternion_free(q8, q8.whole)
        G = quaternion(16)
        assert not quaternion_free(G, G.whole)

    def test_small_groups(self):
        G = cyclic(4)
        assert quaternion_free(G, G.whole)

    def test_sylow_of_s4(self, s4):
        assert quaternion_free(s4, sylow(s4, 2))

    def test_odd_group_rejected(self, s4):
        with pytest.raises(NotASubgroupError):
            quaternion_free(s4, parse_subgroup(s4, "(1 2 3)"))
