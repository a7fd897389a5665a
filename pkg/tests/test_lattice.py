"""
Tests for the normal lattice, chief factors and filtered reachability
"""

import pytest

from src.core.exceptions import ChainExplosionError, NotASubgroupError
from src.lattice.normal_lattice import chief_factor, minimal_normals, normal_lattice
from src.lattice.reach import (
    all_maximal_chains,
    chain_orders,
    count_maximal_chains,
    jh_multiset,
    reach,
    reachable,
    solvable_radical,
    witness_chain,
)
from src.perm.builtins import cyclic, elementary_abelian, sl2, symmetric
from src.perm.enumeration import all_subgroups
from src.perm.operations import is_normal


class TestNormalLattice:
    """Test lattice construction and chief factors"""

    def test_s4_nodes(self, s4):
        """S4 has normal subgroups 1 < V4 < A4 < S4"""
        lattice = normal_lattice(s4)
        assert [n.order for n in lattice.nodes] == [1, 4, 12, 24]
        assert lattice.edges == [(0, 1), (1, 2), (2, 3)]

    def test_bottom_and_top(self, a5):
        """Node 0 is trivial and the last node is G"""
        lattice = normal_lattice(a5)
        assert lattice.nodes[lattice.bottom].is_trivial
        assert lattice.nodes[lattice.top].is_whole
        assert len(lattice) == 2

    def test_matches_brute_force(self, d8):
        """Nodes are exactly the normal subgroups found by filtering all subgroups"""
        lattice = normal_lattice(d8)
        brute = {S.mask for S in all_subgroups(d8) if is_normal(d8, S)}
        assert {n.mask for n in lattice.nodes} == brute

    def test_example_group_minimal_normals(self, ex12):
        """The example has 26 minimal normal subgroups of order 25, all inside the Sylow 5-subgroup"""
        minimal = minimal_normals(ex12)
        assert len(minimal) == 26
        assert {N.order for N in minimal} == {25}
        assert len(normal_lattice(ex12)) == 29

    def test_chief_factor_of_v4(self, s4):
        """S4 edge (1, V4): order 4, abelian, prime 2, centralizer V4"""
        factor = chief_factor(s4, (0, 1))
        assert factor.order == 4
        assert factor.is_abelian
        assert factor.prime == 2
        assert factor.centralizer.order == 4

    def test_top_factor_of_s4(self, s4):
        """S4 edge (A4, S4) is centralized by S4"""
        factor = chief_factor(s4, (2, 3))
        assert factor.order == 2
        assert factor.centralizer.is_whole

    def test_non_abelian_factor(self, a5):
        """A5 is one non-abelian chief factor with trivial centralizer"""
        factor = chief_factor(a5, (0, 1))
        assert factor.order == 60
        assert not factor.is_abelian
        assert factor.prime is None
        assert factor.centralizer.is_trivial

    def test_centralizers_are_normal(self, s4):
        """Every chief-factor centralizer is normal and contains the lower node"""
        lattice = normal_lattice(s4)
        for factor in lattice.factors():
            assert is_normal(s4, factor.centralizer)
            assert lattice.nodes[factor.lo] <= factor.centralizer

    def test_non_edge_rejected(self, s4):
        """Only cover edges are chief factors"""
        with pytest.raises(NotASubgroupError):
            chief_factor(s4, (0, 3))

    def test_non_normal_has_no_id(self, s4, s4_v4prime):
        """id_of refuses non-normal subgroups"""
        with pytest.raises(NotASubgroupError):
            normal_lattice(s4).id_of(s4_v4prime)


class TestReach:
    """Test reachability, chains and Jordan-Holder data"""

    def test_unique_chain_of_s4(self, s4):
        """S4 has exactly one chief series with factors 4, 3, 2"""
        lattice = normal_lattice(s4)
        assert count_maximal_chains(lattice) == 1
        assert chain_orders(lattice, witness_chain(lattice)) == [1, 4, 12, 24]
        assert jh_multiset(lattice) == [2, 3, 4]

    def test_v4_has_three_chains(self):
        """Each order-2 subgroup of V4 starts its own chain"""
        lattice = normal_lattice(elementary_abelian(2, 2))
        assert len(list(all_maximal_chains(lattice))) == 3

    def test_trivial_group(self):
        """The trivial group has the one-node chain"""
        lattice = normal_lattice(cyclic(1))
        assert list(all_maximal_chains(lattice)) == [(0,)]
        assert reach(lattice, lambda lo, hi: False).verdict

    def test_rejecting_everything(self, s4):
        """No accepted edge means no chain, and the frontier is the source"""
        result = reach(normal_lattice(s4), lambda lo, hi: False)
        assert not result.verdict
        assert result.frontier == [0]

    def test_blocked_edge_in_c6(self):
        """Blocking 1 < C2 still leaves 1 < C3 < C6"""
        G = cyclic(6)
        lattice = normal_lattice(G)
        two = next(i for i, n in enumerate(lattice.nodes) if n.order == 2)
        result = reach(lattice, lambda lo, hi: (lo, hi) != (0, two))
        assert result.verdict
        assert chain_orders(lattice, result.chain) == [1, 3, 6]

    def test_witness_prefers_smallest_node(self):
        """C6's canonical series goes through C2 first"""
        lattice = normal_lattice(cyclic(6))
        assert chain_orders(lattice, witness_chain(lattice)) == [1, 2, 6]

    def test_section_reach(self, s4):
        """Reach from V4 to S4 ignores edges below V4"""
        lattice = normal_lattice(s4)
        result = reach(lattice, lambda lo, hi: lo != 0, source=1)
        assert result.verdict
        assert result.chain == [1, 2, 3]

    def test_reachable_set(self, s4):
        """Accepting only the bottom edge reaches V4 and stops"""
        lattice = normal_lattice(s4)
        assert reachable(lattice, lambda lo, hi: lo == 0) == {0, 1}

    def test_diagnostics_are_kept(self, s4):
        """Tuple verdicts keep their payload per edge"""
        lattice = normal_lattice(s4)
        result = reach(lattice, lambda lo, hi: (True, f"{lo}-{hi}"))
        assert result.diagnostics[(0, 1)] == "0-1"

    def test_chain_cap(self):
        """Chain enumeration refuses lattices with more chains than the cap"""
        lattice = normal_lattice(elementary_abelian(2, 3))
        with pytest.raises(ChainExplosionError):
            list(all_maximal_chains(lattice, cap=5))

    def test_jordan_holder_invariance(self):
        """Every maximal chain of C2^3 has three factors of order 2"""
        lattice = normal_lattice(elementary_abelian(2, 3))
        chains = list(all_maximal_chains(lattice))
        assert len(chains) == 21
        for chain in chains:
            orders = chain_orders(lattice, list(chain))
            assert sorted(b // a for a, b in zip(orders, orders[1:])) == [2, 2, 2]


class TestSolvableRadical:
    """Test the solvable radical"""

    def test_solvable_group(self, s4):
        assert solvable_radical(s4).is_whole

    def test_simple_group(self, a5):
        assert solvable_radical(a5).is_trivial

    def test_sl25(self):
        """The solvable radical of SL(2,5) is its centre of order 2"""
        assert solvable_radical(sl2(5)).order == 2

    def test_s5(self):
        assert solvable_radical(symmetric(5)).is_trivial
