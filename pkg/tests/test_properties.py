"""
Property-based tests for permutation algebra and subgroup operations
"""

from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.perm import bits
from src.perm.builtins import symmetric
from src.perm.operations import (
    core,
    intersect,
    is_normal,
    join,
    normal_closure,
    normalizer,
    product_mask,
    set_product,
)
from src.perm.permutation import Permutation

S4 = symmetric(4)

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(n))).map(lambda images: Permutation(tuple(images)))
)
element_ids = st.lists(st.integers(min_value=0, max_value=S4.order - 1), max_size=3)


def same_degree(k: int):
    return st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(*[st.permutations(list(range(n))).map(lambda i: Permutation(tuple(i)))] * k)
    )


class TestPermutationAlgebra:
    """Group axioms and representation round trips"""

    @given(same_degree(3))
    def test_associative(self, triple):
        p, q, r = triple
        assert (p * q) * r == p * (q * r)

    @given(permutations)
    def test_inverse(self, p):
        identity = Permutation.identity(p.degree)
        assert p * p.inverse() == identity
        assert p.inverse() * p == identity

    @given(permutations)
    def test_cycles_round_trip(self, p):
        assert Permutation.from_cycles(p.cycles(), p.degree) == p

    @given(permutations)
    def test_order(self, p):
        """p^order is the identity"""
        power = Permutation.identity(p.degree)
        for _ in range(p.order()):
            power = power * p
        assert power.is_identity()

    @given(same_degree(2))
    def test_right_action(self, pair):
        """p * q sends i to q(p(i))"""
        p, q = pair
        assert all((p * q).images[i] == q.images[p.images[i]] for i in range(p.degree))


class TestSubgroupInvariants:
    """Lattice operations on random subgroups of S4"""

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(element_ids, element_ids)
    def test_lagrange_and_meets(self, a, b):
        H, K = S4.close(a), S4.close(b)
        assert S4.order % H.order == 0
        M = intersect(S4, H, K)
        assert H.order % M.order == 0 and K.order % M.order == 0
        J = join(S4, H, K)
        assert H <= J and K <= J

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(element_ids, element_ids)
    def test_product_set_size(self, a, b):
        """|HK| = |H||K|/|H n K|, and HK is a subgroup iff it equals <H, K>"""
        H, K = S4.close(a), S4.close(b)
        size, is_subgroup = set_product(S4, H, K)
        mask = product_mask(S4, H, K)
        assert bits.size(mask) == size
        assert is_subgroup == (mask == join(S4, H, K).mask)

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(element_ids)
    def test_core_and_closure(self, a):
        H = S4.close(a)
        C, N = core(S4, H), normal_closure(S4, H)
        assert C <= H <= N
        assert is_normal(S4, C) and is_normal(S4, N)
        assert H <= normalizer(S4, H)
