"""
Subgroup operations inside a GroupHandle

Every function takes the ambient handle first and works on element ids and
bitmasks, so results are SubgroupRefs of the same parent.
"""

from typing import Iterable, List, Optional, Set, Tuple, Union

from sympy import factorint, primefactors

from src.core.exceptions import NotASubgroupError
from src.perm import bits
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.permutation import Permutation


# Arithmetic helpers

def primes_of(n: int) -> List[int]:
    return [int(p) for p in primefactors(n)]


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n"""
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorint(n)) == 1


def is_p_number(n: int, p: int) -> bool:
    return n == p_part(n, p)


def is_pi_number(n: int, pi: Iterable[int]) -> bool:
    """True iff every prime divisor of n lies in pi (1 is a pi-number for every pi)"""
    allowed = set(pi)
    return all(q in allowed for q in primes_of(n))


def is_p_group(H: SubgroupRef, p: Optional[int] = None) -> bool:
    if H.order == 1:
        return True
    if p is None:
        return is_prime_power(H.order)
    return is_p_number(H.order, p)


def require_p_group(H: SubgroupRef) -> int:
    """Prime of a non-trivial p-group, or NotASubgroupError"""
    if not is_prime_power(H.order):
        raise NotASubgroupError(f"subgroup of order {H.order} is not a non-trivial p-group")
    return primes_of(H.order)[0]


# Lattice operations on subgroups

def _check_parent(G: GroupHandle, *subs: SubgroupRef) -> None:
    for s in subs:
        if s.parent is not G:
            raise NotASubgroupError(f"{s} does not belong to {G.name}")


def intersect(G: GroupHandle, H: SubgroupRef, K: SubgroupRef) -> SubgroupRef:
    _check_parent(G, H, K)
    if H <= K:
        return H
    if K <= H:
        return K
    return G.from_mask(H.mask & K.mask)


def join(G: GroupHandle, A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    """Subgroup generated by A and B"""
    _check_parent(G, A, B)
    if B <= A:
        return A
    if A <= B:
        return B
    if A.order < B.order:
        A, B = B, A
    return G.close(B.generators, base=A)


def join_all(G: GroupHandle, subs: Iterable[SubgroupRef]) -> SubgroupRef:
    result = G.trivial
    for s in subs:
        result = join(G, result, s)
    return result


def cyclic_subgroup(G: GroupHandle, x: int) -> SubgroupRef:
    mask = 1
    y = x
    while y != 0:
        mask |= 1 << y
        y = G.mul(y, x)
    return SubgroupRef(G, mask, (x,) if x else ())


def set_product(G: GroupHandle, H: SubgroupRef, K: SubgroupRef) -> Tuple[int, bool]:
    """
    Size of the product set HK and whether it is a subgroup

    HK is a subgroup exactly when it fills <H, K>, so the closure order
    decides it without materializing the product set.
    """
    _check_parent(G, H, K)
    size = H.order * K.order // intersect(G, H, K).order
    if H <= K or K <= H:
        return size, True
    return size, join(G, H, K).order == size


def product_mask(G: GroupHandle, H: SubgroupRef, K: SubgroupRef) -> int:
    """Members of the product set HK as a mask (union of right cosets Hk)"""
    mask = 0
    covered = 0
    for k in K.elements:
        if (covered >> k) & 1:
            continue
        coset = bits.mask_of(G.mul(h, k) for h in H.elements)
        mask |= coset
        covered |= coset & K.mask
    return mask


def permutes(G: GroupHandle, H: SubgroupRef, K: SubgroupRef) -> bool:
    return set_product(G, H, K)[1]


# Conjugation

def is_normal(G: GroupHandle, H: SubgroupRef, within: Optional[SubgroupRef] = None) -> bool:
    """True iff H is normalized by ``within`` (G by default)"""
    ambient = within.generators if within is not None else G.generator_ids
    for g in ambient:
        table = G.conj_table(g)
        for h in H.generators:
            if not (H.mask >> table[h]) & 1:
                return False
    return True


def normal_closure(G: GroupHandle, H: SubgroupRef, within: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Smallest subgroup containing H that is normalized by ``within`` (G by default)"""
    ambient = within.generators if within is not None else G.generator_ids
    N = H
    queue = list(H.generators)
    while queue:
        x = queue.pop()
        for g in ambient:
            y = G.conj(x, g)
            if not (N.mask >> y) & 1:
                N = G.close([y], base=N)
                queue.append(y)
    return N


def conjugate(G: GroupHandle, H: SubgroupRef, g: int) -> SubgroupRef:
    table = G.conj_table(g)
    return SubgroupRef(G, G.conj_mask(H.mask, g), tuple(table[h] for h in H.generators))


def conjugate_masks(G: GroupHandle, H: SubgroupRef) -> List[int]:
    """Orbit of H's mask under conjugation by G"""
    seen = {H.mask}
    orbit = [H.mask]
    k = 0
    while k < len(orbit):
        mask = orbit[k]
        k += 1
        for g in G.generator_ids:
            image = G.conj_mask(mask, g)
            if image not in seen:
                seen.add(image)
                orbit.append(image)
    return orbit


def conjugates(G: GroupHandle, H: SubgroupRef) -> List[SubgroupRef]:
    """All G-conjugates of H in canonical order"""
    return sorted((G.from_mask(m) for m in conjugate_masks(G, H)), key=lambda s: s.sort_key)


def normalizer_index(G: GroupHandle, H: SubgroupRef) -> int:
    """|G : N_G(H)|, read off as the number of conjugates"""
    if is_normal(G, H):
        return 1
    return len(conjugate_masks(G, H))


def normalizer(G: GroupHandle, H: SubgroupRef) -> SubgroupRef:
    """N_G(H) by element filter"""
    _check_parent(G, H)
    if is_normal(G, H):
        return G.whole
    mask = 0
    for g in range(G.order):
        if all((H.mask >> G.conj(h, g)) & 1 for h in H.generators):
            mask |= 1 << g
    return G.from_mask(mask)


def centralizer(G: GroupHandle, S: Union[SubgroupRef, Iterable[int]]) -> SubgroupRef:
    """C_G(S) by element filter; S is a subgroup or a set of element ids"""
    targets = list(S.generators) if isinstance(S, SubgroupRef) else sorted(set(S))
    mask = 0
    for g in range(G.order):
        if all(G.mul(g, s) == G.mul(s, g) for s in targets):
            mask |= 1 << g
    return G.from_mask(mask)


def center(G: GroupHandle) -> SubgroupRef:
    return G.cached("center", lambda: centralizer(G, G.generator_ids))


def core(G: GroupHandle, H: SubgroupRef) -> SubgroupRef:
    """H_G, the intersection of all conjugates of H"""
    if is_normal(G, H):
        return H
    mask = H.mask
    for m in conjugate_masks(G, H):
        mask &= m
    return G.from_mask(mask)


def core_and_closure(G: GroupHandle, H: SubgroupRef) -> Tuple[SubgroupRef, SubgroupRef]:
    """(H_G, H^G); H_G <= H <= H^G, both normal"""
    _check_parent(G, H)
    return core(G, H), normal_closure(G, H)


# Commutators

def commutator(G: GroupHandle, A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    """[A, B]: generator commutators closed under conjugation by <A, B>"""
    _check_parent(G, A, B)
    gens = [G.commutator_of(a, b) for a in A.generators for b in B.generators]
    C = G.close(g for g in gens if g != 0)
    return normal_closure(G, C, within=join(G, A, B))


def derived_subgroup(G: GroupHandle, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    X = X if X is not None else G.whole
    return commutator(G, X, X)


def derived_series(G: GroupHandle, X: Optional[SubgroupRef] = None) -> List[SubgroupRef]:
    """X >= X' >= X'' >= ... ending at the first term equal to its derived subgroup"""
    series = [X if X is not None else G.whole]
    while True:
        nxt = derived_subgroup(G, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_abelian(G: GroupHandle, X: Optional[SubgroupRef] = None) -> bool:
    gens = X.generators if X is not None else G.generator_ids
    return all(G.mul(a, b) == G.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def is_perfect(G: GroupHandle, X: Optional[SubgroupRef] = None) -> bool:
    X = X if X is not None else G.whole
    return derived_subgroup(G, X) == X


def subnormal_closure_test(G: GroupHandle, K: SubgroupRef, within: Optional[SubgroupRef] = None) -> bool:
    """Descend G >= K^G >= K^(K^G) >= ... and report whether the chain reaches K"""
    _check_parent(G, K)
    current = within if within is not None else G.whole
    if not K <= current:
        raise NotASubgroupError("subgroup is not contained in the ambient group")
    while True:
        if current == K:
            return True
        nxt = normal_closure(G, K, within=current)
        if nxt == current:
            return False
        current = nxt


# Elements

def conjugacy_classes(G: GroupHandle) -> List[List[int]]:
    """Classes as sorted element-id lists, ordered by their smallest member"""
    def build() -> List[List[int]]:
        tables = [G.conj_table(g) for g in G.generator_ids]
        label = [-1] * G.order
        classes: List[List[int]] = []
        for x in range(G.order):
            if label[x] >= 0:
                continue
            label[x] = len(classes)
            orbit = [x]
            k = 0
            while k < len(orbit):
                y = orbit[k]
                k += 1
                for table in tables:
                    z = table[y]
                    if label[z] < 0:
                        label[z] = len(classes)
                        orbit.append(z)
            classes.append(sorted(orbit))
        return classes

    return G.cached("classes", build)


def element_order(g: Permutation) -> int:
    return g.order()


def elements_of_order(G: GroupHandle, orders: Set[int], within: Optional[SubgroupRef] = None) -> List[int]:
    pool = within.elements if within is not None else range(G.order)
    return [x for x in pool if G.element_orders[x] in orders]


def p_elements(G: GroupHandle, p: int, within: Optional[SubgroupRef] = None) -> List[int]:
    """Elements (identity included) whose order is a power of p"""
    pool = within.elements if within is not None else range(G.order)
    return [x for x in pool if is_p_number(G.element_orders[x], p)]

