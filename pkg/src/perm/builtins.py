"""
Named group constructors used by the corpus
"""

from typing import Callable, Dict, List, Sequence, Tuple

from sympy import isprime, primitive_root

from src.core.exceptions import GroupFormatError
from src.perm.group import GroupHandle
from src.perm.permutation import Permutation
from src.perm.quotient import direct_product


def cyclic(n: int) -> GroupHandle:
    if n < 1:
        raise GroupFormatError("cyclic group needs n >= 1")
    gens = [Permutation(tuple((i + 1) % n for i in range(n)))] if n > 1 else []
    return GroupHandle(n, gens, name=f"C{n}")


def dihedral(order: int) -> GroupHandle:
    """Dihedral group of the given order (D8 has order 8)"""
    if order < 4 or order % 2:
        raise GroupFormatError("dihedral group needs an even order >= 4")
    n = order // 2
    if n == 2:
        gens = [Permutation.from_cycles([(1, 2), (3, 4)], 4), Permutation.from_cycles([(1, 3), (2, 4)], 4)]
        return GroupHandle(4, gens, name="D4")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return GroupHandle(n, [rotation, reflection], name=f"D{order}")


def symmetric(n: int) -> GroupHandle:
    if n < 1:
        raise GroupFormatError("symmetric group needs n >= 1")
    gens = []
    if n > 1:
        gens.append(Permutation.from_cycles([(1, 2)], n))
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(1, n + 1))], n))
    return GroupHandle(n, gens, name=f"S{n}")


def alternating(n: int) -> GroupHandle:
    if n < 1:
        raise GroupFormatError("alternating group needs n >= 1")
    gens = [Permutation.from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return GroupHandle(n, gens, name=f"A{n}")


def quaternion(order: int) -> GroupHandle:
    """
    Generalized quaternion group Q_{2^n} in its regular representation

    Elements x^i y^j (i mod m, j in {0, 1}, m = order/2) are numbered
    i + m*j, with y^2 = x^(m/2) and x^y = x^-1.
    """
    if order < 8 or order & (order - 1):
        raise GroupFormatError("quaternion group needs a power-of-two order >= 8")
    m = order // 2

    def multiply(a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
        i, j = a
        k, l = b
        exponent = i + (k if j == 0 else -k)
        if j + l == 2:
            return (exponent + m // 2) % m, 0
        return exponent % m, j + l

    def right_translation(b: Tuple[int, int]) -> Permutation:
        images = []
        for e in range(order):
            i, j = multiply((e % m, e // m), b)
            images.append(i + m * j)
        return Permutation(tuple(images))

    return GroupHandle(order, [right_translation((1, 0)), right_translation((0, 1))], name=f"Q{order}")


def elementary_abelian(p: int, k: int) -> GroupHandle:
    if not isprime(p) or k < 1:
        raise GroupFormatError("elementary abelian group needs a prime p and k >= 1")
    block = cyclic(p)
    G = block
    for _ in range(k - 1):
        G = direct_product(G, block)
    return GroupHandle(G.degree, G.generators, name=f"C{p}^{k}" if k > 1 else f"C{p}")


def frobenius(p: int, q: int) -> GroupHandle:
    """C_p x| C_q acting on Z_p by affine maps (q > 1 divides p - 1)"""
    if not isprime(p) or q < 2 or (p - 1) % q:
        raise GroupFormatError("frobenius group needs a prime p and q > 1 dividing p - 1")
    r = pow(int(primitive_root(p)), (p - 1) // q, p)
    translation = Permutation(tuple((i + 1) % p for i in range(p)))
    multiplier = Permutation(tuple((r * i) % p for i in range(p)))
    return GroupHandle(p, [translation, multiplier], name=f"C{p}:C{q}")


def sl2(p: int) -> GroupHandle:
    """SL(2, p) acting on the non-zero row vectors of GF(p)^2"""
    if not isprime(p):
        raise GroupFormatError("SL(2, p) needs a prime p")
    vectors = [(x, y) for y in range(p) for x in range(p) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def action(matrix: Sequence[Sequence[int]]) -> Permutation:
        (a, b), (c, d) = matrix
        return Permutation(tuple(index[((x * a + y * c) % p, (x * b + y * d) % p)] for x, y in vectors))

    return GroupHandle(len(vectors), [action(((1, 1), (0, 1))), action(((1, 0), (1, 1)))], name=f"SL(2,{p})")


def product(factors: List[GroupHandle]) -> GroupHandle:
    if not factors:
        raise GroupFormatError("direct product needs at least one factor")
    G = factors[0]
    for F in factors[1:]:
        G = direct_product(G, F)
    return G


def example12_generators() -> Dict[str, Permutation]:
    """
    Generators a, b, a', b', alpha of (L1 x L2) x| <alpha> on 50 points.

    Point (i, j) of Z5 x Z5 is numbered 1 + i + 5j in the first block and
    26 + i + 5j in the second; alpha maps (i, j) to (-j, i - j) on both.
    """
    def point(i: int, j: int, block: int) -> int:
        return (i % 5) + 5 * (j % 5) + 25 * block

    def on_blocks(move: Callable[[int, int], Tuple[int, int]], blocks: Sequence[int]) -> Permutation:
        images = list(range(50))
        for block in blocks:
            for j in range(5):
                for i in range(5):
                    images[point(i, j, block)] = point(*move(i, j), block)
        return Permutation(tuple(images))

    return {
        "a": on_blocks(lambda i, j: (i + 1, j), [0]),
        "b": on_blocks(lambda i, j: (i, j + 1), [0]),
        "a'": on_blocks(lambda i, j: (i + 1, j), [1]),
        "b'": on_blocks(lambda i, j: (i, j + 1), [1]),
        "alpha": on_blocks(lambda i, j: (-j, i - j), [0, 1]),
    }


def example12() -> GroupHandle:
    gens = example12_generators()
    return GroupHandle(50, [gens[k] for k in ("a", "b", "a'", "b'", "alpha")], name="ex12")


BUILTINS: Dict[str, Callable[..., GroupHandle]] = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "quaternion": quaternion,
    "elementary_abelian": elementary_abelian,
    "frobenius": frobenius,
    "sl2": sl2,
    "example12": example12,
}
