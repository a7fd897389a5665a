"""
Statement checkers

Each statement enumerates its parameter bindings (primes, normal
subgroups E and X, formation tags, Sylow subgroups) exhaustively, decides
the hypothesis and, when it holds, the conclusion. A failing conclusion is
reported as a COUNTEREXAMPLE row.
"""

import time
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from src.classify.characteristic import fstar, fstar_p, hypercenter, o_p_prime, omega, psi
from src.classify.classes import GroupClass, group_class
from src.classify.formations import (
    FormationTag,
    all_tags,
    containing_u,
    containing_up,
    hypercentre,
    quaternion_free,
)
from src.core.exceptions import CapExceededError, UnknownStatementError
from src.embeddings.context import context_for
from src.embeddings.predicates import PredicateId, holds, partial_pi, pi_property, recheck_chain, recheck_violation
from src.lattice.reach import all_maximal_chains, chain_orders
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import (
    center,
    conjugates,
    cyclic_subgroup,
    derived_subgroup,
    elements_of_order,
    intersect,
    is_abelian,
    is_normal,
    is_p_group,
    normalizer,
    p_part,
    primes_of,
)
from src.perm.quotient import quotient
from src.perm.sylow import maximal_subgroups_of_p_group, sylow, sylow_of_subgroup
from src.utils.logging import verify_logger as logger
from src.verify.models import StatementStatus, VerifierReport


class StatementId(str, Enum):
    """Statements the harness checks"""
    P1_3 = "P1.3"
    P1_4 = "P1.4"
    P1_5 = "P1.5"
    P1_6 = "P1.6"
    P1_7 = "P1.7"
    THM_A = "ThmA"
    THM_B = "ThmB"
    THM_C = "ThmC"
    C1_8 = "C1.8"
    C1_9 = "C1.9"
    L2_3 = "L2.3"
    L2_4 = "L2.4"
    L2_6 = "L2.6"
    L2_12 = "L2.12"
    L2_13 = "L2.13"
    L2_14 = "L2.14"
    L2_15 = "L2.15"
    JH = "JH"
    SEP = "SEP"

    @classmethod
    def parse(cls, text: str) -> "StatementId":
        for sid in cls:
            if sid.value.lower() == text.strip().lower():
                return sid
        raise UnknownStatementError(f"unknown statement {text!r}")


@dataclass
class Instance:
    """One binding of a statement: hypothesis and conclusion as thunks"""
    bindings: Dict[str, Any]
    hypothesis: Callable[[], bool]
    conclusion: Callable[[], Tuple[bool, str]]


InstanceSource = Callable[[GroupHandle, Optional[SubgroupRef]], Iterator[Instance]]
_U = FormationTag("U")


# Binding helpers

def _label(G: GroupHandle, S: SubgroupRef) -> str:
    lattice = context_for(G).lattice
    if lattice.is_node(S):
        return f"#{lattice.id_of(S)}|{S.order}"
    return f"{S.order}:{S.key}"


def _nodes(G: GroupHandle) -> List[SubgroupRef]:
    return context_for(G).lattice.nodes


def _normal_p_subgroups(G: GroupHandle, p: int) -> List[SubgroupRef]:
    return [N for N in _nodes(G) if not N.is_trivial and is_p_group(N, p)]


def _fstar(G: GroupHandle, E: SubgroupRef) -> SubgroupRef:
    return G.cached(f"fstar:{E.key}", lambda: fstar(G, E))


def _sylow_family(G: GroupHandle, X: SubgroupRef, p: int) -> List[SubgroupRef]:
    """All Sylow p-subgroups of a normal subgroup X"""
    P = sylow_of_subgroup(G, X, p)
    return conjugates(G, P)


def _cyclic_in(G: GroupHandle, X: SubgroupRef, orders) -> List[SubgroupRef]:
    seen = {}
    for x in elements_of_order(G, set(orders), within=X):
        C = cyclic_subgroup(G, x)
        seen.setdefault(C.mask, C)
    return sorted(seen.values(), key=lambda s: s.sort_key)


def _partial(G: GroupHandle, H: SubgroupRef) -> bool:
    return holds(G, H, PredicateId.PARTIAL_PI)


def maximal_hypothesis(G: GroupHandle, X: SubgroupRef, p: int) -> bool:
    """Every maximal subgroup of every Sylow p-subgroup of X has the partial Pi-property in G"""
    checked = set()
    for P in _sylow_family(G, X, p):
        for M in maximal_subgroups_of_p_group(G, P):
            if M.mask in checked:
                continue
            checked.add(M.mask)
            if not _partial(G, M):
                return False
    return True


def cyclic_hypothesis(G: GroupHandle, X: SubgroupRef, p: int) -> bool:
    """
    Every cyclic subgroup of prime order p of a Sylow p-subgroup of X, and
    of order 4 when those Sylow 2-subgroups are not quaternion-free, has the
    partial Pi-property in G
    """
    orders = {p}
    if p == 2 and not quaternion_free(G, sylow_of_subgroup(G, X, 2)):
        orders.add(4)
    return all(_partial(G, C) for C in _cyclic_in(G, X, orders))


def _as_group(G: GroupHandle, S: SubgroupRef) -> GroupHandle:
    return G if S.is_whole else S.as_group()


def _contains(tag: FormationTag, G: GroupHandle) -> Tuple[bool, str]:
    ok = tag.contains(G)
    return ok, f"G {'in' if ok else 'not in'} {tag}"


def _below(A: SubgroupRef, B: SubgroupRef, what: str) -> Tuple[bool, str]:
    ok = A <= B
    return ok, f"{what}: order {A.order} {'<=' if ok else 'not <='} order {B.order}"


# Propositions

def _p1_3(G, subject):
    for p in primes_of(G.order):
        for P in _normal_p_subgroups(G, p):
            yield Instance(
                {"p": p, "P": _label(G, P)},
                lambda P=P, p=p: maximal_hypothesis(G, P, p),
                lambda P=P: _below(P, hypercentre(G, _U), "P <= Z_U(G)"),
            )


def _p1_4(G, subject):
    for E in _nodes(G):
        for p in primes_of(E.order):
            def conclusion(E=E, p=p):
                if p_part(E.order, p) == p:
                    return True, "|E|_p = p"
                return _below(E, hypercentre(G, FormationTag("Up", p)), "E <= Z_Up(G)")

            yield Instance({"p": p, "E": _label(G, E)}, lambda E=E, p=p: maximal_hypothesis(G, E, p), conclusion)


def _p1_5(G, subject):
    for p in primes_of(G.order):
        for P in _normal_p_subgroups(G, p):
            yield Instance(
                {"p": p, "P": _label(G, P)},
                lambda P=P, p=p: cyclic_hypothesis(G, P, p),
                lambda P=P: _below(P, hypercentre(G, _U), "P <= Z_U(G)"),
            )


def _p1_6(G, subject):
    for E in _nodes(G):
        for p in primes_of(E.order):
            yield Instance(
                {"p": p, "E": _label(G, E)},
                lambda E=E, p=p: cyclic_hypothesis(G, E, p),
                lambda E=E, p=p: _below(E, hypercentre(G, FormationTag("Up", p)), "E <= Z_Up(G)"),
            )


def _p1_7(G, subject):
    for E in _nodes(G):
        for p in primes_of(E.order):
            if gcd(E.order, p - 1) != 1:
                continue

            def conclusion(E=E, p=p):
                ok = group_class(_as_group(G, E), GroupClass.P_NILPOTENT, p)
                return ok, f"E {'is' if ok else 'is not'} {p}-nilpotent"

            yield Instance(
                {"p": p, "E": _label(G, E)},
                lambda E=E, p=p: maximal_hypothesis(G, E, p) or cyclic_hypothesis(G, E, p),
                conclusion,
            )


# Theorems

def _e_x_pairs(G: GroupHandle) -> Iterator[Tuple[SubgroupRef, SubgroupRef]]:
    """Normal E, X with F*(E) <= X <= E"""
    nodes = _nodes(G)
    for E in nodes:
        FE = _fstar(G, E)
        for X in nodes:
            if FE <= X <= E:
                yield E, X


def _theorem_a_conclusion(G: GroupHandle, tag: FormationTag, E: SubgroupRef, X: SubgroupRef, p: int):
    if tag.contains(G):
        return True, "branch 1: G in F"
    XG = _as_group(G, X)
    epi = quotient(XG, o_p_prime(XG, p))
    Q = epi.target
    if not (group_class(Q, GroupClass.QUASISIMPLE) and p_part(Q.order, p) == p):
        return False, "neither branch holds"
    if X <= fstar_p(G, p, E):
        if not group_class(Q, GroupClass.SIMPLE):
            return False, "branch 2 holds but X/O_p'(X) is not simple although X <= F*_p(E)"
        return True, "branch 2: X/O_p'(X) simple with Sylow p of order p"
    return True, "branch 2: X/O_p'(X) quasisimple with Sylow p of order p"


def _thm_a(G, subject):
    for E, X in _e_x_pairs(G):
        for p in primes_of(X.order):
            for tag in containing_up(p):
                yield Instance(
                    {"p": p, "F": tag.label, "E": _label(G, E), "X": _label(G, X)},
                    lambda E=E, X=X, p=p, tag=tag: tag.contains(G, modulo=E) and maximal_hypothesis(G, X, p),
                    lambda E=E, X=X, p=p, tag=tag: _theorem_a_conclusion(G, tag, E, X, p),
                )


def _thm_b(G, subject):
    for E in _nodes(G):
        FE = _fstar(G, E)
        for p in primes_of(FE.order):
            for tag in containing_up(p):
                yield Instance(
                    {"p": p, "F": tag.label, "E": _label(G, E)},
                    lambda E=E, FE=FE, p=p, tag=tag: tag.contains(G, modulo=E) and cyclic_hypothesis(G, FE, p),
                    lambda tag=tag: _contains(tag, G),
                )


def _non_cyclic_sylow_hypothesis(G: GroupHandle, X: SubgroupRef) -> bool:
    for q in primes_of(X.order):
        P = sylow_of_subgroup(G, X, q)
        if any(G.element_orders[x] == P.order for x in P.elements):
            continue
        if not (maximal_hypothesis(G, X, q) or cyclic_hypothesis(G, X, q)):
            return False
    return True


def _thm_c(G, subject):
    for E, X in _e_x_pairs(G):
        for tag in containing_u(primes_of(G.order)):
            yield Instance(
                {"F": tag.label, "E": _label(G, E), "X": _label(G, X)},
                lambda E=E, X=X, tag=tag: tag.contains(G, modulo=E) and _non_cyclic_sylow_hypothesis(G, X),
                lambda tag=tag: _contains(tag, G),
            )


# Corollaries

def _c1_8(G, subject):
    for E in _nodes(G):
        for p in primes_of(E.order):
            tag = FormationTag("Np", p)

            def hypothesis(E=E, p=p, tag=tag):
                if not tag.contains(G, modulo=E):
                    return False
                for P in _sylow_family(G, E, p):
                    if not group_class(_as_group(G, normalizer(G, P)), GroupClass.P_NILPOTENT, p):
                        return False
                return maximal_hypothesis(G, E, p) or cyclic_hypothesis(G, E, p)

            yield Instance({"p": p, "F": tag.label, "E": _label(G, E)}, hypothesis, lambda tag=tag: _contains(tag, G))


def _c1_9(G, subject):
    tag = FormationTag("N")
    for E in _nodes(G):
        def hypothesis(E=E):
            if not tag.contains(G, modulo=E):
                return False
            FE = _fstar(G, E)
            Z = hypercenter(G)
            primes = primes_of(FE.order)
            if not all((Z.mask >> x) & 1 for x in elements_of_order(G, set(primes), within=FE)):
                return False
            if 2 in primes and not quaternion_free(G, sylow_of_subgroup(G, FE, 2)):
                return all(_partial(G, C) for C in _cyclic_in(G, FE, {4}))
            return True

        yield Instance({"F": tag.label, "E": _label(G, E)}, hypothesis, lambda: _contains(tag, G))


# Lemmas

def _l2_3(G, subject):
    for p in primes_of(G.order):
        in_up = lambda p=p: group_class(G, GroupClass.P_SUPERSOLVABLE, p)

        def derived_nilpotent(p=p):
            ok = group_class(_as_group(G, derived_subgroup(G)), GroupClass.P_NILPOTENT, p)
            return ok, f"G' {'is' if ok else 'is not'} {p}-nilpotent"

        def unique_sylow(p=p):
            ok = is_normal(G, sylow(G, p))
            return ok, f"Sylow {p}-subgroup {'is' if ok else 'is not'} unique"

        yield Instance({"p": p, "clause": 1}, in_up, derived_nilpotent)
        yield Instance(
            {"p": p, "clause": 2},
            lambda p=p, in_up=in_up: in_up() and o_p_prime(G, p).is_trivial,
            unique_sylow,
        )


def _l2_4(G, subject):
    for p in primes_of(G.order):
        P = sylow(G, p)

        def conclusion(P=P):
            meet = intersect(G, intersect(G, derived_subgroup(G), center(G)), P)
            return meet.is_trivial, f"G' n Z(G) n P has order {meet.order}"

        yield Instance({"p": p}, lambda P=P: is_abelian(G, P), conclusion)


def _l2_6(G, subject):
    for tag in all_tags(primes_of(G.order)):
        for E in _nodes(G):
            yield Instance(
                {"F": tag.label, "E": _label(G, E)},
                lambda E=E, tag=tag: _fstar(G, E) <= hypercentre(G, tag),
                lambda E=E, tag=tag: _below(E, hypercentre(G, tag), "E <= Z_F(G)"),
            )


def _l2_12(G, subject):
    for tag in all_tags(primes_of(G.order)):
        for K in _nodes(G):
            for p in primes_of(G.order):
                def conclusion(K=K, p=p, tag=tag):
                    N = o_p_prime(G, p, K)
                    ok = tag.contains(G, modulo=N)
                    return ok, f"G/O_p'(K) {'in' if ok else 'not in'} {tag} (|O_p'(K)| = {N.order})"

                yield Instance(
                    {"p": p, "F": tag.label, "K": _label(G, K)},
                    lambda K=K, p=p, tag=tag: tag.contains(G, modulo=K) and psi(G, p, K) <= hypercentre(G, tag),
                    conclusion,
                )


def _l2_13(G, subject):
    if G.order % 2:
        return
    P = sylow(G, 2)

    def conclusion():
        ok = group_class(G, GroupClass.P_NILPOTENT, 2)
        return ok, f"G {'is' if ok else 'is not'} 2-nilpotent"

    yield Instance(
        {"p": 2},
        lambda: quaternion_free(G, P) and omega(G, P, 1) <= center(G),
        conclusion,
    )


def _l2_14(G, subject):
    for p in primes_of(G.order):
        P = sylow(G, p)

        def conclusion(p=p):
            ok = group_class(G, GroupClass.P_NILPOTENT, p)
            return ok, f"G {'is' if ok else 'is not'} {p}-nilpotent"

        yield Instance(
            {"p": p},
            lambda P=P, p=p: gcd(G.order, p - 1) == 1 and any(G.element_orders[x] == P.order for x in P.elements),
            conclusion,
        )


def _l2_15(G, subject):
    for p in primes_of(G.order):
        if p == 2:
            continue
        for P in _normal_p_subgroups(G, p):
            def hypothesis(P=P, p=p):
                Z = hypercenter(G)
                return all((Z.mask >> x) & 1 for x in elements_of_order(G, {p}, within=P))

            yield Instance(
                {"p": p, "P": _label(G, P)},
                hypothesis,
                lambda P=P: _below(P, hypercenter(G), "P <= Z_inf(G)"),
            )


# Structural checks

def _jh(G, subject):
    lattice = context_for(G).lattice

    def conclusion():
        shapes = set()
        for chain in all_maximal_chains(lattice):
            orders = chain_orders(lattice, list(chain))
            shapes.add(tuple(sorted(b // a for a, b in zip(orders, orders[1:]))))
        return len(shapes) == 1, f"{len(shapes)} distinct factor multisets: {sorted(shapes)[:2]}"

    yield Instance({}, lambda: True, conclusion)


def _sep(G, subject):
    if subject is None:
        return
    H = subject

    def conclusion():
        partial = partial_pi(G, H)
        full = pi_property(G, H)
        if not partial.verdict or full.verdict:
            return False, f"partial-pi {partial.verdict}, pi {full.verdict}"
        if not recheck_chain(G, H, partial):
            return False, "witness chain does not re-validate"
        if not full.violations or not all(recheck_violation(G, H, v) for v in full.violations):
            return False, "violating edge does not re-validate"
        first = full.violations[0]
        return True, (
            f"chain {partial.witness_chain}; violating edge {first.edge} "
            f"with index {first.index} and pi {first.pi}"
        )

    yield Instance({"H": _label(G, H)}, lambda: True, conclusion)


_SOURCES: Dict[StatementId, InstanceSource] = {
    StatementId.P1_3: _p1_3,
    StatementId.P1_4: _p1_4,
    StatementId.P1_5: _p1_5,
    StatementId.P1_6: _p1_6,
    StatementId.P1_7: _p1_7,
    StatementId.THM_A: _thm_a,
    StatementId.THM_B: _thm_b,
    StatementId.THM_C: _thm_c,
    StatementId.C1_8: _c1_8,
    StatementId.C1_9: _c1_9,
    StatementId.L2_3: _l2_3,
    StatementId.L2_4: _l2_4,
    StatementId.L2_6: _l2_6,
    StatementId.L2_12: _l2_12,
    StatementId.L2_13: _l2_13,
    StatementId.L2_14: _l2_14,
    StatementId.L2_15: _l2_15,
    StatementId.JH: _jh,
    StatementId.SEP: _sep,
}


def _run_instance(G: GroupHandle, sid: StatementId, instance: Instance) -> VerifierReport:
    started = time.perf_counter()
    try:
        if not instance.hypothesis():
            status, details = StatementStatus.HYPOTHESIS_FAILED, None
        else:
            ok, details = instance.conclusion()
            status = StatementStatus.VERIFIED if ok else StatementStatus.COUNTEREXAMPLE
    except CapExceededError as e:
        logger.warning(f"{sid.value} on {G.name} {instance.bindings}: {e}")
        status, details = StatementStatus.SKIPPED, str(e)
    elapsed = (time.perf_counter() - started) * 1000
    if status == StatementStatus.COUNTEREXAMPLE:
        logger.error(f"COUNTEREXAMPLE to {sid.value} in {G.name} {instance.bindings}: {details}")
    return VerifierReport(
        statement=sid.value,
        group=G.name,
        bindings=instance.bindings,
        status=status,
        details=details,
        elapsed_ms=round(elapsed, 3),
    )


def check_statement(
    G: GroupHandle,
    sid,
    bindings: Optional[Dict[str, Any]] = None,
    subject: Optional[SubgroupRef] = None,
) -> List[VerifierReport]:
    """
    Check a statement on every binding of its parameters

    Args:
        G: the group
        sid: StatementId or its name
        bindings: keep only instances whose bindings contain these items
        subject: separating subgroup for SEP

    Returns:
        One report per binding, in enumeration order
    """
    sid = sid if isinstance(sid, StatementId) else StatementId.parse(sid)
    wanted = bindings or {}
    reports = []
    try:
        for instance in _SOURCES[sid](G, subject):
            if any(instance.bindings.get(k) != v for k, v in wanted.items()):
                continue
            reports.append(_run_instance(G, sid, instance))
    except CapExceededError as e:
        logger.warning(f"{sid.value} on {G.name} stopped: {e}")
        reports.append(
            VerifierReport(statement=sid.value, group=G.name, status=StatementStatus.SKIPPED, details=str(e))
        )
    return reports


def check_all(G: GroupHandle, subject: Optional[SubgroupRef] = None) -> List[VerifierReport]:
    reports = []
    for sid in StatementId:
        reports.extend(check_statement(G, sid, subject=subject))
    return reports
