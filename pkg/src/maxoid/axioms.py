"""Closure-property checkers for abstract CI structures.

Each checker exhaustively instantiates one inference rule against a set of
pairwise statements and reports every instantiation whose premises are
present but whose conclusion is not.  Set-valued statements are evaluated
through the pairwise reduction (valid for the structures produced here,
which are closed under composition and decomposition); instantiation is
exponential in the node count and bounded to 6 nodes unless forced.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .separation import CiStatement, Maxoid

_DEFAULT_NODE_BOUND = 6


@dataclass(frozen=True)
class ViolationReport:
    """One failed rule instantiation, replayable against the structure."""

    rule: str
    instance: tuple[tuple[str, object], ...]
    premises: tuple[CiStatement, ...]
    missing: tuple[CiStatement, ...]

    def recheck(self, m: Maxoid) -> bool:
        """True when the violation still holds in m."""
        return (all(p in m for p in self.premises)
                and all(q not in m for q in self.missing))

    def __str__(self) -> str:
        inst = ", ".join(f"{k}={_fmt(v)}" for k, v in self.instance)
        have = "; ".join(map(str, self.premises))
        want = "; ".join(map(str, self.missing))
        return f"{self.rule} at ({inst}): premises [{have}] without [{want}]"


def _fmt(v) -> str:
    if isinstance(v, frozenset):
        return "{" + ",".join(map(str, sorted(v))) + "}"
    return str(v)


def _check_bound(m: Maxoid, force: bool) -> None:
    if m.n > _DEFAULT_NODE_BOUND and not force:
        raise ValueError(
            f"exhaustive instantiation over {m.n} nodes; pass force=True to run anyway")


def _pairwise(m: Maxoid, I: frozenset[int], J: frozenset[int], L: frozenset[int]) -> bool:
    """Set statement (I, J | L) via the pairwise reduction; empty sides hold."""
    return all(CiStatement(i, j, L) in m for i in I for j in J)


def _role_assignments(nodes, roles: int):
    """Partition maps node -> role index (the last role means 'unused')."""
    for assignment in product(range(roles + 1), repeat=len(nodes)):
        groups = [frozenset(v for v, r in zip(nodes, assignment) if r == k)
                  for k in range(roles)]
        yield groups


def check_compositional_graphoid(m: Maxoid, force: bool = False) -> list[ViolationReport]:
    """Semigraphoid (both directions of its equivalence), Intersection and
    Composition, instantiated over all disjoint sets I, J, K, L."""
    _check_bound(m, force)
    nodes = list(range(1, m.n + 1))
    out: list[ViolationReport] = []
    for I, J, K, L in _role_assignments(nodes, 4):
        if not I or not J or not K:
            continue
        inst = (("I", I), ("J", J), ("K", K), ("L", L))
        ij_l = _pairwise(m, I, J, L)
        ik_jl = _pairwise(m, I, K, J | L)
        ijk_l = _pairwise(m, I, J | K, L)
        ik_l = _pairwise(m, I, K, L)
        ij_kl = _pairwise(m, I, J, K | L)
        if ij_l and ik_jl and not ijk_l:
            out.append(_report("semigraphoid-forward", inst, m, I, J, K, L,
                               premises=_stmts(I, J, L) + _stmts(I, K, J | L),
                               conclusion=_stmts(I, J | K, L)))
        if ijk_l and not (ij_l and ik_jl):
            out.append(_report("semigraphoid-backward", inst, m, I, J, K, L,
                               premises=_stmts(I, J | K, L),
                               conclusion=_stmts(I, J, L) + _stmts(I, K, J | L)))
        if sorted(J) < sorted(K):  # intersection and composition are J/K-symmetric
            if ij_kl and ik_jl and not ijk_l:
                out.append(_report("intersection", inst, m, I, J, K, L,
                                   premises=_stmts(I, J, K | L) + _stmts(I, K, J | L),
                                   conclusion=_stmts(I, J | K, L)))
            if ij_l and ik_l and not ijk_l:
                out.append(_report("composition", inst, m, I, J, K, L,
                                   premises=_stmts(I, J, L) + _stmts(I, K, L),
                                   conclusion=_stmts(I, J | K, L)))
    return out


def _stmts(I, J, L) -> tuple[CiStatement, ...]:
    return tuple(sorted((CiStatement(i, j, L) for i in I for j in J),
                        key=lambda s: s.sort_key))


def _report(rule, inst, m, I, J, K, L, premises, conclusion) -> ViolationReport:
    missing = tuple(s for s in conclusion if s not in m)
    return ViolationReport(rule, inst, premises, missing)


def check_amalgamation(m: Maxoid, force: bool = False) -> list[ViolationReport]:
    """(i,j|KM) and (i,j|LM) imply (i,j|KLM), over disjoint K, L, M."""
    _check_bound(m, force)
    nodes = list(range(1, m.n + 1))
    out = []
    for i, j in combinations(nodes, 2):
        rest = [v for v in nodes if v != i and v != j]
        for K, L, M in _role_assignments(rest, 3):
            if sorted(L) < sorted(K):  # the rule is K/L-symmetric
                continue
            s1 = CiStatement(i, j, K | M)
            s2 = CiStatement(i, j, L | M)
            s3 = CiStatement(i, j, K | L | M)
            if s1 in m and s2 in m and s3 not in m:
                out.append(ViolationReport(
                    "amalgamation",
                    (("i", i), ("j", j), ("K", K), ("L", L), ("M", M)),
                    (s1, s2), (s3,)))
    return out


def check_strong_spohn(m: Maxoid, force: bool = False,
                       original_premise: bool = False) -> list[ViolationReport]:
    """The two blocking-set strengthenings of the Spohn property.

    Checked exactly as displayed by default.  Beware that the second rule,

        (i,j|klM) and (k,l|iM) and (k,l|M)  =>  (k,l|jM),

    is falsifiable: on the two-edge collider DAG k -> j <- l with i isolated,
    all three premises are plain d-separations while conditioning on the
    collider j connects k and l.  With original_premise=True the classical
    fourth premise (k,l|ijM) is added to the second rule, which restores a
    sound property.
    """
    _check_bound(m, force)
    nodes = list(range(1, m.n + 1))
    out = []
    for quad in combinations(nodes, 4):
        rest = [v for v in nodes if v not in quad]
        for size in range(len(rest) + 1):
            for M_tuple in combinations(rest, size):
                M = frozenset(M_tuple)
                for k, l in combinations(quad, 2):
                    ij = [v for v in quad if v != k and v != l]
                    # rule 1: symmetric in i, j
                    i, j = ij
                    p1 = CiStatement(i, j, {k, l} | M)
                    p2 = CiStatement(k, l, {i} | M)
                    p3 = CiStatement(k, l, {j} | M)
                    c = CiStatement(k, l, M)
                    if p1 in m and p2 in m and p3 in m and c not in m:
                        out.append(ViolationReport(
                            "strong-spohn-1",
                            (("i", i), ("j", j), ("k", k), ("l", l), ("M", M)),
                            (p1, p2, p3), (c,)))
                    # rule 2: i and j play different parts
                    for i, j in ((ij[0], ij[1]), (ij[1], ij[0])):
                        q1 = CiStatement(i, j, {k, l} | M)
                        q2 = CiStatement(k, l, {i} | M)
                        q3 = CiStatement(k, l, M)
                        c2 = CiStatement(k, l, {j} | M)
                        premises = [q1, q2, q3]
                        if original_premise:
                            premises.append(CiStatement(k, l, {i, j} | M))
                        if all(p in m for p in premises) and c2 not in m:
                            out.append(ViolationReport(
                                "strong-spohn-2",
                                (("i", i), ("j", j), ("k", k), ("l", l), ("M", M)),
                                tuple(premises), (c2,)))
    return out


def check_weak_transitivity(m: Maxoid, force: bool = False) -> list[ViolationReport]:
    """(i,j|L) and (i,j|kL) versus (i,k|L) or (j,k|L): both directions of the
    equivalence are checked and reported separately."""
    _check_bound(m, force)
    nodes = list(range(1, m.n + 1))
    out = []
    for i, j in combinations(nodes, 2):
        for k in nodes:
            if k == i or k == j:
                continue
            rest = [v for v in nodes if v not in (i, j, k)]
            for size in range(len(rest) + 1):
                for L_tuple in combinations(rest, size):
                    L = frozenset(L_tuple)
                    p1 = CiStatement(i, j, L)
                    p2 = CiStatement(i, j, {k} | L)
                    d1 = CiStatement(i, k, L)
                    d2 = CiStatement(j, k, L)
                    inst = (("i", i), ("j", j), ("k", k), ("L", L))
                    if p1 in m and p2 in m and d1 not in m and d2 not in m:
                        out.append(ViolationReport(
                            "weak-transitivity-forward", inst, (p1, p2), (d1, d2)))
                    if (d1 in m or d2 in m) and not (p1 in m and p2 in m):
                        present = tuple(s for s in (d1, d2) if s in m)
                        absent = tuple(s for s in (p1, p2) if s not in m)
                        out.append(ViolationReport(
                            "weak-transitivity-backward", inst, present, absent))
    return out
