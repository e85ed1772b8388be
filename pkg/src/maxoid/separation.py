"""Separation in weighted DAGs via critical paths.

The critical DAG of (G, C) given a blocking set L keeps an edge i->j exactly
when some directed i->j path exists and no maximum-weight i->j path passes
through L (interior nodes only).  Two nodes are separated given L when the
critical DAG contains none of five short connecting shapes between them; the
set of all such separation statements is the CI structure of the weighted
DAG.  Everything here is exact and valid for arbitrary (also tied) weights.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .graph import Dag, Path, enumerate_paths, transitive_closure
from .tropical import (
    NEG_INF,
    WeightedDag,
    critical_paths,
    kleene_star,
    path_weight,
)


@dataclass(frozen=True)
class CiStatement:
    """A canonical pairwise statement (i, j | L): i < j, L disjoint from both."""

    i: int
    j: int
    L: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("statement endpoints must be distinct")
        if self.i > self.j:
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)
        L = frozenset(self.L)
        if self.i in L or self.j in L:
            raise ValueError("conditioning set must be disjoint from the endpoints")
        object.__setattr__(self, "L", L)

    @property
    def sort_key(self) -> tuple:
        return (self.i, self.j, tuple(sorted(self.L)))

    def __str__(self) -> str:
        return f"{self.i},{self.j}|{','.join(str(k) for k in sorted(self.L))}"

    def __repr__(self) -> str:
        return f"CiStatement({self})"


_COMPACT_RE = re.compile(r"^(\d{2})\|(\d*)$")


def parse_ci_statement(text: str, n: int | None = None) -> CiStatement:
    """Parse "i,j|k1,k2,..." (empty conditioning side allowed) or, for node
    counts up to 9, the compact digit form "ij|kl"."""
    s = text.strip()
    if "|" not in s:
        raise ValueError(f"malformed CI statement {text!r}: missing '|'")
    left, right = s.split("|", 1)
    m = _COMPACT_RE.match(s.replace(" ", ""))
    if "," not in left and m and (n is None or n <= 9):
        i, j = int(m.group(1)[0]), int(m.group(1)[1])
        L = [int(c) for c in m.group(2)]
    else:
        try:
            i, j = (int(t) for t in left.split(","))
            L = [int(t) for t in right.split(",")] if right.strip() else []
        except ValueError:
            raise ValueError(f"malformed CI statement {text!r}") from None
    if n is not None:
        for v in (i, j, *L):
            if not 1 <= v <= n:
                raise ValueError(f"node {v} out of range 1..{n}")
    if len(L) != len(set(L)):
        raise ValueError(f"repeated conditioning node in {text!r}")
    return CiStatement(i, j, frozenset(L))


class Maxoid:
    """A canonical, deduplicated set of pairwise CI statements on 1..n."""

    __slots__ = ("n", "stmts")

    def __init__(self, n: int, statements: Iterable[CiStatement]):
        self.n = n
        self.stmts = frozenset(statements)
        for s in self.stmts:
            if s.j > n or any(k > n for k in s.L):
                raise ValueError(f"statement {s} exceeds ground set 1..{n}")

    def __contains__(self, s: CiStatement) -> bool:
        return s in self.stmts

    def __iter__(self) -> Iterator[CiStatement]:
        return iter(sorted(self.stmts, key=lambda s: s.sort_key))

    def __len__(self) -> int:
        return len(self.stmts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Maxoid) and self.n == other.n and self.stmts == other.stmts

    def __hash__(self) -> int:
        return hash((self.n, self.stmts))

    def __or__(self, other: "Maxoid") -> "Maxoid":
        if self.n != other.n:
            raise ValueError("ground sets differ")
        return Maxoid(self.n, self.stmts | other.stmts)

    def __repr__(self) -> str:
        return f"Maxoid(n={self.n}, {{{', '.join(str(s) for s in self)}}})"

    def to_json(self) -> list[str]:
        return [str(s) for s in self]

    @classmethod
    def from_json(cls, n: int, items: Iterable[str]) -> "Maxoid":
        return cls(n, (parse_ci_statement(t, n) for t in items))


def _critical_edges(g: Dag, star_proper, L: frozenset[int]) -> set[tuple[int, int]]:
    """Edges of the critical DAG: reachability plus the interior-blocking test
    A_il + A_lj < A_ij for every l in L off the endpoints."""
    edges = set()
    a = star_proper
    for i in g.nodes:
        for j in g.descendants(i):
            aij = a.entry(i, j)
            if all(a.entry(i, l) + a.entry(l, j) < aij for l in L if l != i and l != j):
                edges.add((i, j))
    return edges


def critical_dag(wd: WeightedDag, L: Iterable[int]) -> Dag:
    """The critical DAG of (G, C) given the blocking set L."""
    Ls = frozenset(L)
    if not Ls <= set(wd.g.nodes):
        raise ValueError("blocking set must consist of graph nodes")
    return Dag(wd.g.n, _critical_edges(wd.g, kleene_star(wd, proper=True), Ls))


def _star_connected(children: dict[int, set[int]], parents: dict[int, set[int]],
                    i: int, j: int, L: frozenset[int]) -> bool:
    """Search the five connecting shapes between i and j in a critical DAG.

    Colliders must lie in L, the outer parents p, q must not; all shape nodes
    are pairwise distinct and distinct from i and j.
    """
    # (a) direct edge, either direction
    if j in children[i] or i in children[j]:
        return True
    # (b) common parent p outside L
    for p in parents[i] & parents[j]:
        if p not in L:
            return True
    # (c) common collider l inside L
    for l in children[i] & children[j]:
        if l in L:
            return True
    # (d) p -> i, p -> l <- j and the mirror image
    for x, y in ((i, j), (j, i)):
        for p in parents[x]:
            if p in L or p == y:
                continue
            for l in children[p] & children[y]:
                if l in L and l != x:
                    return True
    # (e) p -> i, p -> l <- q, q -> j
    for p in parents[i]:
        if p in L or p == j:
            continue
        for q in parents[j]:
            if q in L or q == i or q == p:
                continue
            for l in children[p] & children[q]:
                if l in L and l != i and l != j:
                    return True
    return False


def _adjacency(n: int, edges: set[tuple[int, int]]):
    children: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    parents: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        children[u].add(v)
        parents[v].add(u)
    return children, parents


def c_star_separated(wd: WeightedDag, s: CiStatement) -> bool:
    """Whether the statement's endpoints are separated given s.L in (G, C)."""
    edges = _critical_edges(wd.g, kleene_star(wd, proper=True), s.L)
    children, parents = _adjacency(wd.g.n, edges)
    return not _star_connected(children, parents, s.i, s.j, s.L)


def maxoid(wd: WeightedDag) -> Maxoid:
    """All separation statements of the weighted DAG, over every pair and
    every conditioning subset."""
    g = wd.g
    star = kleene_star(wd, proper=True)
    nodes = list(g.nodes)
    stmts = []
    for size in range(0, g.n + 1):
        for L in combinations(nodes, size):
            Ls = frozenset(L)
            edges = _critical_edges(g, star, Ls)
            children, parents = _adjacency(g.n, edges)
            rest = [v for v in nodes if v not in Ls]
            for i, j in combinations(rest, 2):
                if not _star_connected(children, parents, i, j, Ls):
                    stmts.append(CiStatement(i, j, Ls))
    return Maxoid(g.n, stmts)


def derive_set_statement(m: Maxoid, I: Iterable[int], J: Iterable[int],
                         L: Iterable[int]) -> bool:
    """Set-valued statement (I, J | L), reduced to the pairwise statements.

    Valid because the structures produced by maxoid() are closed under
    composition and decomposition.
    """
    Is, Js, Ls = frozenset(I), frozenset(J), frozenset(L)
    if not Is or not Js:
        raise ValueError("I and J must be nonempty")
    if Is & Js or Is & Ls or Js & Ls:
        raise ValueError("I, J, L must be pairwise disjoint")
    return all(CiStatement(i, j, Ls) in m for i in Is for j in Js)


def weighted_transitive_reduction(wd: WeightedDag) -> WeightedDag:
    """Keep an edge exactly when it is the unique critical path between its
    endpoints; weights are restricted to the surviving edges."""
    a = kleene_star(wd, proper=True)
    keep = []
    for (u, v), x in wd.w.items():
        best_through = max(
            (a.entry(u, m) + a.entry(m, v) for m in wd.g.nodes if m != u and m != v),
            default=NEG_INF,
        )
        if best_through < x:
            keep.append((u, v))
    g2 = Dag(wd.g.n, keep)
    return WeightedDag(g2, {e: wd.w[e] for e in keep})


def closure_weights(wd: WeightedDag) -> WeightedDag:
    """Extend the weights to the transitive closure without changing any
    critical path: new edges all get one common weight strictly below the
    smallest critical weight (minus one keeps integer inputs integral)."""
    closure = transitive_closure(wd.g)
    new_edges = closure.edges - wd.g.edges
    if not new_edges:
        return WeightedDag(closure, dict(wd.w))
    a = kleene_star(wd, proper=True)
    eps = min(a.entry(i, j) for i in wd.g.nodes for j in wd.g.descendants(i))
    delta = eps - 1
    w = dict(wd.w)
    for e in new_edges:
        w[e] = delta
    return WeightedDag(closure, w)


def perturb_across_facet(wd: WeightedDag, target: Path) -> WeightedDag:
    """Break a critical-path tie in favour of `target`.

    Adds eps to one edge of target that lies on none of the other tied
    critical paths, where eps is half the minimum nonzero absolute difference
    of parallel-path weights (1 if all parallel paths are tied).  This makes
    target uniquely critical between its endpoints and preserves every strict
    weight comparison elsewhere.
    """
    i, j = target[0], target[-1]
    tied = critical_paths(wd, i, j)
    if tuple(target) not in tied:
        raise ValueError("target path is not critical between its endpoints")
    if len(tied) == 1:
        raise ValueError("target path is already the unique critical path")
    others = [p for p in tied if p != tuple(target)]
    other_edges = {e for p in others for e in zip(p, p[1:])}
    bump = next((e for e in zip(target, target[1:]) if e not in other_edges), None)
    if bump is None:
        raise ValueError("every edge of target lies on another tied critical path")
    diffs = []
    for u in wd.g.nodes:
        for v in sorted(wd.g.descendants(u)):
            weights = [path_weight(wd, p) for p in enumerate_paths(wd.g, u, v)]
            for a in range(len(weights)):
                for b in range(a + 1, len(weights)):
                    d = abs(weights[a] - weights[b])
                    if d != 0:
                        diffs.append(d)
    eps = min(diffs) / 2 if diffs else Fraction(1)
    w = dict(wd.w)
    w[bump] += eps
    return WeightedDag(wd.g, w)
