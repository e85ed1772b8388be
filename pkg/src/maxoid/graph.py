"""Directed acyclic graphs on dense integer nodes 1..n.

Provides exhaustive, memoized directed-path enumeration and the purely
combinatorial transitive closure.  Path enumeration is exponential in the
edge count in the worst case; all intended workloads have at most a handful
of nodes.
"""

from __future__ import annotations

import json
from typing import Iterable

Edge = tuple[int, int]
Path = tuple[int, ...]


class CycleError(ValueError):
    """Raised when an edge set admits a directed cycle."""


class Dag:
    """An immutable DAG on nodes 1..n.

    Acyclicity is verified at construction.  Self-loops and duplicate edges
    are rejected.  Isolated nodes are permitted.  Adjacency, a topological
    order and reachability are computed once and cached; path enumeration is
    memoized per instance.
    """

    __slots__ = ("n", "edges", "_children", "_parents", "_topo", "_desc", "_path_memo")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        edge_list = [(int(u), int(v)) for u, v in edges]
        for u, v in edge_list:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            raise ValueError("duplicate edge")
        self.n = n
        self.edges = edge_set
        children: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        parents: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        for u, v in sorted(edge_set):
            children[u].append(v)
            parents[v].append(u)
        self._children = {v: tuple(cs) for v, cs in children.items()}
        self._parents = {v: tuple(sorted(ps)) for v, ps in parents.items()}
        self._topo = self._toposort()
        self._desc: dict[int, frozenset[int]] | None = None
        self._path_memo: dict[tuple[int, int], tuple[Path, ...]] = {}

    def _toposort(self) -> tuple[int, ...]:
        import heapq

        indeg = {v: len(self._parents[v]) for v in range(1, self.n + 1)}
        heap = [v for v, d in indeg.items() if d == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(heap, c)
        if len(order) != self.n:
            raise CycleError("cycle detected")
        return tuple(order)

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def topological_order(self) -> tuple[int, ...]:
        return self._topo

    @property
    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def parents(self, v: int) -> tuple[int, ...]:
        return self._parents[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def descendants(self, v: int) -> frozenset[int]:
        """All nodes reachable from v by a nonempty directed path."""
        if self._desc is None:
            desc: dict[int, set[int]] = {u: set() for u in self.nodes}
            for u in reversed(self._topo):
                for c in self._children[u]:
                    desc[u].add(c)
                    desc[u] |= desc[c]
            self._desc = {u: frozenset(s) for u, s in desc.items()}
        return self._desc[v]

    def reaches(self, u: int, v: int) -> bool:
        return v in self.descendants(u)

    def __eq__(self, other) -> bool:
        return isinstance(other, Dag) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Dag(n={self.n}, edges={self.sorted_edges})"


def dag_from_edges(n: int, edges: Iterable[Edge]) -> Dag:
    """Build a Dag, validating ranges, simplicity and acyclicity."""
    return Dag(n, edges)


def enumerate_paths(g: Dag, i: int, j: int) -> list[Path]:
    """All node-simple directed i->j paths, in lexicographic order.

    Empty if j is unreachable from i.  Worst case exponential in |E|.
    """
    if i == j:
        raise ValueError("path endpoints must be distinct")
    memo = g._path_memo

    def suffixes(u: int) -> tuple[Path, ...]:
        key = (u, j)
        if key in memo:
            return memo[key]
        if u == j:
            result: tuple[Path, ...] = ((j,),)
        else:
            acc: list[Path] = []
            for c in g.children(u):
                if c == j or g.reaches(c, j):
                    acc.extend((u,) + p for p in suffixes(c))
            result = tuple(acc)
        memo[key] = result
        return result

    if i != j and not g.reaches(i, j):
        return []
    return list(suffixes(i))


def transitive_closure(g: Dag) -> Dag:
    """The DAG with an edge (i,j) exactly when a directed i->j path exists in g."""
    edges = [(u, v) for u in g.nodes for v in g.descendants(u)]
    return Dag(g.n, edges)


def to_dot(g: Dag, name: str = "G") -> str:
    """Render the DAG in DOT format for inspection."""
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {v};" for v in g.nodes)
    lines.extend(f"  {u} -> {v};" for u, v in g.sorted_edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dag_to_json(g: Dag) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges]}


def dag_from_json(data) -> Dag:
    """Parse {"n": int, "edges": [[u,v], ...]} given as a dict or JSON string."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValueError('expected an object {"n": ..., "edges": [[u,v], ...]}')
    return Dag(int(data["n"]), [tuple(e) for e in data["edges"]])
