"""Census of CI structures over topologically ordered transitively closed DAGs.

A TDAG has all edges (i,j) with i < j, is transitively closed and weakly
connected.  Every CI structure of any weighted DAG also arises on a
transitively closed graph, so TDAGs carry a complete census up to vertex
relabeling.  Generic structures come from the maximal cones of each graph's
fan; tied (non-generic) ones from the faces of each graph's polytope.

Per-graph results can be cached on disk, content-addressed by the graph, so
large runs are resumable: set MAXOID_CACHE_DIR to enable.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import Pool

from .graph import Dag, dag_to_json, transitive_closure
from .fan import enumerate_maximal_cones
from .polytope import face_lattice, face_maxoid, polytope_vertices
from .separation import Maxoid

CACHE_ENV = "MAXOID_CACHE_DIR"


@dataclass
class TdagFamily:
    n: int
    graphs: list[Dag]


def _weakly_connected(n: int, edges) -> bool:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(1, n + 1)}) <= 1


def all_top_ordered_tdags(n: int) -> TdagFamily:
    """All transitively closed, weakly connected edge subsets of
    {(i,j): i<j}, in a fixed enumeration order.  Connectivity subsumes the
    no-isolated-node requirement and is what the reference counts
    (3, 18, 181 for n = 3, 4, 5) pin down."""
    if n < 1:
        raise ValueError("need at least one node")
    pairs = list(combinations(range(1, n + 1), 2))
    graphs = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if not _weakly_connected(n, edges):
            continue
        g = Dag(n, edges)
        if transitive_closure(g) == g:
            graphs.append(g)
    return TdagFamily(n, graphs)


def _graph_key(g: Dag) -> str:
    blob = json.dumps(dag_to_json(g), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _cache_path(g: Dag) -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, _graph_key(g) + ".json")


def graph_maxoids(g: Dag, include_faces: bool) -> dict[str, list[list[str]] | None]:
    """Generic (and optionally face) CI structures of one graph, as sorted
    statement lists; reads and refreshes the disk cache when enabled."""
    path = _cache_path(g)
    data: dict = {}
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
    if "generic" not in data or (include_faces and data.get("faces") is None):
        entries = enumerate_maximal_cones(g)
        data.setdefault("generic", [e.maxoid.to_json() for e in entries])
        if include_faces and data.get("faces") is None:
            points = polytope_vertices(g, entries)
            lattice = face_lattice([p for _, p in points])
            # dimension-0 faces duplicate the generic structures, skip them
            data["faces"] = [
                face_maxoid(g, f, entries, points).to_json()
                for f in lattice.faces if f.dim >= 1
            ]
        if path:
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(data, fh, sort_keys=True)
            os.replace(tmp, path)
    return data


def _worker(args) -> tuple[dict, dict]:
    graph_json, include_faces = args
    from .graph import dag_from_json

    return graph_json, graph_maxoids(dag_from_json(graph_json), include_faces)


def census_structures(family: TdagFamily, include_faces: bool = True,
                      jobs: int = 1) -> tuple[set[Maxoid], set[Maxoid]]:
    """(generic structures, all structures) over the family in one pass.

    Generic structures come from every graph's maximal cones; the full set
    additionally contains the face structures of every graph's polytope
    (when include_faces is false, the two sets coincide).
    """
    tasks = [(dag_to_json(g), include_faces) for g in family.graphs]
    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_worker, tasks)
    else:
        results = [_worker(t) for t in tasks]
    generic: set[Maxoid] = set()
    everything: set[Maxoid] = set()
    for _, data in results:
        for stmts in data["generic"]:
            m = Maxoid.from_json(family.n, stmts)
            generic.add(m)
            everything.add(m)
        if include_faces:
            for stmts in data["faces"]:
                everything.add(Maxoid.from_json(family.n, stmts))
    return generic, everything


def all_maxoids(family: TdagFamily, generic_only: bool = False,
                jobs: int = 1) -> set[Maxoid]:
    """Distinct CI structures over the family: the generic ones from every
    graph's maximal cones, plus (unless generic_only) all face structures
    from every graph's polytope."""
    generic, everything = census_structures(family, include_faces=not generic_only,
                                            jobs=jobs)
    return generic if generic_only else everything
