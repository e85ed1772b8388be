"""The weight-space fan of a DAG.

Weight space R^E is stratified by which path is heaviest between every
connected pair.  Each consistent choice of one path per pair that is
realizable by some generic weight vector spans a full-dimensional open cone;
the closures of these cones tile R^E and are in bijection with the CI
structures of generic weights.  Cones are enumerated by a depth-first search
over per-pair path choices with subpath-consistency and exact feasibility
pruning, so only realizable systems are ever completed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Dag, Path, enumerate_paths
from .linarith import Constraint, LinExpr, Witness, feasible, rank_of
from .separation import Maxoid, maxoid
from .tropical import WeightedDag, critical_paths, is_generic


class NonGenericError(ValueError):
    """Raised when an operation requires a tie-free weight vector."""


@dataclass(frozen=True)
class CriticalSystem:
    """One chosen path per connected ordered pair; the combinatorial label of
    a maximal cone.  Subpath-closed: the portion of a chosen path between any
    two of its nodes is the choice for that pair."""

    choices: tuple[tuple[tuple[int, int], Path], ...]

    @staticmethod
    def from_dict(d: dict[tuple[int, int], Path]) -> "CriticalSystem":
        return CriticalSystem(tuple(sorted(d.items())))

    def as_dict(self) -> dict[tuple[int, int], Path]:
        return dict(self.choices)

    def path(self, i: int, j: int) -> Path:
        return self.as_dict()[(i, j)]


@dataclass(frozen=True)
class ConeDescription:
    """An open cone {c : every row > 0} in R^E; rows are homogeneous and
    normalized to primitive integer form."""

    strict: tuple[Constraint, ...]
    nvars: int


@dataclass(frozen=True)
class FanEntry:
    system: CriticalSystem
    cone: ConeDescription
    maxoid: Maxoid
    witness: Witness


def _edge_index(g: Dag) -> dict[tuple[int, int], int]:
    return {e: k for k, e in enumerate(g.sorted_edges)}


def _path_comparison(index, winner: Path, loser: Path) -> Constraint:
    """weight(winner) - weight(loser) > 0 over edge coordinates."""
    coeffs: dict[int, int] = {}
    for e in zip(winner, winner[1:]):
        coeffs[index[e]] = coeffs.get(index[e], 0) + 1
    for e in zip(loser, loser[1:]):
        coeffs[index[e]] = coeffs.get(index[e], 0) - 1
    return Constraint(LinExpr.build(coeffs), ">").normalized()


def _internally_disjoint(p: Path, q: Path) -> bool:
    return not (set(p[1:-1]) & set(q[1:-1]))


def _connected_pairs(g: Dag) -> list[tuple[int, int]]:
    """Ordered connected pairs, by length of the shortest path then lex."""
    pairs = []
    for i in g.nodes:
        for j in sorted(g.descendants(i)):
            shortest = min(len(p) for p in enumerate_paths(g, i, j))
            pairs.append((shortest, i, j))
    return [(i, j) for _, i, j in sorted(pairs)]


def cone_of(wd: WeightedDag, minimal: bool = False) -> ConeDescription:
    """Inequality description of the open cone of weight vectors sharing
    wd's critical paths: one strict row per (pair, non-critical path).

    With minimal=True only comparisons between internally disjoint paths are
    kept; comparisons through a shared intermediate node are implied by the
    sub-pair comparisons, so both forms cut out the same open set.
    """
    if not is_generic(wd):
        raise NonGenericError("cone description requires tie-free weights")
    g = wd.g
    index = _edge_index(g)
    rows: list[Constraint] = []
    seen = set()
    for i, j in _connected_pairs(g):
        crit = critical_paths(wd, i, j)[0]
        for p in enumerate_paths(g, i, j):
            if p == crit:
                continue
            if minimal and not _internally_disjoint(crit, p):
                continue
            row = _path_comparison(index, crit, p)
            if row not in seen:
                seen.add(row)
                rows.append(row)
    return ConeDescription(tuple(rows), len(index))


def _system_rows(g: Dag, index, choices: dict, keys, minimal: bool) -> list[Constraint]:
    rows = []
    for key in keys:
        chosen = choices[key]
        for p in enumerate_paths(g, *key):
            if p == chosen:
                continue
            if minimal and not _internally_disjoint(chosen, p):
                continue
            rows.append(_path_comparison(index, chosen, p))
    return rows


def enumerate_maximal_cones(g: Dag) -> list[FanEntry]:
    """All maximal cones of the fan, each with its critical system, a minimal
    inequality description, an interior witness and the witness's CI
    structure.  Exactly one entry per nonempty open cone; deterministic
    order."""
    index = _edge_index(g)
    nvars = len(index)
    pairs = _connected_pairs(g)
    path_lists = {pq: enumerate_paths(g, *pq) for pq in pairs}
    entries: list[FanEntry] = []

    def propagate(choices: dict, key, path: Path):
        """Assign path to key and force all sub-pair choices; None on clash."""
        forced = []
        for a in range(len(path)):
            for b in range(a + 1, len(path)):
                sub, subkey = path[a:b + 1], (path[a], path[b])
                if subkey in choices:
                    if choices[subkey] != sub:
                        undo(choices, forced)
                        return None
                else:
                    choices[subkey] = sub
                    forced.append(subkey)
        return forced

    def undo(choices: dict, forced):
        for k in forced:
            del choices[k]

    def dfs(idx: int, choices: dict, rows: list[Constraint], seen: set,
            witness: Witness | None):
        if idx == len(pairs):
            if witness is None:
                witness = feasible([], nvars)
            minimal = _system_rows(g, index, choices, pairs, minimal=True)
            dedup: list[Constraint] = []
            for r in minimal:
                if r not in dedup:
                    dedup.append(r)
            wd = WeightedDag(g, dict(zip(g.sorted_edges, witness.point)))
            entries.append(FanEntry(
                system=CriticalSystem.from_dict(choices),
                cone=ConeDescription(tuple(dedup), nvars),
                maxoid=maxoid(wd),
                witness=witness,
            ))
            return
        key = pairs[idx]
        if key in choices:
            dfs(idx + 1, choices, rows, seen, witness)
            return
        for path in path_lists[key]:
            forced = propagate(choices, key, path)
            if forced is None:
                continue
            new_rows = [r for r in _system_rows(g, index, choices, forced, minimal=False)
                        if r not in seen]
            w = feasible(rows + new_rows, nvars)
            if w is not None:
                rows.extend(new_rows)
                seen.update(new_rows)
                dfs(idx + 1, choices, rows, seen, w)
                del rows[len(rows) - len(new_rows):]
                seen.difference_update(new_rows)
            undo(choices, forced)

    dfs(0, {}, [], set(), None)
    return entries


def cone_adjacency(entries: list[FanEntry]) -> list[tuple[int, int]]:
    """Pairs of cone indices whose closures share a facet.

    Two cones are adjacent when some inequality of the first, flipped to an
    equality, admits a point that satisfies the first cone's remaining rows
    strictly and the second cone's rows non-strictly: such a point lies in
    the relative interior of a shared facet.
    """
    edges = []
    for a in range(len(entries)):
        rows_a = entries[a].cone.strict
        nvars = entries[a].cone.nvars
        for b in range(a + 1, len(entries)):
            rows_b = entries[b].cone.strict
            found = False
            for flip in rows_a:
                system = [Constraint(flip.expr, "==")]
                system += [r for r in rows_a if r != flip]
                system += [Constraint(r.expr, ">=") for r in rows_b]
                if feasible(system, nvars) is not None:
                    found = True
                    break
            if found:
                edges.append((a, b))
    return edges


def lineality_dimension(g: Dag) -> int:
    """Dimension of the common linear subspace of all cones: |E| minus the
    rank of the internally-disjoint path-comparison normals."""
    index = _edge_index(g)
    normals = []
    for i, j in _connected_pairs(g):
        paths = enumerate_paths(g, i, j)
        for a in range(len(paths)):
            for b in range(a + 1, len(paths)):
                if _internally_disjoint(paths[a], paths[b]):
                    expr = _path_comparison(index, paths[a], paths[b]).expr
                    row = [Fraction(0)] * len(index)
                    for v, c in expr.terms:
                        row[v] = c
                    normals.append(row)
    if not normals:
        return len(index)
    return len(index) - rank_of(normals)
