"""The weight-space polytope of a DAG.

Each maximal cone of the fan contributes one lattice point: the sum over
connected pairs of the 0/1 edge-indicator of the chosen path.  These points
are the vertices of a polytope whose (outer) normal fan is the weight-space
fan, so its face lattice is dual to the fan and relative-interior normal
vectors of faces realize the CI structures of tied weight vectors.

The convex hull is computed exactly: points are projected to affine-hull
coordinates, translated so the origin is interior, and the facets are read
off as the extreme rays of the cone of valid inequalities via the double
description method with the combinatorial adjacency test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .graph import Dag
from .linarith import (
    Constraint,
    LinExpr,
    affine_dimension,
    feasible,
    nullspace,
    pivot_columns,
)
from .separation import Maxoid, maxoid
from .fan import FanEntry, CriticalSystem, enumerate_maximal_cones
from .tropical import WeightedDag


@dataclass(frozen=True)
class PolytopePoint:
    """Integer vector indexed by the lexicographically sorted edges: entry e
    counts the chosen critical paths through e."""

    coords: tuple[int, ...]


@dataclass(frozen=True)
class Face:
    """A face identified by the set of polytope vertices it contains."""

    vertices: frozenset[int]
    dim: int


@dataclass(frozen=True)
class FaceLattice:
    faces: tuple[Face, ...]
    covers: tuple[tuple[int, int], ...]  # (smaller face index, larger face index)


def polytope_vertices(g: Dag, entries: list[FanEntry] | None = None
                      ) -> list[tuple[CriticalSystem, PolytopePoint]]:
    """One point per maximal cone; all points are distinct."""
    if entries is None:
        entries = enumerate_maximal_cones(g)
    edges = g.sorted_edges
    index = {e: k for k, e in enumerate(edges)}
    out = []
    for entry in entries:
        coords = [0] * len(edges)
        for _, path in entry.system.choices:
            for e in zip(path, path[1:]):
                coords[index[e]] += 1
        out.append((entry.system, PolytopePoint(tuple(coords))))
    points = [p.coords for _, p in out]
    if len(set(points)) != len(points):
        raise AssertionError("critical systems produced coinciding points")
    return out


def _primitive(vec: list[Fraction]) -> tuple[int, ...]:
    mult = lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * mult) for x in vec]
    g = gcd(*ints) if any(ints) else 1
    return tuple(v // g for v in ints)


def _dd_extreme_rays(rows: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of {y : row . y >= 0 for all rows}; the cone must be
    pointed and the rows of full rank dim."""
    from .linarith import independent_rows

    init = independent_rows(rows)
    if len(init) != dim:
        raise ValueError("row system is not full-dimensional")
    # rays of the initial simplicial cone: columns of the inverse of the
    # chosen row matrix
    M = [list(map(Fraction, rows[i])) for i in init]
    aug = [row + [Fraction(int(i == j)) for j in range(dim)] for i, row in enumerate(M)]
    for col in range(dim):
        p = next(r for r in range(col, dim) if aug[r][col] != 0)
        aug[col], aug[p] = aug[p], aug[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        for r in range(dim):
            if r != col and aug[r][col] != 0:
                fr = aug[r][col]
                aug[r] = [a - fr * b for a, b in zip(aug[r], aug[col])]
    inverse = [[aug[r][dim + c] for c in range(dim)] for r in range(dim)]
    rays = [_primitive([inverse[r][c] for r in range(dim)]) for c in range(dim)]

    processed = [rows[i] for i in init]

    def zero_mask(ray) -> int:
        mask = 0
        for k, row in enumerate(processed):
            if sum(a * b for a, b in zip(row, ray)) == 0:
                mask |= 1 << k
        return mask

    masks = {r: zero_mask(r) for r in rays}
    pending = [rows[i] for i in range(len(rows)) if i not in set(init)]
    for row in pending:
        vals = {r: sum(a * b for a, b in zip(row, r)) for r in rays}
        plus = [r for r in rays if vals[r] > 0]
        zero = [r for r in rays if vals[r] == 0]
        minus = [r for r in rays if vals[r] < 0]
        if not minus:
            processed.append(row)
            bit = 1 << (len(processed) - 1)
            rays = plus + zero
            masks = {r: masks[r] | (bit if vals[r] == 0 else 0) for r in rays}
            continue
        newly = []
        for rp in plus:
            for rm in minus:
                common = masks[rp] & masks[rm]
                # adjacency: no third ray's zero set contains the common one
                if any(masks[r] & common == common for r in rays if r != rp and r != rm):
                    continue
                combo = [vals[rp] * b - vals[rm] * a for a, b in zip(rp, rm)]
                newly.append(_primitive([Fraction(x) for x in combo]))
        processed.append(row)
        bit = 1 << (len(processed) - 1)
        kept = {}
        for r in plus:
            kept[r] = masks[r]
        for r in zero:
            kept[r] = masks[r] | bit
        for r in newly:
            if r not in kept:
                kept[r] = zero_mask(r)
        rays = list(kept)
        masks = kept
    return rays


def _facet_incidences(points: list[tuple[Fraction, ...]]) -> tuple[int, list[frozenset[int]]]:
    """Affine dimension and, for each facet, the set of incident point indices."""
    m = len(points)
    dim, _ = affine_dimension(points)
    if dim == 0:
        return 0, []
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    cols = pivot_columns(diffs)
    proj = [tuple(p[c] for c in cols) for p in points]
    center = tuple(sum(p[k] for p in proj) / m for k in range(dim))
    shifted = [tuple(x - c for x, c in zip(p, center)) for p in proj]
    rows = [_primitive([Fraction(1)] + [-x for x in p]) for p in shifted]
    rays = _dd_extreme_rays(rows, dim + 1)
    facets = []
    for ray in rays:
        a0, a = ray[0], ray[1:]
        if a0 <= 0:
            raise AssertionError("facet inequality with nonpositive offset")
        incident = frozenset(
            i for i, p in enumerate(shifted)
            if sum(c * x for c, x in zip(a, p)) == a0
        )
        facets.append(incident)
    return dim, facets


def face_lattice(points: list[PolytopePoint]) -> FaceLattice:
    """All faces of conv(points) with their vertex sets, dimensions and the
    covering relation; the polytope itself is included as the top face, the
    empty face is not."""
    coords = [tuple(map(Fraction, p.coords)) for p in points]
    if not coords:
        raise ValueError("need at least one point")
    dim, facets = _facet_incidences(coords)
    top = frozenset(range(len(points)))
    sets = {top}
    frontier = {top}
    while frontier:
        nxt = set()
        for face in frontier:
            for facet in facets:
                cut = face & facet
                if cut and cut != face and cut not in sets:
                    sets.add(cut)
                    nxt.add(cut)
        frontier = nxt

    def face_dim(s: frozenset[int]) -> int:
        return affine_dimension([coords[i] for i in sorted(s)])[0]

    faces = sorted((Face(s, face_dim(s)) for s in sets),
                   key=lambda f: (f.dim, sorted(f.vertices)))
    covers = []
    for a, fa in enumerate(faces):
        for b, fb in enumerate(faces):
            if fb.dim == fa.dim + 1 and fa.vertices < fb.vertices:
                covers.append((a, b))
    return FaceLattice(tuple(faces), tuple(covers))


def f_vector(points: list[PolytopePoint]) -> tuple[int, ...]:
    """Face counts of conv(points) by dimension 0..d-1 (proper faces only)."""
    lattice = face_lattice(points)
    d = max(f.dim for f in lattice.faces)
    counts = [0] * d
    for f in lattice.faces:
        if f.dim < d:
            counts[f.dim] += 1
    return tuple(counts)


def face_maxoid(g: Dag, face: Face, entries: list[FanEntry],
                points: list[tuple[CriticalSystem, PolytopePoint]] | None = None) -> Maxoid:
    """CI structure attached to a face: a rational functional in the relative
    interior of the face's normal cone (equal on the face's vertices, larger
    on all others, slack-maximized) interpreted as a weight vector.

    Valid for tied weights, since separation needs no genericity.  Raises
    when the vertex set is not actually a face.
    """
    if points is None:
        points = polytope_vertices(g, entries)
    coords = [p.coords for _, p in points]
    nvars = len(g.sorted_edges)
    members = sorted(face.vertices)
    if not members or any(v >= len(coords) for v in members):
        raise ValueError("face references unknown vertices")
    base = coords[members[0]]
    # substitute the equal-value conditions out: work in a basis of the
    # subspace where all face vertices score alike
    equal_rows = [[Fraction(coords[s][k] - base[k]) for k in range(nvars)]
                  for s in members[1:]]
    span = nullspace(equal_rows, nvars) if equal_rows else [
        [Fraction(int(k == j)) for k in range(nvars)] for j in range(nvars)]
    reduced: list[Constraint] = []
    seen = set()
    for u in range(len(coords)):
        if u in face.vertices:
            continue
        diff = [Fraction(base[k] - coords[u][k]) for k in range(nvars)]
        row = {j: sum(b * d for b, d in zip(vec, diff)) for j, vec in enumerate(span)}
        if not any(row.values()):
            raise ValueError("vertex set is not a face of the polytope")
        con = Constraint(LinExpr.build(row), ">").normalized()
        if con not in seen:
            seen.add(con)
            reduced.append(con)
    y = feasible(reduced, len(span))
    if y is None:
        raise ValueError("vertex set is not a face of the polytope")
    c = [sum(y.point[j] * span[j][k] for j in range(len(span))) for k in range(nvars)]
    score = sum(ci * xi for ci, xi in zip(c, base))
    for u in range(len(coords)):
        val = sum(ci * xi for ci, xi in zip(c, coords[u]))
        ok = val == score if u in face.vertices else val < score
        if not ok:
            raise AssertionError("normal-cone functional failed exact re-verification")
    wd = WeightedDag(g, dict(zip(g.sorted_edges, c)))
    return maxoid(wd)


def hasse_dot(lattice: FaceLattice, name: str = "faces") -> str:
    """DOT rendering of the face lattice's Hasse diagram."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for k, f in enumerate(lattice.faces):
        label = "{" + ",".join(str(v) for v in sorted(f.vertices)) + "}"
        lines.append(f'  f{k} [label="{label} d{f.dim}"];')
    lines.extend(f"  f{a} -> f{b};" for a, b in lattice.covers)
    lines.append("}")
    return "\n".join(lines) + "\n"
