"""Exact rational linear feasibility.

Decides conjunctions of strict/non-strict linear constraints over free
variables and produces a verified interior witness.  Strict inequalities are
handled by maximizing a shared slack t (capped at 1): the system is strictly
feasible exactly when the optimum is positive, and the optimal basic solution
is a reusable interior point.  The simplex uses Bland's rule throughout, so
it terminates and is deterministic for a fixed input ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

ZERO = Fraction(0)


@dataclass(frozen=True)
class LinExpr:
    """A linear form sum(coeff_v * x_v) + const with sparse exact coefficients."""

    terms: tuple[tuple[int, Fraction], ...]
    const: Fraction = ZERO

    @staticmethod
    def build(coeffs: Mapping[int, Fraction | int], const=0) -> "LinExpr":
        terms = tuple(sorted((v, Fraction(c)) for v, c in coeffs.items() if c != 0))
        return LinExpr(terms, Fraction(const))

    def coeff_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * point[v] for v, c in self.terms), self.const)

    def __neg__(self) -> "LinExpr":
        return LinExpr(tuple((v, -c) for v, c in self.terms), -self.const)

    def __sub__(self, other: "LinExpr") -> "LinExpr":
        coeffs = self.coeff_dict()
        for v, c in other.terms:
            coeffs[v] = coeffs.get(v, ZERO) - c
        return LinExpr.build(coeffs, self.const - other.const)

    def __str__(self) -> str:
        if not self.terms:
            return str(self.const)
        body = " + ".join(f"{c}*x{v}" for v, c in self.terms)
        return body if self.const == 0 else f"{body} + {self.const}"


@dataclass(frozen=True)
class Constraint:
    """expr REL 0 with REL one of '>', '>=', '=='."""

    expr: LinExpr
    rel: str

    def __post_init__(self):
        if self.rel not in (">", ">=", "=="):
            raise ValueError(f"unknown relation {self.rel!r}")

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        val = self.expr.evaluate(point)
        if self.rel == ">":
            return val > 0
        if self.rel == ">=":
            return val >= 0
        return val == 0

    def negated(self) -> "Constraint":
        """Complement within closed/open half-spaces; '==' has no single negation."""
        if self.rel == ">":
            return Constraint(-self.expr, ">=")
        if self.rel == ">=":
            return Constraint(-self.expr, ">")
        raise ValueError("negation of an equality is a disjunction")

    def normalized(self) -> "Constraint":
        """Scale to integral coefficients with gcd 1 (positive scaling only)."""
        values = [c for _, c in self.expr.terms] + ([self.expr.const] if self.expr.const else [])
        if not values:
            return Constraint(LinExpr((), ZERO), self.rel)
        mult = lcm(*(v.denominator for v in values))
        ints = [v * mult for v in values]
        g = gcd(*(int(v) for v in ints))
        scale = Fraction(mult, g if g else 1)
        terms = tuple((v, c * scale) for v, c in self.expr.terms)
        return Constraint(LinExpr(terms, self.expr.const * scale), self.rel)

    def __str__(self) -> str:
        return f"{self.expr} {self.rel} 0"


@dataclass(frozen=True)
class Witness:
    """A rational point; construction re-verifies it against its system."""

    point: tuple[Fraction, ...]

    @classmethod
    def checked(cls, point: Sequence[Fraction], system: Iterable[Constraint]) -> "Witness":
        w = cls(tuple(point))
        for con in system:
            if not con.holds_at(w.point):
                raise AssertionError(f"witness {w.point} violates {con}")
        return w


def _pivot(T, cost, basis, r, j):
    piv = T[r][j]
    T[r] = [x / piv for x in T[r]]
    for i, row in enumerate(T):
        if i != r and row[j] != 0:
            f = row[j]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    if cost[j] != 0:
        f = cost[j]
        for k in range(len(cost)):
            cost[k] -= f * T[r][k]
    basis[r] = j


def _run_simplex(T, cost, basis, allowed_cols):
    """Minimize, Bland's rule.  Returns True when optimal, False when unbounded."""
    while True:
        enter = next((j for j in allowed_cols if cost[j] < 0), None)
        if enter is None:
            return True
        best_r, best_ratio = None, None
        for r, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[best_r])):
                    best_r, best_ratio = r, ratio
        if best_r is None:
            return False
        _pivot(T, cost, basis, best_r, enter)


def _direct_basis(rows, rhs, ncols):
    """A starting identity basis among +-1 singleton columns, if one exists
    (always the case for pure inequality systems, whose slack columns
    qualify); avoids the artificial-variable phase."""
    m = len(rows)
    count = [0] * ncols
    where = [0] * ncols
    for r in range(m):
        for j in range(ncols):
            if rows[r][j] != 0:
                count[j] += 1
                where[j] = r
    T = [None] * m
    basis = [None] * m
    used = set()
    for r in range(m):
        for j in range(ncols):
            if (count[j] == 1 and where[j] == r and j not in used
                    and abs(rows[r][j]) == 1 and rhs[r] / rows[r][j] >= 0):
                s = rows[r][j]
                T[r] = [x / s for x in rows[r]] + [rhs[r] / s]
                basis[r] = j
                used.add(j)
                break
        else:
            return None
    return T, basis


def _solve_standard(rows, rhs, objective, ncols):
    """min objective.z s.t. rows.z = rhs, z >= 0.  Exact two-phase simplex.

    Returns (status, z): status "optimal" | "infeasible" | "unbounded".
    """
    m = len(rows)
    if m == 0:
        return "optimal", [ZERO] * ncols
    direct = _direct_basis(rows, rhs, ncols)
    if direct is not None:
        T, basis = direct
    else:
        # phase 1: artificial basis
        T = []
        for r in range(m):
            row = list(rows[r]) + [ZERO] * m + [rhs[r]]
            if rhs[r] < 0:
                row = [-x for x in row]
            row[ncols + r] = Fraction(1)
            T.append(row)
        cost = [ZERO] * (ncols + m + 1)
        for j in range(ncols):
            cost[j] = -sum(row[j] for row in T)
        cost[-1] = -sum(row[-1] for row in T)
        basis = [ncols + r for r in range(m)]
        _run_simplex(T, cost, basis, range(ncols))
        if cost[-1] != 0:
            return "infeasible", None
        # drive leftover artificials out of the basis, dropping redundant rows
        drop = []
        for r in range(m):
            if basis[r] >= ncols:
                j = next((j for j in range(ncols) if T[r][j] != 0), None)
                if j is None:
                    drop.append(r)
                else:
                    _pivot(T, cost, basis, r, j)
        for r in sorted(drop, reverse=True):
            del T[r], basis[r]
        T = [row[:ncols] + [row[-1]] for row in T]
    # phase 2
    cost = list(objective) + [ZERO]
    for r, row in enumerate(T):
        if cost[basis[r]] != 0:
            f = cost[basis[r]]
            for k in range(ncols + 1):
                cost[k] -= f * row[k]
    if not _run_simplex(T, cost, basis, range(ncols)):
        return "unbounded", None
    z = [ZERO] * ncols
    for r, bv in enumerate(basis):
        z[bv] = T[r][-1]
    return "optimal", z


def feasible(system: Sequence[Constraint], nvars: int) -> Witness | None:
    """Decide the conjunction of constraints over nvars free variables.

    Returns a checked interior Witness when satisfiable (strictly, for the
    strict rows), else None.
    """
    system = list(system)
    for con in system:
        if any(v >= nvars or v < 0 for v, _ in con.expr.terms):
            raise ValueError(f"constraint {con} references a variable >= nvars={nvars}")
    strict = any(con.rel == ">" for con in system)
    # columns: x_v = z[2v] - z[2v+1]; then (t+, t-) if needed; then slacks
    ncols = 2 * nvars + (2 if strict else 0)
    t_pos, t_neg = 2 * nvars, 2 * nvars + 1
    rows, rhs = [], []  # rows hold (coefficients, slack sign); sign 0 means equality
    for con in system:
        row = [ZERO] * ncols
        for v, c in con.expr.terms:
            row[2 * v] += c
            row[2 * v + 1] -= c
        if con.rel == ">":
            row[t_pos] -= 1
            row[t_neg] += 1
        rows.append((row, 0 if con.rel == "==" else -1))
        rhs.append(-con.expr.const)
    if strict:
        cap = [ZERO] * ncols
        cap[t_pos] += 1
        cap[t_neg] -= 1
        rows.append((cap, 1))
        rhs.append(Fraction(1))
    nslack = sum(1 for _, sign in rows if sign)
    full = []
    k = 0
    for row, sign in rows:
        ext = row + [ZERO] * nslack
        if sign:
            ext[ncols + k] = Fraction(sign)
            k += 1
        full.append(ext)
    total = ncols + nslack
    objective = [ZERO] * total
    if strict:
        objective[t_pos], objective[t_neg] = Fraction(-1), Fraction(1)
    status, z = _solve_standard(full, rhs, objective, total)
    if status != "optimal":
        return None
    if strict and z[t_pos] - z[t_neg] <= 0:
        return None
    point = [z[2 * v] - z[2 * v + 1] for v in range(nvars)]
    return Witness.checked(point, system)


def rank_of(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    if not rows:
        return 0
    m, k = len(rows), len(rows[0])
    M = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = lcm(*(x.denominator for x in fr)) if fr else 1
        M.append([int(x * mult) for x in fr])
    prev = 1
    r = 0
    for col in range(k):
        p = next((i for i in range(r, m) if M[i][col] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, m):
            for j in range(col + 1, k):
                M[i][j] = (M[r][col] * M[i][j] - M[i][col] * M[r][j]) // prev
            M[i][col] = 0
        prev = M[r][col]
        r += 1
        if r == m:
            break
    return r


def _echelon(rows):
    """Fraction row echelon form; returns (echelon rows, pivot column list)."""
    E: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        v = [Fraction(x) for x in row]
        for erow, p in zip(E, pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, erow)]
        p = next((j for j, x in enumerate(v) if x != 0), None)
        if p is not None:
            f = v[p]
            E.append([x / f for x in v])
            pivots.append(p)
    return E, pivots


def independent_rows(rows: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset."""
    E: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for erow, p in zip(E, pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, erow)]
        p = next((j for j, x in enumerate(v) if x != 0), None)
        if p is not None:
            f = v[p]
            E.append([x / f for x in v])
            pivots.append(p)
            chosen.append(idx)
    return chosen

def pivot_columns(rows: Sequence[Sequence[Fraction]]) -> list[int]:
    """Column indices carrying the pivots of the row echelon form."""
    return _echelon(rows)[1]


def affine_dimension(points: Sequence[Sequence[Fraction]]) -> tuple[int, list[list[Fraction]]]:
    """Dimension of the affine hull of a point set, with a difference basis."""
    pts = [list(map(Fraction, p)) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    base = pts[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    chosen = independent_rows(diffs)
    return len(chosen), [diffs[i] for i in chosen]


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the solution space of the homogeneous system rows . x = 0."""
    E, pivots = _echelon(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        vec = [ZERO] * ncols
        vec[fcol] = Fraction(1)
        for erow, p in reversed(list(zip(E, pivots))):
            vec[p] = -sum(erow[j] * vec[j] for j in range(p + 1, ncols))
        basis.append(vec)
    return basis
