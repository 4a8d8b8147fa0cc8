"""Core-set construction and validation.

A subset S of P is an eps-core-set when R(P) <= (1+eps) R(S); it is
center-conform when some center of S already covers all of P at that
dilation.  The module offers the farthest-point greedy builder, exact
zero-core-sets from the solver's support, the exact minimum core-set
size via core radii, validators (with either a fixed center or a search
over the full optimal-center set), and the Euclidean center-conformity
bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .containment import all_gauges, min_containment, support_points
from .geometry import (
    DEFAULT_TOL,
    Container,
    ContainerKind,
    PointSet,
    Tolerance,
)
from .lp import LinearProgram, LpStatus, solve_lp
from .radii import core_radius

__all__ = [
    "CoreSet",
    "greedy_coreset",
    "extract_zero_coreset",
    "optimal_coreset_size",
    "validate_coreset",
    "center_conformity_bound_check",
]


@dataclass(frozen=True)
class CoreSet:
    indices: tuple[int, ...]
    radius: float  # R(S, C)
    center: np.ndarray  # a center of S
    eps_achieved: float
    center_conform: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))


def _coverage_eps(P: PointSet, C: Container, radius: float, center, tol: Tolerance) -> float:
    """Smallest eps with P inside center + (1+eps) * radius * C."""
    worst = float(np.max(all_gauges(P, C, center, tol)))
    if radius <= 0:
        return 0.0 if worst <= tol.feas else np.inf
    return max(0.0, worst / radius - 1.0)


def greedy_coreset(
    P: PointSet, C: Container, eps: float, tol: Tolerance = DEFAULT_TOL
) -> CoreSet:
    """Farthest-point greedy: grow S until its dilated solution covers P.

    Starts from a double-sweep pair (farthest from the first point, then
    farthest from that), adds the worst-covered point each round, and
    falls back to the exact zero-core-set after d+2 rounds.  The result
    is center-conform by construction.
    """
    if eps <= 0:
        raise ValueError("greedy needs eps > 0; use extract_zero_coreset for eps = 0")
    if len(P) == 1:
        return CoreSet((0,), 0.0, P.points[0].copy(), 0.0, True)
    pts = P.points
    p0 = 0
    p1 = int(np.argmax(all_gauges(P, C, pts[p0], tol)))
    p0 = int(np.argmax(all_gauges(P, C, pts[p1], tol)))
    S = sorted({p0, p1})
    if len(S) == 1:  # all points identical
        S = [0]

    for _ in range(P.dim + 2):
        sol = min_containment(P.subset(S), C, tol)
        gauges = all_gauges(P, C, sol.center, tol)
        worst = int(np.argmax(gauges))
        if sol.rho <= 0:
            if gauges[worst] <= tol.feas:
                return CoreSet(tuple(S), 0.0, sol.center, 0.0, True)
        elif gauges[worst] <= (1.0 + eps) * sol.rho + tol.feas:
            achieved = _coverage_eps(P, C, sol.rho, sol.center, tol)
            return CoreSet(tuple(S), sol.rho, sol.center, achieved, True)
        if worst not in S:
            S = sorted(S + [worst])
    return extract_zero_coreset(P, C, tol)


def extract_zero_coreset(P: PointSet, C: Container, tol: Tolerance = DEFAULT_TOL) -> CoreSet:
    """At most d+1 points with the full radius, from the solution support."""
    sol = min_containment(P, C, tol)
    idx = support_points(P, C, sol, tol)
    sub = min_containment(P.subset(idx), C, tol)
    achieved = _coverage_eps(P, C, sub.rho, sub.center, tol)
    conform = achieved <= tol.eq
    if not conform:
        # the sub-solution center may be a different valid center of S;
        # look for one that covers all of P at the full radius
        center = _find_covering_center(P, C, list(idx), sub.rho, 0.0, tol)
        if center is not None:
            return CoreSet(tuple(idx), sub.rho, center, 0.0, True)
    return CoreSet(tuple(idx), sub.rho, sub.center, achieved, conform)


def optimal_coreset_size(
    P: PointSet, C: Container, eps: float, tol: Tolerance = DEFAULT_TOL, budget: int | None = None
) -> int:
    """Exact minimum size of an eps-core-set: smallest k+1 with
    R(P) <= (1+eps) R_k(P)."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    full = min_containment(P, C, tol).rho
    kwargs = {} if budget is None else {"budget": budget}
    for k in range(1, P.dim + 1):
        rk = core_radius(P, C, k, tol, **kwargs).value
        if full <= (1.0 + eps) * rk + tol.eq:
            return k + 1
    return P.dim + 1  # unreachable: k = d always qualifies


def validate_coreset(
    P: PointSet,
    C: Container,
    indices,
    eps: float,
    require_center_conform: bool = False,
    fixed_center: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Check the core-set inequality, optionally with center-conformity.

    With ``require_center_conform`` the validator searches the full set of
    centers of S for one covering P at (1+eps) R(S); ``fixed_center``
    instead commits to the solver's center for S, reproducing the failure
    mode of ambiguous centers.
    """
    idx = sorted(int(i) for i in indices)
    if not idx or not set(idx) <= set(range(len(P))):
        raise ValueError("core-set indices must be a nonempty subset of P")
    sub = min_containment(P.subset(idx), C, tol)
    full = min_containment(P, C, tol).rho
    if full > (1.0 + eps) * sub.rho + tol.eq:
        return False
    if not require_center_conform:
        return True
    allowed = (1.0 + eps) * sub.rho
    if fixed_center or C.kind is ContainerKind.BALL:
        # the Euclidean center is unique anyway
        worst = float(np.max(all_gauges(P, C, sub.center, tol)))
        return worst <= allowed + tol.feas * max(1.0, allowed)
    return _find_covering_center(P, C, idx, sub.rho, eps, tol) is not None


def _find_covering_center(
    P: PointSet, C: Container, idx: list[int], radius: float, eps: float, tol: Tolerance
):
    """A center c of S (gauge(s - c) <= radius on S) with
    gauge(p - c) <= (1+eps) radius on all of P, or None.

    For containers with normals both conditions are linear in c; vertex
    form uses the membership multipliers.  The LP minimises the largest
    violation, so near-ties inside tolerance are accepted.
    """
    allowed = (1.0 + eps) * radius
    slack = tol.feas * max(1.0, allowed)
    if C.kind is ContainerKind.BALL:
        center = min_containment(P.subset(idx), C, tol).center  # unique
        worst = float(np.max(all_gauges(P, C, center, tol)))
        return center if worst <= allowed + slack else None
    if C.normals is not None:
        A = C.normals
        d = P.dim
        rows, rhs = [], []
        for i in idx:
            for a in A:  # a.(p - c) <= radius + t
                rows.append(np.concatenate([-a, [-1.0]]))
                rhs.append(radius - a @ P.points[i])
        for p in P.points:
            for a in A:
                rows.append(np.concatenate([-a, [-1.0]]))
                rhs.append(allowed - a @ p)
        obj = np.zeros(d + 1)
        obj[d] = 1.0
        lp = LinearProgram.new(
            obj, np.array(rows), ["<="] * len(rows), np.array(rhs),
            lower=np.concatenate([np.full(d, -np.inf), [-np.inf]]),
        )
        res = solve_lp(lp, tol)
        if res.status is not LpStatus.OPTIMAL or res.value > slack:
            return None
        return res.primal[:d]
    # vertex representation: c is feasible iff every point admits hull
    # multipliers at the right dilation
    V = C.vertices
    m, d = V.shape
    sel = list(idx) + list(range(len(P)))
    caps = [radius] * len(idx) + [allowed] * len(P)
    nvar = d + len(sel) * m
    rows, rhs, rel = [], [], []
    for s, (j, cap) in enumerate(zip(sel, caps)):
        p = P.points[j if s < len(idx) else j]
        base = d + s * m
        for coord in range(d):
            row = np.zeros(nvar)
            row[coord] = 1.0
            row[base : base + m] = V[:, coord]
            rows.append(row)
            rhs.append(p[coord])
            rel.append("=")
        row = np.zeros(nvar)
        row[base : base + m] = 1.0
        rows.append(row)
        rhs.append(cap)
        rel.append("<=")
    lower = np.concatenate([np.full(d, -np.inf), np.zeros(len(sel) * m)])
    lp = LinearProgram.new(np.zeros(nvar), np.array(rows), rel, np.array(rhs), lower=lower)
    res = solve_lp(lp, tol)
    if res.status is not LpStatus.OPTIMAL:
        return None
    return res.primal[:d]


def center_conformity_bound_check(
    P: PointSet, indices, eps: float, tol: Tolerance = DEFAULT_TOL
) -> bool:
    """Euclidean promotion of a plain eps-core-set: its unique ball center
    covers P at factor 1 + eps + sqrt(2 eps + eps^2) of R(S)."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    idx = sorted(int(i) for i in indices)
    C = Container.ball(P.dim)
    sub = min_containment(P.subset(idx), C, tol)
    factor = 1.0 + eps + np.sqrt(2.0 * eps + eps * eps)
    allowed = factor * sub.rho
    worst = max(np.linalg.norm(p - sub.center) for p in P.points)
    return worst <= allowed + tol.feas * max(1.0, allowed)
