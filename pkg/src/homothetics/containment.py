"""Smallest-homothet containment and optimality certificates.

``min_containment`` finds the least rho >= 0 and a center c with every
point of P inside c + rho*C.  Polytopal containers reduce to a linear
program (half-space or vertex formulation); the Euclidean ball is solved
by the exact support-set solver.  ``make_certificate`` turns a solution
into touching points, supporting normals and convex weights whose
weighted normal sum vanishes; on a suboptimal candidate it raises
``NotOptimalError`` carrying an improving direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Container,
    ContainerKind,
    DimensionMismatch,
    PointSet,
    Tolerance,
    gauge,
)
from .lp import LinearProgram, LpError, LpStatus, in_convex_hull, solve_lp
from .meb import minimum_enclosing_ball

__all__ = [
    "Solution",
    "Certificate",
    "NotOptimalError",
    "min_containment",
    "make_certificate",
    "halfspace_lemma_check",
    "touching_indices",
    "all_gauges",
    "support_points",
]


@dataclass(frozen=True)
class Solution:
    """Optimal dilation and one valid center (centers need not be unique)."""

    rho: float
    center: np.ndarray
    active_points: tuple[int, ...]
    active_normals: tuple[int, ...]
    duals: np.ndarray  # nonnegative weight per point of P, summing to one

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "duals", np.asarray(self.duals, dtype=float))


@dataclass(frozen=True)
class Certificate:
    """Touching points p_i, supporting normals a_i and convex weights lam
    with sum(lam_i a_i) = 0; existence is equivalent to optimality."""

    touch_points: np.ndarray  # (k, d)
    point_indices: tuple[int, ...]
    normals: np.ndarray  # (k, d), unit offset: a_i.x <= 1 on the container
    lam: np.ndarray  # (k,), >= 0, sums to one


class NotOptimalError(Exception):
    """Candidate solution failed the optimality test.

    reason     "infeasible" | "slack" | "separated"
    direction  y with a.y <= -1 for every touching normal a when
               reason == "separated"; shifting the center by -eps*y then
               strictly decreases the maximal gauge.  Zero vector when the
               candidate has uniform slack, None when infeasible.
    """

    def __init__(self, reason: str, direction=None, detail: str = ""):
        self.reason = reason
        self.direction = None if direction is None else np.asarray(direction, dtype=float)
        super().__init__(f"not optimal ({reason}){': ' + detail if detail else ''}")


def _check_dims(P: PointSet, C: Container) -> None:
    if P.dim != C.dim:
        raise DimensionMismatch(f"point set dim {P.dim} vs container dim {C.dim}")


def all_gauges(P: PointSet, C: Container, center, tol: Tolerance) -> np.ndarray:
    """Gauge of every point relative to the center, vectorised where the
    container representation allows it."""
    diffs = P.points - np.asarray(center, dtype=float)
    if C.kind is ContainerKind.BALL:
        return np.linalg.norm(diffs, axis=1)
    if C.normals is not None:
        return np.clip((C.normals @ diffs.T).max(axis=0), 0.0, None)
    return np.array([gauge(C, x, tol) for x in diffs])


def touching_indices(P: PointSet, C: Container, rho: float, center, tol: Tolerance) -> list[int]:
    """Points whose gauge distance from the center matches rho within
    tol.feas * max(1, rho)."""
    slack = tol.feas * max(1.0, rho)
    gauges = all_gauges(P, C, center, tol)
    return np.nonzero(gauges >= rho - slack)[0].tolist()


# -- solvers ------------------------------------------------------------------


def min_containment(
    P: PointSet, C: Container, tol: Tolerance = DEFAULT_TOL, method: str = "auto"
) -> Solution:
    """Least rho with P inside some translate of rho*C.

    method: "auto" picks the half-space LP whenever normals exist, the
    vertex LP for vertex-only containers and the exact ball solver for
    balls; "hrep"/"vrep" force a formulation (useful for cross-checks).
    """
    _check_dims(P, C)
    if len(P) == 1:
        d = np.zeros(len(P))
        d[0] = 1.0
        return Solution(0.0, P.points[0].copy(), (0,), (), d)

    if method == "auto":
        if C.kind is ContainerKind.BALL:
            method = "ball"
        elif C.normals is not None:
            method = "hrep"
        else:
            method = "vrep"
    if method == "ball":
        if C.kind is not ContainerKind.BALL:
            raise ValueError("ball method needs a ball container")
        return _solve_ball(P, tol)
    if method == "hrep":
        if C.normals is None:
            raise ValueError("hrep method needs container normals")
        return _solve_hrep(P, C, tol)
    if method == "vrep":
        if C.vertices is None:
            raise ValueError("vrep method needs container vertices")
        return _solve_vrep(P, C, tol)
    raise ValueError(f"unknown method {method!r}")


def _solve_ball(P: PointSet, tol: Tolerance) -> Solution:
    ball = minimum_enclosing_ball(P.points, tol)
    duals = np.zeros(len(P))
    duals[list(ball.support)] = ball.weights
    active = touching_indices(P, Container.ball(P.dim), ball.radius, ball.center, tol)
    return Solution(ball.radius, ball.center, tuple(active), (), duals)


def _solve_hrep(P: PointSet, C: Container, tol: Tolerance) -> Solution:
    pts, A = P.points, C.normals
    n, d = pts.shape
    m = A.shape[0]
    # variables (c, rho):  a_k.p_i - a_k.c - rho <= 0   for every pair (i, k)
    lhs = np.zeros((n * m, d + 1))
    rhs = np.zeros(n * m)
    for i in range(n):
        lhs[i * m : (i + 1) * m, :d] = -A
        lhs[i * m : (i + 1) * m, d] = -1.0
        rhs[i * m : (i + 1) * m] = -(A @ pts[i])
    obj = np.zeros(d + 1)
    obj[d] = 1.0
    lower = np.concatenate([np.full(d, -np.inf), [0.0]])
    lp = LinearProgram.new(obj, lhs, ["<="] * (n * m), rhs, lower=lower)
    res = solve_lp(lp, tol)
    if res.status is not LpStatus.OPTIMAL:
        raise LpError(f"containment LP ended {res.status}")
    center = res.primal[:d]
    rho = max(0.0, res.value)
    lam_pairs = np.clip(-res.dual, 0.0, None)
    total = lam_pairs.sum()
    if total > 0:
        lam_pairs /= total
    duals = lam_pairs.reshape(n, m).sum(axis=1)
    active_normals = sorted(set(np.nonzero(lam_pairs.reshape(n, m).sum(axis=0) > 1e-9)[0].tolist()))
    active = touching_indices(P, C, rho, center, tol)
    _verify_cover(P, C, rho, center, tol)
    return Solution(rho, center, tuple(active), tuple(active_normals), duals)


def _solve_vrep(P: PointSet, C: Container, tol: Tolerance) -> Solution:
    pts, V = P.points, C.vertices
    n, d = pts.shape
    m = V.shape[0]
    # variables (c, rho, mu_11..mu_nm):
    #   sum_j mu_ij v_j + c = p_i          (d rows per point)
    #   sum_j mu_ij - rho = 0              (1 row per point)
    nvar = d + 1 + n * m
    rows = n * (d + 1)
    lhs = np.zeros((rows, nvar))
    rhs = np.zeros(rows)
    for i in range(n):
        r0 = i * (d + 1)
        lhs[r0 : r0 + d, :d] = np.eye(d)
        lhs[r0 : r0 + d, d + 1 + i * m : d + 1 + (i + 1) * m] = V.T
        rhs[r0 : r0 + d] = pts[i]
        lhs[r0 + d, d + 1 + i * m : d + 1 + (i + 1) * m] = 1.0
        lhs[r0 + d, d] = -1.0
    obj = np.zeros(nvar)
    obj[d] = 1.0
    lower = np.concatenate([np.full(d, -np.inf), np.zeros(1 + n * m)])
    lp = LinearProgram.new(obj, lhs, ["="] * rows, rhs, lower=lower)
    res = solve_lp(lp, tol)
    if res.status is not LpStatus.OPTIMAL:
        raise LpError(f"containment LP ended {res.status}")
    center = res.primal[:d]
    rho = max(0.0, res.value)
    lam = np.clip(np.array([-res.dual[i * (d + 1) + d] for i in range(n)]), 0.0, None)
    total = lam.sum()
    if total > 0:
        lam /= total
    active = touching_indices(P, C, rho, center, tol)
    _verify_cover(P, C, rho, center, tol)
    return Solution(rho, center, tuple(active), (), lam)


def _verify_cover(P: PointSet, C: Container, rho: float, center, tol: Tolerance) -> None:
    slack = 10 * tol.feas * max(1.0, rho)
    if C.normals is not None:
        worst = float(np.max(C.normals @ (P.points - center).T))
        if worst > rho + slack:
            raise LpError(f"solution does not cover: gauge {worst} > rho {rho}")


def _vrep_duals(P: PointSet, C: Container, tol: Tolerance):
    """Per-point weights lam_i and supporting normals a_i = y_i / lam_i from
    the vertex-formulation duals."""
    pts, V = P.points, C.vertices
    n, d = pts.shape
    m = V.shape[0]
    nvar = d + 1 + n * m
    rows = n * (d + 1)
    lhs = np.zeros((rows, nvar))
    rhs = np.zeros(rows)
    for i in range(n):
        r0 = i * (d + 1)
        lhs[r0 : r0 + d, :d] = np.eye(d)
        lhs[r0 : r0 + d, d + 1 + i * m : d + 1 + (i + 1) * m] = V.T
        rhs[r0 : r0 + d] = pts[i]
        lhs[r0 + d, d + 1 + i * m : d + 1 + (i + 1) * m] = 1.0
        lhs[r0 + d, d] = -1.0
    obj = np.zeros(nvar)
    obj[d] = 1.0
    lower = np.concatenate([np.full(d, -np.inf), np.zeros(1 + n * m)])
    lp = LinearProgram.new(obj, lhs, ["="] * rows, rhs, lower=lower)
    res = solve_lp(lp, tol)
    if res.status is not LpStatus.OPTIMAL:
        raise LpError(f"containment LP ended {res.status}")
    rho = max(0.0, res.value)
    center = res.primal[:d]
    out = []
    for i in range(n):
        y = res.dual[i * (d + 1) : i * (d + 1) + d]
        lam_i = -res.dual[i * (d + 1) + d]
        if lam_i > 1e-9:
            out.append((i, lam_i, y / lam_i))
    return rho, center, out


# -- certificates -------------------------------------------------------------


def make_certificate(
    P: PointSet, C: Container, sol: Solution, tol: Tolerance = DEFAULT_TOL
) -> Certificate:
    """Certify optimality of (rho, center) or raise ``NotOptimalError``.

    Touching points and their supporting normals are collected per
    container kind (active half-spaces; scaled point directions for the
    ball; vertex-formulation duals), then convex weights placing the
    origin in the normals' hull are found and pruned to at most d+1
    entries.
    """
    _check_dims(P, C)
    rho, center = float(sol.rho), np.asarray(sol.center, dtype=float)
    if rho <= tol.eq:
        raise ValueError("certificate undefined at zero radius (single-point case)")
    d = P.dim
    slack = tol.feas * max(1.0, rho)

    gauges = all_gauges(P, C, center, tol)
    worst = int(np.argmax(gauges))
    if gauges[worst] > rho + 10 * slack:
        hint = -(P.points[worst] - center)
        hint = hint / max(np.linalg.norm(hint), 1e-30)
        raise NotOptimalError(
            "infeasible", hint, f"point {worst} at gauge {gauges[worst]:.9g} > rho {rho:.9g}"
        )
    touching = [i for i in range(len(P)) if gauges[i] >= rho - 10 * slack]
    if not touching:
        raise NotOptimalError("slack", np.zeros(d), f"max gauge {gauges[worst]:.9g} < rho {rho:.9g}")

    pairs = _supporting_pairs(P, C, rho, center, touching, tol)
    normals = np.array([a for (_, a) in pairs])
    hull = in_convex_hull(normals, np.zeros(d), tol)
    if not hull.contains:
        raise NotOptimalError("separated", hull.separator, "origin outside touching normals")
    # one normal per touching point: when a point rests on several facets
    # (a vertex of the dilated container), the balanced weights combine
    # them into a single supporting normal from its normal cone
    weight: dict[int, float] = {}
    vec: dict[int, np.ndarray] = {}
    for (i, a), w in zip(pairs, hull.coefficients):
        if w <= 1e-12:
            continue
        weight[i] = weight.get(i, 0.0) + w
        vec[i] = vec.get(i, np.zeros(d)) + w * a
    idx = tuple(sorted(weight))
    lam = np.array([weight[i] for i in idx])
    lam /= lam.sum()
    normals = np.array([vec[i] / weight[i] for i in idx])
    if len(idx) < 2:
        raise LpError("certificate degenerated to a single normal")
    cert = Certificate(P.points[list(idx)], idx, normals, lam)
    _verify_certificate(cert, C, rho, center, tol)
    return cert


def _supporting_pairs(P, C, rho, center, touching, tol) -> list[tuple[int, np.ndarray]]:
    slack = tol.feas * max(1.0, rho)
    pairs: list[tuple[int, np.ndarray]] = []
    if C.kind is ContainerKind.BALL:
        for i in touching:
            u = (P.points[i] - center) / rho
            pairs.append((i, u / max(np.linalg.norm(u), 1e-30)))
        return pairs
    if C.normals is not None:
        A = C.normals
        for i in touching:
            prods = A @ (P.points[i] - center)
            for k in np.nonzero(prods >= rho - 10 * slack)[0]:
                pairs.append((i, A[k].copy()))
        return pairs
    # vertex-only container: recover coherent normals from the LP duals of
    # a fresh solve, provided the candidate is that optimum
    opt_rho, _, dual_pairs = _vrep_duals(P, C, tol)
    if rho > opt_rho + tol.eq * max(1.0, opt_rho):
        # candidate is suboptimal; gather one polar-support normal per
        # touching point so the separation step still has generators
        for i in touching:
            u = (P.points[i] - center) / rho
            pairs.append((i, _polar_support(C.vertices, u, tol)))
        return pairs
    touch_set = set(touching)
    for i, _lam, a in dual_pairs:
        if i in touch_set:
            pairs.append((i, a))
    if not pairs:  # dual support disjoint from candidate touch set
        for i in touching:
            u = (P.points[i] - center) / rho
            pairs.append((i, _polar_support(C.vertices, u, tol)))
    return pairs


def _polar_support(V: np.ndarray, u: np.ndarray, tol: Tolerance) -> np.ndarray:
    """A normal a with a.u maximal subject to a.v_j <= 1 for all vertices."""
    m, d = V.shape
    lp = LinearProgram.new(u, V, ["<="] * m, np.ones(m), maximize=True)
    res = solve_lp(lp, tol)
    if res.status is not LpStatus.OPTIMAL:
        raise LpError(f"polar support LP ended {res.status}")
    return res.primal


def _verify_certificate(cert: Certificate, C: Container, rho, center, tol: Tolerance) -> None:
    resid = float(np.max(np.abs(cert.lam @ cert.normals)))
    if resid > 10 * tol.feas:
        raise LpError(f"certificate normals do not balance: residual {resid:.3e}")
    if abs(cert.lam.sum() - 1.0) > tol.feas or np.any(cert.lam < -tol.feas):
        raise LpError("certificate weights are not convex coefficients")
    for p, a in zip(cert.touch_points, cert.normals):
        u = (p - center) / rho
        if abs(float(a @ u) - 1.0) > 1e3 * tol.feas:
            raise LpError("certificate normal does not support at its touching point")
        if C.vertices is not None:
            if float(np.max(C.vertices @ a)) > 1.0 + 1e3 * tol.feas:
                raise LpError("certificate normal cuts into the container")


def support_points(
    P: PointSet, C: Container, sol: Solution, tol: Tolerance = DEFAULT_TOL
) -> tuple[int, ...]:
    """Indices S with |S| <= d+1 and R(S, C) = R(P, C).

    Taken from the certificate's touching points (which inherit the
    optimality certificate, hence the full radius).  Degenerate dual
    bases are repaired by dropping redundant candidates one at a time.
    """
    if sol.rho <= tol.eq:
        return (0,)
    try:
        cert = make_certificate(P, C, sol, tol)
        cand = sorted(set(cert.point_indices))
    except (NotOptimalError, LpError):
        cand = sorted(np.nonzero(sol.duals > 1e-9)[0].tolist())
        if not cand:
            cand = list(sol.active_points)
    sub = min_containment(P.subset(cand), C, tol)
    if sub.rho >= sol.rho - tol.eq * max(1.0, sol.rho) and len(cand) <= P.dim + 1:
        return tuple(cand)
    # repair: greedily drop members whose removal keeps the radius
    cand = sorted(set(cand) | set(sol.active_points))
    changed = True
    while changed and len(cand) > 1:
        changed = False
        for i in range(len(cand)):
            trial = cand[:i] + cand[i + 1 :]
            if min_containment(P.subset(trial), C, tol).rho >= sol.rho - tol.eq * max(1.0, sol.rho):
                cand = trial
                changed = True
                break
    if min_containment(P.subset(cand), C, tol).rho < sol.rho - tol.eq * max(1.0, sol.rho):
        raise LpError("support extraction failed to reproduce the radius")
    return tuple(cand)


def halfspace_lemma_check(P: PointSet, sol: Solution, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Euclidean optimality: the origin lies in the hull of the scaled
    touching directions (p_i - c)/rho.  Equivalent to: every half-space
    with the center on its boundary contains a touching point."""
    rho, center = float(sol.rho), np.asarray(sol.center, dtype=float)
    if rho <= tol.eq:
        return True
    ball = Container.ball(P.dim)
    touching = touching_indices(P, ball, rho, center, tol)
    if not touching:
        return False
    dirs = (P.points[touching] - center) / rho
    return in_convex_hull(dirs, np.zeros(P.dim), tol).contains
