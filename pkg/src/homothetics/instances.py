"""Deterministic generators: extremal bodies, random corpora, vertex
enumeration for small H-polytopes.

The regular simplex is normalised so its vertices x_i satisfy
|x_i|^2 = d and x_i.x_j = -1 for i != j; with unit-offset normals
a_j = -x_j this gives the clean pairing a_j.x_i = 1 (j != i) and -d
(j = i), from which edge length sqrt(2d+2) and circumradius sqrt(d)
follow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import Container, DEFAULT_TOL, InvalidContainer, PointSet, Tolerance

__all__ = [
    "InstanceSpec",
    "simplex_vertices",
    "regular_simplex",
    "simplex_cap_neg",
    "symmetric_counterexample",
    "standard_container",
    "box_ambiguity_instance",
    "random_pointset",
    "vertex_enumeration",
]

FAMILIES = (
    "regular-simplex",
    "cap",
    "sym-prism",
    "box-ambiguity",
    "random",
    "ball",
    "box",
    "cross",
)


@dataclass(frozen=True)
class InstanceSpec:
    """Parameters naming one generated instance; ``build`` materialises it
    as an optional point set plus an optional container."""

    family: str
    dim: int
    k: int | None = None
    tau: float = 0.0
    n: int = 16
    seed: int = 0
    distribution: str = "ball-uniform"

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; known: {', '.join(FAMILIES)}")
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.family == "sym-prism" and self.k is None:
            raise ValueError("sym-prism needs k")

    def build(self) -> tuple[PointSet | None, Container | None]:
        if self.family == "regular-simplex":
            return regular_simplex(self.dim)
        if self.family == "cap":
            return None, simplex_cap_neg(self.dim)
        if self.family == "sym-prism":
            return None, symmetric_counterexample(self.dim, self.k)
        if self.family == "box-ambiguity":
            return box_ambiguity_instance(self.dim, self.tau), standard_container("box", self.dim)
        if self.family == "random":
            return random_pointset(self.n, self.dim, self.seed, self.distribution), None
        return None, standard_container(self.family, self.dim)


def simplex_vertices(d: int) -> np.ndarray:
    """The d+1 regular-simplex vertices, recursively constructed and
    rescaled to squared norm d (pairwise dot products -1, zero sum)."""
    if d < 1:
        raise ValueError("dimension must be positive")

    def unit(k: int) -> np.ndarray:
        # unit-circumradius coordinates: first vertex at e_1, the rest a
        # shrunken copy of the (k-1)-dimensional construction
        if k == 1:
            return np.array([[1.0], [-1.0]])
        prev = unit(k - 1)
        top = np.zeros(k)
        top[0] = 1.0
        rest = np.hstack([np.full((k, 1), -1.0 / k), np.sqrt(1.0 - 1.0 / k**2) * prev])
        return np.vstack([top, rest])

    return np.sqrt(d) * unit(d)


def regular_simplex(d: int) -> tuple[PointSet, Container]:
    """Vertex set of the regular simplex and the simplex itself as a
    container in dual representation (normals a_j = -x_j)."""
    X = simplex_vertices(d)
    return PointSet(X), Container.dual_rep(-X, X)


def simplex_cap_neg(d: int, tol: Tolerance = DEFAULT_TOL) -> Container:
    """The symmetric body T ∩ (-T): simplex intersected with its
    reflection, in dual representation (half-space only beyond the
    vertex-enumeration budget of d <= 6)."""
    X = simplex_vertices(d)
    normals = np.vstack([-X, X])
    if d > 6:
        return Container.from_normals(normals)
    return vertex_enumeration(Container.from_normals(normals), tol)


def symmetric_counterexample(d: int, k: int, tol: Tolerance = DEFAULT_TOL) -> Container:
    """Prism over the k-dimensional T ∩ (-T), boxed in the remaining
    coordinates: (T^k ∩ -T^k) x [-1, 1]^(d-k)."""
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    cap = simplex_cap_neg(k, tol)
    if k == d:
        return cap
    pad = d - k
    normals = np.hstack([cap.normals, np.zeros((len(cap.normals), pad))])
    box_normals = np.vstack([np.eye(pad), -np.eye(pad)])
    normals = np.vstack([normals, np.hstack([np.zeros((2 * pad, k)), box_normals])])
    corners = np.array(np.meshgrid(*([[-1.0, 1.0]] * pad), indexing="ij")).reshape(pad, -1).T
    vertices = np.vstack(
        [np.hstack([np.tile(v, (len(corners), 1)), corners]) for v in cap.vertices]
    )
    return Container.dual_rep(normals, vertices)


def standard_container(name: str, d: int) -> Container:
    """ball | box | cross, each with the obvious representations."""
    if name == "ball":
        return Container.ball(d)
    if name == "box":
        normals = np.vstack([np.eye(d), -np.eye(d)])
        corners = np.array(np.meshgrid(*([[-1.0, 1.0]] * d), indexing="ij")).reshape(d, -1).T
        return Container.dual_rep(normals, corners)
    if name == "cross":
        signs = np.array(np.meshgrid(*([[-1.0, 1.0]] * d), indexing="ij")).reshape(d, -1).T
        vertices = np.vstack([np.eye(d), -np.eye(d)])
        return Container.dual_rep(signs, vertices)
    raise ValueError(f"unknown container family {name!r}")


def box_ambiguity_instance(d: int, tau: float) -> PointSet:
    """Points (tau ± 1)e_1 ... (tau ± 1)e_{d-1}, ±e_d.

    Any point of [-1,1]^{d-1} x {0} centers the pair {±e_d} at radius one
    in the unit box, but only the center with first coordinates tau also
    covers the whole set; committing to another center blindly fails for
    every dilation below 2/(1+tau).
    """
    if not -1.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [-1, 1]")
    if d < 2:
        raise ValueError("needs d >= 2")
    pts = []
    for j in range(d - 1):
        e = np.zeros(d)
        e[j] = 1.0
        pts.append((tau + 1.0) * e)
        pts.append((tau - 1.0) * e)
    e = np.zeros(d)
    e[d - 1] = 1.0
    pts.append(e)
    pts.append(-e)
    return PointSet(np.array(pts))


def random_pointset(n: int, d: int, seed: int, distribution: str = "ball-uniform") -> PointSet:
    """Seeded sample of n points; the generator is PCG64, so identical
    seeds reproduce identical coordinates on every platform.

    Distributions: ball-uniform, sphere, gauss, simplex-hull.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    if distribution == "gauss":
        pts = rng.standard_normal((n, d))
    elif distribution == "sphere":
        raw = rng.standard_normal((n, d))
        pts = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    elif distribution == "ball-uniform":
        raw = rng.standard_normal((n, d))
        raw /= np.linalg.norm(raw, axis=1, keepdims=True)
        radii = rng.random(n) ** (1.0 / d)
        pts = raw * radii[:, None]
    elif distribution == "simplex-hull":
        X = simplex_vertices(d)
        w = rng.dirichlet(np.ones(d + 1), size=n)
        pts = w @ X
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return PointSet(pts)


def vertex_enumeration(C: Container, tol: Tolerance = DEFAULT_TOL) -> Container:
    """Brute-force vertices of a small bounded H-polytope; returns the
    dual representation.

    Every d-subset of the constraints is solved; solutions feasible for
    all constraints are kept and deduplicated within 10*tol.eq in the
    max norm.  Intended for d <= 6 and a few dozen constraints.
    """
    if C.normals is None:
        raise InvalidContainer("vertex enumeration needs an H-representation")
    A = C.normals
    m, d = A.shape
    if d > 6:
        raise ValueError(f"vertex enumeration supports d <= 6, got d={d}")
    if m > 40:
        raise ValueError(f"vertex enumeration supports <= 40 constraints, got {m}")
    ones = np.ones(d)
    found: list[np.ndarray] = []
    for sub in combinations(range(m), d):
        M = A[list(sub)]
        try:
            x = np.linalg.solve(M, ones)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)):
            continue
        if np.max(A @ x) <= 1.0 + tol.feas:
            found.append(x)
    dedup_radius = 10.0 * tol.eq
    vertices: list[np.ndarray] = []
    for x in found:
        if not any(np.max(np.abs(x - v)) <= dedup_radius for v in vertices):
            vertices.append(x)
    if len(vertices) < d + 1:
        raise InvalidContainer("enumeration found too few vertices; polytope degenerate?")
    return Container.dual_rep(A, np.array(vertices))
