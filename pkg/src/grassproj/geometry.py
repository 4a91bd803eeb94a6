"""Linear-algebra substrate: subspaces, planes, local lines, and their metrics.

Conventions
-----------
A k-dimensional subspace of R^n is represented canonically by its n x n
orthogonal projection matrix; orthonormal frames are kept alongside for fast
coordinate work but are never treated as identities.  Affine planes split as
direction + offset with the offset orthogonal to the direction.  A "local
line" is a line transverse to the hyperplane R^{n-1} x {0}, stored by its
intersection points X (with x_n = 0) and Y (with x_n = 1); the pair (X, Y)
is the global chart used throughout.

All distances here are exact linear algebra except ``hausdorff_rho``, which
evaluates a sup by deterministic sampling: the distance-to-plane function is
convex, so the sup over the unit ball is attained on the boundary sphere and
we sample that sphere quasi-uniformly at 1000 * k points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .constants import (
    BALL_SAMPLES_PER_DIM,
    CHART_MAX_ANGLE,
    DEGENERATE_ANGLE_TOL,
    FRAME_ORTHO_TOL,
    OFFSET_MAX_NORM,
    OFFSET_ORTHO_TOL,
    PROJ_IDEMPOTENT_TOL,
)


class ContractViolation(ValueError):
    """A documented precondition or type invariant was violated."""


@dataclass(frozen=True)
class Params:
    """Global parameter record for the projection experiments.

    n : ambient dimension (>= 3)
    k : target plane dimension, 1 < k < n
    l : source plane dimension (lines by default)
    mu : transversality radius; lines within angle mu of V-perp are excluded
    delta : reference discretization scale (experiments pass ladders per call)
    a, s, t, u : dimension exponents
    K : high-low cutoff factor
    """

    n: int
    k: int
    l: int = 1
    mu: float = 5e-3
    delta: float = 2.0 ** -7
    a: float = 0.0
    s: float = 0.0
    t: float = 0.0
    u: float = 0.0
    K: float = 4.0

    def __post_init__(self):
        if not (1 <= self.l < self.k < self.n):
            raise ContractViolation(f"need 1 <= l < k < n, got l={self.l} k={self.k} n={self.n}")
        if not (0 < self.mu < 1 / 100):
            raise ContractViolation(f"mu must lie in (0, 1/100), got {self.mu}")
        if not (0 < self.delta < 1 / 100):
            raise ContractViolation(f"delta must lie in (0, 1/100), got {self.delta}")
        for name in ("a", "s", "t", "u"):
            if getattr(self, name) < 0:
                raise ContractViolation(f"{name} must be nonnegative")
        if not self.K > 1:
            raise ContractViolation(f"K must exceed 1, got {self.K}")


def _orthonormalize_rows(rows: np.ndarray) -> np.ndarray:
    """Orthonormalize the rows of a full-rank (k, n) matrix."""
    q, r = np.linalg.qr(rows.T)
    if np.min(np.abs(np.diag(r))) < 1e-12:
        raise ContractViolation("rank-deficient frame")
    return q.T[: rows.shape[0]]


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional linear subspace of R^n.

    ``proj`` is the canonical representative; ``frame`` holds one orthonormal
    basis (rows) and is not canonical.
    """

    frame: np.ndarray
    proj: np.ndarray = field(default=None)

    def __post_init__(self):
        frame = np.atleast_2d(np.asarray(self.frame, dtype=float))
        object.__setattr__(self, "frame", frame)
        gram = frame @ frame.T
        if np.max(np.abs(gram - np.eye(frame.shape[0]))) > FRAME_ORTHO_TOL:
            raise ContractViolation("frame rows are not orthonormal")
        proj = frame.T @ frame
        object.__setattr__(self, "proj", proj)
        if np.max(np.abs(proj @ proj - proj)) > PROJ_IDEMPOTENT_TOL:
            raise ContractViolation("projection is not idempotent")

    @classmethod
    def from_spanning(cls, rows: np.ndarray) -> "Subspace":
        """Build from any spanning set of row vectors (orthonormalized here)."""
        return cls(_orthonormalize_rows(np.atleast_2d(np.asarray(rows, dtype=float))))

    @property
    def dim(self) -> int:
        return self.frame.shape[0]

    @property
    def ambient(self) -> int:
        return self.frame.shape[1]

    def perp(self) -> "Subspace":
        """The orthogonal complement, as a Subspace."""
        n = self.ambient
        u, _, _ = np.linalg.svd(np.eye(n) - self.proj)
        return Subspace(u[:, : n - self.dim].T)

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of P_V(x) in the frame basis."""
        return self.frame @ np.asarray(x, dtype=float)

    def embed(self, c: np.ndarray) -> np.ndarray:
        """Ambient vector for frame coordinates c."""
        return self.frame.T @ np.asarray(c, dtype=float)

    def with_last_axis(self, v: np.ndarray) -> "Subspace":
        """Same subspace, frame rotated so the last frame row points along P_V(v).

        Useful for building a chart inside V whose vertical axis follows a
        distinguished direction.  Requires P_V(v) != 0.
        """
        u = self.proj @ np.asarray(v, dtype=float)
        norm = np.linalg.norm(u)
        if norm < 1e-12:
            raise ContractViolation("axis vector projects to zero")
        u = u / norm
        # complete u to a frame of V: strip the u-component from the old frame
        rest = self.frame - np.outer(self.frame @ u, u)
        q, s, _ = np.linalg.svd(rest, full_matrices=False)
        basis = (q.T @ rest)[: self.dim - 1]
        basis = _orthonormalize_rows(basis) if self.dim > 1 else np.empty((0, self.ambient))
        return Subspace(np.vstack([basis, u[None, :]]))


@dataclass(frozen=True)
class AffinePlane:
    """A k-dimensional affine plane: direction subspace plus offset in dir-perp."""

    dir: Subspace
    offset: np.ndarray

    def __post_init__(self):
        offset = np.asarray(self.offset, dtype=float)
        object.__setattr__(self, "offset", offset)
        if offset.shape != (self.dir.ambient,):
            raise ContractViolation("offset has wrong ambient dimension")
        if np.max(np.abs(self.dir.frame @ offset), initial=0.0) > OFFSET_ORTHO_TOL:
            raise ContractViolation("offset is not orthogonal to the direction")

    @property
    def dim(self) -> int:
        return self.dir.dim

    @property
    def ambient(self) -> int:
        return self.dir.ambient

    @classmethod
    def through_point(cls, direction: Subspace, point: np.ndarray) -> "AffinePlane":
        point = np.asarray(point, dtype=float)
        offset = point - direction.proj @ point
        return cls(direction, offset)

    def distance_to_point(self, x: np.ndarray) -> float:
        r = np.asarray(x, dtype=float) - self.offset
        return float(np.linalg.norm(r - self.dir.proj @ r))

    def contains_point(self, x: np.ndarray, tol: float) -> bool:
        return self.distance_to_point(x) <= tol


@dataclass(frozen=True)
class LocalLine:
    """A line transverse to R^{n-1} x {0}, in the (X, Y) chart.

    X is the intersection with {x_n = 0}, Y with {x_n = 1}; both live in
    R^{n-1}.  The derived direction (Y - X, 1), normalized, always has a
    positive last coordinate.
    """

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "X", np.asarray(self.X, dtype=float))
        object.__setattr__(self, "Y", np.asarray(self.Y, dtype=float))
        if self.X.shape != self.Y.shape or self.X.ndim != 1:
            raise ContractViolation("X and Y must be vectors of equal length")

    @property
    def ambient(self) -> int:
        return self.X.shape[0] + 1

    def direction(self) -> np.ndarray:
        d = np.concatenate([self.Y - self.X, [1.0]])
        return d / np.linalg.norm(d)

    def point_at_height(self, h: float) -> np.ndarray:
        return np.concatenate([self.X + h * (self.Y - self.X), [h]])

    def angle_to_vertical(self) -> float:
        d = self.direction()
        return math.asin(min(1.0, float(np.linalg.norm(d[:-1]))))

    def chart_point(self) -> np.ndarray:
        """Coordinates in R^{2(n-1)}: concat(X, Y)."""
        return np.concatenate([self.X, self.Y])

    def to_plane(self) -> AffinePlane:
        direction = Subspace(self.direction()[None, :])
        return AffinePlane.through_point(direction, np.concatenate([self.X, [0.0]]))

    @classmethod
    def from_chart_point(cls, p: np.ndarray) -> "LocalLine":
        p = np.asarray(p, dtype=float)
        if p.ndim != 1 or p.size % 2 != 0:
            raise ContractViolation("chart point must have even length")
        m = p.size // 2
        return cls(p[:m], p[m:])

    @classmethod
    def from_plane(cls, plane: AffinePlane) -> "LocalLine":
        if plane.dim != 1:
            raise ContractViolation("only lines convert to the (X, Y) chart")
        d = plane.dir.frame[0]
        if abs(d[-1]) < DEGENERATE_ANGLE_TOL:
            raise ContractViolation("line is parallel to R^{n-1}: chart undefined")
        if d[-1] < 0:
            d = -d
        p = plane.offset
        t0 = -p[-1] / d[-1]
        t1 = (1.0 - p[-1]) / d[-1]
        return cls((p + t0 * d)[:-1], (p + t1 * d)[:-1])


# ---------------------------------------------------------------------------
# metrics


def grassmann_distance(v1: Subspace, v2: Subspace) -> float:
    """Operator norm of the difference of the two orthogonal projections.

    Equals the sine of the largest principal angle; symmetric, zero iff the
    subspaces coincide, and satisfies the triangle inequality.
    """
    if v1.dim != v2.dim or v1.ambient != v2.ambient:
        raise ContractViolation("subspaces must share dimension and ambient space")
    return float(np.linalg.norm(v1.proj - v2.proj, ord=2))


def affine_distance(p1: AffinePlane, p2: AffinePlane) -> float:
    """Direction distance plus offset distance."""
    if p1.dim != p2.dim or p1.ambient != p2.ambient:
        raise ContractViolation("planes must share dimension and ambient space")
    return grassmann_distance(p1.dir, p2.dir) + float(np.linalg.norm(p1.offset - p2.offset))


def line_distance_chart(l1: LocalLine, l2: LocalLine) -> float:
    """|X1 - X2| + |Y1 - Y2| on the (X, Y) chart."""
    return float(np.linalg.norm(l1.X - l2.X) + np.linalg.norm(l1.Y - l2.Y))


@lru_cache(maxsize=None)
def _unit_sphere_samples(k: int, m: int) -> np.ndarray:
    """Deterministic quasi-uniform points on the unit sphere of R^k.

    k = 1 uses the two endpoints; k = 2 a uniform circle; k >= 3 normalizes a
    Kronecker lattice (never returns the zero vector).
    """
    if k == 1:
        return np.array([[1.0], [-1.0]])
    if k == 2:
        theta = np.linspace(0.0, 2 * np.pi, m, endpoint=False)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    # plastic-constant Kronecker sequence in the cube, pushed to the sphere
    phi = 2.0
    for _ in range(64):
        phi = (1 + phi) ** (1.0 / (k + 1))
    alpha = phi ** -np.arange(1, k + 1)
    u = np.mod(0.5 + np.outer(np.arange(1, m + 1), alpha), 1.0) * 2.0 - 1.0
    norms = np.linalg.norm(u, axis=1)
    keep = norms > 1e-9
    return u[keep] / norms[keep, None]


def _plane_boundary_points(plane: AffinePlane | Subspace) -> np.ndarray:
    """Sample points of the boundary sphere of B^n(0,1) intersected with the plane."""
    if isinstance(plane, Subspace):
        sphere = _unit_sphere_samples(plane.dim, BALL_SAMPLES_PER_DIM * plane.dim)
        return sphere @ plane.frame
    radius2 = 1.0 - float(np.dot(plane.offset, plane.offset))
    if radius2 <= 0:
        return plane.offset[None, :]
    sphere = _unit_sphere_samples(plane.dim, BALL_SAMPLES_PER_DIM * plane.dim)
    return plane.offset[None, :] + math.sqrt(radius2) * (sphere @ plane.dir.frame)


def _sup_distance_to(points: np.ndarray, target: AffinePlane | Subspace) -> float:
    if isinstance(target, Subspace):
        resid = points - points @ target.proj.T
    else:
        shifted = points - target.offset[None, :]
        resid = shifted - shifted @ target.dir.proj.T
    return float(np.max(np.linalg.norm(resid, axis=1)))


def hausdorff_rho(v1, v2) -> float:
    """Smallest rho with B^n(0,1) cap V1 inside N_rho(V2), symmetrized.

    Computed by sampling: distance to a plane is convex, so the sup over the
    unit-ball slice is attained on its boundary sphere, which is sampled at
    1000 * k deterministic points.  The value is a lower bound on the true
    sup with relative error below ~1e-3 for k <= 3.
    """
    if isinstance(v1, Subspace) != isinstance(v2, Subspace):
        raise ContractViolation("mixed subspace/affine arguments")
    d1 = v1.dim if isinstance(v1, Subspace) else v1.dim
    d2 = v2.dim if isinstance(v2, Subspace) else v2.dim
    if d1 != d2:
        raise ContractViolation("planes must share dimension")
    forward = _sup_distance_to(_plane_boundary_points(v1), v2)
    backward = _sup_distance_to(_plane_boundary_points(v2), v1)
    return max(forward, backward)


# ---------------------------------------------------------------------------
# projections


def project_point(v: Subspace, x: np.ndarray) -> np.ndarray:
    """Orthogonal projection of x onto V (ambient coordinates)."""
    return v.proj @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class ProjectedLine:
    """A line in V, given by two distinct points in V-frame coordinates."""

    point_a: np.ndarray
    point_b: np.ndarray


@dataclass(frozen=True)
class ProjectedPoint:
    """The projection collapsed to a single point (dir(L) inside V-perp)."""

    point: np.ndarray


@dataclass(frozen=True)
class DegenerateProjection:
    """Angle to V-perp fell inside (0, mu]: caller decides whether to keep."""

    angle: float


def angle_to_vperp(v: Subspace, direction: np.ndarray) -> float:
    """Angle between a unit direction and V-perp, via arcsin |P_V d|.

    Stable near the degenerate case because |P_V d| is computed directly.
    """
    s = float(np.linalg.norm(v.proj @ direction))
    return math.asin(min(1.0, s))


def project_line(v: Subspace, line: LocalLine, mu: float):
    """Project a local line onto V.

    Returns a ProjectedLine when the transversality angle exceeds mu, a
    ProjectedPoint when the direction lies in V-perp (angle at machine zero),
    and DegenerateProjection for angles in (0, mu].
    """
    d = line.direction()
    angle = angle_to_vperp(v, d)
    if angle <= DEGENERATE_ANGLE_TOL:
        return ProjectedPoint(v.coords(line.point_at_height(0.0)))
    if angle <= mu:
        return DegenerateProjection(angle)
    a = v.coords(line.point_at_height(0.0))
    b = v.coords(line.point_at_height(1.0))
    return ProjectedLine(a, b)


# ---------------------------------------------------------------------------
# invariant sampling


def sample_grassmannian(n: int, k: int, rng: np.random.Generator) -> Subspace:
    """Draw a rotation-invariant random k-subspace of R^n.

    Rows of a k x n standard-normal matrix are orthonormalized; the Gaussian
    law makes the induced distribution invariant under rotations.  A
    rank-deficient draw (probability zero) is redrawn.
    """
    if not 1 <= k < n:
        raise ContractViolation("need 1 <= k < n")
    while True:
        rows = rng.standard_normal((k, n))
        try:
            return Subspace(_orthonormalize_rows(rows))
        except ContractViolation:
            continue


def sample_frames(n: int, k: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized rotation-invariant frames, shape (size, k, n)."""
    rows = rng.standard_normal((size, n, k))
    q, r = np.linalg.qr(rows)
    # fix the QR sign convention so the law is exactly invariant
    signs = np.sign(np.einsum("sii->si", r))
    signs[signs == 0] = 1.0
    return np.transpose(q * signs[:, None, :], (0, 2, 1))


def sample_transversal(
    n: int,
    k: int,
    mu: float,
    rng: np.random.Generator,
    axis: np.ndarray | None = None,
    max_tries: int = 10000,
) -> Subspace:
    """Invariant V in G(k, n) with angle(axis, V-perp) > mu + chart cap.

    Rejection-sampled so every chart-valid line (angle to the x_n axis at most
    CHART_MAX_ANGLE) stays mu-transversal to V-perp.
    """
    if axis is None:
        axis = np.zeros(n)
        axis[-1] = 1.0
    threshold = mu + CHART_MAX_ANGLE
    for _ in range(max_tries):
        v = sample_grassmannian(n, k, rng)
        if angle_to_vperp(v, axis) > threshold:
            return v
    raise ContractViolation("transversal rejection sampling failed")


def chart_valid(line: LocalLine) -> bool:
    """Chart validity: angle to the x_n axis within CHART_MAX_ANGLE and
    offset inside B(0, 1/2)."""
    if line.angle_to_vertical() > CHART_MAX_ANGLE:
        return False
    return float(np.linalg.norm(line.to_plane().offset)) < OFFSET_MAX_NORM
