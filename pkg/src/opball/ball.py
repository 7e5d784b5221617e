"""Geometry of the open unit ball of bounded operators.

Points are matrices of spectral norm strictly below one.  The central object
is the Moebius transformation

    mobius(A, Z) = (I - A A*)^(-1/2) (Z + A) (I + A* Z)^(-1) (I - A* A)^(1/2),

a bi-holomorphic automorphism of the ball.  Distances use the closed form

    ball_dist(X, Y) = atanh || mobius_to_origin(X, Y) ||,

which is adopted as definitional here: the chain-infimum description of the
invariant (Kobayashi) pseudo-metric reduces to this expression on the ball,
so chains are never constructed (they are documentation only).

Boundary policy: constructors demand a strictly positive margin, and the
transformations additionally fail with :class:`Singular` when a defect
eigenvalue drops below the configured floor, rather than returning digits
that are mostly noise.  atanh operands are checked first and raise
:class:`OutOfDisc` instead of returning infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EigenvalueBelowFloor, OutOfBall, OutOfDisc, ShapeMismatch, Singular
from .matkernel import adj, as_cmat, herm_fun, inverse, op_norm
from .tolerances import DEFAULT


@dataclass(frozen=True)
class BallPoint:
    """A strict contraction from K to H, stored as a dimH x dimK matrix."""

    mat: np.ndarray
    margin: float = field(init=False)

    def __post_init__(self):
        m = as_cmat(self.mat)
        norm = op_norm(m)
        if norm >= 1.0:
            raise OutOfBall(f"operator norm {norm:.12f} is not strictly below 1")
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "margin", 1.0 - norm)

    @property
    def dim_h(self) -> int:
        return self.mat.shape[0]

    @property
    def dim_k(self) -> int:
        return self.mat.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.mat.shape


def zero_point(dim_h: int, dim_k: int) -> BallPoint:
    """The base point 0 of the ball."""
    return BallPoint(np.zeros((dim_h, dim_k), dtype=np.complex128))


def _require_same_shape(a: BallPoint, z: BallPoint) -> None:
    if a.shape != z.shape:
        raise ShapeMismatch(f"ball points have shapes {a.shape} and {z.shape}")


def _defect_inv_sqrt(mat: np.ndarray) -> np.ndarray:
    """(I - M M*)^(-1/2), failing loudly when the margin has collapsed."""
    d = np.eye(mat.shape[0]) - mat @ adj(mat)
    try:
        return herm_fun(d, lambda x: 1.0 / math.sqrt(x), floor=DEFAULT.defect_floor)
    except EigenvalueBelowFloor as exc:
        raise Singular(f"defect eigenvalue {exc.eigenvalue:.3e}: margin too small") from exc


def _defect_sqrt(mat: np.ndarray) -> np.ndarray:
    """(I - M* M)^(1/2), failing loudly when the margin has collapsed."""
    d = np.eye(mat.shape[1]) - adj(mat) @ mat
    try:
        return herm_fun(d, math.sqrt, floor=DEFAULT.defect_floor)
    except EigenvalueBelowFloor as exc:
        raise Singular(f"defect eigenvalue {exc.eigenvalue:.3e}: margin too small") from exc


def _mobius_mat(a: np.ndarray, z: np.ndarray, sign: float) -> np.ndarray:
    """Shared core of the Moebius map (sign=+1) and its inverse (sign=-1)."""
    eye_k = np.eye(a.shape[1])
    middle = z + sign * a
    bracket = eye_k + sign * adj(a) @ z
    try:
        bracket_inv = inverse(bracket)
    except Singular as exc:
        raise Singular("Moebius bracket is singular: margin too small") from exc
    return _defect_inv_sqrt(a) @ middle @ bracket_inv @ _defect_sqrt(a)


def mobius(a: BallPoint, z: BallPoint) -> BallPoint:
    """Moebius transformation of the ball with center ``a`` applied to ``z``.

    The operator analogue of the disc automorphism w -> (w + a)/(1 + conj(a) w);
    it maps the ball bi-holomorphically onto itself and sends 0 to ``a``.
    """
    _require_same_shape(a, z)
    return BallPoint(_mobius_mat(a.mat, z.mat, +1.0))


def mobius_inv(a: BallPoint, z: BallPoint) -> BallPoint:
    """Inverse of :func:`mobius` with the same center: sends ``a`` to 0."""
    _require_same_shape(a, z)
    return BallPoint(_mobius_mat(a.mat, z.mat, -1.0))


def mobius_to_origin(center: BallPoint, point: BallPoint) -> BallPoint:
    """The automorphism that moves ``center`` to the origin, at ``point``.

    This is :func:`mobius` with center ``-center``; deriving it by center
    negation keeps a single Moebius formula under test.  It satisfies
    mobius_to_origin(X, X) = 0 and mobius_to_origin(X, 0) = -X.
    """
    _require_same_shape(center, point)
    return BallPoint(_mobius_mat(-center.mat, point.mat, +1.0))


def _atanh_checked(x: float) -> float:
    if x >= 1.0:
        raise OutOfDisc(f"atanh operand {x!r} is not strictly below 1")
    return math.atanh(x)


def poincare_dist(a: complex, b: complex) -> float:
    """Hyperbolic distance on the unit disc: atanh(|a - b| / |1 - conj(a) b|)."""
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise OutOfDisc(f"disc points required, got |a|={abs(a)}, |b|={abs(b)}")
    num = abs(a - b)
    if num == 0.0:
        return 0.0
    return _atanh_checked(num / abs(1.0 - np.conj(a) * b))


def ball_dist(x: BallPoint, y: BallPoint) -> float:
    """Invariant distance between two ball points.

    Closed form atanh || mobius_to_origin(x, y) ||; reduces to
    :func:`poincare_dist` for 1 x 1 points and to atanh ||y|| at the origin.
    """
    _require_same_shape(x, y)
    return _atanh_checked(op_norm(mobius_to_origin(x, y).mat))
