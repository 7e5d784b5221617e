"""Bounded transform between operators H -> K and the unit ball of B(K, H).

An operator T from H to K (matrix of shape dimK x dimH) maps to the strict
contraction

    bounded_transform(T) = (I + T*T)^(-1/2) T*,

whose norm satisfies ||T-hat||^2 = ||T T*|| / (1 + ||T T*||) < 1.  The map is
inverted in closed form by (I - A*A)^(-1/2) A*.  The distance

    operator_dist(T, S) = atanh || left_defect(T, S) @ right_defect_inv(S, T) ||

is a metric on operators and coincides with the invariant ball distance
between the transforms; the left/right-defect route is canonical for output
while the ball route serves as an independent cross-check.

Desk-scale model: H and K are finite dimensional, so every finite matrix is
admitted as a "closed densely-defined" operator; unboundedness is emulated by
ensembles with very large norms.  This is a documented model limitation, not
a hidden assumption.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .ball import BallPoint, _atanh_checked
from .errors import NearBoundaryWarning, ShapeMismatch
from .matkernel import adj, as_cmat, herm_inv_sqrt, herm_sqrt, inverse, op_norm
from .tolerances import DEFAULT


@dataclass(frozen=True)
class OperatorHK:
    """An operator from H to K, stored as its dimK x dimH matrix."""

    mat: np.ndarray
    dim_h: int = field(init=False)
    dim_k: int = field(init=False)

    def __post_init__(self):
        m = as_cmat(self.mat)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dim_k", m.shape[0])
        object.__setattr__(self, "dim_h", m.shape[1])


def zero_operator(dim_h: int, dim_k: int) -> OperatorHK:
    return OperatorHK(np.zeros((dim_k, dim_h), dtype=np.complex128))


def _require_same_spaces(t: OperatorHK, s: OperatorHK) -> None:
    if t.mat.shape != s.mat.shape:
        raise ShapeMismatch(f"operators have shapes {t.mat.shape} and {s.mat.shape}")


def bounded_transform(t: OperatorHK) -> BallPoint:
    """(I + T*T)^(-1/2) T*, a strict contraction of shape dimH x dimK."""
    m = t.mat
    grow = np.eye(t.dim_h) + adj(m) @ m
    return BallPoint(herm_inv_sqrt(grow, floor=0.5) @ adj(m))


def inverse_bounded_transform(a: BallPoint) -> OperatorHK:
    """Closed-form inverse of :func:`bounded_transform`: (I - A*A)^(-1/2) A*.

    Margins below the configured accuracy threshold are allowed but flagged
    with :class:`NearBoundaryWarning`, since the inverse square root then
    amplifies roundoff.
    """
    if a.margin < DEFAULT.near_boundary:
        warnings.warn(
            f"ball margin {a.margin:.3e} below {DEFAULT.near_boundary:.0e}; "
            "inverse transform loses accuracy",
            NearBoundaryWarning,
            stacklevel=2,
        )
    m = a.mat
    shrink = np.eye(a.dim_k) - adj(m) @ m
    return OperatorHK(herm_inv_sqrt(shrink, floor=DEFAULT.defect_floor) @ adj(m))


def left_defect(t: OperatorHK, x: OperatorHK) -> np.ndarray:
    """(I + T*T)^(1/2) X* - T* (I + X X*)^(1/2), of shape dimH x dimK."""
    _require_same_spaces(t, x)
    tm, xm = t.mat, x.mat
    left = herm_sqrt(np.eye(t.dim_h) + adj(tm) @ tm)
    right = herm_sqrt(np.eye(x.dim_k) + xm @ adj(xm))
    return left @ adj(xm) - adj(tm) @ right


def right_defect(t: OperatorHK, x: OperatorHK) -> np.ndarray:
    """(I + X X*)^(1/2) (I + T T*)^(1/2) - X T*, of shape dimK x dimK."""
    _require_same_spaces(t, x)
    tm, xm = t.mat, x.mat
    left = herm_sqrt(np.eye(x.dim_k) + xm @ adj(xm))
    right = herm_sqrt(np.eye(t.dim_k) + tm @ adj(tm))
    return left @ right - xm @ adj(tm)


def right_defect_inv(s: OperatorHK, t: OperatorHK) -> np.ndarray:
    """Closed-form inverse of ``right_defect(s, t)``.

    (I+SS*)^(-1/2) [I - T (I+T*T)^(-1/2) (I+S*S)^(-1/2) S*]^(-1) (I+TT*)^(-1/2);
    the bracket is a strict perturbation of the identity, so a Singular error
    here signals a transcription bug rather than admissible input.
    """
    _require_same_spaces(s, t)
    sm, tm = s.mat, t.mat
    eye_h = np.eye(t.dim_h)
    eye_k = np.eye(t.dim_k)
    outer_left = herm_inv_sqrt(eye_k + sm @ adj(sm), floor=0.5)
    outer_right = herm_inv_sqrt(eye_k + tm @ adj(tm), floor=0.5)
    bracket = eye_k - tm @ herm_inv_sqrt(eye_h + adj(tm) @ tm, floor=0.5) @ herm_inv_sqrt(
        eye_h + adj(sm) @ sm, floor=0.5
    ) @ adj(sm)
    return outer_left @ inverse(bracket) @ outer_right


def operator_dist(t: OperatorHK, s: OperatorHK) -> float:
    """Metric on operators from H to K.

    atanh || left_defect(t, s) @ inverse(right_defect(s, t)) ||, which equals
    the invariant ball distance between the two bounded transforms.
    """
    _require_same_spaces(t, s)
    quotient = left_defect(t, s) @ inverse(right_defect(s, t))
    return _atanh_checked(op_norm(quotient))
