"""Conjugation pairs and complex symmetric operators between two spaces.

A conjugate-linear map C is represented by its linear part J through the
action x -> J conj(x).  Compositions of two conjugate-linear maps then become
ordinary matrix products with one conjugation, e.g. the linear map C1 C2 has
matrix J1 conj(J2).  The translation table used throughout:

    C1: src -> dst      x -> j_fwd conj(x)
    C2: dst -> src      y -> j_bwd conj(y)
    C2 C1 = id_src  <=>  j_bwd conj(j_fwd) = I        (side BWD_FWD)
    C1 C2 = id_dst  <=>  j_fwd conj(j_bwd) = I        (side FWD_BWD)

The pairing axiom <C1 x, y> = <C2 y, x> (inner products linear in the first
argument, conjugate-linear in the second) is equivalent to
j_fwd = transpose(j_bwd); that equivalence is the basis of the pair
invariant.  The convention has to be fixed for the matrix model to be
testable at all, and this is the one used everywhere in this package.

An operator T (matrix M of shape dst x src) is (C1, C2)-symmetric when

    side BWD_FWD:   j_bwd conj(M) = M* j_fwd      (C2 T = T* C1)
    side FWD_BWD:   M j_bwd = j_fwd transpose(M)  (T C2 = C1 T*)

and ``symmetry_residual`` returns the spectral norm of the mismatch.  With
the canonical pair this is exactly ||B - transpose(B)|| for the leading
square block B, which is the classical "contains a symmetric block" test.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from enum import Enum

import numpy as np

from .ball import BallPoint
from .errors import BadDims, NotSymmetric, ShapeMismatch
from .matkernel import adj, as_cmat, herm_fun, herm_sqrt, op_norm
from .tolerances import DEFAULT
from .transform import OperatorHK, inverse_bounded_transform


class Side(Enum):
    """Which composition of the pair is the identity."""

    BWD_FWD = "bwd_fwd"  # C2 C1 = id on the source space
    FWD_BWD = "fwd_bwd"  # C1 C2 = id on the destination space


@dataclass(frozen=True)
class ConjugationPair:
    """A conjugate-linear pair (C1: src -> dst, C2: dst -> src).

    Invariants checked at construction: j_fwd = transpose(j_bwd), the
    composition recorded in ``side`` is the identity, and the map applied
    first in that composition is an isometry (its linear part has
    orthonormal columns); the partner is then automatically contractive.
    """

    j_fwd: np.ndarray
    j_bwd: np.ndarray
    side: Side
    check_tol: InitVar[float | None] = None

    def __post_init__(self, check_tol):
        fwd = as_cmat(self.j_fwd)
        bwd = as_cmat(self.j_bwd)
        object.__setattr__(self, "j_fwd", fwd)
        object.__setattr__(self, "j_bwd", bwd)
        if fwd.shape != bwd.T.shape:
            raise ShapeMismatch(
                f"j_fwd {fwd.shape} and j_bwd {bwd.shape} are not transposes in shape"
            )
        tol = DEFAULT.pair_residual if check_tol is None else check_tol
        res = pair_residuals(self)
        worst = max(res.values())
        if worst > tol:
            raise ShapeMismatch(
                f"conjugation pair invariants violated: {res} exceed {tol:.1e}"
            )

    @property
    def dim_src(self) -> int:
        return self.j_fwd.shape[1]

    @property
    def dim_dst(self) -> int:
        return self.j_fwd.shape[0]


def pair_residuals(pair: ConjugationPair) -> dict[str, float]:
    """Numeric residuals of the three pair invariants, by name."""
    fwd, bwd = pair.j_fwd, pair.j_bwd
    pairing = op_norm(fwd - bwd.T)
    if pair.side is Side.BWD_FWD:
        comp = bwd @ np.conj(fwd) - np.eye(pair.dim_src)
        iso = adj(fwd) @ fwd - np.eye(pair.dim_src)
    else:
        comp = fwd @ np.conj(bwd) - np.eye(pair.dim_dst)
        iso = adj(bwd) @ bwd - np.eye(pair.dim_dst)
    return {
        "pairing": pairing,
        "composition": op_norm(comp),
        "isometry": op_norm(iso),
    }


def canonical_pair(m: int, n: int) -> ConjugationPair:
    """The coordinate pair from C^m to C^n (n >= m).

    Forward: conjugate the m coordinates and pad with zeros; backward:
    conjugate and keep the first m coordinates.  An n x m matrix is
    symmetric for this pair exactly when its top m x m block is symmetric.
    """
    if m < 1 or n < m:
        raise BadDims(f"need n >= m >= 1, got (m={m}, n={n})")
    fwd = np.zeros((n, m), dtype=np.complex128)
    fwd[:m, :m] = np.eye(m)
    return ConjugationPair(fwd, fwd.T.copy(), Side.BWD_FWD)


def identity_pair(n: int) -> ConjugationPair:
    """Plain coordinatewise conjugation on C^n, both ways."""
    return canonical_pair(n, n)


def _orthonormal_columns(g: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    q = g.astype(np.complex128).copy()
    cols = q.shape[1]
    for _ in range(2):
        for j in range(cols):
            for i in range(j):
                q[:, j] -= (adj(q[:, i : i + 1]) @ q[:, j : j + 1])[0, 0] * q[:, i]
            norm = np.sqrt((np.abs(q[:, j]) ** 2).sum())
            if norm < 1e-12:
                raise BadDims("random draw produced a rank-deficient frame")
            q[:, j] /= norm
    return q


def random_pair(dim_src: int, dim_dst: int, seed) -> ConjugationPair:
    """A seeded random conjugation pair between C^dim_src and C^dim_dst.

    A complex Gaussian frame is orthonormalized and its transpose becomes the
    partner; the identity composition is placed on the smaller space.
    Deterministic for a fixed seed (any ``numpy.random.default_rng`` seed).
    """
    if min(dim_src, dim_dst) < 1:
        raise BadDims(f"dimensions must be positive, got ({dim_src}, {dim_dst})")
    rng = np.random.default_rng(seed)
    small, big = sorted((dim_src, dim_dst))
    g = rng.standard_normal((big, small)) + 1j * rng.standard_normal((big, small))
    q = _orthonormal_columns(g)
    if dim_src <= dim_dst:
        return ConjugationPair(q, q.T.copy(), Side.BWD_FWD)
    return ConjugationPair(q.T.copy(), q, Side.FWD_BWD)


def conj_apply(pair: ConjugationPair, direction: str, x) -> np.ndarray:
    """Apply C1 (``direction='fwd'``) or C2 (``'bwd'``) to a vector."""
    vec = np.asarray(x, dtype=np.complex128).reshape(-1)
    if direction == "fwd":
        j, need = pair.j_fwd, pair.dim_src
    elif direction == "bwd":
        j, need = pair.j_bwd, pair.dim_dst
    else:
        raise ShapeMismatch(f"direction must be 'fwd' or 'bwd', got {direction!r}")
    if vec.shape[0] != need:
        raise ShapeMismatch(f"vector length {vec.shape[0]}, expected {need}")
    return j @ np.conj(vec)


def _residual_mat(mat: np.ndarray, pair: ConjugationPair) -> float:
    """Symmetry residual for a dst x src matrix against a src -> dst pair."""
    if mat.shape != (pair.dim_dst, pair.dim_src):
        raise ShapeMismatch(
            f"operator shape {mat.shape} does not match pair "
            f"({pair.dim_dst}, {pair.dim_src})"
        )
    if pair.side is Side.BWD_FWD:
        gap = pair.j_bwd @ np.conj(mat) - adj(mat) @ pair.j_fwd
    else:
        gap = mat @ pair.j_bwd - pair.j_fwd @ mat.T
    return op_norm(gap)


def symmetry_residual(t: OperatorHK, pair: ConjugationPair) -> float:
    """How far T is from being (C1, C2)-symmetric; zero iff symmetric."""
    return _residual_mat(t.mat, pair)


def symmetric_part(mat, pair: ConjugationPair) -> np.ndarray:
    """Project a dst x src matrix onto the pair-symmetric operators.

    Averages X with C1 X* C1 (as linear matrices); the result has symmetry
    residual zero up to roundoff, which makes it the standard way to
    manufacture admissible inputs for the induced-pair construction.
    """
    m = as_cmat(mat)
    if m.shape != (pair.dim_dst, pair.dim_src):
        raise ShapeMismatch(
            f"matrix shape {m.shape} does not match pair ({pair.dim_dst}, {pair.dim_src})"
        )
    flipped = pair.j_fwd @ m.T @ np.conj(pair.j_fwd)
    return 0.5 * (m + flipped)


def swap_roles(pair: ConjugationPair) -> ConjugationPair:
    """The same two conjugate-linear maps viewed as a pair in the opposite
    direction; the identity composition stays on the same space, so the side
    flag flips."""
    side = Side.FWD_BWD if pair.side is Side.BWD_FWD else Side.BWD_FWD
    return ConjugationPair(pair.j_bwd, pair.j_fwd, side)


def double_pair(pair: ConjugationPair) -> ConjugationPair:
    """The swap-doubled pair on src + src -> dst + dst.

    Forward sends (x1, x2) to (C1 x2, C1 x1); backward mirrors it.  The
    identity composition stays on the same side as the input pair.
    """
    s, d = pair.dim_src, pair.dim_dst
    fwd = np.zeros((2 * d, 2 * s), dtype=np.complex128)
    fwd[:d, s:] = pair.j_fwd
    fwd[d:, :s] = pair.j_fwd
    bwd = np.zeros((2 * s, 2 * d), dtype=np.complex128)
    bwd[:s, d:] = pair.j_bwd
    bwd[s:, :d] = pair.j_bwd
    return ConjugationPair(fwd, bwd, pair.side)


def extension_blocks(mat: np.ndarray, pair: ConjugationPair) -> np.ndarray:
    """diag(M, C1 M* C1) as one doubled matrix; the linear matrix of the
    conjugated adjoint block is j_fwd transpose(M) conj(j_fwd)."""
    m = as_cmat(mat)
    if m.shape != (pair.dim_dst, pair.dim_src):
        raise ShapeMismatch(
            f"matrix shape {m.shape} does not match pair ({pair.dim_dst}, {pair.dim_src})"
        )
    flipped = pair.j_fwd @ m.T @ np.conj(pair.j_fwd)
    s, d = pair.dim_src, pair.dim_dst
    out = np.zeros((2 * d, 2 * s), dtype=np.complex128)
    out[:d, :s] = m
    out[d:, s:] = flipped
    return out


def symmetric_extension(
    t: OperatorHK, pair: ConjugationPair
) -> tuple[OperatorHK, ConjugationPair]:
    """Complex symmetric extension of an arbitrary operator.

    Returns (diag(T, C1 T* C1), doubled pair); the extension is symmetric for
    the doubled pair no matter whether T itself was, and its leading block
    equals T exactly.
    """
    if t.mat.shape != (pair.dim_dst, pair.dim_src):
        raise ShapeMismatch(
            f"operator shape {t.mat.shape} does not match pair "
            f"({pair.dim_dst}, {pair.dim_src})"
        )
    return OperatorHK(extension_blocks(t.mat, pair)), double_pair(pair)


def _inv_sqrt_psd(m: np.ndarray, floor: float) -> np.ndarray:
    # m is Hermitian by construction; symmetrize only to scrub roundoff
    sym = 0.5 * (m + adj(m))
    return herm_fun(sym, lambda x: 1.0 / np.sqrt(x), floor=floor)


def induced_pair(a: BallPoint, pair: ConjugationPair) -> ConjugationPair:
    """Conjugation pair under which the inverse transform of ``a`` is symmetric.

    ``a`` is a strict contraction from K to H (matrix dimH x dimK) that must
    already be symmetric for ``pair`` (a pair between K and H); the returned
    pair lives between H and K with its identity composition on the same
    space as the input's.  Non-symmetric inputs are refused with
    :class:`NotSymmetric` because the construction presumes symmetry.

    Both orientations of the input pair are handled; the orientation with the
    identity composition on K is the primary one, the mirrored orientation is
    obtained by exchanging the roles of the two spaces and is validated
    empirically by the test suite.
    """
    m = a.mat
    p, q = m.shape
    if (pair.dim_src, pair.dim_dst) != (q, p):
        raise ShapeMismatch(
            f"pair dims ({pair.dim_src}, {pair.dim_dst}) do not match a "
            f"contraction of shape {m.shape}"
        )
    residual = _residual_mat(m, pair)
    if residual > DEFAULT.symmetry_pre:
        raise NotSymmetric(
            f"contraction has symmetry residual {residual:.3e} for the given pair"
        )
    j1, j2 = pair.j_fwd, pair.j_bwd
    if pair.side is Side.BWD_FWD:
        # identity composition on K: gram = I - A* (C1 C2) A on K
        link = j1 @ np.conj(j2)
        gram = np.eye(q) - adj(m) @ link @ m
        gram_inv_sqrt = _inv_sqrt_psd(gram, DEFAULT.psd_floor)
        defect_sqrt = herm_sqrt(np.eye(p) - m @ adj(m))
        fwd = gram_inv_sqrt @ j2 @ np.conj(defect_sqrt)
        bwd = defect_sqrt @ j1 @ np.conj(gram_inv_sqrt)
        return ConjugationPair(
            fwd, bwd, Side.FWD_BWD, check_tol=DEFAULT.induced_pair_residual
        )
    # mirrored orientation: identity composition on H
    link = j2 @ np.conj(j1)
    gram = np.eye(p) - m @ link @ adj(m)
    gram_inv_sqrt = _inv_sqrt_psd(gram, DEFAULT.psd_floor)
    defect_sqrt = herm_sqrt(np.eye(q) - adj(m) @ m)
    fwd = defect_sqrt @ j2 @ np.conj(gram_inv_sqrt)
    bwd = gram_inv_sqrt @ j1 @ np.conj(defect_sqrt)
    return ConjugationPair(
        fwd, bwd, Side.BWD_FWD, check_tol=DEFAULT.induced_pair_residual
    )


def induced_operator(
    a: BallPoint, pair: ConjugationPair
) -> tuple[OperatorHK, ConjugationPair]:
    """Closed symmetric operator realized by a symmetric strict contraction.

    Returns ((I - A*A)^(-1/2) A*, induced_pair(a, pair)); the operator is
    complex symmetric for the returned pair and satisfies the graph identity
    ||T x||^2 + ||x||^2 = ||(I - A A*)^(-1/2) x||^2.
    """
    out_pair = induced_pair(a, pair)
    return inverse_bounded_transform(a), out_pair
