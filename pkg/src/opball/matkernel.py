"""Dense complex linear-algebra substrate.

Everything else in the library reduces to four primitives implemented here:
Hermitian eigendecomposition, Hermitian functional calculus (square roots and
inverse square roots in particular), the spectral norm, and general inversion.

The eigensolver is a cyclic two-sided complex Jacobi iteration.  At desk
sizes (matrix side <= 64) it converges in a handful of sweeps and keeps both
the eigenbasis unitary and the reconstruction residual at roundoff level,
which is what the downstream geometry needs.  Inversion is Gaussian
elimination with partial pivoting, with an explicit pivot floor so
near-singular systems fail loudly instead of returning garbage.

All functions are pure: inputs are never mutated and returned arrays are
read-only, so values are freely shareable across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    EigenvalueBelowFloor,
    NoConvergence,
    NotHermitian,
    ShapeMismatch,
    Singular,
)
from .tolerances import DEFAULT

_MAX_SWEEPS = 42


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_cmat(a) -> np.ndarray:
    """Validate and normalize a dense complex matrix.

    Accepts anything ``np.asarray`` does, requires a 2-D shape with positive
    dimensions and finite entries, and returns a read-only complex128 copy.
    """
    m = np.array(a, dtype=np.complex128, order="C")
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeMismatch(f"matrix dimensions must be positive, got {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ShapeMismatch("matrix entries must be finite")
    return _freeze(m)


def adj(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose.  Adjoints are always computed, never stored."""
    return a.conj().T


def fro_norm(a: np.ndarray) -> float:
    """Frobenius norm (cheap upper bound for the spectral norm)."""
    return float(np.sqrt((np.abs(a) ** 2).sum()))


@dataclass(frozen=True)
class HermSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``basis`` is unitary with the
    matching eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    basis: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]


_ROUNDS_CACHE: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {}


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: each sweep visits every index pair exactly once,
    grouped into rounds of mutually disjoint pairs."""
    cached = _ROUNDS_CACHE.get(n)
    if cached is not None:
        return cached
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            x, y = players[i], players[m - 1 - i]
            if x >= 0 and y >= 0:
                ps.append(min(x, y))
                qs.append(max(x, y))
        rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1], *players[1:-1]]
    _ROUNDS_CACHE[n] = rounds
    return rounds


def _jacobi(h: np.ndarray, want_vectors: bool = True) -> tuple[np.ndarray, np.ndarray | None]:
    """Cyclic complex Jacobi iteration on a Hermitian matrix.

    Rotations are scheduled round-robin: the disjoint pairs of a round share
    one snapshot of the matrix and are applied together as a single unitary,
    which keeps the Python overhead per rotation small.  Returns (diagonal
    values, accumulated unitary or None); the caller sorts.
    """
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    if n == 1:
        return a.real.diagonal().copy(), v

    scale = fro_norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    eps = float(np.finfo(float).eps)
    stop = 0.5 * n * (n - 1) * (eps * scale) ** 2
    # entries this small cannot lift the off-diagonal mass above `stop`
    skip = eps * scale / (4.0 * n)
    rounds = _round_robin(n)

    for _ in range(_MAX_SWEEPS):
        strict = a.copy()
        np.fill_diagonal(strict, 0.0)
        if (np.abs(strict) ** 2).sum() <= stop:
            return a.real.diagonal().copy(), v
        for p_arr, q_arr in rounds:
            apq = a[p_arr, q_arr]
            r = np.abs(apq)
            active = r > skip
            if not active.any():
                continue
            safe_r = np.where(active, r, 1.0)
            phase = np.where(active, apq / safe_r, 1.0)
            tau = (a[q_arr, q_arr].real - a[p_arr, p_arr].real) / (2.0 * safe_r)
            tau = np.clip(tau, -1e15, 1e15)
            sgn = np.where(tau >= 0.0, 1.0, -1.0)
            t = np.where(active, sgn / (np.abs(tau) + np.sqrt(1.0 + tau * tau)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            u = np.eye(n, dtype=np.complex128)
            u[p_arr, p_arr] = c * phase
            u[p_arr, q_arr] = s * phase
            u[q_arr, p_arr] = -s
            u[q_arr, q_arr] = c
            a = adj(u) @ a @ u
            sel_p, sel_q = p_arr[active], q_arr[active]
            a[sel_p, sel_q] = 0.0
            a[sel_q, sel_p] = 0.0
            np.fill_diagonal(a, np.diagonal(a).real)
            if v is not None:
                v = v @ u
    raise NoConvergence(f"Jacobi iteration did not converge in {_MAX_SWEEPS} sweeps")


def herm_eig(p, asym_tol: float | None = None) -> HermSpectrum:
    """Eigendecomposition of a (near-)Hermitian matrix.

    The input is symmetrized to (P + P*)/2 before decomposition; asymmetry
    beyond ``asym_tol`` relative to max(1, ||P||) raises
    :class:`NotHermitian` instead of being repaired silently.
    """
    m = as_cmat(p)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"eigendecomposition needs a square matrix, got {m.shape}")
    tol = DEFAULT.herm_asym if asym_tol is None else asym_tol
    asym = fro_norm(m - adj(m))
    if asym > tol * max(1.0, fro_norm(m)):
        raise NotHermitian(
            f"asymmetry {asym:.3e} exceeds {tol:.1e} * max(1, ||P||)"
        )
    h = 0.5 * (m + adj(m))
    vals, basis = _jacobi(h)
    order = np.argsort(vals, kind="stable")
    return HermSpectrum(_freeze(vals[order]), _freeze(basis[:, order].copy()))


def herm_fun(
    p,
    f: Callable[[float], float],
    floor: float | None = None,
) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix spectrally.

    ``floor`` guards functions that are singular at or below it (inverse
    square roots, logs, ...): any eigenvalue under the floor raises
    :class:`EigenvalueBelowFloor` carrying the offender.  The result is
    re-symmetrized so it is Hermitian to roundoff.
    """
    spectrum = herm_eig(p)
    if floor is not None:
        lo = float(spectrum.eigenvalues[0])
        if lo < floor:
            raise EigenvalueBelowFloor(lo, floor)
    vals = np.array([float(f(x)) for x in spectrum.eigenvalues])
    out = (spectrum.basis * vals) @ adj(spectrum.basis)
    return _freeze(0.5 * (out + adj(out)))


def herm_sqrt(p) -> np.ndarray:
    """Spectral square root; tiny negative eigenvalues are clipped to zero."""
    return herm_fun(p, lambda x: math.sqrt(x) if x > 0.0 else 0.0)


def herm_inv_sqrt(p, floor: float) -> np.ndarray:
    """Spectral inverse square root with a mandatory eigenvalue floor."""
    return herm_fun(p, lambda x: 1.0 / math.sqrt(x), floor=floor)


def op_norm(a) -> float:
    """Spectral norm: largest singular value, via the smaller Gram matrix."""
    m = as_cmat(a)
    if m.shape[0] <= m.shape[1]:
        gram = m @ adj(m)
    else:
        gram = adj(m) @ m
    vals, _ = _jacobi(0.5 * (gram + adj(gram)), want_vectors=False)
    top = float(vals.max())
    return math.sqrt(top) if top > 0.0 else 0.0


def inverse(a) -> np.ndarray:
    """Matrix inverse by Gaussian elimination with partial pivoting.

    Raises :class:`Singular` when a pivot falls below
    ``pivot_floor * max|A|``, rather than dividing through by noise.
    """
    m = as_cmat(a)
    n = m.shape[0]
    if n != m.shape[1]:
        raise ShapeMismatch(f"inverse needs a square matrix, got {m.shape}")
    scale = float(np.abs(m).max())
    threshold = DEFAULT.pivot_floor * scale
    work = m.copy()
    out = np.eye(n, dtype=np.complex128)
    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(work[k:, k])))
        pivot = work[pivot_row, k]
        if abs(pivot) <= threshold:
            raise Singular(f"pivot {abs(pivot):.3e} at column {k} below threshold")
        if pivot_row != k:
            work[[k, pivot_row]] = work[[pivot_row, k]]
            out[[k, pivot_row]] = out[[pivot_row, k]]
        inv_piv = 1.0 / pivot
        work[k] *= inv_piv
        out[k] *= inv_piv
        factors = work[:, k].copy()
        factors[k] = 0.0
        work -= np.outer(factors, work[k])
        out -= np.outer(factors, out[k])
    return _freeze(out)
