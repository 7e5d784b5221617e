"""Approximation of arbitrary operators by complex symmetric ones.

The pipeline behind each approximant of depth n:

    1. transform the operator to a ball point and zero all rows past n,
    2. extend the truncation to the doubled spaces, where the swap-doubled
       conjugation pair makes it symmetric by construction,
    3. transform back; the induced conjugation pair certifies that the
       resulting doubled operator is complex symmetric.

At full depth the leading block of the approximant recovers the original
operator, and distances are measured against that full-depth iterate, which
lives on the doubled spaces like every other iterate.  (Comparing against
the undoubled original would mix dimensions; comparing against the
symmetric extension of the original is available as an alternative
reference, but the two references differ in general because the bounded
transform does not commute with the extension.)

Trials of the ensemble experiment are independent; per-trial seeds are
spawned from the master seed with ``numpy.random.SeedSequence.spawn``, so
results do not depend on scheduling and may be computed in parallel.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ball import BallPoint
from .errors import BadDepth, BadDims
from .matkernel import op_norm
from .sampling import complex_gaussian
from .symmetry import (
    ConjugationPair,
    double_pair,
    extension_blocks,
    induced_pair,
    random_pair,
    swap_roles,
    symmetry_residual,
)
from .tolerances import DEFAULT
from .transform import OperatorHK, bounded_transform, inverse_bounded_transform, operator_dist


def truncate(point: BallPoint, depth: int) -> BallPoint:
    """Keep the first ``depth`` rows of a ball point, zero the rest.

    Row selection never increases the spectral norm, so the result stays
    strictly inside the ball.
    """
    if not 1 <= depth <= point.dim_h:
        raise BadDepth(f"depth {depth} outside 1..{point.dim_h}")
    cut = point.mat.copy()
    cut[depth:, :] = 0.0
    return BallPoint(cut)


@dataclass(frozen=True)
class StepInfo:
    """Diagnostics of one approximation step."""

    depth: int
    margin: float
    ball_norm: float


def symmetric_approximant(
    t: OperatorHK, pair: ConjugationPair, depth: int
) -> tuple[OperatorHK, ConjugationPair, StepInfo]:
    """Depth-n complex symmetric approximant of ``t`` on the doubled spaces.

    ``pair`` runs from K to H (the contraction side).  Returns the doubled
    operator, the conjugation pair certifying its symmetry, and diagnostics.
    """
    if (pair.dim_src, pair.dim_dst) != (t.dim_k, t.dim_h):
        raise BadDims(
            f"pair dims ({pair.dim_src}, {pair.dim_dst}) do not match operator "
            f"spaces (K={t.dim_k}, H={t.dim_h})"
        )
    that = bounded_transform(t)
    cut = truncate(that, depth)
    doubled = BallPoint(extension_blocks(cut.mat, pair))
    big_pair = double_pair(pair)
    out_pair = induced_pair(doubled, big_pair)
    approx = inverse_bounded_transform(doubled)
    info = StepInfo(depth=depth, margin=doubled.margin, ball_norm=1.0 - doubled.margin)
    return approx, out_pair, info


@dataclass(frozen=True)
class ProfileRow:
    depth: int
    dist: float
    sym_residual: float
    margin: float


@dataclass(frozen=True)
class ApproxProfile:
    """Per-depth record of an approximation run (depth 1 .. dimH)."""

    rows: tuple[ProfileRow, ...]

    def violations(self, tol: float = DEFAULT.profile) -> list[str]:
        """Invariant violations, empty when the profile is healthy."""
        out: list[str] = []
        depths = [r.depth for r in self.rows]
        if depths != list(range(1, len(self.rows) + 1)):
            out.append(f"depths not 1..p: {depths}")
        if self.rows and abs(self.rows[-1].dist) > tol:
            out.append(f"final distance {self.rows[-1].dist:.3e} above {tol:.0e}")
        for row in self.rows:
            if row.sym_residual > tol:
                out.append(
                    f"symmetry residual {row.sym_residual:.3e} at depth {row.depth}"
                )
        return out

    def min_depth(self) -> int:
        """Depth at which the distance is smallest."""
        return min(self.rows, key=lambda r: r.dist).depth


def approximation_profile(
    t: OperatorHK, pair: ConjugationPair, reference: str = "full_depth"
) -> ApproxProfile:
    """Distances and symmetry residuals of every approximant of ``t``.

    ``reference`` selects the comparison operator: ``"full_depth"`` (default)
    compares against the depth-dimH approximant, whose leading block equals
    ``t``; ``"extension"`` compares against the symmetric extension of ``t``.
    """
    if reference not in ("full_depth", "extension"):
        raise BadDims(f"unknown reference {reference!r}")
    if reference == "full_depth":
        t_ref, _, _ = symmetric_approximant(t, pair, t.dim_h)
    else:
        # the extension of t runs H -> K, so the pair acts with roles swapped
        t_ref = OperatorHK(extension_blocks(t.mat, swap_roles(pair)))
    rows = []
    for depth in range(1, t.dim_h + 1):
        approx, out_pair, info = symmetric_approximant(t, pair, depth)
        rows.append(
            ProfileRow(
                depth=depth,
                dist=operator_dist(approx, t_ref),
                sym_residual=symmetry_residual(approx, out_pair),
                margin=info.margin,
            )
        )
    return ApproxProfile(tuple(rows))


@dataclass(frozen=True)
class TrialResult:
    profile: ApproxProfile
    recovery_residual: float


@dataclass(frozen=True)
class EnsembleReport:
    dim_h: int
    dim_k: int
    trials: int
    seed: int
    results: tuple[TrialResult, ...]

    def max_sym_residual(self) -> float:
        return max(
            (row.sym_residual for r in self.results for row in r.profile.rows),
            default=0.0,
        )

    def median_dist(self) -> list[float]:
        """Median distance across trials at each depth."""
        if not self.results:
            return []
        per_depth = zip(*[[row.dist for row in r.profile.rows] for r in self.results])
        return [float(np.median(list(col))) for col in per_depth]

    def all_valid(self, tol: float = DEFAULT.profile) -> bool:
        return all(not r.profile.violations(tol) for r in self.results) and all(
            r.recovery_residual <= tol for r in self.results
        )


def _run_trial(dim_h: int, dim_k: int, child: np.random.SeedSequence) -> TrialResult:
    rng = np.random.default_rng(child)
    scale = rng.uniform(0.5, 10.0)
    t = OperatorHK(complex_gaussian(rng, dim_k, dim_h, scale))
    pair = random_pair(dim_k, dim_h, rng)
    profile = approximation_profile(t, pair)
    full, _, _ = symmetric_approximant(t, pair, dim_h)
    recovery = op_norm(full.mat[:dim_k, :dim_h] - t.mat)
    return TrialResult(profile=profile, recovery_residual=recovery)


def ensemble_experiment(
    dim_h: int, dim_k: int, trials: int, seed: int, jobs: int = 1
) -> EnsembleReport:
    """Approximation profiles for ``trials`` random operators.

    Deterministic for a fixed seed regardless of ``jobs``: trial inputs are
    derived from spawned seed-sequence children in trial order and results
    are collected by index.
    """
    if dim_k > dim_h or min(dim_h, dim_k) < 1:
        raise BadDims(f"need 1 <= dim_k <= dim_h, got ({dim_h}, {dim_k})")
    if trials < 1:
        raise BadDims(f"need trials >= 1, got {trials}")
    children = np.random.SeedSequence(seed).spawn(trials)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: _run_trial(dim_h, dim_k, c), children))
    else:
        results = [_run_trial(dim_h, dim_k, c) for c in children]
    return EnsembleReport(
        dim_h=dim_h, dim_k=dim_k, trials=trials, seed=seed, results=tuple(results)
    )


def profile_csv(profile: ApproxProfile) -> str:
    """CSV serialization; column order (n, dist, sym_residual, margin) is a
    stability contract relied on by downstream tooling."""
    lines = ["n,dist,sym_residual,margin"]
    for row in profile.rows:
        lines.append(f"{row.depth},{row.dist!r},{row.sym_residual!r},{row.margin!r}")
    return "\n".join(lines) + "\n"


def report_json(report: EnsembleReport) -> str:
    """Deterministic JSON serialization of an ensemble report."""
    payload = {
        "dim_h": report.dim_h,
        "dim_k": report.dim_k,
        "trials": report.trials,
        "seed": report.seed,
        "max_sym_residual": report.max_sym_residual(),
        "median_dist": report.median_dist(),
        "all_valid": report.all_valid(),
        "profiles": [
            {
                "recovery_residual": r.recovery_residual,
                "rows": [
                    {
                        "n": row.depth,
                        "dist": row.dist,
                        "sym_residual": row.sym_residual,
                        "margin": row.margin,
                    }
                    for row in r.profile.rows
                ],
            }
            for r in report.results
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
