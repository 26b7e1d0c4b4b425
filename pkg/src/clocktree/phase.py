"""Phase diagrams in the (lambda1, lambda2) eigenvalue plane.

Three regimes partition the feasible region on the binary tree: no phase
transition, robust phase transition (lambda1 * br(T) > 1, where any boundary
coupling however weak orders the root), and the window of non-robust phase
transitions where a non-trivial symmetric fixed point of the mode recursion
exists although lambda1 * br(T) <= 1.  For q = 4 the boundary of that window
is the closed curve lambda1 = 4*lambda2*(1 - lambda2)/(1 + lambda2)^2; for
q = 5 it is computed numerically by continuation from the lambda1 = 1/2
analysis.

"Phase transition" operationally means a residual-verified non-trivial
solution of the symmetric mode fixed-point equations; non-symmetric boundary
laws are out of scope.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ContinuationLost, UnsupportedQ
from .fixedpoint import (
    newton_solve,
    q4_solutions,
    q5_jacobian,
    q5_potts_diagonal_solutions,
    q5_solutions,
)
from .recursion import Cayley, TreeFamily, Verdict, branching_number, pt_probe
from .spectral import spec_from_lambdas, validate_non_increasing

RPT_MARGIN = 1e-9


class Regime(enum.Enum):
    INFEASIBLE = "INFEASIBLE"
    NO_PT = "NO_PT"
    PT_AND_RPT = "PT_AND_RPT"
    PT_NOT_RPT = "PT_NOT_RPT"
    CRITICAL = "CRITICAL"


class Evidence(enum.Enum):
    CLOSED_FORM = "CLOSED_FORM"
    NEWTON = "NEWTON"
    PROBE = "PROBE"


@dataclass(frozen=True)
class PhasePoint:
    q: int
    lambda1: float
    lambda2: float
    feasible: bool
    regime: Regime
    n_nontrivial: int
    evidence: Evidence
    error: Optional[str] = None  # set when a sweep point failed exceptionally


def q4_critical_line(lambda2: float) -> float:
    """lambda1 = 4*lambda2*(1 - lambda2)/(1 + lambda2)^2, the q=4 fold line.

    It peaks at (lambda2, lambda1) = (1/3, 1/2) and crosses the Potts diagonal
    at 2*sqrt(q-1)/(q + 2*sqrt(q-1)) ~ 0.4641.
    """
    return 4.0 * lambda2 * (1.0 - lambda2) / (1.0 + lambda2) ** 2


def _feasible(q: int, lambda1: float, lambda2: float) -> bool:
    try:
        spec = spec_from_lambdas(q, lambda1, lambda2)
    except ValueError:
        return False
    return validate_non_increasing(spec).feasible


def classify_point(
    q: int,
    lambda1: float,
    lambda2: float,
    tree: TreeFamily = Cayley(2),
) -> PhasePoint:
    """Regime of one parameter point on the given tree.

    Feasibility comes from the non-increasing check; the existence of a phase
    transition from the closed-form solver (q=4) or Newton continuation (q=5)
    with a probe fallback; robustness from the strict threshold
    lambda1 * br(T) > 1.  A probe that cannot decide (its honest outcome near
    critical lines) yields the CRITICAL label rather than a forced regime.
    """
    if q not in (4, 5):
        raise UnsupportedQ(f"phase classification supports q in {{4, 5}}, got q={q}")
    if not _feasible(q, lambda1, lambda2):
        return PhasePoint(q, lambda1, lambda2, False, Regime.INFEASIBLE, 0, Evidence.CLOSED_FORM)
    rpt_excess = lambda1 * branching_number(tree) - 1.0

    if q == 4:
        sols = q4_solutions(lambda1, lambda2)
        n = sols.n_nontrivial
        evidence = Evidence.CLOSED_FORM
    else:
        sols = q5_solutions(lambda1, lambda2)
        n = sols.n_nontrivial
        evidence = Evidence.NEWTON
        if n == 0 and rpt_excess > RPT_MARGIN:
            # solver found nothing although robustness guarantees a transition;
            # fall back to the probe for an honest answer
            verdict = pt_probe(spec_from_lambdas(q, lambda1, lambda2), Cayley(2)).verdict
            evidence = Evidence.PROBE
            if verdict is Verdict.BOUNDED_AWAY:
                n = 1
            elif verdict is Verdict.UNDECIDED:
                return PhasePoint(q, lambda1, lambda2, True, Regime.CRITICAL, 0, evidence)

    if rpt_excess > RPT_MARGIN:
        regime = Regime.PT_AND_RPT
    elif n >= 1:
        regime = Regime.PT_NOT_RPT
    else:
        regime = Regime.NO_PT
    return PhasePoint(q, lambda1, lambda2, True, regime, n, evidence)


def potts_thresholds(q: int, d: int) -> tuple[float, float, float]:
    """(theta_cr, theta_rpt, lambda1) for the q-state Potts model on the
    degree-d Cayley tree.

    theta_cr = (d + q - 1)/(d - 1) is where the lower boundary-law branch
    merges with the free solution; the robustness threshold coincides with it,
    and the corresponding eigenvalue lambda1 = (theta - 1)/(theta + q - 1)
    equals 1/d exactly.
    """
    if d < 2 or q < 2:
        raise UnsupportedQ(f"need d >= 2 and q >= 2, got d={d}, q={q}")
    theta_cr = (d + q - 1.0) / (d - 1.0)
    lambda1 = (theta_cr - 1.0) / (theta_cr + q - 1.0)
    return theta_cr, theta_cr, lambda1


def q5_transition_line(
    lambda1_grid: Sequence[float],
    tol: float = 1e-4,
    lambda2_bracket: tuple[float, float] = (0.33, 0.65),
) -> list[tuple[float, float]]:
    """Critical lambda2 for each lambda1, by bisection on solution existence.

    The predicate "a residual-verified non-trivial Newton solution exists" is
    evaluated through continuation from the lambda1 = 1/2 analytic solutions;
    at lambda1 = 1/2 the bisection therefore lands on the discriminant root.
    A grid point whose bracket never sees a solution is reported as
    (lambda1, nan) rather than aborting the whole line.
    """
    out: list[tuple[float, float]] = []
    lo0, hi0 = lambda2_bracket
    for l1 in lambda1_grid:
        if not (0.0 < l1 <= 0.5 + RPT_MARGIN):
            raise ContinuationLost(f"transition line expects lambda1 in (0, 1/2], got {l1!r}")
        if not _has_nontrivial(l1, hi0):
            out.append((l1, math.nan))
            continue
        lo, hi = lo0, hi0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if _has_nontrivial(l1, mid):
                hi = mid
            else:
                lo = mid
        out.append((l1, 0.5 * (lo + hi)))
    return out


def _has_nontrivial(lambda1: float, lambda2: float) -> bool:
    return q5_solutions(lambda1, lambda2, probe_seed=False).n_nontrivial > 0


def jacobian_profile(lambda_grid: Sequence[float]) -> list[tuple[float, float]]:
    """det of the displacement Jacobian at the lower-branch Potts solution.

    The lower branch merges with the free solution as lambda -> 1/2, where the
    Jacobian loses invertibility; the profile therefore tends to 0.
    """
    out = []
    for lam in lambda_grid:
        if not (4.0 / 9.0 - 1e-12 <= lam < 0.5):
            raise ContinuationLost(f"lower branch exists for lambda in [4/9, 1/2), got {lam!r}")
        diag = q5_potts_diagonal_solutions(lam)
        if diag is None:
            raise ContinuationLost(f"no diagonal solution at lambda = {lam!r}")
        lower = newton_solve(lam, lam, diag[0]) or diag[0]
        _, det = q5_jacobian(lam, lam, lower)
        out.append((lam, det))
    return out


def sweep(
    q: int,
    lambda1_range: tuple[float, float] = (0.0, 0.6),
    lambda2_range: tuple[float, float] = (0.0, 0.6),
    resolution: int = 100,
    tree: TreeFamily = Cayley(2),
    workers: Optional[int] = None,
) -> list[PhasePoint]:
    """Classify a resolution x resolution grid, row-major in (lambda1, lambda2).

    Grid points are independent; with workers > 1 they are evaluated in a
    process pool, and the output order is by grid index either way.
    Infeasible points are classified and kept, never skipped.
    """
    if resolution < 1:
        raise UnsupportedQ(f"resolution must be >= 1, got {resolution}")
    l1s = np.linspace(lambda1_range[0], lambda1_range[1], resolution)
    l2s = np.linspace(lambda2_range[0], lambda2_range[1], resolution)
    tasks = [(q, float(l1), float(l2), tree) for l1 in l1s for l2 in l2s]
    if workers is not None and workers > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            return pool.map(_classify_task, tasks, chunksize=max(1, len(tasks) // (workers * 8)))
    return [_classify_task(t) for t in tasks]


def _classify_task(task: tuple) -> PhasePoint:
    q, l1, l2, tree = task
    try:
        return classify_point(q, l1, l2, tree)
    except UnsupportedQ:
        raise
    except Exception as exc:  # a failed point must not abort the whole grid
        return PhasePoint(q, l1, l2, False, Regime.CRITICAL, 0, Evidence.PROBE, error=str(exc))
