"""Exact and numerical solution of the mode fixed-point equations.

For q = 5 on the binary tree at the robust-transition threshold lambda1 = 1/2
the fixed points of the mode recursion solve, after eliminating alpha2 through
the rational function alpha2 = P4(alpha1)/P3(alpha1), the one-dimensional
polynomial equation

    alpha1^3 * (alpha1 - v)^2 * q_{lambda2}(alpha1) = 0,      v = 1/sqrt(10),

whose quartic factor q_{lambda2} carries all non-trivial solutions.  Its real
roots are classified through the discriminant Delta and the auxiliary
invariants P = 8ac - 3b^2, D = 64a^3e - 16a^2c^2 + 16ab^2c - 16a^2bd - 3b^4
and Delta0 = c^2 - 3bd + 12ae.  The discriminant changes sign at
lambda2 ~ 0.370748 (first non-trivial solutions) and lambda2 ~ 0.494119
(second pair) and the elimination degenerates at alpha1 = v exactly for
lambda2 = 37/96 ~ 0.385417.

For q = 4 the system is solvable in closed form: at lambda1 = 1/2 the
non-trivial branch is alpha2 = (3*lambda2 - 1)/(2*(lambda2 + lambda2^2)) with
alpha1 = +-sqrt(2*lambda2*alpha2 - 4*lambda2^2*alpha2^2); for general lambda1
the two quadratics P1(alpha2) = P2(alpha2) are intersected directly.

Every candidate produced by any of the closed forms is accepted only if it
satisfies the two-dimensional fixed-point equations to 1e-9 and reconstructs
to a probability vector; the long printed radicals are never trusted blindly.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AtSpecialPoint,
    ClockTreeError,
    DegenerateQuartic,
    P3Vanishes,
    RadicandNegative,
    UnsupportedQ,
)
from .recursion import V5, mode_map, mode_map_q5
from .spectral import SymmetricDist, potts_theta, spec_from_lambdas, validate_non_increasing

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
DEDUP_TOL = 1e-8
NEWTON_TOL = 1e-12

SQRT10 = math.sqrt(10.0)
C5 = math.sqrt(2.5)  # normalizer of the q=5 unit cosine basis


# ---------------------------------------------------------------------------
# the q=5 quartic and its classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients of q_{lambda2}(x) = a x^4 + b x^3 + c x^2 + d x + e."""

    a: float
    b: float
    c: float
    d: float
    e: float
    lambda2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d, self.e])

    def __call__(self, x: float) -> float:
        return (((self.a * x + self.b) * x + self.c) * x + self.d) * x + self.e

    def derivative(self, x: float) -> float:
        return ((4.0 * self.a * x + 3.0 * self.b) * x + 2.0 * self.c) * x + self.d


def q5_quartic_coeffs(lambda2: float) -> QuarticCoeffs:
    """Quartic factor of the eliminated fixed-point polynomial at lambda1 = 1/2.

    Every coefficient carries a factor lambda2^2, so the quartic vanishes
    identically at lambda2 = 0.
    """
    t = lambda2
    a = 62.5 * t**2 + 200.0 * t**3 + 250.0 * t**4
    b = -20.0 * SQRT10 * t**2 - 75.0 * SQRT10 * t**3 + 125.0 * SQRT10 * t**4
    c = 140.0 * t**2 - 345.0 * t**3 + 75.0 * t**4
    d = -16.0 * SQRT10 * t**2 + 64.0 * SQRT10 * t**3 - 125.0 * math.sqrt(2.5) * t**4
    e = 8.0 * t**2 - 36.0 * t**3 + 40.0 * t**4
    return QuarticCoeffs(a, b, c, d, e, lambda2=t)


def quartic_invariants(coeffs: QuarticCoeffs) -> tuple[float, float, float, float]:
    """(Delta, P, D, Delta0), each accumulated with compensated summation."""
    a, b, c, d, e = coeffs.a, coeffs.b, coeffs.c, coeffs.d, coeffs.e
    scale = max(abs(a), abs(b), abs(c), abs(d), abs(e))
    if scale == 0.0:
        raise DegenerateQuartic("all quartic coefficients vanish")
    delta = math.fsum(
        [
            256 * a**3 * e**3,
            -192 * a**2 * b * d * e**2,
            -128 * a**2 * c**2 * e**2,
            144 * a**2 * c * d**2 * e,
            -27 * a**2 * d**4,
            144 * a * b**2 * c * e**2,
            -6 * a * b**2 * d**2 * e,
            -80 * a * b * c**2 * d * e,
            18 * a * b * c * d**3,
            16 * a * c**4 * e,
            -4 * a * c**3 * d**2,
            -27 * b**4 * e**2,
            18 * b**3 * c * d * e,
            -4 * b**3 * d**3,
            -4 * b**2 * c**3 * e,
            b**2 * c**2 * d**2,
        ]
    )
    p = math.fsum([8 * a * c, -3 * b**2])
    big_d = math.fsum([64 * a**3 * e, -16 * a**2 * c**2, 16 * a * b**2 * c, -16 * a**2 * b * d, -3 * b**4])
    delta0 = math.fsum([c**2, -3 * b * d, 12 * a * e])
    return delta, p, big_d, delta0


class RootStructure(Enum):
    NO_REAL = "NO_REAL"
    TWO_DISTINCT = "TWO_DISTINCT"
    FOUR_DISTINCT = "FOUR_DISTINCT"
    DOUBLE_ROOT_PLUS = "DOUBLE_ROOT_PLUS"
    DEGENERATE_ZERO = "DEGENERATE_ZERO"


@dataclass(frozen=True)
class QuarticAnalysis:
    coeffs: QuarticCoeffs
    delta: float
    p: float
    d: float
    delta0: float
    structure: RootStructure
    n_simple: Optional[int]  # simple real roots accompanying a multiple one
    real_roots: tuple[tuple[float, int], ...]  # (root, multiplicity), ascending

    def real_root_count(self) -> int:
        return sum(m for _, m in self.real_roots)

    def distinct_real_roots(self) -> list[float]:
        return [r for r, _ in self.real_roots]


def _polished_real_candidates(coeffs: QuarticCoeffs, count: Optional[int] = None) -> list[float]:
    """Near-real companion-matrix eigenvalues, polished by real Newton steps.

    Without `count`, eigenvalues pass a relative imaginary-part threshold.
    With `count` (real-root total certified by the invariants), the `count`
    eigenvalues closest to the real axis are taken: an exact m-fold root
    splits by ~eps^(1/m), which can exceed any fixed threshold.
    """
    mon = coeffs.as_array() / coeffs.a
    comp = np.zeros((4, 4))
    comp[1:, :3] = np.eye(3)
    comp[:, 3] = -mon[:0:-1]
    eig = np.linalg.eigvals(comp)
    root_scale = max(1.0, float(np.abs(eig).max()))
    if count is None:
        chosen = [z for z in eig if abs(z.imag) <= 1e-6 * root_scale]
    else:
        chosen = sorted(eig, key=lambda z: abs(z.imag))[:count]
    polished = []
    for z in chosen:
        x = z.real
        for _ in range(50):
            fx = coeffs(x)
            dfx = coeffs.derivative(x)
            if dfx == 0.0 or abs(fx) < 1e-15 * max(abs(coeffs.a), abs(coeffs.e), 1.0):
                break
            step = fx / dfx
            if abs(step) < 1e-17 * max(1.0, abs(x)):
                break
            x -= step
        polished.append(x)
    polished.sort()
    return polished


def _cluster(values: Sequence[float], tol: float) -> list[list[float]]:
    clusters: list[list[float]] = []
    for x in values:
        if clusters and abs(x - clusters[-1][-1]) <= tol:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    return clusters


def _reconcile_clusters(
    coeffs: QuarticCoeffs, clusters: list[list[float]], profile: list[int]
) -> list[tuple[float, int]]:
    """Assign the known multiplicity profile to the root clusters.

    Exact multiple roots split under the eigensolver by ~eps^(1/m), far beyond
    the distinct-root tolerance, so when the invariants certify a multiple
    root the clusters are merged down to the certified count and the highest
    multiplicities go to the clusters where |q'| is smallest.
    """
    if not profile:
        return []
    while len(clusters) > len(profile):
        gaps = [
            (abs(np.mean(clusters[i + 1]) - np.mean(clusters[i])), i)
            for i in range(len(clusters) - 1)
        ]
        _, i = min(gaps)
        clusters[i : i + 2] = [clusters[i] + clusters[i + 1]]
    centers = [float(np.mean(c)) for c in clusters]
    by_flatness = sorted(range(len(centers)), key=lambda i: abs(coeffs.derivative(centers[i])))
    mults = [0] * len(centers)
    for rank, m in zip(by_flatness, sorted(profile, reverse=True)):
        mults[rank] = m
    return sorted(zip(centers, mults))


def classify_quartic(coeffs: QuarticCoeffs) -> QuarticAnalysis:
    """Real-root structure from the (Delta, P, D, Delta0) sign pattern.

    Zero tests use relative thresholds 1e-12 * scale^h where h is the
    homogeneity degree of the invariant in the coefficients (6, 2, 4, 2):
    the invariants span many orders of magnitude across lambda2.
    Roots are computed independently by the companion-matrix eigenvalue
    method with Newton polishing.
    """
    delta, p, big_d, delta0 = quartic_invariants(coeffs)
    scale = max(abs(x) for x in coeffs.as_array())
    z_delta = 1e-12 * scale**6
    z_p = 1e-12 * scale**2
    z_d = 1e-12 * scale**4
    z_d0 = 1e-12 * scale**2

    profile: Optional[list[int]] = None
    if abs(delta) > z_delta:
        if delta < 0.0:
            structure, n_simple = RootStructure.TWO_DISTINCT, None
        elif p < -z_p and big_d < -z_d:
            structure, n_simple = RootStructure.FOUR_DISTINCT, None
        else:
            structure, n_simple = RootStructure.NO_REAL, None
    else:
        # Delta = 0: at least one multiple root; record the certified
        # multiplicity profile for the root-extraction step
        if p < -z_p and big_d < -z_d and abs(delta0) > z_d0:
            structure, n_simple, profile = RootStructure.DOUBLE_ROOT_PLUS, 2, [2, 1, 1]
        elif abs(delta0) <= z_d0 and abs(big_d) > z_d:
            structure, n_simple, profile = RootStructure.DOUBLE_ROOT_PLUS, 1, [3, 1]
        elif abs(big_d) <= z_d:
            if p < -z_p:
                structure, n_simple, profile = RootStructure.DOUBLE_ROOT_PLUS, 0, [2, 2]
            elif abs(delta0) <= z_d0:
                structure, n_simple, profile = RootStructure.DOUBLE_ROOT_PLUS, 0, [4]
            else:
                structure, n_simple, profile = RootStructure.NO_REAL, None, []
        else:
            structure, n_simple, profile = RootStructure.DOUBLE_ROOT_PLUS, 0, [2]
    candidates = _polished_real_candidates(
        coeffs, count=None if profile is None else sum(profile)
    )
    clusters = _cluster(candidates, DEDUP_TOL)
    if profile is None:
        roots = tuple((float(np.mean(cl)), len(cl)) for cl in clusters)
    else:
        roots = tuple(_reconcile_clusters(coeffs, clusters, profile))
    return QuarticAnalysis(
        coeffs=coeffs,
        delta=delta,
        p=p,
        d=big_d,
        delta0=delta0,
        structure=structure,
        n_simple=n_simple,
        real_roots=roots,
    )


# ---------------------------------------------------------------------------
# q=5 elimination helpers (lambda1 = 1/2)
# ---------------------------------------------------------------------------


def _p3(alpha1: float, lambda2: float) -> float:
    v, t = V5, lambda2
    w = alpha1 - v
    return math.fsum(
        [
            4.0 * t * w * w,
            -5.0 * t * v * alpha1 * alpha1 * w,
            20.0 * t * v * v * alpha1 * alpha1,
            -8.0 * t * t * w * w,
            -20.0 * t * t * v * alpha1 * w * w,
        ]
    )


def _p4(alpha1: float, lambda2: float) -> float:
    v, t = V5, lambda2
    w = alpha1 - v
    return 5.0 * v * alpha1**4 + 5.0 * v * t * alpha1 * alpha1 * w * w


def q5_alpha2_from_alpha1(alpha1: float, lambda2: float) -> float:
    """Rational elimination alpha2 = P4(alpha1)/P3(alpha1).

    Raises AtSpecialPoint within 1e-12 of the removable point alpha1 = v and
    P3Vanishes when the denominator vanishes (only the trivial solution on
    that branch).
    """
    if abs(alpha1 - V5) < 1e-12:
        raise AtSpecialPoint(f"alpha1 = {alpha1!r} is at the special point v = {V5!r}")
    p3 = _p3(alpha1, lambda2)
    p3_scale = max(
        abs(4.0 * lambda2 * (alpha1 - V5) ** 2),
        abs(5.0 * lambda2 * V5 * alpha1 * alpha1 * (alpha1 - V5)),
        abs(20.0 * lambda2 * V5 * V5 * alpha1 * alpha1),
        abs(8.0 * lambda2 * lambda2 * (alpha1 - V5) ** 2),
        abs(20.0 * lambda2 * lambda2 * V5 * alpha1 * (alpha1 - V5) ** 2),
        1e-30,
    )
    if abs(p3) <= 1e-12 * p3_scale:
        raise P3Vanishes(f"P3({alpha1!r}) vanishes at lambda2 = {lambda2!r}")
    return _p4(alpha1, lambda2) / p3


def q5_special_lambda2() -> float:
    """The unique lambda2 at which alpha1 = v solves the system (= 37/96)."""
    v = V5
    return (v / 5.0 + v**3 / 4.0 + v**3 / 16.0) / (2.0 * v / 5.0 + 2.0 * v**3)


def q5_special_case(lambda2: float, tol: float = 1e-9) -> Optional[tuple[float, float]]:
    """The solution with alpha1 = v, present only at lambda2 = 37/96.

    Returns (v, v/(4*lambda2)) when |lambda2 - 37/96| < tol, else None.
    """
    if abs(lambda2 - q5_special_lambda2()) < tol:
        return (V5, V5 / (4.0 * lambda2))
    return None


# ---------------------------------------------------------------------------
# solution sets
# ---------------------------------------------------------------------------


def _residual(q: int, lambda1: float, lambda2: float, alpha: tuple[float, float]) -> float:
    f = mode_map(q, lambda1, lambda2, alpha)
    return max(abs(alpha[0] - f[0]), abs(alpha[1] - f[1]))


def _is_probability(q: int, alpha: tuple[float, float]) -> bool:
    try:
        SymmetricDist(q=q, modes=alpha)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class SolutionSet:
    """Verified fixed points (alpha1, alpha2) of the mode recursion.

    The trivial solution (0, 0) comes first, the rest sorted by alpha1
    ascending.  Candidates that fail the residual or probability check are
    recorded in `rejected` instead of being silently dropped.
    """

    q: int
    lambda1: float
    lambda2: float
    solutions: tuple[tuple[float, float], ...]
    residuals: tuple[float, ...]
    includes_trivial: bool
    rejected: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def nontrivial(self) -> list[tuple[float, float]]:
        return [s for s in self.solutions if max(abs(s[0]), abs(s[1])) > DEDUP_TOL]

    @property
    def n_nontrivial(self) -> int:
        return len(self.nontrivial)


def _assemble(
    q: int,
    lambda1: float,
    lambda2: float,
    candidates: Sequence[tuple[float, float]],
    notes: Sequence[str] = (),
) -> SolutionSet:
    accepted: list[tuple[float, float]] = [(0.0, 0.0)]
    rejected: list[str] = []
    for cand in candidates:
        a = (float(cand[0]), float(cand[1]))
        if not all(map(math.isfinite, a)):
            rejected.append(f"{a}: not finite")
            continue
        if max(abs(a[0]), abs(a[1])) <= DEDUP_TOL:
            continue  # coincides with the trivial solution
        if any(max(abs(a[0] - s[0]), abs(a[1] - s[1])) <= DEDUP_TOL for s in accepted):
            continue
        res = _residual(q, lambda1, lambda2, a)
        if res >= RESIDUAL_TOL:
            rejected.append(f"{a}: residual {res:.3e}")
            continue
        if not _is_probability(q, a):
            rejected.append(f"{a}: does not reconstruct to a probability vector")
            continue
        accepted.append(a)
    ordered = [accepted[0]] + sorted(accepted[1:], key=lambda s: s[0])
    return SolutionSet(
        q=q,
        lambda1=lambda1,
        lambda2=lambda2,
        solutions=tuple(ordered),
        residuals=tuple(_residual(q, lambda1, lambda2, s) for s in ordered),
        includes_trivial=True,
        rejected=tuple(rejected),
        notes=tuple(notes),
    )


def q5_solutions_at_critical(lambda2: float) -> SolutionSet:
    """All symmetric fixed points for q = 5 at lambda1 = 1/2.

    Union of the trivial solution, the quartic-root branch through the
    rational elimination, and the special alpha1 = v solution; every candidate
    is residual- and probability-verified.  lambda2 = 0 short-circuits to the
    trivial-only set (the quartic degenerates identically).
    """
    if not (0.0 <= lambda2 < 1.0):
        raise ClockTreeError(f"lambda2 must lie in [0, 1), got {lambda2!r}")
    if lambda2 == 0.0:
        return SolutionSet(
            q=5,
            lambda1=0.5,
            lambda2=0.0,
            solutions=((0.0, 0.0),),
            residuals=(0.0,),
            includes_trivial=True,
            notes=("degenerate quartic at lambda2 = 0: trivial solution only",),
        )
    analysis = classify_quartic(q5_quartic_coeffs(lambda2))
    candidates: list[tuple[float, float]] = []
    notes: list[str] = []
    for root, _mult in analysis.real_roots:
        if abs(root) <= DEDUP_TOL:
            continue  # the alpha1 = 0 root is the trivial solution
        try:
            candidates.append((root, q5_alpha2_from_alpha1(root, lambda2)))
        except AtSpecialPoint:
            notes.append(f"quartic root {root!r} hit the special point v")
        except P3Vanishes:
            notes.append(f"quartic root {root!r} lies on the P3 = 0 branch (trivial only)")
    special = q5_special_case(lambda2)
    if special is not None:
        candidates.append(special)
        notes.append("special alpha1 = v solution included")
    return _assemble(5, 0.5, lambda2, candidates, notes)


def q4_solutions(lambda1: float, lambda2: float) -> SolutionSet:
    """All symmetric fixed points for q = 4 in closed form.

    At lambda1 = 1/2: alpha2 = (3*lambda2 - 1)/(2*(lambda2 + lambda2^2)) and
    alpha1 = +-sqrt(2*lambda2*alpha2 - 4*lambda2^2*alpha2^2) when the radicand
    is non-negative.  For general lambda1 the quadratics
    P1 = lambda1/2 + lambda1*lambda2*alpha2 - 1/4 - lambda2^2*alpha2^2 and
    P2 = -lambda2*alpha2 + lambda1*alpha2 + 2*lambda1*lambda2*alpha2^2 are
    intersected and roots with P1 >= 0 yield alpha1 = +-sqrt(P1)/lambda1.
    Pure-alpha2 solutions (alpha1 = 0) with
    alpha2^2 = (2*lambda2 - 1)/(4*lambda2^2) are included when real.
    Infeasible (lambda1, lambda2) produce a note, not an error.
    """
    notes: list[str] = []
    feas = validate_non_increasing(spec_from_lambdas(4, lambda1, lambda2)) if _row_ok(4, lambda1, lambda2) else None
    if feas is None or not feas.feasible:
        notes.append("parameters are outside the non-increasing feasibility region")
    candidates: list[tuple[float, float]] = []
    if lambda2 > 0.0:
        # alpha1 = 0 branch of the second equation
        rad = (2.0 * lambda2 - 1.0) / (4.0 * lambda2 * lambda2)
        if rad >= 0.0:
            r = math.sqrt(rad)
            candidates += [(0.0, r), (0.0, -r)]
    if abs(lambda1 - 0.5) < 1e-12:
        if lambda2 > 0.0:
            a2 = (3.0 * lambda2 - 1.0) / (2.0 * (lambda2 + lambda2 * lambda2))
            rad = 2.0 * lambda2 * a2 - 4.0 * lambda2 * lambda2 * a2 * a2
            if rad >= -1e-15:
                a1 = math.sqrt(max(rad, 0.0))
                candidates += [(a1, a2), (-a1, a2)]
    elif abs(lambda1) > 1e-12:
        # intersect P1 and P2 as a quadratic in alpha2
        qa = -(lambda2 * lambda2 + 2.0 * lambda1 * lambda2)
        qb = lambda1 * lambda2 + lambda2 - lambda1
        qc = 0.5 * lambda1 - 0.25
        for a2 in _quadratic_roots(qa, qb, qc):
            p1 = 0.5 * lambda1 + lambda1 * lambda2 * a2 - 0.25 - lambda2 * lambda2 * a2 * a2
            if p1 < -1e-15:
                continue
            a1 = math.sqrt(max(p1, 0.0)) / lambda1
            candidates += [(a1, a2), (-a1, a2)]
    return _assemble(4, lambda1, lambda2, candidates, notes)


def _row_ok(q: int, lambda1: float, lambda2: float) -> bool:
    """True when the spectrum produces a (clamped) non-negative row."""
    try:
        spec_from_lambdas(q, lambda1, lambda2)
    except ValueError:
        return False
    return True


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    if a == 0.0:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    s = math.sqrt(disc)
    return [(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)]


# ---------------------------------------------------------------------------
# Newton solver on the q=5 displacement map
# ---------------------------------------------------------------------------


def displacement(lambda1: float, lambda2: float, alpha: tuple[float, float]) -> np.ndarray:
    """Identity minus the q=5 mode update; fixed points are its roots."""
    f = mode_map_q5(lambda1, lambda2, alpha)
    return np.array([alpha[0] - f[0], alpha[1] - f[1]])


def q5_jacobian(lambda1: float, lambda2: float, alpha: tuple[float, float]) -> tuple[np.ndarray, float]:
    """Analytic Jacobian of the displacement map and its determinant.

    Quotient-rule partials of the two mode updates; validated elsewhere
    against central finite differences.
    """
    a1, a2 = alpha
    l1, l2, v = lambda1, lambda2, V5
    den = 0.2 + a1 * a1 * l1 * l1 + a2 * a2 * l2 * l2
    n1 = 0.4 * l1 * a1 + 2.0 * l1 * l2 * v * a1 * a2 + v * l2 * l2 * a2 * a2
    n2 = 0.4 * l2 * a2 + 2.0 * l1 * l2 * v * a1 * a2 + v * l1 * l1 * a1 * a1
    dden_a1 = 2.0 * l1 * l1 * a1
    dden_a2 = 2.0 * l2 * l2 * a2
    dn1_a1 = 0.4 * l1 + 2.0 * l1 * l2 * v * a2
    dn1_a2 = 2.0 * l1 * l2 * v * a1 + 2.0 * v * l2 * l2 * a2
    dn2_a1 = 2.0 * l1 * l2 * v * a2 + 2.0 * v * l1 * l1 * a1
    dn2_a2 = 0.4 * l2 + 2.0 * l1 * l2 * v * a1
    jf = np.array(
        [
            [dn1_a1 * den - n1 * dden_a1, dn1_a2 * den - n1 * dden_a2],
            [dn2_a1 * den - n2 * dden_a1, dn2_a2 * den - n2 * dden_a2],
        ]
    ) / (den * den)
    jt = np.eye(2) - jf
    return jt, float(np.linalg.det(jt))


def newton_solve(
    lambda1: float,
    lambda2: float,
    seed: tuple[float, float],
    damping: float = 0.5,
    max_iter: int = 100,
) -> Optional[tuple[float, float]]:
    """Damped Newton iteration on the q=5 displacement map.

    Returns a point with sup-norm displacement below 1e-12, or None when the
    iteration does not converge within max_iter (a singular Jacobian is
    reported through the log and counts as non-convergence).
    """
    x = np.array(seed, dtype=float)
    for _ in range(max_iter):
        t = displacement(lambda1, lambda2, (x[0], x[1]))
        err = np.abs(t).max()
        if err < NEWTON_TOL:
            return (float(x[0]), float(x[1]))
        jt, det = q5_jacobian(lambda1, lambda2, (x[0], x[1]))
        if not math.isfinite(det) or abs(det) < 1e-300:
            log.debug("singular Jacobian at %s (lambda1=%s, lambda2=%s)", x, lambda1, lambda2)
            return None
        step = np.linalg.solve(jt, t)
        factor = 1.0
        for _ in range(60):
            cand = x - factor * step
            if np.abs(displacement(lambda1, lambda2, (cand[0], cand[1]))).max() < err:
                break
            factor *= damping
        else:
            return None
        x = x - factor * step
    return None


def q5_solutions(
    lambda1: float,
    lambda2: float,
    step: float = 0.005,
    probe_seed: bool = True,
) -> SolutionSet:
    """Symmetric fixed points for q = 5 at general (lambda1, lambda2).

    Continuation: the analytic solutions at lambda1 = 1/2 are tracked by
    damped Newton while lambda1 steps toward the target in increments of
    `step`.  A branch that collapses onto the trivial solution or loses
    Newton convergence has genuinely disappeared through a fold.  When the
    transfer matrix is strictly positive, a probe-converged iterate seeds one
    extra Newton run so stable branches unreachable by continuation (e.g. for
    lambda1 above the threshold) are still found.
    """
    if abs(lambda1 - 0.5) < 1e-12:
        return q5_solutions_at_critical(lambda2)
    notes: list[str] = []
    seeds = [np.array(s) for s in _critical_solutions_cached(lambda2).nontrivial]
    current = seeds
    if seeds:
        path = _continuation_path(0.5, lambda1, step)
        for l1 in path:
            survivors = []
            for s in current:
                r = newton_solve(l1, lambda2, (s[0], s[1]))
                if r is not None and max(abs(r[0]), abs(r[1])) > DEDUP_TOL:
                    survivors.append(np.array(r))
            current = survivors
            if not current:
                notes.append(f"continuation lost all branches at lambda1 = {l1!r}")
                break
    candidates = [(float(s[0]), float(s[1])) for s in current]
    if probe_seed:
        cand = _probe_seeded_candidate(lambda1, lambda2)
        if cand is not None:
            candidates.append(cand)
            notes.append("probe-seeded candidate included")
    return _assemble(5, lambda1, lambda2, candidates, notes)


@functools.lru_cache(maxsize=8192)
def _critical_solutions_cached(lambda2: float) -> SolutionSet:
    # sweeps revisit the same lambda2 column for every lambda1 row
    return q5_solutions_at_critical(lambda2)


def _continuation_path(start: float, target: float, step: float) -> list[float]:
    if target == start:
        return [target]
    n = max(1, int(math.ceil(abs(target - start) / step)))
    return [start + (target - start) * (i + 1) / n for i in range(n)]


def _probe_seeded_candidate(lambda1: float, lambda2: float) -> Optional[tuple[float, float]]:
    """Modes of the probe limit, Newton-polished, when the probe retains order."""
    try:
        spec = spec_from_lambdas(5, lambda1, lambda2)
    except ValueError:
        return None
    if min(spec.row) <= 0.0 or not validate_non_increasing(spec).feasible:
        return None
    M = spec.matrix()
    p = np.asarray(spec.row) ** 2
    p /= p.sum()
    for _ in range(300):
        p = np.power(M @ p, 2)
        p /= p.sum()
        if np.abs(p - 0.2).max() < 1e-9:
            return None
    if np.abs(p - 0.2).max() < 1e-6:
        return None
    dist = SymmetricDist.from_probabilities(p)
    return newton_solve(lambda1, lambda2, (dist.modes[0], dist.modes[1]))


# ---------------------------------------------------------------------------
# Potts-line helpers (lambda1 = lambda2 = lambda, q = 5)
# ---------------------------------------------------------------------------


def q5_potts_diagonal_solutions(lam: float) -> Optional[tuple[tuple[float, float], tuple[float, float]]]:
    """Lower and upper diagonal fixed points alpha1 = alpha2 = alpha.

    On the Potts line the mode recursion preserves the diagonal and the
    non-trivial diagonal fixed points solve
    2*lam^2*alpha^2 - 3*v*lam^2*alpha + (1 - 2*lam)/5 = 0; real solutions
    exist exactly for lam >= 4/9.  Returns ((lower, lower), (upper, upper)) or
    None below the existence interval.
    """
    v = V5
    qa = 2.0 * lam * lam
    qb = -3.0 * v * lam * lam
    qc = (1.0 - 2.0 * lam) / 5.0
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        if disc > -1e-12 * max(qb * qb, 1e-30):
            disc = 0.0
        else:
            return None
    s = math.sqrt(disc)
    lower = (-qb - s) / (2.0 * qa)
    upper = (-qb + s) / (2.0 * qa)
    return ((lower, lower), (upper, upper))


@dataclass(frozen=True)
class PottsBoundaryLaws:
    """Residual-verified boundary-law pair on the q=5 Potts line.

    `sign_convention` records whether the printed (1 - e^beta) or the flipped
    (e^beta - 1) leading term produced verified values; `mode_conversion`
    records which a -> (alpha1, alpha2) rule passed the fixed-point residual
    check ("printed" is 2*(1-a)/5; "bl-ratio" reads a as the reciprocal
    square-root of the boundary-law ratio z = (q-1)^2/a^2 and converts the
    normalized marginal (z,1,1,1,1)/(z+4) to modes).
    """

    lam: float
    theta: float
    a_plus: float
    a_minus: float
    modes_plus: tuple[float, float]
    modes_minus: tuple[float, float]
    residual_plus: float
    residual_minus: float
    sign_convention: str
    mode_conversion: str


def _bl_modes_printed(a: float) -> tuple[float, float]:
    m = 2.0 * (1.0 - a) / 5.0
    return (m, m)


def _bl_modes_ratio(a: float) -> tuple[float, float]:
    z = 16.0 / (a * a)
    m = (z - 1.0) / (C5 * (z + 4.0))
    return (m, m)


def potts_boundary_laws(q: int, lam: float, strict: bool = False) -> Optional[PottsBoundaryLaws]:
    """The two boundary-law solutions (a+, a-) on the Potts line, verified.

    Real solutions exist for lam in [4/9, 1/2) where the radicand
    theta^2 - 2*theta + 5 - 4*q is non-negative (theta = e^beta).  The printed
    sign convention and mode conversion are tried first; variants are accepted
    only if both branches satisfy the fixed-point equations to 1e-9, and the
    accepted combination is recorded.  Returns None (or raises
    RadicandNegative with strict=True) outside the existence interval.
    """
    if q != 5:
        raise UnsupportedQ(f"boundary-law formulas are specific to q = 5, got q={q}")
    theta = potts_theta(q, lam)
    rad = theta * theta - 2.0 * theta + 5.0 - 4.0 * q
    if rad < 0.0:
        if rad > -1e-9 * max(theta * theta, 1.0):
            rad = 0.0
        elif strict:
            raise RadicandNegative(f"radicand {rad!r} negative at lambda = {lam!r}")
        else:
            return None
    s = math.sqrt(rad)
    denom = 2.0 * (q - 1.0)
    pairs = {}
    for sign_name, lead in (("1-theta", 1.0 - theta), ("theta-1", theta - 1.0)):
        if lead + s == 0.0 or lead - s == 0.0:
            continue
        pairs[sign_name] = (denom / (lead + s), denom / (lead - s))
    # the literally printed combination first, then the sign flip, then the
    # boundary-law-ratio reading (positive-a conventions before negative)
    order = [
        ("1-theta", "printed", _bl_modes_printed),
        ("theta-1", "printed", _bl_modes_printed),
        ("theta-1", "bl-ratio", _bl_modes_ratio),
        ("1-theta", "bl-ratio", _bl_modes_ratio),
    ]
    attempts = [
        (sign, conv_name, pairs[sign][0], pairs[sign][1], conv(pairs[sign][0]), conv(pairs[sign][1]))
        for sign, conv_name, conv in order
        if sign in pairs
    ]
    for sign_name, conv_name, a_plus, a_minus, mp, mm in attempts:
        rp = _residual(5, lam, lam, mp)
        rm = _residual(5, lam, lam, mm)
        if rp < RESIDUAL_TOL and rm < RESIDUAL_TOL:
            return PottsBoundaryLaws(
                lam=lam,
                theta=theta,
                a_plus=a_plus,
                a_minus=a_minus,
                modes_plus=mp,
                modes_minus=mm,
                residual_plus=rp,
                residual_minus=rm,
                sign_convention=sign_name,
                mode_conversion=conv_name,
            )
    raise ClockTreeError(
        f"no boundary-law convention verified at lambda = {lam!r} "
        "(all candidate conversions failed the fixed-point residual check)"
    )
