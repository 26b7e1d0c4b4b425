"""Circulant transfer matrices and symmetric single-site distributions.

A generalized clock model on q states is defined by a stochastic circulant
matrix M whose first row r is reflection symmetric and non-increasing in the
circle distance.  M is diagonal in the Fourier basis, so it is equivalently
described by its real eigenvalue spectrum

    lambda_j = sum_k r_k exp(-2*pi*i*j*k/q),   lambda_0 = 1,
    r_l      = (1/q) sum_k lambda_k exp(2*pi*i*l*k/q),

with lambda_j = lambda_{q-j}.  The Potts model (row proportional to
(e^beta, 1, ..., 1)) and the standard clock model (row proportional to
exp(J*cos(2*pi*j/q))) are the limiting members of the family.

Single-site marginals live in the reflection-symmetric probability simplex
and are stored by their NORMALIZED Fourier modes alpha_1..alpha_{floor(q/2)}
(the mass mode alpha_0 = 1/q is implicit).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import (
    BasisConvention,
    convert_coefficients,
    n_modes,
    raw_coefficients,
    unit_basis_vector,
)
from .errors import (
    ClockTreeError,
    DimensionMismatch,
    NotAProbability,
    NotStochastic,
    RowAsymmetric,
    SpectrumAsymmetric,
    ZeroRowEntry,
)

ROW_TOL = 1e-12


def row_from_eigenvalues(q: int, eigenvalues: np.ndarray) -> np.ndarray:
    """First row of the circulant, r_l = (1/q) sum_k lambda_k e^{2*pi*i*l*k/q}.

    Direct summation (no FFT): q stays tiny here and the arithmetic is
    transparent.  The imaginary parts are analytically zero by the symmetry
    lambda_j = lambda_{q-j}; they are asserted below 1e-12 and discarded.

    Raises SpectrumAsymmetric for asymmetric spectra, NotStochastic when a
    row entry falls below -1e-12.  Entries in [-1e-12, 0) are clamped to 0 so
    boundary-of-feasibility spectra from sweep grids remain usable.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.shape != (q,):
        raise SpectrumAsymmetric(f"expected {q} eigenvalues, got shape {lam.shape}")
    for j in range(1, q):
        if abs(lam[j] - lam[q - j]) > ROW_TOL:
            raise SpectrumAsymmetric(
                f"lambda_{j} = {lam[j]!r} differs from lambda_{q - j} = {lam[q - j]!r}"
            )
    k = np.arange(q)
    row = np.empty(q)
    for l in range(q):
        total = complex(0.0)
        for kk in k:
            total += lam[kk] * np.exp(2j * math.pi * l * kk / q)
        if abs(total.imag) > ROW_TOL:
            raise SpectrumAsymmetric(f"row entry {l} has imaginary part {total.imag:.3e}")
        row[l] = total.real / q
    if row.min() < -ROW_TOL:
        raise NotStochastic(f"row entry {row.argmin()} = {row.min():.6e} below -1e-12")
    # r_l = r_{q-l} holds analytically; average away the last few ulps
    for l in range(1, q // 2 + 1):
        m = 0.5 * (row[l] + row[q - l]) if l != q - l else row[l]
        row[l] = m
        row[q - l] = m
    return np.where((row < 0.0) & (row >= -ROW_TOL), 0.0, row)


def eigenvalues_from_row(q: int, row: np.ndarray) -> np.ndarray:
    """Spectrum lambda_j = sum_k r_k e^{-2*pi*i*j*k/q} of a symmetric probability row."""
    r = np.asarray(row, dtype=float)
    if r.shape != (q,):
        raise RowAsymmetric(f"expected a length-{q} row, got shape {r.shape}")
    for kk in range(1, q):
        if abs(r[kk] - r[q - kk]) > ROW_TOL:
            raise RowAsymmetric(f"r_{kk} = {r[kk]!r} differs from r_{q - kk} = {r[q - kk]!r}")
    if r.min() < -ROW_TOL:
        raise NotAProbability(f"row entry {r.argmin()} = {r.min():.6e} below -1e-12")
    if abs(r.sum() - 1.0) > ROW_TOL:
        raise NotAProbability(f"row sums to {r.sum()!r}, not 1")
    lam = np.empty(q)
    for j in range(q):
        total = complex(0.0)
        for kk in range(q):
            total += r[kk] * np.exp(-2j * math.pi * j * kk / q)
        lam[j] = total.real
    lam[0] = 1.0
    # symmetrize away the last few ulps so the spectrum invariant is exact
    for j in range(1, q // 2 + 1):
        m = 0.5 * (lam[j] + lam[q - j]) if j != q - j else lam[j]
        lam[j] = m
        lam[q - j] = m
    return lam


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the non-increasing check for a transfer matrix."""

    feasible: bool
    violation: str | None = None


@dataclass(frozen=True)
class TransferSpec:
    """A q-state circulant transfer matrix, stored as spectrum plus derived row."""

    q: int
    eigenvalues: tuple[float, ...]
    row: tuple[float, ...] = field(compare=False)

    def __post_init__(self) -> None:
        if not 3 <= self.q <= 64:
            raise DimensionMismatch(f"need 3 <= q <= 64, got {self.q}")
        if self.eigenvalues[0] != 1.0:
            raise SpectrumAsymmetric(f"lambda_0 must be exactly 1, got {self.eigenvalues[0]!r}")

    @classmethod
    def from_eigenvalues(cls, q: int, eigenvalues) -> "TransferSpec":
        lam = np.asarray(eigenvalues, dtype=float)
        row = row_from_eigenvalues(q, lam)
        if abs(row.sum() - 1.0) > ROW_TOL:
            raise NotStochastic(f"row sums to {row.sum()!r}, not 1")
        return cls(q=q, eigenvalues=tuple(map(float, lam)), row=tuple(map(float, row)))

    @classmethod
    def from_row(cls, q: int, row) -> "TransferSpec":
        lam = eigenvalues_from_row(q, row)
        r = np.asarray(row, dtype=float)
        r = np.where((r < 0.0) & (r >= -ROW_TOL), 0.0, r)
        return cls(q=q, eigenvalues=tuple(map(float, lam)), row=tuple(map(float, r)))

    def matrix(self) -> np.ndarray:
        """The full q x q circulant, M[i, j] = r[(j - i) mod q]."""
        r = np.asarray(self.row)
        return np.array([[r[(j - i) % self.q] for j in range(self.q)] for i in range(self.q)])

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[1]

    @property
    def lambda2(self) -> float:
        return self.eigenvalues[2]


def spec_from_lambdas(q: int, lambda1: float, lambda2: float) -> TransferSpec:
    """Transfer matrix for q in {4, 5} from its two free eigenvalues."""
    if q == 4:
        lam = (1.0, lambda1, lambda2, lambda1)
    elif q == 5:
        lam = (1.0, lambda1, lambda2, lambda2, lambda1)
    else:
        raise DimensionMismatch(f"two-eigenvalue constructor only supports q in {{4, 5}}, got q={q}")
    return TransferSpec.from_eigenvalues(q, lam)


def potts_lambda(q: int, theta: float) -> float:
    """Non-trivial Potts eigenvalue (theta - 1)/(theta + q - 1), theta = e^beta."""
    return (theta - 1.0) / (theta + q - 1.0)


def potts_theta(q: int, lam: float) -> float:
    """Inverse of potts_lambda: e^beta = (1 + lam*(q-1))/(1 - lam)."""
    return (1.0 + lam * (q - 1.0)) / (1.0 - lam)


def make_potts(q: int, beta: float) -> TransferSpec:
    """Potts transfer matrix: row proportional to (e^beta, 1, ..., 1).

    All non-trivial eigenvalues equal (e^beta - 1)/(e^beta + q - 1).
    """
    if not math.isfinite(beta):
        raise NotAProbability(f"beta must be finite, got {beta!r}")
    theta = math.exp(beta)
    lam = potts_lambda(q, theta)
    eig = np.full(q, lam)
    eig[0] = 1.0
    return TransferSpec.from_eigenvalues(q, eig)


def make_potts_from_theta(q: int, theta: float) -> TransferSpec:
    """Potts transfer matrix parametrized by theta = e^beta > 0."""
    if not (theta > 0.0 and math.isfinite(theta)):
        raise NotAProbability(f"theta must be positive and finite, got {theta!r}")
    return make_potts(q, math.log(theta))


def make_standard_clock(q: int, coupling: float) -> TransferSpec:
    """Standard clock model: row proportional to exp(J*cos(2*pi*j/q))."""
    if not math.isfinite(coupling):
        raise NotAProbability(f"coupling must be finite, got {coupling!r}")
    j = np.arange(q)
    row = np.exp(coupling * np.cos(2.0 * math.pi * j / q))
    row /= row.sum()
    return TransferSpec.from_row(q, row)


def validate_non_increasing(spec: TransferSpec) -> FeasibilityReport:
    """Check r_0 >= r_1 >= ... >= r_{floor(q/2)} >= 0 (with 1e-12 slack).

    For q in {4, 5} the equivalent eigenvalue ordering lambda1 >= lambda2 is
    checked as well.  Reports rather than raises: sweep grids legitimately
    cross the feasibility boundary.
    """
    r = spec.row
    half = spec.q // 2
    for j in range(half):
        if r[j] + ROW_TOL < r[j + 1]:
            return FeasibilityReport(False, f"r{j} < r{j + 1} ({r[j]!r} < {r[j + 1]!r})")
    if r[half] < -ROW_TOL:
        return FeasibilityReport(False, f"r{half} = {r[half]!r} negative")
    if spec.q in (4, 5) and spec.lambda1 + ROW_TOL < spec.lambda2:
        return FeasibilityReport(
            False, f"lambda1 < lambda2 ({spec.lambda1!r} < {spec.lambda2!r})"
        )
    return FeasibilityReport(True, None)


def weakened_row(spec: TransferSpec, u: float) -> TransferSpec:
    """Transfer matrix of the weakened potential u*Phi: new row prop. to r^u.

    At u = 1 this is `spec` itself; as u -> 0 the row tends to uniform.
    """
    if not (0.0 < u <= 1.0):
        raise ClockTreeError(f"weakening u must lie in (0, 1], got {u!r}")
    if u == 1.0:
        return spec
    r = np.asarray(spec.row)
    if (r <= 0.0).any():
        raise ZeroRowEntry("row has a zero entry; the potential is infinite there")
    ru = np.power(r, u)
    ru /= ru.sum()
    return TransferSpec.from_row(spec.q, ru)


# ---------------------------------------------------------------------------
# symmetric single-site distributions
# ---------------------------------------------------------------------------

DIST_TOL = 1e-12


@dataclass(frozen=True)
class SymmetricDist:
    """Reflection-symmetric probability vector stored by NORMALIZED modes.

    p(j) = 1/q + sum_k alpha_k * phi_k(j) / sqrt(z_k), k = 1..floor(q/2).
    """

    q: int
    modes: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.modes) != n_modes(self.q):
            raise DimensionMismatch(
                f"q={self.q} needs {n_modes(self.q)} modes, got {len(self.modes)}"
            )
        p = self.probabilities()
        if p.min() < -DIST_TOL:
            raise NotAProbability(
                f"modes reconstruct to a negative probability {p.min():.6e}"
            )

    def probabilities(self) -> np.ndarray:
        p = np.full(self.q, 1.0 / self.q)
        for k, a in enumerate(self.modes, start=1):
            p += a * unit_basis_vector(self.q, k)
        return p

    def raw_coefficients(self) -> np.ndarray:
        """RAW coefficients (a_0, ..., a_{floor(q/2)}) of the probability vector."""
        full = np.concatenate(([1.0 / math.sqrt(self.q)], self.modes))
        return convert_coefficients(self.q, full, BasisConvention.NORMALIZED, BasisConvention.RAW)

    @classmethod
    def from_probabilities(cls, p) -> "SymmetricDist":
        p = np.asarray(p, dtype=float)
        q = len(p)
        if abs(p.sum() - 1.0) > 1e-9:
            raise NotAProbability(f"probabilities sum to {p.sum()!r}")
        raw = raw_coefficients(q, p)
        modes = convert_coefficients(q, raw, BasisConvention.RAW, BasisConvention.NORMALIZED)
        return cls(q=q, modes=tuple(modes[1:]))

    @classmethod
    def uniform(cls, q: int) -> "SymmetricDist":
        return cls(q=q, modes=(0.0,) * n_modes(q))

    @classmethod
    def point_mass(cls, q: int) -> "SymmetricDist":
        """The Dirac distribution at state 0 (the plus boundary condition)."""
        p = np.zeros(q)
        p[0] = 1.0
        return cls.from_probabilities(p)

    def sup_distance_to_uniform(self) -> float:
        return float(np.abs(self.probabilities() - 1.0 / self.q).max())


def apply_transfer(spec: TransferSpec, dist: SymmetricDist) -> SymmetricDist:
    """M acting on a symmetric distribution: each mode scales by its eigenvalue."""
    if spec.q != dist.q:
        raise DimensionMismatch(f"transfer has q={spec.q}, distribution q={dist.q}")
    new = tuple(spec.eigenvalues[k] * a for k, a in enumerate(dist.modes, start=1))
    return SymmetricDist(q=dist.q, modes=new)


def a_norm_distance_to_uniform(q: int, p: np.ndarray) -> float:
    """||p - uniform||_A for a pointwise symmetric probability vector."""
    from .basis import a_norm

    return a_norm(q, np.asarray(p, dtype=float) - 1.0 / q)
