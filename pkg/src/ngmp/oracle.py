"""Finite-difference radial eigensolver used to check the closed-form levels.

The radial equation

    -(hbar^2/2mu) R'' + [V(r) + hbar^2 (delta+2l-1)(delta+2l-3) / (8 mu) * w(r)] R = E R

is discretized with the 3-point stencil on a uniform grid with R = 0 at both
ends.  ``w(r)`` is 1/r^2 in exact mode and the exponential approximation in
pekeris mode.  Eigenvalues come from bisection on the Sturm sequence of the
resulting symmetric tridiagonal matrix; no dense or LAPACK solver is involved.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .approximation import IMPROVED_D0, ApproximationScheme, centrifugal_approx
from .errors import NGMPError, SingularRadius, ValidationError
from .molecules import HBAR_C
from .potential import PotentialParams, derive_coefficients, evaluate_potential, singularity_radius
from .spectrum import QuantumNumbers, energy

DEFAULT_R_MIN = 1e-3
DEFAULT_POINTS = 4000
EIGEN_TOL = 1e-10  # eV


class Mode(str, enum.Enum):
    EXACT = "exact-centrifugal"
    PEKERIS = "pekeris-approx"


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValidationError("need 0 < r_min < r_max")
        if self.n_points < 200:
            raise ValidationError("n_points must be >= 200")

    @classmethod
    def default(cls, alpha: float) -> "RadialGrid":
        return cls(DEFAULT_R_MIN, 30.0 / alpha, DEFAULT_POINTS)

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    def refined(self, factor: int = 2) -> "RadialGrid":
        """Same interval with the spacing divided by ``factor``."""
        return replace(self, n_points=(self.n_points - 1) * factor + 1)


@dataclass(frozen=True)
class OracleConfig:
    mode: Mode
    grid: RadialGrid
    k: int = 1
    d0: float = IMPROVED_D0

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        object.__setattr__(self, "mode", Mode(self.mode))


@dataclass(frozen=True)
class TridiagonalOperator:
    diag: np.ndarray
    offdiag: np.ndarray
    r: np.ndarray = field(repr=False)

    def __len__(self):
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def tridiagonal_operator(r: np.ndarray, potential: np.ndarray, h: float, kinetic: float) -> TridiagonalOperator:
    """3-point Hamiltonian on interior points ``r`` with kinetic = hbar^2/(2 mu)."""
    n = r.size
    diag = 2.0 * kinetic / (h * h) + potential
    off = np.full(n - 1, -kinetic / (h * h))
    return TridiagonalOperator(np.asarray(diag, dtype=float), off, r)


def centrifugal_weight(params: PotentialParams, r: np.ndarray, mode: Mode, d0: float) -> np.ndarray:
    if Mode(mode) is Mode.EXACT:
        return 1.0 / (r * r)
    scheme = ApproximationScheme(q=params.q, alpha=params.alpha, d0=d0)
    return np.atleast_1d(centrifugal_approx(scheme, r))


def build_hamiltonian(params: PotentialParams, mu: float, qn: QuantumNumbers, config: OracleConfig,
                      hbar_c: float = HBAR_C) -> TridiagonalOperator:
    grid = config.grid
    r_star = singularity_radius(params)
    if r_star is not None and grid.r_min <= r_star <= grid.r_max:
        raise SingularRadius(f"grid [{grid.r_min}, {grid.r_max}] crosses the pole at r = {r_star:.6g}")
    r = grid.interior
    kinetic = hbar_c * hbar_c / (2.0 * mu)
    k = qn.k
    # hbar^2 (k-1)(k-3) / (8 mu) = kinetic * (k-1)(k-3) / 4
    cf = kinetic * (k - 1) * (k - 3) / 4.0
    v = np.atleast_1d(evaluate_potential(params, r))
    if cf != 0:
        v = v + cf * centrifugal_weight(params, r, config.mode, config.d0)
    return tridiagonal_operator(r, v, grid.h, kinetic)


def sturm_count(op: TridiagonalOperator, x) -> np.ndarray:
    """Number of eigenvalues of ``op`` strictly below each shift in ``x``.

    Counts negative pivots of the LDL^T factorization of (op - x I).
    """
    x = np.asarray(x, dtype=float)
    d = op.diag
    e2 = op.offdiag * op.offdiag
    scale = max(np.max(np.abs(d)), np.max(np.abs(op.offdiag)) if op.offdiag.size else 0.0, 1.0)
    pivmin = np.finfo(float).tiny * scale * 1e10
    count = np.zeros(x.shape, dtype=np.int64)
    piv = d[0] - x
    piv = np.where(np.abs(piv) < pivmin, -pivmin, piv)
    count += piv < 0
    for i in range(1, d.size):
        piv = (d[i] - x) - e2[i - 1] / piv
        piv = np.where(np.abs(piv) < pivmin, -pivmin, piv)
        count += piv < 0
    return count


def gershgorin_bounds(op: TridiagonalOperator) -> tuple[float, float]:
    radius = np.zeros_like(op.diag)
    a = np.abs(op.offdiag)
    radius[:-1] += a
    radius[1:] += a
    lo = float(np.min(op.diag - radius))
    hi = float(np.max(op.diag + radius))
    pad = 1e-12 * max(abs(lo), abs(hi), 1.0)
    return lo - pad, hi + pad


def lowest_eigenvalues(op: TridiagonalOperator, k: int, tol: float = EIGEN_TOL,
                       sections: int = 64) -> np.ndarray:
    """The ``k`` smallest eigenvalues in ascending order.

    Every eigenvalue is bracketed by multisection: each sweep evaluates the
    Sturm count at ``sections - 1`` interior points of every open bracket at
    once and keeps the sub-interval where the count passes the target index.
    Stops when brackets are narrower than ``tol`` or than a few ulps.
    """
    k = min(k, len(op))
    lo, hi = gershgorin_bounds(op)
    lower = np.full(k, lo)
    upper = np.full(k, hi)
    target = np.arange(1, k + 1)  # eigenvalue j (0-based) is where count reaches j+1
    frac = np.arange(1, sections) / sections
    eps = np.finfo(float).eps
    for _ in range(200):
        width = upper - lower
        limit = np.maximum(tol, 4 * eps * np.maximum(np.abs(lower), np.abs(upper)))
        active = width > limit
        if not active.any():
            break
        idx = np.flatnonzero(active)
        probes = lower[idx, None] + width[idx, None] * frac[None, :]
        counts = sturm_count(op, probes)
        for row, j in enumerate(idx):
            reached = counts[row] >= target[j]
            if not reached.any():
                lower[j] = probes[row, -1]
                continue
            # first probe with count >= j+1 lies above eigenvalue j
            pos = int(np.argmax(reached))
            upper[j] = probes[row, pos]
            if pos > 0:
                lower[j] = probes[row, pos - 1]
    return 0.5 * (lower + upper)


def solve(params: PotentialParams, mu: float, qn: QuantumNumbers, config: OracleConfig,
          hbar_c: float = HBAR_C) -> np.ndarray:
    return lowest_eigenvalues(build_hamiltonian(params, mu, qn, config, hbar_c), config.k)


@dataclass(frozen=True)
class Convergence:
    """Eigenvalue on grids with spacing h, h/2, h/4 and the observed error ratio."""

    values: tuple[float, float, float]

    @property
    def ratio(self) -> float:
        e1, e2, e4 = self.values
        den = e2 - e4
        return (e1 - e2) / den if den != 0 else math.inf

    @property
    def best(self) -> float:
        return self.values[2]

    def bounded(self, slack: float = 1e-10) -> bool:
        """|E(h) - E(h/2)| <= 4 |E(h/2) - E(h/4)| + slack."""
        e1, e2, e4 = self.values
        return abs(e1 - e2) <= 4 * abs(e2 - e4) + slack

    def second_order(self, spread: float = 0.5) -> bool:
        """Observed error ratio within 4 +- spread."""
        return abs(self.ratio - 4.0) <= spread


def converge(params: PotentialParams, mu: float, qn: QuantumNumbers, config: OracleConfig,
             hbar_c: float = HBAR_C) -> list[Convergence]:
    """Lowest ``config.k`` eigenvalues on the grid and two successive halvings."""
    runs = []
    grid = config.grid
    for factor in (1, 2, 4):
        cfg = replace(config, grid=grid.refined(factor) if factor > 1 else grid)
        runs.append(solve(params, mu, qn, cfg, hbar_c))
    return [Convergence((float(a), float(b), float(c))) for a, b, c in zip(*runs)]


@dataclass(frozen=True)
class ValidationRow:
    n: int
    l: int
    delta: int
    E_analytic: float
    status: str
    normalizable: bool
    E_numeric_approx: float
    E_numeric_exact: float
    approx_convergence: Convergence
    exact_convergence: Convergence

    @property
    def delta_implementation(self) -> float:
        return self.E_analytic - self.E_numeric_approx

    @property
    def delta_approximation(self) -> float:
        return self.E_numeric_approx - self.E_numeric_exact

    @property
    def agrees(self) -> bool:
        """|analytic - pekeris-mode numeric| <= 1e-3 |E| (False when no level)."""
        if not math.isfinite(self.E_analytic):
            return False
        return abs(self.delta_implementation) <= 1e-3 * abs(self.E_analytic)


@dataclass(frozen=True)
class ValidationReport:
    params: PotentialParams
    mu: float
    d0: float
    grid: RadialGrid
    rows: list[ValidationRow]

    @property
    def discrepancies(self) -> list[ValidationRow]:
        return [row for row in self.rows if not row.agrees]


def compare_levels(params: PotentialParams, mu: float, n_max: int, l_values, delta: int = 3,
                   d0: float = IMPROVED_D0, grid: RadialGrid | None = None,
                   hbar_c: float = HBAR_C) -> ValidationReport:
    """Closed-form levels against both numeric modes for n <= n_max and each l."""
    grid = grid or RadialGrid.default(params.alpha)
    coeffs = derive_coefficients(params)
    rows = []
    for l in l_values:
        qn0 = QuantumNumbers(0, l, delta)
        approx = converge(params, mu, qn0, OracleConfig(Mode.PEKERIS, grid, n_max + 1, d0), hbar_c)
        exact = converge(params, mu, qn0, OracleConfig(Mode.EXACT, grid, n_max + 1, d0), hbar_c)
        for n in range(n_max + 1):
            qn = QuantumNumbers(n, l, delta)
            try:
                level = energy(coeffs, mu, params.alpha, params.De, qn, d0, hbar_c)
                E, status, normalizable = level.E, "ok", level.normalizable
            except NGMPError as exc:
                E, status, normalizable = math.nan, type(exc).__name__, False
            if status == "ok" and not normalizable:
                status = "non-decaying"
            nan = Convergence((math.nan,) * 3)
            ca = approx[n] if n < len(approx) else nan
            ce = exact[n] if n < len(exact) else nan
            rows.append(ValidationRow(n, l, delta, E, status, normalizable, ca.best, ce.best, ca, ce))
    return ValidationReport(params, mu, d0, grid, rows)


def compare_with_analytic(params: PotentialParams, mu: float, qn: QuantumNumbers,
                          d0: float = IMPROVED_D0, config: OracleConfig | None = None,
                          hbar_c: float = HBAR_C) -> ValidationRow:
    """Single-level form of :func:`compare_levels`; ``config.grid`` sets the base grid."""
    grid = config.grid if config is not None else None
    report = compare_levels(params, mu, qn.n, [qn.l], qn.delta, d0, grid, hbar_c)
    return report.rows[qn.n]
