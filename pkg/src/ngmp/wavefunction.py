"""Radial eigenfunctions built from Jacobi polynomials.

    R(r) = N * s^a' * (1 + q s)^p * P_n^(2a', 2 sqrt(Delta))(1 + 2 q s)

with s = exp(-alpha r), a' = sqrt(eps + gamma d0 - beta0), Delta the level's
discriminant and p = 1/2 + sqrt(Delta).  The variant with s^(-a') and
P_n^(-2a', ...) is kept behind ``literal_sign`` for comparison only, since it
grows without bound as r -> infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import simpson
from scipy.special import binom

from .approximation import IMPROVED_D0
from .errors import InvalidExponent, NonNormalizable, SingularRadius, TailNotConverged, ValidationError
from .molecules import HBAR_C
from .potential import CoefficientSet, PotentialParams, one_plus_qs
from .spectrum import EnergyLevel, QuantumNumbers, dimensionless, epsilon

# "half": exponent 1/2 + sqrt(Delta) on (1 + q s), which solves the
# approximated radial equation; "q_half": the alternative q/2 + |q| sqrt(Delta).
QS_OFFSETS = ("half", "q_half")


def jacobi_polynomial(n: int, a: float, b: float, x):
    """P_n^(a,b)(x) by the three-term recurrence in the degree."""
    if n < 0 or int(n) != n:
        raise ValueError("degree must be a non-negative integer")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return float(p_prev) if x.ndim == 0 else p_prev
    p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for m in range(2, n + 1):
        c = 2 * m + a + b
        lead = 2.0 * m * (m + a + b) * (c - 2.0)
        if lead == 0:
            return _jacobi_series(n, a, b, x)
        p_prev, p = p, ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * p
                        - 2.0 * (m + a - 1.0) * (m + b - 1.0) * c * p_prev) / lead
    return float(p) if x.ndim == 0 else p


def _jacobi_series(n, a, b, x):
    # fallback for parameter combinations where the recurrence divides by zero
    u = (x - 1.0) / 2.0
    v = (x + 1.0) / 2.0
    out = sum(binom(n + a, n - k) * binom(n + b, k) * u**k * v ** (n - k) for k in range(n + 1))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class RadialWavefunction:
    exp_s: float
    exp_1qs: float
    jacobi_a: float
    jacobi_b: float
    n: int
    l: int = 0
    delta: int = 3
    norm: float = 1.0
    literal_sign: bool = False

    @property
    def s_power(self) -> float:
        """Exponent actually applied to s = exp(-alpha r)."""
        return -self.exp_s if self.literal_sign else self.exp_s


def build_wavefunction(coeffs: CoefficientSet, mu: float, alpha: float, level: EnergyLevel,
                       d0: float = IMPROVED_D0, *, literal_sign: bool = False,
                       qs_offset: str = "half", hbar_c: float = HBAR_C) -> RadialWavefunction:
    """Exponents and Jacobi parameters for ``level``; the norm is left at 1.

    Raises InvalidExponent when eps + gamma d0 - beta0 < 0.
    """
    if qs_offset not in QS_OFFSETS:
        raise ValidationError(f"qs_offset must be one of {QS_OFFSETS}")
    qn = QuantumNumbers(level.n, level.l, level.delta)
    dim = dimensionless(coeffs, mu, alpha, qn, hbar_c)
    eps = epsilon(coeffs, mu, alpha, qn, d0, hbar_c)
    arg = eps + dim.gamma * d0 - dim.beta0
    if arg < -1e-12 * max(1.0, abs(dim.beta0), abs(eps)):
        raise InvalidExponent(f"eps + gamma d0 - beta0 = {arg:.6g} < 0")
    exp_s = math.sqrt(max(arg, 0.0))
    root = math.sqrt(level.discriminant)
    q = coeffs.q
    exp_1qs = 0.5 + root if qs_offset == "half" else q / 2.0 + abs(q) * root
    return RadialWavefunction(
        exp_s=exp_s,
        exp_1qs=exp_1qs,
        jacobi_a=-2.0 * exp_s if literal_sign else 2.0 * exp_s,
        jacobi_b=2.0 * root,
        n=level.n,
        l=level.l,
        delta=level.delta,
        literal_sign=literal_sign,
    )


def _amplitude(wf: RadialWavefunction, params: PotentialParams, r: np.ndarray) -> np.ndarray:
    q = params.q
    x = params.alpha * r
    w = one_plus_qs(q, x)
    if np.any(w < 0) or (wf.exp_1qs < 0 and np.any(w == 0)):
        raise SingularRadius("1 + q exp(-alpha r) is not positive on the requested radii")
    s = np.exp(-x)
    with np.errstate(divide="ignore", over="ignore"):
        env = np.exp(-wf.s_power * x) * w**wf.exp_1qs
    return wf.norm * env * jacobi_polynomial(wf.n, wf.jacobi_a, wf.jacobi_b, 1.0 + 2.0 * q * s)


def evaluate_radial(wf: RadialWavefunction, params: PotentialParams, r):
    """R(r) in angstrom^-1/2 (once normalized)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radius must be > 0")
    out = _amplitude(wf, params, np.atleast_1d(r))
    return float(out[0]) if r.ndim == 0 else out


def normalize(wf: RadialWavefunction, params: PotentialParams, r_max: float,
              n_points: int = 4001) -> RadialWavefunction:
    """Copy of ``wf`` with ``norm`` such that Simpson's rule gives int_0^r_max R^2 dr = 1."""
    if n_points < 101 or n_points % 2 == 0:
        raise ValidationError("n_points must be odd and >= 101")
    if wf.s_power <= 0:
        raise NonNormalizable(f"s exponent {wf.s_power:.6g} <= 0: R does not vanish as r -> infinity")
    r = np.linspace(0.0, r_max, n_points)
    dens = _amplitude(replace(wf, norm=1.0), params, r) ** 2
    peak = float(np.max(dens))
    if not np.isfinite(peak) or peak == 0:
        raise NonNormalizable("amplitude is not finite on [0, r_max]")
    if dens[-1] >= 1e-12 * peak:
        raise TailNotConverged(f"|R(r_max)|^2 / max |R|^2 = {dens[-1] / peak:.3g}; increase r_max")
    return replace(wf, norm=1.0 / math.sqrt(simpson(dens, x=r)))


def tail_radius(wf: RadialWavefunction, alpha: float, decades: float = 14.0) -> float:
    """A radius beyond which |R|^2 has decayed by roughly ``10**-decades``."""
    if wf.s_power <= 0:
        raise NonNormalizable("wavefunction does not decay")
    return decades * math.log(10.0) / (2.0 * alpha * wf.s_power) + 10.0 / alpha


def count_sign_changes(values, floor: float = 1e-10) -> int:
    """Sign changes, ignoring samples smaller than ``floor * max|values|``."""
    v = np.asarray(values, dtype=float)
    keep = v[np.abs(v) > floor * np.max(np.abs(v))]
    return int(np.count_nonzero(np.signbit(keep[1:]) != np.signbit(keep[:-1])))
