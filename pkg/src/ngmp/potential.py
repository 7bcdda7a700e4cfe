"""The generalized Morse-like potential and its coefficient decomposition.

    V(r) = De * [1 - ((A + B s) / (C + D s))^2],   s = exp(-alpha r)

which is equivalently written as

    V(r) = De - (V0 + V1 s + V2 s^2) / (1 + q s)^2

with V0 = De A^2/C^2, V1 = 2 De A B/C^2, V2 = De B^2/C^2 and q = D/C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParameter, SingularRadius, ValidationError

# relative size of C + D s below which evaluation is refused
POLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PotentialParams:
    A: float
    B: float
    C: float
    D: float
    De: float
    alpha: float

    def __post_init__(self):
        if self.C == 0:
            raise DegenerateParameter("C must be nonzero (q = D/C)")
        if not self.De >= 0:
            raise ValidationError(f"De must be >= 0, got {self.De!r}")
        if not self.alpha > 0:
            raise ValidationError(f"alpha must be > 0, got {self.alpha!r}")

    @property
    def q(self) -> float:
        return self.D / self.C

    @property
    def singular_on_domain(self) -> bool:
        """True when the denominator C + D e^(-alpha r) vanishes at some r > 0."""
        return singularity_radius(self) is not None

    def scaled(self, c: float) -> "PotentialParams":
        """Same potential with all four shape constants multiplied by ``c``."""
        return PotentialParams(c * self.A, c * self.B, c * self.C, c * self.D, self.De, self.alpha)


@dataclass(frozen=True)
class CoefficientSet:
    V0: float
    V1: float
    V2: float
    q: float


def derive_coefficients(params: PotentialParams) -> CoefficientSet:
    C = params.C
    if C == 0:
        raise DegenerateParameter("C must be nonzero")
    # through the ratios A/C and B/C, which are what survive a common rescaling
    a = params.A / C
    b = params.B / C
    return CoefficientSet(
        V0=params.De * a * a,
        V1=2.0 * params.De * a * b,
        V2=params.De * b * b,
        q=params.D / C,
    )


def one_plus_qs(q: float, x):
    """1 + q exp(-x), computed without cancellation for the common q = -1."""
    x = np.asarray(x, dtype=float)
    if q == -1.0:
        return -np.expm1(-x)
    return 1.0 + q * np.exp(-x)


def _check_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radius must be > 0")
    return r


def _ratio(params: PotentialParams, r):
    x = params.alpha * r
    s = np.exp(-x)
    den = params.C * one_plus_qs(params.q, x)
    if np.any(np.abs(den) < POLE_TOLERANCE * abs(params.C)):
        raise SingularRadius(f"C + D exp(-alpha r) vanishes near r = {singularity_radius(params)}")
    if params.A != 0 and params.B * params.C == params.A * params.D:
        # numerator proportional to the denominator: share its rounding
        num = params.A * one_plus_qs(params.q, x)
    else:
        num = params.A + params.B * s
    return num / den


def evaluate_potential(params: PotentialParams, r):
    """V(r) in eV. Accepts scalars or arrays of radii in angstrom."""
    r = _check_radius(r)
    ratio = _ratio(params, r)
    out = params.De * (1.0 - ratio * ratio)
    return float(out) if out.ndim == 0 else out


def evaluate_potential_decomposed(params: PotentialParams, r, coeffs: CoefficientSet | None = None):
    """V(r) from De, V0, V1, V2 and q alone; must agree with :func:`evaluate_potential`.

    The sum (V0 + V1 s + V2 s^2) / w^2 with w = 1 + q s is regrouped as
    c2 + c1/w + c0/w^2 so that the large terms near a pole of 1/w cancel in
    the coefficients rather than pointwise.  For |q| < 1/2 the plain quotient
    is used.
    """
    r = _check_radius(r)
    if coeffs is None:
        coeffs = derive_coefficients(params)
    q = coeffs.q
    x = params.alpha * r
    w = one_plus_qs(q, x)
    if np.any(np.abs(w) < POLE_TOLERANCE):
        raise SingularRadius(f"1 + q exp(-alpha r) vanishes near r = {singularity_radius(params)}")
    if abs(q) < 0.5:
        # w stays within (1/2, 3/2): no cancellation, and 1/q^2 would blow up
        s = np.exp(-x)
        out = params.De - (coeffs.V0 + coeffs.V1 * s + coeffs.V2 * s * s) / (w * w)
        return float(out) if out.ndim == 0 else out
    c2 = coeffs.V2 / (q * q)
    c1 = coeffs.V1 / q - 2.0 * coeffs.V2 / (q * q)
    c0 = coeffs.V0 - coeffs.V1 / q + coeffs.V2 / (q * q)
    out = (params.De - c2) - (c1 + c0 / w) / w
    return float(out) if out.ndim == 0 else out


def asymptote(params: PotentialParams) -> float:
    """lim V(r) as r -> infinity."""
    return params.De * (1.0 - (params.A / params.C) ** 2)


def singularity_radius(params: PotentialParams) -> float | None:
    """Radius r* > 0 where C + D e^(-alpha r*) = 0, or None if there is none."""
    if params.C == 0:
        raise DegenerateParameter("C must be nonzero")
    if params.D == 0:
        return None
    s_star = -params.C / params.D
    if 0.0 < s_star < 1.0:
        return -math.log(s_star) / params.alpha
    return None


def from_deng_fan(De: float, alpha: float, r_e: float) -> PotentialParams:
    """Shape constants for which De - V(r) is the Deng-Fan potential.

    De - V(r) = De * (1 - b / (exp(alpha r) - 1))^2 with b = exp(alpha r_e) - 1,
    so V itself is an inverted Deng-Fan curve with its maximum De at r_e.
    """
    if not (De > 0 and alpha > 0 and r_e > 0):
        raise ValidationError("De, alpha and r_e must all be positive")
    b = math.expm1(alpha * r_e)
    return PotentialParams(A=1.0, B=-(1.0 + b), C=1.0, D=-1.0, De=De, alpha=alpha)


def deng_fan(De: float, alpha: float, r_e: float, r):
    """The Deng-Fan potential itself, for comparison curves."""
    r = _check_radius(r)
    b = math.expm1(alpha * r_e)
    out = De * (1.0 - b / np.expm1(alpha * r)) ** 2
    return float(out) if out.ndim == 0 else out


def from_hulthen(De: float, alpha: float, kappa: float) -> PotentialParams:
    """Shape constants A=1, B=-(1-kappa), C=1, D=-1.

    The potential becomes a Hulthen well plus a weak inverse-square core,

        V(r) = -2 De kappa s/(1-s) - De kappa^2 s^2/(1-s)^2,

    which, unlike the Deng-Fan mapping, admits genuine bound states of the
    closed-form spectrum when De kappa^2 is small compared to hbar^2 alpha^2/2mu.
    """
    if not (De > 0 and alpha > 0 and 0 < kappa < 1):
        raise ValidationError("need De > 0, alpha > 0 and 0 < kappa < 1")
    return PotentialParams(A=1.0, B=-(1.0 - kappa), C=1.0, D=-1.0, De=De, alpha=alpha)
