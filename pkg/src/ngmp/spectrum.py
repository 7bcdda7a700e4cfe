"""Closed-form ro-vibrational levels of the generalized Morse-like potential.

With the kinetic scale K = hbar^2 alpha^2 / (2 mu) and beta_i = V_i / K,

    zeta   = -beta0 + beta1/q - beta2/q^2
    Lambda = n + 1/2 + sqrt(1/4 + zeta - gamma/q)
    eps    = -gamma d0 + beta0 + (1/4) [(Lambda^2 - beta0 + beta2/q^2) / Lambda]^2
    E      = De - K eps
           = De - V0 + K d0 gamma - (K/4) [(Lambda^2 - beta0 + beta2/q^2) / Lambda]^2

where gamma = (delta + 2l - 1)(delta + 2l - 3)/4. All dependence on delta and
l goes through delta + 2l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .approximation import IMPROVED_D0
from .errors import DegenerateParameter, DivisionByZero, NoRealBoundState, ValidationError
from .molecules import HBAR_C
from .potential import CoefficientSet


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int
    delta: int = 3

    def __post_init__(self):
        for name, low in (("n", 0), ("l", 0), ("delta", 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < low:
                raise ValidationError(f"{name} must be an integer >= {low}, got {value!r}")

    @property
    def k(self) -> int:
        """delta + 2l, the only combination the radial problem sees."""
        return self.delta + 2 * self.l


@dataclass(frozen=True)
class DimensionlessParams:
    beta0: float
    beta1: float
    beta2: float
    gamma: float
    epsilon: float | None = None


@dataclass(frozen=True)
class EnergyLevel:
    E: float
    n: int
    l: int
    delta: int
    discriminant: float
    lambda_term: float
    # -(Lambda^2 - beta0 + beta2/q^2) / (2 Lambda); the level is a decaying
    # solution of the approximated radial equation only when this is > 0
    decay_root: float = math.nan

    @property
    def normalizable(self) -> bool:
        return self.decay_root > 0


def gamma(qn: QuantumNumbers) -> float:
    k = qn.k
    return (k - 1) * (k - 3) / 4.0


def kinetic_scale(mu: float, alpha: float, hbar_c: float = HBAR_C) -> float:
    """hbar^2 alpha^2 / (2 mu) in eV, with mu in eV/c^2."""
    return hbar_c * hbar_c * alpha * alpha / (2.0 * mu)


def dimensionless(coeffs: CoefficientSet, mu: float, alpha: float, qn: QuantumNumbers,
                  hbar_c: float = HBAR_C) -> DimensionlessParams:
    scale = kinetic_scale(mu, alpha, hbar_c)
    return DimensionlessParams(
        beta0=coeffs.V0 / scale,
        beta1=coeffs.V1 / scale,
        beta2=coeffs.V2 / scale,
        gamma=gamma(qn),
    )


def zeta(coeffs: CoefficientSet, mu: float, alpha: float, hbar_c: float = HBAR_C) -> float:
    q = coeffs.q
    if q == 0:
        raise DegenerateParameter("q = D/C must be nonzero")
    scale = kinetic_scale(mu, alpha, hbar_c)
    b0, b1, b2 = coeffs.V0 / scale, coeffs.V1 / scale, coeffs.V2 / scale
    return -b0 + b1 / q - b2 / (q * q)


def _bracket(coeffs: CoefficientSet, mu: float, alpha: float, qn: QuantumNumbers, hbar_c: float):
    """Shared core: (discriminant, Lambda, bracket, gamma, beta0, K)."""
    q = coeffs.q
    if q == 0:
        raise DegenerateParameter("q = D/C must be nonzero")
    scale = kinetic_scale(mu, alpha, hbar_c)
    b0 = coeffs.V0 / scale
    b2 = coeffs.V2 / scale
    g = gamma(qn)
    disc = 0.25 + zeta(coeffs, mu, alpha, hbar_c) - g / q
    if disc < 0:
        raise NoRealBoundState(
            f"no real level for n={qn.n}, l={qn.l}, delta={qn.delta}: "
            f"1/4 + zeta - gamma/q = {disc:.6g} < 0",
            discriminant=disc,
        )
    lam = qn.n + 0.5 + math.sqrt(disc)
    if lam == 0:
        raise DivisionByZero("Lambda = 0")
    bracket = (lam * lam - b0 + b2 / (q * q)) / lam
    return disc, lam, bracket, g, b0, scale


def energy(coeffs: CoefficientSet, mu: float, alpha: float, De: float, qn: QuantumNumbers,
           d0: float = IMPROVED_D0, hbar_c: float = HBAR_C) -> EnergyLevel:
    """Energy of level (n, l) in eV.

    Parameters
    ----------
    coeffs : CoefficientSet
        Strengths V0, V1, V2 (eV) and ratio q.
    mu : float
        Reduced mass in eV/c^2.
    alpha : float
        Screening parameter in 1/angstrom.
    De : float
        Dissociation energy in eV.
    qn : QuantumNumbers
    d0 : float
        Offset of the centrifugal approximation.
    hbar_c : float
        Override for reduced-unit calculations (hbar = 1).

    Raises
    ------
    NoRealBoundState
        If 1/4 + zeta - gamma/q < 0.
    DegenerateParameter
        If q = 0.
    """
    disc, lam, bracket, g, _, scale = _bracket(coeffs, mu, alpha, qn, hbar_c)
    E = De - coeffs.V0 + scale * d0 * g - 0.25 * scale * bracket * bracket
    return EnergyLevel(E=E, n=qn.n, l=qn.l, delta=qn.delta, discriminant=disc,
                       lambda_term=lam, decay_root=-0.5 * bracket)


def epsilon(coeffs: CoefficientSet, mu: float, alpha: float, qn: QuantumNumbers,
            d0: float = IMPROVED_D0, hbar_c: float = HBAR_C) -> float:
    """Dimensionless eigenvalue; E = De - hbar^2 alpha^2 eps / (2 mu)."""
    _, _, bracket, g, b0, _ = _bracket(coeffs, mu, alpha, qn, hbar_c)
    return -g * d0 + b0 + 0.25 * bracket * bracket


def energy_from_epsilon(eps: float, mu: float, alpha: float, De: float, hbar_c: float = HBAR_C) -> float:
    return De - kinetic_scale(mu, alpha, hbar_c) * eps


class LevelRow(NamedTuple):
    n: int
    l: int
    level: EnergyLevel | None
    status: str  # "ok" or the error class name


def enumerate_levels(coeffs: CoefficientSet, mu: float, alpha: float, De: float,
                     n_max: int, l_max: int, delta: int = 3, d0: float = IMPROVED_D0,
                     hbar_c: float = HBAR_C) -> list[LevelRow]:
    """All (n, l) with n <= n_max, l <= l_max, ordered by (n, l).

    Rows whose level does not exist carry ``level=None`` and the error name.
    """
    if n_max < 0 or l_max < 0:
        raise ValidationError("n_max and l_max must be >= 0")
    rows = []
    for n in range(n_max + 1):
        for l in range(l_max + 1):
            try:
                lvl = energy(coeffs, mu, alpha, De, QuantumNumbers(n, l, delta), d0, hbar_c)
            except NoRealBoundState:
                rows.append(LevelRow(n, l, None, "NoRealBoundState"))
            else:
                rows.append(LevelRow(n, l, lvl, "ok"))
    return rows
