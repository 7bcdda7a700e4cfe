"""Exponential approximation of the centrifugal 1/r^2 term.

    1/r^2 ~ alpha^2 * [d0 + s / (1 + q s)^2],   s = exp(-alpha r)

d0 = 1/12 is the improved offset; d0 = 0 recovers the Greene-Aldrich form.
For q = -1 the Laurent series s/(1-s)^2 = 1/x^2 - 1/12 + x^2/240 + ... shows
why d0 = 1/12 cancels the constant error at small alpha*r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import SingularRadius, ValidationError
from .potential import CoefficientSet, one_plus_qs

IMPROVED_D0 = 1.0 / 12.0
GREENE_ALDRICH_D0 = 0.0


@dataclass(frozen=True)
class ApproximationScheme:
    q: float
    alpha: float
    d0: float = IMPROVED_D0

    def __post_init__(self):
        if not 0.0 <= self.d0 <= 1.0:
            raise ValidationError(f"d0 must lie in [0, 1], got {self.d0!r}")
        if not self.alpha > 0:
            raise ValidationError("alpha must be > 0")

    @classmethod
    def for_coefficients(cls, coeffs: CoefficientSet, alpha: float, d0: float = IMPROVED_D0):
        return cls(q=coeffs.q, alpha=alpha, d0=d0)


def _shape_term(scheme: ApproximationScheme, r):
    x = scheme.alpha * np.asarray(r, dtype=float)
    den = one_plus_qs(scheme.q, x)
    if np.any(den == 0) or np.any(np.abs(den) < 1e-300):
        raise SingularRadius("1 + q exp(-alpha r) vanishes on the requested radii")
    return np.exp(-x) / (den * den)


def centrifugal_approx(scheme: ApproximationScheme, r):
    """Approximation to 1/r^2 in angstrom^-2."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radius must be > 0")
    a2 = scheme.alpha**2
    out = a2 * scheme.d0 + a2 * _shape_term(scheme, r)
    return float(out) if out.ndim == 0 else out


class ProfileRow(NamedTuple):
    r: float
    exact: float
    approx: float
    error: float
    in_regime: bool  # alpha * r <= 1


def approx_error_profile(scheme: ApproximationScheme, r_grid) -> list[ProfileRow]:
    """Rows (r, 1/r^2, approximation, approximation - 1/r^2) sorted by r."""
    r = np.sort(np.asarray(r_grid, dtype=float).ravel())
    if r.size == 0:
        return []
    approx = np.atleast_1d(centrifugal_approx(scheme, r))
    exact = 1.0 / (r * r)
    return [
        ProfileRow(float(ri), float(ei), float(ai), float(ai - ei), bool(scheme.alpha * ri <= 1.0))
        for ri, ei, ai in zip(r, exact, approx)
    ]
