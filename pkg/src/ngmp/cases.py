"""Named parameter sets shared by the CLI and the test-suite."""

from __future__ import annotations

from dataclasses import dataclass

from .molecules import get_molecule, mu_in_natural_units
from .potential import PotentialParams, from_deng_fan, from_hulthen

TABLE2_SHAPE = (-1.0, 1.0, 1.0, -1.0)
FIGURE1_SHAPE = (1.0, -2.0, 1.0, -1.0)
TABLE2_PAIRS = tuple((n, l) for n in range(6) for l in range(max(n, 1) + 1))

H2_BOND_LENGTH = 0.7416  # angstrom


@dataclass(frozen=True)
class Case:
    name: str
    params: PotentialParams
    mu: float  # eV/c^2


def deng_fan_h2() -> Case:
    """Deng-Fan mapping with the H2 constants; has no real closed-form level."""
    h2 = get_molecule("H2")
    return Case("deng-fan-h2", from_deng_fan(h2.De, h2.alpha, H2_BOND_LENGTH), mu_in_natural_units(h2))


def hulthen_core_h2(De: float = 20.0, kappa: float = 0.01) -> Case:
    """Hulthen-plus-weak-core shape with the H2 mass and alpha.

    For l = 1 (delta = 3) the closed form yields decaying levels n = 0..3,
    which makes this the configuration on which formula, wavefunction and
    finite-difference solver are checked against one another.
    """
    h2 = get_molecule("H2")
    return Case("hulthen-core-h2", from_hulthen(De, h2.alpha, kappa), mu_in_natural_units(h2))
