"""Spectroscopic parameters of the reference diatomics and unit conversions.

Energies are in eV, lengths in angstrom and masses in eV/c^2 (the reduced
mass is stored in amu and converted on demand).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_c: float = 1973.29  # eV * angstrom
    amu_to_MeV: float = 931.494028  # MeV/c^2 per amu
    wavenumber_to_eV: float = 1.23985e-4  # eV per cm^-1


CONSTANTS = PhysicalConstants()
HBAR_C = CONSTANTS.hbar_c

CSV_HEADER = ("name", "De_eV", "alpha_per_angstrom", "mu_amu")


@dataclass(frozen=True)
class MoleculeRecord:
    name: str
    De: float
    alpha: float
    mu_amu: float

    def __post_init__(self):
        for field in ("De", "alpha", "mu_amu"):
            value = getattr(self, field)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"{self.name}: {field} must be positive, got {value!r}")


_TABLE1 = (
    ("H2", 4.744984, 1.9426, 0.50391),
    ("LiH", 2.515283695, 1.128, 0.880122),
    ("CO", 11.22696, 2.2994, 6.860672),
    ("HCl", 4.61962, 1.8677, 0.980105),
    ("TiH", 2.05, 1.32408, 0.987371),
    ("ScN", 4.56, 1.5068, 10.68277),
    ("CuLi", 1.74, 1.00818, 6.259494),
    ("CrH", 2.13, 1.52179, 0.988976),
    ("NiC", 2.76, 2.25297, 9.974265),
    ("TiC", 2.66, 1.5255, 9.606079),
)

ALIASES = {"H₂": "H2"}


def builtin_molecules() -> list[MoleculeRecord]:
    """The ten reference molecules, in tabulation order."""
    return [MoleculeRecord(*row) for row in _TABLE1]


def get_molecule(name: str, molecules: Iterable[MoleculeRecord] | None = None) -> MoleculeRecord:
    """Look up a record by (case-sensitive) name; raises KeyError when absent."""
    if molecules is None:
        molecules = builtin_molecules()
    name = ALIASES.get(name, name)
    for record in molecules:
        if record.name == name:
            return record
    raise KeyError(name)


def mu_in_natural_units(record: MoleculeRecord | float) -> float:
    """Reduced mass in eV/c^2. Accepts a record or a bare mass in amu."""
    mu_amu = record.mu_amu if isinstance(record, MoleculeRecord) else record
    return mu_amu * CONSTANTS.amu_to_MeV * 1e6


def wavenumber_to_ev(wavenumber: float) -> float:
    return wavenumber * CONSTANTS.wavenumber_to_eV


def load_molecules(path) -> list[MoleculeRecord]:
    """Read a molecule CSV (``name,De_eV,alpha_per_angstrom,mu_amu``).

    Raises
    ------
    ParseError
        Missing/wrong header, wrong column count or a non-numeric field.
    ValidationError
        Non-positive parameters or duplicate names; the message names the line.
    """
    records: list[MoleculeRecord] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
            raise ParseError(f"expected header {','.join(CSV_HEADER)!r}, got {header!r}", 1)
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 fields, got {len(row)}", line)
            name = row[0].strip()
            try:
                De, alpha, mu = (float(cell) for cell in row[1:])
            except ValueError as exc:
                raise ParseError(str(exc), line) from None
            if name in seen:
                raise ValidationError(f"line {line}: duplicate molecule name {name!r}")
            try:
                records.append(MoleculeRecord(name, De, alpha, mu))
            except ValidationError as exc:
                raise ValidationError(f"line {line}: {exc}") from None
            seen.add(name)
    return records


def dump_molecules(records: Iterable[MoleculeRecord], path) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow([rec.name, repr(rec.De), repr(rec.alpha), repr(rec.mu_amu)])
