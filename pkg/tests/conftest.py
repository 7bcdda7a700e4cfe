import csv
from pathlib import Path

import pytest

from ngmp.cases import TABLE2_SHAPE
from ngmp.molecules import builtin_molecules, mu_in_natural_units
from ngmp.potential import PotentialParams, derive_coefficients

DATA = Path(__file__).parent / "data"


def load_reference_table():
    """Reference energies: {(n, l): {molecule: E_eV}}."""
    with open(DATA / "table2_reference.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {(int(r.pop("n")), int(r.pop("l"))): {k: float(v) for k, v in r.items()} for r in rows}


def table2_systems():
    """(record, params, coeffs, mu) for every built-in molecule, reference shape."""
    out = []
    for rec in builtin_molecules():
        params = PotentialParams(*TABLE2_SHAPE, rec.De, rec.alpha)
        out.append((rec, params, derive_coefficients(params), mu_in_natural_units(rec)))
    return out


@pytest.fixture(scope="session")
def reference_table():
    return load_reference_table()


# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
