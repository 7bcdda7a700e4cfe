import dataclasses

import pytest

from ngmp.errors import ParseError, ValidationError
from ngmp.molecules import (CONSTANTS, CSV_HEADER, HBAR_C, MoleculeRecord, builtin_molecules, dump_molecules,
                            get_molecule, load_molecules, mu_in_natural_units, wavenumber_to_ev)

from conftest import DATA

NAMES = ["H2", "LiH", "CO", "HCl", "TiH", "ScN", "CuLi", "CrH", "NiC", "TiC"]


def test_collection_order_and_size():
    assert [rec.name for rec in builtin_molecules()] == NAMES


@pytest.mark.parametrize("name,values", [
    ("CO", (11.22696, 2.2994, 6.860672)),
    ("H2", (4.744984, 1.9426, 0.50391)),
    ("H₂", (4.744984, 1.9426, 0.50391)),
])
def test_lookup(name, values):
    rec = get_molecule(name)
    assert (rec.De, rec.alpha, rec.mu_amu) == values


@pytest.mark.parametrize("name", ["h2", "XeF", ""])
def test_unknown_lookup(name):
    with pytest.raises(KeyError):
        get_molecule(name)


def test_constants():
    assert (CONSTANTS.hbar_c, CONSTANTS.amu_to_MeV, CONSTANTS.wavenumber_to_eV) == (1973.29, 931.494028, 1.23985e-4)
    with pytest.raises(dataclasses.FrozenInstanceError):
        CONSTANTS.hbar_c = 1.0
    assert wavenumber_to_ev(1000.0) == pytest.approx(0.123985, rel=1e-14)


@pytest.mark.parametrize("mass,expected", [(0.50391, 4.69389156e8), (1.0, 9.31494028e8), (0.0, 0.0)])
def test_reduced_mass_conversion(mass, expected):
    assert mu_in_natural_units(mass) == pytest.approx(expected, rel=1e-9)


def test_record_conversion_matches_bare_mass():
    rec = get_molecule("CO")
    assert mu_in_natural_units(rec) == mu_in_natural_units(rec.mu_amu)


def test_ground_level_scale_consistency():
    # in the V == 0 configuration the H2 ground level is -hbar^2 alpha^2 / (8 mu)
    h2 = get_molecule("H2")
    scale = HBAR_C**2 * h2.alpha**2 / (8 * mu_in_natural_units(h2))
    assert scale == pytest.approx(0.003913142, rel=1e-6)


@pytest.mark.parametrize("field,value", [("De", 0.0), ("alpha", -1.0), ("mu_amu", float("nan"))])
def test_record_validation(field, value):
    values = dict(name="X", De=1.0, alpha=1.0, mu_amu=1.0)
    values[field] = value
    with pytest.raises(ValidationError):
        MoleculeRecord(**values)


def test_round_trip(tmp_path):
    path = tmp_path / "molecules.csv"
    dump_molecules(builtin_molecules(), path)
    assert load_molecules(path) == builtin_molecules()
    assert path.read_text(encoding="utf-8").splitlines()[0] == ",".join(CSV_HEADER)


def test_header_only_file():
    assert load_molecules(DATA / "header_only.csv") == []


def write(tmp_path, *lines):
    path = tmp_path / "m.csv"
    path.write_text("\n".join([",".join(CSV_HEADER), *lines]) + "\n", encoding="utf-8")
    return path


def test_negative_alpha_names_row(tmp_path):
    path = write(tmp_path, "A,1.0,1.0,1.0", "B,1.0,-1,1.0")
    with pytest.raises(ValidationError, match="line 3"):
        load_molecules(path)


def test_duplicate_names(tmp_path):
    with pytest.raises(ValidationError, match="line 3.*duplicate"):
        load_molecules(write(tmp_path, "A,1.0,1.0,1.0", "A,2.0,1.0,1.0"))


@pytest.mark.parametrize("row", ["A,1.0,1.0", "A,1.0,1.0,1.0,5", "A,1.0,abc,1.0", "A,1;5,1.0,1.0"])
def test_malformed_rows(tmp_path, row):
    with pytest.raises(ParseError) as info:
        load_molecules(write(tmp_path, row))
    assert info.value.line == 2


def test_missing_header(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("H2,4.744984,1.9426,0.50391\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_molecules(path)


def test_blank_lines_are_skipped(tmp_path):
    recs = load_molecules(write(tmp_path, "A,1.0,1.0,1.0", "", "B,2.0,1.0,1.0"))
    assert [r.name for r in recs] == ["A", "B"]


def test_lookup_in_loaded_collection(tmp_path):
    recs = load_molecules(write(tmp_path, "Foo,1.5,0.5,2.0"))
    assert get_molecule("Foo", recs).De == 1.5
    with pytest.raises(KeyError):
        get_molecule("H2", recs)
