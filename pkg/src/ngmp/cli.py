"""Command-line entry point: ``ngmp {levels,table2,curve,wavefunction,verify}``.

Exit codes: 0 success, 1 other error, 2 unknown molecule or bad arguments,
3 missing bound state under ``--strict``, 4 grid crosses a pole,
5 non-normalizable wavefunction.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.integrate import simpson

from . import cases
from .approximation import GREENE_ALDRICH_D0, IMPROVED_D0, ApproximationScheme, approx_error_profile
from .errors import NGMPError, NoRealBoundState, NonNormalizable, SingularRadius
from .molecules import HBAR_C, MoleculeRecord, builtin_molecules, get_molecule, load_molecules, mu_in_natural_units
from .oracle import DEFAULT_POINTS, DEFAULT_R_MIN, RadialGrid, ValidationReport, compare_levels
from .potential import PotentialParams, derive_coefficients, evaluate_potential, singularity_radius
from .spectrum import QuantumNumbers, energy, enumerate_levels
from .wavefunction import (QS_OFFSETS, build_wavefunction, count_sign_changes, evaluate_radial, normalize,
                           tail_radius)

EXIT_UNKNOWN_MOLECULE = 2
EXIT_NO_BOUND_STATE = 3
EXIT_POLE = 4
EXIT_NON_NORMALIZABLE = 5


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class System:
    """A molecule resolved to the numbers the solvers need."""

    name: str
    De: float
    alpha: float
    mu: float  # eV/c^2, or the bare mass in reduced units
    hbar_c: float

    def params(self, shape) -> PotentialParams:
        A, B, C, D = shape
        return PotentialParams(A, B, C, D, self.De, self.alpha)


def _floats(text: str, count: int, what: str):
    try:
        values = tuple(float(Fraction(v.strip())) for v in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{what}: expected {count} comma-separated numbers") from None
    if len(values) != count:
        raise argparse.ArgumentTypeError(f"{what}: expected {count} comma-separated numbers")
    return values


def _shape(text: str):
    return _floats(text, 4, "--shape")


def _custom(text: str):
    return _floats(text, 3, "--custom")


def _fraction(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _resolve(args, default_all: bool = False) -> list[System]:
    hbar_c = 1.0 if args.units == "reduced" else HBAR_C
    if args.custom is not None:
        De, alpha, mu = args.custom
        mass = mu if args.units == "reduced" else mu_in_natural_units(mu)
        return [System("custom", De, alpha, mass, hbar_c)]
    pool = load_molecules(args.molecules_file) if args.molecules_file else builtin_molecules()
    names = args.molecule or ([rec.name for rec in pool] if default_all else ["H2"])
    out = []
    for name in names:
        try:
            rec: MoleculeRecord = get_molecule(name, pool)
        except KeyError:
            raise CliError(f"unknown molecule {name!r}", EXIT_UNKNOWN_MOLECULE) from None
        mass = rec.mu_amu if args.units == "reduced" else mu_in_natural_units(rec)
        out.append(System(rec.name, rec.De, rec.alpha, mass, hbar_c))
    return out


def _energy_label(args) -> str:
    return "E_eV" if args.units == "molecular" else "E_reduced"


@contextlib.contextmanager
def _output(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _fmt(x: float) -> str:
    return "nan" if not math.isfinite(x) else f"{x:.12g}"


# -- commands ---------------------------------------------------------------

def cmd_levels(args) -> int:
    systems = _resolve(args)
    missing = False
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["molecule", "n", "l", "delta", _energy_label(args), "status"])
        for sysm in systems:
            params = sysm.params(args.shape)
            coeffs = derive_coefficients(params)
            for row in enumerate_levels(coeffs, sysm.mu, sysm.alpha, sysm.De, args.n_max, args.l_max,
                                        args.delta, args.d0, sysm.hbar_c):
                E = row.level.E if row.level is not None else math.nan
                missing |= row.level is None
                w.writerow([sysm.name, row.n, row.l, args.delta, f"{E:.9f}", row.status])
    if missing and args.strict:
        raise CliError("some levels have no real bound state", EXIT_NO_BOUND_STATE)
    return 0


def cmd_table2(args) -> int:
    systems = _resolve(args, default_all=True)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "l"] + [f"{s.name}_eV" for s in systems])
        prepared = [(s, derive_coefficients(s.params(args.shape))) for s in systems]
        for n, l in cases.TABLE2_PAIRS:
            cells = []
            for sysm, coeffs in prepared:
                try:
                    E = energy(coeffs, sysm.mu, sysm.alpha, sysm.De, QuantumNumbers(n, l, args.delta),
                               args.d0, sysm.hbar_c).E
                    cells.append(f"{E:.9f}")
                except NoRealBoundState:
                    cells.append("NoRealBoundState")
            w.writerow([n, l] + cells)
    return 0


def cmd_curve(args) -> int:
    systems = _resolve(args, default_all=True)
    r_max = args.r_max if args.r_max is not None else 30.0 / min(s.alpha for s in systems)
    r = np.linspace(args.r_min, r_max, args.points)
    columns, header = [r], ["r_angstrom"]
    for sysm in systems:
        params = sysm.params(args.shape)
        r_star = singularity_radius(params)
        if r_star is not None and args.r_min <= r_star <= r_max:
            raise CliError(f"{sysm.name}: grid crosses the pole at r = {r_star:.6g} angstrom", EXIT_POLE)
        V = np.atleast_1d(evaluate_potential(params, r))
        columns.append(V)
        header.append(f"V_{sysm.name}_eV")
        if args.companion:
            columns.append(sysm.De - V)
            header.append(f"DengFan_{sysm.name}_eV")
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([_fmt(v) for v in row])
    return 0


def cmd_wavefunction(args) -> int:
    (sysm,) = _resolve(args)[:1]
    params = sysm.params(args.shape)
    coeffs = derive_coefficients(params)
    qn = QuantumNumbers(args.n, args.l, args.delta)
    try:
        level = energy(coeffs, sysm.mu, sysm.alpha, sysm.De, qn, args.d0, sysm.hbar_c)
    except NoRealBoundState as exc:
        raise CliError(str(exc), EXIT_NO_BOUND_STATE) from None
    wf = build_wavefunction(coeffs, sysm.mu, sysm.alpha, level, args.d0, literal_sign=args.literal_sign,
                            qs_offset=args.qs_offset, hbar_c=sysm.hbar_c)
    try:
        r_max = args.r_max if args.r_max is not None else tail_radius(wf, sysm.alpha)
        wf = normalize(wf, params, r_max, args.points)
    except NonNormalizable as exc:
        raise CliError(str(exc), EXIT_NON_NORMALIZABLE) from None
    # independent re-integration on a twice finer grid
    fine = np.linspace(0.0, r_max, 2 * args.points - 1)
    R_fine = evaluate_radial(wf, params, fine[1:])
    residual = abs(simpson(np.concatenate(([0.0], R_fine)) ** 2, x=fine) - 1.0)
    r = np.linspace(args.r_min, r_max, args.samples)
    R = evaluate_radial(wf, params, r)
    with _output(args.out) as fh:
        fh.write(f"# molecule={sysm.name} n={args.n} l={args.l} delta={args.delta} E={level.E:.12g} "
                 f"norm={wf.norm:.12g} normalization_residual={residual:.3e} "
                 f"sign_changes={count_sign_changes(R)}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["r_angstrom", "R_per_sqrt_angstrom"])
        for ri, Ri in zip(r, R):
            w.writerow([_fmt(ri), _fmt(Ri)])
    return 0


REPORT_HEADER = [
    "n", "l", "delta", "status", "normalizable",
    "E_analytic_eV", "E_numeric_approx_eV", "E_numeric_exact_eV",
    "delta_implementation_eV", "delta_approximation_eV", "agrees_1e-3",
    "approx_E_h_eV", "approx_E_h2_eV", "approx_E_h4_eV", "approx_ratio",
    "exact_E_h_eV", "exact_E_h2_eV", "exact_E_h4_eV", "exact_ratio",
]

PROFILE_HEADER = [
    "r_angstrom", "inv_r2_per_A2", "approx_d0_per_A2", "error_d0_per_A2",
    "approx_greene_aldrich_per_A2", "error_greene_aldrich_per_A2", "difference_per_A2", "in_regime",
]


def write_report(report: ValidationReport, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for row in report.rows:
        ca, ce = row.approx_convergence, row.exact_convergence
        w.writerow([
            row.n, row.l, row.delta, row.status, int(row.normalizable),
            _fmt(row.E_analytic), _fmt(row.E_numeric_approx), _fmt(row.E_numeric_exact),
            _fmt(row.delta_implementation), _fmt(row.delta_approximation), int(row.agrees),
            *(_fmt(v) for v in ca.values), _fmt(ca.ratio),
            *(_fmt(v) for v in ce.values), _fmt(ce.ratio),
        ])


def profile_rows(params: PotentialParams, grid: RadialGrid, d0: float, points: int = 200):
    r = np.geomspace(grid.r_min, grid.r_max, points)
    improved = approx_error_profile(ApproximationScheme(params.q, params.alpha, d0), r)
    ga = approx_error_profile(ApproximationScheme(params.q, params.alpha, GREENE_ALDRICH_D0), r)
    return [(a.r, a.exact, a.approx, a.error, g.approx, g.error, a.approx - g.approx, a.in_regime)
            for a, g in zip(improved, ga)]


def write_profile(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(PROFILE_HEADER)
    for row in rows:
        w.writerow([_fmt(v) for v in row[:-1]] + [int(row[-1])])


def summarize(name: str, report: ValidationReport, profile) -> str:
    p = report.params
    out = io.StringIO()
    out.write(f"validation: {name}\n")
    out.write(f"  shape A={p.A:.10g} B={p.B:.10g} C={p.C:.10g} D={p.D:.10g}  De={p.De:.10g} eV  "
              f"alpha={p.alpha:.10g}/A  mu={report.mu:.10g} eV/c^2  d0={report.d0:.10g}\n")
    g = report.grid
    out.write(f"  grid r in [{g.r_min:g}, {g.r_max:.6g}] A, {g.n_points} points, refined x2 and x4\n")
    for row in report.rows:
        ca, ce = row.approx_convergence, row.exact_convergence
        verdict = "agrees" if row.agrees else "DISCREPANCY"
        out.write(f"  n={row.n} l={row.l} delta={row.delta}: analytic={_fmt(row.E_analytic)} [{row.status}] "
                  f"approx-numeric={_fmt(row.E_numeric_approx)} exact-numeric={_fmt(row.E_numeric_exact)} "
                  f"-> {verdict}\n")
        out.write(f"      delta_implementation={_fmt(row.delta_implementation)} "
                  f"delta_approximation={_fmt(row.delta_approximation)}\n")
        out.write(f"      convergence ratios approx={_fmt(ca.ratio)} exact={_fmt(ce.ratio)} "
                  f"(second order: approx={ca.second_order()} exact={ce.second_order()})\n")
    bad = report.discrepancies
    out.write(f"  discrepancies: {len(bad)} of {len(report.rows)} levels\n")
    for row in bad:
        if row.status == "NoRealBoundState":
            why = "closed form has no real level (negative discriminant)"
        elif row.status == "non-decaying":
            why = "closed-form level is not a decaying solution"
        else:
            why = f"|delta_implementation| = {abs(row.delta_implementation):.3g} > 1e-3 |E|"
        out.write(f"    n={row.n} l={row.l}: {why}\n")
    in_regime = [r for r in profile if r[-1]]
    if in_regime:
        out.write(f"  centrifugal approximation, alpha r <= 1: max |error| d0={report.d0:.6g}: "
                  f"{max(abs(r[3]) for r in in_regime):.6g} /A^2, "
                  f"greene-aldrich: {max(abs(r[5]) for r in in_regime):.6g} /A^2\n")
    return out.getvalue()


def cmd_verify(args) -> int:
    if args.case is not None:
        case = {"deng-fan-h2": cases.deng_fan_h2, "hulthen-core-h2": cases.hulthen_core_h2}[args.case]()
        name, params, mu, hbar_c = case.name, case.params, case.mu, HBAR_C
    else:
        (sysm,) = _resolve(args)[:1]
        name, params, mu, hbar_c = sysm.name, sysm.params(args.shape), sysm.mu, sysm.hbar_c
    grid = RadialGrid(args.r_min, args.r_max if args.r_max is not None else 30.0 / params.alpha,
                      args.points if args.points is not None else DEFAULT_POINTS)
    report = compare_levels(params, mu, args.n_max, range(args.l_max + 1), args.delta, args.d0, grid, hbar_c)
    profile = profile_rows(params, grid, args.d0)
    with _output(args.out) as fh:
        write_report(report, fh)
    profile_path = args.profile_out
    if profile_path is None and args.out not in (None, "-"):
        out = Path(args.out)
        profile_path = out.with_name(out.stem + "_profile" + out.suffix)
    if profile_path is not None:
        with _output(profile_path) as fh:
            write_profile(profile, fh)
    sys.stdout.write(summarize(name, report, profile))
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--molecule", action="append", help="molecule name (repeatable)")
    common.add_argument("--molecules-file", help="CSV with name,De_eV,alpha_per_angstrom,mu_amu")
    common.add_argument("--custom", type=_custom, metavar="DE,ALPHA,MU",
                        help="ad-hoc system; MU in amu (molecular units) or bare mass (reduced units)")
    common.add_argument("--units", choices=("molecular", "reduced"), default="molecular",
                        help="reduced: hbar = 1 and masses taken as given")
    common.add_argument("--shape", type=_shape, default=cases.TABLE2_SHAPE, metavar="A,B,C,D")
    common.add_argument("--delta", type=int, default=3)
    common.add_argument("--d0", type=_fraction, default=IMPROVED_D0)
    common.add_argument("--out", help="output path (default: standard output)")

    parser = argparse.ArgumentParser(prog="ngmp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("levels", parents=[common], help="closed-form energy levels as CSV")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--l-max", type=int, default=5)
    p.add_argument("--strict", action="store_true", help="exit 3 if any level has no real bound state")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("table2", parents=[common], help="the 22-row reference energy table")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("curve", parents=[common], help="potential curves V(r) as CSV")
    p.add_argument("--r-min", type=float, default=DEFAULT_R_MIN)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--companion", action="store_true", help="add De - V(r) (Deng-Fan form) columns")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("wavefunction", parents=[common], help="normalized radial wavefunction as CSV")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--r-min", type=float, default=DEFAULT_R_MIN)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int, default=20001, help="Simpson points for normalization (odd)")
    p.add_argument("--samples", type=int, default=1001, help="rows written to the CSV")
    p.add_argument("--literal-sign", action="store_true", help="use the non-decaying s^(-a) exponent")
    p.add_argument("--qs-offset", choices=QS_OFFSETS, default="half")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("verify", parents=[common], help="closed form vs finite-difference solver")
    p.add_argument("--case", choices=("deng-fan-h2", "hulthen-core-h2"),
                   help="named configuration (overrides --molecule/--shape)")
    p.add_argument("--n-max", type=int, default=0)
    p.add_argument("--l-max", type=int, default=0)
    p.add_argument("--r-min", type=float, default=DEFAULT_R_MIN)
    p.add_argument("--r-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--profile-out", help="CSV for the centrifugal approximation error profile")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ngmp: {exc}", file=sys.stderr)
        return exc.code
    except SingularRadius as exc:
        print(f"ngmp: {exc}", file=sys.stderr)
        return EXIT_POLE
    except NGMPError as exc:
        print(f"ngmp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
