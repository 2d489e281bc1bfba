"""Command-line front end.

    pdmcs catalog [FILTER]
    pdmcs spectrum   --profile V1 --g0 2 --n 0..3
    pdmcs wavefunction --profile V5 --n 0,1,2 --grid 0,4,401
    pdmcs potential  --profile "kind=MdntN n=2 x0=0 lambda=1"
    pdmcs coherent   --profile V5 --kind BarutGirardello --z 2,1
    pdmcs figure 1|2|3 --out DIR
    pdmcs verify [CHECK ...] --tolerance eigen_x=1e-5

Tables go to stdout unless ``--out`` names a file (a directory for
``figure``).  Exit status: 0 success, 1 verification failure, 2 usage or
domain error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import coherent, verify, yspace
from .errors import AccuracyError, DomainError, UsageError
from .massmap import MassKind, MassProfile, parse_profile_record
from .numerics import write_csv
from .xspace import POTENTIAL_IDS, PdmSystem, make_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# id, family, mass m(x), bijection s(x), singular-oscillator domain
CATALOG = (
    ("V1", "MDNT (n=0)", "(x0 + lam x)^-2", "ln(x0 + lam x)/lam", "x >= (1 - x0)/lam"),
    ("V2", "MDNT (n)", "(x0 + lam x)^(-4n/(2n+1))",
     "(2n+1)(x0 + lam x)^(1/(2n+1))/lam", "x >= -x0/lam"),
    ("V3", "regular, a=-1/4", "1/(1 + lam^2 x^2)", "asinh(lam x)/lam", "x >= 0"),
    ("V4", "exponential, a=-1/4", "exp(2 lam x)", "(exp(lam x) - x0)/lam", "x >= ln(x0)/lam"),
    ("V5", "exponential, x0=1", "exp(2 lam x)", "(exp(lam x) - 1)/lam", "x >= 0"),
    ("V6", "exponential, x0=0", "exp(2 lam x)", "exp(lam x)/lam", "x in R"),
    ("V7", "exponential, x0=0, g0=2, lam=1", "exp(2x)", "exp(x)", "x in R"),
    ("LinearPdm", "linear oscillator s^2", "ConstantMass | Regular | Mdnt0", "as profile",
     "x in natural domain"),
)

_RECORD_PID = {
    MassKind.MDNT0: "V1",
    MassKind.MDNTN: "V2",
    MassKind.REGULAR: "V3",
    MassKind.CONSTANT: "Sing",
}


# -- argument parsing ---------------------------------------------------------------

def parse_n(text: str) -> list:
    """'3' -> [3], '0..3' -> [0, 1, 2, 3], '0,2,5' -> [0, 2, 5]."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot read quantum numbers from {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError(f"quantum numbers must be non-negative: {text!r}")
    return out


def parse_z(text: str) -> complex:
    try:
        parts = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--z expects re,im, got {text!r}") from None
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise UsageError(f"--z expects re,im, got {text!r}")
    return complex(parts[0], parts[1])


def parse_grid(text: str):
    try:
        lo, hi, pts = text.split(",")
        lo, hi, pts = float(lo), float(hi), int(pts)
    except ValueError:
        raise UsageError(f"--grid expects min,max,points, got {text!r}") from None
    if not hi > lo or pts < 2:
        raise UsageError("--grid needs min < max and at least 2 points")
    return lo, hi, pts


def build_system(args) -> PdmSystem:
    choice = args.profile
    g0 = args.g0
    lam = args.lam
    if "=" in choice:
        prof = parse_profile_record(choice)
        if args.x0 is not None or args.lam_given:
            prof = MassProfile(prof.kind, prof.n, args.x0 if args.x0 is not None else prof.x0,
                               lam if args.lam_given else prof.lam)
        if args.linear:
            return PdmSystem(prof, None, "LinearPdm")
        if prof.kind is MassKind.EXPONENTIAL:
            pid = {1.0: "V5", 0.0: "V6"}.get(prof.x0, "V4")
        else:
            pid = _RECORD_PID[prof.kind]
        return PdmSystem(prof, yspace.params_from_g0(g0), pid)
    if choice not in POTENTIAL_IDS:
        raise UsageError(f"unknown profile {choice!r}; use one of {', '.join(POTENTIAL_IDS)} "
                         "or a key=value record")
    if choice == "LinearPdm" or args.linear:
        prof = MassProfile.regular(lam) if choice == "LinearPdm" else make_system(
            choice, g0, lam, args.x0).profile
        return PdmSystem(prof, None, "LinearPdm")
    return make_system(choice, g0=g0, lam=lam, x0=args.x0)


def default_x(system: PdmSystem, nmax: int, points: int = 401) -> np.ndarray:
    """From the lower edge of the domain to where psi_0..psi_nmax have died out."""
    prof = system.profile
    cut = yspace.support_cutoff(nmax, system.g0, 1e-10)
    hi = float(prof.inverse_s(cut))
    if system.is_singular:
        lo = prof.x_min
        if not math.isfinite(lo):
            lo = float(prof.inverse_s(1e-4))
    else:
        lo = float(prof.inverse_s(-cut))
    return np.linspace(lo, hi, points)


def grid_or_default(args, system, nmax, points=401):
    if args.grid:
        lo, hi, pts = parse_grid(args.grid)
        return np.linspace(lo, hi, pts)
    return default_x(system, nmax, points)


def _psi_columns(system, ns, x):
    """psi_n on x, including a zero row at a regular x_min."""
    return {f"psi{n}": system.psi_n(n, x) for n in ns}


def _emit(columns, out):
    text = write_csv(columns, out)
    if out is None:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------------

def cmd_catalog(args) -> int:
    flt = (args.filter or "").lower()
    rows = [r for r in CATALOG if flt in f"{r[0]} {r[1]}".lower()]
    out = ["id,family,mass,bijection,domain"]
    out += [",".join(f'"{c}"' if "," in c else c for c in r) for r in rows]
    text = "\n".join(out) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    system = build_system(args)
    ns = parse_n(args.n or "0..3")
    _emit({"n": ns, "E": [system.energy(n) for n in ns]}, args.out)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    system = build_system(args)
    ns = parse_n(args.n or "0..2")
    x = grid_or_default(args, system, max(ns))
    _emit({"x": x, **_psi_columns(system, ns, x)}, args.out)
    return EXIT_OK


def cmd_potential(args) -> int:
    system = build_system(args)
    x = grid_or_default(args, system, 3)
    if system.is_singular and x[0] == system.profile.x_min:
        x = x[1:]
    _emit({"x": x, "V": system.potential(x)}, args.out)
    return EXIT_OK


def cmd_coherent(args) -> int:
    system = build_system(args)
    kind = args.kind or ("BarutGirardello" if system.is_singular else "Glauber")
    z = parse_z(args.z or "1,0")
    try:
        tol = float(args.tolerance[-1]) if args.tolerance else 1e-15
    except ValueError:
        raise UsageError(f"bad tolerance {args.tolerance[-1]!r}") from None
    cs = coherent.build(kind, system, z, tol)
    x = grid_or_default(args, system, cs.truncation_N)
    vals = coherent.evaluate(cs, x)
    _emit({"x": x, "re": vals.real, "im": vals.imag, "abs2": np.abs(vals) ** 2}, args.out)
    if args.coeffs:
        write_csv({"n": np.arange(len(cs.coeffs)), "re": cs.coeffs.real,
                   "im": cs.coeffs.imag}, args.coeffs)
    return EXIT_OK


def _figure_dir(args) -> Path:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def figure1(g0, lam, x):
    cols = {"x": x}
    for pid, label in (("V1", "V1"), ("V2", "V2"), ("V3", "V3"), ("V5", "V5"), ("Sing", "Vsing")):
        cols[label] = make_system(pid, g0=g0, lam=lam).potential(x)
    p = yspace.params_from_g0(g0)
    levels = {"n": list(range(4)), "E": [yspace.energy(p, n) for n in range(4)]}
    return cols, levels


def figure2(g0, lam, pid, x=None, points=1001):
    system = make_system(pid, g0=g0, lam=lam)
    if x is None:
        x = np.linspace(system.profile.x_min, float(system.profile.inverse_s(6.0)), points)
    return {"x": x, **_psi_columns(system, (0, 1, 2), x)}


def figure3(g0, lam, pid, x=None, points=4001):
    system = make_system(pid, g0=g0, lam=lam)
    if x is None:
        hi = float(system.profile.inverse_s(yspace.support_cutoff(2, g0, 1e-14)))
        x = np.linspace(system.profile.x_min, hi, points)
    return {"x": x, "abs2_psi2": system.psi_n(2, x) ** 2}


def cmd_figure(args) -> int:
    which = args.which
    out = _figure_dir(args)
    g0, lam = args.g0, args.lam
    x = None
    if args.grid:
        lo, hi, pts = parse_grid(args.grid)
        x = np.linspace(lo, hi, pts)
    written = []
    if which == "1":
        if x is None:
            x = np.linspace(0.01, 5.0, 500)
        cols, levels = figure1(g0, lam, x)
        written += [(cols, out / "figure1.csv"), (levels, out / "figure1_levels.csv")]
    elif which == "2":
        for pid in ("V5", "V1"):
            written.append((figure2(g0, lam, pid, x), out / f"figure2_{pid}.csv"))
    else:
        for pid in ("V5", "Sing"):
            written.append((figure3(g0, lam, pid, x), out / f"figure3_{pid}.csv"))
    for cols, path in written:
        write_csv(cols, path)
        print(path)
    return EXIT_OK


def cmd_verify(args) -> int:
    tols = {}
    for item in args.tolerance or []:
        if "=" not in item:
            raise UsageError(f"verify --tolerance expects CHECK=VALUE, got {item!r}")
        key, val = item.split("=", 1)
        try:
            tols[key] = float(val)
        except ValueError:
            raise UsageError(f"bad tolerance value {val!r}") from None
    cfg = verify.SuiteConfig(g0=args.g0, lam=args.lam, tolerances=tols)
    selection = args.checks or None
    if selection == ["all"]:
        selection = None
    reports = verify.run_suite(selection, cfg)
    text = verify.format_reports(reports)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(verify.summary(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- entry point --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p, profile_default="V1"):
    p.add_argument("--profile", default=profile_default,
                   help="V1..V7, Sing, LinearPdm or a record like 'kind=MdntN n=2 x0=0 lambda=1'")
    p.add_argument("--linear", action="store_true",
                   help="attach the linear oscillator s^2 instead of the singular one")
    p.add_argument("--n", help="quantum numbers: 3, 0..3 or 0,2,5")
    p.add_argument("--x0", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--g0", type=float, default=2.0)
    p.add_argument("--grid", help="min,max,points (write --grid=-2,2,101 for a negative min)")
    p.add_argument("--out", help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pdmcs", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="list the potential catalog")
    p.add_argument("filter", nargs="?", help="case-insensitive substring filter")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    for name, func, hlp in (("spectrum", cmd_spectrum, "energy levels E_n"),
                            ("wavefunction", cmd_wavefunction, "psi_n(x) tables"),
                            ("potential", cmd_potential, "V(x) table")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("coherent", help="coherent-state table x,re,im,abs2")
    _common(p)
    p.add_argument("--kind", choices=[k.value for k in coherent.CSKind])
    p.add_argument("--z", help="re,im")
    p.add_argument("--tolerance", action="append", help="truncation tolerance (default 1e-15)")
    p.add_argument("--coeffs", help="also write the coefficients as n,re,im")
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("figure", help="CSV data behind figures 1-3")
    p.add_argument("which", choices=["1", "2", "3"])
    p.add_argument("--g0", type=float, default=2.0)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--grid", help="min,max,points")
    p.add_argument("--out", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("checks", nargs="*", help=f"check ids (default all): {' '.join(verify.CHECK_IDS)}")
    p.add_argument("--g0", type=float, default=2.0)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--tolerance", action="append", help="CHECK=VALUE override, repeatable")
    p.add_argument("--out", help="write report lines here instead of stdout")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.lam_given = getattr(args, "lam", None) is not None
    if hasattr(args, "lam") and args.lam is None:
        args.lam = 1.0
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        sys.stderr.write(f"pdmcs: error: {exc}\n")
        return EXIT_USAGE
    except AccuracyError as exc:
        sys.stderr.write(f"pdmcs: accuracy error: {exc}\n")
        return EXIT_FAIL
    except OSError as exc:
        sys.stderr.write(f"pdmcs: {exc}\n")
        return EXIT_USAGE
