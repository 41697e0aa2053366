"""Command-line front end.

Exit status is 0 on success, 2 for invalid input and 3 for numerical
failure.  JSON reports are written with 12 significant digits so that
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from . import io as sysio
from .balancing import pr_balance, quasi_balance_form1, quasi_balance_form2
from .exceptions import NumericalError, ValidationError
from .interlace import (
    eta_scan,
    spectral_interlace_check,
    system_poles,
    system_zeros,
    zip_sufficient_condition,
)
from .model import PoleResidue, RationalFunction, Realization, validate_realization
from .oracle import match_spectra, szp_polynomial, szp_roots, vieta_checks
from .passivity import is_strictly_passive, spectral_zeros
from .synth import foster1_rc, foster2_rl, netlist, pole_residue_from_rational, realize

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
DEFAULT_TOL = 1e-9
ENV_TOL = "PASSIVE_SPECTRA_TOL"
ORACLE_RTOL = 1e-6


def default_tol() -> float:
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ValidationError(f"{ENV_TOL}={raw!r} is not a number") from exc
    if not tol > 0:
        raise ValidationError(f"{ENV_TOL} must be positive")
    return tol


def as_realization(sysobj) -> Realization:
    if isinstance(sysobj, Realization):
        return sysobj
    if isinstance(sysobj, PoleResidue):
        sysobj = sysobj.to_rational()
    return realize(sysobj)


def as_rational(sysobj) -> RationalFunction:
    if isinstance(sysobj, RationalFunction):
        return sysobj
    if isinstance(sysobj, PoleResidue):
        return sysobj.to_rational()
    if not sysobj.is_siso:
        raise ValidationError("the polynomial oracle handles SISO systems only")
    return sysobj.to_rational()


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- analyze -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    sf = sysio.load_system(args.file)
    R = as_realization(sf.system)
    cert = validate_realization(R, tol=args.tol)
    report = {
        "name": sf.name,
        "n": R.n,
        "m": R.m,
        "poles": system_poles(R).as_array(),
        "zeros": system_zeros(R).as_array(),
        "spectral_zeros": spectral_zeros(R).as_array(),
        "symmetric": cert.is_symmetric,
        "symmetry_sign": cert.sign,
        "symmetry_defect": cert.defect,
    }
    passive = is_strictly_passive(R)
    report["strictly_passive"] = passive.passive
    report["reasons"] = list(passive.reasons)
    st = passive.storage
    report["K_min"] = None if st is None else st.K_min
    report["K_max"] = None if st is None else st.K_max
    report["residuals"] = None if st is None else {"K_min": st.residual_min, "K_max": st.residual_max}
    if st is not None and cert.is_symmetric:
        defect = float(np.linalg.norm(st.K_max @ st.K_min - np.eye(R.n), 2))
        report["K_product_defect"] = defect
        report["K_product_identity"] = defect <= 1e-8
    _emit(sysio.dumps(report), args.out)
    return EXIT_OK


# -- balance -----------------------------------------------------------------

_BALANCERS = {"pr": pr_balance, "quasi1": quasi_balance_form1, "quasi2": quasi_balance_form2}


def cmd_balance(args) -> int:
    sf = sysio.load_system(args.file)
    R = as_realization(sf.system)
    try:
        bal = _BALANCERS[args.form](R)
    except ValidationError as exc:
        # failures of the balancing pipeline are numerical by contract
        raise NumericalError(str(exc)) from exc
    out = sysio.system_to_dict(sf.name, bal.realization)
    out["form"] = args.form
    out["sigma"] = np.asarray(bal.sigma)
    _emit(sysio.dumps(out), args.out)
    return EXIT_OK


# -- tables ------------------------------------------------------------------

def _fmt(x: float, digits: int) -> str:
    v = round(float(x), digits)
    return f"{0.0 if v == 0 else v:.{digits}f}"


def render_table(header, rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(r) for r in rows]
    else:
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _block(label, zeros, mu, poles, digits):
    rows = []
    for name, vals in (("system-zeros", zeros), ("spectral-zeros", mu), ("system-poles", poles)):
        rows.append([label, name] + [_fmt(v, digits) for v in vals.as_array()])
    return rows


def cmd_interlace(args) -> int:
    sf = sysio.load_system(args.file)
    R = as_realization(sf.system)
    rep = spectral_interlace_check(R, tol=max(args.tol, 1e-8))
    cond = zip_sufficient_condition(R)
    if args.format == "json":
        out = {
            "name": sf.name,
            "status": rep.status,
            "orientation": rep.orientation,
            "zeros": rep.zeros.as_array(),
            "stable_spectral_zeros": rep.stable_spectral.as_array(),
            "poles": rep.poles.as_array(),
            "sandwich": list(rep.sandwich),
            "sandwich_holds": rep.sandwich_holds,
            "full_chain": rep.full_chain,
            "margins": list(rep.margins),
            "sufficient_condition": {"nu_min": cond.nu_min, "lambda_max": cond.lambda_max,
                                     "holds": cond.condition, "controllable": cond.controllable},
        }
        _emit(sysio.dumps(out), args.out)
        return EXIT_OK
    header = ["system", "quantity"] + [f"({i})" for i in range(1, R.n + 1)]
    rows = _block(sf.name, rep.zeros, rep.stable_spectral, rep.poles, args.digits)
    text = render_table(header, rows, args.format)
    flags = ", ".join("yes" if s else "no" for s in rep.sandwich)
    text += f"\nstatus: {rep.status}\norientation: {rep.orientation.value}\n"
    text += f"sandwich: {flags}\n"
    if rep.full_chain is not None:
        text += f"full chain: {'yes' if rep.full_chain else 'no'}\n"
    _emit(text, args.out)
    return EXIT_OK


def parse_etas(raw: str) -> list:
    parts = [p for p in re.split(r"[,\s]+", raw.strip()) if p]
    if not parts:
        raise ValidationError("empty eta list")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"bad eta list {raw!r}") from exc


def load_matrix(path) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("D0", data.get("D"))
    try:
        M = np.atleast_2d(np.array(data, dtype=float))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path} does not hold a numeric matrix") from exc
    if M.ndim != 2:
        raise ValidationError(f"{path} does not hold a matrix")
    return M


def cmd_scan_eta(args) -> int:
    sf = sysio.load_system(args.file)
    R = as_realization(sf.system)
    D0 = load_matrix(args.d0) if args.d0 else None
    etas = parse_etas(args.etas) if args.etas is not None else None
    scan = eta_scan(R, D0=D0, etas=etas, bisect=args.bisect)
    header = ["eta", "quantity"] + [f"({i})" for i in range(1, R.n + 1)]
    rows = []
    for row in scan.rows:
        label = f"{row.eta:g} ({row.status})"
        rows += _block(label, row.zeros, row.stable_spectral, row.poles, args.digits)
    text = render_table(header, rows, args.format) if rows else ""
    if scan.threshold is not None:
        text += f"eta*: {scan.threshold:.6g}\n"
    _emit(text, args.out)
    return EXIT_OK


# -- synth -------------------------------------------------------------------

def cmd_synth(args) -> int:
    sf = sysio.load_system(args.file)
    sysobj = sf.system
    if isinstance(sysobj, Realization):
        if not sysobj.is_siso:
            raise ValidationError("Foster synthesis handles SISO systems only")
        sysobj = sysobj.to_rational()
    pr = sysobj if isinstance(sysobj, PoleResidue) else pole_residue_from_rational(sysobj)
    net = foster1_rc(pr) if args.foster == 1 else foster2_rl(pr)
    second = "C" if args.foster == 1 else "L"
    out = {
        "name": sf.name,
        "kind": net.kind,
        "resistor": net.resistor,
        "branches": [{"R": a, second: b} for a, b in net.branches],
    }
    if args.netlist:
        with open(args.netlist, "w", encoding="utf-8") as fh:
            fh.write(netlist(net))
        out["netlist"] = args.netlist
    _emit(sysio.dumps(out), args.out)
    return EXIT_OK


# -- oracle ------------------------------------------------------------------

def cmd_oracle(args) -> int:
    sf = sysio.load_system(args.file)
    f = as_rational(sf.system)
    p = szp_polynomial(f)
    oracle = szp_roots(p)
    ham = spectral_zeros(as_realization(sf.system))
    err = match_spectra(oracle, ham)
    out = {
        "name": sf.name,
        "szp_even_coefficients": list(p.coefficients),
        "szp_roots": oracle.as_array(),
        "hamiltonian_spectral_zeros": ham.as_array(),
        "max_rel_error": err,
        "match": err <= ORACLE_RTOL,
    }
    try:
        v = vieta_checks(f)
        out["vieta"] = {"product": v.product, "product_expected": v.product_expected,
                        "sum_squares": v.sum_squares, "sum_squares_expected": v.sum_squares_expected,
                        "holds": v.holds()}
    except ValidationError:
        out["vieta"] = None
    _emit(sysio.dumps(out), args.out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INPUT)


def build_parser(tol: float) -> argparse.ArgumentParser:
    p = _Parser(prog="passive-spectra", description="Spectral analysis of strictly passive LTI systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="system JSON file")
        sp.add_argument("--tol", type=float, default=tol, help="tolerance (default %(default)g)")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "poles, zeros, spectral zeros and extremal storage")
    sp = add("balance", cmd_balance, "positive-real or quasi balanced realization")
    sp.add_argument("--form", choices=sorted(_BALANCERS), default="pr")
    sp = add("interlace", cmd_interlace, "pole/zero/spectral-zero interlacing of a symmetric system")
    sp.add_argument("--digits", type=int, default=2)
    sp.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    sp = add("scan-eta", cmd_scan_eta, "interlacing under feed-through scaling D = eta D0")
    sp.add_argument("--d0", help="JSON file with the base feed-through matrix")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--etas", help="comma separated scaling factors")
    grp.add_argument("--bisect", nargs=2, type=float, metavar=("LO", "HI"))
    sp.add_argument("--digits", type=int, default=2)
    sp.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    sp = add("synth", cmd_synth, "Foster RC (1) or RL (2) network")
    sp.add_argument("--foster", type=int, choices=[1, 2], default=1)
    sp.add_argument("--netlist", help="write a SPICE-style netlist here")
    add("oracle-check", cmd_oracle, "polynomial cross-check of the spectral zeros (SISO)")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser(default_tol()).parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError, ArithmeticError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except Exception as exc:  # anything else counts as a numerical failure
        sys.stderr.write(f"numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
