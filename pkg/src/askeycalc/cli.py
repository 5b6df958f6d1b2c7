"""Command-line interface.

Subcommands: classify, eigen, rodrigues, ortho and suite. Output is JSON
(default), CSV or plain text; complex numbers are ``[re, im]`` pairs in JSON.
Exit status: 0 pass, 1 verification failure, 2 usage error, 3 a
mathematical precondition failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (EXIT_OK, EXIT_USAGE, EXIT_VERIFY, CalculusError, ParseError)
from .families import (FAMILY_NAMES, ArithmeticChi, ContinuousChi, GeometricChi,
                       QuadraticChi, TrigChi, chi_to_problem, family_closed_form,
                       make_family)
from .hyperop import HProblem, Normalization, eigenfunction, find_theta0
from .ortho import eigen_gram, measure, off_diagonal_ratio
from .poly import LaurentPoly, Poly
from .pseq import Form, SymP, classify
from .rodrigues import rodrigues_eval, sample_window, solve_rho
from .scalars import worst_of
from .suite import ITEMS, run_suite

SCHEMA = "aw-calculus/1"
OFF_LATTICE = 0.3 + 0.2j


@dataclass
class RunConfig:
    command: str
    a: str | None = None
    b: str | None = None
    c: str | None = None
    form: str | None = None
    sigma: str | None = None
    tau: str | None = None
    chi: str | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)
    q: str | None = None
    kmax: int = 6
    theta_index: int = 0
    m: int = 8
    tol_rel: float | None = None
    tol_abs: float = 0.0
    seed: int = 0
    format: str = "json"
    out: str | None = None
    list: bool = False

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))


# ---------------------------------------------------------------- parsing

def parse_complex(text: str | float | int | list) -> complex:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParseError(f"not a complex literal: {text!r}") from None


def parse_vector(text: str) -> list[complex]:
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON list: {exc}") from None
    else:
        items = [s for s in text.split(",") if s.strip()]
    return [parse_complex(v) for v in items]


def _params(cfg: RunConfig) -> dict:
    # list entries may themselves be [re, im] pairs
    def conv(v):
        return [parse_complex(x) for x in v] if isinstance(v, list) else parse_complex(v)
    out = {k: (v if k == "variant" else conv(v)) for k, v in cfg.params.items()}
    for k in ("alpha", "beta"):
        if k in out:
            out[k] = out[k].real if out[k].imag == 0 else out[k]
    if cfg.q is not None:
        out["q"] = parse_complex(cfg.q)
    return out


def _chi_data(cfg: RunConfig):
    if cfg.form is None:
        raise ParseError("--chi requires --form")
    try:
        d = json.loads(cfg.chi)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--chi must be a JSON object: {exc}") from None
    vec = lambda key: [parse_complex(v) for v in d[key]]
    lam = None
    if cfg.q is not None:
        lam = complex(np.sqrt(parse_complex(cfg.q)))
    form = Form(cfg.form.upper())
    try:
        if form is Form.A:
            return ArithmeticChi(Poly(vec("plus")), Poly(vec("minus")))
        if form is Form.Q:
            return QuadraticChi(Poly(vec("chi")))
        if form in (Form.G, Form.T) and lam is None:
            raise ParseError("--q is required for the G and T forms")
        if form is Form.G:
            return GeometricChi(Poly(vec("plus")), Poly(vec("minus")), lam)
        if form is Form.T:
            return TrigChi(LaurentPoly(vec("chi"), int(d.get("low", -2))), lam)
        if form is Form.C:
            return ContinuousChi(Poly(vec("sigma")), Poly(vec("tau")))
    except KeyError as exc:
        raise ParseError(f"--chi is missing key {exc}") from None
    raise ParseError(f"form {form.value} has no chi parameterization")


def build_problem(cfg: RunConfig):
    """Returns ``(problem, theta, family_spec_or_None)``."""
    if cfg.family:
        spec = make_family(cfg.family, _params(cfg), dmax=max(cfg.kmax, 1))
        theta = spec.theta
        if theta is None:
            theta = find_theta0(spec.problem)[cfg.theta_index]
        return spec.problem, theta, spec
    if cfg.chi:
        p = chi_to_problem(_chi_data(cfg), dmax=max(cfg.kmax, 1))
    else:
        if cfg.a is None or cfg.sigma is None or cfg.tau is None:
            raise ParseError("give --family, --form/--chi, or --a/--b/--c with --sigma and --tau")
        P = SymP(parse_complex(cfg.a), parse_complex(cfg.b or 0), parse_complex(cfg.c or 0))
        p = HProblem(P, Poly(parse_vector(cfg.sigma)), Poly(parse_vector(cfg.tau)),
                     dmax=max(cfg.kmax, 1))
    roots = find_theta0(p)
    if not 0 <= cfg.theta_index < len(roots):
        raise ParseError(f"--theta-index must be in [0, {len(roots) - 1}]")
    return p, roots[cfg.theta_index], None


# ---------------------------------------------------------------- output

def jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.ndarray):
        return [jsonable(x) for x in v.tolist()]
    if isinstance(v, Poly):
        return [jsonable(c) for c in v.tolist()]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if hasattr(v, "value") and not isinstance(v, (int, float, str)):
        return v.value
    return v


def _flat(v) -> str:
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    if isinstance(v, (list, tuple, np.ndarray, Poly)):
        items = v.tolist() if hasattr(v, "tolist") else v
        return " ".join(_flat(x) for x in items)
    return str(jsonable(v))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(jsonable({"schema": SCHEMA, **report}), indent=2) + "\n"
    rows = report.get("rows")
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: _flat(v) for k, v in r.items()})
        else:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["key", "value"])
            for k, v in report.items():
                writer.writerow([k, _flat(v)])
        return buf.getvalue()
    lines = [f"{k}: {_flat(v)}" for k, v in report.items() if k != "rows"]
    for r in rows or []:
        lines.append("  ".join(f"{k}={_flat(v)}" for k, v in r.items()))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def cmd_classify(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.a is None:
        raise ParseError("classify needs --a (and optionally --b, --c)")
    P = SymP(parse_complex(cfg.a), parse_complex(cfg.b or 0), parse_complex(cfg.c or 0))
    cf = classify(P)
    return {
        "command": "classify",
        "form": cf.tag.value,
        "a": cf.a,
        "deg_delta": cf.deg_delta,
        "ev_P": cf.ev_P,
        "lambda": P.ctx.lam,
        "q": P.ctx.q,
        "witness_map": list(cf.witness_map),
        "isotropy_label": cf.isotropy_label,
    }, EXIT_OK


def _tol(cfg: RunConfig, default: float) -> float:
    return default if cfg.tol_rel is None else cfg.tol_rel


def cmd_eigen(cfg: RunConfig) -> tuple[dict, int]:
    p, theta, spec = build_problem(cfg)
    tol = _tol(cfg, 1e-8)
    norm = Normalization.AT_THETA0 if spec is not None else Normalization.MONIC
    rows, ok = [], True
    for k in range(cfg.kmax + 1):
        ef = eigenfunction(p, theta, k, norm)
        res = ef.residual(p)
        row = {"k": k, "mu": ef.mu, "coeffs": ef.poly, "residual": res}
        passed = res <= tol + cfg.tol_abs
        if spec is not None and spec.name in FAMILY_NAMES:
            pts = [theta.at(0.37 + 0.61 * i + 0.21j) for i in range(5)]
            got = np.array([complex(ef.poly(x)) for x in pts])
            ref = np.array([family_closed_form(spec, k, x) for x in pts])
            dev = float(np.abs(got - ref).max() / max(1.0, np.abs(ref).max()))
            row["closed_form_deviation"] = dev
            passed = passed and dev <= tol + cfg.tol_abs
        row["pass"] = bool(passed)
        ok = ok and passed
        rows.append(row)
    report = {"command": "eigen", "form": p.form.value, "normalization": norm.value,
              "theta0": theta.at(0), "rows": rows, "pass": ok}
    if spec is not None:
        report["family"] = spec.name
    return report, EXIT_OK if ok else EXIT_VERIFY


def _family_only(cfg: RunConfig, what: str):
    if not cfg.family:
        raise ParseError(f"{what} needs --family")
    spec = make_family(cfg.family, _params(cfg), dmax=max(cfg.kmax, cfg.m, 8))
    if spec.theta is None:
        find_theta0(spec.problem)
    return spec


def cmd_rodrigues(cfg: RunConfig) -> tuple[dict, int]:
    spec = _family_only(cfg, "rodrigues")
    tol = _tol(cfg, 1e-7)
    chain = solve_rho(spec.problem, spec.theta.shifted(OFF_LATTICE))
    rows, ok = [], True
    for k in range(cfg.kmax + 1):
        ts = sample_window(chain.theta, 2 * k + 4)
        terms = [rodrigues_eval(chain, k, t) for t in ts]
        res = worst_of(tm.residual for tm in terms)
        passed = res <= tol
        ok = ok and passed
        rows.append({"k": k, "points": len(ts), "residual": res, "pass": bool(passed)})
    return {"command": "rodrigues", "family": spec.name, "form": spec.form.value,
            "rows": rows, "pass": ok}, EXIT_OK if ok else EXIT_VERIFY


def cmd_ortho(cfg: RunConfig) -> tuple[dict, int]:
    params = dict(cfg.params)
    if cfg.family and cfg.family.lower() == "hahn" and not params:
        # finite support 0..m: chi^- vanishes at 0, chi^+ at m
        params = {"xi_plus": [cfg.m, cfg.m + 2.3], "xi_minus": [0, -1.6]}
    cfg = RunConfig(**{**asdict(cfg), "params": params})
    spec = _family_only(cfg, "ortho")
    tol = _tol(cfg, 1e-9)
    chain = solve_rho(spec.problem, spec.theta)
    gm = measure(chain, cfg.m)
    G = eigen_gram(gm, min(cfg.kmax, cfg.m) if cfg.kmax else cfg.m)
    ratio = off_diagonal_ratio(G)
    ok = ratio <= tol
    lo, hi = gm.boundary_values()
    return {"command": "ortho", "family": spec.name, "m": cfg.m,
            "boundary": {"rho1_left": lo, "rho1_right": hi},
            "gram": G, "off_diagonal_ratio": ratio, "pass": bool(ok)}, \
        EXIT_OK if ok else EXIT_VERIFY


def cmd_suite(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.list:
        rows = [{"name": it.name, "identity": it.identity, "tol": it.tol} for it in ITEMS]
        return {"command": "suite", "rows": rows}, EXIT_OK
    results = run_suite(cfg.seed, cfg.tol_rel)
    rows = [{"name": r.name, "identity": r.identity, "residual": r.residual,
             "tol": r.tol, "pass": r.passed} for r in results]
    failing = [r.name for r in results if not r.passed]
    return {"command": "suite", "seed": cfg.seed, "rows": rows, "failing": failing,
            "pass": not failing}, EXIT_OK if not failing else EXIT_VERIFY


COMMANDS = {"classify": cmd_classify, "eigen": cmd_eigen, "rodrigues": cmd_rodrigues,
            "ortho": cmd_ortho, "suite": cmd_suite}


# ---------------------------------------------------------------- entry point

def _json_arg(text: str) -> dict:
    try:
        out = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"--params must be JSON: {exc}") from None
    if not isinstance(out, dict):
        raise argparse.ArgumentTypeError("--params must be a JSON object")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="askeycalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--a")
        sp.add_argument("--b")
        sp.add_argument("--c")
        sp.add_argument("--form", choices=[f.value for f in Form] + [f.value.lower() for f in Form])
        sp.add_argument("--sigma", help="ascending coefficients, e.g. '1,0,-1'")
        sp.add_argument("--tau", help="ascending coefficients")
        sp.add_argument("--chi", help="JSON object with the chi data of --form")
        sp.add_argument("--family", choices=list(FAMILY_NAMES) + ["q-hermite"])
        sp.add_argument("--params", type=_json_arg, default={})
        sp.add_argument("--q")
        sp.add_argument("--kmax", type=int, default=6)
        sp.add_argument("--theta-index", type=int, default=0)
        sp.add_argument("--m", type=int, default=8)
        sp.add_argument("--tol-rel", type=float)
        sp.add_argument("--tol-abs", type=float, default=0.0)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--out")
        if name == "suite":
            sp.add_argument("--list", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    fmt = cfg.format
    try:
        report, code = COMMANDS[cfg.command](cfg)
        text = render(report, fmt)
    except CalculusError as exc:
        report, code = {"command": cfg.command, "error": exc.to_dict()}, exc.exit_code
        text = render(report, "json" if fmt == "csv" else fmt)
    except (ValueError, KeyError, IndexError) as exc:
        report, code = {"command": cfg.command,
                        "error": {"code": "ParseError", "message": str(exc)}}, EXIT_USAGE
        text = render(report, "json" if fmt == "csv" else fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
