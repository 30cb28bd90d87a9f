"""Command-line front end.

Commands: hvol, lct, mult, colength, hatl, scan, lattice, cone, qbound,
verify. Results are JSON (rationals as "p/q" strings, floats only on
explicitly inexact values); scan and lattice tables can also be emitted
as CSV. Configuration precedence is flags > environment (HATVOL_*) >
config file (flat key = value) > defaults. Exit codes: 0 success,
2 validation error, 3 budget or non-convergence, 4 internal invariant
violation. Errors are machine-readable JSON on standard error.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction

from . import acceptance, geometry, invariants, monomials
from .errors import HatvolError, ValidationError
from .models import FanoConeInput, MonomialPair, ToricSingularity, cone_construction, fano_degree_bound, load_model
from .rationals import format_rational, parse_rational


@dataclass
class Settings:
    tol: float = 1e-9
    kss_tol: float = 1e-6
    grid_depth: int = 6
    threads: int = 1
    budget_n2: int = 12
    budget_n3: int = 5

    def budgets(self):
        return {2: self.budget_n2, 3: self.budget_n3}


_SETTING_TYPES = {f.name: f.type for f in fields(Settings)}


def _coerce_setting(name, raw):
    kind = _SETTING_TYPES[name]
    try:
        return int(raw) if kind is int else float(raw)
    except ValueError as exc:
        raise ValidationError("invalid-config", f"cannot parse {name}={raw!r}") from exc


def _read_config_file(path):
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError("invalid-config", f"{path}:{lineno}: expected key = value")
            key, _, raw = line.partition("=")
            key = key.strip().lower()
            if key in _SETTING_TYPES:
                values[key] = _coerce_setting(key, raw.strip().strip('"'))
    return values


def resolve_settings(args):
    """Apply precedence: CLI flags > HATVOL_* environment > config file > defaults."""
    settings = Settings()
    config_path = getattr(args, "config", None)
    if config_path is None and os.path.exists("hatvol.toml"):
        config_path = "hatvol.toml"
    if config_path is not None:
        for key, value in _read_config_file(config_path).items():
            setattr(settings, key, value)
    for name in _SETTING_TYPES:
        env = os.environ.get(f"HATVOL_{name.upper()}")
        if env is not None:
            setattr(settings, name, _coerce_setting(name, env))
    if getattr(args, "tol", None) is not None:
        settings.tol = args.tol
    if getattr(args, "threads", None) is not None:
        settings.threads = args.threads
    if settings.threads < 1:
        raise ValidationError("invalid-config", "threads must be at least 1")
    if settings.tol <= 0:
        raise ValidationError("invalid-config", "tolerance must be positive")
    return settings


# ---------------------------------------------------------------------------
# input loading


def _load_json(path, kind):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise ValidationError("missing-file", f"{kind} file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError("invalid-json", f"{kind} file {path} is not valid JSON: {exc}") from exc


def _load_model(path):
    return load_model(_load_json(path, "model"))


def _load_ideal(path):
    return monomials.MonomialIdeal.from_json(_load_json(path, "ideal"))


def _load_body(path):
    data = _load_json(path, "body")
    try:
        vertices = [[parse_rational(x) for x in v] for v in data["vertices"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError("invalid-body-json", "body document needs a 'vertices' list") from exc
    return geometry.convex_hull(vertices)


def _parse_k_range(text):
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValidationError("invalid-range", f"bad k-range {text!r}")
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        return list(range(lo, hi + 1, step))
    return [int(x) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# command handlers: each returns (job_echo, result_payload, warnings, csv_rows)


def _cmd_hvol(args, settings):
    model = _load_model(args.model)
    if isinstance(model, MonomialPair):
        result = invariants.hvol_closed_form(model)
    elif isinstance(model, ToricSingularity):
        result = invariants.hvol_toric(model, tolerance=settings.tol, grid_depth=settings.grid_depth)
    else:
        result = invariants.hvol_toric(cone_construction(model), tolerance=settings.tol, grid_depth=settings.grid_depth)
    return result.to_payload(), list(result.warnings), None


def _cmd_lct(args, settings):
    model = _load_model(args.model)
    ideal = _load_ideal(args.ideal)
    return invariants.lct(model, ideal).to_payload(), [], None


def _cmd_mult(args, settings):
    ideal = _load_ideal(args.ideal)
    value = ideal.multiplicity()
    return {"value": format_rational(value), "exact": True}, [], None


def _cmd_colength(args, settings):
    ideal = _load_ideal(args.ideal)
    return {"value": ideal.colength(), "exact": True}, [], None


def _cmd_hatl(args, settings):
    model = _load_model(args.model)
    value, argmin = invariants.normalized_colength(
        model, parse_rational(args.c), args.k, mode=args.mode, budgets=settings.budgets()
    )
    payload = {
        "value": format_rational(value),
        "argmin": [list(g) for g in argmin.gens],
        "mode": args.mode,
        "c": format_rational(parse_rational(args.c)),
        "k": args.k,
    }
    return payload, [invariants.EQUIVARIANT_WARNING], None


def _cmd_scan(args, settings):
    model = _load_model(args.model)
    c = parse_rational(args.c) if args.c is not None else invariants.default_scan_constant(model.n)
    scan = invariants.colength_convergence_scan(
        model, c, range(args.k_min, args.k_max + 1), mode=args.mode, budgets=settings.budgets()
    )
    return scan.to_payload(), list(scan.warnings), scan.csv_rows()


def _cmd_lattice(args, settings):
    body = _load_body(args.body)
    epsilon = parse_rational(args.epsilon) if args.epsilon is not None else Fraction(1, 20)
    probe = geometry.counting_error_probe(body, _parse_k_range(args.k_range), epsilon=epsilon)
    payload = {
        "epsilon": format_rational(probe.epsilon),
        "k0": probe.k0,
        "rows": [{"k": k, "error": format_rational(err)} for k, err in probe.rows],
        "volume": format_rational(body.volume()),
    }
    rows = [("k", "error_num", "error_den")]
    rows += [(k, err.numerator, err.denominator) for k, err in probe.rows]
    return payload, [], rows


def _cmd_cone(args, settings):
    model = _load_model(args.model)
    if not isinstance(model, FanoConeInput):
        raise ValidationError("invalid-model", "cone construction expects a fano_cone model")
    toric = cone_construction(model)
    payload = {
        "rays": [list(r) for r in toric.cone.rays],
        "m_covector": [format_rational(x) for x in toric.m_covector],
        "degree_bound": format_rational(fano_degree_bound(model)),
    }
    return payload, [], None


def _cmd_qbound(args, settings):
    model = _load_model(args.model)
    if not isinstance(model, FanoConeInput):
        raise ValidationError("invalid-model", "q-bound check expects a fano_cone model")
    report = invariants.q_bound_check(model, args.q)
    return report.to_payload(), [], None


def _cmd_verify(args, settings):
    results = acceptance.run_suite(args.suite, settings=settings)
    for result in results:
        print(result.line())
    return acceptance.suite_exit_code(results)


_HANDLERS = {
    "hvol": _cmd_hvol,
    "lct": _cmd_lct,
    "mult": _cmd_mult,
    "colength": _cmd_colength,
    "hatl": _cmd_hatl,
    "scan": _cmd_scan,
    "lattice": _cmd_lattice,
    "cone": _cmd_cone,
    "qbound": _cmd_qbound,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hatvol",
        description="Exact normalized volumes, thresholds and colengths of monomial and toric singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=False, ideal=False):
        if model:
            p.add_argument("--model", required=True, help="model JSON file")
        if ideal:
            p.add_argument("--ideal", required=True, help="ideal JSON file")
        p.add_argument("--out", help="write the report to this file instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol", type=float, help="numeric tolerance override")
        p.add_argument("--threads", type=int, help="worker budget for batch execution")
        p.add_argument("--config", help="key = value configuration file")

    p = sub.add_parser("hvol", help="normalized volume of a model")
    common(p, model=True)
    p = sub.add_parser("lct", help="log canonical threshold of an ideal on a model")
    common(p, model=True, ideal=True)
    p = sub.add_parser("mult", help="Hilbert-Samuel multiplicity of an ideal")
    common(p, ideal=True)
    p = sub.add_parser("colength", help="colength of an m-primary ideal")
    common(p, ideal=True)
    p = sub.add_parser("hatl", help="normalized colength at one level k")
    common(p, model=True)
    p.add_argument("--c", required=True, help="colength fraction c (rational)")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--mode", choices=("exact", "upper"), default="exact")
    p = sub.add_parser("scan", help="normalized colength convergence scan")
    common(p, model=True)
    p.add_argument("--c", help="colength fraction c (rational); default e(m)/(4 n!)")
    p.add_argument("--k-min", dest="k_min", type=int, default=2)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "upper"), default="exact")
    p = sub.add_parser("lattice", help="lattice point counting error probe")
    common(p)
    p.add_argument("--body", required=True, help="body JSON file with rational vertices")
    p.add_argument("--k-range", dest="k_range", required=True, help="dilations, e.g. 20,40,80 or 2:100")
    p.add_argument("--epsilon", help="error threshold (rational), default 1/20")
    p = sub.add_parser("cone", help="affine cone over a polarized toric base")
    common(p, model=True)
    p = sub.add_parser("qbound", help="divisibility bound q (-K)^(n-1) <= n^n")
    common(p, model=True)
    p.add_argument("--q", required=True, type=int, help="divisibility of the anticanonical class")
    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", choices=("fast", "full"), default="fast")
    p.add_argument("--tol", type=float, help=argparse.SUPPRESS)
    p.add_argument("--threads", type=int, help=argparse.SUPPRESS)
    p.add_argument("--config", help=argparse.SUPPRESS)
    return parser


def _emit(args, report, csv_rows):
    if args.format == "csv":
        if csv_rows is None:
            raise ValidationError("invalid-format", f"{args.command} has no CSV representation")
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerows(csv_rows)
        text = buffer.getvalue()
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve_settings(args)
        if args.command == "verify":
            return _cmd_verify(args, settings)
        handler = _HANDLERS[args.command]
        started = time.time()
        payload, warnings, csv_rows = handler(args, settings)
        job = {"command": args.command, "parameters": {}}
        for key in ("model", "ideal", "body", "c", "k", "k_min", "k_max", "k_range", "mode", "q", "epsilon"):
            value = getattr(args, key, None)
            if value is not None:
                job["parameters"][key.replace("_", "-")] = value
        report = {
            "job": job,
            "result": payload,
            "warnings": warnings,
            "timing_ms": round((time.time() - started) * 1000.0, 3),
        }
        _emit(args, report, csv_rows)
        return 0
    except HatvolError as exc:
        sys.stderr.write(json.dumps(exc.payload(), sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
