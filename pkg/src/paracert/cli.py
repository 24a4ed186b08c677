"""Batch front end: subcommands, config files, reports, exit codes.

Exit code contract: 0 when the run's claim is certified (or the
command is purely informational and succeeded), 1 when the rigorous
outcome is inconclusive or a property suite failed, 2 on usage or
runtime errors.  Every subcommand writes a JSON report, a CSV summary,
and a PNG figure into the output directory (flag --out-dir, else the
PARACERT_OUT_DIR environment variable, else the working directory).

Config files hold one `key = value` per line with `#` comments; keys
match the long flag names with either hyphens or underscores.  Flags
given on the command line override config file values, which override
built-in defaults.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time
from fractions import Fraction

from . import __version__, quad, report, special, strichartz, symmetry
from .interval import PI, Interval
from .report import SummaryRow
from .special import Exponents

_THETA_RE = re.compile(r"^([+-]?\d*(?:\.\d+)?)pi(?:/(\d+))?$")


class CliError(Exception):
    """Invalid configuration or arguments; maps to exit code 2."""


def parse_theta(text: str) -> Interval:
    """Parse a phase like "0", "1.25", "pi", "pi/2", "-pi/4", "3pi/4".

    Multiples of pi become rigorous enclosures (pi is not a binary64
    number); plain numerals become the exact point interval of the
    parsed float.
    """
    s = text.strip().lower().replace(" ", "")
    if "pi" in s:
        m = _THETA_RE.match(s)
        if not m:
            raise CliError(f"cannot parse theta {text!r}")
        coeff_txt, div_txt = m.groups()
        if coeff_txt in ("", "+", "-"):
            coeff = Fraction(coeff_txt + "1")
        else:
            coeff = Fraction(coeff_txt)
        if div_txt:
            if div_txt == "0":
                raise CliError(f"cannot parse theta {text!r}: zero divisor")
            coeff /= Fraction(div_txt)
        return PI * Interval.from_fraction(coeff)
    try:
        return Interval(float(s))
    except ValueError as exc:
        raise CliError(f"cannot parse theta {text!r}") from exc


def load_config(path: str) -> dict[str, str]:
    """Read `key = value` lines; `#` starts a comment; blank lines ok."""
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        value = value.strip()
        if not key or not value:
            raise CliError(f"{path}:{lineno}: expected key = value")
        values[key] = value
    return values


_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _to_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in _BOOL_TRUE:
        return True
    if low in _BOOL_FALSE:
        return False
    raise CliError(f"expected a boolean, got {text!r}")


_CONVERTERS = {
    "dim": int,
    "t_max": float,
    "r_max": float,
    "step": float,
    "theta": str,
    "theta_steps": int,
    "steps": int,
    "points": int,
    "seed": int,
    "cases": int,
    "samples": int,
    "max_n": int,
    "adaptive": _to_bool,
    "eta": str,
    "out_dir": str,
}


def _resolve(args: argparse.Namespace, config: dict[str, str], defaults: dict):
    """Merge CLI > config file > defaults into one settings namespace."""
    merged = dict(defaults)
    for key, raw in config.items():
        if key not in _CONVERTERS:
            raise CliError(f"unknown config key {key!r}")
        if key in merged or key == "out_dir":
            try:
                merged[key] = _CONVERTERS[key](raw)
            except (ValueError, CliError) as exc:
                raise CliError(f"config key {key!r}: {exc}") from exc
    for key in merged:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
    return merged


def _out_dir(args: argparse.Namespace, config: dict[str, str]) -> str:
    if getattr(args, "out_dir", None):
        return args.out_dir
    if "out_dir" in config:
        return config["out_dir"]
    return os.environ.get("PARACERT_OUT_DIR", ".")


def _dim_defaults(dim: int) -> dict:
    """Grid defaults per dimension; the d=2 grid is artifact-chosen."""
    if dim == 1:
        return {"t_max": 50.0, "r_max": 5.0, "step": 0.1}
    return {"t_max": 20.0, "r_max": 4.0, "step": 0.05}


def _print(line: str) -> None:
    sys.stdout.write(line + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (exit_code, results, rows, notes, figure)
# ---------------------------------------------------------------------------

_TAIL_NOTE = (
    "tail bounds the whole complement of the box ({|t|>T} plus "
    "{|t|<=T, r>R}); tail_corner bounds only the product region "
    "{|t|>T, r>R}, which by itself does not cover the complement."
)
_ORACLE_NOTE = (
    "oracle_* values come from the non-rigorous Cartesian closed-form "
    "route on a fixed truncated grid; they are reported for comparison "
    "only and are not expected to match the polar enclosures (the two "
    "routes integrate different printed formulas; the certification "
    "applies to the polar integrand)."
)


def _cmd_verify(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    box = strichartz.polar_box(cfg["t_max"], cfg["r_max"])
    steps = strichartz.grid_steps(box, cfg["step"])
    verdict = strichartz.verify_separation(e, box, steps, adaptive=cfg["adaptive"])

    oracle0 = strichartz.gaussian_extension_norm_float(e, 0.0)
    oracle1 = strichartz.gaussian_extension_norm_float(e, math.pi / 2.0)
    results = {
        "verdict": verdict.to_json_dict(),
        "oracle_J0": oracle0,
        "oracle_J_half_pi": oracle1,
    }
    rows = [
        SummaryRow.from_interval("J(0)", verdict.enclosure_J0, verdict.status),
        SummaryRow.from_interval("J(pi/2)", verdict.enclosure_Jhalfpi,
                                 verdict.status),
        SummaryRow.from_scalar("tail", verdict.tail, "full complement cover"),
        SummaryRow.from_scalar("tail_corner", verdict.tail_corner,
                               "outer product region only"),
        SummaryRow.from_scalar("margin", verdict.margin),
        SummaryRow.from_scalar("oracle_J0", oracle0, "float Cartesian route"),
        SummaryRow.from_scalar("oracle_J_half_pi", oracle1,
                               "float Cartesian route"),
    ]
    fig = report.fig_enclosures(
        [
            ("J(0)", verdict.enclosure_J0.lo, verdict.enclosure_J0.hi),
            ("J(pi/2)", max(verdict.enclosure_Jhalfpi.lo, 1e-8),
             verdict.enclosure_Jhalfpi.hi),
        ],
        f"J(0) vs J(pi/2), d={e.d} ({verdict.status})",
        log=True,
    )
    _print(
        f"verify d={e.d}: status={verdict.status} margin={verdict.margin:.6g} "
        f"J0={verdict.enclosure_J0.format_decimal(8)} "
        f"Jpi2={verdict.enclosure_Jhalfpi.format_decimal(8)} tail={verdict.tail:.3g}"
    )
    return (0 if verdict.certified else 1), results, rows, [
        _TAIL_NOTE, _ORACLE_NOTE
    ], fig


def _cmd_j(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    theta = parse_theta(cfg["theta"])
    box = strichartz.polar_box(cfg["t_max"], cfg["r_max"])
    steps = strichartz.grid_steps(box, cfg["step"])
    cert = strichartz.j_integral(e, theta, box, steps)
    oracle = strichartz.gaussian_extension_norm_float(e, theta.mid)
    results = {"certificate": cert.to_json_dict(), "oracle": oracle}
    rows = [
        SummaryRow.from_interval(f"J({cfg['theta']})", cert.main),
        SummaryRow.from_scalar("tail", cert.tail),
        SummaryRow.from_scalar("oracle", oracle, "float Cartesian route"),
    ]
    fig = report.fig_enclosures(
        [(f"J({cfg['theta']})", cert.main.lo, cert.main.hi)],
        f"J enclosure, d={e.d}",
    )
    _print(
        f"j d={e.d} theta={cfg['theta']}: {cert.main.format_decimal(8)} "
        f"tail={cert.tail:.3g}"
    )
    return 0, results, rows, [_TAIL_NOTE, _ORACLE_NOTE], fig


def _cmd_mean_check(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    box = strichartz.polar_box(cfg["t_max"], cfg["r_max"])
    steps = strichartz.grid_steps(box, cfg["step"])
    rep = strichartz.mean_identity_check(e, cfg["theta_steps"], box, steps)
    results = {"mean_identity": rep.to_json_dict()}
    rows = [
        SummaryRow.from_interval("mean_theta J", rep.mean_J),
        SummaryRow.from_interval("kappa * M", rep.kappa_M),
        SummaryRow.from_scalar("consistent", float(rep.consistent)),
    ]
    fig = report.fig_enclosures(
        [
            ("mean_theta J", rep.mean_J.lo, rep.mean_J.hi),
            ("kappa * M", rep.kappa_M.lo, rep.kappa_M.hi),
        ],
        f"mean identity, d={e.d} ({'consistent' if rep.consistent else 'violated'})",
    )
    _print(
        f"mean-check d={e.d}: consistent={rep.consistent} "
        f"mean={rep.mean_J.format_decimal(8)} kappaM={rep.kappa_M.format_decimal(8)}"
    )
    return (0 if rep.consistent else 1), results, rows, [_TAIL_NOTE], fig


def _cmd_constants(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    kappa = special.kappa(e)
    factor = special.lower_bound_factor(e)
    c_d = special.extension_constant(e)
    phi1 = special.phi_one_closed_form(e.q)
    results = {
        "d": e.d,
        "q": str(e.q),
        "kappa": [kappa.lo, kappa.hi],
        "kappa_decimal": kappa.format_decimal(),
        "lower_bound_factor": [factor.lo, factor.hi],
        "lower_bound_factor_decimal": factor.format_decimal(),
        "c_d": [c_d.lo, c_d.hi],
        "c_d_decimal": c_d.format_decimal(),
        "phi_at_1": [phi1.lo, phi1.hi],
        "phi_at_1_decimal": phi1.format_decimal(),
    }
    rows = [
        SummaryRow.from_interval("kappa", kappa),
        SummaryRow.from_interval("lower_bound_factor", factor),
        SummaryRow.from_interval("c_d", c_d),
        SummaryRow.from_interval("phi(1)", phi1, "closed form"),
    ]
    fig = report.fig_enclosures(
        [
            ("kappa", kappa.lo, kappa.hi),
            ("lower_bound_factor", factor.lo, factor.hi),
            ("phi(1)", phi1.lo, phi1.hi),
        ],
        f"certified constants, d={e.d}",
    )
    _print(
        f"constants d={e.d}: kappa={kappa.format_decimal(17)} "
        f"factor={factor.format_decimal(17)}"
    )
    return 0, results, rows, [], fig


def _cmd_phi(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    n = cfg["points"]
    if n < 2:
        raise CliError("phi needs at least 2 points")
    points = [k / (n - 1) for k in range(n)]
    rep = special.phi_monotone_check(e.q, points, steps=cfg["steps"])
    results = {
        "monotone": rep.to_json_dict()
        if hasattr(rep, "to_json_dict")
        else {
            "status": rep.status,
            "q": str(rep.q),
            "steps": rep.steps,
            "points": list(rep.points),
            "enclosures": [[iv.lo, iv.hi] for iv in rep.enclosures],
            "margins": list(rep.margins),
        }
    }
    rows = [
        SummaryRow.from_interval(f"phi({t:g})", iv)
        for t, iv in zip(rep.points, rep.enclosures)
    ]
    rows.append(SummaryRow.from_scalar("certified", float(rep.certified),
                                       rep.status))
    fig = report.fig_band(
        list(rep.points),
        [iv.lo for iv in rep.enclosures],
        [iv.hi for iv in rep.enclosures],
        f"phi on [0,1], q={e.q} ({rep.status})",
        "t",
        "phi(t)",
    )
    _print(f"phi d={e.d} q={e.q}: {rep.status} over {n} points")
    return (0 if rep.certified else 1), results, rows, [], fig


def _cmd_tail(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    T, R = cfg["t_max"], cfg["r_max"]
    full = quad.tail_bound_J(e, T, R)
    corner = quad.tail_bound_corner(e, T, R)
    results = {
        "T": T,
        "R": R,
        "tail_full_cover": full,
        "tail_corner": corner,
    }
    rows = [
        SummaryRow.from_scalar("tail_full_cover", full, f"T={T:g}, R={R:g}"),
        SummaryRow.from_scalar("tail_corner", corner, f"T={T:g}, R={R:g}"),
    ]
    sweep = [T * (1.25**k) for k in range(12)]
    fig = report.fig_decay(
        sweep,
        [quad.tail_bound_J(e, t, R) for t in sweep],
        f"tail bound vs T at R={R:g}, d={e.d}",
        "T",
        "bound",
        extra=(sweep, [quad.tail_bound_corner(e, t, R) for t in sweep],
               "corner region only"),
    )
    _print(f"tail d={e.d} T={T:g} R={R:g}: full={full:.6g} corner={corner:.6g}")
    return 0, results, rows, [_TAIL_NOTE], fig


def _cmd_symmetry_check(cfg: dict):
    rep = symmetry.run_property_suite(seed=cfg["seed"], cases=cfg["cases"])
    results = {"suite": rep.to_json_dict()}
    rows = [
        SummaryRow.from_scalar(r.name, r.max_error,
                               f"tol {r.tolerance:g}, cases {r.cases}")
        for r in rep.rows
    ]
    fig = report.fig_error_bars(
        [r.name for r in rep.rows],
        [r.max_error for r in rep.rows],
        [r.tolerance for r in rep.rows],
        f"symmetry property suite (seed {cfg['seed']})",
    )
    for r in rep.rows:
        _print(
            f"  {r.name:24s} cases={r.cases:4d} max_err={r.max_error:.3e} "
            f"tol={r.tolerance:.0e} {'ok' if r.passed else 'FAIL'}"
        )
    _print(f"symmetry check: {'passed' if rep.passed else 'FAILED'}")
    return (0 if rep.passed else 1), results, rows, [], fig


def _cmd_equidistribution(cfg: dict):
    e = Exponents.stein_tomas(cfg["dim"])
    try:
        etas = sorted(float(v) for v in str(cfg["eta"]).split(","))
    except ValueError as exc:
        raise CliError(f"bad eta list {cfg['eta']!r}") from exc
    if len(etas) < 2 or etas[0] <= 0:
        raise CliError("need at least two positive eta values")
    g = symmetry.GeneralizedGaussian.standard(e.d)
    gaps = {}
    for eta in etas:
        vec = (eta,) + (0.0,) * (e.d - 1)
        gaps[eta] = strichartz.equidistribution_gap(g, vec, e)
        _print(f"  gap(|eta|={eta:g}) = {gaps[eta]:.6g}")
    trending = gaps[etas[-1]] < gaps[etas[0]]
    results = {
        "eta": etas,
        "gaps": [gaps[v] for v in etas],
        "trend_ok": trending,
    }
    rows = [
        SummaryRow.from_scalar(f"gap(eta={v:g})", gaps[v]) for v in etas
    ]
    rows.append(SummaryRow.from_scalar("trend_ok", float(trending)))
    fig = report.fig_decay(
        etas,
        [gaps[v] for v in etas],
        f"oscillation-average gap vs |eta|, d={e.d}",
        "|eta|",
        "gap",
    )
    _print(f"equidistribution: trend_ok={trending}")
    return (0 if trending else 1), results, rows, [], fig


# ---------------------------------------------------------------------------
# Parser assembly and dispatch
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, *, dim_default=None) -> None:
    sub.add_argument("--dim", type=int, default=dim_default,
                     help="spatial dimension (1 or 2)")
    sub.add_argument("--config", help="key = value config file")
    sub.add_argument("--out-dir", dest="out_dir",
                     help="report directory (or PARACERT_OUT_DIR)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paracert",
        description="Certified enclosures and property suites for the "
        "two-paraboloid moment computation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="certify J(0) != J(pi/2)")
    _add_common(p)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--r-max", dest="r_max", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--adaptive", action="store_const", const=True,
                   default=None, help="refine by bisection after the "
                   "uniform pass")

    p = subs.add_parser("j", help="enclose J(theta) on a box")
    _add_common(p)
    p.add_argument("--theta", help='phase, e.g. "0", "pi/2", "0.7"')
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--r-max", dest="r_max", type=float)
    p.add_argument("--step", type=float)

    p = subs.add_parser("mean-check",
                        help="theta-average of J against kappa * M")
    _add_common(p)
    p.add_argument("--theta-steps", dest="theta_steps", type=int)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--r-max", dest="r_max", type=float)
    p.add_argument("--step", type=float)

    p = subs.add_parser("constants", help="certified constant enclosures")
    _add_common(p)

    p = subs.add_parser("phi", help="certify phi is increasing on [0,1]")
    _add_common(p)
    p.add_argument("--points", type=int)
    p.add_argument("--steps", type=int)

    p = subs.add_parser("tail", help="certified tail bounds at (T, R)")
    _add_common(p)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--r-max", dest="r_max", type=float)

    p = subs.add_parser("symmetry", help="symmetry-algebra tools")
    symsubs = p.add_subparsers(dest="symmetry_command", required=True)
    pc = symsubs.add_parser("check", help="run the randomized property suite")
    _add_common(pc)
    pc.add_argument("--seed", type=int)
    pc.add_argument("--cases", type=int)

    p = subs.add_parser("equidistribution",
                        help="oscillation-average gap demo (float mode)")
    _add_common(p)
    p.add_argument("--eta", help="comma-separated |eta| values")

    return parser


_DEFAULTS_STATIC = {
    "verify": {"dim": 1, "adaptive": False},
    "j": {"dim": 1, "theta": "0"},
    "mean-check": {"dim": 1, "theta_steps": 16},
    "constants": {"dim": 1},
    "phi": {"dim": 1, "points": 9, "steps": 4096},
    "tail": {"dim": 1, "t_max": 50.0, "r_max": 5.0},
    "symmetry check": {"dim": 1, "seed": 0, "cases": 100},
    "equidistribution": {"dim": 1, "eta": "2,8,32"},
}

_HANDLERS = {
    "verify": _cmd_verify,
    "j": _cmd_j,
    "mean-check": _cmd_mean_check,
    "constants": _cmd_constants,
    "phi": _cmd_phi,
    "tail": _cmd_tail,
    "symmetry check": _cmd_symmetry_check,
    "equidistribution": _cmd_equidistribution,
}


def _command_key(args: argparse.Namespace) -> str:
    if args.command == "symmetry":
        return f"symmetry {args.symmetry_command}"
    return args.command


def _defaults_for(key: str, dim: int) -> dict:
    base = dict(_DEFAULTS_STATIC[key])
    if key in ("verify", "j", "mean-check"):
        grids = _dim_defaults(dim)
        if key == "mean-check":
            grids["step"] = 0.2 if dim == 1 else 0.1
        base.update(grids)
    return base


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    started = time.perf_counter()
    try:
        config = load_config(args.config) if getattr(args, "config", None) else {}
        key = _command_key(args)
        dim = args.dim if getattr(args, "dim", None) is not None else int(
            config.get("dim", _DEFAULTS_STATIC[key]["dim"])
        )
        if dim not in (1, 2):
            raise CliError(f"dim must be 1 or 2, got {dim}")
        cfg = _resolve(args, config, _defaults_for(key, dim))
        cfg["dim"] = dim
        out_dir = _out_dir(args, config)

        code, results, rows, notes, fig = _HANDLERS[key](cfg)

        wall_ms = (time.perf_counter() - started) * 1e3
        payload = report.build_report(
            command=key,
            config={**{k: v for k, v in sorted(cfg.items())}, "out_dir": out_dir},
            results=results,
            notes=notes,
            wall_ms=wall_ms,
        )
        basename = key.replace(" ", "_").replace("-", "_") + f"_d{dim}"
        paths = report.write_files(payload, rows, fig, out_dir, basename)
        _print(f"report: {paths['json']}")
        return code
    except (CliError, special.UnsupportedArgument, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
