"""Command-line interface.

All times are in units of 1/omega_c (the default omega_c = 1 makes figure
commands match the dimensionless axes).  Exit codes: 0 success, 2 argument
or domain error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys

from ._version import __version__
from .coherence import initial_coherence, l1_coherence, rel_entropy_coherence, stationary_coherence
from .dephasing import (
    BathSpec,
    CorrelationSpec,
    ModelParams,
    QubitSpec,
    dephasing_factor,
    reduced_state,
)
from .errors import ConvergenceError, DomainError
from .experiments import (
    AxisSpec,
    FIGURE_IDS,
    figure_dataset,
    optimize_qsl,
    optimize_stationary_mu,
    sweep,
)
from .io import format_cell, load_config, model_to_config, write_csv, write_manifest
from .mathcore import Bracket, QuadratureSpec
from .qsl import MODE_PAPER_LITERAL, MODE_RELATIVE_PURITY, TrappingSpec, qsl_ratio, trapping_time

_MODE_ALIASES = {
    "paper": MODE_PAPER_LITERAL,
    "paper_literal": MODE_PAPER_LITERAL,
    "purity": MODE_RELATIVE_PURITY,
    "relative_purity": MODE_RELATIVE_PURITY,
}

_DEFAULTS = {
    "alpha": 0.2,
    "mu": 1.46,
    "wc": 1.0,
    "lam": 0.0,
    "upsilon": 1.5,
    "w0": 0.0,
    "ce_cg": (1.0 / math.sqrt(2.0), 0.0, 1.0 / math.sqrt(2.0), 0.0),
}


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--config", help="JSON config file; explicit flags override it")
    g.add_argument("--alpha", type=float, help="bath coupling (default 0.2)")
    g.add_argument("--mu", type=float, help="Ohmicity exponent (default 1.46)")
    g.add_argument("--wc", type=float, help="cutoff frequency (default 1)")
    g.add_argument("--lambda", dest="lam", type=float, help="correlation weight (default 0)")
    g.add_argument("--upsilon", type=float, help="correlation exponent (default 1.5)")
    g.add_argument("--w0", type=float, help="qubit splitting (default 0)")
    g.add_argument(
        "--ce-cg",
        dest="ce_cg",
        help="superposition amplitudes as CE_RE,CE_IM,CG_RE,CG_IM (default equal weights)",
    )
    t = p.add_argument_group("trapping/quadrature")
    t.add_argument("--trap-rel-tol", type=float, help="trapping band relative tolerance (1e-3)")
    t.add_argument("--trap-abs-tol", type=float, help="trapping band absolute tolerance (1e-6)")
    t.add_argument("--trap-t-max", type=float, help="trapping search horizon (50/wc)")
    t.add_argument("--trap-grid-n", type=int, help="trapping grid points (5000)")
    t.add_argument("--quad-abs-tol", type=float, help="quadrature tolerance (1e-9)")
    t.add_argument("--quad-max-depth", type=int, help="quadrature recursion depth (40)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cohtrap",
        description="Pure-dephasing coherence trapping and quantum-speed-limit calculator "
        "(times in 1/omega_c)",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="dephasing factor and coherences at one time")
    sp.add_argument("--t", type=float, required=True, help="evaluation time, >= 0")
    _add_model_flags(sp)

    sp = sub.add_parser("stationary", help="stationary coherence (t -> infinity)")
    _add_model_flags(sp)

    sp = sub.add_parser("initial", help="initial coherence (t = 0)")
    _add_model_flags(sp)

    sp = sub.add_parser("tc", help="coherence trapping time")
    _add_model_flags(sp)

    sp = sub.add_parser("qsl", help="QSL time ratio tau_qsl / t_c")
    sp.add_argument("--mode", choices=sorted(_MODE_ALIASES), default=None)
    _add_model_flags(sp)

    sp = sub.add_parser("sweep", help="grid sweep written as CSV + manifest")
    sp.add_argument(
        "--axis",
        action="append",
        required=True,
        metavar="NAME=LO:HI:N",
        help="sweep axis (1 or 2 of alpha/mu/lambda/upsilon/omega0)",
    )
    sp.add_argument("--outputs", default="stationary", help="comma list of stationary,qsl")
    sp.add_argument("--mode", choices=sorted(_MODE_ALIASES), default=None)
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--threads", type=int, default=1, help="worker processes (0 = auto)")
    _add_model_flags(sp)

    sp = sub.add_parser("optimize", help="optimize stationary coherence or QSL ratio")
    sp.add_argument("--target", choices=("stationary", "qsl"), required=True)
    sp.add_argument("--vars", choices=("mu", "upsilon", "joint"), default="mu")
    sp.add_argument(
        "--box",
        help="search box LO:HI, or ULO:UHI,MLO:MHI for joint (defaults per target)",
    )
    sp.add_argument("--mode", choices=sorted(_MODE_ALIASES), default=None)
    _add_model_flags(sp)

    sp = sub.add_parser("figure", help="regenerate a canonical figure dataset")
    sp.add_argument("figure_id", choices=FIGURE_IDS)
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--grid-n", type=int, help="heatmap grid points per side (200)")
    sp.add_argument("--line-n", type=int, help="points per curve (200)")
    sp.add_argument("--threads", type=int, default=1, help="worker processes (0 = auto)")
    _add_model_flags(sp)

    return p


def _parse_ce_cg(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise DomainError("--ce-cg expects four comma-separated floats CE_RE,CE_IM,CG_RE,CG_IM")
    try:
        ce_re, ce_im, cg_re, cg_im = (float(v) for v in parts)
    except ValueError as exc:
        raise DomainError(f"--ce-cg: {exc}") from exc
    return complex(ce_re, ce_im), complex(cg_re, cg_im)


def _resolve(args: argparse.Namespace):
    """Defaults < config file < explicit flags, then build the model objects."""
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    model_cfg = cfg.get("model", {})

    def pick(flag, cfg_key, default):
        v = getattr(args, flag, None)
        if v is not None:
            return v
        return model_cfg.get(cfg_key, default)

    alpha = float(pick("alpha", "alpha", _DEFAULTS["alpha"]))
    mu = float(pick("mu", "mu", _DEFAULTS["mu"]))
    wc = float(pick("wc", "omega_c", _DEFAULTS["wc"]))
    lam = float(pick("lam", "lambda", _DEFAULTS["lam"]))
    upsilon = float(pick("upsilon", "upsilon", _DEFAULTS["upsilon"]))
    w0 = float(pick("w0", "omega0", _DEFAULTS["w0"]))
    if getattr(args, "ce_cg", None) is not None:
        ce, cg = _parse_ce_cg(args.ce_cg)
    elif "ce" in model_cfg or "cg" in model_cfg:
        ce_l = model_cfg.get("ce", [_DEFAULTS["ce_cg"][0], 0.0])
        cg_l = model_cfg.get("cg", [_DEFAULTS["ce_cg"][2], 0.0])
        ce, cg = complex(ce_l[0], ce_l[1]), complex(cg_l[0], cg_l[1])
    else:
        d = _DEFAULTS["ce_cg"]
        ce, cg = complex(d[0], d[1]), complex(d[2], d[3])

    params = ModelParams(
        bath=BathSpec(alpha=alpha, mu=mu, omega_c=wc),
        corr=CorrelationSpec(lam=lam, upsilon=upsilon),
        qubit=QubitSpec(omega0=w0, ce=ce, cg=cg),
    )

    tr_cfg = cfg.get("trapping", {})
    trapping = TrappingSpec(
        rel_tol=float(
            args.trap_rel_tol if args.trap_rel_tol is not None else tr_cfg.get("rel_tol", 1e-3)
        ),
        abs_tol=float(
            args.trap_abs_tol if args.trap_abs_tol is not None else tr_cfg.get("abs_tol", 1e-6)
        ),
        t_max=(
            args.trap_t_max
            if args.trap_t_max is not None
            else (None if tr_cfg.get("t_max") is None else float(tr_cfg["t_max"]))
        ),
        grid_n=int(
            args.trap_grid_n if args.trap_grid_n is not None else tr_cfg.get("grid_n", 5000)
        ),
    )
    q_cfg = cfg.get("quadrature", {})
    quad = QuadratureSpec(
        abs_tol=float(
            args.quad_abs_tol if args.quad_abs_tol is not None else q_cfg.get("abs_tol", 1e-9)
        ),
        max_depth=int(
            args.quad_max_depth
            if args.quad_max_depth is not None
            else q_cfg.get("max_depth", 40)
        ),
    )
    mode_flag = getattr(args, "mode", None)
    if mode_flag is not None:
        mode = _MODE_ALIASES[mode_flag]
    elif cfg.get("qsl_mode") in _MODE_ALIASES.values():
        mode = cfg["qsl_mode"]
    else:
        mode = MODE_PAPER_LITERAL
    return params, trapping, quad, mode


def _emit(pairs) -> None:
    for key, value in pairs:
        print(f"{key}={format_cell(value)}")


def _parse_axis(text: str) -> AxisSpec:
    try:
        name, rest = text.split("=", 1)
        lo_s, hi_s, n_s = rest.split(":")
        return AxisSpec(name=name.strip(), lo=float(lo_s), hi=float(hi_s), n=int(n_s))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad --axis {text!r}; expected NAME=LO:HI:N") from exc


def _parse_bracket(text: str) -> Bracket:
    lo_s, hi_s = text.split(":")
    return Bracket(float(lo_s), float(hi_s))


def _write_table(out_path: str, result, command: str, params, trapping, quad, mode) -> None:
    write_csv(out_path, result.columns, result.rows)
    manifest = dict(result.manifest)
    manifest["command"] = command
    manifest["config"] = model_to_config(params, trapping, quad, mode)
    base, _ = os.path.splitext(out_path)
    write_manifest(base + ".manifest.json", manifest)


def _run(args: argparse.Namespace) -> int:
    params, trapping, quad, mode = _resolve(args)

    if args.command == "eval":
        state = reduced_state(args.t, params)
        factor = complex(dephasing_factor(args.t, params))
        _emit(
            [
                ("t", float(args.t)),
                ("ups_re", factor.real),
                ("ups_im", factor.imag),
                ("ups_abs", abs(factor)),
                ("c_rel_entropy", rel_entropy_coherence(state)),
                ("c_l1", l1_coherence(state)),
            ]
        )
    elif args.command == "stationary":
        cv = stationary_coherence(params)
        _emit([("c_stationary", cv.rel_entropy), ("l1_stationary", cv.l1)])
    elif args.command == "initial":
        _emit([("c_initial", initial_coherence(params))])
    elif args.command == "tc":
        _emit([("t_c", trapping_time(params, trapping))])
    elif args.command == "qsl":
        res = qsl_ratio(params, trapping, mode, quad)
        _emit(
            [
                ("t_c", res.t_c),
                ("qsl_ratio", res.ratio),
                ("numerator", res.numerator),
                ("denominator", res.denominator),
                ("mode", res.mode),
            ]
        )
    elif args.command == "sweep":
        axes = [_parse_axis(a) for a in args.axis]
        outputs = tuple(s.strip() for s in args.outputs.split(",") if s.strip())
        result = sweep(
            params,
            axes,
            outputs,
            trapping=trapping,
            qsl_mode=mode,
            quad=quad,
            threads=args.threads,
        )
        _write_table(args.out, result, "sweep", params, trapping, quad, mode)
        _emit([("rows", len(result.rows)), ("out", args.out)])
    elif args.command == "optimize":
        if args.target == "stationary":
            if args.vars != "mu":
                raise DomainError("optimize --target stationary supports --vars mu only")
            bracket = _parse_bracket(args.box) if args.box else Bracket(0.1, 4.0)
            mu_star, c_star = optimize_stationary_mu(params, bracket)
            _emit([("mu_star", mu_star), ("c_star", c_star)])
        else:
            if args.vars == "joint":
                if args.box:
                    u_s, m_s = args.box.split(",")
                    box = (_parse_bracket(u_s), _parse_bracket(m_s))
                else:
                    box = (Bracket(0.5, 5.0), Bracket(0.5, 4.0))
            else:
                default = Bracket(0.5, 5.0) if args.vars == "upsilon" else Bracket(0.5, 4.0)
                box = _parse_bracket(args.box) if args.box else default
            opt = optimize_qsl(params, args.vars, box, mode=mode)
            pairs = [(f"{k}_star", v) for k, v in opt.arg.items()]
            pairs += [("qsl_min", opt.value), ("mode", opt.mode), ("omega0", opt.omega0)]
            _emit(pairs)
    elif args.command == "figure":
        result = figure_dataset(
            args.figure_id,
            out_dir=args.out,
            grid_n=args.grid_n,
            line_n=args.line_n,
            threads=args.threads,
        )
        _emit(
            [
                ("rows", len(result.rows)),
                ("csv", os.path.join(args.out, f"{args.figure_id}.csv")),
                ("manifest", os.path.join(args.out, f"{args.figure_id}.manifest.json")),
            ]
        )
    else:  # pragma: no cover - argparse enforces the choices
        raise DomainError(f"unknown command {args.command!r}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except DomainError as exc:
        print(f"cohtrap: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"cohtrap: error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"cohtrap: did not converge: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"cohtrap: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
