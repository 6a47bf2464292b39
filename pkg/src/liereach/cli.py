"""``liereach`` command line.

Exit codes: 0 success, 2 parse error (bad arguments, unreadable or malformed
config, unknown preset), 3 validation error (Jacobi, antisymmetry,
skewness), 4 runtime failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import AlgebraError, AlgebraValidationError
from .analysis import Caps, classify
from .closure import build_C, lie_closure, pbw_coverage
from .config import ConfigError, ConfigParseError, SystemConfig, dump_config, load_config
from .dynamics import (ControlSchedule, PreconditionError, attainability_experiment,
                       fitted_loglog_slope, propagate, reach_probe, system_matrices,
                       trotter_commutator_error, trotter_sum_error)
from .envelope import order_of
from .presets import PRESET_NAMES, UnknownPresetError
from .rep import RepError, RepSpec
from .report import build_report, closure_table, render_json, render_text
from .systems import SystemValidationError, build_preset, preset_info

__all__ = ["main", "run_command", "build_parser"]

TROTTER_NS = (64, 128, 256, 512, 1024)
COMMUTATOR_NS = (4, 16, 64, 256)
EPS_LIST = (1e-1, 1e-2, 1e-3, 1e-4)


class UsageError(Exception):
    exit_code = 2


# --- argument parsing ------------------------------------------------------------

def _common(p: argparse.ArgumentParser, cap=True, order=False) -> None:
    src = p.add_argument_group("system source (give exactly one)")
    src.add_argument("config", nargs="?", metavar="CONFIG",
                     help="path to a *.sysconfig file (JSON, schema v1)")
    src.add_argument("--preset", metavar="NAME",
                     help=f"built-in system: {', '.join(PRESET_NAMES)}")
    if cap:
        p.add_argument("--cap", type=int, metavar="N",
                       help="PBW order cap for closures (default: config value or 4)")
    if order:
        p.add_argument("--order", type=int, metavar="N",
                       help="coverage order n, counting monomials of order 1..n (default 3)")
    p.add_argument("--rep", metavar="SPEC",
                   help="override representation fields, e.g. 'K=60' or 'kind=su2-spin,K=3,j=1'")
    p.add_argument("--seed", type=int, default=42, metavar="N",
                   help="seed for every random choice (default 42); echoed in outputs")
    p.add_argument("--threads", type=int, default=1, metavar="N",
                   help="worker threads for closures and searches; outputs do not depend on it")
    p.add_argument("--out", metavar="DIR",
                   help="write artifacts into DIR instead of standard output")
    p.add_argument("--format", choices=("json", "text"), default="json",
                   help="output format for reports and tables (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liereach",
        description="Controllability analysis of quantum systems with Lie-algebraic symmetry.")
    parser.add_argument("--version", action="version", version=f"liereach {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("analyze", help="classify a system and emit a report",
                       description="Classify a system and emit report.json / report.txt.")
    _common(p, order=True)
    p.add_argument("--no-tables", action="store_true",
                   help="leave the closure basis tables out of the report")

    p = sub.add_parser("closure", help="print a closure basis table",
                       description="Basis of the generated Lie algebra A, B or C up to the cap.")
    _common(p)
    p.add_argument("--which", choices=("A", "B", "C"), default="A",
                   help="A: all Hamiltonians, B: controls only, C: ad_H0 images of B (default A)")

    p = sub.add_parser("coverage", help="PBW monomial coverage of a closure",
                       description="Fraction of PBW monomials of order 1..n spanned by a closure.")
    _common(p, order=True)
    p.add_argument("--which", choices=("A", "B", "C"), default="A",
                   help="closure to measure (default A)")

    p = sub.add_parser("simulate", help="propagate a piecewise-constant schedule",
                       description="Apply a schedule CSV (duration,u1,..) to the first basis state.")
    _common(p, cap=False)
    p.add_argument("--schedule", required=True, metavar="FILE",
                   help="CSV with header 'duration,u1,...,um'")
    p.add_argument("--target-level", type=int, default=0, metavar="K",
                   help="basis level whose population is reported as the fidelity (default 0)")

    p = sub.add_parser("experiment", help="numerical experiments emitting CSV",
                       description="trotter: sum-formula error vs n; commutator: group-commutator "
                                   "error vs n; attainability: deviation and eps*M*t bound vs eps; "
                                   "reach: best fidelity per random target.")
    p.add_argument("kind", choices=("trotter", "commutator", "attainability", "reach"),
                   help="which experiment to run")
    _common(p, cap=False)
    p.add_argument("--time", type=float, default=1.0, metavar="T",
                   help="flow time s (trotter, commutator) or t (attainability); default 1")
    p.add_argument("--targets", type=int, default=20, metavar="N",
                   help="number of random targets for 'reach' (default 20)")
    p.add_argument("--restarts", type=int, default=50, metavar="N",
                   help="restart budget per target for 'reach' (default 50)")
    p.add_argument("--segments", type=int, default=3, metavar="N",
                   help="schedule segments for 'reach' (default 3)")

    p = sub.add_parser("presets", help="list built-in systems",
                       description="List built-in systems, or export them as *.sysconfig files.")
    p.add_argument("--format", choices=("json", "text"), default="text",
                   help="output format (default text)")
    p.add_argument("--export", metavar="DIR", help="write NAME.sysconfig for every preset into DIR")
    return parser


# --- helpers ---------------------------------------------------------------------

def _parse_rep_override(spec: str) -> dict:
    out = {}
    for part in spec.split(","):
        if "=" not in part:
            raise UsageError(f"--rep expects key=value pairs, got {part!r}")
        k, v = (x.strip() for x in part.split("=", 1))
        if k == "kind":
            out[k] = v
        elif k in ("K", "margin", "margin_order"):
            try:
                out[k] = int(v)
            except ValueError:
                raise UsageError(f"--rep {k} must be an integer") from None
        elif k == "j":
            try:
                out[k] = Fraction(v)
            except ValueError:
                raise UsageError("--rep j must be a rational such as 1/2") from None
        else:
            raise UsageError(f"unknown --rep field {k!r}")
    return out


def _load(args) -> SystemConfig:
    if bool(args.config) == bool(args.preset):
        raise UsageError("give exactly one of CONFIG or --preset NAME")
    if args.preset:
        try:
            system, rep = build_preset(args.preset)
        except UnknownPresetError as exc:
            raise UsageError(exc.args[0]) from None
        cfg = SystemConfig(system, rep, Caps(), source=f"preset:{args.preset}")
    else:
        cfg = load_config(args.config)
    if getattr(args, "cap", None) is not None:
        try:
            cfg.caps = replace(cfg.caps, order_cap=args.cap)
        except ValueError as exc:
            raise UsageError(f"--cap: {exc}") from None
    if args.rep:
        fields = _parse_rep_override(args.rep)
        base = cfg.rep
        if base is None and "kind" not in fields:
            raise UsageError("system has no representation; --rep needs kind=...")
        kw = {"kind": base.kind, "K": base.K, "j": base.j, "margin": base.margin,
              "margin_order": base.margin_order} if base else {}
        kw.update(fields)
        cfg.rep = RepSpec(cfg.system.algebra, **kw)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    return cfg


def _need_rep(cfg) -> RepSpec:
    if cfg.rep is None:
        raise UsageError("this command needs a representation (config 'rep' block or --rep)")
    return cfg.rep


def _emit(args, name: str, text: str) -> None:
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_doc(args, stem: str, doc: dict) -> None:
    if args.out:
        _emit(args, f"{stem}.json", render_json(doc))
        _emit(args, f"{stem}.txt", render_text(doc))
    else:
        sys.stdout.write(render_json(doc) if args.format == "json" else render_text(doc))


def _closures(cfg, which: str, threads: int):
    system = cfg.system.specialized()
    alg, caps = system.algebra, cfg.caps
    hams = [H for H in system.hamiltonians if H]
    if which == "A":
        return system, lambda c: lie_closure(alg, hams, c, caps.iter_cap, threads)
    controls = [H for H in system.controls if H]
    if not controls:
        raise UsageError("system has no control Hamiltonians")
    if which == "B":
        return system, lambda c: lie_closure(alg, controls, c, caps.iter_cap, threads)

    def make_c(c):
        B = lie_closure(alg, controls, c, caps.iter_cap, threads)
        return build_C(alg, system.H0, B, caps.k_max if caps.k_max is not None else c, c,
                       caps.iter_cap, threads)
    return system, make_c


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for r in rows:
        lines.append(",".join(x if isinstance(x, str) else repr(float(x)) if isinstance(x, float)
                              else str(x) for x in r))
    return "\n".join(lines) + "\n"


# --- commands ----------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    cfg = _load(args)
    cap = cfg.caps.order_cap
    order = args.order if args.order is not None else min(3, cap)
    if not 1 <= order <= cap:
        raise UsageError(f"--order must be between 1 and the cap {cap}")
    verdict = classify(cfg.system, cfg.caps, cfg.rep, seed=args.seed, threads=args.threads,
                       coverage_order=order)
    report = build_report(cfg.system, verdict, cfg.caps, args.seed, order, __version__,
                          with_tables=not args.no_tables)
    _emit_doc(args, "report", report)
    return 0


def _cmd_closure(args) -> int:
    cfg = _load(args)
    system, make = _closures(cfg, args.which, args.threads)
    cap = cfg.caps.order_cap
    res = make(cap)
    gen_order = max(order_of(H) for H in system.hamiltonians if H)
    dims = {}
    for c in range(max(1, gen_order), cap + 1):
        dims[str(c)] = res.dim if c == cap else make(c).dim
    if res.finite_exact:
        note = f"closed exactly: a {res.dim}-dimensional Lie algebra, no terms above the cap"
    elif res.truncation_hit:
        note = (f"brackets produced terms above order {cap} that were discarded; "
                f"dimension by cap {json.dumps(dims)}; growth suggests elements of arbitrarily high order")
    else:
        note = "iteration cap reached before saturation"
    doc = {"system": system.name, "which": args.which, "algebra": system.algebra.name,
           "caps": cfg.caps.to_dict() | {"order_cap": cap}, **res.summary(),
           "dim_by_cap": dims, "growth_note": note, "table": closure_table(res)}
    _emit_doc(args, f"closure_{args.which}", doc)
    return 0


def _cmd_coverage(args) -> int:
    cfg = _load(args)
    system, make = _closures(cfg, args.which, args.threads)
    cap = cfg.caps.order_cap
    order = args.order if args.order is not None else min(3, cap)
    if not 1 <= order <= cap:
        raise UsageError(f"--order must be between 1 and the cap {cap}")
    res = make(cap)
    cov = pbw_coverage(res, order).to_dict(system.algebra.labels)
    doc = {"system": system.name, "which": args.which, "order_cap": cap, "dim": res.dim,
           "coverage": cov}
    _emit_doc(args, f"coverage_{args.which}", doc)
    return 0


def _cmd_simulate(args) -> int:
    cfg = _load(args)
    rep = _need_rep(cfg)
    try:
        text = Path(args.schedule).read_text(encoding="utf-8")
        sched = ControlSchedule.from_csv(text)
    except OSError as exc:
        raise ConfigParseError(f"cannot read schedule: {exc.strerror}") from None
    except (ValueError, IndexError) as exc:
        raise ConfigParseError(f"bad schedule: {exc}") from None
    if any(len(u) != cfg.system.m for _, u in sched.segments):
        raise ConfigParseError(f"schedule needs {cfg.system.m} amplitude columns")
    if not 0 <= args.target_level < rep.K:
        raise UsageError("--target-level outside the representation")
    psi0 = np.eye(rep.K, dtype=complex)[0]
    psi = propagate(cfg.system, rep, sched, psi0)
    fid = float(abs(psi[args.target_level]) ** 2)
    doc = {"system": cfg.system.name, "rep": rep.describe(), "duration": sched.total_duration,
           "target_level": args.target_level, "fidelity": fid,
           "final_state": [[float(z.real), float(z.imag)] for z in psi]}
    _emit_doc(args, "simulate", doc)
    return 0


def _pair(cfg, rep):
    H0m, Hms = system_matrices(cfg.system, rep)
    mats = [M for M in [H0m, *Hms] if np.linalg.norm(M) > 0]
    if len(mats) < 2:
        raise UsageError("experiment needs two nonzero Hamiltonians")
    return mats[0], mats[1]


def _cmd_experiment(args) -> int:
    cfg = _load(args)
    rep = _need_rep(cfg)
    kind = args.kind
    if kind in ("trotter", "commutator"):
        X, Y = _pair(cfg, rep)
        ns = TROTTER_NS if kind == "trotter" else COMMUTATOR_NS
        f = trotter_sum_error if kind == "trotter" else trotter_commutator_error
        errs = [f(X, Y, args.time, n) for n in ns]
        body = _csv(("n", "error"), zip(ns, errs))
        slope = fitted_loglog_slope(ns, errs)
        summary = f"# slope {slope:.6f}\n"
    elif kind == "attainability":
        H0m, Hms = system_matrices(cfg.system, rep)
        if not Hms:
            raise UsageError("attainability needs a control Hamiltonian")
        psi0 = np.eye(rep.K, dtype=complex)[0]
        res = attainability_experiment(H0m, Hms[0], args.time, EPS_LIST, psi0)
        body = _csv(("param", "error", "bound"), res.grid)
        summary = f"# slope {res.fitted_rate:.6f} M {res.notes['M']:.6f}\n"
    else:
        rng = np.random.default_rng(args.seed)
        rows = []
        budget = {"segments": args.segments, "restarts": args.restarts}
        for k in range(args.targets):
            v = rng.normal(size=rep.K) + 1j * rng.normal(size=rep.K)
            r = reach_probe(cfg.system, rep, v / np.linalg.norm(v), budget, seed=args.seed + k,
                            threads=args.threads)
            rows.append((k, r.fidelity, r.restarts_used))
        body = _csv(("param", "fidelity", "restarts"), rows)
        summary = f"# min fidelity {min(r[1] for r in rows):.6f}\n"
    name = f"experiment_{kind}.csv"
    if args.out:
        _emit(args, name, body)
    else:
        sys.stdout.write(body)
    sys.stderr.write(summary)
    return 0


def _cmd_presets(args) -> int:
    info = preset_info()
    if args.export:
        d = Path(args.export)
        d.mkdir(parents=True, exist_ok=True)
        for name in PRESET_NAMES:
            system, rep = build_preset(name)
            (d / f"{name}.sysconfig").write_text(dump_config(system, rep, Caps()), encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(json.dumps(info, indent=2) + "\n")
    else:
        for row in info:
            rep = row["rep"]
            sys.stdout.write(f"{row['name']:<12} {row['algebra']:<16} m={row['m']} "
                             f"{rep['kind']} K={rep['K']} j={rep['j']} target={row['target']}\n"
                             f"{'':<12} {row['description']}\n")
    return 0


COMMANDS = {"analyze": _cmd_analyze, "closure": _cmd_closure, "coverage": _cmd_coverage,
            "simulate": _cmd_simulate, "experiment": _cmd_experiment, "presets": _cmd_presets}


def run_command(argv) -> int:
    """Run one command; returns the exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        sys.stderr.write(f"liereach: {exc}\n")
        if getattr(exc, "witness", None) is not None:
            sys.stderr.write(f"liereach: witness {exc.witness}\n")
        return exc.exit_code
    except (AlgebraValidationError, SystemValidationError) as exc:
        sys.stderr.write(f"liereach: validation failed: {exc} (witness {exc.witness})\n")
        return 3
    except (AlgebraError, RepError, PreconditionError, ValueError, AssertionError, OSError) as exc:
        sys.stderr.write(f"liereach: {type(exc).__name__}: {exc}\n")
        return 4


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
