"""Command-line front end.

    quivercount <command> --config job.toml [--out report.json] [--jobs N] [--twist neg-g-f]

``run`` executes the commands listed in the config; every other subcommand
runs just itself.  The exit status is 0 iff every computation and every
requested verification succeeded.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Optional, Sequence

from .arith import NotAPolynomialError, QPoly, eval_prime_power
from .config import COMMANDS, JobConfig, load_config, parse_config
from .moduli import (
    CountJob,
    a_ss,
    a_stable,
    kac_polynomial,
    positivity_scan,
    verify_exp_identity,
    verify_form_equality,
)
from .oracle.classes import census
from .oracle.fields import get_field
from .oracle.reps import OracleTooLarge
from .quiver import ConfigError, DimVector, dim_vectors_below
from .series import TwistConvention

log = logging.getLogger("quivercount")

SCHEMA = 1
PER_TARGET = ("rss", "ass", "astable", "kac", "verify-oracle")


def _poly(p: QPoly, latex: bool) -> dict:
    out = {"coeffs": p.to_json(), "pretty": str(p)}
    if latex:
        out["latex"] = p.latex()
    return out


def _check(name: str, passed: bool, target: Optional[DimVector] = None, **detail) -> dict:
    out = {"check": name, "passed": bool(passed)}
    if target is not None:
        out["target"] = list(target)
    out.update(detail)
    return out


def _target_report(cfg: JobConfig, job: CountJob, alpha: DimVector, commands: Sequence[str]) -> dict:
    """Everything computed for one target; failures are recorded, not raised."""
    latex = cfg.output.latex
    out: dict = {"alpha": list(alpha)}
    checks: list[dict] = []
    values: dict[str, QPoly] = {}

    def attempt(name: str, fn):
        try:
            values[name] = fn()
            out[name] = _poly(values[name], latex)
        except (NotAPolynomialError, OracleTooLarge, ValueError) as exc:
            out[name] = {"error": str(exc)}
            checks.append(_check(f"compute:{name}", False, alpha, error=str(exc)))

    if "rss" in commands or "verify-oracle" in commands:
        attempt("rss", lambda: job.ctx.rss(alpha))
    if "ass" in commands or "verify-oracle" in commands:
        attempt("ass", lambda: a_ss(job, alpha))
    if "astable" in commands:
        attempt("astable", lambda: a_stable(job, alpha, cfg.twist_convention))
    if "kac" in commands:
        attempt("kac", lambda: kac_polynomial(cfg.quiver, alpha, cfg.box))

    if "verify-oracle" in commands:
        oracle = {}
        for q0 in cfg.oracle_fields:
            try:
                c = census(cfg.quiver, alpha, get_field(q0), cfg.theta, cfg.mu, cfg.caps)
            except OracleTooLarge as exc:
                oracle[str(q0)] = {"error": str(exc)}
                checks.append(_check("oracle", False, alpha, field=q0, error=str(exc)))
                continue
            oracle[str(q0)] = c.to_json()
            checks.append(_check("oracle:burnside", c.burnside_ok, alpha, field=q0))
            pairs = [
                ("rss", c.semistable_reps),
                ("ass", c.classes["absolutely_indecomposable_semistable"]),
                ("astable", c.classes["absolutely_stable"]),
            ]
            for name, count in pairs:
                if name not in values:
                    continue
                predicted = eval_prime_power(values[name], q0)
                checks.append(_check(f"oracle:{name}", predicted == count, alpha, field=q0,
                                     predicted=str(predicted), counted=count))
        out["oracle"] = oracle
    return {"target": out, "checks": checks}


def _worker(cfg_json: dict, output_latex: bool, alpha: list, commands: list) -> dict:
    cfg = parse_config(cfg_json)
    cfg.output.latex = output_latex
    return _target_report(cfg, cfg.job(), tuple(alpha), commands)


def _identities(cfg: JobConfig, job: CountJob) -> tuple[dict, list[dict]]:
    forms = verify_form_equality(job)
    expid = verify_exp_identity(job)
    checks = [_check("identity:forms", forms.equal), _check("identity:exp", expid.equal)]
    hn = []
    for alpha in cfg.targets:
        d, r = job.ctx.rss_direct(alpha), job.ctx.rss_recursive(alpha)
        hn.append({"alpha": list(alpha), "equal": d == r})
        checks.append(_check("identity:hn", d == r, alpha))
    return {"forms": forms.to_json(), "exp": expid.to_json(), "hn_agreement": hn}, checks


def run(cfg: JobConfig, commands: Sequence[str], jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    timing: dict[str, float] = {}
    job = cfg.job()
    checks: list[dict] = []
    report: dict = {"schema": SCHEMA, "config": cfg.to_json(), "commands": list(commands)}

    per_target = [c for c in commands if c in PER_TARGET]
    if per_target and cfg.targets:
        t = time.perf_counter()
        if jobs > 1 and len(cfg.targets) > 1:
            cfg_json = cfg.to_json()
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_worker, cfg_json, cfg.output.latex, list(a), per_target) for a in cfg.targets]
                parts = [f.result() for f in futures]
        else:
            parts = [_target_report(cfg, job, a, per_target) for a in cfg.targets]
        report["targets"] = [p["target"] for p in parts]
        for p in parts:
            checks.extend(p["checks"])
        timing["targets"] = time.perf_counter() - t

    if "verify-identities" in commands:
        t = time.perf_counter()
        report["identities"], more = _identities(cfg, job)
        checks.extend(more)
        timing["identities"] = time.perf_counter() - t

    if "scan" in commands:
        t = time.perf_counter()
        alphas = [a for a in dim_vectors_below(cfg.box) if any(a) and job.in_delta(a)]
        scan = positivity_scan([job], [alphas], ["job"])
        report["scan"] = scan.to_json()
        report["scan_table"] = scan.table()
        timing["scan"] = time.perf_counter() - t

    report["checks"] = checks
    report["ok"] = all(c["passed"] for c in checks)
    timing["total"] = time.perf_counter() - t0
    # the only non-deterministic part of the report
    report["run_info"] = {
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "timing_seconds": {k: round(v, 4) for k, v in timing.items()},
    }
    return report


def summary(report: dict) -> str:
    lines = []
    for t in report.get("targets", []):
        vals = [f"{k}={t[k].get('pretty', 'ERROR')}" for k in ("rss", "ass", "astable", "kac") if k in t]
        lines.append(f"{tuple(t['alpha'])}: " + ", ".join(vals))
    if "scan_table" in report:
        lines.append(report["scan_table"])
    failed = [c for c in report["checks"] if not c["passed"]]
    lines.append(f"checks: {len(report['checks']) - len(failed)}/{len(report['checks'])} passed")
    for c in failed:
        lines.append(f"FAILED {c['check']} {c.get('target', '')} {c.get('error', '')}".rstrip())
    return "\n".join(lines)


def _jobs_default() -> int:
    raw = os.environ.get("QUIVER_COUNT_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quivercount", description="Counting semistable quiver representations over finite fields.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run",) + COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, metavar="PATH")
        p.add_argument("--out", metavar="PATH", help="write the JSON report here (default: stdout)")
        p.add_argument("--jobs", type=int, default=None, metavar="N", help="worker processes (env QUIVER_COUNT_JOBS)")
        p.add_argument("--twist", choices=[c.value for c in TwistConvention], default=None)
        p.add_argument("--latex", action="store_true", help="add LaTeX strings for polynomials")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    if args.twist:
        cfg = replace(cfg, twist_convention=TwistConvention(args.twist))
    if args.latex:
        cfg.output.latex = True
    commands = cfg.commands if args.command == "run" else [args.command]
    if not commands:
        print("error: invalid config: config.commands: nothing to run", file=sys.stderr)
        return 2
    jobs = args.jobs if args.jobs is not None else _jobs_default()
    if jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    log.info("running %s on %d target(s) with %d worker(s)", ",".join(commands), len(cfg.targets), jobs)

    report = run(cfg, commands, jobs)
    text = json.dumps(report, indent=2) + "\n"
    out_path = args.out or cfg.output.json_path
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary(report))
    else:
        sys.stdout.write(text)
        print(summary(report), file=sys.stderr)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
