"""Command-line front end: ``python -m randcayley <command> ...``.

Exit status is 0 on success, 1 when a verification suite fails and 2 for
malformed input or capacity errors.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import re
import sys
from dataclasses import asdict

from . import __version__
from .coverage import CoverageReport, coverage_report, find_zero_relation, hit_counts
from .diameter import UNREACHABLE, distance_profile
from .harness import (SweepConfig, bound_checks, group_cells, run_trials, scaled_distribution,
                      tail_estimates)
from .model import CapacityError, GeneratorSet, GroupSpec, Mode, RandomSource, sample_generators
from .verify import DEFAULT_SEED, SUITES, run_suite

TRIALS_HEADER = ("trial_index,q,k,mode,seed,gens,diameter,scaled_diameter,"
                 "relation_fired,coverage_count,L_used")
TIMESTAMP_KEY = "generated_at"


class UsageError(Exception):
    pass


def fmt_float(x: float) -> str:
    return format(x, ".17g")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def _pairs(text: str) -> tuple[tuple[float, float], ...]:
    out = []
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            c, d = item.split(":")
            out.append((float(c), float(d)))
        except ValueError:
            raise UsageError(f"lb_pairs entries look like C:D, got {item!r}") from None
    return tuple(out)


_CONFIG_KEYS = {
    "q_list": ("q_list", _int_list),
    "k_list": ("k_list", _int_list),
    "modes": ("modes", lambda s: tuple(Mode.parse(m) for m in s.split(",") if m.strip())),
    "trials": ("trials", int),
    "c_grid": ("c_grid", _float_list),
    "l_probes": ("l_probes", _float_list),
    "lb_pairs": ("lb_pairs", _pairs),
    "master_seed": ("master_seed", int),
    "budget": ("budget", int),
    "relation_budget": ("relation_budget", int),
    "threads": ("threads", int),
    "nonzero": ("nonzero", _bool),
    "distinct": ("distinct", _bool),
    "theorem_checks": ("theorem_checks", _bool),
}


def parse_config(text: str) -> SweepConfig:
    """Flat ``key=value`` lines; blank lines and ``#`` comments are ignored."""
    kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        name, conv = _CONFIG_KEYS[key]
        try:
            kwargs[name] = conv(value)
        except ValueError as exc:
            raise UsageError(f"config line {lineno}: {exc}") from None
    for required in ("q_list", "k_list"):
        if required not in kwargs:
            raise UsageError(f"config is missing {required}")
    try:
        return SweepConfig(**kwargs)
    except (ValueError, CapacityError) as exc:
        raise UsageError(f"invalid config: {exc}") from None


def config_echo(config: SweepConfig) -> dict:
    d = asdict(config)
    d["modes"] = [m.value for m in config.modes]
    d["c_grid"] = [float(c) for c in config.c_grid]
    d["l_probes"] = [float(c) for c in config.l_probes]
    if config.lb_pairs is not None:
        d["lb_pairs"] = [[float(c), float(x)] for c, x in config.lb_pairs]
    return d


def trials_csv(records) -> str:
    lines = [TRIALS_HEADER]
    for r in records:
        if r.error is not None:
            diam, scaled = "error", ""
        elif r.diameter is None:
            diam, scaled = "unreachable", ""
        else:
            diam, scaled = str(r.diameter), fmt_float(r.scaled_diameter)
        lines.append(",".join([
            str(r.trial_index), str(r.q), str(r.k), r.mode.value, str(r.seed),
            "+".join(map(str, r.gens)), diam, scaled,
            "+".join("1" if f else "0" for f in r.relation_fired),
            "+".join(map(str, r.coverage_count)),
            "+".join(map(str, r.L_used)),
        ]))
    return "\n".join(lines) + "\n"


def build_summary(config: SweepConfig, records) -> dict:
    cells = []
    for (q, k, mode), recs in group_cells(records).items():
        errors = [{"trial_index": r.trial_index, "error": r.error} for r in recs if r.error]
        unreachable = sum(1 for r in recs if r.error is None and r.diameter is None)
        cell = {"q": q, "k": k, "mode": mode.value, "trials": len(recs),
                "finite": sum(1 for r in recs if r.diameter is not None),
                "unreachable": unreachable, "errors": errors}
        try:
            cell["quantiles"] = scaled_distribution(recs)
        except ValueError as exc:
            cell["quantiles"] = {"skipped": str(exc)}
        try:
            cell["tails"] = [t.as_dict() for t in tail_estimates(recs, config.c_grid)]
        except ValueError as exc:
            cell["tails"] = {"skipped": str(exc)}
        if config.theorem_checks and k >= 2 and cell["finite"]:
            checks = bound_checks(recs, config.c_grid, config.pairs_for(k))
            cell["checks"] = checks.as_dict()
            cell["violations"] = {
                "zero_relation_implication": sum(e["violations"] for e in checks.lemma),
                "counting_bound": checks.counting_bound_violations,
            }
        else:
            cell["checks"] = None
        cells.append(cell)
    return {"tool": "randcayley", "version": __version__, "config": config_echo(config),
            "cells": cells, TIMESTAMP_KEY: _dt.datetime.now(_dt.timezone.utc).isoformat()}


def dumps_json(obj) -> str:
    """JSON with every float printed to 17 significant digits."""
    def encode(o):
        if isinstance(o, float):
            return "\x00" + fmt_float(o) + "\x00"
        if isinstance(o, dict):
            return {k: encode(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [encode(v) for v in o]
        return o

    text = json.dumps(encode(obj), indent=2)
    return re.sub(r'"\\u0000([^"\\]*)\\u0000"', r"\1", text) + "\n"


def _group(q: int) -> GroupSpec:
    try:
        return GroupSpec(q)
    except (ValueError, CapacityError) as exc:
        raise UsageError(str(exc)) from None


def _gens(text: str, mode: str, group: GroupSpec) -> GeneratorSet:
    gens = GeneratorSet(_int_list(text), Mode.parse(mode))
    try:
        gens.validate(group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return gens


def cmd_diameter(args, out) -> int:
    group = _group(args.q)
    gens = _gens(args.gens, args.mode, group)
    prof = distance_profile(group, gens)
    print("unreachable" if prof.diameter is None else prof.diameter, file=out)
    if args.profile:
        with open(args.profile, "w", newline="\n") as fh:
            fh.write("x,distance\n")
            for x, d in enumerate(prof.distances.tolist()):
                fh.write(f"{x},{'unreachable' if d == UNREACHABLE else d}\n")
    return 0


def cmd_sample(args, out) -> int:
    group = _group(args.q)
    try:
        rng = RandomSource(args.seed, args.stream)
        gens = sample_generators(group, args.k, args.mode, rng, nonzero=args.nonzero, distinct=args.distinct)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"q={group.q} k={gens.k} mode={gens.mode.value} gens={','.join(map(str, gens.gens))}", file=out)
    return 0


def cmd_coverage(args, out) -> int:
    group = _group(args.q)
    gens = _gens(args.gens, args.mode, group)
    if args.L < 0:
        raise UsageError("--L must be >= 0")
    if args.hits and gens.mode is not Mode.DIRECTED:
        raise UsageError("--hits is only defined in directed mode")
    rep: CoverageReport = coverage_report(group, gens, args.L)
    print(f"L={rep.L} B_L={rep.covered_count} A_L={'true' if rep.full else 'false'}", file=out)
    if args.hits:
        table = hit_counts(group, gens, args.L)
        print("x,count", file=out)
        for x, c in enumerate(table.counts.tolist()):
            print(f"{x},{c}", file=out)
    return 0


def cmd_relation(args, out) -> int:
    group = _group(args.q)
    gens = _gens(args.gens, "directed", group)
    if args.L < 0:
        raise UsageError("--L must be >= 0")
    w = find_zero_relation(group, gens, args.L)
    print("none" if w is None else str(w), file=out)
    return 0


def cmd_sweep(args, out) -> int:
    try:
        with open(args.config) as fh:
            config = parse_config(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    threads = config.threads if args.threads is None else args.threads
    if threads < 0:
        raise UsageError("--threads must be >= 0")
    records = run_trials(config, threads=threads)
    csv_text = trials_csv(records)
    json_text = dumps_json(build_summary(config, records))
    with open(args.out, "w", newline="\n") as fh:
        fh.write(csv_text)
    with open(args.summary, "w", newline="\n") as fh:
        fh.write(json_text)
    print(f"{len(records)} trials -> {args.out}, {args.summary}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    checks = run_suite(args.suite, args.seed)
    for c in checks:
        print(c.line(), file=out)
    ok = all(c.passed for c in checks)
    print(f"suite {args.suite}: {'PASS' if ok else 'FAIL'}", file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="randcayley", description="Random Cayley graphs of Z_q.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    modes = [m.value for m in Mode]

    s = sub.add_parser("diameter", help="exact diameter for given generators")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--gens", required=True, help="comma-separated residues")
    s.add_argument("--mode", choices=modes, default="directed")
    s.add_argument("--profile", help="write per-vertex distances as CSV")
    s.set_defaults(func=cmd_diameter)

    s = sub.add_parser("sample", help="draw a seeded generator set")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", choices=modes, default="directed")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--stream", type=int, default=0)
    s.add_argument("--nonzero", action="store_true")
    s.add_argument("--distinct", action="store_true")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("coverage", help="bounded-exponent coverage set T_L")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--gens", required=True)
    s.add_argument("--L", type=int, required=True)
    s.add_argument("--mode", choices=modes, default="directed")
    s.add_argument("--hits", action="store_true", help="also print the hit-count table")
    s.set_defaults(func=cmd_coverage)

    s = sub.add_parser("relation", help="smallest zero relation in {0..L}^k")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--gens", required=True)
    s.add_argument("--L", type=int, required=True)
    s.set_defaults(func=cmd_relation)

    s = sub.add_parser("sweep", help="Monte Carlo sweep from a key=value config")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True, help="trials CSV path")
    s.add_argument("--summary", required=True, help="summary JSON path")
    s.add_argument("--threads", type=int, default=None, help="0 = all cores")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, CapacityError, ValueError) as exc:
        print(f"randcayley {args.command}: error: {exc}", file=sys.stderr)
        return 2
