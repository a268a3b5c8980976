"""Command-line front end.

Exit status: 0 when the run concluded, 2 when it ended without conclusion,
1 on any error (including usage errors).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import experiments as ex
from .errors import LocalInvError
from .field import parse_int
from .lrs import EarlyPeriod, NoConclusion, Solved
from .oracle import exact_lc, orbit_decompose
from .targets.registry import BUILDERS, SAMPLEABLE, load_problem

EXIT_OK, EXIT_ERROR, EXIT_OPEN = 0, 1, 2

PRECEDENCE = ("Parameter precedence, lowest to highest: the JSON file given by --target, "
              "then --param KEY=VAL pairs, then the --n-hex/--e-hex/--c-hex shortcuts.")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _target_args(p: argparse.ArgumentParser, need_bound: bool = True):
    p.add_argument("--target", required=True,
                   help="path to a JSON descriptor, or a bare target name completed by --param")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VAL",
                   help="set or override one descriptor field (repeatable)")
    p.add_argument("--n-hex", help="override the modulus n (hex)")
    p.add_argument("--e-hex", help="override the exponent e (hex)")
    p.add_argument("--c-hex", help="override the ciphertext c (hex)")
    if need_bound:
        p.add_argument("--M", type=int, required=True, help="sequence length bound (>= 2)")
        p.add_argument("--mode", choices=("paper", "progressive"), default="paper",
                       help="rank-test schedule: descending from M/2, or doubling from 1")


def _common(p: argparse.ArgumentParser, formats=("text", "json", "csv")):
    p.add_argument("--format", choices=formats, default="text", help="output format")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="localinv", description="Local inversion of maps over finite fields.",
                 epilog=PRECEDENCE)
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    p = sub.add_parser("invert", help="find x with F(x) = y", epilog=PRECEDENCE)
    _target_args(p)
    p.add_argument("--no-shortcut", action="store_true",
                   help="ignore an early return to y and always go through the rank tests")
    p.add_argument("--all-projections", action="store_true",
                   help="embeddings only: try every projection and report the smallest LC")
    _common(p)

    p = sub.add_parser("lc", help="period and linear complexity of the iterates of y", epilog=PRECEDENCE)
    _target_args(p, need_bound=False)
    p.add_argument("--M", type=int, required=True, help="give up if the period exceeds this")
    _common(p)

    p = sub.add_parser("orbit", help="exhaustive orbit structure of a small square map", epilog=PRECEDENCE)
    _target_args(p, need_bound=False)
    _common(p)

    p = sub.add_parser("bounds", help="M = l^k and M/2, or every published table cell")
    p.add_argument("--l", type=int, help="bit length")
    p.add_argument("--k", type=int, help="exponent")
    p.add_argument("--tables", action="store_true", help="print all published cells with notes")
    _common(p)

    p = sub.add_parser("density", help="fraction of sampled instances solved within M")
    p.add_argument("--target", required=True, help="JSON family spec (path or inline JSON)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VAL",
                   help="set or override one spec field (repeatable)")
    p.add_argument("--M", type=int, required=True, help="sequence length bound (>= 2)")
    p.add_argument("--mode", choices=("paper", "progressive"), default="paper")
    p.add_argument("--samples", type=int, default=0, help="instances to draw (default: len(values))")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--sampling", choices=("secret", "uniform"), default="secret",
                   help="draw the secret and evaluate forward, or draw y uniformly")
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (breaks byte-identity)")
    p.add_argument("--no-shortcut", action="store_true",
                   help="ignore early returns to y so every conclusion comes from the rank tests")
    p.add_argument("--csv", help="write per-instance records to this CSV file")
    _common(p)

    p = sub.add_parser("targets", help="list targets and their descriptor fields")
    _common(p)
    return ap


# -- descriptor handling ------------------------------------------------------------

def _coerce(v: str):
    try:
        return json.loads(v)
    except ValueError:
        return v


def read_descriptor(args) -> dict:
    src = args.target
    if os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            desc = json.load(fh)
    elif src.endswith(".json") or os.sep in src:
        raise UsageError(f"no such descriptor file: {src}")
    elif src.lstrip().startswith("{"):
        desc = json.loads(src)
    else:
        desc = {"target": src}
    for kv in args.param:
        if "=" not in kv:
            raise UsageError(f"--param expects KEY=VAL, got {kv!r}")
        k, v = kv.split("=", 1)
        desc[k] = _coerce(v)
    for flag, key in (("n_hex", "n"), ("e_hex", "e"), ("c_hex", "c")):
        v = getattr(args, flag, None)
        if v is not None:
            desc[key] = v
    return desc


# -- output -------------------------------------------------------------------------

def _emit(args, payload, text: str):
    fmt = args.format
    if fmt == "json":
        body = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, cols, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in r.items()})
        body = buf.getvalue()
    else:
        body = text if text.endswith("\n") else text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _outcome_payload(prob, out) -> dict:
    d = {"target": prob.name, "outcome": out.tag, "eval_count": getattr(out, "eval_count", 0),
         "false_positives": getattr(out, "false_positives", 0)}
    if isinstance(out, (Solved, EarlyPeriod)):
        x = out.x.to_int()
        d.update(x=x, x_hex=hex(x), verified=prob.map(out.x) == prob.y,
                 check=prob.check(x) if prob.check else None, projection=out.projection)
        if isinstance(out, Solved):
            d.update(lc=out.lc, minpoly=str(out.minpoly))
        else:
            d.update(period=out.period)
    elif isinstance(out, NoConclusion):
        d.update(bound=out.bound)
    return d


def _outcome_text(d: dict) -> str:
    if d["outcome"] == "solved":
        return (f"solved x={d['x']} ({d['x_hex']}) lc={d['lc']} minpoly {d['minpoly']} "
                f"evals={d['eval_count']}")
    if d["outcome"] == "early_period":
        return f"solved x={d['x']} ({d['x_hex']}) by early period {d['period']} evals={d['eval_count']}"
    return f"no-conclusion within M={d.get('bound')} (LC > M/2 or y not periodic) evals={d['eval_count']}"


# -- subcommands --------------------------------------------------------------------

def _check_M(M: int):
    if M < 2:
        raise UsageError("--M must be at least 2")


def cmd_invert(args) -> int:
    _check_M(args.M)
    prob = load_problem(read_descriptor(args))
    if prob.embedding:
        from .embed import invert_embedding
        out = invert_embedding(prob.map, prob.y, args.M, mode=args.mode,
                               all_projections=args.all_projections, shortcut=not args.no_shortcut)
    else:
        out = prob.solve(args.M, args.mode, shortcut=not args.no_shortcut)
    d = _outcome_payload(prob, out)
    _emit(args, d, _outcome_text(d))
    return EXIT_OK if out.concluded else EXIT_OPEN


def cmd_lc(args) -> int:
    _check_M(args.M)
    prob = load_problem(read_descriptor(args))
    if prob.embedding:
        raise UsageError("lc needs a square map")
    try:
        period, mp = exact_lc(prob.map, prob.y, limit=args.M)
    except LocalInvError as exc:
        d = {"target": prob.name, "outcome": "no_conclusion", "reason": str(exc), "bound": args.M}
        _emit(args, d, f"no-conclusion: {exc}")
        return EXIT_OPEN
    d = {"target": prob.name, "outcome": "periodic", "period": period, "lc": mp.degree,
         "minpoly": str(mp)}
    _emit(args, d, f"period={period} lc={mp.degree} minpoly {mp}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    prob = load_problem(read_descriptor(args))
    dec = orbit_decompose(prob.map)
    y = prob.y.to_int()
    d = {"target": prob.name, "states": len(dec.succ), "goe": len(dec.goe),
         "cycle_lengths": sorted(len(o) for o in dec.orbits), "y": y,
         "y_periodic": dec.is_periodic(y), "y_preperiod": dec.preperiod[y],
         "y_period": dec.period(y)}
    if d["y_periodic"]:
        d["in_orbit_preimage"] = dec.in_orbit_preimage(y)
    lines = [f"states={d['states']} goe={d['goe']} cycles={d['cycle_lengths']}",
             f"y={y} periodic={d['y_periodic']} preperiod={d['y_preperiod']} period={d['y_period']}"]
    if "in_orbit_preimage" in d:
        lines.append(f"in-orbit pre-image={d['in_orbit_preimage']}")
    _emit(args, d, "\n".join(lines))
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.tables:
        rows = ex.published_tables()
        text = "\n".join(f"{r['table']:<10} l={r['l']:<5} k={r['k']} M={r['M']:,} ({r['M_label']}) "
                         f"M/2={r['half']:,}" + (f"  NOTE: {r['note']}" if r["note"] else "")
                         for r in rows)
        _emit(args, rows, text)
        return EXIT_OK
    if args.l is None or args.k is None:
        raise UsageError("bounds needs --l and --k, or --tables")
    try:
        row = ex.bounds_table(args.l, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = {"l": row.l, "k": row.k, "M": row.M, "half": row.half,
         "M_label": ex.rounded_label(row.M), "half_label": ex.rounded_label(row.half)}
    _emit(args, d, f"M={row.M} half={row.half}  ({d['M_label']} / {d['half_label']})")
    return EXIT_OK


def cmd_density(args) -> int:
    _check_M(args.M)
    spec = read_descriptor(args)
    if spec.get("target") not in SAMPLEABLE:
        raise UsageError(f"cannot sample {spec.get('target')!r}; choose from {', '.join(SAMPLEABLE)}")
    cfg = ex.DensityConfig(spec, args.samples, args.M, args.mode, args.seed, args.threads,
                           args.sampling, args.timing, not args.no_shortcut)
    records, summary = ex.density_run(cfg)
    if args.csv:
        ex.write_csv(records, args.csv)
    if args.format == "csv":
        body = ex.records_to_csv(records)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)
        return EXIT_OK
    c = summary["counts"]
    text = (f"{summary['target']}: {summary['samples']} samples, M={args.M}, mode={args.mode}\n"
            f"fraction solved {summary['fraction_solved']:.4f} "
            f"(solved {c['solved']}, early {c['early_period']}, open {c['no_conclusion']}, error {c['error']})\n"
            f"LC histogram {summary['lc_histogram']}")
    _emit(args, summary, text)
    return EXIT_OK


def cmd_targets(args) -> int:
    rows = [{"target": k, "fields": list(v[1]), "sampleable": k in SAMPLEABLE} for k, v in sorted(BUILDERS.items())]
    rows += [{"target": k, "fields": ["n", "field?"], "sampleable": True}
             for k in SAMPLEABLE if k not in BUILDERS]
    text = "\n".join(f"{r['target']:<20} {' '.join(r['fields'])}" for r in rows)
    _emit(args, rows, text + "\n(fields ending in ? are optional; integers are hex)")
    return EXIT_OK


COMMANDS = {"invert": cmd_invert, "lc": cmd_lc, "orbit": cmd_orbit, "bounds": cmd_bounds,
            "density": cmd_density, "targets": cmd_targets}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except (UsageError, LocalInvError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"localinv {args.cmd}: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
