"""Command-line interface.

    kerbundles cohomology --n 3 --source "2^4" --target "4^1" --window -2..3
    kerbundles natural-check --n 3 --r 6 --t 5
    kerbundles sweep --n 3 --r 3..8 --t 1..8 --format csv --out sweep.csv
    kerbundles stability --n 3 --r 5 --t 2
    kerbundles ample --n 2 --r 2 --t 4 --sample-lines 100
    kerbundles macaulay --c 3 --d 1 --steps 2
    kerbundles kronecker --n 2 --i 1 --j 1 --field 3 --brute-force
    kerbundles bounds --n 3 --r 4 --t 5
    kerbundles rank-n --n 3 --source "2^4" --target "4^1" --window -2..3

Exit codes: 0 success, 1 a size budget refused the computation, 2 bad input.
Prime and seed defaults can be overridden with KERBUNDLES_PRIME / KERBUNDLES_SEED.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from datetime import datetime, timezone

from . import __version__
from ._validation import BudgetExceeded, check_sum
from .ample import ample_criterion, line_splitting_sample
from .bott import TwistWindow
from .cohomology import (SWEEP_FIELDS, cohomology_table, natural_check, records_to_csv,
                         records_to_json, sweep, sweep_scaled)
from .exact import DEFAULT_PRIME
from .kronecker import brute_force_sks, scale_terms, single_pair_bound_holds, steiner_scale_bound
from .macaulay import growth, growth_chain, macaulay_rep
from .rank_n import h0_h1_formula
from .sections import GeneralMapSpec
from .stability import classify, quadric_character, semistable_degree_d

log = logging.getLogger("kerbundles")

# flags whose values may legitimately begin with "-"
_VALUE_FLAGS = {"--window", "--source", "--target", "--r", "--t", "--a", "--base", "--d", "--e"}


def _range(text: str) -> list[int]:
    """'3..8' or '3' or '1,2,5'."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _window(text: str | None) -> TwistWindow | None:
    return None if text is None else TwistWindow.parse(text)


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _rows_to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _rows_to_text(rows: list[dict], fields: list[str]) -> str:
    widths = [max(len(f), *(len(str(r[f])) for r in rows)) if rows else len(f) for f in fields]
    lines = ["  ".join(f.rjust(w) for f, w in zip(fields, widths))]
    for r in rows:
        lines.append("  ".join(str(r[f]).rjust(w) for f, w in zip(fields, widths)))
    return "\n".join(lines) + "\n"


def _render(rows: list[dict], fields: list[str], fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        return _rows_to_csv(rows, fields)
    if fmt == "json":
        return _dumps({**(extra or {}), "rows": rows})
    return _rows_to_text(rows, fields)


def _render_obj(payload: dict, fmt: str) -> str:
    if fmt == "csv":
        flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                for k, v in sorted(payload.items())}
        return _rows_to_csv([flat], list(flat))
    if fmt == "table":
        return "".join(f"{k}: {v}\n" for k, v in sorted(payload.items()))
    return _dumps(payload)


# ---------------------------------------------------------------------------
# Subcommands; each returns the output text.
# ---------------------------------------------------------------------------

def cmd_cohomology(args) -> str:
    V1 = check_sum(args.source, args.n, "source")
    V2 = check_sum(args.target, args.n, "target")
    spec = GeneralMapSpec(V1, V2, seed=args.seed, prime=args.prime, trials=args.trials)
    tab = cohomology_table(args.kind, spec, _window(args.window), args.backend, args.max_cols)
    for w in tab.warnings:
        log.warning(w)
    fields = ["a"] + [f"h{i}" for i in range(args.n + 1)]
    if args.format == "json":
        return tab.to_json() + "\n"
    return _render(tab.records(), fields, args.format)


def cmd_natural(args) -> str:
    v = natural_check(args.n, args.r, args.t, args.degree, args.base, args.seed, args.prime,
                      args.trials, _window(args.window), args.backend, args.max_cols)
    payload = {
        "n": args.n, "r": args.r, "t": args.t, "degree": args.degree, "base": args.base,
        "alpha": v.alpha, "beta": v.beta, "natural": v.natural, "verdict": v.label,
        "failing_twists": [[a, idx] for a, idx in v.failing_twists],
        "test_points": list(v.test_points), "char0_status": v.char0_status,
        "prime": args.prime, "seed": args.seed, "trials": args.trials,
    }
    if args.format == "table":
        return _render_obj(payload, "table") + v.table.to_text() + "\n"
    return _render_obj(payload, args.format)


def cmd_sweep(args) -> str:
    if args.multipliers:
        if len(_range(args.r)) != 1 or len(_range(args.t)) != 1:
            raise ValueError("--multipliers needs a single --r and --t")
        recs = sweep_scaled(args.n, _range(args.r)[0], _range(args.t)[0], _range(args.multipliers),
                            args.seed, args.prime, args.trials, args.max_cols)
    else:
        recs = sweep(args.n, _range(args.r), _range(args.t), args.seed, args.prime,
                     args.trials, args.max_cols)
    if args.format == "csv":
        return records_to_csv(recs)
    if args.format == "json":
        return records_to_json(recs) + "\n"
    rows = [r.as_row() for r in recs]
    return _rows_to_text(rows, list(SWEEP_FIELDS))


def cmd_stability(args) -> str:
    if args.d is not None and args.d != 1:
        v = semistable_degree_d(args.n, args.r, args.t, args.d)
    else:
        v = classify(args.n, args.r, args.t)
    payload = v.to_dict()
    q = quadric_character(args.r, args.t)
    payload["mu"] = str(q.mu)
    if args.n == 3:
        payload["quadric"] = {"mu": str(q.mu), "Delta": str(q.delta),
                              "abe_applicable": q.abe_applicable, "witness": q.witness}
    return _render_obj(payload, args.format)


def cmd_ample(args) -> str:
    payload = ample_criterion(args.n, args.r, args.t, args.d).to_dict()
    payload.update({"n": args.n, "r": args.r, "t": args.t, "d": args.d})
    if args.sample_lines:
        s = line_splitting_sample(args.n, args.r, args.t, args.seed, args.sample_lines,
                                  args.prime, args.d)
        payload["sample"] = s.to_dict()
    return _render_obj(payload, args.format)


def cmd_macaulay(args) -> str:
    rep = macaulay_rep(args.c, args.d)
    chain = [growth_chain(args.c, args.d, j) for j in range(args.steps + 1)]
    payload = {"c": args.c, "d": args.d, "rep": [list(x) for x in rep.terms],
               "rep_text": str(rep), "growth": growth(args.c, args.d), "chain": chain}
    return _render_obj(payload, args.format)


def cmd_kronecker(args) -> str:
    if not args.brute_force:
        stable = args.i >= 0 and args.j >= 1
        payload = {"n": args.n, "i": args.i, "j": args.j, "stable": stable,
                   "basis": "line bundles O(i) < O(i+j) for 0 <= i, j >= 1"}
        return _render_obj(payload, args.format)
    res = brute_force_sks(args.n, args.i, args.j, args.field, args.budget)
    payload = {"n": args.n, "i": args.i, "j": args.j, **res.to_dict()}
    return _render_obj(payload, args.format)


def cmd_bounds(args) -> str:
    if args.r is not None:
        first, second = scale_terms(args.n, args.r, args.t)
        payload = {"n": args.n, "r": args.r, "t": args.t, "m_min": steiner_scale_bound(args.n, args.r, args.t),
                   "sections_term": str(first), "vanishing_term": str(second)}
    elif None not in (args.d, args.s, args.e):
        payload = {"n": args.n, "d": args.d, "s": args.s, "e": args.e, "t": args.t,
                   "holds": single_pair_bound_holds(args.n, args.d, args.s, args.e, args.t)}
    else:
        raise ValueError("bounds needs --r (scale bound) or --d/--s/--e (single pair)")
    return _render_obj(payload, args.format)


def cmd_rank_n(args) -> str:
    V1 = check_sum(args.source, args.n, "source")
    V2 = check_sum(args.target, args.n, "target")
    window = _window(args.window) or TwistWindow(0, 0)
    rows = []
    for a in window:
        f = h0_h1_formula(args.n, V1, V2, a)
        rows.append({"a": a, "h0": "" if f.h0 is None else f.h0, "h1": "" if f.h1 is None else f.h1,
                     "reason": f.reason})
    return _render(rows, ["a", "h0", "h1", "reason"], args.format)


# ---------------------------------------------------------------------------

def _env_int(name: str, default: int) -> int:
    val = os.environ.get(name)
    if val is None:
        return default
    try:
        return int(val)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {val!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=_env_int("KERBUNDLES_PRIME", DEFAULT_PRIME))
    common.add_argument("--seed", type=int, default=_env_int("KERBUNDLES_SEED", 0))
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--backend", choices=["prime-field", "rational"], default="prime-field")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--max-cols", type=int, default=20000, help="column budget for section matrices")
    common.add_argument("-v", "--verbose", action="store_true")

    def fmt(p, default):
        p.add_argument("--format", choices=["json", "csv", "table"], default=default)

    parser = argparse.ArgumentParser(prog="kerbundles", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology table of a kernel or cokernel",
                       description="Sums are written 'd^s,...', e.g. '0^4,1^2'; CSV columns: a,h0,..,hn.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--kind", choices=["kernel", "cokernel"], default="kernel")
    p.add_argument("--window", help="twists lo..hi")
    fmt(p, "table")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("natural-check", parents=[common], help="natural cohomology of ker(O^{t+r} -> O(1)^t)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--window")
    fmt(p, "table")
    p.set_defaults(func=cmd_natural)

    p = sub.add_parser("sweep", parents=[common], help="natural cohomology over a grid of (r, t)",
                       description="CSV columns: n,r,t,alpha,beta,natural,fail_twists,prime,seed,trials,max_cols")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", required=True, help="lo..hi or a list")
    p.add_argument("--t", required=True, help="lo..hi or a list")
    p.add_argument("--multipliers", help="scale a single (r, t) by these m")
    fmt(p, "csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stability", parents=[common], help="slope stability verdict")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int)
    fmt(p, "json")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("ample", parents=[common], help="ampleness criterion and line sampler")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--sample-lines", type=int, default=0)
    fmt(p, "json")
    p.set_defaults(func=cmd_ample)

    p = sub.add_parser("macaulay", parents=[common], help="Macaulay representation and growth")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--steps", type=int, default=1)
    fmt(p, "json")
    p.set_defaults(func=cmd_macaulay)

    p = sub.add_parser("kronecker", parents=[common], help="strong Kronecker stability of O(i), O(i+j)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--budget", type=int, default=10**6)
    fmt(p, "json")
    p.set_defaults(func=cmd_kronecker)

    p = sub.add_parser("bounds", parents=[common], help="section-count hypotheses")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--e", type=int)
    fmt(p, "json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("rank-n", parents=[common], help="closed-form h0, h1 for rank-n kernels")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--window")
    fmt(p, "table")
    p.set_defaults(func=cmd_rank_n)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_FLAGS and k + 1 < len(argv) and argv[k + 1].startswith("-") \
                and not argv[k + 1].startswith("--"):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text = args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        meta = {"argv": argv, "created": datetime.now(timezone.utc).isoformat(), "version": __version__}
        with open(args.out + ".meta.json", "w") as fh:
            fh.write(_dumps(meta))
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
