"""Command-line entry point: ``converse-kit {bound,verify,simulate,measures}``.

Exit codes: 0 success, 1 internal error or failed verification,
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import measures as M
from . import specs, verify
from .applications.group_testing import GroupTestingSpec, gt_capacity
from .fano import fano_pe_lower, fano_pe_lower_binary
from .oracle.group_testing import gt_simulate

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2
SIM_COLUMNS = ("n", "empirical_pe", "stderr", "fano_floor")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def worker_cap() -> int:
    raw = os.environ.get("CONVERSE_KIT_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise M.ValidationError(f"CONVERSE_KIT_THREADS must be an integer, got {raw!r}") from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise M.ValidationError(f"cannot read {path}: {e.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    spec = specs.parse_json_text(_read(args.spec))
    report = specs.build_report(spec, specs.run_spec(spec))
    fmt = {"json": specs.report_to_json, "csv": specs.report_to_csv, "table": specs.report_to_table}
    _emit(fmt[args.format](report), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    if args.suite != "all" and args.suite not in verify.SUITES:
        raise M.ValidationError(f"unknown suite {args.suite!r}; choose from {verify.SUITES + ('all',)}")
    if args.trials < 1:
        raise M.ValidationError("--trials must be positive")
    status = EXIT_OK
    for name in names:
        fails = verify.run_suite(name, args.trials, args.seed, args.tolerance)
        if fails:
            status = EXIT_INTERNAL
            print(f"FAIL {name}: {len(fails)} counterexample(s)")
            for f in fails[:5]:
                print(json.dumps({"suite": name, "seed": args.seed, "instance": f}, default=str))
        else:
            print(f"PASS {name} ({args.trials} trials, seed {args.seed})")
    return status


def fano_floor(mi: float, m: int) -> float:
    if m < 2:
        return 0.0
    return fano_pe_lower_binary(mi) if m == 2 else fano_pe_lower(mi, m)


def cmd_simulate(args) -> int:
    spec = specs.parse_json_text(_read(args.spec))
    specs.validate(spec, "sim_spec")
    trials = args.trials if args.trials is not None else spec.get("trials", 1000)
    seed = args.seed if args.seed is not None else spec.get("seed", 0)
    if trials < 1:
        raise M.ValidationError("trials must be positive")
    prm = spec["parameters"]
    gs = GroupTestingSpec(prm["p"], prm["k"], prm.get("eps", 0.0))
    m = math.comb(gs.p, gs.k)
    cap = gt_capacity(gs.eps)
    workers = worker_cap()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SIM_COLUMNS)
    for n in spec["n_values"]:
        r = gt_simulate(gs, n, spec.get("decoder", "map"), trials, seed, spec.get("nu"), workers)
        w.writerow((n, repr(r.estimate), repr(r.stderr), repr(fano_floor(n * cap, m))))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def cmd_measures(args) -> int:
    p = M.FinitePMF(args.p)
    q = M.FinitePMF(args.q) if args.q is not None else None
    scale = (1 / M.LN2) if args.bits else 1.0
    unit = "bits" if args.bits else "nats"
    wanted = args.quantity
    pair_needed = {"kl", "tv", "hellinger", "chi2", "relations"}
    if q is None and (wanted in pair_needed):
        raise M.ValidationError(f"quantity {wanted!r} needs --q")
    if wanted in ("entropy", "all"):
        print(f"entropy(p) = {_fmt(M.entropy(p) * scale)} {unit}")
        if q is not None:
            print(f"entropy(q) = {_fmt(M.entropy(q) * scale)} {unit}")
    if q is not None and wanted in ("kl", "all"):
        print(f"kl(p||q) = {_fmt(M.kl_divergence(p, q) * scale)} {unit}")
    if q is not None and wanted in ("tv", "all"):
        print(f"tv(p,q) = {_fmt(M.tv_distance(p, q))}")
    if q is not None and wanted in ("hellinger", "all"):
        print(f"hellinger_sq(p,q) = {_fmt(M.hellinger_sq(p, q))}")
    if q is not None and wanted in ("chi2", "all"):
        print(f"chi_sq(p||q) = {_fmt(M.chi_sq(p, q))}")
    if q is not None and wanted in ("relations", "all"):
        for line in divergence_relations(p, q):
            print(line)
    return EXIT_OK


def divergence_relations(p, q, tol: float = 1e-12) -> list[str]:
    kl, tv = M.kl_divergence(p, q), M.tv_distance(p, q)
    h2, chi = M.hellinger_sq(p, q), M.chi_sq(p, q)
    eta = float(np.min(M.as_pmf(q).mass))
    rows = [
        ("pinsker: kl >= 2 tv^2", kl >= 2 * tv**2 - tol),
        ("reverse pinsker: kl <= (2/min q) tv^2",
         True if eta == 0 else kl <= 2 / eta * tv**2 + tol),
        ("hellinger lower: h^2/2 <= tv", 0.5 * h2 <= tv + tol),
        ("hellinger upper: tv <= h sqrt(1 - h^2/4)", tv <= math.sqrt(h2 * max(0.0, 1 - h2 / 4)) + tol),
        ("kl <= ln(1 + chi2)", kl <= math.log1p(chi) + tol),
        ("ln(1 + chi2) <= chi2", math.log1p(chi) <= chi + tol),
    ]
    out = []
    for name, ok in rows:
        tag = "PASS" if ok else "FAIL"
        if name.startswith("reverse") and eta == 0:
            tag = "PASS (not applicable: q has a zero)"
        out.append(f"{tag} {name}")
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="converse-kit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", help="evaluate the bounds requested by a problem spec")
    b.add_argument("spec")
    b.add_argument("--format", choices=("json", "csv", "table"), default="json")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="run randomized property suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tolerance", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="group-testing error curves against the Fano floor")
    s.add_argument("spec")
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    m = sub.add_parser("measures", help="information measures of inline PMFs")
    m.add_argument("--p", type=float, nargs="+", required=True)
    m.add_argument("--q", type=float, nargs="+")
    m.add_argument("--quantity", default="all",
                   choices=("all", "entropy", "kl", "tv", "hellinger", "chi2", "relations"))
    m.add_argument("--bits", action="store_true")
    m.set_defaults(func=cmd_measures)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except M.ValidationError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001 - the exit-code contract needs a catch-all
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
