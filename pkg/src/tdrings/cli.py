"""Command-line interface: ``tdrings <subcommand> ...``.

Machine output is JSON on stdout (CSV where asked); human notes go to stderr.
Exit codes: 0 ok, 1 property failure, 2 invalid input, 3 budget exceeded,
4 result rests on an unproved formula while --require-proved is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .arithmetic import RootConfig, unit_group
from .errors import BudgetExceeded, InvalidInput, TDRingsError
from .experiments import Family, rows_to_csv, rows_to_jsonl, run_sweep
from .formulas import (
    CubicKernelSpec,
    cl_order_formula,
    cl_structure_n2,
    cl_structure_n3,
    cl_structure_n3_coprime,
    quadratic_monoid_table,
)
from .ideals import (
    LatticeIdeal,
    class_group_bruteforce,
    ideal_label,
    ideal_to_matrix,
    is_invertible,
)
from .matrices import canonical_label, canonicalize, enumeration_budget, icm_order
from .verify import DEFAULT_SEED, SUITES

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_UNPROVED = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def _note(args, msg):
    if not getattr(args, "quiet", False):
        print(msg, file=sys.stderr)


def parse_roots(text, args=None) -> RootConfig:
    try:
        roots = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise InvalidInput(f"roots must be comma-separated integers: {text!r}") from exc
    if len(set(roots)) != len(roots):
        raise InvalidInput(f"duplicate roots: {text}")
    if roots != sorted(roots):
        roots = sorted(roots)
        if args is not None:
            _note(args, f"warning: roots sorted to {','.join(map(str, roots))}")
    return RootConfig(tuple(roots))


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _load_matrix(path, n):
    M = _load_json(path)
    if not isinstance(M, list) or len(M) != n or any(
        not isinstance(r, list) or len(r) != n or any(not isinstance(x, int) for x in r) for r in M
    ):
        raise InvalidInput(f"{path}: expected a {n}x{n} integer array")
    return M


def cmd_icm(args):
    cfg = parse_roots(args.roots, args)
    res = icm_order(cfg, method=args.method, budget=args.max_delta)
    _emit({"roots": list(cfg.roots), "delta": cfg.delta, "icm_order": res.order,
           "method_used": res.method, "proved": res.proved})
    if args.require_proved and not res.proved:
        raise _Exit(EXIT_UNPROVED, "result rests on a conjectural formula")


def _structure(cfg, budget):
    """(structure list or None, method label, reason)."""
    if cfg.n == 2:
        return cl_structure_n2(cfg).to_json(), "theorem", None
    if cfg.n == 3:
        return cl_structure_n3(cfg).to_json(), "theorem", None
    try:
        table = class_group_bruteforce(cfg, budget)
    except BudgetExceeded as exc:
        return None, None, f"no structure theorem for n >= 4 and enumeration refused: {exc}"
    return table.invariant_factors(), "empirical", None


def cmd_cl(args):
    cfg = parse_roots(args.roots, args)
    out = {"roots": list(cfg.roots), "delta": cfg.delta, "order": cl_order_formula(cfg)}
    structure, method, reason = _structure(cfg, args.max_delta)
    out["structure"] = structure
    out["structure_method"] = method
    if reason:
        out["reason"] = reason
    _emit(out)


def cmd_structure(args):
    cfg = parse_roots(args.roots, args)
    out = {"roots": list(cfg.roots), "order": cl_order_formula(cfg)}
    if cfg.n == 3 and cfg.span >= 4:
        spec = CubicKernelSpec.of(cfg)
        K = spec.K_elements()
        out.update({"modulus_u": spec.modulus_u, "modulus_v": spec.modulus_v,
                    "G_order": spec.G_order(), "H_order": 4, "K_order": len(K),
                    "structure": cl_structure_n3(cfg, args.method).to_json()})
        if cfg.profile[1] == 1:
            out["structure_coprime"] = cl_structure_n3_coprime(cfg).to_json()
    else:
        structure, method, reason = _structure(cfg, args.max_delta)
        out["structure"] = structure
        out["structure_method"] = method
        if reason:
            out["reason"] = reason
    if args.bruteforce:
        table = class_group_bruteforce(cfg, args.max_delta)
        out["bruteforce"] = table.invariant_factors()
    _emit(out)


def cmd_canon(args):
    cfg = parse_roots(args.roots, args)
    if args.compare:
        A = _load_matrix(args.compare[0], cfg.n)
        B = _load_matrix(args.compare[1], cfg.n)
        la, lb = canonical_label(A, cfg), canonical_label(B, cfg)
        _emit({"roots": list(cfg.roots), "conjugate": la == lb,
               "labels": [la.matrix(), lb.matrix()]})
        return
    if args.ideal:
        ideal = LatticeIdeal.from_json(cfg.roots, _load_json(args.ideal))
        lab = ideal_label(ideal)
        _emit({"roots": list(cfg.roots), "label": lab.matrix(),
               "matrix": ideal_to_matrix(ideal), "invertible": is_invertible(ideal)})
        return
    if not args.matrix:
        raise InvalidInput("canon needs --matrix, --compare or --ideal")
    A = _load_matrix(args.matrix, cfg.n)
    label, U = canonicalize(A, cfg)
    _emit({"roots": list(cfg.roots), "label": label.matrix(), "conjugator": U})


def cmd_monoid(args):
    cfg = parse_roots(args.roots, args)
    reps, table = quadratic_monoid_table(cfg)
    if args.format == "json":
        _emit({"roots": list(cfg.roots), "representatives": reps, "table": table})
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u"] + reps)
    for u, row in zip(reps, table):
        w.writerow([u] + row)
    sys.stdout.write(buf.getvalue())


def cmd_units(args):
    cfg = parse_roots(args.roots, args)
    units = sorted(unit_group(cfg), reverse=True)
    _emit({"roots": list(cfg.roots), "order": len(units), "units": [list(u) for u in units]})


def _parse_params(text):
    """Comma list of integers, or start:stop[:step] (stop inclusive)."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) not in (2, 3):
            raise InvalidInput(f"bad range {text!r}")
        step = parts[2] if len(parts) == 3 else 1
        return list(range(parts[0], parts[1] + 1, step))
    return [int(p) for p in text.split(",") if p]


def cmd_sweep(args):
    try:
        if args.family == "explicit":
            fam = Family.explicit([[int(x) for x in c.split(",")] for c in args.params.split(";")])
        else:
            params = _parse_params(args.params)
            if args.family == "ap":
                fam = Family.arithmetic_progression(args.n, params, args.start)
            else:
                fam = Family.tail(args.n, params)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    rows = run_sweep(fam, budget=args.max_delta, with_icm=not args.no_icm, method=args.method)
    sys.stdout.write(rows_to_csv(rows) if args.format == "csv" else rows_to_jsonl(rows))


def cmd_verify(args):
    fn = SUITES[args.suite]
    kw = {"seed": args.seed}
    if args.suite in ("delta-ap", "rho") and args.cases is not None:
        kw["cases"] = args.cases
    if args.suite in ("lm-roundtrip", "burnside", "cubic-structure") and args.max_delta is not None:
        kw["max_delta"] = args.max_delta
    if args.suite in ("conjecture-n4", "units") and args.max_span is not None:
        kw["max_span"] = args.max_span
    if args.suite == "conjecture-n4" and args.max_delta is not None:
        kw["budget"] = args.max_delta
    summary = fn(**kw)
    _emit(summary)
    if summary["failures"]:
        raise _Exit(EXIT_FAIL, f"{summary['failures']} failing cases")


def build_parser():
    p = argparse.ArgumentParser(prog="tdrings", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress notes on stderr")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--max-delta", type=int, default=None,
                        help="enumeration budget on Delta (default from TDRINGS_MAX_DELTA or 10^7)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("icm", parents=[common], help="order of the ideal class monoid")
    s.add_argument("--roots", required=True)
    s.add_argument("--method", choices=["auto", "formula", "burnside", "bruteforce"], default="auto")
    s.add_argument("--require-proved", action="store_true")
    s.set_defaults(func=cmd_icm)

    s = sub.add_parser("cl", parents=[common], help="order and structure of the class group")
    s.add_argument("--roots", required=True)
    s.set_defaults(func=cmd_cl)

    s = sub.add_parser("structure", parents=[common], help="class group structure with details")
    s.add_argument("--roots", required=True)
    s.add_argument("--method", choices=["auto", "enumerate", "snf"], default="auto")
    s.add_argument("--bruteforce", action="store_true", help="also compute from the Cayley table")
    s.set_defaults(func=cmd_structure)

    s = sub.add_parser("canon", parents=[common], help="canonical class label of a matrix")
    s.add_argument("--roots", required=True)
    s.add_argument("--matrix")
    s.add_argument("--compare", nargs=2, metavar=("FILE1", "FILE2"))
    s.add_argument("--ideal", help="ideal JSON file {denominator, basis}")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("monoid", parents=[common], help="quadratic ideal class monoid table")
    s.add_argument("--roots", required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_monoid)

    s = sub.add_parser("units", parents=[common], help="unit group as sign vectors")
    s.add_argument("--roots", required=True)
    s.set_defaults(func=cmd_units)

    s = sub.add_parser("sweep", parents=[common], help="family sweep with exact ratios")
    s.add_argument("--family", choices=["ap", "tail", "explicit"], required=True)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--params", required=True,
                   help="steps (ap) or tops (tail) as a,b,c or start:stop[:step]; "
                        "explicit: root lists separated by ';'")
    s.add_argument("--start", type=int, default=0)
    s.add_argument("--method", choices=["auto", "formula", "burnside", "bruteforce"], default="auto")
    s.add_argument("--no-icm", action="store_true")
    s.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--cases", type=int)
    s.add_argument("--max-span", type=int)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("verify", "sweep"):
        _note(args, f"seed: {args.seed}")
    if args.max_delta is not None:
        args.max_delta = enumeration_budget(args.max_delta)
    try:
        args.func(args)
    except _Exit as exc:
        _note(args, str(exc))
        return exc.code
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInput, TDRingsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
