"""Command-line interface: ``formstrength <command> ...``.

JSON is the canonical output; ``--format csv`` flattens result rows. Exit
codes: 0 success, 1 a requested check failed, 2 bad input.
"""

import argparse
import csv
import io
import json
import os
import sys

from formstrength import bounds as bd
from formstrength.algebra.fields import parse_field
from formstrength.forms import GradedSubspace, ParseError, format_form, parse_forms
from formstrength.oracle import Budget, BudgetExceeded, groebner, hilbert_function, krull_dim
from formstrength.quadforms import (
    classify_all_reducible,
    collapse_witness,
    quad_rank,
    space_min_rank,
    strength_quadric,
)
from formstrength.subalgebra import construct, verify
from formstrength.suites import SUITES

DIGIT_THRESHOLD = 200


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input helpers


def parse_range(text):
    """``"3"`` -> [3]; ``"2..5"`` -> [2, 3, 4, 5]; ``"1,4"`` -> [1, 4]."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def read_forms(args):
    K = parse_field(args.field)
    lines = list(args.polys or [])
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            lines.extend(fh.read().splitlines())
    forms = parse_forms(lines, K, args.nvars)
    if not forms:
        raise UsageError("no input polynomials")
    return K, forms


def budget_from(args):
    return Budget(
        max_pairs=args.budget_pairs,
        max_degree=args.budget_degree,
        max_candidates=args.budget_candidates,
    )


def require_quadrics(forms):
    for f in forms:
        if f.degree != 2:
            raise UsageError(f"degree {f.degree} form {format_form(f)!r}: this command needs quadrics")


# ---------------------------------------------------------------------------
# Output


def big_value(v, args, label):
    """Plain int below the digit threshold, else a digit count plus a side file."""
    if not isinstance(v, int) or isinstance(v, bool):
        return v
    if v.bit_length() < 3 * DIGIT_THRESHOLD:
        return v
    digits = _decimal(v)
    if len(digits) <= DIGIT_THRESHOLD:
        return v
    os.makedirs(args.outdir, exist_ok=True)
    path = os.path.join(args.outdir, f"{label}.txt")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(digits + "\n")
    return {"digits": len(digits), "file": path}


def _decimal(v):
    limit = sys.get_int_max_str_digits() if hasattr(sys, "get_int_max_str_digits") else 0
    needed = int(v.bit_length() * 0.30103) + 2
    if limit and needed > limit:
        sys.set_int_max_str_digits(max(needed, limit))
    return str(v)


def emit(payload, args, rows=None):
    if args.format == "csv":
        rows = rows if rows is not None else (payload if isinstance(payload, list) else [payload])
        buf = io.StringIO()
        keys = []
        for r in rows:
            for k in r:
                if k not in keys:
                    keys.append(k)
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list, tuple)) else v)
                        for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _single_or_list(items):
    return items[0] if len(items) == 1 else items


# ---------------------------------------------------------------------------
# Commands


def cmd_rank(args):
    _, forms = read_forms(args)
    require_quadrics(forms)
    rows = [{"form": format_form(f), "rank": quad_rank(f)} for f in forms]
    emit(_single_or_list(rows), args, rows)
    return 0


def cmd_strength(args):
    _, forms = read_forms(args)
    require_quadrics(forms)
    rows = []
    for f in forms:
        r = quad_rank(f)
        rows.append({"form": format_form(f), "rank": r, "strength": strength_quadric(f) if f else None})
    emit(_single_or_list(rows), args, rows)
    return 0


def cmd_collapse(args):
    _, forms = read_forms(args)
    require_quadrics(forms)
    if args.k is None:
        raise UsageError("collapse needs --k")
    rows = []
    for f in forms:
        w = collapse_witness(f, args.k)
        rows.append({"form": format_form(f), "k": args.k, "rank": quad_rank(f),
                     "witness": w.to_json() if w is not None else None})
    emit(_single_or_list(rows), args, rows)
    return 0


def cmd_classify(args):
    K, forms = read_forms(args)
    require_quadrics(forms)
    V = GradedSubspace.span(forms, K, forms[0].nvars)
    payload = classify_all_reducible(V).to_json()
    if args.backend:
        res = space_min_rank(V, args.backend, budget_from(args))
        payload["min_rank"] = {"rank": res.rank, "backend": res.backend,
                               "exact_over_closure": res.exact_over_closure, "caveat": res.caveat}
    emit(payload, args)
    return 0


_BOUND_ARG_FLAGS = ("eta", "n", "n1", "n2", "n3", "k", "i", "a", "m", "r", "s", "d")


def _bound_grid(args, names):
    grid = [{}]
    for name in names:
        if name == "cc":
            values = [args.cc]
        else:
            raw = getattr(args, name, None)
            if raw is None:
                raise UsageError(f"bound needs --{name}")
            values = parse_range(raw)
        grid = [dict(g, **{name: v}) for g in grid for v in values]
    return grid


def _bound_table(args):
    name = args.function
    special = {
        "etaA3": (lambda eta, n1, n2, n3: bd.etaA3(eta, n1, n2, n3, args.cc), ("eta", "n1", "n2", "n3")),
        "etaA-SJ": (lambda eta: bd.etaA_SJ(eta, _delta(args), args.cc), ("eta",)),
        "etaA-SJrank": (lambda eta: bd.etaA_SJrank(eta, _delta(args), args.cc), ("eta",)),
        "etaB-general": (lambda eta: bd.etaB_general(eta, _delta(args), args.mode, args.cc), ("eta",)),
        "C": (lambda r, s, d: bd.C_bound(r, s, d, args.eta_single, args.cc), ("r", "s", "d")),
        "B2-audit": (lambda n1, n2: bd.etaB2_audit(args.eta_single, n1, n2), ("n1", "n2")),
    }
    if name in special:
        fn, names = special[name]
    elif name in bd.BOUND_FUNCTIONS:
        fn, names = bd.BOUND_FUNCTIONS[name]
    else:
        raise UsageError(f"unknown bound function {name!r}")
    rows = []
    for point in _bound_grid(args, names):
        label = name + "_" + "_".join(f"{k}{v}" for k, v in point.items() if k != "cc")
        row = {"function": name, "args": dict(point)}
        if name in ("etaA-SJ", "etaA-SJrank", "etaB-general"):
            row["args"]["delta"] = list(_delta(args))
            label += "_delta" + "-".join(map(str, _delta(args)))
        try:
            value = fn(**point)
        except bd.BoundTooLarge as exc:
            row["value"] = None
            row["error"] = f"too large: {exc}"
            rows.append(row)
            continue
        except (ValueError, OverflowError) as exc:
            row["value"] = None
            row["error"] = str(exc)
            rows.append(row)
            continue
        if isinstance(value, tuple):
            value = [big_value(v, args, f"{label}_{j + 1}") for j, v in enumerate(value)]
        elif isinstance(value, dict):
            value = {k: big_value(v, args, f"{label}_{k}") for k, v in value.items()}
        else:
            value = big_value(value, args, label)
        row["value"] = value
        if name in ("etaB2", "B2"):
            eta = point.get("eta")
            closed = bd.etaB2_closed_form(eta, point["n1"], point["n2"])
            row["closed_form"] = big_value(closed, args, label + "_closed")
            row["discrepancy"] = closed != bd.etaB2(eta, point["n1"], point["n2"])
        rows.append(row)
    return rows


def _delta(args):
    if not args.delta:
        raise UsageError("this bound needs --delta, e.g. 0,0,1")
    return tuple(int(x) for x in args.delta.split(","))


def cmd_bounds(args):
    args.eta_single = int(args.eta) if args.eta is not None and ".." not in str(args.eta) else None
    rows = _bound_table(args)
    if args.format == "csv":
        flat = [{"function": r["function"], "args": r["args"], "value": r.get("value"),
                 "discrepancy": r.get("discrepancy", ""), "error": r.get("error", "")} for r in rows]
        emit(rows, args, flat)
    else:
        emit(rows, args)
    return 1 if any("error" in r for r in rows) and args.strict else 0


def cmd_subalgebra(args):
    K, forms = read_forms(args)
    V = GradedSubspace.span(forms, K, forms[0].nvars)
    cert = construct(V, args.eta_int, minimum=args.backend or "enumerate")
    payload = cert.to_json()
    code = 0
    if args.verify:
        rep = verify(cert, budget=budget_from(args))
        payload["verification"] = rep
        code = _exit_for(rep["checks"].values(), args.strict)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    emit(payload, args)
    return code


def cmd_gb(args):
    K, forms = read_forms(args)
    from formstrength.oracle import MonomialOrder

    gb = groebner(forms, MonomialOrder(args.order), budget_from(args))
    payload = {"field": K.spec, "nvars": forms[0].nvars, "order": args.order,
               "basis": [format_form(g) for g in gb.forms]}
    if not gb.is_unit():
        payload["krull_dim"] = krull_dim(gb)
        payload["hilbert"] = hilbert_function(gb, args.t_max, forms[0].nvars)
        payload["regular_sequence"] = krull_dim(gb) == forms[0].nvars - len(forms) and all(forms)
    emit(payload, args)
    return 0


def _exit_for(verdicts, strict):
    verdicts = list(verdicts)
    if "fail" in verdicts:
        return 1
    if strict and "skipped" in verdicts:
        return 1
    return 0


def cmd_verify(args):
    suite = SUITES.get(args.suite)
    if suite is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    kw = {}
    params = suite.__code__.co_varnames[: suite.__code__.co_argcount]
    supplied = {
        "field": args.field_opt,
        "N": args.N,
        "n": args.n,
        "k": args.k,
        "trials": args.trials,
        "count": args.trials,
        "seed": args.seed,
        "max_nvars": args.max_nvars,
    }
    for name, value in supplied.items():
        if value is not None and name in params:
            kw[name] = value
    if "budget" in params:
        kw["budget"] = budget_from(args)
    rep = suite(**kw)
    emit(rep.to_json(), args)
    return _exit_for([rep.verdict], args.strict)


# ---------------------------------------------------------------------------
# Parser


def _add_common(p, polys=True):
    p.add_argument("--field", default="q", help="field spec: q, gf:p or gf:2^e (default q)")
    p.add_argument("--nvars", type=int, default=None, help="number of variables (default: largest index seen)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--strict", action="store_true", help="treat skipped checks as failures")
    p.add_argument("--budget-pairs", type=int, default=200_000)
    p.add_argument("--budget-degree", type=int, default=16)
    p.add_argument("--budget-candidates", type=int, default=5_000_000)
    if polys:
        p.add_argument("polys", nargs="*", help="polynomials in the x1..xN grammar")
        p.add_argument("-i", "--input", help="file with one polynomial per line (# comments)")


def build_parser():
    parser = argparse.ArgumentParser(prog="formstrength", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("rank", cmd_rank, "rank of quadrics"),
        ("strength", cmd_strength, "rank and strength of quadrics"),
        ("collapse", cmd_collapse, "k-collapse witness of quadrics"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        p.add_argument("--k", type=int, default=None)
        p.set_defaults(func=fn)

    p = sub.add_parser("classify", help="all-reducible classification of a space of quadrics")
    _add_common(p)
    p.add_argument("--backend", choices=("enumerate", "closure"), default=None,
                   help="also report the minimum rank with this backend")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="evaluate bound functions over argument ranges")
    _add_common(p, polys=False)
    p.add_argument("function", help="one of: " + ", ".join(
        sorted(list(bd.BOUND_FUNCTIONS) + ["etaA3", "etaA-SJ", "etaA-SJrank", "etaB-general", "C", "B2-audit"])))
    for flag in _BOUND_ARG_FLAGS:
        p.add_argument(f"--{flag}", default=None, help="integer or range like 2..5")
    p.add_argument("--cc", default="NotTwoThree", choices=[c.value for c in bd.CharClass])
    p.add_argument("--delta", default=None, help="dimension sequence, e.g. 0,0,1")
    p.add_argument("--mode", choices=("dominating", "exact"), default="dominating")
    p.add_argument("--outdir", default="bounds-values", help="side-file directory for huge values")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("subalgebra", help="small subalgebra certificate for linear + quadratic forms")
    _add_common(p)
    p.add_argument("--eta", type=int, default=None, dest="eta_int")
    p.add_argument("--backend", choices=("enumerate", "closure"), default=None)
    p.add_argument("--verify", action="store_true", help="run the certificate checks inline")
    p.add_argument("--output", "-o", default=None, help="also write the certificate to this file")
    p.set_defaults(func=cmd_subalgebra)

    p = sub.add_parser("gb", help="reduced Groebner basis, dimension and Hilbert function")
    _add_common(p)
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--t-max", type=int, default=6)
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help="one of: " + ", ".join(sorted(SUITES)))
    p.add_argument("--field", dest="field_opt", default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--max-nvars", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--budget-pairs", type=int, default=200_000)
    p.add_argument("--budget-degree", type=int, default=16)
    p.add_argument("--budget-candidates", type=int, default=5_000_000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"skipped: {exc}", file=sys.stderr)
        return 1 if getattr(args, "strict", False) else 0


if __name__ == "__main__":
    sys.exit(main())
