"""Command line front end.

Every subcommand builds a report dictionary.  Plain mode prints one
``key: value`` line per field (the main value first); ``--json`` prints the
report as a single JSON object.  Exit codes: 0 success, 1 invalid input,
2 computation failure or fixture mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import diagram as dg
from . import shadow as sh
from .errors import ComputationError, SkeinlabError, ValidationError
from .exactalg import parse, render

FIXTURES = Path(__file__).resolve().parent / "fixtures"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _digest(path=None, extra=""):
    h = hashlib.sha256(extra.encode())
    if path is not None:
        h.update(Path(path).read_bytes())
    return h.hexdigest()[:16]


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _cplx(z):
    from .rtw import format_complex

    return {"value": format_complex(z), "abs2": float("%.12g" % (abs(z) ** 2))}


def _load_diagram(path):
    try:
        return dg.Diagram.load(path)
    except FileNotFoundError:
        raise ValidationError("no such file: %s" % path) from None


def _load_shadow(path):
    try:
        return sh.Shadow.load(path)
    except FileNotFoundError:
        raise ValidationError("no such file: %s" % path) from None


def _expected(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh).get("expected_bracket")


# -- subcommands ---------------------------------------------------------------------


def cmd_bracket(args):
    d = _load_diagram(args.file)
    value = dg.bracket(d, jobs=args.jobs)
    report = {
        "bracket": render(value),
        "breadth": value.breadth() if value else None,
        "ord_i": _num(value.ord_at_i()),
        "alternating": dg.alternating(d),
        "adequate": list(dg.adequacy(d)),
        "z2_class": dg.z2_class(d),
    }
    exp = _expected(args.file)
    if exp is not None:
        report["expected"] = exp
        report["diff"] = None if parse(exp) == value else "%s != %s" % (render(value), exp)
    return report, "bracket"


def cmd_tait(args):
    d = _load_diagram(args.file)
    rep = dg.tait_breadth_check(d, dg.bracket(d, jobs=args.jobs))
    rep["preconditions"] = list(rep["preconditions"])
    return rep, "B"


def cmd_ord_i(args):
    d = _load_diagram(args.file)
    value = dg.bracket(d, jobs=args.jobs)
    o = value.ord_at_i()
    report = {
        "ord_i": _num(o),
        "lower_bound": 1 - d.genus,
        "bound_holds": o >= 1 - d.genus,
        "components": len(d.components),
        "bracket": render(value),
    }
    if d.genus <= 1:
        report["homotopically_trivial"] = dg.homotopy_trivial_g1(d) if d.genus == 1 else True
    return report, "ord_i"


def cmd_z2(args):
    d = _load_diagram(args.file)
    c = dg.z2_class(d)
    return {"z2_class": c, "trivial": not any(c), "per_component": dg.z2_class(d, per_component=True)}, "z2_class"


def cmd_shadow_eval(args):
    x = _load_shadow(args.file)
    if args.color_cap is not None:
        sh.COLOR_CAP = args.color_cap
    value = sh.shadow_eval_q(x)
    return {"value": render(value), "chi": x.euler_characteristic()}, "value"


def cmd_shadow_sig(args):
    x = _load_shadow(args.file)
    q = sh.intersection_form(x)
    return {"signature": sh.signature(x), "rank": len(q), "form": [[str(v) for v in row] for row in q]}, "signature"


def cmd_rtw(args):
    from .rtw import RootContext, rtw_from_shadow, shadow_signature

    ctx = RootContext(args.r)
    x = _load_shadow(args.file)
    z = rtw_from_shadow(ctx, x)
    out = _cplx(z)
    out.update({"r": args.r, "signature": shadow_signature(x), "chi": x.euler_characteristic()})
    return out, "value"


def cmd_tv(args):
    from .rtw import RootContext, tv_from_polyhedron

    ctx = RootContext(args.r)
    v = tv_from_polyhedron(ctx, _load_shadow(args.file))
    return {"value": "%.12g" % v, "r": args.r}, "value"


def cmd_lens(args):
    from .rtw import RootContext, lens_rtw_closed

    ctx = RootContext(args.r)
    out = _cplx(lens_rtw_closed(ctx, args.n))
    out.update({"r": args.r, "n": args.n})
    return out, "value"


def cmd_t2_mul(args):
    from .torus_skein import fg_product

    prod = fg_product((args.p, args.q), (args.r, args.s))
    terms = {"(%d,%d)" % k: render(c) for k, c in sorted(prod.terms.items())}
    text = " + ".join("(%s)*(%d,%d)_T" % (render(c), p, q) for (p, q), c in sorted(prod.terms.items())) or "0"
    return {"product": text, "terms": terms}, "product"


def cmd_t3_reduce(args):
    from .torus_skein import reduce_t3_curve

    return {"generator": list(reduce_t3_curve(args.p, args.q, args.r))}, "generator"


def cmd_tangle(args):
    from .tangle import TangleDiagram, conway_number, tangle_reduce

    try:
        t = TangleDiagram.load(args.file)
    except FileNotFoundError:
        raise ValidationError("no such file: %s" % args.file) from None
    a, b = tangle_reduce(t)
    try:
        c = conway_number((a, b))
        c = str(c)
    except ComputationError as exc:
        c = "undefined (%s)" % exc
    return {"a": render(a), "b": render(b), "C": c}, "C"


def cmd_montesinos(args):
    from .tangle import montesinos_obstruction

    try:
        fr = [Fraction(f) for f in args.fractions.split(",") if f.strip()] if args.fractions else []
    except (ValueError, ZeroDivisionError):
        raise ValidationError("fractions must look like a/b,c/d") from None
    total = sum(fr, Fraction(0)) - args.e
    return {"not_slice": montesinos_obstruction(args.e, fr), "sum_minus_e": str(total)}, "not_slice"


def cmd_reproduce_table(args):
    root = Path(args.dir) if args.dir else FIXTURES
    rows = []
    for path in sorted(root.glob("*.json")):
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if "table_entry" not in data:
            continue
        d = dg.Diagram.from_json(data)
        value = dg.bracket(d, jobs=args.jobs)
        exp = parse(data["expected_bracket"])
        rows.append({
            "entry": data["table_entry"],
            "computed": render(value),
            "expected": data["expected_bracket"],
            "diff": None if value == exp else "computed %s, table %s" % (render(value), data["expected_bracket"]),
        })
    if not rows:
        raise ValidationError("no table fixtures under %s" % root)
    failed = [r["entry"] for r in rows if r["diff"]]
    return {"entries": rows, "failed": failed, "all_match": not failed}, "all_match"


# -- plumbing ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="skeinlab", description="Kauffman bracket and quantum invariants in #_g(S^1 x S^2)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for state sums")
    p.add_argument("--state-cap", type=int, default=None, help="max crossings (env SKEINLAB_STATE_CAP)")
    p.add_argument("--color-cap", type=int, default=None, help="max color (env SKEINLAB_COLOR_CAP)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    for name, fn in (("bracket", cmd_bracket), ("tait", cmd_tait), ("ord-i", cmd_ord_i), ("z2", cmd_z2),
                     ("shadow-eval", cmd_shadow_eval), ("shadow-sig", cmd_shadow_sig), ("tangle", cmd_tangle)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.set_defaults(func=fn)
    for name, fn in (("rtw", cmd_rtw), ("tv", cmd_tv)):
        s = sub.add_parser(name)
        s.add_argument("--r", type=int, required=True)
        s.add_argument("file")
        s.set_defaults(func=fn)
    s = sub.add_parser("lens")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_lens)
    s = sub.add_parser("t2-mul")
    for k in "pqrs":
        s.add_argument(k, type=int)
    s.set_defaults(func=cmd_t2_mul)
    s = sub.add_parser("t3-reduce")
    for k in "pqr":
        s.add_argument(k, type=int)
    s.set_defaults(func=cmd_t3_reduce)
    s = sub.add_parser("montesinos")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--fractions", default="")
    s.set_defaults(func=cmd_montesinos)
    s = sub.add_parser("reproduce-table")
    s.add_argument("--dir", default=None, help="fixture directory (default: the shipped corpus)")
    s.set_defaults(func=cmd_reproduce_table)
    return p


def run(argv=None, out=None):
    """Execute one command; returns (exit code, report)."""
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise ValidationError("missing subcommand")
        if args.state_cap is not None:
            dg.STATE_CAP = args.state_cap
        if args.color_cap is not None:
            sh.COLOR_CAP = args.color_cap
        report, main_key = args.func(args)
        path = getattr(args, "file", None)
        report = {"command": args.command, "inputs_digest": _digest(path, " ".join(argv)), **report}
        code = 0
        if report.get("diff") or report.get("failed"):
            code = 2
    except ValidationError as exc:
        report, main_key, code = {"error": str(exc), "kind": "validation"}, "error", 1
    except json.JSONDecodeError as exc:
        report, main_key, code = {"error": str(exc), "kind": "validation"}, "error", 1
    except (ComputationError, SkeinlabError) as exc:
        report, main_key, code = {"error": str(exc), "kind": "computation"}, "error", 2
    if as_json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        _print_plain(report, main_key, out)
    return code, report


def _print_plain(report, main_key, out):
    if main_key in report:
        out.write("%s\n" % (report[main_key],))
    for k, v in report.items():
        if k == main_key:
            continue
        if k == "entries":
            for row in v:
                mark = "ok  " if not row["diff"] else "DIFF"
                out.write("%s %-6s %s\n" % (mark, row["entry"], row["diff"] or row["computed"]))
            continue
        out.write("%s: %s\n" % (k, json.dumps(v) if isinstance(v, (list, dict)) else v))


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
