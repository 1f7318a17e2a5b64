"""Command line entry point: ``polargrass <command> ...``.

Exit status is 0 when every expectation holds, 1 on a mismatch and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import casebook
from .embeddings import EmbeddingError, hull, parse_embedding, parse_geometry, format_embedding
from .forms import FormError, parse_form
from .gfield import FieldError, parse_field
from .linalg import rref
from .varieties import VarietyError, build_variety, emit_equations, span_dimension, tangent_rank, tangent_system
from .wedge import wedge_index

USAGE_ERRORS = (FormError, FieldError, VarietyError, EmbeddingError, casebook.UnsupportedField, KeyError, OSError)


class UsageError(Exception):
    pass


def _form_from_args(args):
    if args.form:
        F = parse_field(args.field) if args.field else None
        return parse_form(Path(args.form).read_text(), F)
    if args.case:
        spec = casebook.CASES[args.case]
        q = args.q or spec.default_q
        return casebook.case_form(args.case, casebook.field_for(q, spec.hermitian))
    raise UsageError("give --form FILE (with --field if the file has none) or --case NAME")


def _parse_point(F, text: str):
    return [F.parse(t) for t in text.replace(",", " ").split()]


def cmd_case(args) -> int:
    rep = casebook.run_case(args.name, args.q)
    print(rep.to_json() if args.json else rep.table())
    return 0 if rep.passed else 1


def cmd_enum(args) -> int:
    form = _form_from_args(args)
    V = build_variety(form)
    F = form.F
    print(f"# {len(V)} points, coordinates {' '.join(wedge_index(form.n).names())}")
    for row in V.coords:
        print(" ".join(F.format(c) for c in row))
    return 0


def cmd_span(args) -> int:
    form = _form_from_args(args)
    print(span_dimension(build_variety(form)))
    return 0


def cmd_tangent(args) -> int:
    form = _form_from_args(args)
    F = form.F
    w = _parse_point(F, args.point)
    r = tangent_rank(form, w)
    m = len(wedge_index(form.n).names())
    print(f"rank {r}")
    print(f"dim {m - r}")
    R, rk, _ = rref(F, tangent_system(form, w))
    for row in R[:rk]:
        print(" ".join(F.format(c) for c in row))
    return 0


def cmd_equations(args) -> int:
    form = _form_from_args(args)
    point = _parse_point(form.F, args.point) if args.point else None
    sys.stdout.write(emit_equations(form, args.which, point).format())
    return 0


def cmd_hull(args) -> int:
    F = parse_field(args.field)
    g = parse_geometry(Path(args.geometry).read_text())
    e = parse_embedding(Path(args.embedding).read_text(), g, F)
    h = hull(e)
    ok = h.check_projection(e)
    print(f"embedding dim {e.span_dim}")
    print(f"hull dim {h.dim}")
    print(f"projection {'ok' if ok else 'MISMATCH'}")
    if args.output:
        Path(args.output).write_text(format_embedding(h.embedding))
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    failed = 0
    summary = []
    for rep in casebook.sweep(quick=args.quick):
        bad = [c.key for c in rep.claims if not c.passed]
        failed += bool(bad)
        line = f"{'PASS' if not bad else 'FAIL'}  {rep.case:<18} q={rep.q:<2} {len(rep.claims)} claims"
        if bad:
            line += "  failing: " + ", ".join(bad)
        summary.append({"case": rep.case, "q": rep.q, "pass": not bad})
        print(line, flush=True)
    if args.json:
        print(json.dumps(summary, indent=2))
    print(f"{'all expectations met' if not failed else f'{failed} report(s) failed'}")
    return 1 if failed else 0


def _add_form_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--form", help="form file (keys: field, gram|quad, eps, sigma)")
    p.add_argument("--field", help="field spec such as 3 or 2^2/1,1,1/1")
    p.add_argument("--case", choices=sorted(casebook.CASES), help="use the form of a built-in case")
    p.add_argument("--q", type=int, help="field order for --case")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polargrass", description="Polar Grassmannians over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("case", help="run a built-in case and compare with its expected values")
    p.add_argument("name", choices=sorted(casebook.CASES))
    p.add_argument("--q", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_case)

    p = sub.add_parser("enum", help="list the points of the variety")
    _add_form_args(p)
    p.set_defaults(fn=cmd_enum)

    p = sub.add_parser("span", help="vector dimension of the span of the variety")
    _add_form_args(p)
    p.set_defaults(fn=cmd_span)

    p = sub.add_parser("tangent", help="tangent linear system at a point")
    _add_form_args(p)
    p.add_argument("--point", required=True, help="wedge coordinates, space or comma separated")
    p.set_defaults(fn=cmd_tangent)

    p = sub.add_parser("equations", help="emit defining equations")
    _add_form_args(p)
    p.add_argument("--which", default="variety", choices=["variety", "tangent", "radical_star"])
    p.add_argument("--point", help="wedge coordinates for --which tangent")
    p.set_defaults(fn=cmd_equations)

    p = sub.add_parser("hull", help="hull of a projective embedding")
    p.add_argument("--geometry", required=True)
    p.add_argument("--embedding", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--output", help="write the hull embedding here")
    p.set_defaults(fn=cmd_hull)

    p = sub.add_parser("selftest", help="run every case and suite")
    p.add_argument("--quick", action="store_true", help="default field orders only")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"polargrass: {exc}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as exc:
        print(f"polargrass: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
