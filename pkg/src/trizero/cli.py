"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 precondition failure,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bases import GenIndex, decompose, membership_b
from .errors import InconsistencyError, ParseError, PreconditionError
from .geometry import clebsch_form, gauge_difference, vector_potential_delta, vector_potential_radial
from .liealg import bracket_in_basis
from .normalform import hamiltonian_reduce, normalize, rescale_leading
from .parsing import parse_field, parse_poly
from .poisson import poisson_bracket
from .ratpoly import format_poly
from .vfield import format_field

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONSISTENCY = 0, 1, 2, 3

def _frac(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _field_json(v) -> dict:
    return {n: format_poly(c) for n, c in zip(("dx", "dy", "dz"), v)}


def _read_field(args):
    if args.field is not None:
        text = args.field
    elif args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return parse_field(text)


def _gen_index(words) -> GenIndex:
    if len(words) != 4 or words[0] != "B":
        raise ParseError(f"expected 'B l i k', got {' '.join(words)!r}", 0, " ".join(words))
    try:
        return GenIndex("B", *(int(w) for w in words[1:]))
    except ValueError:
        raise ParseError(f"non-integer index in {' '.join(words)!r}", 0, " ".join(words)) from None


# each handler returns (json-able object, text)

def cmd_verify(args):
    v = _read_field(args)
    ok, wit = membership_b(v)
    if ok:
        return {"member": True, "witness": None}, "member: yes"
    label, poly = wit
    return ({"member": False, "witness": {"check": label, "value": format_poly(poly)}},
            f"member: no\nwitness: {label} = {format_poly(poly)}")


def cmd_decompose(args):
    exp = decompose(_read_field(args))
    return {"expansion": exp.records()}, str(exp)


def cmd_bracket(args):
    words = args.indices
    if len(words) != 8:
        raise ParseError("bracket needs two indices 'B l i k B l i k'", 0, " ".join(words))
    exp = bracket_in_basis(_gen_index(words[:4]), _gen_index(words[4:]))
    return {"expansion": exp.records()}, str(exp)


def cmd_poisson(args):
    out = poisson_bracket(parse_poly(args.f), parse_poly(args.g))
    return {"bracket": format_poly(out)}, format_poly(out)


def cmd_normal_form(args):
    nf = normalize(_read_field(args), args.max_grade)
    if args.rescale:
        nf = rescale_leading(nf)
    doc = nf.to_json()
    doc["maxGrade"] = nf.max_grade
    doc["timeScale"] = _frac(nf.time_scale)
    doc["field"] = _field_json(nf.transformed_field)
    if nf.rescaling:
        doc["rescaling"] = {k: (_frac(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else v)
                            for k, v in nf.rescaling.items()}
    lines = [f"p: {doc['p']}"]
    for c in doc["coeffs"]:
        lines.append(f"b[{c['i']},{c['k']}] = {_frac(Fraction(c['num'], c['den']))}")
    lines.append(f"I = {doc['invariantI']}")
    lines.append(f"normal form: {format_field(nf.transformed_field, named=True)}")
    if nf.time_scale != 1:
        lines.append(f"time scale: {doc['timeScale']}")
    if nf.rescaling:
        lines.append("rescaling: " + ", ".join(f"{k}={v}" for k, v in doc["rescaling"].items()))
    return doc, "\n".join(lines)


def cmd_clebsch(args):
    pair = clebsch_form(_read_field(args))
    p, s = format_poly(pair.primary), format_poly(pair.secondary)
    return {"primary": p, "secondary": s}, f"primary: {p}\nsecondary: {s}"


def cmd_vector_potential(args):
    v = _read_field(args)
    delta = vector_potential_delta(v)
    radial = vector_potential_radial(v)
    f = gauge_difference(radial, delta)  # radialForm + grad f = deltaForm
    doc = {"deltaForm": _field_json(delta.field), "radialForm": _field_json(radial.field),
           "gaugeDifference": format_poly(f)}
    text = "\n".join([f"deltaForm: {format_field(delta.field)}",
                      f"radialForm: {format_field(radial.field)}",
                      f"gauge difference (radialForm + grad f = deltaForm): f = {format_poly(f)}"])
    return doc, text


def cmd_hamiltonian(args):
    nf = normalize(_read_field(args), args.max_grade)
    ham = hamiltonian_reduce(nf)
    doc = ham.to_json()
    text = "\n".join([f"H = {doc['H']}", f"dX = {doc['dX']}", f"dY = {doc['dY']}",
                      f"dZ = {doc['dZ']}", f"X = {doc['X']}"])
    return doc, text


HANDLERS = {
    "verify": cmd_verify, "decompose": cmd_decompose, "bracket": cmd_bracket,
    "poisson": cmd_poisson, "normal-form": cmd_normal_form, "clebsch": cmd_clebsch,
    "vector-potential": cmd_vector_potential, "hamiltonian": cmd_hamiltonian,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-grade", type=int, default=6, help="truncation grade (default 6)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--input", default="-", help="field file, '-' for stdin (default)")
    common.add_argument("--field", help="field given inline instead of --input")

    parser = argparse.ArgumentParser(prog="trizero", description="Exact analysis of nilpotent triple-zero vector fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "decompose", "clebsch", "vector-potential", "hamiltonian"):
        sub.add_parser(name, parents=[common])
    nf = sub.add_parser("normal-form", parents=[common])
    nf.add_argument("--rescale", action="store_true", help="scale the leading coefficient to 1")
    br = sub.add_parser("bracket", parents=[common], help="bracket of 'B l i k' and 'B l i k'")
    br.add_argument("indices", nargs="+")
    po = sub.add_parser("poisson", parents=[common], help="Poisson bracket of two polynomials")
    po.add_argument("f")
    po.add_argument("g")
    return parser


def _fail(args, code, kind, exc):
    if args.format == "json":
        err = {"error": kind, "message": str(exc)}
        pos = getattr(exc, "pos", None)
        if pos is not None:
            err["position"] = pos
        print(json.dumps(err))
    else:
        print(f"error ({kind}): {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text = HANDLERS[args.command](args)
    except ParseError as exc:
        return _fail(args, EXIT_PARSE, "parse", exc)
    except PreconditionError as exc:
        return _fail(args, EXIT_PRECONDITION, "precondition", exc)
    except InconsistencyError as exc:
        return _fail(args, EXIT_INCONSISTENCY, "inconsistency", exc)
    except OSError as exc:
        return _fail(args, EXIT_PARSE, "input", exc)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
