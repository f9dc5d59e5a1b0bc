"""Command-line front end.

Subcommands: validate, pell, roots, isotropic, nodal, classify,
qeps-count, opposite, dn-seq, section.  Each reads a lattice document
(except `pell`), writes the result to stdout in the format selected by
--format {text,json,csv}, and exits 0 on success, 1 on a domain error
(with the error name on stderr), 2 on a usage error.  Output is
byte-deterministic for fixed inputs and flags; enumeration can be run on
several worker threads with --jobs without changing a single output byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cone, constructions, enumeration, pell
from .document import load_document, parse_gram, read_raw
from .errors import K3ConeError
from .lattice import validate_lattice

CSV_CAPABLE = {"roots", "isotropic", "nodal", "section"}


def fmt_fraction(value) -> str:
    fr = Fraction(value)
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


def fmt_coords(coords) -> str:
    return "(" + ",".join(str(c) for c in coords) + ")"


def emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2))
    sys.stdout.write("\n")


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise K3ConeError(f"cannot parse vector {text!r}") from exc


def parse_plane(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    parts = text.split(";")
    if len(parts) != 2:
        raise K3ConeError("plane must be two semicolon-separated vectors")
    return parse_vector(parts[0]), parse_vector(parts[1])


def parse_epsilon(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise K3ConeError(f"cannot parse epsilon {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_validate(args) -> int:
    data = read_raw(args.lattice)
    lattice = parse_gram(data)
    report = validate_lattice(lattice)
    payload = {
        "rank": lattice.rank,
        "symmetric": report.symmetric,
        "even_diagonal": report.even_diagonal,
        "nondegenerate": report.nondegenerate,
        "signature": list(report.signature) if report.signature else None,
        "lattice_failures": list(report.failures),
        "polarization_ok": False,
        "polarization_error": None,
        "certificates_verified": None,
    }
    failure = report.failures[0] if report.failures else None
    if report.passed:
        try:
            document = load_document(args.lattice)
            payload["polarization_ok"] = True
            payload["certificates_verified"] = len(document.certificates)
        except K3ConeError as exc:
            payload["polarization_error"] = type(exc).__name__
            failure = type(exc).__name__

    if args.format == "json":
        emit_json(payload)
    else:
        sig = payload["signature"]
        print(f"rank: {lattice.rank}")
        print(f"symmetric: {'yes' if report.symmetric else 'no'}")
        print(f"even diagonal: {'yes' if report.even_diagonal else 'no'}")
        print(f"nondegenerate: {'yes' if report.nondegenerate else 'no'}")
        print(f"signature: {tuple(sig) if sig else 'n/a'}")
        if payload["polarization_ok"]:
            print(f"polarization: ok, certificates verified: "
                  f"{payload['certificates_verified']}")
        elif payload["polarization_error"]:
            print(f"polarization: {payload['polarization_error']}")
        print(f"status: {'ok' if failure is None else 'fail'}")
    if failure is not None:
        print(failure, file=sys.stderr)
        return 1
    return 0


def cmd_pell(args) -> int:
    solution = pell.fundamental_solution(args.n)
    cf = pell.cf_sqrt(args.n)
    if args.format == "json":
        emit_json({"n": args.n, "x": solution.x, "y": solution.y,
                   "a0": cf.a0, "period": list(cf.period)})
    else:
        period = ",".join(str(a) for a in (cf.a0,) + cf.period)
        print(f"x={solution.x} y={solution.y} period=[{period}]")
    return 0


def _emit_class_list(args, result: enumeration.ClassList) -> int:
    if args.format == "csv":
        rank = len(result.classes[0].coords) if len(result) else None
        if rank is None:
            # fall back to the document for the header width
            rank = load_document(args.lattice).lattice.rank
        header = "degree,square," + ",".join(f"c{i}" for i in range(rank))
        print(header)
        for cls in result:
            row = [str(cls.degree), str(cls.square)] + [str(c) for c in cls.coords]
            print(",".join(row))
    elif args.format == "json":
        emit_json({
            "classes": [{"degree": c.degree, "square": c.square,
                         "coords": list(c.coords)} for c in result],
            "complete_up_to": result.complete_up_to,
            "count": len(result),
        })
    else:
        for cls in result:
            print(f"degree={cls.degree} square={cls.square} "
                  f"coords={fmt_coords(cls.coords)}")
        print(f"complete_up_to={result.complete_up_to} count={len(result)}")
    return 0


def cmd_enumerate(args, target_square: int) -> int:
    document = load_document(args.lattice)
    query = enumeration.EnumerationQuery(
        target_square=target_square,
        max_degree=args.max_degree,
        primitive_only=args.primitive,
    )
    result = enumeration.classes_with_square(
        document.polarization, query, workers=args.jobs)
    return _emit_class_list(args, result)


def cmd_nodal(args) -> int:
    document = load_document(args.lattice)
    nodal = cone.nodal_candidates(document.polarization, args.max_degree)
    return _emit_class_list(args, nodal.candidates)


def cmd_classify(args) -> int:
    document = load_document(args.lattice)
    verdict = cone.classify_dichotomy(
        document.polarization, args.max_degree, document.certificates)
    if args.format == "json":
        emit_json({
            "verdict": verdict.verdict.value,
            "witness": list(verdict.witness) if verdict.witness else None,
            "search_bound": verdict.search_bound,
            "rank2_case": verdict.rank2_case,
        })
    else:
        line = f"verdict={verdict.verdict.value} search_bound={verdict.search_bound}"
        if verdict.witness is not None:
            line += f" witness={fmt_coords(verdict.witness)}"
        if verdict.rank2_case is not None:
            line += f" rank2_case={verdict.rank2_case}"
        print(line)
    return 0


def cmd_qeps_count(args) -> int:
    document = load_document(args.lattice)
    eps = parse_epsilon(args.epsilon)
    count = cone.count_outside_qeps(document.polarization, eps, args.max_degree)
    if args.format == "json":
        emit_json({"count": count, "epsilon": fmt_fraction(eps),
                   "max_degree": args.max_degree})
    else:
        print(f"count={count} epsilon={fmt_fraction(eps)} "
              f"max_degree={args.max_degree}")
    return 0


def cmd_opposite(args) -> int:
    document = load_document(args.lattice)
    witness = constructions.opposite_class(
        document.polarization, parse_vector(args.e), parse_vector(args.d))
    payload = {
        "f": list(witness.f),
        "alpha": witness.alpha,
        "beta": witness.beta,
        "case": witness.case_tag.value,
        "A": witness.a,
        "B": witness.b,
        "C": witness.c,
        "N": witness.n,
        "x": witness.pell_x,
        "y": witness.pell_y,
    }
    if args.format == "json":
        emit_json(payload)
    else:
        parts = [f"f={fmt_coords(witness.f)}", f"alpha={witness.alpha}",
                 f"beta={witness.beta}", f"case={witness.case_tag.value}",
                 f"A={witness.a}", f"B={witness.b}", f"C={witness.c}"]
        if witness.n is not None:
            parts.append(f"N={witness.n}")
        if witness.pell_x is not None:
            parts.append(f"x={witness.pell_x} y={witness.pell_y}")
        print(" ".join(parts))
    return 0


def cmd_dn_seq(args) -> int:
    document = load_document(args.lattice)
    seq = constructions.dn_sequence(
        document.polarization,
        parse_vector(args.e), parse_vector(args.d), parse_vector(args.l),
        n_from=args.n_from, n_to=args.n_to,
        allow_small_n=args.allow_small_n,
    )
    if args.format == "json":
        emit_json({
            "A": seq.a, "B": seq.b, "C": seq.c, "guard": seq.guard,
            "monotone_from": seq.monotone_from,
            "terms": [{"n": t.n, "vector": list(t.vector), "sign": t.sign,
                       "degree": t.degree,
                       "ray_gap_sq": fmt_fraction(t.ray_gap_sq)}
                      for t in seq.terms],
        })
    else:
        print(f"A={seq.a} B={seq.b} C={seq.c} guard={seq.guard} "
              f"monotone_from={seq.monotone_from}")
        for t in seq.terms:
            print(f"n={t.n} d_n={fmt_coords(t.vector)} sign={t.sign:+d} "
                  f"degree={t.degree} ray_gap_sq={fmt_fraction(t.ray_gap_sq)}")
    return 0


def cmd_section(args) -> int:
    document = load_document(args.lattice)
    section = cone.cone_section(
        document.polarization, parse_plane(args.plane),
        max_degree=args.max_degree, resolution=args.resolution)
    if args.format == "csv":
        print("x,y,tag")
        for (x, y), tag in zip(section.polygon, section.ray_tags):
            print(f"{fmt_fraction(x)},{fmt_fraction(y)},{tag}")
    elif args.format == "json":
        emit_json({
            "polygon": [{"x": fmt_fraction(x), "y": fmt_fraction(y), "tag": tag}
                        for (x, y), tag in zip(section.polygon, section.ray_tags)],
            "complete_up_to": args.max_degree,
            "resolution": args.resolution,
        })
    else:
        for (x, y), tag in zip(section.polygon, section.ray_tags):
            print(f"x={fmt_fraction(x)} y={fmt_fraction(y)} tag={tag}")
        print(f"complete_up_to={args.max_degree} resolution={args.resolution}")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3cone",
        description="Exact cone-of-curves computations on hyperbolic even lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, lattice=True):
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")
        if lattice:
            p.add_argument("--lattice", required=True,
                           help="path to a lattice document (JSON)")

    p = sub.add_parser("validate", help="validate a lattice document")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pell", help="fundamental solution of x^2 - N y^2 = 1")
    add_common(p, lattice=False)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_pell)

    for name, square in (("roots", -2), ("isotropic", 0)):
        p = sub.add_parser(name, help=f"enumerate classes of square {square}")
        add_common(p)
        p.add_argument("--max-degree", type=int, required=True)
        p.add_argument("--primitive", action="store_true")
        p.add_argument("--jobs", type=int, default=1)
        p.set_defaults(func=lambda a, s=square: cmd_enumerate(a, s))

    p = sub.add_parser("nodal", help="indecomposable roots up to a degree bound")
    add_common(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_nodal)

    p = sub.add_parser("classify", help="round cone vs closure of nodal rays")
    add_common(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("qeps-count",
                       help="nodal candidates outside the eps-thickened quadric")
    add_common(p)
    p.add_argument("--epsilon", required=True, help="positive rational, e.g. 1/8")
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_qeps_count)

    p = sub.add_parser("opposite", help="opposite effective class across d")
    add_common(p)
    p.add_argument("-e", required=True, help="comma-separated coordinates")
    p.add_argument("-d", required=True, help="comma-separated coordinates")
    p.set_defaults(func=cmd_opposite)

    p = sub.add_parser("dn-seq", help="accumulating sequence of (-2)-classes")
    add_common(p)
    p.add_argument("-e", required=True)
    p.add_argument("-d", required=True)
    p.add_argument("-l", required=True)
    p.add_argument("--n-from", type=int, default=3)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--allow-small-n", action="store_true")
    p.set_defaults(func=cmd_dn_seq)

    p = sub.add_parser("section", help="degree-1 cross-section by a 2-plane")
    add_common(p)
    p.add_argument("--plane", required=True,
                   help="two vectors, e.g. '1,0,0;0,1,0'")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--resolution", type=int, default=64)
    p.set_defaults(func=cmd_section)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command not in CSV_CAPABLE:
        parser.error(f"--format csv is not available for {args.command}")
    try:
        return args.func(args)
    except K3ConeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
