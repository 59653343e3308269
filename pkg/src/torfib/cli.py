"""Command-line front end: file parsing, dispatch, and report rendering.

Matrix files follow the widespread "rows cols, then entries" text
convention, with an optional trailing ``blocks: d1 d2 ...`` line giving
the block sizes (default: every column its own block).  Reports go to
stdout; ``--json PATH`` additionally writes a structured report with all
integers as decimal strings, so nothing is lost to binary floating point.

Exit codes: 0 for any computed result (including negative verdicts),
1 for input or algorithmic errors, 2 for parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .config import BlockedConfiguration, check_condition_star, check_homogeneity, star_functional
from .criteria import ProductReport, analyze_product, is_normal
from .errors import MatrixParseError, TorfibError
from .graver import graver_basis
from .intlin import IntegerMatrix, integer_kernel
from .product import (
    DEFAULT_FIBER_BOUND,
    GraverTag,
    MixedTag,
    SimpleTag,
    check_neutral_tfp,
    degree_fiber_count,
    graver_columns,
    segre_presentation,
    tfp_config,
)
from .veronese import PartitionGrading, partition_blocked_config, veronese_config

# Worked-example data: the two configurations studied at length in the
# literature this tool accompanies.  `reproduce` runs on exactly these.
EXAMPLE_62 = {
    "A": ([[2, 0, 1], [0, 2, 1]], (1, 1, 1)),
    "B": ([[0, 2, 0, 1], [0, 0, 2, 1], [1, 0, 0, 0]], (2, 1, 1)),
    "C": ([[4, 0, 0, 0, 1], [0, 4, 0, 0, 1], [0, 0, 4, 0, 1], [0, 0, 0, 4, 1]], (2, 2, 1)),
}
EXAMPLE_63 = {
    "A": ([[1, 1, 1, 1], [1, 1, 0, 0], [1, 0, 1, 0]], (1, 1, 1, 1)),
    "B": (
        [
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 0, 1, 0, 0, 0, 0, 0],
            [0, 1, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 1, 0],
            [1, 0, 0, 0, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 1, 0, 0],
        ],
        (2, 2, 2, 2),
    ),
}


def _example_config(spec) -> BlockedConfiguration:
    rows, blocks = spec
    return BlockedConfiguration(IntegerMatrix.from_rows(rows), blocks)


def parse_matrix_text(text: str, name: str = "<input>") -> BlockedConfiguration:
    """Parse the matrix text format; errors carry line and column numbers."""
    tokens = []  # (string, line, col), 1-based positions
    for ln, raw in enumerate(text.splitlines(), start=1):
        col = 1
        for piece in raw.split(" "):
            for sub in piece.split("\t"):
                if sub:
                    tokens.append((sub, ln, col))
                col += len(sub) + 1
    if len(tokens) < 2:
        raise MatrixParseError("missing 'rows cols' header", 1)
    for idx in (0, 1):
        if not _is_int(tokens[idx][0]):
            raise MatrixParseError(
                f"malformed header: expected integer, got {tokens[idx][0]!r}",
                tokens[idx][1],
                tokens[idx][2],
            )
    nrows, ncols = int(tokens[0][0]), int(tokens[1][0])
    if nrows < 0 or ncols < 0:
        raise MatrixParseError("header dimensions must be non-negative", tokens[0][1])
    need = nrows * ncols
    entries = []
    pos = 2
    while len(entries) < need:
        if pos >= len(tokens):
            last = tokens[-1]
            raise MatrixParseError(
                f"entry count mismatch: expected {need} entries, found {len(entries)}",
                last[1],
                last[2],
            )
        tok, ln, col = tokens[pos]
        if not _is_int(tok):
            raise MatrixParseError(f"expected integer entry, got {tok!r}", ln, col)
        entries.append(int(tok))
        pos += 1
    blocks: Optional[tuple[int, ...]] = None
    if pos < len(tokens):
        tok, ln, col = tokens[pos]
        if tok not in ("blocks:", "blocks"):
            raise MatrixParseError(f"unexpected trailing content {tok!r}", ln, col)
        pos += 1
        sizes = []
        while pos < len(tokens):
            tok, ln2, col2 = tokens[pos]
            if not _is_int(tok):
                raise MatrixParseError(f"expected block size, got {tok!r}", ln2, col2)
            sizes.append(int(tok))
            pos += 1
        if sum(sizes) != ncols:
            raise MatrixParseError(
                f"block sizes sum to {sum(sizes)} but the matrix has {ncols} columns",
                ln,
                col,
            )
        if any(s < 0 for s in sizes):
            raise MatrixParseError("negative block size", ln, col)
        blocks = tuple(sizes)
    rows = [entries[i * ncols : (i + 1) * ncols] for i in range(nrows)]
    matrix = IntegerMatrix.from_rows(rows, ncols)
    if blocks is None:
        blocks = (1,) * ncols
    return BlockedConfiguration(matrix, blocks)


def _is_int(tok: str) -> bool:
    if tok and tok[0] in "+-":
        return tok[1:].isdigit()
    return tok.isdigit()


def parse_matrix_file(path: str) -> BlockedConfiguration:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixParseError(f"cannot read {path}: {exc.strerror}", 1) from exc
    return parse_matrix_text(text, path)


def serialize_config(cfg: BlockedConfiguration) -> str:
    lines = [f"{cfg.matrix.nrows} {cfg.matrix.ncols}"]
    for row in cfg.matrix.rows:
        lines.append(" ".join(str(x) for x in row))
    if any(s != 1 for s in cfg.block_sizes):
        lines.append("blocks: " + " ".join(str(s) for s in cfg.block_sizes))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# rendering helpers


def _fmt_vec(v: Sequence[int]) -> str:
    return "(" + " ".join(str(x) for x in v) + ")"


def _fmt_frac(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _json_matrix(m: IntegerMatrix):
    return [[str(x) for x in row] for row in m.rows]


def _json_vec(v) -> list[str]:
    return [str(x) for x in v]


def _one_based(seq) -> list[int]:
    return [i + 1 for i in seq]


def _json_tag(tag):
    if isinstance(tag, SimpleTag):
        return {"kind": "simple", "alpha": tag.alpha + 1, "beta": tag.beta + 1, "gamma": tag.gamma + 1}
    if isinstance(tag, GraverTag):
        return {
            "kind": "graver",
            "g": _json_vec(tag.g),
            "beta": _one_based(tag.beta),
            "gamma": _one_based(tag.gamma),
        }
    if isinstance(tag, MixedTag):
        def side(s):
            if s[0] == "simple":
                return {"kind": "simple", "alpha": s[1] + 1, "index": s[2] + 1}
            return {"kind": "graver", "g": _json_vec(s[1]), "sequence": _one_based(s[2])}

        return {"kind": "pair", "b": side(tag.b_side), "c": side(tag.c_side)}
    raise TypeError(f"unknown tag {tag!r}")


def _json_verdict(v):
    out = {
        "g": _json_vec(v.g),
        "beta": _one_based(v.beta),
        "gamma": _one_based(v.gamma),
        "vector": _json_vec(v.vector),
        "redundant": v.redundant,
        "integral": v.integral,
        "in_fraction_field": v.in_fraction_field,
    }
    if v.witness is not None:
        out["witness"] = {"kind": v.witness_kind, "coefficients": [_fmt_frac(x) for x in v.witness]}
    return out


def _report_json(report: ProductReport):
    out = {
        "columns": [_json_verdict(v) for v in report.verdicts],
        "all_redundant": report.all_redundant,
        "dense": report.dense,
        "finite": report.finite,
        "segre_equals_tfp": report.segre_equals_tfp,
    }
    if report.tfp_normal is not None:
        out["tfp_normal"] = report.tfp_normal
        if report.tfp_normal_hole is not None:
            out["tfp_normal_hole"] = _json_vec(report.tfp_normal_hole)
    if report.note:
        out["note"] = report.note
    return out


def _emit(payload: dict, json_path: Optional[str]) -> None:
    if json_path:
        blob = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        if json_path == "-":
            sys.stdout.write(blob)
        else:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(blob)


def _print_verdict_lines(report: ProductReport) -> None:
    for v in report.verdicts:
        print(
            f"column g={_fmt_vec(v.g)} beta={tuple(_one_based(v.beta))} "
            f"gamma={tuple(_one_based(v.gamma))}: "
            f"redundant={'yes' if v.redundant else 'no'} "
            f"integral={'yes' if v.integral else 'no'} "
            f"fraction_field={'yes' if v.in_fraction_field else 'no'}"
        )
    print(f"all redundant: {'yes' if report.all_redundant else 'no'}")
    print(f"dense (all in fraction field): {'yes' if report.dense else 'no'}")
    print(f"finite (all integral): {'yes' if report.finite else 'no'}")
    if report.tfp_normal is not None:
        print(f"fiber product normal: {'yes' if report.tfp_normal else 'no'}")
        if report.tfp_normal_hole is not None:
            print(f"hole: {_fmt_vec(report.tfp_normal_hole)}")
    if report.note:
        print(f"note: {report.note}")


# ---------------------------------------------------------------------------
# commands


def _cmd_kernel(args) -> int:
    cfg = parse_matrix_file(args.matrix)
    kernel = integer_kernel(cfg.matrix)
    print(f"codimension: {kernel.rank}")
    for v in kernel.basis:
        print(_fmt_vec(v))
    _emit(
        {"command": "kernel", "codim": kernel.rank, "basis": [_json_vec(v) for v in kernel.basis]},
        args.json,
    )
    return 0


def _cmd_graver(args) -> int:
    cfg = parse_matrix_file(args.matrix)
    basis = graver_basis(cfg)
    printed = set()
    for g in basis.elements:
        neg = tuple(-x for x in g)
        rep = max(g, neg)
        if rep not in printed:
            printed.add(rep)
            print("±" + _fmt_vec(rep))
    print(f"{len(basis.elements)} elements")
    _emit(
        {"command": "graver", "elements": [_json_vec(g) for g in basis.elements]},
        args.json,
    )
    return 0


def _cmd_star(args) -> int:
    cfg = parse_matrix_file(args.matrix)
    holds = check_condition_star(cfg)
    print(f"condition (*) holds: {'yes' if holds else 'no'}")
    payload = {"command": "star", "holds": holds}
    if holds:
        y = star_functional(cfg)
        print("functional: (" + " ".join(_fmt_frac(x) for x in y) + ")")
        payload["functional"] = [_fmt_frac(x) for x in y]
    _emit(payload, args.json)
    return 0


def _load_triple(args):
    a = parse_matrix_file(args.a)
    b = parse_matrix_file(args.b)
    c = parse_matrix_file(args.c)
    return a, b, c


def _cmd_tfp(args) -> int:
    a, b, c = _load_triple(args)
    product = tfp_config(a, b, c)
    print(f"fiber product: {product.ncols} columns in Z^{product.matrix.nrows}")
    for row in product.matrix.rows:
        print(" ".join(str(x) for x in row))
    _emit(
        {
            "command": "tfp",
            "matrix": _json_matrix(product.matrix),
            "columns": [_json_tag(t) for t in product.column_tags],
        },
        args.json,
    )
    return 0


def _cmd_segre(args) -> int:
    a, b, c = _load_triple(args)
    pres = segre_presentation(a, b, c, merge_duplicates=args.merge_duplicates)
    print(f"A': {pres.a_prime.matrix.ncols} columns")
    print(f"B': {pres.b_prime.matrix.ncols} columns, blocks {pres.b_prime.block_sizes}")
    print(f"C': {pres.c_prime.matrix.ncols} columns, blocks {pres.c_prime.block_sizes}")
    print(
        f"product: {pres.product.ncols} columns "
        f"({pres.product.simple_count} simple) in Z^{pres.product.matrix.nrows}"
    )
    for row in pres.product.matrix.rows:
        print(" ".join(str(x) for x in row))
    _emit(
        {
            "command": "segre",
            "merge_duplicates": args.merge_duplicates,
            "a_prime": _json_matrix(pres.a_prime.matrix),
            "b_prime": {
                "matrix": _json_matrix(pres.b_prime.matrix),
                "blocks": list(pres.b_prime.block_sizes),
            },
            "c_prime": {
                "matrix": _json_matrix(pres.c_prime.matrix),
                "blocks": list(pres.c_prime.block_sizes),
            },
            "product": {
                "matrix": _json_matrix(pres.product.matrix),
                "simple_count": pres.product.simple_count,
                "columns": [_json_tag(t) for t in pres.product.column_tags],
            },
        },
        args.json,
    )
    return 0


def _cmd_criteria(args) -> int:
    a, b, c = _load_triple(args)
    pres = segre_presentation(a, b, c, merge_duplicates=args.merge_duplicates)
    report = analyze_product(pres, check_normality=args.with_normality)
    _print_verdict_lines(report)
    _emit({"command": "criteria", **_report_json(report)}, args.json)
    return 0


def _cmd_normal(args) -> int:
    cfg = parse_matrix_file(args.matrix)
    result = is_normal(cfg.matrix)
    print(f"normal: {'yes' if result.normal else 'no'}")
    payload = {"command": "normal", "normal": result.normal}
    if result.hole is not None:
        print(f"hole: {_fmt_vec(result.hole)}")
        payload["hole"] = _json_vec(result.hole)
    _emit(payload, args.json)
    return 0


def _parse_partition(spec: str) -> PartitionGrading:
    parts = []
    for chunk in spec.split("|"):
        entries = [int(x) - 1 for x in chunk.split(",") if x.strip()]
        if not entries:
            raise MatrixParseError("empty partition part", 1)
        parts.append(entries)
    return PartitionGrading.from_parts(parts)


def _cmd_veronese(args) -> int:
    if args.partition:
        grading = _parse_partition(args.partition)
        a, b = partition_blocked_config(args.k, grading)
        print(f"grading configuration V({args.k},{grading.n0}):")
        print(serialize_config(a), end="")
        print(f"partitioned configuration V({args.k},{grading.n1}):")
        print(serialize_config(b), end="")
        _emit(
            {
                "command": "veronese",
                "k": args.k,
                "grading": _json_matrix(a.matrix),
                "blocked": {"matrix": _json_matrix(b.matrix), "blocks": list(b.block_sizes)},
            },
            args.json,
        )
    else:
        cfg = veronese_config(args.k, args.n)
        print(serialize_config(cfg), end="")
        _emit({"command": "veronese", "k": args.k, "n": args.n, "matrix": _json_matrix(cfg.matrix)}, args.json)
    return 0


def _reachable_degrees(a: BlockedConfiguration, steps: int) -> list[tuple[int, ...]]:
    degrees = {(0,) * a.ambient_dim}
    frontier = [(0,) * a.ambient_dim]
    cols = [a.column(alpha, 0) for alpha in range(a.block_count)]
    for _ in range(steps):
        nxt = []
        for d in frontier:
            for c in cols:
                nd = tuple(x + y for x, y in zip(d, c))
                if nd not in degrees:
                    degrees.add(nd)
                    nxt.append(nd)
        frontier = nxt
    return sorted(degrees)


def _cmd_neutral(args) -> int:
    a = parse_matrix_file(args.a)
    c = parse_matrix_file(args.c)
    verdict = check_neutral_tfp(a, c)
    print(f"kernel of A x_A C equals kernel of C: {'yes' if verdict else 'no'}")
    payload = {"command": "neutral", "kernels_equal": verdict}
    if args.fiber_steps > 0:
        cert = check_homogeneity(a, c)
        pres = segre_presentation(a, BlockedConfiguration.singleton(a.matrix), c)
        stacked_cert = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(a.ambient_dim))
            + (Fraction(0),) * c.ambient_dim
            for i in range(a.ambient_dim)
        )
        rows = []
        for degree in _reachable_degrees(a, args.fiber_steps):
            n_c = degree_fiber_count(c, cert, degree, bound=args.fiber_bound)
            n_p = degree_fiber_count(pres.product.matrix, stacked_cert, degree, bound=args.fiber_bound)
            rows.append({"degree": _json_vec(degree), "count_c": n_c, "count_product": n_p})
            print(f"degree {_fmt_vec(degree)}: C fiber {n_c}, product fiber {n_p}")
        payload["fibers"] = rows
    _emit(payload, args.json)
    return 0


def _reproduce_62() -> dict:
    a = _example_config(EXAMPLE_62["A"])
    b = _example_config(EXAMPLE_62["B"])
    c = _example_config(EXAMPLE_62["C"])
    kernel = integer_kernel(a.matrix)
    pres = segre_presentation(a, b, c)
    report = analyze_product(pres, check_normality=True)
    normal_b = is_normal(b.matrix)
    normal_c = is_normal(c.matrix)
    neutral = check_neutral_tfp(a, c)
    print("== worked example 6.2 ==")
    print(f"kernel basis: {', '.join(_fmt_vec(v) for v in kernel.basis)}")
    print(f"graver basis: {len(pres.graver.elements)} elements")
    print(f"simple columns: {pres.product.simple_count}")
    print(f"graver columns: {len(graver_columns(pres))}")
    _print_verdict_lines(report)
    print(f"B normal: {'yes' if normal_b.normal else 'no'}")
    print(f"C normal: {'yes' if normal_c.normal else 'no'}")
    print(f"neutral check (A, C): {'yes' if neutral else 'no'}")
    return {
        "command": "reproduce",
        "example": "6.2",
        "kernel": [_json_vec(v) for v in kernel.basis],
        "graver": [_json_vec(g) for g in pres.graver.elements],
        "simple_columns": pres.product.simple_count,
        "graver_columns": len(graver_columns(pres)),
        "b_normal": normal_b.normal,
        "c_normal": normal_c.normal,
        "neutral": neutral,
        "product_matrix": _json_matrix(pres.product.matrix),
        **_report_json(report),
    }


def _reproduce_63() -> dict:
    a = _example_config(EXAMPLE_63["A"])
    b = _example_config(EXAMPLE_63["B"])
    pres = segre_presentation(a, b, b)
    merged = segre_presentation(a, b, b, merge_duplicates=True)
    report = analyze_product(pres)
    print("== worked example 6.3 ==")
    print(f"graver basis: {len(pres.graver.elements)} elements")
    print(f"simple columns: {pres.product.simple_count}")
    print(f"graver columns: {len(graver_columns(pres))}")
    print(f"presentation columns: {pres.product.ncols}")
    print(f"presentation columns (merged duplicates): {merged.product.ncols}")
    _print_verdict_lines(report)
    essential = sum(1 for v in report.verdicts if not v.redundant)
    print(f"essential graver generators: {essential}")
    return {
        "command": "reproduce",
        "example": "6.3",
        "graver": [_json_vec(g) for g in pres.graver.elements],
        "simple_columns": pres.product.simple_count,
        "graver_columns": len(graver_columns(pres)),
        "presentation_columns": pres.product.ncols,
        "presentation_columns_merged": merged.product.ncols,
        "essential_columns": essential,
        "product_matrix": _json_matrix(pres.product.matrix),
        "product_matrix_merged": _json_matrix(merged.product.matrix),
        **_report_json(report),
    }


def _cmd_reproduce(args) -> int:
    if args.example == "6.2":
        payload = _reproduce_62()
    else:
        payload = _reproduce_63()
    _emit(payload, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torfib",
        description="Exact Graver bases, toric fiber products, and Segre presentations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", metavar="PATH", help="also write a JSON report ('-' for stdout)")

    p = sub.add_parser("kernel", help="integer kernel basis of a configuration")
    p.add_argument("matrix")
    add_json(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("graver", help="Graver basis of the integer kernel")
    p.add_argument("matrix")
    add_json(p)
    p.set_defaults(func=_cmd_graver)

    p = sub.add_parser("star", help="check the affine-hyperplane condition")
    p.add_argument("matrix")
    add_json(p)
    p.set_defaults(func=_cmd_star)

    p = sub.add_parser("tfp", help="fiber product configuration of B and C over A")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    add_json(p)
    p.set_defaults(func=_cmd_tfp)

    p = sub.add_parser("segre", help="Segre presentation A', B', C' and their product")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--merge-duplicates", action="store_true", help="identify equal degree columns of A'")
    add_json(p)
    p.set_defaults(func=_cmd_segre)

    p = sub.add_parser("criteria", help="redundancy/integrality/fraction-field verdicts")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--merge-duplicates", action="store_true")
    p.add_argument("--with-normality", action="store_true", help="also test the fiber product monoid")
    add_json(p)
    p.set_defaults(func=_cmd_criteria)

    p = sub.add_parser("normal", help="normality of the monoid generated by the columns")
    p.add_argument("matrix")
    add_json(p)
    p.set_defaults(func=_cmd_normal)

    p = sub.add_parser("veronese", help="Veronese configuration, optionally partition-blocked")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--partition", help="partition of 1..n, e.g. '1,2|3'")
    add_json(p)
    p.set_defaults(func=_cmd_veronese)

    p = sub.add_parser("neutral", help="neutrality checks for A against C")
    p.add_argument("a")
    p.add_argument("c")
    p.add_argument("--fiber-steps", type=int, default=0, help="also compare fiber counts up to this depth")
    p.add_argument(
        "--fiber-bound",
        type=int,
        default=int(os.environ.get("TORFIB_FIBER_BOUND", DEFAULT_FIBER_BOUND)),
        help="cap on monoid generation steps",
    )
    add_json(p)
    p.set_defaults(func=_cmd_neutral)

    p = sub.add_parser("reproduce", help="re-run a worked example end to end")
    p.add_argument("example", choices=["6.2", "6.3"])
    add_json(p)
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MatrixParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except TorfibError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
