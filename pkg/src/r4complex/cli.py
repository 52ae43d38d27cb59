"""Command-line front end: ``python -m r4complex <subcommand> INPUT [flags]``.

INPUT is a path to an existing file or, failing that, inline text.
Exit status is 0 on success, 2 when verification finds a violation and 1 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from .complex import SimplicialComplex2, complex_from_json, validate
from .embed import RealizedComplex, realize, realized_from_json, realized_to_json, to_off
from .exact import qstr
from .homology import (decomposition_from_relations, homology_groups, matrix_to_embedded_complex,
                       matrix_to_text, parse_matrix, smith_normal_form)
from .presentation import (Presentation, PresentationSyntaxError, binary_compress, binary_size,
                           format_presentation, parse, presentation_from_json,
                           presentation_to_json, unary_size)
from .verify import check_embedding, check_sigma_condition, report_to_json

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


def _read_input(arg: str) -> str:
    p = Path(arg)
    try:
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return arg


def _presentation(arg: str) -> Presentation:
    text = _read_input(arg).strip()
    try:
        if text.startswith("{"):
            return presentation_from_json(text)
        return parse(text)
    except PresentationSyntaxError as exc:
        raise InputError(f"presentation syntax error at offset {exc.pos}: {exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad presentation: {exc}") from None


def _matrix(arg: str):
    try:
        return parse_matrix(_read_input(arg))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad matrix: {exc}") from None


def _complex_or_realized(arg: str) -> SimplicialComplex2 | RealizedComplex:
    try:
        data = json.loads(_read_input(arg))
        if "coordinates" in data:
            return realized_from_json(data)
        return complex_from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad complex file: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, sort_keys=True, indent=2) + "\n" if args.format == "json" else text
    if not out.endswith("\n"):
        out += "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _verify(rc: RealizedComplex, args) -> tuple[dict, bool]:
    report = check_embedding(rc, prune=not args.no_prune, workers=args.workers)
    sigma = check_sigma_condition(rc, strict=False)
    ok = report.clean and sigma.holds
    return report_to_json(report, sigma), ok


def _verification_text(rep: dict) -> str:
    lines = [f"violations: {len(rep['violations'])}",
             f"degenerate simplices: {len(rep['degenerate'])}",
             f"checked pairs: {rep['checked_pairs']}",
             f"pruned pairs: {rep['pruned_pairs']}"]
    for v in rep["violations"]:
        lines.append(f"  {v['simplices'][0]} x {v['simplices'][1]} meet at ({', '.join(v['witness'])})")
    if "sigma" in rep:
        s = rep["sigma"]
        lines.append(f"sigma condition: {'holds' if s['holds'] else 'FAILS'} (bound {s['bound']})")
        lines += [f"  {p}" for p in s["problems"]]
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------------

def cmd_realize(args) -> int:
    P = _presentation(args.input)
    rc = realize(P, compress=args.compress)
    data = realized_to_json(rc)
    code = EXIT_OK
    if not args.no_verify:
        rep, ok = _verify(rc, args)
        if not ok:
            print(_verification_text(rep), file=sys.stderr)
            code = EXIT_VIOLATION
    if args.off:
        Path(args.off).write_text(to_off(rc))
    text = (f"realized {format_presentation(P)}: {rc.complex.V} vertices, {rc.complex.E} edges, "
            f"{rc.complex.T} triangles")
    _emit(args, data, text)
    return code


def cmd_verify(args) -> int:
    obj = _complex_or_realized(args.input)
    if not isinstance(obj, RealizedComplex):
        raise InputError("verify needs a realized complex (a file with coordinates)")
    if len(validate(obj.complex)):
        raise InputError("invalid complex: " + "; ".join(validate(obj.complex).lines()))
    rep, ok = _verify(obj, args)
    rep["clean"] = ok
    _emit(args, rep, _verification_text(rep))
    if not ok:
        print("verification failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_homology(args) -> int:
    obj = _complex_or_realized(args.input)
    K = obj.complex if isinstance(obj, RealizedComplex) else obj
    rep = validate(K)
    if len(rep):
        raise InputError("invalid complex: " + "; ".join(rep.lines()))
    hs = homology_groups(K)
    _emit(args, {f"H{i}": h.to_json() for i, h in enumerate(hs)},
          "\n".join(f"H{i} = {h}" for i, h in enumerate(hs)))
    return EXIT_OK


def cmd_snf(args) -> int:
    M = _matrix(args.input)
    res = smith_normal_form(M)
    payload = {"invariant_factors": list(res.invariant_factors),
               "U": res.U.tolist(), "V": res.V.tolist(), "shape": list(res.shape)}
    text = " ".join(map(str, res.invariant_factors))
    text += "\nU:\n" + matrix_to_text(res.U) + "\nV:\n" + matrix_to_text(res.V)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_compress(args) -> int:
    P = _presentation(args.input)
    C = binary_compress(P)
    payload = {"input": presentation_to_json(P), "output": presentation_to_json(C),
               "text": format_presentation(C),
               "unary_size": {"input": unary_size(P), "output": unary_size(C)},
               "binary_size": {"input": binary_size(P), "output": binary_size(C)}}
    text = "\n".join([format_presentation(C),
                      f"unary size: {unary_size(P)} -> {unary_size(C)}",
                      f"binary size: {binary_size(P)} -> {binary_size(C)}"])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    M = _matrix(args.input)
    rc = matrix_to_embedded_complex(M)
    expected = decomposition_from_relations(M)
    data = realized_to_json(rc)
    data["expected_h1"] = expected.to_json()
    code = EXIT_OK
    if not args.no_verify:
        rep, ok = _verify(rc, args)
        if not ok:
            print(_verification_text(rep), file=sys.stderr)
            code = EXIT_VIOLATION
    _emit(args, data, f"H1 = {expected}; {rc.complex.simplex_count} simplices")
    return code


def _stats_for(P: Presentation, compress: bool, verify: bool, args) -> dict:
    timings = {}
    t0 = time.perf_counter()
    rc = realize(P, compress=compress)
    timings["realize"] = time.perf_counter() - t0
    row = {"presentation": format_presentation(P),
           "unary_size": unary_size(P),
           "binary_size": binary_size(P),
           "stabilized_unary_size": unary_size(rc.presentation),
           "simplices": rc.complex.simplex_count,
           "delta_lb": qstr(rc.delta_lb)}
    row["size_ratio"] = qstr(Fraction(row["simplices"], row["stabilized_unary_size"]))
    t0 = time.perf_counter()
    row["h1"] = str(homology_groups(rc.complex)[1])
    timings["homology"] = time.perf_counter() - t0
    if verify:
        t0 = time.perf_counter()
        rep = check_embedding(rc, prune=not args.no_prune, workers=args.workers)
        timings["verify"] = time.perf_counter() - t0
        row["clean"] = rep.clean
        row["checked_pairs"] = rep.checked_pairs
        row["pruned_pairs"] = rep.pruned_pairs
    row["seconds"] = {k: round(v, 4) for k, v in timings.items()}
    return row


def _random_presentation(rng: random.Random) -> Presentation:
    n = rng.randint(1, 3)
    names = "abc"[:n]
    rels = []
    for _ in range(rng.randint(1, 3)):
        letters = []
        for _ in range(rng.randint(1, 4)):
            letters.append(f"{rng.choice(names)}^{rng.choice([-3, -2, -1, 1, 2, 3])}")
        rels.append(" ".join(letters))
    return parse(f"<{', '.join(names)} ; {', '.join(rels)}>")


def cmd_stats(args) -> int:
    verify = not args.no_verify
    if args.input is not None:
        rows = [_stats_for(_presentation(args.input), args.compress, verify, args)]
    else:
        rng = random.Random(args.seed)
        rows = [_stats_for(_random_presentation(rng), args.compress, verify, args)
                for _ in range(args.samples)]
    # size law over <a ; a^k>: two points fix the line, the rest must sit on it
    pts = []
    for k in range(4, 33, 4):
        rc = realize(parse(f"<a ; a^{k}>"))
        pts.append((unary_size(rc.presentation), rc.complex.simplex_count))
    (s0, c0), (s1, c1) = pts[0], pts[1]
    alpha = (c1 - c0) // (s1 - s0)
    beta = c0 - alpha * s0
    residual = max(abs(c - (alpha * s + beta)) for s, c in pts)
    payload = {"runs": rows, "seed": args.seed,
               "size_law": {"alpha": alpha, "beta": beta, "max_residual": residual,
                            "points": [list(p) for p in pts]}}
    lines = []
    for r in rows:
        lines.append(f"{r['presentation']}: s={r['unary_size']} b={r['binary_size']} "
                     f"s'={r['stabilized_unary_size']} simplices={r['simplices']} H1={r['h1']} "
                     + " ".join(f"{k}={v}s" for k, v in r["seconds"].items()))
    lines.append(f"size law: simplices = {alpha} * s(P') + {beta} (max residual {residual})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=None,
                        help="json is the default for realize and reduce, text elsewhere")
    common.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="verifier worker processes")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    common.add_argument("--no-verify", action="store_true", help="skip the embedding check")
    common.add_argument("--no-prune", action="store_true", help="check every pair exactly")
    common.add_argument("--compress", action="store_true", help="binary-compress exponents first")

    parser = argparse.ArgumentParser(prog="r4complex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    specs = [
        ("realize", cmd_realize, "presentation -> realized complex JSON"),
        ("verify", cmd_verify, "realized complex JSON -> verification report"),
        ("homology", cmd_homology, "complex or realized JSON -> H0, H1, H2"),
        ("snf", cmd_snf, "integer matrix -> invariant factors and transforms"),
        ("compress", cmd_compress, "presentation -> binary-compressed presentation"),
        ("reduce", cmd_reduce, "relation matrix -> realized complex with that H1"),
        ("stats", cmd_stats, "sizes, size-law constants and timings"),
    ]
    for name, fn, help_ in specs:
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "stats":
            p.add_argument("input", nargs="?", default=None)
            p.add_argument("--samples", type=int, default=5)
        else:
            p.add_argument("input")
        if name == "realize":
            p.add_argument("--off", metavar="PATH", help="also write a float OFF projection")
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if args.format is None:
        args.format = "json" if args.command in ("realize", "reduce") else "text"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
