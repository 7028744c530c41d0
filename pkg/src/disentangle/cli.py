"""Command line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 mathematical error,
4 Groebner budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import __version__
from .bounds import (GermProfile, admissible_total_degrees, check_betti, displayed_formula_degrees,
                     first_page_mask)
from .documents import (complex_from_document, diagram_from_document, dumps, germ_from_document,
                        load_json, profile_from_document)
from .equivariant import validate
from .errors import DisentangleError, InputError
from .groebner import DEFAULT_BUDGET
from .image_homology import analyze, diagram_violations
from .multipoint import Verdict, dim_check, dk_ideal

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_MATH, EXIT_BUDGET = 0, 1, 2, 3, 4


def _read(path: str) -> tuple[dict, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8") from None
    return load_json(text), hashlib.sha256(raw).hexdigest()


def _result(command: list, digest: str | None, outputs: dict, checks: list) -> dict:
    return {"command": command, "inputs_digest": digest, "outputs": outputs,
            "checks": [{"name": n, "pass": bool(ok)} for n, ok in checks]}


def _grid(dims: list[list[int]], zero: str = "×") -> str:
    """Rows q from the top, columns k = p + 1."""
    height = max((len(c) for c in dims), default=0)
    cells = [[(str(c[q]) if c[q] else zero) if q < len(c) else zero for c in dims]
             for q in range(height)]
    w = max([len(s) for row in cells for s in row] + [len(str(len(dims)))])
    qw = len(str(max(height - 1, 0)))
    lines = [f"{str(q).rjust(qw)} | " + " ".join(s.rjust(w) for s in cells[q])
             for q in range(height - 1, -1, -1)]
    lines.append("-" * (qw + 1) + "+" + "-" * (len(dims) * (w + 1)))
    lines.append(" " * qw + " k " + " ".join(str(p + 1).rjust(w) for p in range(len(dims))))
    return "\n".join(lines)


def cmd_divdiff(args) -> tuple[dict, list[str], int]:
    doc, digest = _read(args.germ)
    germ = germ_from_document(doc)
    if args.k < 2:
        raise InputError("--k must be at least 2")
    ideal = dk_ideal(germ, args.k)
    gens = [str(g) for g in ideal.generators]
    out = _result(["divdiff", args.germ, "--k", str(args.k)], digest,
                  {"k": args.k, "variables": list(ideal.variables), "generators": gens}, [])
    return out, gens, EXIT_OK


def cmd_dimcheck(args) -> tuple[dict, list[str], int]:
    doc, digest = _read(args.germ)
    germ = germ_from_document(doc)
    report = dim_check(germ, args.kmax, budget=args.budget)
    lines = [f"germ {germ}", f"{'k':>3} {'expected':>9} {'actual':>8}"]
    for r in report.records:
        actual = "empty" if r.is_empty else str(r.actual_dim)
        lines.append(f"{r.k:>3} {r.expected_dim:>9} {actual:>8}")
    lines.append(f"verdict: {report.verdict.value}")
    checks = [(f"D^{r.k} expected dimension", r.ok) for r in report.records]
    echo = ["dimcheck", args.germ] + (["--kmax", str(args.kmax)] if args.kmax else [])
    out = _result(echo, digest, report.as_dict(), checks)
    code = EXIT_OK if report.verdict is Verdict.DIMENSIONALLY_CORRECT else EXIT_CHECK
    return out, lines, code


def _parse_profile(text: str) -> GermProfile:
    try:
        n, N, d = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--profile expects n,N,d, got {text!r}") from None
    return GermProfile(n, N, d)


def cmd_image(args) -> tuple[dict, list[str], int]:
    doc, digest = _read(args.diagram)
    diagram = diagram_from_document(doc)
    profile = _parse_profile(args.profile) if args.profile else profile_from_document(doc)
    result = analyze(diagram)
    outputs = result.as_dict()
    checks = sorted(result.checks.items())
    lines = []
    for r, grid in sorted(result.pages.pages.items()):
        lines += [f"E^{r}", _grid(grid), ""]
    lines.append(f"E^inf = E^{result.pages.r_infinity}")
    lines.append("betti: " + " ".join(str(b) for b in result.betti))
    ok = result.ok
    if profile is not None:
        verdict = check_betti(result.betti, profile)
        outputs["profile"] = {"n": profile.n, "N": profile.N, "d": profile.d}
        outputs["bound_check"] = verdict.as_dict()
        checks.append(("theorem bound", verdict.consistent))
        lines.append(f"profile (n, N, d) = ({profile.n}, {profile.N}, {profile.d}): "
                     f"{verdict.verdict.value}")
        lines += [f"  {reason}" for reason in verdict.reasons]
        ok = ok and verdict.consistent
    for name, passed in sorted(result.checks.items()):
        lines.append(f"check {name}: {'pass' if passed else 'FAIL'}")
    echo = ["image", args.diagram] + (["--profile", args.profile] if args.profile else [])
    return _result(echo, digest, outputs, checks), lines, EXIT_OK if ok else EXIT_CHECK


def cmd_validate(args) -> tuple[dict, list[str], int]:
    doc, digest = _read(args.diagram)
    try:
        if "levels" in doc:
            violations = diagram_violations(diagram_from_document(doc, check=False))
        else:
            violations = validate(complex_from_document(doc, check=False)).violations
    except InputError:
        raise
    except DisentangleError as exc:
        violations = [str(exc)]
    lines = [f"violation: {v}" for v in violations] or ["valid"]
    out = _result(["validate", args.diagram], digest, {"violations": violations},
                  [("structure", not violations)])
    return out, lines, EXIT_CHECK if violations else EXIT_OK


def cmd_bounds(args) -> tuple[dict, list[str], int]:
    profile = GermProfile(args.n, args.N, args.d)
    mask = first_page_mask(profile)
    degrees = sorted(admissible_total_degrees(profile))
    displayed = sorted(displayed_formula_degrees(profile))
    lines = [f"first page mask for (n, N, d) = ({args.n}, {args.N}, {args.d})", mask.render(), "",
             "admissible total degrees (totalized mask): " + ", ".join(map(str, degrees)),
             "closed-form reading k(n+1)-(k-1)N-s: " + ", ".join(map(str, displayed))]
    if set(displayed) | {0} != set(degrees):
        lines.append("note: the two readings differ; the totalized mask is authoritative")
    outputs = {"profile": {"n": args.n, "N": args.N, "d": args.d},
               "mask": {str(k): qs for k, qs in sorted(mask.allowed.items())},
               "admissible_total_degrees": degrees,
               "displayed_formula_degrees": displayed,
               "readings_agree": set(displayed) | {0} == set(degrees)}
    return _result(["bounds", str(args.n), str(args.N), str(args.d)], None, outputs, []), lines, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output only")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, metavar="STEPS",
                        help=f"Groebner S-polynomial cap (default {DEFAULT_BUDGET})")

    parser = argparse.ArgumentParser(prog="disentangle", parents=[common],
                                     description="Multiple point spaces and image homology of corank-one germs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("divdiff", parents=[common], help="divided-difference generators of D^k")
    p.add_argument("germ")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_divdiff)

    p = sub.add_parser("dimcheck", parents=[common], help="dimensional correctness report")
    p.add_argument("germ")
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(func=cmd_dimcheck)

    p = sub.add_parser("image", parents=[common], help="spectral pages and Betti numbers of the image")
    p.add_argument("diagram")
    p.add_argument("--profile", default=None, metavar="n,N,d")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("validate", parents=[common], help="structural checks on a diagram")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bounds", parents=[common], help="first page mask and admissible degrees")
    p.add_argument("n", type=int)
    p.add_argument("N", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.json = getattr(args, "json", False)
    args.budget = getattr(args, "budget", DEFAULT_BUDGET)
    try:
        result, lines, code = args.func(args)
    except DisentangleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        sys.stdout.write(dumps(result))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
