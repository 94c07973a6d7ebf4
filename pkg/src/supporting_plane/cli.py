"""Command-line interface: ``decide``, ``classify`` and ``selftest``.

Exit codes: 0 success, 1 parse error, 2 invalid input or usage,
3 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import chem
from .exact import ParseError, format_rational, parse_decimal
from .separability import (InputError, Verdict, VectorSet, decide,
                           farkas_oracle, verify_certificate)

EXIT_OK, EXIT_PARSE, EXIT_INPUT, EXIT_SELFTEST = 0, 1, 2, 3

# Knuth's MMIX constants; see LinearCongruential.
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MASK = (1 << 64) - 1


class LinearCongruential:
    """Seeded generator for self-test tuples, fixed so runs are reproducible.

    ``state = (6364136223846793005 * state + 1442695040888963407) mod 2**64``
    starting from ``state = seed mod 2**64``.  Each integer in ``[-R, R]``
    advances the state once and takes ``((state >> 33) mod (2R + 1)) - R``.
    """

    def __init__(self, seed: int):
        self.state = seed & LCG_MASK

    def next_int(self, bound: int) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & LCG_MASK
        return ((self.state >> 33) % (2 * bound + 1)) - bound

    def vector_set(self, k: int, dim: int, bound: int) -> VectorSet:
        return VectorSet(dim, tuple(tuple(self.next_int(bound) for _ in range(dim))
                                    for _ in range(k)))


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None


def parse_csv_vectors(text: str):
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append(tuple(parse_decimal(tok) for tok in line.split(",")))
        except ParseError as exc:
            exc.line = lineno
            raise
    return rows


def parse_json_vectors(text: str):
    try:
        data = json.loads(text, parse_float=parse_decimal, parse_int=parse_decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("JSON input must be an array of arrays")
    rows = []
    for row in data:
        out = []
        for c in row:
            if isinstance(c, str):
                c = parse_decimal(c)
            elif isinstance(c, bool) or not isinstance(c, (int, Fraction)):
                raise ParseError(f"coordinate {c!r} is not a number or decimal string")
            out.append(c)
        rows.append(tuple(out))
    return rows


def _certificate_text(verdict: Verdict) -> str:
    cert = verdict.to_json()["certificate"]
    if cert is None:
        return ""
    (name, values), = cert.items()
    return f"{name}: {' '.join(values)}"


def decide_cmd(args) -> int:
    text = _read(args.input)
    rows = parse_csv_vectors(text) if args.format == "csv" else parse_json_vectors(text)
    if not rows:
        raise CliError("no vectors in input", EXIT_INPUT)
    verdict = decide(VectorSet.of(rows), want_certificate=args.certificate)
    if args.output == "json":
        print(json.dumps(verdict.to_json()))
    else:
        print(verdict.outcome.value)
        if args.certificate:
            print(_certificate_text(verdict))
    return EXIT_OK


def parse_scale(text: str) -> Fraction:
    m = re.fullmatch(r"\s*([+-]?\d+)\s*/\s*(\d+)\s*", text)
    if m:
        if int(m.group(2)) == 0:
            raise CliError("bond scale has a zero denominator", EXIT_INPUT)
        value = Fraction(int(m.group(1)), int(m.group(2)))
    else:
        try:
            value = Fraction(parse_decimal(text))
        except ParseError as exc:
            raise CliError(f"invalid bond scale: {exc}", EXIT_INPUT) from None
    if value <= 0:
        raise CliError("bond scale must be positive", EXIT_INPUT)
    return value


def classify_cmd(args) -> int:
    scale = parse_scale(args.bond_scale)
    radii = chem.load_radii(args.radii) if args.radii else None
    molecule = chem.parse_xyz(_read(args.path))
    bonds = chem.infer_bonds(molecule, scale, radii)
    report = chem.classify_carbons(molecule, bonds)
    elements = [a.element for a in molecule.atoms]
    if args.output == "json":
        carbons = []
        for c in report.classified:
            rec = {"index": c.atom_index,
                   "neighbors": list(c.neighbor_indices),
                   "neighbor_elements": [elements[n] for n in c.neighbor_indices],
                   "label": c.label}
            if args.certificate:
                rec["certificate"] = c.verdict.to_json()["certificate"]
            carbons.append(rec)
        skipped = [{"index": s.atom_index, "bonds": s.bond_count, "reason": s.reason}
                   for s in report.skipped]
        print(json.dumps({"carbons": carbons, "skipped": skipped}))
        return EXIT_OK
    for c in report.classified:
        nbrs = ", ".join(f"{n}:{elements[n]}" for n in c.neighbor_indices)
        print(f"atom {c.atom_index} C [{nbrs}] {c.label}")
        if args.certificate:
            print(f"  {_certificate_text(c.verdict)}")
    for s in report.skipped:
        print(f"atom {s.atom_index} C skipped: {s.reason}")
    if not report.classified and not report.skipped:
        print("no carbon atoms")
    return EXIT_OK


def run_selftest(trials: int, seed: int, bound: int):
    """Compare decide with the LP oracle on seeded random 4x3 tuples.

    Returns ``(agree, failures)`` where each failure is ``(trial, vectors,
    problem)``.
    """
    rng = LinearCongruential(seed)
    agree = 0
    failures = []
    for trial in range(trials):
        vs = rng.vector_set(4, 3, bound)
        fast = decide(vs, want_certificate=True)
        oracle = farkas_oracle(vs)
        problems = []
        if fast.outcome is not oracle.outcome:
            problems.append(f"decide={fast.outcome.value} oracle={oracle.outcome.value}")
        if not verify_certificate(vs, fast):
            problems.append("decide certificate fails")
        if not verify_certificate(vs, oracle):
            problems.append("oracle certificate fails")
        if problems:
            failures.append((trial, vs.vectors, "; ".join(problems)))
        else:
            agree += 1
    return agree, failures


def selftest_cmd(args) -> int:
    if args.trials < 1:
        raise CliError("--trials must be at least 1", EXIT_INPUT)
    if args.range < 1:
        raise CliError("--range must be at least 1", EXIT_INPUT)
    agree, failures = run_selftest(args.trials, args.seed, args.range)
    if args.output == "json":
        print(json.dumps({
            "trials": args.trials, "seed": args.seed, "range": args.range,
            "agree": agree,
            "failures": [{"trial": t, "vectors": [[format_rational(c) for c in v]
                                                  for v in vecs], "problem": p}
                         for t, vecs, p in failures]}))
    else:
        for t, vecs, p in failures:
            print(f"trial {t}: {list(map(list, vecs))}: {p}")
        print(f"{agree}/{args.trials} agree")
    return EXIT_OK if not failures else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supporting-plane",
        description="Exact supporting-hyperplane decisions with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide a set of vectors")
    p.add_argument("--input", default="-", help="file path, or - for stdin")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=decide_cmd)

    p = sub.add_parser("classify", help="classify 4-bonded carbons in an XYZ file")
    p.add_argument("path")
    p.add_argument("--bond-scale", default="23/20",
                   help="bond tolerance factor, P/Q or decimal (default 23/20)")
    p.add_argument("--radii", help="JSON file of element -> covalent radius")
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=classify_cmd)

    p = sub.add_parser("selftest", help="fuzz the fast path against the LP oracle")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--range", type=int, required=True)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=selftest_cmd)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InputError, CliError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "code", EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
