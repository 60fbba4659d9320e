"""Command-line front end.

One invocation runs one job: a map (inline text, file, or built-in fixture)
plus a point, through the canonical height machinery, reporting the naive
height, both series values with their tail bounds, the assembled canonical
height with its error bound, and timing.  Structured output is a single
JSON document whose numeric fields are decimal strings, because the values
routinely carry more digits than any fixed-width float holds.

Exit codes: 0 success, 2 input could not be parsed or validated, 3 the two
forms share a projective root (not a morphism), 4 a resource budget was
exceeded.  Error paths print nothing to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import textwrap
import time
from dataclasses import dataclass

import mpmath as mp

from .fixtures import fixture_ids, load_fixture
from .forms import NotAMorphismError, ParseError, parse_map, parse_point
from .height import BudgetExceededError, canonical_height, canonical_height_oracle
from .nonarch import trial_division
from .numerics import to_decimal_string

__all__ = ["JobSpec", "main", "run"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_MORPHISM = 3
EXIT_BUDGET = 4

_TEXT_DIGITS = 32


@dataclass
class JobSpec:
    """One CLI job: exactly one map source, a point, and the run options."""

    map_text: str | None = None
    map_file: str | None = None
    fixture: str | None = None
    point_text: str | None = None
    terms: int = 50
    precision_bits: int | None = None
    trial_bound: int = 100_000
    factor: bool = True
    emit_g_sequence: bool = False
    oracle_n: int | None = None
    output_format: str = "text"


def run(spec: JobSpec) -> tuple[int, str]:
    """Execute one job and return (exit_code, report or error message).

    Nothing is printed from here and the report is built only after the
    whole computation succeeded, so failures produce no partial output.
    """
    try:
        return EXIT_OK, _execute(spec)
    except NotAMorphismError as exc:
        return EXIT_NOT_MORPHISM, f"error: {exc}"
    except BudgetExceededError as exc:
        return EXIT_BUDGET, f"error: {exc}"
    except KeyError as exc:
        return EXIT_PARSE, f"error: {exc.args[0] if exc.args else exc}"
    except (ParseError, ValueError, OSError) as exc:
        return EXIT_PARSE, f"error: {exc}"


def _execute(spec: JobSpec) -> str:
    sources = [s for s in (spec.map_text, spec.map_file, spec.fixture) if s]
    if len(sources) != 1:
        raise ValueError("exactly one of --map, --map-file, or --fixture is required")
    if spec.terms < 1:
        raise ValueError("--terms must be at least 1")
    if spec.output_format not in ("text", "json"):
        raise ValueError("--format must be text or json")

    started = time.perf_counter()
    if spec.fixture:
        fixture = load_fixture(spec.fixture)
        lift = fixture.lift()
        point = parse_point(spec.point_text) if spec.point_text else fixture.point()
    else:
        if spec.map_file:
            with open(spec.map_file, encoding="utf-8") as fh:
                map_text = fh.read()
        else:
            map_text = spec.map_text or ""
        lift = parse_map(map_text)
        if not spec.point_text:
            raise ValueError("--point is required when the map is given directly")
        point = parse_point(spec.point_text)

    parts = None
    if spec.factor and abs(lift.resultant) > 1:
        parts = trial_division(abs(lift.resultant), spec.trial_bound)
    breakdown = canonical_height(
        lift,
        point,
        terms=spec.terms,
        precision_bits=spec.precision_bits,
        factoring=parts,
    )
    oracle_seq = (
        canonical_height_oracle(lift, point, spec.oracle_n)
        if spec.oracle_n is not None
        else None
    )
    elapsed = time.perf_counter() - started

    doc = _document(spec, lift, point, parts, breakdown, oracle_seq, elapsed)
    if spec.output_format == "json":
        return json.dumps(doc, indent=2)
    return _render_text(doc)


def _short_int(n: int) -> str:
    s = str(abs(n))
    sign = "-" if n < 0 else ""
    if len(s) <= 12:
        return sign + s
    return f"{sign}{s[0]}.{s[1:4]}e+{len(s) - 1}"


def _short_real(value, bits: int, digits: int = _TEXT_DIGITS) -> str:
    with mp.workprec(bits):
        return mp.nstr(mp.mpf(value), digits)


def _document(spec, lift, point, parts, breakdown, oracle_seq, elapsed) -> dict:
    bits = breakdown.precision_bits
    na, ar = breakdown.nonarch, breakdown.arch

    def dec(x) -> str:
        return to_decimal_string(x, bits)

    doc: dict = {
        "map": {
            "degree": lift.degree,
            "coeff_norm": str(lift.coeff_norm),
            "resultant_bits": abs(lift.resultant).bit_length(),
        },
        "point": f"[{point.x}, {point.y}]",
        "precision_bits": bits,
        "naive_height": dec(breakdown.naive),
        "nonarch": {
            "terms": na.terms,
            "value": dec(na.value),
            "tail_bound": dec(na.tail_bound),
            "modulus_bits": na.modulus_bits,
        },
        "arch": {
            "terms": ar.terms,
            "value": dec(ar.value),
            "tail_bound": dec(ar.tail_bound),
            "step_bound": dec(ar.step_bound),
        },
        "canonical_height": dec(breakdown.canonical),
        "error_bound": dec(breakdown.error_bound),
        "factoring": (
            {
                "trial_bound": spec.trial_bound,
                "parts": [
                    {"decimal": str(p), "bits": p.bit_length(), "provenance": tag}
                    for p, tag in zip(parts.coprime_parts, parts.provenance)
                ],
            }
            if parts is not None
            else None
        ),
        "elapsed_seconds": f"{elapsed:.3f}",
    }
    if spec.emit_g_sequence:
        doc["nonarch"]["gcd_sequence"] = [str(g) for g in na.gcd_sequence]
    if oracle_seq is not None:
        doc["oracle"] = [dec(v) for v in oracle_seq]
    return doc


def _render_text(doc: dict) -> str:
    bits = doc["precision_bits"]

    def short(field: str) -> str:
        with mp.workprec(bits):
            return mp.nstr(mp.mpf(field), _TEXT_DIGITS)

    def bound(field: str) -> str:
        with mp.workprec(bits):
            return mp.nstr(mp.mpf(field), 3)

    lines = [
        "map: degree {d}, coefficient norm {norm}, resultant {rb} bits".format(
            d=doc["map"]["degree"],
            norm=_short_int(int(doc["map"]["coeff_norm"])),
            rb=doc["map"]["resultant_bits"],
        ),
        f"point: {doc['point'] if len(doc['point']) <= 64 else doc['point'][:60] + '...]'}",
        "run: {n} nonarch terms, {a} arch terms, precision {b} bits".format(
            n=doc["nonarch"]["terms"], a=doc["arch"]["terms"], b=bits
        ),
    ]
    fac = doc["factoring"]
    if fac is None:
        lines.append("factoring: off (single-modulus loop)")
    else:
        rendered = ", ".join(
            f"{_short_int(int(part['decimal']))} ({part['provenance']})"
            for part in fac["parts"]
        )
        lines.append(f"factoring: trial division up to {fac['trial_bound']}; parts: {rendered}")
    lines += [
        "",
        f"naive height     = {short(doc['naive_height'])}",
        f"nonarch series   = {short(doc['nonarch']['value'])}   [tail <= {bound(doc['nonarch']['tail_bound'])}]",
        f"arch series      = {short(doc['arch']['value'])}   [tail <= {bound(doc['arch']['tail_bound'])}]",
        f"canonical height = {short(doc['canonical_height'])}   [error <= {bound(doc['error_bound'])}]",
        "",
        f"working modulus: {doc['nonarch']['modulus_bits']} bits",
    ]
    if "gcd_sequence" in doc["nonarch"]:
        lines.append("gcd sequence: " + ", ".join(doc["nonarch"]["gcd_sequence"]))
    if "oracle" in doc:
        lines.append("exact-orbit heights (value at step n, divided by d^n):")
        for n, v in enumerate(doc["oracle"]):
            lines.append(f"  n={n}: {short(v)}")
    lines.append(f"elapsed: {doc['elapsed_seconds']} s")
    return "\n".join(lines)


def _render_catalog(output_format: str) -> str:
    fixtures = [load_fixture(fid) for fid in fixture_ids()]
    if output_format == "json":
        return json.dumps(
            [
                {
                    "id": fx.fixture_id,
                    "title": fx.title,
                    "degree": fx.degree,
                    "point": fx.point_label,
                    "provenance": fx.provenance,
                    "expected": dict(fx.expected),
                }
                for fx in fixtures
            ],
            indent=2,
        )
    blocks = []
    for fx in fixtures:
        lines = [
            f"{fx.fixture_id}  degree {fx.degree}  point {fx.point_label}",
            f"    {fx.title}",
        ]
        lines += textwrap.wrap(fx.provenance, width=76, initial_indent="    ", subsequent_indent="    ")
        lines.append("    expected:")
        for label, value in fx.expected:
            lines.append(f"      {label}: {value}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p1height",
        description=(
            "Canonical heights of rational points of the projective line under "
            "degree-d self-maps, without factoring resultants."
        ),
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument(
        "--map",
        dest="map_text",
        metavar="TEXT",
        help="map as 'F = ...; G = ...' in X, Y or as 'phi(z) = (...)/(...)'",
    )
    source.add_argument("--map-file", metavar="PATH", help="read the map text from a file")
    source.add_argument(
        "--fixture", metavar="ID", help="run a built-in example (see --list-fixtures)"
    )
    parser.add_argument(
        "--point",
        dest="point_text",
        metavar="TEXT",
        help="point as '[x, y]' or a single rational; fixtures provide a default",
    )
    parser.add_argument(
        "--terms", type=int, default=50, metavar="N", help="series terms (default 50)"
    )
    parser.add_argument(
        "--precision",
        dest="precision_bits",
        type=int,
        default=None,
        metavar="BITS",
        help="working precision; the default grows with terms, degree, and coefficient size",
    )
    parser.add_argument(
        "--trial-bound",
        type=int,
        default=100_000,
        metavar="B",
        help="trial-division bound for splitting the resultant (default 100000)",
    )
    parser.add_argument(
        "--no-factor",
        action="store_true",
        help="skip trial division and run the single-modulus loop",
    )
    parser.add_argument(
        "--emit-g-sequence",
        action="store_true",
        help="include the per-step gcd values in the report",
    )
    parser.add_argument(
        "--oracle",
        dest="oracle_n",
        type=int,
        default=None,
        metavar="N",
        help="also compute N steps of the exact-orbit definition (slow; guarded by a digit budget)",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=("text", "json"),
        default="text",
        help="report format (default text; json uses decimal strings throughout)",
    )
    parser.add_argument(
        "--list-fixtures", action="store_true", help="print the fixture catalog and exit"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed usage or help
        return int(exc.code) if exc.code else EXIT_OK
    if args.list_fixtures:
        print(_render_catalog(args.output_format))
        return EXIT_OK
    spec = JobSpec(
        map_text=args.map_text,
        map_file=args.map_file,
        fixture=args.fixture,
        point_text=args.point_text,
        terms=args.terms,
        precision_bits=args.precision_bits,
        trial_bound=args.trial_bound,
        factor=not args.no_factor,
        emit_g_sequence=args.emit_g_sequence,
        oracle_n=args.oracle_n,
        output_format=args.output_format,
    )
    code, report = run(spec)
    print(report, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
