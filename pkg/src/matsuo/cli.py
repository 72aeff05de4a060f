"""Command line: spectrum, flip, verify and modp reports as JSON.

Exit codes: 0 success, 2 validation failure, 3 unsupported computation.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import report, verify
from .catalog import build_group, builtin_flips, inner_word, load_flip, load_system, parse_group, parse_symplectic
from .errors import UnsupportedError, ValidationError
from .flips import identity_flip, inner_flip, symplectic_flip
from .spectral import bad_primes, spectrum

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 2, 3


def parse_rational(text: str) -> Fraction:
    """Accept ``P/Q`` or an integer; reject decimals and floats."""
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", text):
        raise ValidationError(f"{text!r} is not an exact rational P/Q")
    return Fraction(text)


def _load_system(args):
    if args.json:
        return str(args.json), load_system(args.json), None
    if not args.group:
        raise ValidationError("give --group or --json")
    spec = parse_group(args.group)
    return str(spec), build_group(spec), spec


def _add_system_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", help="sym:N, sp:M, o+:M, o-:M, cover2:N or cover3:N")
    g.add_argument("--json", type=Path, help='system file {"n_points", "conj", "labels"}')
    p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matsuo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="collinearity spectrum and critical values")
    _add_system_args(p)

    p = sub.add_parser("flip", help="flip subalgebra, multiplicities and radical table")
    _add_system_args(p)
    f = p.add_mutually_exclusive_group(required=True)
    f.add_argument("--inner", help='conjugating word in cycle notation, e.g. "(12)(34)"')
    f.add_argument("--symplectic", help="type1:I or type2:I on sp:M")
    f.add_argument("--perm-json", type=Path, help='flip file {"perm": [...]}')
    f.add_argument("--identity", action="store_true")
    p.add_argument("--eta", help="extra exact rational eta to analyse")

    p = sub.add_parser("verify", help="run the invariant suite")
    _add_system_args(p)
    p.add_argument("--level", choices=sorted(verify.LEVEL_LIMITS), default="fast")

    p = sub.add_parser("modp", help="radical dimension over F_p")
    _add_system_args(p)
    p.add_argument("--eta", required=True)
    p.add_argument("--p", type=int, required=True)
    return parser


def _emit(data: dict, args, started: float) -> None:
    data["timing"] = {"milliseconds": round(1000 * (time.perf_counter() - started))}
    text = report.dumps(data)
    if args.out:
        args.out.write_text(text + "\n")
    else:
        print(text)


def _run(args) -> int:
    started = time.perf_counter()
    descriptor, system, spec = _load_system(args)
    data = report.header(descriptor, system)

    if args.command == "spectrum":
        data["spectrum"] = report.spectrum_section(system)
        _emit(data, args, started)
        return EXIT_OK

    if args.command == "flip":
        m = spec.param if spec is not None and spec.family == "sp" else None
        if args.identity:
            flip = identity_flip(system)
        elif args.inner is not None:
            flip = inner_flip(system, inner_word(system, args.inner))
        elif args.symplectic is not None:
            if m is None:
                raise ValidationError("--symplectic needs --group sp:M")
            kind, i = parse_symplectic(args.symplectic)
            flip = symplectic_flip(m, kind, i, system)
        else:
            flip = load_flip(system, args.perm_json)
        eta = parse_rational(args.eta) if args.eta else None
        data["flip"] = report.flip_section(system, flip, eta, symplectic_m=m)
        _emit(data, args, started)
        return EXIT_OK

    if args.command == "modp":
        eta = parse_rational(args.eta)
        if args.p == 2:
            raise ValidationError("characteristic 2 is excluded")
        section = report.modp_section(system, eta, args.p)
        data["modp"] = section
        _emit(data, args, started)
        if not section["good_prime"]:
            print(f"p = {args.p} divides an eigenvalue gap (bad primes {sorted(bad_primes(spectrum(system)))}); "
                  "UNSUPPORTED", file=sys.stderr)
            return EXIT_UNSUPPORTED
        return EXIT_OK

    if args.command == "verify":
        flips = builtin_flips(spec, system) if spec is not None else [("identity", identity_flip(system))]
        checks = verify.run(system, flips, args.level)
        for c in checks:
            print(c.line(), file=sys.stderr)
        failed = [c for c in checks if not c.passed]
        data["verify"] = {"level": args.level, "checks": len(checks), "failed": [c.name for c in failed],
                          "witnesses": {c.name: c.detail for c in failed}}
        _emit(data, args, started)
        return EXIT_INVALID if failed else EXIT_OK
    raise AssertionError(args.command)


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--eta -1/3`` into ``--eta=-1/3`` so argparse does not read a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--eta":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--eta={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return _run(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
