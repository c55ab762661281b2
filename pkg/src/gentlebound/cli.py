"""Command line interface.

Exit codes: 0 success, 1 parse error, 2 not gentle, 3 cap exceeded,
4 oracle disagreement. ``FILE`` may also name a bundled fixture such as
``a5-two-rel``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dsl import ParseError, load_bound_quiver, parse_bound_quiver
from .fp import is_prime
from .forbidden import finitistic_dimension, global_dimension
from .homology import BandModule, StringModule, dims, hb_dim, module_label
from .oracle import DEFAULT_PRIME, SECOND_PRIME
from .quasi_tilted import is_quasi_tilted
from .quiver import BoundQuiver, validate_gentle
from .report import build_report, emit_report_json, oracle_check
from .walks import CapExceeded, UnknownArrow, parse_word

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NOT_GENTLE = 2
EXIT_CAP = 3
EXIT_ORACLE = 4


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _load(arg: str) -> BoundQuiver:
    path = Path(arg)
    try:
        if path.exists():
            return load_bound_quiver(path)
        from . import fixture_text

        name = path.name.removesuffix(".gq")
        return parse_bound_quiver(fixture_text(name), name=name)
    except ParseError as e:
        raise _Exit(EXIT_PARSE, f"{arg}:{e}") from e
    except (FileNotFoundError, UnicodeDecodeError) as e:
        raise _Exit(EXIT_PARSE, f"{arg}: cannot read input ({e})") from e


def _load_gentle(arg: str) -> BoundQuiver:
    bq = _load(arg)
    report = validate_gentle(bq)
    if not report.is_gentle:
        raise _Exit(EXIT_NOT_GENTLE, f"{arg}: not gentle ({', '.join(report.codes)})")
    return bq


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_validate(args) -> int:
    bq = _load(args.file)
    report = validate_gentle(bq)
    payload = {"ok": report.is_gentle, "violations": [v.as_dict() for v in report.violations]}
    lines = ["gentle" if report.is_gentle else "not gentle"]
    lines += [f"{v.code}: {v.message}" for v in report.violations]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.is_gentle else EXIT_NOT_GENTLE


def cmd_gldim(args) -> int:
    value = global_dimension(_load_gentle(args.file))
    _emit(args, value.as_dict(), str(value))
    return EXIT_OK


def cmd_findim(args) -> int:
    value = finitistic_dimension(_load_gentle(args.file))
    _emit(args, value.as_dict(), str(value))
    return EXIT_OK


def cmd_dims(args) -> int:
    bq = _load_gentle(args.file)
    text = args.string if args.string is not None else args.band
    try:
        word = parse_word(text)
        if args.string is not None:
            module = StringModule(word)
        else:
            module = BandModule(word, args.n)
        report = dims(bq, module)
    except (ValueError, UnknownArrow) as e:
        raise _Exit(EXIT_PARSE, f"invalid module: {e}") from e
    lines = [f"pd {report.pd}", f"id {report.id}", f"sum {report.sum}", f"method {report.method}"]
    _emit(args, report.as_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_hbdim(args) -> int:
    bq = _load_gentle(args.file)
    if args.max_len is not None:
        res = hb_dim(bq, "exhaustive", max_len=args.max_len, cap=args.cap)
    else:
        res = hb_dim(bq, "endpoint_exact", cap=args.cap)
    text = f"{res.value}\nwitness {module_label(res.witness) or '-'}\nexact {str(res.exact).lower()}"
    _emit(args, res.as_dict(), text)
    return EXIT_OK


def cmd_quasi_tilted(args) -> int:
    verdict = is_quasi_tilted(_load_gentle(args.file))
    text = verdict.status
    if verdict.witness is not None:
        text += f"\nwitness {verdict.as_dict()['witness']}"
    _emit(args, verdict.as_dict(), text)
    return EXIT_OK


def cmd_report(args) -> int:
    bq = _load(args.file)
    report = build_report(bq, oracle_len=args.oracle_len, depth_cap=args.depth_cap)
    if args.json:
        sys.stdout.write(emit_report_json(report))
    else:
        d = report.as_dict()
        for key, value in d.items():
            print(f"{key}: {json.dumps(value, ensure_ascii=False)}")
    if not report.gentle.is_gentle:
        return EXIT_NOT_GENTLE
    return EXIT_OK if report.oracle.ok else EXIT_ORACLE


def cmd_oracle_check(args) -> int:
    bq = _load_gentle(args.file)
    primes = (args.prime,) if args.second_prime is None else (args.prime, args.second_prime)
    res = oracle_check(bq, args.max_len, args.depth_cap, primes, cap=args.cap)
    payload = {
        "checked": res.checked,
        "mismatches": [
            {"module": m.module, "prime": m.prime, "combinatorial": list(m.combinatorial), "oracle": list(m.oracle)}
            for m in res.mismatches
        ],
    }
    lines = [f"checked {res.checked}", f"mismatches {len(res.mismatches)}"]
    lines += [f"  {m.module} p={m.prime}: combinatorial {m.combinatorial} oracle {m.oracle}" for m in res.mismatches]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if res.ok else EXIT_ORACLE


class _Parser(argparse.ArgumentParser):
    """Usage errors count as parse errors rather than argparse's status 2,
    which is reserved for non-gentle input."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _prime(text: str) -> int:
    value = int(text)
    if not is_prime(value) or value >= 2**31:
        raise argparse.ArgumentTypeError(f"{text} is not a prime below 2^31")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gentlebound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", metavar="FILE")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the gentle conditions")
    add("gldim", cmd_gldim, "global dimension")
    add("findim", cmd_findim, "finitistic dimension")

    p = add("dims", cmd_dims, "projective and injective dimension of a module")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--string", help='string word, e.g. "b2 b1^-1 b2" or "e(3)"')
    group.add_argument("--band", help="band word")
    p.add_argument("--n", type=_positive, default=1, help="Jordan block size for --band")

    p = add("hbdim", cmd_hbdim, "supremum of pd + id over indecomposables")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--max-len", type=_positive, help="scan strings and bands up to this length")
    group.add_argument("--exact", action="store_true", help="exact end-letter computation (default)")
    p.add_argument("--cap", type=_positive, default=500_000, help="enumeration cap")

    add("quasi-tilted", cmd_quasi_tilted, "quasi-tilted decision")

    p = add("report", cmd_report, "every invariant in one report")
    p.add_argument("--oracle-len", type=int, default=4, help="string length for the oracle sweep")
    p.add_argument("--depth-cap", type=_positive, default=10)

    p = add("oracle-check", cmd_oracle_check, "compare combinatorial and linear-algebra dimensions")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--depth-cap", type=_positive, default=10)
    p.add_argument("--prime", type=_prime, default=DEFAULT_PRIME)
    p.add_argument("--second-prime", type=_prime, default=SECOND_PRIME)
    p.add_argument("--cap", type=_positive, default=500_000, help="enumeration cap")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as e:
        print(e.message, file=sys.stderr)
        return e.code
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
