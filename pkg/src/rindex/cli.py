"""Command-line front end: ``rindex build|count|locate|extract|stats|verify|bench``.

Exit codes: 0 success, 1 malformed index file, 2 usage or input error
(bad pattern encoding, out-of-range extract, unreadable input),
3 verification failure.
"""

from __future__ import annotations

import argparse
import binascii
import csv
import json
import sys
import time

from . import indexfile
from .errors import IndexFormatError, InputError, RIndexError
from .fingerprint import DEFAULT_SEED
from .index import RIndex
from .measures import stats_report
from .text_core import DEFAULT_TERMINATOR, build_bundle
from .verify import verify_index

EXIT_OK = 0
EXIT_BAD_INDEX = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3

STATS_KEYS = ("n", "sigma", "r", "scheme_size", "z", "z_no", "scheme_size_raw")


class UsageError(Exception):
    pass


def _read(path) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _byte(value: str) -> int:
    v = int(value, 0)
    if not 0 <= v <= 255:
        raise argparse.ArgumentTypeError("terminator must be a byte value 0..255")
    return v


def _patterns(args) -> list:
    if args.patterns_file is not None:
        lines = _read(args.patterns_file).split(b"\n")
        if lines and lines[-1] == b"":
            lines.pop()
        raw = lines
    elif args.pattern is not None:
        raw = [args.pattern.encode("utf-8", "surrogateescape")]
    else:
        raise UsageError("give a pattern or --patterns-file")
    if getattr(args, "hex", False):
        try:
            raw = [binascii.unhexlify(p.strip()) for p in raw]
        except (binascii.Error, ValueError) as exc:
            raise UsageError(f"pattern is not valid hex: {exc}") from None
    if any(not p for p in raw):
        raise UsageError("empty pattern")
    return raw


def cmd_build(args, out) -> int:
    raw = _read(args.input)
    index = RIndex.build(raw, s=args.sample_s, alpha=args.alpha, fp_seed=args.fp_seed,
                         store_text=args.store_text, with_extract=not args.no_extract,
                         terminator=args.terminator)
    indexfile.save(index, args.output)
    return EXIT_OK


def cmd_count(args, out) -> int:
    index = indexfile.load(args.index)
    for p in _patterns(args):
        out.write(f"{index.count(p)}\n")
    return EXIT_OK


def cmd_locate(args, out) -> int:
    index = indexfile.load(args.index)
    for p in _patterns(args):
        found = index.locate(p, sort=args.sorted)
        if args.limit is not None:
            found = found[:args.limit]
        out.writelines(f"{x}\n" for x in found)
    return EXIT_OK


def cmd_extract(args, out) -> int:
    index = indexfile.load(args.index)
    if args.length < 0 or args.start < 1 or args.start + args.length - 1 > index.n:
        raise UsageError(f"window ({args.start}, {args.length}) outside [1, {index.n}]")
    data = index.extract(args.start, args.length)
    out.flush()
    getattr(out, "buffer", out).write(data)
    return EXIT_OK


def cmd_stats(args, out) -> int:
    data = _read(args.input)
    if data.startswith(indexfile.MAGIC):
        index = indexfile.from_bytes(data)
        bundle = build_bundle(index.text(), index.alphabet.terminator)
    else:
        bundle = build_bundle(data, args.terminator)
    report = stats_report(bundle)
    if args.json:
        out.write(json.dumps(report, sort_keys=False) + "\n")
    else:
        width = max(len(k) for k in STATS_KEYS)
        for k in STATS_KEYS:
            out.write(f"{k:<{width}}  {report[k]}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    index = indexfile.load(args.index)
    failures = verify_index(index, _read(args.against), seed=args.seed)
    for msg in failures:
        print(f"MISMATCH: {msg}", file=sys.stderr)
    if failures:
        return EXIT_VERIFY
    out.write("ok\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    index = indexfile.load(args.index)
    patterns = _patterns(args)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["pattern_id", "m", "occ", "count_ns", "locate_ns_per_occ"])
    for pid, p in enumerate(patterns):
        count_ns = locate_ns = None
        for _ in range(args.reps):
            t0 = time.perf_counter_ns()
            occ = index.count(p)
            t1 = time.perf_counter_ns()
            index.locate(p)
            t2 = time.perf_counter_ns()
            count_ns = t1 - t0 if count_ns is None else min(count_ns, t1 - t0)
            locate_ns = t2 - t1 if locate_ns is None else min(locate_ns, t2 - t1)
        writer.writerow([pid, len(p), occ, count_ns, locate_ns // max(occ, 1)])
    for name, size in index.structure_sizes().items():
        print(f"size {name} {size}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rindex", description="Run-length BWT self-index.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--sample-s", type=int, default=1, help="sampling radius s (default 1)")
    p.add_argument("--alpha", type=int, default=8, help="extraction leaf width (default 8)")
    p.add_argument("--fp-seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--store-text", action="store_true", help="also store the raw text")
    p.add_argument("--no-extract", action="store_true",
                   help="skip the extraction and fingerprint structures")
    p.add_argument("--terminator", type=_byte, default=DEFAULT_TERMINATOR,
                   help="terminator byte (default 0x24, '$')")
    p.set_defaults(func=cmd_build)

    for name, func, helptext in (("count", cmd_count, "count occurrences"),
                                 ("locate", cmd_locate, "list occurrence positions")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("index")
        p.add_argument("pattern", nargs="?")
        p.add_argument("--patterns-file")
        p.add_argument("--hex", action="store_true", help="patterns are hex-encoded")
        if name == "locate":
            p.add_argument("--limit", type=int)
            p.add_argument("--sorted", action="store_true", help="text order instead of SA order")
        p.set_defaults(func=func)

    p = sub.add_parser("extract", help="print T[start..start+len-1]")
    p.add_argument("index")
    p.add_argument("start", type=int)
    p.add_argument("length", type=int)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("stats", help="repetitiveness measures of a text or index")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.add_argument("--terminator", type=_byte, default=DEFAULT_TERMINATOR)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check an index against its source text")
    p.add_argument("index")
    p.add_argument("--against", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time count and locate per pattern (CSV)")
    p.add_argument("index")
    p.add_argument("--patterns-file", required=True)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--hex", action="store_true")
    p.set_defaults(func=cmd_bench, pattern=None)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "limit", None) is not None and args.limit < 0:
        print("rindex: --limit must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "reps", 1) < 1:
        print("rindex: --reps must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except IndexFormatError as exc:
        print(f"rindex: malformed index: {exc}", file=sys.stderr)
        return EXIT_BAD_INDEX
    except (UsageError, InputError, IndexError, RIndexError, ValueError, OSError) as exc:
        print(f"rindex: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
