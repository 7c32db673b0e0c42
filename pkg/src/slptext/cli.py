"""Command-line front end.

    slp build   TEXT -o OUT.slp [--builder ctph+repair|repair] [--window W] [--modulus P]
    slp encode  IN.slp -o OUT [--scheme shaped|naive]
    slp access  ENC --pos I [--zero-based]
    slp extract ENC --pos I --len L [--zero-based]
    slp decode  FILE [-o OUT]           (accepts .slp and both encodings)
    slp stats   FILE
    slp bench   ENC [ENC ...] [--queries N] [--lengths L,L,..]
                [--threads T,T,..] [--seed S] [--csv OUT]
    slp gen     -m LEN -c COPIES -e RATE [--seed S] -o OUT

Exit codes: 0 success, 1 usage error, 2 data/format error,
3 extraction correctness failure.
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from . import naive, shaped
from .bits import SlpFormatError
from .chunking import CtphParams, build_via_ctph
from .corpus import gen_corpus
from .grammar import SLP_MAGIC, decompress, load_slp, save_slp, stats
from .naive import NSLP_MAGIC, NaiveSlpEncoding
from .repair import repair_build
from .shaped import SSLP_MAGIC, ShapedSlpEncoding

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CORRECTNESS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def _write(path: str, data: bytes) -> None:
    with open(path, "wb") as f:
        f.write(data)


def _load_encoding(path: str):
    data = _read(path)
    magic = data[:4]
    if magic == SSLP_MAGIC:
        return "shaped", ShapedSlpEncoding.deserialize(data), len(data)
    if magic == NSLP_MAGIC:
        return "naive", NaiveSlpEncoding.deserialize(data), len(data)
    raise SlpFormatError(f"{path}: not an encoded grammar (magic {magic!r})")


def _position(args) -> int:
    pos = args.pos + 1 if args.zero_based else args.pos
    if pos < 1:
        raise SlpFormatError(f"position {args.pos} out of range")
    return pos


def cmd_build(args) -> int:
    text = _read(args.input)
    if not text:
        raise SlpFormatError(f"{args.input}: empty input")
    if args.builder == "repair":
        slp = repair_build(text)
    else:
        slp = build_via_ctph(text, CtphParams(window=args.window,
                                              modulus=args.modulus))
    _write(args.output, save_slp(slp))
    print(stats(slp).line())
    return EXIT_OK


def cmd_encode(args) -> int:
    slp = load_slp(_read(args.input))
    if args.scheme == "naive":
        blob = naive.encode(slp).serialize()
    else:
        blob = shaped.encode(slp, seed=args.seed).serialize()
    _write(args.output, blob)
    print(f"{args.scheme} encoding: {len(blob)} bytes")
    return EXIT_OK


def cmd_access(args) -> int:
    _label, enc, _size = _load_encoding(args.input)
    try:
        byte = enc.access(_position(args))
    except IndexError as exc:
        raise SlpFormatError(str(exc)) from exc
    sys.stdout.buffer.write(bytes((byte,)))
    sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_extract(args) -> int:
    _label, enc, _size = _load_encoding(args.input)
    try:
        chunk = enc.extract(_position(args), args.len)
    except (IndexError, ValueError) as exc:
        raise SlpFormatError(str(exc)) from exc
    sys.stdout.buffer.write(chunk)
    sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_decode(args) -> int:
    data = _read(args.input)
    magic = data[:4]
    if magic == SLP_MAGIC:
        text = decompress(load_slp(data))
    else:
        _label, enc, _size = _load_encoding(args.input)
        text = enc.extract(1, enc.n)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.buffer.write(text)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_stats(args) -> int:
    data = _read(args.input)
    magic = data[:4]
    if magic == SLP_MAGIC:
        print(stats(load_slp(data)).line())
    elif magic == SSLP_MAGIC:
        enc = ShapedSlpEncoding.deserialize(data)
        print(f"sigma={enc.sigma} n={enc.n} s={enc.s} r={enc.r} d={enc.d}")
    elif magic == NSLP_MAGIC:
        enc = NaiveSlpEncoding.deserialize(data)
        print(f"sigma={enc.sigma} n={enc.n} s={enc.s} r={enc.r}")
    else:
        raise SlpFormatError(f"{args.input}: unknown file type (magic {magic!r})")
    return EXIT_OK


def _int_list(text: str) -> list:
    try:
        values = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def cmd_bench(args) -> int:
    encodings = [_load_encoding(p) for p in args.inputs]
    config = bench_mod.BenchConfig(lengths=args.lengths, queries=args.queries,
                                   threads=args.threads, seed=args.seed)
    report = bench_mod.run_bench(encodings, config)
    csv = report.to_csv()
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def cmd_gen(args) -> int:
    _write(args.output, gen_corpus(args.length, args.copies,
                                   args.mutation_rate, args.seed))
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="slp",
                     description="grammar-compressed text storage with "
                                 "fast random access")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compress a text file into a grammar")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--builder", choices=["repair", "ctph+repair"],
                   default="ctph+repair")
    p.add_argument("--window", type=int, default=CtphParams().window)
    p.add_argument("--modulus", type=int, default=CtphParams().modulus)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("encode", help="encode a grammar for querying")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scheme", choices=["shaped", "naive"], default="shaped")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("access", help="print one character of the text")
    p.add_argument("input")
    p.add_argument("--pos", type=int, required=True)
    p.add_argument("--zero-based", action="store_true")
    p.set_defaults(func=cmd_access)

    p = sub.add_parser("extract", help="print a substring of the text")
    p.add_argument("input")
    p.add_argument("--pos", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--zero-based", action="store_true")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("decode", help="recover the full text")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("stats", help="print grammar statistics")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="measure extraction latency")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--queries", type=int, default=10000)
    p.add_argument("--lengths", type=_int_list, default=[1, 10, 100, 1000])
    p.add_argument("--threads", type=_int_list, default=list(range(1, 9)))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a synthetic repetitive corpus")
    p.add_argument("-m", "--length", type=int, required=True)
    p.add_argument("-c", "--copies", type=int, required=True)
    p.add_argument("-e", "--mutation-rate", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except bench_mod.BenchChecksumError as exc:
        print(f"slp: correctness failure: {exc}", file=sys.stderr)
        return EXIT_CORRECTNESS
    except (SlpFormatError, bench_mod.BenchDataError, OSError,
            ValueError) as exc:
        print(f"slp: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
