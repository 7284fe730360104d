"""Command-line front end: encode, decode, analyze, distribution, gen-random.

All subcommands read stdin / write stdout when a path is - (the default),
so pipelines like `pam3codec gen-random ... | pam3codec analyze ...` work
without temporary files. Exit codes: 0 success, 1 usage error, 2 input or
parse error.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional

import numpy as np

from . import bulk
from .analysis import OP_FILTERS, analyze_trace, signal_distribution, write_report
from .encoders import Algorithm
from .errors import Pam3Error, ParseError
from .power import DEFAULT_MODEL
from .traceio import (
    READ,
    WRITE,
    frame_records,
    generate_random_trace,
    parse_raw_trace,
    parse_text_trace,
)

_ALG_CHOICES = {"none": Algorithm.NONE, "dbi": Algorithm.DBI,
                "mf": Algorithm.MF, "sort": Algorithm.SORT}

_LEVEL_CHAR = {-1: "-", 0: "0", 1: "+"}
_CHAR_LEVEL = {"-": -1, "0": 0, "+": 1}

_FRAME_LINE_RE = re.compile(r"A:([-0+]{8}) B:([-0+]{8}) F:(\d+)\Z")


class _Parser(argparse.ArgumentParser):
    # contract says usage errors exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pam3codec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_io(p, binary_out=False):
        p.add_argument("--input", "-i", default="-", help="input path, - for stdin")
        p.add_argument("--output", "-o", default="-",
                       help="output path, - for stdout" + (" (binary)" if binary_out else ""))

    def add_trace_opts(p):
        p.add_argument("--format", choices=("text", "raw"), default="text",
                       help="trace input format")
        p.add_argument("--op-filter", choices=OP_FILTERS, default="all",
                       help="keep only read or write records")

    p = sub.add_parser("encode", help="encode a trace into frame+flag text")
    p.add_argument("--alg", choices=sorted(_ALG_CHOICES), required=True)
    add_trace_opts(p)
    add_io(p)

    p = sub.add_parser("decode", help="decode frame+flag text back to payload bytes")
    add_io(p, binary_out=True)

    p = sub.add_parser("analyze", help="power report for one or all algorithms")
    p.add_argument("--alg", choices=sorted(_ALG_CHOICES) + ["all"], default="all")
    p.add_argument("--report", choices=("csv", "json"), default="csv")
    p.add_argument("--include-flag-power", action="store_true",
                   help="charge flag wires as binary lines in termination power")
    add_trace_opts(p)
    add_io(p)

    p = sub.add_parser("distribution", help="symbol distribution percentages")
    p.add_argument("--report", choices=("csv", "json"), default="csv")
    add_trace_opts(p)
    add_io(p)

    p = sub.add_parser("gen-random", help="write a raw trace of random bytes")
    p.add_argument("--bytes", type=_positive_int, required=True, dest="byte_count")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", "-o", default="-", help="output path, - for stdout (binary)")

    return parser


def _read_records(args):
    if args.format == "raw":
        if args.input == "-":
            records = parse_raw_trace(sys.stdin.buffer)
        else:
            with open(args.input, "rb") as f:
                records = parse_raw_trace(f)
    else:
        if args.input == "-":
            records = parse_text_trace(sys.stdin)
        else:
            with open(args.input, "r", encoding="ascii") as f:
                records = parse_text_trace(f)
    if args.op_filter == "read":
        records = [r for r in records if r.op == READ]
    elif args.op_filter == "write":
        records = [r for r in records if r.op == WRITE]
    return records


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as f:
            f.write(text)


def _write_binary(path: str, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as f:
            f.write(data)


def _format_encoded(
    alg: Algorithm, enc_levels: np.ndarray, flags: np.ndarray, pad_bytes: int
) -> str:
    out = [f"# alg {alg.value}", f"# pad {pad_bytes}"]
    for row, flag in zip(enc_levels, flags):
        a = "".join(_LEVEL_CHAR[int(v)] for v in row[0])
        b = "".join(_LEVEL_CHAR[int(v)] for v in row[1])
        out.append(f"A:{a} B:{b} F:{int(flag)}")
    return "\n".join(out) + "\n"


def _cmd_encode(args) -> int:
    alg = _ALG_CHOICES[args.alg]
    stream = frame_records(_read_records(args))
    enc_levels, flags = bulk.encode_block(stream.levels, alg)
    _write_text(args.output, _format_encoded(alg, enc_levels, flags, stream.pad_bytes))
    return 0


def _parse_encoded(source) -> tuple[Algorithm, int, np.ndarray, np.ndarray]:
    alg: Optional[Algorithm] = None
    pad: Optional[int] = None
    rows = []
    flags = []
    for line_number, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            fields = stripped[1:].split()
            if len(fields) == 2 and fields[0] == "alg":
                try:
                    alg = Algorithm(fields[1])
                except ValueError:
                    raise ParseError(f"unknown algorithm {fields[1]!r}", line_number)
            elif len(fields) == 2 and fields[0] == "pad":
                try:
                    pad = int(fields[1])
                except ValueError:
                    raise ParseError(f"bad pad count {fields[1]!r}", line_number)
                if pad not in (0, 1, 2):
                    raise ParseError(f"pad count must be 0..2, got {pad}", line_number)
            continue
        m = _FRAME_LINE_RE.match(stripped)
        if not m:
            raise ParseError("expected 'A:<8 symbols> B:<8 symbols> F:<flag>'",
                             line_number)
        rows.append([[_CHAR_LEVEL[c] for c in m.group(1)],
                     [_CHAR_LEVEL[c] for c in m.group(2)]])
        flags.append(int(m.group(3)))
    if alg is None or pad is None:
        raise ParseError("missing '# alg' or '# pad' header", 1)
    levels = np.array(rows, dtype=np.int8).reshape(len(rows), 2, 8)
    return alg, pad, levels, np.array(flags, dtype=np.uint8)


def _cmd_decode(args) -> int:
    if args.input == "-":
        alg, pad, levels, flags = _parse_encoded(sys.stdin)
    else:
        with open(args.input, "r", encoding="ascii") as f:
            alg, pad, levels, flags = _parse_encoded(f)
    decoded = bulk.decode_block(levels, flags, alg)
    data = bulk.demodulate_block(decoded).reshape(-1).tobytes()
    _write_binary(args.output, data[: len(data) - pad] if pad else data)
    return 0


def _cmd_analyze(args) -> int:
    algorithms = None if args.alg == "all" else [_ALG_CHOICES[args.alg]]
    stream = frame_records(_read_records(args))
    stats = analyze_trace(
        stream,
        algorithms,
        DEFAULT_MODEL,
        include_flag_power=args.include_flag_power,
        op_filter=args.op_filter,
    )
    _write_text(args.output, write_report(stats, args.report))
    return 0


def _cmd_distribution(args) -> int:
    stream = frame_records(_read_records(args))
    dist = signal_distribution(stream)
    if args.report == "json":
        body = ('{\n  "-1": %.4f,\n  "0": %.4f,\n  "+1": %.4f\n}\n') % dist
    else:
        body = "signal,percent\n" + "".join(
            f"{sig},{pct:.4f}\n" for sig, pct in zip(("-1", "0", "+1"), dist)
        )
    _write_text(args.output, body)
    return 0


def _cmd_gen_random(args) -> int:
    records = generate_random_trace(args.byte_count, args.seed)
    _write_binary(args.output, records[0].payload)
    return 0


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "analyze": _cmd_analyze,
    "distribution": _cmd_distribution,
    "gen-random": _cmd_gen_random,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except (Pam3Error, OSError, UnicodeDecodeError) as exc:
        print(f"pam3codec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
