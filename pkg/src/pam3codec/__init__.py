"""Low-power PAM-3 bus encodings and trace-driven power analysis.

Three frame encodings (DBI, MF, SORT) lower the termination power of
PAM-3 DRAM bus data; this package implements them, the binary-to-PAM-3
modulation they sit on, a normalized power model, and a trace analysis
pipeline with CSV/JSON reporting.
"""

from .analysis import TraceStats, analyze_trace, read_report, signal_distribution, write_report
from .core import (
    Pam3Frame,
    SymbolCounts,
    Word24,
    count_symbols,
    demodulate,
    modulate,
)
from .encoders import (
    Algorithm,
    EncodedFrame,
    PermutationCode,
    brute_force_best_permutation,
    decode,
    decode_dbi,
    decode_mf,
    decode_sort,
    encode,
    encode_dbi,
    encode_mf,
    encode_sort,
)
from .errors import (
    EmptyInput,
    EmptyStream,
    InvalidFlag,
    InvalidPair,
    Pam3Error,
    ParseError,
    WrongAlgorithm,
    ZeroBaseline,
)
from .power import (
    DEFAULT_MODEL,
    PowerModel,
    PowerReport,
    switching_power,
    termination_power,
    termination_ratio,
)
from .traceio import (
    FrameStream,
    TraceRecord,
    format_text_trace,
    frame_records,
    generate_random_trace,
    parse_raw_trace,
    parse_text_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "DEFAULT_MODEL",
    "EmptyInput",
    "EmptyStream",
    "EncodedFrame",
    "FrameStream",
    "InvalidFlag",
    "InvalidPair",
    "Pam3Error",
    "Pam3Frame",
    "ParseError",
    "PermutationCode",
    "PowerModel",
    "PowerReport",
    "SymbolCounts",
    "TraceRecord",
    "TraceStats",
    "Word24",
    "WrongAlgorithm",
    "ZeroBaseline",
    "analyze_trace",
    "brute_force_best_permutation",
    "count_symbols",
    "decode",
    "decode_dbi",
    "decode_mf",
    "decode_sort",
    "demodulate",
    "encode",
    "encode_dbi",
    "encode_mf",
    "encode_sort",
    "format_text_trace",
    "frame_records",
    "generate_random_trace",
    "modulate",
    "parse_raw_trace",
    "parse_text_trace",
    "read_report",
    "signal_distribution",
    "switching_power",
    "termination_power",
    "termination_ratio",
    "write_report",
]
