"""Trace ingestion, framing, and synthetic trace generation.

Text trace format, one record per line:

    <op> <address> <payload>

where op is R or W, address is 0x-prefixed hex, and payload is even-length
hex (any case). Blank lines and lines starting with # are skipped. Raw
format is a flat binary file whose entire content is one WRITE payload.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator

import numpy as np

from . import bulk
from .core import Pam3Frame
from .errors import EmptyInput, ParseError

READ = "R"
WRITE = "W"

_ADDRESS_RE = re.compile(r"(?:0x)?[0-9a-fA-F]+\Z")
_RAW_CHUNK = 1 << 20


@dataclass(frozen=True)
class TraceRecord:
    """One bus access: operation, address, payload bytes."""

    op: str
    address: int
    payload: bytes

    def __post_init__(self):
        if self.op not in (READ, WRITE):
            raise ValueError(f"op must be {READ!r} or {WRITE!r}, got {self.op!r}")
        if not 0 <= self.address < (1 << 64):
            raise ValueError(f"address must fit 64 bits, got {self.address!r}")
        if len(self.payload) < 1:
            raise ValueError("payload must hold at least one byte")


@dataclass(frozen=True, eq=False)
class FrameStream:
    """Modulated frames of one trace plus the zero padding of the last group.

    levels is an (n, 2, 8) int8 array; iteration yields Pam3Frame views.
    """

    levels: np.ndarray
    pad_bytes: int

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=np.int8)
        if levels.ndim != 3 or levels.shape[1:] != (2, 8):
            raise ValueError(f"levels must have shape (n, 2, 8), got {levels.shape}")
        if levels.size and not np.isin(levels, (-1, 0, 1)).all():
            raise ValueError("levels must be -1, 0, or +1")
        if self.pad_bytes not in (0, 1, 2):
            raise ValueError(f"pad_bytes must be 0..2, got {self.pad_bytes}")
        levels = levels.copy()
        levels.setflags(write=False)
        object.__setattr__(self, "levels", levels)

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self) -> Iterator[Pam3Frame]:
        for row in self.levels:
            yield Pam3Frame(tuple(int(v) for v in row[0]), tuple(int(v) for v in row[1]))

    def frame(self, index: int) -> Pam3Frame:
        row = self.levels[index]
        return Pam3Frame(tuple(int(v) for v in row[0]), tuple(int(v) for v in row[1]))

    def payload_bytes(self) -> bytes:
        """Demodulate back to the original payload, padding stripped."""
        words = bulk.demodulate_block(self.levels)
        data = words.reshape(-1).tobytes()
        return data[: len(data) - self.pad_bytes] if self.pad_bytes else data

    @classmethod
    def from_frames(cls, frames: Iterable[Pam3Frame], pad_bytes: int = 0) -> "FrameStream":
        rows = [(f.line_a, f.line_b) for f in frames]
        levels = np.array(rows, dtype=np.int8).reshape(len(rows), 2, 8)
        return cls(levels, pad_bytes)


def parse_text_trace(source) -> list[TraceRecord]:
    """Parse a text trace from a string or an iterable of lines."""
    if isinstance(source, str):
        source = io.StringIO(source)
    records = []
    for line_number, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 3:
            raise ParseError(
                f"expected 'op address payload', got {len(fields)} field(s)",
                line_number,
            )
        op, address_text, payload_text = fields
        if op not in (READ, WRITE):
            raise ParseError(f"op must be R or W, got {op!r}", line_number)
        if not _ADDRESS_RE.match(address_text):
            raise ParseError(f"address {address_text!r} is not hex", line_number)
        address = int(address_text, 16)
        if address >= (1 << 64):
            raise ParseError(f"address {address_text!r} exceeds 64 bits", line_number)
        if len(payload_text) % 2:
            raise ParseError("payload hex has odd length", line_number)
        try:
            payload = bytes.fromhex(payload_text)
        except ValueError:
            raise ParseError(f"payload {payload_text!r} is not hex", line_number)
        records.append(TraceRecord(op, address, payload))
    return records


def format_text_trace(records: Iterable[TraceRecord]) -> str:
    """Symmetric writer for parse_text_trace."""
    return "".join(
        f"{r.op} 0x{r.address:x} {r.payload.hex()}\n" for r in records
    )


def parse_raw_trace(source: BinaryIO | bytes) -> list[TraceRecord]:
    """Wrap a flat byte stream as a single WRITE record at address 0.

    File-like sources are read in bounded chunks to avoid duplicating the
    data while it accumulates.
    """
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        buf = bytearray()
        while True:
            chunk = source.read(_RAW_CHUNK)
            if not chunk:
                break
            buf += chunk
        data = bytes(buf)
    if not data:
        raise EmptyInput("raw trace holds no bytes")
    return [TraceRecord(WRITE, 0, data)]


def frame_records(records: Iterable[TraceRecord]) -> FrameStream:
    """Concatenate payloads in record order and modulate 3-byte groups.

    A final partial group is zero padded and the pad count recorded so the
    payload can be reconstructed exactly.
    """
    payload = b"".join(r.payload for r in records)
    pad_bytes = (-len(payload)) % 3
    data = np.frombuffer(payload, dtype=np.uint8)
    if pad_bytes:
        data = np.concatenate([data, np.zeros(pad_bytes, dtype=np.uint8)])
    words = data.reshape(-1, 3)
    return FrameStream(bulk.modulate_block(words), pad_bytes)


def generate_random_trace(byte_count: int, seed: int) -> list[TraceRecord]:
    """One WRITE record of uniform random bytes, deterministic per seed."""
    if byte_count < 1:
        raise ValueError(f"byte_count must be positive, got {byte_count}")
    rng = np.random.default_rng(seed)
    payload = rng.integers(0, 256, size=byte_count, dtype=np.uint8).tobytes()
    return [TraceRecord(WRITE, 0, payload)]
