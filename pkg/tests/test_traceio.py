import io
import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from pam3codec import bulk
from pam3codec.core import Word24, modulate
from pam3codec.errors import EmptyInput, ParseError
from pam3codec.traceio import (
    FrameStream,
    TraceRecord,
    format_text_trace,
    frame_records,
    generate_random_trace,
    parse_raw_trace,
    parse_text_trace,
)

records_strategy = st.builds(
    TraceRecord,
    st.sampled_from(("R", "W")),
    st.integers(0, (1 << 64) - 1),
    st.binary(min_size=1, max_size=64),
)


# ------------------------------------------------------------ parsing

def test_parse_text_trace_write():
    (rec,) = parse_text_trace("W 0x1f00 00ff00\n")
    assert rec == TraceRecord("W", 0x1F00, bytes([0x00, 0xFF, 0x00]))


def test_parse_text_trace_read():
    (rec,) = parse_text_trace("R 0x0 aabbccdd\n")
    assert rec.op == "R"
    assert rec.address == 0
    assert len(rec.payload) == 4


def test_parse_text_trace_skips_comments_and_blanks():
    text = "# header\n\nW 0x10 beef\n   \n# tail\nR 0x20 AA\n"
    recs = parse_text_trace(text)
    assert [r.op for r in recs] == ["W", "R"]
    assert recs[1].payload == b"\xaa"


def test_parse_text_trace_odd_payload():
    with pytest.raises(ParseError) as err:
        parse_text_trace("W 0x10 abc\n")
    assert err.value.line_number == 1


def test_parse_text_trace_error_line_numbers():
    text = "W 0x10 beef\nX 0x10 beef\n"
    with pytest.raises(ParseError) as err:
        parse_text_trace(text)
    assert err.value.line_number == 2


@pytest.mark.parametrize(
    "line",
    [
        "W 0x10",                    # missing payload
        "W 0x10 beef extra",         # too many fields
        "w 0x10 beef",               # lowercase op
        "W 0xZZ beef",               # non-hex address
        "W -0x10 beef",              # negative address
        "W 0x10 beeg",               # non-hex payload
        "W 0x10000000000000000 be",  # address over 64 bits
    ],
)
def test_parse_text_trace_rejects(line):
    with pytest.raises(ParseError):
        parse_text_trace(line + "\n")


def test_parse_text_trace_accepts_file_object():
    recs = parse_text_trace(io.StringIO("W 0x1 00\n"))
    assert len(recs) == 1


@given(st.lists(records_strategy, min_size=0, max_size=12))
def test_text_trace_roundtrip(records):
    assert parse_text_trace(format_text_trace(records)) == records


def test_parse_raw_trace():
    (rec,) = parse_raw_trace(b"\x01\x02\x03\x04\x05\x06")
    assert rec.op == "W"
    assert rec.address == 0
    assert rec.payload == b"\x01\x02\x03\x04\x05\x06"


def test_parse_raw_trace_file_object():
    (rec,) = parse_raw_trace(io.BytesIO(b"\xab" * 5000))
    assert rec.payload == b"\xab" * 5000


def test_parse_raw_trace_empty():
    with pytest.raises(EmptyInput):
        parse_raw_trace(b"")


def test_trace_record_validation():
    with pytest.raises(ValueError):
        TraceRecord("X", 0, b"\x00")
    with pytest.raises(ValueError):
        TraceRecord("W", -1, b"\x00")
    with pytest.raises(ValueError):
        TraceRecord("W", 1 << 64, b"\x00")
    with pytest.raises(ValueError):
        TraceRecord("W", 0, b"")


# ------------------------------------------------------------ framing

def test_frame_records_single_zero_group():
    stream = frame_records([TraceRecord("W", 0, b"\x00\x00\x00")])
    assert len(stream) == 1
    assert stream.pad_bytes == 0
    assert all(pair == (-1, -1) for pair in stream.frame(0).pairs())


def test_frame_records_pads_partial_group():
    stream = frame_records([TraceRecord("W", 0, b"\x01\x02\x03\x04")])
    assert len(stream) == 2
    assert stream.pad_bytes == 2


def test_frame_records_column_001():
    stream = frame_records([TraceRecord("W", 0, b"\x00\x00\xff")])
    frame = stream.frame(0)
    assert frame.line_a == (-1,) * 8
    assert frame.line_b == (0,) * 8


def test_frame_records_empty():
    stream = frame_records([])
    assert len(stream) == 0
    assert stream.pad_bytes == 0
    assert stream.payload_bytes() == b""


def test_frame_records_concatenates_in_order():
    recs = [TraceRecord("W", 0, b"\x11\x22"), TraceRecord("R", 4, b"\x33\x44")]
    stream = frame_records(recs)
    assert stream.frame(0) == modulate(Word24(0x11, 0x22, 0x33))
    assert stream.pad_bytes == 2


@given(st.binary(min_size=1, max_size=400))
def test_frame_records_payload_roundtrip(payload):
    stream = frame_records([TraceRecord("W", 0, payload)])
    assert stream.payload_bytes() == payload
    assert len(stream) == math.ceil(len(payload) / 3)


def test_frame_stream_iterates_frames():
    stream = frame_records([TraceRecord("W", 0, b"\x00\x00\xff\xff\xff\xff")])
    frames = list(stream)
    assert len(frames) == 2
    assert frames[1].line_a == (1,) * 8


def test_frame_stream_validation():
    with pytest.raises(ValueError):
        FrameStream(np.zeros((2, 2, 7), dtype=np.int8), 0)
    with pytest.raises(ValueError):
        FrameStream(np.full((1, 2, 8), 3, dtype=np.int8), 0)
    with pytest.raises(ValueError):
        FrameStream(np.zeros((1, 2, 8), dtype=np.int8), 3)


def test_frame_stream_levels_read_only():
    stream = frame_records([TraceRecord("W", 0, b"\x00\x00\x00")])
    with pytest.raises(ValueError):
        stream.levels[0, 0, 0] = 1


def test_frame_stream_from_frames_matches_bulk():
    frames = [modulate(Word24(1, 2, 3)), modulate(Word24(250, 90, 7))]
    stream = FrameStream.from_frames(frames, pad_bytes=1)
    assert list(stream) == frames
    assert stream.pad_bytes == 1


# ------------------------------------------------------- random traces

def test_generate_random_trace_deterministic():
    a = generate_random_trace(3, seed=99)
    b = generate_random_trace(3, seed=99)
    assert a == b
    assert generate_random_trace(3, seed=100) != a


def test_generate_random_trace_single_write():
    (rec,) = generate_random_trace(10, seed=0)
    assert rec.op == "W"
    assert rec.address == 0
    assert len(rec.payload) == 10


def test_generate_random_trace_one_byte_pads_two():
    stream = frame_records(generate_random_trace(1, seed=5))
    assert len(stream) == 1
    assert stream.pad_bytes == 2


def test_generate_random_trace_distribution():
    stream = frame_records(generate_random_trace(30_000, seed=7))
    counts = bulk.count_block(stream.levels).sum(axis=0)
    fractions = 100.0 * counts / counts.sum()
    assert abs(fractions[0] - 37.5) < 1.0
    assert abs(fractions[1] - 25.0) < 1.0
    assert abs(fractions[2] - 37.5) < 1.0


def test_generate_random_trace_validation():
    with pytest.raises(ValueError):
        generate_random_trace(0, seed=1)
