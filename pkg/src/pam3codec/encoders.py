"""The three low-power PAM-3 frame encodings: DBI, MF, and SORT.

All three work on whole 16-symbol frames (both lines jointly) and remap
levels through some bijection of {-1, 0, +1}, so each decoder only needs
the flag bits to undo the mapping:

* DBI inverts every level (-1 <-> +1, 0 fixed) when -1 symbols outnumber
  +1 symbols; 1 flag bit says whether it did.
* MF transposes the most frequent level with +1 (the zero-power level);
  2 flag bits name that level.
* SORT remaps levels by frequency rank, least frequent to -1 and most
  frequent to +1; 3 flag bits carry the permutation number.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import Pam3Frame, count_symbols
from .errors import InvalidFlag, WrongAlgorithm
from .power import DEFAULT_MODEL, PowerModel, termination_power


class Algorithm(Enum):
    NONE = "NONE"
    DBI = "DBI"
    MF = "MF"
    SORT = "SORT"


CANONICAL_ORDER = (Algorithm.NONE, Algorithm.DBI, Algorithm.MF, Algorithm.SORT)

FLAG_WIDTH = {
    Algorithm.NONE: 0,
    Algorithm.DBI: 1,
    Algorithm.MF: 2,
    Algorithm.SORT: 3,
}

# The six bijections of {-1, 0, +1} as image triples (image of -1, image
# of 0, image of +1), indexed in lexicographic order of the triple. The
# flag of a SORT frame is an index into this table.
PERMUTATION_IMAGES = (
    (-1, 0, 1),
    (-1, 1, 0),
    (0, -1, 1),
    (0, 1, -1),
    (1, -1, 0),
    (1, 0, -1),
)

_INDEX_OF_IMAGES = {images: i for i, images in enumerate(PERMUTATION_IMAGES)}

# Transposition applied by MF per most-frequent level (-1, 0, +1 in turn).
_MF_IMAGES = (
    (1, 0, -1),   # swap -1 and +1
    (-1, 1, 0),   # swap 0 and +1
    (-1, 0, 1),   # +1 already most frequent: identity
)

_INVERT_IMAGES = (1, 0, -1)


@dataclass(frozen=True)
class PermutationCode:
    """One of the 3! level bijections plus its canonical 3-bit index."""

    index: int

    def __post_init__(self):
        if not 0 <= self.index <= 5:
            raise ValueError(f"permutation index must be 0..5, got {self.index}")

    @property
    def images(self) -> tuple[int, int, int]:
        return PERMUTATION_IMAGES[self.index]

    @property
    def mapping(self) -> dict[int, int]:
        img = self.images
        return {-1: img[0], 0: img[1], 1: img[2]}

    def apply(self, level: int) -> int:
        return self.images[level + 1]

    def inverse(self) -> "PermutationCode":
        img = self.images
        inv = [0, 0, 0]
        for src_idx, dst in enumerate(img):
            inv[dst + 1] = src_idx - 1
        return PermutationCode.from_images(tuple(inv))

    @classmethod
    def from_images(cls, images: tuple[int, int, int]) -> "PermutationCode":
        try:
            return cls(_INDEX_OF_IMAGES[tuple(images)])
        except KeyError:
            raise ValueError(f"{images!r} is not a bijection of (-1, 0, +1)")


@dataclass(frozen=True)
class EncodedFrame:
    """A converted frame plus the flag bits needed to undo the conversion."""

    frame: Pam3Frame
    algorithm: Algorithm
    flag: int

    def __post_init__(self):
        width = FLAG_WIDTH[self.algorithm]
        if not 0 <= self.flag < (1 << width):
            raise InvalidFlag(
                f"flag {self.flag} does not fit {width} bit(s) for {self.algorithm.value}"
            )


def _map_frame(frame: Pam3Frame, images: tuple[int, int, int]) -> Pam3Frame:
    table = {-1: images[0], 0: images[1], 1: images[2]}
    return Pam3Frame(
        tuple(table[s] for s in frame.line_a),
        tuple(table[s] for s in frame.line_b),
    )


def encode_dbi(frame: Pam3Frame) -> EncodedFrame:
    """Invert the frame when -1 symbols outnumber +1 symbols (flag=1)."""
    c = count_symbols(frame)
    if c.neg > c.pos:
        return EncodedFrame(_map_frame(frame, _INVERT_IMAGES), Algorithm.DBI, 1)
    return EncodedFrame(frame, Algorithm.DBI, 0)


def decode_dbi(encoded: EncodedFrame) -> Pam3Frame:
    if encoded.algorithm is not Algorithm.DBI:
        raise WrongAlgorithm(f"expected DBI frame, got {encoded.algorithm.value}")
    if encoded.flag:
        return _map_frame(encoded.frame, _INVERT_IMAGES)
    return encoded.frame


def encode_mf(frame: Pam3Frame) -> EncodedFrame:
    """Swap the most frequent level with +1; the 2-bit flag names it.

    Ties prefer +1, then 0, then -1, so a tie involving +1 degenerates to
    the identity instead of a pointless swap.
    """
    counts = count_symbols(frame).as_tuple()
    best = max(counts)
    mf_index = max(i for i in range(3) if counts[i] == best)
    return EncodedFrame(_map_frame(frame, _MF_IMAGES[mf_index]), Algorithm.MF, mf_index)


def decode_mf(encoded: EncodedFrame) -> Pam3Frame:
    if encoded.algorithm is not Algorithm.MF:
        raise WrongAlgorithm(f"expected MF frame, got {encoded.algorithm.value}")
    if encoded.flag > 2:
        raise InvalidFlag(f"MF flag must be 0..2, got {encoded.flag}")
    # a transposition is its own inverse
    return _map_frame(encoded.frame, _MF_IMAGES[encoded.flag])


def encode_sort(frame: Pam3Frame) -> EncodedFrame:
    """Remap levels by frequency rank: least frequent to -1, most to +1.

    The rank order comes from a stable ascending sort over the counts of
    (-1, 0, +1) in that input order, so ties resolve deterministically.
    """
    counts = count_symbols(frame).as_tuple()
    order = sorted(range(3), key=lambda i: counts[i])
    images = [0, 0, 0]
    for rank, level_index in enumerate(order):
        images[level_index] = rank - 1
    code = PermutationCode.from_images(tuple(images))
    return EncodedFrame(_map_frame(frame, code.images), Algorithm.SORT, code.index)


def decode_sort(encoded: EncodedFrame) -> Pam3Frame:
    if encoded.algorithm is not Algorithm.SORT:
        raise WrongAlgorithm(f"expected SORT frame, got {encoded.algorithm.value}")
    if encoded.flag > 5:
        raise InvalidFlag(f"SORT flag must be 0..5, got {encoded.flag}")
    inverse = PermutationCode(encoded.flag).inverse()
    return _map_frame(encoded.frame, inverse.images)


def encode(frame: Pam3Frame, algorithm: Algorithm) -> EncodedFrame:
    """Encode with any algorithm; NONE passes the frame through (flag=0)."""
    if algorithm is Algorithm.NONE:
        return EncodedFrame(frame, Algorithm.NONE, 0)
    if algorithm is Algorithm.DBI:
        return encode_dbi(frame)
    if algorithm is Algorithm.MF:
        return encode_mf(frame)
    if algorithm is Algorithm.SORT:
        return encode_sort(frame)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def decode(encoded: EncodedFrame) -> Pam3Frame:
    """Decode any EncodedFrame by dispatching on its algorithm tag."""
    if encoded.algorithm is Algorithm.NONE:
        return encoded.frame
    if encoded.algorithm is Algorithm.DBI:
        return decode_dbi(encoded)
    if encoded.algorithm is Algorithm.MF:
        return decode_mf(encoded)
    if encoded.algorithm is Algorithm.SORT:
        return decode_sort(encoded)
    raise ValueError(f"unknown algorithm {encoded.algorithm!r}")


def brute_force_best_permutation(
    frame: Pam3Frame, model: PowerModel = DEFAULT_MODEL
) -> tuple[PermutationCode, float]:
    """Try all 6 level bijections and return one with minimal termination power.

    Deliberately independent of encode_sort: it remaps the frame and
    measures the result for every candidate. Ties go to the lowest index.
    """
    best_code = None
    best_power = None
    for index in range(6):
        code = PermutationCode(index)
        p = termination_power(_map_frame(frame, code.images), model)
        if best_power is None or p < best_power:
            best_code = code
            best_power = p
    return best_code, best_power
