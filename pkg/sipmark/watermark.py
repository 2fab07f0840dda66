"""
Watermark <-> self-inverting permutation codec.

A watermark ``w`` with binary digits b1..bn is turned into a self-inverting
permutation of length 2n+1. Let Z be the ascending 1-bit positions
z1 < ... < zm, o1 the smallest 0-bit position and D the descending list of
{1, ..., n+1} without Z and o1. The permutation is made of the 2-cycles
(i, n+zi) for i = 1..m, (m+j, n+Dj) for j = 1..n-m and the fixed point n+o1.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

from .errors import (
    InvalidWatermarkError,
    NotSelfInvertingError,
    NotWatermarkSipError,
    UnsupportedWatermarkError,
)

logger = logging.getLogger(__name__)

MAX_WATERMARK_BITS = 64


def is_self_inverting(sequence: Sequence[int]) -> bool:
    """Return True when ``sequence`` is a permutation of 1..n equal to its inverse."""
    n = len(sequence)
    if n == 0:
        return False
    seen = [False] * (n + 1)
    for value in sequence:
        if isinstance(value, bool) or not isinstance(value, int):
            return False
        if value < 1 or value > n or seen[value]:
            return False
        seen[value] = True
    return all(sequence[value - 1] == index for index, value in enumerate(sequence, start=1))


@dataclass(frozen=True)
class SelfInvertingPermutation:
    """Odd-length permutation pi* with pi*(pi*(i)) = i."""

    elements: Tuple[int, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if len(elements) % 2 == 0:
            raise NotSelfInvertingError(f"length {len(elements)} is not odd")
        if not is_self_inverting(elements):
            raise NotSelfInvertingError(f"{_preview(elements)} is not a self-inverting permutation")

    @property
    def n_star(self) -> int:
        return len(self.elements)

    @property
    def max_element(self) -> int:
        return self.n_star

    @property
    def min_element(self) -> int:
        return 1

    def image(self, i: int) -> int:
        """pi*(i) with 1-based indexing."""
        if not 1 <= i <= self.n_star:
            raise IndexError(f"index {i} outside 1..{self.n_star}")
        return self.elements[i - 1]

    def cycles(self) -> List[Tuple[int, ...]]:
        """The 1- and 2-cycles, ordered by their smallest member."""
        result = []
        for i, value in enumerate(self.elements, start=1):
            if value == i:
                result.append((i,))
            elif i < value:
                result.append((i, value))
        return result

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.elements) + ")"


@dataclass(frozen=True)
class Watermark:
    """Positive integer payload with its binary expansion b1..bn."""

    value: int

    def __post_init__(self):
        value = self.value
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidWatermarkError(f"watermark must be an integer, got {value!r}")
        if value < 1:
            raise InvalidWatermarkError(f"watermark must be >= 2, got {value}")
        if value & (value + 1) == 0:
            raise UnsupportedWatermarkError(
                f"unsupported watermark form: {value} ({value:b}) has no 0 bit"
            )

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple(int(b) for b in format(self.value, "b"))

    @property
    def n(self) -> int:
        return self.value.bit_length()


def sip_from_bits(bits: Sequence[int]) -> SelfInvertingPermutation:
    """Build pi* from a bit string b1..bn (most significant first)."""
    n = len(bits)
    if n == 0:
        raise InvalidWatermarkError("empty bit string")
    if any(bit not in (0, 1) for bit in bits):
        raise InvalidWatermarkError("bit string may only contain 0 and 1")
    if bits[0] != 1:
        raise InvalidWatermarkError("bit string has a leading zero")

    ones = [pos for pos, bit in enumerate(bits, start=1) if bit == 1]
    if len(ones) == n:
        raise UnsupportedWatermarkError(f"unsupported watermark form: {n} bits, no 0 bit")
    first_zero = next(pos for pos, bit in enumerate(bits, start=1) if bit == 0)

    excluded = set(ones)
    excluded.add(first_zero)
    descending = [pos for pos in range(n + 1, 0, -1) if pos not in excluded]

    elements = [0] * (2 * n + 1)
    for i, z in enumerate(ones, start=1):
        elements[i - 1] = n + z
        elements[n + z - 1] = i
    m = len(ones)
    for j, d in enumerate(descending, start=1):
        elements[m + j - 1] = n + d
        elements[n + d - 1] = m + j
    elements[n + first_zero - 1] = n + first_zero
    return SelfInvertingPermutation(tuple(elements))


def encode_watermark(w: int, max_bits: int = MAX_WATERMARK_BITS) -> SelfInvertingPermutation:
    """Encode ``w`` as a self-inverting permutation of length 2n+1."""
    if not isinstance(w, bool) and isinstance(w, int) and 1 < w and w.bit_length() > max_bits:
        raise InvalidWatermarkError(f"watermark {w} exceeds {max_bits} bits")
    watermark = Watermark(w)
    permutation = sip_from_bits(watermark.bits)
    logger.debug(f"Encoded watermark {w} as {permutation}")
    return permutation


def decode_sip(p: Union[SelfInvertingPermutation, Sequence[int]],
               max_bits: int = MAX_WATERMARK_BITS) -> int:
    """Extract the watermark from ``p`` and confirm it by re-encoding."""
    if not isinstance(p, SelfInvertingPermutation):
        p = SelfInvertingPermutation(tuple(p))

    n_star = p.n_star
    n = (n_star - 1) // 2
    if n < 1:
        raise NotWatermarkSipError(f"{p} is too short to carry a watermark")
    if n > max_bits:
        raise NotWatermarkSipError(f"{n}-bit payload exceeds {max_bits} bits")

    head = p.elements[:n]
    if any(value <= n for value in head):
        raise NotWatermarkSipError(f"first {n} entries of {_preview(p.elements)} are not all > {n}")
    try:
        peak = head.index(n_star)
    except ValueError:
        raise NotWatermarkSipError(f"value {n_star} is absent from the first {n} entries") from None

    bits = [0] * n
    for value in head[:peak]:
        bits[value - n - 1] = 1

    try:
        expected = sip_from_bits(bits)
    except InvalidWatermarkError as exc:
        raise NotWatermarkSipError(f"not a watermark SiP: {exc.detail}") from exc
    if expected != p:
        raise NotWatermarkSipError(f"not a watermark SiP: re-encoding does not reproduce {_preview(p.elements)}")

    value = int("".join(str(bit) for bit in bits), 2)
    logger.debug(f"Decoded {p} as watermark {value}")
    return value


def _preview(elements: Sequence[int], limit: int = 16) -> str:
    shown = ",".join(str(v) for v in list(elements[:limit]))
    if len(elements) > limit:
        shown += ",..."
    return f"({shown})"
