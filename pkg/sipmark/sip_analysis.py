"""
Bitonic decomposition of self-inverting permutations.

A permutation is cut left to right into maximal runs that strictly increase
and then strictly decrease. For permutations produced by the watermark codec
the runs satisfy three structural properties:

  P1  b1 is full-bitonic, b2..b(k-1) are full- or d-bitonic, bk is any kind.
  P2  b1 holds the max element n* and the min element 1 and has length ceil(n*/2).
  P3  last(bk) is the 1-based index of n* inside b1.

Both graph encoders rely on them, so ``require_properties`` is run before
any graph is built.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .errors import BitonicError, PropertyViolationError
from .models import BitonicKind, PropertyReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BitonicSubsequence:
    """A contiguous slice of pi* that increases up to its top, then decreases."""

    elements: Tuple[int, ...]
    kind: BitonicKind
    top: int
    top_index: int
    start_index: int

    @classmethod
    def from_slice(cls, elements: Sequence[int], start_index: int) -> "BitonicSubsequence":
        elements = tuple(elements)
        top_index = _top_index(elements)
        return cls(
            elements=elements,
            kind=_kind_for(len(elements), top_index),
            top=elements[top_index - 1],
            top_index=top_index,
            start_index=start_index,
        )

    @property
    def first(self) -> int:
        return self.elements[0]

    @property
    def last(self) -> int:
        return self.elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.elements) + ")"


@dataclass(frozen=True)
class BitonicDecomposition:
    """Ordered subsequences b1*, ..., bk* whose concatenation is pi*."""

    subsequences: Tuple[BitonicSubsequence, ...]

    @property
    def k(self) -> int:
        return len(self.subsequences)

    @property
    def tops(self) -> List[int]:
        return [b.top for b in self.subsequences]

    def elements(self) -> Tuple[int, ...]:
        joined: List[int] = []
        for b in self.subsequences:
            joined.extend(b.elements)
        return tuple(joined)

    def tops_strictly_decreasing(self) -> bool:
        tops = self.tops
        return all(a > b for a, b in zip(tops, tops[1:]))

    def __iter__(self) -> Iterator[BitonicSubsequence]:
        return iter(self.subsequences)

    def __len__(self) -> int:
        return len(self.subsequences)

    def __getitem__(self, index):
        return self.subsequences[index]

    def __str__(self) -> str:
        return " || ".join(str(b) for b in self.subsequences)


def _top_index(elements: Sequence[int]) -> int:
    top = max(elements)
    return elements.index(top) + 1


def _kind_for(length: int, top_index: int) -> BitonicKind:
    # a singleton satisfies both the i- and d- clauses; it is never full-bitonic
    if top_index == 1:
        return BitonicKind.D_BITONIC
    if top_index == length:
        return BitonicKind.I_BITONIC
    return BitonicKind.FULL_BITONIC


def classify(b: Sequence[int]) -> BitonicKind:
    """Classify an increase-then-decrease sequence by the position of its top."""
    elements = tuple(b)
    if not elements:
        raise BitonicError("cannot classify an empty sequence")
    top_index = _top_index(elements)
    rising = elements[:top_index]
    falling = elements[top_index - 1:]
    if any(x >= y for x, y in zip(rising, rising[1:])) or any(x <= y for x, y in zip(falling, falling[1:])):
        raise BitonicError(f"{elements} does not strictly increase and then strictly decrease")
    return _kind_for(len(elements), top_index)


def decompose_bitonic(p: Sequence[int]) -> BitonicDecomposition:
    """Greedy left-to-right cut of ``p`` into maximal bitonic subsequences."""
    elements = tuple(p)
    if not elements:
        raise BitonicError("cannot decompose an empty sequence")
    if len(set(elements)) != len(elements):
        raise BitonicError("sequence elements are not distinct")

    subsequences = []
    start = 0
    descending = False
    for i in range(1, len(elements)):
        if elements[i] > elements[i - 1]:
            if descending:
                subsequences.append(BitonicSubsequence.from_slice(elements[start:i], start + 1))
                start = i
                descending = False
        else:
            descending = True
    subsequences.append(BitonicSubsequence.from_slice(elements[start:], start + 1))
    return BitonicDecomposition(tuple(subsequences))


def check_properties(d: BitonicDecomposition, p: Sequence[int]) -> PropertyReport:
    """Report pass/fail of P1, P2 and P3 for decomposition ``d`` of ``p``."""
    elements = tuple(p)
    if d.elements() != elements:
        return PropertyReport(p1=False, p2=False, p3=False,
                              failures=["decomposition does not reproduce the permutation"])

    failures = []
    first, last = d[0], d[-1]
    max_element, min_element = max(elements), min(elements)

    p1 = True
    if first.kind is not BitonicKind.FULL_BITONIC:
        p1 = False
        failures.append(f"P1: b1={first} is {first.kind.value}, expected full-bitonic")
    for index, middle in enumerate(d.subsequences[1:-1], start=2):
        if middle.kind is BitonicKind.I_BITONIC:
            p1 = False
            failures.append(f"P1: b{index}={middle} is i-bitonic, expected full- or d-bitonic")

    p2 = True
    if max_element not in first.elements:
        p2 = False
        failures.append(f"P2: max element {max_element} is not in b1")
    if min_element not in first.elements:
        p2 = False
        failures.append(f"P2: min element {min_element} is not in b1")
    expected_length = (len(elements) + 1) // 2
    if len(first) != expected_length:
        p2 = False
        failures.append(f"P2: |b1|={len(first)}, expected {expected_length}")

    p3 = max_element in first.elements and last.last == first.elements.index(max_element) + 1
    if not p3:
        failures.append(f"P3: last(b{d.k})={last.last} is not the index of {max_element} in b1")

    return PropertyReport(p1=p1, p2=p2, p3=p3, failures=failures)


def require_properties(p: Sequence[int]) -> BitonicDecomposition:
    """Decompose ``p`` and raise unless every property the graph codecs rely on holds."""
    decomposition = decompose_bitonic(p)
    report = check_properties(decomposition, p)
    failures = list(report.failures)

    if decomposition.k < 2:
        failures.append("fewer than two bitonic subsequences")
    if not decomposition.tops_strictly_decreasing():
        failures.append(f"tops {decomposition.tops} are not strictly decreasing")
    for index, middle in enumerate(decomposition.subsequences[1:-1], start=2):
        if middle.kind is BitonicKind.FULL_BITONIC and middle.first > middle.last:
            failures.append(f"b{index}={middle} is full-bitonic with first > last")

    if failures:
        raise PropertyViolationError("permutation violates the bitonic properties: " + "; ".join(failures),
                                     failures)
    logger.debug(f"Decomposition {decomposition} satisfies P1-P3")
    return decomposition
