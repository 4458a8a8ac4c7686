"""Representation-function computation.

For a set A and n >= 0 the three counts are

    r1(A, n) = #{(a, b) in A x A : a + b = n}            ordered pairs
    r2(A, n) = #{(a, b) in A x A : a + b = n, a <= b}
    r3(A, n) = #{(a, b) in A x A : a + b = n, a < b}

This module provides pointwise counting, the closed forms for the full set
of non-negative integers, batch tables over [0, N] with two interchangeable
strategies, and an inclusion-exclusion path that reaches large N when the
complement of A is sparse.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, IncompletePrefixError
from .sets import ComplementPrefix, IntegerSet

__all__ = [
    "RepKind",
    "RepTable",
    "r1_at",
    "r2_at",
    "r3_at",
    "closed_form",
    "batch_table",
    "r1_via_complement",
    "r1_array_via_complement",
    "table_from_r1",
    "membership_array",
    "diagonal_indicator",
    "DEFAULT_MEMORY_BUDGET",
]

DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes of working memory batch_table may use
WORD_PARALLEL_CUTOVER = 4096  # auto strategy switches above this N


class RepKind(enum.Enum):
    R1 = "r1"
    R2 = "r2"
    R3 = "r3"


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")


def r1_at(a: IntegerSet, n: int) -> int:
    """Number of ordered pairs of members summing to n."""
    _check_n(n)
    return sum(1 for x in range(n + 1) if a.contains(x) and a.contains(n - x))


def r2_at(a: IntegerSet, n: int) -> int:
    """Number of pairs a <= b of members summing to n."""
    _check_n(n)
    return sum(1 for x in range(n // 2 + 1) if a.contains(x) and a.contains(n - x))


def r3_at(a: IntegerSet, n: int) -> int:
    """Number of pairs a < b of members summing to n."""
    _check_n(n)
    return sum(1 for x in range((n + 1) // 2) if a.contains(x) and a.contains(n - x))


def closed_form(kind: RepKind, n: int) -> int:
    """Value of the representation function on the full set of non-negative
    integers: n + 1, floor(n/2) + 1, and floor((n-1)/2) + 1 respectively.

    Python's floor division rounds toward minus infinity, so the r3 form
    gives 0 at n = 0.
    """
    _check_n(n)
    kind = RepKind(kind)
    if kind is RepKind.R1:
        return n + 1
    if kind is RepKind.R2:
        return n // 2 + 1
    return (n - 1) // 2 + 1


@dataclass(frozen=True)
class RepTable:
    """The three count arrays over [0, max_n] for one set."""

    set_spec: str
    max_n: int
    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray

    def values(self, kind: RepKind) -> np.ndarray:
        return getattr(self, RepKind(kind).value)

    def to_csv(self) -> str:
        lines = ["n,r1,r2,r3"]
        for n in range(self.max_n + 1):
            lines.append(f"{n},{self.r1[n]},{self.r2[n]},{self.r3[n]}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "set": self.set_spec,
            "max_n": self.max_n,
            "r1": self.r1.tolist(),
            "r2": self.r2.tolist(),
            "r3": self.r3.tolist(),
        }


def membership_array(a: IntegerSet, max_n: int) -> np.ndarray:
    """Memberships of 0..max_n as a read-only uint8 array."""
    return np.frombuffer(a.membership_bytes(max_n), dtype=np.uint8)


def diagonal_indicator(a: IntegerSet, max_n: int) -> np.ndarray:
    """1 where n is even and n/2 is a member, else 0.  Equals r2 - r3."""
    return _diagonal(membership_array(a, max_n))


def _diagonal(mem: np.ndarray) -> np.ndarray:
    d = np.zeros(len(mem), dtype=np.int64)
    d[0::2] = mem[: (len(mem) + 1) // 2]
    return d


def _r1_naive(mem: np.ndarray) -> np.ndarray:
    # Direct convolution of the 0/1 membership sequence with itself.  Floats
    # carry it exactly: every intermediate is an integer bounded by len(mem),
    # far below 2**24 (float32) or 2**53 (float64).
    dtype = np.float32 if len(mem) < (1 << 24) - 1 else np.float64
    x = mem.astype(dtype)
    return np.convolve(x, x)[: len(mem)].astype(np.int64)


def _r1_word_parallel(mem: np.ndarray) -> np.ndarray:
    # r1(n) is the overlap popcount between the membership bits of [0, n]
    # and their reversal; the reversal is maintained incrementally.
    mask = int.from_bytes(np.packbits(mem, bitorder="little").tobytes(), "little")
    out = []
    append = out.append
    rev = 0
    for bit in mem.tobytes():
        rev = (rev << 1) | bit
        append((mask & rev).bit_count())
    return np.array(out, dtype=np.int64)


def _freeze(spec: str, max_n: int, r1: np.ndarray, r2: np.ndarray, r3: np.ndarray) -> RepTable:
    for arr in (r1, r2, r3):
        arr.setflags(write=False)
    return RepTable(spec, max_n, r1, r2, r3)


def _estimate_bytes(max_n: int) -> int:
    # membership + float copy + convolution output + three count arrays
    return 64 * (max_n + 1)


def batch_table(
    a: IntegerSet,
    max_n: int,
    strategy: str = "auto",
    *,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> RepTable:
    """Compute all three functions on [0, max_n].

    Strategies "naive" (direct convolution) and "word_parallel" (bit-vector
    overlap counting) produce identical tables by contract; "auto" picks by
    size.  r2 and r3 are derived from r1 and the diagonal indicator, which
    keeps a single source of truth for the counts.
    """
    _check_n(max_n)
    if strategy not in ("naive", "word_parallel", "auto"):
        raise ValueError(f"unknown strategy {strategy!r}")
    need = _estimate_bytes(max_n)
    if need > memory_budget:
        raise BudgetExceededError(
            f"a table up to {max_n} needs about {need} bytes", budget=memory_budget
        )
    mem = membership_array(a, max_n)
    if strategy == "auto":
        strategy = "word_parallel" if max_n > WORD_PARALLEL_CUTOVER else "naive"
    r1 = _r1_naive(mem) if strategy == "naive" else _r1_word_parallel(mem)
    d = _diagonal(mem)
    r2 = (r1 + d) >> 1
    r3 = r2 - d
    return _freeze(a.spec(), max_n, r1, r2, r3)


def r1_via_complement(prefix: ComplementPrefix, n: int) -> int:
    """r1 of the set whose missing values the prefix lists, via
    inclusion-exclusion: (n + 1) - 2 * #misses + #miss pairs summing to n.

    The prefix must cover every missing value up to n.
    """
    _check_n(n)
    covered = (prefix.exhausted and prefix.scan_bound >= n) or (
        prefix.elements and prefix.elements[-1] >= n
    )
    if not covered:
        raise IncompletePrefixError(
            f"prefix does not list all complement elements up to {n}"
        )
    inside = prefix.elements[: bisect_right(prefix.elements, n)]
    present = set(inside)
    pairs = sum(1 for c in inside if (n - c) in present)
    return (n + 1) - 2 * len(inside) + pairs


def r1_array_via_complement(misses: Sequence[int], max_n: int) -> np.ndarray:
    """Vector form of `r1_via_complement` over all n in [0, max_n].

    `misses` must list every missing value <= max_n in increasing order;
    entries beyond max_n are ignored.
    """
    _check_n(max_n)
    inside = []
    last = -1
    for c in misses:
        if c <= last:
            raise ValueError("misses must be strictly increasing and non-negative")
        last = c
        if c <= max_n:
            inside.append(c)
    r1 = np.arange(1, max_n + 2, dtype=np.int64)
    if not inside:
        return r1
    indicator = np.zeros(max_n + 1, dtype=np.int64)
    indicator[inside] = 1
    r1 -= 2 * np.cumsum(indicator)
    sums = [c + d for c in inside for d in inside if c + d <= max_n]
    if sums:
        np.add.at(r1, sums, 1)
    return r1


def table_from_r1(a: IntegerSet, r1: Iterable[int]) -> RepTable:
    """Build a full table from a precomputed r1 array, deriving r2 and r3."""
    r1 = np.asarray(r1, dtype=np.int64)
    max_n = len(r1) - 1
    d = diagonal_indicator(a, max_n)
    r2 = (r1 + d) >> 1
    r3 = r2 - d
    return _freeze(a.spec(), max_n, r1.copy(), r2, r3)
