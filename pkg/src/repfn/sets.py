"""Decidable sets of non-negative integers given by finite descriptors.

Five descriptor kinds cover everything the rest of the package needs:
explicit finite lists, eventually periodic bit patterns, the powers of two
2, 4, 8, ..., complements, and downward shifts.  Membership of any n is
decided in time bounded by the descriptor size, so every operation here
terminates without unbounded search.

The textual mini-language (`parse_set_spec`) is:

    spec  := "nat" | "empty" | "pow2" | "finite:" ints
           | "periodic:" bits ";" bits
           | "complement(" spec ")" | "shift(" uint "," spec ")"
    ints  := "" | uint ("," uint)*          strictly increasing
    bits  := ("0"|"1")*                     period part must be nonempty

Whitespace is not significant.  "nat" is sugar for complement(finite:) and
"empty" for finite:.  Bit k of the unrolled preperiod+period sequence gives
membership of the integer k.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .errors import EmptySetError, ScanBoundExceeded, SetSpecError

__all__ = [
    "IntegerSet",
    "FiniteSet",
    "PeriodicSet",
    "PowersOfTwo",
    "Complement",
    "Shifted",
    "ComplementPrefix",
    "parse_set_spec",
    "contains",
    "complement",
    "shift_down",
    "min_element",
    "complement_prefix",
]


class IntegerSet:
    """Base class for set descriptors.  Instances are immutable and hashable."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def spec(self) -> str:
        """Canonical set-spec string; `parse_set_spec` round-trips it."""
        raise NotImplementedError

    def membership_bytes(self, max_n: int) -> bytes:
        """Memberships of 0..max_n as a bytes object of 0/1 values."""
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteSet(IntegerSet):
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        last = -1
        for e in elems:
            if not isinstance(e, int) or isinstance(e, bool):
                raise SetSpecError(f"finite set element {e!r} is not an integer")
            if e <= last:
                raise SetSpecError(
                    "finite set elements must be non-negative and strictly increasing"
                )
            last = e

    def contains(self, n: int) -> bool:
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def spec(self) -> str:
        if not self.elements:
            return "empty"
        return "finite:" + ",".join(map(str, self.elements))

    def membership_bytes(self, max_n: int) -> bytes:
        out = bytearray(max_n + 1)
        for e in self.elements:
            if e > max_n:
                break
            out[e] = 1
        return bytes(out)


@dataclass(frozen=True)
class PeriodicSet(IntegerSet):
    """Eventually periodic membership: a finite preperiod, then a repeated period."""

    preperiod: str
    period: str

    def __post_init__(self):
        for name, bits in (("preperiod", self.preperiod), ("period", self.period)):
            if any(c not in "01" for c in bits):
                raise SetSpecError(f"{name} bits must be 0 or 1")
        if not self.period:
            raise SetSpecError("period must be nonempty")

    def contains(self, n: int) -> bool:
        if n < len(self.preperiod):
            return self.preperiod[n] == "1"
        return self.period[(n - len(self.preperiod)) % len(self.period)] == "1"

    def spec(self) -> str:
        return f"periodic:{self.preperiod};{self.period}"

    def membership_bytes(self, max_n: int) -> bytes:
        length = max_n + 1
        pre = bytes(c == "1" for c in self.preperiod)
        if length <= len(pre):
            return pre[:length]
        per = bytes(c == "1" for c in self.period)
        reps = (length - len(pre) + len(per) - 1) // len(per)
        return (pre + per * reps)[:length]


@dataclass(frozen=True)
class PowersOfTwo(IntegerSet):
    """The set {2, 4, 8, ...}.  Note that 1 is not a member."""

    def contains(self, n: int) -> bool:
        return n >= 2 and (n & (n - 1)) == 0

    def spec(self) -> str:
        return "pow2"

    def membership_bytes(self, max_n: int) -> bytes:
        out = bytearray(max_n + 1)
        p = 2
        while p <= max_n:
            out[p] = 1
            p <<= 1
        return bytes(out)


# translate() table flipping the 0/1 byte values a membership_bytes produces
_FLIP = bytes([1, 0]) + bytes(range(2, 256))


@dataclass(frozen=True)
class Complement(IntegerSet):
    inner: IntegerSet

    def contains(self, n: int) -> bool:
        return not self.inner.contains(n)

    def spec(self) -> str:
        if self.inner == FiniteSet():
            return "nat"
        return f"complement({self.inner.spec()})"

    def membership_bytes(self, max_n: int) -> bytes:
        return self.inner.membership_bytes(max_n).translate(_FLIP)


@dataclass(frozen=True)
class Shifted(IntegerSet):
    """The set {a - offset : a in inner}; offset may not exceed min(inner)."""

    inner: IntegerSet
    offset: int

    def __post_init__(self):
        if self.offset < 0:
            raise SetSpecError("shift offset must be non-negative")
        m = min_element(self.inner)
        if self.offset > m:
            raise SetSpecError(
                f"shift offset {self.offset} exceeds the inner set minimum {m}"
            )

    def contains(self, n: int) -> bool:
        return self.inner.contains(n + self.offset)

    def spec(self) -> str:
        return f"shift({self.offset},{self.inner.spec()})"

    def membership_bytes(self, max_n: int) -> bytes:
        return self.inner.membership_bytes(max_n + self.offset)[self.offset :]


def contains(a: IntegerSet, n: int) -> bool:
    """Membership test; defined for non-negative n only."""
    if n < 0:
        raise ValueError("membership is defined for non-negative integers")
    return a.contains(n)


def complement(a: IntegerSet) -> IntegerSet:
    """Complement within the non-negative integers; a double complement unwraps."""
    if isinstance(a, Complement):
        return a.inner
    return Complement(a)


def shift_down(a: IntegerSet, m: int) -> IntegerSet:
    """The set {x - m : x in a}; requires m <= min(a) and a nonempty."""
    if m < 0:
        raise ValueError("shift offset must be non-negative")
    if m == 0:
        min_element(a)  # still an error to shift an empty set
        return a
    if isinstance(a, Shifted):
        return Shifted(a.inner, a.offset + m)
    return Shifted(a, m)


def _member_horizon(a: IntegerSet, k: int) -> int:
    """If a has any member >= k, it has one below the returned bound."""
    if isinstance(a, FiniteSet):
        return a.elements[-1] + 1 if a.elements else k
    if isinstance(a, PeriodicSet):
        return max(k, len(a.preperiod)) + len(a.period)
    if isinstance(a, PowersOfTwo):
        # the next power of two at or above max(k, 2) is below 2*max(k, 2)
        return max(3, 2 * k)
    if isinstance(a, Complement):
        return _nonmember_horizon(a.inner, k)
    if isinstance(a, Shifted):
        return max(_member_horizon(a.inner, k + a.offset) - a.offset, k)
    raise TypeError(f"unknown descriptor {type(a).__name__}")


def _nonmember_horizon(a: IntegerSet, k: int) -> int:
    """If any integer >= k is missing from a, one is missing below the bound."""
    if isinstance(a, FiniteSet):
        return k + len(a.elements) + 1
    if isinstance(a, PeriodicSet):
        return max(k, len(a.preperiod)) + len(a.period)
    if isinstance(a, PowersOfTwo):
        # no two consecutive integers are both powers of two >= 2
        return k + 2
    if isinstance(a, Complement):
        return _member_horizon(a.inner, k)
    if isinstance(a, Shifted):
        return max(_nonmember_horizon(a.inner, k + a.offset) - a.offset, k)
    raise TypeError(f"unknown descriptor {type(a).__name__}")


def min_element(a: IntegerSet, *, scan_bound: int | None = None) -> int:
    """Least member of a.

    Without `scan_bound` the scan range is derived from the descriptor, so
    the call always terminates with either the minimum or EmptySetError.
    With an explicit `scan_bound` smaller than that range, an inconclusive
    scan raises ScanBoundExceeded instead.
    """
    limit = _member_horizon(a, 0)
    stop = limit if scan_bound is None else min(limit, scan_bound + 1)
    for n in range(stop):
        if a.contains(n):
            return n
    if scan_bound is not None and scan_bound + 1 < limit:
        raise ScanBoundExceeded(f"no member of {a.spec()} found", bound=scan_bound)
    raise EmptySetError(f"{a.spec()} has no elements")


@dataclass(frozen=True)
class ComplementPrefix:
    """The first missing values of a set, scanned up to a stated bound.

    `exhausted` means the listed elements are all of the missing values at
    or below `scan_bound`; nothing is implied about larger integers.
    """

    elements: tuple[int, ...]
    exhausted: bool
    scan_bound: int


def complement_prefix(a: IntegerSet, count: int, scan_bound: int) -> ComplementPrefix:
    """First `count` integers <= scan_bound that are missing from a."""
    if count < 1:
        raise ValueError("count must be positive")
    if scan_bound < 0:
        raise ValueError("scan bound must be non-negative")
    bts = a.membership_bytes(scan_bound)
    found: list[int] = []
    pos = bts.find(0)
    while pos != -1 and len(found) <= count:
        found.append(pos)
        pos = bts.find(0, pos + 1)
    exhausted = len(found) <= count
    return ComplementPrefix(tuple(found[:count]), exhausted, scan_bound)


# --- set-spec parsing ---------------------------------------------------


def parse_set_spec(text: str) -> IntegerSet:
    """Parse a set-spec string; raises SetSpecError with a position on errors."""
    s = "".join(text.split())
    if not s:
        raise SetSpecError("empty set-spec", position=0)
    value, pos = _parse_spec(s, 0)
    if pos != len(s):
        raise SetSpecError(f"unexpected {s[pos]!r}", position=pos)
    return value


def _parse_spec(s: str, i: int) -> tuple[IntegerSet, int]:
    if s.startswith("nat", i):
        return complement(FiniteSet()), i + 3
    if s.startswith("empty", i):
        return FiniteSet(), i + 5
    if s.startswith("pow2", i):
        return PowersOfTwo(), i + 4
    if s.startswith("finite:", i):
        return _parse_finite(s, i + 7)
    if s.startswith("periodic:", i):
        return _parse_periodic(s, i + 9)
    if s.startswith("complement(", i):
        inner, j = _parse_spec(s, i + 11)
        return complement(inner), _expect(s, j, ")")
    if s.startswith("shift(", i):
        m, j = _parse_uint(s, i + 6)
        j = _expect(s, j, ",")
        inner, j = _parse_spec(s, j)
        j = _expect(s, j, ")")
        try:
            return shift_down(inner, m), j
        except EmptySetError:
            raise SetSpecError("cannot shift an empty set", position=i) from None
    raise SetSpecError("expected a set expression", position=i)


def _expect(s: str, i: int, ch: str) -> int:
    if i < len(s) and s[i] == ch:
        return i + 1
    raise SetSpecError(f"expected {ch!r}", position=i)


def _parse_uint(s: str, i: int) -> tuple[int, int]:
    j = i
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == i:
        raise SetSpecError("expected a number", position=i)
    return int(s[i:j]), j


def _parse_finite(s: str, i: int) -> tuple[IntegerSet, int]:
    values: list[int] = []
    j = i
    while j < len(s) and s[j].isdigit():
        v, j = _parse_uint(s, j)
        values.append(v)
        # a comma continues the list only when a digit follows it
        if j + 1 < len(s) and s[j] == "," and s[j + 1].isdigit():
            j += 1
        else:
            break
    return FiniteSet(tuple(values)), j


def _parse_periodic(s: str, i: int) -> tuple[IntegerSet, int]:
    pre, j = _parse_bits(s, i)
    j = _expect(s, j, ";")
    per, j = _parse_bits(s, j)
    if not per:
        raise SetSpecError("period must be nonempty", position=j)
    return PeriodicSet(pre, per), j


def _parse_bits(s: str, i: int) -> tuple[str, int]:
    j = i
    while j < len(s) and s[j] in "01":
        j += 1
    return s[i:j], j
