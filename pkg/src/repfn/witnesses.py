"""Constructions, bounds, and counterexample witnesses.

The classical monotonicity facts about r1, r2, r3 become executable here:

* the powers-of-two set (density 0) keeps r1 non-decreasing outside a set
  of indices bounded by floor(log2 N)^2, and its complement (density 1)
  keeps r1 strictly increasing outside roughly (log2 N + 3)^2 indices;
* any nonempty set missing infinitely many values has an r2 decrease whose
  location follows from the first two or three missing values;
* strict growth of r2 or r3 always stalls inside [N, 2N + 2].

Every predicted witness is verified by recomputation before it is returned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_MEMORY_BUDGET, RepKind, batch_table, r2_at, _diagonal, _r1_naive
from .errors import BudgetExceededError, InsufficientComplementError, SelfCheckError
from .monotonicity import _first_nonstrict_step
from .sets import (
    FiniteSet,
    IntegerSet,
    PeriodicSet,
    PowersOfTwo,
    complement,
    complement_prefix,
    min_element,
    shift_down,
)

__all__ = [
    "almost_monotone_set",
    "remove_first_powers",
    "ViolationBound",
    "violation_bound",
    "sparse_r1_profile",
    "check_block_values",
    "block_value",
    "DecreaseCase",
    "DecreaseWitness",
    "predict_r2_decrease",
    "decrease_case_resolvable",
    "first_r2_decrease_bruteforce",
    "WindowRefutation",
    "refute_strict_increase",
    "GreedySearchResult",
    "r3_monotone_greedy_search",
]


def almost_monotone_set(variant: int) -> IntegerSet:
    """The two witness constructions: variant 1 is the powers of two,
    variant 2 is everything except the powers of two."""
    if variant == 1:
        return PowersOfTwo()
    if variant == 2:
        return complement(PowersOfTwo())
    raise ValueError("variant must be 1 or 2")


def remove_first_powers(j: int) -> IntegerSet:
    """All non-negative integers except 2, 4, ..., 2**j."""
    if j < 1:
        raise ValueError("j must be positive")
    return complement(FiniteSet(tuple(2**i for i in range(1, j + 1))))


@dataclass(frozen=True)
class ViolationBound:
    variant: int
    max_n: int
    bound: int


def violation_bound(variant: int, max_n: int) -> ViolationBound:
    """Upper bound on monotonicity failures of r1 up to max_n.

    Variant 1 bounds the indices where r1 of the powers-of-two set is
    positive (hence where it can decrease) by floor(log2 max_n)^2.
    Variant 2 bounds the strict-increase failures of its complement by
    2 + (log2 max_n + 3)^2, rounded up to keep the weaker integer bound.
    """
    if max_n < 1:
        raise ValueError("max_n must be positive")
    if variant == 1:
        b = (max_n.bit_length() - 1) ** 2
    elif variant == 2:
        b = math.ceil(2.0 + (math.log2(max_n) + 3.0) ** 2)
    else:
        raise ValueError("variant must be 1 or 2")
    return ViolationBound(variant, max_n, b)


def sparse_r1_profile(max_n: int) -> dict[int, int]:
    """r1 of the powers-of-two set as a sparse map {n: count}; every n
    absent from the map has r1 = 0.  Covers n in [0, max_n]."""
    members = []
    p = 2
    while p <= max_n:
        members.append(p)
        p <<= 1
    profile: dict[int, int] = {}
    for p in members:
        for q in members:
            s = p + q
            if s <= max_n:
                profile[s] = profile.get(s, 0) + 1
    return profile


def block_value(n: int, j: int) -> int:
    """Predicted r1 value of the powers-of-two complement on the block
    (2^j, 2^{j+1}].

    Interior values are n + 1 - 2j, except n = 2^j + 2^i (1 <= i < j)
    where two removed powers pair up and the value is n + 1 - 2(j - 1).
    The right endpoint 2^{j+1} is special: it is itself a removed power
    and also the sum of the removed pair (2^j, 2^j), which nets to n - 2j.
    """
    top = 2 ** (j + 1)
    if not 2**j < n <= top:
        raise ValueError(f"{n} is not in the block ({2**j}, {top}]")
    if n == top:
        return n - 2 * j
    low = n - 2**j
    if low >= 2 and (low & (low - 1)) == 0:
        return n + 1 - 2 * (j - 1)
    return n + 1 - 2 * j


def check_block_values(j: int, *, strategy: str = "naive") -> bool:
    """Compare `block_value` against a directly computed table on the
    whole block (2^j, 2^{j+1}] for the powers-of-two complement."""
    if j < 1:
        raise ValueError("j must be positive")
    a = almost_monotone_set(2)
    top = 2 ** (j + 1)
    table = batch_table(a, top, strategy)
    return all(int(table.r1[n]) == block_value(n, j) for n in range(2**j + 1, top + 1))


class DecreaseCase(enum.Enum):
    """Which part of the case analysis produced a predicted r2 decrease."""

    C1_ODD = "C1_ODD"  # first missing value odd: decrease at c1 - 1
    C2_ODD = "C2_ODD"  # c1 even > 0, second missing value odd: at c2 - 1
    C3_ADJACENT = "C3_ADJACENT"  # c1, c2 even and c3 = c2 + 1: at c2
    C3_GAP = "C3_GAP"  # c1, c2 even and c3 > c2 + 1: at c1 + c2
    SHIFTED = "SHIFTED"  # 0 missing: recurse on the set shifted to start at 0


@dataclass(frozen=True)
class DecreaseWitness:
    """A verified index n with r2(A, n) > r2(A, n + 1)."""

    set_spec: str
    n: int
    case: DecreaseCase
    c_values: tuple[int, ...]
    before: int
    after: int
    shift: int = 0
    inner: "DecreaseWitness | None" = None

    def to_json_obj(self) -> dict:
        obj = {
            "set": self.set_spec,
            "n": self.n,
            "case_trace": self.case.value,
            "c_values": list(self.c_values),
            "before": self.before,
            "after": self.after,
        }
        if self.case is DecreaseCase.SHIFTED:
            obj["shift"] = self.shift
            obj["inner"] = self.inner.to_json_obj() if self.inner else None
        return obj


def _verified_witness(
    a: IntegerSet,
    n: int,
    case: DecreaseCase,
    c_values: tuple[int, ...],
    shift: int = 0,
    inner: DecreaseWitness | None = None,
) -> DecreaseWitness:
    before = r2_at(a, n)
    after = r2_at(a, n + 1)
    if not before > after:
        raise SelfCheckError(
            f"predicted decrease at n={n} for {a.spec()} does not hold: "
            f"r2 goes {before} -> {after} (case {case.value})"
        )
    return DecreaseWitness(a.spec(), n, case, c_values, before, after, shift, inner)


def predict_r2_decrease(
    a: IntegerSet, scan_bound: int, *, _shift_depth: int = 0
) -> DecreaseWitness:
    """Locate an r2 decrease from the first missing values of a.

    The case split on the missing values c1 < c2 < c3 pins the decrease:
    c1 odd puts it at c1 - 1; c1 even > 0 with c2 odd puts it at c2 - 1;
    c1, c2 even put it at c2 when c3 = c2 + 1 and at c1 + c2 otherwise.
    A set missing 0 is shifted down by its minimum m and the witness of
    the shifted set is translated back by 2m.

    Raises InsufficientComplementError when the scan bound does not expose
    enough missing values to resolve a case; that outcome makes no claim
    about whether a decrease exists.
    """
    if scan_bound < 1:
        raise ValueError("scan bound must be positive")
    cs = complement_prefix(a, 3, scan_bound).elements
    if not cs:
        raise InsufficientComplementError(
            f"no missing values of {a.spec()} at or below {scan_bound}"
        )
    c1 = cs[0]
    if c1 % 2 == 1:
        return _verified_witness(a, c1 - 1, DecreaseCase.C1_ODD, (c1,))
    if c1 == 0:
        if _shift_depth:
            raise SelfCheckError("a shifted set is still missing 0")
        m = min_element(a)
        inner = predict_r2_decrease(shift_down(a, m), scan_bound, _shift_depth=1)
        return _verified_witness(
            a, 2 * m + inner.n, DecreaseCase.SHIFTED, inner.c_values, shift=m, inner=inner
        )
    if len(cs) < 2:
        raise InsufficientComplementError(
            f"{a.spec()}: need a second missing value at or below {scan_bound}"
        )
    c2 = cs[1]
    if c2 % 2 == 1:
        return _verified_witness(a, c2 - 1, DecreaseCase.C2_ODD, (c1, c2))
    if len(cs) < 3:
        raise InsufficientComplementError(
            f"{a.spec()}: need a third missing value at or below {scan_bound}"
        )
    c3 = cs[2]
    if c3 == c2 + 1:
        return _verified_witness(a, c2, DecreaseCase.C3_ADJACENT, (c1, c2, c3))
    return _verified_witness(a, c1 + c2, DecreaseCase.C3_GAP, (c1, c2, c3))


def decrease_case_resolvable(a: IntegerSet, scan_bound: int, *, _depth: int = 0) -> bool:
    """Whether the missing values visible below scan_bound suffice for
    `predict_r2_decrease`.  Mirrors its case analysis without verifying."""
    cs = complement_prefix(a, 3, scan_bound).elements
    if not cs:
        return False
    c1 = cs[0]
    if c1 % 2 == 1:
        return True
    if c1 == 0:
        if _depth:
            return False
        try:
            m = min_element(a)
        except Exception:
            return False
        return decrease_case_resolvable(shift_down(a, m), scan_bound, _depth=1)
    if len(cs) < 2:
        return False
    if cs[1] % 2 == 1:
        return True
    return len(cs) >= 3


def first_r2_decrease_bruteforce(
    a: IntegerSet, scan_bound: int, *, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> int | None:
    """Least n < scan_bound with r2(n) > r2(n+1), by full table scan."""
    if scan_bound < 1:
        raise ValueError("scan bound must be positive")
    v = batch_table(a, scan_bound, memory_budget=memory_budget).r2
    worse = np.nonzero(v[:-1] > v[1:])[0]
    return int(worse[0]) if len(worse) else None


@dataclass(frozen=True)
class WindowRefutation:
    """A flat step refuting strict growth of r2 or r3 beyond `start`.

    `value_cap` records why the step must exist: r2 at 2*start + 3 can be
    at most the full-set value start + 2, while strict growth across the
    window would force it past that.
    """

    set_spec: str
    kind: RepKind
    start: int
    witness: int
    window_end: int
    value_cap: int
    end_value: int

    def to_json_obj(self) -> dict:
        return {
            "set": self.set_spec,
            "kind": self.kind.value,
            "start": self.start,
            "witness": self.witness,
            "window_end": self.window_end,
            "value_cap": self.value_cap,
            "end_value": self.end_value,
        }


def refute_strict_increase(a: IntegerSet, start: int, kind: RepKind) -> WindowRefutation:
    """Find the least flat step of r2 or r3 in [start, 2*start + 2] and
    record the cap that forces it.  Aborts loudly if none exists."""
    kind = RepKind(kind)
    if kind is RepKind.R1:
        raise ValueError("the window step is guaranteed for r2 and r3 only")
    end = 2 * start + 3
    table = batch_table(a, end)
    witness = _first_nonstrict_step(table.values(kind), start)
    if witness is None:
        raise SelfCheckError(
            f"no flat step for {kind.value} of {a.spec()} in [{start}, {end - 1}]"
        )
    cap = start + 2
    end_value = int(table.r2[end])
    if end_value > cap:
        raise SelfCheckError(
            f"r2 of {a.spec()} at {end} is {end_value}, above the full-set cap {cap}"
        )
    return WindowRefutation(a.spec(), kind, start, witness, 2 * start + 2, cap, end_value)


@dataclass(frozen=True)
class GreedySearchResult:
    prefix_set: IntegerSet
    excluded: tuple[int, ...]
    max_n: int


def r3_monotone_greedy_search(
    max_n: int, exclusion_budget: int, *, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> GreedySearchResult:
    """Greedily drop integers while keeping r3 non-decreasing on [0, max_n].

    Scans n = 0..max_n in order and excludes n whenever the whole window
    stays monotone with n removed (checked by recomputation) and budget
    remains.  Integers beyond max_n stay included, so the returned set is
    eventually periodic with period "1".  No optimality is claimed.
    """
    if max_n < 1:
        raise ValueError("max_n must be positive")
    if exclusion_budget < 1:
        raise ValueError("exclusion budget must be positive")
    need = 64 * (max_n + 1)
    if need > memory_budget:
        raise BudgetExceededError(
            f"a search window up to {max_n} needs about {need} bytes", budget=memory_budget
        )
    mem = np.ones(max_n + 1, dtype=np.uint8)
    excluded: list[int] = []
    for n in range(max_n + 1):
        if len(excluded) == exclusion_budget:
            break
        mem[n] = 0
        if _r3_nondecreasing(mem):
            excluded.append(n)
        else:
            mem[n] = 1
    bits = "".join("1" if b else "0" for b in mem)
    prefix_set = PeriodicSet(bits, "1")
    final = batch_table(prefix_set, max_n)
    if np.any(final.r3[1:] < final.r3[:-1]):
        raise SelfCheckError("greedy search produced a non-monotone r3 window")
    return GreedySearchResult(prefix_set, tuple(excluded), max_n)


def _r3_nondecreasing(mem: np.ndarray) -> bool:
    r1 = _r1_naive(mem)
    r3 = (r1 - _diagonal(mem)) >> 1
    return not np.any(r3[1:] < r3[:-1])
