"""Monotonicity reports, density counts, and guaranteed flat steps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import RepKind, RepTable, batch_table
from .errors import SelfCheckError
from .sets import IntegerSet

__all__ = [
    "ViolationReport",
    "DensityEstimate",
    "find_violations",
    "natural_density_estimate",
    "window_nonstrict_step",
]


@dataclass(frozen=True)
class ViolationReport:
    """Indices n < max_n where the step n -> n+1 fails monotonicity.

    Non-strict mode lists n with r(n) > r(n+1); strict mode lists n with
    r(n+1) <= r(n).  The last index has no step and is never listed.
    """

    set_spec: str
    kind: RepKind
    strict: bool
    max_n: int
    violations: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.violations)

    @property
    def density_upper(self) -> Fraction:
        if self.max_n == 0:
            return Fraction(0)
        return Fraction(self.count, self.max_n)

    def to_json_obj(self) -> dict:
        d = self.density_upper
        return {
            "set": self.set_spec,
            "kind": self.kind.value,
            "strict": self.strict,
            "max_n": self.max_n,
            "count": self.count,
            "density_upper": {"num": d.numerator, "den": d.denominator},
            "violations": list(self.violations),
        }

    def to_csv(self) -> str:
        return "n\n" + "".join(f"{n}\n" for n in self.violations)


def find_violations(table: RepTable, kind: RepKind, strict: bool = False) -> ViolationReport:
    """Scan a table for monotonicity failures of one function."""
    kind = RepKind(kind)
    v = table.values(kind)
    if table.max_n == 0:
        idx: tuple[int, ...] = ()
    else:
        bad = (v[1:] <= v[:-1]) if strict else (v[:-1] > v[1:])
        idx = tuple(int(i) for i in np.nonzero(bad)[0])
    return ViolationReport(table.set_spec, kind, strict, table.max_n, idx)


@dataclass(frozen=True)
class DensityEstimate:
    """Exact membership count over the window [1, max_n]."""

    max_n: int
    member_count: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.member_count, self.max_n)

    def to_json_obj(self) -> dict:
        r = self.ratio
        return {
            "max_n": self.max_n,
            "member_count": self.member_count,
            "ratio": {"num": r.numerator, "den": r.denominator},
        }


def natural_density_estimate(a: IntegerSet, max_n: int) -> DensityEstimate:
    """Count members in [1, max_n]; membership of 0 is never counted."""
    if max_n < 1:
        raise ValueError("window bound must be positive")
    count = sum(a.membership_bytes(max_n)[1:])
    return DensityEstimate(max_n, count)


def _first_nonstrict_step(values: np.ndarray, start: int) -> int | None:
    for n in range(start, 2 * start + 3):
        if values[n + 1] <= values[n]:
            return n
    return None


def window_nonstrict_step(a: IntegerSet, start: int, kind: RepKind) -> int:
    """Least n in [start, 2*start + 2] with r(n+1) <= r(n), for r2 or r3.

    Such an n always exists: strict growth across the whole window would
    need r2 at 2*start + 3 to exceed its full-set value.  Failure to find
    one therefore aborts loudly instead of returning a default.
    """
    kind = RepKind(kind)
    if kind is RepKind.R1:
        raise ValueError("the window step is guaranteed for r2 and r3 only")
    table = batch_table(a, 2 * start + 3)
    step = _first_nonstrict_step(table.values(kind), start)
    if step is None:
        raise SelfCheckError(
            f"no flat step for {kind.value} of {a.spec()} in [{start}, {2 * start + 2}]; "
            "this contradicts a proved bound and indicates a computation bug"
        )
    return step
