"""Named verification suites.

Each suite recomputes one family of claims from scratch and compares the
results against an independent route (pair counting, table scans, or the
predicted formulas).  Suites return structured results rather than raising,
so the CLI can emit one JSON report and an exit code.

The `corrupt` flag deliberately perturbs one computed value per suite; it
exists so the failure path is reachable and testable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import diagram, pool
from .core import (
    RepKind,
    batch_table,
    closed_form,
    diagonal_indicator,
    membership_array,
    r1_array_via_complement,
    r1_at,
    r1_via_complement,
    r2_at,
    r3_at,
    table_from_r1,
)
from .monotonicity import find_violations, natural_density_estimate
from .sets import FiniteSet, complement, complement_prefix
from .witnesses import (
    DecreaseCase,
    almost_monotone_set,
    check_block_values,
    first_r2_decrease_bruteforce,
    predict_r2_decrease,
    refute_strict_increase,
    sparse_r1_profile,
    violation_bound,
)

__all__ = ["Check", "SuiteResult", "SUITE_NAMES", "run_suite", "run_suites"]


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


@dataclass
class SuiteResult:
    suite: str
    seed: int | None
    elapsed: float
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed, 3),
            "checks": [c.to_json_obj() for c in self.checks],
        }


def _half_range_counts(memf: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """r2 and r3 by direct half-range dot products, one n at a time.

    This is a deliberately separate route from both the closed forms and
    the table construction (which derives r2/r3 from r1).
    """
    size = len(memf)
    r2 = np.empty(size, dtype=np.int64)
    r3 = np.empty(size, dtype=np.int64)
    for n in range(size):
        rev = memf[n::-1]
        k2 = n // 2 + 1
        r2[n] = int(np.dot(memf[:k2], rev[:k2]))
        k3 = (n + 1) // 2
        r3[n] = int(np.dot(memf[:k3], rev[:k3])) if k3 else 0
    return r2, r3


def _mismatch_details(expected: np.ndarray, got: np.ndarray) -> dict:
    bad = np.nonzero(expected != got)[0]
    if not len(bad):
        return {}
    n = int(bad[0])
    return {"first_mismatch_n": n, "expected": int(expected[n]), "got": int(got[n])}


def suite_closed_forms(*, seed: int | None = None, max_n: int = 5000, corrupt: bool = False) -> list[Check]:
    nat = complement(FiniteSet())
    memf = membership_array(nat, max_n).astype(np.float64)
    counted_r1 = np.convolve(memf, memf)[: max_n + 1].astype(np.int64)
    counted_r2, counted_r3 = _half_range_counts(memf)
    checks = []
    for kind, counted in (
        (RepKind.R1, counted_r1),
        (RepKind.R2, counted_r2),
        (RepKind.R3, counted_r3),
    ):
        formula = np.array([closed_form(kind, n) for n in range(max_n + 1)], dtype=np.int64)
        if corrupt and kind is RepKind.R1:
            formula[7] += 1
        ok = np.array_equal(formula, counted)
        checks.append(
            Check(
                f"{kind.value} closed form equals pair counting on [0, {max_n}]",
                ok,
                _mismatch_details(counted, formula),
            )
        )
    # pure-python pointwise loops as a second, slower route over a short prefix
    spot_ok = all(
        r1_at(nat, n) == closed_form(RepKind.R1, n)
        and r2_at(nat, n) == closed_form(RepKind.R2, n)
        and r3_at(nat, n) == closed_form(RepKind.R3, n)
        for n in range(301)
    )
    checks.append(Check("pointwise loops agree with the closed forms on [0, 300]", spot_ok))
    return checks


def suite_identities(
    *, seed: int = pool.DEFAULT_SEED, count: int = 100, max_n: int = 2000, corrupt: bool = False
) -> list[Check]:
    sets = pool.periodic_pool(count, seed)
    decomposition_bad = []
    diagonal_bad = []
    for i, a in enumerate(sets):
        memf = membership_array(a, max_n).astype(np.float64)
        r1 = np.convolve(memf, memf)[: max_n + 1].astype(np.int64)
        r2, r3 = _half_range_counts(memf)
        if corrupt and i == 0:
            r2 = r2.copy()
            r2[3] += 1
        d = diagonal_indicator(a, max_n)
        if not np.array_equal(r1, r2 + r3):
            decomposition_bad.append(a.spec())
        if not np.array_equal(r2 - r3, d):
            diagonal_bad.append(a.spec())
    checks = [
        Check(
            f"r1 = r2 + r3 for {count} periodic sets on [0, {max_n}]",
            not decomposition_bad,
            {"failing_sets": decomposition_bad[:5]},
        ),
        Check(
            "r2 - r3 equals the diagonal indicator",
            not diagonal_bad,
            {"failing_sets": diagonal_bad[:5]},
        ),
    ]
    return checks


def suite_strategies(
    *, seed: int = pool.DEFAULT_SEED, count: int = 20, max_n: int = 2**15, corrupt: bool = False
) -> list[Check]:
    sets = pool.mixed_pool(count, seed)
    bad = []
    for i, a in enumerate(sets):
        t_naive = batch_table(a, max_n, "naive")
        t_word = batch_table(a, max_n, "word_parallel")
        word_r1 = t_word.r1
        if corrupt and i == 0:
            word_r1 = word_r1.copy()
            word_r1[5] += 1
        same = (
            np.array_equal(t_naive.r1, word_r1)
            and np.array_equal(t_naive.r2, t_word.r2)
            and np.array_equal(t_naive.r3, t_word.r3)
        )
        if not same:
            bad.append(a.spec())
    return [
        Check(
            f"naive and word_parallel tables match entrywise at N = {max_n} for {count} sets",
            not bad,
            {"failing_sets": bad[:5]},
        )
    ]


def suite_density_zero(*, seed: int | None = None, max_n: int = 2**20, corrupt: bool = False) -> list[Check]:
    a = almost_monotone_set(1)
    bound = violation_bound(1, max_n).bound
    profile = sparse_r1_profile(max_n)
    positives = sorted(profile)
    violations = sum(1 for n in positives if n < max_n and profile.get(n + 1, 0) < profile[n])
    if corrupt:
        violations = bound + 1
    checks = [
        Check(
            f"positions with r1 > 0 up to {max_n} fit the bound {bound}",
            len(positives) <= bound,
            {"positive_positions": len(positives), "bound": bound},
        ),
        Check(
            "non-strict violations fit the same bound",
            violations <= bound,
            {"violations": violations, "bound": bound},
        ),
    ]
    spot = all(profile.get(n, 0) == r1_at(a, n) for n in list(positives[:8]) + [0, 1, 3, 5, 100, 2049])
    checks.append(Check("sparse profile matches pointwise counting at sampled n", spot))
    density = natural_density_estimate(a, max_n)
    checks.append(
        Check(
            "member count up to N is floor(log2 N)",
            density.member_count == max_n.bit_length() - 1,
            {"member_count": density.member_count, "ratio": str(density.ratio)},
        )
    )
    return checks


def suite_density_one(
    *, seed: int | None = None, max_n: int = 2**20, block_j_max: int = 14, corrupt: bool = False
) -> list[Check]:
    a = almost_monotone_set(2)
    prefix = complement_prefix(a, 64, max_n)
    r1 = r1_array_via_complement(prefix.elements, max_n)
    if corrupt:
        r1 = r1.copy()
        r1[9] -= 1
    bound = violation_bound(2, max_n).bound
    table = table_from_r1(a, r1)
    report = find_violations(table, RepKind.R1, strict=True)
    checks = [
        Check(
            f"strict-increase failures up to {max_n} fit the bound {bound}",
            report.count <= bound,
            {"failures": report.count, "bound": bound, "density": str(report.density_upper)},
        )
    ]
    # cross-route check of the complement path against direct convolution
    small = batch_table(a, 4096, "naive")
    checks.append(
        Check(
            "complement path agrees with the naive table on [0, 4096]",
            np.array_equal(small.r1, r1[:4097]),
            _mismatch_details(small.r1, r1[:4097]),
        )
    )
    spot = all(
        r1_via_complement(prefix, n) == int(r1[n]) for n in (0, 1, 2, 5, 6, 100, 2**15, 2**20 - 1)
    )
    checks.append(Check("scalar inclusion-exclusion agrees at sampled n", spot))
    bad_blocks = []
    for j in range(1, block_j_max + 1):
        lo, hi = 2**j + 1, 2 ** (j + 1) - 2
        if lo > hi:
            continue
        ns = np.arange(lo, hi + 1)
        forms = [2**j + 2**i for i in range(1, j + 1) if 2**j + 2**i <= hi]
        interior = ns[~np.isin(ns, forms)]
        if not np.all(r1[interior + 1] > r1[interior]):
            bad_blocks.append(j)
    checks.append(
        Check(
            f"strict increase holds at every interior non-pair position, blocks 1..{block_j_max}",
            not bad_blocks,
            {"failing_blocks": bad_blocks},
        )
    )
    return checks


def suite_blocks(*, seed: int | None = None, j_max: int = 14, corrupt: bool = False) -> list[Check]:
    failing = [j for j in range(1, j_max + 1) if not check_block_values(j)]
    if corrupt:
        failing = [1] + failing
    return [
        Check(
            f"predicted block values match direct tables for 1 <= j <= {j_max}",
            not failing,
            {"failing_blocks": failing},
        )
    ]


def suite_decrease(
    *, seed: int = pool.DEFAULT_SEED, count: int = 500, scan_bound: int = 512, corrupt: bool = False
) -> list[Check]:
    sets = pool.decrease_pool(count, seed, scan_bound)
    unverified = []
    oracle_bad = []
    gap_bad = []
    clean_gaps = 0
    for i, a in enumerate(sets):
        w = predict_r2_decrease(a, scan_bound)
        table = batch_table(a, w.n + 1)
        before, after = int(table.r2[w.n]), int(table.r2[w.n + 1])
        if corrupt and i == 0:
            after = before
        if not (before == w.before and after == w.after and before > after):
            unverified.append(a.spec())
        first = first_r2_decrease_bruteforce(a, w.n + 1)
        if first is None or first > w.n:
            oracle_bad.append(a.spec())
        if w.case is DecreaseCase.C3_GAP:
            c1, c2, c3 = w.c_values
            if c3 > c1 + c2 + 1:
                clean_gaps += 1
                x, y = c1 // 2, c2 // 2
                if (w.before, w.after) != (x + y, x + y - 1):
                    gap_bad.append(a.spec())
    return [
        Check(
            f"every predicted witness shows a strict r2 decrease ({count} sets)",
            not unverified,
            {"failing_sets": unverified[:5]},
        ),
        Check(
            "the first brute-force decrease is never after the predicted one",
            not oracle_bad,
            {"failing_sets": oracle_bad[:5]},
        ),
        Check(
            "clean gap cases drop from x + y to x + y - 1",
            not gap_bad and clean_gaps > 0,
            {"clean_gap_instances": clean_gaps, "failing_sets": gap_bad[:5]},
        ),
    ]


def suite_window_step(
    *, seed: int = pool.DEFAULT_SEED, count: int = 200, start_max: int = 64, corrupt: bool = False
) -> list[Check]:
    sets = pool.mixed_pool(count, seed)
    bad = []
    for a in sets:
        for kind in (RepKind.R2, RepKind.R3):
            for start in range(start_max + 1):
                ref = refute_strict_increase(a, start, kind)
                witness = ref.witness
                if corrupt and not bad and start == 0 and kind is RepKind.R2:
                    witness = ref.window_end + 1
                if not (start <= witness <= ref.window_end and ref.end_value <= ref.value_cap):
                    bad.append((a.spec(), kind.value, start))
    return [
        Check(
            f"a flat step exists in [start, 2*start + 2] for every start <= {start_max}, "
            f"both kinds, {count} sets, within the cap start + 2",
            not bad,
            {"failures": bad[:5]},
        )
    ]


def suite_diagram(
    *, seed: int = pool.DEFAULT_SEED, count: int = 10, max_sum: int = 50, corrupt: bool = False
) -> list[Check]:
    sets = pool.mixed_pool(count, seed)
    mismatched = []
    malformed = []
    for i, a in enumerate(sets):
        svg = diagram.render_diagram(a, max_sum, "svg")
        try:
            counts = diagram.svg_column_counts(svg, max_sum)
        except Exception:
            malformed.append(a.spec())
            continue
        expected = batch_table(a, max_sum, "naive").r1.tolist()
        if corrupt and i == 0:
            expected = list(expected)
            expected[0] += 1
        if counts != expected:
            mismatched.append(a.spec())
    return [
        Check("every rendered SVG parses as XML", not malformed, {"failing_sets": malformed}),
        Check(
            f"per-column point counts equal r1 for {count} sets at max_sum = {max_sum}",
            not mismatched,
            {"failing_sets": mismatched[:5]},
        ),
    ]


_SUITES = {
    "closed-forms": suite_closed_forms,
    "identities": suite_identities,
    "strategies": suite_strategies,
    "density-zero": suite_density_zero,
    "density-one": suite_density_one,
    "blocks": suite_blocks,
    "decrease": suite_decrease,
    "window-step": suite_window_step,
    "diagram": suite_diagram,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, *, seed: int = pool.DEFAULT_SEED, corrupt: bool = False) -> SuiteResult:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    started = time.perf_counter()
    checks = _SUITES[name](seed=seed, corrupt=corrupt)
    return SuiteResult(name, seed, time.perf_counter() - started, checks)


def run_suites(
    names: list[str] | tuple[str, ...] | str = "all",
    *,
    seed: int = pool.DEFAULT_SEED,
    corrupt: bool = False,
) -> list[SuiteResult]:
    if names == "all":
        names = SUITE_NAMES
    elif isinstance(names, str):
        names = (names,)
    return [run_suite(n, seed=seed, corrupt=corrupt) for n in names]
