"""Multiplication cost benchmark.

One doubling step spawns four sub-products, so the time per multiply
should grow by a factor near 4 per level; the sanity window [3.2, 5.0]
leaves room for allocator and cache effects.  The level 0 -> 1 step is
dominated by constant dispatch cost rather than the recursion, so growth
is asserted from level 2 upward only.  Timing rows are measurements and
are exempt from the byte-determinism contract that experiment reports
obey.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from random import Random

from .core import Element, multiply, random_float_element

GROWTH_WINDOW = (3.2, 5.0)

#: Growth factors are asserted for rows at this level or above (and only
#: when the previous level was also measured).
GROWTH_ASSERT_MIN_LEVEL = 2


@dataclass(frozen=True)
class BenchRow:
    level: int
    dim: int
    ns_per_mul: float
    growth_factor: float | None
    low_confidence: bool


def _time_batch(a: Element, b: Element, n: int) -> float:
    mul = multiply
    t0 = time.perf_counter()
    for _ in range(n):
        mul(a, b)
    return time.perf_counter() - t0


def _measure(a: Element, b: Element, reps: int, min_time: float = 0.02) -> float:
    """Best-of-``reps`` seconds per multiply, auto-calibrated batch size."""
    n = 1
    while True:
        dt = _time_batch(a, b, n)
        if dt >= min_time:
            break
        n *= 2
    best = dt / n
    for _ in range(max(0, reps - 1)):
        best = min(best, _time_batch(a, b, n) / n)
    return best


def bench_multiply(levels: list[int], reps: int, seed=0) -> list[BenchRow]:
    """ns/multiply per level on the float backend, with growth factors.

    ``reps`` is the best-of repetition count; a single rep is valid but
    flagged low confidence.  Growth compares each row against the
    previous measured level when they are consecutive.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if not levels:
        raise ValueError("need at least one level")
    rows: list[BenchRow] = []
    prev: tuple[int, float] | None = None
    for level in sorted(levels):
        rng = Random(f"bench:{seed}:{level}")
        a = random_float_element(level, rng)
        b = random_float_element(level, rng)
        sec = _measure(a, b, reps)
        growth = None
        if prev is not None and prev[0] == level - 1:
            growth = sec / prev[1]
        rows.append(BenchRow(level, 1 << level, sec * 1e9, growth, reps == 1))
        prev = (level, sec)
    return rows


def growth_violations(rows: list[BenchRow]) -> list[str]:
    """Rows whose asserted growth factor leaves the sanity window."""
    lo, hi = GROWTH_WINDOW
    out = []
    for row in rows:
        if row.level < GROWTH_ASSERT_MIN_LEVEL or row.growth_factor is None:
            continue
        if not lo <= row.growth_factor <= hi:
            out.append(
                f"level {row.level}: growth factor {row.growth_factor:.2f} "
                f"outside [{lo}, {hi}]"
            )
    return out
