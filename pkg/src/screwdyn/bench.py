"""Per-evaluation timing of higher-order inverse dynamics."""

from __future__ import annotations

import logging
import statistics
import time
from dataclasses import dataclass

import numpy as np

from screwdyn.chain import ChainModel
from screwdyn.checks import random_state
from screwdyn.derivatives import higher_order_inverse_dynamics

__all__ = ["MIN_STABLE_REPS", "REFERENCE_SECONDS", "BenchReport", "run_bench"]

logger = logging.getLogger(__name__)

# MATLAB timing for the 7-DOF arm at order 2; reported, not asserted.
REFERENCE_SECONDS = 1.6e-3
# States are drawn once and cycled so the timed loop does no sampling.
STATE_POOL = 1000
# Fewer timed evaluations than this give noisy means; allowed, but flagged by the CLI.
MIN_STABLE_REPS = 1000
WARMUP = 10


@dataclass(frozen=True, slots=True)
class BenchReport:
    model: str
    n: int
    order: int
    reps: int
    mean: float
    median: float
    min: float
    max: float
    checksum: float

    @property
    def speedup(self) -> float:
        """Reference time over mean time."""
        return REFERENCE_SECONDS / self.mean if self.mean > 0 else float("inf")

    def to_dict(self) -> dict[str, object]:
        return {
            "model": self.model,
            "n": self.n,
            "order": self.order,
            "reps": self.reps,
            "mean_s": self.mean,
            "median_s": self.median,
            "min_s": self.min,
            "max_s": self.max,
            "reference_s": REFERENCE_SECONDS,
            "speedup": self.speedup,
            "checksum": self.checksum,
        }


def run_bench(model: ChainModel, reps: int = 10000, seed: int = 0, order: int = 2) -> BenchReport:
    """Time ``reps`` evaluations on seeded random states.

    ``checksum`` sums every output component and is identical across runs with
    the same model, seed and ``reps``.
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    rng = np.random.default_rng(seed)
    pool = [random_state(rng, model.n) for _ in range(min(reps, STATE_POOL))]

    for state in pool[:WARMUP]:
        higher_order_inverse_dynamics(model, state, order=order)

    times: list[float] = []
    checksum = 0.0
    for k in range(reps):
        state = pool[k % len(pool)]
        start = time.perf_counter()
        res = higher_order_inverse_dynamics(model, state, order=order)
        times.append(time.perf_counter() - start)
        checksum += float(res.Q.sum())
        if res.Qdot is not None:
            checksum += float(res.Qdot.sum())
        if res.Qddot is not None:
            checksum += float(res.Qddot.sum())

    report = BenchReport(
        model=model.name,
        n=model.n,
        order=order,
        reps=reps,
        mean=statistics.fmean(times),
        median=statistics.median(times),
        min=min(times),
        max=max(times),
        checksum=checksum,
    )
    logger.debug(f"{model.name}: {reps} reps, mean {report.mean * 1e6:.1f} µs")
    return report
