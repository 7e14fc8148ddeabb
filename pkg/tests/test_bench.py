"""Timing harness."""

import pytest

from screwdyn.bench import REFERENCE_SECONDS, run_bench
from screwdyn.chain import ChainModel


def test_checksum_is_deterministic(two_r: ChainModel) -> None:
    a = run_bench(two_r, reps=50, seed=7)
    b = run_bench(two_r, reps=50, seed=7)
    assert a.checksum == b.checksum
    assert a.reps == 50 and a.n == 2 and a.order == 2


def test_seed_changes_checksum(two_r: ChainModel) -> None:
    assert run_bench(two_r, reps=20, seed=1).checksum != run_bench(two_r, reps=20, seed=2).checksum


def test_statistics_are_ordered(pendulum: ChainModel) -> None:
    report = run_bench(pendulum, reps=30, order=0)
    assert 0.0 < report.min <= report.median <= report.max
    assert report.min <= report.mean <= report.max
    data = report.to_dict()
    assert data["reference_s"] == REFERENCE_SECONDS
    assert data["order"] == 0


def test_speedup_is_reported(two_r: ChainModel) -> None:
    report = run_bench(two_r, reps=20)
    assert report.speedup > 0
    assert report.to_dict()["speedup"] == pytest.approx(REFERENCE_SECONDS / report.mean)


def test_reps_must_be_positive(pendulum: ChainModel) -> None:
    with pytest.raises(ValueError):
        run_bench(pendulum, reps=0)


@pytest.mark.bench
def test_seven_dof_second_order_within_reference(kuka: ChainModel) -> None:
    report = run_bench(kuka, reps=2000)
    assert report.mean < REFERENCE_SECONDS, f"mean {report.mean * 1e3:.3f} ms"
