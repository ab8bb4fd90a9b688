from itertools import product

import pytest
from hypothesis import given, strategies as st

from rvwarning import grid


class Divisible:
    def __init__(self, m):
        self.m = m

    def __call__(self, pt):
        return sum(pt) % self.m == 0


axes_strategy = st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=4, unique=True), min_size=1, max_size=4)


@given(axes_strategy, st.integers(1, 5), st.integers(2, 4))
def test_sweep_matches_product(axes, workers, m):
    pts = list(product(*axes))
    hits = [pt for pt in pts if sum(pt) % m == 0]
    count, first = grid.sweep(Divisible(m), axes, workers=1)
    assert count == len(hits)
    assert first == (hits[0] if hits else None)


@given(axes_strategy, st.data())
def test_iter_range_slices_odometer(axes, data):
    pts = list(product(*axes))
    lo = data.draw(st.integers(0, len(pts)))
    hi = data.draw(st.integers(lo, len(pts)))
    assert list(grid.iter_range(axes, lo, hi)) == pts[lo:hi]


def test_chunks_cover_everything():
    for total in range(0, 30):
        for parts in range(1, 8):
            chunks = grid._split(total, parts)
            covered = [i for lo, hi in chunks for i in range(lo, hi)]
            assert covered == list(range(total))


def test_parallel_sweep_is_identical():
    axes = [range(7)] * 4
    serial = grid.sweep(Divisible(5), axes, workers=1)
    assert grid.sweep(Divisible(5), axes, workers=3) == serial


def test_guard():
    with pytest.raises(ValueError):
        grid.check_guard([range(10)] * 8, 10**7)
    assert grid.check_guard([range(10)] * 3, 10**7) == 1000


def test_find_first_none():
    assert grid.find_first(lambda pt: False, [[0, 1]]) is None
