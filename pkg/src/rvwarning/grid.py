"""Exhaustive sweeps over finite product sets.

Points are visited in odometer order (last coordinate fastest).  A sweep
can be split into contiguous index ranges and run in worker processes;
counts add up and the reported witness is the first hit in odometer order,
so the result does not depend on the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import islice, product
from math import prod
from typing import Callable, Sequence

DEFAULT_GRID_GUARD = 10**7


def grid_size(axes: Sequence[Sequence]) -> int:
    return prod(len(a) for a in axes)


def check_guard(axes: Sequence[Sequence], limit: int, what: str = "grid") -> int:
    size = grid_size(axes)
    if size > limit:
        raise ValueError(f"{what} size {size} exceeds guard {limit}")
    return size


def iter_range(axes: Sequence[Sequence], start: int, stop: int):
    """Points with odometer indices in [start, stop)."""
    if start >= stop:
        return iter(())
    if not axes:
        return iter([()]) if start == 0 else iter(())
    # jump straight to ``start`` on the leading axis, then slice the rest
    inner = grid_size(axes[1:])
    first, offset = divmod(start, inner) if inner else (0, 0)
    it = product(axes[0][first:], *axes[1:])
    return islice(it, offset, offset + (stop - start))


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _run_chunk(args):
    predicate, axes, lo, hi = args
    count = 0
    witness = None
    for pt in iter_range(axes, lo, hi):
        if predicate(pt):
            if witness is None:
                witness = pt
            count += 1
    return count, witness


def sweep(
    predicate: Callable[[tuple], bool],
    axes: Sequence[Sequence],
    workers: int = 1,
) -> tuple[int, tuple | None]:
    """Count the grid points satisfying ``predicate``; also return the first one.

    With ``workers > 1`` the predicate must be picklable.
    """
    axes = [tuple(a) for a in axes]
    total = grid_size(axes)
    chunks = [(predicate, axes, lo, hi) for lo, hi in _split(total, workers)]
    if workers <= 1 or len(chunks) == 1:
        results = [_run_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, chunks))
    count = sum(c for c, _ in results)
    witness = next((w for _, w in results if w is not None), None)
    return count, witness


def find_first(predicate, axes, workers: int = 1):
    """The first point in odometer order satisfying ``predicate``, or None."""
    return sweep(predicate, axes, workers)[1]
