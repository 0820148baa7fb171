"""Constrained simple random sampling (cSRS).

Each linked variable is drawn from its marginal truncated by the value
already drawn for its left neighbour.  Constraints hold by construction
but the marginals drift away from their targets; this module exists as
the baseline that cLHS is compared against.
"""
from __future__ import annotations

import numpy as np

from .design import BoundsError, DesignSpec, Relation
from .sampling import SampleMatrix, _check_n, column_rng, open_uniform, resolve_seed

__all__ = ["csrs", "EmptyTruncationError"]


class EmptyTruncationError(ValueError):
    """The truncated range for some row carries no probability mass."""


def csrs(spec: DesignSpec, n: int, seed=None) -> SampleMatrix:
    """Row-wise truncated sequential sampling.

    For a ``<`` link, ``x[j+1]`` is drawn by inverting the CDF of
    ``F_{j+1}`` on ``(F_{j+1}(x[j]), 1)``; for ``>`` on ``(0, F_{j+1}(x[j]))``.
    Unlinked columns are plain i.i.d. draws.
    """
    n = _check_n(n)
    for link in spec.links:
        for j in (link.left, link.right):
            if not spec.variables[j].bounded:
                raise BoundsError(f"constraint requires bounded marginals "
                                  f"({spec.variables[j].name})")
    seed = resolve_seed(seed)

    cols = []
    for j, dist in enumerate(spec.variables):
        rng = column_rng(seed, j)
        link = spec.link_into(j)
        if link is None:
            cols.append(np.asarray(dist.quantile(open_uniform(rng, n)), dtype=float))
            continue
        prev = cols[j - 1]
        cut = np.asarray(dist.cdf(prev), dtype=float)
        if link.relation is Relation.LESS:
            lo, hi = cut, np.ones(n)
        else:
            lo, hi = np.zeros(n), cut
        empty = ~(hi > lo)
        if empty.any():
            row = int(np.flatnonzero(empty)[0])
            raise EmptyTruncationError(
                f"row {row + 1}: {spec.variables[j - 1].name}={prev[row]!r} leaves no room "
                f"for {dist.name} {link.relation.value} constraint within {dist.support()}")
        col = np.empty(n)
        todo = np.arange(n)
        # rounding can land exactly on the cut point; those rows are redrawn
        for _ in range(100):
            if not todo.size:
                break
            u = lo[todo] + (hi[todo] - lo[todo]) * open_uniform(rng, todo.size)
            inside = (u > 0.0) & (u < 1.0)
            x = np.full(todo.size, np.nan)
            x[inside] = dist.quantile(u[inside])
            good = inside & link.relation.holds(prev[todo], x)
            col[todo[good]] = x[good]
            todo = todo[~good]
        if todo.size:
            row = int(todo[0])
            raise EmptyTruncationError(
                f"row {row + 1}: no value of {dist.name} strictly "
                f"{'above' if link.relation is Relation.LESS else 'below'} {prev[row]!r}")
        cols.append(col)
    return SampleMatrix(np.column_stack(cols), spec.names, seed, "csrs")
