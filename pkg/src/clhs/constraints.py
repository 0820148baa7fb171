"""Constrained Latin hypercube sampling.

The engine keeps the first column of an LHS fixed and permutes each
following column so that ``x[j] <rel> x[j+1]`` holds on every row.  A
permutation only reorders values, so every column keeps its
stratification.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .design import BoundsError, ConstraintLink, DesignSpec, Relation
from .distributions import Distribution
from .sampling import SampleMatrix, _check_n, column_rng, lhs_column, resolve_seed

__all__ = [
    "ScoreVector",
    "NoSatisfyingPermutationError",
    "RetryExhaustedError",
    "ConstraintDefectError",
    "DEFAULT_MAX_RETRIES",
    "compatibility_matrix",
    "score_vector",
    "scores",
    "criterion_slack",
    "existence_criterion",
    "bounds_precondition",
    "permute_to_satisfy",
    "clhs",
]

DEFAULT_MAX_RETRIES = 10_000


class NoSatisfyingPermutationError(ValueError):
    """No reordering of the right column satisfies the constraint."""


class RetryExhaustedError(RuntimeError):
    """A column failed the existence criterion on every redraw."""

    def __init__(self, message, column=None, slack=None, gamma=None):
        super().__init__(message)
        self.column = column
        self.slack = slack
        self.gamma = gamma


class ConstraintDefectError(AssertionError):
    """The permutation step produced a violating column; this is a bug."""


@dataclass(frozen=True)
class ScoreVector:
    """Row sums of a compatibility matrix and their ascending sort."""

    scores: np.ndarray
    sorted: np.ndarray

    @classmethod
    def from_scores(cls, s) -> "ScoreVector":
        s = np.asarray(s, dtype=np.int64)
        return cls(s, np.sort(s))


def _columns(left, right):
    left = np.asarray(left, dtype=float).ravel()
    right = np.asarray(right, dtype=float).ravel()
    if left.shape != right.shape:
        raise ValueError(f"columns differ in length: {left.size} vs {right.size}")
    if left.size == 0:
        raise ValueError("columns must be non-empty")
    return left, right


def compatibility_matrix(left, right, relation=Relation.LESS) -> np.ndarray:
    """Binary ``n x n`` matrix; entry ``(i, j)`` is 1 when ``right[i]`` may sit
    on the same row as ``left[j]``.

    For ``<`` that means ``right[i] > left[j]``; for ``>`` it means
    ``right[i] < left[j]``.  The constraint holds row-wise exactly when the
    diagonal is all ones.
    """
    left, right = _columns(left, right)
    rel = Relation.parse(relation)
    ok = rel.holds(left[None, :], right[:, None])
    return ok.astype(np.int8)


def score_vector(c) -> ScoreVector:
    c = np.asarray(c)
    return ScoreVector.from_scores(c.sum(axis=1))


def scores(left, right, relation=Relation.LESS) -> np.ndarray:
    """Row sums of the compatibility matrix in ``O(n log n)``, without building it."""
    left, right = _columns(left, right)
    rel = Relation.parse(relation)
    ordered = np.sort(left)
    if rel is Relation.LESS:
        return np.searchsorted(ordered, right, side="left").astype(np.int64)
    return (left.size - np.searchsorted(ordered, right, side="right")).astype(np.int64)


def criterion_slack(s) -> int:
    """``min_i (sorted(S)_i - i)`` with 1-based ``i``; non-negative means feasible."""
    if isinstance(s, ScoreVector):
        ordered = s.sorted
    else:
        ordered = np.sort(np.asarray(s))
    return int(np.min(ordered - np.arange(1, ordered.size + 1)))


def existence_criterion(s) -> bool:
    """Whether some permutation of the right column honours the constraint.

    ``s`` is a :class:`ScoreVector` or a raw array of row sums.
    """
    return criterion_slack(s) >= 0


def bounds_precondition(left: Distribution, right: Distribution, relation=Relation.LESS) -> bool:
    """Support ordering required for the link to be satisfiable by an LHS.

    Raises
    ------
    BoundsError
        If either marginal has unbounded support.
    """
    rel = Relation.parse(relation)
    if not (left.bounded and right.bounded):
        raise BoundsError("constraint requires bounded marginals")
    bl, hl = left.support()
    br, hr = right.support()
    if rel is Relation.LESS:
        return bl <= br and hl <= hr
    return bl >= br and hl >= hr


def permute_to_satisfy(left, right, relation=Relation.LESS, rng=None) -> np.ndarray:
    """Reorder ``right`` so that ``left[i] <rel> right'[i]`` on every row.

    Left values are visited from the hardest to satisfy to the easiest
    (descending for ``<``, ascending for ``>``; stable on ties).  Each one
    receives a value drawn uniformly among the still-unused right values
    compatible with it.

    Raises
    ------
    NoSatisfyingPermutationError
        If the existence criterion fails for the pair.
    ConstraintDefectError
        If the final row-wise check fails (never expected).
    """
    left, right = _columns(left, right)
    rel = Relation.parse(relation)
    if rng is None:
        rng = np.random.default_rng()
    slack = criterion_slack(scores(left, right, rel))
    if slack < 0:
        raise NoSatisfyingPermutationError(
            f"no satisfying permutation exists (criterion slack {slack})")

    n = left.size
    if rel is Relation.LESS:
        order = np.argsort(-left, kind="stable")
    else:
        order = np.argsort(left, kind="stable")
    free = np.ones(n, dtype=bool)
    chosen = np.empty(n, dtype=np.int64)
    for a in order:
        # column a of the compatibility matrix, with used rows blocked out
        candidates = np.flatnonzero(rel.holds(left[a], right) & free)
        if candidates.size == 0:
            raise ConstraintDefectError(
                f"greedy permutation dead-ended at left index {a} despite criterion slack {slack}")
        b = candidates[rng.integers(candidates.size)]
        free[b] = False
        chosen[a] = b

    out = right[chosen]
    if int(np.count_nonzero(rel.holds(left, out))) != n:
        raise ConstraintDefectError("permuted column violates the constraint")
    return out


def _gamma_or_none(left: Distribution, right: Distribution, rel: Relation):
    from .diagnostics import gamma

    try:
        return gamma(left, right, rel)
    except ValueError:
        return None


def max_retries_default() -> int:
    """Retry cap, overridable through ``CLHS_MAX_RETRIES``."""
    raw = os.environ.get("CLHS_MAX_RETRIES")
    if raw is None or raw == "":
        return DEFAULT_MAX_RETRIES
    value = int(raw)
    if value < 1:
        raise ValueError(f"CLHS_MAX_RETRIES must be >= 1, got {value}")
    return value


def clhs(spec: DesignSpec, n: int, seed=None, max_retries: int | None = None) -> SampleMatrix:
    """Constrained Latin hypercube sample for a chain of inequality links.

    Columns are drawn as an ordinary LHS (same streams as :func:`lhs`, so
    unlinked columns coincide with it).  For ``j = 2..p``, if column ``j`` is
    linked to column ``j-1`` the existence criterion is tested against the
    already-processed column ``j-1``; on failure column ``j`` is redrawn as
    a fresh LHS column, up to ``max_retries`` times, before it is permuted.

    Raises
    ------
    BoundsError
        When a link's marginal bounds are not ordered; raised before sampling.
    RetryExhaustedError
        When a column never meets the existence criterion.
    """
    n = _check_n(n)
    if max_retries is None:
        max_retries = max_retries_default()
    if max_retries < 1:
        raise ValueError(f"max_retries must be >= 1, got {max_retries}")
    for link in spec.links:
        _require_bounds(spec, link)
    seed = resolve_seed(seed)

    cols = []
    for j, dist in enumerate(spec.variables):
        rng = column_rng(seed, j)
        col = lhs_column(dist, n, rng)
        link = spec.link_into(j)
        if link is not None:
            prev = cols[j - 1]
            slack = criterion_slack(scores(prev, col, link.relation))
            retries = 0
            while slack < 0:
                if retries >= max_retries:
                    g = _gamma_or_none(spec.variables[j - 1], dist, link.relation)
                    raise RetryExhaustedError(
                        f"column {dist.name!r} failed the existence criterion after "
                        f"{max_retries} redraws (last slack {slack}, gamma {g})",
                        column=dist.name, slack=slack, gamma=g)
                col = lhs_column(dist, n, rng)
                slack = criterion_slack(scores(prev, col, link.relation))
                retries += 1
            col = permute_to_satisfy(prev, col, link.relation, rng)
        cols.append(col)
    return SampleMatrix(np.column_stack(cols), spec.names, seed, "clhs")


def _require_bounds(spec: DesignSpec, link: ConstraintLink):
    left, right = spec.variables[link.left], spec.variables[link.right]
    if not bounds_precondition(left, right, link.relation):
        raise BoundsError(f"bounds precondition fails for {left.name} "
                          f"{link.relation.value} {right.name}: supports "
                          f"{left.support()} and {right.support()}")

