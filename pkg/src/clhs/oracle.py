"""Brute-force ground truth for small instances.

Enumerates every ordering of the right column.  Kept deliberately naive
so it shares nothing with the score-vector criterion it is used to check.
"""
from __future__ import annotations

from itertools import permutations

MAX_ORACLE_N = 8


def _pairs(left, right, relation):
    left = [float(v) for v in left]
    right = [float(v) for v in right]
    if len(left) != len(right):
        raise ValueError(f"columns differ in length: {len(left)} vs {len(right)}")
    if len(left) > MAX_ORACLE_N:
        raise ValueError(f"oracle refuses n={len(left)} > {MAX_ORACLE_N} (n! enumeration)")
    rel = str(getattr(relation, "value", relation))
    if rel not in ("<", ">"):
        raise ValueError(f"unknown relation {relation!r}")
    return left, right, rel


def _ok(a, b, rel):
    return a < b if rel == "<" else a > b


def _satisfying(left, right, rel):
    for perm in permutations(range(len(right))):
        if all(_ok(a, right[k], rel) for a, k in zip(left, perm)):
            yield perm


def brute_force_exists(left, right, relation="<") -> bool:
    """True if some reordering of ``right`` gives ``left[i] <rel> right[i]`` on every row."""
    left, right, rel = _pairs(left, right, relation)
    return next(_satisfying(left, right, rel), None) is not None


def count_satisfying_permutations(left, right, relation="<") -> int:
    """Number of index permutations of ``right`` that satisfy every row.

    Equal values in ``right`` are counted as distinct positions.
    """
    left, right, rel = _pairs(left, right, relation)
    return sum(1 for _ in _satisfying(left, right, rel))
