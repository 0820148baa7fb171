"""Unconstrained designs: simple random sampling and Latin hypercube sampling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import DesignSpec
from .distributions import Distribution

__all__ = [
    "SampleMatrix",
    "resolve_seed",
    "column_rng",
    "random_permutation",
    "open_uniform",
    "lhs_column",
    "srs",
    "lhs",
    "verify_lhs",
    "strata",
]


@dataclass(frozen=True)
class SampleMatrix:
    """An ``n x p`` design; row ``i`` is one experiment, column ``j`` one variable."""

    values: np.ndarray
    variable_names: tuple
    seed: int | None = None
    method: str = ""

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim != 2:
            raise ValueError(f"sample values must be 2-D, got shape {values.shape}")
        names = tuple(self.variable_names)
        if len(names) != values.shape[1]:
            raise ValueError(f"{len(names)} names for {values.shape[1]} columns")
        if not np.all(np.isfinite(values)):
            raise ValueError("sample values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "variable_names", names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def column(self, j) -> np.ndarray:
        if isinstance(j, str):
            j = self.variable_names.index(j)
        return self.values[:, j]

    def __eq__(self, other):
        if not isinstance(other, SampleMatrix):
            return NotImplemented
        return (self.variable_names == other.variable_names
                and self.values.shape == other.values.shape
                and np.array_equal(self.values, other.values))

    __hash__ = None


def resolve_seed(seed) -> int:
    """Turn ``None`` into fresh OS entropy; validate explicit seeds as uint64."""
    if seed is None:
        return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def column_rng(seed: int, column: int) -> np.random.Generator:
    """Independent PCG64 stream for one column, keyed on (seed, column)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(column,))))


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random permutation of ``1..n`` (Fisher-Yates via numpy)."""
    if n < 1:
        raise ValueError(f"permutation length must be >= 1, got {n}")
    return rng.permutation(n) + 1


def open_uniform(rng: np.random.Generator, size) -> np.ndarray:
    """Uniform draws on the open interval (0, 1); exact zeros are redrawn."""
    u = rng.random(size)
    zero = u == 0.0
    while zero.any():
        u[zero] = rng.random(int(zero.sum()))
        zero = u == 0.0
    return u


def lhs_column(dist: Distribution, n: int, rng: np.random.Generator) -> np.ndarray:
    """One stratified column: ``F^-1((pi - xi) / n)``."""
    perm = random_permutation(n, rng)
    jitter = open_uniform(rng, n)
    return np.asarray(dist.quantile((perm - jitter) / n), dtype=float)


def _check_n(n):
    if int(n) != n or n < 1:
        raise ValueError(f"sample size must be a positive integer, got {n}")
    return int(n)


def srs(spec: DesignSpec, n: int, seed=None) -> SampleMatrix:
    """Simple random sample: independent draws from every marginal."""
    n = _check_n(n)
    seed = resolve_seed(seed)
    cols = [np.asarray(d.quantile(open_uniform(column_rng(seed, j), n)), dtype=float)
            for j, d in enumerate(spec.variables)]
    return SampleMatrix(np.column_stack(cols), spec.names, seed, "srs")


def lhs(spec: DesignSpec, n: int, seed=None) -> SampleMatrix:
    """Latin hypercube sample with independently permuted columns."""
    n = _check_n(n)
    seed = resolve_seed(seed)
    cols = [lhs_column(d, n, column_rng(seed, j)) for j, d in enumerate(spec.variables)]
    return SampleMatrix(np.column_stack(cols), spec.names, seed, "lhs")


def strata(dist: Distribution, x) -> np.ndarray:
    """1-based equiprobable stratum index of each value of a column."""
    x = np.asarray(x, dtype=float)
    return np.ceil(len(x) * dist.cdf(x)).astype(np.int64)


def verify_lhs(m: SampleMatrix, spec: DesignSpec) -> list[bool]:
    """Per-column check that each of the ``n`` CDF strata holds exactly one point."""
    if m.p != spec.p:
        raise ValueError(f"sample has {m.p} columns but spec has {spec.p} variables")
    n = m.n
    target = np.arange(1, n + 1)
    return [bool(np.array_equal(np.sort(strata(d, m.values[:, j])), target))
            for j, d in enumerate(spec.variables)]
