"""scikit-learn style front-ends.

Samplers follow the estimator conventions (constructor stores
hyper-parameters only, ``fit`` validates and stores ``spec_``,
``get_params``/``set_params``/``clone`` work), and :class:`ChainPermuter`
is a transformer that enforces a constraint chain on an existing design
by reordering its columns.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .constraints import (
    NoSatisfyingPermutationError,
    clhs,
    criterion_slack,
    permute_to_satisfy,
    scores,
)
from .csrs import csrs
from .design import DesignSpec, Relation
from .sampling import lhs, resolve_seed, srs

__all__ = [
    "SRSSampler",
    "LHSSampler",
    "CSRSSampler",
    "CLHSSampler",
    "ChainPermuter",
]


class _BaseSampler(BaseEstimator):
    _method = None

    def __init__(self, n_samples=100, random_state=None):
        self.n_samples = n_samples
        self.random_state = random_state

    def fit(self, spec, y=None):
        """Validate and store the design spec."""
        if not isinstance(spec, DesignSpec):
            raise TypeError(f"expected a DesignSpec, got {type(spec).__name__}")
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ValueError(f"n_samples must be a positive integer, got {self.n_samples}")
        self.spec_ = spec
        self.n_features_out_ = spec.p
        self.feature_names_out_ = np.asarray(spec.names, dtype=object)
        return self

    def _draw(self, seed):
        return type(self)._method(self.spec_, int(self.n_samples), seed)

    def sample(self, random_state="default"):
        """Draw a design as a :class:`~clhs.sampling.SampleMatrix`.

        ``random_state`` overrides the constructor's seed for this call.
        """
        check_is_fitted(self, "spec_")
        seed = self.random_state if random_state == "default" else random_state
        return self._draw(resolve_seed(seed))

    def fit_sample(self, spec, y=None):
        return self.fit(spec).sample()

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "spec_")
        return self.feature_names_out_


class SRSSampler(_BaseSampler):
    """Independent draws from every marginal."""

    _method = staticmethod(srs)


class LHSSampler(_BaseSampler):
    """Latin hypercube sample, columns independently permuted."""

    _method = staticmethod(lhs)


class CSRSSampler(_BaseSampler):
    """Sequential truncated sampling; constraints hold but marginals drift."""

    _method = staticmethod(csrs)


class CLHSSampler(_BaseSampler):
    """Constrained LHS.

    Parameters
    ----------
    n_samples : int
    max_retries : int or None
        Redraws allowed per linked column before giving up.  ``None`` uses
        ``$CLHS_MAX_RETRIES`` or 10000.
    random_state : int or None
    """

    def __init__(self, n_samples=100, max_retries=None, random_state=None):
        super().__init__(n_samples=n_samples, random_state=random_state)
        self.max_retries = max_retries

    def _draw(self, seed):
        return clhs(self.spec_, int(self.n_samples), seed, self.max_retries)


class ChainPermuter(TransformerMixin, BaseEstimator):
    """Reorder columns ``2..p`` of a design so a chain of relations holds row-wise.

    Each column is permuted within itself, so any per-column
    stratification of the input survives.  The first column is never
    touched.

    Parameters
    ----------
    relations : sequence of {"<", ">", None} or str
        One entry per consecutive column pair; ``None`` leaves the pair
        unconstrained.  A single string applies to every pair.
    random_state : int or None
    """

    def __init__(self, relations="<", random_state=None):
        self.relations = relations
        self.random_state = random_state

    def _relations(self, p):
        rel = self.relations
        if isinstance(rel, (str, Relation)):
            return [Relation.parse(rel)] * (p - 1)
        rel = list(rel)
        if len(rel) != p - 1:
            raise ValueError(f"{len(rel)} relations for {p} columns; expected {p - 1}")
        return [None if r is None else Relation.parse(r) for r in rel]

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_min_samples=1)
        self.n_features_in_ = X.shape[1]
        self.relations_ = self._relations(X.shape[1])
        return self

    def transform(self, X):
        """Return a constrained copy of ``X``.

        Raises
        ------
        NoSatisfyingPermutationError
            If some column admits no satisfying order against its
            (already permuted) left neighbour.
        """
        check_is_fitted(self, "relations_")
        X = check_array(X, dtype=np.float64, ensure_min_samples=1, copy=True)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        rng = np.random.default_rng(self.random_state)
        for j, rel in enumerate(self.relations_, start=1):
            if rel is None:
                continue
            slack = criterion_slack(scores(X[:, j - 1], X[:, j], rel))
            if slack < 0:
                raise NoSatisfyingPermutationError(
                    f"column {j + 1} cannot be ordered {rel.value} column {j} "
                    f"(criterion slack {slack})")
            X[:, j] = permute_to_satisfy(X[:, j - 1], X[:, j], rel, rng)
        return X
