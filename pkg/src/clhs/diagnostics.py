"""Constraint intensity, induced correlation and design-quality reports."""
from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .design import BoundsError, DesignSpec, Relation
from .distributions import Distribution
from .sampling import SampleMatrix, verify_lhs

__all__ = [
    "RHO_PER_GAMMA",
    "HEURISTIC_GAMMA_MAX",
    "HeuristicRangeWarning",
    "gamma",
    "predicted_correlation",
    "pearson",
    "ks_statistic",
    "LinkDiagnostics",
    "DiagnosticsReport",
    "report",
]

RHO_PER_GAMMA = 2.778
HEURISTIC_GAMMA_MAX = 0.3


class HeuristicRangeWarning(UserWarning):
    """The linear gamma-to-correlation rule is only stated for gamma <= 0.3."""


def gamma(left: Distribution, right: Distribution, relation=Relation.LESS) -> float:
    """Constraint intensity: forbidden triangle over the bounding rectangle.

    For ``left < right`` on ``[b_l, h_l] x [b_r, h_r]`` this is
    ``(h_l - b_r)^2 / (2 (h_l - b_l)(h_r - b_r))``; the ``>`` case swaps the
    roles of the bounds.  Returns 0 when the supports do not overlap so the
    constraint can never bind.
    """
    rel = Relation.parse(relation)
    if not (left.bounded and right.bounded):
        raise BoundsError("constraint intensity requires bounded marginals")
    bl, hl = left.support()
    br, hr = right.support()
    if rel is Relation.LESS:
        ok = bl <= br and hl <= hr
        overlap = hl - br
    else:
        ok = bl >= br and hl >= hr
        overlap = hr - bl
    if not ok:
        raise BoundsError(f"bounds {left.support()} {rel.value} {right.support()} are not "
                          "ordered with the relation; intensity is undefined")
    if overlap <= 0:
        return 0.0
    return overlap * overlap / (2.0 * (hl - bl) * (hr - br))


def predicted_correlation(g: float, warn: bool = True) -> float:
    """Heuristic linear correlation implied by intensity ``g``."""
    if g < 0:
        raise ValueError(f"intensity must be non-negative, got {g}")
    if warn and g > HEURISTIC_GAMMA_MAX:
        warnings.warn(f"gamma={g:.4g} lies outside [0, {HEURISTIC_GAMMA_MAX}] where the "
                      "linear rule was fitted", HeuristicRangeWarning, stacklevel=2)
    return RHO_PER_GAMMA * g


def pearson(xs, ys) -> float:
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.shape != ys.shape:
        raise ValueError(f"length mismatch: {xs.size} vs {ys.size}")
    if xs.size < 2:
        raise ValueError("correlation needs at least two points")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation undefined for a zero-variance column")
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def ks_statistic(x, dist: Distribution) -> float:
    """One-sample Kolmogorov-Smirnov distance between a column and ``dist``."""
    u = np.sort(np.asarray(dist.cdf(np.asarray(x, dtype=float)), dtype=float))
    n = u.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - u), np.max(u - (i - 1) / n)))


@dataclass
class LinkDiagnostics:
    left: str
    right: str
    relation: str
    gamma: float | None
    predicted_rho: float | None
    empirical_rho: float | None
    satisfied: bool
    note: str = ""


@dataclass
class DiagnosticsReport:
    n: int
    variables: list
    stratified: list
    ks: list
    links: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def report(m: SampleMatrix, spec: DesignSpec) -> DiagnosticsReport:
    """Stratification, KS distance and per-link intensity/correlation for a design."""
    if m.p != spec.p:
        raise ValueError(f"sample has {m.p} columns but spec has {spec.p} variables")
    out = DiagnosticsReport(
        n=m.n,
        variables=spec.names,
        stratified=verify_lhs(m, spec),
        ks=[ks_statistic(m.values[:, j], d) for j, d in enumerate(spec.variables)],
    )
    for link in spec.links:
        left, right = spec.variables[link.left], spec.variables[link.right]
        xl, xr = m.values[:, link.left], m.values[:, link.right]
        note = ""
        g = rho_hat = None
        try:
            g = gamma(left, right, link.relation)
            rho_hat = predicted_correlation(g, warn=False)
            if g > HEURISTIC_GAMMA_MAX:
                note = f"gamma above {HEURISTIC_GAMMA_MAX}: predicted correlation is outside its fitted range"
        except BoundsError as exc:
            note = f"gamma omitted: {exc}"
        try:
            rho = pearson(xl, xr)
        except ValueError as exc:
            rho = None
            note = (note + "; " if note else "") + f"correlation omitted: {exc}"
        out.links.append(LinkDiagnostics(
            left=left.name, right=right.name, relation=link.relation.value,
            gamma=g, predicted_rho=rho_hat, empirical_rho=rho,
            satisfied=bool(np.all(link.relation.holds(xl, xr))), note=note))
    return out
