from fractions import Fraction
import math

import numpy as np
import pytest
from scipy import integrate, stats

from clhs import ConstraintLink, DesignSpec, Relation, csrs, load_design_spec, truncated_normal, uniform
from clhs.csrs import EmptyTruncationError
from clhs.diagnostics import ks_statistic, pearson


def analytic_rho_fig3a():
    """X1 ~ U[0,1], X2 | X1 ~ U(X1, 2): correlation from conditional moments."""
    var1 = Fraction(1, 12)
    # E[X2 | X1] = (X1 + 2) / 2, Var[X2 | X1] = (2 - X1)^2 / 12
    cov = var1 / 2
    e_sq = Fraction(4) - 4 * Fraction(1, 2) + Fraction(1, 3)  # E[(2 - X1)^2]
    var2 = var1 / 4 + e_sq / 12
    assert var2 == Fraction(31, 144)
    return float(cov) / math.sqrt(float(var1) * float(var2))


def test_analytic_value():
    assert analytic_rho_fig3a() == pytest.approx(0.3111, abs=5e-5)


def test_csrs_correlation(fig3a):
    m = csrs(fig3a, 100_000, seed=17)
    assert pearson(m.values[:, 0], m.values[:, 1]) == pytest.approx(analytic_rho_fig3a(), abs=0.01)


def test_csrs_rows_satisfied_and_first_column_exact(fig3a):
    n = 10_000
    m = csrs(fig3a, n, seed=18)
    assert np.all(m.values[:, 0] < m.values[:, 1])
    assert ks_statistic(m.values[:, 0], uniform(0, 1)) <= 1.63 / math.sqrt(n)


def test_csrs_distorts_second_marginal(fig3a):
    m = csrs(fig3a, 10_000, seed=19)
    assert stats.kstest(m.values[:, 1], stats.uniform(0, 2).cdf).pvalue < 0.01


def test_inactive_truncation():
    spec = DesignSpec.chain([uniform(0, 1e-6), uniform(1, 2)])
    m = csrs(spec, 10_000, seed=20)
    assert stats.kstest(m.values[:, 1], stats.uniform(1, 1).cdf).pvalue > 0.01


def test_conditional_density_chi_square():
    # Given x1, column 2 should follow the right marginal restricted to (x1, 3);
    # mapping each y through that conditional CDF (scipy's) must give U(0, 1).
    right = truncated_normal(1.0, 1.0, 0.0, 3.0, "y")
    spec = DesignSpec.chain([uniform(0.0, 2.0, "x"), right])
    n = 20_000
    m = csrs(spec, n, seed=21)
    x, y = m.values[:, 0], m.values[:, 1]
    ref = stats.truncnorm(-1.0, 2.0, loc=1.0, scale=1.0)
    v = (ref.cdf(y) - ref.cdf(x)) / (1.0 - ref.cdf(x))
    observed, _ = np.histogram(v, np.linspace(0, 1, 21))
    assert observed.sum() == n
    assert stats.chisquare(observed).pvalue > 0.01


def test_marginal_density_of_second_column():
    # X2 density under X2 | X1 ~ U(X1, 2): f(y) = ln(2 / (2 - min(y, 1))) / 2 ... integrated per bin
    spec = DesignSpec.chain([uniform(0, 1), uniform(0, 2)])
    n = 50_000
    y = csrs(spec, n, seed=22).values[:, 1]

    def density(t):
        return integrate.quad(lambda x: 1.0 / (2.0 - x), 0.0, min(t, 1.0))[0]

    edges = np.linspace(0, 2, 21)
    probs = np.array([integrate.quad(density, a, b)[0] for a, b in zip(edges[:-1], edges[1:])])
    assert probs.sum() == pytest.approx(1.0, abs=1e-9)
    observed, _ = np.histogram(y, edges)
    assert stats.chisquare(observed, probs * n).pvalue > 0.01


def test_decreasing_chain(data_dir):
    spec = load_design_spec(data_dir / "welding_young_modulus.json")
    m = csrs(spec, 500, seed=23)
    assert np.all(np.diff(m.values, axis=1) < 0)


def test_deterministic(fig3a):
    assert csrs(fig3a, 100, seed=5) == csrs(fig3a, 100, seed=5)


def test_empty_truncation_reported():
    spec = DesignSpec.chain([uniform(0, 1, "a"), uniform(0, 2, "b")])
    # bypass load-time validation to exercise the defensive check
    bad = object.__new__(DesignSpec)
    object.__setattr__(bad, "variables", (uniform(0, 1, "a"), uniform(-1, 0.5, "b")))
    object.__setattr__(bad, "links", (ConstraintLink(0, 1, Relation.LESS),))
    object.__setattr__(bad, "metadata", {})
    with pytest.raises(EmptyTruncationError, match="row"):
        csrs(bad, 200, seed=1)
    assert csrs(spec, 5, seed=1).n == 5
