"""Latin hypercube sampling under chains of pairwise inequality constraints."""

from .constraints import (
    DEFAULT_MAX_RETRIES,
    ConstraintDefectError,
    NoSatisfyingPermutationError,
    RetryExhaustedError,
    ScoreVector,
    bounds_precondition,
    clhs,
    compatibility_matrix,
    criterion_slack,
    existence_criterion,
    permute_to_satisfy,
    score_vector,
    scores,
)
from .csrs import EmptyTruncationError, csrs
from .design import BoundsError, ConstraintLink, DesignSpec, Relation, SpecError
from .diagnostics import (
    RHO_PER_GAMMA,
    DiagnosticsReport,
    gamma,
    ks_statistic,
    pearson,
    predicted_correlation,
    report,
)
from .distributions import Distribution, normal, truncated_normal, uniform
from .estimators import ChainPermuter, CLHSSampler, CSRSSampler, LHSSampler, SRSSampler
from .io import (
    CurveTable,
    curve_table,
    interpolate_curve,
    load_design_spec,
    parse_design_spec,
    read_samples,
    serialize_design_spec,
    write_samples,
)
from .oracle import brute_force_exists, count_satisfying_permutations
from .sampling import SampleMatrix, lhs, random_permutation, srs, verify_lhs

__version__ = "0.1.0"
