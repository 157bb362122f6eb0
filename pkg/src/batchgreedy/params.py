"""Shared numeric tolerances and enumeration guards.

Every exhaustive scan in the package is bounded by one of the limits below.
The limits are knobs, not hard constants: callers may raise them to trade
time for confidence.
"""

# Ground sets are encoded as fixed-width bit vectors.
MAX_GROUND_SIZE = 64

# 2^N subset scan limit for polymatroid property checks.
EXHAUSTIVE_CHECK_LIMIT = 12

# Ground-size limit for exhaustive matroid axiom verification.
AXIOM_CHECK_LIMIT = 16

# Maximum number of candidate batches enumerated per greedy stage; shared by
# the exhaustive curvature scan and the rank-bounded brute-force scan.
CANDIDATE_CAP = 5_000_000

# |Y| guard for the lifted-pair augmentation check (Y = all k-subsets).
LIFTED_SUPER_ELEMENT_CAP = 10_000

# Ground-size guard for the full 2^N brute-force scan.
FULL_SCAN_LIMIT = 24

# Absolute tolerance for float comparisons of objective values normalized to
# f(X) = O(1); absorbs log/product arithmetic noise.
VALUE_ATOL = 1e-9

# Relative tie window for greedy batch selection (first encounter wins).
TIE_REL_TOL = 1e-12

# Subsets with marginal gain from the empty set at or below this are excluded
# from the curvature max (floating-point reading of rho_I(empty) != 0).
DENOM_EPS = 1e-12

# Below this curvature the exponential bound switches to its analytic limit.
CURVATURE_ZERO_SWITCH = 1e-8

# Tie window when comparing the harmonic and exponential bounds.
BOUND_TIE_TOL = 1e-12

# Slack applied to ratio-vs-bound verdicts in certificates.
HOLDS_SLACK = 1e-9
