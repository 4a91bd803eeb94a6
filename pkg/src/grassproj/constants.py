"""Single source of truth for numerical tolerances and named test bands.

Every residual threshold used by type validators, and every tolerance band
asserted by the experiment pass/fail flags, lives here so that tests and
library code cannot drift apart.
"""

# Residuals for exact linear-algebra identities (orthonormality, idempotency,
# containment). These are float64 round-off budgets, not model tolerances.
FRAME_ORTHO_TOL = 1e-12
PROJ_IDEMPOTENT_TOL = 1e-10
OFFSET_ORTHO_TOL = 1e-12
CHART_ROUNDTRIP_TOL = 1e-10
CONTAINMENT_TOL = 1e-10
METRIC_AXIOM_TOL = 1e-9
PLANCHEREL_RTOL = 1e-10
SPLIT_ADDITIVE_TOL = 1e-12

# Angle below which a line direction is treated as lying inside V-perp
# (projection collapses to a point).
DEGENERATE_ANGLE_TOL = 1e-10

# Chart validity for local lines: angle to the x_n axis.
CHART_MAX_ANGLE = 1e-1
# Offsets of local planes stay inside this ball.
OFFSET_MAX_NORM = 0.5

# Deterministic ball sampling density for the sup-style plane distance:
# 1000 * k points per k-dimensional unit ball.
BALL_SAMPLES_PER_DIM = 1000

# Dilation constant identifying comparable slabs.
SLAB_COMPARABLE_C = 4.0
# A line's delta-tube counts as inside a slab when core distance stays below
# this fraction of the slab thickness.
LINE_IN_SLAB_SLACK = 0.5

# Named tolerance bands referenced by experiment pass/fail flags.
NAMED_TOLERANCES = {
    # box_dimension calibration bands (slope targets and half-widths)
    "segment_dim": (1.0, 0.10),
    "square_dim": (2.0, 0.15),
    "cantor_dim": (0.6309297535714574, 0.05),
    # construction dimension bands
    "bush_source_dim": (2.0, 0.2),
    "bush_projected_band": (0.8, 1.25),
    "bush_projected_p95": 1.6,
    "product_source_band": (2.4, 2.9),
    "product_projected_band": (1.38, 1.88),
    # metric comparability
    "rho_comparability_C": 10.0,
    # incidence slope slack over t + s
    "incidence_slope_slack": 0.3,
    # dim(M) bands per (n, k)
    "dim_M_3_2": (1.0, 0.3),
    "dim_M_4_2": (3.0, 0.4),
    # exceptional-set slack over min(kaufman, falconer)
    "exceptional_dim_slack": 0.4,
    # guard band subtracted from s before a plane counts as exceptional
    "exceptional_guard_band": 0.15,
    # falconer experiment slope slack
    "falconer_slope_slack": 0.4,
    # high-low checks
    "dual_mass_fraction": 0.99,
    "bump_transform_C": 4.0,
    "dominance_fraction": 0.90,
    "overlap_delta_stability": 2.0,
}
