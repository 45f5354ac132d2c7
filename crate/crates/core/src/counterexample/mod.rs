//! A weighted atom space with tent-shaped sequences whose jump counts are exactly computable,
//! used to witness that jump and variation bounds do not follow from oscillation bounds.

pub mod dyadic;
pub mod identities;
pub mod separation;
pub mod tent;

pub use dyadic::DyadicRational;
pub use tent::{block_profile, evaluate_f, for_each_profile, random_partition, BlockProfile, CounterexampleSpace, Partition, TentFamilySpec};
pub use identities::{
    exact_jump_table, identity_report, measure_bound_check, measure_bounds, moment_bound_check, moment_majorant, predicted_jump_count,
    IdentityReport, MeasureBound, MomentBound,
};
pub use separation::{
    calibrate_dyadic_decomposition, dyadic_decomposition_pairs, left_side_formula, left_side_l, lepingle_counterexample, oscillation_norms,
    partition_families, ratio_growth, right_side_estimates, right_side_r_estimate, separation_experiment, FamilyKind, JumpVersusVariation,
    LevelJumpTable, MRule, NamedPartition, RightSide, SeparationCase, SeparationRow,
};
