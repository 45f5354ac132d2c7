//! Exponential sums: reduced fractions, complete sums modulo `q`, Weyl sums over dilated bodies,
//! the continuous symbol and the major-arc comparison between them.

pub mod fraction;
pub mod gauss;
pub mod quadrature;
pub mod symbol;
pub mod weyl;

pub use fraction::{e, fraction_set, jordan_totient, FractionSet, FractionSetReport, Frequency, RationalFraction};
pub use gauss::{gauss_decay_study, gauss_sum, DenominatorFilter, GaussDecay};
pub use quadrature::{integrate, integrate_body, Estimate};
pub use symbol::{calibrate_phi_bounds, continuous_symbol, dilate_frequency, phi_bound_pairs, PhiBoundPairs, dilated_size, major_arc_residual, CosineTerm, Kernel, MajorArcTerms};
pub use weyl::{calibrate_weyl, convergents, exponential_sum, weyl_sum, weyl_terms, WeylCalibration, WeylTerms};
