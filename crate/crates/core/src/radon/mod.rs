//! Lattice points of dilated convex bodies and discrete polynomial Radon averages.

pub mod average;
pub mod body;
pub mod canonical;

pub use average::{
    lift_check, radon_average, radon_oscillation_ratio, short_variation_kernel_bound, KernelBound, LatticeFunction, LiftCheck,
};
pub use body::{boundary_lattice_count, davenport_gap, lattice_points, BodyKind, ConvexBody, Volume};
pub use canonical::{canonical_image, lift_polynomial, CanonicalExponentSet, Lift, PolynomialMapping};
