//! Computable distance functions on punctured disks and punctured spheres,
//! comparable with the hyperbolic distance by explicit constants, together
//! with the exact kernels and the numerical oracle used to verify the
//! comparisons.
//!
//! The pieces fit together as follows.
//!
//! - [`punctured_disk`] carries the distance `D` on the bordered punctured
//!   disk `0 < |z| <= 1/e`, the exact hyperbolic distance and density of
//!   the punctured unit disk, and the geodesic localisation bounds.
//! - [`modular_cover`] evaluates the covering map `Q` of the punctured
//!   disk onto the twice punctured plane and derives the explicit
//!   constants (the cusp-avoidance factor `K(rho)`, the density constant
//!   `C0`, the comparison constant `M0`).
//! - [`halfplane`] and [`thrice_punctured`] form the oracle: exact
//!   half-plane distance, reduction to the fundamental region of the
//!   level-2 covering group, lifting through the covering, and the orbit
//!   minimisation that produces the true hyperbolic distance of the twice
//!   punctured plane.
//! - [`sphere`] builds the piecewise distances `d_X` and `e_X` on an
//!   n-times punctured sphere and the comparability constants bounding
//!   them against the hyperbolic distance.
//! - [`verify`] runs the seeded property suites behind the command-line
//!   `verify` subcommand and produces machine-readable reports.

pub mod complex;
pub mod elliptic;
pub mod error;
pub mod halfplane;
mod minimize;
pub mod modular_cover;
pub mod punctured_disk;
pub mod special;
pub mod sphere;
pub mod thrice_punctured;
pub mod verify;

pub use complex::{to_annular, AnnularPoint, ComplexPoint};
pub use elliptic::elliptic_k;
pub use error::{MetricError, Result};
pub use halfplane::{
    hyp_dist_halfplane, in_fundamental_domain, reduce_fundamental, GammaTwoElement, HalfPlanePoint,
};
pub use modular_cover::{
    c0, geodesic_avoidance_radius, hempel_density_lower, k_of_rho, mu_of_rho, q_eval,
    q_growth_bounds, q_taylor_coefficients, CoverConstants,
};
pub use punctured_disk::{
    geodesic_annulus, geodesic_delta, hyp_density_punctured_disk, hyp_dist_punctured_disk,
    metric_d, metric_d_prime,
};
pub use sphere::{
    comparability_constants, dist_cstar, dist_dx, dist_ex, metric_dj, normalize,
    segment_circle_crossing, ComparabilityConstants, MoebiusMap, PunctureConfiguration, RegionTag,
};
pub use thrice_punctured::{
    hyp_density_thrice_punctured, hyp_dist_thrice_punctured, lift, trace_geodesic_thrice,
    ThriceDistance,
};
pub use verify::{run_suite, SuiteKind, SuiteOutput, VerificationReport};
