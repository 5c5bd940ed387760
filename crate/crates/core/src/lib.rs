//! Exact valuation-theoretic invariants of monomial data.
//!
//! The crate computes (mixed) jumping numbers of monomial ideals and of
//! graded sequences (ideal powers, valuation sequences of monomial
//! valuations, and their enlargements), Tian functions
//! `t ↦ lct(q, t·q'; a_•)` as exact piecewise-linear concave functions,
//! Zhou-valuation certificates for monomial valuations, and the
//! two-dimensional valuative-tree quantities attached to an approximation
//! sequence. An independent multiplier-ideal oracle recomputes jumping
//! numbers by lattice-point search so the ray-enumeration engine can be
//! cross-checked.
//!
//! All algorithms are generic over an exact [`Scalar`]; [`Rational`]
//! (arbitrary precision) is the default instantiation and the one the
//! aliases below use.
//!
//! ```
//! use vallab::{lct_mixed, MonomialIdeal, Rational};
//! use num_traits::Zero;
//!
//! let a = MonomialIdeal::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
//! let q = MonomialIdeal::variable(2, 0);
//! let unit = MonomialIdeal::unit(2);
//! let res = lct_mixed::<Rational>(&q, &Rational::zero(), &unit, &a).unwrap();
//! assert_eq!(res.value.to_string(), "4/3");
//! ```

pub mod error;
pub mod geometry;
pub mod ideal;
pub mod lct;
pub mod oracle;
pub mod scalar;
pub mod tian;
pub mod tree2d;
pub mod valuation;
pub mod zhou;

pub use error::{Error, Result};
pub use geometry::{critical_rays, newton_polyhedron, Facet, NewtonPolyhedron, Ray};
pub use ideal::{ExponentVector, MonomialIdeal};
pub use lct::{
    compute_transfer_check, lambda_lower_bound, lct_mixed, lct_mixed_graded, LctResult, LctValue,
    RayCertificate, TransferReport,
};
pub use oracle::{controlled_growth_check, howald_multiplier, jumping_number_oracle, MultiplierIdealResult};
pub use scalar::Scalar;
pub use tian::{default_test_family, slope_report, tian_function, zhou_criterion, PLConcave, SlopeReport, Verdict};
pub use tree2d::{a_disc_2d, min_zhou_n, relative_value_2d, sigma_profile, zv1_member, ApproxSeq2D, ZhouBound};
pub use valuation::{
    log_discrepancy, truncate, valuation_ideal, value_on_graded, value_on_ideal, GradedSeq, WeightVector,
};
pub use zhou::{
    asymptotic_membership, example_zhou_data, power_sandwich, singularity_compare, val_membership,
    zhou_rescale, Comparison, SandwichReport, ZhouCertificate,
};

/// Arbitrary-precision rationals, the default scalar.
pub type Rational = num_rational::BigRational;

/// Machine-word rationals; fast but may overflow on large inputs.
pub type Rational64 = num_rational::Rational64;

pub type Weights = WeightVector<Rational>;
pub type Sequence = GradedSeq<Rational>;
pub type Lct = LctResult<Rational>;
pub type TianFunction = PLConcave<Rational>;
pub type ApproxSeq = ApproxSeq2D<Rational>;
