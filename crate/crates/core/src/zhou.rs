//! Zhou-valuation certificates for monomial valuations, membership in
//! `Val(X; q)`, the singularity order on monomial ideals, and the
//! approximation sandwich.

use crate::error::{Error, Result};
use crate::geometry::{critical_rays, ideal_forms, Ray};
use crate::ideal::MonomialIdeal;
use crate::lct::{lct_mixed, lct_mixed_graded, LctValue};
use crate::oracle::howald_multiplier;
use crate::scalar::Scalar;
use crate::valuation::{log_discrepancy, value_on_ideal, GradedSeq, WeightVector};

/// Evidence that a rescaled monomial valuation is a Zhou valuation related
/// to `q`: it computes its own jumping number `1` and no non-proportional
/// ray does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhouCertificate<S> {
    pub original: WeightVector<S>,
    /// `c = A(alpha) + v_alpha(q)`.
    pub scale: S,
    pub normalized: WeightVector<S>,
    /// Recomputed `lct^q(a_•^{v/c})`; always 1 in a certificate.
    pub lct_check: S,
    /// `(A(v/c), 1 - v_{v/c}(q))`, equal in a certificate.
    pub discrepancy_identity: (S, S),
    /// Minimizing rays not proportional to the normalized weights; empty.
    pub minimizer_uniqueness: Vec<Ray>,
}

/// Rescales `val_alpha` so that `lct^q` of its valuation sequence is 1 and
/// certifies it through the unique-minimizer criterion.
///
/// A [`Error::NonUniqueMinimizer`] is a refusal to certify, not a proof that
/// the valuation is not Zhou.
pub fn zhou_rescale<S: Scalar>(alpha: &WeightVector<S>, q: &MonomialIdeal) -> Result<ZhouCertificate<S>> {
    q.ensure_nonzero()?;
    q.ensure_dim(alpha.dim())?;
    let scale = log_discrepancy(alpha) + value_on_ideal(alpha, q)?;
    let normalized = alpha.scaled_down(&scale)?;
    let unit = MonomialIdeal::unit(alpha.dim());
    let res = lct_mixed_graded(q, &S::zero(), &unit, &GradedSeq::ValSeq(normalized.clone()))?;
    let lct_check = res.value.finite().cloned().ok_or(Error::InfiniteLct)?;
    if !lct_check.is_one() {
        return Err(Error::CrossCheck(format!(
            "rescaled valuation has jumping number {lct_check}, expected 1"
        )));
    }
    let others: Vec<Ray> = res
        .minimizing_rays
        .iter()
        .filter(|r| !r.is_proportional_to(normalized.entries()))
        .cloned()
        .collect();
    if !others.is_empty() {
        return Err(Error::NonUniqueMinimizer { rays: others });
    }
    let a = log_discrepancy(&normalized);
    let rhs = S::one() - value_on_ideal(&normalized, q)?;
    if a != rhs {
        return Err(Error::CrossCheck(format!("A = {a} but 1 - v(q) = {rhs}")));
    }
    Ok(ZhouCertificate {
        original: alpha.clone(),
        scale,
        normalized,
        lct_check,
        discrepancy_identity: (a, rhs),
        minimizer_uniqueness: others,
    })
}

/// Whether `val_alpha` lies in `Val(X; q)`, i.e. `lct^q(a_•^v) <= 1`.
pub fn val_membership<S: Scalar>(alpha: &WeightVector<S>, q: &MonomialIdeal) -> Result<bool> {
    let unit = MonomialIdeal::unit(alpha.dim());
    let res = lct_mixed_graded(q, &S::zero(), &unit, &GradedSeq::ValSeq(alpha.clone()))?;
    Ok(res.value <= LctValue::Finite(S::one()))
}

/// `q = (z_1^{k_1-1} ⋯ z_n^{k_n-1})` for weights with `sum alpha_i k_i = 1`;
/// `val_alpha` is then a Zhou valuation related to `q` with scale 1.
pub fn example_zhou_data<S: Scalar>(alpha: &WeightVector<S>, k: &[u32]) -> Result<MonomialIdeal> {
    if k.len() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            found: k.len(),
        });
    }
    if let Some(i) = k.iter().position(|&ki| ki == 0) {
        return Err(Error::Domain(format!("k_{} must be positive", i + 1)));
    }
    let sum = alpha
        .entries()
        .iter()
        .zip(k)
        .fold(S::zero(), |acc, (a, &ki)| acc + a.clone() * S::from_int(ki as i64));
    if !sum.is_one() {
        return Err(Error::Normalization { sum: sum.to_string() });
    }
    let q = MonomialIdeal::principal(k.iter().map(|&ki| ki - 1).collect());
    let cert = zhou_rescale(alpha, &q)?;
    if !cert.scale.is_one() {
        return Err(Error::CrossCheck(format!("expected scale 1, got {}", cert.scale)));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// `Newt(a) ⊆ Newt(a')` strictly: `a` is more singular.
    MoreSingular,
    LessSingular,
    Equal,
    Incomparable,
}

impl Order {
    pub fn as_str(&self) -> &'static str {
        match self {
            Order::MoreSingular => "MORE_SINGULAR",
            Order::LessSingular => "LESS_SINGULAR",
            Order::Equal => "EQUAL",
            Order::Incomparable => "INCOMPARABLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub order: Order,
    /// For a strict comparison, a ray separating the two; for incomparable
    /// ideals, one ray in each direction (`v(a) > v(a')` first).
    pub witnesses: Vec<Ray>,
}

/// Compares the singularities of the power sequences of `a` and `a'` by
/// evaluating `v_gamma(a) - v_gamma(a')` on the critical rays of both ideals.
pub fn singularity_compare(a: &MonomialIdeal, aprime: &MonomialIdeal) -> Result<Comparison> {
    a.ensure_nonzero()?;
    aprime.ensure_nonzero()?;
    aprime.ensure_dim(a.dim())?;
    let fa = ideal_forms::<crate::Rational>(a);
    let fb = ideal_forms::<crate::Rational>(aprime);
    let rays = critical_rays(&[fa, fb], a.dim())?;
    let mut above = None;
    let mut below = None;
    for ray in rays {
        let gamma = WeightVector::<crate::Rational>::from_ray(&ray);
        let va = value_on_ideal(&gamma, a)?;
        let vb = value_on_ideal(&gamma, aprime)?;
        if va > vb && above.is_none() {
            above = Some(ray);
        } else if va < vb && below.is_none() {
            below = Some(ray);
        }
    }
    Ok(match (above, below) {
        (None, None) => Comparison {
            order: Order::Equal,
            witnesses: vec![],
        },
        (Some(r), None) => Comparison {
            order: Order::MoreSingular,
            witnesses: vec![r],
        },
        (None, Some(r)) => Comparison {
            order: Order::LessSingular,
            witnesses: vec![r],
        },
        (Some(r), Some(s)) => Comparison {
            order: Order::Incomparable,
            witnesses: vec![r, s],
        },
    })
}

/// Whether `q ⊆ J(λ·a)`, i.e. `lct^q(a) > λ`. The engine answer is checked
/// against the lattice-point multiplier ideal; disagreement is reported as
/// [`Error::CrossCheck`].
pub fn asymptotic_membership<S: Scalar>(q: &MonomialIdeal, lambda: &S, a: &MonomialIdeal) -> Result<bool> {
    if !lambda.is_positive() {
        return Err(Error::Domain(format!("lambda = {lambda} must be positive")));
    }
    let unit = MonomialIdeal::unit(a.dim());
    let engine = lct_mixed(q, &S::zero(), &unit, a)?.value > LctValue::Finite(lambda.clone());
    let oracle = q.is_subset_of(&howald_multiplier(a, lambda)?.ideal);
    if engine != oracle {
        return Err(Error::CrossCheck(format!(
            "engine says {engine}, multiplier ideal says {oracle} for q = ({q}), lambda = {lambda}, a = ({a})"
        )));
    }
    Ok(engine)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport<S> {
    pub k: u32,
    /// `γ(k) = lct^{q^k}(a_•^v)`.
    pub gamma: S,
    /// `v(q)`.
    pub lower: S,
    /// `γ(k)/k`.
    pub middle: S,
    /// `v(q) + A(v)/k`.
    pub upper: S,
}

impl<S: Scalar> SandwichReport<S> {
    pub fn holds(&self) -> bool {
        self.lower <= self.middle && self.middle <= self.upper
    }

    pub fn upper_is_tight(&self) -> bool {
        self.middle == self.upper
    }
}

/// `v(q) <= lct^{q^k}(a_•^v)/k <= v(q) + A(v)/k` for `v = val_alpha`.
pub fn power_sandwich<S: Scalar>(alpha: &WeightVector<S>, q: &MonomialIdeal, k: u32) -> Result<SandwichReport<S>> {
    q.ensure_nonzero()?;
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let qk = q.pow(k);
    let unit = MonomialIdeal::unit(alpha.dim());
    let res = lct_mixed_graded(&qk, &S::zero(), &unit, &GradedSeq::ValSeq(alpha.clone()))?;
    let gamma = res.value.finite().cloned().ok_or(Error::InfiniteLct)?;
    let kk = S::from_int(k as i64);
    let lower = value_on_ideal(alpha, q)?;
    let upper = lower.clone() + log_discrepancy(alpha) / kk.clone();
    Ok(SandwichReport {
        k,
        middle: gamma.clone() / kk,
        gamma,
        lower,
        upper,
    })
}
