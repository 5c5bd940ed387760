//! Mixed jumping numbers `lct(q, λ·q'; a_•)` of monomial data.
//!
//! For monomial `q, q'` and a graded sequence whose asymptotic values are
//! minima of linear forms, the infimum over all valuations of
//!
//! ```text
//!     (A(v) + v(q) + λ·v(q')) / v(a_•)
//! ```
//!
//! is attained by a monomial valuation: retracting an arbitrary valuation
//! onto the coordinate simplicial cone keeps the values on monomial ideals
//! and does not increase the log discrepancy. Over the monomial valuations
//! the numerator and denominator are linear on each cone of the common
//! refinement produced by [`critical_rays`], so the ratio is
//! linear-fractional there and its minimum sits on an extreme ray with
//! positive denominator (provided the numerator is positive on every
//! candidate ray, which is what the `λ < 0` guard enforces).

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{check_dim_cap, critical_rays, ideal_forms, Ray};
use crate::ideal::MonomialIdeal;
use crate::valuation::{log_discrepancy, value_on_graded, value_on_ideal, GradedSeq, WeightVector};
use crate::scalar::Scalar;

/// A jumping number; `Infinity` for the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LctValue<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> LctValue<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            LctValue::Finite(v) => Some(v),
            LctValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LctValue::Infinity)
    }
}

impl<S: Scalar> PartialOrd for LctValue<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for LctValue<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (LctValue::Finite(a), LctValue::Finite(b)) => a.cmp(b),
            (LctValue::Finite(_), LctValue::Infinity) => Less,
            (LctValue::Infinity, LctValue::Finite(_)) => Greater,
            (LctValue::Infinity, LctValue::Infinity) => Equal,
        }
    }
}

impl<S: Scalar> fmt::Display for LctValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LctValue::Finite(v) => write!(f, "{v}"),
            LctValue::Infinity => write!(f, "infinity"),
        }
    }
}

/// Values of the monomial valuation `val_gamma` entering the ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayCertificate<S> {
    pub ray: Ray,
    /// `A(gamma) = sum gamma_i`.
    pub log_discrepancy: S,
    pub value_q: S,
    pub value_qprime: S,
    /// `v_gamma(a_•)`; rays with zero value are not candidates.
    pub value_seq: S,
}

impl<S: Scalar> RayCertificate<S> {
    pub fn numerator(&self, lambda: &S) -> S {
        self.log_discrepancy.clone() + self.value_q.clone() + lambda.clone() * self.value_qprime.clone()
    }

    /// `None` when the denominator vanishes.
    pub fn ratio(&self, lambda: &S) -> Option<S> {
        if self.value_seq.is_positive() {
            Some(self.numerator(lambda) / self.value_seq.clone())
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LctResult<S> {
    pub value: LctValue<S>,
    pub lambda: S,
    /// Candidate rays attaining the minimum, in canonical ray order.
    pub minimizing_rays: Vec<Ray>,
    /// One certificate per critical ray (including rays with zero denominator).
    pub certificates: Vec<RayCertificate<S>>,
    /// Exclusive lower bound on admissible `λ`; `None` means unbounded below.
    pub lambda_bound: Option<S>,
}

impl<S: Scalar> LctResult<S> {
    pub fn certificate(&self, ray: &Ray) -> Option<&RayCertificate<S>> {
        self.certificates.iter().find(|c| &c.ray == ray)
    }
}

fn check_inputs<S: Scalar>(q: &MonomialIdeal, qprime: &MonomialIdeal, seq: &GradedSeq<S>) -> Result<usize> {
    let dim = seq.dim();
    q.ensure_nonzero()?;
    qprime.ensure_nonzero()?;
    q.ensure_dim(dim)?;
    qprime.ensure_dim(dim)?;
    check_dim_cap(dim)?;
    Ok(dim)
}

/// Certificates at every critical ray of the joint refinement for
/// `(seq, q, q')`.
pub(crate) fn ray_certificates<S: Scalar>(
    q: &MonomialIdeal,
    qprime: &MonomialIdeal,
    seq: &GradedSeq<S>,
) -> Result<Vec<RayCertificate<S>>> {
    let dim = check_inputs(q, qprime, seq)?;
    let families = vec![seq.linear_forms(), ideal_forms::<S>(q), ideal_forms::<S>(qprime)];
    let rays = critical_rays(&families, dim)?;
    rays.into_iter()
        .map(|ray| {
            let gamma = WeightVector::from_ray(&ray);
            Ok(RayCertificate {
                log_discrepancy: log_discrepancy(&gamma),
                value_q: value_on_ideal(&gamma, q)?,
                value_qprime: value_on_ideal(&gamma, qprime)?,
                value_seq: value_on_graded(&gamma, seq)?,
                ray,
            })
        })
        .collect()
}

/// `-ε₀`: the exact infimum of admissible `λ`, i.e. the largest value at
/// which the numerator `A + v(q) + λ·v(q')` vanishes on some candidate ray.
pub(crate) fn bound_from_certificates<S: Scalar>(certs: &[RayCertificate<S>]) -> Option<S> {
    certs
        .iter()
        .filter(|c| c.value_qprime.is_positive())
        .map(|c| -(c.log_discrepancy.clone() + c.value_q.clone()) / c.value_qprime.clone())
        .max()
}

/// Exclusive lower bound on `λ` for `lct(q, λ·q'; a_•)`; `None` if every
/// `λ` is admissible (that is, `q'` is the unit ideal).
pub fn lambda_lower_bound<S: Scalar>(
    q: &MonomialIdeal,
    qprime: &MonomialIdeal,
    seq: &GradedSeq<S>,
) -> Result<Option<S>> {
    Ok(bound_from_certificates(&ray_certificates(q, qprime, seq)?))
}

/// Mixed jumping number of a graded sequence.
pub fn lct_mixed_graded<S: Scalar>(
    q: &MonomialIdeal,
    lambda: &S,
    qprime: &MonomialIdeal,
    seq: &GradedSeq<S>,
) -> Result<LctResult<S>> {
    let certificates = ray_certificates(q, qprime, seq)?;
    let lambda_bound = bound_from_certificates(&certificates);
    if lambda.is_negative() {
        if let Some(bad) = certificates.iter().find(|c| !c.numerator(lambda).is_positive()) {
            return Err(Error::NegativityViolation {
                ray: bad.ray.clone(),
                numerator: bad.numerator(lambda).to_string(),
                bound: lambda_bound
                    .as_ref()
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "-infinity".into()),
            });
        }
    }
    let best = certificates.iter().filter_map(|c| c.ratio(lambda)).min();
    let (value, minimizing_rays) = match best {
        None => (LctValue::Infinity, Vec::new()),
        Some(min) => {
            let rays = certificates
                .iter()
                .filter(|c| c.ratio(lambda).as_ref() == Some(&min))
                .map(|c| c.ray.clone())
                .collect();
            (LctValue::Finite(min), rays)
        }
    };
    Ok(LctResult {
        value,
        lambda: lambda.clone(),
        minimizing_rays,
        certificates,
        lambda_bound,
    })
}

/// Mixed jumping number `lct(q, λ·q'; a)` of a single monomial ideal.
pub fn lct_mixed<S: Scalar>(
    q: &MonomialIdeal,
    lambda: &S,
    qprime: &MonomialIdeal,
    a: &MonomialIdeal,
) -> Result<LctResult<S>> {
    lct_mixed_graded(q, lambda, qprime, &GradedSeq::powers(a.clone())?)
}

/// Both sides of `lct(q, λ·q'; a_•^v) = v(a_•) · lct(q, λ·q'; a_•)` for a
/// monomial valuation `v` computing the right-hand jumping number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport<S> {
    /// `lct(q, λ·q'; a_•^v)`.
    pub lhs: S,
    /// `v(a_•) · lct(q, λ·q'; a_•)`.
    pub rhs: S,
    pub value_on_seq: S,
    pub lct_of_seq: S,
}

impl<S: Scalar> TransferReport<S> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn compute_transfer_check<S: Scalar>(
    alpha: &WeightVector<S>,
    q: &MonomialIdeal,
    lambda: &S,
    qprime: &MonomialIdeal,
    seq: &GradedSeq<S>,
) -> Result<TransferReport<S>> {
    let base = lct_mixed_graded(q, lambda, qprime, seq)?;
    let lct_of_seq = base.value.finite().cloned().ok_or(Error::InfiniteLct)?;
    let value_on_seq = value_on_graded(alpha, seq)?;
    let numerator = log_discrepancy(alpha) + value_on_ideal(alpha, q)? + lambda.clone() * value_on_ideal(alpha, qprime)?;
    if !value_on_seq.is_positive() || numerator.clone() / value_on_seq.clone() != lct_of_seq {
        return Err(Error::NotAMinimizer {
            ratio: if value_on_seq.is_positive() {
                (numerator / value_on_seq.clone()).to_string()
            } else {
                "infinity".into()
            },
            minimum: lct_of_seq.to_string(),
        });
    }
    let own = lct_mixed_graded(q, lambda, qprime, &GradedSeq::ValSeq(alpha.clone()))?;
    let lhs = own.value.finite().cloned().ok_or(Error::InfiniteLct)?;
    Ok(TransferReport {
        lhs,
        rhs: value_on_seq.clone() * lct_of_seq.clone(),
        value_on_seq,
        lct_of_seq,
    })
}
