//! Monomial valuations, graded sequences, and their values.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{dot, ideal_forms, Ray};
use crate::ideal::{minimal_antichain, ExponentVector, MonomialIdeal};
use crate::scalar::Scalar;

/// Weight vector `alpha` of the monomial valuation
/// `val_alpha(sum c_beta x^beta) = min { <alpha, beta> : c_beta != 0 }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector<S> {
    alpha: Vec<S>,
}

impl<S: Scalar> WeightVector<S> {
    pub fn new(alpha: Vec<S>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidWeight("empty weight vector".into()));
        }
        if let Some(neg) = alpha.iter().find(|a| a.is_negative()) {
            return Err(Error::InvalidWeight(format!("negative entry {neg}")));
        }
        if alpha.iter().all(|a| a.is_zero()) {
            return Err(Error::InvalidWeight("all entries are zero".into()));
        }
        Ok(WeightVector { alpha })
    }

    pub fn from_ray(ray: &Ray) -> Self {
        WeightVector {
            alpha: ray.to_scalars(),
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn entries(&self) -> &[S] {
        &self.alpha
    }

    /// Indices with positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.alpha.len()).filter(|&i| self.alpha[i].is_positive()).collect()
    }

    pub fn ray(&self) -> Ray {
        Ray::from_scalars(&self.alpha).expect("nonzero nonnegative weights")
    }

    /// `alpha / c` for positive `c`.
    pub fn scaled_down(&self, c: &S) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Domain(format!("rescaling factor {c} is not positive")));
        }
        Ok(WeightVector {
            alpha: self.alpha.iter().map(|a| a.clone() / c.clone()).collect(),
        })
    }

    pub fn ensure_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        } else {
            Ok(())
        }
    }
}

impl<S: Scalar> fmt::Display for WeightVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `val_alpha(a) = min_beta <alpha, beta>` over the generators of `a`.
pub fn value_on_ideal<S: Scalar>(alpha: &WeightVector<S>, ideal: &MonomialIdeal) -> Result<S> {
    ideal.ensure_nonzero()?;
    ideal.ensure_dim(alpha.dim())?;
    Ok(min_form_value(&ideal_forms::<S>(ideal), alpha.entries()))
}

pub(crate) fn min_form_value<S: Scalar>(forms: &[Vec<S>], gamma: &[S]) -> S {
    forms
        .iter()
        .map(|f| dot(f, gamma))
        .min()
        .expect("nonempty family")
}

/// Log discrepancy `A(val_alpha) = sum_i alpha_i` at a smooth point.
pub fn log_discrepancy<S: Scalar>(alpha: &WeightVector<S>) -> S {
    alpha.entries().iter().fold(S::zero(), |acc, a| acc + a.clone())
}

/// Minimal generators of the valuation ideal `{x^beta : <alpha, beta> >= m}`.
///
/// Coordinates with zero weight never help reach the threshold, so the
/// generators are supported on the positive coordinates of `alpha`.
pub fn valuation_ideal<S: Scalar>(alpha: &WeightVector<S>, m: &S) -> Result<MonomialIdeal> {
    if !m.is_positive() {
        return Err(Error::Domain(format!("valuation ideal level {m} is not positive")));
    }
    let dim = alpha.dim();
    let support = alpha.support();
    let (&last, rest) = support.split_last().expect("nonzero weights");
    let weights = alpha.entries();
    // Enumerate all but the last supported coordinate; the last one is
    // forced to its least admissible value.
    let bounds: Vec<u32> = rest
        .iter()
        .map(|&i| exponent_bound(&(m.clone() / weights[i].clone())))
        .collect();
    let mut candidates: Vec<ExponentVector> = Vec::new();
    let mut counter = vec![0u32; rest.len()];
    loop {
        let mut partial = S::zero();
        for (k, &i) in rest.iter().enumerate() {
            partial = partial + weights[i].clone() * S::from_int(counter[k] as i64);
        }
        let deficit = m.clone() - partial;
        let need = if deficit.is_positive() {
            exponent_bound(&(deficit / weights[last].clone()))
        } else {
            0
        };
        let mut beta = vec![0u32; dim];
        for (k, &i) in rest.iter().enumerate() {
            beta[i] = counter[k];
        }
        beta[last] = need;
        candidates.push(beta);

        let mut k = 0;
        loop {
            if k == counter.len() {
                return MonomialIdeal::new(dim, minimal_antichain(candidates));
            }
            if counter[k] < bounds[k] {
                counter[k] += 1;
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

fn exponent_bound<S: Scalar>(x: &S) -> u32 {
    x.ceil_part()
        .to_i64_exact()
        .and_then(|v| u32::try_from(v.max(0)).ok())
        .expect("exponent bound fits in u32")
}

/// A graded sequence of ideals `a_p * a_q ⊆ a_{p+q}`, described symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedSeq<S> {
    /// `a_m = a^m`.
    Powers(MonomialIdeal),
    /// `a_m = {f : val_alpha(f) >= m}`.
    ValSeq(WeightVector<S>),
    /// `c_m = sum_{i=0}^{m} a_i * q'^{ceil(beta (m - i))}` with `a_0 = (1)`.
    Enlarged {
        base: Box<GradedSeq<S>>,
        qprime: MonomialIdeal,
        beta: S,
    },
}

impl<S: Scalar> GradedSeq<S> {
    pub fn powers(ideal: MonomialIdeal) -> Result<Self> {
        ideal.ensure_nonzero()?;
        Ok(GradedSeq::Powers(ideal))
    }

    pub fn enlarged(base: GradedSeq<S>, qprime: MonomialIdeal, beta: S) -> Result<Self> {
        qprime.ensure_nonzero()?;
        qprime.ensure_dim(base.dim())?;
        if !beta.is_positive() {
            return Err(Error::Domain(format!("enlargement exponent {beta} is not positive")));
        }
        Ok(GradedSeq::Enlarged {
            base: Box::new(base),
            qprime,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            GradedSeq::Powers(a) => a.dim(),
            GradedSeq::ValSeq(alpha) => alpha.dim(),
            GradedSeq::Enlarged { base, .. } => base.dim(),
        }
    }

    /// Linear forms whose minimum is `gamma ↦ value_on_graded(gamma, self)`.
    pub fn linear_forms(&self) -> Vec<Vec<S>> {
        match self {
            GradedSeq::Powers(a) => ideal_forms(a),
            GradedSeq::ValSeq(alpha) => {
                let dim = alpha.dim();
                alpha
                    .support()
                    .into_iter()
                    .map(|i| {
                        let mut f = vec![S::zero(); dim];
                        f[i] = S::one() / alpha.entries()[i].clone();
                        f
                    })
                    .collect()
            }
            GradedSeq::Enlarged { base, qprime, beta } => {
                let mut forms: Vec<Vec<S>> = ideal_forms::<S>(qprime)
                    .into_iter()
                    .map(|f| f.into_iter().map(|x| x * beta.clone()).collect())
                    .collect();
                forms.extend(base.linear_forms());
                forms
            }
        }
    }
}

/// Asymptotic value `v_gamma(a_•) = lim v_gamma(a_m) / m`, by closed form.
///
/// * powers: `v_gamma(a)`;
/// * valuation sequence of `alpha`: `min_{i in supp alpha} gamma_i / alpha_i`;
/// * enlargement: `min(beta * v_gamma(q'), v_gamma(base))`.
pub fn value_on_graded<S: Scalar>(gamma: &WeightVector<S>, seq: &GradedSeq<S>) -> Result<S> {
    gamma.ensure_dim(seq.dim())?;
    match seq {
        GradedSeq::Powers(a) => value_on_ideal(gamma, a),
        GradedSeq::ValSeq(alpha) => Ok(alpha
            .support()
            .into_iter()
            .map(|i| gamma.entries()[i].clone() / alpha.entries()[i].clone())
            .min()
            .expect("nonzero weights")),
        GradedSeq::Enlarged { base, qprime, beta } => {
            let via_qprime = beta.clone() * value_on_ideal(gamma, qprime)?;
            Ok(via_qprime.min(value_on_graded(gamma, base)?))
        }
    }
}

/// Materializes the `m`-th ideal of a graded sequence. Exponential in `m`
/// for enlargements; intended for small `m` in tests and diagnostics.
pub fn truncate<S: Scalar>(seq: &GradedSeq<S>, m: u32) -> Result<MonomialIdeal> {
    let dim = seq.dim();
    if m == 0 {
        return Ok(MonomialIdeal::unit(dim));
    }
    match seq {
        GradedSeq::Powers(a) => Ok(a.pow(m)),
        GradedSeq::ValSeq(alpha) => valuation_ideal(alpha, &S::from_int(m as i64)),
        GradedSeq::Enlarged { base, qprime, beta } => {
            let mut acc = MonomialIdeal::zero(dim);
            for i in 0..=m {
                let exp = exponent_bound(&(beta.clone() * S::from_int((m - i) as i64)));
                let term = truncate(base, i)?.product(&qprime.pow(exp))?;
                acc = acc.sum(&term)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn w(v: &[(i64, i64)]) -> WeightVector<Rational> {
        WeightVector::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec())).unwrap()
    }

    #[test]
    fn value_on_ideal_examples() {
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(value_on_ideal(&w(&[(1, 2), (1, 3)]), &a).unwrap(), q(1, 1));
        assert_eq!(value_on_ideal(&w(&[(5, 7), (1, 3)]), &MonomialIdeal::unit(2)).unwrap(), q(0, 1));
        assert_eq!(value_on_ideal(&w(&[(1, 1), (1, 1)]), &ideal(2, &[&[1, 1]])).unwrap(), q(2, 1));
        assert!(matches!(
            value_on_ideal(&w(&[(1, 1), (1, 1)]), &MonomialIdeal::maximal(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            value_on_ideal(&w(&[(1, 1), (0, 1)]), &ideal(2, &[&[0, 4]])).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![q(0, 1), q(0, 1)]).is_err());
        assert!(WeightVector::new(vec![q(-1, 2), q(1, 1)]).is_err());
        assert!(WeightVector::<Rational>::new(vec![]).is_err());
        assert_eq!(w(&[(0, 1), (2, 3)]).support(), vec![1]);
    }

    #[test]
    fn log_discrepancy_examples() {
        assert_eq!(log_discrepancy(&w(&[(1, 1), (1, 1)])), q(2, 1));
        assert_eq!(log_discrepancy(&w(&[(1, 2), (1, 3)])), q(5, 6));
        assert_eq!(log_discrepancy(&w(&[(1, 4), (1, 2)])), q(3, 4));
    }

    #[test]
    fn valuation_ideal_examples() {
        assert_eq!(
            valuation_ideal(&w(&[(1, 1), (1, 1)]), &q(2, 1)).unwrap(),
            MonomialIdeal::maximal(2).pow(2)
        );
        assert_eq!(
            valuation_ideal(&w(&[(1, 2), (1, 3)]), &q(1, 1)).unwrap(),
            ideal(2, &[&[2, 0], &[1, 2], &[0, 3]])
        );
        assert_eq!(
            valuation_ideal(&w(&[(1, 1), (0, 1)]), &q(5, 2)).unwrap(),
            ideal(2, &[&[3, 0]])
        );
        assert!(valuation_ideal(&w(&[(1, 1), (1, 1)]), &q(0, 1)).is_err());
    }

    #[test]
    fn value_on_graded_examples() {
        let alpha = w(&[(1, 2), (1, 3)]);
        let seq = GradedSeq::ValSeq(alpha.clone());
        assert_eq!(value_on_graded(&w(&[(1, 1), (1, 1)]), &seq).unwrap(), q(2, 1));
        assert_eq!(value_on_graded(&alpha, &seq).unwrap(), q(1, 1));

        let enl = GradedSeq::enlarged(
            GradedSeq::ValSeq(w(&[(3, 8), (1, 4)])),
            MonomialIdeal::variable(2, 1),
            q(4, 1),
        )
        .unwrap();
        assert_eq!(value_on_graded(&w(&[(3, 1), (2, 1)]), &enl).unwrap(), q(8, 1));
    }

    #[test]
    fn linear_forms_agree_with_closed_form() {
        let seqs = vec![
            GradedSeq::Powers(ideal(2, &[&[2, 0], &[1, 1], &[0, 5]])),
            GradedSeq::ValSeq(w(&[(3, 8), (0, 1)])),
            GradedSeq::enlarged(
                GradedSeq::ValSeq(w(&[(3, 8), (1, 4)])),
                ideal(2, &[&[0, 1]]),
                q(3, 1),
            )
            .unwrap(),
        ];
        for seq in &seqs {
            let forms = seq.linear_forms();
            for g in [[1, 0], [0, 1], [3, 2], [1, 1], [5, 7]] {
                let gamma = w(&[(g[0], 1), (g[1], 1)]);
                assert_eq!(
                    min_form_value(&forms, gamma.entries()),
                    value_on_graded(&gamma, seq).unwrap()
                );
            }
        }
    }

    #[test]
    fn truncations_materialize_small_terms() {
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(truncate(&GradedSeq::<Rational>::Powers(a.clone()), 2).unwrap(), a.pow(2));
        let enl = GradedSeq::enlarged(
            GradedSeq::ValSeq(w(&[(1, 1), (1, 1)])),
            ideal(2, &[&[0, 1]]),
            q(1, 2),
        )
        .unwrap();
        // c_1 = q'^1 + a_1 = (y) + (x, y)
        assert_eq!(truncate(&enl, 1).unwrap(), MonomialIdeal::maximal(2));
        assert!(truncate(&enl, 0).unwrap().is_unit());
    }
}
