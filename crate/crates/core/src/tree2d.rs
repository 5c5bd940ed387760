//! Quasi-monomial valuations on a two-dimensional regular local ring,
//! normalized by `v(m) = 1` and encoded by their approximation sequence.
//!
//! The path from the multiplicity valuation (skewness 1) to `v` is cut into
//! segments `(α_{j-1}, α_j]` on which the multiplicity is the constant
//! `m_j`. The log discrepancy along the path is
//! `A(t) = 2 + Σ m_j (α_j - α_{j-1})` truncated at skewness `t`, so it is
//! continuous and piecewise linear with slope `m_j` on segment `j`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxSeq2D<S> {
    steps: Vec<(S, u32)>,
}

impl<S: Scalar> ApproxSeq2D<S> {
    /// Builds a sequence from `(skewness, multiplicity)` steps. The implicit
    /// root has skewness 1 and multiplicity 1.
    pub fn new(steps: Vec<(S, u32)>) -> Result<Self> {
        let mut prev_alpha = S::one();
        let mut prev_mult = 0u32;
        for (j, (alpha, mult)) in steps.iter().enumerate() {
            if alpha <= &prev_alpha {
                return Err(Error::InvalidSequence(format!(
                    "skewness {alpha} at step {} does not exceed {prev_alpha}",
                    j + 1
                )));
            }
            if j == 0 && *mult != 1 {
                return Err(Error::InvalidSequence(format!("first multiplicity is {mult}, expected 1")));
            }
            if *mult <= prev_mult {
                return Err(Error::InvalidSequence(format!(
                    "multiplicity {mult} at step {} does not exceed {prev_mult}",
                    j + 1
                )));
            }
            prev_alpha = alpha.clone();
            prev_mult = *mult;
        }
        Ok(ApproxSeq2D { steps })
    }

    pub fn steps(&self) -> &[(S, u32)] {
        &self.steps
    }

    /// Skewness of `v` itself.
    pub fn target_skewness(&self) -> S {
        self.steps.last().map(|(a, _)| a.clone()).unwrap_or_else(S::one)
    }

    /// Multiplicity `m(v)`.
    pub fn final_multiplicity(&self) -> u32 {
        self.steps.last().map(|(_, m)| *m).unwrap_or(1)
    }

    /// Consecutive multiplicities that do not divide each other. Valuative
    /// trees always have `m_j | m_{j+1}`; a violation suggests a typo but the
    /// formulas here do not depend on it.
    pub fn divisibility_warnings(&self) -> Vec<String> {
        self.steps
            .windows(2)
            .filter(|w| w[1].1 % w[0].1 != 0)
            .map(|w| format!("multiplicity {} does not divide {}", w[0].1, w[1].1))
            .collect()
    }

    /// Segments `(start, end, multiplicity)`.
    pub fn segments(&self) -> Vec<(S, S, u32)> {
        let mut start = S::one();
        self.steps
            .iter()
            .map(|(alpha, m)| {
                let seg = (start.clone(), alpha.clone(), *m);
                start = alpha.clone();
                seg
            })
            .collect()
    }

    fn check_range(&self, what: &'static str, t: &S) -> Result<()> {
        let high = self.target_skewness();
        if t < &S::one() || t > &high {
            return Err(Error::OutOfRange {
                what,
                value: t.to_string(),
                low: "1".into(),
                high: high.to_string(),
            });
        }
        Ok(())
    }

    /// Multiplicity of the valuation at skewness `t` on the path.
    pub fn multiplicity_at(&self, t: &S) -> Result<u32> {
        self.check_range("skewness", t)?;
        Ok(self
            .segments()
            .into_iter()
            .find(|(start, end, _)| t > start && t <= end)
            .map(|(_, _, m)| m)
            .unwrap_or(1))
    }
}

fn disc_at<S: Scalar>(seq: &ApproxSeq2D<S>, t: &S) -> S {
    let mut a = S::from_int(2);
    for (start, end, m) in seq.segments() {
        if t <= &start {
            break;
        }
        let upto = if t < &end { t.clone() } else { end };
        a = a + S::from_int(m as i64) * (upto - start);
    }
    a
}

/// Log discrepancy of the valuation with skewness `t` on the path to `v`.
pub fn a_disc_2d<S: Scalar>(seq: &ApproxSeq2D<S>, t: &S) -> Result<S> {
    seq.check_range("skewness", t)?;
    Ok(disc_at(seq, t))
}

/// Signs of `m_j·t - A(t) - N` at the endpoints of one segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentCheck<S> {
    pub start: S,
    pub end: S,
    pub multiplicity: u32,
    pub at_start: S,
    pub at_end: S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhouBound<S> {
    /// Least integer strictly above `max_gap`. Sufficient, not necessary:
    /// paths of multiplicity one are already Zhou for `N = 0`.
    pub n: u64,
    /// `max |m(t)·t - A(t)|` over the path, attained at segment endpoints.
    pub max_gap: S,
    pub certificate: Vec<SegmentCheck<S>>,
}

impl<S: Scalar> ZhouBound<S> {
    /// `σ` is strictly decreasing along the path when every endpoint value
    /// is negative.
    pub fn certifies_monotone(&self) -> bool {
        self.certificate
            .iter()
            .all(|c| c.at_start.is_negative() && c.at_end.is_negative())
    }
}

/// Least `N` with `N > max |m(ṽ)α(ṽ) - A(ṽ)|` along `[v_m, v]`; then `v` is a
/// Zhou valuation related to `m^N` up to rescaling.
pub fn min_zhou_n<S: Scalar>(seq: &ApproxSeq2D<S>) -> ZhouBound<S> {
    // root: m = 1, t = 1, A = 2
    let mut max_gap = (S::one() - S::from_int(2)).abs();
    let segments = seq.segments();
    for (start, end, m) in &segments {
        let mm = S::from_int(*m as i64);
        for t in [start, end] {
            let gap = (mm.clone() * t.clone() - disc_at(seq, t)).abs();
            if gap > max_gap {
                max_gap = gap;
            }
        }
    }
    let n_scalar = max_gap.floor_part() + S::one();
    let n = n_scalar
        .to_i64_exact()
        .and_then(|v| u64::try_from(v).ok())
        .expect("bound fits in u64");
    let certificate = segments
        .into_iter()
        .map(|(start, end, m)| {
            let mm = S::from_int(m as i64);
            let at = |t: &S| mm.clone() * t.clone() - disc_at(seq, t) - n_scalar.clone();
            SegmentCheck {
                at_start: at(&start),
                at_end: at(&end),
                start,
                end,
                multiplicity: m,
            }
        })
        .collect();
    ZhouBound {
        n,
        max_gap,
        certificate,
    }
}

/// Membership in `ZV(1)`: Zhou valuations related to the unit ideal are the
/// quasi-monomial valuations of multiplicity one.
pub fn zv1_member<S: Scalar>(seq: &ApproxSeq2D<S>) -> bool {
    seq.final_multiplicity() == 1
}

/// `w(a_•^v) = α(w ∧ v)/α(v)` for `w` on the segment `[v_m, v]`.
pub fn relative_value_2d<S: Scalar>(w_skewness: &S, v_seq: &ApproxSeq2D<S>) -> Result<S> {
    v_seq.check_range("ancestor skewness", w_skewness)?;
    Ok(w_skewness.clone() / v_seq.target_skewness())
}

/// `σ(t) = (A(t) + N)/t · α(v)` at each sample.
pub fn sigma_profile<S: Scalar>(seq: &ApproxSeq2D<S>, n: u64, samples: &[S]) -> Result<Vec<(S, S)>> {
    let target = seq.target_skewness();
    let nn = S::from_int(n as i64);
    samples
        .iter()
        .map(|t| {
            let a = a_disc_2d(seq, t)?;
            Ok((t.clone(), (a + nn.clone()) / t.clone() * target.clone()))
        })
        .collect()
}
