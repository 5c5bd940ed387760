//! Tian functions `t ↦ lct(q, t·q'; a_•)` as exact concave piecewise-linear
//! functions, and the linearity/differentiability test for Zhou valuations.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::Ray;
use crate::ideal::MonomialIdeal;
use crate::lct::{bound_from_certificates, lct_mixed_graded, ray_certificates, LctValue};
use crate::valuation::{value_on_ideal, GradedSeq, WeightVector};
use crate::scalar::Scalar;

/// One linear piece `t ↦ slope·t + intercept`, valid from `start` up to the
/// next piece's start (or `+∞`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<S> {
    /// `None` only for an unbounded first piece.
    pub start: Option<S>,
    pub slope: S,
    pub intercept: S,
    /// The critical ray whose ratio realizes this piece.
    pub ray: Ray,
}

impl<S: Scalar> Piece<S> {
    pub fn at(&self, t: &S) -> S {
        self.slope.clone() * t.clone() + self.intercept.clone()
    }
}

/// Exact concave piecewise-linear function on `(domain_min, +∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLConcave<S> {
    /// Exclusive lower end of the domain; `None` is `-∞`.
    pub domain_min: Option<S>,
    /// Pieces in increasing order of `start`, slopes strictly decreasing.
    pub pieces: Vec<Piece<S>>,
}

impl<S: Scalar> PLConcave<S> {
    pub fn in_domain(&self, t: &S) -> bool {
        self.domain_min.as_ref().is_none_or(|d| t > d)
    }

    /// Interior breakpoints, i.e. starts of all pieces but the first.
    pub fn breakpoints(&self) -> Vec<S> {
        self.pieces.iter().skip(1).filter_map(|p| p.start.clone()).collect()
    }

    fn piece_right_of(&self, t: &S) -> &Piece<S> {
        self.pieces
            .iter()
            .rev()
            .find(|p| p.start.as_ref().is_none_or(|s| s <= t))
            .unwrap_or(&self.pieces[0])
    }

    fn piece_left_of(&self, t: &S) -> &Piece<S> {
        self.pieces
            .iter()
            .rev()
            .find(|p| p.start.as_ref().is_none_or(|s| s < t))
            .unwrap_or(&self.pieces[0])
    }

    pub fn eval(&self, t: &S) -> Result<S> {
        if !self.in_domain(t) {
            return Err(Error::Domain(format!(
                "t = {t} is not above the domain bound {}",
                self.domain_min.as_ref().map(|d| d.to_string()).unwrap_or_default()
            )));
        }
        Ok(self.piece_right_of(t).at(t))
    }

    pub fn right_slope(&self, t: &S) -> S {
        self.piece_right_of(t).slope.clone()
    }

    pub fn left_slope(&self, t: &S) -> S {
        self.piece_left_of(t).slope.clone()
    }

    pub fn slope_at_infinity(&self) -> S {
        self.pieces.last().expect("nonempty").slope.clone()
    }

    /// True when no breakpoint lies strictly above `t`.
    pub fn is_linear_from(&self, t: &S) -> bool {
        self.breakpoints().iter().all(|b| b <= t)
    }
}

struct Line<S> {
    slope: S,
    intercept: S,
    ray: Ray,
}

/// `x` where `a` and `b` cross; requires `a.slope > b.slope`.
fn crossing<S: Scalar>(a: &Line<S>, b: &Line<S>) -> S {
    (b.intercept.clone() - a.intercept.clone()) / (a.slope.clone() - b.slope.clone())
}

/// Lower envelope of lines restricted to `(domain_min, ∞)`.
fn lower_envelope<S: Scalar>(mut lines: Vec<Line<S>>, domain_min: Option<S>) -> Vec<Piece<S>> {
    // Steepest first: that line is the minimum as t → -∞.
    lines.sort_by(|a, b| {
        b.slope
            .cmp(&a.slope)
            .then_with(|| a.intercept.cmp(&b.intercept))
            .then_with(|| a.ray.cmp(&b.ray))
    });
    lines.dedup_by(|later, earlier| later.slope == earlier.slope);

    let mut hull: Vec<Line<S>> = Vec::new();
    for line in lines {
        while hull.len() >= 2 {
            let n = hull.len();
            if crossing(&hull[n - 2], &line) <= crossing(&hull[n - 2], &hull[n - 1]) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }

    let mut pieces: Vec<Piece<S>> = Vec::new();
    for (k, line) in hull.iter().enumerate() {
        let start = if k == 0 { None } else { Some(crossing(&hull[k - 1], line)) };
        let end = hull.get(k + 1).map(|next| crossing(line, next));
        if let (Some(d), Some(e)) = (&domain_min, &end) {
            if e <= d {
                continue;
            }
        }
        let start = match (&domain_min, start) {
            (Some(d), Some(s)) if s > *d => Some(s),
            (Some(d), _) => Some(d.clone()),
            (None, s) => s,
        };
        pieces.push(Piece {
            start,
            slope: line.slope.clone(),
            intercept: line.intercept.clone(),
            ray: line.ray.clone(),
        });
    }
    pieces
}

/// The Tian function `t ↦ lct(q, t·q'; a_•)` on its natural domain.
pub fn tian_function<S: Scalar>(
    q: &MonomialIdeal,
    qprime: &MonomialIdeal,
    seq: &GradedSeq<S>,
) -> Result<PLConcave<S>> {
    let certs = ray_certificates(q, qprime, seq)?;
    let domain_min = bound_from_certificates(&certs);
    let lines: Vec<Line<S>> = certs
        .iter()
        .filter(|c| c.value_seq.is_positive())
        .map(|c| Line {
            slope: c.value_qprime.clone() / c.value_seq.clone(),
            intercept: (c.log_discrepancy.clone() + c.value_q.clone()) / c.value_seq.clone(),
            ray: c.ray.clone(),
        })
        .collect();
    if lines.is_empty() {
        return Err(Error::InfiniteLct);
    }
    Ok(PLConcave {
        pieces: lower_envelope(lines, domain_min.clone()),
        domain_min,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReport<S> {
    pub left_at_zero: S,
    pub right_at_zero: S,
    pub at_infinity: S,
}

impl<S: Scalar> SlopeReport<S> {
    pub fn differentiable_at_zero(&self) -> bool {
        self.left_at_zero == self.right_at_zero
    }
}

pub fn slope_report<S: Scalar>(f: &PLConcave<S>) -> Result<SlopeReport<S>> {
    let zero = S::zero();
    if !f.in_domain(&zero) {
        return Err(Error::Domain("t = 0 is not an interior point of the domain".into()));
    }
    Ok(SlopeReport {
        left_at_zero: f.left_slope(&zero),
        right_at_zero: f.right_slope(&zero),
        at_infinity: f.slope_at_infinity(),
    })
}

/// Default family of test ideals: each variable, each product of two
/// variables, and the maximal ideal.
pub fn default_test_family(dim: usize) -> Vec<MonomialIdeal> {
    let mut family = Vec::new();
    for i in 0..dim {
        family.push(MonomialIdeal::variable(dim, i));
    }
    for i in 0..dim {
        for j in i..dim {
            let mut e = vec![0; dim];
            e[i] += 1;
            e[j] += 1;
            family.push(MonomialIdeal::principal(e));
        }
    }
    family.push(MonomialIdeal::maximal(dim));
    family.dedup();
    family
}

/// Outcome of the Tian-function test. A pass is evidence over the finite
/// test family only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<S> {
    Pass { checked: usize },
    LctNotOne { lct: S },
    NotLinear { qprime: MonomialIdeal, breakpoint: S },
    NotDifferentiable { qprime: MonomialIdeal, left: S, right: S },
    SlopeMismatch { qprime: MonomialIdeal, slope: S, expected: S },
}

impl<S: Scalar> Verdict<S> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

impl<S: Scalar> fmt::Display for Verdict<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { checked } => write!(
                f,
                "PASS (finite-family evidence: {checked} test ideals; the criterion quantifies over all ideals)"
            ),
            Verdict::LctNotOne { lct } => write!(f, "FAIL: jumping number is {lct}, not 1"),
            Verdict::NotLinear { qprime, breakpoint } => {
                write!(f, "FAIL: Tian function for ({qprime}) bends at t = {breakpoint} > 0")
            }
            Verdict::NotDifferentiable { qprime, left, right } => write!(
                f,
                "FAIL: Tian function for ({qprime}) has slopes {left} and {right} at t = 0"
            ),
            Verdict::SlopeMismatch { qprime, slope, expected } => write!(
                f,
                "FAIL: Tian function for ({qprime}) has slope {slope}, valuation gives {expected}"
            ),
        }
    }
}

/// Checks that `val_alpha` has jumping number 1 with respect to `q` and that
/// for every test ideal `q'` its Tian function is linear on `[0, ∞)` and
/// differentiable at 0 with slope `val_alpha(q')`.
pub fn zhou_criterion<S: Scalar>(
    alpha: &WeightVector<S>,
    q: &MonomialIdeal,
    test_family: &[MonomialIdeal],
) -> Result<Verdict<S>> {
    if test_family.is_empty() {
        return Err(Error::Domain("empty test family".into()));
    }
    let seq = GradedSeq::ValSeq(alpha.clone());
    let unit = MonomialIdeal::unit(alpha.dim());
    let lct = match lct_mixed_graded(q, &S::zero(), &unit, &seq)?.value {
        LctValue::Finite(v) => v,
        LctValue::Infinity => return Err(Error::InfiniteLct),
    };
    if !lct.is_one() {
        return Ok(Verdict::LctNotOne { lct });
    }
    for qprime in test_family {
        let f = tian_function(q, qprime, &seq)?;
        if let Some(b) = f.breakpoints().into_iter().find(|b| b.is_positive()) {
            return Ok(Verdict::NotLinear {
                qprime: qprime.clone(),
                breakpoint: b,
            });
        }
        let slopes = slope_report(&f)?;
        if !slopes.differentiable_at_zero() {
            return Ok(Verdict::NotDifferentiable {
                qprime: qprime.clone(),
                left: slopes.left_at_zero,
                right: slopes.right_at_zero,
            });
        }
        let expected = value_on_ideal(alpha, qprime)?;
        if slopes.right_at_zero != expected {
            return Ok(Verdict::SlopeMismatch {
                qprime: qprime.clone(),
                slope: slopes.right_at_zero,
                expected,
            });
        }
    }
    Ok(Verdict::Pass {
        checked: test_family.len(),
    })
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

    fn line(slope: Rational, intercept: Rational, tag: i64) -> Line<Rational> {
        Line {
            slope,
            intercept,
            ray: Ray::from_coords(vec![tag, 1]).unwrap(),
        }
    }

    #[test]
    fn envelope_of_three_lines() {
        // min(2t, t + 1, 3): pieces start at -inf, 1, 2
        let lines = vec![line(q(1, 1), q(1, 1), 1), line(q(0, 1), q(3, 1), 2), line(q(2, 1), q(0, 1), 3)];
        let pieces = lower_envelope(lines, None);
        let starts: Vec<Option<Rational>> = pieces.iter().map(|p| p.start.clone()).collect();
        assert_eq!(starts, vec![None, Some(q(1, 1)), Some(q(2, 1))]);
        let slopes: Vec<Rational> = pieces.iter().map(|p| p.slope.clone()).collect();
        assert_eq!(slopes, vec![q(2, 1), q(1, 1), q(0, 1)]);
    }

    #[test]
    fn envelope_drops_dominated_and_clips_domain() {
        // t + 5 never attains min(2t, 3); equal slopes keep the lower line
        let lines = vec![
            line(q(1, 1), q(5, 1), 1),
            line(q(2, 1), q(0, 1), 2),
            line(q(0, 1), q(3, 1), 3),
            line(q(0, 1), q(4, 1), 4),
        ];
        let pieces = lower_envelope(lines, Some(q(2, 1)));
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].start, Some(q(2, 1)));
        assert_eq!(pieces[0].intercept, q(3, 1));
    }

    #[test]
    fn tian_of_valuation_sequence_is_one_line() {
        let x = MonomialIdeal::variable(2, 0);
        let y = MonomialIdeal::variable(2, 1);
        let f = tian_function(&x, &y, &GradedSeq::ValSeq(w(&[(3, 8), (1, 4)]))).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert_eq!(f.pieces[0].slope, q(1, 4));
        assert_eq!(f.pieces[0].intercept, q(1, 1));
        assert_eq!(f.domain_min, Some(q(-1, 1)));
        let s = slope_report(&f).unwrap();
        assert_eq!(
            (s.left_at_zero, s.right_at_zero, s.at_infinity),
            (q(1, 4), q(1, 4), q(1, 4))
        );
    }

    #[test]
    fn tian_of_powers_excludes_zero_denominators() {
        let unit = MonomialIdeal::unit(2);
        let x = MonomialIdeal::variable(2, 0);
        let a = MonomialIdeal::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        let f = tian_function(&unit, &x, &GradedSeq::<Rational>::Powers(a)).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert_eq!((f.pieces[0].slope.clone(), f.pieces[0].intercept.clone()), (q(1, 2), q(5, 6)));
    }

    #[test]
    fn unit_qprime_gives_constant() {
        let unit = MonomialIdeal::unit(2);
        let xy = MonomialIdeal::principal(vec![1, 1]);
        let f = tian_function(&xy, &unit, &GradedSeq::ValSeq(w(&[(1, 2), (1, 3)]))).unwrap();
        assert_eq!(f.domain_min, None);
        let s = slope_report(&f).unwrap();
        assert_eq!((s.left_at_zero, s.right_at_zero, s.at_infinity), (q(0, 1), q(0, 1), q(0, 1)));
        assert_eq!(f.eval(&q(-100, 1)).unwrap(), f.eval(&q(0, 1)).unwrap());
    }

    #[test]
    fn slopes_of_closed_form_example() {
        let unit = MonomialIdeal::unit(2);
        let x = MonomialIdeal::variable(2, 0);
        let f = tian_function(&unit, &x, &GradedSeq::ValSeq(w(&[(1, 2), (1, 3)]))).unwrap();
        let s = slope_report(&f).unwrap();
        assert_eq!((s.left_at_zero, s.right_at_zero, s.at_infinity), (q(1, 2), q(1, 2), q(1, 2)));
        assert_eq!(f.eval(&q(0, 1)).unwrap(), q(5, 6));
    }

    #[test]
    fn infinite_lct_is_rejected() {
        let unit = MonomialIdeal::unit(2);
        assert_eq!(
            tian_function::<Rational>(&unit, &unit, &GradedSeq::Powers(unit.clone())),
            Err(Error::InfiniteLct)
        );
    }

    #[test]
    fn slope_report_needs_interior_zero() {
        let f = PLConcave {
            domain_min: Some(q(0, 1)),
            pieces: vec![Piece {
                start: Some(q(0, 1)),
                slope: q(1, 1),
                intercept: q(1, 1),
                ray: Ray::from_coords(vec![1, 1]).unwrap(),
            }],
        };
        assert!(matches!(slope_report(&f), Err(Error::Domain(_))));
        assert!(f.eval(&q(0, 1)).is_err());
    }

    #[test]
    fn criterion_examples() {
        let x = MonomialIdeal::variable(2, 0);
        let family = vec![
            MonomialIdeal::variable(2, 1),
            MonomialIdeal::variable(2, 0),
            MonomialIdeal::principal(vec![1, 1]),
            MonomialIdeal::maximal(2),
        ];
        let v = zhou_criterion(&w(&[(3, 8), (1, 4)]), &x, &family).unwrap();
        assert_eq!(v, Verdict::Pass { checked: 4 });
        assert!(v.to_string().contains("finite-family evidence"));

        let v = zhou_criterion(&w(&[(1, 2), (1, 3)]), &x, &family).unwrap();
        assert_eq!(v, Verdict::LctNotOne { lct: q(4, 3) });

        let v = zhou_criterion(&w(&[(1, 1), (1, 1)]), &MonomialIdeal::unit(2), &[MonomialIdeal::maximal(2)]).unwrap();
        assert_eq!(v, Verdict::LctNotOne { lct: q(2, 1) });
    }

    #[test]
    fn default_family_contents() {
        let fam = default_test_family(2);
        // x, y, x^2, xy, y^2, (x, y)
        assert_eq!(fam.len(), 6);
        assert!(fam.contains(&MonomialIdeal::maximal(2)));
    }
}
