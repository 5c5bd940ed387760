//! Multiplier ideals of monomial ideals by lattice-point search.
//!
//! `J(c·a)` is generated by the monomials `x^beta` with `beta + (1,…,1)` in
//! the interior of `c·Newt(a)`. This module recomputes the facets of the
//! Newton polyhedron by brute force (hyperplanes through `n` affinely
//! independent generators and recession directions, normals from cofactor
//! expansion) and never goes through ray enumeration, so its jumping numbers
//! are an independent check on [`crate::lct`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{check_dim_cap, combinations, Ray};
use crate::ideal::{minimal_antichain, ExponentVector, MonomialIdeal};
use crate::lct::LctValue;
use crate::scalar::{gcd, Scalar};
use crate::valuation::{log_discrepancy, value_on_ideal, WeightVector};

fn det<S: Scalar>(m: &[Vec<S>]) -> S {
    match m.len() {
        0 => S::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = S::zero();
            for (j, pivot) in m[0].iter().enumerate() {
                if pivot.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<S>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = pivot.clone() * det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Generalized cross product of `n-1` vectors in dimension `n`.
fn cofactor_normal<S: Scalar>(vectors: &[Vec<S>], dim: usize) -> Vec<S> {
    (0..dim)
        .map(|i| {
            let minor: Vec<Vec<S>> = vectors
                .iter()
                .map(|v| v.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det(&minor);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn as_scalars<S: Scalar>(e: &[u32]) -> Vec<S> {
    e.iter().map(|&x| S::from_int(x as i64)).collect()
}

fn inner<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Facets `(normal, offset)` of `Newt(a)`, normals primitive integral and
/// nonnegative.
pub fn brute_force_facets<S: Scalar>(a: &MonomialIdeal) -> Result<Vec<(Vec<S>, S)>> {
    a.ensure_nonzero()?;
    let dim = a.dim();
    check_dim_cap(dim)?;
    let points: Vec<Vec<S>> = a.generators().iter().map(|g| as_scalars(g)).collect();
    let mut found: BTreeSet<(Vec<S>, S)> = BTreeSet::new();
    for k in 1..=dim.min(points.len()) {
        for pts in combinations(points.len(), k) {
            for dirs in combinations(dim, dim - k) {
                let base = &points[pts[0]];
                let mut spanning: Vec<Vec<S>> = pts[1..]
                    .iter()
                    .map(|&p| points[p].iter().zip(base).map(|(x, y)| x.clone() - y.clone()).collect())
                    .collect();
                for &d in &dirs {
                    let mut e = vec![S::zero(); dim];
                    e[d] = S::one();
                    spanning.push(e);
                }
                let mut normal = cofactor_normal(&spanning, dim);
                if normal.iter().all(|x| x.is_zero()) {
                    continue;
                }
                if normal.iter().any(|x| x.is_negative()) {
                    if normal.iter().any(|x| x.is_positive()) {
                        continue;
                    }
                    normal = normal.into_iter().map(|x| -x).collect();
                }
                let content = normal.iter().fold(S::zero(), |acc, x| gcd(&acc, x));
                let normal: Vec<S> = normal.into_iter().map(|x| x / content.clone()).collect();
                let offset = inner(&normal, base);
                if points.iter().all(|p| inner(&normal, p) >= offset) {
                    found.insert((normal, offset));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierIdealResult<S> {
    pub coefficient: S,
    pub ideal: MonomialIdeal,
    /// Facets `(normal, offset)` of `Newt(a)` used for the interior test.
    pub facets: Vec<(Vec<S>, S)>,
    /// For each minimal generator `beta`, the slacks
    /// `<normal, beta + 1> - c·offset` (all positive).
    pub witness: Vec<(ExponentVector, Vec<S>)>,
}

fn slacks<S: Scalar>(facets: &[(Vec<S>, S)], beta: &[u32], c: &S) -> Vec<S> {
    let p: Vec<S> = beta.iter().map(|&x| S::from_int(x as i64 + 1)).collect();
    facets
        .iter()
        .map(|(n, b)| inner(n, &p) - c.clone() * b.clone())
        .collect()
}

fn interior<S: Scalar>(facets: &[(Vec<S>, S)], beta: &[u32], c: &S) -> bool {
    slacks(facets, beta, c).iter().all(|s| s.is_positive())
}

/// `J(c·a)` for a monomial ideal `a` and `c > 0`.
///
/// Minimal generators satisfy `beta_i <= c·max_exponent(a)`, so the search
/// runs over the box `[0, max_exponent(a)·ceil(c) + n]^n`.
pub fn howald_multiplier<S: Scalar>(a: &MonomialIdeal, c: &S) -> Result<MultiplierIdealResult<S>> {
    if !c.is_positive() {
        return Err(Error::Domain(format!("coefficient {c} must be positive")));
    }
    let facets = brute_force_facets::<S>(a)?;
    let dim = a.dim();
    let ceil = c.ceil_part().to_i64_exact().expect("coefficient fits in i64");
    let bound = u32::try_from(a.max_exponent() as i64 * ceil + dim as i64).expect("search box fits in u32");

    let mut members = Vec::new();
    let mut beta = vec![0u32; dim];
    'search: loop {
        if interior(&facets, &beta, c) {
            members.push(beta.clone());
        }
        for b in beta.iter_mut() {
            if *b < bound {
                *b += 1;
                continue 'search;
            }
            *b = 0;
        }
        break;
    }
    let gens = minimal_antichain(members);
    let witness = gens.iter().map(|g| (g.clone(), slacks(&facets, g, c))).collect();
    Ok(MultiplierIdealResult {
        coefficient: c.clone(),
        ideal: MonomialIdeal::new(dim, gens)?,
        facets,
        witness,
    })
}

/// Jumping number `min { λ : q ⊄ J(λ·a) }` computed from facet crossings of
/// the generators of `q`, then confirmed by lattice search on both sides.
pub fn jumping_number_oracle<S: Scalar>(q: &MonomialIdeal, a: &MonomialIdeal) -> Result<LctValue<S>> {
    q.ensure_nonzero()?;
    a.ensure_nonzero()?;
    q.ensure_dim(a.dim())?;
    let facets = brute_force_facets::<S>(a)?;
    let bounded: Vec<&(Vec<S>, S)> = facets.iter().filter(|(_, b)| b.is_positive()).collect();
    if bounded.is_empty() {
        return Ok(LctValue::Infinity);
    }
    // x^delta leaves J(λ·a) once delta + 1 reaches the boundary of λ·Newt(a).
    let mut candidates: BTreeSet<S> = BTreeSet::new();
    let mut jn: Option<S> = None;
    for delta in q.generators() {
        let p: Vec<S> = delta.iter().map(|&x| S::from_int(x as i64 + 1)).collect();
        for (n, b) in &bounded {
            let crossing = inner(n, &p) / b.clone();
            candidates.insert(crossing.clone());
            jn = Some(match jn {
                Some(cur) if cur <= crossing => cur,
                _ => crossing,
            });
        }
    }
    let jn = jn.expect("q has generators");
    let below = candidates
        .range(..jn.clone())
        .next_back()
        .cloned()
        .unwrap_or_else(S::zero);
    let probe = (below + jn.clone()) / S::from_int(2);
    let contained_below = q.is_subset_of(&howald_multiplier(a, &probe)?.ideal);
    let contained_at = q.is_subset_of(&howald_multiplier(a, &jn)?.ideal);
    if !contained_below || contained_at {
        return Err(Error::CrossCheck(format!(
            "lattice search disagrees with facet crossing {jn} for q = ({q}), a = ({a})"
        )));
    }
    Ok(LctValue::Finite(jn))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow<S> {
    pub ray: Ray,
    pub t: S,
    /// `v_gamma(b_t)` with `b_t = J(t·a)`.
    pub value: S,
    /// `v(b_t)/t - (v(b_T)/T - A(gamma)/t)`, positive when the bound holds.
    pub slack: S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport<S> {
    pub rows: Vec<GrowthRow<S>>,
}

impl<S: Scalar> GrowthReport<S> {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.slack.is_positive())
    }
}

/// Checks the controlled-growth inequality
/// `v(b_t)/t > v(b_•) - A(v)/t` for the subadditive system `b_t = J(t·a)`,
/// approximating `v(b_•)` by `v(b_T)/T` at the largest sampled `T`.
pub fn controlled_growth_check<S: Scalar>(
    a: &MonomialIdeal,
    rays: &[Ray],
    t_values: &[S],
) -> Result<GrowthReport<S>> {
    a.ensure_nonzero()?;
    if let Some(t) = t_values.iter().find(|t| !t.is_positive()) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    let Some(t_max) = t_values.iter().max().cloned() else {
        return Ok(GrowthReport { rows: vec![] });
    };
    let ideals: Vec<MonomialIdeal> = t_values
        .iter()
        .map(|t| howald_multiplier(a, t).map(|r| r.ideal))
        .collect::<Result<_>>()?;
    let top = howald_multiplier(a, &t_max)?.ideal;
    let mut rows = Vec::new();
    for ray in rays {
        if ray.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: ray.dim(),
            });
        }
        let gamma = WeightVector::<S>::from_ray(ray);
        let asymptotic = value_on_ideal(&gamma, &top)? / t_max.clone();
        let a_gamma = log_discrepancy(&gamma);
        for (t, b) in t_values.iter().zip(&ideals) {
            let value = value_on_ideal(&gamma, b)?;
            let slack = value.clone() / t.clone() - (asymptotic.clone() - a_gamma.clone() / t.clone());
            rows.push(GrowthRow {
                ray: ray.clone(),
                t: t.clone(),
                value,
                slack,
            });
        }
    }
    Ok(GrowthReport { rows })
}
