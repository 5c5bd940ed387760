//! Exact polyhedral geometry: primitive rays, Newton polyhedra and the
//! critical rays of a common refinement of the nonnegative orthant.
//!
//! Every function considered downstream (values of monomial valuations on
//! ideals and graded sequences, log discrepancies) is a minimum of finitely
//! many linear forms in the weight vector. Cutting the orthant by all the
//! hyperplanes `f_i = f_j` within each family yields cones on which every
//! family is linear, so any linear-fractional objective built from them
//! attains its minimum on an extreme ray of one of those cones.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::scalar::{gcd, lcm, Scalar};

pub const DEFAULT_DIM_CAP: usize = 4;

static DIM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIM_CAP);

/// Current ambient dimension cap for ray enumeration.
pub fn dim_cap() -> usize {
    DIM_CAP.load(AtomicOrdering::Relaxed)
}

/// Overrides the dimension cap process-wide. Enumeration is combinatorial in
/// the number of splitting hyperplanes; raise with care.
pub fn set_dim_cap(cap: usize) {
    DIM_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

pub fn check_dim_cap(dim: usize) -> Result<()> {
    let cap = dim_cap();
    if dim > cap {
        Err(Error::DimensionCap { dim, cap })
    } else {
        Ok(())
    }
}

/// A half-line of weight vectors, stored as its primitive nonnegative
/// integer generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray(Vec<i64>);

impl Ray {
    /// Canonical primitive representative of the half-line through `v`.
    ///
    /// Returns `None` for the zero vector or a vector with entries of both
    /// signs. A nonpositive vector is flipped.
    pub fn from_scalars<S: Scalar>(v: &[S]) -> Option<Ray> {
        let ints = primitive_integer_vector(v)?;
        let pos = ints.iter().any(|x| x.is_positive());
        let neg = ints.iter().any(|x| x.is_negative());
        let ints = match (pos, neg) {
            (true, true) | (false, false) => return None,
            (true, false) => ints,
            (false, true) => ints.into_iter().map(|x| -x).collect(),
        };
        let coords = ints
            .iter()
            .map(|x| x.to_i64_exact())
            .collect::<Option<Vec<i64>>>()?;
        Some(Ray(coords))
    }

    pub fn from_coords(coords: Vec<i64>) -> Option<Ray> {
        let as_scalars: Vec<crate::Rational64> = coords.iter().map(|&c| crate::Rational64::from_int(c)).collect();
        Ray::from_scalars(&as_scalars)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_scalars<S: Scalar>(&self) -> Vec<S> {
        self.0.iter().map(|&c| S::from_int(c)).collect()
    }

    /// `sum_i gamma_i`, the log discrepancy of the monomial valuation.
    pub fn coord_sum<S: Scalar>(&self) -> S {
        S::from_int(self.0.iter().sum())
    }

    pub fn dot<S: Scalar>(&self, v: &[S]) -> S {
        dot(&self.to_scalars::<S>(), v)
    }

    /// True when `v` is a positive multiple of this ray.
    pub fn is_proportional_to<S: Scalar>(&self, v: &[S]) -> bool {
        Ray::from_scalars(v).as_ref() == Some(self)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Canonical output order: descending lexicographic order of the
/// projectivized ray `gamma / sum(gamma)`. In two dimensions this walks from
/// `(1,0)` to `(0,1)`.
pub fn ray_order(a: &Ray, b: &Ray) -> Ordering {
    let sa: i64 = a.0.iter().sum();
    let sb: i64 = b.0.iter().sum();
    for (x, y) in a.0.iter().zip(&b.0) {
        // compare x/sa with y/sb using 128-bit cross multiplication
        let lhs = *x as i128 * sb as i128;
        let rhs = *y as i128 * sa as i128;
        match rhs.cmp(&lhs) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl PartialOrd for Ray {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ray {
    fn cmp(&self, other: &Self) -> Ordering {
        ray_order(self, other).then_with(|| self.0.cmp(&other.0))
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Clears denominators and divides out the content. `None` for the zero vector.
fn primitive_integer_vector<S: Scalar>(v: &[S]) -> Option<Vec<S>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let den = v.iter().fold(S::one(), |acc, x| lcm(&acc, &x.denom_part()));
    let ints: Vec<S> = v.iter().map(|x| x.clone() * den.clone()).collect();
    let content = ints.iter().fold(S::zero(), |acc, x| gcd(&acc, x));
    Some(ints.into_iter().map(|x| x / content.clone()).collect())
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce<S: Scalar>(rows: &mut [Vec<S>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

/// Generator of the kernel of `rows` when it is exactly one-dimensional.
fn kernel_line<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Option<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, ncols);
    if pivots.len() + 1 != ncols {
        return None;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![S::zero(); ncols];
    v[free] = S::one();
    for (row, &pc) in m.iter().zip(&pivots) {
        v[pc] = -row[free].clone();
    }
    Some(v)
}

/// All size-`k` index combinations of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Splitting hyperplanes `{f_i = f_j}` for every pair within every family,
/// together with the coordinate hyperplanes, as canonical primitive normals.
fn splitting_hyperplanes<S: Scalar>(families: &[Vec<Vec<S>>], dim: usize) -> Vec<Vec<S>> {
    let mut set: BTreeSet<Vec<S>> = BTreeSet::new();
    for k in 0..dim {
        let mut e = vec![S::zero(); dim];
        e[k] = S::one();
        set.insert(e);
    }
    for family in families {
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                let diff: Vec<S> = family[i]
                    .iter()
                    .zip(&family[j])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect();
                if let Some(mut h) = primitive_integer_vector(&diff) {
                    if h.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                        h = h.into_iter().map(|x| -x).collect();
                    }
                    set.insert(h);
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Extreme rays of the common refinement of the nonnegative orthant by the
/// hyperplanes `{f_i = f_j}` within each family of linear forms.
///
/// Each linear form is given by its coefficient vector. The output is
/// deterministic and sorted by [`ray_order`].
pub fn critical_rays<S: Scalar>(families: &[Vec<Vec<S>>], dim: usize) -> Result<Vec<Ray>> {
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    check_dim_cap(dim)?;
    for family in families {
        if let Some(bad) = family.iter().find(|f| f.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
    }
    let hyperplanes = splitting_hyperplanes(families, dim);
    let mut rays: BTreeSet<Ray> = BTreeSet::new();
    if dim == 1 {
        rays.insert(Ray(vec![1]));
    }
    for combo in combinations(hyperplanes.len(), dim - 1) {
        if dim == 1 {
            break;
        }
        let rows: Vec<Vec<S>> = combo.iter().map(|&i| hyperplanes[i].clone()).collect();
        if let Some(v) = kernel_line(&rows, dim) {
            if let Some(ray) = Ray::from_scalars(&v) {
                rays.insert(ray);
            }
        }
    }
    Ok(rays.into_iter().collect())
}

/// Coefficient vectors `<., beta>` for the generators of an ideal.
pub fn ideal_forms<S: Scalar>(ideal: &MonomialIdeal) -> Vec<Vec<S>> {
    ideal
        .generators()
        .iter()
        .map(|g| g.iter().map(|&e| S::from_int(e as i64)).collect())
        .collect()
}

/// A facet inequality `<normal, u> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet<S> {
    pub normal: Ray,
    pub offset: S,
}

/// Newton polyhedron `conv(generators) + R^n_{>=0}` of a monomial ideal.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron<S> {
    generators: MonomialIdeal,
    facets: Vec<Facet<S>>,
}

impl<S: Scalar> NewtonPolyhedron<S> {
    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn generators(&self) -> &MonomialIdeal {
        &self.generators
    }

    /// All facets, coordinate facets included, in [`ray_order`] of normals.
    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    /// Facets not of the form `u_i >= 0`.
    pub fn nontrivial_facets(&self) -> impl Iterator<Item = &Facet<S>> {
        self.facets.iter().filter(|f| !f.offset.is_zero())
    }

    pub fn contains(&self, point: &[S]) -> bool {
        self.facets.iter().all(|f| f.normal.dot(point) >= f.offset)
    }

    /// Support function `min_{u in P} <gamma, u>`, i.e. the monomial valuation
    /// of the ideal.
    pub fn support(&self, gamma: &[S]) -> S {
        ideal_forms::<S>(&self.generators)
            .iter()
            .map(|g| dot(g, gamma))
            .min()
            .expect("nonzero ideal")
    }
}

/// Facet description of the Newton polyhedron of a nonzero monomial ideal.
///
/// Facet normals are among the critical rays of the generator family; a ray
/// is kept when the face it cuts out (minimizing generators plus recession
/// directions `e_i` with `gamma_i = 0`) spans a hyperplane.
pub fn newton_polyhedron<S: Scalar>(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron<S>> {
    ideal.ensure_nonzero()?;
    let dim = ideal.dim();
    let forms = ideal_forms::<S>(ideal);
    let rays = critical_rays(std::slice::from_ref(&forms), dim)?;
    let mut facets = Vec::new();
    for ray in rays {
        let values: Vec<S> = forms.iter().map(|g| ray.dot(g)).collect();
        let offset = values.iter().min().cloned().expect("nonzero ideal");
        let face: Vec<&Vec<S>> = forms
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == offset)
            .map(|(g, _)| g)
            .collect();
        let mut spanning: Vec<Vec<S>> = face[1..]
            .iter()
            .map(|g| g.iter().zip(face[0]).map(|(a, b)| a.clone() - b.clone()).collect())
            .collect();
        for (i, &c) in ray.coords().iter().enumerate() {
            if c == 0 {
                let mut e = vec![S::zero(); dim];
                e[i] = S::one();
                spanning.push(e);
            }
        }
        if rank(&spanning, dim) + 1 == dim {
            facets.push(Facet { normal: ray, offset });
        }
    }
    Ok(NewtonPolyhedron {
        generators: ideal.clone(),
        facets,
    })
}
