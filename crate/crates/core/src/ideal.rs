//! Monomial ideals in `n` variables, stored by their minimal generators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x^beta`.
pub type ExponentVector = Vec<u32>;

/// A monomial ideal given by its minimal generating antichain.
///
/// Generators are kept sorted and no generator divides another. The empty
/// generator set is the zero ideal; it can be represented but most
/// operations reject it with [`Error::ZeroIdeal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Reduces a set of exponent vectors to its minimal elements under the
/// componentwise order.
pub fn minimal_antichain(points: impl IntoIterator<Item = ExponentVector>) -> Vec<ExponentVector> {
    let mut pts: Vec<ExponentVector> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    // Sorting by total degree first guarantees every divisor precedes its multiples.
    pts.sort_by_key(|p| (p.iter().map(|&e| e as u64).sum::<u64>(), p.clone()));
    let mut kept: Vec<ExponentVector> = Vec::new();
    for p in pts {
        if !kept.iter().any(|k| divides(k, &p)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let gens: Vec<ExponentVector> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(MonomialIdeal {
            dim,
            gens: minimal_antichain(gens),
        })
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal {
            dim,
            gens: vec![vec![0; dim]],
        }
    }

    /// Principal ideal `(x^beta)`.
    pub fn principal(beta: ExponentVector) -> Self {
        MonomialIdeal {
            dim: beta.len(),
            gens: vec![beta],
        }
    }

    pub fn variable(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::principal(e)
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(dim: usize) -> Self {
        Self::new(dim, (0..dim).map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        }))
        .expect("consistent dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&e| e == 0)
    }

    pub fn ensure_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else {
            Ok(())
        }
    }

    pub fn ensure_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn contains_monomial(&self, beta: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, beta))
    }

    /// Ideal containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains_monomial(g))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        other.ensure_dim(self.dim)?;
        let gens = self.gens.iter().flat_map(|a| {
            other
                .gens
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
        });
        MonomialIdeal::new(self.dim, gens.collect::<Vec<_>>())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        other.ensure_dim(self.dim)?;
        MonomialIdeal::new(self.dim, self.gens.iter().chain(&other.gens).cloned().collect::<Vec<_>>())
    }

    pub fn pow(&self, m: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.dim);
        for _ in 0..m {
            acc = acc.product(self).expect("same dimension");
        }
        acc
    }

    /// Largest exponent appearing in coordinate `i` among the generators.
    pub fn max_exponent(&self) -> u32 {
        self.gens.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Name of the `i`-th variable in an `n`-dimensional ring: `x, y, z` for
/// `n <= 3`, `x1 ... xn` otherwise.
pub fn variable_name(dim: usize, i: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Render in descending lex order so (x^2, y^3) reads naturally.
        for g in self.gens.iter().rev() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let factors: Vec<String> = g
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = variable_name(self.dim, i);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec())).unwrap()
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let i = ideal(2, &[&[1, 1], &[2, 1], &[1, 3]]);
        assert_eq!(i.generators(), &[vec![1, 1]]);
    }

    #[test]
    fn unit_absorbs_everything() {
        let i = ideal(2, &[&[0, 0], &[4, 1]]);
        assert!(i.is_unit());
    }

    #[test]
    fn product_sum_and_power() {
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        let b = ideal(2, &[&[1, 0]]);
        assert_eq!(a.product(&b).unwrap(), ideal(2, &[&[3, 0], &[1, 3]]));
        assert_eq!(a.sum(&b).unwrap(), ideal(2, &[&[1, 0], &[0, 3]]));
        assert_eq!(MonomialIdeal::maximal(2).pow(2), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert!(a.pow(0).is_unit());
    }

    #[test]
    fn containment() {
        let a = ideal(2, &[&[2, 0], &[0, 2]]);
        let m = MonomialIdeal::maximal(2);
        assert!(a.is_subset_of(&m));
        assert!(!m.is_subset_of(&a));
        assert!(a.contains_monomial(&[1, 2]));
        assert!(!a.contains_monomial(&[1, 1]));
    }

    #[test]
    fn dimension_checks() {
        assert!(matches!(
            MonomialIdeal::new(2, vec![vec![1, 2, 3]]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        let a = MonomialIdeal::maximal(2);
        assert!(a.product(&MonomialIdeal::maximal(3)).is_err());
        assert_eq!(MonomialIdeal::zero(2).ensure_nonzero(), Err(Error::ZeroIdeal));
    }

    #[test]
    fn display() {
        assert_eq!(ideal(2, &[&[2, 0], &[0, 3]]).to_string(), "x^2, y^3");
        assert_eq!(ideal(2, &[&[1, 1]]).to_string(), "x*y");
        assert_eq!(MonomialIdeal::unit(3).to_string(), "1");
        assert_eq!(MonomialIdeal::variable(4, 2).to_string(), "x3");
    }
}
