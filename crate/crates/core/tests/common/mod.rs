#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vallab::{ApproxSeq, MonomialIdeal, Rational, Scalar, Weights};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| g.to_vec())).unwrap()
}

pub fn weights(v: &[(i64, i64)]) -> Weights {
    Weights::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero, non-unit monomial ideal with `1..=max_gens` generators and
/// exponents at most `max_exp`.
pub fn random_ideal(rng: &mut impl Rng, dim: usize, max_exp: u32, max_gens: usize) -> MonomialIdeal {
    loop {
        let count = rng.gen_range(1..=max_gens);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..=max_exp)).collect())
            .collect();
        let a = MonomialIdeal::new(dim, gens).unwrap();
        if !a.is_unit() {
            return a;
        }
    }
}

/// Like [`random_ideal`] but may return the unit ideal.
pub fn random_ideal_or_unit(rng: &mut impl Rng, dim: usize, max_exp: u32, max_gens: usize) -> MonomialIdeal {
    if rng.gen_ratio(1, 6) {
        MonomialIdeal::unit(dim)
    } else {
        random_ideal(rng, dim, max_exp, max_gens)
    }
}

/// Random weights `p/q` with `p <= 6`, `q <= 5`, not all zero.
pub fn random_weights(rng: &mut impl Rng, dim: usize, allow_zero: bool) -> Weights {
    loop {
        let low = if allow_zero { 0 } else { 1 };
        let w: Vec<Rational> = (0..dim)
            .map(|_| q(rng.gen_range(low..=6), rng.gen_range(1..=5)))
            .collect();
        if let Ok(w) = Weights::new(w) {
            return w;
        }
    }
}

/// An approximation sequence with `1..=4` steps, multiplicities multiplying
/// by 2 or 3 at each step.
pub fn random_approx_seq(rng: &mut impl Rng) -> ApproxSeq {
    let steps = rng.gen_range(1..=4);
    let mut alpha = int(1);
    let mut m = 1u32;
    let mut out = Vec::new();
    for j in 0..steps {
        alpha += q(rng.gen_range(1..=6), rng.gen_range(1..=4));
        if j > 0 {
            m *= rng.gen_range(2..=3);
        }
        out.push((alpha.clone(), m));
    }
    ApproxSeq::new(out).unwrap()
}

/// `(q, a)` pairs in dimensions 1 to 3 with small exponents, including the
/// named examples. Deterministic.
pub fn corpus() -> Vec<(MonomialIdeal, MonomialIdeal)> {
    let mut out = vec![
        (MonomialIdeal::unit(2), ideal(&[&[2, 0], &[0, 3]])),
        (ideal(&[&[1, 0]]), ideal(&[&[2, 0], &[0, 3]])),
        (ideal(&[&[1, 1]]), ideal(&[&[1, 1]])),
        (ideal(&[&[1, 0]]), ideal(&[&[2, 1]])),
        (MonomialIdeal::unit(3), ideal(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]])),
        (MonomialIdeal::unit(2), ideal(&[&[1, 0]])),
    ];
    for k in 1..=4u32 {
        for j in 0..=3u32 {
            out.push((ideal(&[&[j]]), ideal(&[&[k]])));
        }
    }
    let mut r = rng(0x5eed);
    for _ in 0..60 {
        out.push((random_ideal_or_unit(&mut r, 2, 3, 2), random_ideal(&mut r, 2, 4, 3)));
    }
    for _ in 0..24 {
        out.push((random_ideal_or_unit(&mut r, 3, 1, 2), random_ideal(&mut r, 3, 2, 3)));
    }
    out
}
