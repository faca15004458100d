//! Random inputs shared by the property and acceptance suites.
#![allow(dead_code)]

use ivqrof::measure::Subset;
use ivqrof::{Bum, FuzzyMeasure, IvqRofn, Permutation, Rung};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rung(q: u32) -> Rung {
    Rung::new(q).unwrap()
}

/// A value valid at `q`: `t+` uniform, `f+` uniform below the bound
/// `(1 - t+^q)^(1/q)`, lower ends uniform below the upper ones.
pub fn value<R: Rng>(rng: &mut R, q: Rung) -> IvqRofn {
    let qf = q.get() as f64;
    loop {
        let t_hi: f64 = rng.gen();
        let bound = (1.0 - t_hi.powf(qf)).max(0.0).powf(1.0 / qf);
        let f_hi = bound * rng.gen_range(0.0..0.999);
        let t_lo = t_hi * rng.gen::<f64>();
        let f_lo = f_hi * rng.gen::<f64>();
        if let Ok(a) = IvqRofn::new(t_lo, t_hi, f_lo, f_hi) {
            if a.is_valid(q) {
                return a;
            }
        }
    }
}

pub fn values<R: Rng>(rng: &mut R, n: usize, q: Rung) -> Vec<IvqRofn> {
    (0..n).map(|_| value(rng, q)).collect()
}

/// Uniform level values, a monotone repair pass (each subset raised to the
/// largest value among its one-element-smaller subsets), then the top
/// normalized to one.
pub fn capacity<R: Rng>(rng: &mut R, n: usize) -> FuzzyMeasure {
    let size = 1usize << n;
    let mut v: Vec<f64> = (0..size).map(|_| rng.gen()).collect();
    v[0] = 0.0;
    for bits in 1..size {
        let s = Subset::from_bits(bits as u32);
        for i in s.indices() {
            let below = v[bits & !(1 << i)];
            if below > v[bits] {
                v[bits] = below;
            }
        }
    }
    let top = v[size - 1];
    for x in v.iter_mut() {
        *x /= top;
    }
    v[size - 1] = 1.0;
    FuzzyMeasure::from_values(n, v).unwrap()
}

/// Non-negative weights summing to one.
pub fn weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let head: f64 = w[..n - 1].iter().sum();
    w[n - 1] = (1.0 - head).max(0.0);
    w
}

pub fn additive<R: Rng>(rng: &mut R, n: usize) -> FuzzyMeasure {
    FuzzyMeasure::additive(&weights(rng, n)).unwrap()
}

pub fn symmetric<R: Rng>(rng: &mut R, n: usize) -> FuzzyMeasure {
    FuzzyMeasure::symmetric(&weights(rng, n)).unwrap()
}

pub fn bum<R: Rng>(rng: &mut R) -> Bum {
    match rng.gen_range(0..3) {
        0 => Bum::Identity,
        1 => Bum::Power(rng.gen_range(0.2..4.0)),
        _ => {
            let x = rng.gen_range(0.1..0.9);
            let y = rng.gen_range(0.0..1.0);
            Bum::PiecewiseLinear(vec![(0.0, 0.0), (x, y), (1.0, 1.0)])
        }
    }
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    Permutation::new(idx).unwrap()
}

/// `out[mapping[i]] = items[i]`, matching [`FuzzyMeasure::relabel`].
pub fn scatter<T: Clone>(items: &[T], mapping: &Permutation) -> Vec<T> {
    let mut out = items.to_vec();
    for (i, &j) in mapping.as_slice().iter().enumerate() {
        out[j] = items[i].clone();
    }
    out
}

pub fn max_diff(a: &IvqRofn, b: &IvqRofn) -> f64 {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Componentwise lower and upper envelopes: smallest t with largest f and
/// the reverse.
pub fn envelopes(items: &[IvqRofn]) -> (IvqRofn, IvqRofn) {
    let col = |k: usize| items.iter().map(move |a| a.to_array()[k]);
    let min = |k| col(k).fold(f64::INFINITY, f64::min);
    let max = |k| col(k).fold(f64::NEG_INFINITY, f64::max);
    (
        IvqRofn::new(min(0), min(1), max(2), max(3)).unwrap(),
        IvqRofn::new(max(0), max(1), min(2), min(3)).unwrap(),
    )
}

// proptest strategies

pub fn arb_rung() -> impl Strategy<Value = Rung> {
    (1u32..=5).prop_map(rung)
}

/// A value together with a rung it is valid at.
pub fn arb_value() -> impl Strategy<Value = (IvqRofn, Rung)> {
    (
        arb_rung(),
        0.0..1.0f64,
        0.0..0.999f64,
        0.0..1.0f64,
        0.0..1.0f64,
    )
        .prop_filter_map("valid at q", |(q, t_hi, fu, tl, fl)| {
            let qf = q.get() as f64;
            let f_hi = (1.0 - t_hi.powf(qf)).max(0.0).powf(1.0 / qf) * fu;
            let a = IvqRofn::new(t_hi * tl, t_hi, f_hi * fl, f_hi).ok()?;
            a.is_valid(q).then_some((a, q))
        })
}

/// `n` values valid at a common rung, plus a capacity on `n` elements.
pub fn arb_instance() -> impl Strategy<Value = (Vec<IvqRofn>, FuzzyMeasure, Rung)> {
    (2usize..=5, arb_rung(), any::<u64>()).prop_map(|(n, q, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (values(&mut rng, n, q), capacity(&mut rng, n), q)
    })
}
