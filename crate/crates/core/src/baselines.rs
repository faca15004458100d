//! Interval-valued intuitionistic baselines (`q = 1`): a Choquet geometric
//! operator in the standard form and an Einstein geometric Choquet integral.
//!
//! Both sort ascending and weigh with the suffix chain by default. Ascending
//! plus suffix chain gives each item the same weight as descending plus prefix
//! chain, so the two conventions only differ on ties. [`ChainConvention`]
//! lets callers try the other combinations.

use crate::choquet::SortOrder;
use crate::error::{Error, Result};
use crate::ivqrof::{IvqRofn, Rung};
use crate::measure::{chain_weights, reverse_chain_weights, FuzzyMeasure, Permutation};
use crate::numeric::weighted_product;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    /// `B_k = {σ(1), …, σ(k)}`
    Prefix,
    /// `B_k = {σ(k), …, σ(n)}`
    Suffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainConvention {
    pub order: SortOrder,
    pub chain: Chain,
}

impl Default for ChainConvention {
    fn default() -> Self {
        ChainConvention {
            order: SortOrder::Ascending,
            chain: Chain::Suffix,
        }
    }
}

impl ChainConvention {
    /// The four sort/chain combinations.
    pub const ALL: [ChainConvention; 4] = [
        ChainConvention {
            order: SortOrder::Ascending,
            chain: Chain::Suffix,
        },
        ChainConvention {
            order: SortOrder::Ascending,
            chain: Chain::Prefix,
        },
        ChainConvention {
            order: SortOrder::Descending,
            chain: Chain::Suffix,
        },
        ChainConvention {
            order: SortOrder::Descending,
            chain: Chain::Prefix,
        },
    ];

    pub fn label(&self) -> String {
        let chain = match self.chain {
            Chain::Prefix => "prefix",
            Chain::Suffix => "suffix",
        };
        format!("{}/{}", self.order, chain)
    }
}

fn weights(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    convention: ChainConvention,
) -> Result<(Permutation, Vec<f64>)> {
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    if items.len() != m.len() {
        return Err(Error::SizeMismatch {
            expected: m.len(),
            actual: items.len(),
        });
    }
    let sigma = crate::choquet::sort_items(items, Rung::ONE, convention.order)?;
    let w = match convention.chain {
        Chain::Prefix => chain_weights(m, &sigma)?,
        Chain::Suffix => reverse_chain_weights(m, &sigma)?,
    };
    Ok((sigma, w))
}

fn slot_terms<'a>(
    items: &'a [IvqRofn],
    sigma: &'a Permutation,
    w: &'a [f64],
    slot: usize,
    g: impl Fn(f64) -> f64 + 'a,
) -> impl Iterator<Item = (f64, f64)> + 'a {
    sigma
        .as_slice()
        .iter()
        .zip(w)
        .map(move |(&i, &wk)| (g(items[i].to_array()[slot]), wk))
}

/// `t = Π t^w`, `f = 1 − Π(1 − f)^w`.
pub fn giifga(items: &[IvqRofn], m: &FuzzyMeasure) -> Result<IvqRofn> {
    giifga_with(items, m, ChainConvention::default())
}

pub fn giifga_with(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    convention: ChainConvention,
) -> Result<IvqRofn> {
    let (sigma, w) = weights(items, m, convention)?;
    let t = |slot| weighted_product(slot_terms(items, &sigma, &w, slot, |x| x));
    let f = |slot| 1.0 - weighted_product(slot_terms(items, &sigma, &w, slot, |x| 1.0 - x));
    Ok(IvqRofn::from_computed(t(0), t(1), f(2), f(3)).settle(Rung::ONE))
}

/// Einstein geometric Choquet integral:
/// `t = 2Π t^w / (Π(2 − t)^w + Π t^w)`,
/// `f = (Π(1 + f)^w − Π(1 − f)^w) / (Π(1 + f)^w + Π(1 − f)^w)`.
pub fn ivifegc(items: &[IvqRofn], m: &FuzzyMeasure) -> Result<IvqRofn> {
    ivifegc_with(items, m, ChainConvention::default())
}

pub fn ivifegc_with(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    convention: ChainConvention,
) -> Result<IvqRofn> {
    let (sigma, w) = weights(items, m, convention)?;
    let prod = |slot, g: fn(f64) -> f64| weighted_product(slot_terms(items, &sigma, &w, slot, g));
    let t = |slot| {
        let p = prod(slot, |x| x);
        let r = prod(slot, |x| 2.0 - x);
        2.0 * p / (r + p)
    };
    let f = |slot| {
        let plus = prod(slot, |x| 1.0 + x);
        let minus = prod(slot, |x| 1.0 - x);
        (plus - minus) / (plus + minus)
    };
    Ok(IvqRofn::from_computed(t(0), t(1), f(2), f(3)).settle(Rung::ONE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choquet::choquet_geometric;

    fn v(a: f64, b: f64, c: f64, d: f64) -> IvqRofn {
        IvqRofn::new(a, b, c, d).unwrap()
    }

    fn assert_close(a: &IvqRofn, b: [f64; 4], tol: f64) {
        for (x, y) in a.to_array().iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a} vs {b:?}");
        }
    }

    #[test]
    fn idempotent() {
        let a = v(0.2, 0.45, 0.3, 0.5);
        let m = FuzzyMeasure::symmetric(&[0.4, 0.33, 0.27]).unwrap();
        for conv in ChainConvention::ALL {
            assert_close(
                &giifga_with(&[a; 3], &m, conv).unwrap(),
                a.to_array(),
                1e-12,
            );
            assert_close(
                &ivifegc_with(&[a; 3], &m, conv).unwrap(),
                a.to_array(),
                1e-12,
            );
        }
    }

    #[test]
    fn geometric_mean_of_two() {
        let items = [v(0.4, 0.5, 0.3, 0.4), v(0.2, 0.3, 0.5, 0.6)];
        let m = FuzzyMeasure::additive(&[0.5, 0.5]).unwrap();
        let g = giifga(&items, &m).unwrap();
        assert_close(
            &g,
            [
                0.282_842_712_474_619,
                0.387_298_334_620_741_7,
                0.408_392_021_690_038_4,
                0.510_102_051_443_364_4,
            ],
            1e-15,
        );
        assert!((g.t().lo() - (0.4f64 * 0.2).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn einstein_two_items() {
        let items = [v(0.4, 0.5, 0.3, 0.4), v(0.2, 0.3, 0.5, 0.6)];
        let m = FuzzyMeasure::additive(&[0.5, 0.5]).unwrap();
        let got = ivifegc(&items, &m).unwrap();
        assert_close(
            &got,
            [
                0.285_714_285_714_285_7,
                0.390_388_203_202_207_6,
                0.404_830_522_383_855_86,
                0.506_787_888_807_065_6,
            ],
            1e-15,
        );
        // straight-line evaluation with equal weights
        let t = |a: f64, b: f64| {
            let p = (a * b).sqrt();
            2.0 * p / (((2.0 - a) * (2.0 - b)).sqrt() + p)
        };
        let f = |a: f64, b: f64| {
            let plus = ((1.0 + a) * (1.0 + b)).sqrt();
            let minus = ((1.0 - a) * (1.0 - b)).sqrt();
            (plus - minus) / (plus + minus)
        };
        assert_close(
            &got,
            [t(0.4, 0.2), t(0.5, 0.3), f(0.3, 0.5), f(0.4, 0.6)],
            1e-15,
        );
    }

    #[test]
    fn boundary_absorption() {
        let items = [v(1.0, 1.0, 0.0, 0.0), v(1.0, 1.0, 0.0, 0.0)];
        let m = FuzzyMeasure::additive(&[0.3, 0.7]).unwrap();
        assert_close(&ivifegc(&items, &m).unwrap(), [1.0, 1.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn matches_choquet_geometric_on_symmetric_capacity() {
        let items = [
            v(0.4, 0.5, 0.3, 0.4),
            v(0.3, 0.4, 0.4, 0.5),
            v(0.2, 0.5, 0.3, 0.4),
        ];
        let m = FuzzyMeasure::symmetric(&[0.5, 0.3, 0.2]).unwrap();
        let cg = choquet_geometric(&items, &m, Rung::ONE).unwrap();
        assert_close(&giifga(&items, &m).unwrap(), cg.to_array(), 1e-12);
    }

    #[test]
    fn ascending_suffix_equals_descending_prefix() {
        let items = [
            v(0.4, 0.5, 0.3, 0.4),
            v(0.6, 0.7, 0.2, 0.3),
            v(0.1, 0.3, 0.5, 0.6),
        ];
        let m =
            FuzzyMeasure::from_values(3, vec![0.0, 0.2, 0.5, 0.6, 0.1, 0.35, 0.8, 1.0]).unwrap();
        let a = giifga(&items, &m).unwrap();
        let d = giifga_with(
            &items,
            &m,
            ChainConvention {
                order: SortOrder::Descending,
                chain: Chain::Prefix,
            },
        )
        .unwrap();
        assert_close(&a, d.to_array(), 1e-15);
    }

    #[test]
    fn rejects_items_invalid_at_one() {
        let m = FuzzyMeasure::additive(&[1.0]).unwrap();
        assert!(matches!(
            giifga(&[v(0.7, 0.8, 0.3, 0.4)], &m),
            Err(Error::InvalidAtQ { q: 1, .. })
        ));
    }
}
