//! Choquet averaging and geometric operators over IVq-ROFNs.
//!
//! Every operator sorts its inputs, derives one weight per sorted position
//! and evaluates a closed form:
//!
//! * averaging: `t = (1 − Π(1 − t^q)^w)^{1/q}`, `f = Π f^w`
//! * geometric: `t = Π t^w`, `f = (1 − Π(1 − f^q)^w)^{1/q}`
//!
//! The variants differ only in where the weights come from: capacity chain
//! differences (CA/CG), singleton measures (WCA/WCG), order weights (OCA/OCG)
//! or a BUM function over cumulative singleton weights (OWCA/OWCG).
//!
//! [`choquet_average_oracle`] and [`choquet_geometric_oracle`] evaluate the
//! same integrals by iterating `oplus`/`scalar_mul` (or `otimes`/`power`) and
//! exist to cross-check the closed forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines;
use crate::bum::{bum_order_weights, Bum};
use crate::error::{Error, Result};
use crate::ivqrof::{IvqRofn, Rung};
use crate::measure::{chain_weights, normalized_weights, FuzzyMeasure, Permutation};
use crate::numeric::{probabilistic_sum, weighted_product};

/// How inputs are ordered before chain weights are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortOrder {
    /// Non-increasing under score/accuracy comparison.
    #[default]
    #[serde(rename = "desc")]
    Descending,
    /// Non-decreasing under score/accuracy comparison.
    #[serde(rename = "asc")]
    Ascending,
    /// No sorting; the chain follows the declaration order.
    Declared,
}

impl fmt::Display for SortOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SortOrder::Descending => "desc",
            SortOrder::Ascending => "asc",
            SortOrder::Declared => "declared",
        })
    }
}

impl FromStr for SortOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desc" => Ok(SortOrder::Descending),
            "asc" => Ok(SortOrder::Ascending),
            "declared" => Ok(SortOrder::Declared),
            _ => Err(Error::Parse(format!(
                "unknown order `{s}` (desc|asc|declared)"
            ))),
        }
    }
}

fn check_items(items: &[IvqRofn], q: Rung) -> Result<()> {
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    items.iter().try_for_each(|a| a.ensure_valid(q))
}

fn check_len(items: &[IvqRofn], n: usize) -> Result<()> {
    if items.len() != n {
        Err(Error::SizeMismatch {
            expected: n,
            actual: items.len(),
        })
    } else {
        Ok(())
    }
}

/// Permutation listing items from largest to smallest; ties keep the
/// original index order.
pub fn sort_desc(items: &[IvqRofn], q: Rung) -> Result<Permutation> {
    sort_items(items, q, SortOrder::Descending)
}

pub fn sort_items(items: &[IvqRofn], q: Rung, order: SortOrder) -> Result<Permutation> {
    check_items(items, q)?;
    let mut idx: Vec<usize> = (0..items.len()).collect();
    match order {
        SortOrder::Descending => idx.sort_by(|&a, &b| items[b].compare(&items[a], q)),
        SortOrder::Ascending => idx.sort_by(|&a, &b| items[a].compare(&items[b], q)),
        SortOrder::Declared => {}
    }
    Permutation::new(idx)
}

/// Averaging closed form with `weights[k]` attached to `items[sigma[k]]`.
fn average_closed(items: &[IvqRofn], sigma: &Permutation, weights: &[f64], q: Rung) -> IvqRofn {
    let terms = |slot: usize| {
        sigma
            .as_slice()
            .iter()
            .zip(weights)
            .map(move |(&i, &w)| (items[i].to_array()[slot], w))
    };
    let grow = |slot| q.root(probabilistic_sum(terms(slot).map(|(x, w)| (q.pow(x), w))));
    IvqRofn::from_computed(
        grow(0),
        grow(1),
        weighted_product(terms(2)),
        weighted_product(terms(3)),
    )
    .settle(q)
}

/// Geometric closed form; the complement-dual of [`average_closed`].
fn geometric_closed(items: &[IvqRofn], sigma: &Permutation, weights: &[f64], q: Rung) -> IvqRofn {
    let complements: Vec<IvqRofn> = items.iter().map(IvqRofn::complement).collect();
    average_closed(&complements, sigma, weights, q).complement()
}

/// IVq-ROF Choquet average with inputs sorted descending.
pub fn choquet_average(items: &[IvqRofn], m: &FuzzyMeasure, q: Rung) -> Result<IvqRofn> {
    choquet_average_ordered(items, m, q, SortOrder::Descending)
}

pub fn choquet_average_ordered(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    q: Rung,
    order: SortOrder,
) -> Result<IvqRofn> {
    check_len(items, m.len())?;
    let sigma = sort_items(items, q, order)?;
    choquet_average_with(items, m, &sigma, q)
}

/// Choquet average along an explicit permutation instead of the sort.
pub fn choquet_average_with(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    sigma: &Permutation,
    q: Rung,
) -> Result<IvqRofn> {
    check_len(items, m.len())?;
    check_items(items, q)?;
    let w = chain_weights(m, sigma)?;
    Ok(average_closed(items, sigma, &w, q))
}

/// IVq-ROF Choquet geometric mean with inputs sorted descending.
pub fn choquet_geometric(items: &[IvqRofn], m: &FuzzyMeasure, q: Rung) -> Result<IvqRofn> {
    choquet_geometric_ordered(items, m, q, SortOrder::Descending)
}

pub fn choquet_geometric_ordered(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    q: Rung,
    order: SortOrder,
) -> Result<IvqRofn> {
    check_len(items, m.len())?;
    let sigma = sort_items(items, q, order)?;
    choquet_geometric_with(items, m, &sigma, q)
}

pub fn choquet_geometric_with(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    sigma: &Permutation,
    q: Rung,
) -> Result<IvqRofn> {
    check_len(items, m.len())?;
    check_items(items, q)?;
    let w = chain_weights(m, sigma)?;
    Ok(geometric_closed(items, sigma, &w, q))
}

/// Weighted average with the singleton values of an additive measure as
/// exponents. No sorting is involved.
pub fn weighted_average(items: &[IvqRofn], m: &FuzzyMeasure, q: Rung) -> Result<IvqRofn> {
    let (sigma, w) = additive_weights(items, m, q)?;
    Ok(average_closed(items, &sigma, &w, q))
}

pub fn weighted_geometric(items: &[IvqRofn], m: &FuzzyMeasure, q: Rung) -> Result<IvqRofn> {
    let (sigma, w) = additive_weights(items, m, q)?;
    Ok(geometric_closed(items, &sigma, &w, q))
}

fn additive_weights(
    items: &[IvqRofn],
    m: &FuzzyMeasure,
    q: Rung,
) -> Result<(Permutation, Vec<f64>)> {
    check_len(items, m.len())?;
    check_items(items, q)?;
    m.check_additive()?;
    Ok((Permutation::identity(items.len()), m.singletons()))
}

/// Order weights `λ_k` applied to the k-th largest item.
pub fn ordered_average(items: &[IvqRofn], lambda: &[f64], q: Rung) -> Result<IvqRofn> {
    ordered_average_with_order(items, lambda, q, SortOrder::Descending)
}

pub fn ordered_average_with_order(
    items: &[IvqRofn],
    lambda: &[f64],
    q: Rung,
    order: SortOrder,
) -> Result<IvqRofn> {
    let (sigma, w) = order_weights(items, lambda, q, order)?;
    Ok(average_closed(items, &sigma, &w, q))
}

pub fn ordered_geometric(items: &[IvqRofn], lambda: &[f64], q: Rung) -> Result<IvqRofn> {
    ordered_geometric_with_order(items, lambda, q, SortOrder::Descending)
}

pub fn ordered_geometric_with_order(
    items: &[IvqRofn],
    lambda: &[f64],
    q: Rung,
    order: SortOrder,
) -> Result<IvqRofn> {
    let (sigma, w) = order_weights(items, lambda, q, order)?;
    Ok(geometric_closed(items, &sigma, &w, q))
}

fn order_weights(
    items: &[IvqRofn],
    lambda: &[f64],
    q: Rung,
    order: SortOrder,
) -> Result<(Permutation, Vec<f64>)> {
    check_len(items, lambda.len())?;
    let w = normalized_weights(lambda)?;
    Ok((sort_items(items, q, order)?, w))
}

/// Order weights derived from a BUM function over cumulative singleton
/// weights taken in sorted order.
pub fn bum_weighted_average(
    items: &[IvqRofn],
    bum: &Bum,
    singleton_weights: &[f64],
    q: Rung,
) -> Result<IvqRofn> {
    bum_weighted_average_with_order(items, bum, singleton_weights, q, SortOrder::Descending)
}

pub fn bum_weighted_average_with_order(
    items: &[IvqRofn],
    bum: &Bum,
    singleton_weights: &[f64],
    q: Rung,
    order: SortOrder,
) -> Result<IvqRofn> {
    let (sigma, w) = bum_weights(items, bum, singleton_weights, q, order)?;
    Ok(average_closed(items, &sigma, &w, q))
}

pub fn bum_weighted_geometric(
    items: &[IvqRofn],
    bum: &Bum,
    singleton_weights: &[f64],
    q: Rung,
) -> Result<IvqRofn> {
    bum_weighted_geometric_with_order(items, bum, singleton_weights, q, SortOrder::Descending)
}

pub fn bum_weighted_geometric_with_order(
    items: &[IvqRofn],
    bum: &Bum,
    singleton_weights: &[f64],
    q: Rung,
    order: SortOrder,
) -> Result<IvqRofn> {
    let (sigma, w) = bum_weights(items, bum, singleton_weights, q, order)?;
    Ok(geometric_closed(items, &sigma, &w, q))
}

fn bum_weights(
    items: &[IvqRofn],
    bum: &Bum,
    singleton_weights: &[f64],
    q: Rung,
    order: SortOrder,
) -> Result<(Permutation, Vec<f64>)> {
    check_len(items, singleton_weights.len())?;
    let sigma = sort_items(items, q, order)?;
    let w = bum_order_weights(bum, singleton_weights, &sigma)?;
    Ok((sigma, w))
}

/// `w₁·a_{σ(1)} ⊕ … ⊕ w_n·a_{σ(n)}` evaluated term by term.
pub fn choquet_average_oracle(items: &[IvqRofn], m: &FuzzyMeasure, q: Rung) -> Result<IvqRofn> {
    check_len(items, m.len())?;
    let sigma = sort_desc(items, q)?;
    let w = chain_weights(m, &sigma)?;
    let mut terms = sigma
        .as_slice()
        .iter()
        .zip(&w)
        .map(|(&i, &wk)| items[i].scalar_mul_unchecked(wk.max(0.0), q));
    let first = terms.next().ok_or(Error::EmptyInput)?;
    Ok(terms.fold(first, |acc, t| acc.oplus_unchecked(&t, q)))
}

/// `a_{σ(1)}^{w₁} ⊗ … ⊗ a_{σ(n)}^{w_n}` evaluated term by term.
pub fn choquet_geometric_oracle(items: &[IvqRofn], m: &FuzzyMeasure, q: Rung) -> Result<IvqRofn> {
    check_len(items, m.len())?;
    let sigma = sort_desc(items, q)?;
    let w = chain_weights(m, &sigma)?;
    let mut terms = sigma
        .as_slice()
        .iter()
        .zip(&w)
        .map(|(&i, &wk)| items[i].power_unchecked(wk.max(0.0), q));
    let first = terms.next().ok_or(Error::EmptyInput)?;
    Ok(terms.fold(first, |acc, t| acc.otimes_unchecked(&t, q)))
}

/// Operator names accepted by the pipeline and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Ca,
    Cg,
    Wca,
    Oca,
    Owca,
    Wcg,
    Ocg,
    Owcg,
    Giifga,
    Ivifegc,
}

impl Operator {
    pub const ALL: [Operator; 10] = [
        Operator::Ca,
        Operator::Cg,
        Operator::Wca,
        Operator::Oca,
        Operator::Owca,
        Operator::Wcg,
        Operator::Ocg,
        Operator::Owcg,
        Operator::Giifga,
        Operator::Ivifegc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Ca => "ca",
            Operator::Cg => "cg",
            Operator::Wca => "wca",
            Operator::Oca => "oca",
            Operator::Owca => "owca",
            Operator::Wcg => "wcg",
            Operator::Ocg => "ocg",
            Operator::Owcg => "owcg",
            Operator::Giifga => "giifga",
            Operator::Ivifegc => "ivifegc",
        }
    }

    /// The two interval-valued intuitionistic baselines, defined at `q = 1`
    /// only.
    pub fn is_baseline(self) -> bool {
        matches!(self, Operator::Giifga | Operator::Ivifegc)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        let key = key.trim_start_matches("ivqrof");
        Operator::ALL
            .into_iter()
            .find(|op| op.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown operator `{s}`")))
    }
}

/// An operator bound to its weighting data.
#[derive(Debug, Clone, PartialEq)]
pub enum Aggregation {
    Ca(FuzzyMeasure),
    Cg(FuzzyMeasure),
    Wca(FuzzyMeasure),
    Wcg(FuzzyMeasure),
    Oca(Vec<f64>),
    Ocg(Vec<f64>),
    Owca { bum: Bum, weights: Vec<f64> },
    Owcg { bum: Bum, weights: Vec<f64> },
    Giifga(FuzzyMeasure),
    Ivifegc(FuzzyMeasure),
}

impl Aggregation {
    /// Derives the payload an operator needs from a capacity:
    ///
    /// * CA/CG and the baselines use the capacity as is.
    /// * WCA/WCG require it to be additive.
    /// * OCA/OCG require it to depend on cardinality only and read
    ///   `λ_k = μ(size k) − μ(size k−1)`.
    /// * OWCA/OWCG take its singleton values, which must sum to one.
    pub fn from_measure(op: Operator, m: &FuzzyMeasure, bum: &Bum) -> Result<Self> {
        Ok(match op {
            Operator::Ca => Aggregation::Ca(m.clone()),
            Operator::Cg => Aggregation::Cg(m.clone()),
            Operator::Wca | Operator::Wcg => {
                m.check_additive()?;
                if op == Operator::Wca {
                    Aggregation::Wca(m.clone())
                } else {
                    Aggregation::Wcg(m.clone())
                }
            }
            Operator::Oca => Aggregation::Oca(m.symmetric_order_weights()?),
            Operator::Ocg => Aggregation::Ocg(m.symmetric_order_weights()?),
            Operator::Owca | Operator::Owcg => {
                bum.validate()?;
                let weights = normalized_weights(&m.singletons())?;
                if op == Operator::Owca {
                    Aggregation::Owca {
                        bum: bum.clone(),
                        weights,
                    }
                } else {
                    Aggregation::Owcg {
                        bum: bum.clone(),
                        weights,
                    }
                }
            }
            Operator::Giifga => Aggregation::Giifga(m.clone()),
            Operator::Ivifegc => Aggregation::Ivifegc(m.clone()),
        })
    }

    pub fn operator(&self) -> Operator {
        match self {
            Aggregation::Ca(_) => Operator::Ca,
            Aggregation::Cg(_) => Operator::Cg,
            Aggregation::Wca(_) => Operator::Wca,
            Aggregation::Wcg(_) => Operator::Wcg,
            Aggregation::Oca(_) => Operator::Oca,
            Aggregation::Ocg(_) => Operator::Ocg,
            Aggregation::Owca { .. } => Operator::Owca,
            Aggregation::Owcg { .. } => Operator::Owcg,
            Aggregation::Giifga(_) => Operator::Giifga,
            Aggregation::Ivifegc(_) => Operator::Ivifegc,
        }
    }

    /// Applies the operator. `order` controls the sort of the Choquet family;
    /// the baselines always use their own ascending/suffix convention and
    /// reject any `q` other than 1.
    pub fn apply(&self, items: &[IvqRofn], q: Rung, order: SortOrder) -> Result<IvqRofn> {
        match self {
            Aggregation::Ca(m) => choquet_average_ordered(items, m, q, order),
            Aggregation::Cg(m) => choquet_geometric_ordered(items, m, q, order),
            Aggregation::Wca(m) => weighted_average(items, m, q),
            Aggregation::Wcg(m) => weighted_geometric(items, m, q),
            Aggregation::Oca(l) => ordered_average_with_order(items, l, q, order),
            Aggregation::Ocg(l) => ordered_geometric_with_order(items, l, q, order),
            Aggregation::Owca { bum, weights } => {
                bum_weighted_average_with_order(items, bum, weights, q, order)
            }
            Aggregation::Owcg { bum, weights } => {
                bum_weighted_geometric_with_order(items, bum, weights, q, order)
            }
            Aggregation::Giifga(m) => {
                require_q1(Operator::Giifga, q)?;
                baselines::giifga(items, m)
            }
            Aggregation::Ivifegc(m) => {
                require_q1(Operator::Ivifegc, q)?;
                baselines::ivifegc(items, m)
            }
        }
    }
}

pub(crate) fn require_q1(op: Operator, q: Rung) -> Result<()> {
    if q.get() == 1 {
        Ok(())
    } else {
        Err(Error::BaselineRequiresQ1 {
            operator: op.name(),
            q: q.get(),
        })
    }
}
