//! Fuzzy measures (capacities) on a finite indexed ground set.
//!
//! Subsets are bitmasks: bit `i` set means element `i` is present. A
//! [`FuzzyMeasure`] stores one value per subset and is validated on
//! construction to be grounded (`μ(∅) = 0`, `μ(X) = 1`) and monotone.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set accepted; the value table has `2^n` entries.
pub const MAX_GROUND_SET: usize = 20;

/// Tolerance used by the additivity and symmetry checks.
pub const STRUCTURE_TOLERANCE: f64 = 1e-9;

/// A subset of `{0, …, n−1}` encoded as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A bijection on `{0, …, n−1}`; `order[k]` is the element in position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{order:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn reversed(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Applies the permutation: `out[k] = items[order[k]]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| items[i].clone()).collect()
    }
}

/// A capacity: grounded, monotone set function on `2^X`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMeasure {
    n: usize,
    values: Vec<f64>,
}

impl FuzzyMeasure {
    /// Builds a measure from a subset table. The empty and full sets may be
    /// omitted and default to 0 and 1; every other subset must be present.
    pub fn from_table(n: usize, entries: &BTreeMap<Subset, f64>) -> Result<Self> {
        check_size(n)?;
        let full = Subset::full(n);
        let mut values = vec![f64::NAN; 1 << n];
        for (&subset, &value) in entries {
            if !subset.is_subset_of(full) {
                return Err(Error::BadSubset(subset.to_string()));
            }
            if !value.is_finite() {
                return Err(Error::NonFinite { value });
            }
            values[subset.bits() as usize] = value;
        }
        if values[0].is_nan() {
            values[0] = 0.0;
        }
        let top = full.bits() as usize;
        if values[top].is_nan() {
            values[top] = 1.0;
        }
        if let Some(missing) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::MissingSubset(Subset(missing as u32).to_string()));
        }
        Self::from_values(n, values)
    }

    /// Builds a measure from a dense table indexed by subset bitmask.
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if values.len() != 1 << n {
            return Err(Error::SizeMismatch {
                expected: 1 << n,
                actual: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { value });
        }
        if values[0] != 0.0 {
            return Err(Error::NotGrounded(format!("mu(empty) = {}", values[0])));
        }
        let top = values[values.len() - 1];
        if top != 1.0 {
            return Err(Error::NotGrounded(format!("mu(X) = {top}")));
        }
        // B ⊂ B ∪ {i} for every B and i ∉ B covers all inclusions by transitivity.
        for bits in 0..values.len() {
            for i in 0..n {
                let larger = bits | (1 << i);
                if larger != bits && values[bits] > values[larger] {
                    return Err(Error::NotMonotone {
                        smaller: Subset(bits as u32).to_string(),
                        smaller_value: values[bits],
                        larger: Subset(larger as u32).to_string(),
                        larger_value: values[larger],
                    });
                }
            }
        }
        Ok(FuzzyMeasure { n, values })
    }

    /// `μ(B) = Σ_{i∈B} w_i`. Weights must be non-negative and sum to 1
    /// within `1e-9`; they are renormalised exactly.
    pub fn additive(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        check_size(n)?;
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let weights = normalized_weights(weights)?;
        let mut values = vec![0.0; 1 << n];
        for bits in 1..values.len() {
            let low = bits.trailing_zeros() as usize;
            values[bits] = values[bits & (bits - 1)] + weights[low];
        }
        let top = values.len() - 1;
        values[top] = 1.0;
        for v in values.iter_mut() {
            *v = v.min(1.0);
        }
        Self::from_values(n, values)
    }

    /// `μ(B) = Σ_{k ≤ |B|} λ_k`, a measure that only sees cardinality.
    pub fn symmetric(order_weights: &[f64]) -> Result<Self> {
        let n = order_weights.len();
        check_size(n)?;
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let lambda = normalized_weights(order_weights)?;
        let mut cumulative = vec![0.0; n + 1];
        for k in 1..=n {
            cumulative[k] = (cumulative[k - 1] + lambda[k - 1]).min(1.0);
        }
        cumulative[n] = 1.0;
        let values = (0..1usize << n)
            .map(|bits| cumulative[bits.count_ones() as usize])
            .collect();
        Self::from_values(n, values)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn value(&self, subset: Subset) -> Result<f64> {
        if !subset.is_subset_of(Subset::full(self.n)) {
            return Err(Error::BadSubset(subset.to_string()));
        }
        Ok(self.values[subset.bits() as usize])
    }

    pub(crate) fn at(&self, subset: Subset) -> f64 {
        self.values[subset.bits() as usize]
    }

    pub fn singletons(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.at(Subset::singleton(i))).collect()
    }

    /// Subset/value pairs for every non-empty proper subset.
    pub fn proper_entries(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        let top = self.values.len() - 1;
        (1..top).map(|bits| (Subset(bits as u32), self.values[bits]))
    }

    /// Checks `μ(B) = Σ_{i∈B} μ({i})` on every subset, which is equivalent to
    /// additivity on disjoint pairs.
    pub fn check_additive(&self) -> Result<()> {
        let singletons = self.singletons();
        for bits in 1..self.values.len() {
            let subset = Subset(bits as u32);
            let sum: f64 = subset.indices().map(|i| singletons[i]).sum();
            if (sum - self.values[bits]).abs() > STRUCTURE_TOLERANCE {
                return Err(Error::NotAdditive {
                    subset: subset.to_string(),
                    value: self.values[bits],
                    sum,
                });
            }
        }
        Ok(())
    }

    pub fn is_additive(&self) -> bool {
        self.check_additive().is_ok()
    }

    /// Order weights `λ_k = μ(size k) − μ(size k−1)` if `μ` depends only on
    /// cardinality.
    pub fn symmetric_order_weights(&self) -> Result<Vec<f64>> {
        let mut by_size = vec![None; self.n + 1];
        for bits in 0..self.values.len() {
            let size = (bits as u32).count_ones() as usize;
            match by_size[size] {
                None => by_size[size] = Some(self.values[bits]),
                Some(v) if (v - self.values[bits]).abs() > STRUCTURE_TOLERANCE => {
                    return Err(Error::NotSymmetric { size });
                }
                Some(_) => {}
            }
        }
        let levels: Vec<f64> = by_size.into_iter().map(|v| v.unwrap_or(0.0)).collect();
        Ok(levels.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// Relabels elements: element `i` of `self` becomes element `mapping[i]`.
    pub fn relabel(&self, mapping: &Permutation) -> Result<Self> {
        if mapping.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: mapping.len(),
            });
        }
        let mut values = vec![0.0; self.values.len()];
        for (bits, &v) in self.values.iter().enumerate() {
            let image = Subset(bits as u32)
                .indices()
                .fold(Subset::EMPTY, |acc, i| acc.insert(mapping.as_slice()[i]));
            values[image.bits() as usize] = v;
        }
        Self::from_values(self.n, values)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_GROUND_SET {
        Err(Error::GroundSetTooLarge(n))
    } else {
        Ok(())
    }
}

/// Rejects negative weights and sums farther than `1e-9` from one, then
/// rescales to sum to one.
pub fn normalized_weights(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(Error::EmptyInput);
    }
    for &w in weights {
        if !w.is_finite() {
            return Err(Error::NonFinite { value: w });
        }
        if w < 0.0 {
            return Err(Error::NegativeWeight(w));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > STRUCTURE_TOLERANCE {
        return Err(Error::WeightSumNotOne(sum));
    }
    Ok(weights.iter().map(|w| w / sum).collect())
}

fn check_permutation(m: &FuzzyMeasure, sigma: &Permutation) -> Result<()> {
    if sigma.len() != m.len() {
        Err(Error::SizeMismatch {
            expected: m.len(),
            actual: sigma.len(),
        })
    } else {
        Ok(())
    }
}

/// Marginal weights along the prefix chain `B_k = {σ(1), …, σ(k)}`:
/// `w_k = μ(B_k) − μ(B_{k−1})`.
pub fn chain_weights(m: &FuzzyMeasure, sigma: &Permutation) -> Result<Vec<f64>> {
    check_permutation(m, sigma)?;
    let mut chain = Subset::EMPTY;
    let mut previous = 0.0;
    Ok(sigma
        .as_slice()
        .iter()
        .map(|&i| {
            chain = chain.insert(i);
            let current = m.at(chain);
            let w = current - previous;
            previous = current;
            w
        })
        .collect())
}

/// Marginal weights along the suffix chain `B_k = {σ(k), …, σ(n)}`:
/// `w_k = μ(B_k) − μ(B_{k+1})`.
pub fn reverse_chain_weights(m: &FuzzyMeasure, sigma: &Permutation) -> Result<Vec<f64>> {
    check_permutation(m, sigma)?;
    let mut weights = chain_weights(m, &sigma.reversed())?;
    weights.reverse();
    Ok(weights)
}

/// Discrete Choquet integral of a non-negative function given by its values
/// on the ground set.
pub fn scalar_choquet(f: &[f64], m: &FuzzyMeasure) -> Result<f64> {
    if f.len() != m.len() {
        return Err(Error::SizeMismatch {
            expected: m.len(),
            actual: f.len(),
        });
    }
    for &x in f {
        if !x.is_finite() {
            return Err(Error::NonFinite { value: x });
        }
        if x < 0.0 {
            return Err(Error::NegativeInput(x));
        }
    }
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[b].total_cmp(&f[a]));
    let sigma = Permutation(order);
    let weights = chain_weights(m, &sigma)?;
    Ok(sigma
        .as_slice()
        .iter()
        .zip(&weights)
        .map(|(&i, w)| f[i] * w)
        .sum())
}
