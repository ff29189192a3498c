//! Canonical sparse storage for real symmetric tensors and the multilinear
//! evaluations everything else is built on.
//!
//! An order-k dimension-n symmetric tensor is stored as a map from sorted
//! multi-indices to values; the value of any permuted position equals the
//! canonical entry, so symmetry is structural rather than checked. Evaluation
//! weights each canonical entry by the number of distinct permutations of its
//! index.

use std::collections::BTreeMap;

use crate::comb::{distinct_permutations, for_each_sorted_multi_index};
use crate::error::{Error, Result};

/// A canonical (sorted, 0-based) multi-index of a symmetric tensor entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Sorts `indices` into canonical non-decreasing order.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        MultiIndex(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when all indices are equal, i.e. the entry sits on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of distinct permutations of this index.
    pub fn multiplicity(&self) -> u64 {
        distinct_permutations(&self.0)
    }
}

/// Order-k dimension-n real symmetric tensor in canonical sparse storage.
///
/// Zero entries are never stored, and values are finite by construction.
#[derive(Clone, Debug)]
pub struct SymTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<MultiIndex, f64>,
    symmetrized: bool,
}

/// Equality compares shape and entries; the symmetrization provenance flag
/// is metadata and does not participate.
impl PartialEq for SymTensor {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.dim == other.dim && self.entries == other.entries
    }
}

impl SymTensor {
    /// The zero tensor of the given shape.
    pub fn zero(order: usize, dim: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::OrderTooSmall(order));
        }
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(SymTensor {
            order,
            dim,
            entries: BTreeMap::new(),
            symmetrized: false,
        })
    }

    /// The diagonal ones tensor: entry 1 at (i, ..., i) for every i.
    pub fn identity(order: usize, dim: usize) -> Result<Self> {
        let mut t = Self::zero(order, dim)?;
        for i in 0..dim {
            t.entries.insert(MultiIndex(vec![i; order]), 1.0);
        }
        Ok(t)
    }

    /// The tensor with every one of the n^k positions equal to 1.
    pub fn all_ones(order: usize, dim: usize) -> Result<Self> {
        let mut t = Self::zero(order, dim)?;
        for_each_sorted_multi_index(dim, order, |idx| {
            t.entries.insert(MultiIndex(idx.to_vec()), 1.0);
        });
        Ok(t)
    }

    /// Diagonal tensor with the given diagonal values.
    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        let mut t = Self::zero(order, diag.len())?;
        for (i, &v) in diag.iter().enumerate() {
            t.set(vec![i; order], v)?;
        }
        Ok(t)
    }

    /// Builds a tensor from `(indices, value)` pairs, canonicalizing each
    /// index. Two entries landing on the same canonical index must agree;
    /// conflicting duplicates are rejected.
    pub fn from_entries<I>(order: usize, dim: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut t = Self::zero(order, dim)?;
        for (indices, value) in items {
            t.check_indices(&indices)?;
            if !value.is_finite() {
                return Err(Error::NonFiniteValue(value));
            }
            let key = MultiIndex::new(indices);
            if let Some(&existing) = t.entries.get(&key) {
                if existing != value {
                    return Err(Error::ConflictingEntry {
                        existing,
                        new: value,
                    });
                }
                continue;
            }
            if value != 0.0 {
                t.entries.insert(key, value);
            }
        }
        Ok(t)
    }

    /// Builds the symmetrization of a general (position-wise) entry list:
    /// each canonical orbit gets the average of the listed position values,
    /// unlisted positions counting as zero. Exact duplicate positions are
    /// rejected.
    pub fn symmetrize_from_positions<I>(order: usize, dim: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut t = Self::zero(order, dim)?;
        let mut sums: BTreeMap<MultiIndex, f64> = BTreeMap::new();
        let mut seen: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        for (indices, value) in items {
            t.check_indices(&indices)?;
            if !value.is_finite() {
                return Err(Error::NonFiniteValue(value));
            }
            if !seen.insert(indices.clone()) {
                return Err(Error::ConflictingEntry {
                    existing: value,
                    new: value,
                });
            }
            *sums.entry(MultiIndex::new(indices)).or_insert(0.0) += value;
        }
        for (key, sum) in sums {
            let avg = sum / key.multiplicity() as f64;
            if avg != 0.0 {
                t.entries.insert(key, avg);
            }
        }
        t.symmetrized = true;
        Ok(t)
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.order {
            return Err(Error::IndexLengthMismatch {
                len: indices.len(),
                order: self.order,
            });
        }
        for &i in indices {
            if i >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: i + 1,
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    /// Sets the canonical entry for `indices` (any order), pruning exact
    /// zeros.
    pub fn set(&mut self, indices: Vec<usize>, value: f64) -> Result<()> {
        self.check_indices(&indices)?;
        if !value.is_finite() {
            return Err(Error::NonFiniteValue(value));
        }
        let key = MultiIndex::new(indices);
        if value == 0.0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    /// Value at any permutation of `indices` (absent entries are zero).
    pub fn get(&self, indices: &[usize]) -> f64 {
        let key = MultiIndex::new(indices.to_vec());
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored canonical entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// True when the tensor was produced by orbit-averaging general input.
    pub fn was_symmetrized(&self) -> bool {
        self.symmetrized
    }

    /// Iterates canonical entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                dim: self.dim,
                len: x.len(),
            });
        }
        Ok(())
    }

    fn check_shape(&self, other: &SymTensor) -> Result<()> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                order_a: self.order,
                dim_a: self.dim,
                order_b: other.order,
                dim_b: other.dim,
            });
        }
        Ok(())
    }

    /// The homogeneous form Ax^k.
    pub fn eval_form(&self, x: &[f64]) -> Result<f64> {
        self.check_vector(x)?;
        let mut total = 0.0;
        for (key, value) in self.entries() {
            let mut product = value * key.multiplicity() as f64;
            for &i in key.indices() {
                product *= x[i];
            }
            total += product;
        }
        Ok(total)
    }

    /// The vector Ax^{k-1}; satisfies x . apply(A, x) = eval_form(A, x).
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        let mut out = vec![0.0; self.dim];
        let mut scratch = Vec::new();
        for (key, value) in self.entries() {
            let idx = key.indices();
            let mut pos = 0;
            while pos < idx.len() {
                let i = idx[pos];
                let mut end = pos;
                while end < idx.len() && idx[end] == i {
                    end += 1;
                }
                // Remove one occurrence of i; the rest stay sorted.
                scratch.clear();
                scratch.extend_from_slice(&idx[..pos]);
                scratch.extend_from_slice(&idx[pos + 1..]);
                let mut term = value * distinct_permutations(&scratch) as f64;
                for &j in &scratch {
                    term *= x[j];
                }
                out[i] += term;
                pos = end;
            }
        }
        Ok(out)
    }

    /// Row sum R_i: the sum of all entries whose first index is i.
    pub fn row_sum(&self, i: usize) -> Result<f64> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                dim: self.dim,
            });
        }
        let mut sum = 0.0;
        let mut scratch = Vec::new();
        for (key, value) in self.entries() {
            let idx = key.indices();
            if let Some(pos) = idx.iter().position(|&j| j == i) {
                scratch.clear();
                scratch.extend_from_slice(&idx[..pos]);
                scratch.extend_from_slice(&idx[pos + 1..]);
                sum += value * distinct_permutations(&scratch) as f64;
            }
        }
        Ok(sum)
    }

    /// Largest, smallest, and mean row sum.
    pub fn row_stats(&self) -> Stats {
        let sums: Vec<f64> = (0..self.dim).map(|i| self.row_sum(i).unwrap()).collect();
        Stats::over(&sums)
    }

    /// Largest, smallest, and mean diagonal element.
    pub fn diag_stats(&self) -> Stats {
        let diag: Vec<f64> = (0..self.dim).map(|i| self.get(&vec![i; self.order])).collect();
        Stats::over(&diag)
    }

    /// Inner product sum over all n^k positions; canonical entries are
    /// weighted by their permutation count.
    pub fn inner_product(&self, other: &SymTensor) -> Result<f64> {
        self.check_shape(other)?;
        let mut total = 0.0;
        for (key, value) in self.entries() {
            if let Some(&b) = other.entries.get(key) {
                total += key.multiplicity() as f64 * value * b;
            }
        }
        Ok(total)
    }

    /// True iff every entry of `self` is <= the corresponding entry of
    /// `other` (absent entries are zero).
    pub fn leq(&self, other: &SymTensor) -> Result<bool> {
        self.check_shape(other)?;
        for (key, value) in self.entries() {
            if value > other.entries.get(key).copied().unwrap_or(0.0) {
                return Ok(false);
            }
        }
        for (key, value) in other.entries() {
            if !self.entries.contains_key(key) && 0.0 > value {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restriction to the index set `support`, reindexed to 0..|support|.
    /// `support` must be nonempty, strictly increasing, and in range.
    pub fn subtensor(&self, support: &[usize]) -> Result<SymTensor> {
        if support.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut remap = vec![usize::MAX; self.dim];
        for (new, &old) in support.iter().enumerate() {
            if old >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: old + 1,
                    dim: self.dim,
                });
            }
            if new > 0 && support[new - 1] >= old {
                return Err(Error::UnsortedIndexSet);
            }
            remap[old] = new;
        }
        let mut t = SymTensor::zero(self.order, support.len())?;
        'entry: for (key, value) in self.entries() {
            let mut mapped = Vec::with_capacity(self.order);
            for &i in key.indices() {
                if remap[i] == usize::MAX {
                    continue 'entry;
                }
                mapped.push(remap[i]);
            }
            t.entries.insert(MultiIndex(mapped), value);
        }
        Ok(t)
    }

    /// The k-fold outer power y^k of a nonnegative nonzero vector, i.e. the
    /// rank-one completely positive tensor with entries y_{i_1} ... y_{i_k}.
    pub fn rank_one(order: usize, y: &[f64]) -> Result<SymTensor> {
        for (position, &value) in y.iter().enumerate() {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::NegativeFactor { position, value });
            }
        }
        let support: Vec<usize> = (0..y.len()).filter(|&i| y[i] > 0.0).collect();
        if support.is_empty() {
            return Err(Error::ZeroFactor);
        }
        let mut t = SymTensor::zero(order, y.len())?;
        for_each_sorted_multi_index(support.len(), order, |idx| {
            let mapped: Vec<usize> = idx.iter().map(|&j| support[j]).collect();
            let product: f64 = mapped.iter().map(|&i| y[i]).product();
            t.entries.insert(MultiIndex(mapped), product);
        });
        Ok(t)
    }

    /// Sum of k-fold outer powers of nonnegative factors: a completely
    /// positive tensor.
    pub fn cp_sum(order: usize, factors: &[Vec<f64>]) -> Result<SymTensor> {
        let dim = factors
            .first()
            .map(|f| f.len())
            .ok_or(Error::ZeroFactor)?;
        let mut total = SymTensor::zero(order, dim)?;
        for factor in factors {
            if factor.len() != dim {
                return Err(Error::DimensionMismatch {
                    dim,
                    len: factor.len(),
                });
            }
            total = total.add(&SymTensor::rank_one(order, factor)?)?;
        }
        Ok(total)
    }

    /// Entrywise sum.
    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.symmetrized = self.symmetrized || other.symmetrized;
        for (key, value) in other.entries() {
            let slot = out.entries.entry(key.clone()).or_insert(0.0);
            *slot += value;
            if *slot == 0.0 {
                out.entries.remove(key);
            }
        }
        Ok(out)
    }

    /// Entrywise scaling by `alpha`.
    pub fn scale(&self, alpha: f64) -> SymTensor {
        let mut out = self.clone();
        if alpha == 0.0 {
            out.entries.clear();
            return out;
        }
        for value in out.entries.values_mut() {
            *value *= alpha;
        }
        out.entries.retain(|_, v| *v != 0.0);
        out
    }

    /// A + c I (shifts the diagonal by c).
    pub fn add_scaled_identity(&self, c: f64) -> SymTensor {
        let mut out = self.clone();
        if c == 0.0 {
            return out;
        }
        for i in 0..self.dim {
            let key = MultiIndex(vec![i; self.order]);
            let slot = out.entries.entry(key.clone()).or_insert(0.0);
            *slot += c;
            if *slot == 0.0 {
                out.entries.remove(&key);
            }
        }
        out
    }

    /// Largest absolute value among stored entries (0 for the zero tensor).
    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .values()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }

    /// Flattened evaluation plan for repeated Ax^k computations.
    pub(crate) fn form_plan(&self) -> FormPlan {
        let k = self.order;
        let mut coeff = Vec::with_capacity(self.nnz());
        let mut idx = Vec::with_capacity(self.nnz() * k);
        for (key, value) in self.entries() {
            coeff.push(value * key.multiplicity() as f64);
            idx.extend_from_slice(key.indices());
        }
        FormPlan { k, coeff, idx }
    }

    /// Flattened evaluation plan for repeated Ax^{k-1} computations.
    pub(crate) fn grad_plan(&self) -> GradPlan {
        let k = self.order;
        let mut row = Vec::new();
        let mut coeff = Vec::new();
        let mut idx = Vec::new();
        let mut scratch = Vec::new();
        for (key, value) in self.entries() {
            let indices = key.indices();
            let mut pos = 0;
            while pos < indices.len() {
                let i = indices[pos];
                let mut end = pos;
                while end < indices.len() && indices[end] == i {
                    end += 1;
                }
                scratch.clear();
                scratch.extend_from_slice(&indices[..pos]);
                scratch.extend_from_slice(&indices[pos + 1..]);
                row.push(i);
                coeff.push(value * distinct_permutations(&scratch) as f64);
                idx.extend_from_slice(&scratch);
                pos = end;
            }
        }
        GradPlan { k, row, coeff, idx }
    }
}

/// Componentwise r-th power x^{[r]}.
pub fn power_vec(x: &[f64], r: u32) -> Vec<f64> {
    x.iter().map(|&v| v.powi(r as i32)).collect()
}

/// Max / min / mean of a value collection.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Stats {
    pub max: f64,
    pub min: f64,
    pub mean: f64,
}

impl Stats {
    fn over(values: &[f64]) -> Stats {
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Stats { max, min, mean }
    }
}

/// Precomputed terms of Ax^k: value times permutation count, plus the k
/// participating indices, flattened with stride k.
pub(crate) struct FormPlan {
    k: usize,
    coeff: Vec<f64>,
    idx: Vec<usize>,
}

impl FormPlan {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut total = 0.0;
        for (t, &c) in self.coeff.iter().enumerate() {
            let mut product = c;
            for &i in &self.idx[t * self.k..(t + 1) * self.k] {
                product *= x[i];
            }
            total += product;
        }
        total
    }

    pub fn negate(&mut self) {
        for c in &mut self.coeff {
            *c = -*c;
        }
    }
}

/// Precomputed terms of Ax^{k-1}: target component, coefficient, and the
/// k-1 remaining indices, flattened with stride k-1.
pub(crate) struct GradPlan {
    k: usize,
    row: Vec<usize>,
    coeff: Vec<f64>,
    idx: Vec<usize>,
}

impl GradPlan {
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        let stride = self.k - 1;
        for (t, &c) in self.coeff.iter().enumerate() {
            let mut product = c;
            for &i in &self.idx[t * stride..(t + 1) * stride] {
                product *= x[i];
            }
            out[self.row[t]] += product;
        }
    }

    pub fn negate(&mut self) {
        for c in &mut self.coeff {
            *c = -*c;
        }
    }
}
