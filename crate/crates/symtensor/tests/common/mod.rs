//! Test-side brute-force oracle: a dense n^k expansion evaluated by plain
//! loops over every index tuple, independent of the canonical sparse
//! evaluation path it checks.

use symtensor::SymTensor;

pub struct DenseTensor {
    pub order: usize,
    pub dim: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    /// Expands every one of the n^k positions through `get`, which resolves
    /// a single canonical entry per position.
    pub fn expand(a: &SymTensor) -> DenseTensor {
        let order = a.order();
        let dim = a.dim();
        let size = dim.pow(order as u32);
        let mut data = vec![0.0; size];
        let mut tuple = vec![0usize; order];
        for (flat, slot) in data.iter_mut().enumerate() {
            let mut rest = flat;
            for position in (0..order).rev() {
                tuple[position] = rest % dim;
                rest /= dim;
            }
            *slot = a.get(&tuple);
        }
        DenseTensor { order, dim, data }
    }

    fn tuple_of(&self, flat: usize) -> Vec<usize> {
        let mut tuple = vec![0usize; self.order];
        let mut rest = flat;
        for position in (0..self.order).rev() {
            tuple[position] = rest % self.dim;
            rest /= self.dim;
        }
        tuple
    }

    /// Ax^k by direct summation over all n^k tuples.
    pub fn eval_form(&self, x: &[f64]) -> f64 {
        let mut total = 0.0;
        for (flat, &value) in self.data.iter().enumerate() {
            if value == 0.0 {
                continue;
            }
            let mut term = value;
            for &i in &self.tuple_of(flat) {
                term *= x[i];
            }
            total += term;
        }
        total
    }

    /// Ax^{k-1} by direct summation.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (flat, &value) in self.data.iter().enumerate() {
            if value == 0.0 {
                continue;
            }
            let tuple = self.tuple_of(flat);
            let mut term = value;
            for &i in &tuple[1..] {
                term *= x[i];
            }
            out[tuple[0]] += term;
        }
        out
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.apply(&vec![1.0; self.dim])[i]
    }

    pub fn inner_product(&self, other: &DenseTensor) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a * b)
            .sum()
    }
}
