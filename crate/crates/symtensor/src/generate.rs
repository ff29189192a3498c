//! Instance generators: named constant tensors, seeded random families, and
//! uniform-hypergraph tensors (adjacency, Laplacian, signless Laplacian).
//!
//! All random generators are deterministic functions of their seed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comb::{factorial, for_each_sorted_multi_index};
use crate::error::{Error, Result};
use crate::tensor::SymTensor;

/// Random nonnegative tensor: each canonical entry is present with
/// probability `density` and drawn uniformly from (0, 1).
pub fn random_nonneg(order: usize, dim: usize, density: f64, seed: u64) -> Result<SymTensor> {
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = SymTensor::zero(order, dim)?;
    let mut pending = Vec::new();
    for_each_sorted_multi_index(dim, order, |idx| {
        if rng.gen::<f64>() < density {
            pending.push((idx.to_vec(), rng.gen::<f64>()));
        }
    });
    for (idx, value) in pending {
        t.set(idx, value)?;
    }
    Ok(t)
}

/// Random essentially nonpositive tensor: off-diagonal entries are drawn
/// from (-1, 0) with probability `density`; diagonal entries are drawn from
/// (-0.5, 2) with probability 0.8.
pub fn random_ess_nonpos(order: usize, dim: usize, density: f64, seed: u64) -> Result<SymTensor> {
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = SymTensor::zero(order, dim)?;
    let mut pending = Vec::new();
    for_each_sorted_multi_index(dim, order, |idx| {
        let diagonal = idx.windows(2).all(|w| w[0] == w[1]);
        if diagonal {
            if rng.gen::<f64>() < 0.8 {
                pending.push((idx.to_vec(), rng.gen_range(-0.5..2.0)));
            }
        } else if rng.gen::<f64>() < density {
            pending.push((idx.to_vec(), -rng.gen::<f64>()));
        }
    });
    for (idx, value) in pending {
        t.set(idx, value)?;
    }
    Ok(t)
}

/// Random completely positive tensor: the sum of `rank` outer powers of
/// random nonnegative factors.
pub fn random_cp(order: usize, dim: usize, rank: usize, seed: u64) -> Result<SymTensor> {
    if rank == 0 {
        return Err(Error::InvalidGenerator("cp rank must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors: Vec<Vec<f64>> = (0..rank).map(|_| random_factor(dim, &mut rng)).collect();
    SymTensor::cp_sum(order, &factors)
}

fn random_factor(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut factor: Vec<f64> = (0..dim)
        .map(|_| {
            if rng.gen::<f64>() < 0.7 {
                rng.gen_range(0.1..1.0)
            } else {
                0.0
            }
        })
        .collect();
    if factor.iter().all(|&v| v == 0.0) {
        let i = rng.gen_range(0..dim);
        factor[i] = rng.gen_range(0.1..1.0);
    }
    factor
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidGenerator(format!(
            "density {density} outside [0, 1]"
        )));
    }
    Ok(())
}

fn check_edges(order: usize, dim: usize, edges: &[Vec<usize>]) -> Result<()> {
    for edge in edges {
        if edge.len() != order {
            return Err(Error::InvalidGenerator(format!(
                "edge {:?} does not have {} vertices",
                edge, order
            )));
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != order {
            return Err(Error::InvalidGenerator(format!(
                "edge {:?} has repeated vertices",
                edge
            )));
        }
        for &v in edge {
            if v >= dim {
                return Err(Error::IndexOutOfRange {
                    index: v + 1,
                    dim,
                });
            }
        }
    }
    Ok(())
}

/// Adjacency tensor of a k-uniform hypergraph: every permutation of each
/// edge carries 1/(k-1)!, so each row sum equals the vertex degree.
/// Repeated edges accumulate.
pub fn hypergraph_adjacency(order: usize, dim: usize, edges: &[Vec<usize>]) -> Result<SymTensor> {
    check_edges(order, dim, edges)?;
    let weight = 1.0 / factorial(order - 1) as f64;
    let mut values: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for edge in edges {
        let mut key = edge.clone();
        key.sort_unstable();
        *values.entry(key).or_insert(0.0) += weight;
    }
    let mut t = SymTensor::zero(order, dim)?;
    for (idx, value) in values {
        t.set(idx, value)?;
    }
    Ok(t)
}

/// Vertex degrees (edge multiplicity counted).
fn degrees(dim: usize, edges: &[Vec<usize>]) -> Vec<f64> {
    let mut deg = vec![0.0; dim];
    for edge in edges {
        for &v in edge {
            deg[v] += 1.0;
        }
    }
    deg
}

/// Laplacian tensor D - A with D the diagonal degree tensor.
pub fn hypergraph_laplacian(order: usize, dim: usize, edges: &[Vec<usize>]) -> Result<SymTensor> {
    let adjacency = hypergraph_adjacency(order, dim, edges)?;
    let degree = SymTensor::diagonal(order, &degrees(dim, edges))?;
    degree.add(&adjacency.scale(-1.0))
}

/// Signless Laplacian tensor D + A.
pub fn hypergraph_signless_laplacian(
    order: usize,
    dim: usize,
    edges: &[Vec<usize>],
) -> Result<SymTensor> {
    let adjacency = hypergraph_adjacency(order, dim, edges)?;
    let degree = SymTensor::diagonal(order, &degrees(dim, edges))?;
    degree.add(&adjacency)
}

/// Random d-regular k-uniform multigraph edge list: the union of `degree`
/// random perfect matchings, so every vertex lies in exactly `degree` edges.
/// Requires dim divisible by order.
pub fn random_regular_edges(
    order: usize,
    dim: usize,
    degree: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    if dim == 0 || dim % order != 0 {
        return Err(Error::InvalidGenerator(format!(
            "dimension {dim} is not a multiple of the order {order}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(degree * dim / order);
    let mut vertices: Vec<usize> = (0..dim).collect();
    for _ in 0..degree {
        shuffle(&mut vertices, &mut rng);
        for chunk in vertices.chunks(order) {
            let mut edge = chunk.to_vec();
            edge.sort_unstable();
            edges.push(edge);
        }
    }
    Ok(edges)
}

fn shuffle(values: &mut [usize], rng: &mut ChaCha8Rng) {
    for i in (1..values.len()).rev() {
        let j = rng.gen_range(0..=i);
        values.swap(i, j);
    }
}

/// The order-3 dimension-3 copositive tensor with zero diagonal that fails
/// both diagonal-dominance tests: entries 2 at the permutations of (1,1,3)
/// and (2,2,3), -1 at the permutations of (1,2,3), giving the form
/// 6 (x_1^2 + x_2^2 - x_1 x_2) x_3.
pub fn nondd_example() -> SymTensor {
    SymTensor::from_entries(
        3,
        3,
        vec![
            (vec![0, 0, 2], 2.0),
            (vec![1, 1, 2], 2.0),
            (vec![0, 1, 2], -1.0),
        ],
    )
    .expect("constant entries are valid")
}
