//! Largest and smallest H-eigenvalues of symmetric (essentially) nonnegative
//! tensors: shifted power iteration per weakly irreducible block, the
//! variational cross-check, row-sum bounds, and the positive-eigenvector
//! existence test.

use crate::error::{Error, Result};
use crate::search::{multistart_min, SearchParams};
use crate::structure::{classify, essential_decomposition, weakly_irreducible_partition};
use crate::tensor::SymTensor;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Relative tolerance for block eigenvalue agreement in the positive
/// eigenvector test.
const HPP_AGREEMENT_RTOL: f64 = 1e-8;

/// Power iteration controls.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IterationConfig {
    /// Width of the eigenvalue ratio bracket at which iteration stops.
    pub tolerance: f64,
    pub max_iterations: u64,
    /// Diagonal shift keeping the iteration convergent; subtracted from the
    /// converged value.
    pub shift: f64,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            tolerance: 1e-10,
            max_iterations: 100_000,
            shift: 1.0,
        }
    }
}

impl IterationConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !(self.shift >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "shift must be nonnegative, got {}",
                self.shift
            )));
        }
        Ok(())
    }
}

/// Controls for the multi-start projected ascent of the variational
/// characterization.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AscentConfig {
    pub restarts: u32,
    pub max_steps: u32,
    /// Relative objective improvement regarded as a stall.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            restarts: 20,
            max_steps: 20_000,
            tolerance: 1e-14,
            seed: 0,
        }
    }
}

/// An eigenvalue estimate with its eigenvector and per-block provenance.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpectralResult {
    pub lambda: f64,
    /// Nonnegative, unit k-norm.
    pub eigenvector: Vec<f64>,
    /// Max-norm of Ax^{k-1} - lambda x^{[k-1]}.
    pub residual: f64,
    pub iterations: u64,
    /// Per-block index sets (0-based) and their eigenvalues. `lambda` is
    /// their maximum for largest-eigenvalue results and their minimum for
    /// smallest-eigenvalue results.
    pub block_lambdas: Vec<(Vec<usize>, f64)>,
}

/// Outcome of one converged block iteration.
struct BlockEigen {
    lambda: f64,
    vector: Vec<f64>,
    iterations: u64,
}

/// Shifted power iteration on a weakly irreducible nonnegative tensor:
/// y = (A + shift I) x^{k-1}, next x = y^{[1/(k-1)]} renormalized, starting
/// from the uniform positive vector. The per-component ratios y_i / x_i^{k-1}
/// bracket the shifted eigenvalue; iteration stops when the bracket closes.
fn iterate_block(a: &SymTensor, cfg: &IterationConfig) -> Result<BlockEigen> {
    let n = a.dim();
    let k = a.order();
    let grad = a.grad_plan();
    let mut x = vec![(n as f64).powf(-1.0 / k as f64); n];
    let mut y = vec![0.0; n];
    let mut bracket = (f64::NEG_INFINITY, f64::INFINITY);
    for iter in 0..cfg.max_iterations {
        grad.apply_into(&x, &mut y);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let xpow = x[i].powi(k as i32 - 1);
            y[i] += cfg.shift * xpow;
            if xpow > 0.0 {
                let ratio = y[i] / xpow;
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        let mid = 0.5 * (lo + hi);
        let lambda = mid - cfg.shift;
        if hi - lo <= cfg.tolerance * (1.0 + lambda.abs()) {
            return Ok(BlockEigen {
                lambda,
                vector: x,
                iterations: iter + 1,
            });
        }
        bracket = (lo - cfg.shift, hi - cfg.shift);
        let mut norm = 0.0;
        for value in y.iter_mut() {
            *value = value.powf(1.0 / (k as f64 - 1.0));
            norm += value.powi(k as i32);
        }
        let norm = norm.powf(1.0 / k as f64);
        for i in 0..n {
            x[i] = y[i] / norm;
        }
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iterations,
        lower: bracket.0,
        upper: bracket.1,
    })
}

fn max_residual(a: &SymTensor, lambda: f64, x: &[f64]) -> f64 {
    let k = a.order();
    let applied = a.apply(x).expect("dimension checked by caller");
    applied
        .iter()
        .zip(x.iter())
        .map(|(&ax, &xi)| (ax - lambda * xi.powi(k as i32 - 1)).abs())
        .fold(0.0f64, f64::max)
}

/// Largest H-eigenvalue of a symmetric nonnegative weakly irreducible
/// tensor, with its positive eigenvector.
pub fn power_iteration_block(a: &SymTensor, cfg: &IterationConfig) -> Result<SpectralResult> {
    cfg.validate()?;
    if !classify(a).nonnegative {
        return Err(Error::NegativeEntries);
    }
    if !crate::structure::is_weakly_irreducible(a) {
        return Err(Error::NotWeaklyIrreducible);
    }
    let eigen = iterate_block(a, cfg)?;
    let residual = max_residual(a, eigen.lambda, &eigen.vector);
    Ok(SpectralResult {
        lambda: eigen.lambda,
        eigenvector: eigen.vector,
        residual,
        iterations: eigen.iterations,
        block_lambdas: vec![((0..a.dim()).collect(), eigen.lambda)],
    })
}

fn block_eigenvalues(
    b: &SymTensor,
    blocks: &[Vec<usize>],
    cfg: &IterationConfig,
) -> Result<Vec<BlockEigen>> {
    let run = |block: &Vec<usize>| -> Result<BlockEigen> {
        let sub = b.subtensor(block)?;
        iterate_block(&sub, cfg)
    };

    #[cfg(feature = "parallel")]
    {
        blocks.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        blocks.iter().map(run).collect()
    }
}

/// Largest H-eigenvalue of a symmetric essentially nonnegative tensor via
/// the block partition: decompose A = B + cI, run the power iteration per
/// weakly irreducible block of B, and report the best block's eigenvalue
/// plus c, with a nonnegative eigenvector supported on that block.
pub fn lambda_max(a: &SymTensor, cfg: &IterationConfig) -> Result<SpectralResult> {
    cfg.validate()?;
    let (b, c) = essential_decomposition(a)?;
    let partition = weakly_irreducible_partition(&b);
    let eigens = block_eigenvalues(&b, partition.blocks(), cfg)?;

    let mut best = 0;
    for (r, eigen) in eigens.iter().enumerate() {
        if eigen.lambda > eigens[best].lambda {
            best = r;
        }
    }
    let lambda = eigens[best].lambda + c;

    let mut eigenvector = vec![0.0; a.dim()];
    for (slot, &i) in eigens[best].vector.iter().zip(&partition.blocks()[best]) {
        eigenvector[i] = *slot;
    }

    let block_lambdas = partition
        .blocks()
        .iter()
        .zip(&eigens)
        .map(|(block, eigen)| (block.clone(), eigen.lambda + c))
        .collect();
    let iterations = eigens.iter().map(|e| e.iterations).sum();
    let residual = max_residual(a, lambda, &eigenvector);
    Ok(SpectralResult {
        lambda,
        eigenvector,
        residual,
        iterations,
        block_lambdas,
    })
}

/// Best value of Ax^k over {x >= 0, sum x_i^k = 1} found by multi-start
/// projected ascent: a certified lower bound on the largest H-eigenvalue of
/// a symmetric essentially nonnegative tensor.
pub fn lambda_max_variational(a: &SymTensor, cfg: &AscentConfig) -> f64 {
    let mut form = a.form_plan();
    let mut grad = a.grad_plan();
    form.negate();
    grad.negate();
    let params = SearchParams {
        restarts: cfg.restarts,
        max_steps: cfg.max_steps,
        tolerance: cfg.tolerance,
        seed: cfg.seed,
    };
    let (negated, _) = multistart_min(&form, &grad, a.dim(), a.order(), &params);
    -negated
}

/// Row-sum and diagonal bounds for an eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EigenBounds {
    pub lower: f64,
    pub upper: f64,
}

/// For a nonnegative tensor: lambda_max <= R_max, and (symmetric storage)
/// lambda_max >= max(mean row sum, largest diagonal element).
pub fn bounds_row_sums(a: &SymTensor) -> Result<EigenBounds> {
    if !classify(a).nonnegative {
        return Err(Error::NegativeEntries);
    }
    let rows = a.row_stats();
    let diag = a.diag_stats();
    Ok(EigenBounds {
        lower: rows.mean.max(diag.max),
        upper: rows.max,
    })
}

/// Smallest H-eigenvalue of a symmetric essentially nonpositive tensor,
/// computed as -lambda_max(-A) with the same eigenvector.
pub fn lambda_min_ess_nonpos(a: &SymTensor, cfg: &IterationConfig) -> Result<SpectralResult> {
    if !classify(a).essentially_nonpositive {
        return Err(Error::NotEssentiallyNonpositive);
    }
    let negated = lambda_max(&a.scale(-1.0), cfg)?;
    let lambda = -negated.lambda;
    let residual = max_residual(a, lambda, &negated.eigenvector);
    Ok(SpectralResult {
        lambda,
        eigenvector: negated.eigenvector,
        residual,
        iterations: negated.iterations,
        block_lambdas: negated
            .block_lambdas
            .into_iter()
            .map(|(block, value)| (block, -value))
            .collect(),
    })
}

/// For an essentially nonpositive tensor: lambda_min >= R_min, and
/// (symmetric storage) lambda_min <= min(mean row sum, smallest diagonal).
pub fn lambda_min_bounds(a: &SymTensor) -> Result<EigenBounds> {
    if !classify(a).essentially_nonpositive {
        return Err(Error::NotEssentiallyNonpositive);
    }
    let rows = a.row_stats();
    let diag = a.diag_stats();
    Ok(EigenBounds {
        lower: rows.min,
        upper: rows.mean.min(diag.min),
    })
}

/// Tests whether a symmetric nonnegative tensor has an eigenvalue with a
/// strictly positive eigenvector: present iff every block of the partition
/// attains the same largest eigenvalue, in which case the assembled
/// eigenvector is strictly positive.
pub fn has_hpp_eigenvalue(
    a: &SymTensor,
    cfg: &IterationConfig,
) -> Result<Option<(f64, Vec<f64>)>> {
    cfg.validate()?;
    if !classify(a).nonnegative {
        return Err(Error::NegativeEntries);
    }
    let partition = weakly_irreducible_partition(a);
    let eigens = block_eigenvalues(a, partition.blocks(), cfg)?;
    let lambda = eigens
        .iter()
        .map(|e| e.lambda)
        .fold(f64::NEG_INFINITY, f64::max);
    let agree = eigens
        .iter()
        .all(|e| (e.lambda - lambda).abs() <= HPP_AGREEMENT_RTOL * lambda.abs().max(1.0));
    if !agree {
        return Ok(None);
    }
    let mut x = vec![0.0; a.dim()];
    for (block, eigen) in partition.blocks().iter().zip(&eigens) {
        for (&i, &value) in block.iter().zip(&eigen.vector) {
            x[i] = value;
        }
    }
    // Each block vector has unit k-norm; rescale the concatenation.
    let scale = (partition.len() as f64).powf(-1.0 / a.order() as f64);
    for value in &mut x {
        *value *= scale;
    }
    Ok(Some((lambda, x)))
}
