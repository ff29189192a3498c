//! Copositivity certification: the exact condition ladder (diagonal
//! necessity, diagonal dominance, nonpositive off-diagonal row sums), the
//! numeric minimum search, and the brute-force grid oracle.
//!
//! Exact tests certify; the numeric search can only refute (it yields an
//! upper bound on the constrained minimum), so a nonnegative search outcome
//! is reported as `NumericallyCopositive`, never as a certificate.

use crate::comb::{composition_at, composition_count, next_composition};
use crate::error::{Error, Result};
use crate::search::{multistart_min, SearchParams};
use crate::structure::classify;
use crate::tensor::{FormPlan, SymTensor};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest dimension accepted by the grid oracle.
pub const GRID_ORACLE_DIM_LIMIT: usize = 5;

const SEARCH_MAX_STEPS: u32 = 20_000;
const SEARCH_STALL_TOLERANCE: f64 = 1e-14;

/// Certification outcome, ordered from strongest claim to refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Verdict {
    StrictlyCopositiveCertified,
    CopositiveCertified,
    NumericallyCopositive,
    NotCopositive,
    Inconclusive,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        matches!(
            self,
            Verdict::StrictlyCopositiveCertified | Verdict::CopositiveCertified
        )
    }
}

/// Which test produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum TestId {
    DiagNecessary,
    DiagDominanceNonneg,
    DiagDominancePos,
    NonnegativeEntries,
    EssNonposRowsum,
    NminSearch,
    GridOracle,
}

/// Verdict plus evidence: the test that fired, a violating point when the
/// tensor is refuted, and the best constrained-minimum estimate seen.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CopositivityCertificate {
    pub verdict: Verdict,
    pub reason: TestId,
    /// Feasible point with Ax^k < 0, present exactly for `NotCopositive`.
    pub witness: Option<Vec<f64>>,
    pub nmin_estimate: Option<f64>,
}

/// Controls for the numeric search and the oracle cross-check.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchConfig {
    pub restarts: u32,
    pub grid_resolution: u32,
    /// Refutation threshold, scaled by the largest absolute entry.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 50,
            grid_resolution: 20,
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

/// Necessary condition: every diagonal element of a copositive tensor is
/// nonnegative.
pub fn check_diag_necessary(a: &SymTensor) -> bool {
    a.diag_stats().min >= 0.0
}

/// Row-wise diagonal dominance level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum DiagDominance {
    /// Every diagonal element strictly exceeds the absolute row sum of its
    /// negative off-diagonal positions: strictly copositive.
    Positive,
    /// Every such sum is nonnegative: copositive.
    Nonnegative,
    Neither,
}

/// Per row i, the diagonal element plus the sum of all negative off-diagonal
/// entries in that row, counted over every one of the n^{k-1}-1 off-diagonal
/// positions (canonical entries weighted by their permutation multiplicity
/// within the row).
pub fn check_diag_dominance(a: &SymTensor) -> DiagDominance {
    let n = a.dim();
    let mut sums: Vec<f64> = (0..n).map(|i| a.get(&vec![i; a.order()])).collect();
    let mut scratch = Vec::new();
    for (key, value) in a.entries() {
        if key.is_diagonal() || value >= 0.0 {
            continue;
        }
        let idx = key.indices();
        let mut pos = 0;
        while pos < idx.len() {
            let i = idx[pos];
            let mut end = pos;
            while end < idx.len() && idx[end] == i {
                end += 1;
            }
            scratch.clear();
            scratch.extend_from_slice(&idx[..pos]);
            scratch.extend_from_slice(&idx[pos + 1..]);
            sums[i] += value * crate::comb::distinct_permutations(&scratch) as f64;
            pos = end;
        }
    }
    if sums.iter().all(|&s| s > 0.0) {
        DiagDominance::Positive
    } else if sums.iter().all(|&s| s >= 0.0) {
        DiagDominance::Nonnegative
    } else {
        DiagDominance::Neither
    }
}

/// Sufficient test for essentially nonpositive tensors: R_min > 0 certifies
/// strict copositivity, R_min >= 0 certifies copositivity. Defers (returns
/// None) otherwise or when the tensor is not essentially nonpositive.
pub fn check_ess_nonpos(a: &SymTensor) -> Option<Verdict> {
    if !classify(a).essentially_nonpositive {
        return None;
    }
    let r_min = a.row_stats().min;
    if r_min > 0.0 {
        Some(Verdict::StrictlyCopositiveCertified)
    } else if r_min >= 0.0 {
        Some(Verdict::CopositiveCertified)
    } else {
        None
    }
}

/// Multi-start projected descent of Ax^k over {x >= 0, sum x_i^k = 1}.
/// Returns the best value found (an upper bound on the constrained minimum)
/// and its argmin.
pub fn nmin_search(a: &SymTensor, cfg: &SearchConfig) -> (f64, Vec<f64>) {
    let form = a.form_plan();
    let grad = a.grad_plan();
    let params = SearchParams {
        restarts: cfg.restarts,
        max_steps: SEARCH_MAX_STEPS,
        tolerance: SEARCH_STALL_TOLERANCE,
        seed: cfg.seed,
    };
    multistart_min(&form, &grad, a.dim(), a.order(), &params)
}

/// Scans compositions [start, start+len) in enumeration order, returning
/// the best (value, rank). Homogeneity turns the normalized evaluation into
/// f(m) / sum m_i^k, avoiding per-point roots.
fn scan_range(
    plan: &FormPlan,
    resolution: u32,
    n: usize,
    k: usize,
    start: u128,
    len: u128,
) -> (f64, u128) {
    let mut m = composition_at(resolution, n, start);
    let mut x = vec![0.0; n];
    let mut best = (f64::INFINITY, start);
    for offset in 0..len {
        let mut norm = 0.0;
        for i in 0..n {
            x[i] = m[i] as f64;
            norm += x[i].powi(k as i32);
        }
        let value = plan.eval(&x) / norm;
        if value < best.0 {
            best = (value, start + offset);
        }
        if offset + 1 < len {
            next_composition(&mut m);
        }
    }
    best
}

/// Deterministic brute-force minimum of Ax^k over the grid of compositions
/// with sum `resolution`, each point renormalized to unit k-norm. Exact on
/// grid points; the returned value is an upper bound on the true minimum.
pub fn nmin_grid_oracle(a: &SymTensor, resolution: u32) -> Result<(f64, Vec<f64>)> {
    let n = a.dim();
    let k = a.order();
    if n > GRID_ORACLE_DIM_LIMIT {
        return Err(Error::DimensionTooLarge {
            dim: n,
            limit: GRID_ORACLE_DIM_LIMIT,
        });
    }
    if resolution == 0 {
        return Err(Error::InvalidConfig("grid resolution must be positive".into()));
    }
    let plan = a.form_plan();
    let count = composition_count(resolution, n);

    #[cfg(feature = "parallel")]
    let best = {
        let chunks = (rayon::current_num_threads() as u128 * 8).clamp(1, count);
        let chunk_len = count.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .filter_map(|c| {
                let start = c * chunk_len;
                if start >= count {
                    return None;
                }
                let len = chunk_len.min(count - start);
                Some(scan_range(&plan, resolution, n, k, start, len))
            })
            .reduce_with(|a, b| if (a.0, a.1) <= (b.0, b.1) { a } else { b })
            .expect("at least one chunk")
    };

    #[cfg(not(feature = "parallel"))]
    let best = scan_range(&plan, resolution, n, k, 0, count);

    let m = composition_at(resolution, n, best.1);
    let norm: f64 = m.iter().map(|&v| (v as f64).powi(k as i32)).sum();
    let norm = norm.powf(1.0 / k as f64);
    let argmin: Vec<f64> = m.iter().map(|&v| v as f64 / norm).collect();
    Ok((best.0, argmin))
}

/// Runs the certification ladder: the diagonal necessary check, the exact
/// sufficient tests in order of cost, then the numeric search as the last
/// resort. Exact tests certify; the search refutes or reports a numeric
/// verdict.
pub fn certify(a: &SymTensor, cfg: &SearchConfig) -> CopositivityCertificate {
    let n = a.dim();
    let diag = a.diag_stats();
    if diag.min < 0.0 {
        let order = a.order();
        let argmin = (0..n)
            .find(|&i| a.get(&vec![i; order]) == diag.min)
            .expect("minimum is attained");
        let mut witness = vec![0.0; n];
        witness[argmin] = 1.0;
        return CopositivityCertificate {
            verdict: Verdict::NotCopositive,
            reason: TestId::DiagNecessary,
            witness: Some(witness),
            nmin_estimate: Some(diag.min),
        };
    }

    let dominance = check_diag_dominance(a);
    if classify(a).nonnegative {
        return if dominance == DiagDominance::Positive {
            CopositivityCertificate {
                verdict: Verdict::StrictlyCopositiveCertified,
                reason: TestId::DiagDominancePos,
                witness: None,
                nmin_estimate: None,
            }
        } else {
            CopositivityCertificate {
                verdict: Verdict::CopositiveCertified,
                reason: TestId::NonnegativeEntries,
                witness: None,
                nmin_estimate: None,
            }
        };
    }

    match dominance {
        DiagDominance::Positive => {
            return CopositivityCertificate {
                verdict: Verdict::StrictlyCopositiveCertified,
                reason: TestId::DiagDominancePos,
                witness: None,
                nmin_estimate: None,
            }
        }
        DiagDominance::Nonnegative => {
            return CopositivityCertificate {
                verdict: Verdict::CopositiveCertified,
                reason: TestId::DiagDominanceNonneg,
                witness: None,
                nmin_estimate: None,
            }
        }
        DiagDominance::Neither => {}
    }

    if let Some(verdict) = check_ess_nonpos(a) {
        return CopositivityCertificate {
            verdict,
            reason: TestId::EssNonposRowsum,
            witness: None,
            nmin_estimate: None,
        };
    }

    let (value, argmin) = nmin_search(a, cfg);
    if value < -refutation_threshold(a, cfg) {
        CopositivityCertificate {
            verdict: Verdict::NotCopositive,
            reason: TestId::NminSearch,
            witness: Some(argmin),
            nmin_estimate: Some(value),
        }
    } else {
        CopositivityCertificate {
            verdict: Verdict::NumericallyCopositive,
            reason: TestId::NminSearch,
            witness: None,
            nmin_estimate: Some(value),
        }
    }
}

/// A point refutes only if its value falls below the tolerance scaled by
/// the largest absolute entry, which keeps the verdict invariant under
/// positive scaling of the tensor.
fn refutation_threshold(a: &SymTensor, cfg: &SearchConfig) -> f64 {
    cfg.tolerance.max(0.0) * a.max_abs_entry()
}

/// Like [`certify`], but cross-checks a numeric verdict against the grid
/// oracle when the dimension admits it. The oracle can pick up violations
/// the local search missed.
pub fn certify_with_oracle(
    a: &SymTensor,
    cfg: &SearchConfig,
    resolution: u32,
) -> Result<CopositivityCertificate> {
    let mut cert = certify(a, cfg);
    if cert.verdict == Verdict::NumericallyCopositive && a.dim() <= GRID_ORACLE_DIM_LIMIT {
        let (value, argmin) = nmin_grid_oracle(a, resolution)?;
        if value < -refutation_threshold(a, cfg) {
            return Ok(CopositivityCertificate {
                verdict: Verdict::NotCopositive,
                reason: TestId::GridOracle,
                witness: Some(argmin),
                nmin_estimate: Some(value),
            });
        }
        if value < cert.nmin_estimate.unwrap_or(f64::INFINITY) {
            cert.reason = TestId::GridOracle;
            cert.nmin_estimate = Some(value);
        }
    }
    Ok(cert)
}

fn check_nonnegative_vector(a: &SymTensor, x: &[f64]) -> Result<()> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            dim: a.dim(),
            len: x.len(),
        });
    }
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::NegativeVector);
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroFactor);
    }
    Ok(())
}

/// Any eigenvalue of a copositive tensor with a nonnegative eigenvector is
/// itself nonnegative. Validates the eigenpair, re-derives the eigenvalue
/// as Ax^k / sum x_i^k, and checks both against -tolerance.
pub fn check_hplus_sign(a: &SymTensor, lambda: f64, x: &[f64], tolerance: f64) -> Result<bool> {
    check_nonnegative_vector(a, x)?;
    let k = a.order();
    let applied = a.apply(x)?;
    let residual = applied
        .iter()
        .zip(x.iter())
        .map(|(&ax, &xi)| (ax - lambda * xi.powi(k as i32 - 1)).abs())
        .fold(0.0f64, f64::max);
    if residual > tolerance * (1.0 + lambda.abs()) {
        return Err(Error::NotAnEigenpair {
            lambda,
            residual,
            tolerance,
        });
    }
    let norm: f64 = x.iter().map(|&v| v.powi(k as i32)).sum();
    let rederived = a.eval_form(x)? / norm;
    Ok(lambda >= -tolerance && rederived >= -tolerance)
}

/// At a nonnegative zero of the form of a copositive tensor, the gradient
/// direction Ax^{k-1} must be nonnegative.
pub fn check_zero_set_gradient(
    a: &SymTensor,
    x: &[f64],
    zero_tolerance: f64,
    gradient_tolerance: f64,
) -> Result<bool> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            dim: a.dim(),
            len: x.len(),
        });
    }
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::NegativeVector);
    }
    let value = a.eval_form(x)?;
    if value.abs() > zero_tolerance {
        return Err(Error::NotAZero {
            value,
            tolerance: zero_tolerance,
        });
    }
    let min_component = a
        .apply(x)?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(min_component >= -gradient_tolerance)
}

/// Pairs a copositive tensor against the completely positive tensor built
/// from nonnegative factors; the inner product must be nonnegative.
pub fn dual_pairing_check(a: &SymTensor, factors: &[Vec<f64>], tolerance: f64) -> Result<bool> {
    let b = SymTensor::cp_sum(a.order(), factors)?;
    let pairing = a.inner_product(&b)?;
    Ok(pairing >= -tolerance)
}
