//! Multi-start projected gradient descent over the nonnegative part of the
//! unit k-norm sphere, shared by the variational eigenvalue routine and the
//! copositivity search. Maximization runs the same code on negated plans.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tensor::{FormPlan, GradPlan};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) struct SearchParams {
    pub restarts: u32,
    pub max_steps: u32,
    pub tolerance: f64,
    pub seed: u64,
}

const MAX_HALVINGS: u32 = 60;
const STALL_LIMIT: u32 = 3;

/// Clamp negatives to zero, then renormalize to unit k-norm. Returns false
/// when everything clamps to zero.
fn project(v: &mut [f64], k: usize) -> bool {
    let mut sum = 0.0;
    for value in v.iter_mut() {
        if *value < 0.0 {
            *value = 0.0;
        }
        sum += value.powi(k as i32);
    }
    if sum <= 0.0 || !sum.is_finite() {
        return false;
    }
    let norm = sum.powf(1.0 / k as f64);
    for value in v.iter_mut() {
        *value /= norm;
    }
    true
}

/// One projected-descent run minimizing the form from `x0`. The step size
/// backtracks by halving from 1.0 until the objective strictly improves.
///
/// The descent direction is the gradient minus its Rayleigh component along
/// the constraint normal x^{[k-1]}: renormalization annihilates motion along
/// x, so the raw gradient can point uphill after projection, while this
/// direction vanishes exactly at eigenvector stationary points.
fn descend(
    form: &FormPlan,
    grad: &GradPlan,
    k: usize,
    params: &SearchParams,
    mut x: Vec<f64>,
) -> (f64, Vec<f64>) {
    let n = x.len();
    let mut f = form.eval(&x);
    let mut g = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut stalls = 0u32;
    for _ in 0..params.max_steps {
        grad.apply_into(&x, &mut g);
        // Gradient of Ax^k is k Ax^{k-1}; the constant k only rescales the
        // backtracked step. rayleigh = x . Ax^{k-1} = Ax^k on the sphere.
        let rayleigh: f64 = x.iter().zip(&g).map(|(&xi, &gi)| xi * gi).sum();
        let mut alpha = 1.0;
        let mut improved = false;
        for _ in 0..MAX_HALVINGS {
            for i in 0..n {
                let direction = g[i] - rayleigh * x[i].powi(k as i32 - 1);
                trial[i] = x[i] - alpha * direction;
            }
            if project(&mut trial, k) {
                let f_trial = form.eval(&trial);
                if f_trial < f {
                    let gain = f - f_trial;
                    std::mem::swap(&mut x, &mut trial);
                    f = f_trial;
                    improved = true;
                    if gain <= params.tolerance * (1.0 + f.abs()) {
                        stalls += 1;
                    } else {
                        stalls = 0;
                    }
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !improved || stalls >= STALL_LIMIT {
            break;
        }
    }
    (f, x)
}

/// Deterministic start point for a given restart index: the uniform vector,
/// then the coordinate vectors, then seeded random supports.
fn start_point(n: usize, k: usize, restart: u32, seed: u64) -> Vec<f64> {
    if restart == 0 {
        return vec![(n as f64).powf(-1.0 / k as f64); n];
    }
    if (restart as usize) <= n {
        let mut x = vec![0.0; n];
        x[restart as usize - 1] = 1.0;
        return x;
    }
    let stream = seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let support = rng.gen_range(1..=n);
    let mut x = vec![0.0; n];
    let mut placed = 0;
    while placed < support {
        let i = rng.gen_range(0..n);
        if x[i] == 0.0 {
            x[i] = rng.gen_range(0.05..1.0);
            placed += 1;
        }
    }
    assert!(project(&mut x, k));
    x
}

fn run_restart(
    form: &FormPlan,
    grad: &GradPlan,
    n: usize,
    k: usize,
    params: &SearchParams,
    restart: u32,
) -> (f64, u32, Vec<f64>) {
    let x0 = start_point(n, k, restart, params.seed);
    let (value, x) = descend(form, grad, k, params, x0);
    (value, restart, x)
}

fn better(a: &(f64, u32, Vec<f64>), b: &(f64, u32, Vec<f64>)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Best value and argmin over all restarts. Ties break on the restart
/// index, so the result does not depend on scheduling.
pub(crate) fn multistart_min(
    form: &FormPlan,
    grad: &GradPlan,
    n: usize,
    k: usize,
    params: &SearchParams,
) -> (f64, Vec<f64>) {
    let restarts = params.restarts.max(1);

    #[cfg(feature = "parallel")]
    let best = (0..restarts)
        .into_par_iter()
        .map(|r| run_restart(form, grad, n, k, params, r))
        .reduce_with(|a, b| if better(&a, &b) { a } else { b })
        .expect("at least one restart");

    #[cfg(not(feature = "parallel"))]
    let best = (0..restarts)
        .map(|r| run_restart(form, grad, n, k, params, r))
        .reduce(|a, b| if better(&a, &b) { a } else { b })
        .expect("at least one restart");

    (best.0, best.2)
}
