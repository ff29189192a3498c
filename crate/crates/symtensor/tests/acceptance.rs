//! Acceptance suite: one test per criterion, each printing a pass line with
//! the tolerances it ran at. Run with `cargo test --test acceptance --
//! --nocapture` to see the lines.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtensor::comb::{first_composition, next_composition};
use symtensor::generate::{
    hypergraph_adjacency, hypergraph_signless_laplacian, nondd_example, random_cp,
    random_ess_nonpos, random_nonneg, random_regular_edges,
};
use symtensor::{
    bounds_row_sums, certify, check_diag_dominance, check_hplus_sign, check_zero_set_gradient,
    lambda_max, lambda_max_variational, lambda_min_bounds, lambda_min_ess_nonpos,
    nmin_grid_oracle, nmin_search, AscentConfig, DiagDominance, IterationConfig, SearchConfig,
    SymTensor, Verdict,
};

fn random_nonneg_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect()
}

/// Embeds `block_tensor` onto the index set `block` of a larger tensor.
fn embed_block(target: &mut SymTensor, block: &[usize], block_tensor: &SymTensor) {
    for (key, value) in block_tensor.entries() {
        let mapped: Vec<usize> = key.indices().iter().map(|&i| block[i]).collect();
        target.set(mapped, value).unwrap();
    }
}

fn for_each_grid_point(dim: usize, order: usize, resolution: u32, mut f: impl FnMut(&[f64])) {
    let mut m = first_composition(resolution, dim);
    let mut x = vec![0.0; dim];
    loop {
        let norm: f64 = m.iter().map(|&v| (v as f64).powi(order as i32)).sum();
        let norm = norm.powf(1.0 / order as f64);
        for i in 0..dim {
            x[i] = m[i] as f64 / norm;
        }
        f(&x);
        if !next_composition(&mut m) {
            break;
        }
    }
}

/// Diagonally dominated instance: sign-mixed off-diagonal entries with the
/// diagonal raised to the negative row sum plus `margin`.
fn diag_dominated(order: usize, dim: usize, margin: f64, seed: u64) -> SymTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = SymTensor::zero(order, dim).unwrap();
    let mut pending = Vec::new();
    symtensor::comb::for_each_sorted_multi_index(dim, order, |idx| {
        if idx.windows(2).all(|w| w[0] == w[1]) {
            return;
        }
        if rng.gen::<f64>() < 0.6 {
            pending.push((idx.to_vec(), rng.gen_range(-1.0..1.0)));
        }
    });
    for (idx, value) in pending {
        a.set(idx, value).unwrap();
    }
    for i in 0..dim {
        let mut negative_sum = 0.0;
        let mut tuple = vec![0usize; order];
        tuple[0] = i;
        for flat in 0..dim.pow(order as u32 - 1) {
            let mut rest = flat;
            for position in (1..order).rev() {
                tuple[position] = rest % dim;
                rest /= dim;
            }
            if tuple.iter().all(|&j| j == i) {
                continue;
            }
            let value = a.get(&tuple);
            if value < 0.0 {
                negative_sum += value;
            }
        }
        a.set(vec![i; order], -negative_sum + margin).unwrap();
    }
    a
}

#[test]
fn criterion_01_example_instance_reproduction() {
    let start = Instant::now();
    let a = nondd_example();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let x = random_nonneg_vector(3, &mut rng);
        let closed_form = 6.0 * (x[0] * x[0] + x[1] * x[1] - x[0] * x[1]) * x[2];
        let value = a.eval_form(&x).unwrap();
        assert!(
            (value - closed_form).abs() <= 1e-12,
            "closed form mismatch: {value} vs {closed_form}"
        );
    }

    let cert = certify(&a, &SearchConfig::default());
    assert_eq!(cert.verdict, Verdict::NumericallyCopositive);
    let estimate = cert.nmin_estimate.expect("search ran");
    assert!(
        (-1e-9..=1e-6).contains(&estimate),
        "nmin estimate {estimate} outside [-1e-9, 1e-6]"
    );
    assert_eq!(check_diag_dominance(&a), DiagDominance::Neither);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 01 PASS: closed form to 1e-12 at 1000 points, \
         numerically copositive with estimate {estimate:.3e}, dominance neither ({elapsed:?})"
    );
}

#[test]
fn criterion_02_row_sum_sandwich() {
    let start = Instant::now();
    let cfg = IterationConfig::default();
    for i in 0..200u64 {
        let order = 3 + (i % 2) as usize;
        let dim = 2 + (i % 4) as usize;
        let density = 0.25 + 0.7 * ((i as f64 * 0.377) % 1.0);
        let a = random_nonneg(order, dim, density, i).unwrap();
        let bounds = bounds_row_sums(&a).unwrap();
        let lambda = lambda_max(&a, &cfg).unwrap().lambda;
        assert!(
            bounds.lower - 1e-8 <= lambda && lambda <= bounds.upper + 1e-8,
            "instance {i}: {} <= {} <= {} violated",
            bounds.lower,
            lambda,
            bounds.upper
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("criterion 02 PASS: 200 sandwich checks at 1e-8 ({elapsed:?})");
}

#[test]
fn criterion_03_variational_equality() {
    let start = Instant::now();
    let iter_cfg = IterationConfig::default();
    let ascent = AscentConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100u64 {
        let order = 3 + (i % 2) as usize;
        let dim = 2 + (i % 3) as usize;
        let mut a = random_nonneg(order, dim, 0.3 + 0.6 * ((i as f64 * 0.31) % 1.0), i).unwrap();
        if i >= 50 {
            // Essentially nonnegative: push the diagonal below zero.
            a = a.add_scaled_identity(-rng.gen_range(0.1..1.0));
        }
        let power = lambda_max(&a, &iter_cfg).unwrap().lambda;
        let variational = lambda_max_variational(&a, &ascent);
        assert!(
            (variational - power).abs() <= 1e-5,
            "instance {i}: variational {variational} vs power {power}"
        );
        assert!(
            variational <= power + 1e-8,
            "instance {i}: variational exceeded the eigenvalue"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("criterion 03 PASS: 100 variational agreements at 1e-5 ({elapsed:?})");
}

#[test]
fn criterion_04_positive_eigenvector_existence() {
    let start = Instant::now();
    let cfg = IterationConfig::default();

    // Two all-ones blocks scaled to the same eigenvalue: 4 on dimension 2,
    // and 9 * (4/9) = 4 on dimension 3.
    let mut equal = SymTensor::zero(3, 5).unwrap();
    embed_block(&mut equal, &[0, 1], &SymTensor::all_ones(3, 2).unwrap());
    embed_block(
        &mut equal,
        &[2, 3, 4],
        &SymTensor::all_ones(3, 3).unwrap().scale(4.0 / 9.0),
    );
    let (lambda, x) = lambda_hpp(&equal, &cfg).expect("equal blocks admit a positive eigenvector");
    assert!((lambda - 4.0).abs() < 1e-8);
    assert!(x.iter().all(|&v| v > 0.0), "eigenvector not strictly positive");
    let residual = max_residual(&equal, lambda, &x);
    assert!(residual <= 1e-9, "residual {residual}");

    // Perturbing one block's scale by 1% separates the block eigenvalues.
    let mut uneven = SymTensor::zero(3, 5).unwrap();
    embed_block(&mut uneven, &[0, 1], &SymTensor::all_ones(3, 2).unwrap());
    embed_block(
        &mut uneven,
        &[2, 3, 4],
        &SymTensor::all_ones(3, 3).unwrap().scale(4.0 / 9.0 * 1.01),
    );
    assert!(lambda_hpp(&uneven, &cfg).is_none());

    // Same story on diagonal tensors.
    let d = SymTensor::diagonal(3, &[2.0, 2.0]).unwrap();
    assert!(lambda_hpp(&d, &cfg).is_some());
    let d = SymTensor::diagonal(3, &[2.0, 2.02]).unwrap();
    assert!(lambda_hpp(&d, &cfg).is_none());

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 04 PASS: equal blocks present at residual <= 1e-9, \
         1% perturbation flips to absent ({elapsed:?})"
    );
}

fn lambda_hpp(a: &SymTensor, cfg: &IterationConfig) -> Option<(f64, Vec<f64>)> {
    symtensor::has_hpp_eigenvalue(a, cfg).unwrap()
}

fn max_residual(a: &SymTensor, lambda: f64, x: &[f64]) -> f64 {
    let k = a.order() as i32;
    a.apply(x)
        .unwrap()
        .iter()
        .zip(x)
        .map(|(&ax, &xi)| (ax - lambda * xi.powi(k - 1)).abs())
        .fold(0.0f64, f64::max)
}

#[test]
fn criterion_05_min_eigenvalue_bounds_and_consistency() {
    let start = Instant::now();
    let iter_cfg = IterationConfig::default();
    let search_cfg = SearchConfig::default();
    let resolution = 20;
    for i in 0..100u64 {
        let order = 3 + (i % 2) as usize;
        let dim = 2 + (i % 3) as usize;
        let a = random_ess_nonpos(order, dim, 0.3 + 0.6 * ((i as f64 * 0.41) % 1.0), i).unwrap();
        let lambda = lambda_min_ess_nonpos(&a, &iter_cfg).unwrap().lambda;
        let bounds = lambda_min_bounds(&a).unwrap();
        assert!(
            bounds.lower - 1e-8 <= lambda && lambda <= bounds.upper + 1e-8,
            "instance {i}: {} <= {} <= {} violated",
            bounds.lower,
            lambda,
            bounds.upper
        );

        let (search, _) = nmin_search(&a, &search_cfg);
        assert!(
            (search - lambda).abs() <= 1e-5,
            "instance {i}: search {search} vs lambda_min {lambda}"
        );

        let (grid, _) = nmin_grid_oracle(&a, resolution).unwrap();
        assert!(grid >= lambda - 1e-9, "instance {i}: grid undershot");
        // Coarseness bound: |Ax^k - Ay^k| <= k S ||x-y||_inf on the unit
        // k-norm ball with S the total absolute entry mass, and the nearest
        // grid point within 2 n^3 / resolution of the true argmin.
        let s: f64 = a
            .entries()
            .map(|(key, v)| v.abs() * key.multiplicity() as f64)
            .sum();
        let coarseness =
            2.0 * order as f64 * s * (dim as f64).powi(3) / resolution as f64;
        assert!(
            grid <= lambda + coarseness,
            "instance {i}: grid {grid} vs lambda {lambda} + C {coarseness}"
        );
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 05 PASS: 100 min-eigenvalue bound checks at 1e-8, \
         search agreement at 1e-5, grid within coarseness ({elapsed:?})"
    );
}

#[test]
fn criterion_06_sufficient_test_soundness() {
    let start = Instant::now();
    let search_cfg = SearchConfig::default();
    let mut plain = 0;
    let mut strict = 0;
    for i in 0..120u64 {
        let dim = 2 + (i % 3) as usize;
        let order = 3 + (i % 2) as usize;
        let margin = if i % 2 == 0 { 0.0 } else { 0.01 + 0.4 * ((i as f64 * 0.29) % 1.0) };
        let a = diag_dominated(order, dim, margin, i);
        let cert = certify(&a, &search_cfg);
        if !cert.verdict.is_certified() {
            continue;
        }
        let (value, _) = nmin_grid_oracle(&a, 15).unwrap();
        assert!(value >= -1e-9, "instance {i}: oracle {value}");
        if cert.verdict == Verdict::StrictlyCopositiveCertified {
            strict += 1;
            // Strict certificates demand positivity at every grid point.
            let mut min_seen = f64::INFINITY;
            for_each_grid_point(dim, order, 15, |x| {
                min_seen = min_seen.min(a.eval_form(x).unwrap());
            });
            assert!(min_seen > 0.0, "instance {i}: grid point at {min_seen}");
        } else {
            plain += 1;
        }
    }
    assert!(plain >= 30 && strict >= 30, "got {plain} plain, {strict} strict");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 06 PASS: {plain} copositive and {strict} strict certificates \
         sound against the resolution-15 oracle ({elapsed:?})"
    );
}

#[test]
fn criterion_07_perron_frobenius_properties() {
    let start = Instant::now();
    let cfg = IterationConfig::default();

    // Monotonicity under entrywise domination.
    for i in 0..100u64 {
        let a = random_nonneg(3, 4, 0.7, i).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(i ^ 0x700);
        let mut b = a.clone();
        let keys: Vec<Vec<usize>> = a.entries().map(|(k, _)| k.indices().to_vec()).collect();
        for key in keys {
            if rng.gen::<f64>() < 0.35 {
                b.set(key, 0.0).unwrap();
            }
        }
        assert!(b.leq(&a).unwrap());
        let la = lambda_max(&a, &cfg).unwrap().lambda;
        let lb = lambda_max(&b, &cfg).unwrap().lambda;
        assert!(lb <= la + 1e-8, "pair {i}: {lb} > {la}");
    }

    // Strict positivity of the Perron vector on weakly irreducible input.
    let mut positive_checked = 0;
    for i in 0..60u64 {
        let a = random_nonneg(3, 4, 0.8, i ^ 0x7_000).unwrap();
        if !symtensor::is_weakly_irreducible(&a) {
            continue;
        }
        let r = symtensor::power_iteration_block(&a, &cfg).unwrap();
        let min = r.eigenvector.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(min > 1e-12, "instance {i}: component {min}");
        positive_checked += 1;
    }
    assert!(positive_checked >= 30);

    // Shift equivariance.
    for i in 0..100u64 {
        let a = random_nonneg(3, 4, 0.6, i ^ 0x70_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let c = rng.gen_range(-1.0..1.0);
        let la = lambda_max(&a, &cfg).unwrap().lambda;
        let lc = lambda_max(&a.add_scaled_identity(c), &cfg).unwrap().lambda;
        assert!((lc - (la + c)).abs() <= 1e-8, "instance {i}: shift {c}");
    }

    let elapsed = start.elapsed();
    println!(
        "criterion 07 PASS: monotonicity, Perron positivity ({positive_checked} instances), \
         and shift equivariance at 1e-8 ({elapsed:?})"
    );
}

#[test]
fn criterion_08_eigenpair_and_zero_set_signs() {
    let start = Instant::now();
    let iter_cfg = IterationConfig::default();
    let search_cfg = SearchConfig::default();

    // Certified tensors: random nonnegative plus diagonally dominated, plus
    // the zero-diagonal example (copositive, numerically verified).
    let mut suite: Vec<SymTensor> = Vec::new();
    for i in 0..30u64 {
        suite.push(random_nonneg(3, 3 + (i % 2) as usize, 0.6, i).unwrap());
        suite.push(diag_dominated(3, 3, 0.2, i));
    }
    suite.push(nondd_example());

    let mut eigenpairs = 0;
    let mut zeros = 0;
    for (index, a) in suite.iter().enumerate() {
        let cert = certify(a, &search_cfg);
        assert_ne!(cert.verdict, Verdict::NotCopositive, "instance {index}");

        // Every nonnegative eigenpair the spectral module produces.
        if symtensor::classify(a).essentially_nonnegative {
            let r = lambda_max(a, &iter_cfg).unwrap();
            assert!(r.lambda >= -1e-9, "instance {index}: lambda {}", r.lambda);
            assert!(
                check_hplus_sign(a, r.lambda, &r.eigenvector, 1e-8).unwrap(),
                "instance {index}"
            );
            eigenpairs += 1;
        }

        // Zeros of the form on the grid keep a nonnegative gradient.
        for_each_grid_point(a.dim(), a.order(), 15, |x| {
            let value = a.eval_form(x).unwrap();
            if value.abs() <= 1e-9 {
                zeros += 1;
                assert!(
                    check_zero_set_gradient(a, x, 1e-9, 1e-7).unwrap(),
                    "instance {index}: gradient sign violated at {x:?}"
                );
            }
        });
    }
    assert!(eigenpairs >= 30 && zeros > 0, "{eigenpairs} eigenpairs, {zeros} zeros");
    let elapsed = start.elapsed();
    println!(
        "criterion 08 PASS: {eigenpairs} eigenpairs at -1e-9 and {zeros} grid zeros \
         with gradients above -1e-7 ({elapsed:?})"
    );
}

#[test]
fn criterion_09_duality_pairings() {
    let start = Instant::now();
    let search_cfg = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..100u64 {
        let order = 3 + (i % 2) as usize;
        let dim = 2 + (i % 3) as usize;
        let a = if i % 2 == 0 {
            random_nonneg(order, dim, 0.6, i).unwrap()
        } else {
            diag_dominated(order, dim, 0.1, i)
        };
        assert!(certify(&a, &search_cfg).verdict.is_certified());

        let b = random_cp(order, dim, 1 + (i as usize % 3), i ^ 0x9_000).unwrap();
        let pairing = a.inner_product(&b).unwrap();
        assert!(pairing >= -1e-9, "pair {i}: <A,B> = {pairing}");
        assert!(symtensor::dual_pairing_check(&a, &[random_nonneg_vector(dim, &mut rng)], 1e-9)
            .unwrap());

        let y = random_nonneg_vector(dim, &mut rng);
        let rank_one = SymTensor::rank_one(order, &y);
        if let Ok(rank_one) = rank_one {
            let lhs = a.inner_product(&rank_one).unwrap();
            let rhs = a.eval_form(&y).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()),
                "pair {i}: <A, y^k> = {lhs} vs A y^k = {rhs}"
            );
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 09 PASS: 100 pairings nonnegative at 1e-9 and rank-one \
         identities at 1e-12 ({elapsed:?})"
    );
}

#[test]
fn criterion_10_regular_hypergraph_law() {
    let start = Instant::now();
    let cfg = IterationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    for i in 0..20u64 {
        let dim = if rng.gen::<bool>() { 3 } else { 6 };
        let degree = rng.gen_range(1..=4);
        let edges = random_regular_edges(3, dim, degree, i).unwrap();

        let adjacency = hypergraph_adjacency(3, dim, &edges).unwrap();
        for v in 0..dim {
            assert!((adjacency.row_sum(v).unwrap() - degree as f64).abs() < 1e-12);
        }
        let lambda = lambda_max(&adjacency, &cfg).unwrap().lambda;
        assert!(
            (lambda - degree as f64).abs() <= 1e-8,
            "instance {i}: adjacency lambda {lambda} vs degree {degree}"
        );

        let signless = hypergraph_signless_laplacian(3, dim, &edges).unwrap();
        let lambda = lambda_max(&signless, &cfg).unwrap().lambda;
        assert!(
            (lambda - 2.0 * degree as f64).abs() <= 1e-8,
            "instance {i}: signless lambda {lambda} vs 2d {}",
            2 * degree
        );
        checked += 1;
    }
    assert_eq!(checked, 20);
    let elapsed = start.elapsed();
    println!(
        "criterion 10 PASS: 20 regular instances with adjacency at d and \
         signless Laplacian at 2d within 1e-8 ({elapsed:?})"
    );
}
