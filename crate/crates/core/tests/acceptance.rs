//! Acceptance suite. Each test checks one criterion and prints a single
//! `criterion N: PASS|FAIL ...` line; run with `--nocapture` to see them.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use chebtrunc::approx_error::{grid_sup_error, select_degree_bound, select_degree_exact};
use chebtrunc::chebyshev::ChebSeries;
use chebtrunc::combinatorics::{
    coin_toss_oracle, natural_to_f64, p_exact, partial_sum_bound, rational_from_f64,
    rational_to_f64, Natural, Rational,
};
use chebtrunc::matpow::{auto_matpow, cheb_matpow, diff_norm2, norm2, repeated_matpow};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 2^-40, the float slack for inequalities between exact and float values.
const SLACK: f64 = 1.0 / (1u64 << 40) as f64;

fn report(id: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} {detail}");
    assert!(ok, "criterion {id} failed: {detail}");
}

fn within(elapsed: Duration, secs: u64) -> bool {
    elapsed <= Duration::from_secs(secs)
}

fn two_pow_one_minus(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (n - 1))
}

#[test]
fn criterion_01_truncation_error_equals_p_at_one() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=100u64 {
        let full = ChebSeries::monomial_expansion(n).unwrap();
        for k in 0..=n {
            let phi = full.truncate(k as usize).unwrap();
            let err = Rational::one() - phi.eval_exact(&Rational::one());
            if err != p_exact(n, k).unwrap() {
                failures.push((n, k));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        failures.is_empty() && within(elapsed, 60),
        &format!("5150 (n,k) pairs, mismatches {failures:?}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_minimax_special_case() {
    let mut failures = Vec::new();
    for n in 1..=50u64 {
        let weight = two_pow_one_minus(n);
        if p_exact(n, n - 1).unwrap() != weight {
            failures.push((n, "p"));
        }
        let full = ChebSeries::monomial_expansion(n).unwrap();
        let gap = full.sub(&full.truncate(n as usize - 1).unwrap());
        if gap != ChebSeries::single_term(n as usize, weight) {
            failures.push((n, "series"));
        }
    }
    report(
        2,
        failures.is_empty(),
        &format!("n = 1..=50, mismatches {failures:?}"),
    );
}

#[test]
fn criterion_03_coin_toss_enumeration() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=20u64 {
        for k in 0..=n {
            if coin_toss_oracle(n, k).unwrap() != p_exact(n, k).unwrap() {
                failures.push((n, k));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        failures.is_empty() && within(elapsed, 30),
        &format!("n = 1..=20, all k, mismatches {failures:?}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_04_error_table_for_n_75() {
    let out = Command::new(env!("CARGO_BIN_EXE_chebtrunc"))
        .args(["table", "--n", "75", "--kmax", "50"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,p_exact,hoeffding,erfc_p_estimate"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[1], f[2])
        })
        .collect();

    let nonincreasing = rows.windows(2).all(|w| w[1].0 <= w[0].0);
    let dominated = rows.iter().all(|&(p, h)| p <= h + SLACK);
    let p25 = rows[25].0;
    let (p50, h50) = rows[50];
    let ok = rows.len() == 51
        && nonincreasing
        && dominated
        && p25 <= 0.0311
        && (rows[25].1 - 0.03101).abs() < 1e-5
        && p50 < 1e-3
        && h50 < 1e-3;
    report(
        4,
        ok,
        &format!(
            "rows {}, nonincreasing {nonincreasing}, dominated {dominated}, p25 {p25:.6e}, p50 {p50:.3e}, h50 {h50:.3e}",
            rows.len()
        ),
    );
}

#[test]
fn criterion_05_grid_error_matches_p() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for k in [5u64, 15, 25] {
        let g = grid_sup_error(75, k, 10001).unwrap();
        let p = rational_to_f64(&p_exact(75, k).unwrap());
        worst = worst.max((g - p).abs());
    }
    let elapsed = start.elapsed();
    report(
        5,
        worst <= 1e-10 && within(elapsed, 5),
        &format!("n = 75, k in {{5,15,25}}, max |grid - p| {worst:.3e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_06_degree_rule() {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, eps) in [(50u64, 1e-2), (75, 1e-3), (500, 1e-6), (2000, 1e-8)] {
        let eps_r = rational_from_f64(eps).unwrap();
        let bound = select_degree_bound(n, eps).unwrap();
        let exact = select_degree_exact(n, eps).unwrap();
        let sound = p_exact(n, bound.k).unwrap() <= eps_r;
        let meets = p_exact(n, exact.k).unwrap() <= eps_r;
        let minimal = exact.k == 0 || p_exact(n, exact.k - 1).unwrap() > eps_r;
        ok &= sound && meets && minimal;
        notes.push(format!(
            "({n},{eps:e}): bound {} exact {}",
            bound.k, exact.k
        ));
    }
    let k75 = select_degree_bound(75, 1e-3).unwrap().k;
    ok &= k75 == 34;
    report(
        6,
        ok,
        &format!("{}; k_bound(75,1e-3) = {k75}", notes.join(", ")),
    );
}

#[test]
fn criterion_07_partial_sum_bound() {
    let mut failures = Vec::new();
    for n in 1..=200u64 {
        for k in 0..=n / 2 {
            let b = partial_sum_bound(n, k).unwrap();
            if natural_to_f64(&b.lhs) > b.rhs * (1.0 + SLACK) {
                failures.push((n, k));
            }
        }
    }
    let spot = partial_sum_bound(10, 2).unwrap();
    let spot_ok = spot.lhs == Natural::from(56u32) && (spot.rhs - 169.3).abs() < 0.05;
    report(
        7,
        failures.is_empty() && spot_ok,
        &format!(
            "n <= 200, violations {failures:?}; (10,2): {} <= {:.2}",
            spot.lhs, spot.rhs
        ),
    );
}

#[test]
fn criterion_08_exact_reproduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for n in 1..=64u64 {
        let s = ChebSeries::monomial_expansion(n).unwrap();
        for _ in 0..20 {
            let den: i64 = rng.gen_range(1..=10_000);
            let num: i64 = rng.gen_range(-den..=den);
            let x = Rational::new(BigInt::from(num), BigInt::from(den));
            if s.eval_exact(&x) != Pow::pow(&x, n as u32) {
                failures.push((n, x));
            }
        }
    }
    report(
        8,
        failures.is_empty(),
        &format!("n = 1..=64 x 20 points, mismatches {}", failures.len()),
    );
}

#[test]
fn criterion_09_matrix_power_certificate() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut budget_ok = true;
    for _ in 0..50 {
        let dim = rng.gen_range(2..=50);
        let eigs = common::random_eigs(&mut rng, dim);
        let a = common::rotated_diagonal(&mut rng, &eigs);
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let vnorm = norm2(&v);
        for n in [20u64, 75] {
            let (reference, _) = repeated_matpow(&a, &v, n).unwrap();
            for k in 0..=n {
                let out = cheb_matpow(&a, &v, n, k).unwrap();
                let p = rational_to_f64(&p_exact(n, k).unwrap());
                let excess = diff_norm2(&out.result, &reference) - (p * vnorm + 1e-8);
                worst_excess = worst_excess.max(excess);
                budget_ok &= out.matvecs == k as usize;
            }
        }
    }

    // Tolerance-driven path at n = 75, eps = 1e-6.
    let mut auto_ok = true;
    let mut k_used = 0;
    for _ in 0..10 {
        let dim = rng.gen_range(2..=50);
        let eigs = common::random_eigs(&mut rng, dim);
        let a = common::rotated_diagonal(&mut rng, &eigs);
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let out = auto_matpow(&a, &v, 75, 1e-6).unwrap();
        let (reference, _) = repeated_matpow(&a, &v, 75).unwrap();
        let err = diff_norm2(&out.result, &reference);
        k_used = out.k;
        auto_ok &= err <= 1e-6 * norm2(&v) + 1e-8 && out.matvecs == out.k as usize && out.k <= 41;
    }
    let elapsed = start.elapsed();
    report(
        9,
        worst_excess <= 0.0 && budget_ok && auto_ok && within(elapsed, 60),
        &format!(
            "worst excess over bound {worst_excess:.3e}, matvecs = k {budget_ok}, auto k {k_used} ok {auto_ok}, {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_10_best_approximation_claims() {
    // The lower bound p/(4e) <= E(n,k) and the 4e suboptimality factor need
    // the true best approximation, which is not computed here.
    println!("criterion 10: N/A documentation only (best approximation not computed)");
}
