//! Error of the truncated expansion `phi_k` of `x^n`, its probabilistic
//! bounds and estimates, and tolerance-driven degree selection.
//!
//! The sup-norm error on `[-1, 1]` equals `p(n, k)` exactly and is attained
//! at `x = 1`. Up to [`EXACT_PATH_LIMIT`] it is computed as an exact
//! rational; above that a log-space float evaluation is used and the result
//! is tagged as such.

use std::fmt;

use num_traits::Zero;

use crate::chebyshev::{cheb_nodes, ChebSeries};
use crate::combinatorics::{check_pair, p_exact, rational_from_f64, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Largest `n` for which `p(n, k)` is computed exactly by default.
pub const EXACT_PATH_LIMIT: u64 = 5000;

/// Value of `p(n, k)` together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum PValue {
    Exact(Rational),
    /// Natural logarithm of the value; `-inf` for zero.
    LogSpace {
        ln: f64,
    },
}

impl PValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            PValue::Exact(r) => rational_to_f64(r),
            PValue::LogSpace { ln } => ln.exp(),
        }
    }

    pub fn ln(&self) -> f64 {
        match self {
            PValue::Exact(r) if r.is_zero() => f64::NEG_INFINITY,
            PValue::Exact(r) => crate::combinatorics::rational_log2(r)
                .map_or(f64::NEG_INFINITY, |l2| l2 * std::f64::consts::LN_2),
            PValue::LogSpace { ln } => *ln,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            PValue::Exact(r) => Some(r),
            PValue::LogSpace { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PValue::Exact(_))
    }

    /// `self <= epsilon`, compared exactly when possible.
    pub fn at_most(&self, epsilon: f64) -> bool {
        match (self, rational_from_f64(epsilon)) {
            (PValue::Exact(r), Some(eps)) => *r <= eps,
            _ => self.ln() <= epsilon.ln(),
        }
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Exact(r) => write!(f, "{r}"),
            PValue::LogSpace { ln } => write!(f, "exp({ln:.16e})"),
        }
    }
}

/// Every error figure for one `(n, k)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub n: u64,
    pub k: u64,
    pub exact: PValue,
    pub exact_float: f64,
    /// `2 exp(-k^2 / 2n)`, a rigorous upper bound on `p(n, k)`.
    pub hoeffding: f64,
    /// `2 erfc(k / sqrt(n))`, normal-approximation estimate of `p(n, k)`.
    pub erfc_p_estimate: f64,
    /// `erfc(k / sqrt(n)) / 2`, estimate of the best-approximation error.
    pub erfc_best_estimate: f64,
}

impl ErrorReport {
    pub fn is_log_space(&self) -> bool {
        !self.exact.is_exact()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// `k = ceil(sqrt(2n ln(2/eps)))`, from inverting the Hoeffding bound.
    Bound,
    /// Smallest `k` whose exact error meets the tolerance.
    Exact,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bound => "bound",
            Method::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreePlan {
    pub n: u64,
    pub epsilon: f64,
    pub k: u64,
    pub method: Method,
    /// `p(n, k)` at the selected degree.
    pub achieved: PValue,
}

/// Exact sup-norm error `||x^n - phi_k||_inf = p(n, k)`.
pub fn exact_error(n: u64, k: u64) -> Result<Rational> {
    p_exact(n, k)
}

/// `p(n, k)`, exact up to [`EXACT_PATH_LIMIT`] and in log space beyond.
pub fn error_value(n: u64, k: u64) -> Result<PValue> {
    if n <= EXACT_PATH_LIMIT {
        p_exact(n, k).map(PValue::Exact)
    } else {
        check_pair(n, k)?;
        Ok(PValue::LogSpace { ln: ln_p(n, k) })
    }
}

/// `ln p(n, k)` in floating point, for any `n`.
///
/// Log-binomials are accumulated downward from `ln C(n, n) = 0` with
/// compensated summation, then the tail is combined with log-sum-exp.
pub fn ln_p(n: u64, k: u64) -> f64 {
    let lo = (n + k) / 2 + 1;
    if lo > n {
        return f64::NEG_INFINITY;
    }
    // Terms grow monotonically as j falls toward lo (lo > n/2), so the
    // last term computed is the largest.
    let count = (n - lo + 1) as usize;
    let mut logs = Vec::with_capacity(count);
    let (mut acc, mut comp) = (0.0f64, 0.0f64);
    logs.push(0.0);
    for j in (lo + 1..=n).rev() {
        // ln C(n, j-1) = ln C(n, j) + ln(j / (n - j + 1))
        let step = (j as f64 / (n - j + 1) as f64).ln() - comp;
        let next = acc + step;
        comp = (next - acc) - step;
        acc = next;
        logs.push(acc);
    }
    let peak = acc;
    let scaled: f64 = logs.iter().map(|l| (l - peak).exp()).sum();
    (1.0 - n as f64) * std::f64::consts::LN_2 + peak + scaled.ln()
}

/// `2 exp(-k^2 / 2n)`.
pub fn hoeffding_bound(n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    2.0 * (-(k * k) / (2.0 * n)).exp()
}

/// Complementary error function via the rational approximation
/// `erfc(x) = t (a1 + t (a2 + ...)) exp(-x^2)`, `t = 1 / (1 + p x)`, for
/// `x >= 0`, and `erfc(-x) = 2 - erfc(x)`. Absolute error below `1.5e-7`.
pub fn erfc(z: f64) -> f64 {
    const P: f64 = 0.327_591_1;
    const A: [f64; 5] = [
        0.254_829_592,
        -0.284_496_736,
        1.421_413_741,
        -1.453_152_027,
        1.061_405_429,
    ];
    if z.is_nan() {
        return f64::NAN;
    }
    let x = z.abs();
    let t = 1.0 / (1.0 + P * x);
    let poly = A.iter().rev().fold(0.0, |acc, &a| acc * t + a) * t;
    let tail = poly * (-x * x).exp();
    if z >= 0.0 {
        tail
    } else {
        2.0 - tail
    }
}

pub fn estimates(n: u64, k: u64) -> Result<ErrorReport> {
    let exact = error_value(n, k)?;
    let z = k as f64 / (n as f64).sqrt();
    let e = erfc(z);
    Ok(ErrorReport {
        n,
        k,
        exact_float: exact.to_f64(),
        exact,
        hoeffding: hoeffding_bound(n, k),
        erfc_p_estimate: 2.0 * e,
        erfc_best_estimate: 0.5 * e,
    })
}

fn check_tolerance(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(epsilon))
    }
}

/// `k = min(n, ceil(sqrt(2n ln(2/eps))))`.
pub fn select_degree_bound(n: u64, epsilon: f64) -> Result<DegreePlan> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    check_tolerance(epsilon)?;
    let raw = (2.0 * n as f64 * (2.0 / epsilon).ln()).sqrt().ceil();
    let k = if raw >= n as f64 { n } else { raw as u64 };
    Ok(DegreePlan {
        n,
        epsilon,
        k,
        method: Method::Bound,
        achieved: error_value(n, k)?,
    })
}

pub fn select_degree_exact(n: u64, epsilon: f64) -> Result<DegreePlan> {
    select_degree_exact_with_limit(n, epsilon, EXACT_PATH_LIMIT)
}

/// Binary search for the smallest `k` with `p(n, k) <= eps`, using that
/// `p(n, .)` is nonincreasing. Because `p(n, k) = p(n, k + 1)` whenever
/// `n + k` is even, the answer is `0` or has `n - k` even.
pub fn select_degree_exact_with_limit(n: u64, epsilon: f64, limit: u64) -> Result<DegreePlan> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    check_tolerance(epsilon)?;
    if n > limit {
        return Err(Error::ExactLimitExceeded { n, limit });
    }
    let eps = rational_from_f64(epsilon).ok_or(Error::InvalidTolerance(epsilon))?;
    // p(n, n) = 0, so hi always satisfies the tolerance.
    let (mut lo, mut hi) = (0u64, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if p_exact(n, mid)? <= eps {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(DegreePlan {
        n,
        epsilon,
        k: lo,
        method: Method::Exact,
        achieved: PValue::Exact(p_exact(n, lo)?),
    })
}

/// Picks the exact method when `n` allows it and the bound rule otherwise.
pub fn select_degree(n: u64, epsilon: f64) -> Result<DegreePlan> {
    if n <= EXACT_PATH_LIMIT {
        select_degree_exact(n, epsilon)
    } else {
        select_degree_bound(n, epsilon)
    }
}

/// `x^n` by repeated squaring.
pub fn pow_by_squaring(x: f64, n: u64) -> f64 {
    let (mut base, mut e, mut acc) = (x, n, 1.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Points `1`, the roots of `T_m` in decreasing order, and `-1`.
pub fn error_grid(m: usize) -> Vec<f64> {
    let mut grid = Vec::with_capacity(m + 2);
    grid.push(1.0);
    grid.extend(cheb_nodes(m));
    grid.push(-1.0);
    grid
}

/// `max |x^n - phi_k(x)|` over [`error_grid`]`(m)`.
pub fn grid_sup_error(n: u64, k: u64, m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::GridTooSmall { got: m, min: 2 });
    }
    let phi = ChebSeries::truncated_monomial(n, k)?;
    let coeffs = phi.coeffs_f64();
    Ok(error_grid(m)
        .into_iter()
        .map(|x| (pow_by_squaring(x, n) - crate::chebyshev::clenshaw(&coeffs, x)).abs())
        .fold(0.0, f64::max))
}
