//! Exact binomial arithmetic behind the truncation error `p(n, k)`.
//!
//! Everything here is exact: binomials are [`Natural`]s and error values are
//! [`Rational`]s in lowest terms, so identities can be checked with `==`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Exact rational, always held in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest `n` accepted by [`coin_toss_oracle`].
pub const ENUMERATION_LIMIT: u64 = 25;

/// `C(n, j)` by the running product `prod_{i=1..j} (n - j + i) / i`.
///
/// Every intermediate value is itself a binomial coefficient, so each
/// division is exact. Returns zero when `j > n`.
pub fn binomial(n: u64, j: u64) -> Natural {
    if j > n {
        return Natural::zero();
    }
    let j = j.min(n - j);
    let mut acc = Natural::one();
    for i in 1..=j {
        acc *= n - j + i;
        acc /= i;
    }
    acc
}

/// `sum_{j=lo..=n} C(n, j)`.
pub fn tail_sum(n: u64, lo: u64) -> Natural {
    if lo > n {
        return Natural::zero();
    }
    if lo == 0 {
        return Natural::one() << n;
    }
    // Walk down from C(n, n) = 1 using C(n, j-1) = C(n, j) * j / (n - j + 1).
    let mut term = Natural::one();
    let mut sum = Natural::one();
    for j in (lo + 1..=n).rev() {
        term *= j;
        term /= n - j + 1;
        sum += &term;
    }
    sum
}

/// Lower index of the binomial tail that makes up `p(n, k)`.
pub(crate) fn tail_start(n: u64, k: u64) -> u64 {
    (n + k) / 2 + 1
}

/// `2^(n-1)` as an integer.
pub(crate) fn pow2_n_minus_1(n: u64) -> Natural {
    Natural::one() << (n - 1)
}

pub(crate) fn check_pair(n: u64, k: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    if k > n {
        return Err(Error::DegreeTooLarge { k, n });
    }
    Ok(())
}

/// Exact `p(n, k) = 2^(1-n) * sum_{j > floor((n+k)/2)} C(n, j)`.
pub fn p_exact(n: u64, k: u64) -> Result<Rational> {
    check_pair(n, k)?;
    let tail = tail_sum(n, tail_start(n, k));
    Ok(Rational::new(
        BigInt::from(tail),
        BigInt::from(pow2_n_minus_1(n)),
    ))
}

/// Probability that `n` fair coin tosses give `|#heads - #tails| > k`,
/// found by visiting all `2^n` toss sequences.
pub fn coin_toss_oracle(n: u64, k: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let total: u64 = 1 << n;
    let hits = (0..total)
        .filter(|seq| {
            let heads = u64::from(seq.count_ones());
            let tails = n - heads;
            heads.abs_diff(tails) > k
        })
        .count();
    Ok(Rational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Both sides of `sum_{j<=k} C(n, j) <= 2^n exp(-(n - 2k)^2 / (2n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumBound {
    pub lhs: Natural,
    pub rhs: f64,
}

impl PartialSumBound {
    pub fn holds(&self) -> bool {
        natural_to_f64(&self.lhs) <= self.rhs
    }
}

pub fn partial_sum_bound(n: u64, k: u64) -> Result<PartialSumBound> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    if 2 * k > n {
        return Err(Error::PartialSumRange { k, n });
    }
    // Head sum by symmetry: sum_{j<=k} C(n,j) = sum_{j>=n-k} C(n,j).
    let lhs = tail_sum(n, n - k);
    let gap = (n - 2 * k) as f64;
    let nf = n as f64;
    // Fold 2^n into the exponent so large n does not overflow before decaying.
    let rhs = (nf * std::f64::consts::LN_2 - gap * gap / (2.0 * nf)).exp();
    Ok(PartialSumBound { lhs, rhs })
}

/// Correctly rounded conversion (round-to-nearest on scaled integers).
pub fn rational_to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn natural_to_f64(value: &Natural) -> f64 {
    value.to_f64().unwrap_or(f64::INFINITY)
}

/// `log2 |value|` for a nonzero rational, accurate to a few ulps even when
/// the value itself is far outside the `f64` range.
pub fn rational_log2(value: &Rational) -> Option<f64> {
    if value.is_zero() {
        return None;
    }
    Some(natural_log2(value.numer().magnitude()) - natural_log2(value.denom().magnitude()))
}

fn natural_log2(value: &Natural) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return natural_to_f64(value).log2();
    }
    let shift = bits - 64;
    let top: Natural = value >> shift;
    natural_to_f64(&top).log2() + shift as f64
}

/// Exact conversion of a finite float.
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// `true` when `value` is an integer divisible by `2^(n-1)`; used by tests
/// to check the denominators stay powers of two.
pub fn is_dyadic(value: &Rational) -> bool {
    let d = value.denom();
    d.is_one() || (d.is_even() && (d & (d - BigInt::one())).is_zero())
}
