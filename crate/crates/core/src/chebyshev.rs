//! Chebyshev-basis polynomials with exact coefficients.
//!
//! A [`ChebSeries`] with coefficients `c_0..c_m` denotes
//! `c_0 / 2 + sum_{j=1..m} c_j T_j(x)`: the `j = 0` term is always halved.
//! Every evaluation and conversion in this module applies that convention.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, pow2_n_minus_1, rational_log2, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Largest degree accepted by [`ChebSeries::to_power_basis`].
pub const POWER_BASIS_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChebSeries {
    // No trailing zeros; empty means the zero polynomial.
    coeffs: Vec<Rational>,
}

/// Result of a float evaluation. `out_of_domain` is set when `|x| > 1`:
/// the value is still the polynomial's value, but the truncation error
/// bounds no longer apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub out_of_domain: bool,
}

/// Sign and base-2 logarithm of a coefficient's magnitude, for coefficients
/// too small to be represented as `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMagnitude {
    pub negative: bool,
    pub log2: f64,
}

impl ChebSeries {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ChebSeries { coeffs }
    }

    pub fn zero() -> Self {
        ChebSeries::default()
    }

    /// The series `weight * T_j`. For `j = 0` the stored coefficient is
    /// `2 * weight` because of the halving convention.
    pub fn single_term(j: usize, weight: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); j + 1];
        coeffs[j] = if j == 0 {
            weight * BigInt::from(2)
        } else {
            weight
        };
        ChebSeries::new(coeffs)
    }

    /// `T_j` on its own.
    pub fn chebyshev_t(j: usize) -> Self {
        ChebSeries::single_term(j, Rational::one())
    }

    /// Exact Chebyshev expansion of `x^n`:
    /// `c_j = 2^(1-n) C(n, (n-j)/2)` when `n - j` is even, zero otherwise.
    pub fn monomial_expansion(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPower);
        }
        Ok(ChebSeries::new(monomial_coefficients(n, n)))
    }

    /// The degree-`k` truncation `phi_k` of the expansion of `x^n`, built
    /// without forming the discarded coefficients.
    pub fn truncated_monomial(n: u64, k: u64) -> Result<Self> {
        crate::combinatorics::check_pair(n, k)?;
        Ok(ChebSeries::new(monomial_coefficients(n, k)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the series; the zero series reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `c_j`, zero beyond the stored degree.
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Float view of the stored coefficients (not halved).
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    pub fn coeff_log2(&self, j: usize) -> Option<LogMagnitude> {
        let c = self.coeffs.get(j)?;
        rational_log2(c).map(|log2| LogMagnitude {
            negative: c.is_negative(),
            log2,
        })
    }

    /// Keep terms `j = 0..=k`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.degree() {
            return Err(Error::DegreeTooLarge {
                k: k as u64,
                n: self.degree() as u64,
            });
        }
        let end = self.coeffs.len().min(k + 1);
        Ok(ChebSeries::new(self.coeffs[..end].to_vec()))
    }

    /// Halved-convention sum `c_0/2 + c_1 + ... + c_m`, the value at `x = 1`.
    pub fn primed_sum(&self) -> Rational {
        let mut iter = self.coeffs.iter();
        let Some(c0) = iter.next() else {
            return Rational::zero();
        };
        iter.fold(c0 / BigInt::from(2), |acc, c| acc + c)
    }

    /// Coefficientwise difference.
    pub fn sub(&self, other: &ChebSeries) -> ChebSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) - other.coeff(j)).collect();
        ChebSeries::new(coeffs)
    }

    /// Clenshaw's backward recurrence in `f64`.
    pub fn clenshaw_eval(&self, x: f64) -> Evaluation {
        let c = self.coeffs_f64();
        Evaluation {
            value: clenshaw(&c, x),
            out_of_domain: x.abs() > 1.0,
        }
    }

    /// The same recurrence carried out in exact arithmetic.
    ///
    /// With `x = p/q` and `D` the common denominator of the coefficients, the
    /// scaled terms `B_j = D q^(m+1-j) b_j` are integers and obey
    /// `B_j = D c_j q^(m+1-j) + 2p B_{j+1} - q^2 B_{j+2}`, so only the final
    /// value needs reducing.
    pub fn eval_exact(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        let (p, q) = (x.numer(), x.denom());
        let two_p = p * 2;
        let q2 = q * q;
        let mut q_pow = BigInt::one();
        let mut b1 = BigInt::zero();
        let mut b2 = BigInt::zero();
        for c in scaled[1..].iter().rev() {
            q_pow *= q;
            let b0 = c * &q_pow + &two_p * &b1 - &q2 * &b2;
            b2 = std::mem::replace(&mut b1, b0);
        }
        q_pow *= q;
        // f D q^(m+1) = D c_0 q^(m+1) / 2 + p B_1 - q^2 B_2
        let numer = &scaled[0] * &q_pow + (p * &b1 - &q2 * &b2) * 2;
        Rational::new(numer, denom * q_pow * 2)
    }

    /// Monomial coefficients `a_0..a_m` with `sum a_i x^i` equal to the series.
    pub fn to_power_basis(&self) -> Result<Vec<Rational>> {
        let degree = self.degree();
        if degree > POWER_BASIS_LIMIT {
            return Err(Error::PowerBasisTooLarge {
                degree,
                limit: POWER_BASIS_LIMIT,
            });
        }
        let mut out = vec![Rational::zero(); degree + 1];
        if self.is_zero() {
            return Ok(out);
        }
        // T_{j+1} = 2x T_j - T_{j-1}, with integer coefficients.
        let mut prev: Vec<BigInt> = vec![BigInt::one()];
        let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
        for (j, c) in self.coeffs.iter().enumerate() {
            let (t, weight) = match j {
                0 => (&prev, c / BigInt::from(2)),
                1 => (&cur, c.clone()),
                _ => {
                    let mut next = vec![BigInt::zero(); j + 1];
                    for (i, a) in cur.iter().enumerate() {
                        next[i + 1] += a * 2;
                    }
                    for (i, a) in prev.iter().enumerate() {
                        next[i] -= a;
                    }
                    prev = std::mem::replace(&mut cur, next);
                    (&cur, c.clone())
                }
            };
            if weight.is_zero() {
                continue;
            }
            for (i, a) in t.iter().enumerate() {
                if !a.is_zero() {
                    out[i] += &weight * a;
                }
            }
        }
        Ok(out)
    }
}

/// Clenshaw evaluation of `c_0/2 + sum c_j T_j(x)` on plain float coefficients.
pub fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let Some((&c0, rest)) = coeffs.split_first() else {
        return 0.0;
    };
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in rest.iter().rev() {
        let b0 = c + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    0.5 * c0 + x * b1 - b2
}

/// Roots of `T_m`, `cos((2j + 1) pi / 2m)` for `j = 0..m`, in decreasing order.
pub fn cheb_nodes(m: usize) -> Vec<f64> {
    let denom = 2.0 * m as f64;
    (0..m)
        .map(|j| {
            // The middle root of odd m is exactly zero; cos(pi/2) is not.
            if 2 * j + 1 == m {
                0.0
            } else {
                ((2 * j + 1) as f64 * PI / denom).cos()
            }
        })
        .collect()
}

/// Coefficients `c_0..c_upto` of the expansion of `x^n`, dense.
fn monomial_coefficients(n: u64, upto: u64) -> Vec<Rational> {
    let upto = upto.min(n);
    let mut coeffs = vec![Rational::zero(); upto as usize + 1];
    // Highest j <= upto with n - j even; walk down two at a time.
    let same_parity = (n - upto).is_multiple_of(2);
    if !same_parity && upto == 0 {
        return coeffs;
    }
    let top = if same_parity { upto } else { upto - 1 };
    let denom = BigInt::from(pow2_n_minus_1(n));
    let mut m = (n - top) / 2;
    let mut binom = binomial(n, m);
    let mut j = top;
    loop {
        coeffs[j as usize] = Rational::new(BigInt::from(binom.clone()), denom.clone());
        if j < 2 {
            break;
        }
        j -= 2;
        binom = binom * (n - m) / (m + 1);
        m += 1;
    }
    coeffs
}
