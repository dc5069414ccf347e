#![allow(dead_code)]

use chebtrunc::SymMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `Q diag(eigs) Q^T` with `Q` a product of `dim` random Householder
/// reflections, so the spectrum is exactly `eigs` up to rounding.
pub fn rotated_diagonal(rng: &mut ChaCha8Rng, eigs: &[f64]) -> SymMatrix {
    let dim = eigs.len();
    let mut q = vec![0.0; dim * dim];
    for i in 0..dim {
        q[i * dim + i] = 1.0;
    }
    for _ in 0..dim {
        let mut u: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        u.iter_mut().for_each(|x| *x /= norm);
        // q <- q (I - 2 u u^T)
        for row in 0..dim {
            let dot: f64 = (0..dim).map(|c| q[row * dim + c] * u[c]).sum();
            for c in 0..dim {
                q[row * dim + c] -= 2.0 * dot * u[c];
            }
        }
    }
    let mut a = vec![0.0; dim * dim];
    for r in 0..dim {
        for c in r..dim {
            let s: f64 = (0..dim)
                .map(|i| q[r * dim + i] * eigs[i] * q[c * dim + i])
                .sum();
            a[r * dim + c] = s;
            a[c * dim + r] = s;
        }
    }
    SymMatrix::new(dim, a).expect("symmetric by construction")
}

pub fn random_eigs(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut eigs: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    // Pin the extremes so the worst case x = +-1 is exercised.
    if dim >= 2 {
        eigs[0] = 1.0;
        eigs[1] = -1.0;
    }
    eigs
}

/// erfc to ~1e-12: Maclaurin series of erf for |z| <= 3, continued
/// fraction for the tail beyond.
pub fn erfc_reference(z: f64) -> f64 {
    if z < 0.0 {
        return 2.0 - erfc_reference(-z);
    }
    if z <= 3.0 {
        let mut term = z;
        let mut sum = z;
        let z2 = z * z;
        for n in 1..200 {
            term *= -z2 / n as f64;
            let add = term / (2 * n + 1) as f64;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        1.0 - 2.0 / std::f64::consts::PI.sqrt() * sum
    } else {
        // erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
        let mut frac = 0.0;
        for m in (1..300).rev() {
            frac = (m as f64 / 2.0) / (z + frac);
        }
        (-z * z).exp() / std::f64::consts::PI.sqrt() / (z + frac)
    }
}
