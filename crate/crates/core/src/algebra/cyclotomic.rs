//! Integer cyclotomic polynomials, used to put exact phases in canonical form.
//!
//! A primitive N-th root of unity `h` generates `Z[h] = Z[x] / Phi_N(x)`, so a
//! Laurent polynomial in `h` has a unique representative of degree below
//! `phi(N)` once exponents are folded mod N and the result is reduced by
//! `Phi_N`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Coefficients of `Phi_n`, lowest degree first. Monic, integer.
pub fn cyclotomic(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute(n));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(n, p.clone());
    p
}

fn compute(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^n - 1 = prod_{d | n} Phi_d(x)
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic(d));
        }
    }
    num
}

/// Exact division by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division not exact");
    quo
}

/// Reduce a dense polynomial (index = exponent, all in `[0, n)`) modulo `Phi_n`.
/// Returns coefficients of degree `< deg Phi_n`.
pub fn reduce_dense(mut coeffs: Vec<i64>, n: u32) -> Vec<i64> {
    let phi = cyclotomic(n);
    let deg = phi.len() - 1;
    for e in (deg..coeffs.len()).rev() {
        let c = coeffs[e];
        if c == 0 {
            continue;
        }
        coeffs[e] = 0;
        // x^e = x^(e-deg) * x^deg and x^deg = -sum_{j<deg} phi_j x^j
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                coeffs[e - deg + j] -= c * pj;
            }
        }
    }
    coeffs.truncate(deg);
    coeffs
}

/// Euler's totient, equal to `deg Phi_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic(n).len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_coefficient_two() {
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).iter().any(|&c| c.abs() == 2));
        assert_eq!(totient(105), 48);
    }

    #[test]
    fn reduction_matches_root_evaluation() {
        use num_complex::Complex64;
        for n in [3u32, 5, 6, 8, 9, 10, 12, 16] {
            let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
            let dense: Vec<i64> = (0..n as i64).map(|k| (k * 7) % 5 - 2).collect();
            let before: Complex64 = dense
                .iter()
                .enumerate()
                .map(|(k, &c)| root.powu(k as u32) * c as f64)
                .sum();
            let red = reduce_dense(dense, n);
            let after: Complex64 = red
                .iter()
                .enumerate()
                .map(|(k, &c)| root.powu(k as u32) * c as f64)
                .sum();
            assert!((before - after).norm() < 1e-9, "n = {n}");
        }
    }
}
