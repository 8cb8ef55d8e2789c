use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::basis::FockBasis;
use super::operator::FockOperator;
use super::rep::{columns_up_to, peak, rep_element_on, safe_columns, FockOptions};
use crate::algebra::{words_up_to, AlgebraElement, Letter, Monomial, Params};
use crate::error::{Error, Result};

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 500;

/// Largest singular value by power iteration on `A^* A`.
///
/// The truncated operator is a compression of the infinite one, so the result
/// is a lower bound for the norm in the algebra.
pub fn operator_norm(a: &FockOperator) -> f64 {
    if a.nnz() == 0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f726d);
    let mut v: Vec<Complex64> = (0..a.dim())
        .map(|_| Complex64::new(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5)))
        .collect();
    normalize(&mut v);
    let mut est = 0.0f64;
    for _ in 0..POWER_MAX_ITER {
        let mut w = a.apply_adjoint(&a.apply(&v));
        let lam = norm2(&w);
        if lam == 0.0 {
            return est;
        }
        let next = lam.sqrt();
        let done = (next - est).abs() <= POWER_TOL * next;
        est = next;
        w.iter_mut().for_each(|x| *x /= lam);
        v = w;
        if done {
            break;
        }
    }
    est
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc + x.norm_sqr()).sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm2(v);
    v.iter_mut().for_each(|x| *x /= n);
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub monomials: usize,
    pub dimension: usize,
    pub rank: usize,
    pub min_singular: f64,
    pub max_singular: f64,
    pub full_rank: bool,
    /// Finite-dimensional linear independence is evidence for faithfulness, not a proof.
    pub evidence_only: bool,
}

/// Relative cutoff for counting a Gram eigenvalue as nonzero.
const RANK_RTOL: f64 = 1e-10;

/// Gram matrix of `ops` under `tr(A^* B)` and its spectrum.
pub fn gram_from_operators(ops: &[FockOperator]) -> GramReport {
    let k = ops.len();
    let dimension = ops.first().map_or(0, FockOperator::dim);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let vals: Vec<Complex64> = pairs.par_iter().map(|&(i, j)| ops[i].trace_pairing(&ops[j])).collect();
    let mut g = DMatrix::<Complex64>::zeros(k, k);
    for (&(i, j), &v) in pairs.iter().zip(&vals) {
        g[(i, j)] = v;
        g[(j, i)] = v.conj();
    }
    let eig = if k == 0 { Vec::new() } else { g.symmetric_eigenvalues().iter().map(|x| x.abs()).collect() };
    let max = eig.iter().copied().fold(0.0, f64::max);
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let rank = eig.iter().filter(|&&x| x > RANK_RTOL * max).count();
    GramReport {
        monomials: k,
        dimension,
        rank,
        min_singular: if k == 0 { 0.0 } else { min },
        max_singular: max,
        full_rank: rank == k,
        evidence_only: true,
    }
}

/// Normal-form monomials `s_a t_b t_c* s_d*` with every word of length at most `cap`.
pub fn normal_monomials(n: usize, m: usize, cap: usize) -> Vec<Monomial> {
    let sw = words_up_to(n, cap);
    let tw = words_up_to(m, cap);
    let mut out = Vec::new();
    for a in &sw {
        for b in &tw {
            for c in &tw {
                for d in &sw {
                    let left = Monomial::s_word(a).concat(&Monomial::t_word(b));
                    let right = Monomial::s_word(d).concat(&Monomial::t_word(c)).adjoint();
                    out.push(left.concat(&right));
                }
            }
        }
    }
    out
}

/// Gram-matrix rank of the given monomials on the tensor model.
pub fn gram_of_monomials(monomials: &[Monomial], basis: &FockBasis, params: &Params) -> Result<GramReport> {
    let opts = FockOptions::default();
    let ops = monomials
        .par_iter()
        .map(|mono| {
            let x = AlgebraElement::monomial(mono.clone(), params.one());
            rep_element_on(&x, basis, params, &opts, None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(gram_from_operators(&ops))
}

/// Linear independence of all normal-form monomials up to `cap` on the tensor truncation.
pub fn gram_faithfulness(cap: usize, basis: &FockBasis, params: &Params) -> Result<GramReport> {
    let (ds, dt) = basis.depths();
    if !basis.is_tensor() || ds < 2 * cap + 1 || dt < 2 * cap + 1 {
        return Err(Error::InvalidParams(format!(
            "Gram test needs a tensor truncation of depth at least {} in each factor",
            2 * cap + 1
        )));
    }
    gram_of_monomials(&normal_monomials(basis.n(), basis.m(), cap), basis, params)
}

/// `sum_{|d| = k} s_d x s_d*`.
pub fn s_average(x: &Monomial, n: usize, k: usize, params: &Params) -> Result<AlgebraElement> {
    let mut y = AlgebraElement::zero();
    for d in crate::algebra::words(n, k) {
        let sd = Monomial::s_word(&d);
        y.add_term(sd.concat(x).concat(&sd.adjoint()), params.one())?;
    }
    Ok(y)
}

#[derive(Clone, Debug, Serialize)]
pub struct NormTrial {
    pub x: String,
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Compare `|| sum_{|d|=k} s_d x s_d* ||` on the safe columns of depth `depth`
/// with `||x||` on a truncation padded by the excursion of `x`.
pub fn norm_inequality_trial(
    x: &Monomial,
    k: usize,
    depth: usize,
    params: &Params,
    slack: f64,
) -> Result<NormTrial> {
    let (n, m) = (params.n, params.m);
    let opts = FockOptions::default();
    let y = s_average(x, n, k, params)?;
    let base = FockBasis::tensor(n, m, depth, depth);
    let cols = safe_columns(&y, &base)?;
    let lhs = operator_norm(&rep_element_on(&y, &base, params, &opts, Some(&cols))?);

    let xe = AlgebraElement::monomial(x.clone(), params.one());
    let (ps, pt) = peak(&xe, &base)?;
    let padded = FockBasis::tensor(n, m, depth + ps, depth + pt);
    let cols = columns_up_to(&padded, depth, depth);
    let rhs = operator_norm(&rep_element_on(&xe, &padded, params, &opts, Some(&cols))?);
    Ok(NormTrial { x: x.to_string(), k, lhs, rhs, holds: lhs <= rhs + slack })
}

/// Random normal-form monomial with every word of length at most `max_word`.
pub fn random_normal_monomial(n: usize, m: usize, max_word: usize, rng: &mut ChaCha8Rng) -> Monomial {
    let mut word = |k: usize| -> Vec<u16> {
        let len = rng.gen_range(0..=max_word);
        (0..len).map(|_| rng.gen_range(1..=k as u16)).collect()
    };
    let (a, b, c, d) = (word(n), word(m), word(m), word(n));
    let mut letters: Vec<Letter> = a.iter().map(|&i| Letter::s(i)).collect();
    letters.extend(b.iter().map(|&r| Letter::t(r)));
    letters.extend(c.iter().map(|&r| Letter::t(r).star()));
    letters.extend(d.iter().map(|&i| Letter::s(i).star()));
    Monomial::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::rep::{rep_element, rep_generator};

    fn third() -> Params {
        Params::rational(2, 2, 1, 3).unwrap()
    }

    #[test]
    fn identity_and_isometry_norms() {
        let p = third();
        let b = FockBasis::tensor(2, 2, 3, 3);
        assert!((operator_norm(&FockOperator::identity(b)) - 1.0).abs() < 1e-12);
        let s = rep_generator(Letter::s(1), &b, &p).unwrap();
        assert!((operator_norm(&s) - 1.0).abs() < 1e-12);
        assert_eq!(operator_norm(&FockOperator::zero(b)), 0.0);
    }

    #[test]
    fn scaled_identity_norm() {
        let p = third();
        let b = FockBasis::tensor(2, 2, 2, 2);
        let x = crate::algebra::parse_element("3 + s1 s1*", &p).unwrap();
        let a = rep_element(&x, &b, &p).unwrap();
        assert!((operator_norm(&a) - 4.0).abs() < 1e-10);
    }

    #[test]
    fn gram_trivial_and_duplicate() {
        let p = Params::rational(2, 2, 1, 4).unwrap();
        let b = FockBasis::tensor(2, 2, 2, 2);
        let r = gram_faithfulness(0, &b, &p).unwrap();
        assert_eq!((r.monomials, r.rank), (1, 1));
        let mono = Monomial::new(vec![Letter::s(1), Letter::t(2).star()]);
        let r = gram_of_monomials(&[mono.clone(), Monomial::one(), mono], &b, &p).unwrap();
        assert_eq!(r.rank, 2);
        assert!(!r.full_rank);
    }

    #[test]
    fn monomial_count() {
        assert_eq!(normal_monomials(2, 2, 1).len(), 81);
        assert_eq!(normal_monomials(2, 3, 0).len(), 1);
    }

    #[test]
    fn averaging_does_not_increase_norm() {
        let p = third();
        let x = Monomial::new(vec![Letter::s(2), Letter::t(1), Letter::s(1).star()]);
        let t = norm_inequality_trial(&x, 1, 3, &p, 1e-9).unwrap();
        assert!(t.holds, "{t:?}");
        assert!((t.rhs - 1.0).abs() < 1e-12);
    }
}
