use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{words_up_to, AlgebraElement, Family, Monomial, Params, RelMode};
use crate::error::{Error, Result};
use crate::rewrite::{check_identity, normalize, RuleSet};

/// Largest `k` for which the full spanning set of `Fin_q^k` is checked.
pub const MAX_EXHAUSTIVE_K: usize = 2;

fn graded_rules(params: &Params) -> Result<RuleSet> {
    match params.relmode {
        RelMode::Braided | RelMode::BraidedCuntz => Ok(RuleSet::new(params)),
        RelMode::WickOnly => Err(Error::Mode("the gauge expectation is taken in the braided algebras".into())),
    }
}

/// `E(x)`: normal form of `x` restricted to bidegree `(0, 0)`.
pub fn conditional_expectation(x: &AlgebraElement, params: &Params) -> Result<AlgebraElement> {
    expectation_with(x, &graded_rules(params)?)
}

fn expectation_with(x: &AlgebraElement, rules: &RuleSet) -> Result<AlgebraElement> {
    if x.iter().any(|(m, _)| m.letters().iter().any(|l| l.family == Family::U)) {
        return Err(Error::UnsupportedGrading);
    }
    let y = normalize(x, rules)?;
    Ok(y.filter(|m| m.bidegree().map(|p| p == (0, 0)).unwrap_or(false)))
}

fn check_sizes(k: usize, params: &Params) -> Result<()> {
    if params.n < 2 || params.m < 2 {
        return Err(Error::InvalidParams("the averaging isometries need n >= 2 and m >= 2".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    Ok(())
}

/// `sum_{|d| = k} x_d x_1^{2k} x_2 x_d*` for the family `f`.
pub fn w_factor(f: Family, k: usize, params: &Params) -> Result<AlgebraElement> {
    check_sizes(k, params)?;
    let (size, word): (usize, fn(&[u16]) -> Monomial) = match f {
        Family::S => (params.n, Monomial::s_word),
        Family::T => (params.m, Monomial::t_word),
        Family::U => return Err(Error::UnsupportedGrading),
    };
    let mut gamma = vec![1u16; 2 * k];
    gamma.push(2);
    let g = word(&gamma);
    let mut w = AlgebraElement::zero();
    for d in crate::algebra::words(size, k) {
        let xd = word(&d);
        w.add_term(xd.concat(&g).concat(&xd.adjoint()), params.one())?;
    }
    Ok(w)
}

/// `w_k = w_{k,2} w_{k,1}`, checked to be an isometry before it is returned.
pub fn w_k_isometry(k: usize, params: &Params) -> Result<AlgebraElement> {
    let rules = graded_rules(params)?;
    let w = w_factor(Family::T, k, params)?.mul(&w_factor(Family::S, k, params)?)?;
    if !check_identity(&w.adjoint().mul(&w)?, &AlgebraElement::scalar(params.one()), &rules)? {
        return Err(Error::IdentityFailed(format!("w_{k}* w_{k} != 1")));
    }
    Ok(w)
}

/// Spanning monomials `s_a s_b* t_c t_d*` with `max(|a|,|b|) + max(|c|,|d|) <= k`.
pub fn fin_spanning_set(k: usize, n: usize, m: usize) -> Vec<Monomial> {
    let sw = words_up_to(n, k);
    let tw = words_up_to(m, k);
    let mut out = Vec::new();
    for a in &sw {
        for b in &sw {
            let ls = a.len().max(b.len());
            for c in &tw {
                for d in &tw {
                    if ls + c.len().max(d.len()) > k {
                        continue;
                    }
                    let s_part = Monomial::s_word(a).concat(&Monomial::s_word(b).adjoint());
                    let t_part = Monomial::t_word(c).concat(&Monomial::t_word(d).adjoint());
                    out.push(s_part.concat(&t_part));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationReport {
    pub k: usize,
    pub spanning_monomials: usize,
    /// Distinct normal forms among the spanning monomials.
    pub checked: usize,
    pub failures: Vec<String>,
    pub isometry: bool,
    /// `w_{k,2} w_{k,1} = q^{(2k+1)^2} w_{k,1} w_{k,2}`.
    pub factor_commutation: bool,
    pub pass: bool,
}

/// `w_k* x w_k = E(x)` for the whole spanning set of `Fin_q^k`.
pub fn verify_expectation_identity(k: usize, params: &Params) -> Result<ExpectationReport> {
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::CombinatorialBudget(format!(
            "exhaustive averaging check is limited to k <= {MAX_EXHAUSTIVE_K}, got {k}"
        )));
    }
    let rules = graded_rules(params)?;
    let w1 = w_factor(Family::S, k, params)?;
    let w2 = w_factor(Family::T, k, params)?;
    let w = w_k_isometry(k, params)?;
    let e = 2 * k as i64 + 1;
    let factor_commutation = check_identity(&w2.mul(&w1)?, &w1.mul(&w2)?.scale(&params.q_pow(e * e)?)?, &rules)?;

    let spanning = fin_spanning_set(k, params.n, params.m);
    let mut seen = HashSet::new();
    let mut distinct = Vec::new();
    for mono in &spanning {
        let x = normalize(&AlgebraElement::monomial(mono.clone(), params.one()), &rules)?;
        if seen.insert(x.to_string()) {
            distinct.push(x);
        }
    }
    let w_star = normalize(&w.adjoint(), &rules)?;
    let w_norm = normalize(&w, &rules)?;
    let results: Vec<Option<String>> = distinct
        .par_iter()
        .map(|x| {
            let left = normalize(&w_star.mul(x)?, &rules)?;
            let lhs = normalize(&left.mul(&w_norm)?, &rules)?;
            let rhs = expectation_with(x, &rules)?;
            Ok(if lhs.sub(&rhs)?.is_zero() { None } else { Some(x.to_string()) })
        })
        .collect::<Result<_>>()?;
    let failures: Vec<String> = results.into_iter().flatten().collect();
    Ok(ExpectationReport {
        k,
        spanning_monomials: spanning.len(),
        checked: distinct.len(),
        pass: failures.is_empty() && factor_commutation,
        failures,
        isometry: true,
        factor_commutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn quarter() -> Params {
        Params::rational(2, 2, 1, 4).unwrap().cuntz().unwrap()
    }

    #[test]
    fn expectation_examples() {
        let p = Params::rational(2, 2, 1, 4).unwrap();
        let e = |s: &str| conditional_expectation(&parse_element(s, &p).unwrap(), &p).unwrap();
        let x = parse_element("s1 s2* t1 t1*", &p).unwrap();
        assert_eq!(e("s1 s2* t1 t1*"), normalize(&x, &RuleSet::new(&p)).unwrap());
        assert!(e("s1 t1 t2*").is_zero());
        assert_eq!(e("1").to_string(), "1");
    }

    #[test]
    fn w1_factor_shape() {
        let p = quarter();
        let w = w_factor(Family::S, 1, &p).unwrap();
        assert_eq!(w.to_string(), "s1 s1 s1 s2 s1* + s2 s1 s1 s2 s2*");
    }

    #[test]
    fn w1_is_isometry_and_kills_s1() {
        let p = quarter();
        let w = w_k_isometry(1, &p).unwrap();
        let s1 = parse_element("s1", &p).unwrap();
        let r = normalize(&w.adjoint().mul(&s1).unwrap().mul(&w).unwrap(), &RuleSet::new(&p)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn k1_identity_holds() {
        let rep = verify_expectation_identity(1, &quarter()).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.spanning_monomials, 1 + 8 + 8);
    }

    #[test]
    fn guards() {
        let p = Params::rational(1, 2, 1, 4).unwrap();
        assert!(w_k_isometry(1, &p).is_err());
        assert!(matches!(verify_expectation_identity(3, &quarter()), Err(Error::CombinatorialBudget(_))));
    }
}
