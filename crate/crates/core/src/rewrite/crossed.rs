//! Untwisting `E^q` inside the crossed product of the untwisted algebra by a phase action.
//!
//! With `s~, t~` satisfying the `q = 1` relations and a unitary `u` with
//! `u s~ u* = h s~`, `u t~ u* = h^-1 t~`, the elements `s^ = s~ u` and `t^ = t~ u`
//! satisfy the relations of `E^q` with `q = h^2`.

use serde::Serialize;

use super::normalize::check_identity;
use super::rules::RuleSet;
use crate::algebra::{AlgebraElement, Letter, Params, Scalar};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossedReport {
    pub angle: (i64, i64),
    pub checks: Vec<IdentityCheck>,
    pub defects: usize,
    /// `s^_j t^_r = conj(q) s^_j t^_r` taken literally; it fails whenever `q != 1`.
    pub literal_self_referential_display: IdentityCheck,
    pub pass: bool,
}

struct Gens<'a> {
    one: Scalar,
    rules: &'a RuleSet,
    p: &'a Params,
}

impl Gens<'_> {
    fn el(&self, letters: &[Letter]) -> AlgebraElement {
        AlgebraElement::monomial(crate::algebra::Monomial::new(letters.to_vec()), self.one.clone())
    }
    fn s_hat(&self, j: u16) -> AlgebraElement {
        self.el(&[Letter::s(j), Letter::u()])
    }
    fn t_hat(&self, r: u16) -> AlgebraElement {
        self.el(&[Letter::t(r), Letter::u()])
    }
    fn check(&self, out: &mut Vec<IdentityCheck>, name: String, lhs: AlgebraElement, rhs: AlgebraElement) -> Result<()> {
        let holds = check_identity(&lhs, &rhs, self.rules)?;
        out.push(IdentityCheck { name, holds });
        Ok(())
    }
}

/// Verify the `E^q` relations for the hatted generators exactly.
pub fn verify_crossed_untwist(params: &Params) -> Result<CrossedReport> {
    let rules = RuleSet::crossed(params)?;
    let g = Gens { one: params.one(), rules: &rules, p: params };
    let q = g.p.q();
    let qb = g.p.q_bar();
    let h = params.h_pow(1)?;
    let hb = params.h_pow(-1)?;
    let one = AlgebraElement::scalar(params.one());
    let zero = AlgebraElement::zero();
    let u = g.el(&[Letter::u()]);
    let us = g.el(&[Letter::u().star()]);
    let mut checks = Vec::new();

    g.check(&mut checks, "u u* = 1".into(), u.mul(&us)?, one.clone())?;
    g.check(&mut checks, "u* u = 1".into(), us.mul(&u)?, one.clone())?;
    for j in 1..=params.n as u16 {
        let s = g.el(&[Letter::s(j)]);
        g.check(&mut checks, format!("u s~{j} u* = h s~{j}"), u.mul(&s)?.mul(&us)?, s.scale(&h)?)?;
    }
    for r in 1..=params.m as u16 {
        let t = g.el(&[Letter::t(r)]);
        g.check(&mut checks, format!("u t~{r} u* = h^-1 t~{r}"), u.mul(&t)?.mul(&us)?, t.scale(&hb)?)?;
    }
    for j in 1..=params.n as u16 {
        for k in 1..=params.n as u16 {
            let lhs = g.s_hat(j).adjoint().mul(&g.s_hat(k))?;
            let rhs = if j == k { one.clone() } else { zero.clone() };
            g.check(&mut checks, format!("s^{j}* s^{k} = delta"), lhs, rhs)?;
        }
    }
    for r in 1..=params.m as u16 {
        for l in 1..=params.m as u16 {
            let lhs = g.t_hat(r).adjoint().mul(&g.t_hat(l))?;
            let rhs = if r == l { one.clone() } else { zero.clone() };
            g.check(&mut checks, format!("t^{r}* t^{l} = delta"), lhs, rhs)?;
        }
    }
    for j in 1..=params.n as u16 {
        for r in 1..=params.m as u16 {
            let s = g.s_hat(j);
            let t = g.t_hat(r);
            let (ss, ts) = (s.adjoint(), t.adjoint());
            g.check(&mut checks, format!("s^{j}* t^{r} = q t^{r} s^{j}*"), ss.mul(&t)?, t.mul(&ss)?.scale(&q)?)?;
            g.check(&mut checks, format!("t^{r}* s^{j} = conj(q) s^{j} t^{r}*"), ts.mul(&s)?, s.mul(&ts)?.scale(&qb)?)?;
            g.check(&mut checks, format!("t^{r} s^{j} = q s^{j} t^{r}"), t.mul(&s)?, s.mul(&t)?.scale(&q)?)?;
            g.check(&mut checks, format!("s^{j}* t^{r}* = conj(q) t^{r}* s^{j}*"), ss.mul(&ts)?, ts.mul(&ss)?.scale(&qb)?)?;
        }
    }

    let st = g.s_hat(1).mul(&g.t_hat(1))?;
    let literal = IdentityCheck {
        name: "s^1 t^1 = conj(q) s^1 t^1 (literal display)".into(),
        holds: check_identity(&st, &st.scale(&qb)?, &rules)?,
    };
    let defects = checks.iter().filter(|c| !c.holds).count();
    Ok(CrossedReport {
        angle: params.angle().expect("crossed rules need an exact angle"),
        pass: defects == 0,
        defects,
        checks,
        literal_self_referential_display: literal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighth_root_has_no_defects() {
        let p = Params::rational(2, 2, 1, 8).unwrap();
        let rep = verify_crossed_untwist(&p).unwrap();
        assert!(rep.pass, "{:?}", rep.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>());
        assert!(!rep.literal_self_referential_display.holds);
    }

    #[test]
    fn trivial_angle_makes_literal_display_hold() {
        let p = Params::rational(1, 1, 0, 1).unwrap();
        let rep = verify_crossed_untwist(&p).unwrap();
        assert!(rep.pass);
        assert!(rep.literal_self_referential_display.holds);
    }

    #[test]
    fn numeric_params_are_rejected() {
        let p = Params::numeric(1, 1, num_complex::Complex64::new(0.5, 0.0)).unwrap();
        assert!(verify_crossed_untwist(&p).is_err());
    }
}
