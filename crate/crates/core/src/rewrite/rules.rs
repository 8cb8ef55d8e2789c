use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Family, Letter, Params, RelMode};
use crate::error::{Error, Result};

/// Which relations are oriented into rewrite rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RuleMode {
    /// Isometry relations and `s* t -> q t s*`; normal form `(unstarred)(starred)`.
    WickOnly,
    /// Adds `t s -> q s t`; normal form `s_mu t_nu t_lambda* s_kappa*`.
    Braided,
    /// Braided relations plus `sum s s* = sum t t* = 1`; normal form `s_mu s_kappa* t_nu t_lambda*`.
    BraidedCuntz,
    /// Braided relations plus a unitary `u`; normal form `s_mu t_nu t_lambda* s_kappa* u^k`.
    BraidedWithU,
}

/// Multiplicative factor attached to a swap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Factor {
    /// `h^k`, exact.
    H(i64),
    /// Complex double.
    C(Complex64),
}

impl Factor {
    fn conj(self) -> Factor {
        match self {
            Factor::H(k) => Factor::H(-k),
            Factor::C(z) => Factor::C(z.conj()),
        }
    }
}

/// Right-hand side of a rule fired on an adjacent pair `a b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Action {
    /// `a b -> 1` (true) or `a b -> 0` (false).
    Delta(bool),
    /// `a b -> factor * b a`.
    Swap(Factor),
    /// `x_N x_N* -> 1 - sum_{i<N} x_i x_i*` for the family of `a`.
    Cuntz,
}

/// The oriented defining relations for one choice of parameters.
#[derive(Clone, Debug)]
pub struct RuleSet {
    mode: RuleMode,
    n: usize,
    m: usize,
    q: Factor,
    h: Factor,
    /// Coefficient order of the exact backend, `None` for numeric.
    order: Option<u32>,
    exact: bool,
    term_cap: usize,
    tol: f64,
    flip_braid: bool,
}

pub const DEFAULT_TERM_CAP: usize = 1_000_000;
pub const DEFAULT_TOL: f64 = 1e-10;

impl RuleSet {
    /// Rules for the algebra described by `params`.
    pub fn new(params: &Params) -> RuleSet {
        let mode = match params.relmode {
            RelMode::Braided => RuleMode::Braided,
            RelMode::BraidedCuntz => RuleMode::BraidedCuntz,
            RelMode::WickOnly => RuleMode::WickOnly,
        };
        let (q, exact) = match params.angle() {
            Some(_) => (Factor::H(2), true),
            None => (Factor::C(params.q_complex()), false),
        };
        RuleSet {
            mode,
            n: params.n,
            m: params.m,
            q,
            h: Factor::H(1),
            order: params.h_order(),
            exact,
            term_cap: DEFAULT_TERM_CAP,
            tol: DEFAULT_TOL,
            flip_braid: false,
        }
    }

    /// Toeplitz rules with `q = 1` (s and t commute), sharing the coefficient ring of `params`.
    pub fn untwisted(params: &Params) -> Result<RuleSet> {
        if !params.is_exact() {
            return Err(Error::Mode("the untwisted base algebra needs an exact angle".into()));
        }
        let mut r = RuleSet::new(&params.toeplitz());
        r.q = Factor::H(0);
        Ok(r)
    }

    /// Untwisted Toeplitz rules plus a unitary `u` acting by `h` on `s` and `h^-1` on `t`.
    pub fn crossed(params: &Params) -> Result<RuleSet> {
        let mut r = RuleSet::untwisted(params)?;
        r.mode = RuleMode::BraidedWithU;
        Ok(r)
    }

    pub fn with_term_cap(mut self, cap: usize) -> RuleSet {
        self.term_cap = cap;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> RuleSet {
        self.tol = tol;
        self
    }

    /// Fault injection for mutation tests: the braid rule uses `conj(q)` instead of `q`.
    pub fn with_flipped_braid_phase(mut self) -> RuleSet {
        self.flip_braid = true;
        self
    }

    pub fn mode(&self) -> RuleMode {
        self.mode
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn term_cap(&self) -> usize {
        self.term_cap
    }
    pub fn tol(&self) -> f64 {
        self.tol
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }
    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn admits(&self, l: &Letter) -> Result<()> {
        l.check_range(self.n, self.m)?;
        if l.family == Family::U && self.mode != RuleMode::BraidedWithU {
            return Err(Error::UnsupportedLetter(l.to_string()));
        }
        Ok(())
    }

    /// The rule fired by the adjacent pair `a b`, if any.
    pub fn action(&self, a: Letter, b: Letter) -> Option<Action> {
        use Family::{S, T, U};
        let q = self.q;
        let qb = q.conj();
        let braid = if self.flip_braid { qb } else { q };
        let h = self.h;
        let hb = h.conj();
        let key = (a.family, a.starred, b.family, b.starred);
        match self.mode {
            RuleMode::WickOnly => match key {
                (S, true, S, false) | (T, true, T, false) => Some(Action::Delta(a.index == b.index)),
                (S, true, T, false) => Some(Action::Swap(q)),
                (T, true, S, false) => Some(Action::Swap(qb)),
                _ => None,
            },
            RuleMode::Braided | RuleMode::BraidedWithU => match key {
                (S, true, S, false) | (T, true, T, false) => Some(Action::Delta(a.index == b.index)),
                (S, true, T, false) => Some(Action::Swap(q)),
                (T, true, S, false) => Some(Action::Swap(qb)),
                (T, false, S, false) => Some(Action::Swap(braid)),
                (S, true, T, true) => Some(Action::Swap(qb)),
                _ if self.mode == RuleMode::BraidedWithU => match key {
                    (U, false, U, true) | (U, true, U, false) => Some(Action::Delta(true)),
                    (U, false, S, false) | (U, false, T, true) => Some(Action::Swap(h)),
                    (U, false, T, false) | (U, false, S, true) => Some(Action::Swap(hb)),
                    (U, true, S, false) | (U, true, T, true) => Some(Action::Swap(hb)),
                    (U, true, T, false) | (U, true, S, true) => Some(Action::Swap(h)),
                    _ => None,
                },
                _ => None,
            },
            RuleMode::BraidedCuntz => match key {
                (S, true, S, false) | (T, true, T, false) => Some(Action::Delta(a.index == b.index)),
                (T, false, S, true) => Some(Action::Swap(qb)),
                (T, true, S, false) => Some(Action::Swap(qb)),
                (T, false, S, false) => Some(Action::Swap(braid)),
                (T, true, S, true) => Some(Action::Swap(q)),
                (S, false, S, true) if a.index == b.index && a.index as usize == self.n => {
                    Some(Action::Cuntz)
                }
                (T, false, T, true) if a.index == b.index && a.index as usize == self.m => {
                    Some(Action::Cuntz)
                }
                _ => None,
            },
        }
    }

    /// Number of generators in the family, used by the Cuntz expansion.
    pub fn family_size(&self, f: Family) -> usize {
        match f {
            Family::S => self.n,
            Family::T => self.m,
            Family::U => 1,
        }
    }

    /// Upper bound on rewrite steps along any derivation from a word of length `len`.
    pub fn step_bound(&self, len: usize) -> usize {
        let l = len.max(1);
        match self.mode {
            RuleMode::BraidedCuntz => 2 * l * l,
            _ => l * l,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_pairs_have_no_rule() {
        let p = Params::rational(2, 2, 1, 4).unwrap();
        let r = RuleSet::new(&p);
        let s = Letter::s(1);
        let t = Letter::t(1);
        assert_eq!(r.action(s, t), None);
        assert_eq!(r.action(t, t.star()), None);
        assert_eq!(r.action(t.star(), s.star()), None);
        assert_eq!(r.action(s, s.star()), None);
        assert_eq!(r.action(t, s), Some(Action::Swap(Factor::H(2))));
    }

    #[test]
    fn cuntz_rule_only_on_last_index() {
        let p = Params::rational(2, 3, 1, 4).unwrap().cuntz().unwrap();
        let r = RuleSet::new(&p);
        assert_eq!(r.action(Letter::s(2), Letter::s(2).star()), Some(Action::Cuntz));
        assert_eq!(r.action(Letter::s(1), Letter::s(1).star()), None);
        assert_eq!(r.action(Letter::t(3), Letter::t(3).star()), Some(Action::Cuntz));
        assert_eq!(r.action(Letter::t(2), Letter::t(2).star()), None);
    }

    #[test]
    fn u_is_rejected_outside_crossed_mode() {
        let p = Params::rational(1, 1, 1, 8).unwrap();
        assert!(RuleSet::new(&p).admits(&Letter::u()).is_err());
        assert!(RuleSet::crossed(&p).unwrap().admits(&Letter::u()).is_ok());
    }
}
