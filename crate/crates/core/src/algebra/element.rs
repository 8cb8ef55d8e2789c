use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{fmt_term_magnitude, Scalar};
use super::word::{Letter, Monomial};
use crate::error::Result;

/// Finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// `c * 1`.
    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { terms }
    }

    pub fn letter(l: Letter, one: Scalar) -> Self {
        Self::monomial(Monomial::new(vec![l]), one)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Result<Self> {
        let mut x = AlgebraElement::zero();
        for (m, c) in it {
            x.add_term(m, c)?;
        }
        Ok(x)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Largest letter count over the monomials.
    pub fn max_letters(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = old.add(&c)?;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut x = self.clone();
        for (m, c) in &other.terms {
            x.add_term(m.clone(), c.clone())?;
        }
        Ok(x)
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let mut x = AlgebraElement::zero();
        for (m, a) in &self.terms {
            x.add_term(m.clone(), a.mul(c)?)?;
        }
        Ok(x)
    }

    /// Concatenation product, without normalization.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut x = AlgebraElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                x.add_term(m1.concat(m2), c1.mul(c2)?)?;
            }
        }
        Ok(x)
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(m, c)| (m.adjoint(), c.conj())).collect(),
        }
    }

    /// Keep the terms whose monomials satisfy `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Zero up to `tol` in every coefficient (exact coefficients must vanish).
    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.terms.values().all(|c| match c {
            Scalar::Exact(p) => p.is_zero(),
            Scalar::Numeric(z) => z.norm() <= tol,
        })
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self, phi0: f64) -> f64 {
        self.terms.values().map(|c| c.eval(phi0).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            // a lone exact term c h^k can carry its sign outside
            let single = match c {
                Scalar::Exact(p) => match p.terms() {
                    [(e, k)] => Some((*e, *k)),
                    _ => None,
                },
                Scalar::Numeric(_) => None,
            };
            match single {
                Some((e, k)) => {
                    match (i, k < 0) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if m.is_empty() {
                        fmt_term_magnitude(f, e, k)?;
                    } else if e == 0 && k.abs() == 1 {
                        write!(f, "{m}")?;
                    } else {
                        fmt_term_magnitude(f, e, k)?;
                        write!(f, " * {m}")?;
                    }
                }
                None => {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if m.is_empty() {
                        write!(f, "{c}")?;
                    } else if c.is_one() {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{c} * {m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Phase;

    fn ex(c: i64, k: i64) -> Scalar {
        Scalar::Exact(Phase::monomial(c, k, Some(8)))
    }

    #[test]
    fn adjoint_reverses_and_conjugates() {
        let x = AlgebraElement::monomial(Monomial::new(vec![Letter::s(1), Letter::t(2)]), ex(1, 2));
        let y = x.adjoint();
        let (m, c) = y.iter().next().unwrap();
        assert_eq!(m.letters(), &[Letter::t(2).star(), Letter::s(1).star()]);
        assert_eq!(*c, ex(1, -2));
        assert_eq!(y.adjoint(), x);
    }

    #[test]
    fn products_are_bilinear() {
        let one = ex(1, 0);
        let s1 = AlgebraElement::letter(Letter::s(1), one.clone());
        let t1 = AlgebraElement::letter(Letter::t(1), one.clone());
        let p = AlgebraElement::scalar(ex(2, 0)).mul(&t1.scale(&ex(3, 0)).unwrap()).unwrap();
        assert_eq!(p, t1.scale(&ex(6, 0)).unwrap());
        let sum = s1.add(&t1).unwrap().mul(&s1).unwrap();
        assert_eq!(sum.len(), 2);
        assert_eq!(sum.to_string(), "s1 s1 + t1 s1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let s1 = AlgebraElement::letter(Letter::s(1), ex(1, 0));
        assert!(s1.sub(&s1).unwrap().is_zero());
        let mut x = s1.clone();
        x.add_term(Monomial::new(vec![Letter::s(1)]), ex(1, 4)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn display_signs() {
        let mut x = AlgebraElement::zero();
        x.add_term(Monomial::one(), ex(-1, 0)).unwrap();
        x.add_term(Monomial::new(vec![Letter::s(1)]), ex(1, 2)).unwrap();
        x.add_term(Monomial::new(vec![Letter::t(1).star()]), ex(-2, 3)).unwrap();
        assert_eq!(x.to_string(), "-1 + q * s1 - 2 h^3 * t1*");
    }
}
