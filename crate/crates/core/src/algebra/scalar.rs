//! Coefficients: exact Laurent polynomials in the half-angle unit `h`, or complex doubles.

use std::fmt;

use num_complex::Complex64;

use super::cyclotomic::{reduce_dense, totient};
use crate::error::{Error, Result};

/// Exact element of `Z[h, h^-1]`, where `h = exp(i pi phi0)` and `q = h^2`.
///
/// With `order = Some(N)`, `h` is a primitive N-th root of unity and values are
/// kept reduced modulo the cyclotomic polynomial, which makes structural
/// equality coincide with equality of complex numbers. `order = None` is used
/// for plain integers, which adopt the order of whatever they meet.
#[derive(Clone, Debug)]
pub struct Phase {
    /// (exponent, coefficient), strictly increasing exponents, no zero coefficients.
    terms: Vec<(i64, i64)>,
    order: Option<u32>,
}

impl Phase {
    pub fn zero() -> Self {
        Phase { terms: Vec::new(), order: None }
    }

    pub fn int(c: i64) -> Self {
        let terms = if c == 0 { Vec::new() } else { vec![(0, c)] };
        Phase { terms, order: None }
    }

    /// `c * h^k` in the ring where `h` has the given order.
    pub fn monomial(c: i64, k: i64, order: Option<u32>) -> Self {
        Self::from_terms(vec![(k, c)], order)
    }

    pub fn from_terms(terms: Vec<(i64, i64)>, order: Option<u32>) -> Self {
        let mut p = Phase { terms, order };
        p.canonicalize();
        p
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    /// Re-express in the ring where `h` has the given order.
    pub fn with_order(&self, order: Option<u32>) -> Result<Phase> {
        match (self.order, order) {
            (None, _) => Ok(Phase::from_terms(self.terms.clone(), order)),
            (a, b) if a == b => Ok(self.clone()),
            (_, None) => Ok(self.clone()),
            (Some(a), Some(b)) => Err(Error::BackendMismatch(format!(
                "exact phases of different orders {a} and {b}"
            ))),
        }
    }

    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    fn canonicalize(&mut self) {
        match self.order {
            None => {
                self.terms.sort_unstable_by_key(|t| t.0);
                merge_sorted(&mut self.terms);
            }
            Some(n) => {
                let deg = totient(n) as i64;
                let ni = n as i64;
                if let [(e, c)] = self.terms[..] {
                    let e = e.rem_euclid(ni);
                    if e < deg && c != 0 {
                        self.terms[0] = (e, c);
                        return;
                    }
                }
                let mut dense = vec![0i64; n as usize];
                for &(e, c) in &self.terms {
                    dense[e.rem_euclid(ni) as usize] += c;
                }
                let red = reduce_dense(dense, n);
                self.terms = red
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .map(|(e, c)| (e as i64, c))
                    .collect();
            }
        }
    }

    fn joint_order(&self, other: &Phase) -> Result<Option<u32>> {
        match (self.order, other.order) {
            (Some(a), Some(b)) if a != b => Err(Error::BackendMismatch(format!(
                "exact phases of different orders {a} and {b}"
            ))),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn mul(&self, other: &Phase) -> Result<Phase> {
        let order = self.joint_order(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                terms.push((e1 + e2, c1 * c2));
            }
        }
        Ok(Phase::from_terms(terms, order))
    }

    pub fn add(&self, other: &Phase) -> Result<Phase> {
        let order = self.joint_order(other)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Phase::from_terms(terms, order))
    }

    pub fn neg(&self) -> Phase {
        Phase {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
            order: self.order,
        }
    }

    /// Multiply by `h^k` in place.
    pub fn shift(&mut self, k: i64) {
        if k == 0 || self.terms.is_empty() {
            return;
        }
        for t in &mut self.terms {
            t.0 += k;
        }
        if self.order.is_some() {
            self.canonicalize();
        }
    }

    /// Complex conjugation: `h^k -> h^-k`.
    pub fn conj(&self) -> Phase {
        Phase::from_terms(self.terms.iter().map(|&(e, c)| (-e, c)).collect(), self.order)
    }

    /// Numerical value at `h = exp(i pi phi0)`.
    pub fn eval(&self, phi0: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(e, c)| Complex64::from_polar(c as f64, std::f64::consts::PI * phi0 * e as f64))
            .sum()
    }
}

/// Equal terms are equal values; an unset order only arises for integers.
impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (self.order == other.order || self.order.is_none() || other.order.is_none())
    }
}

impl Eq for Phase {}

fn merge_sorted(terms: &mut Vec<(i64, i64)>) {
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(terms.len());
    for &(e, c) in terms.iter() {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    *terms = out;
}

/// A coefficient of an algebra element.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Phase),
    Numeric(Complex64),
}

impl Scalar {
    pub fn int(c: i64) -> Scalar {
        Scalar::Exact(Phase::int(c))
    }

    pub fn h_pow(k: i64, order: Option<u32>) -> Scalar {
        Scalar::Exact(Phase::monomial(1, k, order))
    }

    pub fn numeric(z: Complex64) -> Scalar {
        Scalar::Numeric(z)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(p) => p.is_zero(),
            Scalar::Numeric(z) => *z == Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(p) => p.is_one(),
            Scalar::Numeric(z) => *z == Complex64::new(1.0, 0.0),
        }
    }

    /// The unit of the same backend as `self`.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Exact(p) => Scalar::Exact(Phase::monomial(1, 0, p.order)),
            Scalar::Numeric(_) => Scalar::Numeric(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::Exact(Phase::zero()),
            Scalar::Numeric(_) => Scalar::Numeric(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.mul(b)?)),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Ok(Scalar::Numeric(a * b)),
            _ => Err(mismatch()),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.add(b)?)),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Ok(Scalar::Numeric(a + b)),
            _ => Err(mismatch()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.neg()),
            Scalar::Numeric(z) => Scalar::Numeric(-z),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.conj()),
            Scalar::Numeric(z) => Scalar::Numeric(z.conj()),
        }
    }

    /// Complex value; exact phases need the angle `phi0` with `h = exp(i pi phi0)`.
    pub fn eval(&self, phi0: f64) -> Complex64 {
        match self {
            Scalar::Exact(p) => p.eval(phi0),
            Scalar::Numeric(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

fn mismatch() -> Error {
    Error::BackendMismatch("exact and numeric scalars cannot be combined".into())
}

fn fmt_power(f: &mut fmt::Formatter<'_>, k: i64) -> fmt::Result {
    if k % 2 == 0 {
        match k / 2 {
            1 => write!(f, "q"),
            j => write!(f, "q^{j}"),
        }
    } else {
        match k {
            1 => write!(f, "h"),
            _ => write!(f, "h^{k}"),
        }
    }
}

/// Formats `|c| h^k` for a single term; the sign is written by the caller.
pub(crate) fn fmt_term_magnitude(f: &mut fmt::Formatter<'_>, e: i64, c: i64) -> fmt::Result {
    let a = c.unsigned_abs();
    match (e, a) {
        (0, _) => write!(f, "{a}"),
        (_, 1) => fmt_power(f, e),
        _ => {
            write!(f, "{a} ")?;
            fmt_power(f, e)
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.as_slice() {
            [] => write!(f, "0"),
            [(e, c)] => {
                if *c < 0 {
                    write!(f, "-")?;
                }
                fmt_term_magnitude(f, *e, *c)
            }
            terms => {
                write!(f, "(")?;
                for (i, &(e, c)) in terms.iter().enumerate() {
                    match (i, c < 0) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    fmt_term_magnitude(f, e, c)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(p) => write!(f, "{p}"),
            Scalar::Numeric(z) => write!(f, "c({:?},{:?})", z.re, z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(k: i64, n: u32) -> Phase {
        Phase::monomial(1, k, Some(n))
    }

    #[test]
    fn products_of_powers() {
        // q = i: h = exp(i pi / 4) has order 8
        assert_eq!(h(1, 8).mul(&h(1, 8)).unwrap(), h(2, 8));
        assert_eq!(h(3, 8).mul(&h(-3, 8)).unwrap(), Phase::monomial(1, 0, Some(8)));
        assert_eq!(h(5, 8).mul(&h(4, 8)).unwrap(), h(1, 8));
        // h^4 = -1 at order 8
        assert_eq!(h(4, 8), Phase::monomial(-1, 0, Some(8)));
    }

    #[test]
    fn cancellation_at_q_equal_i() {
        let s = h(0, 8).add(&h(4, 8)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn order_six_relation() {
        // h = exp(i pi/3): h^2 = h - 1
        assert_eq!(
            h(2, 6),
            Phase::from_terms(vec![(0, -1), (1, 1)], Some(6))
        );
    }

    #[test]
    fn integers_adopt_order() {
        let p = Phase::int(3).mul(&h(9, 8)).unwrap();
        assert_eq!(p, Phase::monomial(3, 1, Some(8)));
        assert!(h(1, 8).mul(&h(1, 6)).is_err());
    }

    #[test]
    fn mixed_backend_is_rejected() {
        let e = Scalar::int(2);
        let z = Scalar::numeric(Complex64::new(1.0, 0.0));
        assert!(matches!(e.mul(&z), Err(Error::BackendMismatch(_))));
        assert!(e.add(&z).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(h(2, 8).conj(), h(-2, 8));
        let x = Phase::from_terms(vec![(1, 2), (3, -1)], Some(12));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn display() {
        assert_eq!(h(2, 8).to_string(), "q");
        assert_eq!(h(5, 8).to_string(), "-h");
        assert_eq!(Phase::monomial(1, -2, None).to_string(), "q^-1");
        assert_eq!(Phase::from_terms(vec![(0, 1), (3, -2)], None).to_string(), "(1 - 2 h^3)");
        assert_eq!(Phase::int(-4).to_string(), "-4");
    }
}
