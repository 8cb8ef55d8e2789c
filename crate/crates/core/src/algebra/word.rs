use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Generator family; the derived order S < T < U is the display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    S,
    T,
    U,
}

/// A generator or its adjoint. Indices are 1-based; U letters carry index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub family: Family,
    pub index: u16,
    pub starred: bool,
}

impl Letter {
    pub const fn s(i: u16) -> Letter {
        Letter { family: Family::S, index: i, starred: false }
    }
    pub const fn t(r: u16) -> Letter {
        Letter { family: Family::T, index: r, starred: false }
    }
    pub const fn u() -> Letter {
        Letter { family: Family::U, index: 0, starred: false }
    }
    pub const fn star(self) -> Letter {
        Letter { starred: !self.starred, ..self }
    }

    pub fn check_range(&self, n: usize, m: usize) -> Result<()> {
        let ok = match self.family {
            Family::S => self.index >= 1 && self.index as usize <= n,
            Family::T => self.index >= 1 && self.index as usize <= m,
            Family::U => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange(self.to_string()))
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::S => write!(f, "s{}", self.index)?,
            Family::T => write!(f, "t{}", self.index)?,
            Family::U => write!(f, "u")?,
        }
        if self.starred {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// A word in the letters; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<Letter>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Monomial {
        Monomial(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_w` for a word `w` of 1-based indices.
    pub fn s_word(w: &[u16]) -> Monomial {
        Monomial(w.iter().map(|&i| Letter::s(i)).collect())
    }

    pub fn t_word(w: &[u16]) -> Monomial {
        Monomial(w.iter().map(|&i| Letter::t(i)).collect())
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial(self.0.iter().rev().map(|l| l.star()).collect())
    }

    /// `(#s - #s*, #t - #t*)`.
    pub fn bidegree(&self) -> Result<(i64, i64)> {
        let mut d = (0i64, 0i64);
        for l in &self.0 {
            let sign = if l.starred { -1 } else { 1 };
            match l.family {
                Family::S => d.0 += sign,
                Family::T => d.1 += sign,
                Family::U => return Err(Error::UnsupportedGrading),
            }
        }
        Ok(d)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All words of length exactly `len` over `1..=alphabet`, in lexicographic order.
pub fn words(alphabet: usize, len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=alphabet as u16).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// All words of length at most `max_len`.
pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Vec<u16>> {
    (0..=max_len).flat_map(|l| words(alphabet, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bidegrees() {
        let w = Monomial(vec![Letter::s(1), Letter::s(2).star(), Letter::t(1), Letter::t(1).star()]);
        assert_eq!(w.bidegree().unwrap(), (0, 0));
        let w = Monomial(vec![Letter::s(1), Letter::t(1), Letter::t(2)]);
        assert_eq!(w.bidegree().unwrap(), (1, 2));
        assert_eq!(Monomial(vec![Letter::t(1).star()]).bidegree().unwrap(), (0, -1));
        assert!(Monomial(vec![Letter::u()]).bidegree().is_err());
    }

    #[test]
    fn ordering_is_length_then_letters() {
        let a = Monomial(vec![Letter::t(1)]);
        let b = Monomial(vec![Letter::s(1), Letter::s(1)]);
        assert!(a < b);
        let c = Monomial(vec![Letter::s(2)]);
        assert!(c < a);
        assert!(Monomial(vec![Letter::s(1)]) < Monomial(vec![Letter::s(1).star()]));
        assert!(Monomial::one() < c);
    }

    #[test]
    fn word_counts() {
        assert_eq!(words(3, 2).len(), 9);
        assert_eq!(words_up_to(2, 2).len(), 7);
        assert_eq!(words(2, 0), vec![Vec::<u16>::new()]);
    }
}
