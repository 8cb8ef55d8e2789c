use serde::Serialize;

use crate::algebra::{Family, Letter};
use crate::error::{Error, Result};

/// Which of the two unitarily equivalent Fock pictures is used on the tensor model.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum TensorVariant {
    /// `s = S (x) 1`, `t = d(q) (x) T` where `d(q)` multiplies degree-a vectors by `q^a`.
    #[default]
    Canonical,
    /// `s = S (x) d(q^-1/2)`, `t = d(q^1/2) (x) T`.
    HalfPower,
}

/// Truncated Fock space with a dense index for its word basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FockBasis {
    /// `F_n (x) F_m` cut at word lengths `ds` and `dt`.
    Tensor { n: usize, m: usize, ds: usize, dt: usize },
    /// `F_{n+m}` cut at word length `depth`; letter `i <= n` is `s_i`, letter `n + r` is `t_r`.
    Full { n: usize, m: usize, depth: usize },
}

/// Number of words of length at most `d` over `k` letters.
pub fn word_count(k: usize, d: usize) -> usize {
    let mut total = 0usize;
    let mut p = 1usize;
    for _ in 0..=d {
        total += p;
        p *= k;
    }
    total
}

/// Dense index of words of bounded length over a fixed alphabet, shortest first.
#[derive(Clone, Debug)]
struct WordIndex {
    k: usize,
    /// `offsets[l]` is the index of the first word of length `l`; `offsets[d+1]` is the count.
    offsets: Vec<usize>,
    /// `pows[l] = k^l`.
    pows: Vec<usize>,
}

impl WordIndex {
    fn new(k: usize, d: usize) -> WordIndex {
        let mut offsets = vec![0usize];
        let mut pows = vec![1usize];
        for l in 0..=d {
            offsets.push(offsets[l] + pows[l]);
            pows.push(pows[l] * k);
        }
        WordIndex { k, offsets, pows }
    }

    fn max_len(&self) -> usize {
        self.offsets.len() - 2
    }

    fn count(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    fn len_of(&self, idx: usize) -> usize {
        // offsets is increasing; words are short so a scan is fine
        let mut l = 0;
        while self.offsets[l + 1] <= idx {
            l += 1;
        }
        l
    }

    /// Prepend letter `c` (0-based); `None` if the result is too long.
    fn push(&self, idx: usize, c: usize) -> Option<usize> {
        let l = self.len_of(idx);
        if l + 1 > self.max_len() {
            return None;
        }
        Some(self.offsets[l + 1] + c * self.pows[l] + (idx - self.offsets[l]))
    }

    /// Remove the first letter if it equals `c`.
    fn pop(&self, idx: usize, c: usize) -> Option<usize> {
        let l = self.len_of(idx);
        if l == 0 {
            return None;
        }
        let rel = idx - self.offsets[l];
        let first = rel / self.pows[l - 1];
        (first == c).then(|| self.offsets[l - 1] + rel % self.pows[l - 1])
    }

    fn encode(&self, w: &[u16]) -> usize {
        let mut rel = 0usize;
        for &c in w {
            rel = rel * self.k + (c as usize - 1);
        }
        self.offsets[w.len()] + rel
    }

    fn decode(&self, idx: usize) -> Vec<u16> {
        let l = self.len_of(idx);
        let mut rel = idx - self.offsets[l];
        let mut w = vec![0u16; l];
        for pos in (0..l).rev() {
            w[pos] = (rel % self.k) as u16 + 1;
            rel /= self.k;
        }
        w
    }
}

/// Index arithmetic for a [`FockBasis`].
#[derive(Clone, Debug)]
pub struct Indexer {
    basis: FockBasis,
    a: WordIndex,
    b: WordIndex,
}

impl FockBasis {
    pub fn tensor(n: usize, m: usize, ds: usize, dt: usize) -> FockBasis {
        FockBasis::Tensor { n, m, ds, dt }
    }

    pub fn full(n: usize, m: usize, depth: usize) -> FockBasis {
        FockBasis::Full { n, m, depth }
    }

    pub fn dim(&self) -> usize {
        match *self {
            FockBasis::Tensor { n, m, ds, dt } => word_count(n, ds) * word_count(m, dt),
            FockBasis::Full { n, m, depth } => word_count(n + m, depth),
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FockBasis::Tensor { n, .. } | FockBasis::Full { n, .. } => n,
        }
    }

    pub fn m(&self) -> usize {
        match *self {
            FockBasis::Tensor { m, .. } | FockBasis::Full { m, .. } => m,
        }
    }

    /// Degree bounds: `(ds, dt)` for the tensor model, `(depth, 0)` for the full model.
    pub fn depths(&self) -> (usize, usize) {
        match *self {
            FockBasis::Tensor { ds, dt, .. } => (ds, dt),
            FockBasis::Full { depth, .. } => (depth, 0),
        }
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, FockBasis::Tensor { .. })
    }

    pub fn indexer(&self) -> Indexer {
        match *self {
            FockBasis::Tensor { n, m, ds, dt } => Indexer {
                basis: *self,
                a: WordIndex::new(n, ds),
                b: WordIndex::new(m, dt),
            },
            FockBasis::Full { n, m, depth } => Indexer {
                basis: *self,
                a: WordIndex::new(n + m, depth),
                b: WordIndex::new(1, 0),
            },
        }
    }
}

/// Effect of one generator on a basis vector: new index and the exponent of `h` picked up.
pub type Move = Option<(usize, i64)>;

impl Indexer {
    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.a.count() * self.b.count()
    }

    fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.b.count(), idx % self.b.count())
    }

    fn join(&self, ia: usize, ib: usize) -> usize {
        ia * self.b.count() + ib
    }

    /// `(|mu|, |nu|)` for the tensor model, `(|w|, 0)` for the full model.
    pub fn degree(&self, idx: usize) -> (usize, usize) {
        let (ia, ib) = self.split(idx);
        (self.a.len_of(ia), self.b.len_of(ib))
    }

    /// Basis vector of the word pair `(mu, nu)`; for the full model `nu` must be empty.
    pub fn encode(&self, mu: &[u16], nu: &[u16]) -> Result<usize> {
        if mu.len() > self.a.max_len() || nu.len() > self.b.max_len() {
            return Err(Error::DimensionGuard { dim: mu.len().max(nu.len()), cap: self.a.max_len() });
        }
        let ka = self.a.k as u16;
        let kb = self.b.k as u16;
        if mu.iter().any(|&c| c == 0 || c > ka) || (self.basis.is_tensor() && nu.iter().any(|&c| c == 0 || c > kb)) {
            return Err(Error::LetterOutOfRange(format!("{mu:?} {nu:?}")));
        }
        Ok(self.join(self.a.encode(mu), self.b.encode(nu)))
    }

    pub fn decode(&self, idx: usize) -> (Vec<u16>, Vec<u16>) {
        let (ia, ib) = self.split(idx);
        let nu = if self.basis.is_tensor() { self.b.decode(ib) } else { Vec::new() };
        (self.a.decode(ia), nu)
    }

    /// Action of the default generator for `l` on basis vector `idx`.
    pub fn apply(&self, l: Letter, idx: usize, variant: TensorVariant) -> Move {
        let (ia, ib) = self.split(idx);
        let c = l.index as usize - 1;
        match self.basis {
            FockBasis::Full { n, .. } => {
                let c = match l.family {
                    Family::S => c,
                    Family::T => n + c,
                    Family::U => return None,
                };
                let ia2 = if l.starred { self.a.pop(ia, c)? } else { self.a.push(ia, c)? };
                Some((self.join(ia2, ib), 0))
            }
            FockBasis::Tensor { .. } => {
                let (la, lb) = (self.a.len_of(ia) as i64, self.b.len_of(ib) as i64);
                match (l.family, l.starred) {
                    (Family::S, false) => {
                        let e = match variant {
                            TensorVariant::Canonical => 0,
                            TensorVariant::HalfPower => -lb,
                        };
                        Some((self.join(self.a.push(ia, c)?, ib), e))
                    }
                    (Family::S, true) => {
                        let e = match variant {
                            TensorVariant::Canonical => 0,
                            TensorVariant::HalfPower => lb,
                        };
                        Some((self.join(self.a.pop(ia, c)?, ib), e))
                    }
                    (Family::T, false) => {
                        let e = match variant {
                            TensorVariant::Canonical => 2 * la,
                            TensorVariant::HalfPower => la,
                        };
                        Some((self.join(ia, self.b.push(ib, c)?), e))
                    }
                    (Family::T, true) => {
                        let e = match variant {
                            TensorVariant::Canonical => -2 * la,
                            TensorVariant::HalfPower => -la,
                        };
                        Some((self.join(ia, self.b.pop(ib, c)?), e))
                    }
                    (Family::U, _) => None,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(FockBasis::tensor(2, 2, 5, 5).dim(), 63 * 63);
        assert_eq!(FockBasis::tensor(2, 3, 1, 2).dim(), 3 * 13);
        assert_eq!(FockBasis::full(1, 1, 14).dim(), 32767);
    }

    #[test]
    fn index_round_trip() {
        for basis in [FockBasis::tensor(2, 3, 3, 2), FockBasis::full(2, 1, 4)] {
            let ix = basis.indexer();
            assert_eq!(ix.dim(), basis.dim());
            for idx in 0..basis.dim() {
                let (mu, nu) = ix.decode(idx);
                assert_eq!(ix.encode(&mu, &nu).unwrap(), idx);
            }
        }
    }

    #[test]
    fn creation_and_annihilation() {
        let ix = FockBasis::tensor(2, 2, 3, 3).indexer();
        let v = ix.encode(&[2], &[]).unwrap();
        let (w, e) = ix.apply(Letter::t(1), v, TensorVariant::Canonical).unwrap();
        assert_eq!(ix.decode(w), (vec![2], vec![1]));
        assert_eq!(e, 2);
        let vac = ix.encode(&[], &[]).unwrap();
        assert_eq!(ix.apply(Letter::s(1).star(), vac, TensorVariant::Canonical), None);
        let (w, _) = ix.apply(Letter::s(1), vac, TensorVariant::Canonical).unwrap();
        assert_eq!(ix.decode(w), (vec![1], vec![]));
        assert_eq!(ix.apply(Letter::s(2).star(), w, TensorVariant::Canonical), None);
    }

    #[test]
    fn truncation_drops() {
        let ix = FockBasis::full(1, 1, 2).indexer();
        let v = ix.encode(&[1, 2], &[]).unwrap();
        assert_eq!(ix.apply(Letter::t(1), v, TensorVariant::Canonical), None);
        let (w, _) = ix.apply(Letter::s(1).star(), v, TensorVariant::Canonical).unwrap();
        assert_eq!(ix.decode(w).0, vec![2]);
    }
}
