//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::snf::{smith_normal_form, IntMatrix};

/// `Z^free_rank + Z/d_1 + ... + Z/d_t` with `d_1 | d_2 | ... | d_t`, each `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Z/a`; `a = 0` gives `Z` and `a = 1` the zero group.
    pub fn cyclic(a: u64) -> Self {
        match a {
            0 => Self::integers(),
            1 => Self::zero(),
            a => Self { free_rank: 0, torsion: vec![a] },
        }
    }

    /// Direct sum of `Z^free_rank` and the cyclic groups `Z/o` for `o` in `orders`
    /// (an order of 0 is another copy of `Z`).
    pub fn from_parts(free_rank: usize, orders: &[u64]) -> Self {
        let extra_free = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<u64> = orders.iter().copied().filter(|&o| o > 1).collect();
        let k = finite.len();
        let diag: IntMatrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { finite[i] as i64 } else { 0 }).collect())
            .collect();
        let torsion = smith_normal_form(&diag)
            .invariants()
            .into_iter()
            .map(|x| x as u64)
            .filter(|&x| x > 1)
            .collect();
        Self { free_rank: free_rank + extra_free, torsion }
    }

    /// Cokernel of the relation matrix: one row per relation, one column per generator.
    pub fn from_presentation(relations: &IntMatrix, generators: usize) -> Self {
        if relations.is_empty() {
            return Self::free(generators);
        }
        assert!(relations.iter().all(|r| r.len() == generators), "relation rows must have one entry per generator");
        let inv = smith_normal_form(relations).invariants();
        let torsion = inv.iter().map(|&x| x as u64).filter(|&x| x > 1).collect();
        Self { free_rank: generators - inv.len(), torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order for finite groups, `None` for infinite ones or on overflow.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn torsion_subgroup(&self) -> Self {
        Self { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Cyclic summands with `0` standing for `Z`.
    pub fn cyclic_pieces(&self) -> Vec<u64> {
        std::iter::repeat(0).take(self.free_rank).chain(self.torsion.iter().copied()).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::from_parts(self.free_rank + other.free_rank, &orders)
    }

    fn bilinear(a: &Self, b: &Self, table: fn(u64, u64) -> u64) -> Self {
        let mut orders = Vec::new();
        for x in a.cyclic_pieces() {
            for y in b.cyclic_pieces() {
                orders.push(table(x, y));
            }
        }
        Self::from_parts(0, &orders)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::bilinear(self, other, |a, b| match (a, b) {
            (0, g) | (g, 0) => g,
            (a, b) => a.gcd(&b),
        })
    }

    pub fn tor(&self, other: &Self) -> Self {
        Self::bilinear(self, other, |a, b| match (a, b) {
            (0, _) | (_, 0) => 1,
            (a, b) => a.gcd(&b),
        })
    }

    pub fn hom(&self, other: &Self) -> Self {
        Self::bilinear(self, other, |a, b| match (a, b) {
            (0, g) => g,
            (_, 0) => 1,
            (a, b) => a.gcd(&b),
        })
    }

    pub fn ext1(&self, other: &Self) -> Self {
        Self::bilinear(self, other, |a, b| match (a, b) {
            (0, _) => 1,
            (a, 0) => a,
            (a, b) => a.gcd(&b),
        })
    }

    /// Number of elements killed by `e` (finite groups only).
    pub fn count_killed_by(&self, e: u64) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.iter().map(|&d| d.gcd(&e)).product())
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The pair `(K_0, K_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KPair {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
}

impl KPair {
    pub fn new(k0: FgAbelianGroup, k1: FgAbelianGroup) -> Self {
        Self { k0, k1 }
    }

    pub fn direct_sum(&self, other: &KPair) -> KPair {
        KPair::new(self.k0.direct_sum(&other.k0), self.k1.direct_sum(&other.k1))
    }

    fn degree(&self, i: usize) -> &FgAbelianGroup {
        if i % 2 == 0 {
            &self.k0
        } else {
            &self.k1
        }
    }
}

impl fmt::Display for KPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k0, self.k1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethResult {
    pub pair: KPair,
    /// Per degree: the exact sequence forces the middle group.
    pub determined: [bool; 2],
}

impl KunnethResult {
    pub fn fully_determined(&self) -> bool {
        self.determined.iter().all(|&d| d)
    }
}

/// K-theory of `A (x) B` from the Kunneth sequence
/// `0 -> sum_{i+j=n} K_i(A) (x) K_j(B) -> K_n(A (x) B) -> sum_{i+j=n+1} Tor(K_i(A), K_j(B)) -> 0`.
///
/// When neither end vanishes the split extension is returned and the degree is flagged.
pub fn kunneth_tensor(a: &KPair, b: &KPair) -> KunnethResult {
    let mut groups = Vec::with_capacity(2);
    let mut determined = [true; 2];
    for n in 0..2 {
        let left = a.degree(0).tensor(b.degree(n)).direct_sum(&a.degree(1).tensor(b.degree(n + 1)));
        let right = a.degree(0).tor(b.degree(n + 1)).direct_sum(&a.degree(1).tor(b.degree(n)));
        determined[n] = left.is_zero() || right.is_zero();
        groups.push(left.direct_sum(&right));
    }
    let k1 = groups.pop().unwrap();
    let k0 = groups.pop().unwrap();
    KunnethResult { pair: KPair::new(k0, k1), determined }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: u64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(a)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(FgAbelianGroup::from_parts(0, &[2, 3]), z(6));
        assert_eq!(FgAbelianGroup::from_parts(1, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(FgAbelianGroup::from_parts(0, &[1, 1]), FgAbelianGroup::zero());
        assert_eq!(FgAbelianGroup::from_parts(1, &[0, 2]).to_string(), "Z^2 + Z/2");
        assert_eq!(FgAbelianGroup::zero().to_string(), "0");
    }

    #[test]
    fn functor_examples() {
        assert_eq!(z(4).tor(&z(6)), z(2));
        assert_eq!(z(3).ext1(&z(0)), z(3));
        assert_eq!(z(2).tensor(&z(4)), z(2));
        assert_eq!(z(0).tensor(&z(5)), z(5));
        assert_eq!(z(0).tor(&z(5)), FgAbelianGroup::zero());
        assert_eq!(z(5).hom(&z(0)), FgAbelianGroup::zero());
        assert_eq!(z(0).hom(&z(5)), z(5));
        assert_eq!(z(0).ext1(&z(5)), FgAbelianGroup::zero());
        assert_eq!(z(4).ext1(&z(6)), z(2));
    }

    #[test]
    fn ext1_matches_cokernel_of_multiplication() {
        // Ext(Z/a, Z) is the cokernel of Hom(Z, Z) -> Hom(Z, Z), x -> a x.
        for a in 2..20u64 {
            let coker = FgAbelianGroup::from_presentation(&vec![vec![a as i64]], 1);
            assert_eq!(z(a).ext1(&z(0)), coker);
        }
    }

    #[test]
    fn kunneth_examples() {
        let pa = KPair::new(z(2), z(1));
        let pb = KPair::new(z(4), z(1));
        let r = kunneth_tensor(&pa, &pb);
        assert_eq!(r.pair, KPair::new(z(2), z(2)));
        assert!(r.fully_determined());

        let unit = KPair::new(z(0), z(1));
        let x = KPair::new(z(6), z(0));
        assert_eq!(kunneth_tensor(&x, &unit).pair, x);
        assert_eq!(kunneth_tensor(&KPair::new(z(1), z(1)), &x).pair, KPair::new(z(1), z(1)));
    }

    #[test]
    fn kunneth_flags_extension_problem() {
        // K_0 gets Z/2 on the left and Tor(Z/2, Z/2) on the right
        let a = KPair::new(z(0), z(2));
        let b = KPair::new(z(2), z(1));
        let r = kunneth_tensor(&a, &b);
        assert_eq!(r.determined, [false, true]);
        assert_eq!(r.pair.k0, FgAbelianGroup::from_parts(0, &[2, 2]));
        assert_eq!(r.pair.k1, z(2));
    }
}
