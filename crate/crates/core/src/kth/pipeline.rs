use num_integer::Integer;
use serde::Serialize;

use super::group::{kunneth_tensor, FgAbelianGroup, KPair, KunnethResult};
use crate::error::{Error, Result};

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidParams(format!("K-theory computations need n, m >= 2, got ({n}, {m})")));
    }
    Ok(())
}

/// `K_*(O_n) = (Z/(n-1), 0)`.
pub fn k_cuntz(n: usize) -> KPair {
    KPair::new(FgAbelianGroup::cyclic(n as u64 - 1), FgAbelianGroup::zero())
}

/// `K_*(O_n^(0)) = (Z, 0)`.
pub fn k_toeplitz() -> KPair {
    KPair::new(FgAbelianGroup::integers(), FgAbelianGroup::zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl ConstraintCheck {
    fn new(name: &str, holds: bool, detail: String) -> Self {
        Self { name: name.to_string(), holds, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    pub k_on: KPair,
    pub k_om: KPair,
    /// `K(O_n (x)_q O_m)`, equal to the untwisted tensor product by deformation invariance.
    pub k_twisted: KunnethResult,
    /// `K(E_{n,m}^q)` from the Toeplitz factors.
    pub k_toeplitz: KunnethResult,
    /// `K(M_q)` for the ideal `M_q = ker(E -> O_n (x)_q O_m)`.
    pub k_ideal: KPair,
    pub checks: Vec<ConstraintCheck>,
    pub consistent: bool,
}

/// Rank of a f.g. abelian group as an `i64` for alternating sums.
fn rk(g: &FgAbelianGroup) -> i64 {
    g.free_rank as i64
}

/// Search `x` in `G = Z^r + T` with `G / <x> = target`; `T` is enumerated in full.
fn quotient_witness(g: &FgAbelianGroup, target: &FgAbelianGroup) -> Option<Vec<i64>> {
    if g.free_rank != 1 || !target.is_finite() {
        return None;
    }
    let tors = &g.torsion;
    let torder = g.torsion_order();
    let order = target.order()?;
    if order % torder != 0 {
        return None;
    }
    // |G / <(a, t)>| = a |T| for a > 0
    let a = (order / torder) as i64;
    let gens = 1 + tors.len();
    let mut t = vec![0i64; tors.len()];
    loop {
        let mut rel = vec![a];
        rel.extend(&t);
        let mut rels = vec![rel];
        for (i, &d) in tors.iter().enumerate() {
            let mut row = vec![0i64; gens];
            row[i + 1] = d as i64;
            rels.push(row);
        }
        if FgAbelianGroup::from_presentation(&rels, gens) == *target {
            let mut w = vec![a];
            w.extend(&t);
            return Some(w);
        }
        // odometer over the torsion coordinates
        let mut i = 0;
        loop {
            if i == t.len() {
                return None;
            }
            t[i] += 1;
            if t[i] < tors[i] as i64 {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// K-theory of `O_n (x)_q O_m`, `E_{n,m}^q` and the ideal `M_q`.
///
/// `K(M_q)` is derived from two exact sequences:
/// `0 -> K -> M_q -> O_n (x) K + O_m (x) K -> 0` forces `K_1(M_q) = 0`;
/// `0 -> M_q -> E -> O_n (x)_q O_m -> 0` gives
/// `0 = K_1(E) -> K_1(O (x) O) -i-> K_0(M_q) -p-> K_0(E) -e-> K_0(O (x) O) -> K_1(M_q) = 0`,
/// so `i` is injective, `Im p = ker e` is free and the sequence splits:
/// `K_0(M_q) = ker e + K_1(O (x) O)`.
pub fn k_pipeline(n: usize, m: usize) -> Result<PipelineReport> {
    check_nm(n, m)?;
    let d = (n as u64 - 1).gcd(&(m as u64 - 1));
    let k_on = k_cuntz(n);
    let k_om = k_cuntz(m);
    let k_twisted = kunneth_tensor(&k_on, &k_om);
    let k_e = kunneth_tensor(&k_toeplitz(), &k_toeplitz());
    let a = &k_twisted.pair;
    let e = &k_e.pair;
    let mut checks = Vec::new();

    // K(K) = (Z, 0), and tensoring with K does not change K-theory
    let k_compact = KPair::new(FgAbelianGroup::integers(), FgAbelianGroup::zero());
    let quotient = k_on.direct_sum(&k_om);
    checks.push(ConstraintCheck::new(
        "k1-sandwich",
        k_compact.k1.is_zero() && quotient.k1.is_zero(),
        format!("K_1(K) = {} and K_1(O_n (x) K + O_m (x) K) = {}", k_compact.k1, quotient.k1),
    ));
    let k1_ideal = FgAbelianGroup::zero();

    let i_injective = e.k1.is_zero();
    checks.push(ConstraintCheck::new("i-injective", i_injective, format!("K_1(E) = {}", e.k1)));

    // e : K_0(E) -> K_0(O (x) O) is onto because the next group K_1(M_q) vanishes
    let e_onto = k1_ideal.is_zero() && e.k0.free_rank >= 1;
    checks.push(ConstraintCheck::new(
        "e-surjective",
        e_onto,
        format!("K_0(E) = {} maps onto K_0(O (x) O) = {}", e.k0, a.k0),
    ));
    let image_p = FgAbelianGroup::free(e.k0.free_rank - a.k0.free_rank.min(e.k0.free_rank));
    let splits = e.k0.torsion.is_empty();
    checks.push(ConstraintCheck::new(
        "cokernel-free",
        splits,
        format!("Im p = ker e = {image_p} is a subgroup of the free group {}", e.k0),
    ));
    let k0_ideal = image_p.direct_sum(&a.k1);
    let k_ideal = KPair::new(k0_ideal, k1_ideal);

    let alt = rk(&k_ideal.k0) - rk(&e.k0) + rk(&a.k0) - rk(&k_ideal.k1) + rk(&e.k1) - rk(&a.k1);
    checks.push(ConstraintCheck::new("rank-alternating-sum", alt == 0, format!("alternating rank sum {alt}")));

    let witness = quotient_witness(&k_ideal.k0, &quotient.k0);
    checks.push(ConstraintCheck::new(
        "first-sequence-cokernel",
        witness.is_some(),
        match &witness {
            Some(w) => format!("K_0(M_q) / <{w:?}> = {}", quotient.k0),
            None => format!("no element of {} has quotient {}", k_ideal.k0, quotient.k0),
        },
    ));
    let tors = k_ideal.k0.torsion_order();
    checks.push(ConstraintCheck::new("torsion-divides-d", d % tors == 0, format!("|Tors K_0(M_q)| = {tors}, d = {d}")));

    let consistent = checks.iter().all(|c| c.holds);
    Ok(PipelineReport { n, m, d, k_on, k_om, k_twisted, k_toeplitz: k_e, k_ideal, checks, consistent })
}

#[derive(Clone, Debug, Serialize)]
pub struct UctReport {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    /// `Ext^1(K_0 A, K_0 B) + Ext^1(K_1 A, K_1 B)`.
    pub left: FgAbelianGroup,
    /// `Hom(K_0 A, K_1 B) + Hom(K_1 A, K_0 B)`.
    pub right: FgAbelianGroup,
    pub hom_k0_k1: FgAbelianGroup,
    /// `|KK_1(A, B)| = |left| |right|` when both ends are finite.
    pub order_bound: Option<u64>,
    /// Both ends nonzero: the extension class of `KK_1` is not determined.
    pub ambiguous: bool,
    /// `"0"` when both ends vanish, otherwise a description of the pieces.
    pub ext: String,
}

/// UCT ends for `Ext(O_n (x)_q O_m, M_q) = KK_1(O_n (x)_q O_m, M_q)`.
pub fn uct_ext(n: usize, m: usize) -> Result<UctReport> {
    let p = k_pipeline(n, m)?;
    let a = &p.k_twisted.pair;
    let b = &p.k_ideal;
    let left = a.k0.ext1(&b.k0).direct_sum(&a.k1.ext1(&b.k1));
    let hom_k0_k1 = a.k0.hom(&b.k1);
    let right = hom_k0_k1.direct_sum(&a.k1.hom(&b.k0));
    let order_bound = match (left.order(), right.order()) {
        (Some(x), Some(y)) => x.checked_mul(y),
        _ => None,
    };
    let ambiguous = !left.is_zero() && !right.is_zero();
    let ext = if left.is_zero() && right.is_zero() {
        "0".to_string()
    } else if right.is_zero() {
        left.to_string()
    } else if left.is_zero() {
        right.to_string()
    } else {
        format!("extension of {right} by {left}")
    };
    Ok(UctReport { n, m, d: p.d, left, right, hom_k0_k1, order_bound, ambiguous, ext })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    #[serde(rename = "K0")]
    pub k0: String,
    #[serde(rename = "K1")]
    pub k1: String,
    #[serde(rename = "K0_Mq")]
    pub k0_mq: String,
    #[serde(rename = "K1_Mq")]
    pub k1_mq: String,
    #[serde(rename = "Ext_status")]
    pub ext_status: String,
    /// Every group equals its closed form.
    pub matches_closed_form: bool,
    pub consistent: bool,
}

/// Closed forms: `K(O (x)_q O) = (Z/d, Z/d)`, `K(M_q) = (Z + Z/d, 0)`,
/// UCT ends `(Z/d)^2` and `Z/d`, `Ext = 0` iff `d = 1`.
fn closed_form_holds(p: &PipelineReport, u: &UctReport) -> bool {
    let zd = FgAbelianGroup::cyclic(p.d);
    let twisted = p.k_twisted.pair == KPair::new(zd.clone(), zd.clone());
    let ideal = p.k_ideal == KPair::new(FgAbelianGroup::integers().direct_sum(&zd), FgAbelianGroup::zero());
    let ends = u.left == zd.direct_sum(&zd) && u.right == zd;
    let ext = (u.ext == "0") == (p.d == 1);
    let order = p.d == 1 || u.order_bound == Some(p.d.pow(3));
    twisted && ideal && ends && ext && order && p.k_twisted.fully_determined()
}

pub fn k_table_row(n: usize, m: usize) -> Result<TableRow> {
    let p = k_pipeline(n, m)?;
    let u = uct_ext(n, m)?;
    let ext_status = if u.ext == "0" {
        "0".to_string()
    } else {
        format!("ambiguous: left {} right {} order {}", u.left, u.right, u.order_bound.map_or("inf".into(), |o| o.to_string()))
    };
    Ok(TableRow {
        n,
        m,
        d: p.d,
        k0: p.k_twisted.pair.k0.to_string(),
        k1: p.k_twisted.pair.k1.to_string(),
        k0_mq: p.k_ideal.k0.to_string(),
        k1_mq: p.k_ideal.k1.to_string(),
        ext_status,
        matches_closed_form: closed_form_holds(&p, &u),
        consistent: p.consistent,
    })
}

/// Rows for `2 <= n <= n_max`, `2 <= m <= m_max`.
pub fn k_table(n_max: usize, m_max: usize) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for m in 2..=m_max {
            rows.push(k_table_row(n, m)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: u64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(a)
    }

    #[test]
    fn pipeline_coprime() {
        let p = k_pipeline(2, 3).unwrap();
        assert_eq!(p.d, 1);
        assert_eq!(p.k_twisted.pair, KPair::new(z(1), z(1)));
        assert_eq!(p.k_ideal, KPair::new(z(0), z(1)));
        assert_eq!(p.k_toeplitz.pair, KPair::new(z(0), z(1)));
        assert!(p.consistent, "{:?}", p.checks);
    }

    #[test]
    fn pipeline_d2() {
        let p = k_pipeline(3, 3).unwrap();
        assert_eq!(p.d, 2);
        assert_eq!(p.k_twisted.pair, KPair::new(z(2), z(2)));
        assert_eq!(p.k_ideal.k0.to_string(), "Z + Z/2");
        assert!(p.k_ideal.k1.is_zero());
        assert!(p.consistent, "{:?}", p.checks);
    }

    #[test]
    fn pipeline_witness_noncyclic_quotient() {
        // (3, 5): d = 2, the first sequence needs K_0(M_q) / <x> = Z/2 + Z/4
        let p = k_pipeline(3, 5).unwrap();
        let c = p.checks.iter().find(|c| c.name == "first-sequence-cokernel").unwrap();
        assert!(c.holds, "{}", c.detail);
        assert_eq!(p.k_twisted.pair.k0, z(2));
    }

    #[test]
    fn uct_examples() {
        let u = uct_ext(2, 3).unwrap();
        assert_eq!(u.ext, "0");
        assert!(!u.ambiguous);
        let u = uct_ext(3, 3).unwrap();
        assert_eq!(u.left.to_string(), "Z/2 + Z/2");
        assert_eq!(u.right, z(2));
        assert_eq!(u.order_bound, Some(8));
        assert!(u.ambiguous);
        assert!(u.hom_k0_k1.is_zero());
    }

    #[test]
    fn table_matches_closed_forms() {
        let rows = k_table(12, 12).unwrap();
        assert_eq!(rows.len(), 121);
        for r in &rows {
            assert!(r.matches_closed_form && r.consistent, "{r:?}");
        }
    }

    #[test]
    fn rejects_small_n() {
        assert!(k_pipeline(1, 3).is_err());
    }
}
