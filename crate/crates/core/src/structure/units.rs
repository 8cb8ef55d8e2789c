use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{words, words_up_to, AlgebraElement, Letter, Monomial, Params, RelMode};
use crate::error::{Error, Result};
use crate::rewrite::{check_identity, normalize, RuleSet};

fn braided_rules(params: &Params) -> Result<RuleSet> {
    match params.relmode {
        RelMode::Braided => Ok(RuleSet::new(params)),
        _ => Err(Error::Mode("matrix units of the compact ideal live in the braided Toeplitz algebra".into())),
    }
}

/// `E_{mu nu} = s_mu (1 - Q) s_nu*` with `Q = sum_i s_i s_i*`.
pub fn ideal_matrix_units(mu: &[u16], nu: &[u16], params: &Params) -> Result<AlgebraElement> {
    for &i in mu.iter().chain(nu) {
        Letter::s(i).check_range(params.n, params.m)?;
    }
    let mut middle = AlgebraElement::scalar(params.one());
    for i in 1..=params.n as u16 {
        middle.add_term(Monomial::new(vec![Letter::s(i), Letter::s(i).star()]), params.int(-1))?;
    }
    let left = AlgebraElement::monomial(Monomial::s_word(mu), params.one());
    let right = AlgebraElement::monomial(Monomial::s_word(nu).adjoint(), params.one());
    left.mul(&middle)?.mul(&right)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixUnitReport {
    pub max_len: usize,
    pub units: usize,
    pub product_checks: usize,
    pub product_failures: usize,
    pub commutation_checks: usize,
    pub commutation_failures: usize,
    /// Cases where `t_a t_b* E = phase E t_a t_b*` (phase on the other side) fails.
    pub swapped_side_failures: usize,
    pub pass: bool,
}

/// Exponent of `q` in `E_{mu1 nu1} t_{mu2} t_{nu2}* = q^e t_{mu2} t_{nu2}* E_{mu1 nu1}`.
pub fn commutation_exponent(mu1: usize, nu1: usize, mu2: usize, nu2: usize) -> i64 {
    (nu1 as i64 - mu1 as i64) * (mu2 as i64 - nu2 as i64)
}

/// Matrix-unit products and the twisted commutation with `t_a t_b*` for all words up to `max_len`.
pub fn matrix_unit_suite(max_len: usize, params: &Params) -> Result<MatrixUnitReport> {
    let rules = braided_rules(params)?;
    let sw = words_up_to(params.n, max_len);
    let tw = words_up_to(params.m, max_len);
    let pairs: Vec<(&Vec<u16>, &Vec<u16>)> = sw.iter().flat_map(|a| sw.iter().map(move |b| (a, b))).collect();
    let units = pairs
        .iter()
        .map(|(a, b)| ideal_matrix_units(a, b, params))
        .collect::<Result<Vec<_>>>()?;

    let product_failures: usize = (0..pairs.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = 0;
            for j in 0..pairs.len() {
                let (mu1, nu1) = pairs[i];
                let (mu2, nu2) = pairs[j];
                let rhs = if nu1 == mu2 { ideal_matrix_units(mu1, nu2, params)? } else { AlgebraElement::zero() };
                if !check_identity(&units[i].mul(&units[j])?, &rhs, &rules)? {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .sum();

    let tpairs: Vec<(&Vec<u16>, &Vec<u16>)> = tw.iter().flat_map(|a| tw.iter().map(move |b| (a, b))).collect();
    let counts: Vec<(usize, usize)> = (0..pairs.len())
        .into_par_iter()
        .map(|i| {
            let (mu1, nu1) = pairs[i];
            let (mut bad, mut swapped_bad) = (0, 0);
            for (a, b) in &tpairs {
                let t = AlgebraElement::monomial(Monomial::t_word(a).concat(&Monomial::t_word(b).adjoint()), params.one());
                let phase = params.q_pow(commutation_exponent(mu1.len(), nu1.len(), a.len(), b.len()))?;
                let et = units[i].mul(&t)?;
                let te = t.mul(&units[i])?;
                if !check_identity(&et, &te.scale(&phase)?, &rules)? {
                    bad += 1;
                }
                if !check_identity(&te, &et.scale(&phase)?, &rules)? {
                    swapped_bad += 1;
                }
            }
            Ok((bad, swapped_bad))
        })
        .collect::<Result<_>>()?;
    let commutation_failures = counts.iter().map(|c| c.0).sum();
    let swapped_side_failures = counts.iter().map(|c| c.1).sum();
    Ok(MatrixUnitReport {
        max_len,
        units: units.len(),
        product_checks: pairs.len() * pairs.len(),
        product_failures,
        commutation_checks: pairs.len() * tpairs.len(),
        commutation_failures,
        swapped_side_failures,
        pass: product_failures == 0 && commutation_failures == 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AfBlock {
    pub k1: usize,
    pub k2: usize,
    /// The block is `M_size`, `size = n^k1 m^k2`.
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AfLayer {
    pub k: usize,
    pub blocks: Vec<AfBlock>,
    pub total_units: usize,
    pub spot_checks: usize,
    pub spot_failures: usize,
}

/// Upper limit on the number of matrix units enumerated for one layer.
pub const AF_UNIT_BUDGET: usize = 10_000_000;

/// Index `(mu, nu)` of a row of the block `(k1, k2)`.
type Row = (Vec<u16>, Vec<u16>);

fn unit(a: &Row, b: &Row) -> Monomial {
    Monomial::s_word(&a.0)
        .concat(&Monomial::t_word(&a.1))
        .concat(&Monomial::t_word(&b.1).adjoint())
        .concat(&Monomial::s_word(&b.0).adjoint())
}

/// Blocks of the layer `A^k` with spot checks of the matrix-unit laws.
///
/// Each block `(k1, k2)` gets `samples` random products `e_ab e_cd = delta_bc e_ad`
/// and `samples` commutations between its s-part and t-part.
pub fn af_layer(k: usize, params: &Params, samples: usize, seed: u64) -> Result<AfLayer> {
    let (n, m) = (params.n, params.m);
    let mut blocks = Vec::new();
    let mut total = 0usize;
    for k1 in 0..=k {
        let k2 = k - k1;
        let size = n
            .checked_pow(k1 as u32)
            .and_then(|a| m.checked_pow(k2 as u32).and_then(|b| a.checked_mul(b)))
            .ok_or_else(|| Error::CombinatorialBudget(format!("layer {k} overflows")))?;
        total = total.saturating_add(size.saturating_mul(size));
        blocks.push(AfBlock { k1, k2, size });
    }
    if total > AF_UNIT_BUDGET {
        return Err(Error::CombinatorialBudget(format!("layer {k} has {total} matrix units")));
    }
    let rules = RuleSet::new(params);
    let one = params.one();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spot_checks = 0;
    let mut spot_failures = 0;
    for b in &blocks {
        let sw = words(n, b.k1);
        let tw = words(m, b.k2);
        let pick = |rng: &mut ChaCha8Rng| -> Row {
            (sw[rng.gen_range(0..sw.len())].clone(), tw[rng.gen_range(0..tw.len())].clone())
        };
        for _ in 0..samples {
            let (a, bb, c, d) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            // half of the samples force a matching inner index
            let c = if rng.gen_bool(0.5) { bb.clone() } else { c };
            let lhs = AlgebraElement::monomial(unit(&a, &bb), one.clone()).mul(&AlgebraElement::monomial(unit(&c, &d), one.clone()))?;
            let rhs = if bb == c { AlgebraElement::monomial(unit(&a, &d), one.clone()) } else { AlgebraElement::zero() };
            spot_checks += 1;
            if !check_identity(&lhs, &rhs, &rules)? {
                spot_failures += 1;
            }
            let x = AlgebraElement::monomial(Monomial::s_word(&a.0).concat(&Monomial::s_word(&bb.0).adjoint()), one.clone());
            let y = AlgebraElement::monomial(Monomial::t_word(&a.1).concat(&Monomial::t_word(&bb.1).adjoint()), one.clone());
            spot_checks += 1;
            if !check_identity(&x.mul(&y)?, &y.mul(&x)?, &rules)? {
                spot_failures += 1;
            }
        }
    }
    Ok(AfLayer { k, blocks, total_units: total, spot_checks, spot_failures })
}

/// `E_{mu nu}` normalized, for display.
pub fn matrix_unit_normal_form(mu: &[u16], nu: &[u16], params: &Params) -> Result<AlgebraElement> {
    normalize(&ideal_matrix_units(mu, nu, params)?, &braided_rules(params)?)
}
