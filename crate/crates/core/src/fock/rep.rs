use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{FockBasis, Indexer, TensorVariant};
use super::operator::{merge_sparse, FockOperator, ShiftRange};
use crate::algebra::{AlgebraElement, Family, Letter, Params, RelMode, Scalar};
use crate::error::{Error, Result};

/// Largest number of basis columns materialized by default.
pub const DEFAULT_DIM_CAP: usize = 200_000;

/// A basis is never indexed beyond this multiple of the column cap.
const INDEX_HEADROOM: usize = 20;

#[derive(Clone, Copy, Debug)]
pub struct FockOptions {
    pub variant: TensorVariant,
    pub dim_cap: usize,
}

impl Default for FockOptions {
    fn default() -> Self {
        FockOptions { variant: TensorVariant::Canonical, dim_cap: DEFAULT_DIM_CAP }
    }
}

fn check_basis(basis: &FockBasis, params: &Params) -> Result<()> {
    if basis.n() != params.n || basis.m() != params.m {
        return Err(Error::InvalidParams(format!(
            "basis is for n = {}, m = {} but parameters have n = {}, m = {}",
            basis.n(),
            basis.m(),
            params.n,
            params.m
        )));
    }
    if basis.is_tensor() && !(params.is_exact() && params.relmode == RelMode::Braided) {
        return Err(Error::Mode(
            "the tensor Fock model represents the braided Toeplitz algebra with |q| = 1".into(),
        ));
    }
    Ok(())
}

fn check_size(basis: &FockBasis, columns: usize, cap: usize) -> Result<()> {
    if columns > cap {
        return Err(Error::DimensionGuard { dim: columns, cap });
    }
    if basis.dim() > cap.saturating_mul(INDEX_HEADROOM) {
        return Err(Error::DimensionGuard { dim: basis.dim(), cap: cap.saturating_mul(INDEX_HEADROOM) });
    }
    Ok(())
}

/// Per-factor degree change of a letter: `(ds, dt)` on the tensor model, `(d, 0)` on the full model.
fn letter_shift(l: &Letter, tensor: bool) -> Result<(i64, i64)> {
    let sign = if l.starred { -1 } else { 1 };
    match (l.family, tensor) {
        (Family::U, _) => Err(Error::UnsupportedLetter(format!("{l} has no Fock representation"))),
        (Family::S, true) => Ok((sign, 0)),
        (Family::T, true) => Ok((0, sign)),
        (_, false) => Ok((sign, 0)),
    }
}

/// Highest degree reached above the input, per factor, while the words of `x` act right to left.
pub fn peak(x: &AlgebraElement, basis: &FockBasis) -> Result<(usize, usize)> {
    let mut best = (0i64, 0i64);
    for (m, _) in x.iter() {
        let mut cur = (0i64, 0i64);
        for l in m.letters().iter().rev() {
            let d = letter_shift(l, basis.is_tensor())?;
            cur = (cur.0 + d.0, cur.1 + d.1);
            best = (best.0.max(cur.0), best.1.max(cur.1));
        }
    }
    Ok((best.0 as usize, best.1 as usize))
}

/// Declared degree-shift range of the operator of `x`.
fn element_shift(x: &AlgebraElement, basis: &FockBasis) -> Result<(ShiftRange, ShiftRange)> {
    let mut a = (i64::MAX, i64::MIN);
    let mut b = (i64::MAX, i64::MIN);
    for (m, _) in x.iter() {
        let mut d = (0i64, 0i64);
        for l in m.letters() {
            let s = letter_shift(l, basis.is_tensor())?;
            d = (d.0 + s.0, d.1 + s.1);
        }
        a = (a.0.min(d.0), a.1.max(d.0));
        b = (b.0.min(d.1), b.1.max(d.1));
    }
    if x.is_zero() {
        return Ok(((0, 0), (0, 0)));
    }
    Ok((a, b))
}

/// Basis vectors on which no word of `x` leaves the truncation at any intermediate step.
pub fn safe_columns(x: &AlgebraElement, basis: &FockBasis) -> Result<Vec<usize>> {
    let (pa, pb) = peak(x, basis)?;
    let (da, db) = basis.depths();
    if pa > da || pb > db {
        return Err(Error::DegenerateSafeSubspace { peak: pa.max(pb), depth: if pa > da { da } else { db } });
    }
    let ix = basis.indexer();
    Ok((0..basis.dim())
        .filter(|&j| {
            let (a, b) = ix.degree(j);
            a + pa <= da && b + pb <= db
        })
        .collect())
}

/// Basis vectors of degree at most `(a, b)`.
pub fn columns_up_to(basis: &FockBasis, a: usize, b: usize) -> Vec<usize> {
    let ix = basis.indexer();
    (0..basis.dim())
        .filter(|&j| {
            let d = ix.degree(j);
            d.0 <= a && d.1 <= b
        })
        .collect()
}

fn scalar_times_phase(c: &Scalar, e: i64, phi0: f64) -> Scalar {
    match c {
        Scalar::Exact(p) => {
            let mut p = p.clone();
            p.shift(e);
            Scalar::Exact(p)
        }
        Scalar::Numeric(z) => {
            if e == 0 {
                Scalar::Numeric(*z)
            } else {
                Scalar::Numeric(z * Complex64::from_polar(1.0, std::f64::consts::PI * phi0 * e as f64))
            }
        }
    }
}

fn exact_column(
    ix: &Indexer,
    words: &[(Vec<Letter>, Scalar)],
    j: usize,
    variant: TensorVariant,
    phi0: f64,
) -> Result<Vec<(u32, Complex64)>> {
    let mut hits: Vec<(usize, Scalar)> = Vec::new();
    'word: for (rev, c) in words {
        let mut idx = j;
        let mut e = 0i64;
        for &l in rev {
            match ix.apply(l, idx, variant) {
                Some((k, de)) => {
                    idx = k;
                    e += de;
                }
                None => continue 'word,
            }
        }
        hits.push((idx, scalar_times_phase(c, e, phi0)));
    }
    hits.sort_by_key(|h| h.0);
    let mut out: Vec<(u32, Complex64)> = Vec::new();
    let mut k = 0;
    while k < hits.len() {
        let row = hits[k].0;
        let mut acc = hits[k].1.clone();
        k += 1;
        while k < hits.len() && hits[k].0 == row {
            acc = acc.add(&hits[k].1)?;
            k += 1;
        }
        if !acc.is_zero() {
            let v = acc.eval(phi0);
            if v != Complex64::new(0.0, 0.0) {
                out.push((row as u32, v));
            }
        }
    }
    Ok(out)
}

/// Operator of `x` under the default generators; only `columns` are computed when given.
pub fn rep_element_on(
    x: &AlgebraElement,
    basis: &FockBasis,
    params: &Params,
    opts: &FockOptions,
    columns: Option<&[usize]>,
) -> Result<FockOperator> {
    check_basis(basis, params)?;
    let ncols = columns.map_or(basis.dim(), <[usize]>::len);
    check_size(basis, ncols, opts.dim_cap)?;
    let shift = element_shift(x, basis)?;
    let words: Vec<(Vec<Letter>, Scalar)> = x
        .iter()
        .map(|(m, c)| {
            for l in m.letters() {
                l.check_range(params.n, params.m)?;
            }
            Ok((m.letters().iter().rev().copied().collect(), c.clone()))
        })
        .collect::<Result<_>>()?;
    let ix = basis.indexer();
    let phi0 = params.phi0();
    let wanted: Vec<usize> = match columns {
        Some(c) => c.to_vec(),
        None => (0..basis.dim()).collect(),
    };
    let computed: Vec<(usize, Vec<(u32, Complex64)>)> = wanted
        .par_iter()
        .map(|&j| Ok((j, exact_column(&ix, &words, j, opts.variant, phi0)?)))
        .collect::<Result<_>>()?;
    let mut cols = vec![Vec::new(); basis.dim()];
    for (j, col) in computed {
        cols[j] = col;
    }
    Ok(FockOperator::from_columns(*basis, cols, shift))
}

pub fn rep_element(x: &AlgebraElement, basis: &FockBasis, params: &Params) -> Result<FockOperator> {
    rep_element_on(x, basis, params, &FockOptions::default(), None)
}

pub fn rep_generator(l: Letter, basis: &FockBasis, params: &Params) -> Result<FockOperator> {
    let x = AlgebraElement::letter(l, params.one());
    rep_element(&x, basis, params)
}

/// Largest column norm of the operator of `x` on its safe subspace.
pub fn relation_residual(x: &AlgebraElement, basis: &FockBasis, params: &Params) -> Result<f64> {
    relation_residual_with(x, basis, params, &FockOptions::default())
}

pub fn relation_residual_with(
    x: &AlgebraElement,
    basis: &FockBasis,
    params: &Params,
    opts: &FockOptions,
) -> Result<f64> {
    let cols = safe_columns(x, basis)?;
    let a = rep_element_on(x, basis, params, opts, Some(&cols))?;
    Ok(a.max_column_norm())
}

/// Operators assigned to letters, for representing elements through images of the generators.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    basis: FockBasis,
    ops: HashMap<Letter, FockOperator>,
}

impl GeneratorMap {
    pub fn new(basis: FockBasis) -> GeneratorMap {
        GeneratorMap { basis, ops: HashMap::new() }
    }

    /// The default creation operators of the basis.
    pub fn standard(basis: &FockBasis, params: &Params) -> Result<GeneratorMap> {
        let mut g = GeneratorMap::new(*basis);
        for i in 1..=basis.n() as u16 {
            g.insert(Letter::s(i), rep_generator(Letter::s(i), basis, params)?);
        }
        for r in 1..=basis.m() as u16 {
            g.insert(Letter::t(r), rep_generator(Letter::t(r), basis, params)?);
        }
        Ok(g)
    }

    /// Assign `op` to `l` and its adjoint to `l*`.
    pub fn insert(&mut self, l: Letter, op: FockOperator) {
        assert_eq!(op.basis(), self.basis, "generator on a different basis");
        self.ops.insert(l.star(), op.adjoint());
        self.ops.insert(l, op);
    }

    pub fn get(&self, l: &Letter) -> Option<&FockOperator> {
        self.ops.get(l)
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }
}

/// Operator of `x` with each letter replaced by its assigned operator.
pub fn rep_element_with(
    x: &AlgebraElement,
    gens: &GeneratorMap,
    phi0: f64,
    columns: Option<&[usize]>,
    dim_cap: usize,
) -> Result<FockOperator> {
    let basis = gens.basis();
    let ncols = columns.map_or(basis.dim(), <[usize]>::len);
    check_size(&basis, ncols, dim_cap)?;
    let shift = element_shift(x, &basis)?;
    let words: Vec<(Vec<&FockOperator>, Complex64)> = x
        .iter()
        .map(|(m, c)| {
            let ops = m
                .letters()
                .iter()
                .rev()
                .map(|l| gens.get(l).ok_or_else(|| Error::UnsupportedLetter(l.to_string())))
                .collect::<Result<Vec<_>>>()?;
            Ok((ops, c.eval(phi0)))
        })
        .collect::<Result<_>>()?;
    let wanted: Vec<usize> = match columns {
        Some(c) => c.to_vec(),
        None => (0..basis.dim()).collect(),
    };
    let computed: Vec<(usize, Vec<(u32, Complex64)>)> = wanted
        .par_iter()
        .map(|&j| {
            let mut acc: Vec<(u32, Complex64)> = Vec::new();
            let mut cur: Vec<(u32, Complex64)> = Vec::new();
            let mut next: Vec<(u32, Complex64)> = Vec::new();
            for (ops, c) in &words {
                cur.clear();
                cur.push((j as u32, *c));
                for op in ops {
                    op.apply_sparse(&cur, &mut next);
                    std::mem::swap(&mut cur, &mut next);
                    if cur.is_empty() {
                        break;
                    }
                }
                acc.extend_from_slice(&cur);
            }
            merge_sparse(&mut acc);
            (j, acc)
        })
        .collect();
    let mut cols = vec![Vec::new(); basis.dim()];
    for (j, col) in computed {
        cols[j] = col;
    }
    Ok(FockOperator::from_columns(basis, cols, shift))
}

/// Diagonal unitary `h^{|mu| |nu|}` taking the half-power picture to the canonical one.
pub fn diagonal_unitary(basis: &FockBasis, params: &Params) -> Result<FockOperator> {
    check_basis(basis, params)?;
    if !basis.is_tensor() {
        return Err(Error::Mode("the diagonal intertwiner lives on the tensor model".into()));
    }
    let ix = basis.indexer();
    let phi0 = params.phi0();
    let cols = (0..basis.dim())
        .map(|j| {
            let (a, b) = ix.degree(j);
            let e = (a * b) as i64;
            vec![(j as u32, params.h_pow(e).map(|s| s.eval(phi0)).unwrap_or_default())]
        })
        .collect();
    Ok(FockOperator::from_columns(*basis, cols, ((0, 0), (0, 0))))
}

/// `<Omega, x Omega>` on a truncation deep enough for every word of `x`.
pub fn vacuum_expectation(x: &AlgebraElement, params: &Params) -> Result<Complex64> {
    let depth = x.max_letters();
    match params.relmode {
        RelMode::Braided => {
            let basis = FockBasis::tensor(params.n, params.m, depth, depth);
            let a = rep_element_on(x, &basis, params, &FockOptions::default(), Some(&[0]))?;
            Ok(a.entry(0, 0))
        }
        RelMode::WickOnly => {
            let basis = FockBasis::full(params.n, params.m, depth);
            let gens = crate::deform::psi_generators(params, depth, &basis)?;
            let a = rep_element_with(x, &gens, 0.0, Some(&[0]), DEFAULT_DIM_CAP)?;
            Ok(a.entry(0, 0))
        }
        RelMode::BraidedCuntz => Err(Error::Mode("the Cuntz quotient has no Fock vacuum".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn third() -> Params {
        Params::rational(2, 2, 1, 3).unwrap()
    }

    #[test]
    fn generator_actions_on_vacuum() {
        let p = third();
        let b = FockBasis::tensor(2, 2, 2, 2);
        let ix = b.indexer();
        let s1s = rep_generator(Letter::s(1).star(), &b, &p).unwrap();
        assert_eq!(s1s.column_norm(0), 0.0);
        let t1 = rep_generator(Letter::t(1), &b, &p).unwrap();
        let e2 = ix.encode(&[2], &[]).unwrap();
        let target = ix.encode(&[2], &[1]).unwrap();
        assert!((t1.entry(target, e2) - p.q_complex()).norm() < 1e-15);
    }

    #[test]
    fn isometry_and_braid_relations_vanish() {
        let p = third();
        let b = FockBasis::tensor(2, 2, 3, 3);
        let x = parse_element("s1* s1", &p).unwrap();
        let id = rep_element(&x, &b, &p).unwrap();
        // restricted to columns where s1 does not fall off
        let safe = safe_columns(&x, &b).unwrap();
        assert!(safe.iter().all(|&j| id.entry(j, j) == Complex64::new(1.0, 0.0)));
        let r = parse_element("t1 s1 - q s1 t1", &p).unwrap();
        assert_eq!(relation_residual(&r, &b, &p).unwrap(), 0.0);
    }

    #[test]
    fn non_relation_has_positive_residual() {
        let p = third();
        let x = parse_element("s1 t1*", &p).unwrap();
        let r = relation_residual(&x, &FockBasis::tensor(2, 2, 3, 3), &p).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_safe_subspace() {
        let p = third();
        let x = parse_element("s1 s1 s1", &p).unwrap();
        assert!(matches!(
            relation_residual(&x, &FockBasis::tensor(2, 2, 2, 2), &p),
            Err(Error::DegenerateSafeSubspace { .. })
        ));
    }

    #[test]
    fn vacuum_values() {
        let p = third();
        let v = |s: &str| vacuum_expectation(&parse_element(s, &p).unwrap(), &p).unwrap();
        assert_eq!(v("1"), Complex64::new(1.0, 0.0));
        assert_eq!(v("s1 s1*"), Complex64::new(0.0, 0.0));
        assert_eq!(v("s1* s1"), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dimension_cap() {
        let p = third();
        let x = parse_element("s1", &p).unwrap();
        let opts = FockOptions { dim_cap: 10, ..Default::default() };
        assert!(matches!(
            rep_element_on(&x, &FockBasis::tensor(2, 2, 2, 2), &p, &opts, None),
            Err(Error::DimensionGuard { .. })
        ));
    }
}
