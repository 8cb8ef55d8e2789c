use num_complex::Complex64;
use serde::Serialize;

use super::basis::FockBasis;

/// Inclusive range of degree shifts `(min, max)`.
pub type ShiftRange = (i64, i64);

/// Sparse operator on a truncated Fock space.
///
/// Entries are coordinate triplets sorted by (column, row) and stored
/// column-compressed. `shift` records the declared degree change of every
/// nonzero entry, per tensor factor (the full model uses the first slot).
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    basis: FockBasis,
    col_ptr: Vec<usize>,
    rows: Vec<u32>,
    vals: Vec<Complex64>,
    pub shift: (ShiftRange, ShiftRange),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OperatorSummary {
    pub dimension: usize,
    pub nnz: usize,
}

impl FockOperator {
    /// Build from per-column entry lists (rows need not be sorted; duplicates are summed).
    pub fn from_columns(
        basis: FockBasis,
        columns: Vec<Vec<(u32, Complex64)>>,
        shift: (ShiftRange, ShiftRange),
    ) -> FockOperator {
        let dim = basis.dim();
        assert_eq!(columns.len(), dim, "one entry list per basis vector");
        let mut col_ptr = Vec::with_capacity(dim + 1);
        let mut rows = Vec::new();
        let mut vals = Vec::new();
        col_ptr.push(0);
        for mut col in columns {
            col.sort_unstable_by_key(|e| e.0);
            let start = rows.len();
            for (r, v) in col {
                if rows.len() > start && *rows.last().expect("nonempty") == r {
                    *vals.last_mut().expect("nonempty") += v;
                } else {
                    rows.push(r);
                    vals.push(v);
                }
            }
            // drop exact zeros left by cancellation
            let mut w = start;
            for k in start..rows.len() {
                if vals[k] != Complex64::new(0.0, 0.0) {
                    rows[w] = rows[k];
                    vals[w] = vals[k];
                    w += 1;
                }
            }
            rows.truncate(w);
            vals.truncate(w);
            col_ptr.push(rows.len());
        }
        FockOperator { basis, col_ptr, rows, vals, shift }
    }

    pub fn identity(basis: FockBasis) -> FockOperator {
        let cols = (0..basis.dim()).map(|j| vec![(j as u32, Complex64::new(1.0, 0.0))]).collect();
        FockOperator::from_columns(basis, cols, ((0, 0), (0, 0)))
    }

    pub fn zero(basis: FockBasis) -> FockOperator {
        FockOperator::from_columns(basis, vec![Vec::new(); basis.dim()], ((0, 0), (0, 0)))
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn summary(&self) -> OperatorSummary {
        OperatorSummary { dimension: self.dim(), nnz: self.nnz() }
    }

    pub fn column(&self, j: usize) -> (&[u32], &[Complex64]) {
        let (a, b) = (self.col_ptr[j], self.col_ptr[j + 1]);
        (&self.rows[a..b], &self.vals[a..b])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let (r, v) = self.column(col);
        match r.binary_search(&(row as u32)) {
            Ok(k) => v[k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Triplets `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |j| {
            let (r, v) = self.column(j);
            r.iter().zip(v).map(move |(&i, &x)| (i as usize, j, x))
        })
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        self.column(j).1.iter().fold(0.0, |acc, v| acc + v.norm_sqr()).sqrt()
    }

    pub fn max_column_norm(&self) -> f64 {
        (0..self.dim()).map(|j| self.column_norm(j)).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `A v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (j, &x) in v.iter().enumerate() {
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (r, vals) = self.column(j);
            for (&i, &a) in r.iter().zip(vals) {
                out[i as usize] += a * x;
            }
        }
        out
    }

    /// `A^* v`.
    pub fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim())
            .map(|j| {
                let (r, vals) = self.column(j);
                r.iter().zip(vals).map(|(&i, a)| a.conj() * v[i as usize]).sum()
            })
            .collect()
    }

    /// Sparse `A x` for a sparse vector `x` given as sorted (index, value) pairs.
    pub fn apply_sparse(&self, x: &[(u32, Complex64)], out: &mut Vec<(u32, Complex64)>) {
        out.clear();
        for &(j, xj) in x {
            let (r, vals) = self.column(j as usize);
            for (&i, &a) in r.iter().zip(vals) {
                out.push((i, a * xj));
            }
        }
        merge_sparse(out);
    }

    pub fn adjoint(&self) -> FockOperator {
        let dim = self.dim();
        let mut cols: Vec<Vec<(u32, Complex64)>> = vec![Vec::new(); dim];
        for (i, j, v) in self.triplets() {
            cols[i].push((j as u32, v.conj()));
        }
        let ((a0, a1), (b0, b1)) = self.shift;
        FockOperator::from_columns(self.basis, cols, ((-a1, -a0), (-b1, -b0)))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &FockOperator, c: Complex64) -> FockOperator {
        assert_eq!(self.basis, other.basis, "operators on different bases");
        let cols = (0..self.dim())
            .map(|j| {
                let (r1, v1) = self.column(j);
                let (r2, v2) = other.column(j);
                let mut col: Vec<(u32, Complex64)> = r1.iter().copied().zip(v1.iter().copied()).collect();
                col.extend(r2.iter().zip(v2).map(|(&i, &v)| (i, v * c)));
                col
            })
            .collect();
        let ((a0, a1), (b0, b1)) = self.shift;
        let ((c0, c1), (d0, d1)) = other.shift;
        FockOperator::from_columns(self.basis, cols, ((a0.min(c0), a1.max(c1)), (b0.min(d0), b1.max(d1))))
    }

    pub fn sub(&self, other: &FockOperator) -> FockOperator {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    /// `self * other`.
    pub fn compose(&self, other: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, other.basis, "operators on different bases");
        let mut buf = Vec::new();
        let cols = (0..self.dim())
            .map(|j| {
                let (r, v) = other.column(j);
                let x: Vec<(u32, Complex64)> = r.iter().copied().zip(v.iter().copied()).collect();
                self.apply_sparse(&x, &mut buf);
                buf.clone()
            })
            .collect();
        let ((a0, a1), (b0, b1)) = self.shift;
        let ((c0, c1), (d0, d1)) = other.shift;
        FockOperator::from_columns(self.basis, cols, ((a0 + c0, a1 + c1), (b0 + d0, b1 + d1)))
    }

    /// Keep only the columns where `keep` holds.
    pub fn restrict_columns<F: Fn(usize) -> bool>(&self, keep: F) -> FockOperator {
        let cols = (0..self.dim())
            .map(|j| {
                if keep(j) {
                    let (r, v) = self.column(j);
                    r.iter().copied().zip(v.iter().copied()).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        FockOperator::from_columns(self.basis, cols, self.shift)
    }

    /// Whether every nonzero entry respects the declared shift bounds.
    pub fn respects_shift(&self) -> bool {
        let ix = self.basis.indexer();
        let ((a0, a1), (b0, b1)) = self.shift;
        self.triplets().all(|(i, j, _)| {
            let (ri, rj) = (ix.degree(i), ix.degree(j));
            let da = ri.0 as i64 - rj.0 as i64;
            let db = ri.1 as i64 - rj.1 as i64;
            (a0..=a1).contains(&da) && (b0..=b1).contains(&db)
        })
    }

    /// Frobenius-type pairing `tr(A^* B)`.
    pub fn trace_pairing(&self, other: &FockOperator) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.dim() {
            let (r1, v1) = self.column(j);
            let (r2, v2) = other.column(j);
            let (mut a, mut b) = (0, 0);
            while a < r1.len() && b < r2.len() {
                match r1[a].cmp(&r2[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc += v1[a].conj() * v2[b];
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
        acc
    }
}

/// Sort by index and sum duplicates; exact zeros are removed.
pub fn merge_sparse(v: &mut Vec<(u32, Complex64)>) {
    v.sort_unstable_by_key(|e| e.0);
    let mut w = 0usize;
    for k in 0..v.len() {
        if w > 0 && v[w - 1].0 == v[k].0 {
            let x = v[k].1;
            v[w - 1].1 += x;
        } else {
            v[w] = v[k];
            w += 1;
        }
    }
    v.truncate(w);
    v.retain(|e| e.1 != Complex64::new(0.0, 0.0));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_and_compose() {
        let b = FockBasis::full(1, 1, 2);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut cols = vec![Vec::new(); b.dim()];
        cols[0] = vec![(1, i), (2, one)];
        let a = FockOperator::from_columns(b, cols, ((1, 1), (0, 0)));
        let ad = a.adjoint();
        assert_eq!(ad.entry(0, 1), -i);
        let p = ad.compose(&a);
        assert_eq!(p.entry(0, 0), Complex64::new(2.0, 0.0));
        assert_eq!(a.trace_pairing(&a), Complex64::new(2.0, 0.0));
        assert!(a.respects_shift());
        assert!(a.sub(&a).nnz() == 0);
    }
}
