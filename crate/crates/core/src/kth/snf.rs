//! Smith normal form over the integers with unimodular transforms.

use num_integer::Integer;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Diagonal result, same shape as the input.
    pub d: IntMatrix,
    /// Row transform, square of the row count.
    pub u: IntMatrix,
    /// Column transform, square of the column count.
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariants(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    m.swap(i, j);
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += c * row_j
fn add_row(m: &mut IntMatrix, i: usize, j: usize, c: i64) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(src) {
        *x += c * y;
    }
}

/// col_i += c * col_j
fn add_col(m: &mut IntMatrix, i: usize, j: usize, c: i64) {
    for row in m.iter_mut() {
        row[i] += c * row[j];
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    m[i].iter_mut().for_each(|x| *x = -*x);
}

/// `U M V = D` with `D` diagonal, nonnegative, and each entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].unsigned_abs());
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t] != 0 {
                    let c = Integer::div_floor(&d[i][t], &d[t][t]);
                    add_row(&mut d, i, t, -c);
                    add_row(&mut u, i, t, -c);
                    if d[i][t] != 0 {
                        swap_rows(&mut d, t, i);
                        swap_rows(&mut u, t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if d[t][j] != 0 {
                    let c = Integer::div_floor(&d[t][j], &d[t][t]);
                    add_col(&mut d, j, t, -c);
                    add_col(&mut v, j, t, -c);
                    if d[t][j] != 0 {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % d[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    Snf { d, u, v }
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: IntMatrix, expect: &[i64]) {
        let s = smith_normal_form(&m);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        assert_eq!(determinant(&s.u).abs(), 1);
        assert_eq!(determinant(&s.v).abs(), 1);
        assert_eq!(s.invariants(), expect);
    }

    #[test]
    fn examples() {
        check(vec![vec![2, 4], vec![6, 8]], &[2, 4]);
        check(identity(3), &[1, 1, 1]);
        check(vec![vec![0, 0], vec![0, 0]], &[]);
        check(vec![vec![2, 0], vec![0, 3]], &[1, 6]);
        check(vec![vec![4, 6, 8]], &[2]);
        check(vec![vec![3], vec![0], vec![-9]], &[3]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![2, 4], vec![6, 8]]), -8);
        assert_eq!(determinant(&vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]), -2);
    }
}
