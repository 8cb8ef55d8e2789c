//! Property tests for the abelian group arithmetic against independent oracles.

use proptest::prelude::*;
use qcuntz::kth::{determinant, mat_mul, smith_normal_form, FgAbelianGroup, IntMatrix};

/// Coset enumeration of `Z^k / rowspan(R)`, where the row span must contain `N Z^k`,
/// returned as the counts `#{x : e x = 0}` for every `e` dividing `N`.
/// These counts determine a finite abelian group up to isomorphism.
fn killed_counts_by_enumeration(rel: &IntMatrix, k: usize, n: u64) -> Vec<(u64, u64)> {
    assert!(n > 0);
    let size = (n as usize).pow(k as u32);
    let index = |v: &[u64]| v.iter().fold(0usize, |acc, &x| acc * n as usize + x as usize);
    let vector = |mut i: usize| {
        let mut v = vec![0u64; k];
        for c in (0..k).rev() {
            v[c] = (i % n as usize) as u64;
            i /= n as usize;
        }
        v
    };
    // union-find over (Z/N)^k, joining v and v + r for every relation row r
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..size {
        let v = vector(i);
        for r in rel {
            let w: Vec<u64> = v.iter().zip(r).map(|(&a, &b)| (a as i64 + b).rem_euclid(n as i64) as u64).collect();
            let (a, b) = (find(&mut parent, i), find(&mut parent, index(&w)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..size).map(|i| find(&mut parent, i)).collect();
    let mut reps = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let zero_class = roots[0];
    (1..=n)
        .filter(|e| n % e == 0)
        .map(|e| {
            let count = reps
                .iter()
                .filter(|&&r| {
                    let v = vector(r);
                    let ev: Vec<u64> = v.iter().map(|&x| x * e % n).collect();
                    roots[index(&ev)] == zero_class
                })
                .count();
            (e, count as u64)
        })
        .collect()
}

fn matches_enumeration(g: &FgAbelianGroup, rel: &IntMatrix, k: usize) -> bool {
    killed_counts_by_enumeration(rel, k, determinant(rel).unsigned_abs())
        .into_iter()
        .all(|(e, c)| g.count_killed_by(e) == Some(c))
}

/// Product of elementary row operations, hence unimodular.
fn unimodular(k: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = qcuntz::kth::identity(k);
    for &(i, j, c) in ops {
        let (i, j) = (i % k, j % k);
        if i != j {
            let src = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
    }
    u
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, cols), rows)
}

fn cyclic_group() -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..2, prop::collection::vec(0u64..13, 0..3)).prop_map(|(r, o)| FgAbelianGroup::from_parts(r, &o))
}

/// `d_1 d_2 ... d_i` equals the gcd of the `i x i` minors; checked here for `i = 1` and full rank.
fn gcd_of_entries(m: &IntMatrix) -> i64 {
    m.iter().flatten().fold(0i64, |g, &x| num_integer::gcd(g, x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_reconstructs(m in small_matrix(3, 3)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d.clone());
        prop_assert_eq!(determinant(&s.u).abs(), 1);
        prop_assert_eq!(determinant(&s.v).abs(), 1);
        let inv = s.invariants();
        for w in inv.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        if let Some(&d1) = inv.first() {
            prop_assert_eq!(d1, gcd_of_entries(&m));
        }
        if inv.len() == 3 {
            prop_assert_eq!(inv.iter().product::<i64>(), determinant(&m).abs());
        }
    }

    #[test]
    fn snf_rectangular(m in small_matrix(2, 4)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
    }

    #[test]
    fn invariants_stable_under_unimodular(
        m in small_matrix(3, 3),
        left in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
        right in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
    ) {
        let p = mat_mul(&mat_mul(&unimodular(3, &left), &m), &unimodular(3, &right));
        prop_assert_eq!(smith_normal_form(&p).invariants(), smith_normal_form(&m).invariants());
    }

    #[test]
    fn functors_symmetric(a in cyclic_group(), b in cyclic_group()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tor(&b), b.tor(&a));
    }

    #[test]
    fn tensor_matches_kronecker_presentation(
        a in prop::collection::vec(1u64..8, 1..3),
        b in prop::collection::vec(1u64..8, 1..3),
    ) {
        // Z^ka / diag(a) (x) Z^kb / diag(b) is presented on e_i (x) f_j
        // by the rows of diag(a) (x) I and I (x) diag(b).
        let (ka, kb) = (a.len(), b.len());
        let mut rels = Vec::new();
        for i in 0..ka {
            for j in 0..kb {
                let mut r = vec![0i64; ka * kb];
                r[i * kb + j] = a[i] as i64;
                rels.push(r);
                let mut r = vec![0i64; ka * kb];
                r[i * kb + j] = b[j] as i64;
                rels.push(r);
            }
        }
        let ga = FgAbelianGroup::from_parts(0, &a);
        let gb = FgAbelianGroup::from_parts(0, &b);
        prop_assert_eq!(ga.tensor(&gb), FgAbelianGroup::from_presentation(&rels, ka * kb));
    }

    #[test]
    fn presentation_matches_coset_enumeration(m in small_matrix(2, 2)) {
        let det = determinant(&m).unsigned_abs();
        prop_assume!(det > 0 && det <= 200);
        let g = FgAbelianGroup::from_presentation(&m, 2);
        prop_assert_eq!(g.order(), Some(det));
        prop_assert!(matches_enumeration(&g, &m, 2));
    }

    #[test]
    fn tensor_right_exact(m in small_matrix(2, 2), d in 2u64..7) {
        // G = coker(m); G (x) Z/d = coker of m stacked on d I
        let det = determinant(&m).unsigned_abs();
        prop_assume!(det > 0 && det <= 200);
        let g = FgAbelianGroup::from_presentation(&m, 2);
        let predicted = g.tensor(&FgAbelianGroup::cyclic(d));
        let mut rels = m.clone();
        rels.push(vec![d as i64, 0]);
        rels.push(vec![0, d as i64]);
        // adj(m) m = det I, so the lattice of m already contains det Z^2
        let counts = killed_counts_by_enumeration(&rels, 2, det);
        prop_assert!(counts.into_iter().all(|(e, c)| predicted.count_killed_by(e) == Some(c)));
    }
}
