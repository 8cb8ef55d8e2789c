//! Property tests for the truncated Fock representation.

use num_complex::Complex64;
use proptest::prelude::*;
use qcuntz::algebra::{AlgebraElement, Letter, Params};
use qcuntz::fock::{relation_residual, rep_element, rep_generator, FockBasis};
use qcuntz::rewrite::{normalize, random_word, RuleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quarter() -> Params {
    Params::rational(2, 2, 1, 4).unwrap()
}

fn random_element(rules: &RuleSet, params: &Params, seed: u64, max_len: usize) -> AlgebraElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(rules, max_len, &mut rng);
        x.add_term(w, params.h_pow(rng.gen_range(-4..4)).unwrap()).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representation_factors_through_normal_form(seed in any::<u64>()) {
        let p = quarter();
        let rules = RuleSet::new(&p);
        let basis = FockBasis::tensor(2, 2, 5, 5);
        let x = random_element(&rules, &p, seed, 6);
        let diff = x.sub(&normalize(&x, &rules).unwrap()).unwrap();
        prop_assert!(relation_residual(&diff, &basis, &p).unwrap() <= 1e-12);
    }

    #[test]
    fn monomials_shift_degree_by_bidegree(seed in any::<u64>()) {
        let p = quarter();
        let rules = RuleSet::new(&p);
        let basis = FockBasis::tensor(2, 2, 4, 4);
        let idx = basis.indexer();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&rules, 5, &mut rng);
        let (p1, p2) = w.bidegree().unwrap();
        let a = rep_element(&AlgebraElement::monomial(w, p.one()), &basis, &p).unwrap();
        for (row, col, _) in a.triplets() {
            let (r1, r2) = idx.degree(row);
            let (c1, c2) = idx.degree(col);
            prop_assert_eq!((r1 as i64, r2 as i64), (c1 as i64 + p1, c2 as i64 + p2));
        }
    }
}

#[test]
fn generators_have_orthonormal_safe_columns() {
    let p = quarter();
    let depth = 4;
    let basis = FockBasis::tensor(2, 2, depth, depth);
    let idx = basis.indexer();
    let letters = [Letter::s(1), Letter::s(2), Letter::t(1), Letter::t(2)];
    for l in letters {
        let a = rep_generator(l, &basis, &p).unwrap();
        let gram = a.adjoint().compose(&a);
        // columns whose image stays inside the truncation
        let safe: Vec<usize> = (0..basis.dim())
            .filter(|&j| {
                let (ds, dt) = idx.degree(j);
                if l == Letter::s(1) || l == Letter::s(2) { ds < depth } else { dt < depth }
            })
            .collect();
        for &i in &safe {
            for &j in &safe {
                let want = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                assert!((gram.entry(i, j) - want).norm() <= 1e-12, "{l}: <{i}, {j}>");
            }
        }
    }
}
