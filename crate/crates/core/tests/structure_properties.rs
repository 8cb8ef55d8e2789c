//! Property tests for the gauge expectation.

use proptest::prelude::*;
use qcuntz::algebra::{AlgebraElement, Monomial, Params};
use qcuntz::rewrite::{normalize, random_word, RuleSet};
use qcuntz::structure::conditional_expectation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(cuntz: bool) -> Params {
    let p = Params::rational(2, 2, 1, 4).unwrap();
    if cuntz {
        p.cuntz().unwrap()
    } else {
        p
    }
}

fn random_element(rules: &RuleSet, params: &Params, rng: &mut ChaCha8Rng, max_len: usize) -> AlgebraElement {
    let mut x = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(rules, max_len, rng);
        x.add_term(w, params.h_pow(rng.gen_range(-4..4)).unwrap()).unwrap();
    }
    x
}

/// `s_mu s_nu* t_alpha t_beta*` with `|mu| = |nu|`, `|alpha| = |beta|`.
fn neutral(params: &Params, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let k = rng.gen_range(0..=2);
    let l = rng.gen_range(0..=2);
    let mut word = |len: usize| -> Vec<u16> { (0..len).map(|_| rng.gen_range(1..=2)).collect() };
    let (mu, nu, alpha, beta) = (word(k), word(k), word(l), word(l));
    let m = Monomial::s_word(&mu)
        .concat(&Monomial::s_word(&nu).adjoint())
        .concat(&Monomial::t_word(&alpha))
        .concat(&Monomial::t_word(&beta).adjoint());
    AlgebraElement::monomial(m, params.one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expectation_is_unital_idempotent_and_star_preserving(seed in any::<u64>(), cuntz in any::<bool>()) {
        let p = params(cuntz);
        let rules = RuleSet::new(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&rules, &p, &mut rng, 6);
        let ex = conditional_expectation(&x, &p).unwrap();
        prop_assert_eq!(conditional_expectation(&ex, &p).unwrap(), ex.clone());
        let one = AlgebraElement::scalar(p.one());
        prop_assert_eq!(conditional_expectation(&one, &p).unwrap(), one);
        let lhs = conditional_expectation(&x.adjoint(), &p).unwrap();
        prop_assert_eq!(lhs, normalize(&ex.adjoint(), &rules).unwrap());
    }

    #[test]
    fn expectation_is_a_bimodule_map(seed in any::<u64>(), cuntz in any::<bool>()) {
        let p = params(cuntz);
        let rules = RuleSet::new(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&rules, &p, &mut rng, 5);
        let a = neutral(&p, &mut rng);
        let b = neutral(&p, &mut rng);
        let axb = a.mul(&x).unwrap().mul(&b).unwrap();
        let lhs = conditional_expectation(&axb, &p).unwrap();
        let ex = conditional_expectation(&x, &p).unwrap();
        let rhs = normalize(&a.mul(&ex).unwrap().mul(&b).unwrap(), &rules).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
