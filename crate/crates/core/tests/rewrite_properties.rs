//! Property tests for exact scalars, the involution and normal ordering.

use num_complex::Complex64;
use proptest::prelude::*;
use qcuntz::algebra::{AlgebraElement, Letter, Monomial, Params, Phase, Scalar};
use qcuntz::rewrite::{is_normal, normalize, normalize_with_stats, random_word, RuleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `h = exp(i pi / 4)` for `q = i` has order 8.
const ORDER: u32 = 8;

fn phase() -> impl Strategy<Value = Phase> {
    prop::collection::vec((-6i64..6, -3i64..4), 0..4).prop_map(|t| Phase::from_terms(t, Some(ORDER)))
}

fn quarter() -> Params {
    Params::rational(2, 2, 1, 4).unwrap()
}

/// Random combination of up to three random words with random `h`-power coefficients.
fn random_element(rules: &RuleSet, params: &Params, seed: u64, max_len: usize) -> AlgebraElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(rules, max_len, &mut rng);
        let c = params.h_pow(rng.gen_range(-4..4)).unwrap();
        x.add_term(w, c).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn phase_ring_laws(a in phase(), b in phase(), c in phase()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn eval_is_multiplicative(t1 in prop::collection::vec((-6i64..6, -3i64..4), 0..4),
                              t2 in prop::collection::vec((-6i64..6, -3i64..4), 0..4),
                              phi0 in -1.0f64..1.0) {
        // generic angle: no cyclotomic reduction, so eval is a ring homomorphism for every phi0
        let a = Phase::from_terms(t1, None);
        let b = Phase::from_terms(t2, None);
        let lhs = a.mul(&b).unwrap().eval(phi0);
        let rhs: Complex64 = a.eval(phi0) * b.eval(phi0);
        prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + rhs.norm()));
    }

    #[test]
    fn exact_eval_matches_angle(a in phase(), b in phase()) {
        let phi0 = 0.25;
        let lhs = Scalar::Exact(a.mul(&b).unwrap()).eval(phi0);
        let rhs = Scalar::Exact(a.clone()).eval(phi0) * Scalar::Exact(b.clone()).eval(phi0);
        prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + rhs.norm()));
    }

    #[test]
    fn adjoint_reverses_products(s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = quarter();
        let rules = RuleSet::new(&p);
        let x = random_element(&rules, &p, s1, 4);
        let y = random_element(&rules, &p, s2, 4);
        let lhs = x.mul(&y).unwrap().adjoint();
        let rhs = y.adjoint().mul(&x.adjoint()).unwrap();
        prop_assert!(normalize(&lhs.sub(&rhs).unwrap(), &rules).unwrap().is_zero());
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>(), cuntz in any::<bool>()) {
        let p = if cuntz { quarter().cuntz().unwrap() } else { quarter() };
        let rules = RuleSet::new(&p);
        let x = random_element(&rules, &p, seed, 8);
        let y = normalize(&x, &rules).unwrap();
        prop_assert_eq!(normalize(&y, &rules).unwrap(), y);
    }

    #[test]
    fn normalize_commutes_with_adjoint(seed in any::<u64>(), cuntz in any::<bool>()) {
        let p = if cuntz { quarter().cuntz().unwrap() } else { quarter() };
        let rules = RuleSet::new(&p);
        let x = random_element(&rules, &p, seed, 8);
        // the adjoint of a normal form need not be normal, so compare in the algebra
        let y = normalize(&x, &rules).unwrap().adjoint();
        prop_assert_eq!(normalize(&x.adjoint(), &rules).unwrap(), normalize(&y, &rules).unwrap());
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn terminates_within_step_bound(seed in any::<u64>()) {
        // the step bound is enforced as a hard error, so success means it was respected
        let p = Params::rational(3, 2, 1, 6).unwrap();
        let rules = RuleSet::new(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&rules, 10, &mut rng);
        let (y, stats) = normalize_with_stats(&AlgebraElement::monomial(w.clone(), p.one()), &rules).unwrap();
        prop_assert!(y.iter().all(|(m, _)| is_normal(m, &rules)));
        if is_normal(&w, &rules) {
            prop_assert_eq!(stats.steps, 0);
        }
    }

    #[test]
    fn s_passes_t_block_with_phase(
        nu1 in prop::collection::vec(1u16..=2, 0..4),
        nu2 in prop::collection::vec(1u16..=2, 0..4),
        j in 1u16..=2,
    ) {
        // t_nu1 t_nu2* s_j = q^{|nu1| - |nu2|} s_j t_nu1 t_nu2*
        let p = quarter();
        let rules = RuleSet::new(&p);
        let block = Monomial::t_word(&nu1).concat(&Monomial::t_word(&nu2).adjoint());
        let s = Monomial::new(vec![Letter::s(j)]);
        let lhs = normalize(&AlgebraElement::monomial(block.concat(&s), p.one()), &rules).unwrap();
        let e = nu1.len() as i64 - nu2.len() as i64;
        let expected = AlgebraElement::monomial(s.concat(&block), p.q_pow(e).unwrap());
        prop_assert_eq!(lhs, normalize(&expected, &rules).unwrap());
    }
}
