//! Property tests for the Rieffel deformation and the untwisting maps.

use num_complex::Complex64;
use proptest::prelude::*;
use qcuntz::algebra::{AlgebraElement, Letter, Monomial, Params};
use qcuntz::deform::{rieffel_product, roundtrip_check, GradedElement, ThetaMatrix};
use qcuntz::rewrite::{normalize, random_word, RuleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bidegree() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=5, -5i64..=5)
}

/// A random word of bidegree (0, 0): `s_mu s_nu* t_alpha t_beta*` with matching lengths.
fn neutral_word(rng: &mut ChaCha8Rng) -> Monomial {
    let k = rng.gen_range(0..=2);
    let l = rng.gen_range(0..=2);
    let mut word = |len: usize| -> Vec<u16> { (0..len).map(|_| rng.gen_range(1..=2)).collect() };
    let (mu, nu, alpha, beta) = (word(k), word(k), word(l), word(l));
    Monomial::s_word(&mu)
        .concat(&Monomial::s_word(&nu).adjoint())
        .concat(&Monomial::t_word(&alpha))
        .concat(&Monomial::t_word(&beta).adjoint())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_antisymmetric(p in bidegree(), pp in bidegree(), a in 1i64..8, b in 2i64..12) {
        let params = Params::rational(2, 2, a, b).unwrap();
        let theta = ThetaMatrix::new(&params).unwrap();
        prop_assert_eq!(theta.h_exponent(p, pp), -theta.h_exponent(pp, p));
        prop_assert!((theta.pairing(p, pp) + theta.pairing(pp, p)).abs() <= 1e-15);
        // the two orders differ by h^{2 e}
        let e = theta.h_exponent(p, pp);
        let swapped = theta.phase(pp, p).mul(&params.h_pow(2 * e).unwrap()).unwrap();
        prop_assert_eq!(theta.phase(p, pp), swapped);
    }

    #[test]
    fn equal_or_opposite_degrees_multiply_undeformed(seed in any::<u64>(), opposite in any::<bool>()) {
        let params = Params::rational(2, 2, 1, 4).unwrap();
        let theta = ThetaMatrix::new(&params).unwrap();
        let base = RuleSet::untwisted(&params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&base, 5, &mut rng);
        let p = w.bidegree().unwrap();
        let partner = if opposite { w.adjoint() } else { w.clone() };
        let v = neutral_word(&mut rng).concat(&partner);
        let pv = if opposite { (-p.0, -p.1) } else { p };
        let a = AlgebraElement::monomial(w, params.one());
        let b = AlgebraElement::monomial(v, params.one());
        let prod = rieffel_product(
            &GradedElement::homogeneous(p, a.clone()).unwrap(),
            &GradedElement::homogeneous(pv, b.clone()).unwrap(),
            &theta,
            &base,
        )
        .unwrap();
        prop_assert_eq!(prod.flatten().unwrap(), normalize(&a.mul(&b).unwrap(), &base).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn roundtrip_within_tail_bound(q in 0.05f64..0.6, k in 2usize..8) {
        let params = Params::numeric(1, 1, Complex64::new(q, 0.0)).unwrap();
        let r = roundtrip_check(k, k + 2, &params).unwrap();
        let bound = 5.0 * q.powi(k as i32 + 1);
        prop_assert!(r.psi_phi_s <= bound, "psi phi s: {} > {}", r.psi_phi_s, bound);
        prop_assert!(r.psi_phi_t <= bound, "psi phi t: {} > {}", r.psi_phi_t, bound);
        prop_assert!(r.phi_psi_t <= bound, "phi psi t: {} > {}", r.phi_psi_t, bound);
    }
}

#[test]
fn letters_have_unit_bidegree() {
    assert_eq!(Monomial::new(vec![Letter::s(1)]).bidegree().unwrap(), (1, 0));
    assert_eq!(Monomial::new(vec![Letter::t(2).star()]).bidegree().unwrap(), (0, -1));
}
