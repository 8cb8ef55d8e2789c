use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::normalize::{normalize_with, Strategy};
use super::rules::{RuleMode, RuleSet};
use crate::algebra::{AlgebraElement, Family, Letter, Monomial};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Disagreement {
    pub trial: usize,
    pub word: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub mode: RuleMode,
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
    pub total_steps: u64,
    pub disagreements: Vec<Disagreement>,
    pub errors: Vec<String>,
}

impl FuzzReport {
    pub fn pass(&self) -> bool {
        self.disagreements.is_empty() && self.errors.is_empty()
    }
}

/// Independent stream for (trial, role); roles 0..3 are word, strategy A, strategy B.
fn stream(seed: u64, trial: usize, role: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64 * 4 + role);
    rng
}

fn alphabet(rules: &RuleSet) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=rules.n() as u16 {
        out.push(Letter::s(i));
        out.push(Letter::s(i).star());
    }
    for r in 1..=rules.m() as u16 {
        out.push(Letter::t(r));
        out.push(Letter::t(r).star());
    }
    if rules.mode() == RuleMode::BraidedWithU {
        out.push(Letter::u());
        out.push(Letter::u().star());
    }
    out
}

/// Uniform random word of length `1..=max_len` over the admitted letters.
pub fn random_word(rules: &RuleSet, max_len: usize, rng: &mut ChaCha8Rng) -> Monomial {
    let letters = alphabet(rules);
    let len = rng.gen_range(1..=max_len.max(1));
    Monomial::new((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

/// Normalize random words under two independently seeded random strategies and compare.
pub fn fuzz_confluence(rules: &RuleSet, trials: usize, max_len: usize, seed: u64) -> FuzzReport {
    let one = match rules.order() {
        Some(_) => crate::algebra::Scalar::Exact(crate::algebra::Phase::monomial(1, 0, rules.order())),
        None => crate::algebra::Scalar::numeric(num_complex::Complex64::new(1.0, 0.0)),
    };
    let outcomes: Vec<(u64, Option<Disagreement>, Option<String>)> = (0..trials.max(1))
        .into_par_iter()
        .map(|trial| {
            let word = random_word(rules, max_len, &mut stream(seed, trial, 0));
            let x = AlgebraElement::monomial(word.clone(), one.clone());
            let mut ra = stream(seed, trial, 1);
            let mut rb = stream(seed, trial, 2);
            let run = |rng: &mut ChaCha8Rng| -> Result<(AlgebraElement, u64)> {
                let (y, st) = normalize_with(&x, rules, Strategy::Random(rng))?;
                Ok((y, st.steps))
            };
            match (run(&mut ra), run(&mut rb)) {
                (Ok((a, sa)), Ok((b, sb))) => {
                    let same = if rules.is_exact() {
                        a == b
                    } else {
                        a.sub(&b).map(|d| d.is_zero_within(rules.tol())).unwrap_or(false)
                    };
                    let dis = (!same).then(|| Disagreement {
                        trial,
                        word: word.to_string(),
                        first: a.to_string(),
                        second: b.to_string(),
                    });
                    (sa + sb, dis, None)
                }
                (Err(e), _) | (_, Err(e)) => (0, None, Some(format!("trial {trial} ({word}): {e}"))),
            }
        })
        .collect();

    let mut report = FuzzReport {
        mode: rules.mode(),
        trials: trials.max(1),
        max_len,
        seed,
        total_steps: 0,
        disagreements: Vec::new(),
        errors: Vec::new(),
    };
    for (steps, dis, err) in outcomes {
        report.total_steps += steps;
        report.disagreements.extend(dis);
        report.errors.extend(err);
    }
    report
}

/// Letters of a normal-form word, grouped by the family each block belongs to.
pub fn family_pattern(m: &Monomial) -> Vec<(Family, bool)> {
    let mut out: Vec<(Family, bool)> = Vec::new();
    for l in m.letters() {
        let key = (l.family, l.starred);
        if out.last() != Some(&key) {
            out.push(key);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Params;
    use crate::rewrite::normalize::normalize;

    #[test]
    fn deterministic_for_fixed_seed() {
        let p = Params::rational(2, 2, 1, 4).unwrap();
        let r = RuleSet::new(&p);
        let a = fuzz_confluence(&r, 200, 8, 7);
        let b = fuzz_confluence(&r, 200, 8, 7);
        assert_eq!(a, b);
        assert!(a.pass());
    }

    #[test]
    fn single_letters_are_confluent() {
        let p = Params::rational(2, 2, 1, 3).unwrap();
        let rep = fuzz_confluence(&RuleSet::new(&p), 100, 1, 3);
        assert!(rep.pass());
        assert_eq!(rep.total_steps, 0);
    }

    #[test]
    fn braided_normal_form_shape() {
        use Family::{S, T};
        let p = Params::rational(2, 2, 1, 4).unwrap();
        let r = RuleSet::new(&p);
        let order = [(S, false), (T, false), (T, true), (S, true)];
        for trial in 0..300 {
            let w = random_word(&r, 10, &mut stream(11, trial, 0));
            let y = normalize(&AlgebraElement::monomial(w, p.one()), &r).unwrap();
            for (m, _) in y.iter() {
                let pat = family_pattern(m);
                let pos: Vec<usize> =
                    pat.iter().map(|k| order.iter().position(|o| o == k).unwrap()).collect();
                assert!(pos.windows(2).all(|w| w[0] < w[1]), "{m}");
            }
        }
    }
}
