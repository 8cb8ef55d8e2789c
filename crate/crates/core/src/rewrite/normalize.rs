use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rules::{Action, Factor, RuleSet};
use crate::algebra::{AlgebraElement, Letter, Monomial, Scalar};
use crate::error::{Error, Result};

/// Order in which redexes are contracted.
pub enum Strategy<'a> {
    /// Always the leftmost redex (deterministic default).
    Leftmost,
    /// A uniformly random redex of the current word.
    Random(&'a mut ChaCha8Rng),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NormalizeStats {
    /// Rule applications.
    pub steps: u64,
    /// Largest number of pending words plus finished terms.
    pub peak_terms: usize,
}

struct Item {
    word: Vec<Letter>,
    coeff: Scalar,
    depth: usize,
    bound: usize,
    /// No redex starts before this position.
    hint: usize,
}

fn apply_factor(c: &mut Scalar, f: Factor) -> Result<()> {
    match (c, f) {
        (Scalar::Exact(p), Factor::H(k)) => {
            p.shift(k);
            Ok(())
        }
        (Scalar::Numeric(z), Factor::C(w)) => {
            *z *= w;
            Ok(())
        }
        _ => Err(Error::BackendMismatch("rule phase and coefficient use different backends".into())),
    }
}

fn find_redex(rules: &RuleSet, w: &[Letter], from: usize) -> Option<(usize, Action)> {
    (from..w.len().saturating_sub(1)).find_map(|i| rules.action(w[i], w[i + 1]).map(|a| (i, a)))
}

/// True when no rule applies anywhere in the word.
pub fn is_normal(m: &Monomial, rules: &RuleSet) -> bool {
    find_redex(rules, m.letters(), 0).is_none()
}

/// Normal form with the default leftmost strategy.
pub fn normalize(x: &AlgebraElement, rules: &RuleSet) -> Result<AlgebraElement> {
    normalize_with(x, rules, Strategy::Leftmost).map(|r| r.0)
}

pub fn normalize_with_stats(x: &AlgebraElement, rules: &RuleSet) -> Result<(AlgebraElement, NormalizeStats)> {
    normalize_with(x, rules, Strategy::Leftmost)
}

pub fn normalize_with(
    x: &AlgebraElement,
    rules: &RuleSet,
    mut strategy: Strategy<'_>,
) -> Result<(AlgebraElement, NormalizeStats)> {
    let mut stack: Vec<Item> = Vec::with_capacity(x.len());
    for (m, c) in x.iter() {
        for l in m.letters() {
            rules.admits(l)?;
        }
        let coeff = match c {
            Scalar::Exact(p) => {
                if !rules.is_exact() {
                    return Err(Error::BackendMismatch("exact coefficient under numeric rules".into()));
                }
                Scalar::Exact(p.with_order(rules.order())?)
            }
            Scalar::Numeric(_) => {
                if rules.is_exact() {
                    return Err(Error::BackendMismatch("numeric coefficient under exact rules".into()));
                }
                c.clone()
            }
        };
        stack.push(Item {
            word: m.letters().to_vec(),
            coeff,
            depth: 0,
            bound: rules.step_bound(m.len()),
            hint: 0,
        });
    }

    let mut stats = NormalizeStats::default();
    let mut done: HashMap<Vec<Letter>, Scalar> = HashMap::new();
    let mut scratch: Vec<(usize, Action)> = Vec::new();

    while let Some(mut item) = stack.pop() {
        let found = match &mut strategy {
            Strategy::Leftmost => find_redex(rules, &item.word, item.hint),
            Strategy::Random(rng) => {
                scratch.clear();
                for i in 0..item.word.len().saturating_sub(1) {
                    if let Some(a) = rules.action(item.word[i], item.word[i + 1]) {
                        scratch.push((i, a));
                    }
                }
                if scratch.is_empty() {
                    None
                } else {
                    Some(scratch[rng.gen_range(0..scratch.len())])
                }
            }
        };
        let Some((i, action)) = found else {
            match done.get_mut(&item.word) {
                Some(old) => {
                    let sum = old.add(&item.coeff)?;
                    if sum.is_zero() {
                        done.remove(&item.word);
                    } else {
                        *old = sum;
                    }
                }
                None => {
                    done.insert(item.word, item.coeff);
                }
            }
            continue;
        };

        stats.steps += 1;
        item.depth += 1;
        if item.depth > item.bound {
            return Err(Error::StepBound { len: item.word.len(), bound: item.bound });
        }
        item.hint = i.saturating_sub(1);
        match action {
            Action::Delta(false) => {}
            Action::Delta(true) => {
                item.word.drain(i..i + 2);
                stack.push(item);
            }
            Action::Swap(f) => {
                item.word.swap(i, i + 1);
                apply_factor(&mut item.coeff, f)?;
                stack.push(item);
            }
            Action::Cuntz => {
                let fam = item.word[i].family;
                let size = rules.family_size(fam);
                let neg = item.coeff.neg();
                for j in 1..size {
                    let mut w = item.word.clone();
                    let l = Letter { family: fam, index: j as u16, starred: false };
                    w[i] = l;
                    w[i + 1] = l.star();
                    stack.push(Item {
                        word: w,
                        coeff: neg.clone(),
                        depth: item.depth,
                        bound: item.bound,
                        hint: item.hint,
                    });
                }
                item.word.drain(i..i + 2);
                stack.push(item);
            }
        }

        let live = stack.len() + done.len();
        stats.peak_terms = stats.peak_terms.max(live);
        if live > rules.term_cap() {
            return Err(Error::TermBudget { cap: rules.term_cap() });
        }
    }

    let out = AlgebraElement::from_terms(done.into_iter().map(|(w, c)| (Monomial::new(w), c)))?;
    Ok((out, stats))
}

/// Whether `lhs - rhs` normalizes to zero (numeric coefficients up to the rule tolerance).
pub fn check_identity(lhs: &AlgebraElement, rhs: &AlgebraElement, rules: &RuleSet) -> Result<bool> {
    let d = normalize(&lhs.sub(rhs)?, rules)?;
    Ok(d.is_zero_within(rules.tol()))
}
