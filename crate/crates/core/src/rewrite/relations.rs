use crate::algebra::{AlgebraElement, Letter, Monomial, Params, RelMode};
use crate::error::Result;

/// A defining relation `lhs = rhs`, with `rhs` already in normal form.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

impl Relation {
    /// `lhs - rhs`, which vanishes in every representation.
    pub fn difference(&self) -> Result<AlgebraElement> {
        self.lhs.sub(&self.rhs)
    }
}

fn word(letters: &[Letter], params: &Params) -> AlgebraElement {
    AlgebraElement::monomial(Monomial::new(letters.to_vec()), params.one())
}

/// Isometry, orthogonality and twisted commutation relations with their adjoint forms;
/// the braided relations `t_r s_j = q s_j t_r` and `s_j* t_r* = conj(q) t_r* s_j*` when `|q| = 1`.
pub fn defining_relations(params: &Params) -> Result<Vec<Relation>> {
    let (n, m) = (params.n as u16, params.m as u16);
    let q = params.q();
    let qb = params.q_bar();
    let one = AlgebraElement::scalar(params.one());
    let delta = |a: u16, b: u16| if a == b { one.clone() } else { AlgebraElement::zero() };
    let mut out = Vec::new();
    let mut push = |name: String, lhs: AlgebraElement, rhs: AlgebraElement| out.push(Relation { name, lhs, rhs });

    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (Letter::s(i), Letter::s(j));
            push(format!("s{i}* s{j} = {}", u16::from(i == j)), word(&[a.star(), b], params), delta(i, j));
        }
    }
    for r in 1..=m {
        for l in 1..=m {
            let (a, b) = (Letter::t(r), Letter::t(l));
            push(format!("t{r}* t{l} = {}", u16::from(r == l)), word(&[a.star(), b], params), delta(r, l));
        }
    }
    for j in 1..=n {
        for r in 1..=m {
            let (s, t) = (Letter::s(j), Letter::t(r));
            push(format!("s{j}* t{r} = q t{r} s{j}*"), word(&[s.star(), t], params), word(&[t, s.star()], params).scale(&q)?);
            push(
                format!("t{r}* s{j} = conj(q) s{j} t{r}*"),
                word(&[t.star(), s], params),
                word(&[s, t.star()], params).scale(&qb)?,
            );
            if params.relmode != RelMode::WickOnly {
                push(format!("t{r} s{j} = q s{j} t{r}"), word(&[t, s], params), word(&[s, t], params).scale(&q)?);
                push(
                    format!("s{j}* t{r}* = conj(q) t{r}* s{j}*"),
                    word(&[s.star(), t.star()], params),
                    word(&[t.star(), s.star()], params).scale(&qb)?,
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{normalize, RuleSet};

    #[test]
    fn counts() {
        let p = Params::rational(2, 2, 1, 4).unwrap();
        assert_eq!(defining_relations(&p).unwrap().len(), 4 + 4 + 16);
        let w = Params::numeric(2, 2, num_complex::Complex64::new(0.5, 0.0)).unwrap();
        assert_eq!(defining_relations(&w).unwrap().len(), 4 + 4 + 8);
    }

    #[test]
    fn normal_forms_match() {
        let p = Params::rational(2, 3, 1, 4).unwrap();
        let rules = RuleSet::new(&p);
        for rel in defining_relations(&p).unwrap() {
            assert_eq!(normalize(&rel.lhs, &rules).unwrap(), rel.rhs, "{}", rel.name);
        }
    }
}
