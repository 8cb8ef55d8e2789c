//! Rieffel deformation of the untwisted Toeplitz algebra by the skew form `Theta_q`.
//!
//! On homogeneous components `a in A_p`, `b in A_p'` the deformed product is
//! `a ._Theta b = h^{p2 p1' - p1 p2'} a b` with `h = e^{i pi phi0}`, `q = h^2`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, Letter, Monomial, Params, Scalar};
use crate::error::{Error, Result};
use crate::fock::random_normal_monomial;
use crate::rewrite::{normalize, IdentityCheck, RuleSet};

pub type Bidegree = (i64, i64);

/// The skew form with entries `(0, phi0/2; -phi0/2, 0)`, `phi0 = a/b`.
#[derive(Clone, Copy, Debug)]
pub struct ThetaMatrix {
    params: Params,
}

impl ThetaMatrix {
    pub fn new(params: &Params) -> Result<ThetaMatrix> {
        if !params.is_exact() {
            return Err(Error::Mode("the deformed product is computed with an exact rational angle".into()));
        }
        Ok(ThetaMatrix { params: *params })
    }

    pub fn phi0(&self) -> f64 {
        self.params.phi0()
    }

    /// Exponent of `h` in `e^{2 pi i <Theta p, p'>}`.
    pub fn h_exponent(&self, p: Bidegree, pp: Bidegree) -> i64 {
        p.1 * pp.0 - p.0 * pp.1
    }

    /// `<Theta p, p'>`.
    pub fn pairing(&self, p: Bidegree, pp: Bidegree) -> f64 {
        self.phi0() / 2.0 * self.h_exponent(p, pp) as f64
    }

    pub fn phase(&self, p: Bidegree, pp: Bidegree) -> Scalar {
        Scalar::h_pow(self.h_exponent(p, pp), self.params.h_order())
    }
}

/// Element split into homogeneous components by bidegree; components are kept in normal form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedElement {
    components: BTreeMap<Bidegree, AlgebraElement>,
}

impl GradedElement {
    pub fn zero() -> GradedElement {
        GradedElement::default()
    }

    /// A single component, rejected unless every monomial has bidegree `p`.
    pub fn homogeneous(p: Bidegree, a: AlgebraElement) -> Result<GradedElement> {
        let mut g = GradedElement::zero();
        g.insert(p, a)?;
        Ok(g)
    }

    /// Bin the monomials of `x` by bidegree.
    pub fn from_element(x: &AlgebraElement) -> Result<GradedElement> {
        let mut g = GradedElement::zero();
        for (m, c) in x.iter() {
            let p = m.bidegree()?;
            g.insert(p, AlgebraElement::monomial(m.clone(), c.clone()))?;
        }
        Ok(g)
    }

    /// Add `a` to the component of bidegree `p`.
    pub fn insert(&mut self, p: Bidegree, a: AlgebraElement) -> Result<()> {
        for (m, _) in a.iter() {
            let found = m.bidegree()?;
            if found != p {
                return Err(Error::Inhomogeneous { expected: p, found });
            }
        }
        let sum = match self.components.remove(&p) {
            Some(old) => old.add(&a)?,
            None => a,
        };
        if !sum.is_zero() {
            self.components.insert(p, sum);
        }
        Ok(())
    }

    pub fn components(&self) -> &BTreeMap<Bidegree, AlgebraElement> {
        &self.components
    }

    pub fn component(&self, p: Bidegree) -> Option<&AlgebraElement> {
        self.components.get(&p)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Result<GradedElement> {
        let mut g = GradedElement::zero();
        for (&p, a) in &self.components {
            g.insert(p, a.scale(c)?)?;
        }
        Ok(g)
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        let mut g = self.clone();
        for (&p, a) in &other.components {
            g.insert(p, a.clone())?;
        }
        Ok(g)
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        self.add(&other.scale(&Scalar::int(-1))?)
    }

    /// Sum of the components as an ordinary element.
    pub fn flatten(&self) -> Result<AlgebraElement> {
        let mut x = AlgebraElement::zero();
        for a in self.components.values() {
            x = x.add(a)?;
        }
        Ok(x)
    }
}

/// `a ._Theta b`, with products taken in the untwisted algebra (`s` and `t` commute).
pub fn rieffel_product(a: &GradedElement, b: &GradedElement, theta: &ThetaMatrix, base: &RuleSet) -> Result<GradedElement> {
    let mut out = GradedElement::zero();
    for (&p, x) in a.components() {
        for (&pp, y) in b.components() {
            let xy = normalize(&x.mul(y)?, base)?.scale(&theta.phase(p, pp))?;
            out.insert((p.0 + pp.0, p.1 + pp.1), xy)?;
        }
    }
    Ok(out)
}

/// The homomorphism `Phi` on `E^q`: `s_j -> s_j (x) 1`, `t_r -> 1 (x) t_r`, products deformed.
pub struct RieffelMap {
    params: Params,
    theta: ThetaMatrix,
    base: RuleSet,
    twisted: RuleSet,
}

impl RieffelMap {
    pub fn new(params: &Params) -> Result<RieffelMap> {
        Ok(RieffelMap {
            params: *params,
            theta: ThetaMatrix::new(params)?,
            base: RuleSet::untwisted(params)?,
            twisted: RuleSet::new(&params.toeplitz()),
        })
    }

    pub fn product(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        rieffel_product(a, b, &self.theta, &self.base)
    }

    pub fn letter(&self, l: Letter) -> Result<GradedElement> {
        let m = Monomial::new(vec![l]);
        GradedElement::homogeneous(m.bidegree()?, AlgebraElement::monomial(m, self.params.one()))
    }

    pub fn one(&self) -> GradedElement {
        GradedElement::homogeneous((0, 0), AlgebraElement::scalar(self.params.one())).expect("scalar is homogeneous")
    }

    /// `Phi(x)` as the deformed product of the letter images, extended linearly.
    pub fn apply(&self, x: &AlgebraElement) -> Result<GradedElement> {
        let mut out = GradedElement::zero();
        for (m, c) in x.iter() {
            let mut acc = self.one();
            for &l in m.letters() {
                acc = self.product(&acc, &self.letter(l)?)?;
            }
            out = out.add(&acc.scale(c)?)?;
        }
        Ok(out)
    }

    /// Product in `E^q`, normalized.
    pub fn twisted_product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        normalize(&x.mul(y)?, &self.twisted)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RieffelReport {
    pub angle: (i64, i64),
    pub relations: Vec<IdentityCheck>,
    /// `t^* s^ = q s^ t^*` as usually displayed; the deformed product gives `conj(q)`.
    pub displayed_variant: IdentityCheck,
    pub homomorphism_trials: usize,
    pub homomorphism_defects: usize,
    pub commutation_trials: usize,
    pub commutation_defects: usize,
    pub pass: bool,
}

/// Relations of `E^q` for the deformed generators, plus randomized homomorphism and commutation checks.
pub fn phi_theta_check(params: &Params, trials: usize, seed: u64) -> Result<RieffelReport> {
    use rand::Rng;
    let map = RieffelMap::new(params)?;
    let q = params.q();
    let qb = params.q_bar();
    let one = map.one();
    let zero = GradedElement::zero();
    let mut relations = Vec::new();
    let mut rel = |name: String, lhs: GradedElement, rhs: GradedElement| {
        relations.push(IdentityCheck { name, holds: lhs == rhs });
    };
    let s = |j: u16| map.letter(Letter::s(j));
    let t = |r: u16| map.letter(Letter::t(r));
    let ss = |j: u16| map.letter(Letter::s(j).star());
    let ts = |r: u16| map.letter(Letter::t(r).star());
    for i in 1..=params.n as u16 {
        for j in 1..=params.n as u16 {
            let rhs = if i == j { one.clone() } else { zero.clone() };
            rel(format!("s^{i}* s^{j} = delta"), map.product(&ss(i)?, &s(j)?)?, rhs);
        }
    }
    for r in 1..=params.m as u16 {
        for l in 1..=params.m as u16 {
            let rhs = if r == l { one.clone() } else { zero.clone() };
            rel(format!("t^{r}* t^{l} = delta"), map.product(&ts(r)?, &t(l)?)?, rhs);
        }
    }
    for j in 1..=params.n as u16 {
        for r in 1..=params.m as u16 {
            rel(
                format!("s^{j}* t^{r} = q t^{r} s^{j}*"),
                map.product(&ss(j)?, &t(r)?)?,
                map.product(&t(r)?, &ss(j)?)?.scale(&q)?,
            );
            rel(
                format!("t^{r}* s^{j} = conj(q) s^{j} t^{r}*"),
                map.product(&ts(r)?, &s(j)?)?,
                map.product(&s(j)?, &ts(r)?)?.scale(&qb)?,
            );
            rel(
                format!("t^{r} s^{j} = q s^{j} t^{r}"),
                map.product(&t(r)?, &s(j)?)?,
                map.product(&s(j)?, &t(r)?)?.scale(&q)?,
            );
        }
    }
    let displayed_variant = IdentityCheck {
        name: "t^1* s^1 = q s^1 t^1*".into(),
        holds: map.product(&ts(1)?, &s(1)?)? == map.product(&s(1)?, &ts(1)?)?.scale(&q)?,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homomorphism_defects = 0;
    for _ in 0..trials {
        let x = AlgebraElement::monomial(random_normal_monomial(params.n, params.m, 2, &mut rng), params.one());
        let y = AlgebraElement::monomial(random_normal_monomial(params.n, params.m, 2, &mut rng), params.one());
        let lhs = map.apply(&map.twisted_product(&x, &y)?)?;
        let rhs = map.product(&map.apply(&x)?, &map.apply(&y)?)?;
        if lhs != rhs {
            homomorphism_defects += 1;
        }
    }

    let mut commutation_defects = 0;
    for _ in 0..trials {
        let p1: i64 = rng.gen_range(-4..=4);
        let p2: i64 = rng.gen_range(-4..=4);
        let a = map.apply(&AlgebraElement::monomial(power(Letter::s(rng.gen_range(1..=params.n as u16)), p1), params.one()))?;
        let b = map.apply(&AlgebraElement::monomial(power(Letter::t(rng.gen_range(1..=params.m as u16)), p2), params.one()))?;
        let factor = Scalar::h_pow(2 * p1 * p2, params.h_order());
        if map.product(&b, &a)? != map.product(&a, &b)?.scale(&factor)? {
            commutation_defects += 1;
        }
    }

    let pass = relations.iter().all(|c| c.holds) && homomorphism_defects == 0 && commutation_defects == 0;
    Ok(RieffelReport {
        angle: params.angle().expect("exact angle checked"),
        relations,
        displayed_variant,
        homomorphism_trials: trials,
        homomorphism_defects,
        commutation_trials: trials,
        commutation_defects,
        pass,
    })
}

/// `l^k` for `k >= 0`, `(l*)^{-k}` otherwise.
fn power(l: Letter, k: i64) -> Monomial {
    let letter = if k >= 0 { l } else { l.star() };
    Monomial::new(vec![letter; k.unsigned_abs() as usize])
}
