//! The isomorphism between `E^q` for `|q| < 1` and the Cuntz-Toeplitz algebra `E^0 = O^0_{n+m}`.
//!
//! `phi` sends `v_i -> s_i` and `v_{n+r} -> t^_r = (1 - Q) t_r (1 - |q|^2 Q)^{-1/2}`.
//! `psi` sends `s_i -> v_i` and `t_r -> w_r = sum_k q^k sum_{|mu|=k} v_mu w~_r v_mu*` with
//! `w~_r = v_{n+r} (1 - |q|^2 Q~)^{1/2}`. Square roots of the projections `Q`, `Q~`
//! are polynomial: `f(Q) = f(0) + (f(1) - f(0)) Q`.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{words, AlgebraElement, Letter, Monomial, Params, RelMode};
use crate::error::{Error, Result};
use crate::fock::{operator_norm, rep_element_with, rep_generator, FockBasis, FockOperator, GeneratorMap, DEFAULT_DIM_CAP};
use crate::rewrite::{check_identity, RuleSet};

/// Default bound on the number of terms of a symbolic series.
pub const SERIES_TERM_CAP: usize = 200_000;

/// `q` for the untwisting maps; requires the numeric Wick algebra with `|q| < 1`.
fn contraction(params: &Params) -> Result<Complex64> {
    let q = params.q_complex();
    if params.is_exact() || params.relmode != RelMode::WickOnly || q.norm() >= 1.0 {
        return Err(Error::Mode("untwisting needs the Wick relations with numeric |q| < 1".into()));
    }
    Ok(q)
}

/// `(1 - |q|^2)^{-1/2} - 1`, the `Q`-coefficient of `(1 - |q|^2 Q)^{-1/2}`.
pub fn inverse_root_coeff(q: Complex64) -> f64 {
    (1.0 - q.norm_sqr()).powf(-0.5) - 1.0
}

/// `(1 - |q|^2)^{1/2} - 1`, the `Q`-coefficient of `(1 - |q|^2 Q)^{1/2}`.
pub fn root_coeff(q: Complex64) -> f64 {
    (1.0 - q.norm_sqr()).sqrt() - 1.0
}

fn letter(l: Letter, params: &Params) -> AlgebraElement {
    AlgebraElement::letter(l, params.one())
}

/// `Q = sum_i s_i s_i*`.
pub fn range_projection(params: &Params) -> Result<AlgebraElement> {
    let mut q = AlgebraElement::zero();
    for i in 1..=params.n as u16 {
        q.add_term(Monomial::new(vec![Letter::s(i), Letter::s(i).star()]), params.one())?;
    }
    Ok(q)
}

/// `1 + c Q`.
fn one_plus(c: f64, q: &AlgebraElement, params: &Params) -> Result<AlgebraElement> {
    AlgebraElement::scalar(params.one()).add(&q.scale(&params.complex(Complex64::new(c, 0.0))?)?)
}

/// `t^_r = (1 - Q) t_r (1 + c Q)` in `E^q`.
pub fn hat_t(r: u16, params: &Params) -> Result<AlgebraElement> {
    let q = contraction(params)?;
    Letter::t(r).check_range(params.n, params.m)?;
    let proj = range_projection(params)?;
    let rules = RuleSet::new(params);
    if !check_identity(&proj.mul(&proj)?, &proj, &rules)? {
        return Err(Error::IdentityFailed("Q is not idempotent".into()));
    }
    let left = AlgebraElement::scalar(params.one()).sub(&proj)?;
    left.mul(&letter(Letter::t(r), params))?.mul(&one_plus(inverse_root_coeff(q), &proj, params)?)
}

/// Terms of the series `w_r` truncated at `K`; the error carries the first `K` that exceeds `cap`.
fn series_terms(n: usize, k: usize, cap: usize) -> Result<usize> {
    let mut total = 0usize;
    let mut shell = 1usize;
    for j in 0..=k {
        total = total.saturating_add(shell.saturating_mul(n + 1));
        if total > cap {
            return Err(Error::SeriesBudget { k: j, terms: total, cap });
        }
        shell = shell.saturating_mul(n);
    }
    Ok(total)
}

/// Partial sum `sum_{k <= K} q^k sum_{|mu| = k} v_mu w~_r v_mu*` in `E^0`,
/// written with `v_i = s_i` and `v_{n+r} = t_r`.
pub fn w_series(r: u16, k: usize, params: &Params, cap: usize) -> Result<AlgebraElement> {
    let q = contraction(params)?;
    Letter::t(r).check_range(params.n, params.m)?;
    series_terms(params.n, k, cap)?;
    let w_tilde = letter(Letter::t(r), params).mul(&one_plus(root_coeff(q), &range_projection(params)?, params)?)?;
    let mut out = AlgebraElement::zero();
    let mut qk = Complex64::new(1.0, 0.0);
    for j in 0..=k {
        let coeff = params.complex(qk)?;
        for mu in words(params.n, j) {
            let sm = Monomial::s_word(&mu);
            let left = AlgebraElement::monomial(sm.clone(), coeff.clone());
            let right = AlgebraElement::monomial(sm.adjoint(), params.one());
            out = out.add(&left.mul(&w_tilde)?.mul(&right)?)?;
        }
        qk *= q;
    }
    Ok(out)
}

fn check_full(basis: &FockBasis, params: &Params) -> Result<()> {
    if basis.is_tensor() || basis.n() != params.n || basis.m() != params.m {
        return Err(Error::InvalidParams("untwisting operators live on the full Fock model of matching size".into()));
    }
    Ok(())
}

/// Creation operators `V_1..V_{n+m}` on the full model, as `(V, V*)` pairs.
struct Creation {
    s: Vec<(FockOperator, FockOperator)>,
    t: Vec<FockOperator>,
    q_tilde: FockOperator,
}

impl Creation {
    fn new(basis: &FockBasis, params: &Params) -> Result<Creation> {
        let mut s = Vec::new();
        for i in 1..=params.n as u16 {
            let v = rep_generator(Letter::s(i), basis, params)?;
            let vs = v.adjoint();
            s.push((v, vs));
        }
        let t = (1..=params.m as u16)
            .map(|r| rep_generator(Letter::t(r), basis, params))
            .collect::<Result<Vec<_>>>()?;
        let mut q_tilde = FockOperator::zero(*basis);
        for (v, vs) in &s {
            q_tilde = q_tilde.add_scaled(&v.compose(vs), Complex64::new(1.0, 0.0));
        }
        Ok(Creation { s, t, q_tilde })
    }

    /// `sum_i V_i a V_i*`.
    fn conjugate_sum(&self, a: &FockOperator) -> FockOperator {
        let mut acc = FockOperator::zero(a.basis());
        for (v, vs) in &self.s {
            acc = acc.add_scaled(&v.compose(a).compose(vs), Complex64::new(1.0, 0.0));
        }
        acc
    }

    /// `sum_{k <= K} q^k sum_{|mu|=k} V_mu base V_mu*`, by Horner's rule.
    fn series(&self, base: &FockOperator, q: Complex64, k: usize) -> FockOperator {
        let depth = base.basis().depths().0;
        let mut a = base.clone();
        // shells longer than the truncation vanish
        for _ in 0..k.min(depth) {
            a = base.add_scaled(&self.conjugate_sum(&a), q);
        }
        a
    }

    /// `a (1 + c Q~)`.
    fn times_one_plus(&self, a: &FockOperator, c: f64) -> FockOperator {
        a.add_scaled(&a.compose(&self.q_tilde), Complex64::new(c, 0.0))
    }
}

/// Operator of the partial sum `w_r` truncated at `K` on the full model.
pub fn w_operator(r: u16, k: usize, basis: &FockBasis, params: &Params) -> Result<FockOperator> {
    let q = contraction(params)?;
    check_full(basis, params)?;
    Letter::t(r).check_range(params.n, params.m)?;
    let c = Creation::new(basis, params)?;
    let w_tilde = c.times_one_plus(&c.t[r as usize - 1], root_coeff(q));
    Ok(c.series(&w_tilde, q, k))
}

/// Images of the generators of `E^q` under `psi` with the series cut at `K`.
///
/// With `K >= depth - 1` the images agree with the untruncated `psi` on every
/// basis vector of length below the cut.
pub fn psi_generators(params: &Params, k: usize, basis: &FockBasis) -> Result<GeneratorMap> {
    let q = contraction(params)?;
    check_full(basis, params)?;
    let c = Creation::new(basis, params)?;
    let mut g = GeneratorMap::new(*basis);
    for (i, (v, _)) in c.s.iter().enumerate() {
        g.insert(Letter::s(i as u16 + 1), v.clone());
    }
    for (r, v) in c.t.iter().enumerate() {
        let w_tilde = c.times_one_plus(v, root_coeff(q));
        g.insert(Letter::t(r as u16 + 1), c.series(&w_tilde, q, k));
    }
    Ok(g)
}

/// `K` with `|q|^K <= eps`.
pub fn k_for_epsilon(eps: f64, q_abs: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) || !(0.0..1.0).contains(&q_abs) {
        return Err(Error::InvalidParams(format!("need 0 < eps < 1 and 0 <= |q| < 1, got {eps}, {q_abs}")));
    }
    if q_abs == 0.0 {
        return Ok(0);
    }
    Ok((eps.ln() / q_abs.ln()).ceil().max(0.0) as usize)
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub n: usize,
    pub m: usize,
    pub q: (f64, f64),
    pub k: usize,
    pub depth: usize,
    pub dimension: usize,
    /// `max_i || psi phi (v_i) - v_i ||`, `i <= n`.
    pub psi_phi_s: f64,
    /// `max_r || psi phi (v_{n+r}) - v_{n+r} ||`.
    pub psi_phi_t: f64,
    /// `max_r || phi psi (t_r) - t_r ||`, measured through the exact `psi`.
    pub phi_psi_t: f64,
    /// `max || t^_r* t^_l - delta_rl ||` through the exact `psi`.
    pub isometry_residual: f64,
    /// `max || s_i* t^_r ||` through the exact `psi`.
    pub orthogonality_residual: f64,
    /// `max || v_i* w_r - q w_r v_i* ||` for the truncated series.
    pub series_braid_residual: f64,
    /// `|| (w_r - w_r^K) - q^{K+1} sum_{|mu|=K+1} v_mu w_r v_mu* ||`.
    pub tail_identity_residual: f64,
    /// `|| q^{K+1} sum_{|mu|=K+1} v_mu w_r v_mu* ||`, at most `|q|^{K+1}`.
    pub tail_norm: f64,
    pub tail_bound: f64,
    /// `5 |q|^{K+1}`.
    pub certified_bound: f64,
    pub tail_certified: bool,
    pub pass: bool,
}

/// Rounding slack for quantities that vanish exactly in exact arithmetic.
const ROUNDING: f64 = 1e-10;

/// Compare `psi phi` and `phi psi` with the identity on the full model cut at `depth`.
///
/// Residuals are operator norms on basis vectors of length at most `depth - 1`,
/// where every generator image is computed without truncation loss.
pub fn roundtrip_check(k: usize, depth: usize, params: &Params) -> Result<RoundtripReport> {
    let q = contraction(params)?;
    let basis = FockBasis::full(params.n, params.m, depth);
    if basis.dim() > DEFAULT_DIM_CAP {
        return Err(Error::DimensionGuard { dim: basis.dim(), cap: DEFAULT_DIM_CAP });
    }
    if depth == 0 {
        return Err(Error::DegenerateSafeSubspace { peak: 1, depth });
    }
    let ix = basis.indexer();
    let safe = |j: usize| ix.degree(j).0 < depth;
    let norm = |a: &FockOperator| operator_norm(&a.restrict_columns(safe));

    let c = Creation::new(&basis, params)?;
    let approx = psi_generators(params, k, &basis)?;
    let exact = psi_generators(params, depth, &basis)?;
    let qa = q.norm();
    let tail_bound = qa.powi(k as i32 + 1);

    let psi_phi_s = c
        .s
        .iter()
        .enumerate()
        .map(|(i, (v, _))| norm(&approx.get(&Letter::s(i as u16 + 1)).expect("generator").sub(v)))
        .fold(0.0, f64::max);

    let mut psi_phi_t = 0.0f64;
    let mut phi_psi_t = 0.0f64;
    let mut isometry_residual = 0.0f64;
    let mut orthogonality_residual = 0.0f64;
    let mut series_braid_residual = 0.0f64;
    let mut tail_identity_residual = 0.0f64;
    let mut tail_norm = 0.0f64;
    let mut hats = Vec::new();
    for r in 1..=params.m as u16 {
        let ht = hat_t(r, params)?;
        let v = &c.t[r as usize - 1];
        let psi_phi = rep_element_with(&ht, &approx, 0.0, None, DEFAULT_DIM_CAP)?;
        psi_phi_t = psi_phi_t.max(norm(&psi_phi.sub(v)));

        // phi(w_r^K) = sum q^k s_mu t^_r (1 + c' Q) s_mu*, seen through the exact psi
        let hat_exact = rep_element_with(&ht, &exact, 0.0, None, DEFAULT_DIM_CAP)?;
        let phi_w = c.series(&c.times_one_plus(&hat_exact, root_coeff(q)), q, k);
        let w_exact = exact.get(&Letter::t(r)).expect("generator");
        phi_psi_t = phi_psi_t.max(norm(&phi_w.sub(w_exact)));

        for (_, vis) in &c.s {
            orthogonality_residual = orthogonality_residual.max(norm(&vis.compose(&hat_exact)));
            let w_k = approx.get(&Letter::t(r)).expect("generator");
            let braid = vis.compose(w_k).add_scaled(&w_k.compose(vis), -q);
            series_braid_residual = series_braid_residual.max(norm(&braid));
        }

        let w_k = approx.get(&Letter::t(r)).expect("generator");
        let mut shell = w_exact.clone();
        for _ in 0..=k.min(depth) {
            shell = c.conjugate_sum(&shell);
        }
        let tail = FockOperator::zero(basis).add_scaled(&shell, q.powi(k as i32 + 1));
        tail_norm = tail_norm.max(norm(&tail));
        tail_identity_residual = tail_identity_residual.max(norm(&w_exact.sub(w_k).sub(&tail)));
        hats.push(hat_exact);
    }
    for (a, ha) in hats.iter().enumerate() {
        for (b, hb) in hats.iter().enumerate() {
            let mut g = ha.adjoint().compose(hb);
            if a == b {
                g = g.sub(&FockOperator::identity(basis));
            }
            isometry_residual = isometry_residual.max(norm(&g));
        }
    }

    let certified_bound = 5.0 * tail_bound;
    let tail_certified = tail_norm <= tail_bound * (1.0 + ROUNDING) + ROUNDING && tail_identity_residual <= ROUNDING;
    let pass = tail_certified
        && psi_phi_s == 0.0
        && psi_phi_t <= certified_bound
        && phi_psi_t <= certified_bound
        && series_braid_residual <= 2.0 * tail_bound + ROUNDING
        && isometry_residual <= ROUNDING
        && orthogonality_residual <= ROUNDING;
    Ok(RoundtripReport {
        n: params.n,
        m: params.m,
        q: (q.re, q.im),
        k,
        depth,
        dimension: basis.dim(),
        psi_phi_s,
        psi_phi_t,
        phi_psi_t,
        isometry_residual,
        orthogonality_residual,
        series_braid_residual,
        tail_identity_residual,
        tail_norm,
        tail_bound,
        certified_bound,
        tail_certified,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::rep_element;

    fn wick(n: usize, m: usize, q: f64) -> Params {
        Params::numeric(n, m, Complex64::new(q, 0.0)).unwrap()
    }

    #[test]
    fn hat_t_at_zero_is_projected_t() {
        let p = wick(2, 1, 0.0);
        let x = hat_t(1, &p).unwrap();
        assert_eq!(x.to_string(), crate::algebra::parse_element("t1 - s1 s1* t1 - s2 s2* t1", &p).unwrap().to_string());
    }

    #[test]
    fn series_at_zero_collapses() {
        let p = wick(2, 2, 0.0);
        let w = w_series(2, 4, &p, SERIES_TERM_CAP).unwrap();
        assert_eq!(w.to_string(), "t2");
    }

    #[test]
    fn series_budget_reports_first_failing_k() {
        let p = wick(2, 1, 0.5);
        match w_series(1, 30, &p, 1000) {
            Err(Error::SeriesBudget { k, .. }) => assert_eq!(k, 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symbolic_series_matches_operator_series() {
        let p = wick(2, 1, 0.4);
        let basis = FockBasis::full(2, 1, 4);
        let sym = rep_element(&w_series(1, 3, &p, SERIES_TERM_CAP).unwrap(), &basis, &p).unwrap();
        let op = w_operator(1, 3, &basis, &p).unwrap();
        assert!(sym.sub(&op).max_abs() < 1e-14);
    }

    #[test]
    fn k_for_epsilon_values() {
        assert_eq!(k_for_epsilon(1e-6, 0.5).unwrap(), 20);
        assert_eq!(k_for_epsilon(1e-6, 0.0).unwrap(), 0);
        assert!(k_for_epsilon(2.0, 0.5).is_err());
    }

    #[test]
    fn zero_q_roundtrip_is_exact() {
        let r = roundtrip_check(3, 6, &wick(1, 1, 0.0)).unwrap();
        assert_eq!((r.psi_phi_t, r.phi_psi_t), (0.0, 0.0));
        assert!(r.pass);
    }

    #[test]
    fn small_roundtrip_within_tail() {
        let r = roundtrip_check(4, 7, &wick(2, 1, 0.3)).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.phi_psi_t > 0.0 && r.phi_psi_t <= r.certified_bound);
    }

    #[test]
    fn exact_params_are_rejected() {
        assert!(hat_t(1, &Params::rational(2, 2, 1, 3).unwrap()).is_err());
    }
}
