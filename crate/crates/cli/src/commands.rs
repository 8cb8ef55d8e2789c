use num_complex::Complex64;
use qcuntz::algebra::{parse_element, Params, RelMode};
use qcuntz::deform::{phi_theta_check, roundtrip_check};
use qcuntz::fock::{gram_faithfulness, operator_norm, rep_element_on, safe_columns, FockBasis, FockOptions};
use qcuntz::kth::{k_pipeline, k_table, uct_ext, TableRow};
use qcuntz::report::CheckResult;
use qcuntz::rewrite::{check_identity, fuzz_confluence, normalize, verify_crossed_untwist, RuleSet};
use qcuntz::structure::{af_layer, matrix_unit_suite, verify_expectation_identity};
use qcuntz::suite::{run_criterion, suite_all, SuiteConfig};
use qcuntz::Result;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CheckCmd, Command, CrossedCmd, FockCmd, KtheoryCmd, ParamArgs, StructureCmd, UntwistCmd};

pub struct Outcome {
    /// Human-readable lines for standard output.
    pub lines: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub data: Value,
    /// Rows written instead of the checks in CSV reports.
    pub table: Option<Vec<TableRow>>,
}

impl Outcome {
    fn new(lines: Vec<String>, checks: Vec<CheckResult>, data: impl Serialize) -> Self {
        Self { lines, checks, data: to_value(data), table: None }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn rules_for(params: &ParamArgs, crossed: bool) -> Result<(Params, RuleSet)> {
    let p = params.params()?;
    let rules = if crossed { RuleSet::crossed(&p)? } else { RuleSet::new(&p) };
    Ok((p, rules))
}

fn tensor_basis(p: &Params, depth: usize) -> FockBasis {
    FockBasis::tensor(p.n, p.m, depth, depth)
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Normalize { params, crossed, expr } => {
            let (p, rules) = rules_for(params, *crossed)?;
            let y = normalize(&parse_element(expr, &p)?, &rules)?;
            Ok(Outcome::new(vec![y.to_string()], vec![], json!({ "input": expr, "normal_form": y.to_string() })))
        }
        Command::Check { params, crossed, tol, lhs, rhs } => {
            let (p, rules) = rules_for(params, *crossed)?;
            let rules = rules.with_tol(*tol);
            let holds = check_identity(&parse_element(lhs, &p)?, &parse_element(rhs, &p)?, &rules)?;
            let name = format!("{lhs} = {rhs}");
            let check = CheckResult::simple(&name, holds, "identity in the algebra", String::new());
            Ok(Outcome::new(vec![if holds { "holds" } else { "fails" }.to_string()], vec![check], json!({ "lhs": lhs, "rhs": rhs, "holds": holds })))
        }
        Command::FuzzConfluence { params, crossed, trials, max_len, seed } => {
            let (_, rules) = rules_for(params, *crossed)?;
            let r = fuzz_confluence(&rules, *trials, *max_len, *seed);
            let detail = format!("{} trials, {} disagreements, {} errors", r.trials, r.disagreements.len(), r.errors.len());
            let check = CheckResult::simple("confluence", r.pass(), "normal forms are independent of the rewriting order", detail)
                .with_metric(r.disagreements.len() as f64, 0.0);
            let mut lines = vec![format!("{} trials, {} rewrite steps", r.trials, r.total_steps)];
            lines.extend(r.disagreements.iter().take(5).map(|d| format!("{} -> {} vs {}", d.word, d.first, d.second)));
            Ok(Outcome::new(lines, vec![check], r))
        }
        Command::Fock { cmd } => fock(cmd),
        Command::Untwist { cmd: UntwistCmd::Roundtrip { n, m, q_real, k, depth } } => {
            let r = roundtrip_check(*k, *depth, &Params::numeric(*n, *m, Complex64::new(*q_real, 0.0))?)?;
            let worst = r.psi_phi_s.max(r.psi_phi_t).max(r.phi_psi_t);
            let lines = vec![
                format!("dimension {}, K = {}, D = {}", r.dimension, r.k, r.depth),
                format!("psi phi (s) - s: {:.3e}", r.psi_phi_s),
                format!("psi phi (t) - t: {:.3e}", r.psi_phi_t),
                format!("phi psi (t) - t: {:.3e}", r.phi_psi_t),
                format!("tail {:.3e} <= |q|^(K+1) = {:.3e}, identity residual {:.3e}", r.tail_norm, r.tail_bound, r.tail_identity_residual),
            ];
            let check = CheckResult::simple("untwist roundtrip", r.pass, "phi and psi are mutually inverse", String::new())
                .with_metric(worst, r.certified_bound);
            Ok(Outcome::new(lines, vec![check], r))
        }
        Command::Rieffel { cmd: CheckCmd::Check { params, trials, seed } } => {
            let r = phi_theta_check(&params.params()?, *trials, *seed)?;
            let mut checks: Vec<CheckResult> = r
                .relations
                .iter()
                .map(|c| CheckResult::simple(&c.name, c.holds, "relation for the deformed generators", String::new()))
                .collect();
            checks.push(
                CheckResult::simple("homomorphism", r.homomorphism_defects == 0, "Phi(x y) = Phi(x) ._Theta Phi(y)", String::new())
                    .with_metric(r.homomorphism_defects as f64, 0.0),
            );
            checks.push(
                CheckResult::simple("commutation factor", r.commutation_defects == 0, "exp(2 pi i p1 p2' phi0)", String::new())
                    .with_metric(r.commutation_defects as f64, 0.0),
            );
            let lines = vec![format!("displayed variant '{}' holds: {}", r.displayed_variant.name, r.displayed_variant.holds)];
            Ok(Outcome::new(lines, checks, r))
        }
        Command::Crossed { cmd: CrossedCmd::Check { params } } => {
            let r = verify_crossed_untwist(&params.params()?)?;
            let checks = r
                .checks
                .iter()
                .map(|c| CheckResult::simple(&c.name, c.holds, "crossed-product untwist", String::new()))
                .collect();
            let lines = vec![format!(
                "{} identities, {} defects; literal '{}' holds: {}",
                r.checks.len(),
                r.defects,
                r.literal_self_referential_display.name,
                r.literal_self_referential_display.holds
            )];
            Ok(Outcome::new(lines, checks, r))
        }
        Command::Structure { cmd } => structure(cmd),
        Command::Ktheory { cmd } => ktheory(cmd),
        Command::Suite { tol, inject_fault, only, seed, fuzz_trials } => {
            let cfg = SuiteConfig { tol: *tol, inject_fault: *inject_fault, seed: *seed, fuzz_trials: *fuzz_trials, ..SuiteConfig::default() };
            let checks = if only.is_empty() {
                suite_all(&cfg).checks
            } else {
                let mut out = Vec::new();
                for &id in only {
                    out.push(run_criterion(id, &cfg).ok_or_else(|| {
                        qcuntz::Error::InvalidParams(format!("no criterion {id}; ids run from 1 to 10"))
                    })?);
                }
                out
            };
            Ok(Outcome::new(vec![], checks, json!({ "config": cfg })))
        }
    }
}

fn fock(cmd: &FockCmd) -> Result<Outcome> {
    match cmd {
        FockCmd::Residual { params, depth, tol, expr } => {
            let p = params.params()?;
            let x = parse_element(expr, &p)?;
            let basis = tensor_basis(&p, *depth);
            let r = qcuntz::fock::relation_residual(&x, &basis, &p)?;
            let check = CheckResult::simple("relation residual", r <= *tol, "x vanishes on the safe subspace", String::new())
                .with_metric(r, *tol);
            Ok(Outcome::new(vec![format!("{r:.3e}")], vec![check], json!({ "expr": expr, "depth": depth, "dimension": basis.dim(), "residual": r })))
        }
        FockCmd::Norm { params, depth, expr } => {
            let p = params.params()?;
            let x = parse_element(expr, &p)?;
            let basis = tensor_basis(&p, *depth);
            let cols = safe_columns(&x, &basis)?;
            let norm = operator_norm(&rep_element_on(&x, &basis, &p, &FockOptions::default(), Some(&cols))?);
            Ok(Outcome::new(
                vec![format!("{norm:.12}")],
                vec![],
                json!({ "expr": expr, "depth": depth, "safe_columns": cols.len(), "norm": norm }),
            ))
        }
        FockCmd::Gram { params, cap, depth } => {
            let p = params.params()?;
            let r = gram_faithfulness(*cap, &tensor_basis(&p, *depth), &p)?;
            let holds = r.full_rank && r.min_singular > 1e-8;
            let detail = format!("rank {} of {}; evidence only", r.rank, r.monomials);
            let check = CheckResult::simple("gram full rank", holds, "normal monomials are linearly independent", detail)
                .with_metric(r.min_singular, 1e-8);
            let lines = vec![format!("{} monomials, rank {}, smallest singular value {:.3e}", r.monomials, r.rank, r.min_singular)];
            Ok(Outcome::new(lines, vec![check], r))
        }
    }
}

fn structure(cmd: &StructureCmd) -> Result<Outcome> {
    match cmd {
        StructureCmd::ExpectationCheck { params, k } => {
            let mut p = params.params()?;
            if p.relmode == RelMode::Braided {
                p = p.cuntz()?;
            }
            let r = verify_expectation_identity(*k, &p)?;
            let detail = format!("{} distinct monomials of {}", r.checked, r.spanning_monomials);
            let check = CheckResult::simple("averaging identity", r.pass, "w_k* x w_k = E(x)", detail)
                .with_metric(r.failures.len() as f64, 0.0);
            let mut lines = vec![format!("k = {}: {} checked, {} failures", r.k, r.checked, r.failures.len())];
            lines.extend(r.failures.iter().take(5).cloned());
            Ok(Outcome::new(lines, vec![check], r))
        }
        StructureCmd::MatrixUnits { params, max_len } => {
            let r = matrix_unit_suite(*max_len, &params.params()?)?;
            let checks = vec![
                CheckResult::simple("matrix-unit products", r.product_failures == 0, "E_ab E_cd = delta_bc E_ad", String::new())
                    .with_metric(r.product_failures as f64, 0.0),
                CheckResult::simple(
                    "twisted commutation",
                    r.commutation_failures == 0,
                    "E t_mu2 t_nu2* = q^{(|nu1|-|mu1|)(|mu2|-|nu2|)} t_mu2 t_nu2* E",
                    String::new(),
                )
                .with_metric(r.commutation_failures as f64, 0.0),
            ];
            let lines = vec![format!(
                "{} units; phase on the other side fails {} of {} times",
                r.units, r.swapped_side_failures, r.commutation_checks
            )];
            Ok(Outcome::new(lines, checks, r))
        }
        StructureCmd::Af { params, k, samples, seed } => {
            let r = af_layer(*k, &params.params()?, *samples, *seed)?;
            let check = CheckResult::simple("AF layer spot checks", r.spot_failures == 0, "blocks are full matrix algebras", String::new())
                .with_metric(r.spot_failures as f64, 0.0);
            let mut lines: Vec<String> = r.blocks.iter().map(|b| format!("({}, {}): M_{}", b.k1, b.k2, b.size)).collect();
            lines.push(format!("{} matrix units, {} spot checks", r.total_units, r.spot_checks));
            Ok(Outcome::new(lines, vec![check], r))
        }
    }
}

fn ktheory(cmd: &KtheoryCmd) -> Result<Outcome> {
    match cmd {
        KtheoryCmd::Table { n_max, m_max } => {
            let rows = k_table(*n_max, *m_max)?;
            let bad = rows.iter().filter(|r| !(r.matches_closed_form && r.consistent)).count();
            let check = CheckResult::simple("closed forms", bad == 0, "K(O_n (x)_q O_m) = (Z/d, Z/d), K(M_q) = (Z + Z/d, 0)", String::new())
                .with_metric(bad as f64, 0.0);
            let lines = rows
                .iter()
                .map(|r| format!("n={:<3} m={:<3} d={:<3} K0={:<6} K1={:<6} K0(M_q)={:<10} Ext: {}", r.n, r.m, r.d, r.k0, r.k1, r.k0_mq, r.ext_status))
                .collect();
            let mut out = Outcome::new(lines, vec![check], &rows);
            out.table = Some(rows);
            Ok(out)
        }
        KtheoryCmd::Ext { n, m } => {
            let u = uct_ext(*n, *m)?;
            let mut lines = vec![format!("{{d: {}, ext: {:?}}}", u.d, u.ext)];
            if u.ext != "0" {
                lines.push(format!("left = {}", u.left));
                lines.push(format!("right = {}", u.right));
                if let Some(o) = u.order_bound {
                    lines.push(format!("order = {o}"));
                }
                lines.push(format!("ambiguous = {}", u.ambiguous));
            }
            Ok(Outcome::new(lines, vec![], u))
        }
        KtheoryCmd::Pipeline { n, m } => {
            let p = k_pipeline(*n, *m)?;
            let checks = p
                .checks
                .iter()
                .map(|c| CheckResult::simple(&c.name, c.holds, "exactness constraint", c.detail.clone()))
                .collect();
            let lines = vec![
                format!("d = {}", p.d),
                format!("K(O_{} (x)_q O_{}) = {}", n, m, p.k_twisted.pair),
                format!("K(E) = {}", p.k_toeplitz.pair),
                format!("K(M_q) = {}", p.k_ideal),
            ];
            Ok(Outcome::new(lines, checks, p))
        }
    }
}
