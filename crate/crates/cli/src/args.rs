use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qcuntz::algebra::Params;
use qcuntz::suite::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "qcuntz", version, about = "Rewriting, Fock-space and K-theory checks for q-twisted Cuntz-Toeplitz algebras")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Report file. Defaults to <report-dir>/<command>.<format>.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for reports when --out is not given.
    #[arg(long, global = true, env = "QCUNTZ_REPORT_DIR", default_value = ".")]
    pub report_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// `a/b` for `q = exp(2 pi i a / b)`.
#[derive(Clone, Copy, Debug)]
pub struct Fraction {
    pub a: i64,
    pub b: i64,
}

fn parse_fraction(s: &str) -> Result<Fraction, String> {
    let (a, b) = s.split_once('/').ok_or_else(|| format!("expected a/b, got '{s}'"))?;
    let a = a.trim().parse().map_err(|e| format!("bad numerator '{a}': {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("bad denominator '{b}': {e}"))?;
    if b < 1 {
        return Err(format!("denominator must be positive, got {b}"));
    }
    Ok(Fraction { a, b })
}

#[derive(Args, Clone, Debug)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Exact q = exp(2 pi i a/b), given as a/b [default: 1/4]
    #[arg(long, value_parser = parse_fraction, conflicts_with = "q_real")]
    pub q: Option<Fraction>,
    /// Real q with |q| < 1 (Wick relations only, floating point)
    #[arg(long = "q-real")]
    pub q_real: Option<f64>,
    /// Work in the Cuntz quotient, where sum s_i s_i* = sum t_r t_r* = 1
    #[arg(long)]
    pub cuntz: bool,
}

impl ParamArgs {
    pub fn params(&self) -> qcuntz::Result<Params> {
        let p = match (self.q, self.q_real) {
            (_, Some(x)) => Params::numeric(self.n, self.m, Complex64::new(x, 0.0))?,
            (Some(f), None) => Params::rational(self.n, self.m, f.a, f.b)?,
            (None, None) => Params::rational(self.n, self.m, 1, 4)?,
        };
        if self.cuntz {
            p.cuntz()
        } else {
            Ok(p)
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of an expression
    Normalize {
        #[command(flatten)]
        params: ParamArgs,
        /// Use the untwisted rules with the unitary u
        #[arg(long)]
        crossed: bool,
        expr: String,
    },
    /// Decide whether LHS = RHS holds
    Check {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        crossed: bool,
        /// Coefficient tolerance for floating-point q
        #[arg(long, default_value_t = qcuntz::rewrite::DEFAULT_TOL)]
        tol: f64,
        lhs: String,
        rhs: String,
    },
    /// Compare two random rewriting strategies on random words
    FuzzConfluence {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        crossed: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long = "max-len", default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Truncated Fock representation
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// Untwisting maps for |q| < 1
    Untwist {
        #[command(subcommand)]
        cmd: UntwistCmd,
    },
    /// Rieffel-deformed product for |q| = 1
    Rieffel {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Crossed-product picture of the twist
    Crossed {
        #[command(subcommand)]
        cmd: CrossedCmd,
    },
    /// Gauge expectation, matrix units and AF layers
    Structure {
        #[command(subcommand)]
        cmd: StructureCmd,
    },
    /// K-theory and UCT computations
    Ktheory {
        #[command(subcommand)]
        cmd: KtheoryCmd,
    },
    /// Run the acceptance battery
    Suite {
        /// Override the numeric tolerance of the floating-point checks
        #[arg(long)]
        tol: Option<f64>,
        /// Flip the braid phase in the rewriting rules
        #[arg(long, hide = true)]
        inject_fault: bool,
        /// Only these criteria (comma separated ids)
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "fuzz-trials", default_value_t = 10_000)]
        fuzz_trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FockCmd {
    /// Largest column norm of an element on the safe subspace
    Residual {
        #[command(flatten)]
        params: ParamArgs,
        /// Truncation depth of both tensor factors
        #[arg(long = "D", default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        expr: String,
    },
    /// Operator norm of an element on the safe subspace
    Norm {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "D", default_value_t = 5)]
        depth: usize,
        expr: String,
    },
    /// Rank of the Gram matrix of normal monomials
    Gram {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        cap: usize,
        #[arg(long = "D", default_value_t = 4)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum UntwistCmd {
    /// psi(phi(x)) and phi(psi(x)) against the identity
    Roundtrip {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long = "q-real", default_value_t = 0.5)]
        q_real: f64,
        /// Series truncation
        #[arg(long = "K", default_value_t = 12)]
        k: usize,
        /// Fock truncation depth
        #[arg(long = "D", default_value_t = 14)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Relations, homomorphism property and commutation factors
    Check {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CrossedCmd {
    /// Relations of the hatted generators
    Check {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum StructureCmd {
    /// w_k* x w_k = E(x) on the spanning set of Fin_q^k (Cuntz quotient)
    ExpectationCheck {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Matrix units of the compact ideal
    MatrixUnits {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "max-len", default_value_t = 2)]
        max_len: usize,
    },
    /// Blocks of an AF layer with spot checks
    Af {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum KtheoryCmd {
    /// K-groups for a grid of (n, m)
    Table {
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: usize,
        #[arg(long = "m-max", default_value_t = 12)]
        m_max: usize,
    },
    /// UCT ends for Ext(O_n (x)_q O_m, M_q)
    Ext {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// K-theory of O_n (x)_q O_m, E_{n,m}^q and M_q with constraint checks
    Pipeline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

impl Command {
    /// File stem of the default report.
    pub fn report_name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Check { .. } => "check",
            Command::FuzzConfluence { .. } => "fuzz-confluence",
            Command::Fock { cmd } => match cmd {
                FockCmd::Residual { .. } => "fock-residual",
                FockCmd::Norm { .. } => "fock-norm",
                FockCmd::Gram { .. } => "fock-gram",
            },
            Command::Untwist { .. } => "untwist-roundtrip",
            Command::Rieffel { .. } => "rieffel-check",
            Command::Crossed { .. } => "crossed-check",
            Command::Structure { cmd } => match cmd {
                StructureCmd::ExpectationCheck { .. } => "structure-expectation-check",
                StructureCmd::MatrixUnits { .. } => "structure-matrix-units",
                StructureCmd::Af { .. } => "structure-af",
            },
            Command::Ktheory { cmd } => match cmd {
                KtheoryCmd::Table { .. } => "ktheory-table",
                KtheoryCmd::Ext { .. } => "ktheory-ext",
                KtheoryCmd::Pipeline { .. } => "ktheory-pipeline",
            },
            Command::Suite { .. } => "suite",
        }
    }
}
