//! Finitely generated abelian groups, the Kunneth formula, and the K-theory and UCT
//! computations for `O_n (x)_q O_m`, `E_{n,m}^q` and the ideal `M_q`.

mod group;
mod pipeline;
mod snf;

pub use group::{kunneth_tensor, FgAbelianGroup, KPair, KunnethResult};
pub use pipeline::{
    k_cuntz, k_pipeline, k_table, k_table_row, k_toeplitz, uct_ext, ConstraintCheck, PipelineReport, TableRow,
    UctReport,
};
pub use snf::{determinant, identity, mat_mul, smith_normal_form, IntMatrix, Snf};
