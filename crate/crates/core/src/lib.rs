//! Computational tools for q-twisted tensor products of Cuntz-Toeplitz algebras.
//!
//! The algebra `E_{n,m}^q` is generated by isometries `s_1..s_n`, `t_1..t_m` with
//! `s_i* s_j = delta_ij`, `t_r* t_l = delta_rl`, `s_j* t_r = q t_r s_j*`, and for
//! `|q| = 1` additionally `t_r s_j = q s_j t_r`.
//!
//! * [`algebra`]: exact scalars, words, elements, text syntax.
//! * [`rewrite`]: normal ordering, identity checks, confluence fuzzing.
//! * [`fock`]: truncated Fock representations as sparse operators.
//! * [`deform`]: the `|q| < 1` untwisting maps and the Rieffel-deformed product.
//! * [`structure`]: conditional expectation, averaging isometries, matrix units, AF layers.
//! * [`kth`]: finitely generated abelian groups and the K-theory computations.
//! * [`suite`]: the acceptance battery shared by the CLI and the tests.

pub mod algebra;
pub mod deform;
pub mod error;
pub mod fock;
pub mod kth;
pub mod report;
pub mod rewrite;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};
