//! Fock representations on truncated spaces.
//!
//! The braided Toeplitz algebra acts on `F_n (x) F_m` with `s_j = S_j (x) 1` and
//! `t_r = d(q) (x) T_r`; the full model `F_{n+m}` carries the creation operators
//! used for the untwisting maps. Words are cut at a fixed length and vectors
//! pushed past the cut are dropped, so relations are compared only on the safe
//! subspace where no intermediate vector reaches the cut.

mod basis;
mod norm;
mod operator;
mod rep;

pub use basis::{word_count, FockBasis, Indexer, Move, TensorVariant};
pub use norm::{
    gram_faithfulness, gram_from_operators, gram_of_monomials, norm_inequality_trial, normal_monomials,
    operator_norm, random_normal_monomial, s_average, GramReport, NormTrial,
};
pub use operator::{merge_sparse, FockOperator, OperatorSummary, ShiftRange};
pub use rep::{
    columns_up_to, diagonal_unitary, peak, relation_residual, relation_residual_with, rep_element,
    rep_element_on, rep_element_with, rep_generator, safe_columns, vacuum_expectation, FockOptions,
    GeneratorMap, DEFAULT_DIM_CAP,
};
