//! Gauge expectation, averaging isometries, matrix units of the compact ideal, and AF layers.

mod averaging;
mod units;

pub use averaging::{
    conditional_expectation, fin_spanning_set, verify_expectation_identity, w_factor, w_k_isometry,
    ExpectationReport, MAX_EXHAUSTIVE_K,
};
pub use units::{
    af_layer, commutation_exponent, ideal_matrix_units, matrix_unit_normal_form, matrix_unit_suite, AfBlock,
    AfLayer, MatrixUnitReport, AF_UNIT_BUDGET,
};
