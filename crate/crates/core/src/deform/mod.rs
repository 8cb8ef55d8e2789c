//! Deformation maps: the untwisting isomorphism for `|q| < 1` and the Rieffel product for `|q| = 1`.

mod rieffel;
mod untwist;

pub use rieffel::{phi_theta_check, rieffel_product, Bidegree, GradedElement, RieffelMap, RieffelReport, ThetaMatrix};
pub use untwist::{
    hat_t, inverse_root_coeff, k_for_epsilon, psi_generators, range_projection, root_coeff, roundtrip_check,
    w_operator, w_series, RoundtripReport, SERIES_TERM_CAP,
};
