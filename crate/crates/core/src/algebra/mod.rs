//! Exact scalars, words in the generators, and linear combinations with involution.

mod cyclotomic;
mod element;
mod params;
mod parse;
mod scalar;
mod word;

pub use cyclotomic::cyclotomic;
pub use element::AlgebraElement;
pub use params::{Params, QMode, RelMode};
pub use parse::parse_element;
pub use scalar::{Phase, Scalar};
pub use word::{words, words_up_to, Family, Letter, Monomial};
