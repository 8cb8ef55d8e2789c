//! Normal ordering by oriented defining relations.

mod crossed;
mod fuzz;
mod normalize;
mod relations;
mod rules;

pub use crossed::{verify_crossed_untwist, CrossedReport, IdentityCheck};
pub use fuzz::{family_pattern, fuzz_confluence, random_word, Disagreement, FuzzReport};
pub use normalize::{check_identity, is_normal, normalize, normalize_with, normalize_with_stats, NormalizeStats, Strategy};
pub use relations::{defining_relations, Relation};
pub use rules::{Action, Factor, RuleMode, RuleSet, DEFAULT_TERM_CAP, DEFAULT_TOL};
