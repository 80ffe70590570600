//! Endomorphism monoids of the path `P_n`.
//!
//! Transformations of `{1,…,n}` act on the right and compose left to right:
//! `a.compose(&b)` sends `x` to `(x a) b`. The five classes `End`, `wEnd`,
//! `sEnd`, `swEnd` and `Aut` can be enumerated, counted, generated from the
//! standard families and tested for regularity.

pub mod cli;
pub mod closure;
pub mod enumeration;
pub mod error;
pub mod formulas;
pub mod generators;
pub mod reductions;
pub mod regularity;
pub mod transformation;

pub use closure::{
    brute_force_rank, evaluate_word, generate, generate_with_limit, generates_class, irredundant, rank_certificate,
    rank_formula, relative_rank_check, word_for, Census, RankCertificate, RelativeRankCheck,
};
pub use enumeration::{count_class_dp, enumerate_class, enumerate_class_capped, MonoidSet};
pub use error::{Error, Result};
pub use formulas::{a_table, b_values, wend_count, wend_count_closed, wend_count_recursive, ATable};
pub use generators::{alpha, beta, family, gamma, tau, FamilyName, GeneratorFamily};
pub use reductions::{case1_reduce, case3_reduce, factor_repetition, verify_structure, Hypothesis, ReductionStep};
pub use regularity::{class_regular, pseudo_inverse, regular_by_criterion, regular_by_oracle, RegularityReport};
pub use transformation::{EndoClass, InversionProfile, KernelPartition, Transformation};
