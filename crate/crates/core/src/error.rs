use thiserror::Error;

use crate::reductions::Hypothesis;
use crate::transformation::EndoClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the number of vertices must be at least {min}, got {n}")]
    VertexCount { n: usize, min: usize },

    #[error("vertex {value} is outside 1..={n}")]
    VertexOutOfRange { value: usize, n: usize },

    #[error("parameter {name}={value} is outside {lo}..={hi} for n={n}")]
    ParameterOutOfRange {
        name: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
        n: usize,
    },

    #[error("transformations act on different vertex sets ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("cannot parse transformation: {0}")]
    Parse(String),

    #[error("materializing {class} for n={n} exceeds the cap n <= {cap}")]
    CapExceeded { class: EndoClass, n: usize, cap: usize },

    #[error("closure exceeded the size guard of {limit} elements")]
    ClosureTooLarge { limit: usize },

    #[error("transformation {element} is not in {class}")]
    NotInClass { element: String, class: EndoClass },

    #[error("transformation {0} is not an element of the monoid")]
    NotAMember(String),

    #[error("{0} is not regular")]
    NotRegular(String),

    #[error("no rank formula is available for {0}")]
    NoRankFormula(EndoClass),

    #[error("{family} is undefined for n={n}")]
    UndefinedFamily { family: &'static str, n: usize },

    #[error("empty generating list")]
    EmptyGenerators,

    #[error("reduction hypothesis failed: {0}")]
    Hypothesis(Hypothesis),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
