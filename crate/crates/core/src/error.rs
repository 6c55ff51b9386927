use thiserror::Error;

use crate::updates::SemanticsId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{}line {line}, column {column}: {message}", component.map(|c| format!("component {c}, ")).unwrap_or_default())]
    Parse {
        line: usize,
        column: usize,
        component: Option<usize>,
        message: String,
    },

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("inconsistent interpretation: contains both `{0}` and `-{0}`")]
    InconsistentInterpretation(String),

    #[error("a dynamic logic program needs at least one component")]
    EmptyDlp,

    #[error("alphabet has {atoms} atoms, more than the enumeration limit of {limit}")]
    EnumerationLimit { atoms: usize, limit: usize },

    #[error("{semantics} requires a program without strong negation")]
    StrongNegation { semantics: SemanticsId },

    #[error("{semantics} applies to a single program, got {components} components")]
    NotSingleProgram { semantics: SemanticsId, components: usize },

    #[error("expected a set of facts, found rule `{0}`")]
    NotAFact(String),

    #[error("oracle handles at most {limit} rules, got {rules}")]
    OracleLimit { rules: usize, limit: usize },

    #[error("input does not fit the property: {0}")]
    Shape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
