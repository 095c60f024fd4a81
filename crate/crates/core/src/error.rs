use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group table: {0}")]
    GroupAxiom(String),

    #[error("unknown built-in group `{0}`")]
    UnknownGroup(String),

    #[error("group file: {0}")]
    GroupFile(String),

    #[error("unknown subgroup `{0}`")]
    UnknownSubgroup(String),

    #[error("{sub} is not contained in {sup}")]
    NotContained { sub: String, sup: String },

    #[error("elements live at different levels ({0} vs {1})")]
    LevelMismatch(String, String),

    #[error("not a virtual G-set: mark vector is not integral (residue {residue} at {class})")]
    NotVirtualSet { class: String, residue: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not a normal subgroup")]
    NotNormal(String),

    #[error("induced map not well defined: {0}")]
    NotWellDefined(String),

    #[error("invalid Mackey functor: {0}")]
    InvalidMackey(String),

    #[error("maps are not compatible: {0}")]
    Incompatible(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("basis choice rejected at level {0}")]
    BadBasis(String),

    #[error("json: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
