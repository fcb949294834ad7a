use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation is not a bijection of 1..={degree}: {detail}")]
    NotBijective { degree: u32, detail: String },

    #[error("group closure exceeded the size bound of {bound} elements")]
    SizeBound { bound: usize },

    #[error("multiplication table is not a group: {0}")]
    BadTable(String),

    #[error("subgroup precondition violated: {0}")]
    BadSubgroup(String),

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("characters live over different subgroups")]
    StructureMismatch,

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid indexed symbol: {0}")]
    InvalidIndexedSymbol(String),

    #[error("index set error: {0}")]
    IndexSet(String),

    #[error("class mentions a symbol outside the presentation generators: {0}")]
    UnknownSymbol(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("groups differ between operands")]
    GroupMismatch,

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
