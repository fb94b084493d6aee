use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("permutation closure exceeds cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("generator {index} is not a permutation of the stated degree")]
    InvalidPermutation { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("product of order {order} exceeds the construction bound {cap}")]
    ProductExceedsCap { order: usize, cap: usize },
    #[error("group of order {order} exceeds the supported bound {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("more than the cap of automorphisms found ({0} so far)")]
    AutCapExceeded(usize),
    #[error("more than the cap of endomorphisms found ({0} so far)")]
    EndCapExceeded(usize),
    #[error("image of phi does not centralise the second factor")]
    NotCentral,
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("map set is not a complete automorphism group")]
    Incomplete,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("the trivial group has no minimal normal subgroups")]
    TrivialGroup,
    #[error("group is not a {p}-group")]
    NotPGroup { p: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("abelian invariants are not strictly increasing at prime {p}")]
    InvariantsNotStrict { p: usize },
    #[error("a map in the supplied set moves step {step} of the series")]
    NotInvariant { step: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}
