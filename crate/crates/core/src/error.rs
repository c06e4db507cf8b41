use thiserror::Error;

use crate::kernel::BasisIndex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inverse of non-unit scalar {0}")]
    InverseOfNonUnit(String),
    #[error("map {map} is undefined on basis element {index}")]
    UndefinedOnBasis { map: String, index: BasisIndex },
    #[error("sampling exhausted after {attempts} attempts for space {space}")]
    SamplingExhausted { space: String, attempts: usize },
    #[error("value at {0} is not a recognized unit")]
    NotInvertibleAt(BasisIndex),
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("axiom {id} failed: {lhs} != {rhs} at {input}")]
    AxiomFailure { id: String, input: String, lhs: String, rhs: String },
    #[error("{0} does not lie in M⊗C: its P-legs are not fixed points of the coaction")]
    NotInMTensorC(String),
    #[error("coproduct depends on the representative: {0}")]
    RepresentativeDependence(String),
    #[error("coideal check failed: {0}")]
    CoidealCheckFailed(String),
    #[error("map is not well defined on the coideal: {0}")]
    WellDefinednessFailure(String),
    #[error("trivial cocycle is inadmissible: {0}")]
    TrivialCocycleInadmissible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
