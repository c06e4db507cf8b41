//! Exact scalars, sparse vectors, linear maps, tensor legs, sampling and
//! check reports.

mod basis;
mod linmap;
mod report;
mod sample;
mod scalar;
pub mod tensor;
mod vect;

pub use basis::BasisIndex;
pub use linmap::LinMap;
pub use report::{all_pass, find, merge, Check, CheckReport, Status, Witness};
pub use sample::{SampleSpec, Sampler};
pub use scalar::Scalar;
pub use vect::Vect;
