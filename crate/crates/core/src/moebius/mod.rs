//! Semi-metrics, sub-Möbius structures, codifferentials and the Möbius
//! criterion.

use thiserror::Error;

use crate::charfns::CharFnError;
use crate::rep::RepError;

pub mod codiff;
pub mod criterion;
pub mod io;
pub mod semimetric;
pub mod structure;
pub mod tuple;
pub mod value;

pub use codiff::{codifferential, eval_charfn_extended, CharFnValue, CodifferentialValue};
pub use criterion::{is_moebius, CriterionReport, SampleSpec, Witness};
pub use io::{Structure, StructureFile};
pub use semimetric::{
    cross_difference, Distance, ExtendedLine, FiniteSemiMetric, LinePoint, SemiMetricFile, SemiMetricSpace,
};
pub use structure::{
    check_axioms, moebius_from_semimetric, random_submoebius, AxiomReport, FreeStructure, MetricStructure,
    ScaledStructure, SubMoebius, SubMoebiusFile, SumStructure,
};
pub use tuple::{classify_tuple, TupleClass};
pub use value::{ExtCoord, ExtendedL4Value, Marker, MultiplicativeL4Value};

#[derive(Debug, Error)]
pub enum MoebiusError {
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("sum of a finite and an infinite value, or of two different markers")]
    IncompatibleSum,
    #[error("invalid semi-metric: {0}")]
    InvalidSemiMetric(String),
    #[error("invalid sub-Möbius structure: {0}")]
    InvalidStructure(String),
    #[error("tuple is not admissible")]
    Inadmissible,
    #[error("tuples of length {0} are not supported")]
    UnsupportedTupleLength(usize),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("expected {expected} points, found {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("infinite terms do not cancel in r_{edge}: {detail}")]
    UncancelledInfinity { edge: String, detail: String },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    CharFn(#[from] CharFnError),
    #[error(transparent)]
    Rep(#[from] RepError),
}
