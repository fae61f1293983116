//! JSON input and a uniform handle over the supported structure kinds.

use serde::{Deserialize, Serialize};

use super::criterion::{extended_line_report, is_moebius, CriterionReport, SampleSpec};
use super::semimetric::{ExtendedLine, FiniteSemiMetric, LinePoint, SemiMetricFile};
use super::structure::{
    check_axioms, extended_line, moebius_from_semimetric, AxiomReport, FreeStructure, MetricStructure, SubMoebiusFile,
};
use super::MoebiusError;

/// A structure file, tagged by `"kind"`. Unknown fields are ignored so
/// that reports embedding a structure can be read back.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StructureFile {
    SemiMetric(SemiMetricFile),
    SubMoebius(SubMoebiusFile),
}

#[derive(Clone, Debug)]
pub enum Structure {
    Metric(MetricStructure<FiniteSemiMetric>),
    Free(FreeStructure),
    ExtendedLine,
}

impl Structure {
    pub fn from_file(file: &StructureFile) -> Result<Self, MoebiusError> {
        Ok(match file {
            StructureFile::SemiMetric(f) => Structure::Metric(moebius_from_semimetric(FiniteSemiMetric::from_file(f)?)),
            StructureFile::SubMoebius(f) => Structure::Free(FreeStructure::from_file(f)?),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, MoebiusError> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    /// `None` for the extended line, which has no finite description.
    pub fn to_file(&self) -> Option<StructureFile> {
        match self {
            Structure::Metric(m) => Some(StructureFile::SemiMetric(m.metric().to_file())),
            Structure::Free(f) => Some(StructureFile::SubMoebius(f.to_file())),
            Structure::ExtendedLine => None,
        }
    }

    pub fn point_count(&self) -> Option<usize> {
        match self {
            Structure::Metric(m) => Some(m.metric().len()),
            Structure::Free(f) => Some(f.len()),
            Structure::ExtendedLine => None,
        }
    }

    /// Axioms on every admissible 4-tuple of the point set; for the
    /// extended line, of a fixed six-point configuration containing `∞`.
    pub fn check_axioms(&self) -> Result<AxiomReport, MoebiusError> {
        match self {
            Structure::Metric(m) => check_axioms(m, &(0..m.metric().len()).collect::<Vec<_>>()),
            Structure::Free(f) => check_axioms(f, &(0..f.len()).collect::<Vec<_>>()),
            Structure::ExtendedLine => {
                let points = [
                    ExtendedLine::point(0, 1),
                    ExtendedLine::point(1, 1),
                    ExtendedLine::point(3, 1),
                    ExtendedLine::point(-2, 1),
                    ExtendedLine::point(1, 2),
                    LinePoint::Infinity,
                ];
                check_axioms(&extended_line(), &points)
            }
        }
    }

    /// The criterion: exhaustive on at most seven points, otherwise
    /// `samples` seeded tuples.
    pub fn verify(&self, samples: usize, seed: u64, tolerance: f64) -> Result<CriterionReport, MoebiusError> {
        match self {
            Structure::Metric(m) => {
                let n = m.metric().len();
                is_moebius(m, n, SampleSpec::for_points(n, samples, seed), tolerance)
            }
            Structure::Free(f) => is_moebius(f, f.len(), SampleSpec::for_points(f.len(), samples, seed), tolerance),
            Structure::ExtendedLine => extended_line_report(samples, seed, tolerance),
        }
    }
}
