//! The codifferential `δM` of a sub-Möbius structure on admissible 5-tuples.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::structure::SubMoebius;
use super::tuple::{classify_tuple, face, TupleClass};
use super::value::{ln_rational, ExtCoord, ExtendedL4Value};
use super::MoebiusError;
use crate::charfns::CharFn;
use crate::linalg::{format_rational, Rational};
use crate::rep::{SignedPerm, V5_DIM};

/// `δM(P)`: row `i` is `M(P_i)`, the value on the face without entry `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct CodifferentialValue {
    rows: [ExtendedL4Value; 5],
}

impl CodifferentialValue {
    pub fn new(rows: [ExtendedL4Value; 5]) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[ExtendedL4Value; 5] {
        &self.rows
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().all(ExtendedL4Value::is_finite)
    }

    /// The fifteen coordinates in row-major order.
    pub fn coords(&self) -> Vec<ExtCoord> {
        self.rows.iter().flat_map(|r| r.coords()).collect()
    }

    /// Multiplicative coordinates of a finite value.
    pub fn finite_coords(&self) -> Option<Vec<Rational>> {
        self.coords()
            .into_iter()
            .map(|c| match c {
                ExtCoord::Finite(x) => Some(x),
                _ => None,
            })
            .collect()
    }

    pub fn log_form(&self) -> Vec<f64> {
        self.rows.iter().flat_map(|r| r.log_form()).collect()
    }

    /// `η_5(π)` applied to the value; negation is reciprocal in
    /// multiplicative form and swaps `±∞`.
    pub fn act(&self, op: &SignedPerm) -> Result<Self, MoebiusError> {
        assert_eq!(op.dim(), V5_DIM, "codifferentials live in V^5");
        let moved = op.apply_with(&self.coords(), ExtCoord::negate);
        let mut rows = Vec::with_capacity(5);
        for chunk in moved.chunks(3) {
            rows.push(ExtendedL4Value::from_coords([
                chunk[0].clone(),
                chunk[1].clone(),
                chunk[2].clone(),
            ])?);
        }
        Ok(Self {
            rows: rows.try_into().expect("five rows"),
        })
    }
}

impl fmt::Debug for CodifferentialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

pub fn codifferential<S: SubMoebius>(s: &S, p: &[S::Point; 5]) -> Result<CodifferentialValue, MoebiusError> {
    if classify_tuple(p)? == TupleClass::Inadmissible {
        return Err(MoebiusError::Inadmissible);
    }
    let mut rows = Vec::with_capacity(5);
    for i in 0..5 {
        let q: [S::Point; 4] = face(p, i).try_into().expect("faces have four entries");
        rows.push(s.value(&q)?);
    }
    Ok(CodifferentialValue {
        rows: rows.try_into().expect("five rows"),
    })
}

/// Value of `r_λ` on an extended vector.
///
/// `Finite` holds the multiplicative value `exp(r_λ(v))`, so the root
/// condition is `Finite(1)`. A pair of opposite infinite terms is zero by
/// the agreement `(a + ∞) - (b + ∞) = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharFnValue {
    Finite(#[serde(serialize_with = "ser_rational")] Rational),
    ZeroByAgreement,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(r))
}

impl CharFnValue {
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Finite(x) => x.is_one(),
            Self::ZeroByAgreement => true,
        }
    }

    /// The additive value.
    pub fn log_value(&self) -> f64 {
        match self {
            Self::Finite(x) => ln_rational(x),
            Self::ZeroByAgreement => 0.0,
        }
    }
}

impl fmt::Display for CharFnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => f.write_str(&format_rational(x)),
            Self::ZeroByAgreement => f.write_str("0 (agreement)"),
        }
    }
}

pub fn eval_charfn_extended(r: &CharFn, v: &CodifferentialValue) -> Result<CharFnValue, MoebiusError> {
    let coords = v.coords();
    let mut product = Rational::one();
    let (mut plus, mut minus) = (0, 0);
    for (k, c) in r.terms() {
        match &coords[k] {
            ExtCoord::Finite(x) if c > 0 => product *= x,
            ExtCoord::Finite(x) => product /= x,
            ExtCoord::PosInf if c > 0 => plus += 1,
            ExtCoord::NegInf if c < 0 => plus += 1,
            _ => minus += 1,
        }
    }
    match (plus, minus) {
        (0, 0) => Ok(CharFnValue::Finite(product)),
        (1, 1) => Ok(CharFnValue::ZeroByAgreement),
        _ => Err(MoebiusError::UncancelledInfinity {
            edge: r.edge().to_string(),
            detail: format!("{plus} terms at +inf, {minus} at -inf"),
        }),
    }
}
