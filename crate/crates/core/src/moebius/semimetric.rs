//! Semi-metrics and the cross-differences they induce.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::tuple::{classify_tuple, TupleClass};
use super::value::{ExtCoord, ExtendedL4Value};
use super::MoebiusError;
use crate::linalg::{format_rational, parse_rational, rat_frac, Rational};

/// A value of a semi-metric: zero on the diagonal, positive elsewhere, or
/// infinite towards the remote point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Distance {
    Zero,
    Finite(Rational),
    Infinite,
}

impl Distance {
    fn to_text(&self) -> String {
        match self {
            Distance::Zero => "0".into(),
            Distance::Finite(r) => format_rational(r),
            Distance::Infinite => "inf".into(),
        }
    }

    fn parse(s: &str) -> Result<Self, MoebiusError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Distance::Infinite);
        }
        let r = parse_rational(s).ok_or_else(|| MoebiusError::InvalidSemiMetric(format!("bad distance {s:?}")))?;
        if r.is_zero() {
            Ok(Distance::Zero)
        } else {
            Ok(Distance::Finite(r))
        }
    }
}

/// A distance function on some point set.
pub trait SemiMetricSpace {
    type Point: Clone + PartialEq;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Distance;
}

/// A semi-metric on finitely many named points, indexed `0..n`.
#[derive(Clone, Debug)]
pub struct FiniteSemiMetric {
    names: Vec<String>,
    omega: Option<usize>,
    table: Vec<Distance>,
}

impl FiniteSemiMetric {
    /// `upper` lists `d(i, j)` for `i < j` in row-major order.
    pub fn new(names: Vec<String>, omega: Option<usize>, upper: Vec<Distance>) -> Result<Self, MoebiusError> {
        let n = names.len();
        let invalid = |msg: String| Err(MoebiusError::InvalidSemiMetric(msg));
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return invalid(format!(
                "expected {} upper-triangular distances for {n} points, got {}",
                n * n.saturating_sub(1) / 2,
                upper.len()
            ));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return invalid(format!("duplicate point id {a:?}"));
            }
        }
        if let Some(w) = omega {
            if w >= n {
                return invalid(format!("remote point index {w} out of range"));
            }
        }
        let mut table = vec![Distance::Zero; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let d = &upper[k];
                k += 1;
                let remote = omega == Some(i) || omega == Some(j);
                match d {
                    Distance::Zero => {
                        return invalid(format!("d({}, {}) vanishes off the diagonal", names[i], names[j]))
                    }
                    Distance::Finite(r) if !r.is_positive() => {
                        return invalid(format!("d({}, {}) is negative", names[i], names[j]))
                    }
                    Distance::Finite(_) if remote => {
                        return invalid(format!("d({}, {}) must be infinite", names[i], names[j]))
                    }
                    Distance::Infinite if !remote => {
                        return invalid(format!(
                            "d({}, {}) is infinite but neither point is the remote point",
                            names[i], names[j]
                        ))
                    }
                    _ => {}
                }
                table[i * n + j] = d.clone();
                table[j * n + i] = d.clone();
            }
        }
        Ok(Self { names, omega, table })
    }

    /// Every off-diagonal distance equal to 1.
    pub fn discrete(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("p{i}")).collect();
        let upper = vec![Distance::Finite(Rational::one()); n * n.saturating_sub(1) / 2];
        Self::new(names, None, upper).expect("the discrete metric is a semi-metric")
    }

    /// Distances drawn from `{1 + k/12 : k = 0..=12}`; any such table also
    /// satisfies the triangle inequality.
    pub fn random_metric(n: usize, rng: &mut impl Rng) -> Self {
        let names = (1..=n).map(|i| format!("p{i}")).collect();
        let upper = (0..n * n.saturating_sub(1) / 2)
            .map(|_| Distance::Finite(rat_frac(12 + rng.random_range(0..=12), 12)))
            .collect();
        Self::new(names, None, upper).expect("positive distances form a semi-metric")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn omega(&self) -> Option<usize> {
        self.omega
    }

    pub fn from_file(file: &SemiMetricFile) -> Result<Self, MoebiusError> {
        let omega = match &file.omega {
            Some(w) => Some(
                file.points
                    .iter()
                    .position(|p| p == w)
                    .ok_or_else(|| MoebiusError::InvalidSemiMetric(format!("remote point {w:?} is not listed")))?,
            ),
            None => None,
        };
        let upper = file
            .distances
            .iter()
            .map(|s| Distance::parse(s))
            .collect::<Result<_, _>>()?;
        Self::new(file.points.clone(), omega, upper)
    }

    pub fn to_file(&self) -> SemiMetricFile {
        let n = self.len();
        let distances = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.table[i * n + j].to_text())
            .collect();
        SemiMetricFile {
            points: self.names.clone(),
            omega: self.omega.map(|w| self.names[w].clone()),
            distances,
        }
    }
}

impl SemiMetricSpace for FiniteSemiMetric {
    type Point = usize;

    fn distance(&self, x: &usize, y: &usize) -> Distance {
        self.table[x * self.len() + y].clone()
    }
}

/// JSON form of a finite semi-metric.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SemiMetricFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    /// Upper triangle, row-major, as `"p/q"` or `"inf"`.
    pub distances: Vec<String>,
}

/// A point of `R ∪ {∞}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LinePoint {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinePoint::Finite(r) => f.write_str(&format_rational(r)),
            LinePoint::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The extended real line with `d(x, y) = |x - y|` and `d(x, ∞) = ∞`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtendedLine;

impl ExtendedLine {
    pub fn point(n: i64, d: i64) -> LinePoint {
        LinePoint::Finite(rat_frac(n, d))
    }

    /// `k` distinct points: rationals with numerator in `-30..=30` and
    /// denominator in `1..=12`, plus `∞` in a random slot with probability
    /// `1/4`.
    pub fn sample_points(k: usize, rng: &mut impl Rng) -> Vec<LinePoint> {
        let mut points: Vec<LinePoint> = Vec::with_capacity(k);
        let infinite_slot = (rng.random_range(0..4) == 0).then(|| rng.random_range(0..k));
        while points.len() < k {
            if infinite_slot == Some(points.len()) {
                points.push(LinePoint::Infinity);
                continue;
            }
            let candidate = LinePoint::Finite(rat_frac(rng.random_range(-30..=30), rng.random_range(1..=12)));
            if !points.contains(&candidate) {
                points.push(candidate);
            }
        }
        points
    }
}

impl SemiMetricSpace for ExtendedLine {
    type Point = LinePoint;

    fn distance(&self, x: &LinePoint, y: &LinePoint) -> Distance {
        match (x, y) {
            (LinePoint::Infinity, LinePoint::Infinity) => Distance::Zero,
            (LinePoint::Infinity, _) | (_, LinePoint::Infinity) => Distance::Infinite,
            (LinePoint::Finite(a), LinePoint::Finite(b)) => {
                let d = (a - b).abs();
                if d.is_zero() {
                    Distance::Zero
                } else {
                    Distance::Finite(d)
                }
            }
        }
    }
}

/// A product of distances up to a power of the formal symbol `∞`
/// (a zero distance counts as `∞^{-1}`).
#[derive(Clone)]
struct Valued {
    value: Rational,
    order: i32,
}

impl Valued {
    fn of(d: Distance) -> Self {
        match d {
            Distance::Zero => Self {
                value: Rational::one(),
                order: -1,
            },
            Distance::Infinite => Self {
                value: Rational::one(),
                order: 1,
            },
            Distance::Finite(r) => Self { value: r, order: 0 },
        }
    }

    fn mul(self, other: Self) -> Self {
        Self {
            value: self.value * other.value,
            order: self.order + other.order,
        }
    }

    fn div(self, other: Self) -> Self {
        Self {
            value: self.value / other.value,
            order: self.order - other.order,
        }
    }

    fn into_coord(self) -> ExtCoord {
        match self.order {
            0 => ExtCoord::Finite(self.value),
            o if o > 0 => ExtCoord::PosInf,
            _ => ExtCoord::NegInf,
        }
    }
}

/// `M_d(x1, x2, x3, x4)` in multiplicative form:
///
/// * `cr1 = |x1x3||x2x4| / (|x1x4||x2x3|)`
/// * `cr2 = |x1x4||x2x3| / (|x1x2||x3x4|)`
/// * `cr3 = |x1x2||x3x4| / (|x2x4||x1x3|)`
///
/// Infinite distances cancel symbolically.
pub fn cross_difference<S: SemiMetricSpace>(d: &S, q: &[S::Point; 4]) -> Result<ExtendedL4Value, MoebiusError> {
    if classify_tuple(q)? == TupleClass::Inadmissible {
        return Err(MoebiusError::Inadmissible);
    }
    let dist = |i: usize, j: usize| Valued::of(d.distance(&q[i], &q[j]));
    let ratio = |n1: (usize, usize), n2: (usize, usize), d1: (usize, usize), d2: (usize, usize)| {
        dist(n1.0, n1.1)
            .mul(dist(n2.0, n2.1))
            .div(dist(d1.0, d1.1).mul(dist(d2.0, d2.1)))
            .into_coord()
    };
    let coords = [
        ratio((0, 2), (1, 3), (0, 3), (1, 2)),
        ratio((0, 3), (1, 2), (0, 1), (2, 3)),
        ratio((0, 1), (2, 3), (1, 3), (0, 2)),
    ];
    ExtendedL4Value::from_coords(coords)
}
