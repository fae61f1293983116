//! Sub-Möbius structures: maps from admissible 4-tuples to `L̄_4` that are
//! equivariant under the signed cross-ratio homomorphism (axiom a), finite
//! exactly on regular tuples (axiom b), and equal to `A` on tuples of the
//! shape `(x, x, y, z)` (axiom c).

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::semimetric::{cross_difference, ExtendedLine, FiniteSemiMetric, LinePoint, SemiMetricSpace};
use super::tuple::{act_on_tuple, classify_tuple, permutation_between, TupleClass};
use super::value::{ExtendedL4Value, Marker, MultiplicativeL4Value};
use super::MoebiusError;
use crate::linalg::rat_frac;
use crate::perm::{enumerate_group, Permutation};

pub trait SubMoebius {
    type Point: Clone + Eq + Hash + Debug;

    fn value(&self, q: &[Self::Point; 4]) -> Result<ExtendedL4Value, MoebiusError>;

    fn label(&self, p: &Self::Point) -> String;
}

impl<S: SubMoebius + ?Sized> SubMoebius for &S {
    type Point = S::Point;

    fn value(&self, q: &[Self::Point; 4]) -> Result<ExtendedL4Value, MoebiusError> {
        (**self).value(q)
    }

    fn label(&self, p: &Self::Point) -> String {
        (**self).label(p)
    }
}

/// The Möbius structure `M_d` of a semi-metric.
#[derive(Clone, Debug)]
pub struct MetricStructure<D> {
    metric: D,
}

impl<D> MetricStructure<D> {
    pub fn metric(&self) -> &D {
        &self.metric
    }
}

pub fn moebius_from_semimetric(d: FiniteSemiMetric) -> MetricStructure<FiniteSemiMetric> {
    MetricStructure { metric: d }
}

pub fn extended_line() -> MetricStructure<ExtendedLine> {
    MetricStructure { metric: ExtendedLine }
}

impl SubMoebius for MetricStructure<FiniteSemiMetric> {
    type Point = usize;

    fn value(&self, q: &[usize; 4]) -> Result<ExtendedL4Value, MoebiusError> {
        if let Some(&bad) = q.iter().find(|&&i| i >= self.metric.len()) {
            return Err(MoebiusError::UnknownPoint(bad.to_string()));
        }
        cross_difference(&self.metric, q)
    }

    fn label(&self, p: &usize) -> String {
        self.metric.names()[*p].clone()
    }
}

impl SubMoebius for MetricStructure<ExtendedLine> {
    type Point = LinePoint;

    fn value(&self, q: &[LinePoint; 4]) -> Result<ExtendedL4Value, MoebiusError> {
        cross_difference(&self.metric, q)
    }

    fn label(&self, p: &LinePoint) -> String {
        p.to_string()
    }
}

impl<D: SemiMetricSpace> MetricStructure<D> {
    pub fn new(metric: D) -> Self {
        Self { metric }
    }
}

/// Value forced on a singular admissible 4-tuple by axioms (a) and (c):
/// `q = p · (x, x, y, z)` gets `sign(p) φ(p) A`.
pub fn degenerate_value<P: PartialEq + Clone>(q: &[P; 4]) -> Result<ExtendedL4Value, MoebiusError> {
    if classify_tuple(q)? != TupleClass::SingularAdmissible {
        return Err(MoebiusError::Inadmissible);
    }
    let (i, j) = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .find(|&(i, j)| q[i] == q[j])
        .expect("singular tuples have a coincident pair");
    let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    // p sends the canonical slots (0, 1, 2, 3) to (i, j, rest0, rest1).
    let p = Permutation::from_images(&[i, j, rest[0], rest[1]]).expect("distinct slots");
    Ok(ExtendedL4Value::Infinite(Marker::A).act(&p))
}

/// A sub-Möbius structure on finitely many points given by free values on
/// the increasing representative of every 4-subset, extended to all
/// orderings by axiom (a) and to singular tuples by axiom (c).
#[derive(Clone, Debug, PartialEq)]
pub struct FreeStructure {
    names: Vec<String>,
    values: BTreeMap<[usize; 4], MultiplicativeL4Value>,
}

impl FreeStructure {
    pub fn new(names: Vec<String>, values: BTreeMap<[usize; 4], MultiplicativeL4Value>) -> Result<Self, MoebiusError> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(MoebiusError::InvalidStructure(format!("duplicate point id {a:?}")));
            }
        }
        for key in values.keys() {
            if !key.windows(2).all(|w| w[0] < w[1]) || key[3] >= n {
                return Err(MoebiusError::InvalidStructure(format!("bad representative {key:?}")));
            }
        }
        let expected = four_subsets(n).count();
        if values.len() != expected {
            return Err(MoebiusError::InvalidStructure(format!(
                "expected values on all {expected} 4-subsets, got {}",
                values.len()
            )));
        }
        Ok(Self { names, values })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn representative_values(&self) -> &BTreeMap<[usize; 4], MultiplicativeL4Value> {
        &self.values
    }

    pub fn from_file(file: &SubMoebiusFile) -> Result<Self, MoebiusError> {
        let index = |id: &str| {
            file.points
                .iter()
                .position(|p| p == id)
                .ok_or_else(|| MoebiusError::UnknownPoint(id.to_owned()))
        };
        let mut values = BTreeMap::new();
        for (key, triple) in &file.values {
            let ids: Vec<usize> = key.split(',').map(|s| index(s.trim())).collect::<Result<_, _>>()?;
            let rep: [usize; 4] = ids
                .try_into()
                .map_err(|_| MoebiusError::InvalidStructure(format!("key {key:?} does not name four points")))?;
            if values.insert(rep, MultiplicativeL4Value::parse(triple)?).is_some() {
                return Err(MoebiusError::InvalidStructure(format!("duplicate key {key:?}")));
            }
        }
        Self::new(file.points.clone(), values)
    }

    pub fn to_file(&self) -> SubMoebiusFile {
        SubMoebiusFile {
            points: self.names.clone(),
            values: self
                .values
                .iter()
                .map(|(rep, v)| (rep.map(|i| self.names[i].as_str()).join(","), v.to_strings()))
                .collect(),
        }
    }
}

impl SubMoebius for FreeStructure {
    type Point = usize;

    fn value(&self, q: &[usize; 4]) -> Result<ExtendedL4Value, MoebiusError> {
        if let Some(&bad) = q.iter().find(|&&i| i >= self.len()) {
            return Err(MoebiusError::UnknownPoint(bad.to_string()));
        }
        match classify_tuple(q)? {
            TupleClass::Inadmissible => Err(MoebiusError::Inadmissible),
            TupleClass::SingularAdmissible => degenerate_value(q),
            TupleClass::Regular => {
                let mut rep = *q;
                rep.sort_unstable();
                let p = permutation_between(&rep, q).expect("q is a reordering of rep");
                Ok(ExtendedL4Value::Finite(self.values[&rep].clone()).act(&p))
            }
        }
    }

    fn label(&self, p: &usize) -> String {
        self.names[*p].clone()
    }
}

/// JSON form of a [`FreeStructure`]: keys are comma-joined increasing
/// representatives, values multiplicative triples.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SubMoebiusFile {
    pub points: Vec<String>,
    pub values: BTreeMap<String, [String; 3]>,
}

fn four_subsets(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| (b + 1..n).flat_map(move |c| (c + 1..n).map(move |d| [a, b, c, d])))
    })
}

/// Free values drawn on the five 4-subsets of a 5-point set. Each value is
/// `(α, β, 1/(αβ))` with `α, β` ratios of integers in `1..=10`.
pub fn random_submoebius(names: Vec<String>, seed: u64) -> Result<FreeStructure, MoebiusError> {
    if names.len() != 5 {
        return Err(MoebiusError::WrongPointCount {
            expected: 5,
            found: names.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || rat_frac(rng.random_range(1..=10), rng.random_range(1..=10));
    let values = four_subsets(5)
        .map(|rep| {
            let v = MultiplicativeL4Value::from_two(draw(), draw()).expect("positive draws");
            (rep, v)
        })
        .collect();
    FreeStructure::new(names, values)
}

pub fn default_point_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("p{i}")).collect()
}

/// Pointwise sum of two structures on the same set.
#[derive(Clone, Debug)]
pub struct SumStructure<A, B>(pub A, pub B);

impl<A, B> SubMoebius for SumStructure<A, B>
where
    A: SubMoebius,
    B: SubMoebius<Point = A::Point>,
{
    type Point = A::Point;

    fn value(&self, q: &[Self::Point; 4]) -> Result<ExtendedL4Value, MoebiusError> {
        self.0.value(q)?.combine(&self.1.value(q)?)
    }

    fn label(&self, p: &Self::Point) -> String {
        self.0.label(p)
    }
}

/// `k · M` for a positive integer `k`.
#[derive(Clone, Debug)]
pub struct ScaledStructure<A> {
    pub inner: A,
    pub factor: u32,
}

impl<A: SubMoebius> SubMoebius for ScaledStructure<A> {
    type Point = A::Point;

    fn value(&self, q: &[Self::Point; 4]) -> Result<ExtendedL4Value, MoebiusError> {
        Ok(self.inner.value(q)?.scale(self.factor))
    }

    fn label(&self, p: &Self::Point) -> String {
        self.inner.label(p)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub tuples_checked: usize,
    pub equivariance_violations: usize,
    pub finiteness_violations: usize,
    pub degenerate_violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
    pub pass: bool,
}

/// Checks axioms (a), (b), (c) on every admissible 4-tuple over `points`.
pub fn check_axioms<S: SubMoebius>(s: &S, points: &[S::Point]) -> Result<AxiomReport, MoebiusError> {
    let s4 = enumerate_group(4).expect("S_4 is small");
    let n = points.len();
    let mut report = AxiomReport {
        tuples_checked: 0,
        equivariance_violations: 0,
        finiteness_violations: 0,
        degenerate_violations: 0,
        first_violation: None,
        pass: true,
    };
    let note = |report: &mut AxiomReport, msg: String| {
        report.first_violation.get_or_insert(msg);
        report.pass = false;
    };
    let label = |q: &[S::Point; 4]| q.iter().map(|x| s.label(x)).collect::<Vec<_>>().join(",");
    for idx in 0..n.pow(4) {
        let q: [S::Point; 4] =
            [idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n].map(|i| points[i].clone());
        let class = classify_tuple(&q)?;
        if !class.is_admissible() {
            continue;
        }
        report.tuples_checked += 1;
        let v = s.value(&q)?;
        if v.is_finite() != (class == TupleClass::Regular) {
            report.finiteness_violations += 1;
            note(&mut report, format!("axiom (b) fails on ({})", label(&q)));
        }
        if q[0] == q[1] && v != ExtendedL4Value::Infinite(Marker::A) {
            report.degenerate_violations += 1;
            note(&mut report, format!("axiom (c) fails on ({})", label(&q)));
        }
        for p in &s4 {
            let moved: [S::Point; 4] = act_on_tuple(p, &q).try_into().expect("length 4");
            if s.value(&moved)? != v.act(p) {
                report.equivariance_violations += 1;
                note(&mut report, format!("axiom (a) fails on ({}) under {p}", label(&q)));
            }
        }
    }
    Ok(report)
}
