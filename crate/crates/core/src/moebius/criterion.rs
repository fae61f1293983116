//! The Möbius criterion: a sub-Möbius structure is Möbius exactly when its
//! codifferential maps regular 5-tuples into `R`.
//!
//! Three equivalent conditions are checked independently:
//!
//! * (ii) some single root `R_λ` contains every checked value, over the
//!   `S_5`-closure of the checked tuples (pulled back through `η_5`);
//! * (iii) every value lies in the symmetry set, i.e. all ten `r_λ` vanish;
//! * every value lies in the `χ^{32}` component, tested with integer
//!   functionals spanning its orthogonal complement.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::codiff::{codifferential, eval_charfn_extended, CodifferentialValue};
use super::semimetric::{ExtendedLine, LinePoint};
use super::structure::{extended_line, SubMoebius};
use super::value::{ln_rational, log_combination_vanishes};
use super::MoebiusError;
use crate::charfns::{all_char_fns, CharFn, Edge};
use crate::linalg::{format_rational, Rational};
use crate::rep::{r_subspace, CanonicalRep, V5_DIM};

/// Point sets with at most this many points are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 7;
pub const MAX_WITNESSES: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl SampleSpec {
    /// Exhaustive for small point sets, otherwise `count` seeded samples.
    pub fn for_points(n: usize, count: usize, seed: u64) -> Self {
        if n <= EXHAUSTIVE_LIMIT {
            SampleSpec::Exhaustive
        } else {
            SampleSpec::Sampled { count, seed }
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConditionCount {
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SingleRoot {
    /// Edges `λ` whose root contains the codifferential on every tuple of
    /// the closure.
    pub roots: Vec<Edge>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witness {
    pub tuple: Vec<String>,
    pub edge: Edge,
    /// `exp(r_λ(δM(P)))`, exact.
    pub value: String,
    pub log_value: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CriterionReport {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tuples_checked: usize,
    pub single_root: SingleRoot,
    pub symmetry_set: ConditionCount,
    pub isotypic: ConditionCount,
    pub conditions_agree: bool,
    pub per_lambda_violations: BTreeMap<String, usize>,
    pub witnesses: Vec<Witness>,
    pub tolerance: f64,
    /// Tuples where the float log-form test disagrees with the exact one.
    pub float_disagreements: usize,
    pub is_moebius: bool,
}

/// Integer functionals cutting out `R` inside `V^5`.
fn r_equations() -> &'static [Vec<BigInt>] {
    static EQS: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    EQS.get_or_init(|| r_subspace().orth_complement().integer_basis())
}

struct Pullbacks {
    /// Distinct functionals `±r_λ ∘ η_5(π)`, normalised to a positive
    /// leading coefficient.
    functionals: Vec<[i8; V5_DIM]>,
    /// For each `λ`, indices into `functionals` over all `π`.
    per_edge: Vec<(Edge, Vec<usize>)>,
}

fn pullbacks() -> &'static Pullbacks {
    static CELL: OnceLock<Pullbacks> = OnceLock::new();
    CELL.get_or_init(|| {
        let rep = CanonicalRep::get(5).expect("degree 5 is supported");
        let mut functionals: Vec<[i8; V5_DIM]> = Vec::new();
        let mut per_edge = Vec::new();
        for r in all_char_fns() {
            let mut indices = BTreeSet::new();
            for (_, op) in rep.iter() {
                // r ∘ η(π) has coefficient vector η(π)^T r = η(π^{-1}) r; over
                // the whole group that is the same set as {η(π) r}.
                let moved: [i8; V5_DIM] = op.apply_with(r.coeffs(), |c| -c).try_into().expect("dimension 15");
                let normalised = if moved.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                    moved.map(|c| -c)
                } else {
                    moved
                };
                let k = functionals.iter().position(|f| *f == normalised).unwrap_or_else(|| {
                    functionals.push(normalised);
                    functionals.len() - 1
                });
                indices.insert(k);
            }
            per_edge.push((r.edge(), indices.into_iter().collect()));
        }
        Pullbacks { functionals, per_edge }
    })
}

fn multiplicative_eval(coeffs: &[i8; V5_DIM], v: &[Rational]) -> Rational {
    let mut out = Rational::one();
    for (c, x) in coeffs.iter().zip(v) {
        let power = num_traits::pow::Pow::pow(x, c.unsigned_abs() as u32);
        if *c > 0 {
            out *= power;
        } else if *c < 0 {
            out /= power;
        }
    }
    out
}

struct TupleOutcome {
    labels: Vec<String>,
    values: Vec<(Edge, Rational)>,
    log_values: Vec<f64>,
    in_symmetry_set: bool,
    in_r: bool,
    pullback_zero: Vec<bool>,
}

fn examine<S: SubMoebius>(s: &S, p: &[S::Point; 5], chars: &[CharFn]) -> Result<TupleOutcome, MoebiusError> {
    let v: CodifferentialValue = codifferential(s, p)?;
    let exact = v.finite_coords().ok_or_else(|| {
        MoebiusError::InvalidStructure(format!(
            "infinite codifferential on a regular tuple {:?}",
            p.iter().map(|x| s.label(x)).collect::<Vec<_>>()
        ))
    })?;
    let log = v.log_form();
    let mut values = Vec::with_capacity(chars.len());
    let mut log_values = Vec::with_capacity(chars.len());
    for r in chars {
        let value = match eval_charfn_extended(r, &v)? {
            super::codiff::CharFnValue::Finite(x) => x,
            super::codiff::CharFnValue::ZeroByAgreement => unreachable!("finite input"),
        };
        log_values.push(r.terms().map(|(k, c)| c as f64 * log[k]).sum());
        values.push((r.edge(), value));
    }
    let in_symmetry_set = values.iter().all(|(_, x)| x.is_one());
    let in_r = r_equations().iter().all(|f| log_combination_vanishes(f, &exact));
    let pullback_zero = pullbacks()
        .functionals
        .iter()
        .map(|f| multiplicative_eval(f, &exact).is_one())
        .collect();
    Ok(TupleOutcome {
        labels: p.iter().map(|x| s.label(x)).collect(),
        values,
        log_values,
        in_symmetry_set,
        in_r,
        pullback_zero,
    })
}

/// Runs the criterion over the given regular 5-tuples.
pub fn criterion_report<S: SubMoebius>(
    s: &S,
    tuples: &[[S::Point; 5]],
    mode: &'static str,
    seed: Option<u64>,
    tolerance: f64,
) -> Result<CriterionReport, MoebiusError> {
    let chars = all_char_fns();
    let roots = &pullbacks().per_edge;
    let mut per_lambda: BTreeMap<String, usize> = chars.iter().map(|r| (r.edge().to_string(), 0)).collect();
    let mut witnesses = Vec::new();
    let mut symmetry_set = ConditionCount {
        passed: 0,
        failed: 0,
        pass: true,
    };
    let mut isotypic = symmetry_set.clone();
    let mut per_tuple_agree = true;
    let mut float_disagreements = 0;
    let mut pullback_all_zero = vec![true; pullbacks().functionals.len()];
    for p in tuples {
        let out = examine(s, p, &chars)?;
        for (flag, zero) in pullback_all_zero.iter_mut().zip(&out.pullback_zero) {
            *flag &= zero;
        }
        let tally = |c: &mut ConditionCount, ok: bool| {
            if ok {
                c.passed += 1;
            } else {
                c.failed += 1;
                c.pass = false;
            }
        };
        tally(&mut symmetry_set, out.in_symmetry_set);
        tally(&mut isotypic, out.in_r);
        per_tuple_agree &= out.in_symmetry_set == out.in_r;
        let mut float_mismatch = false;
        for ((edge, value), log_value) in out.values.iter().zip(&out.log_values) {
            let zero = value.is_one();
            float_mismatch |= zero != (log_value.abs() <= tolerance);
            if !zero {
                *per_lambda.get_mut(&edge.to_string()).expect("all edges present") += 1;
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(Witness {
                        tuple: out.labels.clone(),
                        edge: *edge,
                        value: format_rational(value),
                        log_value: ln_rational(value),
                    });
                }
            }
        }
        float_disagreements += usize::from(float_mismatch);
    }
    let single_roots: Vec<Edge> = roots
        .iter()
        .filter(|(_, idx)| idx.iter().all(|&k| pullback_all_zero[k]))
        .map(|(e, _)| *e)
        .collect();
    let single_root = SingleRoot {
        pass: !single_roots.is_empty(),
        roots: single_roots,
    };
    let conditions_agree =
        per_tuple_agree && single_root.pass == symmetry_set.pass && symmetry_set.pass == isotypic.pass;
    let is_moebius = single_root.pass && symmetry_set.pass && isotypic.pass;
    Ok(CriterionReport {
        mode,
        seed,
        tuples_checked: tuples.len(),
        single_root,
        symmetry_set,
        isotypic,
        conditions_agree,
        per_lambda_violations: per_lambda,
        witnesses,
        tolerance,
        float_disagreements,
        is_moebius,
    })
}

/// All ordered 5-tuples of distinct indices below `n`.
pub fn regular_index_tuples(n: usize) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(5);
    fn rec(n: usize, current: &mut Vec<usize>, out: &mut Vec<[usize; 5]>) {
        if current.len() == 5 {
            out.push(current[..].try_into().expect("five entries"));
            return;
        }
        for i in 0..n {
            if !current.contains(&i) {
                current.push(i);
                rec(n, current, out);
                current.pop();
            }
        }
    }
    rec(n, &mut current, &mut out);
    out
}

/// Criterion on a structure over the index set `0..n`.
pub fn is_moebius<S: SubMoebius<Point = usize>>(
    s: &S,
    n: usize,
    spec: SampleSpec,
    tolerance: f64,
) -> Result<CriterionReport, MoebiusError> {
    if n < 5 {
        return Err(MoebiusError::WrongPointCount { expected: 5, found: n });
    }
    match spec {
        SampleSpec::Exhaustive => criterion_report(s, &regular_index_tuples(n), "exhaustive", None, tolerance),
        SampleSpec::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tuples: Vec<[usize; 5]> = (0..count)
                .map(|_| {
                    let mut t = index::sample(&mut rng, n, 5).into_vec();
                    t.shuffle(&mut rng);
                    t.try_into().expect("five indices")
                })
                .collect();
            criterion_report(s, &tuples, "sampled", Some(seed), tolerance)
        }
    }
}

/// Seeded regular 5-tuples of the extended real line.
pub fn extended_line_samples(count: usize, seed: u64) -> Vec<[LinePoint; 5]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            ExtendedLine::sample_points(5, &mut rng)
                .try_into()
                .expect("five points")
        })
        .collect()
}

pub fn extended_line_report(count: usize, seed: u64, tolerance: f64) -> Result<CriterionReport, MoebiusError> {
    criterion_report(
        &extended_line(),
        &extended_line_samples(count, seed),
        "sampled",
        Some(seed),
        tolerance,
    )
}
