//! The ten characteristic functions `r_λ` on `V^5`, one per edge `λ` of the
//! vertex set `{1..5}`, together with their normal vectors in `L_5`, the root
//! hyperplanes `R_λ` and the symmetry set `R̂ = ∩ R_λ`.
//!
//! Construction of `r_λ`: take the three rows `i < j < k` indexed by the
//! vertices off `λ`. Row `i` belongs to the face `P_i` and its three entries
//! are labelled by the opposite edge pairs `(ab|cd, ac|bd, ad|bc)` of that
//! face. In each of the three rows pick the unique entry one of whose two
//! edges is `λ`; the entry in column `p` of the `q`-th selected row enters
//! with sign `(-1)^(p+q+1)` (both one-based).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{format_rational, rat, ExactMatrix, Rational, Subspace};
use crate::perm::Permutation;
use crate::rep::{l5_subspace, r_subspace, row_sum_constraints, CanonicalRep, RepError, V5_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharFnError {
    #[error("invalid edge {0:?}")]
    InvalidEdge(String),
    #[error("4-tuple has repeated entries")]
    RepeatedEntries,
    #[error("permutation {perm} maps r_{edge} outside ±r_{image}")]
    NotEquivariant { perm: String, edge: Edge, image: Edge },
    #[error("cannot parse characteristic function {0:?}")]
    Parse(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// An unordered pair of distinct vertices of `{0..5}` (zero-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(u8, u8);

impl Edge {
    pub fn new(i: usize, j: usize) -> Result<Self, CharFnError> {
        if i == j || i >= 5 || j >= 5 {
            return Err(CharFnError::InvalidEdge(format!("{}{}", i + 1, j + 1)));
        }
        Ok(Self(i.min(j) as u8, i.max(j) as u8))
    }

    /// All ten edges in lexicographic order.
    pub fn all() -> Vec<Edge> {
        (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| Edge(i as u8, j as u8)))
            .collect()
    }

    pub fn vertices(self) -> (usize, usize) {
        (self.0 as usize, self.1 as usize)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 as usize == v || self.1 as usize == v
    }

    pub fn image(self, p: &Permutation) -> Edge {
        let (i, j) = self.vertices();
        Edge::new(p.apply(i), p.apply(j)).expect("permutation preserves distinctness")
    }

    /// The vertices not on the edge, increasing.
    pub fn complement(self) -> [usize; 3] {
        let rest: Vec<usize> = (0..5).filter(|&v| !self.contains(v)).collect();
        [rest[0], rest[1], rest[2]]
    }

    /// Parses one-based text such as `"25"`.
    pub fn parse(s: &str) -> Result<Self, CharFnError> {
        let err = || CharFnError::InvalidEdge(s.to_owned());
        let digits: Vec<usize> = s
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
            .collect::<Result<_, _>>()?;
        match digits[..] {
            [a, b] if a >= 1 && b >= 1 => Self::new(a - 1, b - 1).map_err(|_| err()),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0 + 1, self.1 + 1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Edge({self})")
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The ordered opposite-edge pairs `(ab|cd, ac|bd, ad|bc)` of a 4-tuple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OppositePairLabel {
    pub pairs: [[[usize; 2]; 2]; 3],
}

impl OppositePairLabel {
    /// Index of the pair that has `edge` as one of its two edges.
    pub fn position_of(&self, edge: Edge) -> Option<usize> {
        let (i, j) = edge.vertices();
        self.pairs
            .iter()
            .position(|pair| pair.iter().any(|&[a, b]| (a == i && b == j) || (a == j && b == i)))
    }
}

impl fmt::Display for OppositePairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .pairs
            .iter()
            .map(|[[a, b], [c, d]]| format!("{}{}|{}{}", a + 1, b + 1, c + 1, d + 1))
            .collect();
        write!(f, "({})", items.join(", "))
    }
}

pub fn opposite_pairs(q: [usize; 4]) -> Result<OppositePairLabel, CharFnError> {
    for i in 0..4 {
        for j in i + 1..4 {
            if q[i] == q[j] {
                return Err(CharFnError::RepeatedEntries);
            }
        }
    }
    let [a, b, c, d] = q;
    Ok(OppositePairLabel {
        pairs: [[[a, b], [c, d]], [[a, c], [b, d]], [[a, d], [b, c]]],
    })
}

/// Vertices of `P = (0,1,2,3,4)` with entry `i` deleted.
fn face(i: usize) -> [usize; 4] {
    let rest: Vec<usize> = (0..5).filter(|&v| v != i).collect();
    [rest[0], rest[1], rest[2], rest[3]]
}

const COORD_NAMES: [char; 3] = ['a', 'b', 'c'];

/// A characteristic function as a dual vector on `V^5`.
#[derive(Clone, PartialEq, Eq)]
pub struct CharFn {
    edge: Edge,
    coeffs: [i8; V5_DIM],
}

impl CharFn {
    pub fn edge(&self) -> Edge {
        self.edge
    }

    pub fn coeffs(&self) -> &[i8; V5_DIM] {
        &self.coeffs
    }

    pub fn dual_vector(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|&c| rat(c as i64)).collect()
    }

    /// `(index into V^5, sign)` of the three non-zero terms, row order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.terms()
            .fold(Rational::zero(), |acc, (k, c)| acc + rat(c as i64) * &v[k])
    }

    /// Symbolic form such as `-c1-b3+b4`.
    pub fn expression(&self) -> String {
        format_expression(&self.coeffs)
    }
}

impl fmt::Debug for CharFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r_{}(v) = {}", self.edge, self.expression())
    }
}

pub fn format_expression(coeffs: &[i8; V5_DIM]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push(COORD_NAMES[k % 3]);
        out.push_str(&(k / 3 + 1).to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses a signed sum of the coordinates `a1..c5`, e.g. `"b1+c3+b5"`.
pub fn parse_expression(s: &str) -> Result<[i8; V5_DIM], CharFnError> {
    let err = || CharFnError::Parse(s.to_owned());
    let mut coeffs = [0i8; V5_DIM];
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut k = 0;
    while k < chars.len() {
        let mut sign = 1;
        if chars[k] == '+' || chars[k] == '-' {
            if chars[k] == '-' {
                sign = -1;
            }
            k += 1;
        }
        let name = *chars.get(k).ok_or_else(err)?;
        let col = COORD_NAMES.iter().position(|&c| c == name).ok_or_else(err)?;
        let row = chars.get(k + 1).and_then(|c| c.to_digit(10)).ok_or_else(err)? as usize;
        if !(1..=5).contains(&row) {
            return Err(err());
        }
        coeffs[(row - 1) * 3 + col] += sign;
        k += 2;
    }
    Ok(coeffs)
}

pub fn char_fn(edge: Edge) -> CharFn {
    let mut coeffs = [0i8; V5_DIM];
    for (q, &row) in edge.complement().iter().enumerate() {
        let label = opposite_pairs(face(row)).expect("faces have distinct vertices");
        let p = label
            .position_of(edge)
            .expect("an edge off vertex `row` lies in exactly one opposite pair of the face");
        let exponent = (p + 1) + (q + 1) + 1;
        coeffs[3 * row + p] = if exponent.is_multiple_of(2) { 1 } else { -1 };
    }
    CharFn { edge, coeffs }
}

pub fn all_char_fns() -> Vec<CharFn> {
    Edge::all().into_iter().map(char_fn).collect()
}

/// `n_λ`: the orthogonal projection of `3·r_λ` (as a vector) onto `L_5`.
pub fn normal_vector(edge: Edge) -> Vec<Rational> {
    let scaled: Vec<Rational> = char_fn(edge).coeffs.iter().map(|&c| rat(3 * c as i64)).collect();
    l5_subspace().project(&scaled).expect("dual vectors live in V^5")
}

fn kernel_in_l5(edges: &[Edge]) -> Subspace {
    let mut rows = row_sum_constraints().row_vecs();
    rows.extend(edges.iter().map(|&e| char_fn(e).dual_vector()));
    ExactMatrix::from_rows(rows)
        .expect("rows share the V^5 dimension")
        .kernel_basis()
}

/// `R_λ = { a ∈ L_5 : r_λ(a) = 0 }`.
pub fn root_subspace(edge: Edge) -> Subspace {
    kernel_in_l5(&[edge])
}

/// `R̂ = ∩_λ R_λ`.
pub fn symmetry_set() -> Subspace {
    kernel_in_l5(&Edge::all())
}

/// Action `(p·r)(x) = r(η_5(p)^{-1} x)` on the characteristic functions.
///
/// Returns `(s, p(λ))` with `p·r_λ = s·r_{p(λ)}`.
pub fn act_on_charfn(p: &Permutation, edge: Edge) -> Result<(i8, Edge), CharFnError> {
    let rep = CanonicalRep::get(5)?;
    if p.degree() != 5 {
        return Err(RepError::UnsupportedDegree(p.degree()).into());
    }
    // As a dual vector, r ∘ η^{-1} = r ∘ η^T, i.e. the coefficient vector
    // transforms by η itself.
    let moved = rep.matrix(p).apply_with(&char_fn(edge).coeffs, |c| -c);
    let image = edge.image(p);
    let target = char_fn(image).coeffs;
    if moved[..] == target[..] {
        Ok((1, image))
    } else if moved.iter().zip(&target).all(|(a, b)| *a == -b) {
        Ok((-1, image))
    } else {
        Err(CharFnError::NotEquivariant {
            perm: p.to_string(),
            edge,
            image,
        })
    }
}

/// Orbit of the signed function `sign·r_λ` under all of `S_5`.
pub fn signed_orbit(sign: i8, edge: Edge) -> Result<BTreeSet<(i8, Edge)>, CharFnError> {
    let rep = CanonicalRep::get(5)?;
    rep.elements()
        .iter()
        .map(|p| act_on_charfn(p, edge).map(|(s, e)| (s * sign, e)))
        .collect()
}

/// The two linear conditions of the Möbius criterion in their original
/// form, written as dual vectors:
/// `b(P1) + b(P4) - b(P3) + a(P1) = 0` and `b(P2) + a(P4) - b(P1) = 0`.
pub fn criterion_conditions() -> [Vec<Rational>; 2] {
    let coord = |row: usize, col: usize| 3 * (row - 1) + col;
    let mut a = vec![Rational::zero(); V5_DIM];
    a[coord(1, 1)] = rat(1);
    a[coord(4, 1)] = rat(1);
    a[coord(3, 1)] = rat(-1);
    a[coord(1, 0)] = rat(1);
    let mut b = vec![Rational::zero(); V5_DIM];
    b[coord(2, 1)] = rat(1);
    b[coord(4, 0)] = rat(1);
    b[coord(1, 1)] = rat(-1);
    [a, b]
}

/// Outcome of checking that the symmetry set equals the `χ^{32}` component.
#[derive(Debug, Clone, Serialize)]
pub struct SymsetReport {
    pub dim_l5: usize,
    pub dim_symmetry_set: usize,
    pub dim_r: usize,
    pub symmetry_set_equals_r: bool,
    pub transposition: String,
    /// Trace of `η_5(transposition)` on `R̂^⊥ ∩ L_5`.
    pub restricted_trace: String,
    pub negated_normals: Vec<Edge>,
    pub fixed_normals: Vec<Edge>,
    pub negated_span_dim: usize,
    pub dependence_holds: bool,
    pub n25: Vec<Vec<String>>,
    pub pass: bool,
}

pub fn verify_symset_equals_r() -> Result<SymsetReport, CharFnError> {
    let l5 = l5_subspace();
    let rhat = symmetry_set();
    let r = r_subspace();
    let equal = crate::linalg::subspace_equal(&rhat, &r).expect("both live in V^5");

    let transposition: Permutation = "15342".parse().expect("valid one-line notation");
    let op = CanonicalRep::get(5)?.matrix(&transposition);
    let complement = rhat.orth_complement().intersect(&l5).expect("both live in V^5");
    let trace = complement
        .restricted_trace(&op.to_matrix())
        .expect("the complement of an invariant subspace is invariant");

    let mut negated = Vec::new();
    let mut fixed = Vec::new();
    for edge in Edge::all() {
        let n = normal_vector(edge);
        let image = op.apply(&n);
        if image == n {
            fixed.push(edge);
        } else if image.iter().zip(&n).all(|(a, b)| *a == -b) {
            negated.push(edge);
        }
    }
    let span =
        Subspace::span(V5_DIM, negated.iter().map(|&e| normal_vector(e)).collect()).expect("normals live in V^5");

    let e = |s: &str| Edge::parse(s).expect("static edge");
    let add =
        |x: Vec<Rational>, y: Vec<Rational>| -> Vec<Rational> { x.into_iter().zip(y).map(|(a, b)| a + b).collect() };
    let dependence =
        add(normal_vector(e("25")), normal_vector(e("13"))) == add(normal_vector(e("14")), normal_vector(e("34")));

    let n25 = normal_vector(e("25"))
        .chunks(3)
        .map(|row| row.iter().map(format_rational).collect())
        .collect();

    let expected_negated: Vec<Edge> = ["13", "14", "25", "34"].into_iter().map(e).collect();
    let pass = equal
        && rhat.dim() == 5
        && trace == rat(-1)
        && negated == expected_negated
        && fixed.is_empty()
        && span.dim() == 3
        && dependence;

    Ok(SymsetReport {
        dim_l5: l5.dim(),
        dim_symmetry_set: rhat.dim(),
        dim_r: r.dim(),
        symmetry_set_equals_r: equal,
        transposition: transposition.to_string(),
        restricted_trace: format_rational(&trace),
        negated_normals: negated,
        fixed_normals: fixed,
        negated_span_dim: span.dim(),
        dependence_holds: dependence,
        n25,
        pass,
    })
}
