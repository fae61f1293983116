//! The canonical representations `η_n` of `S_n` on `V^n` (dimension `n!/8`)
//! and the character theory of `η_5`.
//!
//! `V^4 = Q^3` and `V^{n+1} = Q^{n+1} ⊗ V^n`; a vector of `V^5` is a 5×3
//! matrix flattened row-major, row `i` being the face obtained by deleting
//! entry `i` of a 5-tuple and the columns the three coordinates `(a, b, c)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rat, rat_frac, ExactMatrix, Rational, Subspace};
use crate::perm::{enumerate_group, PermError, Permutation};

pub const MIN_DEGREE: usize = 4;
pub const MAX_DEGREE: usize = 6;

/// Dimension of `V^5`.
pub const V5_DIM: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("degree {0} outside the supported range {MIN_DEGREE}..={MAX_DEGREE}")]
    UnsupportedDegree(usize),
    #[error("class-indexed characters are only available for S_5, not S_{0}")]
    NoClassStructure(usize),
    #[error("not a character: multiplicity of chi^{lambda} is {value}")]
    NotACharacter { lambda: &'static str, value: String },
    #[error("unknown prime character {0:?}")]
    UnknownCharacter(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub fn dim_v(n: usize) -> usize {
    (1..=n).product::<usize>() / 8
}

/// A monomial matrix with entries in `{-1, 0, 1}`: column `j` is
/// `sign[j] · e_{target[j]}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    target: Vec<u32>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        Self {
            target: (0..n as u32).collect(),
            sign: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// `(target, sign)` of basis vector `j`.
    pub fn column(&self, j: usize) -> (usize, i8) {
        (self.target[j] as usize, self.sign[j])
    }

    pub fn is_identity(&self) -> bool {
        self.sign.iter().all(|&s| s == 1) && self.target.iter().enumerate().all(|(j, &t)| t as usize == j)
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (target, sign) = other
            .target
            .iter()
            .zip(&other.sign)
            .map(|(&t, &s)| (self.target[t as usize], s * self.sign[t as usize]))
            .unzip();
        Self { target, sign }
    }

    /// Inverse, which for a signed permutation matrix is its transpose.
    pub fn inverse(&self) -> Self {
        let mut target = vec![0; self.dim()];
        let mut sign = vec![1; self.dim()];
        for (j, (&t, &s)) in self.target.iter().zip(&self.sign).enumerate() {
            target[t as usize] = j as u32;
            sign[t as usize] = s;
        }
        Self { target, sign }
    }

    pub fn trace(&self) -> i64 {
        self.target
            .iter()
            .zip(&self.sign)
            .enumerate()
            .filter(|(j, (&t, _))| t as usize == *j)
            .map(|(_, (_, &s))| s as i64)
            .sum()
    }

    /// Applies the matrix to a vector whose entries support negation.
    pub fn apply_with<T: Clone>(&self, v: &[T], neg: impl Fn(&T) -> T) -> Vec<T> {
        assert_eq!(v.len(), self.dim(), "vector length must match matrix size");
        let mut out: Vec<Option<T>> = vec![None; v.len()];
        for (j, x) in v.iter().enumerate() {
            let (t, s) = self.column(j);
            out[t] = Some(if s > 0 { x.clone() } else { neg(x) });
        }
        out.into_iter().map(|x| x.expect("bijective")).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.apply_with(v, |x| -x)
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            let (t, s) = self.column(j);
            m.set(t, j, rat(s as i64));
        }
        m
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = (0..self.dim())
            .map(|j| {
                let (t, s) = self.column(j);
                format!("{}{}", if s > 0 { "+" } else { "-" }, t)
            })
            .collect();
        write!(f, "SignedPerm[{}]", cols.join(" "))
    }
}

/// `η_4(p) e_j = sign(p) e_{φ(p)(j)}`.
pub fn eta4(p: &Permutation) -> Result<SignedPerm, RepError> {
    let phi = p.crossratio_hom()?;
    let s = p.sign();
    Ok(SignedPerm {
        target: phi.images().map(|t| t as u32).collect(),
        sign: vec![s; 3],
    })
}

/// `η_n(p)` computed by recursion: block column `i` of the result is
/// `η_{n-1}(p_i)` placed in block row `p(i)`.
pub fn eta(p: &Permutation) -> Result<SignedPerm, RepError> {
    let n = p.degree();
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return Err(RepError::UnsupportedDegree(n));
    }
    eta_recursive(p)
}

fn eta_recursive(p: &Permutation) -> Result<SignedPerm, RepError> {
    let n = p.degree();
    if n == 4 {
        return eta4(p);
    }
    let block = dim_v(n - 1);
    let mut target = vec![0u32; dim_v(n)];
    let mut sign = vec![1i8; dim_v(n)];
    for i in 0..n {
        let inner = match CanonicalRep::cached(n - 1) {
            Some(rep) => rep.matrix(&p.induced(i)?).clone(),
            None => eta_recursive(&p.induced(i)?)?,
        };
        let row_block = p.apply(i);
        for k in 0..block {
            let (t, s) = inner.column(k);
            target[i * block + k] = (row_block * block + t) as u32;
            sign[i * block + k] = s;
        }
    }
    Ok(SignedPerm { target, sign })
}

/// All matrices of `η_n` for one degree, keyed by group element.
pub struct CanonicalRep {
    n: usize,
    elements: Vec<Permutation>,
    matrices: HashMap<Permutation, SignedPerm>,
}

static REP4: OnceLock<CanonicalRep> = OnceLock::new();
static REP5: OnceLock<CanonicalRep> = OnceLock::new();
static REP6: OnceLock<CanonicalRep> = OnceLock::new();

impl CanonicalRep {
    pub fn build(n: usize) -> Result<Self, RepError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(RepError::UnsupportedDegree(n));
        }
        let elements = enumerate_group(n)?;
        let matrices = elements
            .iter()
            .map(|p| Ok((p.clone(), eta(p)?)))
            .collect::<Result<HashMap<_, _>, RepError>>()?;
        Ok(Self { n, elements, matrices })
    }

    /// Shared, lazily built instance.
    pub fn get(n: usize) -> Result<&'static Self, RepError> {
        let cell = match n {
            4 => &REP4,
            5 => &REP5,
            6 => &REP6,
            _ => return Err(RepError::UnsupportedDegree(n)),
        };
        if let Some(rep) = cell.get() {
            return Ok(rep);
        }
        if n > MIN_DEGREE {
            Self::get(n - 1)?;
        }
        let rep = Self::build(n)?;
        Ok(cell.get_or_init(|| rep))
    }

    fn cached(n: usize) -> Option<&'static Self> {
        match n {
            4 => REP4.get(),
            5 => REP5.get(),
            6 => REP6.get(),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        dim_v(self.n)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn matrix(&self, p: &Permutation) -> &SignedPerm {
        &self.matrices[p]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &SignedPerm)> {
        self.elements.iter().map(move |p| (p, &self.matrices[p]))
    }
}

/// Conjugacy classes of `S_5` in the column order of the character table.
pub const S5_CLASSES: [&str; 7] = ["1^5", "21^3", "2^21", "31^2", "32", "41", "5"];
pub const S5_CLASS_SIZES: [u32; 7] = [1, 10, 15, 20, 20, 30, 24];
pub const S5_ORDER: u32 = 120;

pub fn s5_class_index(p: &Permutation) -> Option<usize> {
    let notation = p.cycle_type().notation();
    S5_CLASSES.iter().position(|c| *c == notation)
}

/// A class function on `S_5`, one value per class in [`S5_CLASSES`] order.
#[derive(Clone, PartialEq, Eq)]
pub struct CharacterVector {
    values: [Rational; 7],
}

impl CharacterVector {
    pub fn new(values: [Rational; 7]) -> Self {
        Self { values }
    }

    pub fn from_ints(values: [i64; 7]) -> Self {
        Self {
            values: values.map(rat),
        }
    }

    pub fn values(&self) -> &[Rational; 7] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Rational {
        &self.values[class]
    }

    pub fn degree(&self) -> &Rational {
        &self.values[0]
    }

    pub fn keyed(&self) -> BTreeMap<&'static str, String> {
        S5_CLASSES
            .iter()
            .zip(&self.values)
            .map(|(c, v)| (*c, crate::linalg::format_rational(v)))
            .collect()
    }
}

impl fmt::Debug for CharacterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(crate::linalg::format_rational).collect();
        write!(f, "CharacterVector({})", vals.join(", "))
    }
}

/// Irreducible characters of `S_5`, indexed by partitions of 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PrimeCharacter {
    #[serde(rename = "5")]
    Trivial,
    #[serde(rename = "41")]
    Standard,
    #[serde(rename = "32")]
    P32,
    #[serde(rename = "31^2")]
    P311,
    #[serde(rename = "2^21")]
    P221,
    #[serde(rename = "21^3")]
    P2111,
    #[serde(rename = "1^5")]
    Sign,
}

impl PrimeCharacter {
    pub const ALL: [PrimeCharacter; 7] = [
        Self::Trivial,
        Self::Standard,
        Self::P32,
        Self::P311,
        Self::P221,
        Self::P2111,
        Self::Sign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Trivial => "5",
            Self::Standard => "41",
            Self::P32 => "32",
            Self::P311 => "31^2",
            Self::P221 => "2^21",
            Self::P2111 => "21^3",
            Self::Sign => "1^5",
        }
    }

    pub fn from_name(s: &str) -> Result<Self, RepError> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RepError::UnknownCharacter(s.to_owned()))
    }

    /// Row of the `S_5` character table.
    pub fn values(self) -> [i64; 7] {
        match self {
            Self::Trivial => [1, 1, 1, 1, 1, 1, 1],
            Self::Standard => [4, 2, 0, 1, -1, 0, -1],
            Self::P32 => [5, 1, 1, -1, 1, -1, 0],
            Self::P311 => [6, 0, -2, 0, 0, 0, 1],
            Self::P221 => [5, -1, 1, -1, -1, 1, 0],
            Self::P2111 => [4, -2, 0, 1, 1, 0, -1],
            Self::Sign => [1, -1, 1, 1, -1, -1, 1],
        }
    }

    pub fn character(self) -> CharacterVector {
        CharacterVector::from_ints(self.values())
    }

    pub fn dim(self) -> i64 {
        self.values()[0]
    }
}

impl fmt::Display for PrimeCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Trace of `η_n(p)` for every element, in enumeration order.
pub fn traces(n: usize) -> Result<Vec<(Permutation, i64)>, RepError> {
    let rep = CanonicalRep::get(n)?;
    Ok(rep.iter().map(|(p, m)| (p.clone(), m.trace())).collect())
}

/// Character of `η_5`, evaluated on the first element met in each class.
pub fn character(n: usize) -> Result<CharacterVector, RepError> {
    if n != 5 {
        return Err(RepError::NoClassStructure(n));
    }
    let rep = CanonicalRep::get(5)?;
    let mut values: [Option<Rational>; 7] = Default::default();
    for (p, m) in rep.iter() {
        let class = s5_class_index(p).expect("every element of S_5 has a listed class");
        values[class].get_or_insert_with(|| rat(m.trace()));
    }
    Ok(CharacterVector::new(
        values.map(|v| v.expect("each class is non-empty")),
    ))
}

/// `⟨x, y⟩ = (1/120) Σ_s x(s) y(s)`; characters of `S_5` are real.
pub fn char_inner(x: &CharacterVector, y: &CharacterVector) -> Rational {
    let sum = (0..7).fold(Rational::zero(), |acc, c| {
        acc + rat(S5_CLASS_SIZES[c] as i64) * x.value(c) * y.value(c)
    });
    sum / rat(S5_ORDER as i64)
}

/// Multiplicities of the prime characters in `x`.
pub fn decompose(x: &CharacterVector) -> Result<BTreeMap<PrimeCharacter, u32>, RepError> {
    PrimeCharacter::ALL
        .into_iter()
        .map(|lambda| {
            let m = char_inner(x, &lambda.character());
            if !m.is_integer() || m.is_negative() {
                return Err(RepError::NotACharacter {
                    lambda: lambda.name(),
                    value: crate::linalg::format_rational(&m),
                });
            }
            let count = u32::try_from(m.to_integer()).map_err(|_| RepError::NotACharacter {
                lambda: lambda.name(),
                value: crate::linalg::format_rational(&m),
            })?;
            Ok((lambda, count))
        })
        .collect()
}

/// `(dim λ / 120) Σ_s χ_λ(s) η_5(s)`.
pub fn isotypic_projector(lambda: PrimeCharacter) -> ExactMatrix {
    static CACHE: OnceLock<BTreeMap<PrimeCharacter, ExactMatrix>> = OnceLock::new();
    CACHE.get_or_init(|| {
        PrimeCharacter::ALL
            .into_iter()
            .map(|l| (l, build_projector(l)))
            .collect()
    })[&lambda]
        .clone()
}

fn build_projector(lambda: PrimeCharacter) -> ExactMatrix {
    let rep = CanonicalRep::get(5).expect("degree 5 is supported");
    let chi = lambda.values();
    let mut acc = vec![0i64; V5_DIM * V5_DIM];
    for (p, m) in rep.iter() {
        let weight = chi[s5_class_index(p).unwrap()];
        if weight == 0 {
            continue;
        }
        for j in 0..V5_DIM {
            let (t, s) = m.column(j);
            acc[t * V5_DIM + j] += weight * s as i64;
        }
    }
    let factor = rat_frac(lambda.dim(), S5_ORDER as i64);
    let mut out = ExactMatrix::zeros(V5_DIM, V5_DIM);
    for i in 0..V5_DIM {
        for j in 0..V5_DIM {
            if acc[i * V5_DIM + j] != 0 {
                out.set(i, j, rat(acc[i * V5_DIM + j]) * &factor);
            }
        }
    }
    out
}

/// `L_5`: vectors of `V^5` whose rows each sum to zero.
pub fn l5_subspace() -> Subspace {
    row_sum_constraints().kernel_basis()
}

/// The five row-sum functionals cutting out `L_5`.
pub fn row_sum_constraints() -> ExactMatrix {
    let mut m = ExactMatrix::zeros(5, V5_DIM);
    for i in 0..5 {
        for c in 0..3 {
            m.set(i, 3 * i + c, Rational::one());
        }
    }
    m
}

/// Isotypic component of `η_5` for `lambda`, as the image of its projector.
pub fn isotypic_subspace(lambda: PrimeCharacter) -> Subspace {
    isotypic_projector(lambda).column_space()
}

/// The `χ^{32}` component `R ⊂ L_5`.
pub fn r_subspace() -> Subspace {
    isotypic_subspace(PrimeCharacter::P32)
        .intersect(&l5_subspace())
        .expect("both live in V^5")
}

/// `w = e_1 - e_2 + e_3 - e_4 + e_5`, row `i` constant `±1`.
pub fn w_vector() -> Vec<Rational> {
    (0..V5_DIM)
        .map(|k| {
            if (k / 3) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }
        })
        .collect()
}
