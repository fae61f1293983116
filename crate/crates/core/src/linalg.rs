//! Dense linear algebra over arbitrary-precision rationals.
//!
//! [`Subspace`] keeps its basis in reduced row echelon form, which is unique
//! for a given subspace; equality of subspaces is therefore plain equality of
//! the stored bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { rows: n, cols, data })
    }

    /// Builds a matrix with `cols` columns from rows that may be empty in number.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, LinalgError> {
        if rows.is_empty() {
            return Ok(Self::zeros(0, cols));
        }
        let m = Self::from_rows(rows)?;
        if m.cols != cols {
            return Err(LinalgError::DimensionMismatch {
                expected: cols,
                found: m.cols,
            });
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &Rational) -> Result<(), LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
        Ok(())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..cols {
                let v = &self.data[r * cols + j] * &inv;
                self.data[r * cols + j] = v;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let delta = &f * &self.data[r * cols + j];
                    if !delta.is_zero() {
                        self.data[i * cols + j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect();
        Subspace::span(self.cols, vectors).expect("kernel vectors have matching length")
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, self.transpose().row_vecs()).expect("columns have matching length")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `Q^ambient`, basis in reduced row echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, ExactMatrix::identity(ambient).row_vecs()).unwrap()
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        let m = ExactMatrix::from_rows_with_cols(vectors, ambient)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Self { ambient, basis, pivots })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    fn check_ambient(&self, n: usize) -> Result<(), LinalgError> {
        if n != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    ///
    /// With a reduced echelon basis the coordinate along basis vector `k` is
    /// simply `v[pivot_k]`.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        self.check_ambient(v.len())?;
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r -= c * x;
            }
        }
        Ok(residual.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        other.check_ambient(self.ambient)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn orth_complement(&self) -> Subspace {
        ExactMatrix::from_rows_with_cols(self.basis.clone(), self.ambient)
            .expect("basis rows have ambient length")
            .kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other.ambient)?;
        let mut constraints = self.orth_complement().basis;
        constraints.extend(other.orth_complement().basis);
        Ok(ExactMatrix::from_rows_with_cols(constraints, self.ambient)?.kernel_basis())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other.ambient)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, vectors)
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        self.check_ambient(v.len())?;
        let k = self.dim();
        if k == 0 {
            return Ok(vec![Rational::zero(); self.ambient]);
        }
        // Solve the Gram system G c = B v, then return B^T c.
        let mut aug = ExactMatrix::zeros(k, k + 1);
        for i in 0..k {
            for j in 0..k {
                aug.set(i, j, dot(&self.basis[i], &self.basis[j]));
            }
            aug.set(i, k, dot(&self.basis[i], v));
        }
        let (r, _) = aug.rref();
        let mut out = vec![Rational::zero(); self.ambient];
        for (i, b) in self.basis.iter().enumerate() {
            let c = r.get(i, k);
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Image of the subspace under a square operator.
    pub fn image_under(&self, op: &ExactMatrix) -> Result<Subspace, LinalgError> {
        self.check_ambient(op.cols())?;
        let vectors = self
            .basis
            .iter()
            .map(|b| op.mul_vec(b))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(op.rows(), vectors)
    }

    pub fn is_invariant_under(&self, op: &ExactMatrix) -> Result<bool, LinalgError> {
        Ok(self.image_under(op)? == *self)
    }

    /// Trace of `op` restricted to this (invariant) subspace.
    pub fn restricted_trace(&self, op: &ExactMatrix) -> Result<Rational, LinalgError> {
        let mut trace = Rational::zero();
        for (k, b) in self.basis.iter().enumerate() {
            let image = op.mul_vec(b)?;
            let coords = self.coordinates(&image)?.ok_or(LinalgError::NotInvariant)?;
            trace += &coords[k];
        }
        Ok(trace)
    }

    /// Basis vectors scaled to primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|b| primitive_integer_vector(b)).collect()
    }
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool, LinalgError> {
    a.check_ambient(b.ambient)?;
    Ok(a == b)
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}

/// True when every entry is an integer; handy for reporting.
pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
