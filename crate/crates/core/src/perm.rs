//! Permutations of `{0..n}` and the bits of symmetric-group machinery the
//! rest of the crate needs: sign, cycle type, induced permutations and the
//! cross-ratio homomorphism `S_4 -> S_3`.
//!
//! Internally a permutation stores its *direct* images, zero-based. The
//! textual one-line form used for all I/O is one-based and lists the
//! *inverse* images: the string `i_1 i_2 ... i_n` means `i_k = p^{-1}(k)`.
//! With that convention the string also reads as the reordered tuple: applying
//! `p` to `(x_1, .., x_n)` yields `(x_{i_1}, .., x_{i_n})`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest degree accepted by [`enumerate_group`].
pub const MAX_ENUMERATION_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("expected a permutation of degree {expected}, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("refusing to enumerate S_{0}: degree exceeds {MAX_ENUMERATION_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("images do not form a bijection of 0..{0}")]
    NotABijection(usize),
    #[error("invalid one-line notation {0:?}")]
    Parse(String),
}

/// A bijection of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from zero-based direct images, `images[j] = p(j)`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(PermError::NotABijection(n));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(PermError::NotABijection(n));
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// The transposition exchanging `i` and `j` (zero-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, PermError> {
        for index in [i, j] {
            if index >= n {
                return Err(PermError::IndexOutOfRange { index, degree: n });
            }
        }
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `p(j)`, zero-based.
    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.images[j] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| j == i as usize)
    }

    /// `self ∘ q`, i.e. `j ↦ self(q(j))`.
    pub fn compose(&self, q: &Permutation) -> Result<Self, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(Self {
            images: q.images.iter().map(|&j| self.images[j as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.degree()];
        for (j, &i) in self.images.iter().enumerate() {
            images[i as usize] = j as u8;
        }
        Self { images }
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        // n minus the number of cycles is the minimal transposition count.
        let cycles = self.cycle_lengths().len();
        if (self.degree() - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j);
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycle_lengths())
    }

    /// The permutation of `S_{n-1}` induced by restricting `self` to
    /// `{0..n} \ {i}` → `{0..n} \ {self(i)}`, with source and target both
    /// relabelled to `{0..n-1}` by the order-preserving bijections.
    pub fn induced(&self, i: usize) -> Result<Self, PermError> {
        let n = self.degree();
        if i >= n || n < 2 {
            return Err(PermError::IndexOutOfRange { index: i, degree: n });
        }
        let skipped = self.apply(i);
        let images = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let t = self.apply(j);
                (if t > skipped { t - 1 } else { t }) as u8
            })
            .collect();
        Ok(Self { images })
    }

    /// The cross-ratio homomorphism `φ: S_4 → S_3`: the action of `self` on
    /// the ordered triple of opposite edge pairs `(01|23, 02|13, 03|12)`.
    pub fn crossratio_hom(&self) -> Result<Self, PermError> {
        if self.degree() != 4 {
            return Err(PermError::WrongDegree {
                expected: 4,
                found: self.degree(),
            });
        }
        let images: Vec<usize> = OPPOSITE_PAIRS
            .iter()
            .map(|pair| {
                let moved = pair_key(pair.map(|edge| edge.map(|v| self.apply(v))));
                OPPOSITE_PAIRS
                    .iter()
                    .position(|q| pair_key(*q) == moved)
                    .expect("vertex permutations map opposite pairs to opposite pairs")
            })
            .collect();
        Self::from_images(&images)
    }

    /// One-based one-line notation, inverse-image convention.
    pub fn to_one_line(&self) -> String {
        let inv = self.inverse();
        if self.degree() <= 9 {
            inv.images().map(|i| char::from(b'1' + i as u8)).collect()
        } else {
            inv.images().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Parses one-line notation (`"15342"`, or comma separated above degree 9).
    pub fn parse_one_line(s: &str) -> Result<Self, PermError> {
        let err = || PermError::Parse(s.to_owned());
        let s = s.trim();
        let digits: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                .collect::<Result<_, _>>()?
        };
        if digits.is_empty() || digits.contains(&0) {
            return Err(err());
        }
        let inverse: Vec<usize> = digits.iter().map(|d| d - 1).collect();
        Self::from_images(&inverse).map(|p| p.inverse()).map_err(|_| err())
    }
}

const OPPOSITE_PAIRS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

fn pair_key(pair: [[usize; 2]; 2]) -> [[usize; 2]; 2] {
    let mut edges = pair.map(|[a, b]| [a.min(b), a.max(b)]);
    edges.sort();
    edges
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_one_line())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_one_line())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_one_line(s)
    }
}

/// All `n!` elements of `S_n` in lexicographic order of their image vectors.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>, PermError> {
    if n > MAX_ENUMERATION_DEGREE {
        return Err(PermError::DegreeTooLarge(n));
    }
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        if !next_lexicographic(&mut current) {
            break;
        }
    }
    Ok(out)
}

fn next_lexicographic(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Multiset of cycle lengths, stored in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Self(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Exponent notation, e.g. `21^3` or `2^21`.
    pub fn notation(&self) -> String {
        let mut out = String::new();
        let mut k = 0;
        while k < self.0.len() {
            let len = self.0[k];
            let run = self.0[k..].iter().take_while(|&&l| l == len).count();
            out.push_str(&len.to_string());
            if run > 1 {
                out.push('^');
                out.push_str(&run.to_string());
            }
            k += run;
        }
        out
    }

    /// Inverse of [`CycleType::notation`]; single-digit parts and exponents only.
    pub fn parse(s: &str) -> Option<Self> {
        let bytes = s.as_bytes();
        let mut lengths = Vec::new();
        let mut k = 0;
        while k < bytes.len() {
            let len = (bytes[k] as char).to_digit(10)? as usize;
            k += 1;
            let mut run = 1;
            if k < bytes.len() && bytes[k] == b'^' {
                // Exponents are single digits, otherwise `2^21` would be ambiguous.
                run = (*bytes.get(k + 1)? as char).to_digit(10)? as usize;
                k += 2;
            }
            if len == 0 || run == 0 {
                return None;
            }
            lengths.extend(std::iter::repeat_n(len, run));
        }
        if lengths.is_empty() {
            return None;
        }
        let ct = Self::from_lengths(lengths.clone());
        (ct.0 == lengths).then_some(ct)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({})", self.notation())
    }
}
