//! Points of `L̄_4 = L_4 ∪ {A, B, C}` held in multiplicative form.
//!
//! A finite point `(a, b, c)` with `a + b + c = 0` is stored as the positive
//! rationals `(e^a, e^b, e^c)` whose product is exactly 1. Each coordinate of
//! an infinite point is either `+∞`, `-∞` or the finite value `0` (stored as
//! `1`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::MoebiusError;
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::perm::Permutation;

/// One coordinate of an extended value, multiplicative form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtCoord {
    Finite(Rational),
    PosInf,
    NegInf,
}

impl ExtCoord {
    pub fn one() -> Self {
        Self::Finite(Rational::one())
    }

    /// Additive negation, i.e. the reciprocal of a finite coordinate.
    pub fn negate(&self) -> Self {
        match self {
            Self::Finite(x) => Self::Finite(x.recip()),
            Self::PosInf => Self::NegInf,
            Self::NegInf => Self::PosInf,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// The coordinate in log form.
    pub fn log(&self) -> f64 {
        match self {
            Self::Finite(x) => ln_rational(x),
            Self::PosInf => f64::INFINITY,
            Self::NegInf => f64::NEG_INFINITY,
        }
    }
}

impl fmt::Debug for ExtCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{}", format_rational(x)),
            Self::PosInf => f.write_str("+inf"),
            Self::NegInf => f.write_str("-inf"),
        }
    }
}

/// Natural log of a positive rational, robust to huge numerators.
pub fn ln_rational(x: &Rational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::NAN).abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// The three infinitely remote points of `L̄_4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Marker {
    /// `(0, ∞, -∞)`
    A,
    /// `(-∞, 0, ∞)`
    B,
    /// `(∞, -∞, 0)`
    C,
}

impl Marker {
    pub fn coords(self) -> [ExtCoord; 3] {
        use ExtCoord::{NegInf, PosInf};
        match self {
            Marker::A => [ExtCoord::one(), PosInf, NegInf],
            Marker::B => [NegInf, ExtCoord::one(), PosInf],
            Marker::C => [PosInf, NegInf, ExtCoord::one()],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::A => "A",
            Marker::B => "B",
            Marker::C => "C",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "A" => Some(Marker::A),
            "B" => Some(Marker::B),
            "C" => Some(Marker::C),
            _ => None,
        }
    }
}

/// A finite point of `L_4`: positive `(α, β, γ)` with `αβγ = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiplicativeL4Value {
    components: [Rational; 3],
}

impl MultiplicativeL4Value {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self, MoebiusError> {
        let components = [alpha, beta, gamma];
        if components.iter().any(|x| !x.is_positive()) {
            return Err(MoebiusError::InvalidValue("components must be positive".into()));
        }
        let product = components.iter().fold(Rational::one(), |acc, x| acc * x);
        if !product.is_one() {
            return Err(MoebiusError::InvalidValue(format!(
                "components multiply to {}, not 1",
                format_rational(&product)
            )));
        }
        Ok(Self { components })
    }

    /// `(α, β, 1/(αβ))`.
    pub fn from_two(alpha: Rational, beta: Rational) -> Result<Self, MoebiusError> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(MoebiusError::InvalidValue("components must be positive".into()));
        }
        let gamma = (&alpha * &beta).recip();
        Ok(Self {
            components: [alpha, beta, gamma],
        })
    }

    pub fn zero() -> Self {
        Self {
            components: [Rational::one(), Rational::one(), Rational::one()],
        }
    }

    pub fn components(&self) -> &[Rational; 3] {
        &self.components
    }

    pub fn log_form(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| ln_rational(&self.components[i]))
    }

    pub fn to_strings(&self) -> [String; 3] {
        [0, 1, 2].map(|i| format_rational(&self.components[i]))
    }

    pub fn parse(items: &[String; 3]) -> Result<Self, MoebiusError> {
        let parse =
            |s: &String| parse_rational(s).ok_or_else(|| MoebiusError::InvalidValue(format!("bad rational {s:?}")));
        Self::new(parse(&items[0])?, parse(&items[1])?, parse(&items[2])?)
    }
}

impl fmt::Debug for MultiplicativeL4Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_strings();
        write!(f, "({a}, {b}, {c})")
    }
}

/// A point of `L̄_4`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtendedL4Value {
    Finite(MultiplicativeL4Value),
    Infinite(Marker),
}

impl ExtendedL4Value {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn coords(&self) -> [ExtCoord; 3] {
        match self {
            Self::Finite(v) => v.components.clone().map(ExtCoord::Finite),
            Self::Infinite(m) => m.coords(),
        }
    }

    pub fn from_coords(coords: [ExtCoord; 3]) -> Result<Self, MoebiusError> {
        if let [ExtCoord::Finite(a), ExtCoord::Finite(b), ExtCoord::Finite(c)] = &coords {
            return MultiplicativeL4Value::new(a.clone(), b.clone(), c.clone()).map(Self::Finite);
        }
        [Marker::A, Marker::B, Marker::C]
            .into_iter()
            .find(|m| m.coords() == coords)
            .map(Self::Infinite)
            .ok_or_else(|| MoebiusError::InvalidValue(format!("{coords:?} is not a point of the extended plane")))
    }

    /// `sign · φ`-action: coordinate `j` moves to `phi(j)`, negated when
    /// `sign = -1`.
    pub fn signed_action(&self, sign: i8, phi: &Permutation) -> Self {
        let coords = self.coords();
        let mut out = [ExtCoord::one(), ExtCoord::one(), ExtCoord::one()];
        for (j, c) in coords.iter().enumerate() {
            out[phi.apply(j)] = if sign > 0 { c.clone() } else { c.negate() };
        }
        Self::from_coords(out).expect("signed coordinate permutations preserve the extended plane")
    }

    /// Action of `p ∈ S_4` through the signed cross-ratio homomorphism.
    pub fn act(&self, p: &Permutation) -> Self {
        let phi = p.crossratio_hom().expect("callers pass elements of S_4");
        self.signed_action(p.sign(), &phi)
    }

    /// Pointwise sum in log form; `A + A = A`, finite plus infinite is refused.
    pub fn combine(&self, other: &Self) -> Result<Self, MoebiusError> {
        match (self, other) {
            (Self::Finite(x), Self::Finite(y)) => {
                let c = [0, 1, 2].map(|i| &x.components[i] * &y.components[i]);
                Ok(Self::Finite(MultiplicativeL4Value { components: c }))
            }
            (Self::Infinite(m), Self::Infinite(n)) if m == n => Ok(Self::Infinite(*m)),
            _ => Err(MoebiusError::IncompatibleSum),
        }
    }

    /// Scaling by a positive integer in log form.
    pub fn scale(&self, k: u32) -> Self {
        match self {
            Self::Finite(x) => {
                let c = [0, 1, 2].map(|i| num_traits::pow::Pow::pow(&x.components[i], k));
                Self::Finite(MultiplicativeL4Value { components: c })
            }
            Self::Infinite(m) => Self::Infinite(*m),
        }
    }

    pub fn log_form(&self) -> [f64; 3] {
        let c = self.coords();
        [0, 1, 2].map(|i| c[i].log())
    }
}

impl fmt::Debug for ExtendedL4Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v:?}"),
            Self::Infinite(m) => write!(f, "{}", m.name()),
        }
    }
}

/// Decides `Σ c_j · ln(v_j) = 0` exactly, i.e. `Π v_j^{c_j} = 1`.
pub fn log_combination_vanishes(coeffs: &[BigInt], values: &[Rational]) -> bool {
    let mut lhs = Rational::one();
    let mut rhs = Rational::one();
    for (c, v) in coeffs.iter().zip(values) {
        if c.is_zero() {
            continue;
        }
        let e = c.magnitude().to_u32().expect("functional coefficients are small");
        let term = num_traits::pow::Pow::pow(v, e);
        if c.is_positive() {
            lhs *= term;
        } else {
            rhs *= term;
        }
    }
    lhs == rhs
}
