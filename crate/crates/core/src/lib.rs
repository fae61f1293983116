//! Exact symmetry computations for cross-ratios.
//!
//! The crate builds the canonical signed-permutation representations `η_n`
//! of the symmetric groups on `V^n` (dimension `n!/8`), decomposes `η_5` into
//! irreducible components, generates the ten characteristic functions `r_λ`
//! and checks, in exact rational arithmetic, whether a sub-Möbius structure
//! is Möbius by testing its codifferential against the `χ^{32}` component.

pub mod charfns;
pub mod linalg;
pub mod moebius;
pub mod perm;
pub mod reference;
pub mod rep;
pub mod report;
