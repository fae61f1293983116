//! Published reference values, kept verbatim so generated results can be
//! diffed against them.

use crate::charfns::{all_char_fns, char_fn, parse_expression, Edge};
use crate::linalg::{rat, Rational};
use crate::rep::PrimeCharacter;

/// Character `ψ` of `η_5` over the classes `1^5, 21^3, 2^21, 31^2, 32, 41, 5`.
pub const PSI: [i64; 7] = [15, -3, 3, 0, 0, -1, 0];

/// Irreducible constituents of `ψ`, each with multiplicity one.
pub const PSI_CONSTITUENTS: [PrimeCharacter; 4] = [
    PrimeCharacter::P32,
    PrimeCharacter::P221,
    PrimeCharacter::P2111,
    PrimeCharacter::Sign,
];

/// The ten characteristic functions, in the order they are listed.
pub const CHAR_FNS: [(&str, &str); 10] = [
    ("25", "-c1-b3+b4"),
    ("35", "b1-b2-a4"),
    ("15", "-c2+c3-c4"),
    ("45", "-a1+a2-a3"),
    ("12", "-a3+a4-a5"),
    ("13", "-a2-b4+b5"),
    ("14", "b2-b3-c5"),
    ("23", "-a1+c4-c5"),
    ("24", "b1+c3+b5"),
    ("34", "-c1+c2-a5"),
];

/// `n_25` as a 5×3 matrix.
pub const N25: [[i64; 3]; 5] = [[1, 1, -2], [0, 0, 0], [1, -2, 1], [-1, 2, -1], [0, 0, 0]];

/// The transposition used for the trace computation and the edges whose
/// normals it negates.
pub const TRANSPOSITION: &str = "15342";
pub const NEGATED_EDGES: [&str; 4] = ["25", "13", "14", "34"];

pub fn n25_flat() -> Vec<Rational> {
    N25.iter().flatten().map(|&x| rat(x)).collect()
}

/// One line of the comparison between generated and reference functions.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CharFnDiff {
    pub edge: String,
    pub expected: String,
    pub generated: String,
}

/// Entries where the generated `r_λ` differs from the reference list. Empty
/// when everything matches, coefficients and signs included.
pub fn char_fn_diff() -> Vec<CharFnDiff> {
    let mut out = Vec::new();
    for (edge, expected) in CHAR_FNS {
        let generated = char_fn(Edge::parse(edge).expect("static edge"));
        let matches = parse_expression(expected).is_ok_and(|c| &c == generated.coeffs());
        if !matches {
            out.push(CharFnDiff {
                edge: edge.to_owned(),
                expected: expected.to_owned(),
                generated: generated.expression(),
            });
        }
    }
    debug_assert_eq!(all_char_fns().len(), CHAR_FNS.len());
    out
}
