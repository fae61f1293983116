//! Admissible 4- and 5-tuples.

use serde::Serialize;

use super::MoebiusError;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TupleClass {
    Regular,
    SingularAdmissible,
    Inadmissible,
}

impl TupleClass {
    pub fn is_admissible(self) -> bool {
        self != TupleClass::Inadmissible
    }
}

fn coincident_pairs<P: PartialEq>(t: &[P]) -> usize {
    (0..t.len())
        .flat_map(|i| (i + 1..t.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| t[i] == t[j])
        .count()
}

/// Classifies a 4- or 5-tuple.
///
/// A 4-tuple is admissible when at most one pair of its entries coincide; a
/// 5-tuple is admissible when each of its five 4-faces is.
pub fn classify_tuple<P: PartialEq + Clone>(t: &[P]) -> Result<TupleClass, MoebiusError> {
    match t.len() {
        4 => Ok(match coincident_pairs(t) {
            0 => TupleClass::Regular,
            1 => TupleClass::SingularAdmissible,
            _ => TupleClass::Inadmissible,
        }),
        5 => {
            for i in 0..5 {
                if !classify_tuple(&face(t, i))?.is_admissible() {
                    return Ok(TupleClass::Inadmissible);
                }
            }
            Ok(if coincident_pairs(t) == 0 {
                TupleClass::Regular
            } else {
                TupleClass::SingularAdmissible
            })
        }
        n => Err(MoebiusError::UnsupportedTupleLength(n)),
    }
}

/// `t` with entry `i` removed.
pub fn face<P: Clone>(t: &[P], i: usize) -> Vec<P> {
    t.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, x)| x.clone())
        .collect()
}

/// `p · t`: entry `i` of `t` moves to position `p(i)`.
pub fn act_on_tuple<P: Clone>(p: &Permutation, t: &[P]) -> Vec<P> {
    assert_eq!(p.degree(), t.len(), "permutation degree must match tuple length");
    let mut out: Vec<Option<P>> = vec![None; t.len()];
    for (i, x) in t.iter().enumerate() {
        out[p.apply(i)] = Some(x.clone());
    }
    out.into_iter().map(|x| x.expect("bijective")).collect()
}

/// The permutation `p` with `p · from = to`, for tuples of distinct entries.
pub fn permutation_between<P: PartialEq>(from: &[P], to: &[P]) -> Option<Permutation> {
    let images: Option<Vec<usize>> = from.iter().map(|x| to.iter().position(|y| y == x)).collect();
    Permutation::from_images(&images?).ok()
}
