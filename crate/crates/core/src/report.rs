//! Serializable reports shared by the command-line tool and the C API.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::charfns::{act_on_charfn, char_fn, signed_orbit, CharFnError, Edge};
use crate::linalg::format_rational;
use crate::perm::Permutation;
use crate::reference::{char_fn_diff, CharFnDiff, CHAR_FNS, PSI, PSI_CONSTITUENTS};
use crate::rep::{
    char_inner, character, decompose, isotypic_subspace, PrimeCharacter, RepError, S5_CLASSES, S5_CLASS_SIZES,
};

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub name: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub classes: Vec<&'static str>,
    pub class_sizes: Vec<u32>,
    pub character_table: Vec<CharacterRow>,
    pub psi: Vec<String>,
    pub inner_products: BTreeMap<PrimeCharacter, String>,
    pub multiplicities: BTreeMap<PrimeCharacter, u32>,
    /// Dimension of each non-zero isotypic component, computed from the
    /// projector images.
    pub component_dims: BTreeMap<PrimeCharacter, usize>,
    pub dimension_split: String,
    pub pass: bool,
}

pub fn decompose_report() -> Result<DecomposeReport, RepError> {
    let psi = character(5)?;
    let multiplicities = decompose(&psi)?;
    let inner_products = PrimeCharacter::ALL
        .into_iter()
        .map(|l| (l, format_rational(&char_inner(&psi, &l.character()))))
        .collect();
    let component_dims: BTreeMap<PrimeCharacter, usize> = multiplicities
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(&l, _)| (l, isotypic_subspace(l).dim()))
        .collect();
    let parts: Vec<String> = PrimeCharacter::ALL
        .into_iter()
        .filter_map(|l| component_dims.get(&l).map(|d| d.to_string()))
        .collect();
    let total: usize = component_dims.values().sum();
    let psi_ints: Vec<String> = psi.values().iter().map(format_rational).collect();
    let expected_psi: Vec<String> = PSI.iter().map(|x| x.to_string()).collect();
    let constituents_match = PrimeCharacter::ALL
        .into_iter()
        .all(|l| multiplicities[&l] == u32::from(PSI_CONSTITUENTS.contains(&l)));
    let dims_match = component_dims.iter().all(|(l, &d)| d as i64 == l.dim());
    Ok(DecomposeReport {
        classes: S5_CLASSES.to_vec(),
        class_sizes: S5_CLASS_SIZES.to_vec(),
        character_table: PrimeCharacter::ALL
            .into_iter()
            .map(|l| CharacterRow {
                name: l.name().to_owned(),
                values: l.values().to_vec(),
            })
            .collect(),
        pass: psi_ints == expected_psi && constituents_match && dims_match && total == 15,
        psi: psi_ints,
        inner_products,
        multiplicities,
        component_dims,
        dimension_split: format!("{total} = {}", parts.join(" + ")),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratedCharFn {
    pub edge: String,
    pub expression: String,
}

/// `s · r_λ = sign · r_μ` for an adjacent transposition `s`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitStep {
    pub generator: String,
    pub sign: i8,
    pub image: Edge,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub edge: Edge,
    pub steps: Vec<OrbitStep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharFnsReport {
    pub functions: Vec<GeneratedCharFn>,
    pub diff: Vec<CharFnDiff>,
    pub orbit_size: usize,
    pub transitive: bool,
    /// Whether the transposition of the two vertices of `λ` negates `r_λ`
    /// for every `λ`.
    pub endpoint_flips: bool,
    pub orbit_table: Vec<OrbitRow>,
    pub pass: bool,
}

pub fn charfns_report() -> Result<CharFnsReport, CharFnError> {
    let functions = CHAR_FNS
        .iter()
        .map(|(edge, _)| {
            let e = Edge::parse(edge)?;
            Ok(GeneratedCharFn {
                edge: e.to_string(),
                expression: char_fn(e).expression(),
            })
        })
        .collect::<Result<Vec<_>, CharFnError>>()?;
    let orbit = signed_orbit(1, Edge::parse("25")?)?;
    let everything: std::collections::BTreeSet<(i8, Edge)> =
        Edge::all().into_iter().flat_map(|e| [(1, e), (-1, e)]).collect();
    let mut endpoint_flips = true;
    for e in Edge::all() {
        let (i, j) = e.vertices();
        let t = Permutation::transposition(5, i, j).expect("valid transposition");
        endpoint_flips &= act_on_charfn(&t, e)? == (-1, e);
    }
    let generators: Vec<Permutation> = (0..4)
        .map(|k| Permutation::transposition(5, k, k + 1).expect("valid transposition"))
        .collect();
    let orbit_table = Edge::all()
        .into_iter()
        .map(|e| {
            let steps = generators
                .iter()
                .map(|g| {
                    let (sign, image) = act_on_charfn(g, e)?;
                    Ok(OrbitStep {
                        generator: g.to_string(),
                        sign,
                        image,
                    })
                })
                .collect::<Result<_, CharFnError>>()?;
            Ok(OrbitRow { edge: e, steps })
        })
        .collect::<Result<Vec<_>, CharFnError>>()?;
    let diff = char_fn_diff();
    let transitive = orbit == everything;
    Ok(CharFnsReport {
        pass: diff.is_empty() && orbit.len() == 20 && transitive && endpoint_flips,
        functions,
        diff,
        orbit_size: orbit.len(),
        transitive,
        endpoint_flips,
        orbit_table,
    })
}
