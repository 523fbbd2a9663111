//! Closed-form decomposition, inertia and Frobenius data at a place of `K`.

use serde::Serialize;

use crate::algebra::FieldElement;
use crate::error::{Error, Result};
use crate::function_field::{Place, PlaceRepr};

use super::cover::{Component, Cover};
use super::group::{GroupElement, Subset};

/// Splitting of a place `P` of `K` in `M`. Since `G` is abelian all of
/// this is independent of the place `Q` chosen above `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusData {
    pub place: Place,
    pub ramification_index: u64,
    /// `[k_Q : k_P]`.
    pub residue_degree: u64,
    pub places_above: u64,
    /// `deg_k(Q) = deg P * residue_degree`.
    pub degree_above: u64,
    pub decomposition: Subset,
    pub inertia: Subset,
    /// The Frobenius coset `(Q, M/K)`, a coset of the inertia group.
    pub frobenius: Subset,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusDataRepr {
    pub place: PlaceRepr,
    pub place_label: String,
    pub e: u64,
    pub f: u64,
    pub places_above: u64,
    pub deg_q: u64,
    pub decomposition: Vec<GroupElement>,
    pub inertia: Vec<GroupElement>,
    pub frobenius: Vec<GroupElement>,
}

impl FrobeniusData {
    pub fn to_repr(&self) -> FrobeniusDataRepr {
        FrobeniusDataRepr {
            place: self.place.to_repr(),
            place_label: self.place.to_string(),
            e: self.ramification_index,
            f: self.residue_degree,
            places_above: self.places_above,
            deg_q: self.degree_above,
            decomposition: self.decomposition.iter().cloned().collect(),
            inertia: self.inertia.iter().cloned().collect(),
            frobenius: self.frobenius.iter().cloned().collect(),
        }
    }
}

/// Computes `e`, `f`, `D`, `I` and `(Q, M/K)` for `P`.
///
/// Kummer pieces are treated jointly: with `y_i^{n_i} = u_i pi^{v_i}`, tame
/// inertia acts on `y_i` through `zeta_{n_i}^{v_i}`, and a Frobenius fixing
/// a compatible system of roots of `pi` acts through `u_i(P)^{(Q-1)/n_i}`.
/// Artin-Schreier pieces are treated through their characters: those
/// unramified at `P` pin down the Frobenius via a trace.
pub fn splitting_data(cover: &Cover, place: &Place) -> Result<FrobeniusData> {
    let base = cover.base();
    let group = cover.group();
    let residue = place.residue_field(base)?;
    let deg = place.degree() as u64;
    let big_q = residue.order();

    let mut frob = group.identity();
    let mut inertia_gen = group.identity();
    let mut as_positions = Vec::new();
    for (i, component) in cover.components().iter().enumerate() {
        match component {
            Component::Kummer { n, f, .. } => {
                let v = f.valuation(place).expect("nonzero");
                inertia_gen.0[i] = v.rem_euclid(*n as i64) as u64;
                let u = f.unit_value(place, &residue)?;
                let chi = u.pow((big_q - 1) / *n as u128);
                frob.0[i] = discrete_log(&chi, &residue.embed(&cover.zeta(*n)), *n)?;
            }
            Component::ArtinSchreier { .. } => as_positions.push(i),
            Component::Constant { m, .. } => frob.0[i] = deg % m,
        }
    }
    let mut inertia_gens = vec![inertia_gen];

    if !as_positions.is_empty() {
        let p = base.characteristic();
        // characters unramified at P and their Frobenius values
        let mut unramified: Vec<(Vec<u64>, u64)> = Vec::new();
        for (c, g) in cover.as_characters() {
            if g.valuation(place).is_none_or(|v| v >= 0) {
                unramified.push((c.clone(), g.evaluate_in(place, &residue)?.trace()));
            }
        }
        let r = as_positions.len();
        let sub = super::group::AbelianGroup::new(vec![p; r]);
        let pairing = |c: &[u64], a: &[u64]| c.iter().zip(a).map(|(x, y)| x * y).sum::<u64>() % p;
        let mut solution = None;
        for a in sub.elements() {
            let in_coset = unramified.iter().all(|(c, t)| pairing(c, &a.0) == *t);
            let in_inertia = unramified.iter().all(|(c, _)| pairing(c, &a.0) == 0);
            if in_coset && solution.is_none() {
                solution = Some(a.clone());
            }
            if in_inertia {
                let mut g = group.identity();
                for (k, &i) in as_positions.iter().enumerate() {
                    g.0[i] = a.0[k];
                }
                inertia_gens.push(g);
            }
        }
        let a = solution.expect("the unramified characters form a subgroup with linear values");
        for (k, &i) in as_positions.iter().enumerate() {
            frob.0[i] = a.0[k];
        }
    }

    let inertia = group.span(&inertia_gens);
    let frobenius = group.coset(&frob, &inertia);
    inertia_gens.push(frob);
    let decomposition = group.span(&inertia_gens);
    let e = inertia.len() as u64;
    let f = decomposition.len() as u64 / e;
    Ok(FrobeniusData {
        place: place.clone(),
        ramification_index: e,
        residue_degree: f,
        places_above: group.order() / (e * f),
        degree_above: deg * f,
        decomposition,
        inertia,
        frobenius,
    })
}

/// The `j` in `0..n` with `zeta^j == chi`.
fn discrete_log(chi: &FieldElement, zeta: &FieldElement, n: u64) -> Result<u64> {
    let mut acc = FieldElement::one(zeta.field());
    for j in 0..n {
        if &acc == chi {
            return Ok(j);
        }
        acc = &acc * zeta;
    }
    Err(Error::BadResidueDegree {
        n,
        group_order: (zeta.field().order() - 1).to_string(),
    })
}
