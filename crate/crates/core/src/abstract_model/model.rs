//! Abstract normal extensions: a group `G`, a normal subgroup `N` with
//! cyclic quotient generated by a Frobenius image, and places described by
//! one chosen place `Q` above them. The other places above are the
//! translates `gQ`, with `(gQ, M/K) = g (Q, M/K) g^-1`.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::group::{Elem, ElemSet, FiniteGroup};

/// Exact values of `(P, M)(gamma)`.
pub type Measure = Ratio<u64>;

/// `#(C ∩ Γ) / (#Γ #C)` for a Frobenius coset `C` and a conjugacy class `Γ`.
pub fn measure_of(coset: &ElemSet, class: &ElemSet) -> Measure {
    let hits = coset.intersection(class).count() as u64;
    Measure::new(hits, (class.len() * coset.len()) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractPlace {
    /// `deg_k(P)`.
    pub degree: u64,
    pub decomposition: ElemSet,
    pub inertia: ElemSet,
    /// `gamma_0` with `(Q, M/K) = gamma_0 I`.
    pub frobenius_rep: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractModel {
    pub group: FiniteGroup,
    pub geometric: ElemSet,
    /// A lift of the Frobenius generator of `G/N`.
    pub frobenius_lift: Elem,
    pub places: Vec<AbstractPlace>,
}

/// The data of one place `gQ` in the orbit above `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPlace {
    pub translate: Elem,
    pub decomposition: ElemSet,
    pub inertia: ElemSet,
    pub frobenius: ElemSet,
}

/// Direct and closed-form counts of places above `P` whose Frobenius
/// coset contains `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PsiCount {
    pub direct: u64,
    pub formula: u64,
}

impl AbstractModel {
    pub fn h(&self) -> u64 {
        (self.group.order() / self.geometric.len()) as u64
    }

    /// `(Q, M/K)` for the chosen `Q` above place `i`.
    pub fn frobenius(&self, i: usize) -> ElemSet {
        let place = &self.places[i];
        self.group.left_coset(place.frobenius_rep, &place.inertia)
    }

    /// `deg_k(Q) = deg_k(P) #D / #I`.
    pub fn degree_above(&self, i: usize) -> u64 {
        let place = &self.places[i];
        place.degree * (place.decomposition.len() / place.inertia.len()) as u64
    }

    /// All places above place `i`, one per left coset `gD`.
    pub fn orbit(&self, i: usize) -> Vec<OrbitPlace> {
        let g = &self.group;
        let place = &self.places[i];
        let frob = self.frobenius(i);
        g.coset_representatives(&place.decomposition)
            .into_iter()
            .map(|t| OrbitPlace {
                translate: t,
                decomposition: g.conjugate_set(t, &place.decomposition),
                inertia: g.conjugate_set(t, &place.inertia),
                frobenius: g.conjugate_set(t, &frob),
            })
            .collect()
    }

    pub fn measure(&self, i: usize, gamma: Elem) -> Result<Measure> {
        self.check_element(gamma)?;
        Ok(measure_of(
            &self.frobenius(i),
            &self.group.conjugacy_class(gamma),
        ))
    }

    /// Counts the places `gQ` above a degree-one place with
    /// `gamma in (gQ, M/K)`, directly and by `#G #(C ∩ Γ) / (#Γ #D)`.
    pub fn psi_fiber_count(&self, i: usize, gamma: Elem) -> Result<PsiCount> {
        self.check_element(gamma)?;
        let place = &self.places[i];
        if place.degree != 1 {
            return Err(Error::NotRational(format!(
                "abstract place {i} has degree {}",
                place.degree
            )));
        }
        let direct = self
            .orbit(i)
            .iter()
            .filter(|q| q.frobenius.contains(&gamma))
            .count() as u64;
        let class = self.group.conjugacy_class(gamma);
        let hits = self.frobenius(i).intersection(&class).count();
        let num = self.group.order() * hits;
        let den = class.len() * place.decomposition.len();
        if !num.is_multiple_of(den) || (num / den) as u64 != direct {
            return Err(Error::FormulaMismatch {
                direct: direct.to_string(),
                formula: format!("{num}/{den}"),
            });
        }
        Ok(PsiCount {
            direct,
            formula: (num / den) as u64,
        })
    }

    /// `sum over Q above P with gamma in (Q, M/K) of deg_k(Q) / h`, which
    /// should equal `#N (P, M)(gamma)` for a degree-one place.
    pub fn phi_fiber_count(&self, i: usize, gamma: Elem) -> Result<Ratio<u64>> {
        self.check_element(gamma)?;
        let deg = self.degree_above(i);
        let hits = self
            .orbit(i)
            .iter()
            .filter(|q| q.frobenius.contains(&gamma))
            .count() as u64;
        Ok(Ratio::new(hits * deg, self.h()))
    }

    /// Over a finite field every element order divides the Steinitz number
    /// of the absolute Galois group, so the vanishing criterion for
    /// unramified places with `ord(gamma)` not dividing it never applies.
    pub fn order_obstruction(&self, _gamma: Elem) -> bool {
        false
    }

    fn check_element(&self, gamma: Elem) -> Result<()> {
        if gamma < self.group.order() {
            Ok(())
        } else {
            Err(Error::ElementNotInGroup(gamma.to_string()))
        }
    }

    /// Re-verifies every structural invariant, including the conjugation
    /// rule on the orbit and orbit-stabilizer.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let bad = |msg: String| Err(Error::Config(format!("abstract model: {msg}")));
        let all: ElemSet = g.elements().collect();
        if !g.is_subgroup(&self.geometric) || !g.normalizes(&all, &self.geometric) {
            return bad("N is not a normal subgroup".into());
        }
        let mut gens: Vec<Elem> = self.geometric.iter().copied().collect();
        gens.push(self.frobenius_lift);
        if g.span(&gens).len() != g.order() {
            return bad("G/N is not generated by the Frobenius".into());
        }
        for (i, place) in self.places.iter().enumerate() {
            let (d, inertia) = (&place.decomposition, &place.inertia);
            if place.degree == 0 {
                return bad(format!("place {i} has degree 0"));
            }
            if !g.is_subgroup(d) || !g.is_subgroup(inertia) || !inertia.is_subset(d) {
                return bad(format!("place {i}: need subgroups I <= D"));
            }
            if !g.normalizes(d, inertia) {
                return bad(format!("place {i}: I is not normal in D"));
            }
            let mut gens: Vec<Elem> = inertia.iter().copied().collect();
            gens.push(place.frobenius_rep);
            if !d.contains(&place.frobenius_rep) || &g.span(&gens) != d {
                return bad(format!("place {i}: D/I is not generated by the Frobenius"));
            }
            if !inertia.is_subset(&self.geometric) {
                return bad(format!("place {i}: inertia acts on constants"));
            }
            let expected = g.pow(self.frobenius_lift, place.degree);
            let quotient = g.left_coset(expected, &self.geometric);
            if !quotient.contains(&place.frobenius_rep) {
                return bad(format!(
                    "place {i}: Frobenius does not restrict to F^deg P on constants"
                ));
            }
            let orbit = self.orbit(i);
            if orbit.len() * d.len() != g.order() {
                return bad(format!("place {i}: orbit-stabilizer fails"));
            }
            let frob = self.frobenius(i);
            for q in &orbit {
                // the same place recomputed from another element of gD
                for &h in d.iter() {
                    let t = g.mul(q.translate, h);
                    if g.conjugate_set(t, &frob) != q.frobenius {
                        return bad(format!("place {i}: Frobenius of gQ depends on g"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let mut model: AbstractModel =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        model.group = model.group.revalidated()?;
        model.validate()?;
        Ok(model)
    }
}

/// Samples a valid model: `N` normal with cyclic quotient and a generator
/// `F` of it; then for each place an element `gamma_0` of `F^deg N`, an
/// inertia group `I <= N` normalized by `gamma_0`, and `D = I <gamma_0>`.
/// The first place has degree one.
pub fn random_abstract_model(group: &FiniteGroup, seed: u64) -> AbstractModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = group;
    let all: ElemSet = g.elements().collect();
    let subgroups = g.subgroups();

    let generates = |sub: &ElemSet, x: Elem| {
        let mut gens: Vec<Elem> = sub.iter().copied().collect();
        gens.push(x);
        g.span(&gens).len() == g.order()
    };
    let choices: Vec<(&ElemSet, Vec<Elem>)> = subgroups
        .iter()
        .filter(|n| g.normalizes(&all, n))
        .map(|n| {
            (
                n,
                g.elements()
                    .filter(|&x| generates(n, x))
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, gens)| !gens.is_empty())
        .collect();
    let (geometric, lifts) = choices.choose(&mut rng).expect("N = G always qualifies");
    let geometric = (*geometric).clone();
    let frobenius_lift = *lifts.choose(&mut rng).expect("nonempty");

    let count = rng.gen_range(1..=3);
    let places = (0..count)
        .map(|i| {
            let degree = if i == 0 { 1 } else { rng.gen_range(1..=3) };
            let target = g.left_coset(g.pow(frobenius_lift, degree), &geometric);
            let target: Vec<Elem> = target.into_iter().collect();
            let gamma0 = *target.choose(&mut rng).expect("cosets are nonempty");
            let inertia_choices: Vec<&ElemSet> = subgroups
                .iter()
                .filter(|i| i.is_subset(&geometric) && &g.conjugate_set(gamma0, i) == *i)
                .collect();
            let inertia = (*inertia_choices
                .choose(&mut rng)
                .expect("trivial group qualifies"))
            .clone();
            let mut gens: Vec<Elem> = inertia.iter().copied().collect();
            gens.push(gamma0);
            AbstractPlace {
                degree,
                decomposition: g.span(&gens),
                inertia,
                frobenius_rep: gamma0,
            }
        })
        .collect();
    AbstractModel {
        group: g.clone(),
        geometric,
        frobenius_lift,
        places,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_model(d: &[&str], i: &[&str], rep: &str) -> AbstractModel {
        let g = FiniteGroup::library("S3").unwrap();
        let set = |xs: &[&str]| xs.iter().map(|x| g.find(x).unwrap()).collect::<ElemSet>();
        AbstractModel {
            geometric: g.elements().collect(),
            frobenius_lift: 0,
            places: vec![AbstractPlace {
                degree: 1,
                decomposition: set(d),
                inertia: set(i),
                frobenius_rep: g.find(rep).unwrap(),
            }],
            group: g,
        }
    }

    #[test]
    fn s3_ramified_measure() {
        let all = ["()", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"];
        let model = s3_model(&all, &["()", "(1 2 3)", "(1 3 2)"], "(1 2)");
        model.validate().unwrap();
        let t = model.group.find("(1 2)").unwrap();
        assert_eq!(model.measure(0, t).unwrap(), Measure::new(1, 3));
        assert_eq!(model.measure(0, 0).unwrap(), Measure::new(0, 1));
    }

    #[test]
    fn s3_unramified_psi() {
        let model = s3_model(&["()", "(1 2)"], &["()"], "(1 2)");
        model.validate().unwrap();
        let t = model.group.find("(1 2)").unwrap();
        assert_eq!(
            model.psi_fiber_count(0, t).unwrap(),
            PsiCount {
                direct: 1,
                formula: 1
            }
        );
        let c = model.group.find("(1 2 3)").unwrap();
        assert_eq!(
            model.psi_fiber_count(0, c).unwrap(),
            PsiCount {
                direct: 0,
                formula: 0
            }
        );
    }

    #[test]
    fn z2_inert() {
        let g = FiniteGroup::library("Z2").unwrap();
        let model = AbstractModel {
            geometric: g.elements().collect(),
            frobenius_lift: 0,
            places: vec![AbstractPlace {
                degree: 1,
                decomposition: g.elements().collect(),
                inertia: [0].into_iter().collect(),
                frobenius_rep: 1,
            }],
            group: g,
        };
        model.validate().unwrap();
        assert_eq!(model.psi_fiber_count(0, 1).unwrap().direct, 1);
        assert_eq!(model.phi_fiber_count(0, 1).unwrap(), Ratio::from_integer(2));
    }

    #[test]
    fn random_models_are_valid_and_roundtrip() {
        for name in super::super::group::LIBRARY {
            let g = FiniteGroup::library(name).unwrap();
            for seed in 0..20 {
                let model = random_abstract_model(&g, seed);
                model.validate().unwrap();
                let back = AbstractModel::from_json(&model.to_json()).unwrap();
                assert_eq!(back, model);
            }
        }
    }

    #[test]
    fn broken_models_are_rejected() {
        let mut model = s3_model(&["()", "(1 2)"], &["()"], "(1 2)");
        model.places[0].frobenius_rep = model.group.find("(1 3)").unwrap();
        assert!(model.validate().is_err());
        let non_normal = s3_model(
            &["()", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"],
            &["()", "(1 2)"],
            "(1 2 3)",
        );
        assert!(non_normal.validate().is_err());
    }
}
