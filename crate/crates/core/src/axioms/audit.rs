use std::fmt;

use serde::Serialize;

use super::{Axiom, AxiomReport};
use crate::integrals::{Property, TransformFn};
use crate::scalar;
use crate::setfunc::Interval;

/// A class of functions whose characterizing identities can be read off an audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SignedChoquet,
    SymmetricSignedChoquet,
    SignedQuasiChoquet,
    SymmetricQuasiChoquet,
    QuasiSugeno,
    Sugeno,
    ComonotonicallyModular,
    OutsideComonotonicallyModular,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::SignedChoquet => "signed Choquet-consistent",
            Family::SymmetricSignedChoquet => "symmetric signed Choquet-consistent",
            Family::SignedQuasiChoquet => "signed quasi-Choquet-consistent",
            Family::SymmetricQuasiChoquet => "symmetric signed quasi-Choquet-consistent",
            Family::QuasiSugeno => "quasi-Sugeno-consistent",
            Family::Sugeno => "Sugeno-consistent",
            Family::ComonotonicallyModular => "comonotonically modular",
            Family::OutsideComonotonicallyModular => "outside comonotonically modular class",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A family whose hypotheses all hold on the audited grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub family: Family,
    /// Axioms whose verdicts decided the classification.
    pub evidence: Vec<Axiom>,
}

/// Side facts some characterizations need besides axiom verdicts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Facts {
    /// `f` takes at least two values on the grid.
    pub nonconstant: bool,
    /// Some `f(1_S) != 0`; `None` when `1` is outside the box.
    pub unit_indicator_nonzero: Option<bool>,
    /// Some `f(-1_S) != 0`; `None` when `-1` is outside the box.
    pub negative_indicator_nonzero: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub reports: Vec<AxiomReport>,
    pub facts: Facts,
    pub classifications: Vec<Classification>,
}

impl Audit {
    pub fn classify(reports: Vec<AxiomReport>, facts: Facts, bounds: &Interval, aux: Option<&TransformFn>) -> Audit {
        let classifications = classify(&reports, bounds, aux);
        Audit { reports, facts, classifications }
    }

    pub fn report(&self, axiom: Axiom) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| r.axiom == axiom)
    }

    pub fn passed(&self, axiom: Axiom) -> Option<bool> {
        self.report(axiom).map(AxiomReport::passed)
    }

    pub fn is(&self, family: Family) -> bool {
        self.classifications.iter().any(|c| c.family == family)
    }

    pub fn summary(&self) -> Vec<String> {
        if self.classifications.is_empty() {
            return vec!["no characterization is fully satisfied on this grid".to_string()];
        }
        self.classifications
            .iter()
            .map(|c| {
                let ids: Vec<&str> = c.evidence.iter().map(|a| a.id()).collect();
                format!("{} on this grid ({})", c.family, ids.join(", "))
            })
            .collect()
    }
}

fn classify(reports: &[AxiomReport], bounds: &Interval, aux: Option<&TransformFn>) -> Vec<Classification> {
    let verdict = |a: Axiom| reports.iter().find(|r| r.axiom == a).map(AxiomReport::passed);
    let pass = |a: Axiom| verdict(a) == Some(true);
    let fail = |a: Axiom| verdict(a) == Some(false);
    let all = |axioms: &[Axiom]| axioms.iter().all(|&a| pass(a));

    let zero = scalar::zero();
    let one = scalar::one();
    let neg_one = -scalar::one();
    let covers_sym = bounds.covers(&neg_one, &one);
    let nonnegative_unit = bounds.covers(&zero, &one) && bounds.lo() >= &zero;
    let nonpositive_unit = bounds.covers(&neg_one, &zero) && bounds.hi() <= &zero;
    let centered_sym = bounds.is_centered() && covers_sym;
    let transform_has = |props: &[Property]| aux.is_some_and(|phi| props.iter().all(|&p| phi.has(p)));

    let mut out = Vec::new();
    let mut push = |family: Family, evidence: Vec<Axiom>| out.push(Classification { family, evidence });

    if nonnegative_unit || covers_sym {
        let mut needed = vec![Axiom::ComonoModular, Axiom::VanishesAtOrigin, Axiom::SignHomogRays];
        if covers_sym {
            needed.push(Axiom::DualShift);
        }
        if all(&needed) {
            push(Family::SignedChoquet, needed);
        }
    }
    if centered_sym {
        let needed = vec![Axiom::ComonoModular, Axiom::FullHomogRays];
        if all(&needed) {
            push(Family::SymmetricSignedChoquet, needed);
        }
    }
    if (nonnegative_unit || nonpositive_unit) && transform_has(&[Property::Nondecreasing, Property::VanishesAtZero]) {
        let invariance = if nonnegative_unit { Axiom::InvarHorizMinDiff } else { Axiom::InvarHorizMaxDiff };
        let structural = if pass(Axiom::ComonoModular) { Axiom::ComonoModular } else { invariance };
        let needed = vec![Axiom::VanishesAtOrigin, structural, Axiom::QuasiHomogRays];
        if all(&needed) {
            push(Family::SignedQuasiChoquet, needed);
        }
    }
    if centered_sym && transform_has(&[Property::Nondecreasing, Property::Odd]) {
        let needed = vec![Axiom::VanishesAtOrigin, Axiom::ComonoModular, Axiom::QuasiFullHomogRays];
        if all(&needed) {
            push(Family::SymmetricQuasiChoquet, needed);
        }
    }

    let quasi_sugeno = [
        vec![Axiom::ComonoMaxitive, Axiom::ComonoMinitive],
        vec![Axiom::Nondecreasing, Axiom::WeakMaxHomog, Axiom::WeakMinHomog],
        vec![Axiom::ComonoModular, Axiom::Nondecreasing, Axiom::WeakMaxHomog],
        vec![Axiom::ComonoModular, Axiom::Nondecreasing, Axiom::WeakMinHomog],
    ]
    .into_iter()
    .find(|set| all(set));
    if let Some(evidence) = quasi_sugeno {
        if pass(Axiom::Idempotent) {
            let mut sugeno = evidence.clone();
            sugeno.push(Axiom::Idempotent);
            push(Family::QuasiSugeno, evidence);
            push(Family::Sugeno, sugeno);
        } else {
            push(Family::QuasiSugeno, evidence);
        }
    }

    if pass(Axiom::ComonoModular) {
        push(Family::ComonotonicallyModular, vec![Axiom::ComonoModular]);
    }
    if fail(Axiom::ComonoModular) {
        push(Family::OutsideComonotonicallyModular, vec![Axiom::ComonoModular]);
    }
    out
}
