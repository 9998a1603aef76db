//! Canonical representations recovered from black-box functions.
//!
//! - [`build_separation`]: the additive form of a comonotonically modular function.
//! - [`build_normal_form`]: max-min normal forms of nondecreasing functions.
//! - `fit_*`: capacities (and transforms) of Choquet-type integrals.
//! - [`factorize_quasi_sugeno`]: the `μ`/`φ` factorization of a quasi-Sugeno integral.
//!
//! Every fit first checks the characterizing identities on the grid and
//! refuses with a witness when one fails. A returned representation has
//! always been re-evaluated against `f` on the whole grid.

mod normal_form;
mod separation;

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use normal_form::{build_normal_form, eval_normal_form, NormalForm, NormalMode};
pub use separation::{build_separation, eval_separation, SeparationForm};

use crate::axioms::{Auditor, Axiom, BlackBox, GridSpec, Operands, Witness};
use crate::comono::{indicator, ray, IndicatorKind, Tuple};
use crate::error::{Error, Result};
use crate::integrals::{choquet, quasi_choquet, symmetric_choquet, Property, TransformFn};
use crate::scalar::{self, Scalar};
use crate::setfunc::{Interval, SetFunction, Subset};

/// What a fit could not establish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// An identity failed on the grid.
    Axiom(Axiom),
    /// The box does not satisfy the characterization's hypotheses.
    Domain,
    /// No indicator `±1_S` has a nonzero value.
    NonzeroIndicator,
    /// The extracted transform is not nondecreasing.
    TransformNondecreasing,
    /// A value of `f` falls outside the codomain.
    Codomain,
    /// The representation does not reproduce `f` at some grid point.
    Regeneration,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Axiom(axiom) => f.write_str(axiom.id()),
            Condition::Domain => f.write_str("domain"),
            Condition::NonzeroIndicator => f.write_str("nonzero_indicator"),
            Condition::TransformNondecreasing => f.write_str("transform_nondecreasing"),
            Condition::Codomain => f.write_str("codomain"),
            Condition::Regeneration => f.write_str("regeneration"),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refusal {
    pub condition: Condition,
    pub witness: Option<Witness>,
    pub detail: String,
}

impl Refusal {
    fn new(condition: Condition, witness: Option<Witness>, detail: impl Into<String>) -> Refusal {
        Refusal { condition, witness, detail: detail.into() }
    }
}

/// Either a representation or the reason none was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fit<T> {
    Fitted(T),
    Refused(Box<Refusal>),
}

impl<T> Fit<T> {
    pub fn fitted(self) -> Option<T> {
        match self {
            Fit::Fitted(t) => Some(t),
            Fit::Refused(_) => None,
        }
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            Fit::Fitted(_) => None,
            Fit::Refused(r) => Some(r),
        }
    }

    pub fn is_fitted(&self) -> bool {
        matches!(self, Fit::Fitted(_))
    }
}

// Returns early with a refusal.
macro_rules! refuse_if {
    ($refusal:expr) => {
        if let Some(refusal) = $refusal {
            return Ok(Fit::Refused(Box::new(refusal)));
        }
    };
}

fn require(auditor: &Auditor, axiom: Axiom, aux: Option<&TransformFn>) -> Result<Option<Refusal>> {
    let report = auditor.check(axiom, aux)?;
    Ok(report.witness.map(|witness| {
        Refusal::new(Condition::Axiom(axiom), Some(witness), format!("{} fails on the grid", axiom.identity()))
    }))
}

/// Compares `model` with the sampled values of `f` at every grid point.
fn regenerate<M>(auditor: &Auditor, model: M) -> Result<Option<Refusal>>
where
    M: Fn(&Tuple) -> Result<Scalar> + Sync,
{
    let grid = auditor.grid();
    let sampled = auditor.sampled();
    let outcomes: Vec<Result<Option<Witness>>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let x = grid.point(i);
            let value = model(&x)?;
            Ok((value != sampled[i]).then(|| Witness {
                operands: Operands::Point { x },
                lhs: sampled[i].clone(),
                rhs: value,
            }))
        })
        .collect();
    for outcome in outcomes {
        if let Some(witness) = outcome? {
            return Ok(Some(Refusal::new(
                Condition::Regeneration,
                Some(witness),
                "the fitted representation differs from f at a grid point",
            )));
        }
    }
    Ok(None)
}

fn domain(detail: String) -> Fit<SetFunction> {
    Fit::Refused(Box::new(Refusal::new(Condition::Domain, None, detail)))
}

fn indicator_values(auditor: &Auditor, n: usize, kind: IndicatorKind) -> Result<Vec<Scalar>> {
    Subset::all(n).map(|set| auditor.eval(&indicator(n, set, &kind)?)).collect()
}

/// Recovers `v` with `f = C_v` on the grid, via `v(S) = f(1_S)`.
///
/// Checked conditions: comonotonic modularity, `f(0) = 0`, the signed ray
/// identity, and `f(1_{X∖S}) = f(1) + f(-1_S)` when `[-1, 1]` lies in the box.
pub fn fit_signed_choquet(f: &dyn BlackBox, spec: &GridSpec) -> Result<Fit<SetFunction>> {
    let bounds = &spec.bounds;
    let (zero, one) = (scalar::zero(), scalar::one());
    let symmetric = bounds.covers(&-one.clone(), &one);
    if !symmetric && !(bounds.covers(&zero, &one) && !bounds.lo().is_negative()) {
        return Ok(domain(format!("box {bounds} contains neither [-1, 1] nor [0, 1] within the nonnegative reals")));
    }
    let auditor = Auditor::new(f, spec)?;
    let mut conditions = vec![Axiom::ComonoModular, Axiom::VanishesAtOrigin, Axiom::SignHomogRays];
    if symmetric {
        conditions.push(Axiom::DualShift);
    }
    for axiom in conditions {
        refuse_if!(require(&auditor, axiom, None)?);
    }
    let n = f.arity();
    let v = SetFunction::from_table(n, indicator_values(&auditor, n, IndicatorKind::Unit)?)?;
    refuse_if!(regenerate(&auditor, |x| choquet(&v, x))?);
    Ok(Fit::Fitted(v))
}

/// Recovers `v` with `f = Č_v` on a centered box containing `[-1, 1]`.
pub fn fit_symmetric_choquet(f: &dyn BlackBox, spec: &GridSpec) -> Result<Fit<SetFunction>> {
    let bounds = &spec.bounds;
    let one = scalar::one();
    if !bounds.is_centered() || !bounds.covers(&-one.clone(), &one) {
        return Ok(domain(format!("box {bounds} is not centered at 0 with [-1, 1] inside")));
    }
    let auditor = Auditor::new(f, spec)?;
    for axiom in [Axiom::ComonoModular, Axiom::FullHomogRays] {
        refuse_if!(require(&auditor, axiom, None)?);
    }
    let n = f.arity();
    let v = SetFunction::from_table(n, indicator_values(&auditor, n, IndicatorKind::Unit)?)?;
    refuse_if!(regenerate(&auditor, |x| symmetric_choquet(&v, x))?);
    Ok(Fit::Fitted(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `[0, 1] ⊆ I ⊆ R₊`
    Positive,
    /// `[-1, 0] ⊆ I ⊆ R₋`
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiChoquetFit {
    pub capacity: SetFunction,
    pub transform: TransformFn,
    /// The lowest-bitmask `S₀` with `f(±1_{S₀}) != 0` that normalises `φ`.
    pub anchor: Subset,
}

/// Recovers `(v, φ)` with `f = C_v ∘ φ` on a one-signed box.
///
/// `φ` is normalised by `φ(±1) = ±1` through the anchor set, so
/// `φ(t) = f(t 1_{S₀}) / f(1_{S₀})` on the positive side and
/// `φ(t) = -f(t 1_{S₀}) / f(-1_{S₀})` on the negative side. The pair is
/// only unique up to reciprocal scaling; the regenerated `f` is what is
/// verified.
pub fn fit_quasi_choquet(f: &dyn BlackBox, spec: &GridSpec, side: Side) -> Result<Fit<QuasiChoquetFit>> {
    let bounds = &spec.bounds;
    let (zero, one) = (scalar::zero(), scalar::one());
    let shaped = match side {
        Side::Positive => bounds.lo().is_zero() && bounds.hi() >= &one,
        Side::Negative => bounds.hi().is_zero() && bounds.lo() <= &-one.clone(),
    };
    if !shaped {
        let detail = match side {
            Side::Positive => format!("box {bounds} is not of the form [0, b] with b >= 1"),
            Side::Negative => format!("box {bounds} is not of the form [a, 0] with a <= -1"),
        };
        return Ok(Fit::Refused(Box::new(Refusal::new(Condition::Domain, None, detail))));
    }
    let auditor = Auditor::new(f, spec)?;
    let invariance = match side {
        Side::Positive => Axiom::InvarHorizMinDiff,
        Side::Negative => Axiom::InvarHorizMaxDiff,
    };
    for axiom in [Axiom::VanishesAtOrigin, invariance] {
        refuse_if!(require(&auditor, axiom, None)?);
    }

    let n = f.arity();
    let unit = match side {
        Side::Positive => one.clone(),
        Side::Negative => -one.clone(),
    };
    let mut anchor = None;
    for set in Subset::all(n) {
        let value = auditor.eval(&ray(n, &unit, set))?;
        if !value.is_zero() {
            anchor = Some((set, value));
            break;
        }
    }
    let Some((anchor, anchor_value)) = anchor else {
        return Ok(Fit::Refused(Box::new(Refusal::new(
            Condition::NonzeroIndicator,
            None,
            format!("f({unit} 1_S) = 0 for every S"),
        ))));
    };

    let mut points = Vec::with_capacity(auditor.grid().axis().len());
    for t in auditor.grid().axis() {
        let value = auditor.eval(&ray(n, t, anchor))? / &anchor_value;
        points.push((t.clone(), if side == Side::Negative { -value } else { value }));
    }
    let transform = match TransformFn::piecewise(points, [Property::Nondecreasing, Property::VanishesAtZero]) {
        Ok(phi) => phi,
        Err(Error::PhiPropertyViolated { property, detail }) => {
            let condition = if property == Property::Nondecreasing {
                Condition::TransformNondecreasing
            } else {
                Condition::Axiom(Axiom::VanishesAtOrigin)
            };
            return Ok(Fit::Refused(Box::new(Refusal::new(condition, None, format!("extracted φ: {detail}")))));
        }
        Err(e) => return Err(e),
    };
    refuse_if!(require(&auditor, Axiom::QuasiHomogRays, Some(&transform))?);

    let values: Vec<Scalar> = match side {
        Side::Positive => indicator_values(&auditor, n, IndicatorKind::Unit)?,
        Side::Negative => {
            let negatives = indicator_values(&auditor, n, IndicatorKind::Signed)?;
            let top = -negatives[(1usize << n) - 1].clone();
            Subset::all(n).map(|set| &top + &negatives[set.complement(n).bits() as usize]).collect()
        }
    };
    let capacity = SetFunction::from_table(n, values)?;
    debug_assert_eq!(capacity.value(Subset::EMPTY), &zero);
    refuse_if!(regenerate(&auditor, |x| quasi_choquet(&capacity, &transform, x))?);
    Ok(Fit::Fitted(QuasiChoquetFit { capacity, transform, anchor }))
}

/// `f(x) = ⋁_S μ(S) ∧ ⋀_{i∈S} φ(x_i)` with `μ(S) = f(e_S)` and `φ(t) = f(t, .., t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiSugenoForm {
    n: usize,
    codomain: Interval,
    #[serde(serialize_with = "scalar::strings")]
    axis: Vec<Scalar>,
    #[serde(serialize_with = "scalar::strings")]
    mu_values: Vec<Scalar>,
    /// `φ` on the axis.
    #[serde(serialize_with = "scalar::strings")]
    phi: Vec<Scalar>,
}

/// The maximizing term behind one evaluation of a [`QuasiSugenoForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiSugenoDiagnostics {
    /// Lowest-bitmask `S*` maximizing `μ(S) ∧ ⋀_{i∈S} φ(x_i)`.
    pub s_star: Subset,
    #[serde(with = "scalar::as_string")]
    pub value: Scalar,
    /// `T = {j : φ(x_j) <= μ(S*) ∧ ⋀_{i∈S*} φ(x_i)}`.
    pub threshold_set: Subset,
}

impl QuasiSugenoForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self, set: Subset) -> &Scalar {
        &self.mu_values[set.bits() as usize]
    }

    pub fn mu_values(&self) -> &[Scalar] {
        &self.mu_values
    }

    pub fn axis(&self) -> &[Scalar] {
        &self.axis
    }

    pub fn phi(&self, t: &Scalar) -> Result<&Scalar> {
        let i = self.axis.binary_search(t).map_err(|_| Error::OffAxisPoint(t.to_string()))?;
        Ok(&self.phi[i])
    }

    fn term(&self, set: Subset, mapped: &[Scalar]) -> Scalar {
        set.indices().fold(self.mu(set).clone(), |acc, i| scalar::min(&acc, &mapped[i]))
    }

    fn mapped(&self, x: &Tuple) -> Result<Vec<Scalar>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        x.iter().map(|t| self.phi(t).cloned()).collect()
    }

    pub fn eval(&self, x: &Tuple) -> Result<Scalar> {
        Ok(self.diagnostics(x)?.value)
    }

    pub fn diagnostics(&self, x: &Tuple) -> Result<QuasiSugenoDiagnostics> {
        let mapped = self.mapped(x)?;
        let mut best: Option<(Subset, Scalar)> = None;
        for set in Subset::all(self.n) {
            let term = self.term(set, &mapped);
            if best.as_ref().is_none_or(|(_, value)| term > *value) {
                best = Some((set, term));
            }
        }
        let (s_star, value) = best.expect("at least the empty set");
        let threshold_set =
            (0..self.n).filter(|&j| mapped[j] <= value).fold(Subset::EMPTY, |acc, j| acc.insert_index(j));
        Ok(QuasiSugenoDiagnostics { s_star, value, threshold_set })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quasi-Sugeno form serializes")
    }
}

/// Factorizes `f: J^n → I` as a quasi-Sugeno integral.
///
/// Requires `f` nondecreasing with both weak homogeneity identities, and
/// every sampled value inside `codomain`.
pub fn factorize_quasi_sugeno(f: &dyn BlackBox, spec: &GridSpec, codomain: &Interval) -> Result<Fit<QuasiSugenoForm>> {
    let auditor = Auditor::new(f, spec)?;
    let grid = auditor.grid();
    if let Some(i) = auditor.sampled().iter().position(|v| !codomain.contains(v)) {
        let value = auditor.sampled()[i].clone();
        let witness = Witness { operands: Operands::Point { x: grid.point(i) }, lhs: value.clone(), rhs: value };
        return Ok(Fit::Refused(Box::new(Refusal::new(
            Condition::Codomain,
            Some(witness),
            format!("f takes a value outside {codomain}"),
        ))));
    }
    for axiom in [Axiom::Nondecreasing, Axiom::WeakMaxHomog, Axiom::WeakMinHomog] {
        refuse_if!(require(&auditor, axiom, None)?);
    }
    let n = f.arity();
    let mu_values = indicator_values(&auditor, n, IndicatorKind::Endpoints(spec.bounds.clone()))?;
    let axis = grid.axis().to_vec();
    let phi = axis.iter().map(|t| auditor.eval(&Tuple::constant(n, t))).collect::<Result<Vec<_>>>()?;
    let form = QuasiSugenoForm { n, codomain: codomain.clone(), axis, mu_values, phi };
    refuse_if!(regenerate(&auditor, |x| form.eval(x))?);
    Ok(Fit::Fitted(form))
}

#[cfg(test)]
mod tests;
