use serde::Serialize;

use crate::axioms::{Auditor, Axiom, BlackBox, Grid};
use crate::comono::{indicator, sorted_view, IndicatorKind, Tuple};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::setfunc::{Interval, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalMode {
    /// `f(x) = ⋁_S φ_S(⋀_{i∈S} x_i)` with `φ_S(t) = f(e_S ∧ t)`.
    Maxitive,
    /// `f(x) = ⋀_S φ_S(⋁_{i∈S} x_i)` with `φ_S(t) = f(e_{X∖S} ∨ t)`.
    Minitive,
}

/// Max-min normal form of a nondecreasing function, sampled on an axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    n: usize,
    mode: NormalMode,
    interval: Interval,
    #[serde(serialize_with = "scalar::strings")]
    axis: Vec<Scalar>,
    /// `phi[S][i] = φ_S(axis[i])`.
    #[serde(serialize_with = "scalar::string_rows")]
    phi: Vec<Vec<Scalar>>,
}

/// Builds the normal form on `axis ∪ {a, b}` for `I = [a, b]`.
///
/// `f` must be nondecreasing on the resulting grid.
pub fn build_normal_form(
    f: &dyn BlackBox,
    interval: &Interval,
    mode: NormalMode,
    axis: &[Scalar],
) -> Result<NormalForm> {
    let n = f.arity();
    let mut axis = axis.to_vec();
    axis.extend([interval.lo().clone(), interval.hi().clone()]);
    axis.sort();
    axis.dedup();
    let grid = Grid::from_axis(n, interval.clone(), axis.clone())?;
    let auditor = Auditor::on_grid(f, grid)?;
    let report = auditor.check(Axiom::Nondecreasing, None)?;
    if let Some(witness) = report.witness {
        return Err(Error::NotNondecreasing(Box::new(witness)));
    }
    let endpoints = IndicatorKind::Endpoints(interval.clone());
    let mut phi = Vec::with_capacity(1 << n);
    for set in Subset::all(n) {
        let row = match mode {
            NormalMode::Maxitive => {
                let e = indicator(n, set, &endpoints)?;
                axis.iter().map(|t| auditor.eval(&e.meet_level(t))).collect::<Result<Vec<_>>>()?
            }
            NormalMode::Minitive => {
                let e = indicator(n, set.complement(n), &endpoints)?;
                axis.iter().map(|t| auditor.eval(&e.join_level(t))).collect::<Result<Vec<_>>>()?
            }
        };
        phi.push(row);
    }
    Ok(NormalForm { n, mode, interval: interval.clone(), axis, phi })
}

impl NormalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> NormalMode {
        self.mode
    }

    pub fn axis(&self) -> &[Scalar] {
        &self.axis
    }

    /// `φ_S(t)` for `t` on the axis.
    pub fn phi(&self, set: Subset, t: &Scalar) -> Result<&Scalar> {
        let i = self.axis.binary_search(t).map_err(|_| Error::OffAxisPoint(t.to_string()))?;
        Ok(&self.phi[set.bits() as usize][i])
    }

    fn check(&self, x: &Tuple) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        match x.iter().find(|v| self.axis.binary_search(v).is_err()) {
            Some(v) => Err(Error::OffAxisPoint(v.to_string())),
            None => Ok(()),
        }
    }

    /// The `2^n`-term lattice combination.
    pub fn eval(&self, x: &Tuple) -> Result<Scalar> {
        self.check(x)?;
        let (a, b) = (self.interval.lo(), self.interval.hi());
        let mut result: Option<Scalar> = None;
        for set in Subset::all(self.n) {
            let term = match self.mode {
                NormalMode::Maxitive => {
                    let meet = set.indices().fold(b.clone(), |acc, i| scalar::min(&acc, &x[i]));
                    self.phi(set, &meet)?.clone()
                }
                NormalMode::Minitive => {
                    let join = set.indices().fold(a.clone(), |acc, i| scalar::max(&acc, &x[i]));
                    self.phi(set, &join)?.clone()
                }
            };
            result = Some(match (result, self.mode) {
                (None, _) => term,
                (Some(acc), NormalMode::Maxitive) => scalar::max(&acc, &term),
                (Some(acc), NormalMode::Minitive) => scalar::min(&acc, &term),
            });
        }
        Ok(result.expect("at least the empty set"))
    }

    /// The chain restriction: `⋁_k φ_{S↑(k)}(x_σk)` (maxitive) or
    /// `⋀_k φ_{S↓(k+1)}(x_σk)` (minitive) along the sorting permutation of `x`.
    pub fn eval_chain(&self, x: &Tuple) -> Result<Scalar> {
        self.check(x)?;
        let view = sorted_view(x);
        let mut terms = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let t = &x[view.perm()[k]];
            let set = match self.mode {
                NormalMode::Maxitive => view.upper_set(k),
                NormalMode::Minitive => view.lower_set(k + 1),
            };
            terms.push(self.phi(set, t)?.clone());
        }
        let combined = match self.mode {
            NormalMode::Maxitive => terms.into_iter().max(),
            NormalMode::Minitive => terms.into_iter().min(),
        };
        Ok(combined.expect("n >= 1"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("normal form serializes")
    }
}

pub fn eval_normal_form(form: &NormalForm, x: &Tuple) -> Result<Scalar> {
    form.eval(x)
}
