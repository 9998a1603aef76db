use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::BlackBox;
use crate::comono::{ray, sorted_view, Tuple};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::setfunc::Subset;

/// The additive form of a comonotonically modular function: `f(0)` plus
/// telescoping differences of `g = f` on nonnegative rays and `h = f` on
/// nonpositive rays.
///
/// For `x` sorted by `σ` with `p` negative coordinates,
///
/// ```text
/// f(x) = f(0) + Σ_{k<p} (h(x_σk 1_{S↓(k+1)}) - h(x_σk 1_{S↓(k)}))
///             + Σ_{k>=p} (g(x_σk 1_{S↑(k)}) - g(x_σk 1_{S↑(k+1)}))
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationForm {
    n: usize,
    #[serde(with = "scalar::as_string")]
    f_zero: Scalar,
    #[serde(serialize_with = "scalar::strings")]
    nonnegative_axis: Vec<Scalar>,
    /// `g[i][S] = f(t_i 1_S)` for the nonnegative axis points `t_i`.
    #[serde(serialize_with = "scalar::string_rows")]
    g: Vec<Vec<Scalar>>,
    #[serde(serialize_with = "scalar::strings")]
    nonpositive_axis: Vec<Scalar>,
    /// `h[i][S] = f(t_i 1_S)` for the nonpositive axis points `t_i`.
    #[serde(serialize_with = "scalar::string_rows")]
    h: Vec<Vec<Scalar>>,
}

/// Samples `f` on every ray point `t 1_S` with `t` on `axis`.
///
/// The axis must contain `0`.
pub fn build_separation(f: &dyn BlackBox, axis: &[Scalar]) -> Result<SeparationForm> {
    let n = f.arity();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut axis = axis.to_vec();
    axis.sort();
    axis.dedup();
    let zero = scalar::zero();
    if !axis.contains(&zero) {
        return Err(Error::DomainGap { point: Tuple::zeros(n).to_string(), reason: "0 is not on the axis".into() });
    }
    let sample = |t: &Scalar| -> Result<Vec<Scalar>> {
        Subset::all(n)
            .map(|set| {
                let point = ray(n, t, set);
                f.eval(&point).map_err(|e| Error::DomainGap { point: point.to_string(), reason: e.to_string() })
            })
            .collect()
    };
    let nonnegative_axis: Vec<Scalar> = axis.iter().filter(|t| **t >= zero).cloned().collect();
    let nonpositive_axis: Vec<Scalar> = axis.iter().filter(|t| **t <= zero).cloned().collect();
    let g = nonnegative_axis.par_iter().map(sample).collect::<Result<Vec<_>>>()?;
    let h = nonpositive_axis.par_iter().map(sample).collect::<Result<Vec<_>>>()?;
    let f_zero = g[0][0].clone();
    Ok(SeparationForm { n, f_zero, nonnegative_axis, g, nonpositive_axis, h })
}

impl SeparationForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f_zero(&self) -> &Scalar {
        &self.f_zero
    }

    /// `g(t 1_S)`, for `t >= 0` on the axis.
    pub fn g(&self, t: &Scalar, set: Subset) -> Result<&Scalar> {
        let row = self.nonnegative_axis.binary_search(t).map_err(|_| Error::OffAxisPoint(t.to_string()))?;
        Ok(&self.g[row][set.bits() as usize])
    }

    /// `h(t 1_S)`, for `t <= 0` on the axis.
    pub fn h(&self, t: &Scalar, set: Subset) -> Result<&Scalar> {
        let row = self.nonpositive_axis.binary_search(t).map_err(|_| Error::OffAxisPoint(t.to_string()))?;
        Ok(&self.h[row][set.bits() as usize])
    }

    /// The `n` summands of the additive form at `x`, indexed by sorted position.
    pub fn terms(&self, x: &Tuple) -> Result<Vec<Scalar>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let view = sorted_view(x);
        let mut terms = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let t = &x[view.perm()[k]];
            let term = if k < view.split() {
                self.h(t, view.lower_set(k + 1))? - self.h(t, view.lower_set(k))?
            } else {
                self.g(t, view.upper_set(k))? - self.g(t, view.upper_set(k + 1))?
            };
            terms.push(term);
        }
        Ok(terms)
    }

    pub fn eval(&self, x: &Tuple) -> Result<Scalar> {
        Ok(self.terms(x)?.into_iter().fold(self.f_zero.clone(), |acc, term| acc + term))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("separation form serializes")
    }
}

pub fn eval_separation(form: &SeparationForm, x: &Tuple) -> Result<Scalar> {
    form.eval(x)
}
