//! Discrete integrals: signed Choquet (Lovász extension), its symmetric
//! variant, Sugeno, the quasi- variants obtained by transforming arguments
//! with a unary `φ`, and the Shilkret integral.

mod transform;

use num_traits::{Signed, Zero};

pub use transform::{Property, Shape, TransformFile, TransformFn};

use crate::comono::{split_parts, SortedView, Tuple};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::setfunc::{Interval, Role, SetFunction, Subset, Validation};

fn check_dim(v: &SetFunction, x: &Tuple) -> Result<()> {
    if v.n() != x.len() {
        return Err(Error::DimensionMismatch { expected: v.n(), found: x.len() });
    }
    Ok(())
}

fn require_signed(v: &SetFunction) -> Result<()> {
    if !v.is_signed() {
        return Err(Error::NotSignedCapacity(v.values()[0].to_string()));
    }
    Ok(())
}

/// Signed Choquet integral `C_v(x)`.
///
/// Telescoping sum over the chain of upper sets of the sorting permutation:
/// `Σ_k x_{σ(k)} (v(S↑(k)) - v(S↑(k+1)))`.
pub fn choquet(v: &SetFunction, x: &Tuple) -> Result<Scalar> {
    check_dim(v, x)?;
    require_signed(v)?;
    Ok(choquet_sorted(v, x, &SortedView::of(x)))
}

/// [`choquet`] evaluated along a caller-supplied sorting permutation.
pub fn choquet_along(v: &SetFunction, x: &Tuple, perm: &[usize]) -> Result<Scalar> {
    check_dim(v, x)?;
    require_signed(v)?;
    let view = SortedView::with_permutation(x, perm.to_vec())?;
    Ok(choquet_sorted(v, x, &view))
}

fn choquet_sorted(v: &SetFunction, x: &Tuple, view: &SortedView) -> Scalar {
    let n = x.len();
    let mut total = scalar::zero();
    for k in 0..n {
        let xi = &x[view.perm()[k]];
        if xi.is_zero() {
            continue;
        }
        total += xi * (v.value(view.upper_set(k)) - v.value(view.upper_set(k + 1)));
    }
    total
}

/// Symmetric signed Choquet integral `Č_v(x) = C_v(x⁺) - C_v(x⁻)`.
///
/// Debug builds also evaluate the region formula and fail on disagreement.
pub fn symmetric_choquet(v: &SetFunction, x: &Tuple) -> Result<Scalar> {
    if cfg!(debug_assertions) {
        symmetric_choquet_checked(v, x)
    } else {
        symmetric_from_parts(v, x)
    }
}

fn symmetric_from_parts(v: &SetFunction, x: &Tuple) -> Result<Scalar> {
    check_dim(v, x)?;
    require_signed(v)?;
    let (plus, minus) = split_parts(x);
    Ok(choquet(v, &plus)? - choquet(v, &minus)?)
}

/// `Č_v` through the per-region formula: lower chains for the `p` negative
/// coordinates, upper chains for the rest.
pub fn symmetric_choquet_region(v: &SetFunction, x: &Tuple) -> Result<Scalar> {
    check_dim(v, x)?;
    require_signed(v)?;
    let view = SortedView::of(x);
    let (n, p) = (x.len(), view.split());
    let mut total = scalar::zero();
    for k in 0..p {
        let xi = &x[view.perm()[k]];
        total += xi * (v.value(view.lower_set(k + 1)) - v.value(view.lower_set(k)));
    }
    for k in p..n {
        let xi = &x[view.perm()[k]];
        total += xi * (v.value(view.upper_set(k)) - v.value(view.upper_set(k + 1)));
    }
    Ok(total)
}

/// Evaluates both forms of `Č_v` and reports any disagreement.
pub fn symmetric_choquet_checked(v: &SetFunction, x: &Tuple) -> Result<Scalar> {
    let sorted = symmetric_from_parts(v, x)?;
    let region = symmetric_choquet_region(v, x)?;
    if sorted != region {
        return Err(Error::InternalCrossCheckFailed { sorted: sorted.to_string(), region: region.to_string() });
    }
    Ok(sorted)
}

/// `C_v(x⁺) - C_{v^d}(x⁻)`, an independent route to [`choquet`].
pub fn choquet_via_dual(v: &SetFunction, x: &Tuple) -> Result<Scalar> {
    check_dim(v, x)?;
    let dual = v.dual()?;
    let (plus, minus) = split_parts(x);
    Ok(choquet(v, &plus)? - choquet(&dual, &minus)?)
}

/// An order-preserving set function into `[a, b]` with `μ(∅) = a`, `μ(X) = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IValuedCapacity {
    table: SetFunction,
    interval: Interval,
}

impl IValuedCapacity {
    pub fn new(table: SetFunction, interval: Interval) -> Result<IValuedCapacity> {
        if let Validation::Fail(violation) = table.validate(&Role::IValued(interval.clone())) {
            return Err(Error::NotIValued(violation.to_string()));
        }
        Ok(IValuedCapacity { table, interval })
    }

    pub fn table(&self) -> &SetFunction {
        &self.table
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn value(&self, s: Subset) -> &Scalar {
        self.table.value(s)
    }

    fn check_input(&self, x: &Tuple) -> Result<()> {
        check_dim(&self.table, x)?;
        match x.iter().find(|xi| !self.interval.contains(xi)) {
            Some(bad) => Err(Error::TupleOutsideInterval(bad.to_string())),
            None => Ok(()),
        }
    }
}

/// Sugeno integral `⋁_k x_{σ(k)} ∧ μ(S↑(k))`.
pub fn sugeno(mu: &IValuedCapacity, x: &Tuple) -> Result<Scalar> {
    mu.check_input(x)?;
    let view = SortedView::of(x);
    let mut best = mu.interval.lo().clone();
    for k in 0..x.len() {
        let term = scalar::min(&x[view.perm()[k]], mu.value(view.upper_set(k)));
        if term > best {
            best = term;
        }
    }
    Ok(best)
}

/// Sugeno integral through the `2^n`-term form `⋁_S μ(S) ∧ ⋀_{i∈S} x_i`.
pub fn sugeno_normal_form(mu: &IValuedCapacity, x: &Tuple) -> Result<Scalar> {
    mu.check_input(x)?;
    let mut best = mu.value(Subset::EMPTY).clone();
    for s in Subset::all(x.len()).skip(1) {
        let floor = s.indices().map(|i| &x[i]).min().expect("nonempty subset");
        let term = scalar::min(mu.value(s), floor);
        if term > best {
            best = term;
        }
    }
    Ok(best)
}

/// `C_v(φ(x_1), .., φ(x_n))` for nondecreasing `φ` with `φ(0) = 0`.
pub fn quasi_choquet(v: &SetFunction, phi: &TransformFn, x: &Tuple) -> Result<Scalar> {
    phi.require(Property::Nondecreasing)?;
    phi.require(Property::VanishesAtZero)?;
    check_dim(v, x)?;
    choquet(v, &x.try_map(|xi| phi.eval(xi))?)
}

/// `Č_v(φ(x_1), .., φ(x_n))` for nondecreasing odd `φ`.
pub fn symmetric_quasi_choquet(v: &SetFunction, phi: &TransformFn, x: &Tuple) -> Result<Scalar> {
    phi.require(Property::Nondecreasing)?;
    phi.require(Property::Odd)?;
    check_dim(v, x)?;
    symmetric_choquet(v, &x.try_map(|xi| phi.eval(xi))?)
}

/// `S_μ(φ(x_1), .., φ(x_n))` for nondecreasing `φ: J → I`.
pub fn quasi_sugeno(mu: &IValuedCapacity, phi: &TransformFn, x: &Tuple) -> Result<Scalar> {
    phi.require(Property::Nondecreasing)?;
    check_dim(&mu.table, x)?;
    let mapped = x.try_map(|xi| phi.eval(xi))?;
    if let Some(bad) = mapped.iter().find(|y| !mu.interval.contains(y)) {
        return Err(Error::PhiRangeOutsideI(bad.to_string()));
    }
    sugeno(mu, &mapped)
}

/// Shilkret integral `⋁_k x_{σ(k)} · μ(S↑(k))` for a capacity and `x >= 0`.
pub fn shilkret(mu: &SetFunction, x: &Tuple) -> Result<Scalar> {
    check_dim(mu, x)?;
    if !mu.is_capacity() {
        return Err(Error::NotCapacity("Shilkret integral needs a monotone table".into()));
    }
    if let Some(bad) = x.iter().find(|xi| xi.is_negative()) {
        return Err(Error::NegativeInput(bad.to_string()));
    }
    let view = SortedView::of(x);
    Ok((0..x.len()).map(|k| &x[view.perm()[k]] * mu.value(view.upper_set(k))).max().unwrap_or_else(scalar::zero))
}

/// An integral bound to its capacity (and transform), usable as a black box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integral {
    Choquet(SetFunction),
    Symmetric(SetFunction),
    Sugeno(IValuedCapacity),
    QuasiChoquet(SetFunction, TransformFn),
    SymmetricQuasiChoquet(SetFunction, TransformFn),
    QuasiSugeno(IValuedCapacity, TransformFn),
    Shilkret(SetFunction),
}

impl Integral {
    pub fn name(&self) -> &'static str {
        match self {
            Integral::Choquet(_) => "choquet",
            Integral::Symmetric(_) => "symmetric",
            Integral::Sugeno(_) => "sugeno",
            Integral::QuasiChoquet(..) => "quasi-choquet",
            Integral::SymmetricQuasiChoquet(..) => "symmetric-quasi-choquet",
            Integral::QuasiSugeno(..) => "quasi-sugeno",
            Integral::Shilkret(_) => "shilkret",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Integral::Choquet(v)
            | Integral::Symmetric(v)
            | Integral::QuasiChoquet(v, _)
            | Integral::SymmetricQuasiChoquet(v, _)
            | Integral::Shilkret(v) => v.n(),
            Integral::Sugeno(mu) | Integral::QuasiSugeno(mu, _) => mu.n(),
        }
    }

    pub fn eval(&self, x: &Tuple) -> Result<Scalar> {
        match self {
            Integral::Choquet(v) => choquet(v, x),
            Integral::Symmetric(v) => symmetric_choquet(v, x),
            Integral::Sugeno(mu) => sugeno(mu, x),
            Integral::QuasiChoquet(v, phi) => quasi_choquet(v, phi, x),
            Integral::SymmetricQuasiChoquet(v, phi) => symmetric_quasi_choquet(v, phi, x),
            Integral::QuasiSugeno(mu, phi) => quasi_sugeno(mu, phi, x),
            Integral::Shilkret(mu) => shilkret(mu, x),
        }
    }
}
