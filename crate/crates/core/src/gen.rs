//! Seeded random set functions and transforms.
//!
//! Values are drawn from a fixed lattice of twentieths so generated tables
//! stay small rationals. The same seed always produces the same output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::integrals::{Property, TransformFn};
use crate::scalar::{self, Scalar};
use crate::setfunc::{Interval, Role, SetFunction, Subset};

/// Largest `n` accepted by the generators.
pub const MAX_GEN_N: usize = 8;

const STEPS: i64 = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parses `capacity`, `signed` or `ivalued` (the latter over `range`, default `[0, 1]`).
pub fn role_by_name(name: &str, range: Option<&Interval>) -> Result<Role> {
    match name {
        "capacity" => Ok(Role::Capacity),
        "signed" => Ok(Role::Signed),
        "ivalued" => Ok(Role::IValued(range.cloned().unwrap_or_else(Interval::unit))),
        other => Err(Error::BadRole(other.to_string())),
    }
}

fn step(rng: &mut impl Rng) -> Scalar {
    scalar::rat(rng.gen_range(0..=STEPS), STEPS)
}

/// A random table for `role`.
///
/// - signed: `v(∅) = 0`, other values uniform on twentieths of `range` (default `[-1, 1]`).
/// - capacity: cumulative nonnegative increments up the subset lattice,
///   rescaled so `v(X)` is the top of `range` (default `1`).
/// - ivalued: a capacity mapped affinely onto `[a, b]`.
pub fn random_set_function(rng: &mut impl Rng, n: usize, role: &Role, range: Option<&Interval>) -> Result<SetFunction> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > MAX_GEN_N {
        return Err(Error::NExceedsLimit(n));
    }
    match role {
        Role::Signed => {
            let range = range.cloned().unwrap_or_else(Interval::symmetric_unit);
            let width = range.hi() - range.lo();
            let mut values: Vec<Scalar> = (0..1usize << n).map(|_| range.lo() + &width * step(rng)).collect();
            values[0] = scalar::zero();
            SetFunction::from_table(n, values)
        }
        Role::Capacity => {
            let top = range.map(|r| r.hi().clone()).unwrap_or_else(scalar::one);
            SetFunction::from_table(n, monotone_table(rng, n, &top))
        }
        Role::IValued(interval) => {
            let unit = monotone_table(rng, n, &scalar::one());
            let width = interval.hi() - interval.lo();
            SetFunction::from_table(n, unit.iter().map(|u| interval.lo() + &width * u).collect())
        }
    }
}

// Subsets precede their supersets in bitmask order, so one pass suffices.
fn monotone_table(rng: &mut impl Rng, n: usize, top: &Scalar) -> Vec<Scalar> {
    let size = 1usize << n;
    let mut values = vec![scalar::zero(); size];
    for s in 1..size {
        let set = Subset(s as u32);
        let floor = set
            .indices()
            .map(|i| values[set.remove_index(i).bits() as usize].clone())
            .max()
            .unwrap_or_else(scalar::zero);
        values[s] = floor + step(rng);
    }
    let full = values[size - 1].clone();
    if full == scalar::zero() {
        values[size - 1] = top.clone();
    } else {
        for value in values.iter_mut() {
            *value = &*value * top / &full;
        }
    }
    values
}

/// A random nondecreasing piecewise-linear `φ` from `domain` into `range`,
/// with breakpoints at the quarters of `domain`.
///
/// With `vanishing`, `0` must lie in `domain` and `φ(0) = 0`; the values at
/// positive breakpoints are then kept positive so `φ` is not flat there.
pub fn random_transform(
    rng: &mut impl Rng,
    domain: &Interval,
    range: &Interval,
    vanishing: bool,
) -> Result<TransformFn> {
    let width = domain.hi() - domain.lo();
    let xs: Vec<Scalar> = (0..=4).map(|j| domain.lo() + &width * scalar::rat(j, 4)).collect();
    let zero = scalar::zero();
    let mut draws: Vec<Scalar> = (0..xs.len()).map(|_| step(rng)).collect();
    draws.sort();
    let span = range.hi() - range.lo();
    let mut ys: Vec<Scalar> = draws.iter().map(|d| range.lo() + &span * d).collect();
    let mut properties = vec![Property::Nondecreasing];
    if vanishing {
        let Some(origin) = xs.iter().position(|x| *x == zero) else {
            return Err(Error::Unsupported(format!("0 is not a breakpoint of {domain}")));
        };
        if !range.contains(&zero) {
            return Err(Error::PhiRangeOutsideI(format!("0 is outside {range}")));
        }
        // Rescale each side so the origin maps to 0 and monotonicity survives.
        let pivot = ys[origin].clone();
        for (i, y) in ys.iter_mut().enumerate() {
            if i < origin {
                let below = &pivot - range.lo();
                *y = if below == zero { zero.clone() } else { range.lo() * (&pivot - &*y) / &below };
            } else if i > origin {
                let above = range.hi() - &pivot;
                let lifted = if above == zero { zero.clone() } else { range.hi() * (&*y - &pivot) / &above };
                // Keep φ strictly positive right of 0.
                *y = scalar::max(&lifted, &(range.hi() * scalar::rat(i as i64 - origin as i64, 8)));
            }
        }
        ys[origin] = zero.clone();
        for i in origin + 1..ys.len() {
            if ys[i] < ys[i - 1] {
                ys[i] = ys[i - 1].clone();
            }
        }
        properties.push(Property::VanishesAtZero);
    }
    TransformFn::piecewise(xs.into_iter().zip(ys).collect(), properties)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfunc::Validation;

    #[test]
    fn deterministic() {
        let a = random_set_function(&mut rng(1), 2, &Role::Signed, None).unwrap();
        let b = random_set_function(&mut rng(1), 2, &Role::Signed, None).unwrap();
        assert_eq!(a, b);
        let c = random_set_function(&mut rng(2), 2, &Role::Signed, None).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn roles_validate() {
        let mut r = rng(7);
        for n in 1..=MAX_GEN_N {
            let cap = random_set_function(&mut r, n, &Role::Capacity, None).unwrap();
            assert_eq!(cap.validate(&Role::Capacity), Validation::Pass);
            assert_eq!(cap.value(Subset::full(n)), &scalar::one());
            let signed = random_set_function(&mut r, n, &Role::Signed, None).unwrap();
            assert!(signed.is_signed());
        }
        let interval = Interval::new(scalar::int(-2), scalar::int(3)).unwrap();
        let role = Role::IValued(interval.clone());
        let mu = random_set_function(&mut r, 3, &role, None).unwrap();
        assert_eq!(mu.validate(&role), Validation::Pass);
        assert_eq!(mu.value(Subset::EMPTY), interval.lo());
        assert_eq!(mu.value(Subset::full(3)), interval.hi());
    }

    #[test]
    fn limits() {
        assert_eq!(random_set_function(&mut rng(0), 9, &Role::Signed, None), Err(Error::NExceedsLimit(9)));
        assert_eq!(role_by_name("banana", None), Err(Error::BadRole("banana".into())));
    }

    #[test]
    fn transforms_keep_their_properties() {
        let mut r = rng(3);
        for _ in 0..50 {
            let phi = random_transform(&mut r, &Interval::unit(), &Interval::unit(), true).unwrap();
            assert_eq!(phi.eval(&scalar::zero()).unwrap(), scalar::zero());
            assert!(phi.eval(&scalar::one()).unwrap() > scalar::zero());
            let psi = random_transform(&mut r, &Interval::symmetric_unit(), &Interval::symmetric_unit(), true).unwrap();
            assert!(psi.has(Property::VanishesAtZero));
            let chi = random_transform(&mut r, &Interval::unit(), &Interval::unit(), false).unwrap();
            assert!(chi.has(Property::Nondecreasing));
        }
    }
}
