use serde::Serialize;

use crate::comono::Tuple;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::setfunc::Interval;

/// Largest number of grid points a single audit will sample.
pub const MAX_GRID_POINTS: usize = 2_000_000;

/// How to discretize a box into an axis of rational points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub bounds: Interval,
    /// Equispaced points per axis, endpoints included.
    pub points_per_axis: usize,
    pub include_zero: bool,
    /// Adds `-1` and `1` when they lie in the box.
    pub include_units: bool,
    pub include_endpoints: bool,
}

impl GridSpec {
    pub fn new(bounds: Interval, points_per_axis: usize) -> GridSpec {
        GridSpec { bounds, points_per_axis, include_zero: true, include_units: true, include_endpoints: true }
    }

    /// `k = 5` with all special points forced in.
    pub fn default_for(bounds: Interval) -> GridSpec {
        GridSpec::new(bounds, 5)
    }

    /// Sorted, duplicate-free axis points inside the box.
    pub fn axis(&self) -> Result<Vec<Scalar>> {
        let k = self.points_per_axis;
        if k < 2 {
            return Err(Error::GridTooCoarse(k));
        }
        let (lo, hi) = (self.bounds.lo(), self.bounds.hi());
        let step = (hi - lo) / scalar::int(k as i64 - 1);
        let mut axis: Vec<Scalar> = (0..k).map(|j| lo + &step * scalar::int(j as i64)).collect();
        let mut extra = Vec::new();
        if self.include_endpoints {
            extra.extend([lo.clone(), hi.clone()]);
        }
        if self.include_zero {
            extra.push(scalar::zero());
        }
        if self.include_units {
            extra.extend([scalar::one(), -scalar::one()]);
        }
        axis.extend(extra.into_iter().filter(|c| self.bounds.contains(c)));
        axis.sort();
        axis.dedup();
        Ok(axis)
    }
}

/// The product grid `A^n` for an axis `A`, indexed lexicographically
/// (coordinate 0 most significant).
#[derive(Clone, Debug)]
pub struct Grid {
    n: usize,
    bounds: Interval,
    axis: Vec<Scalar>,
    count: usize,
}

impl Grid {
    pub fn new(spec: &GridSpec, n: usize) -> Result<Grid> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Grid::from_axis(n, spec.bounds.clone(), spec.axis()?)
    }

    /// A grid over a caller-chosen axis, which must be strictly increasing
    /// and inside `bounds`.
    pub fn from_axis(n: usize, bounds: Interval, axis: Vec<Scalar>) -> Result<Grid> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if axis.len() < 2 {
            return Err(Error::GridTooCoarse(axis.len()));
        }
        if let Some(w) = axis.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("axis must increase strictly ({} then {})", w[0], w[1])));
        }
        if let Some(bad) = axis.iter().find(|a| !bounds.contains(a)) {
            return Err(Error::OutOfBox(bad.to_string()));
        }
        let count = (0..n)
            .try_fold(1usize, |acc, _| acc.checked_mul(axis.len()))
            .filter(|&c| c <= MAX_GRID_POINTS)
            .ok_or_else(|| Error::Unsupported(format!("grid {}^{n} is too large to enumerate", axis.len())))?;
        Ok(Grid { n, bounds, axis, count })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bounds(&self) -> &Interval {
        &self.bounds
    }

    pub fn axis(&self) -> &[Scalar] {
        &self.axis
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let k = self.axis.len();
        let mut digits = vec![0; self.n];
        for d in digits.iter_mut().rev() {
            *d = index % k;
            index /= k;
        }
        digits
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.axis.len() + d)
    }

    pub fn point_from_digits(&self, digits: &[usize]) -> Tuple {
        Tuple::new(digits.iter().map(|&d| self.axis[d].clone()).collect())
    }

    pub fn point(&self, index: usize) -> Tuple {
        self.point_from_digits(&self.digits(index))
    }

    pub fn axis_position(&self, value: &Scalar) -> Option<usize> {
        self.axis.binary_search(value).ok()
    }

    /// Grid index of `x`, if every coordinate is an axis point.
    pub fn locate(&self, x: &Tuple) -> Option<usize> {
        if x.len() != self.n {
            return None;
        }
        let mut index = 0;
        for value in x.iter() {
            index = index * self.axis.len() + self.axis_position(value)?;
        }
        Some(index)
    }

    pub fn points(&self) -> impl Iterator<Item = Tuple> + '_ {
        (0..self.count).map(|i| self.point(i))
    }
}
