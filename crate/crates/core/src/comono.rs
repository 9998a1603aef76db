//! Tuple arithmetic: sorting permutations and their chains, comonotonicity,
//! positive and negative parts, horizontal cuts, brackets, median clamps and
//! indicator tuples.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Exact, Scalar};
use crate::setfunc::{Interval, Subset};

/// A point of `R^n` with exact coordinates.
///
/// Tuples do not carry their ambient box: the box belongs to the domain being
/// quantified over and is checked by [`Tuple::in_box`] and by the operations
/// whose closure conditions depend on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple(Vec<Scalar>);

impl Tuple {
    pub fn new(coords: Vec<Scalar>) -> Tuple {
        Tuple(coords)
    }

    pub fn in_box(coords: Vec<Scalar>, bounds: &Interval) -> Result<Tuple> {
        let t = Tuple(coords);
        if !t.lies_in(bounds) {
            return Err(Error::OutOfBox(t.to_string()));
        }
        Ok(t)
    }

    pub fn parse(text: &str) -> Result<Tuple> {
        Ok(Tuple(scalar::parse_list(text)?))
    }

    pub fn constant(n: usize, c: &Scalar) -> Tuple {
        Tuple(vec![c.clone(); n])
    }

    pub fn zeros(n: usize) -> Tuple {
        Tuple(vec![scalar::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn map(&self, f: impl FnMut(&Scalar) -> Scalar) -> Tuple {
        Tuple(self.0.iter().map(f).collect())
    }

    pub fn try_map(&self, f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Tuple> {
        Ok(Tuple(self.0.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn scale(&self, c: &Scalar) -> Tuple {
        self.map(|x| x * c)
    }

    /// `x ∧ c`, componentwise.
    pub fn meet_level(&self, c: &Scalar) -> Tuple {
        self.map(|x| scalar::min(x, c))
    }

    /// `x ∨ c`, componentwise.
    pub fn join_level(&self, c: &Scalar) -> Tuple {
        self.map(|x| scalar::max(x, c))
    }

    pub fn lies_in(&self, bounds: &Interval) -> bool {
        bounds.contains_all(self.0.iter())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Tuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl Index<usize> for Tuple {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl From<Vec<Scalar>> for Tuple {
    fn from(coords: Vec<Scalar>) -> Self {
        Tuple(coords)
    }
}

impl Add for &Tuple {
    type Output = Tuple;

    fn add(self, rhs: &Tuple) -> Tuple {
        Tuple(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Tuple {
    type Output = Tuple;

    fn sub(self, rhs: &Tuple) -> Tuple {
        Tuple(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Tuple {
    type Output = Tuple;

    fn neg(self) -> Tuple {
        self.map(|x| -x)
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for Tuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        scalar::exact_vec(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Exact>::deserialize(d)?;
        Ok(Tuple(v.into_iter().map(|e| e.0).collect()))
    }
}

/// A sorting permutation of a tuple plus its sign split.
///
/// `perm[k]` is the 0-based index of the `(k+1)`-th smallest coordinate; ties
/// keep ascending index order. `split` is the number of strictly negative
/// coordinates, so `x[perm[split - 1]] < 0 <= x[perm[split]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SortedView {
    perm: Vec<usize>,
    split: usize,
}

impl SortedView {
    pub fn of(x: &Tuple) -> SortedView {
        let mut perm: Vec<usize> = (0..x.len()).collect();
        perm.sort_by(|&a, &b| x[a].cmp(&x[b]));
        let split = x.iter().filter(|v| v.is_negative()).count();
        SortedView { perm, split }
    }

    /// Uses a caller-chosen permutation; fails if it does not sort `x`.
    pub fn with_permutation(x: &Tuple, perm: Vec<usize>) -> Result<SortedView> {
        if perm.len() != x.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: perm.len() });
        }
        if !sorts(x, &perm) {
            return Err(Error::Unsupported(format!("permutation {perm:?} does not sort {x}")));
        }
        let split = x.iter().filter(|v| v.is_negative()).count();
        Ok(SortedView { perm, split })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Indices of the `n - k` largest coordinates, `{perm[k], .., perm[n-1]}`.
    pub fn upper_set(&self, k: usize) -> Subset {
        self.perm[k..].iter().fold(Subset::EMPTY, |s, &i| s.insert_index(i))
    }

    /// Indices of the `k` smallest coordinates, `{perm[0], .., perm[k-1]}`.
    pub fn lower_set(&self, k: usize) -> Subset {
        self.perm[..k].iter().fold(Subset::EMPTY, |s, &i| s.insert_index(i))
    }
}

pub fn sorted_view(x: &Tuple) -> SortedView {
    SortedView::of(x)
}

fn sorts(x: &Tuple, perm: &[usize]) -> bool {
    let mut seen = vec![false; x.len()];
    for &i in perm {
        if i >= x.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    perm.windows(2).all(|w| x[w[0]] <= x[w[1]])
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// Every permutation under which `x` is sorted nondecreasingly.
pub fn admissible_permutations(x: &Tuple) -> Vec<Vec<usize>> {
    permutations(x.len()).into_iter().filter(|p| sorts(x, p)).collect()
}

fn same_len(x: &Tuple, y: &Tuple) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    Ok(())
}

/// No pair of coordinates is ordered oppositely in `x` and `y`.
pub fn is_comonotonic(x: &Tuple, y: &Tuple) -> Result<bool> {
    same_len(x, y)?;
    let n = x.len();
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i].cmp(&x[j]);
            let dy = y[i].cmp(&y[j]);
            if dx != std::cmp::Ordering::Equal && dy != std::cmp::Ordering::Equal && dx != dy {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Componentwise minimum and maximum.
pub fn meet_join(x: &Tuple, y: &Tuple) -> Result<(Tuple, Tuple)> {
    same_len(x, y)?;
    let meet = x.0.iter().zip(&y.0).map(|(a, b)| scalar::min(a, b)).collect();
    let join = x.0.iter().zip(&y.0).map(|(a, b)| scalar::max(a, b)).collect();
    Ok((Tuple(meet), Tuple(join)))
}

/// `(x⁺, x⁻)` with `x⁺ = x ∨ 0` and `x⁻ = (-x)⁺`.
pub fn split_parts(x: &Tuple) -> (Tuple, Tuple) {
    let zero = scalar::zero();
    let plus = x.join_level(&zero);
    let minus = (-x).join_level(&zero);
    (plus, minus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    Min,
    Max,
}

/// `(x ∧ c, x - x ∧ c)` or `(x ∨ c, x - x ∨ c)`; the remainder must stay in `bounds`.
pub fn horizontal_split(x: &Tuple, c: &Scalar, mode: CutMode, bounds: &Interval) -> Result<(Tuple, Tuple)> {
    let cut = match mode {
        CutMode::Min => x.meet_level(c),
        CutMode::Max => x.join_level(c),
    };
    let rest = x - &cut;
    if !rest.lies_in(bounds) {
        return Err(Error::OutOfBox(rest.to_string()));
    }
    Ok((cut, rest))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMode {
    /// `[x]_c` for `c >= 0`: zero where `x_i <= c`.
    Low,
    /// `[x]^c` for `c <= 0`: zero where `x_i >= c`.
    High,
}

pub fn bracket(x: &Tuple, c: &Scalar, mode: BracketMode) -> Result<Tuple> {
    match mode {
        BracketMode::Low if c.is_negative() => Err(Error::BadThresholdSign(c.to_string())),
        BracketMode::High if c.is_positive() => Err(Error::BadThresholdSign(c.to_string())),
        BracketMode::Low => Ok(x.map(|v| if v <= c { scalar::zero() } else { v.clone() })),
        BracketMode::High => Ok(x.map(|v| if v >= c { scalar::zero() } else { v.clone() })),
    }
}

/// `med(-c, x, c)`: every coordinate clamped into `[-c, c]`.
pub fn median_clamp(x: &Tuple, c: &Scalar) -> Result<Tuple> {
    if c.is_negative() {
        return Err(Error::NegativeRadius(c.to_string()));
    }
    let low = -c.clone();
    Ok(x.map(|v| scalar::max(&low, &scalar::min(v, c))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndicatorKind {
    /// `1_S`
    Unit,
    /// `-1_S`
    Signed,
    /// `e_S`: `b` on `S`, `a` elsewhere.
    Endpoints(Interval),
}

pub fn indicator(n: usize, subset: Subset, kind: &IndicatorKind) -> Result<Tuple> {
    if !subset.fits(n) {
        return Err(Error::SubsetOutOfRange { subset, n });
    }
    let (inside, outside) = match kind {
        IndicatorKind::Unit => (scalar::one(), scalar::zero()),
        IndicatorKind::Signed => (-scalar::one(), scalar::zero()),
        IndicatorKind::Endpoints(i) => (i.hi().clone(), i.lo().clone()),
    };
    Ok(Tuple((0..n).map(|i| if subset.contains_index(i) { inside.clone() } else { outside.clone() }).collect()))
}

/// `t · 1_S`.
pub fn ray(n: usize, t: &Scalar, subset: Subset) -> Tuple {
    Tuple((0..n).map(|i| if subset.contains_index(i) { t.clone() } else { scalar::zero() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn t(values: &[(i64, i64)]) -> Tuple {
        Tuple::new(values.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    fn ints(values: &[i64]) -> Tuple {
        Tuple::new(values.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn sorted_view_examples() {
        let v = sorted_view(&t(&[(7, 10), (2, 10)]));
        assert_eq!((v.perm(), v.split()), (&[1, 0][..], 0));
        let v = sorted_view(&t(&[(-1, 2), (7, 10)]));
        assert_eq!((v.perm(), v.split()), (&[0, 1][..], 1));
        let v = sorted_view(&ints(&[0, 0]));
        assert_eq!((v.perm(), v.split()), (&[0, 1][..], 0));
    }

    #[test]
    fn chains() {
        let v = sorted_view(&ints(&[3, 1, 2]));
        assert_eq!(v.perm(), &[1, 2, 0]);
        assert_eq!(v.upper_set(0), Subset::full(3));
        assert_eq!(v.upper_set(2), Subset::from_elements(&[1]).unwrap());
        assert_eq!(v.upper_set(3), Subset::EMPTY);
        assert_eq!(v.lower_set(1), Subset::from_elements(&[2]).unwrap());
        assert_eq!(v.lower_set(0), Subset::EMPTY);
    }

    #[test]
    fn comonotonic_examples() {
        assert!(is_comonotonic(&ints(&[1, 2]), &ints(&[3, 5])).unwrap());
        assert!(!is_comonotonic(&ints(&[1, 2]), &ints(&[5, 3])).unwrap());
        assert!(is_comonotonic(&ints(&[1, 1]), &ints(&[5, 3])).unwrap());
        assert!(matches!(is_comonotonic(&ints(&[1]), &ints(&[1, 2])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn meet_join_examples() {
        let (m, j) = meet_join(&ints(&[1, 5]), &ints(&[3, 2])).unwrap();
        assert_eq!((m.clone(), j.clone()), (ints(&[1, 2]), ints(&[3, 5])));
        assert_eq!(&m + &j, ints(&[4, 7]));
        let x = ints(&[4, -2]);
        assert_eq!(meet_join(&x, &x).unwrap(), (x.clone(), x));
    }

    #[test]
    fn split_parts_examples() {
        let (p, m) = split_parts(&t(&[(-1, 2), (7, 10)]));
        assert_eq!(p, t(&[(0, 1), (7, 10)]));
        assert_eq!(m, t(&[(1, 2), (0, 1)]));
        assert_eq!(split_parts(&ints(&[0, 0])), (ints(&[0, 0]), ints(&[0, 0])));
        let x = ints(&[-3, 4, 0]);
        let (p, m) = split_parts(&x);
        assert_eq!(&p - &m, x);
    }

    #[test]
    fn horizontal_split_examples() {
        let unit = Interval::unit();
        let x = t(&[(1, 5), (4, 5)]);
        assert_eq!(
            horizontal_split(&x, &rat(1, 2), CutMode::Min, &unit).unwrap(),
            (t(&[(1, 5), (1, 2)]), t(&[(0, 1), (3, 10)]))
        );
        assert_eq!(horizontal_split(&x, &int(1), CutMode::Min, &unit).unwrap(), (x.clone(), ints(&[0, 0])));
        let neg = Interval::new(int(-1), int(0)).unwrap();
        assert_eq!(
            horizontal_split(&t(&[(-4, 5), (-1, 5)]), &rat(-1, 2), CutMode::Max, &neg).unwrap(),
            (t(&[(-1, 2), (-1, 5)]), t(&[(-3, 10), (0, 1)]))
        );
        // x - x ∨ c is nonpositive, which [0,1] cannot hold
        assert!(matches!(horizontal_split(&x, &rat(1, 2), CutMode::Max, &unit), Err(Error::OutOfBox(_))));
    }

    #[test]
    fn bracket_examples() {
        let x = t(&[(1, 5), (4, 5)]);
        assert_eq!(bracket(&x, &rat(1, 2), BracketMode::Low).unwrap(), t(&[(0, 1), (4, 5)]));
        assert_eq!(bracket(&x, &int(0), BracketMode::Low).unwrap(), x);
        assert_eq!(bracket(&t(&[(-4, 5), (-1, 5)]), &rat(-1, 2), BracketMode::High).unwrap(), t(&[(-4, 5), (0, 1)]));
        assert!(matches!(bracket(&x, &int(-1), BracketMode::Low), Err(Error::BadThresholdSign(_))));
        assert!(matches!(bracket(&x, &int(1), BracketMode::High), Err(Error::BadThresholdSign(_))));
    }

    #[test]
    fn median_clamp_examples() {
        let x = t(&[(-2, 1), (1, 4), (3, 1)]);
        assert_eq!(median_clamp(&x, &int(1)).unwrap(), t(&[(-1, 1), (1, 4), (1, 1)]));
        assert_eq!(median_clamp(&x, &int(10)).unwrap(), x);
        assert_eq!(median_clamp(&x, &int(0)).unwrap(), Tuple::zeros(3));
        assert!(matches!(median_clamp(&x, &int(-1)), Err(Error::NegativeRadius(_))));
    }

    #[test]
    fn indicator_examples() {
        let s13 = Subset::from_elements(&[1, 3]).unwrap();
        assert_eq!(indicator(3, s13, &IndicatorKind::Unit).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(indicator(3, s13, &IndicatorKind::Signed).unwrap(), ints(&[-1, 0, -1]));
        assert_eq!(indicator(2, Subset::EMPTY, &IndicatorKind::Endpoints(Interval::unit())).unwrap(), ints(&[0, 0]));
        assert_eq!(
            indicator(2, Subset::full(2), &IndicatorKind::Endpoints(Interval::symmetric_unit())).unwrap(),
            ints(&[1, 1])
        );
        assert!(matches!(indicator(2, s13, &IndicatorKind::Unit), Err(Error::SubsetOutOfRange { .. })));
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(admissible_permutations(&ints(&[2, 1, 2])), vec![vec![1, 0, 2], vec![1, 2, 0]]);
    }

    fn small_tuple(n: usize) -> impl Strategy<Value = Tuple> {
        prop::collection::vec(-3i64..=3, n).prop_map(|v| ints(&v))
    }

    proptest! {
        #[test]
        fn parts_are_disjoint_and_recombine(x in small_tuple(5)) {
            let (p, m) = split_parts(&x);
            prop_assert_eq!(&p - &m, x);
            prop_assert!(p.iter().zip(m.iter()).all(|(a, b)| a.is_zero() || b.is_zero()));
        }

        #[test]
        fn comonotonic_iff_shared_permutation(
            (x, y) in (1usize..=6).prop_flat_map(|n| (small_tuple(n), small_tuple(n)))
        ) {
            let by_search = permutations(x.len())
                .into_iter()
                .any(|p| sorts(&x, &p) && sorts(&y, &p));
            prop_assert_eq!(is_comonotonic(&x, &y).unwrap(), by_search);
        }

        #[test]
        fn meet_plus_join_is_sum((x, y) in (1usize..=5).prop_flat_map(|n| (small_tuple(n), small_tuple(n)))) {
            let (m, j) = meet_join(&x, &y).unwrap();
            prop_assert_eq!(&m + &j, &x + &y);
        }

        #[test]
        fn horizontal_parts_sum_and_stay_comonotonic(x in small_tuple(4), c in -3i64..=3) {
            let wide = Interval::new(int(-10), int(10)).unwrap();
            for mode in [CutMode::Min, CutMode::Max] {
                let (a, b) = horizontal_split(&x, &int(c), mode, &wide).unwrap();
                prop_assert_eq!(&a + &b, x.clone());
                prop_assert!(is_comonotonic(&a, &x).unwrap());
                prop_assert!(is_comonotonic(&b, &x).unwrap());
            }
        }

        #[test]
        fn sorted_view_is_deterministic_and_sorts(x in small_tuple(5)) {
            let a = sorted_view(&x);
            prop_assert_eq!(&a, &sorted_view(&x.clone()));
            prop_assert!(sorts(&x, a.perm()));
            let split = a.split();
            prop_assert!(split == 0 || x[a.perm()[split - 1]].is_negative());
            prop_assert!(split == x.len() || !x[a.perm()[split]].is_negative());
        }
    }
}
