//! Set functions on `X = {1..n}`: tables indexed by subset bitmask, role
//! validation (signed capacity, capacity, interval-valued capacity) and duals.

use std::fmt;
use std::ops::Index;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Exact, Scalar};

/// Largest supported number of criteria.
pub const MAX_N: usize = 20;

/// A subset of `X = {1..n}`; element `i` is bit `i - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    /// Builds a subset from 1-based element labels.
    pub fn from_elements(elements: &[usize]) -> Result<Subset> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > 32 {
                return Err(Error::BadElement(e));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    pub fn singleton_index(index: usize) -> Subset {
        Subset(1 << index)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership by 0-based coordinate index.
    pub fn contains_index(self, index: usize) -> bool {
        index < 32 && self.0 & (1 << index) != 0
    }

    pub fn insert_index(self, index: usize) -> Subset {
        Subset(self.0 | (1 << index))
    }

    pub fn remove_index(self, index: usize) -> Subset {
        Subset(self.0 & !(1 << index))
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 0-based coordinate indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// 1-based element labels in ascending order.
    pub fn elements(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// All `2^n` subsets in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << n).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(d)?;
        Subset::from_elements(&elements).map_err(serde::de::Error::custom)
    }
}

/// A nontrivial closed interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Scalar,
    hi: Scalar,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar) -> Result<Interval> {
        if lo >= hi {
            return Err(Error::DegenerateInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Interval {
        Interval { lo: scalar::zero(), hi: scalar::one() }
    }

    pub fn symmetric_unit() -> Interval {
        Interval { lo: -scalar::one(), hi: scalar::one() }
    }

    pub fn lo(&self) -> &Scalar {
        &self.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.hi
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_all<'a>(&self, xs: impl IntoIterator<Item = &'a Scalar>) -> bool {
        xs.into_iter().all(|x| self.contains(x))
    }

    /// `I ∩ [0, ∞)` when it has positive length.
    pub fn positive_part(&self) -> Option<Interval> {
        Interval::new(scalar::max(&self.lo, &scalar::zero()), self.hi.clone()).ok()
    }

    /// `I ∩ (-∞, 0]` when it has positive length.
    pub fn negative_part(&self) -> Option<Interval> {
        Interval::new(self.lo.clone(), scalar::min(&self.hi, &scalar::zero())).ok()
    }

    pub fn is_centered(&self) -> bool {
        self.lo == -self.hi.clone()
    }

    /// Whether `[lo, hi]` is a subset of this interval.
    pub fn covers(&self, lo: &Scalar, hi: &Scalar) -> bool {
        self.contains(lo) && self.contains(hi)
    }

    pub fn parse(text: &str) -> Result<Interval> {
        match scalar::parse_list(text)?.as_slice() {
            [lo, hi] => Interval::new(lo.clone(), hi.clone()),
            other => Err(Error::Parse(format!("interval needs two endpoints, got {}", other.len()))),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [Exact(self.lo.clone()), Exact(self.hi.clone())].serialize(s)
    }
}

/// The role a table is expected to play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Capacity,
    Signed,
    IValued(Interval),
}

impl Role {
    pub fn name(&self) -> &'static str {
        match self {
            Role::Capacity => "capacity",
            Role::Signed => "signed",
            Role::IValued(_) => "ivalued",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub struct RoleFlags {
    pub signed: bool,
    pub capacity: bool,
}

/// Why a table fails a role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoleViolation {
    EmptySetValue { expected: Scalar, found: Scalar },
    FullSetValue { expected: Scalar, found: Scalar },
    NotMonotone { smaller: Subset, larger: Subset },
}

impl fmt::Display for RoleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleViolation::EmptySetValue { expected, found } => {
                write!(f, "value at the empty set is {found}, expected {expected}")
            }
            RoleViolation::FullSetValue { expected, found } => {
                write!(f, "value at X is {found}, expected {expected}")
            }
            RoleViolation::NotMonotone { smaller, larger } => {
                write!(f, "value at {smaller} exceeds value at {larger}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Pass,
    Fail(RoleViolation),
}

impl Validation {
    pub fn is_pass(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

/// A real-valued set function on `2^X`, stored as a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Scalar>,
    flags: RoleFlags,
}

impl SetFunction {
    /// Builds a table from sparse assignments; unassigned subsets are 0.
    pub fn new(n: usize, assignments: impl IntoIterator<Item = (Subset, Scalar)>) -> Result<Self> {
        check_dimension(n)?;
        let mut values = vec![scalar::zero(); 1 << n];
        let mut seen = vec![false; 1 << n];
        for (subset, value) in assignments {
            if !subset.fits(n) {
                return Err(Error::SubsetOutOfRange { subset, n });
            }
            let slot = subset.bits() as usize;
            if seen[slot] {
                return Err(Error::DuplicateSubset(subset));
            }
            seen[slot] = true;
            values[slot] = value;
        }
        Ok(Self::with_flags(n, values))
    }

    /// Wraps a dense table indexed by bitmask.
    pub fn from_table(n: usize, values: Vec<Scalar>) -> Result<Self> {
        check_dimension(n)?;
        if values.len() != 1 << n {
            return Err(Error::TableLength { expected: 1 << n, found: values.len() });
        }
        Ok(Self::with_flags(n, values))
    }

    /// Builds a table by evaluating `value` at every subset.
    pub fn from_fn(n: usize, mut value: impl FnMut(Subset) -> Scalar) -> Result<Self> {
        check_dimension(n)?;
        let values = Subset::all(n).map(&mut value).collect();
        Ok(Self::with_flags(n, values))
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_table(n, vec![scalar::zero(); 1 << n])
    }

    fn with_flags(n: usize, values: Vec<Scalar>) -> Self {
        let signed = values[0].is_zero();
        let capacity = signed && first_monotonicity_violation(n, &values).is_none();
        SetFunction { n, values, flags: RoleFlags { signed, capacity } }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, subset: Subset) -> &Scalar {
        &self.values[subset.bits() as usize]
    }

    pub fn flags(&self) -> RoleFlags {
        self.flags
    }

    pub fn is_signed(&self) -> bool {
        self.flags.signed
    }

    pub fn is_capacity(&self) -> bool {
        self.flags.capacity
    }

    pub fn is_ivalued(&self, interval: &Interval) -> bool {
        self.validate(&Role::IValued(interval.clone())).is_pass()
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn validate(&self, role: &Role) -> Validation {
        let found = |s: Subset| self.value(s).clone();
        let (bottom, top) = match role {
            Role::Signed | Role::Capacity => (scalar::zero(), None),
            Role::IValued(i) => (i.lo().clone(), Some(i.hi().clone())),
        };
        if self.values[0] != bottom {
            return Validation::Fail(RoleViolation::EmptySetValue { expected: bottom, found: found(Subset::EMPTY) });
        }
        if let Some(top) = top {
            let full = self.full_set();
            if *self.value(full) != top {
                return Validation::Fail(RoleViolation::FullSetValue { expected: top, found: found(full) });
            }
        }
        if matches!(role, Role::Signed) {
            return Validation::Pass;
        }
        match first_monotonicity_violation(self.n, &self.values) {
            Some((smaller, larger)) => Validation::Fail(RoleViolation::NotMonotone { smaller, larger }),
            None => Validation::Pass,
        }
    }

    /// `v^d(S) = v(X) - v(X \ S)`.
    pub fn dual(&self) -> Result<SetFunction> {
        if !self.is_signed() {
            return Err(Error::NotSignedCapacity(self.values[0].to_string()));
        }
        let full = self.value(self.full_set()).clone();
        SetFunction::from_fn(self.n, |s| &full - self.value(s.complement(self.n)))
    }
}

impl Index<Subset> for SetFunction {
    type Output = Scalar;

    fn index(&self, subset: Subset) -> &Scalar {
        self.value(subset)
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > MAX_N {
        return Err(Error::NExceedsLimit(n));
    }
    Ok(())
}

// Covering pairs S ⊂ S ∪ {i} suffice by transitivity.
fn first_monotonicity_violation(n: usize, values: &[Scalar]) -> Option<(Subset, Subset)> {
    for s in Subset::all(n) {
        for i in 0..n {
            if s.contains_index(i) {
                continue;
            }
            let t = s.insert_index(i);
            if values[s.bits() as usize] > values[t.bits() as usize] {
                return Some((s, t));
            }
        }
    }
    None
}

/// On-disk capacity description.
///
/// ```json
/// {"n": 2, "values": [{"set": [1], "value": "3/10"}], "role": "capacity"}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CapacityFile {
    pub n: usize,
    pub values: Vec<CapacityEntry>,
    pub role: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[Exact; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CapacityEntry {
    pub set: Vec<usize>,
    pub value: Exact,
}

impl CapacityFile {
    pub fn from_set_function(sf: &SetFunction, role: &Role) -> CapacityFile {
        let values = Subset::all(sf.n())
            .map(|s| CapacityEntry { set: s.elements(), value: Exact(sf.value(s).clone()) })
            .collect();
        let interval = match role {
            Role::IValued(i) => Some([Exact(i.lo().clone()), Exact(i.hi().clone())]),
            _ => None,
        };
        CapacityFile { n: sf.n(), values, role: role.name().to_string(), interval }
    }

    pub fn role(&self) -> Result<Role> {
        match (self.role.as_str(), &self.interval) {
            ("capacity", _) => Ok(Role::Capacity),
            ("signed", _) => Ok(Role::Signed),
            ("ivalued", Some([lo, hi])) => Ok(Role::IValued(Interval::new(lo.0.clone(), hi.0.clone())?)),
            ("ivalued", None) => Err(Error::Parse("role `ivalued` needs an `interval`".into())),
            (other, _) => Err(Error::BadRole(other.to_string())),
        }
    }

    /// Builds the table and checks it against the declared role.
    pub fn into_set_function(&self) -> Result<(SetFunction, Role)> {
        let role = self.role()?;
        let mut assignments = Vec::with_capacity(self.values.len());
        for entry in &self.values {
            if entry.set.iter().any(|&e| e == 0 || e > self.n) {
                let subset = Subset::from_elements(&entry.set).unwrap_or(Subset(u32::MAX));
                return Err(Error::SubsetOutOfRange { subset, n: self.n });
            }
            assignments.push((Subset::from_elements(&entry.set)?, entry.value.0.clone()));
        }
        let mut sf = SetFunction::new(self.n, assignments)?;
        if let Role::IValued(interval) = &role {
            // The bottom defaults to `a`, not 0, when the file leaves it out.
            if !self.values.iter().any(|e| e.set.is_empty()) {
                let mut table = sf.values().to_vec();
                table[0] = interval.lo().clone();
                sf = SetFunction::from_table(self.n, table)?;
            }
        }
        if let Validation::Fail(violation) = sf.validate(&role) {
            return Err(match role {
                Role::Signed => Error::NotSignedCapacity(sf.values()[0].to_string()),
                Role::Capacity => Error::NotCapacity(violation.to_string()),
                Role::IValued(_) => Error::NotIValued(violation.to_string()),
            });
        }
        Ok((sf, role))
    }

    pub fn from_json(text: &str) -> Result<CapacityFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("capacity file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn s(elements: &[usize]) -> Subset {
        Subset::from_elements(elements).unwrap()
    }

    fn sample() -> SetFunction {
        SetFunction::new(2, [(s(&[1]), rat(3, 10)), (s(&[2]), rat(1, 2)), (s(&[1, 2]), int(1))]).unwrap()
    }

    #[test]
    fn sparse_construction_defaults_to_zero() {
        let v = sample();
        assert_eq!(v.values(), &[int(0), rat(3, 10), rat(1, 2), int(1)]);
        assert_eq!(v.flags(), RoleFlags { signed: true, capacity: true });

        let z = SetFunction::new(1, []).unwrap();
        assert_eq!(z.values(), &[int(0), int(0)]);
        assert!(z.is_signed());

        let w = SetFunction::new(2, [(s(&[1]), rat(1, 2)), (s(&[1, 2]), int(-1))]).unwrap();
        assert!(w.is_signed());
        assert!(!w.is_capacity());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(SetFunction::new(2, [(s(&[1]), int(1)), (s(&[1]), int(2))]), Err(Error::DuplicateSubset(s(&[1]))));
        assert!(matches!(SetFunction::new(2, [(s(&[3]), int(1))]), Err(Error::SubsetOutOfRange { .. })));
        assert_eq!(SetFunction::new(21, []), Err(Error::NExceedsLimit(21)));
        assert_eq!(SetFunction::new(0, []), Err(Error::ZeroDimension));
        assert!(matches!(SetFunction::from_table(2, vec![int(0)]), Err(Error::TableLength { .. })));
    }

    #[test]
    fn validation_verdicts() {
        assert!(sample().validate(&Role::Capacity).is_pass());

        let bad = SetFunction::from_table(2, vec![int(0), rat(1, 2), rat(1, 4), int(-1)]).unwrap();
        assert_eq!(
            bad.validate(&Role::Capacity),
            Validation::Fail(RoleViolation::NotMonotone { smaller: s(&[1]), larger: s(&[1, 2]) })
        );
        assert!(bad.validate(&Role::Signed).is_pass());

        let mu = SetFunction::from_table(2, vec![int(0), rat(1, 4), rat(1, 2), int(1)]).unwrap();
        assert!(mu.validate(&Role::IValued(Interval::unit())).is_pass());
        let wide = Interval::new(int(0), int(2)).unwrap();
        assert!(matches!(mu.validate(&Role::IValued(wide)), Validation::Fail(RoleViolation::FullSetValue { .. })));
        let shifted = Interval::new(rat(-1, 2), int(1)).unwrap();
        assert!(matches!(mu.validate(&Role::IValued(shifted)), Validation::Fail(RoleViolation::EmptySetValue { .. })));
    }

    #[test]
    fn dual_values() {
        let v = sample();
        let d = v.dual().unwrap();
        assert_eq!(d.values(), &[int(0), rat(1, 2), rat(7, 10), int(1)]);
        assert_eq!(d.dual().unwrap(), v);
        let z = SetFunction::zero(2).unwrap();
        assert_eq!(z.dual().unwrap(), z);

        let unsigned = SetFunction::from_table(1, vec![int(1), int(2)]).unwrap();
        assert!(matches!(unsigned.dual(), Err(Error::NotSignedCapacity(_))));
    }

    #[test]
    fn capacity_file_roundtrip() {
        let text = r#"{"n": 2, "values": [{"set": [1], "value": "3/10"}, {"set": [2], "value": "0.5"},
                       {"set": [1,2], "value": "1"}], "role": "capacity"}"#;
        let file = CapacityFile::from_json(text).unwrap();
        let (sf, role) = file.into_set_function().unwrap();
        assert_eq!(sf, sample());
        assert_eq!(role, Role::Capacity);

        let back = CapacityFile::from_set_function(&sf, &role);
        let (again, _) = CapacityFile::from_json(&back.to_json()).unwrap().into_set_function().unwrap();
        assert_eq!(again, sf);
    }

    #[test]
    fn capacity_file_role_checks() {
        let text = r#"{"n": 2, "values": [{"set": [1], "value": "1/2"}, {"set": [1,2], "value": "-1"}],
                       "role": "capacity"}"#;
        assert!(matches!(CapacityFile::from_json(text).unwrap().into_set_function(), Err(Error::NotCapacity(_))));
        let iv = r#"{"n": 1, "values": [{"set": [1], "value": "2"}], "role": "ivalued", "interval": ["1", "2"]}"#;
        let (sf, role) = CapacityFile::from_json(iv).unwrap().into_set_function().unwrap();
        assert_eq!(sf.values(), &[int(1), int(2)]);
        assert_eq!(role, Role::IValued(Interval::new(int(1), int(2)).unwrap()));
        let unknown = r#"{"n": 1, "values": [], "role": "belief"}"#;
        assert!(matches!(CapacityFile::from_json(unknown).unwrap().into_set_function(), Err(Error::BadRole(_))));
    }

    #[test]
    fn interval_parts() {
        let i = Interval::symmetric_unit();
        assert_eq!(i.positive_part(), Some(Interval::unit()));
        assert_eq!(i.negative_part(), Some(Interval::new(int(-1), int(0)).unwrap()));
        assert!(i.is_centered());
        assert_eq!(Interval::unit().negative_part(), None);
        assert!(Interval::new(int(1), int(1)).is_err());
        assert_eq!(Interval::parse("[-1,1]").unwrap(), i);
    }
}
