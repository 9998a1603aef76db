//! Black-box axiom auditing on exact rational grids.
//!
//! An [`Auditor`] samples a function once on the product grid `A^n` and then
//! checks functional identities (modularity, maxitivity, homogeneity variants,
//! ...) over every applicable operand combination drawn from the grid. A
//! failing check returns the lexicographically first violating combination
//! as a [`Witness`]; replaying that witness reproduces the violation exactly.
//!
//! Verdicts are statements about the grid. A pass is evidence, not proof.

mod audit;
mod grid;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use audit::{Audit, Classification, Facts, Family};
pub use grid::{Grid, GridSpec, MAX_GRID_POINTS};

use crate::comono::{
    bracket, horizontal_split, indicator, is_comonotonic, median_clamp, meet_join, permutations, ray, split_parts,
    BracketMode, CutMode, IndicatorKind, Tuple,
};
use crate::error::{Error, Result};
use crate::integrals::{Integral, TransformFn};
use crate::scalar::{self, Scalar};
use crate::setfunc::{Interval, Subset};

/// A function `I^n → R` the auditor can only evaluate.
pub trait BlackBox: Sync {
    fn arity(&self) -> usize;
    fn eval(&self, x: &Tuple) -> Result<Scalar>;
}

impl BlackBox for Integral {
    fn arity(&self) -> usize {
        Integral::arity(self)
    }

    fn eval(&self, x: &Tuple) -> Result<Scalar> {
        Integral::eval(self, x)
    }
}

impl<T: BlackBox + ?Sized> BlackBox for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, x: &Tuple) -> Result<Scalar> {
        (**self).eval(x)
    }
}

/// Adapts a closure into a [`BlackBox`] of the given arity.
pub struct FnBox<F> {
    n: usize,
    f: F,
}

pub fn from_fn<F>(n: usize, f: F) -> FnBox<F>
where
    F: Fn(&Tuple) -> Result<Scalar> + Sync,
{
    FnBox { n, f }
}

impl<F> BlackBox for FnBox<F>
where
    F: Fn(&Tuple) -> Result<Scalar> + Sync,
{
    fn arity(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Tuple) -> Result<Scalar> {
        (self.f)(x)
    }
}

/// Arithmetic mean of `n` arguments.
pub fn arithmetic_mean(n: usize) -> FnBox<impl Fn(&Tuple) -> Result<Scalar> + Sync> {
    from_fn(n, move |x: &Tuple| Ok(x.iter().fold(scalar::zero(), |acc, v| acc + v) / scalar::int(x.len() as i64)))
}

macro_rules! axioms {
    ($($variant:ident => $id:literal, $identity:literal;)*) => {
        /// The functional identities the auditor knows.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum Axiom {
            $($variant,)*
        }

        impl Axiom {
            pub const ALL: &'static [Axiom] = &[$(Axiom::$variant,)*];

            pub fn id(self) -> &'static str {
                match self {
                    $(Axiom::$variant => $id,)*
                }
            }

            /// The identity being checked, in plain notation.
            pub fn identity(self) -> &'static str {
                match self {
                    $(Axiom::$variant => $identity,)*
                }
            }
        }

        impl FromStr for Axiom {
            type Err = Error;

            fn from_str(s: &str) -> Result<Axiom> {
                match s.trim() {
                    $($id => Ok(Axiom::$variant),)*
                    other => Err(Error::Parse(format!("unknown axiom `{other}`"))),
                }
            }
        }
    };
}

axioms! {
    Modular => "modular", "f(x) + f(x') = f(x ∧ x') + f(x ∨ x')";
    ComonoModular => "comono_modular", "f(x) + f(x') = f(x ∧ x') + f(x ∨ x') for comonotonic x, x'";
    ComonoAdditive => "comono_additive", "f(x + x') = f(x) + f(x') for comonotonic x, x' with x + x' in the box";
    HorizMinAdditive => "horiz_min_additive", "f(x) = f(x ∧ c) + f(x - x ∧ c)";
    HorizMaxAdditive => "horiz_max_additive", "f(x) = f(x ∨ c) + f(x - x ∨ c)";
    HorizMedianAdditive => "horiz_median_additive", "f(x) = f(med(-c, x, c)) + f(x - x ∧ c) + f(x - x ∨ (-c)), c >= 0";
    InvarHorizMinDiff => "invar_horiz_min_diff", "f(x) - f(x ∧ c) = f([x]_c) - f([x]_c ∧ c) on the nonnegative part";
    InvarHorizMaxDiff => "invar_horiz_max_diff", "f(x) - f(x ∨ c) = f([x]^c) - f([x]^c ∨ c) on the nonpositive part";
    Maxitive => "maxitive", "f(x ∨ x') = f(x) ∨ f(x')";
    Minitive => "minitive", "f(x ∧ x') = f(x) ∧ f(x')";
    ComonoMaxitive => "comono_maxitive", "f(x ∨ x') = f(x) ∨ f(x') for comonotonic x, x'";
    ComonoMinitive => "comono_minitive", "f(x ∧ x') = f(x) ∧ f(x') for comonotonic x, x'";
    PosHomogRays => "pos_homog_rays", "f(c t 1_S) = c f(t 1_S) for c > 0";
    SignHomogRays => "sign_homog_rays", "f(t 1_S) = sign(t) t f(sign(t) 1_S)";
    FullHomogRays => "full_homog_rays", "f(t 1_S) = t f(1_S)";
    DualShift => "dual_shift", "f(1_{X∖S}) = f(1) + f(-1_S)";
    QuasiHomogRays => "quasi_homog_rays", "f(t 1_S) = sign(t) φ(t) f(sign(t) 1_S)";
    QuasiFullHomogRays => "quasi_full_homog_rays", "f(t 1_S) = φ(t) f(1_S)";
    QuasiMaxHomog => "quasi_max_homog", "f(r ∨ x) = φ(r) ∨ f(x)";
    QuasiMinHomog => "quasi_min_homog", "f(r ∧ x) = φ(r) ∧ f(x)";
    WeakMaxHomog => "weak_max_homog", "f(t ∨ e_S) = f(t, .., t) ∨ f(e_S)";
    WeakMinHomog => "weak_min_homog", "f(t ∧ e_S) = f(t, .., t) ∧ f(e_S)";
    Nondecreasing => "nondecreasing", "x <= x' implies f(x) <= f(x')";
    Odd => "odd", "f(-x) = -f(x)";
    Idempotent => "idempotent", "f(c, .., c) = c";
    PlusSplit => "plus_split", "f(x) + f(0) = f(x⁺) + f(-x⁻)";
    VanishesAtOrigin => "vanishes_at_origin", "f(0) = 0";
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Axiom {
    pub fn needs_transform(self) -> bool {
        matches!(self, Axiom::QuasiHomogRays | Axiom::QuasiFullHomogRays | Axiom::QuasiMaxHomog | Axiom::QuasiMinHomog)
    }

    pub fn relation(self) -> Relation {
        match self {
            Axiom::Nondecreasing => Relation::AtMost,
            _ => Relation::Equal,
        }
    }

    /// Whether the axiom can have any applicable operand on a box of this shape.
    pub fn applicable(self, bounds: &Interval, has_transform: bool) -> bool {
        let zero = scalar::zero();
        let one = scalar::one();
        let has_zero = bounds.contains(&zero);
        match self {
            _ if self.needs_transform() && !has_transform => false,
            Axiom::HorizMedianAdditive => bounds.is_centered(),
            Axiom::InvarHorizMinDiff => has_zero && bounds.positive_part().is_some(),
            Axiom::InvarHorizMaxDiff => has_zero && bounds.negative_part().is_some(),
            Axiom::DualShift => bounds.covers(&-one.clone(), &one),
            Axiom::FullHomogRays | Axiom::QuasiFullHomogRays => bounds.covers(&zero, &one),
            Axiom::SignHomogRays | Axiom::QuasiHomogRays | Axiom::PosHomogRays => has_zero,
            Axiom::PlusSplit | Axiom::VanishesAtOrigin => has_zero,
            Axiom::Odd => bounds.is_centered(),
            _ => true,
        }
    }

    /// Every non-transform axiom applicable on `bounds`, plus the transform
    /// axioms when a transform is supplied.
    pub fn battery(bounds: &Interval, has_transform: bool) -> Vec<Axiom> {
        Axiom::ALL.iter().copied().filter(|a| a.applicable(bounds, has_transform)).collect()
    }

    pub fn parse_list(csv: &str) -> Result<Vec<Axiom>> {
        csv.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `lhs = rhs`
    Equal,
    /// `lhs <= rhs`
    AtMost,
}

/// The quantified variables of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Operands {
    Pair {
        x: Tuple,
        y: Tuple,
    },
    Point {
        x: Tuple,
    },
    /// A point and a level `c` (also the `r` of the quasi-homogeneity identities).
    Cut {
        x: Tuple,
        #[serde(with = "scalar::as_string")]
        c: Scalar,
    },
    /// A scalar `t` and a subset `S`.
    LevelSet {
        #[serde(with = "scalar::as_string")]
        t: Scalar,
        set: Subset,
    },
    ScaledSet {
        #[serde(with = "scalar::as_string")]
        t: Scalar,
        #[serde(with = "scalar::as_string")]
        c: Scalar,
        set: Subset,
    },
    Set {
        set: Subset,
    },
    Level {
        #[serde(with = "scalar::as_string")]
        c: Scalar,
    },
    Origin,
}

/// A violating instance together with both sides of the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub operands: Operands,
    #[serde(with = "scalar::as_string")]
    pub lhs: Scalar,
    #[serde(with = "scalar::as_string")]
    pub rhs: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Operand combinations evaluated before the verdict was reached.
    pub tested: usize,
    /// Combinations dropped because a closure condition failed.
    pub skipped: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Default)]
struct Scan {
    tested: usize,
    skipped: usize,
    witness: Option<Witness>,
}

/// A function sampled on a grid, ready to be checked against axioms.
pub struct Auditor<'f> {
    f: &'f dyn BlackBox,
    grid: Grid,
    digits: Vec<Vec<usize>>,
    table: Vec<Scalar>,
    tolerance: Option<Scalar>,
}

impl<'f> Auditor<'f> {
    pub fn new(f: &'f dyn BlackBox, spec: &GridSpec) -> Result<Auditor<'f>> {
        Auditor::on_grid(f, Grid::new(spec, f.arity())?)
    }

    pub fn on_grid(f: &'f dyn BlackBox, grid: Grid) -> Result<Auditor<'f>> {
        if grid.n() != f.arity() {
            return Err(Error::DimensionMismatch { expected: f.arity(), found: grid.n() });
        }
        let digits: Vec<Vec<usize>> = (0..grid.len()).map(|i| grid.digits(i)).collect();
        let sampled: Vec<Result<Scalar>> = (0..grid.len()).into_par_iter().map(|i| f.eval(&grid.point(i))).collect();
        let mut table = Vec::with_capacity(sampled.len());
        for (i, value) in sampled.into_iter().enumerate() {
            table
                .push(value.map_err(|e| Error::DomainGap { point: grid.point(i).to_string(), reason: e.to_string() })?);
        }
        Ok(Auditor { f, grid, digits, table, tolerance: None })
    }

    /// Accepts `|lhs - rhs| <= eps` instead of exact equality.
    pub fn with_tolerance(mut self, eps: Scalar) -> Self {
        self.tolerance = Some(eps);
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn bounds(&self) -> &Interval {
        self.grid.bounds()
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn sampled(&self) -> &[Scalar] {
        &self.table
    }

    /// `f(x)`, from the sample table when `x` is a grid point.
    pub fn eval(&self, x: &Tuple) -> Result<Scalar> {
        match self.grid.locate(x) {
            Some(i) => Ok(self.table[i].clone()),
            None => self.f.eval(x).map_err(|e| Error::DomainGap { point: x.to_string(), reason: e.to_string() }),
        }
    }

    fn holds(&self, relation: Relation, lhs: &Scalar, rhs: &Scalar) -> bool {
        match (&self.tolerance, relation) {
            (None, Relation::Equal) => lhs == rhs,
            (None, Relation::AtMost) => lhs <= rhs,
            (Some(eps), Relation::Equal) => (lhs - rhs).abs() <= *eps,
            (Some(eps), Relation::AtMost) => *lhs <= rhs + eps,
        }
    }

    pub fn check(&self, axiom: Axiom, aux: Option<&TransformFn>) -> Result<AxiomReport> {
        match (axiom.needs_transform(), aux) {
            (true, None) => return Err(Error::MissingTransform(axiom)),
            (false, Some(_)) => return Err(Error::UnexpectedTransform(axiom)),
            _ => {}
        }
        let scan = match axiom {
            Axiom::Modular | Axiom::Maxitive | Axiom::Minitive => self.scan_pairs(axiom, &self.all_pairs()),
            Axiom::ComonoModular | Axiom::ComonoMaxitive | Axiom::ComonoMinitive => {
                self.scan_pairs(axiom, &self.comonotonic_pairs(false))
            }
            Axiom::Nondecreasing => self.scan_steps(),
            _ => self.scan_generic(axiom, aux)?,
        };
        if scan.tested == 0 {
            return Err(Error::EmptyApplicableSet { axiom, skipped: scan.skipped });
        }
        Ok(AxiomReport {
            axiom,
            verdict: if scan.witness.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness: scan.witness,
            tested: scan.tested,
            skipped: scan.skipped,
        })
    }

    /// Both sides of the identity at `operands`, or `None` when the operands
    /// fall outside the axiom's domain or closure conditions.
    pub fn replay(
        &self,
        axiom: Axiom,
        operands: &Operands,
        aux: Option<&TransformFn>,
    ) -> Result<Option<(Scalar, Scalar)>> {
        self.sides(axiom, operands, aux)
    }

    /// Whether the identity is violated at the witness, re-evaluated from scratch.
    pub fn reproduces(&self, axiom: Axiom, witness: &Witness, aux: Option<&TransformFn>) -> Result<bool> {
        Ok(match self.replay(axiom, &witness.operands, aux)? {
            Some((lhs, rhs)) => lhs == witness.lhs && rhs == witness.rhs && !self.holds(axiom.relation(), &lhs, &rhs),
            None => false,
        })
    }

    pub fn audit(&self, axioms: &[Axiom], aux: Option<&TransformFn>) -> Result<Audit> {
        let mut reports = Vec::with_capacity(axioms.len());
        for &axiom in axioms {
            let aux = if axiom.needs_transform() { aux } else { None };
            reports.push(self.check(axiom, aux)?);
        }
        Ok(Audit::classify(reports, self.facts()?, self.bounds(), aux))
    }

    pub fn facts(&self) -> Result<Facts> {
        let n = self.grid.n();
        let nonconstant = self.table.iter().any(|v| *v != self.table[0]);
        let indicator_nonzero = |level: Scalar| -> Result<Option<bool>> {
            if !self.bounds().contains(&level) {
                return Ok(None);
            }
            for set in Subset::all(n) {
                if !self.eval(&ray(n, &level, set))?.is_zero() {
                    return Ok(Some(true));
                }
            }
            Ok(Some(false))
        };
        Ok(Facts {
            nonconstant,
            unit_indicator_nonzero: indicator_nonzero(scalar::one())?,
            negative_indicator_nonzero: indicator_nonzero(-scalar::one())?,
        })
    }

    fn all_pairs(&self) -> Vec<(usize, usize)> {
        let count = self.grid.len();
        (0..count).flat_map(|a| (a + 1..count).map(move |b| (a, b))).collect()
    }

    /// Comonotonic pairs `a < b` (or `a <= b` with `diagonal`) in
    /// lexicographic order.
    ///
    /// Pairs are generated region by region: for each permutation the sorted
    /// grid points of that region are paired, and a pair is kept only in the
    /// region of its canonical permutation (indices ordered by `(x_i, y_i, i)`).
    pub fn comonotonic_pairs(&self, diagonal: bool) -> Vec<(usize, usize)> {
        let n = self.grid.n();
        let k = self.grid.axis().len();
        let chains = nondecreasing_sequences(n, k);
        let mut pairs: Vec<(usize, usize)> = permutations(n)
            .into_par_iter()
            .flat_map_iter(|perm| {
                let region: Vec<usize> = chains
                    .iter()
                    .map(|chain| {
                        let mut digits = vec![0; n];
                        for (rank, &coord) in perm.iter().enumerate() {
                            digits[coord] = chain[rank];
                        }
                        self.grid.index_of(&digits)
                    })
                    .collect();
                let mut found = Vec::new();
                for &a in &region {
                    for &b in &region {
                        let keep = if diagonal { a <= b } else { a < b };
                        if keep && canonical_permutation(&self.digits[a], &self.digits[b]) == perm {
                            found.push((a, b));
                        }
                    }
                }
                found
            })
            .collect();
        pairs.par_sort_unstable();
        pairs
    }

    fn meet_join_index(&self, a: usize, b: usize) -> (usize, usize) {
        let (da, db) = (&self.digits[a], &self.digits[b]);
        let meet: Vec<usize> = da.iter().zip(db).map(|(x, y)| *x.min(y)).collect();
        let join: Vec<usize> = da.iter().zip(db).map(|(x, y)| *x.max(y)).collect();
        (self.grid.index_of(&meet), self.grid.index_of(&join))
    }

    fn pair_sides(&self, axiom: Axiom, a: usize, b: usize) -> (Scalar, Scalar) {
        let (m, j) = self.meet_join_index(a, b);
        let t = &self.table;
        match axiom {
            Axiom::Modular | Axiom::ComonoModular => (&t[a] + &t[b], &t[m] + &t[j]),
            Axiom::Maxitive | Axiom::ComonoMaxitive => (t[j].clone(), scalar::max(&t[a], &t[b])),
            Axiom::Minitive | Axiom::ComonoMinitive => (t[m].clone(), scalar::min(&t[a], &t[b])),
            _ => unreachable!("not a lattice pair axiom"),
        }
    }

    fn scan_pairs(&self, axiom: Axiom, pairs: &[(usize, usize)]) -> Scan {
        let first = pairs.par_iter().position_first(|&(a, b)| {
            let (lhs, rhs) = self.pair_sides(axiom, a, b);
            !self.holds(Relation::Equal, &lhs, &rhs)
        });
        match first {
            None => Scan { tested: pairs.len(), skipped: 0, witness: None },
            Some(pos) => {
                let (a, b) = pairs[pos];
                let (lhs, rhs) = self.pair_sides(axiom, a, b);
                let operands = Operands::Pair { x: self.grid.point(a), y: self.grid.point(b) };
                Scan { tested: pos + 1, skipped: 0, witness: Some(Witness { operands, lhs, rhs }) }
            }
        }
    }

    // Covering steps x → x + e_i on the grid; monotonicity along them implies
    // monotonicity on the whole grid.
    fn scan_steps(&self) -> Scan {
        let n = self.grid.n();
        let k = self.grid.axis().len();
        let mut scan = Scan::default();
        for a in 0..self.grid.len() {
            for i in 0..n {
                if self.digits[a][i] + 1 >= k {
                    continue;
                }
                let b = a + k.pow((n - 1 - i) as u32);
                scan.tested += 1;
                if !self.holds(Relation::AtMost, &self.table[a], &self.table[b]) {
                    let operands = Operands::Pair { x: self.grid.point(a), y: self.grid.point(b) };
                    scan.witness = Some(Witness { operands, lhs: self.table[a].clone(), rhs: self.table[b].clone() });
                    return scan;
                }
            }
        }
        scan
    }

    fn scan_generic(&self, axiom: Axiom, aux: Option<&TransformFn>) -> Result<Scan> {
        let mut scan = Scan::default();
        for operands in self.candidates(axiom) {
            match self.sides(axiom, &operands, aux)? {
                None => scan.skipped += 1,
                Some((lhs, rhs)) => {
                    scan.tested += 1;
                    if !self.holds(axiom.relation(), &lhs, &rhs) {
                        scan.witness = Some(Witness { operands, lhs, rhs });
                        return Ok(scan);
                    }
                }
            }
        }
        Ok(scan)
    }

    fn candidates(&self, axiom: Axiom) -> Vec<Operands> {
        let n = self.grid.n();
        let axis = self.grid.axis();
        let points = || (0..self.grid.len()).map(|i| self.grid.point(i));
        let cuts = |keep_point: &dyn Fn(&Tuple) -> bool, keep_level: &dyn Fn(&Scalar) -> bool| {
            points()
                .filter(|x| keep_point(x))
                .flat_map(|x| {
                    axis.iter().filter(|c| keep_level(c)).map(move |c| Operands::Cut { x: x.clone(), c: c.clone() })
                })
                .collect::<Vec<_>>()
        };
        let level_sets = || {
            axis.iter()
                .flat_map(|t| Subset::all(n).map(move |set| Operands::LevelSet { t: t.clone(), set }))
                .collect::<Vec<_>>()
        };
        let any = |_: &Tuple| true;
        let every = |_: &Scalar| true;
        match axiom {
            Axiom::ComonoAdditive => self
                .comonotonic_pairs(true)
                .into_iter()
                .map(|(a, b)| Operands::Pair { x: self.grid.point(a), y: self.grid.point(b) })
                .collect(),
            Axiom::HorizMinAdditive | Axiom::HorizMaxAdditive | Axiom::QuasiMaxHomog | Axiom::QuasiMinHomog => {
                cuts(&any, &every)
            }
            Axiom::HorizMedianAdditive => cuts(&any, &|c| !c.is_negative()),
            Axiom::InvarHorizMinDiff => cuts(&|x| x.is_nonnegative(), &|c| !c.is_negative()),
            Axiom::InvarHorizMaxDiff => cuts(&|x| x.iter().all(|v| !v.is_positive()), &|c| !c.is_positive()),
            Axiom::PosHomogRays => {
                let mut out = Vec::new();
                for t in axis.iter().filter(|t| !t.is_zero()) {
                    for s in axis.iter().filter(|s| *s != t && !s.is_zero() && s.is_positive() == t.is_positive()) {
                        let c = s / t;
                        out.extend(Subset::all(n).map(|set| Operands::ScaledSet { t: t.clone(), c: c.clone(), set }));
                    }
                }
                out
            }
            Axiom::SignHomogRays
            | Axiom::FullHomogRays
            | Axiom::QuasiHomogRays
            | Axiom::QuasiFullHomogRays
            | Axiom::WeakMaxHomog
            | Axiom::WeakMinHomog => level_sets(),
            Axiom::DualShift => Subset::all(n).map(|set| Operands::Set { set }).collect(),
            Axiom::Odd | Axiom::PlusSplit => points().map(|x| Operands::Point { x }).collect(),
            Axiom::Idempotent => axis.iter().map(|c| Operands::Level { c: c.clone() }).collect(),
            Axiom::VanishesAtOrigin => vec![Operands::Origin],
            Axiom::Modular
            | Axiom::ComonoModular
            | Axiom::Maxitive
            | Axiom::Minitive
            | Axiom::ComonoMaxitive
            | Axiom::ComonoMinitive
            | Axiom::Nondecreasing => self
                .all_pairs()
                .into_iter()
                .map(|(a, b)| Operands::Pair { x: self.grid.point(a), y: self.grid.point(b) })
                .collect(),
        }
    }

    /// The definitional evaluation of one identity instance.
    fn sides(&self, axiom: Axiom, operands: &Operands, aux: Option<&TransformFn>) -> Result<Option<(Scalar, Scalar)>> {
        let n = self.grid.n();
        let bounds = self.grid.bounds();
        let inside = |t: &Tuple| t.len() == n && t.lies_in(bounds);
        let f = |x: &Tuple| self.eval(x);
        let phi = |t: &Scalar| -> Result<Scalar> { aux.ok_or(Error::MissingTransform(axiom))?.eval(t) };
        let mismatch = || Err(Error::Unsupported(format!("operands do not fit axiom `{axiom}`")));
        let zero = scalar::zero();
        let one = scalar::one();

        let sides = match (axiom, operands) {
            (Axiom::Modular | Axiom::ComonoModular, Operands::Pair { x, y })
            | (Axiom::Maxitive | Axiom::ComonoMaxitive, Operands::Pair { x, y })
            | (Axiom::Minitive | Axiom::ComonoMinitive, Operands::Pair { x, y }) => {
                if !inside(x) || !inside(y) {
                    return Ok(None);
                }
                let needs_comono =
                    matches!(axiom, Axiom::ComonoModular | Axiom::ComonoMaxitive | Axiom::ComonoMinitive);
                if needs_comono && !is_comonotonic(x, y)? {
                    return Ok(None);
                }
                let (meet, join) = meet_join(x, y)?;
                let (fx, fy) = (f(x)?, f(y)?);
                match axiom {
                    Axiom::Modular | Axiom::ComonoModular => (fx + fy, f(&meet)? + f(&join)?),
                    Axiom::Maxitive | Axiom::ComonoMaxitive => (f(&join)?, scalar::max(&fx, &fy)),
                    _ => (f(&meet)?, scalar::min(&fx, &fy)),
                }
            }
            (Axiom::ComonoAdditive, Operands::Pair { x, y }) => {
                if !inside(x) || !inside(y) || !is_comonotonic(x, y)? {
                    return Ok(None);
                }
                let sum = x + y;
                if !inside(&sum) {
                    return Ok(None);
                }
                (f(&sum)?, f(x)? + f(y)?)
            }
            (Axiom::HorizMinAdditive | Axiom::HorizMaxAdditive, Operands::Cut { x, c }) => {
                if !inside(x) || !bounds.contains(c) {
                    return Ok(None);
                }
                let mode = if axiom == Axiom::HorizMinAdditive { CutMode::Min } else { CutMode::Max };
                let Ok((cut, rest)) = horizontal_split(x, c, mode, bounds) else {
                    return Ok(None);
                };
                (f(x)?, f(&cut)? + f(&rest)?)
            }
            (Axiom::HorizMedianAdditive, Operands::Cut { x, c }) => {
                if !inside(x) || c.is_negative() || !bounds.contains(c) {
                    return Ok(None);
                }
                let med = median_clamp(x, c)?;
                let upper = x - &x.meet_level(c);
                let lower = x - &x.join_level(&-c.clone());
                if ![&med, &upper, &lower].iter().all(|t| inside(t)) {
                    return Ok(None);
                }
                (f(x)?, f(&med)? + f(&upper)? + f(&lower)?)
            }
            (Axiom::InvarHorizMinDiff | Axiom::InvarHorizMaxDiff, Operands::Cut { x, c }) => {
                let low = axiom == Axiom::InvarHorizMinDiff;
                let in_part = if low {
                    x.is_nonnegative() && !c.is_negative()
                } else {
                    x.iter().all(|v| !v.is_positive()) && !c.is_positive()
                };
                if !inside(x) || !in_part || !bounds.contains(c) {
                    return Ok(None);
                }
                let mode = if low { BracketMode::Low } else { BracketMode::High };
                let cut = |t: &Tuple| if low { t.meet_level(c) } else { t.join_level(c) };
                let bracketed = bracket(x, c, mode)?;
                if !inside(&bracketed) {
                    return Ok(None);
                }
                (f(x)? - f(&cut(x))?, f(&bracketed)? - f(&cut(&bracketed))?)
            }
            (Axiom::PosHomogRays, Operands::ScaledSet { t, c, set }) => {
                if !c.is_positive() {
                    return Ok(None);
                }
                let scaled = ray(n, &(c * t), *set);
                let base = ray(n, t, *set);
                if !set.fits(n) || !inside(&scaled) || !inside(&base) {
                    return Ok(None);
                }
                (f(&scaled)?, c * f(&base)?)
            }
            (
                Axiom::SignHomogRays | Axiom::FullHomogRays | Axiom::QuasiHomogRays | Axiom::QuasiFullHomogRays,
                Operands::LevelSet { t, set },
            ) => {
                let sign = match axiom {
                    Axiom::SignHomogRays | Axiom::QuasiHomogRays => scalar::signum(t),
                    _ => one.clone(),
                };
                let point = ray(n, t, *set);
                let unit = ray(n, &sign, *set);
                if !set.fits(n) || !inside(&point) || !inside(&unit) {
                    return Ok(None);
                }
                let factor = match axiom {
                    Axiom::SignHomogRays => &sign * t,
                    Axiom::FullHomogRays => t.clone(),
                    Axiom::QuasiHomogRays => &sign * phi(t)?,
                    _ => phi(t)?,
                };
                (f(&point)?, factor * f(&unit)?)
            }
            (Axiom::DualShift, Operands::Set { set }) => {
                let complement = indicator(n, set.complement(n), &IndicatorKind::Unit)?;
                let all = indicator(n, Subset::full(n), &IndicatorKind::Unit)?;
                let negative = indicator(n, *set, &IndicatorKind::Signed)?;
                if ![&complement, &all, &negative].iter().all(|t| inside(t)) {
                    return Ok(None);
                }
                (f(&complement)?, f(&all)? + f(&negative)?)
            }
            (Axiom::QuasiMaxHomog | Axiom::QuasiMinHomog, Operands::Cut { x, c }) => {
                if !inside(x) || !bounds.contains(c) {
                    return Ok(None);
                }
                let (fx, pr) = (f(x)?, phi(c)?);
                if axiom == Axiom::QuasiMaxHomog {
                    (f(&x.join_level(c))?, scalar::max(&pr, &fx))
                } else {
                    (f(&x.meet_level(c))?, scalar::min(&pr, &fx))
                }
            }
            (Axiom::WeakMaxHomog | Axiom::WeakMinHomog, Operands::LevelSet { t, set }) => {
                if !bounds.contains(t) || !set.fits(n) {
                    return Ok(None);
                }
                let e = indicator(n, *set, &IndicatorKind::Endpoints(bounds.clone()))?;
                let diagonal = f(&Tuple::constant(n, t))?;
                let fe = f(&e)?;
                if axiom == Axiom::WeakMaxHomog {
                    (f(&e.join_level(t))?, scalar::max(&diagonal, &fe))
                } else {
                    (f(&e.meet_level(t))?, scalar::min(&diagonal, &fe))
                }
            }
            (Axiom::Nondecreasing, Operands::Pair { x, y }) => {
                if !inside(x) || !inside(y) || !x.le(y) {
                    return Ok(None);
                }
                (f(x)?, f(y)?)
            }
            (Axiom::Odd, Operands::Point { x }) => {
                let neg = -x;
                if !inside(x) || !inside(&neg) {
                    return Ok(None);
                }
                (f(&neg)?, -f(x)?)
            }
            (Axiom::Idempotent, Operands::Level { c }) => {
                if !bounds.contains(c) {
                    return Ok(None);
                }
                (f(&Tuple::constant(n, c))?, c.clone())
            }
            (Axiom::PlusSplit, Operands::Point { x }) => {
                if !inside(x) || !bounds.contains(&zero) {
                    return Ok(None);
                }
                let (plus, minus) = split_parts(x);
                (f(x)? + f(&Tuple::zeros(n))?, f(&plus)? + f(&-&minus)?)
            }
            (Axiom::VanishesAtOrigin, Operands::Origin) => {
                if !bounds.contains(&zero) {
                    return Ok(None);
                }
                (f(&Tuple::zeros(n))?, zero)
            }
            _ => return mismatch(),
        };
        Ok(Some(sides))
    }
}

/// All nondecreasing sequences of length `n` over `0..k`.
fn nondecreasing_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn extend(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for d in start..k {
            current.push(d);
            extend(n, k, d, current, out);
            current.pop();
        }
    }
    extend(n, k, 0, &mut current, &mut out);
    out
}

fn canonical_permutation(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..x.len()).collect();
    perm.sort_by_key(|&i| (x[i], y[i], i));
    perm
}

/// Checks one axiom for `f` on the grid described by `spec`.
pub fn check(axiom: Axiom, f: &dyn BlackBox, spec: &GridSpec, aux: Option<&TransformFn>) -> Result<AxiomReport> {
    Auditor::new(f, spec)?.check(axiom, aux)
}

/// Runs a list of axioms and classifies the outcome.
pub fn audit(f: &dyn BlackBox, spec: &GridSpec, axioms: &[Axiom], aux: Option<&TransformFn>) -> Result<Audit> {
    Auditor::new(f, spec)?.audit(axioms, aux)
}

#[cfg(test)]
mod tests;
