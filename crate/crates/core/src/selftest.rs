//! Built-in conformance suite.
//!
//! Each criterion draws its inputs from a fixed seed, checks exact identities
//! and reports how many individual comparisons it made. The report contains
//! no timings, so two runs produce byte-identical JSON.

use serde::Serialize;

use crate::axioms::{arithmetic_mean, from_fn, Auditor, Axiom, BlackBox, Grid, GridSpec};
use crate::comono::{indicator, split_parts, IndicatorKind, Tuple};
use crate::decompose::{
    build_normal_form, build_separation, factorize_quasi_sugeno, fit_quasi_choquet, fit_signed_choquet, Condition, Fit,
    NormalMode, Side,
};
use crate::error::{Error, Result};
use crate::gen::{random_set_function, random_transform, rng};
use crate::integrals::{
    choquet, quasi_choquet, sugeno, sugeno_normal_form, symmetric_choquet_region, IValuedCapacity, Integral,
};
use crate::scalar::{int, rat, Scalar};
use crate::setfunc::{Interval, Role, SetFunction, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type Check = fn(&mut Tally) -> Result<String>;

/// Criteria `1..=11` with their names.
pub const CRITERIA: &[(u32, &str, Check)] = &[
    (1, "indicator identity", indicator_identity),
    (2, "duality identity", duality_identity),
    (3, "symmetric cross-check", symmetric_cross_check),
    (4, "signed Choquet characterization", signed_choquet_characterization),
    (5, "positive-part negative control", positive_part_control),
    (6, "additive form round-trip", separation_round_trip),
    (7, "Sugeno equivalences", sugeno_equivalences),
    (8, "implication suite", implication_suite),
    (9, "Shilkret negative control", shilkret_control),
    (10, "quasi-Sugeno factorization", quasi_sugeno_factorization),
    (11, "quasi-Choquet fit", quasi_choquet_fit),
];

/// Counts comparisons and records the first mismatch.
#[derive(Default)]
pub struct Tally {
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn equal(&mut self, lhs: &Scalar, rhs: &Scalar, what: impl FnOnce() -> String) {
        self.expect(lhs == rhs, || format!("{}: {lhs} != {rhs}", what()));
    }
}

pub fn run_criterion(id: u32) -> Result<CriterionResult> {
    let &(id, name, check) = CRITERIA
        .iter()
        .find(|(cid, _, _)| *cid == id)
        .ok_or_else(|| Error::Unsupported(format!("no criterion {id}")))?;
    let mut tally = Tally::default();
    let outcome = check(&mut tally);
    let (passed, detail) = match (outcome, tally.failure) {
        (Ok(summary), None) => (true, summary),
        (Ok(_), Some(failure)) => (false, failure),
        (Err(e), _) => (false, format!("error: {e}")),
    };
    Ok(CriterionResult { id, name, passed, checks: tally.checks, detail })
}

pub fn run_all() -> SelftestReport {
    let criteria: Vec<CriterionResult> =
        CRITERIA.iter().map(|(id, _, _)| run_criterion(*id).expect("listed criterion")).collect();
    let passed = criteria.iter().all(|c| c.passed);
    SelftestReport { criteria, passed }
}

fn symmetric_spec(k: usize) -> GridSpec {
    GridSpec::new(Interval::symmetric_unit(), k)
}

fn unit_spec(k: usize) -> GridSpec {
    GridSpec::new(Interval::unit(), k)
}

fn grid_points(spec: &GridSpec, n: usize) -> Result<Vec<Tuple>> {
    Ok(Grid::new(spec, n)?.points().collect())
}

fn signed(seed: u64, n: usize) -> Result<SetFunction> {
    random_set_function(&mut rng(seed), n, &Role::Signed, None)
}

fn ivalued(seed: u64, n: usize) -> Result<IValuedCapacity> {
    let role = Role::IValued(Interval::unit());
    IValuedCapacity::new(random_set_function(&mut rng(seed), n, &role, None)?, Interval::unit())
}

fn indicator_identity(tally: &mut Tally) -> Result<String> {
    for i in 0..50u64 {
        let n = (i % 5) as usize + 1;
        let v = signed(100 + i, n)?;
        for set in Subset::all(n) {
            let value = choquet(&v, &indicator(n, set, &IndicatorKind::Unit)?)?;
            tally.equal(&value, v.value(set), || format!("C_v(1_{set}) for seed {}", 100 + i));
        }
    }
    Ok("C_v(1_S) = v(S) for 50 signed capacities, n = 1..5".into())
}

fn duality_identity(tally: &mut Tally) -> Result<String> {
    let spec = symmetric_spec(5);
    for i in 0..20u64 {
        let n = (i % 4) as usize + 1;
        let v = signed(200 + i, n)?;
        let dual = v.dual()?;
        for x in grid_points(&spec, n)? {
            let (plus, minus) = split_parts(&x);
            let rhs = choquet(&v, &plus)? - choquet(&dual, &minus)?;
            tally.equal(&choquet(&v, &x)?, &rhs, || format!("duality at {x}"));
        }
    }
    Ok("C_v(x) = C_v(x⁺) - C_{v^d}(x⁻) on the k = 5 grid of [-1, 1]^n, n <= 4".into())
}

fn symmetric_cross_check(tally: &mut Tally) -> Result<String> {
    let spec = symmetric_spec(5);
    for i in 0..20u64 {
        let n = (i % 4) as usize + 1;
        let v = signed(300 + i, n)?;
        for x in grid_points(&spec, n)? {
            let (plus, minus) = split_parts(&x);
            let parts = choquet(&v, &plus)? - choquet(&v, &minus)?;
            let region = symmetric_choquet_region(&v, &x)?;
            tally.equal(&parts, &region, || format!("two symmetric forms at {x}"));
            let mirrored = symmetric_choquet_region(&v, &-&x)?;
            tally.equal(&mirrored, &-region, || format!("oddness at {x}"));
        }
    }
    Ok("part and region forms agree and are odd on 20 grids".into())
}

fn signed_choquet_characterization(tally: &mut Tally) -> Result<String> {
    let spec = symmetric_spec(5);
    let mut pairs = 0;
    for i in 0..9u64 {
        let n = (i % 3) as usize + 1;
        let v = signed(400 + i, n)?;
        let f = Integral::Choquet(v.clone());
        let auditor = Auditor::new(&f, &spec)?;
        for axiom in [Axiom::ComonoModular, Axiom::SignHomogRays, Axiom::DualShift, Axiom::VanishesAtOrigin] {
            let report = auditor.check(axiom, None)?;
            if axiom == Axiom::ComonoModular {
                pairs += report.tested;
            }
            tally.expect(report.passed(), || format!("{axiom} failed for seed {}: {:?}", 400 + i, report.witness));
        }
        let fitted = fit_signed_choquet(&f, &spec)?.fitted();
        tally.expect(fitted.as_ref() == Some(&v), || format!("fit did not recover v for seed {}", 400 + i));
    }
    Ok(format!("9 capacities, n <= 3, {pairs} comonotonic pairs; all identities hold and fits recover v"))
}

fn positive_part_control(tally: &mut Tally) -> Result<String> {
    let spec = symmetric_spec(5);
    let mut controls = 0;
    let mut first = String::new();
    let mut seed = 500u64;
    while controls < 5 {
        seed += 1;
        let v = signed(seed, 2)?;
        if v == v.dual()? {
            continue;
        }
        controls += 1;
        let base = Integral::Choquet(v);
        let f = from_fn(2, move |x: &Tuple| base.eval(&split_parts(x).0));
        let auditor = Auditor::new(&f, &spec)?;
        for axiom in [Axiom::ComonoModular, Axiom::SignHomogRays] {
            tally.expect(auditor.check(axiom, None)?.passed(), || format!("{axiom} failed for seed {seed}"));
        }
        let report = auditor.check(Axiom::DualShift, None)?;
        match &report.witness {
            Some(witness) => {
                tally.expect(auditor.reproduces(Axiom::DualShift, witness, None)?, || {
                    format!("dual_shift witness for seed {seed} does not replay")
                });
                if first.is_empty() {
                    first = serde_json::to_string(witness)?;
                }
            }
            None => tally.expect(false, || format!("dual_shift passed for seed {seed}")),
        }
    }
    Ok(format!("5 capacities with v != v^d fail dual_shift; first witness {first}"))
}

fn separation_round_trip(tally: &mut Tally) -> Result<String> {
    let spec = symmetric_spec(5);
    let axis = spec.axis()?;
    for i in 0..6u64 {
        let n = (i % 3) as usize + 1;
        let v = signed(600 + i, n)?;
        for f in [Integral::Choquet(v.clone()), Integral::Symmetric(v)] {
            let form = build_separation(&f, &axis)?;
            for x in grid_points(&spec, n)? {
                tally.equal(&form.eval(&x)?, &f.eval(&x)?, || format!("{} at {x}", f.name()));
            }
        }
    }
    Ok("additive forms of 6 Choquet and 6 symmetric integrals reproduce f on the grid".into())
}

fn sugeno_equivalences(tally: &mut Tally) -> Result<String> {
    let spec = unit_spec(5);
    let axis = spec.axis()?;
    for i in 0..20u64 {
        let n = (i % 4) as usize + 1;
        let mu = ivalued(700 + i, n)?;
        let f = Integral::Sugeno(mu.clone());
        let points = grid_points(&spec, n)?;
        for x in &points {
            tally.equal(&sugeno(&mu, x)?, &sugeno_normal_form(&mu, x)?, || format!("normal form at {x}"));
        }
        let auditor = Auditor::new(&f, &spec)?;
        for axiom in [Axiom::ComonoMaxitive, Axiom::ComonoMinitive, Axiom::Idempotent] {
            tally.expect(auditor.check(axiom, None)?.passed(), || format!("{axiom} failed for seed {}", 700 + i));
        }
        for mode in [NormalMode::Maxitive, NormalMode::Minitive] {
            let form = build_normal_form(&f, &Interval::unit(), mode, &axis)?;
            for x in &points {
                tally.equal(&form.eval(x)?, &f.eval(x)?, || format!("{mode:?} normal form at {x}"));
            }
        }
    }
    Ok("20 capacities, n <= 4: sorted and normal forms agree, audit passes, max-min forms round-trip".into())
}

fn implication_suite(tally: &mut Tally) -> Result<String> {
    let spec = unit_spec(5);
    let mut audited: Vec<(String, Box<dyn BlackBox>)> = Vec::new();
    for i in 0..4u64 {
        let n = (i % 3) as usize + 1;
        let mu = ivalued(800 + i, n)?;
        audited.push((format!("sugeno seed {}", 800 + i), Box::new(Integral::Sugeno(mu.clone()))));
        audited.push((format!("shilkret seed {}", 800 + i), Box::new(Integral::Shilkret(mu.table().clone()))));
        audited.push((format!("choquet seed {}", 800 + i), Box::new(Integral::Choquet(mu.table().clone()))));
    }
    audited.push(("mean".into(), Box::new(arithmetic_mean(2))));
    let mut both = 0;
    for (label, f) in &audited {
        let auditor = Auditor::new(f.as_ref(), &spec)?;
        let max = auditor.check(Axiom::ComonoMaxitive, None)?.passed();
        let min = auditor.check(Axiom::ComonoMinitive, None)?.passed();
        if max && min {
            both += 1;
            tally.expect(auditor.check(Axiom::ComonoModular, None)?.passed(), || {
                format!("{label}: maxitive and minitive but not modular")
            });
        }
    }
    let mean = arithmetic_mean(2);
    let auditor = Auditor::new(&mean, &spec)?;
    tally.expect(auditor.check(Axiom::ComonoModular, None)?.passed(), || "mean is not comono_modular".into());
    let report = auditor.check(Axiom::ComonoMaxitive, None)?;
    let witness = match &report.witness {
        Some(w) => {
            tally.expect(auditor.reproduces(Axiom::ComonoMaxitive, w, None)?, || "mean witness does not replay".into());
            serde_json::to_string(w)?
        }
        None => {
            tally.expect(false, || "mean passed comono_maxitive".into());
            String::new()
        }
    };
    Ok(format!(
        "{} functions audited, {both} both maxitive and minitive; mean fails comono_maxitive at {witness}",
        audited.len()
    ))
}

fn shilkret_control(tally: &mut Tally) -> Result<String> {
    let mu = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)])?;
    let f = Integral::Shilkret(mu);
    let auditor = Auditor::new(&f, &unit_spec(5))?;
    tally.expect(auditor.check(Axiom::ComonoMaxitive, None)?.passed(), || "shilkret is not comono_maxitive".into());
    let mut witnesses = Vec::new();
    for axiom in [Axiom::ComonoMinitive, Axiom::ComonoModular] {
        let report = auditor.check(axiom, None)?;
        match &report.witness {
            Some(w) => {
                tally.expect(auditor.reproduces(axiom, w, None)?, || format!("{axiom} witness does not replay"));
                witnesses.push(format!("{axiom} {}", serde_json::to_string(w)?));
            }
            None => tally.expect(false, || format!("shilkret passed {axiom}")),
        }
    }
    Ok(format!("comono_maxitive passes; counterexamples: {}", witnesses.join("; ")))
}

fn control_capacity(n: usize) -> Result<SetFunction> {
    match n {
        2 => SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)]),
        _ => SetFunction::from_table(
            3,
            vec![int(0), rat(1, 5), rat(3, 10), rat(1, 2), rat(2, 5), rat(3, 5), rat(7, 10), int(1)],
        ),
    }
}

fn quasi_sugeno_factorization(tally: &mut Tally) -> Result<String> {
    let spec = unit_spec(5);
    for i in 0..10u64 {
        let n = (i % 3) as usize + 1;
        let mu = ivalued(1000 + i, n)?;
        let phi = random_transform(&mut rng(1100 + i), &Interval::unit(), &Interval::unit(), false)?;
        let f = Integral::QuasiSugeno(mu, phi);
        match factorize_quasi_sugeno(&f, &spec, &Interval::unit())? {
            Fit::Fitted(form) => {
                for x in grid_points(&spec, n)? {
                    tally.equal(&form.eval(&x)?, &f.eval(&x)?, || format!("factorization at {x}"));
                }
            }
            Fit::Refused(r) => {
                tally.expect(false, || format!("seed {} refused: {} ({})", 1000 + i, r.condition, r.detail))
            }
        }
    }
    let mut refusals = Vec::new();
    for n in [2, 3] {
        let f = Integral::Choquet(control_capacity(n)?);
        let fit = factorize_quasi_sugeno(&f, &spec, &Interval::unit())?;
        let refusal = fit.refusal();
        tally.expect(
            refusal.is_some_and(|r| r.condition == Condition::Axiom(Axiom::WeakMaxHomog) && r.witness.is_some()),
            || format!("choquet (n = {n}) was not refused on weak_max_homog"),
        );
        if let Some(w) = refusal.and_then(|r| r.witness.as_ref()) {
            refusals.push(serde_json::to_string(w)?);
        }
    }
    Ok(format!("10 factorizations regenerate f; Choquet refused with weak_max_homog at {}", refusals.join(" and ")))
}

fn quasi_choquet_fit(tally: &mut Tally) -> Result<String> {
    let spec = unit_spec(5);
    for i in 0..10u64 {
        let n = (i % 3) as usize + 1;
        let mut seed = 1200 + 10 * i;
        let mut v = signed(seed, n)?;
        while v.values().iter().all(|value| *value == int(0)) {
            seed += 1;
            v = signed(seed, n)?;
        }
        let phi = random_transform(&mut rng(1300 + i), &Interval::unit(), &Interval::unit(), true)?;
        let f = Integral::QuasiChoquet(v, phi);
        match fit_quasi_choquet(&f, &spec, Side::Positive)? {
            Fit::Fitted(fit) => {
                for x in grid_points(&spec, n)? {
                    let regenerated = quasi_choquet(&fit.capacity, &fit.transform, &x)?;
                    tally.equal(&regenerated, &f.eval(&x)?, || format!("quasi-Choquet fit at {x}"));
                }
            }
            Fit::Refused(r) => tally.expect(false, || format!("seed {seed} refused: {} ({})", r.condition, r.detail)),
        }
    }
    let zero = from_fn(2, |_: &Tuple| Ok(int(0)));
    let fit = fit_quasi_choquet(&zero, &spec, Side::Positive)?;
    tally.expect(fit.refusal().is_some_and(|r| r.condition == Condition::NonzeroIndicator), || {
        "the zero function was not refused".into()
    });
    Ok("10 fits regenerate f on [0, 1]^n; the zero function is refused (no S with f(1_S) != 0)".into())
}
