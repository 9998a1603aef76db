use super::*;
use crate::integrals::{IValuedCapacity, Property};
use crate::scalar::{int, rat};
use crate::setfunc::SetFunction;
use proptest::prelude::*;

fn v() -> SetFunction {
    SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)]).unwrap()
}

fn mu() -> IValuedCapacity {
    let table = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)]).unwrap();
    IValuedCapacity::new(table, Interval::unit()).unwrap()
}

fn spec(bounds: Interval, k: usize) -> GridSpec {
    GridSpec::new(bounds, k)
}

/// Comonotonicity by brute force over all permutations.
fn comonotonic_brute(x: &Tuple, y: &Tuple) -> bool {
    permutations(x.len()).into_iter().any(|p| p.windows(2).all(|w| x[w[0]] <= x[w[1]] && y[w[0]] <= y[w[1]]))
}

#[test]
fn choquet_is_comonotonically_modular() {
    let f = Integral::Choquet(v());
    let report = check(Axiom::ComonoModular, &f, &spec(Interval::symmetric_unit(), 5), None).unwrap();
    assert!(report.passed());
    assert_eq!(report.skipped, 0);
}

#[test]
fn mean_is_not_comonotonically_maxitive() {
    let f = arithmetic_mean(2);
    let grid_spec = spec(Interval::unit(), 3);
    let report = check(Axiom::ComonoMaxitive, &f, &grid_spec, None).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);

    // Independent search: all grid pairs in lexicographic order, filtered to
    // comonotonic ones, first violation of maxitivity.
    let grid = Grid::new(&grid_spec, 2).unwrap();
    let mean = |t: &Tuple| (&t[0] + &t[1]) / int(2);
    let mut expected = None;
    'outer: for a in 0..grid.len() {
        for b in a + 1..grid.len() {
            let (x, y) = (grid.point(a), grid.point(b));
            if !comonotonic_brute(&x, &y) {
                continue;
            }
            let join = Tuple::new(vec![scalar::max(&x[0], &y[0]), scalar::max(&x[1], &y[1])]);
            if mean(&join) != scalar::max(&mean(&x), &mean(&y)) {
                expected = Some((x, y));
                break 'outer;
            }
        }
    }
    let (x, y) = expected.unwrap();
    let witness = report.witness.unwrap();
    assert_eq!(witness.operands, Operands::Pair { x: x.clone(), y: y.clone() });
    assert!(comonotonic_brute(&x, &y));
    assert_eq!(x, Tuple::new(vec![int(0), int(1)]));
    assert_eq!(y, Tuple::new(vec![rat(1, 2), rat(1, 2)]));
    assert_eq!((witness.lhs, witness.rhs), (rat(3, 4), rat(1, 2)));
}

#[test]
fn mean_is_comonotonically_modular() {
    let f = arithmetic_mean(3);
    let report = check(Axiom::ComonoModular, &f, &spec(Interval::unit(), 3), None).unwrap();
    assert!(report.passed());
}

#[test]
fn symmetric_choquet_is_odd() {
    let f = Integral::Symmetric(v());
    assert!(check(Axiom::Odd, &f, &spec(Interval::symmetric_unit(), 5), None).unwrap().passed());
    let f = Integral::Choquet(v());
    assert!(!check(Axiom::Odd, &f, &spec(Interval::symmetric_unit(), 5), None).unwrap().passed());
}

#[test]
fn transform_requirements() {
    let f = Integral::Choquet(v());
    let grid = spec(Interval::unit(), 3);
    assert_eq!(check(Axiom::QuasiMaxHomog, &f, &grid, None), Err(Error::MissingTransform(Axiom::QuasiMaxHomog)));
    let phi = TransformFn::identity();
    assert_eq!(check(Axiom::Modular, &f, &grid, Some(&phi)), Err(Error::UnexpectedTransform(Axiom::Modular)));
}

#[test]
fn vacuous_checks_are_reported() {
    let f = Integral::Choquet(v());
    // Only `S = ∅` keeps `-1_S` inside `[0, 1]^2`.
    let report = check(Axiom::DualShift, &f, &spec(Interval::unit(), 3), None).unwrap();
    assert_eq!((report.tested, report.skipped), (1, 3));
    let bounds = Interval::new(int(1), int(2)).unwrap();
    let result = check(Axiom::VanishesAtOrigin, &f, &spec(bounds, 3), None);
    assert!(matches!(result, Err(Error::EmptyApplicableSet { .. })));
}

#[test]
fn closure_skips_are_counted() {
    let f = Integral::Choquet(v());
    let report = check(Axiom::ComonoAdditive, &f, &spec(Interval::unit(), 3), None).unwrap();
    assert!(report.passed());
    assert!(report.skipped > 0);
    assert!(report.tested > 0);
}

#[test]
fn audit_classifies_choquet() {
    let f = Integral::Choquet(v());
    let bounds = Interval::symmetric_unit();
    let audit = audit(&f, &spec(bounds.clone(), 5), &Axiom::battery(&bounds, false), None).unwrap();
    assert!(audit.is(Family::SignedChoquet));
    assert!(!audit.is(Family::SymmetricSignedChoquet));
    assert!(audit.summary().iter().any(|line| line.contains("signed Choquet-consistent")));
}

#[test]
fn audit_classifies_sugeno() {
    let f = Integral::Sugeno(mu());
    let bounds = Interval::unit();
    let audit = audit(&f, &spec(bounds.clone(), 5), &Axiom::battery(&bounds, false), None).unwrap();
    assert_eq!(audit.passed(Axiom::ComonoMaxitive), Some(true));
    assert_eq!(audit.passed(Axiom::ComonoMinitive), Some(true));
    assert_eq!(audit.passed(Axiom::Idempotent), Some(true));
    assert!(audit.is(Family::Sugeno));
}

#[test]
fn audit_places_shilkret_outside() {
    let table = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)]).unwrap();
    let f = Integral::Shilkret(table);
    let bounds = Interval::unit();
    let axioms = [Axiom::ComonoMaxitive, Axiom::ComonoMinitive, Axiom::ComonoModular];
    let audit = audit(&f, &spec(bounds, 5), &axioms, None).unwrap();
    assert_eq!(audit.passed(Axiom::ComonoMaxitive), Some(true));
    assert_eq!(audit.passed(Axiom::ComonoMinitive), Some(false));
    assert!(audit.is(Family::OutsideComonotonicallyModular));
}

#[test]
fn quasi_sugeno_with_transform() {
    let phi = TransformFn::piecewise(vec![(int(0), int(0)), (int(1), rat(1, 2))], [Property::Nondecreasing]).unwrap();
    let f = Integral::QuasiSugeno(mu(), phi.clone());
    let grid = spec(Interval::unit(), 5);
    let auditor = Auditor::new(&f, &grid).unwrap();
    // `φ(r) = f(r, .., r)` is the transform the homogeneity identities need.
    let diagonal = TransformFn::piecewise(
        grid.axis().unwrap().into_iter().map(|t| (t.clone(), f.eval(&Tuple::constant(2, &t)).unwrap())).collect(),
        [Property::Nondecreasing],
    )
    .unwrap();
    assert!(auditor.check(Axiom::QuasiMaxHomog, Some(&diagonal)).unwrap().passed());
    assert!(auditor.check(Axiom::QuasiMinHomog, Some(&diagonal)).unwrap().passed());
    assert!(auditor.check(Axiom::WeakMaxHomog, None).unwrap().passed());
}

#[test]
fn comonotonic_pairs_match_brute_force() {
    for (n, k) in [(1, 4), (2, 3), (3, 3), (2, 5)] {
        let f = arithmetic_mean(n);
        let auditor = Auditor::new(&f, &spec(Interval::unit(), k)).unwrap();
        let grid = auditor.grid();
        let mut expected = Vec::new();
        for a in 0..grid.len() {
            for b in a + 1..grid.len() {
                if comonotonic_brute(&grid.point(a), &grid.point(b)) {
                    expected.push((a, b));
                }
            }
        }
        assert_eq!(auditor.comonotonic_pairs(false), expected, "n = {n}, k = {k}");
        let with_diagonal = auditor.comonotonic_pairs(true);
        assert_eq!(with_diagonal.len(), expected.len() + grid.len());
    }
}

#[test]
fn tolerance_accepts_near_misses() {
    let f = from_fn(1, |x: &Tuple| Ok(&x[0] + rat(1, 1_000_000_000_000)));
    let grid = spec(Interval::unit(), 3);
    let exact = Auditor::new(&f, &grid).unwrap();
    assert!(!exact.check(Axiom::Idempotent, None).unwrap().passed());
    let loose = Auditor::new(&f, &grid).unwrap().with_tolerance(rat(1, 1_000_000_000));
    assert!(loose.check(Axiom::Idempotent, None).unwrap().passed());
}

#[test]
fn domain_gaps_surface() {
    let f = Integral::Sugeno(mu());
    let result = Auditor::new(&f, &spec(Interval::symmetric_unit(), 3));
    assert!(matches!(result, Err(Error::DomainGap { .. })));
}

#[test]
fn axiom_ids_round_trip() {
    for &axiom in Axiom::ALL {
        assert_eq!(axiom.id().parse::<Axiom>().unwrap(), axiom);
        assert_eq!(serde_json::to_string(&axiom).unwrap(), format!("\"{}\"", axiom.id()));
    }
    assert!("bogus".parse::<Axiom>().is_err());
    assert_eq!(Axiom::parse_list("odd, modular").unwrap(), vec![Axiom::Odd, Axiom::Modular]);
}

#[test]
fn report_json_shape() {
    let f = arithmetic_mean(2);
    let report = check(Axiom::ComonoMaxitive, &f, &spec(Interval::unit(), 3), None).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["axiom"], "comono_maxitive");
    assert_eq!(json["verdict"], "fail");
    assert_eq!(json["witness"]["operands"]["kind"], "pair");
    assert_eq!(json["witness"]["operands"]["x"], serde_json::json!(["0", "1"]));
    assert_eq!(json["witness"]["lhs"], "3/4");
    assert_eq!(json["witness"]["rhs"], "1/2");
    assert!(json["tested"].as_u64().unwrap() >= 1);
}

fn capacity_strategy(n: usize) -> impl Strategy<Value = SetFunction> {
    proptest::collection::vec(0i64..=10, 1 << n).prop_map(move |raw| {
        // Cumulative maxima make the table monotone; normalise to v(X) = 1.
        let mut values = vec![int(0); 1 << n];
        for s in 1..(1usize << n) {
            let mut floor = int(0);
            for i in 0..n {
                if s & (1 << i) != 0 {
                    floor = scalar::max(&floor, &values[s & !(1 << i)]);
                }
            }
            values[s] = floor + rat(raw[s], 10);
        }
        let top = values[(1 << n) - 1].clone();
        if !top.is_zero() {
            for value in values.iter_mut() {
                *value = &*value / &top;
            }
        }
        SetFunction::from_table(n, values).unwrap()
    })
}

fn signed_strategy(n: usize) -> impl Strategy<Value = SetFunction> {
    proptest::collection::vec(-10i64..=10, 1 << n).prop_map(move |raw| {
        let mut values: Vec<Scalar> = raw.iter().map(|&r| rat(r, 10)).collect();
        values[0] = int(0);
        SetFunction::from_table(n, values).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witnesses_replay(table in signed_strategy(2)) {
        let f = Integral::Choquet(table);
        let auditor = Auditor::new(&f, &spec(Interval::symmetric_unit(), 3)).unwrap();
        for axiom in [Axiom::Modular, Axiom::Maxitive, Axiom::Odd, Axiom::FullHomogRays, Axiom::Nondecreasing, Axiom::HorizMedianAdditive] {
            let report = auditor.check(axiom, None).unwrap();
            if let Some(witness) = &report.witness {
                prop_assert!(auditor.reproduces(axiom, witness, None).unwrap(), "{axiom}");
            }
        }
    }

    #[test]
    fn maxitive_and_minitive_imply_modular(table in capacity_strategy(2)) {
        let mu = IValuedCapacity::new(table.clone(), Interval::unit());
        prop_assume!(mu.is_ok());
        for f in [Integral::Sugeno(mu.unwrap()), Integral::Shilkret(table)] {
            let auditor = Auditor::new(&f, &spec(Interval::unit(), 4)).unwrap();
            let max = auditor.check(Axiom::ComonoMaxitive, None).unwrap().passed();
            let min = auditor.check(Axiom::ComonoMinitive, None).unwrap().passed();
            if max && min {
                prop_assert!(auditor.check(Axiom::ComonoModular, None).unwrap().passed());
            }
            if max {
                prop_assert!(auditor.check(Axiom::Nondecreasing, None).unwrap().passed());
            }
        }
    }

    #[test]
    fn modular_implies_comonotonically_modular(table in signed_strategy(2)) {
        let f = Integral::Choquet(table);
        let auditor = Auditor::new(&f, &spec(Interval::symmetric_unit(), 3)).unwrap();
        if auditor.check(Axiom::Modular, None).unwrap().passed() {
            prop_assert!(auditor.check(Axiom::ComonoModular, None).unwrap().passed());
        }
    }

    #[test]
    fn median_additivity_splits(table in signed_strategy(2), offset in -2i64..=2) {
        // Symmetric Choquet plus an odd-breaking perturbation on one orthant.
        let base = Integral::Symmetric(table);
        let f = from_fn(2, move |x: &Tuple| {
            let value = base.eval(x)?;
            Ok(if x[0].is_negative() && x[1].is_negative() { value + rat(offset, 10) * &x[0] * &x[1] } else { value })
        });
        let bounds = Interval::symmetric_unit();
        // Same axis on both halves: {-1, -3/4, .., 3/4, 1}.
        let whole = Auditor::new(&f, &spec(bounds, 9)).unwrap();
        let median = whole.check(Axiom::HorizMedianAdditive, None).unwrap().passed();
        let plus = whole.check(Axiom::PlusSplit, None).unwrap().passed();
        let pos = Auditor::new(&f, &spec(Interval::unit(), 5)).unwrap();
        let neg = Auditor::new(&f, &spec(Interval::new(int(-1), int(0)).unwrap(), 5)).unwrap();
        let parts = pos.check(Axiom::ComonoAdditive, None).unwrap().passed()
            && neg.check(Axiom::ComonoAdditive, None).unwrap().passed();
        prop_assert_eq!(median, parts && plus);
    }

    #[test]
    fn failures_survive_refinement(table in signed_strategy(2)) {
        let f = Integral::Choquet(table);
        let coarse = Auditor::new(&f, &spec(Interval::unit(), 3)).unwrap();
        let fine = Auditor::new(&f, &spec(Interval::unit(), 5)).unwrap();
        for axiom in [Axiom::Modular, Axiom::Maxitive, Axiom::Minitive, Axiom::Nondecreasing, Axiom::Idempotent] {
            let report = coarse.check(axiom, None).unwrap();
            if let Some(witness) = &report.witness {
                prop_assert!(!fine.check(axiom, None).unwrap().passed());
                prop_assert!(fine.reproduces(axiom, witness, None).unwrap());
            }
        }
    }
}
