use super::*;
use crate::axioms::{arithmetic_mean, from_fn, Grid};
use crate::comono::split_parts;
use crate::integrals::{sugeno, IValuedCapacity, Integral};
use crate::scalar::{int, rat};
use proptest::prelude::*;

fn v() -> SetFunction {
    SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)]).unwrap()
}

fn mu() -> IValuedCapacity {
    let table = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)]).unwrap();
    IValuedCapacity::new(table, Interval::unit()).unwrap()
}

fn t(values: &[(i64, i64)]) -> Tuple {
    Tuple::new(values.iter().map(|&(p, q)| rat(p, q)).collect())
}

fn axis(values: &[(i64, i64)]) -> Vec<Scalar> {
    values.iter().map(|&(p, q)| rat(p, q)).collect()
}

/// `C_v(x) = Σ_k x_σk (v(S↑(k)) - v(S↑(k+1)))`, written out for `n = 2`.
fn choquet2(v: &SetFunction, x: &Tuple) -> Scalar {
    let (lo, hi, top) = if x[0] <= x[1] { (0, 1, 2) } else { (1, 0, 1) };
    let full = v.value(Subset(3));
    &x[lo] * (full - v.value(Subset(top))) + &x[hi] * v.value(Subset(top))
}

#[test]
fn separation_samples_rays() {
    let f = Integral::Choquet(v());
    let form = build_separation(&f, &axis(&[(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)])).unwrap();
    assert_eq!(form.g(&rat(1, 2), Subset(2)).unwrap(), &rat(1, 4));
    assert_eq!(form.g(&rat(1, 2), Subset(2)).unwrap(), &choquet2(&v(), &t(&[(0, 1), (1, 2)])));
    assert_eq!(form.f_zero(), &int(0));
}

#[test]
fn separation_of_symmetric_choquet() {
    let f = Integral::Symmetric(v());
    let form = build_separation(&f, &axis(&[(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)])).unwrap();
    assert_eq!(form.h(&rat(-1, 2), Subset(1)).unwrap(), &rat(-3, 20));
    assert_eq!(form.h(&rat(-1, 2), Subset(1)).unwrap(), &-choquet2(&v(), &t(&[(1, 2), (0, 1)])));
}

#[test]
fn separation_of_constant() {
    let f = from_fn(3, |_: &Tuple| Ok(rat(2, 7)));
    let form = build_separation(&f, &axis(&[(-1, 1), (0, 1), (1, 1)])).unwrap();
    assert_eq!(form.f_zero(), &rat(2, 7));
    assert_eq!(form.g(&int(1), Subset(5)).unwrap(), &rat(2, 7));
    assert_eq!(form.h(&int(-1), Subset(6)).unwrap(), &rat(2, 7));
    assert_eq!(form.eval(&t(&[(1, 1), (-1, 1), (0, 1)])).unwrap(), rat(2, 7));
}

#[test]
fn separation_evaluates_off_grid_axis() {
    let f = Integral::Choquet(v());
    let form = build_separation(&f, &axis(&[(-1, 1), (-1, 2), (0, 1), (7, 10), (1, 1)])).unwrap();
    let x = t(&[(-1, 2), (7, 10)]);
    assert_eq!(form.eval(&x).unwrap(), rat(1, 10));
    assert_eq!(form.eval(&x).unwrap(), choquet2(&v(), &x));
    assert_eq!(form.eval(&Tuple::zeros(2)).unwrap(), int(0));
    assert!(matches!(form.eval(&t(&[(1, 3), (0, 1)])), Err(Error::OffAxisPoint(_))));
}

#[test]
fn separation_needs_origin() {
    let f = Integral::Choquet(v());
    assert!(matches!(build_separation(&f, &axis(&[(1, 2), (1, 1)])), Err(Error::DomainGap { .. })));
}

#[test]
fn normal_form_of_sugeno() {
    let f = Integral::Sugeno(mu());
    let grid_axis = axis(&[(0, 1), (1, 5), (4, 5), (1, 1)]);
    let form = build_normal_form(&f, &Interval::unit(), NormalMode::Maxitive, &grid_axis).unwrap();
    assert_eq!(form.phi(Subset(2), &rat(4, 5)).unwrap(), &rat(3, 5));
    assert_eq!(form.phi(Subset::EMPTY, &rat(4, 5)).unwrap(), &int(0));
    let x = t(&[(1, 5), (4, 5)]);
    assert_eq!(form.eval(&x).unwrap(), rat(3, 5));
    assert_eq!(form.eval(&x).unwrap(), sugeno(&mu(), &x).unwrap());
    assert_eq!(form.eval(&Tuple::constant(2, &int(1))).unwrap(), int(1));
}

#[test]
fn normal_forms_reconstruct_on_grid() {
    let f = Integral::Sugeno(mu());
    let grid_axis = axis(&[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)]);
    let grid = Grid::from_axis(2, Interval::unit(), grid_axis.clone()).unwrap();
    for mode in [NormalMode::Maxitive, NormalMode::Minitive] {
        let form = build_normal_form(&f, &Interval::unit(), mode, &grid_axis).unwrap();
        for x in grid.points() {
            let expected = f.eval(&x).unwrap();
            assert_eq!(form.eval(&x).unwrap(), expected, "{mode:?} at {x}");
            assert_eq!(form.eval_chain(&x).unwrap(), expected, "{mode:?} chain at {x}");
        }
    }
}

#[test]
fn normal_form_rejects_decreasing() {
    let f = from_fn(2, |x: &Tuple| Ok(-&x[0]));
    let result = build_normal_form(&f, &Interval::unit(), NormalMode::Maxitive, &axis(&[(1, 2)]));
    assert!(matches!(result, Err(Error::NotNondecreasing(_))));
}

#[test]
fn fit_recovers_choquet_capacity() {
    let f = Integral::Choquet(v());
    let fit = fit_signed_choquet(&f, &GridSpec::new(Interval::symmetric_unit(), 5)).unwrap();
    assert_eq!(fit.fitted().unwrap(), v());
}

#[test]
fn fit_refuses_positive_part() {
    let base = Integral::Choquet(v());
    let f = from_fn(2, move |x: &Tuple| base.eval(&split_parts(x).0));
    let fit = fit_signed_choquet(&f, &GridSpec::new(Interval::symmetric_unit(), 5)).unwrap();
    let refusal = fit.refusal().unwrap();
    assert_eq!(refusal.condition, Condition::Axiom(Axiom::DualShift));
    let witness = refusal.witness.as_ref().unwrap();
    assert_ne!(witness.lhs, witness.rhs);
}

#[test]
fn fit_mean_as_uniform_capacity() {
    let f = arithmetic_mean(2);
    let fit = fit_signed_choquet(&f, &GridSpec::new(Interval::symmetric_unit(), 5)).unwrap();
    let capacity = fit.fitted().unwrap();
    assert_eq!(capacity.values(), &[int(0), rat(1, 2), rat(1, 2), int(1)]);
}

#[test]
fn fit_signed_choquet_needs_a_suitable_box() {
    let f = Integral::Choquet(v());
    let bounds = Interval::new(rat(-1, 2), int(1)).unwrap();
    let fit = fit_signed_choquet(&f, &GridSpec::new(bounds, 5)).unwrap();
    assert_eq!(fit.refusal().unwrap().condition, Condition::Domain);
}

#[test]
fn fit_symmetric() {
    let spec = GridSpec::new(Interval::symmetric_unit(), 5);
    let f = Integral::Symmetric(v());
    assert_eq!(fit_symmetric_choquet(&f, &spec).unwrap().fitted().unwrap(), v());

    let f = Integral::Choquet(v());
    let fit = fit_symmetric_choquet(&f, &spec).unwrap();
    let refusal = fit.refusal().unwrap();
    assert_eq!(refusal.condition, Condition::Axiom(Axiom::FullHomogRays));
    match &refusal.witness.as_ref().unwrap().operands {
        Operands::LevelSet { t, .. } => assert!(t.is_negative()),
        other => panic!("unexpected operands {other:?}"),
    }

    let f = from_fn(2, |_: &Tuple| Ok(int(0)));
    assert_eq!(fit_symmetric_choquet(&f, &spec).unwrap().fitted().unwrap(), SetFunction::zero(2).unwrap());
}

fn phi_step() -> TransformFn {
    TransformFn::piecewise(
        vec![(int(0), int(0)), (rat(1, 2), int(1)), (int(1), int(1))],
        [Property::Nondecreasing, Property::VanishesAtZero],
    )
    .unwrap()
}

#[test]
fn fit_quasi_choquet_regenerates() {
    let f = Integral::QuasiChoquet(v(), phi_step());
    let spec = GridSpec::new(Interval::unit(), 5);
    let fit = fit_quasi_choquet(&f, &spec, Side::Positive).unwrap().fitted().unwrap();
    assert_eq!(fit.anchor, Subset(1));
    for x in Grid::new(&spec, 2).unwrap().points() {
        assert_eq!(quasi_choquet(&fit.capacity, &fit.transform, &x).unwrap(), f.eval(&x).unwrap());
    }
    for t in spec.axis().unwrap() {
        assert_eq!(fit.transform.eval(&t).unwrap(), phi_step().eval(&t).unwrap());
    }
}

#[test]
fn fit_quasi_choquet_of_plain_choquet_is_identity() {
    let f = Integral::Choquet(v());
    let spec = GridSpec::new(Interval::unit(), 5);
    let fit = fit_quasi_choquet(&f, &spec, Side::Positive).unwrap().fitted().unwrap();
    for t in spec.axis().unwrap() {
        assert_eq!(fit.transform.eval(&t).unwrap(), t);
    }
    assert_eq!(fit.capacity, v());
}

#[test]
fn fit_quasi_choquet_negative_side() {
    let phi = TransformFn::piecewise(
        vec![(int(-1), int(-1)), (rat(-1, 2), rat(-1, 4)), (int(0), int(0))],
        [Property::Nondecreasing, Property::VanishesAtZero],
    )
    .unwrap();
    let f = Integral::QuasiChoquet(v(), phi);
    let spec = GridSpec::new(Interval::new(int(-1), int(0)).unwrap(), 5);
    let fit = fit_quasi_choquet(&f, &spec, Side::Negative).unwrap().fitted().unwrap();
    for x in Grid::new(&spec, 2).unwrap().points() {
        assert_eq!(quasi_choquet(&fit.capacity, &fit.transform, &x).unwrap(), f.eval(&x).unwrap());
    }
}

#[test]
fn fit_quasi_choquet_refusals() {
    let spec = GridSpec::new(Interval::unit(), 5);
    let zero = from_fn(2, |_: &Tuple| Ok(int(0)));
    let fit = fit_quasi_choquet(&zero, &spec, Side::Positive).unwrap();
    assert_eq!(fit.refusal().unwrap().condition, Condition::NonzeroIndicator);

    let mixed = GridSpec::new(Interval::symmetric_unit(), 5);
    let f = Integral::Choquet(v());
    let fit = fit_quasi_choquet(&f, &mixed, Side::Positive).unwrap();
    assert_eq!(fit.refusal().unwrap().condition, Condition::Domain);
}

#[test]
fn quasi_sugeno_factorization() {
    let phi = TransformFn::piecewise(vec![(int(0), int(0)), (int(1), rat(1, 2))], [Property::Nondecreasing]).unwrap();
    let f = Integral::QuasiSugeno(mu(), phi);
    let spec = GridSpec::new(Interval::unit(), 5);
    let form = factorize_quasi_sugeno(&f, &spec, &Interval::unit()).unwrap().fitted().unwrap();
    for x in Grid::new(&spec, 2).unwrap().points() {
        assert_eq!(form.eval(&x).unwrap(), f.eval(&x).unwrap());
    }
}

#[test]
fn sugeno_factorization_is_identity() {
    let f = Integral::Sugeno(mu());
    let spec = GridSpec::new(Interval::unit(), 5);
    let form = factorize_quasi_sugeno(&f, &spec, &Interval::unit()).unwrap().fitted().unwrap();
    assert_eq!(form.mu_values(), mu().table().values());
    for t in spec.axis().unwrap() {
        assert_eq!(form.phi(&t).unwrap(), &t);
    }
    let diagnostics = form.diagnostics(&t(&[(1, 4), (3, 4)])).unwrap();
    assert_eq!(diagnostics.value, rat(3, 5));
    assert_eq!(diagnostics.s_star, Subset(2));
    assert!(!diagnostics.threshold_set.is_empty());
}

#[test]
fn choquet_is_not_quasi_sugeno() {
    let f = Integral::Choquet(v());
    let fit = factorize_quasi_sugeno(&f, &GridSpec::new(Interval::unit(), 5), &Interval::unit()).unwrap();
    let refusal = fit.refusal().unwrap();
    assert_eq!(refusal.condition, Condition::Axiom(Axiom::WeakMaxHomog));
    assert!(refusal.witness.is_some());
}

#[test]
fn forms_serialize_with_rational_strings() {
    let f = Integral::Choquet(v());
    let form = build_separation(&f, &axis(&[(0, 1), (1, 2), (1, 1)])).unwrap();
    let json: serde_json::Value = serde_json::from_str(&form.to_json()).unwrap();
    assert_eq!(json["g"][1][2], "1/4");
    assert_eq!(json["nonnegative_axis"], serde_json::json!(["0", "1/2", "1"]));
    let refusal = fit_symmetric_choquet(&f, &GridSpec::new(Interval::symmetric_unit(), 3)).unwrap();
    let json = serde_json::to_value(refusal.refusal().unwrap()).unwrap();
    assert_eq!(json["condition"], "full_homog_rays");
}

fn signed_strategy(n: usize) -> impl Strategy<Value = SetFunction> {
    proptest::collection::vec(-10i64..=10, 1 << n).prop_map(move |raw| {
        let mut values: Vec<Scalar> = raw.iter().map(|&r| rat(r, 10)).collect();
        values[0] = int(0);
        SetFunction::from_table(n, values).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn separation_round_trip(table in signed_strategy(3), c in -5i64..=5) {
        let base = Integral::Choquet(table);
        // Adding a constant keeps comonotonic modularity but moves f(0).
        let f = from_fn(3, move |x: &Tuple| Ok(base.eval(x)? + rat(c, 7)));
        let spec = GridSpec::new(Interval::symmetric_unit(), 5);
        let form = build_separation(&f, &spec.axis().unwrap()).unwrap();
        for x in Grid::new(&spec, 3).unwrap().points() {
            prop_assert_eq!(form.eval(&x).unwrap(), f.eval(&x).unwrap());
        }
    }

    #[test]
    fn signed_choquet_fit_round_trip(table in signed_strategy(3)) {
        let f = Integral::Choquet(table.clone());
        let fit = fit_signed_choquet(&f, &GridSpec::new(Interval::symmetric_unit(), 3)).unwrap();
        prop_assert_eq!(fit.fitted().unwrap(), table);
    }
}
