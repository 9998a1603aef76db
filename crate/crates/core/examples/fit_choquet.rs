// Recovering signed, symmetric and quasi-Choquet representations from samples.
//
// ```bash
// cargo run --example fit_choquet
// ```

use comodular::axioms::arithmetic_mean;
use comodular::decompose::{fit_quasi_choquet, fit_signed_choquet, fit_symmetric_choquet, Side};
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)])?;
    let signed = GridSpec::new(Interval::symmetric_unit(), 5);

    let fitted = fit_signed_choquet(&Integral::Choquet(v.clone()), &signed)?.fitted().expect("Choquet fits");
    assert_eq!(fitted, v);
    println!("signed Choquet fit: {:?}", fitted.values().iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let fitted = fit_symmetric_choquet(&Integral::Symmetric(v.clone()), &signed)?.fitted().expect("symmetric fits");
    assert_eq!(fitted, v);

    // A plain Choquet integral is not odd, so the symmetric fit refuses it.
    let refused = fit_symmetric_choquet(&Integral::Choquet(v.clone()), &signed)?;
    let refusal = refused.refusal().expect("refused");
    println!("symmetric fit of C_v refused: {} ({})", refusal.condition, refusal.detail);

    let phi = TransformFn::piecewise(
        vec![(int(0), int(0)), (rat(1, 2), int(1)), (int(1), int(1))],
        [Property::Nondecreasing, Property::VanishesAtZero],
    )?;
    let unit = GridSpec::new(Interval::unit(), 5);
    let fit = fit_quasi_choquet(&Integral::QuasiChoquet(v.clone(), phi), &unit, Side::Positive)?;
    let fit = fit.fitted().expect("quasi-Choquet fits");
    println!("quasi-Choquet fit anchored at {}:", fit.anchor);
    for t in unit.axis()? {
        println!("  φ({t}) = {}", fit.transform.eval(&t)?);
    }

    let mean = arithmetic_mean(2);
    assert!(fit_signed_choquet(&mean, &signed)?.is_fitted());
    let zero = comodular::axioms::from_fn(2, |_: &Tuple| Ok(int(0)));
    let refused = fit_quasi_choquet(&zero, &unit, Side::Positive)?;
    println!("zero function: {}", refused.refusal().expect("refused").condition);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
