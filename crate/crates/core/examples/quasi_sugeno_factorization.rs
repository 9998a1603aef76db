// Factorizing a quasi-Sugeno integral into a capacity and a transform.
//
// ```bash
// cargo run --example quasi_sugeno_factorization
// ```

use comodular::decompose::factorize_quasi_sugeno;
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let mu = IValuedCapacity::new(
        SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)])?,
        Interval::unit(),
    )?;
    let phi = TransformFn::piecewise(
        vec![(int(0), int(0)), (rat(1, 2), rat(1, 4)), (int(1), int(1))],
        [Property::Nondecreasing],
    )?;
    let f = Integral::QuasiSugeno(mu, phi);
    let spec = GridSpec::new(Interval::unit(), 5);

    let form = factorize_quasi_sugeno(&f, &spec, &Interval::unit())?.fitted().expect("quasi-Sugeno factorizes");
    for set in Subset::all(2) {
        println!("μ({set}) = {}", form.mu(set));
    }
    for t in form.axis() {
        println!("φ({t}) = {}", form.phi(t)?);
    }
    let x = Tuple::new(vec![rat(3, 4), rat(1, 4)]);
    let d = form.diagnostics(&x)?;
    println!("at {x}: value {} from S* = {}, threshold set {}", d.value, d.s_star, d.threshold_set);
    assert_eq!(form.eval(&x)?, f.eval(&x)?);

    // A Choquet integral is not weakly max-homogeneous, and the witness says where.
    let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)])?;
    let refused = factorize_quasi_sugeno(&Integral::Choquet(v), &spec, &Interval::unit())?;
    let refusal = refused.refusal().expect("refused");
    let w = refusal.witness.as_ref().expect("witness");
    println!("Choquet refused by {}: lhs = {}, rhs = {}", refusal.condition, w.lhs, w.rhs);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
