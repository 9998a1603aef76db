// The additive separation of a comonotonically modular function into level terms.
//
// ```bash
// cargo run --example separation_form
// ```

use comodular::decompose::{build_separation, eval_separation};
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)])?;
    let f = Integral::Symmetric(v);
    let axis = GridSpec::new(Interval::symmetric_unit(), 5).axis()?;
    let form = build_separation(&f, &axis)?;

    println!("f(0) = {}", form.f_zero());
    let set = Subset::from_elements(&[2])?;
    for t in &axis {
        if *t >= int(0) {
            println!("g({t}, {set}) = {}", form.g(t, set)?);
        } else {
            println!("h({t}, {set}) = {}", form.h(t, set)?);
        }
    }

    let x = Tuple::new(vec![rat(-1, 2), int(1)]);
    let terms = form.terms(&x)?;
    let value = eval_separation(&form, &x)?;
    println!("terms at {x}: {}", terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + "));
    assert_eq!(value, f.eval(&x)?);
    println!("sum = {value}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
