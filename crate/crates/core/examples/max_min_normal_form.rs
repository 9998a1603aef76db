// Max-min and min-max normal forms of a Sugeno integral.
//
// ```bash
// cargo run --example max_min_normal_form
// ```

use comodular::decompose::{build_normal_form, eval_normal_form, NormalMode};
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let mu = IValuedCapacity::new(
        SetFunction::from_table(
            3,
            vec![int(0), rat(1, 5), rat(2, 5), rat(1, 2), rat(1, 4), rat(3, 5), rat(2, 5), int(1)],
        )?,
        Interval::unit(),
    )?;
    let f = Integral::Sugeno(mu);
    let spec = GridSpec::new(Interval::unit(), 5);
    let axis = spec.axis()?;

    for mode in [NormalMode::Maxitive, NormalMode::Minitive] {
        let form = build_normal_form(&f, &Interval::unit(), mode, &axis)?;
        let grid = comodular::axioms::Grid::new(&spec, 3)?;
        let mut agree = 0;
        for x in grid.points() {
            assert_eq!(eval_normal_form(&form, &x)?, f.eval(&x)?);
            assert_eq!(form.eval_chain(&x)?, f.eval(&x)?);
            agree += 1;
        }
        let s = Subset::from_elements(&[1, 3])?;
        println!("{mode:?}: φ_{s}(1/2) = {}, agrees with f at {agree} grid points", form.phi(s, &rat(1, 2))?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
