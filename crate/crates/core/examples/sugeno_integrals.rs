// Sugeno, quasi-Sugeno and Shilkret integrals over an I-valued capacity.
//
// ```bash
// cargo run --example sugeno_integrals
// ```

use comodular::integrals::sugeno_normal_form;
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let table = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)])?;
    let mu = IValuedCapacity::new(table.clone(), Interval::unit())?;

    for x in [[rat(1, 2), rat(1, 4)], [rat(1, 4), rat(1, 2)], [int(0), int(0)], [int(1), int(1)]] {
        let x = Tuple::new(x.to_vec());
        let s = sugeno(&mu, &x)?;
        assert_eq!(s, sugeno_normal_form(&mu, &x)?);
        println!("S_mu{x} = {s}   Shilkret = {}", shilkret(&table, &x)?);
    }

    // Sugeno values are idempotent at constants.
    for c in [int(0), rat(2, 5), int(1)] {
        assert_eq!(sugeno(&mu, &Tuple::constant(2, &c))?, c);
    }

    let phi = TransformFn::piecewise(vec![(int(0), int(0)), (int(1), rat(1, 2))], [Property::Nondecreasing])?;
    let x = Tuple::new(vec![rat(1, 2), int(1)]);
    println!("quasi-Sugeno at {x} = {}", quasi_sugeno(&mu, &phi, &x)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
