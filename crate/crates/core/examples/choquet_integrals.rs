// Choquet, symmetric Choquet and quasi-Choquet integrals.
//
// ```bash
// cargo run --example choquet_integrals
// ```

use comodular::comono::split_parts;
use comodular::integrals::symmetric_choquet_region;
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)])?;

    let x = Tuple::new(vec![rat(1, 5), rat(7, 10)]);
    let cx = choquet(&v, &x)?;
    println!("C_v{x} = {cx}");
    assert_eq!(cx, rat(9, 20));

    // Indicators recover the table.
    for set in Subset::all(2) {
        let e = Tuple::new((0..2).map(|i| if set.contains_index(i) { int(1) } else { int(0) }).collect());
        assert_eq!(&choquet(&v, &e)?, v.value(set));
    }

    // Mixed signs: the signed integral splits through the dual, the symmetric one through v twice.
    let y = Tuple::new(vec![rat(-1, 2), rat(7, 10)]);
    let (plus, minus) = split_parts(&y);
    println!("y = {y}, y+ = {plus}, y- = {minus}");
    println!("C_v(y)  = {} (via dual: {})", choquet(&v, &y)?, choquet_via_dual(&v, &y)?);
    let sym = symmetric_choquet(&v, &y)?;
    println!("Č_v(y)  = {sym} (region form: {})", symmetric_choquet_region(&v, &y)?);
    assert_eq!(sym, rat(1, 5));
    assert_eq!(symmetric_choquet(&v, &y.scale(&int(-1)))?, -sym);

    // φ doubles the slope on [0, 1/2] and is flat afterwards.
    let phi = TransformFn::piecewise(
        vec![(int(0), int(0)), (rat(1, 2), int(1)), (int(1), int(1))],
        [Property::Nondecreasing, Property::VanishesAtZero],
    )?;
    let q = quasi_choquet(&v, &phi, &x)?;
    println!("quasi-Choquet at {x} = {q}");
    assert_eq!(q, rat(7, 10));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
