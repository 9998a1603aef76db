// Seeded random capacities and transforms.
//
// ```bash
// cargo run --example random_capacities
// ```

use comodular::gen::{random_set_function, random_transform, rng};
use comodular::prelude::*;

pub fn run_example() -> Result<()> {
    let mut r = rng(42);
    let cap = random_set_function(&mut r, 3, &Role::Capacity, None)?;
    assert!(cap.validate(&Role::Capacity).is_pass());
    println!("capacity: {:?}", cap.values().iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let signed = random_set_function(&mut r, 3, &Role::Signed, None)?;
    println!("signed:   {:?}", signed.values().iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let interval = Interval::new(int(-1), int(2))?;
    let mu = random_set_function(&mut r, 3, &Role::IValued(interval.clone()), None)?;
    assert_eq!(mu.value(Subset::EMPTY), interval.lo());
    assert_eq!(mu.value(Subset::full(3)), interval.hi());

    let phi = random_transform(&mut r, &Interval::unit(), &Interval::unit(), true)?;
    println!("φ(0) = {}, φ(1/2) = {}, φ(1) = {}", phi.eval(&int(0))?, phi.eval(&rat(1, 2))?, phi.eval(&int(1))?);

    // Same seed, same draw.
    let again = random_set_function(&mut rng(42), 3, &Role::Capacity, None)?;
    assert_eq!(again, cap);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
