// Building set functions, checking their role, taking duals and round-tripping JSON.
//
// ```bash
// cargo run --example capacities
// ```

use comodular::prelude::*;
use comodular::setfunc::Validation;

pub fn run_example() -> Result<()> {
    // v(∅), v({1}), v({2}), v({1,2}) in bitmask order.
    let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)])?;
    println!("v is a capacity: {}", v.validate(&Role::Capacity).is_pass());

    let dual = v.dual()?;
    for set in Subset::all(2) {
        println!("v({set}) = {:>4}   v^d({set}) = {}", v[set], dual[set]);
    }
    assert_eq!(dual.values(), &[int(0), rat(1, 2), rat(7, 10), int(1)]);

    // A signed capacity only needs v(∅) = 0.
    let w = SetFunction::new(2, [(Subset::from_elements(&[1])?, rat(-1, 4)), (Subset::full(2), rat(1, 2))])?;
    println!("w signed: {}, w capacity: {}", w.is_signed(), w.is_capacity());
    if let Validation::Fail(violation) = w.validate(&Role::Capacity) {
        println!("w as capacity: {violation}");
    }

    let file = CapacityFile::from_set_function(&v, &Role::Capacity);
    let text = file.to_json();
    let (back, role) = CapacityFile::from_json(&text)?.into_set_function()?;
    assert_eq!(back, v);
    println!("round-tripped as {}:\n{text}", role.name());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
