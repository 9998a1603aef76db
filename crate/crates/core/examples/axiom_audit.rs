// Auditing black-box functions against the axiom battery.
//
// ```bash
// cargo run --example axiom_audit
// ```

use comodular::axioms::{arithmetic_mean, from_fn};
use comodular::prelude::*;

fn show(name: &str, audit: &Audit) {
    println!("{name}:");
    for report in &audit.reports {
        match &report.witness {
            None => println!("  {:<20} pass ({} instances)", report.axiom.id(), report.tested),
            Some(w) => println!("  {:<20} FAIL lhs = {}, rhs = {}", report.axiom.id(), w.lhs, w.rhs),
        }
    }
    for line in audit.summary() {
        println!("  => {line}");
    }
}

pub fn run_example() -> Result<()> {
    let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)])?;
    let signed = GridSpec::new(Interval::symmetric_unit(), 5);
    let unit = GridSpec::new(Interval::unit(), 5);
    let wanted = Axiom::parse_list("comono_modular,sign_homog_rays,dual_shift,vanishes_at_origin")?;

    let f = Integral::Choquet(v.clone());
    let audit = Auditor::new(&f, &signed)?.audit(&wanted, None)?;
    show("Choquet on [-1,1]^2", &audit);
    assert!(audit.reports.iter().all(|r| r.passed()));

    // The positive-part integral keeps the ray identities but loses the dual shift.
    let positive = from_fn(2, |x: &Tuple| choquet(&v, &comodular::comono::split_parts(x).0));
    let audit = Auditor::new(&positive, &signed)?.audit(&wanted, None)?;
    show("C_v(x+) on [-1,1]^2", &audit);
    assert_eq!(audit.passed(Axiom::DualShift), Some(false));
    assert_eq!(audit.passed(Axiom::SignHomogRays), Some(true));

    // The mean is comonotonically modular but not comonotonically maxitive.
    let mean = arithmetic_mean(2);
    let auditor = Auditor::new(&mean, &unit)?;
    let audit = auditor.audit(&[Axiom::ComonoModular, Axiom::ComonoMaxitive], None)?;
    show("mean on [0,1]^2", &audit);
    let report = audit.report(Axiom::ComonoMaxitive).expect("audited");
    let witness = report.witness.as_ref().expect("mean is not maxitive");
    assert!(auditor.reproduces(Axiom::ComonoMaxitive, witness, None)?);

    // Full default battery for a Sugeno integral.
    let mu = IValuedCapacity::new(
        SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(3, 5), int(1)])?,
        Interval::unit(),
    )?;
    let sugeno = Integral::Sugeno(mu);
    let audit = Auditor::new(&sugeno, &unit)?.audit(&Axiom::battery(&Interval::unit(), false), None)?;
    show("Sugeno on [0,1]^2", &audit);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
