use clext_core::susy::PssqmRealization;
use clext_core::{classify_gdoa, AlgebraParams, FockRep, Result};

fn main() -> Result<()> {
    let params = AlgebraParams::new(3, &[1.0, 0.0])?;
    let unirrep = classify_gdoa(&params, 0).unwrap(); // BFB, c = 0
    println!("{:?} at c = {}", unirrep.kind, unirrep.c);

    let rep = FockRep::build(&params, 30)?;
    let para = PssqmRealization::build(&rep, 0, None)?; // order-2 PSSQM
    assert!(para.verify(&rep, 1e-10)?.overall_pass());
    println!("order-2 parasupersymmetry verified");
    Ok(())
}
