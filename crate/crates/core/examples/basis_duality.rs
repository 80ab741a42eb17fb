//! Basis elements of a two-point geometry and the pairing between weights
//! λ and 1-λ.

use kn_algebra::arith::rat;
use kn_algebra::basis::{expand_in_basis, kn_pairing, make_basis, Geometry};

fn main() -> kn_algebra::Result<()> {
    let geom = Geometry::new(vec![rat(0, 1), rat(1, 1)])?;
    for w in [-1, 0, 1] {
        for n in -1..=1 {
            for p in 1..=2 {
                println!("f^{w}_({n},{p}) = {}", make_basis(&geom, w, n, p)?);
            }
        }
    }

    println!("\npairing of functions against one-forms");
    for n in -2..=2 {
        let row: Vec<String> = (-2..=2)
            .map(|m| kn_pairing(&make_basis(&geom, 0, n, 1).unwrap(), &make_basis(&geom, 1, m, 1).unwrap()).unwrap().to_string())
            .collect();
        println!("  A_{n:>2}: {}", row.join(" "));
    }

    let f = make_basis(&geom, 0, 2, 1)?;
    let g = make_basis(&geom, 0, -1, 2)?;
    let prod = f.try_mul(&g)?;
    println!("\n({f}) * ({g}) expands as {}", expand_in_basis(&prod)?);
    Ok(())
}
