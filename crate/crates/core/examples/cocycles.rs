//! The function, vector field and mixing cocycles: values, locality and the
//! cocycle identity on random triples.

use kn_algebra::arith::rat;
use kn_algebra::basis::{BasisIndex, Geometry};
use kn_algebra::cocycles::{check_locality, GeometricCocycle};

fn main() -> kn_algebra::Result<()> {
    let laurent = Geometry::standard(1);
    let vir = GeometricCocycle::vector_field(&laurent);
    for n in 1..=4 {
        println!("gamma(e_{n}, e_-{n}) = {}", vir.eval_basis(&laurent, BasisIndex::new(-1, n, 1), BasisIndex::new(-1, -n, 1))?);
    }

    let geom = Geometry::standard(2);
    for (name, gam, weights) in [
        ("function", GeometricCocycle::function(&geom), (0, 0)),
        ("vector field", GeometricCocycle::vector_field(&geom), (-1, -1)),
        ("mixing", GeometricCocycle::mixing(&geom), (-1, 0)),
    ] {
        let w = check_locality(|x, y| gam.eval_basis(&geom, x, y), weights, 2, (-4, 4))?;
        match w {
            Some(w) => println!("{name}: nonzero only for {} <= n+m <= {}", w.m2, w.m1),
            None => println!("{name}: vanishes"),
        }
    }

    let combined = GeometricCocycle::new(&geom, rat(2, 1), rat(1, 12), rat(-1, 1));
    let cfg = kn_algebra::cli::config::JobConfig::default();
    let rec = kn_algebra::cli::verify::cocycle_identity(&cfg, "vector_field", 50)?;
    println!("\nidentity on random triples: {} ({})", rec.status, rec.witness);
    let v = combined.eval_basis(&geom, BasisIndex::new(-1, 2, 1), BasisIndex::new(0, -2, 1))?;
    println!("combined cocycle on (e_(2,1), A_(-2,1)) = {v}");
    Ok(())
}
