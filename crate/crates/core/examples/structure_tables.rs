//! Structure constants of the three basic operations and the almost-grading
//! bounds they exhibit.

use kn_algebra::basis::{BasisIndex, Geometry};
use kn_algebra::structure::{measure_bounds, triangular_split, AlmostGradingBounds, KnAlgebra, SplitVariant, StructureTable, TableKind};

fn main() -> kn_algebra::Result<()> {
    for n in 1..=3 {
        let geom = Geometry::standard(n);
        println!("{n} punctures: measured {}, a priori {}", measure_bounds(&geom, (-3, 3))?, AlmostGradingBounds::a_priori(n));
    }

    let geom = Geometry::standard(2);
    let alg = KnAlgebra::new(geom.clone());
    for kind in [TableKind::FunctionProduct, TableKind::VectorBracket, TableKind::FieldOnForm] {
        let table = StructureTable::build(&alg, kind, (-1, 1))?;
        println!("\n{} (excess {})", kind.name(), table.measured_bound);
        for ((a, b), e) in table.entries.iter().take(6) {
            println!("  {a} x {b} = {e}");
        }
    }

    let x = alg.bracket(
        &kn_algebra::basis::KNExpansion::basis(BasisIndex::new(-1, 2, 1)),
        &kn_algebra::basis::KNExpansion::basis(BasisIndex::new(-1, -4, 2)),
    )?;
    let split = triangular_split(&geom, &x, SplitVariant::Standard, &AlmostGradingBounds::a_priori(2))?;
    println!("\n[e_(2,1), e_(-4,2)] = {x}");
    println!("  plus {}\n  zero {}\n  minus {}", split.plus, split.zero, split.minus);
    Ok(())
}
