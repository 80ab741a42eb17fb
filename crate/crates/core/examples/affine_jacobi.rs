//! Current algebra brackets with the central term and a Jacobi check.

use kn_algebra::affine::{affine_bracket, jacobi_sum, AffineElement, AlgebraTag, BilinearForm, CurrentElement, Matrix, MatrixElement};
use kn_algebra::basis::Geometry;
use kn_algebra::structure::KnAlgebra;

fn main() -> kn_algebra::Result<()> {
    let alg = KnAlgebra::new(Geometry::standard(2));
    let form = BilinearForm::trace();
    let e = MatrixElement::new(Matrix::from_ints(&[&[0, 1], &[0, 0]])?, AlgebraTag::SL)?;
    let f = MatrixElement::new(Matrix::from_ints(&[&[0, 0], &[1, 0]])?, AlgebraTag::SL)?;
    let h = MatrixElement::new(Matrix::from_ints(&[&[1, 0], &[0, -1]])?, AlgebraTag::SL)?;

    let x = AffineElement::current(CurrentElement::basis(&e, 1, 1));
    let y = AffineElement::current(CurrentElement::basis(&f, -1, 1));
    let z = AffineElement::current(CurrentElement::basis(&h, 0, 2));
    let b = affine_bracket(&alg, &x, &y, &form)?;
    println!("[e(A_(1,1)), f(A_(-1,1))]: central {}", b.central);
    for (i, m) in b.current.terms() {
        println!("  {i}: {m}");
    }
    println!("jacobi sum vanishes: {}", jacobi_sum(&alg, &x, &y, &z, &form)?.is_zero());

    for algebra in ["gl1", "sl2", "gl2"] {
        let cfg = kn_algebra::cli::config::JobConfig { algebra: algebra.into(), ..Default::default() };
        let rec = kn_algebra::cli::verify::affine_jacobi(&cfg, 30)?;
        println!("{algebra}: {} {}", rec.status, rec.witness);
    }
    Ok(())
}
