//! Sugawara operators on fermion sectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::affine::{AlgebraTag, Matrix};
use crate::arith::{int, Rational};
use crate::basis::{make_basis, BasisIndex, Geometry, KNExpansion};
use crate::error::{Error, Result};
use crate::linalg;
use crate::wedge::{wedge_apply, BandedOperator, FermionModule, WedgeMonomial, WedgeVector};

/// Width `S` of the support `k <= n + m <= k + S` of the coefficients.
pub fn sugawara_support(n_punctures: usize) -> i64 {
    if n_punctures == 1 {
        0
    } else {
        1
    }
}

/// `l_{(k,r)}^{(n,p)(m,s)}`: sum of in-point residues of `ω^{n,p} ω^{m,s} e_{k,r}`.
pub fn sugawara_coeff(geom: &Arc<Geometry>, k: i64, r: usize, n: i64, p: usize, m: i64, s: usize) -> Result<Rational> {
    let t = n + m;
    if t < k || t > k + sugawara_support(geom.num_punctures()) {
        for q in [r, p, s] {
            geom.check_puncture(q)?;
        }
        return Ok(Rational::zero());
    }
    let w1 = make_basis(geom, 1, -n, p)?;
    let w2 = make_basis(geom, 1, -m, s)?;
    let e = make_basis(geom, -1, k, r)?;
    let prod = w1.func().mul(w2.func()).mul(e.func());
    Ok(prod.residue_sum_in(geom.punctures()))
}

/// `(first, second, swapped)`: operator order of `:x(n) y(m):`; the
/// second entry acts first on a vector.
pub fn normal_order(n: i64, m: i64) -> (i64, i64, bool) {
    if n <= m {
        (n, m, false)
    } else {
        (m, n, true)
    }
}

/// One summand of the reductive split with dual bases for the trace form.
#[derive(Clone, Debug)]
pub struct SugawaraPart {
    pub name: String,
    pub basis: Vec<Matrix>,
    pub dual: Vec<Matrix>,
    pub kappa: Rational,
    pub level: Rational,
}

/// Basis of `sl(l)`: off-diagonal units then `E_ii - E_{i+1,i+1}`.
pub fn sl_basis(l: usize) -> Vec<Matrix> {
    let mut b = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if i != j {
                b.push(Matrix::unit(l, i, j));
            }
        }
    }
    for i in 0..l.saturating_sub(1) {
        b.push(Matrix::unit(l, i, i).sub(&Matrix::unit(l, i + 1, i + 1)));
    }
    b
}

/// Dual basis for `(x|y) = tr(xy)`.
pub fn dual_basis(basis: &[Matrix]) -> Result<Vec<Matrix>> {
    let n = basis.len();
    let gram: Vec<Vec<Rational>> = basis.iter().map(|a| basis.iter().map(|b| a.mul(b).trace()).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let rhs: Vec<Rational> = (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect();
        let c = linalg::solve(&gram, &rhs).ok_or_else(|| Error::Invariant("degenerate trace form".into()))?;
        let mut d = Matrix::zero(basis[0].size());
        for (cj, bj) in c.iter().zip(basis) {
            d = d.add(&bj.scale(cj));
        }
        out.push(d);
    }
    Ok(out)
}

/// Half the eigenvalue of `Σ ad(u_i) ad(u^i)`, checked to be scalar.
pub fn half_casimir_eigenvalue(basis: &[Matrix], dual: &[Matrix]) -> Result<Rational> {
    let mut value: Option<Rational> = None;
    for y in basis {
        let mut c = Matrix::zero(y.size());
        for (u, d) in basis.iter().zip(dual) {
            c = c.add(&u.commutator(&d.commutator(y)));
        }
        let (i, j) = (0..y.size())
            .flat_map(|i| (0..y.size()).map(move |j| (i, j)))
            .find(|&(i, j)| !y.get(i, j).is_zero())
            .ok_or_else(|| Error::Invariant("zero basis element".into()))?;
        let s = c.get(i, j) / y.get(i, j);
        if c != y.scale(&s) {
            return Err(Error::Invariant("adjoint Casimir is not scalar".into()));
        }
        match &value {
            Some(v) if *v != s => return Err(Error::Invariant("adjoint Casimir eigenvalue varies".into())),
            _ => value = Some(s),
        }
    }
    Ok(value.unwrap_or_else(Rational::zero) / int(2))
}

type OpKey = (usize, usize, bool, i64, usize);
type MemoKey = (i64, usize, WedgeMonomial);
type CoeffKey = (i64, usize, i64, usize, i64, usize);

/// Fermion module together with the split `g = g_0 ⊕ g_1`, dual bases,
/// levels and `κ`.
pub struct SugawaraContext {
    module: Arc<FermionModule>,
    parts: Vec<SugawaraPart>,
    ops: Mutex<HashMap<OpKey, BandedOperator>>,
    memo: Mutex<HashMap<MemoKey, Arc<WedgeVector>>>,
    coeffs: Mutex<HashMap<CoeffKey, Rational>>,
}

impl SugawaraContext {
    /// Level `c` shared by all parts.
    pub fn with_level(module: Arc<FermionModule>, level: Rational) -> Result<Self> {
        let rep = module.representation();
        let l = rep.l;
        let mut parts = Vec::new();
        if matches!(rep.tag, AlgebraTag::GL | AlgebraTag::GL1) {
            parts.push(SugawaraPart {
                name: "abelian".into(),
                basis: vec![Matrix::identity(l)],
                dual: vec![Matrix::identity(l).scale(&Rational::new(1.into(), (l as i64).into()))],
                kappa: Rational::zero(),
                level: level.clone(),
            });
        }
        if matches!(rep.tag, AlgebraTag::GL | AlgebraTag::SL) && l > 1 {
            let basis = sl_basis(l);
            let dual = dual_basis(&basis)?;
            let kappa = half_casimir_eigenvalue(&basis, &dual)?;
            parts.push(SugawaraPart { name: "simple".into(), basis, dual, kappa, level });
        }
        for part in &parts {
            if (&part.level + &part.kappa).is_zero() {
                return Err(Error::CriticalLevel { part: part.name.clone() });
            }
        }
        Ok(SugawaraContext {
            module,
            parts,
            ops: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
            coeffs: Mutex::new(HashMap::new()),
        })
    }

    /// Level read off the module: `c = -α` with `α` from the current
    /// defect on a degree `±1` pair.
    pub fn from_module(module: Arc<FermionModule>) -> Result<Self> {
        let alpha = module.current_level()?;
        Self::with_level(module, -alpha)
    }

    pub fn module(&self) -> &Arc<FermionModule> {
        &self.module
    }

    pub fn parts(&self) -> &[SugawaraPart] {
        &self.parts
    }

    pub fn coeff(&self, k: i64, r: usize, n: i64, p: usize, m: i64, s: usize) -> Result<Rational> {
        let key = (k, r, n, p, m, s);
        if let Some(v) = self.coeffs.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = sugawara_coeff(self.module.geometry(), k, r, n, p, m, s)?;
        self.coeffs.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn op(&self, part: usize, i: usize, dual: bool, n: i64, p: usize) -> Result<BandedOperator> {
        let key = (part, i, dual, n, p);
        if let Some(o) = self.ops.lock().unwrap().get(&key) {
            return Ok(o.clone());
        }
        let pt = &self.parts[part];
        let x = if dual { &pt.dual[i] } else { &pt.basis[i] };
        let o = self.module.current_operator(x, &KNExpansion::basis(BasisIndex::new(0, n, p)))?;
        self.ops.lock().unwrap().insert(key, o.clone());
        Ok(o)
    }

    fn sugawara_monomial(&self, k: i64, r: usize, phi: &WedgeMonomial) -> Result<Arc<WedgeVector>> {
        let key = (k, r, phi.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let n_punct = self.module.geometry().num_punctures();
        let h = self.module.annihilation_degree(phi);
        let v = WedgeVector::monomial(phi.clone());
        let mut out = WedgeVector::zero();
        for t in k..=k + sugawara_support(n_punct) {
            let h_lo = (t + 1).div_euclid(2);
            for big in h_lo..=h {
                let mut pairs = vec![(big, t - big)];
                if t - big != big {
                    pairs.push((t - big, big));
                }
                for (n, m) in pairs {
                    for p in 1..=n_punct {
                        for s in 1..=n_punct {
                            let l = self.coeff(k, r, n, p, m, s)?;
                            if l.is_zero() {
                                continue;
                            }
                            for (pi, part) in self.parts.iter().enumerate() {
                                let scale = -&l / (int(2) * (&part.level + &part.kappa));
                                for i in 0..part.basis.len() {
                                    let x = self.op(pi, i, false, n, p)?;
                                    let y = self.op(pi, i, true, m, s)?;
                                    let w = if n <= m {
                                        wedge_apply(&x, &wedge_apply(&y, &v)?)?
                                    } else {
                                        wedge_apply(&y, &wedge_apply(&x, &v)?)?
                                    };
                                    out.add_scaled(&w, &scale);
                                }
                            }
                        }
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.memo.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `L*_{k,r} v`
    pub fn apply_sugawara(&self, k: i64, r: usize, v: &WedgeVector) -> Result<WedgeVector> {
        self.module.geometry().check_puncture(r)?;
        let mut out = WedgeVector::zero();
        for (phi, c) in v.iter() {
            out.add_scaled(&*self.sugawara_monomial(k, r, phi)?, c);
        }
        Ok(out)
    }

    /// `T[e] v = Σ a_{k,r} L*_{k,r} v` for `e = Σ a_{k,r} e_{k,r}`.
    pub fn apply_t_of_field(&self, e: &KNExpansion, v: &WedgeVector) -> Result<WedgeVector> {
        if e.weight != -1 {
            return Err(Error::WeightMismatch { expected: -1, found: e.weight });
        }
        let mut out = WedgeVector::zero();
        for (idx, c) in e.iter() {
            out.add_scaled(&self.apply_sugawara(idx.degree, idx.puncture, v)?, c);
        }
        Ok(out)
    }

    /// `[T[e], x(A)] v = x(e.A) v` on every sample.
    pub fn check_fundamental(&self, e: &KNExpansion, x: &Matrix, a: &KNExpansion, samples: &[WedgeVector]) -> Result<bool> {
        let xa = self.module.current_operator(x, a)?;
        let ea = self.module.algebra().act(e, a)?;
        let xea = self.module.current_operator(x, &ea)?;
        for v in samples {
            let lhs = self
                .apply_t_of_field(e, &wedge_apply(&xa, v)?)?
                .sub(&wedge_apply(&xa, &self.apply_t_of_field(e, v)?)?);
            if lhs != wedge_apply(&xea, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[L*_{k,r}, L*_{l,s}] v`
    pub fn sugawara_commutator(&self, k: (i64, usize), l: (i64, usize), v: &WedgeVector) -> Result<WedgeVector> {
        let a = self.apply_sugawara(k.0, k.1, &self.apply_sugawara(l.0, l.1, v)?)?;
        let b = self.apply_sugawara(l.0, l.1, &self.apply_sugawara(k.0, k.1, v)?)?;
        Ok(a.sub(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::KnAlgebra;
    use crate::wedge::RepresentationData;

    fn ctx(n: usize, tag: AlgebraTag, l: usize) -> SugawaraContext {
        let alg = Arc::new(KnAlgebra::new(Geometry::standard(n)));
        let m = FermionModule::new(alg, RepresentationData::fundamental(tag, l, 1).unwrap()).unwrap();
        SugawaraContext::from_module(Arc::new(m)).unwrap()
    }

    #[test]
    fn laurent_coefficients() {
        let g = Geometry::standard(1);
        for k in -3..=3 {
            for n in -4..=4 {
                for m in -4..=4 {
                    let want = if n + m == k { int(1) } else { int(0) };
                    assert_eq!(sugawara_coeff(&g, k, 1, n, 1, m, 1).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn support_is_exact_for_two_points() {
        let g = Geometry::standard(2);
        for k in -2..=2 {
            for n in -5..=5 {
                for m in -5..=5 {
                    for (p, s, r) in [(1, 1, 1), (1, 2, 2), (2, 1, 1), (2, 2, 1)] {
                        let w1 = make_basis(&g, 1, -n, p).unwrap();
                        let w2 = make_basis(&g, 1, -m, s).unwrap();
                        let e = make_basis(&g, -1, k, r).unwrap();
                        let direct = w1.func().mul(w2.func()).mul(e.func()).residue_sum_in(g.punctures());
                        assert_eq!(sugawara_coeff(&g, k, r, n, p, m, s).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn ordering() {
        assert_eq!(normal_order(1, 2), (1, 2, false));
        assert_eq!(normal_order(2, 1), (1, 2, true));
        assert_eq!(normal_order(3, 3), (3, 3, false));
    }

    #[test]
    fn kappa_for_sl() {
        for l in 2..=3 {
            let b = sl_basis(l);
            let d = dual_basis(&b).unwrap();
            assert_eq!(half_casimir_eigenvalue(&b, &d).unwrap(), int(l as i64));
        }
    }

    #[test]
    fn positive_modes_kill_vacuum() {
        let c = ctx(1, AlgebraTag::GL1, 1);
        let vac = WedgeVector::monomial(WedgeMonomial::vacuum(0));
        for k in 1..4 {
            assert!(c.apply_sugawara(k, 1, &vac).unwrap().is_zero());
        }
        assert!(c.apply_sugawara(0, 1, &WedgeVector::zero()).unwrap().is_zero());
    }

    #[test]
    fn fundamental_on_vacuum() {
        let c = ctx(1, AlgebraTag::GL1, 1);
        let vac = WedgeVector::monomial(WedgeMonomial::vacuum(0));
        let e0 = KNExpansion::basis(BasisIndex::new(-1, 0, 1));
        let a = |n| KNExpansion::basis(BasisIndex::new(0, n, 1));
        for n in -3..=3 {
            assert!(c.check_fundamental(&e0, &Matrix::identity(1), &a(n), &[vac.clone()]).unwrap());
        }
    }

    #[test]
    fn critical_level_refused() {
        let alg = Arc::new(KnAlgebra::new(Geometry::standard(1)));
        let m = Arc::new(FermionModule::new(alg, RepresentationData::fundamental(AlgebraTag::SL, 2, 1).unwrap()).unwrap());
        assert!(matches!(SugawaraContext::with_level(m, int(-2)), Err(Error::CriticalLevel { .. })));
    }
}
