//! 3d Minkowski gamma matrices, the spinor metric, the spin representation
//! of SL(2,R), and the spinor inner product.
//!
//! Conventions: η = diag(1, −1, −1); γ⁰ = σ², γ¹ = iσ³, γ² = iσ¹ with index
//! placement (γ^m)^α_β. The spinor metric has ε₁₂ = ε¹² = 1; indices are
//! lowered as `v_α = ε_{αβ} v^β` and raised as `v^α = v_β ε^{βα}`, which is
//! the pair for which lowering then raising is the identity.

use nalgebra::{Complex, Matrix2, Matrix3};

use crate::error::{Error, Result};
use crate::expr::{Expr, DIM};
use crate::scalar::Cq;

/// A 2-component spinor of expressions, upper index.
pub type Spinor = [Expr; 2];

/// Exact 2×2 numeric matrix.
pub type CMat2 = [[Cq; 2]; 2];

pub fn eta(m: usize, n: usize) -> i64 {
    match (m, n) {
        (0, 0) => 1,
        (a, b) if a == b => -1,
        _ => 0,
    }
}

/// ε_{αβ} (= ε^{αβ}) for α, β ∈ {1, 2}.
pub fn eps(alpha: usize, beta: usize) -> i64 {
    match (alpha, beta) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// Levi-Civita symbol ε^{pmn} with ε^{012} = 1.
pub fn levi_civita(p: usize, m: usize, n: usize) -> i64 {
    if p == m || m == n || p == n {
        return 0;
    }
    let mut v = [p, m, n];
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Exact entries of γ^m, zero-based `[row][col]` = (γ^m)^{row+1}_{col+1}.
pub fn gamma_c(m: usize) -> Result<CMat2> {
    let z = Cq::zero;
    let g = |a: i64, b: i64| Cq::gaussian(a, b);
    match m {
        // σ² = [[0, −i], [i, 0]]
        0 => Ok([[z(), g(0, -1)], [g(0, 1), z()]]),
        // iσ³ = [[i, 0], [0, −i]]
        1 => Ok([[g(0, 1), z()], [z(), g(0, -1)]]),
        // iσ¹ = [[0, i], [i, 0]]
        2 => Ok([[z(), g(0, 1)], [g(0, 1), z()]]),
        _ => Err(Error::Index(format!("gamma index {m} not in 0..=2"))),
    }
}

/// (γ^m)^α_β with 1-based spinor indices.
pub fn gamma_entry(m: usize, alpha: usize, beta: usize) -> Cq {
    gamma_c(m).expect("m < 3")[alpha - 1][beta - 1].clone()
}

/// A 2×2 matrix with symbolic entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpinorMatrix {
    pub e: [[Expr; 2]; 2],
}

impl SpinorMatrix {
    pub fn zero() -> Self {
        SpinorMatrix { e: Default::default() }
    }

    pub fn identity() -> Self {
        Self::from_c(&[[Cq::one(), Cq::zero()], [Cq::zero(), Cq::one()]])
    }

    pub fn from_c(c: &CMat2) -> Self {
        let mut m = Self::zero();
        for r in 0..2 {
            for s in 0..2 {
                m.e[r][s] = Expr::scalar(c[r][s].clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Expr::is_zero)
    }

    pub fn scale(&self, x: &Expr) -> Self {
        let mut m = Self::zero();
        for r in 0..2 {
            for s in 0..2 {
                m.e[r][s] = x * &self.e[r][s];
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for r in 0..2 {
            for s in 0..2 {
                m.e[r][s] = &self.e[r][s] + &o.e[r][s];
            }
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Expr::int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for r in 0..2 {
            for s in 0..2 {
                m.e[r][s] = &(&self.e[r][0] * &o.e[0][s]) + &(&self.e[r][1] * &o.e[1][s]);
            }
        }
        m
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        [
            &(&self.e[0][0] * &v[0]) + &(&self.e[0][1] * &v[1]),
            &(&self.e[1][0] * &v[0]) + &(&self.e[1][1] * &v[1]),
        ]
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

/// γ^m as a [`SpinorMatrix`].
pub fn gamma(m: usize) -> Result<SpinorMatrix> {
    Ok(SpinorMatrix::from_c(&gamma_c(m)?))
}

/// Lower a spinor index: `v_α = ε_{αβ} v^β`.
pub fn lower(v: &Spinor) -> Spinor {
    [v[1].clone(), -&v[0]]
}

/// Raise a spinor index: `v^α = v_β ε^{βα}`.
pub fn raise(v: &Spinor) -> Spinor {
    [-&v[1], v[0].clone()]
}

/// The spinor `(γ^m v)^α`.
pub fn gamma_apply(m: usize, v: &Spinor) -> Spinor {
    let g = gamma_c(m).expect("m < 3");
    [
        &v[0].scale(&g[0][0]) + &v[1].scale(&g[0][1]),
        &v[0].scale(&g[1][0]) + &v[1].scale(&g[1][1]),
    ]
}

/// Entrywise involution, i.e. the complex-conjugation operator `C`.
pub fn conj_spinor(v: &Spinor) -> Spinor {
    [v[0].star(), v[1].star()]
}

/// The inner product `(ξ, ψ) = i ξ̄ ψ` with `ξ̄ = ξ† γ⁰` and `†` the
/// transposed involution.
pub fn spinor_inner(xi: &Spinor, psi: &Spinor) -> Expr {
    let g0 = gamma_c(0).expect("γ⁰");
    let mut out = Expr::zero();
    for a in 0..2 {
        let xa = xi[a].star();
        for b in 0..2 {
            if g0[a][b].is_zero() {
                continue;
            }
            out += &(&xa * &psi[b]).scale(&(&g0[a][b] * &Cq::i()));
        }
    }
    out
}

/// The spinorial derivative `D ψ = i γ^m ∂_m ψ`.
pub fn dirac(psi: &Spinor) -> Spinor {
    let mut out: Spinor = Default::default();
    for m in 0..DIM {
        let d = [psi[0].deriv(m), psi[1].deriv(m)];
        let g = gamma_apply(m, &d);
        out[0] += &g[0].scale(&Cq::i());
        out[1] += &g[1].scale(&Cq::i());
    }
    out
}

/// Numeric spin representation of a Lorentz transformation.
#[derive(Debug, Clone)]
pub struct SpinRep {
    /// S(L) = exp(¼ Σ_{a<b} ξ_ab [γ^a, γ^b]).
    pub s: Matrix2<Complex<f64>>,
    /// L = exp(ω) with ω^m_n = η^{ma} ξ_{an}.
    pub l: Matrix3<f64>,
}

impl SpinRep {
    /// max |S⁻¹ γ^m S − L^m_n γ^n| over all entries and m.
    pub fn covariance_residual(&self) -> f64 {
        let inv = self.s.try_inverse().expect("S(L) is invertible");
        let gam: Vec<Matrix2<Complex<f64>>> = (0..3).map(gamma_f64).collect();
        let mut worst = 0.0f64;
        for m in 0..3 {
            let lhs = inv * gam[m] * self.s;
            let mut rhs = Matrix2::zeros();
            for n in 0..3 {
                rhs += gam[n] * Complex::new(self.l[(m, n)], 0.0);
            }
            worst = worst.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        worst
    }

    /// |det S − 1|.
    pub fn det_residual(&self) -> f64 {
        (self.s.determinant() - Complex::new(1.0, 0.0)).norm()
    }
}

pub fn gamma_f64(m: usize) -> Matrix2<Complex<f64>> {
    let g = gamma_c(m).expect("m < 3");
    Matrix2::from_fn(|r, c| {
        let (re, im) = g[r][c].to_f64();
        Complex::new(re, im)
    })
}

/// Dimension of the space of 2×2 matrices anticommuting with every `γ^m`.
/// It is 0: `γ⁰γ¹γ²` is a multiple of the identity, so the spinor factor
/// carries no grading.
pub fn anticommuting_dimension() -> usize {
    let mut map = nalgebra::DMatrix::<Complex<f64>>::zeros(12, 4);
    for k in 0..4 {
        let mut e = Matrix2::<Complex<f64>>::zeros();
        e[(k / 2, k % 2)] = Complex::new(1.0, 0.0);
        for m in 0..DIM {
            let g = gamma_f64(m);
            let a = g * e + e * g;
            for r in 0..4 {
                map[(4 * m + r, k)] = a[(r / 2, r % 2)];
            }
        }
    }
    let sv = map.svd(false, false).singular_values;
    sv.iter().filter(|x| **x < 1e-12).count()
}

/// Spin representation for antisymmetric parameters `ξ_ab`.
pub fn spin_rep(xi: &[[f64; 3]; 3]) -> Result<SpinRep> {
    for a in 0..3 {
        for b in 0..3 {
            if xi[a][b] != -xi[b][a] {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    let mut gen = Matrix2::<Complex<f64>>::zeros();
    for a in 0..3 {
        for b in a + 1..3 {
            let c = gamma_f64(a) * gamma_f64(b) - gamma_f64(b) * gamma_f64(a);
            gen += c * Complex::new(0.25 * xi[a][b], 0.0);
        }
    }
    let omega = Matrix3::from_fn(|m, n| eta(m, m) as f64 * xi[m][n]);
    Ok(SpinRep { s: gen.exp(), l: omega.exp() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Field;

    #[test]
    fn products_of_gammas() {
        let g0 = gamma(0).unwrap();
        let g1 = gamma(1).unwrap();
        assert_eq!(g0.mul(&g0), SpinorMatrix::identity());
        assert_eq!(g1.mul(&g1), SpinorMatrix::identity().scale(&Expr::int(-1)));
        assert!(g0.anticommutator(&g1).is_zero());
        assert!(gamma(3).is_err());
    }

    #[test]
    fn no_spinor_grading() {
        assert_eq!(anticommuting_dimension(), 0);
        let g = gamma(0).unwrap().mul(&gamma(1).unwrap()).mul(&gamma(2).unwrap());
        assert_eq!(g, SpinorMatrix::identity().scale(&Expr::scalar(-Cq::i())));
    }

    #[test]
    fn metric_round_trip() {
        let v: Spinor = [Field::odd("v", &[1]).expr(), Field::odd("v", &[2]).expr()];
        assert_eq!(raise(&lower(&v)), v);
        assert_eq!(lower(&raise(&v)), v);
    }

    #[test]
    fn epsilon_contractions() {
        // with ε^{12} = ε_{12} = 1, ε^{αβ} ε_{βγ} = −δ^α_γ while ε_{βα} ε^{βγ} = δ_α^γ
        for a in 1..=2 {
            for c in 1..=2 {
                let upper_lower: i64 = (1..=2).map(|b| eps(a, b) * eps(b, c)).sum();
                assert_eq!(upper_lower, if a == c { -1 } else { 0 });
                let transposed: i64 = (1..=2).map(|b| eps(b, a) * eps(b, c)).sum();
                assert_eq!(transposed, if a == c { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn identity_parameters() {
        let r = spin_rep(&[[0.0; 3]; 3]).unwrap();
        assert!((r.s - Matrix2::identity()).norm() < 1e-15);
        assert!((r.l - Matrix3::identity()).norm() < 1e-15);
        assert!(spin_rep(&[[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0; 3]]).is_err());
    }

    #[test]
    fn finite_lorentz_covariance() {
        let xi = [[0.0, 0.3, -0.7], [-0.3, 0.0, 0.5], [0.7, -0.5, 0.0]];
        let r = spin_rep(&xi).unwrap();
        assert!(r.covariance_residual() <= 1e-12, "{}", r.covariance_residual());
        assert!(r.det_residual() <= 1e-12);
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita(0, 1, 2), 1);
        assert_eq!(levi_civita(1, 0, 2), -1);
        assert_eq!(levi_civita(2, 0, 1), 1);
        assert_eq!(levi_civita(0, 0, 2), 0);
    }
}
