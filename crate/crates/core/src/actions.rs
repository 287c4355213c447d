//! Fermionic and spectral action densities, their θθ components, the cube
//! of the fluctuated Dirac operator, and SUSY-invariance certificates.

use serde::Serialize;

use crate::clifford::{dirac, gamma, gamma_apply, gamma_c, levi_civita, spinor_inner, CMat2, Spinor};
use crate::error::{Error, Result};
use crate::expr::{Expr, Field, DIM};
use crate::grassmann::Parity;
use crate::operator::{DiffOp, OperatorMatrix};
use crate::scalar::Cq;
use crate::superspace::{
    chiral_residual, component_variations, susy_parameter, susy_vary, vary_with, ChiralConstraint, SuperField,
    SuperFieldKind,
};
use crate::triple::{fluctuated_dirac, gamma_f};
use crate::variational::{is_total_derivative, DivergenceCertificate};

/// A Lagrangian density over jets, θ already eliminated.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionDensity {
    pub value: Expr,
    pub provenance: String,
}

#[derive(Serialize)]
struct DensityJson<'a> {
    provenance: &'a str,
    terms: Vec<(String, Vec<String>)>,
}

impl ActionDensity {
    pub fn new(value: Expr, provenance: &str) -> Self {
        ActionDensity { value, provenance: provenance.into() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DensityJson { provenance: &self.provenance, terms: self.value.term_list() })
            .expect("term lists serialize")
    }

    pub fn to_tex(&self) -> String {
        self.value.to_tex()
    }
}

/// `Σ_m γ^m (x_m v)` for scalar coefficients.
fn gamma_contract(x: &[Expr; DIM], v: &Spinor) -> Spinor {
    let mut out: Spinor = Default::default();
    for m in 0..DIM {
        let xv = [&x[m] * &v[0], &x[m] * &v[1]];
        let g = gamma_apply(m, &xv);
        out[0] += &g[0];
        out[1] += &g[1];
    }
    out
}

fn spinor_add(a: &Spinor, b: &Spinor) -> Spinor {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

fn spinor_scale(a: &Spinor, c: i64) -> Spinor {
    [a[0].scale_int(c), a[1].scale_int(c)]
}

fn odd_spinor(p: &SuperField) -> Result<Spinor> {
    if p.kind != SuperFieldKind::Spinor || p.parity != Parity::Odd {
        return Err(Error::Parity("expected an odd spinor superfield".into()));
    }
    p.spinor_comps()
}

/// θθ component of `⟨Ψ, (D_M + s γ^m A_m) Ψ⟩`.
fn sector_density(psi: &Spinor, a: Option<&[Expr; DIM]>, sign: i64) -> Expr {
    let mut op = dirac(psi);
    if let Some(a) = a {
        op = spinor_add(&op, &spinor_scale(&gamma_contract(a, psi), sign));
    }
    spinor_inner(psi, &op).theta_theta_component()
}

fn gauge_exprs(a: &[SuperField; DIM]) -> Result<[Expr; DIM]> {
    for x in a {
        if x.kind != SuperFieldKind::Scalar || x.parity != Parity::Even {
            return Err(Error::Parity("A_m must be even scalar superfields".into()));
        }
    }
    Ok(std::array::from_fn(|m| a[m].comps[0].clone()))
}

/// θθ component of `⟨ξ, D_A ξ⟩` for `ξ = Ψ₊⊗e + Ψ₋⊗ē`, `D_A = D + γ^mA_m⊗γ_F`
/// (γ_F e = e, γ_F ē = −ē).
pub fn fermionic_action(
    ko: u8,
    psi_plus: &SuperField,
    psi_minus: &SuperField,
    a: &[SuperField; DIM],
) -> Result<ActionDensity> {
    if ko != 0 && ko != 6 {
        return Err(Error::KoDimension(ko));
    }
    let am = gauge_exprs(a)?;
    let p = odd_spinor(psi_plus)?;
    let m = odd_spinor(psi_minus)?;
    let value = &sector_density(&p, Some(&am), 1) + &sector_density(&m, Some(&am), -1);
    Ok(ActionDensity::new(value, &format!("fermionic KO-{ko}, theta-theta")))
}

/// θθ component of `⟨Ψ̃, D_M Ψ̃⟩` for a chiral spinor superfield.
pub fn chiral_fermionic_action(cc: &ChiralConstraint) -> Result<ActionDensity> {
    let residual = cc.rules.apply_sf(&chiral_residual(&cc.constrained)?);
    if !residual.is_zero() {
        return Err(Error::NotChiral(residual.comps[0].to_string()));
    }
    let p = odd_spinor(&cc.constrained)?;
    let value = cc.rules.apply(&sector_density(&p, None, 1));
    Ok(ActionDensity::new(value, "chiral fermionic, theta-theta"))
}

/// θθ component of `⟨Ψ, D_M Ψ⟩` with no constraint processing.
pub fn kinetic_density(psi: &SuperField) -> Result<ActionDensity> {
    Ok(ActionDensity::new(sector_density(&odd_spinor(psi)?, None, 1), "kinetic, theta-theta"))
}

/// Chiral spinor superfield in free variables: `F = v_m γ^m` with the
/// divergence-free `v^m = ε^{mnp} ∂_n w_p`, `χ = γ^m ∂_m ψ`. All three
/// chiral conditions then hold identically.
pub fn chiral_superfield_free(psi: &str, w: &str) -> SuperField {
    let wf = |p: usize| Field::even(w, &[p as u8]).expr();
    // v_m = η_mm ε^{mnp} ∂_n w_p
    let v: [Expr; DIM] = std::array::from_fn(|m| {
        let mut acc = Expr::zero();
        for n in 0..DIM {
            for p in 0..DIM {
                let s = levi_civita(m, n, p);
                if s != 0 {
                    acc += &wf(p).deriv(n).scale_int(s * crate::clifford::eta(m, m));
                }
            }
        }
        acc
    });
    let ps: Spinor = [Field::odd(psi, &[1]).expr(), Field::odd(psi, &[2]).expr()];
    let comp = |a: usize| {
        let f: [Expr; 2] = std::array::from_fn(|b| {
            let mut acc = Expr::zero();
            for m in 0..DIM {
                let g = crate::clifford::gamma_entry(m, a, b + 1);
                if !g.is_zero() {
                    acc += &v[m].scale(&g);
                }
            }
            acc
        });
        let mut chi = Expr::zero();
        for m in 0..DIM {
            for r in 1..=2 {
                let g = crate::clifford::gamma_entry(m, a, r);
                if !g.is_zero() {
                    chi += &ps[r - 1].deriv(m).scale(&g);
                }
            }
        }
        Expr::from_theta_components(&ps[a - 1], &f, &chi)
    };
    SuperField::spinor(Parity::Odd, [comp(1), comp(2)])
}

/// The gauge superfields `A_m = 𝖠_m + λ_{m,α}θ^α + 𝖡_mθθ`. A real `A_m`
/// under the reversing involution needs real 𝖠, imaginary λ and 𝖡.
pub fn gauge_superfields() -> [SuperField; DIM] {
    std::array::from_fn(|m| {
        let i = m as u8;
        let a = Field::even("A", &[i]).real().expr();
        let l = [Field::odd("lambda", &[i, 1]).imaginary().expr(), Field::odd("lambda", &[i, 2]).imaginary().expr()];
        let b = Field::even("B", &[i]).imaginary().expr();
        SuperField::scalar(Parity::Even, Expr::from_theta_components(&a, &l, &b))
    })
}

/// `ε^{pmn} A_p F_{mn}` with `F_{mn} = ∂_m A_n − ∂_n A_m`.
pub fn chern_simons(a: &[Expr; DIM]) -> Expr {
    let mut out = Expr::zero();
    for p in 0..DIM {
        for m in 0..DIM {
            for n in 0..DIM {
                let s = levi_civita(p, m, n);
                if s != 0 {
                    let f = &a[n].deriv(m) - &a[m].deriv(n);
                    out += &(&a[p] * &f).scale_int(s);
                }
            }
        }
    }
    out
}

/// Symbol standing for the coupling prefactor `1/g`.
pub fn inverse_coupling() -> Expr {
    Field::even("ginv", &[]).real().constant().expr()
}

/// Spectral-action density `(1/g) ε^{pmn}A_pF_{mn}` of the gauge superfields
/// and its θθ component.
pub fn spectral_action(a: &[SuperField; DIM]) -> Result<(ActionDensity, ActionDensity)> {
    let am = gauge_exprs(a)?;
    let full = &inverse_coupling() * &chern_simons(&am);
    let tt = full.theta_theta_component();
    Ok((ActionDensity::new(full, "spectral, full superfield"), ActionDensity::new(tt, "spectral, theta-theta")))
}

/// `(D_A)³` by operator composition, with `A_m` even symbols.
pub fn dirac_cubed(a_m: &[Expr; DIM]) -> OperatorMatrix {
    let d = fluctuated_dirac(a_m);
    d.compose(&d).compose(&d)
}

/// Real gauge potential symbols `A_m`.
pub fn gauge_potential() -> [Expr; DIM] {
    std::array::from_fn(|m| Field::even("A", &[m as u8]).real().expr())
}

/// Certificate that a density is a total derivative.
pub fn certify(l: &ActionDensity) -> DivergenceCertificate {
    is_total_derivative(&l.value)
}

/// SUSY variation of a density given the superfields its fields come from.
pub fn susy_variation(l: &Expr, sources: &[SuperField]) -> Expr {
    let e = susy_parameter("eps");
    let mut delta = std::collections::BTreeMap::new();
    for s in sources {
        delta.extend(component_variations(s, &susy_vary(s, &e)));
    }
    vary_with(l, &delta)
}

/// The generic spinor superfield of one chirality sector.
pub fn sector_superfield(sign: char) -> SuperField {
    let n = |base: &str| format!("{base}{sign}");
    let (a, b, c) = (n("psi"), n("F"), n("chi"));
    SuperField::generic_spinor(Parity::Odd, [a.as_str(), b.as_str(), c.as_str()])
}

fn eta_f(m: usize) -> i64 {
    crate::clifford::eta(m, m)
}

fn ident2() -> CMat2 {
    [[Cq::one(), Cq::zero()], [Cq::zero(), Cq::one()]]
}

fn spin_mat(s: &crate::clifford::SpinorMatrix) -> CMat2 {
    std::array::from_fn(|r| std::array::from_fn(|c| s.e[r][c].constant_term()))
}

/// The cube organized into four groups: `γ^m⊗1`, `γ^m⊗γ_F` and the two
/// `γ^p[γ^m,γ^n]` groups. Contractions use η; `∂_m(X)` with a function `X`
/// is the derivative of `X`, and `∂_m(A·∂)` is operator composition.
pub fn grouped_cube(a: &[Expr; DIM]) -> [OperatorMatrix; 4] {
    let d = |m: usize| DiffOp::partial(m);
    let mul = |e: Expr| DiffOp::mult(e);
    let aa = (0..DIM).fold(Expr::zero(), |acc, n| &acc + &(&a[n] * &a[n]).scale_int(eta_f(n)));
    let div_a = (0..DIM).fold(Expr::zero(), |acc, n| &acc + &a[n].deriv(n).scale_int(eta_f(n)));
    let a_dot_d = (0..DIM).fold(DiffOp::zero(), |acc, n| acc.add(&DiffOp::term(a[n].scale_int(eta_f(n)), unit(n))));
    let box_op = (0..DIM).fold(DiffOp::zero(), |acc, n| acc.add(&d(n).compose(&d(n)).scale(&Cq::from_int(eta_f(n)))));
    let half = Cq::from_ratio(1, 2);
    let ihalf = Cq::new(num_rational::BigRational::from_integer(0.into()), num_rational::BigRational::new(1.into(), 2.into()));
    let (one, gf) = (ident2(), gamma_f());
    let mut g1 = OperatorMatrix::zero(4);
    let mut g2 = OperatorMatrix::zero(4);
    for m in 0..DIM {
        let first = box_op
            .compose(&d(m))
            .scale(&Cq::from_int(-1))
            .add(&mul(aa.clone()).compose(&d(m)))
            .add(&a_dot_d.left_mul(&a[m].scale_int(2)))
            .add(&mul(aa.deriv(m)))
            .add(&mul(&a[m] * &div_a));
        g1 = g1.add(&OperatorMatrix::kron(&gamma_c(m).expect("m"), &one, &first.scale(&ihalf)));
        let second = box_op
            .left_mul(&a[m].scale_int(2))
            .add(&a_dot_d.compose(&d(m)).scale(&Cq::from_int(2)))
            .add(&mul(div_a.clone()).compose(&d(m)))
            .add(&d(m).compose(&a_dot_d).scale(&Cq::from_int(2)))
            .add(&mul(div_a.deriv(m)))
            .add(&mul((&aa * &a[m]).scale_int(-2)));
        g2 = g2.add(&OperatorMatrix::kron(&gamma_c(m).expect("m"), &gf, &second.scale(&-half.clone())));
    }
    let mut g3 = OperatorMatrix::zero(4);
    let mut g4 = OperatorMatrix::zero(4);
    for p in 0..DIM {
        for m in 0..DIM {
            for n in 0..DIM {
                let f = &a[n].deriv(m) - &a[m].deriv(n);
                if f.is_zero() {
                    continue;
                }
                let t = spin_mat(&gamma(p).expect("p").mul(&gamma(m).expect("m").commutator(&gamma(n).expect("n"))));
                g3 = g3.add(&OperatorMatrix::kron(&t, &gf, &mul(f.deriv(p).scale(&-half.clone()))));
                g4 = g4.add(&OperatorMatrix::kron(&t, &one, &mul((&a[p] * &f).scale(&ihalf))));
            }
        }
    }
    [g1, g2, g3, g4]
}

fn unit(n: usize) -> [u8; DIM] {
    let mut mu = [0; DIM];
    mu[n] = 1;
    mu
}

/// Coordinates of a 4×4 operator in the basis `σ ⊗ τ` with
/// `σ ∈ {1, γ⁰, γ¹, γ²}`, `τ ∈ {1, γ_F}`: `X = Σ c_{στ} σ⊗τ`,
/// `c_{στ} = Tr((σ⊗τ)⁻¹ X)/4`.
pub fn clifford_components(x: &OperatorMatrix) -> [[DiffOp; 2]; 4] {
    let spin: [CMat2; 4] = [ident2(), gamma_c(0).expect("0"), gamma_c(1).expect("1"), gamma_c(2).expect("2")];
    let fin: [CMat2; 2] = [ident2(), gamma_f()];
    std::array::from_fn(|s| {
        std::array::from_fn(|t| {
            // (γ^m)⁻¹ = η_mm γ^m, γ_F⁻¹ = γ_F
            let sign = if s == 0 { 1 } else { eta_f(s - 1) };
            let basis = OperatorMatrix::kron(&spin[s], &fin[t], &DiffOp::identity());
            let mut acc = DiffOp::zero();
            for i in 0..4 {
                for k in 0..4 {
                    let b = basis.e[i][k].zeroth_order().constant_term();
                    if !b.is_zero() {
                        acc = acc.add(&x.e[k][i].scale(&b));
                    }
                }
            }
            acc.scale(&Cq::from_ratio(sign, 4))
        })
    })
}

/// θ-components of a spinor superfield: `ψ`, the columns `F_b = F^·_b`, `χ`.
#[derive(Debug, Clone)]
pub struct SpinorComponents {
    pub psi: Spinor,
    pub f: [Spinor; 2],
    pub chi: Spinor,
}

impl SpinorComponents {
    pub fn of(sf: &SuperField) -> Result<Self> {
        let [c1, c2] = sf.spinor_comps()?;
        let (p1, f1, x1) = c1.theta_split();
        let (p2, f2, x2) = c2.theta_split();
        Ok(SpinorComponents {
            psi: [p1, p2],
            f: [[f1[0].clone(), f2[0].clone()], [f1[1].clone(), f2[1].clone()]],
            chi: [x1, x2],
        })
    }
}

fn gauge_components(a: &[SuperField; DIM]) -> Result<([Expr; DIM], [Spinor; DIM], [Expr; DIM])> {
    gauge_exprs(a)?;
    let split: Vec<_> = a.iter().map(|x| x.comps[0].theta_split()).collect();
    Ok((
        std::array::from_fn(|m| split[m].0.clone()),
        std::array::from_fn(|m| split[m].1.clone()),
        std::array::from_fn(|m| split[m].2.clone()),
    ))
}

/// `⟨X_[2, Y_1]⟩ = ⟨X_2, Y_1⟩ − ⟨X_1, Y_2⟩`.
fn bracket(x: &[Spinor; 2], y: &[Spinor; 2]) -> Expr {
    &spinor_inner(&x[1], &y[0]) - &spinor_inner(&x[0], &y[1])
}

/// The nine θθ terms of one sector, in the order
/// `⟨ψ,Dχ⟩, ⟨F_[2,DF_1]⟩, ⟨χ,Dψ⟩, ⟨ψ,γB ψ⟩, ⟨ψ,γλ_[2}F_{1]⟩, ⟨ψ,γAχ⟩,
/// ⟨F_[1,γλ_{2]}ψ⟩, ⟨F_[2,γAF_1]⟩, ⟨χ,γAψ⟩`.
pub fn fermionic_terms(p: &SpinorComponents, a: &[SuperField; DIM]) -> Result<[Expr; 9]> {
    let (am, lam, bm) = gauge_components(a)?;
    let lam_b = |b: usize| -> [Expr; DIM] { std::array::from_fn(|m| lam[m][b].clone()) };
    let df = [dirac(&p.f[0]), dirac(&p.f[1])];
    let af = [gamma_contract(&am, &p.f[0]), gamma_contract(&am, &p.f[1])];
    // ⟨ψ, γλ_2 F_1⟩ − ⟨ψ, γλ_1 F_2⟩
    let psi_lf = &spinor_inner(&p.psi, &gamma_contract(&lam_b(1), &p.f[0]))
        - &spinor_inner(&p.psi, &gamma_contract(&lam_b(0), &p.f[1]));
    let l_psi = [gamma_contract(&lam_b(0), &p.psi), gamma_contract(&lam_b(1), &p.psi)];
    // ⟨F_1, γλ_2 ψ⟩ − ⟨F_2, γλ_1 ψ⟩
    let f_lpsi = &spinor_inner(&p.f[0], &l_psi[1]) - &spinor_inner(&p.f[1], &l_psi[0]);
    Ok([
        spinor_inner(&p.psi, &dirac(&p.chi)),
        bracket(&p.f, &df),
        spinor_inner(&p.chi, &dirac(&p.psi)),
        spinor_inner(&p.psi, &gamma_contract(&bm, &p.psi)),
        psi_lf,
        spinor_inner(&p.psi, &gamma_contract(&am, &p.chi)),
        f_lpsi,
        bracket(&p.f, &af),
        spinor_inner(&p.chi, &gamma_contract(&am, &p.psi)),
    ])
}

/// `Σ s_k t_k`.
pub fn signed_sum(terms: &[Expr], signs: &[i64]) -> Expr {
    terms.iter().zip(signs).fold(Expr::zero(), |acc, (t, &s)| &acc + &t.scale_int(s))
}

/// Signs of the nine terms as they come out of `⟨ξ, D_A ξ⟩` for the
/// `Ψ₊` (`true`) or `Ψ₋` sector.
pub fn fermionic_signs(plus: bool) -> [i64; 9] {
    let s = if plus { 1 } else { -1 };
    [1, 1, -1, s, s, s, s, s, -s]
}

/// The three-term θθ form `⟨ψ,Dχ⟩ + ⟨F_[2,DF_1]⟩ − ⟨χ,Dψ⟩`.
pub fn chiral_bracket_form(p: &SpinorComponents) -> Expr {
    let df = [dirac(&p.f[0]), dirac(&p.f[1])];
    &(&spinor_inner(&p.psi, &dirac(&p.chi)) + &bracket(&p.f, &df)) - &spinor_inner(&p.chi, &dirac(&p.psi))
}

/// `⟨ψ,Dχ⟩ + ⟨F_2+F_1, D(F_1−F_2)⟩ + ⟨χ,Dψ⟩`, the symmetric three-term form.
pub fn chiral_symmetric_form(p: &SpinorComponents) -> Expr {
    let sum = spinor_add(&p.f[1], &p.f[0]);
    let diff = spinor_add(&p.f[0], &spinor_scale(&p.f[1], -1));
    &(&spinor_inner(&p.psi, &dirac(&p.chi)) + &spinor_inner(&sum, &dirac(&diff))) + &spinor_inner(&p.chi, &dirac(&p.psi))
}

/// `(1/g) ε^{pmn}(𝖠_p F^𝖡_{mn} + 𝖡_p F^𝖠_{mn} − λ_{p,α}(∂_mλ_n^α − ∂_nλ_m^α))`.
pub fn spectral_three_term(a: &[SuperField; DIM]) -> Result<Expr> {
    let (am, lam, bm) = gauge_components(a)?;
    let lam_up: [Spinor; DIM] = std::array::from_fn(|m| crate::clifford::raise(&lam[m]));
    let mut out = Expr::zero();
    for p in 0..DIM {
        for m in 0..DIM {
            for n in 0..DIM {
                let s = levi_civita(p, m, n);
                if s == 0 {
                    continue;
                }
                let mut t = &am[p] * &(&bm[n].deriv(m) - &bm[m].deriv(n));
                t += &(&bm[p] * &(&am[n].deriv(m) - &am[m].deriv(n)));
                for al in 0..2 {
                    t -= &(&lam[p][al] * &(&lam_up[n][al].deriv(m) - &lam_up[m][al].deriv(n)));
                }
                out += &t.scale_int(s);
            }
        }
    }
    Ok(&inverse_coupling() * &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::chiral_constrain;

    fn sectors() -> (SuperField, SuperField) {
        (sector_superfield('+'), sector_superfield('-'))
    }

    #[test]
    fn fermionic_action_matches_signed_terms() {
        let (p, m) = sectors();
        let a = gauge_superfields();
        let l = fermionic_action(6, &p, &m, &a).unwrap();
        let tp = fermionic_terms(&SpinorComponents::of(&p).unwrap(), &a).unwrap();
        let tm = fermionic_terms(&SpinorComponents::of(&m).unwrap(), &a).unwrap();
        let expected = &signed_sum(&tp, &fermionic_signs(true)) + &signed_sum(&tm, &fermionic_signs(false));
        assert_eq!(l.value, expected);
        // the all-plus sum differs
        let all_plus = &signed_sum(&tp, &[1; 9]) + &signed_sum(&tm, &[1; 9]);
        assert_ne!(l.value, all_plus);
    }

    #[test]
    fn fermionic_action_vanishes_without_fields() {
        let a = gauge_superfields();
        let z = sector_superfield('+').zero_like();
        assert!(fermionic_action(0, &z, &z, &a).unwrap().value.is_zero());
        assert!(fermionic_action(4, &z, &z, &a).is_err());
    }

    #[test]
    fn zero_gauge_field_leaves_kinetic_terms() {
        let (p, m) = sectors();
        let zero: [SuperField; DIM] = std::array::from_fn(|_| SuperField::scalar(Parity::Even, Expr::zero()));
        let l = fermionic_action(6, &p, &m, &zero).unwrap();
        let k = &kinetic_density(&p).unwrap().value + &kinetic_density(&m).unwrap().value;
        assert_eq!(l.value, k);
    }

    #[test]
    fn fermionic_action_is_susy_invariant_and_hermitian() {
        let (p, m) = sectors();
        let a = gauge_superfields();
        let l = fermionic_action(6, &p, &m, &a).unwrap();
        let mut src = vec![p, m];
        src.extend(a.iter().cloned());
        let d = susy_variation(&l.value, &src);
        assert!(!d.is_zero());
        assert!(is_total_derivative(&d).is_divergence);
        assert!(is_total_derivative(&(&l.value - &l.value.star())).is_divergence);
    }

    #[test]
    fn chiral_action_matches_bracket_form() {
        let cc = chiral_constrain(&sector_superfield('+'), ["psi+", "F+", "chi+"]).unwrap();
        let l = chiral_fermionic_action(&cc).unwrap();
        let parts = SpinorComponents::of(&cc.constrained).unwrap();
        assert_eq!(l.value, cc.rules.apply(&chiral_bracket_form(&parts)));
        assert_ne!(l.value, cc.rules.apply(&chiral_symmetric_form(&parts)));
    }

    #[test]
    fn chiral_action_on_free_parametrization() {
        let psi = chiral_superfield_free("psi", "w");
        assert!(chiral_residual(&psi).unwrap().is_zero());
        let parts = SpinorComponents::of(&psi).unwrap();
        let l = kinetic_density(&psi).unwrap().value;
        assert_eq!(l, chiral_bracket_form(&parts));
        // the symmetric form is a different action, not a divergence away
        let diff = &l - &chiral_symmetric_form(&parts);
        assert!(!is_total_derivative(&diff).is_divergence);
    }

    #[test]
    fn chiral_action_is_susy_invariant() {
        let p = sector_superfield('+');
        let generic = kinetic_density(&p).unwrap().value;
        let d = susy_variation(&generic, std::slice::from_ref(&p));
        assert!(is_total_derivative(&d).is_divergence);
    }

    #[test]
    fn spectral_theta_theta_matches_three_terms() {
        let a = gauge_superfields();
        let (_, tt) = spectral_action(&a).unwrap();
        assert_eq!(tt.value, spectral_three_term(&a).unwrap());
        let d = susy_variation(&tt.value, &a);
        assert!(is_total_derivative(&d).is_divergence);
        // anti-hermitian modulo divergence
        assert!(is_total_derivative(&(&tt.value + &tt.value.star())).is_divergence);
        assert!(!is_total_derivative(&(&tt.value - &tt.value.star())).is_divergence);
    }

    #[test]
    fn pure_gauge_chern_simons_is_a_divergence() {
        let phi = Field::even("phi", &[]).real().expr();
        let a: [Expr; DIM] = std::array::from_fn(|m| phi.deriv(m));
        assert!(chern_simons(&a).is_zero());
        let b = gauge_potential();
        let shifted: [Expr; DIM] = std::array::from_fn(|m| &b[m] + &a[m]);
        let gauge_change = &chern_simons(&shifted) - &chern_simons(&b);
        assert!(!gauge_change.is_zero());
        assert!(is_total_derivative(&gauge_change).is_divergence);
    }

    #[test]
    fn cube_trace_is_twice_chern_simons() {
        let a = gauge_potential();
        let cube = dirac_cubed(&a);
        assert_eq!(cube.zeroth_order_trace(), chern_simons(&a).scale_int(2));
    }

    #[test]
    fn cube_acts_as_triple_application() {
        let a = gauge_potential();
        let d = fluctuated_dirac(&a);
        let v: Vec<Expr> = (0..4).map(|i| Field::odd("u", &[i as u8]).expr()).collect();
        let once = |x: &[Expr]| d.apply(x);
        assert_eq!(dirac_cubed(&a).apply(&v), once(&once(&once(&v))));
    }

    #[test]
    fn cube_free_part_and_grouped_display() {
        let a = gauge_potential();
        let comps = clifford_components(&dirac_cubed(&a));
        // free part of γ^0 component: −i □ ∂_0 → coefficient of ∂_0³ is −i
        assert_eq!(comps[1][0].coefficient([3, 0, 0]), Expr::scalar(-Cq::i()));
        let g = grouped_cube(&a);
        let total = g.iter().skip(1).fold(g[0].clone(), |acc, x| acc.add(x));
        let diff = clifford_components(&dirac_cubed(&a).sub(&total));
        assert!(diff.iter().flatten().all(|c| !c.is_zero()));
    }

    #[test]
    fn density_serializes() {
        let (_, tt) = spectral_action(&gauge_superfields()).unwrap();
        let j = tt.to_json();
        assert_eq!(j["provenance"], "spectral, theta-theta");
        assert!(!tt.to_tex().is_empty());
    }
}
