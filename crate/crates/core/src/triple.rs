//! The two-point finite geometry over Grassmann numbers, its real structure
//! by KO-dimension, inner fluctuations of the total Dirac operator and the
//! finite gauge group.

use serde::{Deserialize, Serialize};

use crate::clifford::{gamma_c, CMat2};
use crate::error::{Error, Result};
use crate::expr::{Atom, Expr, Field, DIM};
use crate::grassmann::{GrassmannElement, Parity};
use crate::operator::{DiffOp, OperatorMatrix};
use crate::scalar::Cq;
use crate::superspace::{apply_d_expr, SuperField, SuperFieldKind};

/// KO sign triple (ε, ε′, ε″): `J² = ε`, `JD = ε′DJ`, `Jγ = ε″γJ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoSigns {
    pub epsilon: i8,
    pub epsilon_prime: i8,
    pub epsilon_second: i8,
}

pub fn ko_signs(ko: u8) -> Result<KoSigns> {
    let (e, e1, e2) = match ko {
        0 => (1, 1, 1),
        2 => (-1, 1, -1),
        4 => (-1, 1, 1),
        6 => (1, 1, -1),
        _ => return Err(Error::KoDimension(ko)),
    };
    Ok(KoSigns { epsilon: e, epsilon_prime: e1, epsilon_second: e2 })
}

/// Shape of `J_F` on the two-point space; forced by ε″ since `J_F` must
/// commute (diagonal) or anticommute (off-diagonal) with `γ_F = diag(1,−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JForm {
    /// `J_F = diag(u₁G, u₂G)`.
    Diagonal,
    /// `J_F = [[0, u₁G], [u₂G, 0]]`.
    OffDiagonal,
}

impl JForm {
    pub fn for_signs(s: KoSigns) -> Self {
        if s.epsilon_second == 1 {
            JForm::Diagonal
        } else {
            JForm::OffDiagonal
        }
    }
}

/// Apply `J_F` with unit multipliers `u` to a finite-space vector.
pub fn apply_j(form: JForm, u: &[Expr; 2], h: &[Expr; 2]) -> [Expr; 2] {
    match form {
        JForm::Diagonal => [&u[0] * &h[0].star(), &u[1] * &h[1].star()],
        JForm::OffDiagonal => [&u[0] * &h[1].star(), &u[1] * &h[0].star()],
    }
}

/// Finite data of the real two-point geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteGeometry {
    pub n_points: usize,
    pub ko: u8,
    pub ko_signs: KoSigns,
    /// Entries of `D_F` as Grassmann-element strings.
    pub d_f: Vec<Vec<String>>,
    pub gamma_f: Vec<i8>,
    pub j_form: JForm,
    /// Unit multipliers in `J_F`, when realizable.
    pub j_units: Option<[String; 2]>,
}

/// Total triple: base `(Λ^e, spinor superfields, iγ^m∂_m, γ_M, J_M = diag(G,G))`
/// tensored with the finite geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TotalTriple {
    pub finite: FiniteGeometry,
    pub base_dirac: String,
    pub gamma_m: Vec<i8>,
    pub j_m: String,
}

fn cq_diag(a: i64, b: i64) -> CMat2 {
    [[Cq::from_int(a), Cq::zero()], [Cq::zero(), Cq::from_int(b)]]
}

pub fn gamma_f() -> CMat2 {
    cq_diag(1, -1)
}

pub fn build_total_triple(ko: u8) -> Result<TotalTriple> {
    let signs = ko_signs(ko)?;
    let analysis = j_analysis(ko)?;
    let j_units = match &analysis.outcome {
        JOutcome::Realizable { u } => Some([u[0].to_string(), u[1].to_string()]),
        JOutcome::Obstructed { .. } => None,
    };
    Ok(TotalTriple {
        finite: FiniteGeometry {
            n_points: 2,
            ko,
            ko_signs: signs,
            d_f: vec![vec!["0".into(); 2]; 2],
            gamma_f: vec![1, -1],
            j_form: JForm::for_signs(signs),
            j_units,
        },
        base_dirac: "i gamma^m d_m".into(),
        gamma_m: vec![1, -1],
        j_m: "diag(G, G)".into(),
    })
}

type M2 = [[Expr; 2]; 2];

fn m2_mul(x: &M2, y: &M2) -> M2 {
    std::array::from_fn(|r| std::array::from_fn(|c| &(&x[r][0] * &y[0][c]) + &(&x[r][1] * &y[1][c])))
}

fn m2_comm(x: &M2, y: &M2) -> M2 {
    let (p, q) = (m2_mul(x, y), m2_mul(y, x));
    std::array::from_fn(|r| std::array::from_fn(|c| &p[r][c] - &q[r][c]))
}

fn m2_diag(a: Expr, b: Expr) -> M2 {
    [[a, Expr::zero()], [Expr::zero(), b]]
}

/// First-order condition `[[D_F, a], b°]` in KO-dimension 6 for a grading-odd
/// `D_F = [[0, t], [t*, 0]]` and generic diagonal `a`, `b` with
/// `b° = J_F b* J_F⁻¹ = diag(b₂, b₁)`. It is nonzero unless `t = 0`, which is
/// why `D_F = 0`.
pub fn finite_first_order_defect() -> M2 {
    let t = Field::even("t", &[]).constant();
    let d_f = [[Expr::zero(), t.expr()], [t.conjugate().expr(), Expr::zero()]];
    let e = |n: &str, i: u8| Field::even(n, &[i]).expr();
    let a = m2_diag(e("a", 1), e("a", 2));
    let b_op = m2_diag(e("b", 2), e("b", 1));
    m2_comm(&m2_comm(&d_f, &a), &b_op)
}

/// How `J_F² = ε` constrains the unit multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct JAnalysis {
    pub ko: u8,
    pub form: JForm,
    /// The product that must equal ε: `u₁u₁*` (diagonal) or `u₁u₂*` (off-diagonal).
    pub constraint: Expr,
    pub epsilon: i8,
    pub outcome: JOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum JOutcome {
    /// The body of the constraint is a sum of `z z*` terms, hence a
    /// nonnegative real, and cannot equal −1.
    Obstructed { body: Expr },
    /// Exact unit multipliers with `J_F² = ε` verified on a generic vector.
    Realizable { u: [GrassmannElement; 2] },
}

impl JAnalysis {
    pub fn is_obstructed(&self) -> bool {
        matches!(self.outcome, JOutcome::Obstructed { .. })
    }
}

/// Generic even unit `u = B + S ξ¹ξ²` with constant complex coefficients.
fn generic_even_unit(i: u8) -> Expr {
    let b = Field::even("uB", &[i]).constant().expr();
    let s = Field::even("uS", &[i]).constant().expr();
    &b + &(&s * &(&Expr::generator(1) * &Expr::generator(2)))
}

/// True when every term is `c·z·z*` with `c > 0` real.
fn is_sum_of_moduli(body: &Expr) -> bool {
    body.terms().all(|(w, c)| {
        c.is_real()
            && c.re > num_rational::BigRational::from_integer(0.into())
            && w.len() == 2
            && match (&w[0], &w[1]) {
                (Atom::Jet(x), Atom::Jet(y)) => x.field.conjugate() == y.field && x.deriv == y.deriv && x.field != y.field,
                _ => false,
            }
    })
}

fn body_of(e: &Expr) -> Expr {
    e.filter(|w| !w.iter().any(|a| matches!(a, Atom::Gen(_))))
}

pub fn j_analysis(ko: u8) -> Result<JAnalysis> {
    let signs = ko_signs(ko)?;
    let form = JForm::for_signs(signs);
    let u = [generic_even_unit(1), generic_even_unit(2)];
    let constraint = match form {
        JForm::Diagonal => &u[0] * &u[0].star(),
        JForm::OffDiagonal => &u[0] * &u[1].star(),
    };
    let eps = signs.epsilon;
    let body = body_of(&constraint);
    let outcome = if eps < 0 && is_sum_of_moduli(&body) {
        JOutcome::Obstructed { body }
    } else {
        // u₂ = ε (off-diagonal: u₁u₂* = ε) or u = (1, 1) when ε = 1
        let one = GrassmannElement::one(2);
        let second = match form {
            JForm::OffDiagonal => one.scale(&Cq::from_int(eps as i64)),
            JForm::Diagonal => one.clone(),
        };
        let w = [one, second];
        let ue = [Expr::from(&w[0]), Expr::from(&w[1])];
        let h = [Field::odd("h", &[1]).expr(), Field::odd("h", &[2]).expr()];
        let jj = apply_j(form, &ue, &apply_j(form, &ue, &h));
        if jj[0] != h[0].scale_int(eps as i64) || jj[1] != h[1].scale_int(eps as i64) {
            return Err(Error::Index(format!("no unit multipliers realize KO-dimension {ko}")));
        }
        JOutcome::Realizable { u: w }
    };
    Ok(JAnalysis { ko, form, constraint, epsilon: eps, outcome })
}

/// `A = a[D, b]` with diagonal `a = diag(a₁,a₂)`, `b = diag(b₁,b₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    pub a: [Expr; 2],
    pub b: [Expr; 2],
}

impl OneForm {
    pub fn new(a: [Expr; 2], b: [Expr; 2]) -> Result<Self> {
        for (name, x) in [("a1", &a[0]), ("a2", &a[1]), ("b1", &b[0]), ("b2", &b[1])] {
            if x.parity() == Some(Parity::Odd) || x.has_theta() {
                return Err(Error::MalformedOneForm(format!("{name} must be an even θ-free element")));
            }
        }
        Ok(OneForm { a, b })
    }

    /// Independent complex even fields a₁, a₂, b₁, b₂.
    pub fn generic() -> Self {
        let f = |n: &str, i: u8| Field::even(n, &[i]).expr();
        OneForm { a: [f("a", 1), f("a", 2)], b: [f("b", 1), f("b", 2)] }
    }

    pub fn identity() -> Self {
        OneForm { a: [Expr::one(), Expr::one()], b: [Expr::one(), Expr::one()] }
    }

    /// `w_{i,m} = a_i ∂_m b_i`, so that `A = iγ^m ⊗ diag(w_{1,m}, w_{2,m})`.
    pub fn w(&self, i: usize, m: usize) -> Expr {
        &self.a[i] * &self.b[i].deriv(m)
    }
}

/// Rewrite `(a_i ∂_m b_i)* → −a_i ∂_m b_i` for the generic one-form symbols.
pub fn impose_antihermitian(e: &Expr, form: &OneForm) -> Expr {
    let mut cur = e.clone();
    loop {
        let next = cur.flat_map(|w, c| {
            for i in 0..2 {
                for m in 0..DIM {
                    let pat = (&form.a[i].star() * &form.b[i].star().deriv(m)).terms().next().map(|(p, _)| p.clone());
                    let Some(pat) = pat else { continue };
                    if pat.len() != 2 {
                        continue;
                    }
                    let (Some(p0), Some(p1)) = (w.iter().position(|x| x == &pat[0]), w.iter().position(|x| x == &pat[1])) else {
                        continue;
                    };
                    let mut rest = w.clone();
                    let (hi, lo) = if p0 > p1 { (p0, p1) } else { (p1, p0) };
                    rest.remove(hi);
                    rest.remove(lo);
                    return &Expr::from_word(rest, -c.clone()) * &form.w(i, m);
                }
            }
            Expr::from_word(w.clone(), c.clone())
        });
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `D = iγ^m ∂_m ⊗ 1_F`.
pub fn total_dirac() -> OperatorMatrix {
    let one = cq_diag(1, 1);
    let mut d = OperatorMatrix::zero(4);
    for m in 0..DIM {
        let g = gamma_c(m).expect("m < 3");
        let ig = g.map(|r| r.map(|x| &x * &Cq::i()));
        d = d.add(&OperatorMatrix::kron(&ig, &one, &DiffOp::partial(m)));
    }
    d
}

/// `D + γ^m A_m ⊗ γ_F`.
pub fn fluctuated_dirac(a_m: &[Expr; DIM]) -> OperatorMatrix {
    let mut d = total_dirac();
    for m in 0..DIM {
        d = d.add(&OperatorMatrix::kron(&gamma_c(m).expect("m < 3"), &gamma_f(), &DiffOp::mult(a_m[m].clone())));
    }
    d
}

/// Finite coefficients of `A + JAJ⁻¹ = iγ^m ⊗ diag(c_{1,m}, c_{2,m})`.
///
/// `iγ^m` is real (γ^m purely imaginary) so `J_M` acts only on the
/// coefficients; even unit multipliers cancel in `J A J⁻¹`.
pub fn a_plus_jaj(form: JForm, one_form: &OneForm) -> [[Expr; 2]; DIM] {
    std::array::from_fn(|m| {
        let w = [one_form.w(0, m), one_form.w(1, m)];
        match form {
            JForm::Diagonal => [&w[0] + &w[0].star(), &w[1] + &w[1].star()],
            JForm::OffDiagonal => [&w[0] + &w[1].star(), &w[1] + &w[0].star()],
        }
    })
}

#[derive(Debug, Clone)]
pub enum Fluctuation {
    Operator {
        /// `D_A = D + γ^m A_m ⊗ γ_F`.
        d_a: OperatorMatrix,
        a_m: [Expr; DIM],
        /// Finite trace of `A + JAJ⁻¹` per m (zero when traceless).
        trace: [Expr; DIM],
        j: JAnalysis,
    },
    Obstructed(JAnalysis),
}

/// Inner fluctuation `D_A = D + A + JAJ⁻¹`.
///
/// KO-6 (and any realizable off-diagonal form) imposes
/// `(a_i∂_m b_i)* = −a_i∂_m b_i`; KO-0 uses the relabeling `a₂ = −a₁`,
/// `b₂ = b₁` (without it the trace-free condition kills the fluctuation).
pub fn fluctuate(ko: u8, one_form: &OneForm) -> Result<Fluctuation> {
    let j = j_analysis(ko)?;
    if j.is_obstructed() {
        return Ok(Fluctuation::Obstructed(j));
    }
    let of = match j.form {
        JForm::Diagonal => OneForm::new([one_form.a[0].clone(), -&one_form.a[0]], [one_form.b[0].clone(), one_form.b[0].clone()])?,
        JForm::OffDiagonal => one_form.clone(),
    };
    let c = a_plus_jaj(j.form, &of);
    let fix = |e: &Expr| match j.form {
        JForm::OffDiagonal => impose_antihermitian(e, &of),
        JForm::Diagonal => e.clone(),
    };
    let mut a_m: [Expr; DIM] = Default::default();
    let mut trace: [Expr; DIM] = Default::default();
    for m in 0..DIM {
        let c1 = fix(&c[m][0]);
        let c2 = fix(&c[m][1]);
        trace[m] = &c1 + &c2;
        if !trace[m].is_zero() {
            return Err(Error::Index(format!("A + JAJ⁻¹ not traceless: {}", trace[m])));
        }
        // iγ^m ⊗ diag(c, −c) = γ^m (i c) ⊗ γ_F
        a_m[m] = c1.scale(&Cq::i());
    }
    Ok(Fluctuation::Operator { d_a: fluctuated_dirac(&a_m), a_m, trace, j })
}

/// The finite gauge action `U_F = u J_F u J_F*` in KO-dimension 6 on
/// `h = (h₁, h₂)`, built literally from the definition.
pub fn gauge_action(u: &[Expr; 2], h: &[Expr; 2]) -> [Expr; 2] {
    let one = [Expr::one(), Expr::one()];
    let j = |v: &[Expr; 2]| apply_j(JForm::OffDiagonal, &one, v);
    let mul = |v: &[Expr; 2]| [&u[0] * &v[0], &u[1] * &v[1]];
    mul(&j(&mul(&j(h))))
}

/// Remove each adjacent unitary pair `U U*` (order-zero jets of `unit`).
pub fn cancel_unitary(e: &Expr, units: &[Field]) -> Expr {
    let mut cur = e.clone();
    loop {
        let next = cur.flat_map(|w, c| {
            for f in units {
                let p = w.iter().position(|x| matches!(x, Atom::Jet(j) if &j.field == f && j.order() == 0));
                let q = w.iter().position(|x| matches!(x, Atom::Jet(j) if j.field == f.conjugate() && j.order() == 0));
                if let (Some(p), Some(q)) = (p, q) {
                    let mut rest = w.clone();
                    rest.remove(p.max(q));
                    rest.remove(p.min(q));
                    return Expr::from_word(rest, c.clone());
                }
            }
            Expr::from_word(w.clone(), c.clone())
        });
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Symbolic finite gauge group data for KO-dimension 6.
#[derive(Debug, Clone)]
pub struct GaugeGroup {
    /// `U_F h` for unitary symbols `u₁, u₂`: `(u₁h₁u₂*, u₂h₂u₁*)`.
    pub action: [Expr; 2],
    /// `U_F h − h`; vanishes iff `u₁u₂* = 1`, i.e. `g⁽¹⁾ = g⁽²⁾`.
    pub kernel_defect: [Expr; 2],
    /// Quotient representative `diag(v, v*)` with `v = e^{ig/2}` acting as
    /// `(v²h₁, v*²h₂)`.
    pub quotient_action: [Expr; 2],
}

pub fn unitary_symbol(name: &str, i: u8) -> Field {
    Field::even(name, &[i]).constant()
}

pub fn gauge_group(ko: u8) -> Result<GaugeGroup> {
    if ko != 6 {
        return Err(Error::KoDimension(ko));
    }
    let uf = [unitary_symbol("u", 1), unitary_symbol("u", 2)];
    let u = [uf[0].expr(), uf[1].expr()];
    let h = [Field::odd("h", &[1]).expr(), Field::odd("h", &[2]).expr()];
    let action = gauge_action(&u, &h);
    let kernel_defect = [&action[0] - &h[0], &action[1] - &h[1]];
    let vf = unitary_symbol("v", 1);
    let v = [vf.expr(), vf.expr().star()];
    let quotient_action = gauge_action(&v, &h);
    Ok(GaugeGroup { action, kernel_defect, quotient_action })
}

/// `D_α g` for both α; `e^{ig}` preserves `D_αΨ̃^α = 0` iff both vanish.
#[derive(Debug, Clone)]
pub struct GaugeCompat {
    pub compatible: bool,
    pub d_g: [Expr; 2],
}

pub fn chiral_gauge_compat(g: &SuperField) -> Result<GaugeCompat> {
    if g.kind != SuperFieldKind::Scalar || g.parity != Parity::Even {
        return Err(Error::Parity("gauge parameter must be an even scalar superfield".into()));
    }
    let d_g = [apply_d_expr(1, &g.comps[0]), apply_d_expr(2, &g.comps[0])];
    Ok(GaugeCompat { compatible: d_g.iter().all(Expr::is_zero), d_g })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_table_and_forms() {
        assert_eq!(JForm::for_signs(ko_signs(6).unwrap()), JForm::OffDiagonal);
        assert_eq!(JForm::for_signs(ko_signs(0).unwrap()), JForm::Diagonal);
        assert!(ko_signs(3).is_err());
        let t = build_total_triple(6).unwrap();
        assert_eq!(t.finite.j_form, JForm::OffDiagonal);
        assert!(t.finite.d_f.iter().flatten().all(|x| x == "0"));
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<TotalTriple>(&json).unwrap(), t);
    }

    #[test]
    fn finite_dirac_must_vanish() {
        let d = finite_first_order_defect();
        assert!(!d[0][1].is_zero());
        let t = Field::even("t", &[]).constant().expr();
        // t (a₂ − a₁)(b₁ − b₂)
        let e = |n: &str, i: u8| Field::even(n, &[i]).expr();
        let expected = &(&t * &(&e("a", 2) - &e("a", 1))) * &(&e("b", 1) - &e("b", 2));
        assert_eq!(d[0][1], expected);
    }

    #[test]
    fn ko4_is_obstructed() {
        let j = j_analysis(4).unwrap();
        assert!(j.is_obstructed());
        if let JOutcome::Obstructed { body } = &j.outcome {
            let b = Field::even("uB", &[1]).constant();
            assert_eq!(body, &(&b.expr() * &b.conjugate().expr()));
        }
    }

    #[test]
    fn ko2_admits_units() {
        // u₁u₂* = −1 has the solution u = (1, −1)
        let j = j_analysis(2).unwrap();
        match j.outcome {
            JOutcome::Realizable { u } => assert_eq!(u[1].body(), Cq::from_int(-1)),
            JOutcome::Obstructed { .. } => panic!("expected a witness"),
        }
    }

    #[test]
    fn ko6_fluctuation() {
        let of = OneForm::generic();
        let Fluctuation::Operator { a_m, trace, d_a, .. } = fluctuate(6, &of).unwrap() else { panic!() };
        for m in 0..DIM {
            assert!(trace[m].is_zero());
            let expected = (&of.w(0, m) - &of.w(1, m)).scale(&Cq::i());
            assert_eq!(a_m[m], expected);
        }
        // upper finite block carries +γ^m A_m: (γ⁰)₁₂ = −i, (γ²)₁₂ = i
        assert_eq!(d_a.e[0][1].zeroth_order(), (&a_m[2] - &a_m[0]).scale(&Cq::i()));
        assert_eq!(d_a.e[2][3].zeroth_order(), (&a_m[0] - &a_m[2]).scale(&Cq::i()));
    }

    #[test]
    fn trivial_one_form() {
        let Fluctuation::Operator { d_a, .. } = fluctuate(6, &OneForm::identity()).unwrap() else { panic!() };
        assert_eq!(d_a, total_dirac());
        assert!(OneForm::new([Field::odd("x", &[]).expr(), Expr::one()], [Expr::one(), Expr::one()]).is_err());
    }

    #[test]
    fn gauge_action_formula() {
        let g = gauge_group(6).unwrap();
        let u = |i: u8| unitary_symbol("u", i).expr();
        let h = |i: u8| Field::odd("h", &[i]).expr();
        assert_eq!(g.action[0], &(&u(1) * &h(1)) * &u(2).star());
        assert_eq!(g.action[1], &(&u(2) * &h(2)) * &u(1).star());
        let v = unitary_symbol("v", 1).expr();
        assert_eq!(g.quotient_action[0], &(&v * &v) * &h(1));
    }

    #[test]
    fn gauge_compatibility() {
        let c = SuperField::scalar(Parity::Even, Expr::int(5));
        assert!(chiral_gauge_compat(&c).unwrap().compatible);
        let zero = SuperField::scalar(Parity::Even, Expr::zero());
        assert!(chiral_gauge_compat(&zero).unwrap().compatible);
        let g = SuperField::generic_scalar(Parity::Even, ["g0", "g1", "g2"]);
        let r = chiral_gauge_compat(&g).unwrap();
        assert!(!r.compatible);
        assert!(!r.d_g[0].is_zero());
    }
}
