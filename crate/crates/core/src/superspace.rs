//! Superfields on R^{3|2} as θ-expansions over the jet algebra.
//!
//! A superfield is stored as its full θ-expansion (one [`Expr`] per spinor
//! component); θ-derivatives are left derivatives. SUSY translations act as
//! `δθ^α = ε^α`, `δx^m = θ_α (γ^m)^α_β ε^β`.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{eps, gamma_entry, Spinor};
use crate::error::{Error, Result};
use crate::expr::{Atom, Expr, Field, DIM};
use crate::grassmann::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SuperFieldKind {
    Scalar,
    Spinor,
}

/// A scalar (one component) or spinor (two components) superfield.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperField {
    pub kind: SuperFieldKind,
    pub parity: Parity,
    pub comps: Vec<Expr>,
}

/// θ-expansion of one scalar slot: `f + g_β θ^β + h θθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaComponents {
    pub f: Expr,
    pub g: [Expr; 2],
    pub h: Expr,
}

impl From<&Expr> for ThetaComponents {
    fn from(e: &Expr) -> Self {
        let (f, g, h) = e.theta_split();
        ThetaComponents { f, g, h }
    }
}

/// θ_α = ε_{αβ} θ^β.
pub fn theta_lower(alpha: usize) -> Expr {
    let mut e = Expr::zero();
    for b in 1..=2 {
        let s = eps(alpha, b);
        if s != 0 {
            e += &Expr::theta(b as u8).scale_int(s);
        }
    }
    e
}

/// (θγ^m)_α = θ_β (γ^m)^β_α.
pub fn theta_gamma(m: usize, alpha: usize) -> Expr {
    let mut e = Expr::zero();
    for b in 1..=2 {
        let g = gamma_entry(m, b, alpha);
        if !g.is_zero() {
            e += &theta_lower(b).scale(&g);
        }
    }
    e
}

/// A constant, real, odd SUSY parameter spinor ε^α.
pub fn susy_parameter(name: &str) -> Spinor {
    [Field::odd(name, &[1]).real().constant().expr(), Field::odd(name, &[2]).real().constant().expr()]
}

/// `δx^m = θ_α (γ^m)^α_β ε^β`.
pub fn coordinate_shift(m: usize, e: &Spinor) -> Expr {
    let mut out = Expr::zero();
    for a in 1..=2 {
        for b in 1..=2 {
            let g = gamma_entry(m, a, b);
            if !g.is_zero() {
                out += &(&theta_lower(a) * &e[b - 1]).scale(&g);
            }
        }
    }
    out
}

impl SuperField {
    pub fn scalar(parity: Parity, expr: Expr) -> Self {
        SuperField { kind: SuperFieldKind::Scalar, parity, comps: vec![expr] }
    }

    pub fn spinor(parity: Parity, comps: [Expr; 2]) -> Self {
        SuperField { kind: SuperFieldKind::Spinor, parity, comps: comps.to_vec() }
    }

    /// `f + g_β θ^β + h θθ` with fresh fields `{f, g, h}` named by `names`.
    pub fn generic_scalar(parity: Parity, names: [&str; 3]) -> Self {
        let odd = parity.flip();
        let f = Field::new(names[0], &[], parity).expr();
        let g = [Field::new(names[1], &[1], odd).expr(), Field::new(names[1], &[2], odd).expr()];
        let h = Field::new(names[2], &[], parity).expr();
        Self::scalar(parity, Expr::from_theta_components(&f, &g, &h))
    }

    /// `Ψ^α = ψ^α + F^α_β θ^β + χ^α θθ` with fresh fields named by `names`.
    pub fn generic_spinor(parity: Parity, names: [&str; 3]) -> Self {
        let flip = parity.flip();
        let comp = |a: u8| {
            let psi = Field::new(names[0], &[a], parity).expr();
            let f = [Field::new(names[1], &[a, 1], flip).expr(), Field::new(names[1], &[a, 2], flip).expr()];
            let chi = Field::new(names[2], &[a], parity).expr();
            Expr::from_theta_components(&psi, &f, &chi)
        };
        Self::spinor(parity, [comp(1), comp(2)])
    }

    pub fn zero_like(&self) -> Self {
        SuperField { kind: self.kind, parity: self.parity, comps: vec![Expr::zero(); self.comps.len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    pub fn spinor_comps(&self) -> Result<Spinor> {
        match self.kind {
            SuperFieldKind::Spinor => Ok([self.comps[0].clone(), self.comps[1].clone()]),
            SuperFieldKind::Scalar => Err(Error::Index("expected a spinor superfield".into())),
        }
    }

    pub fn components(&self) -> Vec<ThetaComponents> {
        self.comps.iter().map(ThetaComponents::from).collect()
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        SuperField { kind: self.kind, parity: self.parity, comps: self.comps.iter().map(f).collect() }
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&Expr, &Expr) -> Expr) -> Result<Self> {
        if self.kind != o.kind {
            return Err(Error::Index("superfield kinds differ".into()));
        }
        Ok(SuperField {
            kind: self.kind,
            parity: self.parity,
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn deriv(&self, m: usize) -> Self {
        self.map(|e| e.deriv(m))
    }
}

impl fmt::Display for SuperField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.comps.iter().enumerate() {
            if self.kind == SuperFieldKind::Spinor {
                write!(f, "[{}] ", i + 1)?;
            }
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Graded product; θ-degrees above two vanish automatically.
///
/// At least one factor must be a scalar superfield.
pub fn sf_mul(a: &SuperField, b: &SuperField) -> Result<SuperField> {
    let parity = a.parity.combine(b.parity);
    match (a.kind, b.kind) {
        (SuperFieldKind::Scalar, _) => Ok(SuperField {
            kind: b.kind,
            parity,
            comps: b.comps.iter().map(|c| &a.comps[0] * c).collect(),
        }),
        (SuperFieldKind::Spinor, SuperFieldKind::Scalar) => Ok(SuperField {
            kind: a.kind,
            parity,
            comps: a.comps.iter().map(|c| c * &b.comps[0]).collect(),
        }),
        _ => Err(Error::Index("product of two spinor superfields needs an explicit contraction".into())),
    }
}

/// `δS = ε^α ∂_α S + δx^m ∂_m S` on one θ-expansion.
pub fn susy_vary_expr(s: &Expr, e: &Spinor) -> Expr {
    let mut out = Expr::zero();
    for a in 1..=2 {
        out += &(&e[a - 1] * &s.theta_deriv(a as u8));
    }
    for m in 0..DIM {
        out += &(&coordinate_shift(m, e) * &s.deriv(m));
    }
    out
}

pub fn susy_vary(s: &SuperField, e: &Spinor) -> SuperField {
    s.map(|c| susy_vary_expr(c, e))
}

/// Independent route: shift θ → θ + ε by substitution, add the first-order
/// Taylor term in x, and keep the part linear in ε.
pub fn susy_vary_by_translation(s: &Expr, e: &Spinor) -> Expr {
    let shifted = s.substitute(&|a| match a {
        Atom::Theta(t) => Some(&Expr::theta(*t) + &e[*t as usize - 1]),
        _ => None,
    });
    let mut total = &shifted - s;
    for m in 0..DIM {
        total += &(&coordinate_shift(m, e) * &s.deriv(m));
    }
    let is_param = |a: &Atom| matches!(a, Atom::Jet(j) if e.iter().any(|x| x.jets().contains(j)));
    total.filter(|w| w.iter().filter(|a| is_param(a)).count() == 1)
}

/// `Q_β = −∂_β + (θγ^m)_β ∂_m`.
pub fn apply_q_expr(beta: usize, s: &Expr) -> Expr {
    let mut out = -s.theta_deriv(beta as u8);
    for m in 0..DIM {
        out += &(&theta_gamma(m, beta) * &s.deriv(m));
    }
    out
}

/// `D_α = ∂_α + (θγ^m)_α ∂_m`.
pub fn apply_d_expr(alpha: usize, s: &Expr) -> Expr {
    let mut out = s.theta_deriv(alpha as u8);
    for m in 0..DIM {
        out += &(&theta_gamma(m, alpha) * &s.deriv(m));
    }
    out
}

/// Raised index: `X^α = X_β ε^{βα}`.
pub fn raise_op(alpha: usize, op: impl Fn(usize, &Expr) -> Expr, s: &Expr) -> Expr {
    let mut out = Expr::zero();
    for b in 1..=2 {
        let c = eps(b, alpha);
        if c != 0 {
            out += &op(b, s).scale_int(c);
        }
    }
    out
}

pub fn apply_q(beta: usize, s: &SuperField) -> SuperField {
    let mut r = s.map(|c| apply_q_expr(beta, c));
    r.parity = s.parity.flip();
    r
}

pub fn apply_d(alpha: usize, s: &SuperField) -> SuperField {
    let mut r = s.map(|c| apply_d_expr(alpha, c));
    r.parity = s.parity.flip();
    r
}

/// `ε_β Q^β S`: the SUSY variation written with the lowered parameter.
pub fn eps_q_lowered(s: &Expr, e: &Spinor) -> Expr {
    let lowered = crate::clifford::lower(e);
    let mut out = Expr::zero();
    for b in 1..=2 {
        out += &(&lowered[b - 1] * &raise_op(b, apply_q_expr, s));
    }
    out
}

/// `ε^β Q_β S`: the contraction written with upper ε.
pub fn eps_q_upper(s: &Expr, e: &Spinor) -> Expr {
    let mut out = Expr::zero();
    for b in 1..=2 {
        out += &(&e[b - 1] * &apply_q_expr(b, s));
    }
    out
}

/// `{X, Y} S = X(Y S) + Y(X S)` for two odd operators.
pub fn anticommutator(x: impl Fn(&Expr) -> Expr, y: impl Fn(&Expr) -> Expr, s: &Expr) -> Expr {
    &x(&y(s)) + &y(&x(s))
}

/// A substitution rule on jets.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    /// Every jet ∂^μ φ becomes ∂^μ(value).
    Algebraic { field: Field, value: Expr },
    /// Every jet ∂^μ φ with μ_m ≥ 1 becomes ∂^{μ − e_m}(value), where
    /// `value` is the solved expression for ∂_m φ.
    Differential { field: Field, direction: usize, value: Expr },
}

/// Constraints imposed by rewriting, applied to a fixpoint.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintSet {
    pub rules: Vec<Rule>,
}

impl ConstraintSet {
    pub fn apply(&self, e: &Expr) -> Expr {
        let mut cur = e.clone();
        // each pass strictly lowers the rewritten derivative order
        for _ in 0..64 {
            let next = cur.substitute(&|a| {
                let Atom::Jet(j) = a else { return None };
                for r in &self.rules {
                    match r {
                        Rule::Algebraic { field, value } => {
                            if &j.field == field {
                                return Some(value.deriv_multi(j.deriv));
                            }
                            if j.field.conj && &j.field.conjugate() == field {
                                return Some(value.star().deriv_multi(j.deriv));
                            }
                        }
                        Rule::Differential { field, direction, value } => {
                            let hit = if &j.field == field {
                                Some(value.clone())
                            } else if j.field.conj && &j.field.conjugate() == field {
                                Some(value.star())
                            } else {
                                None
                            };
                            if let Some(v) = hit {
                                if j.deriv[*direction] > 0 {
                                    let mut mu = j.deriv;
                                    mu[*direction] -= 1;
                                    return Some(v.deriv_multi(mu));
                                }
                            }
                        }
                    }
                }
                None
            });
            if next == cur {
                return cur;
            }
            cur = next;
        }
        cur
    }

    pub fn apply_sf(&self, s: &SuperField) -> SuperField {
        s.map(|c| self.apply(c))
    }
}

/// Outcome of [`chiral_constrain`].
#[derive(Debug, Clone)]
pub struct ChiralConstraint {
    pub constrained: SuperField,
    /// `D_α Ψ^α` of the unconstrained input.
    pub residual: SuperField,
    pub rules: ConstraintSet,
}

/// `D_α Ψ^α` for a spinor superfield.
pub fn chiral_residual(psi: &SuperField) -> Result<SuperField> {
    let c = psi.spinor_comps()?;
    let r = &apply_d_expr(1, &c[0]) + &apply_d_expr(2, &c[1]);
    Ok(SuperField::scalar(psi.parity.flip(), r))
}

/// Impose `D_α Ψ^α = 0` on a generic spinor superfield built by
/// [`SuperField::generic_spinor`] with component names `names`:
/// `Tr F = 0` (F²₂ → −F¹₁), `χ^β = (γ^m)^β_α ∂_m ψ^α`, and
/// `(γ^m)^β_α ∂_m F^α_β = 0` solved for ∂₀F¹₂.
pub fn chiral_constrain(psi: &SuperField, names: [&str; 3]) -> Result<ChiralConstraint> {
    if psi.kind != SuperFieldKind::Spinor || psi.parity != Parity::Odd {
        return Err(Error::Parity("chiral constraint needs an odd spinor superfield".into()));
    }
    let residual = chiral_residual(psi)?;
    let p = psi.parity;
    let fpar = p.flip();
    let f = |a: u8, b: u8| Field::new(names[1], &[a, b], fpar);
    let ps = |a: u8| Field::new(names[0], &[a], p);
    let mut rules = vec![Rule::Algebraic { field: f(2, 2), value: -f(1, 1).expr() }];
    for b in 1..=2u8 {
        let mut v = Expr::zero();
        for a in 1..=2u8 {
            for m in 0..DIM {
                let g = gamma_entry(m, b as usize, a as usize);
                if !g.is_zero() {
                    v += &ps(a).d(m).scale(&g);
                }
            }
        }
        rules.push(Rule::Algebraic { field: Field::new(names[2], &[b], p), value: v });
    }
    // Tr[γ^m ∂_m F] after the trace condition, solved for its ∂₀F¹₂ term
    let algebraic = ConstraintSet { rules: rules.clone() };
    let mut tr = Expr::zero();
    for a in 1..=2u8 {
        for b in 1..=2u8 {
            for m in 0..DIM {
                let g = gamma_entry(m, b as usize, a as usize);
                if !g.is_zero() {
                    tr += &f(a, b).d(m).scale(&g);
                }
            }
        }
    }
    let tr = algebraic.apply(&tr);
    let lead = f(1, 2).d(0);
    let (lead_word, lead_coef) = lead.terms().next().map(|(w, c)| (w.clone(), c.clone())).expect("single jet");
    let c = tr.coefficient(&lead_word);
    if c.is_zero() {
        return Err(Error::Index("differential trace condition does not involve ∂₀F¹₂".into()));
    }
    let rest = &tr - &lead.scale(&c);
    let solved = rest.scale(&(-(&lead_coef / &c)));
    rules.push(Rule::Differential { field: f(1, 2), direction: 0, value: solved });
    let rules = ConstraintSet { rules };
    let constrained = rules.apply_sf(psi);
    Ok(ChiralConstraint { constrained, residual, rules })
}

/// Literal superfield syntax, e.g.
/// `odd Psi[a] = psi[a] + F[a,b]*th[b] + chi[a]*thth` or
/// `even S = f + g[b]*th[b] + h*thth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperFieldLiteral {
    pub parity: Parity,
    pub name: String,
    pub kind: SuperFieldKind,
    /// Component field names at θ-degree 0, 1 and 2.
    pub components: [String; 3],
}

impl SuperFieldLiteral {
    pub fn parse(src: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in `{src}`"));
        let mut s = src.trim();
        let mut parity = None;
        for (kw, p) in [("odd ", Parity::Odd), ("even ", Parity::Even)] {
            if let Some(r) = s.strip_prefix(kw) {
                parity = Some(p);
                s = r.trim_start();
            }
        }
        let (lhs, rhs) = s.split_once('=').ok_or_else(|| err("missing `=`"))?;
        let lhs = lhs.trim();
        let (name, kind) = match lhs.strip_suffix("[a]") {
            Some(n) => (n.to_string(), SuperFieldKind::Spinor),
            None => (lhs.to_string(), SuperFieldKind::Scalar),
        };
        let parity = parity.unwrap_or(match kind {
            SuperFieldKind::Spinor => Parity::Odd,
            SuperFieldKind::Scalar => Parity::Even,
        });
        let terms: Vec<&str> = rhs.split('+').map(str::trim).collect();
        if terms.len() != 3 {
            return Err(err("expected three θ-components"));
        }
        let (a_idx, ab_idx, b_idx) = match kind {
            SuperFieldKind::Spinor => ("[a]", "[a,b]", "[a]"),
            SuperFieldKind::Scalar => ("", "[b]", ""),
        };
        let strip = |t: &str, suffix: &str| -> Result<String> {
            let n = t.strip_suffix(suffix).ok_or_else(|| err(&format!("term `{t}` should end in `{suffix}`")))?;
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '+' || c == '-') {
                return Err(err(&format!("bad field name `{n}`")));
            }
            Ok(n.to_string())
        };
        let c0 = strip(terms[0], a_idx)?;
        let c1 = strip(terms[1], &format!("{ab_idx}*th[b]"))?;
        let c2 = strip(terms[2], &format!("{b_idx}*thth"))?;
        Ok(SuperFieldLiteral { parity, name, kind, components: [c0, c1, c2] })
    }

    pub fn to_superfield(&self) -> SuperField {
        let n = [self.components[0].as_str(), self.components[1].as_str(), self.components[2].as_str()];
        match self.kind {
            SuperFieldKind::Scalar => SuperField::generic_scalar(self.parity, n),
            SuperFieldKind::Spinor => SuperField::generic_spinor(self.parity, n),
        }
    }
}

impl fmt::Display for SuperFieldLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.parity {
            Parity::Odd => "odd",
            Parity::Even => "even",
        };
        let [c0, c1, c2] = &self.components;
        match self.kind {
            SuperFieldKind::Spinor => {
                write!(f, "{p} {}[a] = {c0}[a] + {c1}[a,b]*th[b] + {c2}[a]*thth", self.name)
            }
            SuperFieldKind::Scalar => write!(f, "{p} {} = {c0} + {c1}[b]*th[b] + {c2}*thth", self.name),
        }
    }
}

/// Component-field variations read off from a varied superfield:
/// field ↦ δ(field), for use with [`Expr::derivation`].
pub fn component_variations(
    original: &SuperField,
    varied: &SuperField,
) -> BTreeMap<Field, Expr> {
    let mut out = BTreeMap::new();
    for (o, v) in original.comps.iter().zip(&varied.comps) {
        let (of, og, oh) = o.theta_split();
        let (vf, vg, vh) = v.theta_split();
        let mut record = |orig: &Expr, var: Expr| {
            // components of generic superfields are single unit-coefficient fields
            if let Some((w, c)) = orig.terms().next() {
                if orig.len() == 1 && w.len() == 1 && c.is_one() {
                    if let Atom::Jet(j) = &w[0] {
                        if j.order() == 0 {
                            out.insert(j.field.clone(), var);
                        }
                    }
                }
            }
        };
        record(&of, vf);
        let [vg1, vg2] = vg;
        record(&og[0], vg1);
        record(&og[1], vg2);
        record(&oh, vh);
    }
    out
}

/// Apply an even derivation given by field variations (conjugates vary by
/// the starred variation; unlisted fields are inert).
pub fn vary_with(e: &Expr, delta: &BTreeMap<Field, Expr>) -> Expr {
    e.derivation(&|a| {
        let Atom::Jet(j) = a else { return None };
        if let Some(v) = delta.get(&j.field) {
            return Some(v.deriv_multi(j.deriv));
        }
        if j.field.conj {
            if let Some(v) = delta.get(&j.field.conjugate()) {
                return Some(v.star().deriv_multi(j.deriv));
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cq;

    fn scalar_s() -> SuperField {
        SuperField::generic_scalar(Parity::Even, ["f", "g", "h"])
    }

    #[test]
    fn theta_squared_vanishes_and_unit_product() {
        let t1 = SuperField::scalar(Parity::Odd, Expr::theta(1));
        assert!(sf_mul(&t1, &t1).unwrap().is_zero());
        let s = scalar_s();
        let one = SuperField::scalar(Parity::Even, Expr::one());
        assert_eq!(sf_mul(&s, &one).unwrap(), s);
    }

    #[test]
    fn theta_theta_convention() {
        // θθ = ½ θ_α θ^α
        let half = (1..=2).fold(Expr::zero(), |acc, a| &acc + &(&theta_lower(a) * &Expr::theta(a as u8)));
        assert_eq!(half.scale(&Cq::from_ratio(1, 2)), Expr::theta_theta());
    }

    #[test]
    fn cross_term_of_two_linear_superfields() {
        // (g_β θ^β)(k_γ θ^γ) with odd g, k: by hand g_1 k_2 θ¹θ² + g_2 k_1 θ²θ¹
        // = (g_2 k_1 − g_1 k_2) θθ after moving θ's right past one odd field
        let g = [Field::odd("g", &[1]).expr(), Field::odd("g", &[2]).expr()];
        let k = [Field::odd("k", &[1]).expr(), Field::odd("k", &[2]).expr()];
        let a = &(&g[0] * &Expr::theta(1)) + &(&g[1] * &Expr::theta(2));
        let b = &(&k[0] * &Expr::theta(1)) + &(&k[1] * &Expr::theta(2));
        let prod = &a * &b;
        // g_1 θ¹ k_2 θ² = −g_1 k_2 θ¹θ² = g_1 k_2 θθ ; g_2 θ² k_1 θ¹ = −g_2 k_1 θθ
        let expected = &(&(&g[0] * &k[1]) - &(&g[1] * &k[0])) * &Expr::theta_theta();
        assert_eq!(prod, expected);
    }

    fn generic_divergence(parity: Parity, e: &Spinor) -> Expr {
        let mut div = Expr::zero();
        for m in 0..DIM {
            let ge = crate::clifford::gamma_apply(m, e);
            for b in 1..=2u8 {
                div += &(&Field::new("g", &[b], parity.flip()).expr() * &ge[b as usize - 1]).deriv(m);
            }
        }
        div
    }

    #[test]
    fn top_component_varies_into_divergence() {
        // δh = −∂_m(g_β (γ^m ε)^β) for either superfield parity; the sign comes
        // from moving θ_α in δx^m past the odd parameter
        let e = susy_parameter("eps");
        for parity in [Parity::Even, Parity::Odd] {
            let s = SuperField::generic_scalar(parity, ["f", "g", "h"]);
            let dh = susy_vary_expr(&s.comps[0], &e).theta_theta_component();
            assert_eq!(dh, -generic_divergence(parity, &e));
        }
    }

    fn lowered_gamma(m: usize, a: usize, b: usize) -> Cq {
        (1..=2).fold(Cq::zero(), |acc, c| &acc + &(&gamma_entry(m, c, b) * &Cq::from_int(eps(a, c))))
    }

    #[test]
    fn operator_anticommutators() {
        let s = scalar_s().comps[0].clone();
        for a in 1..=2 {
            for b in 1..=2 {
                let dq = anticommutator(|x| apply_d_expr(a, x), |x| apply_q_expr(b, x), &s);
                assert!(dq.is_zero());
                let mut dd = Expr::zero();
                let mut qq = Expr::zero();
                for m in 0..DIM {
                    dd += &s.deriv(m).scale(&gamma_entry(m, a, b)).scale_int(-2);
                    qq += &s.deriv(m).scale(&lowered_gamma(m, a, b)).scale_int(2);
                }
                let du = anticommutator(|x| raise_op(a, apply_d_expr, x), |x| apply_d_expr(b, x), &s);
                assert_eq!(du, dd);
                let q = anticommutator(|x| apply_q_expr(a, x), |x| apply_q_expr(b, x), &s);
                assert_eq!(q, qq);
            }
        }
    }

    #[test]
    fn variation_as_q_action() {
        let e = susy_parameter("eps");
        for sf in [scalar_s(), SuperField::generic_scalar(Parity::Odd, ["f", "g", "h"])] {
            let s = &sf.comps[0];
            let d = susy_vary_expr(s, &e);
            assert_eq!(d, eps_q_lowered(s, &e));
            // ε_β Q^β = −ε^β Q_β
            assert_eq!(d, -eps_q_upper(s, &e));
        }
    }

    #[test]
    fn spinor_bottom_component_variation() {
        let e = susy_parameter("eps");
        let p = SuperField::generic_spinor(Parity::Odd, ["psi", "F", "chi"]);
        for a in 1..=2u8 {
            let dpsi = susy_vary_expr(&p.comps[a as usize - 1], &e).theta_split().0;
            let expected = (1..=2u8).fold(Expr::zero(), |acc, b| {
                &acc + &(&Field::even("F", &[a, b]).expr() * &e[b as usize - 1])
            });
            assert_eq!(dpsi, expected);
        }
    }

    #[test]
    fn chiral_constraint_and_closure() {
        let e = susy_parameter("eps");
        let p = SuperField::generic_spinor(Parity::Odd, ["psi", "F", "chi"]);
        let cc = chiral_constrain(&p, ["psi", "F", "chi"]).unwrap();
        let trace = &Field::even("F", &[1, 1]).expr() + &Field::even("F", &[2, 2]).expr();
        assert_eq!(cc.residual.comps[0].theta_split().0, trace);
        assert!(cc.rules.apply_sf(&chiral_residual(&cc.constrained).unwrap()).is_zero());

        let ct = cc.constrained.spinor_comps().unwrap();
        let dv = [eps_q_lowered(&ct[0], &e), eps_q_lowered(&ct[1], &e)];
        let closure = &apply_d_expr(1, &dv[0]) + &apply_d_expr(2, &dv[1]);
        assert!(cc.rules.apply(&closure).is_zero());

        // δF^α_β = (γ^m)^α_ρ ∂_mψ^ρ ε_β − ∂_mψ^α (γ^m ε)^ρ ε_{ρβ}
        let el = crate::clifford::lower(&e);
        let psi = |r: usize| Field::odd("psi", &[r as u8]).expr();
        for a in 1..=2 {
            for b in 1..=2 {
                let df = susy_vary_expr(&ct[a - 1], &e).theta_split().1[b - 1].clone();
                let mut expected = Expr::zero();
                for m in 0..DIM {
                    let ge = crate::clifford::gamma_apply(m, &e);
                    for r in 1..=2 {
                        expected += &(&psi(r).deriv(m) * &el[b - 1]).scale(&gamma_entry(m, a, r));
                        expected += &(&psi(a).deriv(m) * &ge[r - 1]).scale_int(-eps(r, b));
                    }
                }
                assert!(cc.rules.apply(&(&df - &expected)).is_zero(), "δF[{a},{b}]");
            }
        }
    }

    #[test]
    fn chiral_needs_odd_spinor() {
        assert!(chiral_constrain(&scalar_s(), ["f", "g", "h"]).is_err());
    }

    #[test]
    fn constant_body_is_invariant() {
        let c = Expr::scalar(Cq::from_int(7));
        assert!(susy_vary_expr(&c, &susy_parameter("eps")).is_zero());
    }

    #[test]
    fn two_variation_routes_agree() {
        let e = susy_parameter("eps");
        for s in [scalar_s(), SuperField::generic_spinor(Parity::Odd, ["psi", "F", "chi"])] {
            for c in &s.comps {
                assert_eq!(susy_vary_expr(c, &e), susy_vary_by_translation(c, &e));
            }
        }
    }

    #[test]
    fn literal_round_trip() {
        for src in [
            "odd Psi[a] = psi[a] + F[a,b]*th[b] + chi[a]*thth",
            "even S = f + g[b]*th[b] + h*thth",
        ] {
            let lit = SuperFieldLiteral::parse(src).unwrap();
            assert_eq!(lit.to_string(), src);
        }
        let lit = SuperFieldLiteral::parse("Psi[a] = psi[a] + F[a,b]*th[b] + chi[a]*thth").unwrap();
        assert_eq!(lit.parity, Parity::Odd);
        assert_eq!(lit.to_superfield(), SuperField::generic_spinor(Parity::Odd, ["psi", "F", "chi"]));
        assert!(SuperFieldLiteral::parse("Psi[a] = psi[a] + F[a,b]*th[b]").is_err());
    }
}
