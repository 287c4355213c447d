//! Graded polynomials over jets of component fields.
//!
//! An [`Expr`] is a finite sum of complex-rational multiples of ordered
//! products of [`Atom`]s: Grassmann generators ξ^i, the superspace
//! coordinates θ^α, and jets ∂^μ φ of named fields. Odd atoms anticommute,
//! even atoms commute; the canonical form is produced by
//! [`sort_with_sign`](crate::kernel::sort_with_sign), so two expressions are
//! equal as algebra elements iff they are equal as values.
//!
//! Canonical atom order is generators < jets < θ, so a θ-expansion reads
//! with its component fields to the left of the θ's.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::grassmann::{GrassmannElement, Parity};
use crate::kernel::sort_with_sign;
use crate::scalar::Cq;

/// Number of commuting coordinates x^0, x^1, x^2.
pub const DIM: usize = 3;

/// How the involution acts on a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reality {
    /// `φ*` is an independent conjugate field.
    Complex,
    /// `φ* = φ`.
    Real,
    /// `φ* = −φ`.
    Imaginary,
}

/// A named component field with its spinor/Lorentz indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    pub name: Arc<str>,
    pub index: Vec<u8>,
    pub conj: bool,
    pub odd: bool,
    pub reality: Reality,
    /// Constant fields (parameters) have vanishing x-derivatives.
    pub constant: bool,
}

impl Field {
    pub fn new(name: &str, index: &[u8], parity: Parity) -> Self {
        Field {
            name: Arc::from(name),
            index: index.to_vec(),
            conj: false,
            odd: parity == Parity::Odd,
            reality: Reality::Complex,
            constant: false,
        }
    }

    pub fn even(name: &str, index: &[u8]) -> Self {
        Self::new(name, index, Parity::Even)
    }

    pub fn odd(name: &str, index: &[u8]) -> Self {
        Self::new(name, index, Parity::Odd)
    }

    pub fn real(mut self) -> Self {
        self.reality = Reality::Real;
        self
    }

    pub fn imaginary(mut self) -> Self {
        self.reality = Reality::Imaginary;
        self
    }

    pub fn constant(mut self) -> Self {
        self.constant = true;
        self
    }

    pub fn parity(&self) -> Parity {
        if self.odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// The field with conjugation toggled (only meaningful for complex fields).
    pub fn conjugate(&self) -> Self {
        let mut f = self.clone();
        if f.reality == Reality::Complex {
            f.conj = !f.conj;
        }
        f
    }

    /// The field as an expression.
    pub fn expr(&self) -> Expr {
        Expr::atom(Atom::Jet(Jet { field: self.clone(), deriv: [0; DIM] }))
    }

    /// ∂_m φ as an expression.
    pub fn d(&self, m: usize) -> Expr {
        self.expr().deriv(m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.conj {
            write!(f, "*")?;
        }
        if !self.index.is_empty() {
            let idx: Vec<String> = self.index.iter().map(|i| i.to_string()).collect();
            write!(f, "[{}]", idx.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A field together with a derivative multi-index (counts of ∂_0, ∂_1, ∂_2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jet {
    pub field: Field,
    pub deriv: [u8; DIM],
}

impl Jet {
    pub fn order(&self) -> usize {
        self.deriv.iter().map(|&d| d as usize).sum()
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field)?;
        if self.order() > 0 {
            write!(f, ";")?;
            for (m, &k) in self.deriv.iter().enumerate() {
                for _ in 0..k {
                    write!(f, "{m}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Grassmann generator ξ^i (odd, real).
    Gen(u32),
    Jet(Jet),
    /// Superspace coordinate θ^α, α ∈ {1, 2} (odd, real).
    Theta(u8),
}

impl Atom {
    pub fn is_odd(&self) -> bool {
        match self {
            Atom::Gen(_) | Atom::Theta(_) => true,
            Atom::Jet(j) => j.field.odd,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Gen(i) => write!(f, "x{i}"),
            Atom::Theta(a) => write!(f, "th{a}"),
            Atom::Jet(j) => write!(f, "{j}"),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Monomial = Vec<Atom>;

/// A canonical graded polynomial; see the module docs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Cq>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Self::scalar(Cq::one())
    }

    pub fn scalar(c: Cq) -> Self {
        let mut e = Expr::zero();
        e.push(Vec::new(), c);
        e
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(Cq::from_int(n))
    }

    pub fn i() -> Self {
        Self::scalar(Cq::i())
    }

    pub fn atom(a: Atom) -> Self {
        let mut e = Expr::zero();
        e.push(vec![a], Cq::one());
        e
    }

    pub fn theta(alpha: u8) -> Self {
        Self::atom(Atom::Theta(alpha))
    }

    /// θθ ≡ θ²θ¹.
    pub fn theta_theta() -> Self {
        Self::theta(2) * Self::theta(1)
    }

    pub fn generator(i: u32) -> Self {
        Self::atom(Atom::Gen(i))
    }

    /// `c · a_1 a_2 … a_k` for an arbitrary word, brought to canonical form.
    pub fn from_word(mut word: Monomial, c: Cq) -> Self {
        let mut e = Expr::zero();
        if c.is_zero() {
            return e;
        }
        if let Some(s) = sort_with_sign(&mut word, Atom::is_odd) {
            e.push(word, if s < 0 { -c } else { c });
        }
        e
    }

    fn push(&mut self, key: Monomial, c: Cq) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cq)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[Atom]) -> Cq {
        self.terms.get(m).cloned().unwrap_or_else(Cq::zero)
    }

    /// The atom-free part.
    pub fn constant_term(&self) -> Cq {
        self.coefficient(&[])
    }

    pub fn scale(&self, c: &Cq) -> Self {
        let mut e = Expr::zero();
        for (k, v) in &self.terms {
            e.push(k.clone(), v * c);
        }
        e
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Cq::from_int(n))
    }

    /// Parity when homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::of_degree(m.iter().filter(|a| a.is_odd()).count()));
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    /// Keep the terms for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Expr { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// Map each monomial to a new expression and sum.
    pub fn flat_map(&self, f: impl Fn(&Monomial, &Cq) -> Expr) -> Self {
        let mut out = Expr::zero();
        for (k, v) in &self.terms {
            out += &f(k, v);
        }
        out
    }

    /// Replace atoms by expressions (an algebra homomorphism on the chosen
    /// atoms). Products are rebuilt in word order so signs stay correct.
    pub fn substitute(&self, f: &dyn Fn(&Atom) -> Option<Expr>) -> Self {
        self.flat_map(|word, c| {
            if !word.iter().any(|a| f(a).is_some()) {
                return Expr::from_word(word.clone(), c.clone());
            }
            let mut acc = Expr::scalar(c.clone());
            for a in word {
                let factor = f(a).unwrap_or_else(|| Expr::atom(a.clone()));
                acc = &acc * &factor;
                if acc.is_zero() {
                    break;
                }
            }
            acc
        })
    }

    /// Apply an even derivation determined by its value on atoms
    /// (atoms mapped to `None` are annihilated).
    pub fn derivation(&self, f: &dyn Fn(&Atom) -> Option<Expr>) -> Self {
        self.flat_map(|word, c| {
            let mut out = Expr::zero();
            for (i, a) in word.iter().enumerate() {
                let Some(da) = f(a) else { continue };
                if da.is_zero() {
                    continue;
                }
                let left = Expr::from_word(word[..i].to_vec(), c.clone());
                let right = Expr::from_word(word[i + 1..].to_vec(), Cq::one());
                out += &(&(&left * &da) * &right);
            }
            out
        })
    }

    /// Total derivative ∂_m (graded Leibniz; ∂_m is even).
    pub fn deriv(&self, m: usize) -> Self {
        self.flat_map(|word, c| {
            let mut out = Expr::zero();
            for (i, a) in word.iter().enumerate() {
                if let Atom::Jet(j) = a {
                    if j.field.constant {
                        continue;
                    }
                    let mut w = word.clone();
                    let mut dj = j.clone();
                    dj.deriv[m] += 1;
                    w[i] = Atom::Jet(dj);
                    out += &Expr::from_word(w, c.clone());
                }
            }
            out
        })
    }

    /// ∂^μ for a multi-index of derivative counts.
    pub fn deriv_multi(&self, mu: [u8; DIM]) -> Self {
        let mut e = self.clone();
        for (m, &k) in mu.iter().enumerate() {
            for _ in 0..k {
                e = e.deriv(m);
            }
        }
        e
    }

    /// Left derivative ∂/∂θ^α.
    pub fn theta_deriv(&self, alpha: u8) -> Self {
        self.left_partial(&Atom::Theta(alpha))
    }

    /// Left partial derivative with respect to an atom treated as an
    /// independent variable: the atom is moved to the front and removed.
    pub fn left_partial(&self, target: &Atom) -> Self {
        let odd = target.is_odd();
        self.flat_map(|word, c| {
            if odd {
                match word.iter().position(|a| a == target) {
                    None => Expr::zero(),
                    Some(p) => {
                        let before = word[..p].iter().filter(|a| a.is_odd()).count();
                        let mut w = word.clone();
                        w.remove(p);
                        let c = if before % 2 == 1 { -c.clone() } else { c.clone() };
                        Expr::from_word(w, c)
                    }
                }
            } else {
                let n = word.iter().filter(|a| *a == target).count();
                if n == 0 {
                    return Expr::zero();
                }
                let mut w = word.clone();
                let p = w.iter().position(|a| a == target).expect("present");
                w.remove(p);
                Expr::from_word(w, c * &Cq::from_int(n as i64))
            }
        })
    }

    /// The involution: conjugate coefficients, reverse products, star atoms.
    pub fn star(&self) -> Self {
        self.flat_map(|word, c| {
            let mut coef = c.conj();
            let mut w: Monomial = Vec::with_capacity(word.len());
            for a in word.iter().rev() {
                match a {
                    Atom::Jet(j) => match j.field.reality {
                        Reality::Real => w.push(a.clone()),
                        Reality::Imaginary => {
                            coef = -coef;
                            w.push(a.clone())
                        }
                        Reality::Complex => {
                            w.push(Atom::Jet(Jet { field: j.field.conjugate(), deriv: j.deriv }));
                        }
                    },
                    _ => w.push(a.clone()),
                }
            }
            Expr::from_word(w, coef)
        })
    }

    /// Number of θ's in a monomial.
    fn theta_degree(word: &Monomial) -> usize {
        word.iter().filter(|a| matches!(a, Atom::Theta(_))).count()
    }

    pub fn has_theta(&self) -> bool {
        self.terms.keys().any(|w| Self::theta_degree(w) > 0)
    }

    /// Split `S = f + g_β θ^β + h θθ` into `(f, [g_1, g_2], h)` with each
    /// component free of θ.
    pub fn theta_split(&self) -> (Expr, [Expr; 2], Expr) {
        let mut f = Expr::zero();
        let mut g = [Expr::zero(), Expr::zero()];
        let mut h = Expr::zero();
        for (word, c) in &self.terms {
            let rest: Monomial = word.iter().filter(|a| !matches!(a, Atom::Theta(_))).cloned().collect();
            let thetas: Vec<u8> =
                word.iter().filter_map(|a| if let Atom::Theta(t) = a { Some(*t) } else { None }).collect();
            // θ's sit at the end of a canonical word, so no reordering sign
            match thetas.as_slice() {
                [] => f.push(rest, c.clone()),
                [b] => g[*b as usize - 1].push(rest, c.clone()),
                // θ¹θ² = −θθ
                [1, 2] => h.push(rest, -c.clone()),
                _ => unreachable!("canonical θ words are θ¹, θ², θ¹θ²"),
            }
        }
        (f, g, h)
    }

    /// The θθ component.
    pub fn theta_theta_component(&self) -> Expr {
        self.theta_split().2
    }

    /// Reassemble `f + g_β θ^β + h θθ`.
    pub fn from_theta_components(f: &Expr, g: &[Expr; 2], h: &Expr) -> Expr {
        f + &(&(&g[0] * &Expr::theta(1)) + &(&g[1] * &Expr::theta(2))) + (h * &Expr::theta_theta())
    }

    /// All jets occurring.
    pub fn jets(&self) -> BTreeSet<Jet> {
        let mut s = BTreeSet::new();
        for w in self.terms.keys() {
            for a in w {
                if let Atom::Jet(j) = a {
                    s.insert(j.clone());
                }
            }
        }
        s
    }

    /// All non-constant fields occurring (derivatives stripped).
    pub fn fields(&self) -> BTreeSet<Field> {
        self.jets().into_iter().filter(|j| !j.field.constant).map(|j| j.field).collect()
    }

    /// Number of non-constant jets in a monomial (polynomial degree in fields).
    pub fn field_degree(word: &Monomial) -> usize {
        word.iter().filter(|a| matches!(a, Atom::Jet(j) if !j.field.constant)).count()
    }

    /// Replace every jet of `field` by the matching derivative of `value`.
    pub fn substitute_field(&self, field: &Field, value: &Expr) -> Self {
        self.substitute(&|a| match a {
            Atom::Jet(j) if &j.field == field => Some(value.deriv_multi(j.deriv)),
            _ => None,
        })
    }

    /// Replace every jet of each mapped field (conjugates follow via star).
    pub fn substitute_fields(&self, map: &BTreeMap<Field, Expr>) -> Self {
        self.substitute(&|a| match a {
            Atom::Jet(j) => {
                if let Some(v) = map.get(&j.field) {
                    return Some(v.deriv_multi(j.deriv));
                }
                if j.field.conj {
                    if let Some(v) = map.get(&j.field.conjugate()) {
                        return Some(v.star().deriv_multi(j.deriv));
                    }
                }
                None
            }
            _ => None,
        })
    }

    /// Canonical term list, for JSON export.
    pub fn term_list(&self) -> Vec<(String, Vec<String>)> {
        self.terms.iter().map(|(w, c)| (c.to_string(), w.iter().map(|a| a.to_string()).collect())).collect()
    }

    pub fn to_tex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let coef = if c.is_one() && !w.is_empty() {
                String::new()
            } else if *c == Cq::from_int(-1) && !w.is_empty() {
                "-".into()
            } else {
                tex_scalar(c)
            };
            if i > 0 && !coef.starts_with('-') {
                out.push_str(" + ");
            } else if i > 0 {
                out.push(' ');
            }
            out.push_str(&coef);
            for a in w {
                out.push(' ');
                out.push_str(&tex_atom(a));
            }
        }
        out
    }
}

fn tex_scalar(c: &Cq) -> String {
    let s = c.to_string();
    s.replace("i)", "\\,i)")
}

fn tex_name(name: &str) -> String {
    match name {
        "psi" | "chi" | "lambda" | "phi" | "eps" | "xi" => format!("\\{}", if name == "eps" { "epsilon" } else { name }),
        n if n.len() > 1 => format!("\\mathrm{{{n}}}"),
        n => format!("\\mathsf{{{n}}}"),
    }
}

fn tex_atom(a: &Atom) -> String {
    match a {
        Atom::Gen(i) => format!("\\xi^{{{i}}}"),
        Atom::Theta(t) => format!("\\theta^{{{t}}}"),
        Atom::Jet(j) => {
            let mut s = String::new();
            for (m, &k) in j.deriv.iter().enumerate() {
                for _ in 0..k {
                    s.push_str(&format!("\\partial_{{{m}}}"));
                }
            }
            s.push_str(&tex_name(&j.field.name));
            if j.field.conj {
                s.push_str("^{*}");
            }
            if !j.field.index.is_empty() {
                let idx: Vec<String> = j.field.index.iter().map(|i| i.to_string()).collect();
                s.push_str(&format!("_{{{}}}", idx.join("")));
            }
            s
        }
    }
}

impl From<&GrassmannElement> for Expr {
    fn from(g: &GrassmannElement) -> Self {
        let mut e = Expr::zero();
        for (k, c) in g.terms() {
            e.push(k.iter().map(|&i| Atom::Gen(i)).collect(), c.clone());
        }
        e
    }
}

impl From<Cq> for Expr {
    fn from(c: Cq) -> Self {
        Expr::scalar(c)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    return c.to_string();
                }
                let mono = w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
                if c.is_one() {
                    mono
                } else {
                    format!("{c} {mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, o: &Expr) {
        for (k, v) in &o.terms {
            self.push(k.clone(), v.clone());
        }
    }
}

impl SubAssign<&Expr> for Expr {
    fn sub_assign(&mut self, o: &Expr) {
        for (k, v) in &o.terms {
            self.push(k.clone(), -v.clone());
        }
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        let mut e = self.clone();
        e += o;
        e
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, o: Expr) -> Expr {
        self += &o;
        self
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        self + &(-o)
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        &self - &o
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&Cq::from_int(-1))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        let mut e = Expr::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let mut w = Vec::with_capacity(ka.len() + kb.len());
                w.extend(ka.iter().cloned());
                w.extend(kb.iter().cloned());
                if let Some(s) = sort_with_sign(&mut w, Atom::is_odd) {
                    let c = va * vb;
                    e.push(w, if s < 0 { -c } else { c });
                }
            }
        }
        e
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        &self * &o
    }
}

/// Sum of an iterator of expressions.
pub fn sum<I: IntoIterator<Item = Expr>>(it: I) -> Expr {
    let mut acc = Expr::zero();
    for e in it {
        acc += &e;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(a: u8) -> Field {
        Field::odd("psi", &[a])
    }

    #[test]
    fn odd_jets_anticommute() {
        let a = psi(1).expr();
        let b = psi(2).expr();
        assert!((&(&a * &b) + &(&b * &a)).is_zero());
        assert!((&a * &a).is_zero());
        let c = Field::even("F", &[1, 1]).expr();
        assert_eq!(&a * &c, &c * &a);
    }

    #[test]
    fn derivative_is_graded_leibniz() {
        let a = psi(1).expr();
        let b = psi(2).expr();
        let lhs = (&a * &b).deriv(0);
        let rhs = &(&a.deriv(0) * &b) + &(&a * &b.deriv(0));
        assert_eq!(lhs, rhs);
        // derivatives commute
        assert_eq!(a.deriv(0).deriv(2), a.deriv(2).deriv(0));
        assert!(psi(1).constant().expr().deriv(1).is_zero());
    }

    #[test]
    fn star_reverses_products() {
        let a = psi(1).expr();
        let b = Field::odd("chi", &[2]).expr();
        let ab = &a * &b;
        assert_eq!(ab.star(), &b.star() * &a.star());
        assert_eq!(ab.star().star(), ab);
        let th = Expr::theta_theta();
        assert_eq!(th.star(), -&th);
    }

    #[test]
    fn theta_split_round_trip() {
        let f = Field::even("f", &[]).expr();
        let g1 = Field::odd("g", &[1]).expr();
        let g2 = Field::odd("g", &[2]).expr();
        let h = Field::even("h", &[]).expr();
        let s = Expr::from_theta_components(&f, &[g1.clone(), g2.clone()], &h);
        let (f2, g, h2) = s.theta_split();
        assert_eq!(f2, f);
        assert_eq!(g, [g1, g2]);
        assert_eq!(h2, h);
    }

    #[test]
    fn left_theta_derivative() {
        // ∂_1(θ²θ¹) = −θ², ∂_2(θ²θ¹) = θ¹
        let tt = Expr::theta_theta();
        assert_eq!(tt.theta_deriv(1), -Expr::theta(2));
        assert_eq!(tt.theta_deriv(2), Expr::theta(1));
        // passing an odd field costs a sign
        let x = &psi(1).expr() * &Expr::theta(1);
        assert_eq!(x.theta_deriv(1), -psi(1).expr());
    }

    #[test]
    fn substitution_respects_order() {
        let a = psi(1).expr();
        let b = psi(2).expr();
        let e = &a * &b;
        let swapped = e.substitute(&|at| match at {
            Atom::Jet(j) if j.field == psi(1) => Some(psi(2).expr()),
            Atom::Jet(j) if j.field == psi(2) => Some(psi(1).expr()),
            _ => None,
        });
        assert_eq!(swapped, &b * &a);
    }

    #[test]
    fn grassmann_embeds() {
        let x1 = GrassmannElement::generator(4, 1).unwrap();
        let x2 = GrassmannElement::generator(4, 2).unwrap();
        let p = &x1 * &x2;
        assert_eq!(Expr::from(&p), &Expr::generator(1) * &Expr::generator(2));
        assert_eq!(Expr::from(&p.star()), Expr::from(&p).star());
    }
}
