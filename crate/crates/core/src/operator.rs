//! Linear differential operators with jet-polynomial coefficients, and
//! matrices of them acting on spinor ⊗ finite-space vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;

use crate::clifford::CMat2;
use crate::expr::{Expr, DIM};
use crate::scalar::Cq;

pub type MultiIndex = [u8; DIM];

/// `Σ_μ c_μ ∂^μ`, coefficients written to the left.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct DiffOp {
    terms: BTreeMap<MultiIndex, Expr>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity() -> Self {
        Self::mult(Expr::one())
    }

    /// Multiplication by `e`.
    pub fn mult(e: Expr) -> Self {
        Self::term(e, [0; DIM])
    }

    pub fn term(c: Expr, mu: MultiIndex) -> Self {
        let mut d = DiffOp::zero();
        d.insert(mu, c);
        d
    }

    pub fn partial(m: usize) -> Self {
        let mut mu = [0; DIM];
        mu[m] = 1;
        Self::term(Expr::one(), mu)
    }

    fn insert(&mut self, mu: MultiIndex, c: Expr) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mu).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mu: MultiIndex) -> Expr {
        self.terms.get(&mu).cloned().unwrap_or_default()
    }

    /// The multiplication-operator part (coefficient of ∂^0).
    pub fn zeroth_order(&self) -> Expr {
        self.coefficient([0; DIM])
    }

    pub fn order(&self) -> usize {
        self.terms.keys().map(|k| k.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (mu, c) in &o.terms {
            r.insert(*mu, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Cq::from_int(-1)))
    }

    pub fn scale(&self, c: &Cq) -> Self {
        let mut r = DiffOp::zero();
        for (mu, e) in &self.terms {
            r.insert(*mu, e.scale(c));
        }
        r
    }

    /// `e ∘ self` (left multiplication).
    pub fn left_mul(&self, e: &Expr) -> Self {
        let mut r = DiffOp::zero();
        for (mu, c) in &self.terms {
            r.insert(*mu, e * c);
        }
        r
    }

    /// `self ∘ o` via `∂^μ b = Σ_{κ≤μ} C(μ,κ) (∂^κ b) ∂^{μ−κ}`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut r = DiffOp::zero();
        for (mu, a) in &self.terms {
            for (nu, b) in &o.terms {
                for k0 in 0..=mu[0] {
                    for k1 in 0..=mu[1] {
                        for k2 in 0..=mu[2] {
                            let kappa = [k0, k1, k2];
                            let mut c: u64 = 1;
                            let mut out = [0u8; DIM];
                            for m in 0..DIM {
                                c *= binomial(mu[m] as u64, kappa[m] as u64);
                                out[m] = mu[m] - kappa[m] + nu[m];
                            }
                            let coef = (a * &b.deriv_multi(kappa)).scale(&Cq::from_int(c as i64));
                            r.insert(out, coef);
                        }
                    }
                }
            }
        }
        r
    }

    /// Act on a function.
    pub fn apply(&self, f: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (mu, c) in &self.terms {
            out += &(c * &f.deriv_multi(*mu));
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mu, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})∂^{}{}{}", mu[0], mu[1], mu[2])?;
        }
        Ok(())
    }
}

/// Square matrix of differential operators. For the total space the index
/// is `2·finite + spinor` (finite ∈ {0,1}, spinor ∈ {0,1}).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorMatrix {
    pub n: usize,
    pub e: Vec<Vec<DiffOp>>,
}

impl OperatorMatrix {
    pub fn zero(n: usize) -> Self {
        OperatorMatrix { n, e: vec![vec![DiffOp::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[i][i] = DiffOp::identity();
        }
        m
    }

    /// `(s ⊗ f) · op` for numeric 2×2 spinor and finite matrices.
    pub fn kron(s: &CMat2, f: &CMat2, op: &DiffOp) -> Self {
        let mut m = Self::zero(4);
        for fa in 0..2 {
            for fb in 0..2 {
                for sa in 0..2 {
                    for sb in 0..2 {
                        let c = &s[sa][sb] * &f[fa][fb];
                        if !c.is_zero() {
                            m.e[2 * fa + sa][2 * fb + sb] = op.scale(&c);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(DiffOp::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m.e[i][j] = self.e[i][j].add(&o.e[i][j]);
            }
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Cq::from_int(-1)))
    }

    pub fn scale(&self, c: &Cq) -> Self {
        let mut m = self.clone();
        for row in m.e.iter_mut() {
            for x in row.iter_mut() {
                *x = x.scale(c);
            }
        }
        m
    }

    pub fn compose(&self, o: &Self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = DiffOp::zero();
                for k in 0..self.n {
                    if self.e[i][k].is_zero() || o.e[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.e[i][k].compose(&o.e[k][j]));
                }
                m.e[i][j] = acc;
            }
        }
        m
    }

    pub fn apply(&self, v: &[Expr]) -> Vec<Expr> {
        (0..self.n)
            .map(|i| {
                let mut acc = Expr::zero();
                for j in 0..self.n {
                    acc += &self.e[i][j].apply(&v[j]);
                }
                acc
            })
            .collect()
    }

    /// Matrix trace of the multiplication-operator part.
    pub fn zeroth_order_trace(&self) -> Expr {
        let mut t = Expr::zero();
        for i in 0..self.n {
            t += &self.e[i][i].zeroth_order();
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Field;

    #[test]
    fn leibniz_rule_in_composition() {
        // ∂_0 ∘ a = a ∂_0 + (∂_0 a)
        let a = Field::even("a", &[]).expr();
        let lhs = DiffOp::partial(0).compose(&DiffOp::mult(a.clone()));
        let expected = DiffOp::term(a.clone(), [1, 0, 0]).add(&DiffOp::mult(a.deriv(0)));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn composition_matches_application() {
        let a = Field::even("a", &[]).expr();
        let b = Field::even("b", &[]).expr();
        let f = Field::odd("f", &[]).expr();
        let p = DiffOp::term(a, [2, 0, 1]).add(&DiffOp::partial(1));
        let q = DiffOp::term(b, [0, 1, 1]).add(&DiffOp::identity());
        assert_eq!(p.compose(&q).apply(&f), p.apply(&q.apply(&f)));
        assert_eq!(p.compose(&q).order(), 5);
    }

    #[test]
    fn kron_identity() {
        let one = [[Cq::one(), Cq::zero()], [Cq::zero(), Cq::one()]];
        assert_eq!(OperatorMatrix::kron(&one, &one, &DiffOp::identity()), OperatorMatrix::identity(4));
    }
}
