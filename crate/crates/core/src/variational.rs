//! Euler operators on the jet algebra and divergence certification.
//!
//! A density is a total derivative iff its Euler–Lagrange derivative vanishes
//! for every field and it has no field-free part. When it is, the homotopy
//! operator produces `V^m` with `L = ∂_m V^m`, which is then re-checked.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_rational::BigRational;
use num_bigint::BigInt;

use crate::expr::{Atom, Expr, Field, Jet, DIM};
use crate::scalar::Cq;

type MultiIndex = [u8; DIM];

fn jets_of(l: &Expr, field: &Field) -> Vec<MultiIndex> {
    l.jets().into_iter().filter(|j| &j.field == field).map(|j| j.deriv).collect()
}

fn jet_atom(field: &Field, k: MultiIndex) -> Atom {
    Atom::Jet(Jet { field: field.clone(), deriv: k })
}

fn total(k: MultiIndex) -> usize {
    k.iter().map(|&x| x as usize).sum()
}

fn signed(e: Expr, order: usize) -> Expr {
    if order % 2 == 1 {
        -e
    } else {
        e
    }
}

/// `E_φ(L) = Σ_K (−D)^K ∂L/∂φ_K` with left partial derivatives.
pub fn euler(l: &Expr, field: &Field) -> Expr {
    let mut out = Expr::zero();
    for k in jets_of(l, field) {
        let p = l.left_partial(&jet_atom(field, k));
        out += &signed(p.deriv_multi(k), total(k));
    }
    out
}

/// Higher Euler operator `E^{(I)}_φ(L) = Σ_{K ≥ I} C(K,I) (−D)^{K−I} ∂L/∂φ_K`.
pub fn higher_euler(l: &Expr, field: &Field, i: MultiIndex) -> Expr {
    let mut out = Expr::zero();
    for k in jets_of(l, field) {
        if (0..DIM).any(|m| k[m] < i[m]) {
            continue;
        }
        let mut rest = [0u8; DIM];
        let mut c: u64 = 1;
        for m in 0..DIM {
            rest[m] = k[m] - i[m];
            c *= binomial(k[m] as u64, i[m] as u64);
        }
        let p = l.left_partial(&jet_atom(field, k)).deriv_multi(rest);
        out += &signed(p, total(rest)).scale(&Cq::from_int(c as i64));
    }
    out
}

/// Outcome of [`is_total_derivative`].
#[derive(Debug, Clone)]
pub struct DivergenceCertificate {
    pub is_divergence: bool,
    /// Nonzero Euler–Lagrange derivatives, by field.
    pub euler: BTreeMap<Field, Expr>,
    /// Field-free remainder (never a divergence of jet polynomials).
    pub constant_part: Expr,
    /// `V^m` with `L = ∂_m V^m`, present when `is_divergence`.
    pub witness: Option<[Expr; DIM]>,
}

fn all_multi_indices(max: usize) -> Vec<MultiIndex> {
    let mut v = Vec::new();
    for a in 0..=max {
        for b in 0..=max - a {
            for c in 0..=max - a - b {
                v.push([a as u8, b as u8, c as u8]);
            }
        }
    }
    v
}

/// Homotopy integral for a density homogeneous of field-degree `d ≥ 1`.
fn homotopy(l: &Expr, d: usize) -> [Expr; DIM] {
    let mut v: [Expr; DIM] = Default::default();
    for field in l.fields() {
        let max = jets_of(l, &field).iter().map(|&k| total(k)).max().unwrap_or(0);
        if max == 0 {
            continue;
        }
        let phi = field.expr();
        for i in all_multi_indices(max - 1) {
            for m in 0..DIM {
                let mut ip = i;
                ip[m] += 1;
                let e = higher_euler(l, &field, ip);
                if e.is_zero() {
                    continue;
                }
                let w = BigRational::new(BigInt::from(i[m] as u64 + 1), BigInt::from((total(i) + 1) as u64));
                v[m] += &(&phi * &e).deriv_multi(i).scale(&Cq::new(w, BigRational::from_integer(0.into())));
            }
        }
    }
    let inv = Cq::from_ratio(1, d as i64);
    v.map(|x| x.scale(&inv))
}

pub fn divergence(v: &[Expr; DIM]) -> Expr {
    let mut out = Expr::zero();
    for m in 0..DIM {
        out += &v[m].deriv(m);
    }
    out
}

/// Decide whether `l` is a total x-divergence, with a verified witness.
pub fn is_total_derivative(l: &Expr) -> DivergenceCertificate {
    let mut eul = BTreeMap::new();
    for f in l.fields() {
        let e = euler(l, &f);
        if !e.is_zero() {
            eul.insert(f, e);
        }
    }
    let constant_part = l.filter(|w| Expr::field_degree(w) == 0);
    let mut cert = DivergenceCertificate {
        is_divergence: eul.is_empty() && constant_part.is_zero(),
        euler: eul,
        constant_part,
        witness: None,
    };
    if cert.is_divergence {
        let max_d = l.terms().map(|(w, _)| Expr::field_degree(w)).max().unwrap_or(0);
        let mut v: [Expr; DIM] = Default::default();
        for d in 1..=max_d {
            let part = l.filter(|w| Expr::field_degree(w) == d);
            if part.is_zero() {
                continue;
            }
            let h = homotopy(&part, d);
            for m in 0..DIM {
                v[m] += &h[m];
            }
        }
        let residual = &divergence(&v) - l;
        assert!(residual.is_zero(), "homotopy witness failed: residual {residual}");
        cert.witness = Some(v);
    }
    cert
}
