//! Exact arithmetic in the Grassmann algebra on `n_gen` anticommuting
//! generators ξ¹…ξⁿ with complex-rational coefficients.
//!
//! Elements are stored as a map from strictly increasing generator
//! multi-indices to nonzero coefficients. The involution is the reversing
//! star, `(gh)* = h* g*`, under which the generators are real.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::kernel::{reversal_sign, sort_with_sign};
use crate::scalar::Cq;

/// Default number of generators in play.
pub const DEFAULT_GENERATORS: usize = 8;

/// Parity of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(k: usize) -> Self {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn combine(self, other: Parity) -> Self {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannElement {
    n_gen: usize,
    terms: BTreeMap<Vec<u32>, Cq>,
}

/// Components of [`GrassmannElement::decompose`].
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub body: Cq,
    pub soul: GrassmannElement,
    pub even: GrassmannElement,
    pub odd: GrassmannElement,
}

/// Result of the unitarity test.
///
/// When `unitary` holds, `u = body · exp(i·log)` exactly, with `body` a
/// complex number of modulus one and `log` real and nilpotent. The full
/// logarithm is `g = arg(body) + log`; only the soul part is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryWitness {
    pub unitary: bool,
    pub body: Cq,
    pub body_phase: f64,
    pub log: Option<GrassmannElement>,
}

impl GrassmannElement {
    pub fn zero(n_gen: usize) -> Self {
        GrassmannElement { n_gen, terms: BTreeMap::new() }
    }

    pub fn scalar(n_gen: usize, c: Cq) -> Self {
        let mut g = Self::zero(n_gen);
        g.insert(Vec::new(), c);
        g
    }

    pub fn one(n_gen: usize) -> Self {
        Self::scalar(n_gen, Cq::one())
    }

    /// The generator ξ^i (1-based).
    pub fn generator(n_gen: usize, i: u32) -> Result<Self> {
        if i == 0 || i as usize > n_gen {
            return Err(Error::GeneratorRange(i, n_gen));
        }
        let mut g = Self::zero(n_gen);
        g.insert(vec![i], Cq::one());
        Ok(g)
    }

    /// Build `c · ξ^{i1} … ξ^{ik}` for an arbitrary (unsorted) index word.
    pub fn monomial(n_gen: usize, word: &[u32], c: Cq) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&i| i == 0 || i as usize > n_gen) {
            return Err(Error::GeneratorRange(bad, n_gen));
        }
        let mut w = word.to_vec();
        let mut g = Self::zero(n_gen);
        if let Some(s) = sort_with_sign(&mut w, |_| true) {
            g.insert(w, if s < 0 { -c } else { c });
        }
        Ok(g)
    }

    /// Random element with up to `terms` monomials and small Gaussian-integer
    /// coefficients.
    pub fn random(n_gen: usize, terms: usize, rng: &mut impl rand::Rng) -> Self {
        let mut g = Self::zero(n_gen);
        for _ in 0..rng.random_range(0..=terms) {
            let key: Vec<u32> = (1..=n_gen as u32).filter(|_| rng.random_bool(0.3)).collect();
            g.insert(key, Cq::gaussian(rng.random_range(-3..=3), rng.random_range(-3..=3)));
        }
        g
    }

    /// Random real (`g* = g`) even element with zero body.
    pub fn random_real_even_soul(n_gen: usize, terms: usize, rng: &mut impl rand::Rng) -> Self {
        let e = Self::random(n_gen, terms, rng).soul().even_part();
        (&e + &e.star()).scale(&Cq::from_ratio(1, 2))
    }

    fn insert(&mut self, key: Vec<u32>, c: Cq) {
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

    pub fn n_gen(&self) -> usize {
        self.n_gen
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Cq)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: &[u32]) -> Cq {
        self.terms.get(index).cloned().unwrap_or_else(Cq::zero)
    }

    pub fn body(&self) -> Cq {
        self.coefficient(&[])
    }

    pub fn soul(&self) -> Self {
        self.filter(|k| !k.is_empty())
    }

    pub fn even_part(&self) -> Self {
        self.filter(|k| k.len() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|k| k.len() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        GrassmannElement {
            n_gen: self.n_gen,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn decompose(&self) -> Decomposition {
        Decomposition { body: self.body(), soul: self.soul(), even: self.even_part(), odd: self.odd_part() }
    }

    /// `Some(parity)` when every monomial has the same parity; zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|k| Parity::of_degree(k.len()));
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn scale(&self, c: &Cq) -> Self {
        let mut g = Self::zero(self.n_gen);
        for (k, v) in &self.terms {
            g.insert(k.clone(), v * c);
        }
        g
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n_gen != other.n_gen {
            return Err(Error::Dimension(self.n_gen, other.n_gen));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut g = self.clone();
        for (k, v) in &other.terms {
            g.insert(k.clone(), v.clone());
        }
        Ok(g)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Graded product; signs come from sorting the concatenated index words.
    pub fn gr_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut g = Self::zero(self.n_gen);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut w: Vec<u32> = ka.iter().chain(kb.iter()).copied().collect();
                if let Some(s) = sort_with_sign(&mut w, |_| true) {
                    let c = va * vb;
                    g.insert(w, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(g)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n_gen);
        for _ in 0..k {
            acc = acc.gr_mul(self).expect("same generator count");
        }
        acc
    }

    /// The involution: conjugate coefficients and reverse each monomial.
    pub fn star(&self) -> Self {
        let mut g = Self::zero(self.n_gen);
        for (k, v) in &self.terms {
            let c = v.conj();
            g.insert(k.clone(), if reversal_sign(k.len()) < 0 { -c } else { c });
        }
        g
    }

    /// `Σ g^k / k!` for an even, nilpotent `g`. The series stops once the
    /// power vanishes, at the latest at `k = n_gen`.
    pub fn gr_exp(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Parity("exponential requires an even element".into()));
        }
        if !self.body().is_zero() {
            return Err(Error::Transcendental(self.body().to_string()));
        }
        Ok(self.exp_nilpotent())
    }

    // Valid for any nilpotent element: the series only involves powers of g.
    fn exp_nilpotent(&self) -> Self {
        let mut sum = Self::one(self.n_gen);
        let mut term = Self::one(self.n_gen);
        for k in 1..=self.n_gen as i64 + 1 {
            term = term.gr_mul(self).expect("same generator count").scale(&Cq::from_ratio(1, k));
            if term.is_zero() {
                break;
            }
            sum = sum.try_add(&term).expect("same generator count");
        }
        sum
    }

    /// `log(1 + n) = Σ (−1)^{k+1} n^k / k` for nilpotent `n`.
    fn log_one_plus(n: &Self) -> Self {
        let mut sum = Self::zero(n.n_gen);
        let mut power = Self::one(n.n_gen);
        for k in 1..=n.n_gen as i64 + 1 {
            power = power.gr_mul(n).expect("same generator count");
            if power.is_zero() {
                break;
            }
            let c = Cq::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k);
            sum = sum.try_add(&power.scale(&c)).expect("same generator count");
        }
        sum
    }

    /// `u·u* = u*·u = 1`; on success also recovers the real logarithm.
    ///
    /// A zero body is reported as non-unitary.
    pub fn is_unitary(&self) -> UnitaryWitness {
        let body = self.body();
        let not = UnitaryWitness { unitary: false, body: body.clone(), body_phase: f64::NAN, log: None };
        if body.is_zero() {
            return not;
        }
        let one = Self::one(self.n_gen);
        let s = self.star();
        let ok = self.gr_mul(&s).map(|p| p == one).unwrap_or(false)
            && s.gr_mul(self).map(|p| p == one).unwrap_or(false);
        if !ok {
            return not;
        }
        let inv_body = body.inv().expect("nonzero body");
        let n = self.soul().scale(&inv_body);
        // u / u_B = exp(i g_S)  =>  g_S = -i log(1 + n)
        let log = Self::log_one_plus(&n).scale(&-Cq::i());
        let (re, im) = body.to_f64();
        UnitaryWitness { unitary: true, body: body.clone(), body_phase: im.atan2(re), log: Some(log) }
    }

    /// Reconstruct `body · exp(i·log)` from a witness.
    pub fn from_unitary_witness(w: &UnitaryWitness, n_gen: usize) -> Option<Self> {
        let log = w.log.as_ref()?;
        Some(log.scale(&Cq::i()).exp_nilpotent().scale(&w.body).with_n_gen(n_gen))
    }

    fn with_n_gen(mut self, n: usize) -> Self {
        self.n_gen = n;
        self
    }

    /// Parse the printed form, e.g. `3/2 + (0-1i) x1^x2 + -x3`.
    pub fn parse(s: &str, n_gen: usize) -> Result<Self> {
        let s = s.trim();
        let mut g = Self::zero(n_gen);
        if s == "0" {
            return Ok(g);
        }
        for raw in s.split(" + ") {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (coef, mono) = match raw.rsplit_once(' ') {
                Some((c, m)) => (c.parse::<Cq>()?, Some(m)),
                None if raw.contains('x') => {
                    if let Some(m) = raw.strip_prefix('-') {
                        (Cq::from_int(-1), Some(m))
                    } else {
                        (Cq::one(), Some(raw))
                    }
                }
                None => (raw.parse::<Cq>()?, None),
            };
            let word = match mono {
                None => Vec::new(),
                Some(m) => m
                    .split('^')
                    .map(|x| {
                        x.strip_prefix('x')
                            .and_then(|d| d.parse::<u32>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad generator `{x}`")))
                    })
                    .collect::<Result<Vec<u32>>>()?,
            };
            g = g.try_add(&Self::monomial(n_gen, &word, coef)?)?;
        }
        Ok(g)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                if k.is_empty() {
                    return c.to_string();
                }
                let mono = k.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join("^");
                if c.is_one() {
                    mono
                } else if *c == Cq::from_int(-1) {
                    format!("-{mono}")
                } else {
                    format!("{c} {mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannElement[{}]({})", self.n_gen, self)
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(&Cq::from_int(-1))
    }
}

/// Panics on mismatched generator counts; use `try_add` for a fallible sum.
impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, o: &GrassmannElement) -> GrassmannElement {
        self.try_add(o).expect("generator count mismatch")
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, o: &GrassmannElement) -> GrassmannElement {
        self.try_sub(o).expect("generator count mismatch")
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, o: &GrassmannElement) -> GrassmannElement {
        self.gr_mul(o).expect("generator count mismatch")
    }
}
