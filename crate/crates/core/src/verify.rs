//! The identity suite behind `verify` and the acceptance tests.
//!
//! Each check recomputes one identity from scratch and reports a
//! should-be-zero residual. Checks against a displayed form that the engine
//! contradicts are marked `known_deviation`: they still report `fail`, but do
//! not count as regressions.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::actions::{
    chern_simons, chiral_bracket_form, chiral_fermionic_action, chiral_superfield_free, chiral_symmetric_form,
    clifford_components, dirac_cubed, fermionic_action, fermionic_signs, fermionic_terms, gauge_potential,
    gauge_superfields, grouped_cube, kinetic_density, sector_superfield, signed_sum, spectral_action,
    spectral_three_term, susy_variation, SpinorComponents,
};
use crate::clifford::{eta, gamma, spin_rep, SpinorMatrix};
use crate::config::Config;
use crate::distance::{two_point_distance, Distance, PointMetric};
use crate::expr::{Expr, DIM};
use crate::grassmann::{GrassmannElement, Parity};
use crate::scalar::Cq;
use crate::superspace::{
    anticommutator, apply_d_expr, apply_q_expr, chiral_constrain, chiral_residual, eps_q_lowered, eps_q_upper,
    raise_op, susy_parameter, susy_vary_expr, SuperField,
};
use crate::triple::{fluctuate, fluctuated_dirac, j_analysis, Fluctuation, JOutcome, OneForm};
use crate::variational::{divergence, is_total_derivative};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Obstruction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub criterion: u8,
    pub anchor: String,
    pub status: Status,
    pub known_deviation: bool,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl CheckRecord {
    /// A failure that is not a documented deviation.
    pub fn is_regression(&self) -> bool {
        self.status == Status::Fail && !self.known_deviation
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub n_generators: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn regressions(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.is_regression())
    }

    pub fn ok(&self) -> bool {
        self.regressions().next().is_none()
    }

    /// Drop wall times so the report is reproducible.
    pub fn without_timing(mut self) -> Self {
        for c in &mut self.checks {
            c.wall_time_ms = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match (c.status, c.known_deviation) {
                (Status::Pass, _) => "PASS",
                (Status::Obstruction, _) => "OBSTRUCTION",
                (Status::Fail, true) => "FAIL (known deviation)",
                (Status::Fail, false) => "FAIL",
            };
            s.push_str(&format!("[{}] {:<36} {:<24} {}\n", c.criterion, c.id, tag, c.anchor));
            if c.status == Status::Fail {
                s.push_str(&format!("      residual: {}\n", c.residual));
            }
        }
        s
    }
}

/// Result of a single check.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub residual: String,
    pub detail: Option<String>,
}

impl Outcome {
    fn exact(residual: &Expr) -> Self {
        Outcome {
            status: if residual.is_zero() { Status::Pass } else { Status::Fail },
            residual: residual.to_string(),
            detail: None,
        }
    }

    fn numeric(residual: f64, tol: f64) -> Self {
        Outcome {
            status: if residual <= tol { Status::Pass } else { Status::Fail },
            residual: format!("{residual:e}"),
            detail: None,
        }
    }

    fn count(failures: usize, of: usize) -> Self {
        Outcome {
            status: if failures == 0 { Status::Pass } else { Status::Fail },
            residual: failures.to_string(),
            detail: Some(format!("{failures} of {of} cases failed")),
        }
    }

    fn with_detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }
}

pub struct Check {
    pub id: &'static str,
    pub criterion: u8,
    pub anchor: &'static str,
    pub known_deviation: bool,
    pub run: fn(&Config) -> Outcome,
}

const fn check(id: &'static str, criterion: u8, anchor: &'static str, run: fn(&Config) -> Outcome) -> Check {
    Check { id, criterion, anchor, known_deviation: false, run }
}

const fn deviation(id: &'static str, criterion: u8, anchor: &'static str, run: fn(&Config) -> Outcome) -> Check {
    Check { id, criterion, anchor, known_deviation: true, run }
}

pub fn checks() -> Vec<Check> {
    vec![
        check("clifford.anticommutators", 1, "{γ^m,γ^n} = 2η^{mn}", clifford_anticommutators),
        check("clifford.lorentz_covariance", 1, "S⁻¹γ^mS = L^m_nγ^n, det S = 1", clifford_covariance),
        check("grassmann.algebra_laws", 2, "star, product and parity laws", grassmann_laws),
        check("grassmann.exp_log", 2, "u = e^{ig} is unitary with log g", grassmann_exp_log),
        check("superspace.dq_anticommutator", 3, "{D_α,Q_β} = 0", dq_anticommutator),
        check("superspace.dd_anticommutator", 3, "{D^α,D_β} = −2(γ^m)^α_β∂_m", dd_anticommutator),
        check("superspace.variation_lowered", 3, "δS = ε_βQ^βS", variation_lowered),
        deviation("superspace.variation_upper", 3, "δS = ε^βQ_βS as written", variation_upper),
        check("chiral.constraint", 4, "D_αΨ̃^α = 0", chiral_constraint),
        check("chiral.closure", 4, "D_α(δΨ̃^α) = 0", chiral_closure),
        check("fluctuation.ko6", 5, "KO-6: D + γ^mA_m⊗γ_F, A_m = i(w₁−w₂)", ko6_display),
        deviation("fluctuation.ko0", 5, "KO-0: A_m = i(a₁∂b₁ − a₁*∂b₁*)", ko0_display),
        check("fluctuation.ko4", 5, "KO-4: body of u₁u₁* ≠ −1", ko4_obstruction),
        deviation("fluctuation.ko2", 5, "KO-2: body of u₁u₂* ≠ −1", ko2_obstruction),
        deviation("action.chiral_display", 6, "chiral: symmetric three-term form", chiral_display),
        check("action.chiral_bracket", 6, "chiral: ⟨ψ,Dχ⟩ + ⟨F_[2,DF_1]⟩ − ⟨χ,Dψ⟩", chiral_bracket),
        deviation("action.fermionic_display", 6, "fermionic: nine terms, all +", fermionic_display),
        check("action.fermionic_signed", 6, "fermionic: nine terms, engine signs", fermionic_signed),
        check("action.spectral", 6, "spectral: three-term ε-tensor form", spectral_display),
        deviation("cube.grouped", 7, "(D_A)³ four-group expansion", cube_grouped),
        check("cube.trace", 7, "tr (D_A)³ ∝ ε^{pmn}A_pF_{mn}", cube_trace),
        check("susy.chiral", 8, "δL_chiral is a divergence", susy_chiral),
        check("susy.fermionic", 8, "δL_fermionic is a divergence", susy_fermionic),
        check("susy.spectral", 8, "δL_spectral is a divergence", susy_spectral),
        check("distance.norm", 9, "max |D_kl||f_k−f_l| = ‖[𝖣,π(f)]‖", distance_norm),
        check("distance.lp", 9, "LP supremum = shortest path", distance_lp),
        check("distance.two_point", 9, "d = 1/|t|", distance_two_point),
    ]
}

fn run_one(c: &Check, cfg: &Config) -> CheckRecord {
    let start = Instant::now();
    let o = (c.run)(cfg);
    CheckRecord {
        id: c.id.into(),
        criterion: c.criterion,
        anchor: c.anchor.into(),
        status: o.status,
        known_deviation: c.known_deviation,
        residual: o.residual,
        detail: o.detail,
        wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    }
}

/// Run the checks whose id starts with `filter`, concurrently; the report
/// keeps the declaration order.
pub fn run(cfg: &Config, filter: Option<&str>) -> VerificationReport {
    let selected: Vec<Check> = checks().into_iter().filter(|c| filter.is_none_or(|f| c.id.starts_with(f))).collect();
    let checks = std::thread::scope(|s| {
        let handles: Vec<_> = selected.iter().map(|c| s.spawn(move || run_one(c, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    VerificationReport { seed: cfg.seed, n_generators: cfg.n_generators, checks }
}

fn rng(cfg: &Config, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn clifford_anticommutators(_: &Config) -> Outcome {
    let mut res = Expr::zero();
    for m in 0..DIM {
        for n in 0..DIM {
            let g = gamma(m).expect("m").anticommutator(&gamma(n).expect("n"));
            let r = g.sub(&SpinorMatrix::identity().scale(&Expr::int(2 * eta(m, n))));
            for row in &r.e {
                for x in row {
                    res += x;
                }
            }
            if !r.is_zero() {
                return Outcome::exact(&r.e[0][0]);
            }
        }
    }
    Outcome::exact(&res)
}

fn clifford_covariance(cfg: &Config) -> Outcome {
    let mut r = rng(cfg, 1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let mut xi = [[0.0; 3]; 3];
        for a in 0..3 {
            for b in a + 1..3 {
                xi[a][b] = r.random_range(-1.0..1.0);
                xi[b][a] = -xi[a][b];
            }
        }
        let s = spin_rep(&xi).expect("antisymmetric");
        worst = worst.max(s.covariance_residual()).max(s.det_residual());
    }
    Outcome::numeric(worst, 1e-12)
}

fn grassmann_laws(cfg: &Config) -> Outcome {
    let n = cfg.n_generators;
    let mut r = rng(cfg, 2);
    let cases = 1000;
    let mut bad = 0;
    for _ in 0..cases {
        let g = GrassmannElement::random(n, 6, &mut r);
        let h = GrassmannElement::random(n, 6, &mut r);
        let k = GrassmannElement::random(n, 6, &mut r);
        let gh = &g * &h;
        let ok = gh.star() == &h.star() * &g.star()
            && g.star().star() == g
            && &gh * &k == &g * &(&h * &k)
            && &g * &(&h + &k) == &gh + &(&g * &k)
            && (&g.even_part() * &h.even_part()).parity().is_none_or(|p| p == Parity::Even)
            && (&g.odd_part() * &h.odd_part()).parity().is_none_or(|p| p == Parity::Even)
            && is_odd_or_zero(&(&g.even_part() * &h.odd_part()))
            && decomposes(&g);
        if !ok {
            bad += 1;
        }
    }
    Outcome::count(bad, cases)
}

fn is_odd_or_zero(g: &GrassmannElement) -> bool {
    g.is_zero() || g.parity() == Some(Parity::Odd)
}

fn decomposes(g: &GrassmannElement) -> bool {
    let d = g.decompose();
    let n = g.n_gen();
    &d.even + &d.odd == *g && &GrassmannElement::scalar(n, d.body) + &d.soul == *g
}

fn grassmann_exp_log(cfg: &Config) -> Outcome {
    let n = cfg.n_generators;
    let mut r = rng(cfg, 3);
    let cases = 200;
    let mut bad = 0;
    for _ in 0..cases {
        let g = GrassmannElement::random_real_even_soul(n, 6, &mut r);
        let u = g.scale(&Cq::i()).gr_exp().expect("nilpotent even");
        let w = u.is_unitary();
        let ok = w.unitary
            && w.log.as_ref() == Some(&g)
            && GrassmannElement::from_unitary_witness(&w, n).as_ref() == Some(&u);
        if !ok {
            bad += 1;
        }
    }
    Outcome::count(bad, cases)
}

fn generic_scalars() -> [Expr; 2] {
    [
        SuperField::generic_scalar(Parity::Even, ["f", "g", "h"]).comps[0].clone(),
        SuperField::generic_scalar(Parity::Odd, ["f", "g", "h"]).comps[0].clone(),
    ]
}

fn dq_anticommutator(_: &Config) -> Outcome {
    let mut res = Expr::zero();
    for s in generic_scalars() {
        for a in 1..=2 {
            for b in 1..=2 {
                res += &anticommutator(|x| apply_d_expr(a, x), |x| apply_q_expr(b, x), &s);
            }
        }
    }
    Outcome::exact(&res)
}

fn dd_anticommutator(_: &Config) -> Outcome {
    let mut res = Expr::zero();
    for s in generic_scalars() {
        for a in 1..=2 {
            for b in 1..=2 {
                let mut expected = Expr::zero();
                for m in 0..DIM {
                    expected += &s.deriv(m).scale(&crate::clifford::gamma_entry(m, a, b)).scale_int(-2);
                }
                let got = anticommutator(|x| raise_op(a, apply_d_expr, x), |x| apply_d_expr(b, x), &s);
                res += &(&got - &expected);
            }
        }
    }
    Outcome::exact(&res)
}

fn variation_lowered(_: &Config) -> Outcome {
    let e = susy_parameter("eps");
    let mut res = Expr::zero();
    for s in generic_scalars() {
        res += &(&susy_vary_expr(&s, &e) - &eps_q_lowered(&s, &e));
    }
    Outcome::exact(&res)
}

fn variation_upper(_: &Config) -> Outcome {
    let e = susy_parameter("eps");
    let mut res = Expr::zero();
    for s in generic_scalars() {
        res += &(&susy_vary_expr(&s, &e) - &eps_q_upper(&s, &e));
    }
    Outcome::exact(&res).with_detail("δS = −ε^βQ_βS holds exactly".into())
}

fn chiral_constraint(_: &Config) -> Outcome {
    let p = SuperField::generic_spinor(Parity::Odd, ["psi", "F", "chi"]);
    let cc = chiral_constrain(&p, ["psi", "F", "chi"]).expect("odd spinor");
    let rewritten = cc.rules.apply_sf(&chiral_residual(&cc.constrained).expect("spinor"));
    let free = chiral_residual(&chiral_superfield_free("psi", "w")).expect("spinor");
    Outcome::exact(&(&rewritten.comps[0] + &free.comps[0]))
}

fn chiral_closure(_: &Config) -> Outcome {
    let e = susy_parameter("eps");
    let p = SuperField::generic_spinor(Parity::Odd, ["psi", "F", "chi"]);
    let cc = chiral_constrain(&p, ["psi", "F", "chi"]).expect("odd spinor");
    let ct = cc.constrained.spinor_comps().expect("spinor");
    let dv = [eps_q_lowered(&ct[0], &e), eps_q_lowered(&ct[1], &e)];
    let closure = &apply_d_expr(1, &dv[0]) + &apply_d_expr(2, &dv[1]);
    Outcome::exact(&cc.rules.apply(&closure))
}

fn ko6_display(_: &Config) -> Outcome {
    let of = OneForm::generic();
    let Ok(Fluctuation::Operator { a_m, d_a, .. }) = fluctuate(6, &of) else {
        return Outcome { status: Status::Fail, residual: "no fluctuation".into(), detail: None };
    };
    let display: [Expr; DIM] = std::array::from_fn(|m| (&of.w(0, m) - &of.w(1, m)).scale(&Cq::i()));
    let mut res = Expr::zero();
    for m in 0..DIM {
        res += &(&a_m[m] - &display[m]);
    }
    if d_a != fluctuated_dirac(&display) {
        return Outcome { status: Status::Fail, residual: "D_A differs".into(), detail: None };
    }
    Outcome::exact(&res)
}

fn ko0_display(_: &Config) -> Outcome {
    let of = OneForm::generic();
    let Ok(Fluctuation::Operator { a_m, .. }) = fluctuate(0, &of) else {
        return Outcome { status: Status::Fail, residual: "no fluctuation".into(), detail: None };
    };
    let mut res = Expr::zero();
    for m in 0..DIM {
        let w = of.w(0, m);
        res += &(&a_m[m] - &(&w - &w.star()).scale(&Cq::i()));
    }
    Outcome::exact(&res).with_detail("engine: A_m = i(a₁∂b₁ + a₁*∂b₁*)".into())
}

fn obstruction(ko: u8) -> Outcome {
    match j_analysis(ko) {
        Ok(j) => match j.outcome {
            JOutcome::Obstructed { body } => Outcome {
                status: Status::Obstruction,
                residual: format!("{} + 1", body),
                detail: Some(format!("constraint {} = {}; body is a sum of moduli", j.constraint, j.epsilon)),
            },
            JOutcome::Realizable { u } => Outcome {
                status: Status::Fail,
                residual: "0".into(),
                detail: Some(format!("realizable with u = ({}, {})", u[0], u[1])),
            },
        },
        Err(e) => Outcome { status: Status::Fail, residual: e.to_string(), detail: None },
    }
}

fn ko4_obstruction(_: &Config) -> Outcome {
    obstruction(4)
}

fn ko2_obstruction(_: &Config) -> Outcome {
    obstruction(2)
}

fn chiral_parts() -> (crate::superspace::ChiralConstraint, Expr, SpinorComponents) {
    let cc = chiral_constrain(&sector_superfield('+'), ["psi+", "F+", "chi+"]).expect("odd spinor");
    let l = chiral_fermionic_action(&cc).expect("chiral").value;
    let parts = SpinorComponents::of(&cc.constrained).expect("spinor");
    (cc, l, parts)
}

fn chiral_display(_: &Config) -> Outcome {
    let (cc, l, parts) = chiral_parts();
    let diff = &l - &cc.rules.apply(&chiral_symmetric_form(&parts));
    let free = chiral_superfield_free("psi", "w");
    let fp = SpinorComponents::of(&free).expect("spinor");
    let modulo = is_total_derivative(&(&kinetic_density(&free).expect("odd").value - &chiral_symmetric_form(&fp)));
    Outcome::exact(&diff).with_detail(format!("equal modulo divergence: {}", modulo.is_divergence))
}

fn chiral_bracket(_: &Config) -> Outcome {
    let (cc, l, parts) = chiral_parts();
    Outcome::exact(&(&l - &cc.rules.apply(&chiral_bracket_form(&parts))))
}

fn fermionic_parts() -> (Expr, [Expr; 9], [Expr; 9]) {
    let (p, m) = (sector_superfield('+'), sector_superfield('-'));
    let a = gauge_superfields();
    let l = fermionic_action(6, &p, &m, &a).expect("valid inputs").value;
    let tp = fermionic_terms(&SpinorComponents::of(&p).expect("spinor"), &a).expect("gauge");
    let tm = fermionic_terms(&SpinorComponents::of(&m).expect("spinor"), &a).expect("gauge");
    (l, tp, tm)
}

fn fermionic_display(_: &Config) -> Outcome {
    let (l, tp, tm) = fermionic_parts();
    let d = &l - &(&signed_sum(&tp, &[1; 9]) + &signed_sum(&tm, &[1; 9]));
    Outcome::exact(&d).with_detail("engine signs: Ψ₊ ++-+++++-, Ψ₋ ++------+".into())
}

fn fermionic_signed(_: &Config) -> Outcome {
    let (l, tp, tm) = fermionic_parts();
    let d = &l - &(&signed_sum(&tp, &fermionic_signs(true)) + &signed_sum(&tm, &fermionic_signs(false)));
    Outcome::exact(&d)
}

fn spectral_display(_: &Config) -> Outcome {
    let a = gauge_superfields();
    let (_, tt) = spectral_action(&a).expect("even scalars");
    Outcome::exact(&(&tt.value - &spectral_three_term(&a).expect("even scalars")))
}

fn cube_grouped(_: &Config) -> Outcome {
    let a = gauge_potential();
    let g = grouped_cube(&a);
    let total = g.iter().skip(1).fold(g[0].clone(), |acc, x| acc.add(x));
    let diff = clifford_components(&dirac_cubed(&a).sub(&total));
    let names = ["1", "γ⁰", "γ¹", "γ²"];
    let fin = ["1", "γ_F"];
    let mut nonzero = Vec::new();
    for s in 0..4 {
        for t in 0..2 {
            if !diff[s][t].is_zero() {
                nonzero.push(format!("{}⊗{}", names[s], fin[t]));
            }
        }
    }
    Outcome {
        status: if nonzero.is_empty() { Status::Pass } else { Status::Fail },
        residual: diff[0][0].to_string(),
        detail: Some(format!("differing components: {}", nonzero.join(", "))),
    }
}

fn cube_trace(_: &Config) -> Outcome {
    let a = gauge_potential();
    let tr = dirac_cubed(&a).zeroth_order_trace();
    let rest = &tr - &chern_simons(&a).scale_int(2);
    // anything left over would have to be a total derivative
    let cert = is_total_derivative(&rest);
    let mut o = Outcome::exact(&rest);
    if !rest.is_zero() && cert.is_divergence {
        o.status = Status::Pass;
    }
    o.with_detail("tr (D_A)³|₀ = 2 ε^{pmn}A_pF_{mn}".into())
}

fn susy_outcome(l: &Expr, sources: &[SuperField]) -> Outcome {
    let d = susy_variation(l, sources);
    let cert = is_total_derivative(&d);
    match cert.witness {
        Some(v) => {
            let res = &divergence(&v) - &d;
            let witness = v.iter().enumerate().map(|(m, x)| format!("V^{m} = {x}")).collect::<Vec<_>>().join("; ");
            Outcome::exact(&res).with_detail(witness)
        }
        None => Outcome {
            status: Status::Fail,
            residual: cert.euler.values().next().map(|e| e.to_string()).unwrap_or_else(|| cert.constant_part.to_string()),
            detail: None,
        },
    }
}

fn susy_chiral(_: &Config) -> Outcome {
    // generic variations, then restricted to the chiral surface
    let p = sector_superfield('+');
    let generic = kinetic_density(&p).expect("odd spinor").value;
    let d = susy_variation(&generic, std::slice::from_ref(&p));
    let free = chiral_superfield_free("psi", "w");
    let fp = SpinorComponents::of(&free).expect("spinor");
    let gp = SpinorComponents::of(&p).expect("spinor");
    let mut subs = std::collections::BTreeMap::new();
    for a in 0..2 {
        let comp = |e: &Expr| e.jets().into_iter().next().map(|j| j.field);
        if let Some(f) = comp(&gp.psi[a]) {
            subs.insert(f, fp.psi[a].clone());
        }
        if let Some(f) = comp(&gp.chi[a]) {
            subs.insert(f, fp.chi[a].clone());
        }
        for b in 0..2 {
            if let Some(f) = comp(&gp.f[b][a]) {
                subs.insert(f, fp.f[b][a].clone());
            }
        }
    }
    let on_surface = d.substitute_fields(&subs);
    let mut o = susy_outcome(&generic, std::slice::from_ref(&p));
    if !is_total_derivative(&on_surface).is_divergence {
        o.status = Status::Fail;
        o.residual = on_surface.to_string();
    }
    o
}

fn susy_fermionic(_: &Config) -> Outcome {
    let (p, m) = (sector_superfield('+'), sector_superfield('-'));
    let a = gauge_superfields();
    let l = fermionic_action(6, &p, &m, &a).expect("valid inputs").value;
    let mut src = vec![p, m];
    src.extend(a);
    susy_outcome(&l, &src)
}

fn susy_spectral(_: &Config) -> Outcome {
    let a = gauge_superfields();
    let (_, tt) = spectral_action(&a).expect("even scalars");
    susy_outcome(&tt.value, &a)
}

fn random_f(n: usize, r: &mut impl Rng) -> Vec<nalgebra::Complex<f64>> {
    (0..n).map(|_| nalgebra::Complex::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0))).collect()
}

fn distance_norm(cfg: &Config) -> Outcome {
    let mut r = rng(cfg, 9);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = r.random_range(2..=5);
        let m = PointMetric::random(n, 0.7, &mut r);
        let f = random_f(n, &mut r);
        worst = worst.max((m.commutator_norm(&f) - m.commutator_norm_svd(&f)).abs());
    }
    Outcome::numeric(worst, cfg.tolerance_numeric)
}

fn distance_lp(cfg: &Config) -> Outcome {
    let mut r = rng(cfg, 10);
    let mut worst: f64 = 0.0;
    let mut mismatch = 0;
    for _ in 0..100 {
        let n = r.random_range(2..=5);
        let m = PointMetric::random(n, 0.6, &mut r);
        for i in 0..n {
            for j in 0..n {
                let lp = m.distance(i, j).map(|x| x.value).unwrap_or(Distance::Infinite);
                match (lp, m.distance_by_paths(i, j)) {
                    (Distance::Finite(a), Distance::Finite(b)) => worst = worst.max((a - b).abs()),
                    (Distance::Infinite, Distance::Infinite) => {}
                    _ => mismatch += 1,
                }
            }
        }
    }
    if mismatch > 0 {
        return Outcome::count(mismatch, 100);
    }
    Outcome::numeric(worst, 1e-6)
}

fn distance_two_point(cfg: &Config) -> Outcome {
    let mut r = rng(cfg, 11);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t = nalgebra::Complex::from_polar(r.random_range(0.1..5.0), r.random_range(0.0..6.28));
        let m = PointMetric::two_point(t);
        let (Distance::Finite(lp), Distance::Finite(closed)) = (m.distance(0, 1).expect("valid").value, two_point_distance(t))
        else {
            return Outcome { status: Status::Fail, residual: "inf".into(), detail: None };
        };
        worst = worst.max((lp - closed).abs());
    }
    Outcome::numeric(worst, 1e-9)
}
