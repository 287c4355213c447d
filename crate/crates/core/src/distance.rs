//! Connes distance on a finite point space.
//!
//! The Hilbert space is `⊕_{k<l} ℂ²` with `π(f)` acting as `diag(f_k, f_l)`
//! on the `(k,l)` block and `𝖣` as `[[0, D_kl], [D̄_kl, 0]]`. Then
//! `‖[𝖣, π(f)]‖ = max_{k≠l} |D_kl| |f_k − f_l|`, and the distance is the
//! shortest-path metric of the graph with edge lengths `1/|D_kl|`.

use std::fmt;

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::{Complex, DMatrix};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Finite distance or the unbounded marker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Finite(f64),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<f64> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Infinite => None,
        }
    }

    /// Agreement within `tol`, with `∞ = ∞`.
    pub fn close_to(self, o: Distance, tol: f64) -> bool {
        match (self, o) {
            (Distance::Finite(a), Distance::Finite(b)) => (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())),
            (Distance::Infinite, Distance::Infinite) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(x) => write!(f, "{x}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Symmetric complex coupling matrix of an N-point space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMetric {
    d: DMatrix<C64>,
}

#[derive(Serialize, Deserialize)]
struct PointMetricJson {
    n: usize,
    /// Row-major `[re, im]` pairs.
    d: Vec<Vec<[f64; 2]>>,
}

impl PointMetric {
    pub fn new(d: DMatrix<C64>) -> Result<Self> {
        if d.nrows() != d.ncols() {
            return Err(Error::Dimension(d.nrows(), d.ncols()));
        }
        for k in 0..d.nrows() {
            for l in 0..k {
                if (d[(k, l)] - d[(l, k)]).norm() > 1e-12 {
                    return Err(Error::Index(format!("D is not symmetric at ({k},{l})")));
                }
            }
        }
        Ok(PointMetric { d })
    }

    /// Two points with off-diagonal coupling `t`.
    pub fn two_point(t: C64) -> Self {
        PointMetric { d: DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), t, t, C64::new(0.0, 0.0)]) }
    }

    /// Random instance; each pair is coupled with probability `density`.
    pub fn random(n: usize, density: f64, rng: &mut impl Rng) -> Self {
        let mut d = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
        for k in 0..n {
            for l in k + 1..n {
                if rng.random::<f64>() < density {
                    let z = C64::from_polar(rng.random_range(0.2..3.0), rng.random_range(0.0..std::f64::consts::TAU));
                    d[(k, l)] = z;
                    d[(l, k)] = z;
                }
            }
        }
        PointMetric { d }
    }

    pub fn n(&self) -> usize {
        self.d.nrows()
    }

    pub fn entry(&self, k: usize, l: usize) -> C64 {
        self.d[(k, l)]
    }

    pub fn scaled(&self, c: f64) -> Self {
        PointMetric { d: self.d.map(|z| z * c) }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PointMetricJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.d.len() != j.n || j.d.iter().any(|r| r.len() != j.n) {
            return Err(Error::Parse(format!("expected a {0}×{0} matrix", j.n)));
        }
        let flat: Vec<C64> = j.d.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
        Self::new(DMatrix::from_row_slice(j.n, j.n, &flat))
    }

    pub fn to_json(&self) -> String {
        let n = self.n();
        let d = (0..n).map(|k| (0..n).map(|l| [self.d[(k, l)].re, self.d[(k, l)].im]).collect()).collect();
        serde_json::to_string(&PointMetricJson { n, d }).expect("plain data serializes")
    }

    /// `d_kl = 1/|D_kl|`, infinite when the coupling vanishes.
    pub fn pair_distance(&self, k: usize, l: usize) -> Distance {
        let a = self.d[(k, l)].norm();
        if a == 0.0 {
            Distance::Infinite
        } else {
            Distance::Finite(1.0 / a)
        }
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n();
        let mut e = Vec::new();
        for k in 0..n {
            for l in k + 1..n {
                if let Distance::Finite(w) = self.pair_distance(k, l) {
                    e.push((k, l, w));
                }
            }
        }
        e
    }

    /// `max_{k≠l} |f_k − f_l| / d_kl`.
    pub fn commutator_norm(&self, f: &[C64]) -> f64 {
        let n = self.n();
        let mut best: f64 = 0.0;
        for k in 0..n {
            for l in k + 1..n {
                best = best.max(self.d[(k, l)].norm() * (f[k] - f[l]).norm());
            }
        }
        best
    }

    /// `𝖣` on `⊕_{k<l} ℂ²`.
    pub fn dirac_operator(&self) -> DMatrix<C64> {
        let n = self.n();
        let pairs = n * (n.saturating_sub(1)) / 2;
        let mut m = DMatrix::from_element(2 * pairs, 2 * pairs, C64::new(0.0, 0.0));
        let mut b = 0;
        for k in 0..n {
            for l in k + 1..n {
                m[(2 * b, 2 * b + 1)] = self.d[(k, l)];
                m[(2 * b + 1, 2 * b)] = self.d[(k, l)].conj();
                b += 1;
            }
        }
        m
    }

    /// `π(f)` on `⊕_{k<l} ℂ²`.
    pub fn represent(&self, f: &[C64]) -> DMatrix<C64> {
        let n = self.n();
        let mut diag = Vec::new();
        for k in 0..n {
            for l in k + 1..n {
                diag.push(f[k]);
                diag.push(f[l]);
            }
        }
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    /// Largest singular value of `[𝖣, π(f)]`.
    pub fn commutator_norm_svd(&self, f: &[C64]) -> f64 {
        if self.n() < 2 {
            return 0.0;
        }
        let d = self.dirac_operator();
        let p = self.represent(f);
        let c = &d * &p - &p * &d;
        c.singular_values().max()
    }

    /// `sup |f_i − f_j|` subject to `‖[𝖣, π(f)]‖ ≤ 1`, as a linear program in
    /// real `f` with `f_i = 0`. Returns the value and a maximizing `f`.
    pub fn distance(&self, i: usize, j: usize) -> Result<DistanceResult> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::Index(format!("point out of range 0..{n}")));
        }
        if i == j {
            return Ok(DistanceResult { value: Distance::Finite(0.0), certificate: Some(vec![0.0; n]) });
        }
        let comp = self.component(i);
        if !comp[j] {
            return Ok(DistanceResult { value: Distance::Infinite, certificate: None });
        }
        // variables only on the component of i: the LP is then bounded
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let vars: Vec<_> = (0..n)
            .map(|k| {
                comp[k].then(|| {
                    let obj = if k == j { 1.0 } else { 0.0 };
                    let bounds = if k == i { (0.0, 0.0) } else { (f64::NEG_INFINITY, f64::INFINITY) };
                    lp.add_var(obj, bounds)
                })
            })
            .collect();
        for (k, l, w) in self.edges() {
            if let (Some(a), Some(b)) = (vars[k], vars[l]) {
                lp.add_constraint(&[(a, 1.0), (b, -1.0)], ComparisonOp::Le, w);
                lp.add_constraint(&[(a, 1.0), (b, -1.0)], ComparisonOp::Ge, -w);
            }
        }
        let sol = lp
            .solve()
            .map_err(|e| Error::Index(format!("LP failed: {e}")))?
            .into_solution()
            .map_err(|_| Error::Index("LP interrupted".into()))?;
        let f: Vec<f64> = vars.iter().map(|v| v.map_or(0.0, |v| sol.var_value(v))).collect();
        Ok(DistanceResult { value: Distance::Finite(sol.objective()), certificate: Some(f) })
    }

    /// Points joined to `i` by a chain of nonzero couplings.
    fn component(&self, i: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(k) = stack.pop() {
            for l in 0..self.n() {
                if !seen[l] && self.d[(k, l)].norm() > 0.0 {
                    seen[l] = true;
                    stack.push(l);
                }
            }
        }
        seen
    }

    /// Minimum over simple paths `i → j` of the summed pair distances.
    pub fn distance_by_paths(&self, i: usize, j: usize) -> Distance {
        fn walk(m: &PointMetric, at: usize, to: usize, seen: &mut Vec<bool>, len: f64, best: &mut Option<f64>) {
            if at == to {
                *best = Some(best.map_or(len, |b| b.min(len)));
                return;
            }
            for next in 0..m.n() {
                if seen[next] {
                    continue;
                }
                if let Distance::Finite(w) = m.pair_distance(at, next) {
                    seen[next] = true;
                    walk(m, next, to, seen, len + w, best);
                    seen[next] = false;
                }
            }
        }
        if i == j {
            return Distance::Finite(0.0);
        }
        let mut seen = vec![false; self.n()];
        seen[i] = true;
        let mut best = None;
        walk(self, i, j, &mut seen, 0.0, &mut best);
        best.map_or(Distance::Infinite, Distance::Finite)
    }

    /// All pairwise distances.
    pub fn distance_matrix(&self) -> Result<Vec<Vec<Distance>>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| Ok(self.distance(i, j)?.value)).collect()).collect()
    }
}

/// A supremum with a real function attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: Distance,
    pub certificate: Option<Vec<f64>>,
}

/// `d = 1/|t|` for two points, the closed form.
pub fn two_point_distance(t: C64) -> Distance {
    if t.norm() == 0.0 {
        Distance::Infinite
    } else {
        Distance::Finite(1.0 / t.norm())
    }
}

/// Coupling realizing distance `d` between two points.
pub fn two_point_coupling(d: f64) -> Result<C64> {
    if d <= 0.0 || !d.is_finite() {
        return Err(Error::Index(format!("distance must be positive and finite, got {d}")));
    }
    Ok(C64::new(1.0 / d, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn random_f(n: usize, rng: &mut impl Rng) -> Vec<C64> {
        (0..n).map(|_| C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect()
    }

    #[test]
    fn constant_function_commutes() {
        let m = PointMetric::random(4, 1.0, &mut ChaCha8Rng::seed_from_u64(1));
        let f = vec![c(2.5); 4];
        assert_eq!(m.commutator_norm(&f), 0.0);
        assert!(m.commutator_norm_svd(&f) < 1e-12);
    }

    #[test]
    fn two_point_norm_example() {
        // d_12 = 2, f = (0, 3): ‖[𝖣, π(f)]‖ = 3/2; the singular values of
        // [[0, ½·3], [−½·3, 0]] are both 3/2
        let m = PointMetric::two_point(c(0.5));
        let f = [c(0.0), c(3.0)];
        assert!((m.commutator_norm(&f) - 1.5).abs() < 1e-12);
        assert!((m.commutator_norm_svd(&f) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn formula_matches_svd_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.random_range(2..=5);
            let m = PointMetric::random(n, 0.7, &mut rng);
            let f = random_f(n, &mut rng);
            assert!((m.commutator_norm(&f) - m.commutator_norm_svd(&f)).abs() < 1e-9);
        }
    }

    #[test]
    fn two_point_distance_by_scan() {
        let t = C64::from_polar(0.8, 1.1);
        let m = PointMetric::two_point(t);
        // scan f = (0, s) for the largest admissible s
        let best = (0..=20000)
            .map(|k| k as f64 * 1e-4)
            .filter(|&s| m.commutator_norm(&[c(0.0), c(s)]) <= 1.0)
            .fold(0.0, f64::max);
        let lp = m.distance(0, 1).unwrap().value.finite().unwrap();
        assert!((lp - best).abs() < 1e-3);
        assert!(lp.is_finite() && (lp - 1.25).abs() < 1e-9);
        assert_eq!(two_point_distance(t).finite().map(|x| (x - lp).abs() < 1e-9), Some(true));
    }

    #[test]
    fn zero_coupling_is_infinite() {
        let m = PointMetric::two_point(c(0.0));
        assert_eq!(m.distance(0, 1).unwrap().value, Distance::Infinite);
        assert_eq!(m.distance_by_paths(0, 1), Distance::Infinite);
        assert_eq!(m.distance(1, 1).unwrap().value, Distance::Finite(0.0));
    }

    #[test]
    fn lp_matches_paths_and_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.random_range(2..=5);
            let m = PointMetric::random(n, 0.6, &mut rng);
            for i in 0..n {
                for j in 0..n {
                    let r = m.distance(i, j).unwrap();
                    assert!(r.value.close_to(m.distance_by_paths(i, j), 1e-6), "{i} {j}");
                    if let (Distance::Finite(v), Some(f)) = (r.value, &r.certificate) {
                        let fc: Vec<C64> = f.iter().map(|&x| c(x)).collect();
                        assert!(m.commutator_norm(&fc) <= 1.0 + 1e-9);
                        assert!(((f[j] - f[i]).abs() - v).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn triangle_inequality_and_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.random_range(3..=5);
            let m = PointMetric::random(n, 0.8, &mut rng);
            let d = m.distance_matrix().unwrap();
            let half = m.scaled(2.0).distance_matrix().unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert!(d[i][j].close_to(d[j][i], 1e-9));
                    if let Some(x) = d[i][j].finite() {
                        assert!(half[i][j].close_to(Distance::Finite(x / 2.0), 1e-9));
                    }
                    for k in 0..n {
                        if let (Some(a), Some(b)) = (d[i][k].finite(), d[k][j].finite()) {
                            assert!(d[i][j].finite().unwrap() <= a + b + 1e-9);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let m = PointMetric::random(3, 1.0, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(PointMetric::from_json(&m.to_json()).unwrap(), m);
        assert!(PointMetric::from_json(r#"{"n":2,"d":[[[0,0],[1,0]],[[2,0],[0,0]]]}"#).is_err());
        assert!(PointMetric::from_json(r#"{"n":2,"d":[[[0,0]]]}"#).is_err());
        assert!(two_point_coupling(0.0).is_err());
        let t = two_point_coupling(4.0).unwrap();
        assert_eq!(two_point_distance(t), Distance::Finite(4.0));
    }
}
