//! One-dimensional Gauss rules on [0,1] and deterministic summation.
//!
//! Nodes are roots of the orthonormal Jacobi polynomial, found by Newton
//! iteration with deflation from Chebyshev initial guesses; weights come from
//! the Christoffel identity w_i = 1 / sum_{k<n} p_k(x_i)^2. The Jacobi weight
//! (1-u)^a u^b covers both the plain Legendre rule (a = b = 0) and the radial
//! rules of the ball, where u = r^2 carries weight (1-u)^alpha u^(n-1).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Nodes and weights for integrating f against a weight on [0,1].
#[derive(Debug, Clone)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let vals: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        pairwise_sum(&vals)
    }
}

/// Recurrence coefficients of the orthonormal Jacobi polynomials for the
/// weight (1-x)^a (1+x)^b on [-1,1].
struct JacobiRecurrence {
    alpha: Vec<f64>,
    sqrt_beta: Vec<f64>,
}

impl JacobiRecurrence {
    fn new(n: usize, a: f64, b: f64) -> Self {
        let beta0 =
            ((a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0))
                .exp();
        let mut alpha = Vec::with_capacity(n + 1);
        let mut beta = Vec::with_capacity(n + 1);
        beta.push(beta0);
        for k in 0..=n {
            let kf = k as f64;
            let denom = 2.0 * kf + a + b;
            if k == 0 {
                alpha.push((b - a) / (a + b + 2.0));
            } else {
                alpha.push((b * b - a * a) / (denom * (denom + 2.0)));
            }
            let k1 = kf + 1.0;
            let num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
            let den = (2.0 * k1 + a + b).powi(2) * (2.0 * k1 + a + b + 1.0) * (2.0 * k1 + a + b - 1.0);
            beta.push(num / den);
        }
        JacobiRecurrence {
            alpha,
            sqrt_beta: beta.into_iter().map(f64::sqrt).collect(),
        }
    }

    /// Orthonormal p_n(x) and its derivative.
    fn eval(&self, n: usize, x: f64) -> (f64, f64) {
        let mut pm1 = 0.0;
        let mut dpm1 = 0.0;
        let mut p = 1.0 / self.sqrt_beta[0];
        let mut dp = 0.0;
        for k in 0..n {
            let a = self.alpha[k];
            let sb = self.sqrt_beta[k];
            let sb1 = self.sqrt_beta[k + 1];
            let pn = ((x - a) * p - if k == 0 { 0.0 } else { sb * pm1 }) / sb1;
            let dpn = ((x - a) * dp + p - if k == 0 { 0.0 } else { sb * dpm1 }) / sb1;
            pm1 = p;
            dpm1 = dp;
            p = pn;
            dp = dpn;
        }
        (p, dp)
    }

    /// Christoffel weight at a node: 1 / sum_{k<n} p_k(x)^2.
    fn weight(&self, n: usize, x: f64) -> f64 {
        let mut pm1 = 0.0;
        let mut p = 1.0 / self.sqrt_beta[0];
        let mut acc = p * p;
        for k in 0..n - 1 {
            let pn = ((x - self.alpha[k]) * p - if k == 0 { 0.0 } else { self.sqrt_beta[k] * pm1 })
                / self.sqrt_beta[k + 1];
            pm1 = p;
            p = pn;
            acc += p * p;
        }
        1.0 / acc
    }
}

fn jacobi_rule_sym(n: usize, a: f64, b: f64) -> Rule1d {
    let rec = JacobiRecurrence::new(n, a, b);
    let mut nodes = Vec::with_capacity(n);
    // descending from +1 so deflation sees previously found larger roots
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos();
        if k > 0 {
            x = 0.5 * (x + nodes[k - 1]);
        }
        for _ in 0..200 {
            let (p, dp) = rec.eval(n, x);
            let defl: f64 = nodes.iter().map(|&r| 1.0 / (x - r)).sum();
            let delta = p / (dp - p * defl);
            x -= delta;
            if delta.abs() < 1e-15 {
                break;
            }
        }
        nodes.push(x);
    }
    nodes.reverse();
    let weights = nodes.iter().map(|&x| rec.weight(n, x)).collect();
    Rule1d { nodes, weights }
}

/// Gauss rule for weight (1-u)^a u^b on [0,1].
pub fn gauss_jacobi_01(n: usize, a: f64, b: f64) -> Result<Arc<Rule1d>> {
    if n < 1 {
        return Err(Error::param("nodes", "rule needs at least one node"));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::param("weight", "jacobi exponents must exceed -1"));
    }
    static CACHE: Lazy<Mutex<HashMap<(usize, u64, u64), Arc<Rule1d>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(rule) = CACHE.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let sym = jacobi_rule_sym(n, a, b);
    let scale = 0.5f64.powf(a + b + 1.0);
    let rule = Arc::new(Rule1d {
        nodes: sym.nodes.iter().map(|&x| 0.5 * (x + 1.0)).collect(),
        weights: sym.weights.iter().map(|&w| w * scale).collect(),
    });
    CACHE.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Plain Gauss-Legendre rule on [0,1].
pub fn gauss_legendre_01(n: usize) -> Result<Arc<Rule1d>> {
    gauss_jacobi_01(n, 0.0, 0.0)
}

/// Gauss-Legendre rule on [0, upper].
pub fn gauss_legendre_scaled(n: usize, upper: f64) -> Result<Rule1d> {
    if !(upper > 0.0) || !upper.is_finite() {
        return Err(Error::param("upper", "must be positive and finite"));
    }
    let base = gauss_legendre_01(n)?;
    Ok(Rule1d {
        nodes: base.nodes.iter().map(|&x| x * upper).collect(),
        weights: base.weights.iter().map(|&w| w * upper).collect(),
    })
}

/// Sums in a fixed binary-tree order, independent of how the values were
/// produced, so parallel and serial runs agree bitwise.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Two-level power-law extrapolation v(eps) = v_inf + c eps^kappa through the
/// last three schedule points; returns None when the sequence is not settling.
pub fn power_law_extrapolate(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 3 {
        return None;
    }
    let m = points.len();
    let (e1, v1) = points[m - 3];
    let (e2, v2) = points[m - 2];
    let (e3, v3) = points[m - 1];
    let _ = (e1, e2, e3);
    let d1 = v2 - v1;
    let d2 = v3 - v2;
    if d1 == 0.0 || d2 == 0.0 {
        return Some(v3);
    }
    let ratio = d2 / d1;
    // only trust geometrically contracting sequences
    if !(ratio > 0.0) || ratio >= 0.9 {
        return None;
    }
    Some(v3 + d2 * ratio / (1.0 - ratio))
}
