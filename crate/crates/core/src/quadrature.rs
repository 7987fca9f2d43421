//! Weighted volume integrals on the ball, Bergman norms, the derivative
//! norm, Bloch-type seminorms, and the integral criterion functionals.
//!
//! The weight (1-|z|^2)^alpha dv is handled radially through u = r^2, whose
//! density (1-u)^alpha u^(n-1) is a Jacobi weight: full-ball integrals use a
//! Gauss-Jacobi rule with the weight folded into the rule, so monomial norms
//! come out to machine precision, while truncated-ball integrals (used by the
//! divergence diagnostics) use plain Gauss-Legendre nodes with the weight in
//! the integrand. For n = 1 the angular direction is a uniform grid; for
//! n >= 2 the sphere is sampled by seeded Monte Carlo, stratified in radius
//! with equal-probability strata of the radial density.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta as BetaDist, ContinuousCDF};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::geometry::{mobius, Coords, Point};
use crate::holo::HoloFunction;
use crate::rules::{gauss_jacobi_01, gauss_legendre_scaled, pairwise_sum, power_law_extrapolate};

/// Parameters (n, p, alpha) of a weighted Bergman space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    n: usize,
    p: f64,
    alpha: f64,
}

impl SpaceParams {
    pub fn new(n: usize, p: f64, alpha: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::param("n", "dimension must be >= 1"));
        }
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::param("p", "exponent must lie in (0, inf)"));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::param("alpha", "weight must lie in (-1, inf)"));
        }
        Ok(SpaceParams { n, p, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A source/target pair (A^p_alpha, A^q_beta) on the same ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairParams {
    source: SpaceParams,
    target: SpaceParams,
}

impl PairParams {
    pub fn new(source: SpaceParams, target: SpaceParams) -> Result<Self> {
        if source.n != target.n {
            return Err(Error::DimensionMismatch(source.n, target.n));
        }
        Ok(PairParams { source, target })
    }

    pub fn n(&self) -> usize {
        self.source.n
    }

    pub fn source(&self) -> &SpaceParams {
        &self.source
    }

    pub fn target(&self) -> &SpaceParams {
        &self.target
    }

    pub fn p(&self) -> f64 {
        self.source.p
    }

    pub fn q(&self) -> f64 {
        self.target.p
    }

    pub fn alpha(&self) -> f64 {
        self.source.alpha
    }

    pub fn beta(&self) -> f64 {
        self.target.alpha
    }

    /// gamma = 1 - (n+1+alpha)/p + (n+1+beta)/q, the Bloch-type weight power
    /// governing the p <= q branch.
    pub fn gamma_exponent(&self) -> f64 {
        let n1 = self.n() as f64 + 1.0;
        1.0 - (n1 + self.alpha()) / self.p() + (n1 + self.beta()) / self.q()
    }

    /// True in the degenerate regime where only constant symbols satisfy the
    /// criteria.
    pub fn constancy_regime(&self) -> bool {
        let (p, q) = (self.p(), self.q());
        let (a, b) = (self.alpha(), self.beta());
        let n1 = self.n() as f64 + 1.0;
        if p > q {
            (1.0 + a) / p - (1.0 + b) / q >= 1.0
        } else {
            (n1 + a) / p - (n1 + b) / q > 1.0
        }
    }
}

/// Resolution and reproducibility knobs for the quadrature engines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub r_max: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub mc_samples: usize,
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn new(
        r_max: f64,
        radial_nodes: usize,
        angular_nodes: usize,
        mc_samples: usize,
        seed: u64,
    ) -> Result<Self> {
        let spec = QuadratureSpec {
            r_max,
            radial_nodes,
            angular_nodes,
            mc_samples,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::param("r_max", "truncation radius must lie in (0,1)"));
        }
        if self.radial_nodes < 8 || self.angular_nodes < 8 {
            return Err(Error::param("nodes", "node counts must be >= 8"));
        }
        if self.mc_samples < 8 {
            return Err(Error::param("mc_samples", "sample count must be >= 8"));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Doubled radial and angular resolution, for stability checks.
    pub fn doubled(&self) -> Self {
        QuadratureSpec {
            r_max: self.r_max,
            radial_nodes: self.radial_nodes * 2,
            angular_nodes: self.angular_nodes * 2,
            mc_samples: self.mc_samples * 2,
            seed: self.seed,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            r_max: 0.999,
            radial_nodes: 128,
            angular_nodes: 512,
            mc_samples: 100_000,
            seed: 42,
        }
    }
}

/// Integral value; Monte Carlo engines report their standard error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegralValue {
    pub value: f64,
    pub std_error: Option<f64>,
}

/// Truncation schedule used by all divergence diagnostics.
pub const RMAX_SCHEDULE: [f64; 3] = [0.9, 0.99, 0.999];

/// A truncated quantity growing by this factor across the schedule is
/// flagged divergent.
pub const DIVERGENCE_GROWTH: f64 = 10.0;

/// Relative settling tolerance between the last two schedule values.
pub const STABLE_REL: f64 = 0.25;

/// Diagnosis of a truncated-value schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trend {
    Stable,
    Divergent,
    Inconclusive,
}

/// Applies the growth rule to (r_max, value) pairs sorted by r_max.
pub fn assess_schedule(values: &[(f64, f64)]) -> Trend {
    if values.len() < 2 {
        return Trend::Inconclusive;
    }
    let first = values[0].1;
    let last = values[values.len() - 1].1;
    let prev = values[values.len() - 2].1;
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.1.abs()));
    if scale < 1e-12 {
        return Trend::Stable;
    }
    if last.abs() >= DIVERGENCE_GROWTH * first.abs().max(1e-300) {
        return Trend::Divergent;
    }
    if (last - prev).abs() <= STABLE_REL * prev.abs().max(1e-300) {
        return Trend::Stable;
    }
    Trend::Inconclusive
}

// ---------------------------------------------------------------------------
// engines
// ---------------------------------------------------------------------------

/// Radial nodes (u = r^2) and weights including the 1/2 substitution factor
/// and, for the full-ball rule, the (1-u)^alpha u^(n-1) weight itself.
pub(crate) fn radial_rings(
    alpha: f64,
    n: usize,
    radial_nodes: usize,
    u_max: Option<f64>,
) -> Result<Vec<(f64, f64)>> {
    match u_max {
        None => {
            let rule = gauss_jacobi_01(radial_nodes, alpha, (n - 1) as f64)?;
            Ok(rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&u, &w)| (u, 0.5 * w))
                .collect())
        }
        Some(umax) => {
            if !(umax > 0.0 && umax < 1.0) {
                return Err(Error::param("u_max", "must lie in (0,1)"));
            }
            let rule = gauss_legendre_scaled(radial_nodes, umax)?;
            Ok(rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&u, &w)| {
                    let dens = (1.0 - u).powf(alpha) * u.powi(n as i32 - 1);
                    (u, 0.5 * w * dens)
                })
                .collect())
        }
    }
}

/// Disk integral for n = 1, rayon-parallel over radial rings with a fixed
/// pairwise reduction order.
fn disk_integral<F>(f: F, alpha: f64, radial: usize, angular: usize, u_max: Option<f64>) -> Result<f64>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let rings = radial_rings(alpha, 1, radial, u_max)?;
    let dtheta = 2.0 * std::f64::consts::PI / angular as f64;
    let ring_vals: Vec<f64> = rings
        .par_iter()
        .map(|&(u, w)| {
            let r = u.sqrt();
            let vals: Vec<f64> = (0..angular)
                .map(|j| {
                    let th = dtheta * j as f64;
                    f(Complex64::from_polar(r, th))
                })
                .collect();
            w * dtheta * pairwise_sum(&vals)
        })
        .collect();
    let total = pairwise_sum(&ring_vals);
    if !total.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(total)
}

/// Unweighted surface area of the sphere S^{2n-1}.
fn sphere_area(n: usize) -> f64 {
    // 2 pi^n / (n-1)!
    (2.0f64.ln() + (n as f64) * std::f64::consts::PI.ln() - ln_gamma(n as f64)).exp()
}

fn sample_sphere<R: Rng>(rng: &mut R, n: usize) -> Coords {
    loop {
        let raw: Vec<f64> = (0..2 * n).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
        let norm: f64 = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return raw
                .chunks(2)
                .map(|c| Complex64::new(c[0] / norm, c[1] / norm))
                .collect();
        }
    }
}

/// Ball integral for n >= 2: radius stratified into equal-probability cells
/// of the density u^(n-1)(1-u)^alpha, uniform sampling within each cell with
/// exact density weights, uniform sphere directions.
fn ball_integral_mc<F>(
    f: F,
    n: usize,
    alpha: f64,
    spec: &QuadratureSpec,
    u_max: Option<f64>,
) -> Result<IntegralValue>
where
    F: Fn(&Point) -> f64 + Sync,
{
    let dist = BetaDist::new(n as f64, alpha + 1.0)
        .map_err(|e| Error::param("alpha", format!("invalid radial density: {e}")))?;
    let p_top = u_max.map(|u| dist.cdf(u)).unwrap_or(1.0);
    let strata = spec.radial_nodes.clamp(8, 128);
    let per = (spec.mc_samples / strata).max(2);
    let area = sphere_area(n);
    let mut bounds = Vec::with_capacity(strata + 1);
    bounds.push(0.0f64);
    for k in 1..strata {
        bounds.push(dist.inverse_cdf(p_top * k as f64 / strata as f64));
    }
    bounds.push(u_max.unwrap_or(1.0));

    let per_stratum: Vec<(f64, f64)> = (0..strata)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                spec.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            let (lo, hi) = (bounds[k], bounds[k + 1]);
            let width = hi - lo;
            let mut vals = Vec::with_capacity(per);
            for _ in 0..per {
                let u: f64 = lo + width * rng.gen::<f64>();
                let r = u.sqrt();
                let mut coords = sample_sphere(&mut rng, n);
                for c in coords.iter_mut() {
                    *c *= r;
                }
                let z = Point::new_unchecked(coords);
                let dens = u.powi(n as i32 - 1) * (1.0 - u).powf(alpha);
                vals.push(f(&z) * dens);
            }
            let mean = pairwise_sum(&vals) / per as f64;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (per as f64 * (per as f64 - 1.0));
            (0.5 * area * width * mean, (0.5 * area * width).powi(2) * var)
        })
        .collect();

    let value = pairwise_sum(&per_stratum.iter().map(|s| s.0).collect::<Vec<_>>());
    let var = per_stratum.iter().map(|s| s.1).sum::<f64>();
    if !value.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(IntegralValue {
        value,
        std_error: Some(var.sqrt()),
    })
}

fn integrate_impl<F>(
    f: F,
    n: usize,
    alpha: f64,
    spec: &QuadratureSpec,
    u_max: Option<f64>,
    min_angular: usize,
) -> Result<IntegralValue>
where
    F: Fn(&Point) -> f64 + Sync,
{
    spec.validate()?;
    if !(alpha > -1.0) {
        return Err(Error::param("alpha", "weight must exceed -1"));
    }
    if n == 1 {
        let angular = spec.angular_nodes.max(min_angular);
        let mut scratch = [Complex64::new(0.0, 0.0)];
        let _ = &mut scratch;
        let value = disk_integral(
            |z| {
                let p = Point::new_unchecked(Coords::from_slice(&[z]));
                f(&p)
            },
            alpha,
            spec.radial_nodes,
            angular,
            u_max,
        )?;
        Ok(IntegralValue {
            value,
            std_error: None,
        })
    } else {
        ball_integral_mc(f, n, alpha, spec, u_max)
    }
}

/// Integral of F against (1-|z|^2)^alpha dv over the truncated ball
/// |z| <= spec.r_max.
pub fn integrate_weighted<F>(f: F, n: usize, alpha: f64, spec: &QuadratureSpec) -> Result<IntegralValue>
where
    F: Fn(&Point) -> f64 + Sync,
{
    integrate_impl(f, n, alpha, spec, Some(spec.r_max * spec.r_max), 0)
}

/// Full-ball integral (the r_max -> 1 limit), computed with the weight folded
/// into the radial rule; exact for polynomial radial profiles.
pub fn integrate_weighted_full<F>(
    f: F,
    n: usize,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralValue>
where
    F: Fn(&Point) -> f64 + Sync,
{
    integrate_impl(f, n, alpha, spec, None, 0)
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

/// ||f||_{A^p_alpha} over the full ball.
pub fn bergman_norm(f: &HoloFunction, space: &SpaceParams, spec: &QuadratureSpec) -> Result<f64> {
    norm_of_map(
        |z, ev| ev.eval(z.coords()),
        &f.evaluator(),
        space,
        spec,
        None,
        0,
    )
}

/// ||f||_{A^p_alpha} over |z| <= r_max.
pub fn bergman_norm_truncated(
    f: &HoloFunction,
    space: &SpaceParams,
    spec: &QuadratureSpec,
    r_max: f64,
) -> Result<f64> {
    norm_of_map(
        |z, ev| ev.eval(z.coords()),
        &f.evaluator(),
        space,
        spec,
        Some(r_max * r_max),
        0,
    )
}

/// Full-ball norm with a floor on the angular resolution, for integrands
/// peaked near the boundary.
pub(crate) fn bergman_norm_boosted(
    f: &HoloFunction,
    space: &SpaceParams,
    spec: &QuadratureSpec,
    min_angular: usize,
) -> Result<f64> {
    norm_of_map(
        |z, ev| ev.eval(z.coords()),
        &f.evaluator(),
        space,
        spec,
        None,
        min_angular,
    )
}

fn norm_of_map<E, F>(
    f: F,
    ev: &E,
    space: &SpaceParams,
    spec: &QuadratureSpec,
    u_max: Option<f64>,
    min_angular: usize,
) -> Result<f64>
where
    E: Sync,
    F: Fn(&Point, &E) -> Complex64 + Sync,
{
    let p = space.p();
    let integral = integrate_impl(
        |z| f(z, ev).norm_sqr().powf(p / 2.0),
        space.n(),
        space.alpha(),
        spec,
        u_max,
        min_angular,
    )?;
    Ok(integral.value.powf(1.0 / p))
}

/// Norm assessment with the truncation schedule and divergence verdict.
#[derive(Debug, Clone, Serialize)]
pub struct NormDiagnostic {
    pub schedule: Vec<(f64, f64)>,
    pub trend: Trend,
    /// Full-ball value; meaningful only when the trend is Stable.
    pub value: Option<f64>,
}

/// Runs the norm over the r_max schedule and diagnoses divergence; a quantity
/// is never proven infinite, only flagged when it grows by 10x across the
/// schedule.
pub fn bergman_norm_diagnosed(
    f: &HoloFunction,
    space: &SpaceParams,
    spec: &QuadratureSpec,
) -> Result<NormDiagnostic> {
    let mut schedule = Vec::new();
    for &r in RMAX_SCHEDULE.iter() {
        schedule.push((r, bergman_norm_truncated(f, space, spec, r)?));
    }
    let trend = assess_schedule(&schedule);
    let value = if trend == Trend::Divergent {
        None
    } else {
        Some(bergman_norm(f, space, spec)?)
    };
    Ok(NormDiagnostic {
        schedule,
        trend,
        value,
    })
}

/// |f(0)| + (integral of |Rf|^p (1-|z|^2)^(p+alpha) dv)^(1/p), the derivative
/// norm equivalent to the Bergman norm.
pub fn equivalent_norm(f: &HoloFunction, space: &SpaceParams, spec: &QuadratureSpec) -> Result<f64> {
    let rf = f.radial_derivative();
    let shifted = SpaceParams::new(space.n(), space.p(), space.p() + space.alpha())?;
    let tail = bergman_norm(&rf, &shifted, spec)?;
    Ok(f.value_at_origin().norm() + tail)
}

/// Min/max of the ratio equivalent_norm / bergman_norm over a corpus.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioEnvelope {
    pub lo: f64,
    pub hi: f64,
}

impl RatioEnvelope {
    pub fn width(&self) -> f64 {
        self.hi / self.lo
    }
}

pub fn norm_equivalence_envelope(
    corpus: &[HoloFunction],
    space: &SpaceParams,
    spec: &QuadratureSpec,
) -> Result<RatioEnvelope> {
    if corpus.is_empty() {
        return Err(Error::param("corpus", "must be nonempty"));
    }
    let ratios: Result<Vec<f64>> = corpus
        .par_iter()
        .map(|f| {
            let a = equivalent_norm(f, space, spec)?;
            let b = bergman_norm(f, space, spec)?;
            if b == 0.0 {
                return Err(Error::param("corpus", "zero function in corpus"));
            }
            Ok(a / b)
        })
        .collect();
    let ratios = ratios?;
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
    Ok(RatioEnvelope { lo, hi })
}

// ---------------------------------------------------------------------------
// sup functionals
// ---------------------------------------------------------------------------

/// Grid density for supremum estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupGridSpec {
    pub radial: usize,
    pub angular: usize,
    pub sphere: usize,
    pub refine_iters: usize,
    pub seed: u64,
}

impl Default for SupGridSpec {
    fn default() -> Self {
        SupGridSpec {
            radial: 512,
            angular: 512,
            sphere: 4096,
            refine_iters: 48,
            seed: 7,
        }
    }
}

impl SupGridSpec {
    /// Spec defaults for the ball of dimension n (64 shells x 4096 sphere
    /// points when n >= 2).
    pub fn for_dim(n: usize) -> Self {
        if n == 1 {
            SupGridSpec::default()
        } else {
            SupGridSpec {
                radial: 64,
                ..SupGridSpec::default()
            }
        }
    }
}

/// Supremum estimate with its argmax witness.
#[derive(Debug, Clone, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    pub argmax: Vec<(f64, f64)>,
}

fn weighted_sup_1d<G>(val: &G, gamma: f64, r_lo: f64, r_hi: f64, grid: &SupGridSpec) -> (f64, Complex64)
where
    G: Fn(Complex64) -> f64 + Sync,
{
    let score = |r: f64, th: f64| -> f64 {
        let z = Complex64::from_polar(r, th);
        val(z) * (1.0 - r * r).powf(gamma)
    };
    let best = (0..grid.radial)
        .into_par_iter()
        .map(|i| {
            let r = if grid.radial == 1 {
                r_hi
            } else {
                r_lo + (r_hi - r_lo) * i as f64 / (grid.radial - 1) as f64
            };
            let mut local = (f64::NEG_INFINITY, 0.0f64, 0.0f64);
            for j in 0..grid.angular {
                let th = 2.0 * std::f64::consts::PI * j as f64 / grid.angular as f64;
                let s = score(r, th);
                if s > local.0 {
                    local = (s, r, th);
                }
            }
            local
        })
        .reduce(
            || (f64::NEG_INFINITY, 0.0, 0.0),
            |a, b| if a.0 >= b.0 { a } else { b },
        );
    // local pattern search around the grid argmax
    let (mut sval, mut r, mut th) = best;
    let mut dr = (r_hi - r_lo) / grid.radial.max(2) as f64;
    let mut dth = 2.0 * std::f64::consts::PI / grid.angular as f64;
    for _ in 0..grid.refine_iters {
        let mut improved = false;
        for (cr, cth) in [
            (r + dr, th),
            (r - dr, th),
            (r, th + dth),
            (r, th - dth),
        ] {
            let cr = cr.clamp(r_lo, r_hi);
            let s = score(cr, cth);
            if s > sval {
                sval = s;
                r = cr;
                th = cth;
                improved = true;
            }
        }
        if !improved {
            dr *= 0.5;
            dth *= 0.5;
        }
    }
    (sval, Complex64::from_polar(r, th))
}

fn weighted_sup_nd<G>(
    val: &G,
    gamma: f64,
    n: usize,
    r_lo: f64,
    r_hi: f64,
    grid: &SupGridSpec,
) -> (f64, Coords)
where
    G: Fn(&Point) -> f64 + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let dirs: Vec<Coords> = (0..grid.sphere).map(|_| sample_sphere(&mut rng, n)).collect();
    let best = (0..grid.radial)
        .into_par_iter()
        .map(|i| {
            let r = if grid.radial == 1 {
                r_hi
            } else {
                r_lo + (r_hi - r_lo) * i as f64 / (grid.radial - 1) as f64
            };
            let w = (1.0 - r * r).powf(gamma);
            let mut local: (f64, Option<&Coords>, f64) = (f64::NEG_INFINITY, None, r);
            for d in &dirs {
                let coords: Coords = d.iter().map(|c| c * r).collect();
                let z = Point::new_unchecked(coords);
                let s = val(&z) * w;
                if s > local.0 {
                    local = (s, Some(d), r);
                }
            }
            local
        })
        .reduce(
            || (f64::NEG_INFINITY, None, 0.0),
            |a, b| if a.0 >= b.0 { a } else { b },
        );
    let (mut sval, dir, mut r) = best;
    let dir = dir.cloned().unwrap_or_else(|| {
        let mut c: Coords = std::iter::repeat(Complex64::new(0.0, 0.0)).take(n).collect();
        c[0] = Complex64::new(1.0, 0.0);
        c
    });
    // refine along the fixed best direction
    let mut dr = (r_hi - r_lo) / grid.radial.max(2) as f64;
    for _ in 0..grid.refine_iters {
        let mut improved = false;
        for cr in [r + dr, r - dr] {
            let cr = cr.clamp(r_lo, r_hi);
            let coords: Coords = dir.iter().map(|c| c * cr).collect();
            let s = val(&Point::new_unchecked(coords)) * (1.0 - cr * cr).powf(gamma);
            if s > sval {
                sval = s;
                r = cr;
                improved = true;
            }
        }
        if !improved {
            dr *= 0.5;
        }
    }
    let argmax: Coords = dir.iter().map(|c| c * r).collect();
    (sval, argmax)
}

/// sup over |z| <= r_max of |Rg(z)| (1-|z|^2)^gamma, with the argmax point.
pub fn bloch_seminorm(
    g: &HoloFunction,
    gamma: f64,
    r_max: f64,
    grid: &SupGridSpec,
) -> Result<SupEstimate> {
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::param("r_max", "must lie in (0,1)"));
    }
    let rg = g.radial_derivative().evaluator();
    if g.dim() == 1 {
        let (value, z) = weighted_sup_1d(
            &|z: Complex64| rg.eval(&[z]).norm(),
            gamma,
            0.0,
            r_max,
            grid,
        );
        Ok(SupEstimate {
            value,
            argmax: vec![(z.re, z.im)],
        })
    } else {
        let (value, coords) = weighted_sup_nd(
            &|z: &Point| rg.eval(z.coords()).norm(),
            gamma,
            g.dim(),
            0.0,
            r_max,
            grid,
        );
        Ok(SupEstimate {
            value,
            argmax: coords.iter().map(|c| (c.re, c.im)).collect(),
        })
    }
}

/// Per-shell suprema of |Rg|(1-|z|^2)^gamma and the boundary-decay slope.
#[derive(Debug, Clone, Serialize)]
pub struct DecayProfile {
    /// (shell upper radius, shell supremum)
    pub points: Vec<(f64, f64)>,
    /// Least-squares slope of log sup against log(1-r); positive means the
    /// quantity vanishes at the boundary. None when every shell is zero.
    pub slope: Option<f64>,
}

pub fn decay_profile(
    g: &HoloFunction,
    gamma: f64,
    shells: &[f64],
    grid: &SupGridSpec,
) -> Result<DecayProfile> {
    if shells.len() < 2 {
        return Err(Error::ScheduleTooShort {
            need: 2,
            got: shells.len(),
        });
    }
    if shells.windows(2).any(|w| w[0] >= w[1]) || shells[0] <= 0.0 || shells[shells.len() - 1] >= 1.0
    {
        return Err(Error::param("shells", "must increase strictly inside (0,1)"));
    }
    let rg = g.radial_derivative().evaluator();
    let per_shell = SupGridSpec {
        radial: (grid.radial / shells.len().max(1)).max(4),
        ..grid.clone()
    };
    let mut points = Vec::new();
    let mut fit_x = Vec::new();
    for w in shells.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let value = if g.dim() == 1 {
            weighted_sup_1d(&|z: Complex64| rg.eval(&[z]).norm(), gamma, lo, hi, &per_shell).0
        } else {
            weighted_sup_nd(&|z: &Point| rg.eval(z.coords()).norm(), gamma, g.dim(), lo, hi, &per_shell).0
        };
        points.push((hi, value));
        // geometric-mean boundary distance of the shell, unbiased for
        // geometrically graded shells
        fit_x.push(((1.0 - lo) * (1.0 - hi)).sqrt());
    }
    let usable: Vec<(f64, f64)> = points
        .iter()
        .zip(&fit_x)
        .filter(|((_, v), _)| *v > 0.0)
        .map(|(&(_, v), &x)| (x.ln(), v.ln()))
        .collect();
    let slope = if usable.len() >= 2 {
        let n = usable.len() as f64;
        let sx: f64 = usable.iter().map(|p| p.0).sum();
        let sy: f64 = usable.iter().map(|p| p.1).sum();
        let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        (denom.abs() > 1e-12).then(|| (n * sxy - sx * sy) / denom)
    } else {
        None
    };
    Ok(DecayProfile { points, slope })
}

// ---------------------------------------------------------------------------
// the p > q criterion functional
// ---------------------------------------------------------------------------

/// Radii approaching 1 with geometrically shrinking boundary distance, the
/// natural grading for boundary-decay measurements.
pub fn geometric_shells(r_start: f64, r_end: f64, count: usize) -> Result<Vec<f64>> {
    if !(r_start > 0.0 && r_start < r_end && r_end < 1.0) || count < 2 {
        return Err(Error::param("shells", "need 0 < r_start < r_end < 1 and count >= 2"));
    }
    let ratio = ((1.0 - r_end) / (1.0 - r_start)).powf(1.0 / count as f64);
    Ok((0..=count)
        .map(|k| 1.0 - (1.0 - r_start) * ratio.powi(k as i32))
        .collect())
}

/// Truncated values of the p > q criterion integral with its divergence
/// diagnosis.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionAssessment {
    /// pq/(p-q)
    pub outer_exponent: f64,
    /// 1 - alpha/p + beta/q
    pub weight_power: f64,
    pub schedule: Vec<(f64, f64)>,
    pub trend: Trend,
    pub extrapolated: Option<f64>,
}

/// integral over the truncated ball of
/// (|Rg(z)| (1-|z|^2)^(1-alpha/p+beta/q))^(pq/(p-q)) dv, evaluated on the
/// r_max schedule; requires p > q.
pub fn criterion_integral(
    g: &HoloFunction,
    pair: &PairParams,
    spec: &QuadratureSpec,
) -> Result<CriterionAssessment> {
    let (p, q) = (pair.p(), pair.q());
    if !(p > q) {
        return Err(Error::RequiresPGreaterQ { p, q });
    }
    let outer = p * q / (p - q);
    let kappa = 1.0 - pair.alpha() / p + pair.beta() / q;
    let rg = g.radial_derivative().evaluator();
    let mut schedule = Vec::new();
    for &r in RMAX_SCHEDULE.iter() {
        let min_ang = ((4.0 / (1.0 - r)) as usize).next_power_of_two();
        let val = integrate_impl(
            |z: &Point| {
                let w = (1.0 - z.norm_sq()).powf(kappa);
                (rg.eval(z.coords()).norm() * w).powf(outer)
            },
            pair.n(),
            0.0,
            spec,
            Some(r * r),
            min_ang,
        )?;
        schedule.push((r, val.value));
    }
    let trend = assess_schedule(&schedule);
    let eps_points: Vec<(f64, f64)> = schedule.iter().map(|&(r, v)| (1.0 - r, v)).collect();
    let extrapolated = (trend == Trend::Stable)
        .then(|| power_law_extrapolate(&eps_points))
        .flatten();
    Ok(CriterionAssessment {
        outer_exponent: outer,
        weight_power: kappa,
        schedule,
        trend,
        extrapolated,
    })
}

// ---------------------------------------------------------------------------
// pointwise growth estimate over metric balls
// ---------------------------------------------------------------------------

/// Measured constant for the pointwise growth bound
/// |f(z)| (1-|z|^2)^((n+1+alpha)/p) <= C (integral over D(z,r) of |f|^p dv_alpha)^(1/p).
#[derive(Debug, Clone, Serialize)]
pub struct GrowthCheck {
    pub max_ratio: f64,
    pub ratios: Vec<f64>,
}

pub fn growth_check(
    f: &HoloFunction,
    space: &SpaceParams,
    r: f64,
    sample: &[Point],
    spec: &QuadratureSpec,
) -> Result<GrowthCheck> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::param("r", "metric radius must be positive"));
    }
    if sample.is_empty() {
        return Err(Error::EmptyMetricBall);
    }
    let ev = f.evaluator();
    let n = space.n();
    let p = space.p();
    let alpha = space.alpha();
    let exp_pt = (n as f64 + 1.0 + alpha) / p;
    let rho = r.tanh();
    let ratios: Result<Vec<f64>> = sample
        .iter()
        .map(|center| {
            // integral over D(center, r) via the automorphism pulling the
            // metric ball back to the euclidean ball of radius tanh(r)
            let local = |u: &Point| -> Result<f64> {
                let img = mobius(center, u)?;
                let fz = ev.eval(img.coords()).norm_sqr().powf(p / 2.0);
                let one_m = 1.0 - img.norm_sq();
                let zw = crate::geometry::inner(u, center)?;
                let jac = ((1.0 - center.norm_sq())
                    / (Complex64::new(1.0, 0.0) - zw).norm_sqr())
                .powi(n as i32 + 1);
                Ok(fz * one_m.powf(alpha) * jac)
            };
            let integral = if n == 1 {
                let rings = radial_rings(0.0, 1, spec.radial_nodes.min(64), Some(rho * rho))?;
                let angular = spec.angular_nodes.min(256);
                let dtheta = 2.0 * std::f64::consts::PI / angular as f64;
                let mut ring_vals = Vec::with_capacity(rings.len());
                for &(u, wgt) in &rings {
                    let rr = u.sqrt();
                    let mut vals = Vec::with_capacity(angular);
                    for j in 0..angular {
                        let th = dtheta * j as f64;
                        let pt = Point::new_unchecked(Coords::from_slice(&[
                            Complex64::from_polar(rr, th)
                        ]));
                        vals.push(local(&pt)?);
                    }
                    ring_vals.push(wgt * dtheta * pairwise_sum(&vals));
                }
                pairwise_sum(&ring_vals)
            } else {
                // plain Monte Carlo over the euclidean ball of radius rho
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0xD1B5_4A32_D192_ED03);
                let m = spec.mc_samples.min(20_000).max(1000);
                let vol = std::f64::consts::PI.powi(n as i32) / ln_gamma(n as f64 + 1.0).exp()
                    * rho.powi(2 * n as i32);
                let mut vals = Vec::with_capacity(m);
                for _ in 0..m {
                    let dir = sample_sphere(&mut rng, n);
                    let rad = rho * rng.gen::<f64>().powf(1.0 / (2.0 * n as f64));
                    let coords: Coords = dir.iter().map(|c| c * rad).collect();
                    vals.push(local(&Point::new_unchecked(coords))?);
                }
                vol * pairwise_sum(&vals) / m as f64
            };
            if !(integral > 0.0) || !integral.is_finite() {
                return Err(Error::EmptyMetricBall);
            }
            let lhs = ev.eval(center.coords()).norm() * (1.0 - center.norm_sq()).powf(exp_pt);
            Ok(lhs / integral.powf(1.0 / p))
        })
        .collect();
    let ratios = ratios?;
    let max_ratio = ratios.iter().cloned().fold(0.0f64, f64::max);
    Ok(GrowthCheck { max_ratio, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BoundaryDirection;
    use crate::holo::{BasePoint, Polynomial};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use statrs::function::gamma::ln_gamma;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn monomial_1d(k: u32) -> HoloFunction {
        HoloFunction::from_polynomial(
            Polynomial::monomial(1, vec![k], c(1.0, 0.0)).unwrap(),
        )
    }

    /// pi k! Gamma(alpha+1) / Gamma(k+alpha+2), the squared A^2_alpha norm of
    /// z^k in one variable.
    fn monomial_norm_sq(k: u32, alpha: f64) -> f64 {
        (PI.ln() + ln_gamma(k as f64 + 1.0) + ln_gamma(alpha + 1.0) - ln_gamma(k as f64 + alpha + 2.0))
            .exp()
    }

    #[test]
    fn disk_area_is_pi() {
        let v = integrate_weighted_full(|_| 1.0, 1, 0.0, &spec()).unwrap();
        assert_relative_eq!(v.value, PI, max_relative = 1e-12);
    }

    #[test]
    fn radial_moment_matches_hand_integral() {
        // |z|^2 over the disk: 2 pi / 4
        let v = integrate_weighted_full(|z| z.norm_sq(), 1, 0.0, &spec()).unwrap();
        assert_relative_eq!(v.value, PI / 2.0, max_relative = 1e-12);
        // weight alpha=1: 2 pi int r (1-r^2) dr = pi/2
        let v = integrate_weighted_full(|_| 1.0, 1, 1.0, &spec()).unwrap();
        assert_relative_eq!(v.value, PI / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn truncated_integral_misses_the_tail() {
        let s = spec();
        let v = integrate_weighted(|_| 1.0, 1, 0.0, &s).unwrap();
        assert_relative_eq!(v.value, PI * s.r_max * s.r_max, max_relative = 1e-10);
    }

    #[test]
    fn bergman_norm_of_constants_and_monomials() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let one = HoloFunction::constant(1, c(1.0, 0.0));
        assert_relative_eq!(
            bergman_norm(&one, &space, &spec()).unwrap(),
            PI.sqrt(),
            max_relative = 1e-12
        );
        let z = monomial_1d(1);
        assert_relative_eq!(
            bergman_norm(&z, &space, &spec()).unwrap(),
            (PI / 2.0).sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn monomial_norms_match_gamma_formula() {
        for &alpha in &[0.0, 1.0, 2.5] {
            let space = SpaceParams::new(1, 2.0, alpha).unwrap();
            for k in 0..=10u32 {
                let nrm = bergman_norm(&monomial_1d(k), &space, &spec()).unwrap();
                assert_relative_eq!(
                    nrm * nrm,
                    monomial_norm_sq(k, alpha),
                    max_relative = 1e-10
                );
            }
        }
    }

    #[test]
    fn mc_engine_matches_closed_forms_in_two_variables() {
        let s = spec();
        // volume of B_2
        let v = integrate_weighted_full(|_| 1.0, 2, 0.0, &s).unwrap();
        assert_relative_eq!(v.value, PI * PI / 2.0, max_relative = 2e-2);
        assert!(v.std_error.unwrap() > 0.0);
        // |z1|^2 with weight alpha = 1: pi^2/24
        let v = integrate_weighted_full(|z| z.coords()[0].norm_sqr(), 2, 1.0, &s).unwrap();
        assert_relative_eq!(v.value, PI * PI / 24.0, max_relative = 3e-2);
        assert!((v.value - PI * PI / 24.0).abs() < 5.0 * v.std_error.unwrap() + 1e-4);
    }

    #[test]
    fn mc_engine_is_deterministic_given_seed() {
        let s = spec();
        let a = integrate_weighted_full(|z| z.norm_sq(), 2, 0.5, &s).unwrap();
        let b = integrate_weighted_full(|z| z.norm_sq(), 2, 0.5, &s).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let c = integrate_weighted_full(|z| z.norm_sq(), 2, 0.5, &s.clone().with_seed(43)).unwrap();
        assert_ne!(a.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn equivalent_norm_of_constants_and_z() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let k = HoloFunction::constant(1, c(3.0, -4.0));
        assert_relative_eq!(equivalent_norm(&k, &space, &spec()).unwrap(), 5.0, max_relative = 1e-12);
        // f = z: |f(0)| + (2 pi int r^3 (1-r^2)^2 dr)^(1/2) = sqrt(pi/12)
        let z = monomial_1d(1);
        assert_relative_eq!(
            equivalent_norm(&z, &space, &spec()).unwrap(),
            (PI / 12.0).sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn norm_scales_homogeneously() {
        let mut rng = StdRng::seed_from_u64(21);
        let space = SpaceParams::new(1, 1.5, 0.5).unwrap();
        let f = HoloFunction::from_polynomial(Polynomial::random(&mut rng, 1, 12, 8));
        let nf = bergman_norm(&f, &space, &spec()).unwrap();
        let nf2 = bergman_norm(&f.scale(c(0.0, 2.0)), &space, &spec()).unwrap();
        assert_relative_eq!(nf2, 2.0 * nf, max_relative = 1e-10);
        // equivalence ratio is scale invariant
        let e1 = equivalent_norm(&f, &space, &spec()).unwrap() / nf;
        let e2 = equivalent_norm(&f.scale(c(2.0, 0.0)), &space, &spec()).unwrap() / nf2;
        assert_relative_eq!(e1, e2, max_relative = 1e-10);
    }

    #[test]
    fn gamma_exponent_cases() {
        let pair = |n, p, a, q, b| {
            PairParams::new(
                SpaceParams::new(n, p, a).unwrap(),
                SpaceParams::new(n, q, b).unwrap(),
            )
            .unwrap()
        };
        assert_abs_diff_eq!(pair(1, 2.0, 0.0, 2.0, 0.0).gamma_exponent(), 1.0);
        let p2 = pair(1, 1.0, 1.0, 2.0, 0.0);
        assert_abs_diff_eq!(p2.gamma_exponent(), -1.0);
        assert!(p2.constancy_regime());
        let p3 = pair(2, 2.0, 0.0, 4.0, 1.0);
        assert_abs_diff_eq!(p3.gamma_exponent(), 0.5);
        assert!(!p3.constancy_regime());
    }

    #[test]
    fn bloch_seminorm_of_z() {
        // gamma=1: max r(1-r^2) = 2/(3 sqrt 3)
        let g = monomial_1d(1);
        let est = bloch_seminorm(&g, 1.0, 0.999, &SupGridSpec::default()).unwrap();
        assert_relative_eq!(est.value, 2.0 / (3.0 * 3.0f64.sqrt()), max_relative = 1e-7);
        let r = (est.argmax[0].0.powi(2) + est.argmax[0].1.powi(2)).sqrt();
        assert_relative_eq!(r, 1.0 / 3.0f64.sqrt(), max_relative = 1e-3);
    }

    #[test]
    fn bloch_seminorm_of_cesaro_symbol() {
        // sup |z/(1-z)| (1-|z|^2) on |z| <= 0.999 is r_max (1 + r_max)
        let g = HoloFunction::cesaro_symbol(1);
        let est = bloch_seminorm(&g, 1.0, 0.999, &SupGridSpec::default()).unwrap();
        assert_relative_eq!(est.value, 0.999 * 1.999, max_relative = 1e-6);
        let g0 = HoloFunction::constant(1, c(5.0, 0.0));
        let z0 = bloch_seminorm(&g0, 1.0, 0.999, &SupGridSpec::default()).unwrap();
        assert_abs_diff_eq!(z0.value, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn criterion_integral_of_z() {
        // p=2,q=1,a=b=0, g=z: integral |z|^2 (1-|z|^2)^2 dv = pi/12
        let pair = PairParams::new(
            SpaceParams::new(1, 2.0, 0.0).unwrap(),
            SpaceParams::new(1, 1.0, 0.0).unwrap(),
        )
        .unwrap();
        let out = criterion_integral(&monomial_1d(1), &pair, &spec()).unwrap();
        assert_abs_diff_eq!(out.outer_exponent, 2.0);
        assert_abs_diff_eq!(out.weight_power, 1.0);
        assert_eq!(out.trend, Trend::Stable);
        let last = out.schedule.last().unwrap().1;
        assert_relative_eq!(last, PI / 12.0, max_relative = 1e-4);
        assert_relative_eq!(out.extrapolated.unwrap(), PI / 12.0, max_relative = 1e-6);
    }

    #[test]
    fn criterion_integral_of_cesaro_symbol_is_pi_over_six() {
        let pair = PairParams::new(
            SpaceParams::new(1, 2.0, 0.0).unwrap(),
            SpaceParams::new(1, 1.0, 0.0).unwrap(),
        )
        .unwrap();
        let g = HoloFunction::cesaro_symbol(1);
        let out = criterion_integral(&g, &pair, &spec()).unwrap();
        assert_eq!(out.trend, Trend::Stable);
        assert_relative_eq!(out.schedule.last().unwrap().1, PI / 6.0, max_relative = 2e-3);
    }

    #[test]
    fn criterion_integral_requires_p_greater_than_q() {
        let pair = PairParams::new(
            SpaceParams::new(1, 1.0, 0.0).unwrap(),
            SpaceParams::new(1, 2.0, 0.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            criterion_integral(&monomial_1d(1), &pair, &spec()),
            Err(Error::RequiresPGreaterQ { .. })
        ));
        let g0 = HoloFunction::constant(1, c(1.0, 0.0));
        let pair_ok = PairParams::new(
            SpaceParams::new(1, 2.0, 0.0).unwrap(),
            SpaceParams::new(1, 1.0, 0.0).unwrap(),
        )
        .unwrap();
        let out = criterion_integral(&g0, &pair_ok, &spec()).unwrap();
        assert!(out.schedule.iter().all(|&(_, v)| v.abs() < 1e-14));
        assert_eq!(out.trend, Trend::Stable);
    }

    #[test]
    fn schedules_are_monotone_for_nonnegative_integrands() {
        let g = HoloFunction::cesaro_symbol(1);
        let pair = PairParams::new(
            SpaceParams::new(1, 2.0, 0.0).unwrap(),
            SpaceParams::new(1, 1.0, 0.0).unwrap(),
        )
        .unwrap();
        let out = criterion_integral(&g, &pair, &spec()).unwrap();
        assert!(out.schedule.windows(2).all(|w| w[0].1 <= w[1].1 + 1e-12));
        for gamma in [1.0, 0.5] {
            let a = bloch_seminorm(&g, gamma, 0.9, &SupGridSpec::default()).unwrap();
            let b = bloch_seminorm(&g, gamma, 0.99, &SupGridSpec::default()).unwrap();
            assert!(a.value <= b.value + 1e-12);
        }
    }

    #[test]
    fn decay_profile_distinguishes_little_bloch() {
        // shells start past the interior maximum of r(1-r^2) at 1/sqrt(3)
        let shells = geometric_shells(0.6, 0.999, 9).unwrap();
        let grid = SupGridSpec::default();
        // polynomials decay
        let prof = decay_profile(&monomial_1d(1), 1.0, &shells, &grid).unwrap();
        assert!(prof.points.windows(2).all(|w| w[0].1 >= w[1].1));
        assert!(prof.slope.unwrap() > 0.5);
        // the log kernel tends to 2 along the shells
        let prof = decay_profile(&HoloFunction::cesaro_symbol(1), 1.0, &shells, &grid).unwrap();
        let (last_r, last) = *prof.points.last().unwrap();
        assert_relative_eq!(last, last_r * (1.0 + last_r), max_relative = 1e-3);
        assert!(prof.slope.unwrap().abs() < 0.1);
        // constants give all-zero profiles
        let prof = decay_profile(&HoloFunction::constant(1, c(2.0, 0.0)), 1.0, &shells, &grid).unwrap();
        assert!(prof.points.iter().all(|&(_, v)| v == 0.0));
        assert!(prof.slope.is_none());
    }

    #[test]
    fn growth_check_constants_and_scaling() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let s = spec();
        let sample: Vec<Point> = [0.0, 0.3, 0.6, 0.9]
            .iter()
            .map(|&x| Point::real_1d(x).unwrap())
            .collect();
        let one = HoloFunction::constant(1, c(1.0, 0.0));
        let g1 = growth_check(&one, &space, 1.0, &sample, &s).unwrap();
        assert!(g1.max_ratio.is_finite() && g1.max_ratio > 0.0);
        // scale invariance is exact
        let g2 = growth_check(&one.scale(c(0.0, 7.0)), &space, 1.0, &sample, &s).unwrap();
        for (a, b) in g1.ratios.iter().zip(&g2.ratios) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn growth_check_stabilizes_for_high_degree_monomials() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let s = spec();
        let mut rng = StdRng::seed_from_u64(33);
        let short: Vec<Point> = (0..25)
            .map(|_| crate::geometry::testutil::random_point(&mut rng, 1, 0.95))
            .collect();
        let long: Vec<Point> = short
            .iter()
            .cloned()
            .chain((0..25).map(|_| crate::geometry::testutil::random_point(&mut rng, 1, 0.95)))
            .collect();
        let f = monomial_1d(10);
        let a = growth_check(&f, &space, 1.0, &short, &s).unwrap();
        let b = growth_check(&f, &space, 1.0, &long, &s).unwrap();
        assert!(b.max_ratio >= a.max_ratio);
        assert!(b.max_ratio <= a.max_ratio * 1.5, "max ratio not stable");
    }

    #[test]
    fn equivalence_envelope_is_finite_and_resolution_stable() {
        let mut rng = StdRng::seed_from_u64(5);
        let corpus: Vec<HoloFunction> = (0..20)
            .map(|_| HoloFunction::from_polynomial(Polynomial::random(&mut rng, 1, 15, 10)))
            .collect();
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let s = spec();
        let env = norm_equivalence_envelope(&corpus, &space, &s).unwrap();
        assert!(env.lo > 0.0 && env.hi.is_finite());
        let env2 = norm_equivalence_envelope(&corpus, &space, &s.doubled()).unwrap();
        assert_relative_eq!(env.width(), env2.width(), max_relative = 0.1);
    }

    #[test]
    fn divergence_diagnosis_flags_growth() {
        // ||(1-z)^{-1}||_{A^2_0} diverges like a log: flag is Divergent or
        // Inconclusive, never Stable
        let dir = BoundaryDirection::new(vec![c(1.0, 0.0)]).unwrap();
        let g = HoloFunction::power_kernel(BasePoint::boundary(&dir), 1.0).unwrap();
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let d = bergman_norm_diagnosed(&g, &space, &spec()).unwrap();
        assert_ne!(d.trend, Trend::Stable);
        // while a bounded function is Stable
        let d = bergman_norm_diagnosed(&monomial_1d(3), &space, &spec()).unwrap();
        assert_eq!(d.trend, Trend::Stable);
        assert!(d.value.is_some());
    }

    #[test]
    fn spec_validation() {
        assert!(SpaceParams::new(0, 2.0, 0.0).is_err());
        assert!(SpaceParams::new(1, -1.0, 0.0).is_err());
        assert!(SpaceParams::new(1, 2.0, -1.0).is_err());
        assert!(QuadratureSpec::new(1.0, 128, 512, 1000, 0).is_err());
        assert!(QuadratureSpec::new(0.9, 4, 512, 1000, 0).is_err());
        let a = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let b = SpaceParams::new(2, 2.0, 0.0).unwrap();
        assert!(PairParams::new(a, b).is_err());
    }
}
