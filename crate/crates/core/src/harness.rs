//! Executable classifier for the boundedness/compactness criteria, plus
//! empirical operator-norm probes that cross-validate it.
//!
//! The classifier evaluates the analytic side: the p > q criterion integral
//! on the truncation schedule, or the Bloch-type seminorm and its boundary
//! decay for p <= q, with finiteness decided by the 10x growth rule. The
//! probe side pushes normalized test kernels k_p(w,.) through the operator
//! and watches ||T_g k_p(w,.)|| as w approaches the sphere: bounded probes
//! lower-bound the operator norm, decaying probes support compactness.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDirection, Coords, Point};
use crate::holo::{bergman_kernel, default_fractional_m, fractional_kernel, HoloFunction, TgImage};
use crate::quadrature::{
    assess_schedule, bergman_norm_boosted, bloch_seminorm, criterion_integral, decay_profile,
    geometric_shells, radial_rings, CriterionAssessment, PairParams, QuadratureSpec, SpaceParams,
    SupGridSpec, Trend, RMAX_SCHEDULE,
};
use crate::report::{HarnessReport, OrderingEvidence, SCHEMA_VERSION};
use crate::rules::pairwise_sum;

/// Which half of the criterion applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    PGreaterQ,
    PLessEqQ,
}

/// Operator classification; `Compact` implies bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Compact,
    Bounded,
    Unbounded,
    Inconclusive,
}

/// Agreement between the analytic classifier and the empirical probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Consistency {
    Consistent,
    Disagree,
    Inconclusive,
}

/// Relative decay certifying the boundary limit of a shell profile; kept
/// relative so that classification is invariant under scaling the symbol.
pub const COMPACT_DECAY_REL: f64 = 1e-2;

/// Probe profile is "decaying" when the last value drops below this fraction
/// of the first.
pub const PROBE_DECAY_REL: f64 = 0.1;

/// Lower bounds are "growing" when the running max exceeds this multiple of
/// the first value.
pub const PROBE_GROWTH: f64 = 10.0;

/// Absolute probe threshold for a compactness claim at the last schedule
/// point (probes are normalized, so an absolute scale is meaningful).
pub const PROBE_ABS_DECAY: f64 = 1e-2;

/// A quantity that grew past the divergence factor, kept as evidence.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceWitness {
    pub quantity: String,
    pub schedule: Vec<(f64, f64)>,
    pub growth: f64,
}

/// Measured quantities backing a verdict.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Evidence {
    pub criterion: Option<CriterionAssessment>,
    pub seminorm_schedule: Option<Vec<(f64, f64)>>,
    pub decay_shells: Option<Vec<(f64, f64)>>,
    pub decay_slope: Option<f64>,
    pub divergence: Option<DivergenceWitness>,
}

/// Output of the classifier.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub branch: Branch,
    pub gamma: f64,
    pub classification: Classification,
    pub constancy_flag: bool,
    pub evidence: Evidence,
}

fn symbol_is_constant(g: &HoloFunction) -> bool {
    g.polynomial_part().radial_derivative().is_zero()
        && g.kernel_parts().all(|(_, sym)| match sym {
            crate::holo::ClosedSymbol::Log { base }
            | crate::holo::ClosedSymbol::Power { base, .. } => base.norm() == 0.0,
        })
}

/// Classifies T_g between the pair of spaces by the analytic criteria.
pub fn classify(g: &HoloFunction, pair: &PairParams, spec: &QuadratureSpec) -> Result<Verdict> {
    if g.dim() != pair.n() {
        return Err(Error::DimensionMismatch(g.dim(), pair.n()));
    }
    let gamma = pair.gamma_exponent();
    let constancy_flag = pair.constancy_regime() && !symbol_is_constant(g);
    if pair.p() > pair.q() {
        let criterion = criterion_integral(g, pair, spec)?;
        let classification = match criterion.trend {
            // for p > q finiteness of the criterion gives both boundedness
            // and compactness
            Trend::Stable => Classification::Compact,
            Trend::Divergent => Classification::Unbounded,
            Trend::Inconclusive => Classification::Inconclusive,
        };
        let divergence = (criterion.trend == Trend::Divergent).then(|| DivergenceWitness {
            quantity: "criterion_integral".into(),
            schedule: criterion.schedule.clone(),
            growth: growth_factor(&criterion.schedule),
        });
        Ok(Verdict {
            branch: Branch::PGreaterQ,
            gamma,
            classification,
            constancy_flag,
            evidence: Evidence {
                criterion: Some(criterion),
                divergence,
                ..Evidence::default()
            },
        })
    } else {
        let grid = SupGridSpec::for_dim(pair.n());
        let mut seminorm_schedule = Vec::new();
        for &r in RMAX_SCHEDULE.iter() {
            seminorm_schedule.push((r, bloch_seminorm(g, gamma, r, &grid)?.value));
        }
        let trend = assess_schedule(&seminorm_schedule);
        let shells = geometric_shells(0.5, RMAX_SCHEDULE[RMAX_SCHEDULE.len() - 1], 10)?;
        let profile = decay_profile(g, gamma, &shells, &grid)?;
        let peak = profile.points.iter().fold(0.0f64, |m, p| m.max(p.1));
        let last = profile.points.last().map(|p| p.1).unwrap_or(0.0);
        let vanishing = peak == 0.0 || last <= COMPACT_DECAY_REL * peak;
        let classification = match trend {
            Trend::Stable => {
                if vanishing {
                    Classification::Compact
                } else {
                    Classification::Bounded
                }
            }
            Trend::Divergent => Classification::Unbounded,
            Trend::Inconclusive => Classification::Inconclusive,
        };
        let divergence = (trend == Trend::Divergent).then(|| DivergenceWitness {
            quantity: "bloch_seminorm".into(),
            schedule: seminorm_schedule.clone(),
            growth: growth_factor(&seminorm_schedule),
        });
        Ok(Verdict {
            branch: Branch::PLessEqQ,
            gamma,
            classification,
            constancy_flag,
            evidence: Evidence {
                seminorm_schedule: Some(seminorm_schedule),
                decay_shells: Some(profile.points),
                decay_slope: profile.slope,
                divergence,
                ..Evidence::default()
            },
        })
    }
}

fn growth_factor(schedule: &[(f64, f64)]) -> f64 {
    if schedule.len() < 2 {
        return 1.0;
    }
    let first = schedule[0].1.abs().max(1e-300);
    schedule[schedule.len() - 1].1.abs() / first
}

// ---------------------------------------------------------------------------
// boundary schedules
// ---------------------------------------------------------------------------

/// Log-spaced boundary distances 1e-1 down to 1e-3.
pub fn probe_distances(points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points)
        .map(|k| 10f64.powf(-1.0 - 2.0 * k as f64 / (points - 1) as f64))
        .collect()
}

/// Direction maximizing |Rg| on the sphere of radius 1/2, resolved on the
/// sup grid; ties resolve to the first grid direction.
pub fn worst_direction(g: &HoloFunction, grid: &SupGridSpec) -> Result<BoundaryDirection> {
    let rg = g.radial_derivative().evaluator();
    let n = g.dim();
    let r_probe = 0.5;
    if n == 1 {
        let mut best = (f64::NEG_INFINITY, 0.0f64);
        for j in 0..grid.angular {
            let th = 2.0 * std::f64::consts::PI * j as f64 / grid.angular as f64;
            let v = rg.eval(&[Complex64::from_polar(r_probe, th)]).norm();
            if v > best.0 {
                best = (v, th);
            }
        }
        BoundaryDirection::new(vec![Complex64::from_polar(1.0, best.1)])
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
        let mut best: (f64, Option<Coords>) = (f64::NEG_INFINITY, None);
        for _ in 0..grid.sphere {
            let dir = sphere_dir(&mut rng, n);
            let scaled: Coords = dir.iter().map(|c| c * r_probe).collect();
            let v = rg.eval(&scaled).norm();
            if v > best.0 {
                best = (v, Some(dir));
            }
        }
        let dir = best.1.expect("nonempty sphere grid");
        BoundaryDirection::new(dir.into_vec())
    }
}

fn sphere_dir<R: rand::Rng>(rng: &mut R, n: usize) -> Coords {
    loop {
        let raw: Vec<f64> = (0..2 * n)
            .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let norm: f64 = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return raw
                .chunks(2)
                .map(|c| Complex64::new(c[0] / norm, c[1] / norm))
                .collect();
        }
    }
}

/// Points along a boundary ray at the given distances 1 - |w|.
pub fn boundary_ray(dir: &BoundaryDirection, dists: &[f64]) -> Result<Vec<Point>> {
    dists.iter().map(|&d| dir.at_radius(1.0 - d)).collect()
}

// ---------------------------------------------------------------------------
// true operator-image norms
// ---------------------------------------------------------------------------

/// Gauss-Legendre node count that resolves the ray integrand whose nearest
/// singularity sits at t = 1/(r b); calibrated with a safety margin in the
/// convergence tests.
fn ray_nodes(r: f64, base_norm: f64) -> usize {
    let rb = r * base_norm;
    if rb < 0.2 {
        return 64;
    }
    let t0 = 2.0 / rb - 1.0;
    let rho = t0 + (t0 * t0 - 1.0).max(0.0).sqrt();
    let need = (45.0 / rho.ln()).ceil() as usize;
    need.clamp(64, 8192).next_power_of_two()
}

/// ||T_g f||_{A^q_beta} computed from the quadrature image of the operator;
/// angular resolution can be boosted for boundary-peaked integrands.
pub fn tg_image_norm(
    f: &HoloFunction,
    g: &HoloFunction,
    target: &SpaceParams,
    spec: &QuadratureSpec,
    min_angular: usize,
) -> Result<f64> {
    let image = TgImage::new(f, g)?;
    let q = target.p();
    let beta = target.alpha();
    let base_norm = f
        .max_kernel_base_norm()
        .max(g.radial_derivative().max_kernel_base_norm());
    if target.n() == 1 {
        let rings = radial_rings(beta, 1, spec.radial_nodes, None)?;
        let angular = spec.angular_nodes.max(min_angular);
        let dtheta = 2.0 * std::f64::consts::PI / angular as f64;
        let ring_vals: Vec<f64> = rings
            .par_iter()
            .map(|&(u, wgt)| {
                let r = u.sqrt();
                let nodes = ray_nodes(r, base_norm);
                let vals: Vec<f64> = (0..angular)
                    .map(|j| {
                        let th = dtheta * j as f64;
                        let z = [Complex64::from_polar(r, th)];
                        image.eval_with_nodes(&z, nodes).norm_sqr().powf(q / 2.0)
                    })
                    .collect();
                wgt * dtheta * pairwise_sum(&vals)
            })
            .collect();
        let total = pairwise_sum(&ring_vals);
        if !total.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(total.powf(1.0 / q))
    } else {
        let integral = crate::quadrature::integrate_weighted_full(
            |z: &Point| {
                image
                    .eval_with_nodes(z.coords(), ray_nodes(z.norm(), base_norm))
                    .norm_sqr()
                    .powf(q / 2.0)
            },
            target.n(),
            beta,
            spec,
        )?;
        Ok(integral.value.powf(1.0 / q))
    }
}

/// Angular resolution needed to see a boundary peak of width 1-|w|.
fn peak_angular(dist: f64) -> usize {
    ((12.0 / dist.max(1e-6)) as usize).next_power_of_two().min(1 << 17)
}

// ---------------------------------------------------------------------------
// probes
// ---------------------------------------------------------------------------

/// Normalized test kernel for the source space: the reproducing-type kernel
/// for p > 1, the fractional kernel otherwise.
pub fn test_kernel(w: &Point, space: &SpaceParams, m: Option<u32>) -> Result<HoloFunction> {
    if space.p() > 1.0 {
        Ok(bergman_kernel(w, space))
    } else {
        fractional_kernel(w, space, m.unwrap_or_else(|| default_fractional_m(space)))
    }
}

/// One probe point: the boundary distance of w and ||T_g k_p(w,.)||.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbePoint {
    pub w_dist: f64,
    pub value: f64,
}

/// ||T_g k_p(w,.)||_{A^q_beta} along a w-schedule, with k_p normalized in
/// the source space.
pub fn probe_values(
    g: &HoloFunction,
    pair: &PairParams,
    w_schedule: &[Point],
    spec: &QuadratureSpec,
    m: Option<u32>,
) -> Result<Vec<ProbePoint>> {
    if w_schedule.is_empty() {
        return Err(Error::EmptyGrid);
    }
    w_schedule
        .iter()
        .map(|w| {
            let dist = 1.0 - w.norm();
            let min_ang = peak_angular(dist);
            let kernel = test_kernel(w, pair.source(), m)?;
            let knorm = bergman_norm_boosted(&kernel, pair.source(), spec, min_ang)?;
            let tnorm = tg_image_norm(&kernel, g, pair.target(), spec, min_ang)?;
            Ok(ProbePoint {
                w_dist: dist,
                value: tnorm / knorm,
            })
        })
        .collect()
}

/// Operator-norm lower bounds ||T_g k_p(w,.)|| / ||k_p|| = ||T_g k_p(w,.)||,
/// reported as a running maximum along the grid.
pub fn empirical_lower_bound(
    g: &HoloFunction,
    pair: &PairParams,
    w_grid: &[Point],
    spec: &QuadratureSpec,
    m: Option<u32>,
) -> Result<Vec<(f64, f64)>> {
    let probes = probe_values(g, pair, w_grid, spec, m)?;
    let mut best = 0.0f64;
    Ok(probes
        .iter()
        .map(|p| {
            best = best.max(p.value);
            (p.w_dist, best)
        })
        .collect())
}

/// Probe profile along a boundary schedule; decay supports compactness.
pub fn compactness_probe(
    g: &HoloFunction,
    pair: &PairParams,
    w_schedule: &[Point],
    spec: &QuadratureSpec,
    m: Option<u32>,
) -> Result<Vec<(f64, f64)>> {
    Ok(probe_values(g, pair, w_schedule, spec, m)?
        .into_iter()
        .map(|p| (p.w_dist, p.value))
        .collect())
}

// ---------------------------------------------------------------------------
// kernel norm asymptotics
// ---------------------------------------------------------------------------

/// Expected boundary growth exponent of ||K(w,.)||_{A^p_alpha} in powers of
/// (1-|w|^2): -(n+1+alpha)(p-1)/p.
pub fn kernel_norm_growth_exponent(space: &SpaceParams) -> f64 {
    -(space.n() as f64 + 1.0 + space.alpha()) * (space.p() - 1.0) / space.p()
}

/// Expected growth exponent of the fractional kernel norm: (n+1+alpha-m)/p.
pub fn fractional_norm_growth_exponent(space: &SpaceParams, m: u32) -> f64 {
    (space.n() as f64 + 1.0 + space.alpha() - m as f64) / space.p()
}

/// Least-squares fit of log||K(w,.)|| against log(1-|w|^2).
#[derive(Debug, Clone, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub expected: f64,
    /// (1-|w|^2, norm) pairs entering the fit.
    pub points: Vec<(f64, f64)>,
    /// p = 1 with the reproducing-type kernel grows like a log; the fit is
    /// recorded but should not be graded against the power law.
    pub borderline: bool,
}

pub fn kernel_norm_asymptotic(
    space: &SpaceParams,
    w_schedule: &[Point],
    m: Option<u32>,
    spec: &QuadratureSpec,
) -> Result<SlopeFit> {
    if w_schedule.len() < 3 {
        return Err(Error::ScheduleTooShort {
            need: 3,
            got: w_schedule.len(),
        });
    }
    let expected = match m {
        Some(m) => fractional_norm_growth_exponent(space, m),
        None => kernel_norm_growth_exponent(space),
    };
    let points: Result<Vec<(f64, f64)>> = w_schedule
        .iter()
        .map(|w| {
            let kernel = match m {
                Some(m) => fractional_kernel(w, space, m)?,
                None => Ok::<_, Error>(bergman_kernel(w, space))?,
            };
            let min_ang = peak_angular(1.0 - w.norm());
            let nrm = bergman_norm_boosted(&kernel, space, spec, min_ang)?;
            Ok((1.0 - w.norm_sq(), nrm))
        })
        .collect();
    let points = points?;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(SlopeFit {
        slope,
        expected,
        points,
        borderline: expected.abs() < 0.05,
    })
}

// ---------------------------------------------------------------------------
// pointwise lower-bound inequality
// ---------------------------------------------------------------------------

/// Exponent of (1-|w|^2) in the kernel lower bound for p > 1:
/// q + (1-q)(n+1+alpha) + beta - alpha.
pub fn lower_bound_exponent(pair: &PairParams) -> f64 {
    let n1 = pair.n() as f64 + 1.0;
    pair.q() + (1.0 - pair.q()) * (n1 + pair.alpha()) + pair.beta() - pair.alpha()
}

/// Exponent of (1-|w|^2) in the fractional-kernel lower bound for p <= 1:
/// q + n + 1 + beta - m q / p.
pub fn fractional_lower_bound_exponent(pair: &PairParams, m: u32) -> f64 {
    pair.q() + pair.n() as f64 + 1.0 + pair.beta() - m as f64 * pair.q() / pair.p()
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundCheck {
    pub min_ratio: f64,
    /// (|w|, ratio) at each usable grid point.
    pub ratios: Vec<(f64, f64)>,
    pub skipped: usize,
    pub exponent: f64,
}

/// Measures ||T_g K(w,.)||^q / ((1-|w|^2)^E |Rg(w)|^q) over the grid; a
/// strictly positive stable minimum certifies the kernel lower bound
/// empirically. Grid points where Rg vanishes are skipped.
pub fn pointwise_lower_bound_check(
    g: &HoloFunction,
    pair: &PairParams,
    w_grid: &[Point],
    spec: &QuadratureSpec,
    m: Option<u32>,
) -> Result<LowerBoundCheck> {
    let rg = g.radial_derivative();
    let rg_ev = rg.evaluator();
    let q = pair.q();
    let fractional = pair.p() <= 1.0;
    let m_used = if fractional {
        Some(m.unwrap_or_else(|| default_fractional_m(pair.source())))
    } else {
        None
    };
    let exponent = match m_used {
        Some(m) => fractional_lower_bound_exponent(pair, m),
        None => lower_bound_exponent(pair),
    };
    let rg_scale = w_grid
        .iter()
        .map(|w| rg_ev.eval(w.coords()).norm())
        .fold(0.0f64, f64::max);
    let mut ratios = Vec::new();
    let mut skipped = 0usize;
    for w in w_grid {
        let rg_w = rg_ev.eval(w.coords()).norm();
        if rg_w <= 1e-13 * rg_scale.max(1e-300) {
            skipped += 1;
            continue;
        }
        let kernel = match m_used {
            Some(m) => fractional_kernel(w, pair.source(), m)?,
            None => bergman_kernel(w, pair.source()),
        };
        let min_ang = peak_angular(1.0 - w.norm());
        let tnorm = tg_image_norm(&kernel, g, pair.target(), spec, min_ang)?;
        let denom = (1.0 - w.norm_sq()).powf(exponent) * rg_w.powf(q);
        ratios.push((w.norm(), tnorm.powf(q) / denom));
    }
    if ratios.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let min_ratio = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    if min_ratio < 1e-12 {
        return Err(Error::param(
            "lower_bound",
            format!("kernel lower bound violated: min ratio {min_ratio}"),
        ));
    }
    Ok(LowerBoundCheck {
        min_ratio,
        ratios,
        skipped,
        exponent,
    })
}

// ---------------------------------------------------------------------------
// consistency report
// ---------------------------------------------------------------------------

fn probes_bounded(lower_bounds: &[(f64, f64)]) -> bool {
    match (lower_bounds.first(), lower_bounds.last()) {
        (Some(&(_, first)), Some(&(_, last))) => {
            last < PROBE_GROWTH * first.max(1e-300) || last < 1e-12
        }
        _ => true,
    }
}

fn probes_decaying(profile: &[(f64, f64)]) -> bool {
    match (profile.first(), profile.last()) {
        (Some(&(_, first)), Some(&(_, last))) => {
            first < 1e-12 || last <= PROBE_DECAY_REL * first
        }
        _ => false,
    }
}

/// Runs the classifier and the probes and grades their agreement:
/// criterion finite <=> probes bounded, criterion vanishing at the boundary
/// <=> probes decaying.
pub fn consistency_report(
    g: &HoloFunction,
    pair: &PairParams,
    spec: &QuadratureSpec,
) -> Result<HarnessReport> {
    let start = std::time::Instant::now();
    let verdict = classify(g, pair, spec)?;
    let grid = SupGridSpec::for_dim(pair.n());
    let dir = worst_direction(g, &grid)?;
    let dists = probe_distances(5);
    let schedule = boundary_ray(&dir, &dists)?;
    let probes = probe_values(g, pair, &schedule, spec, None)?;
    let probe_profile: Vec<(f64, f64)> = probes.iter().map(|p| (p.w_dist, p.value)).collect();
    let mut best = 0.0f64;
    let lower_bounds: Vec<(f64, f64)> = probes
        .iter()
        .map(|p| {
            best = best.max(p.value);
            (p.w_dist, best)
        })
        .collect();

    let bounded = probes_bounded(&lower_bounds);
    let decaying = probes_decaying(&probe_profile);
    let consistency = match verdict.classification {
        Classification::Inconclusive => Consistency::Inconclusive,
        Classification::Compact => {
            if bounded && decaying {
                Consistency::Consistent
            } else {
                Consistency::Disagree
            }
        }
        Classification::Bounded => {
            if bounded && !decaying {
                Consistency::Consistent
            } else {
                Consistency::Disagree
            }
        }
        Classification::Unbounded => {
            if !bounded {
                Consistency::Consistent
            } else {
                Consistency::Disagree
            }
        }
    };

    // upper proxy from the criterion quantities: the seminorm for p <= q,
    // the criterion value to the power (p-q)/(pq) otherwise
    let upper_proxy = match verdict.branch {
        Branch::PGreaterQ => verdict
            .evidence
            .criterion
            .as_ref()
            .map(|c| {
                let last = c.schedule.last().map(|v| v.1).unwrap_or(0.0);
                last.powf(1.0 / c.outer_exponent)
            })
            .unwrap_or(f64::NAN),
        Branch::PLessEqQ => verdict
            .evidence
            .seminorm_schedule
            .as_ref()
            .and_then(|s| s.last().map(|v| v.1))
            .unwrap_or(f64::NAN),
    };
    let lower_max = lower_bounds.last().map(|v| v.1).unwrap_or(0.0);

    Ok(HarnessReport {
        schema_version: SCHEMA_VERSION,
        symbol_descriptor: g.descriptor(),
        pair: pair.clone(),
        branch: verdict.branch,
        gamma: verdict.gamma,
        criterion_schedule: verdict.evidence.criterion.as_ref().map(|c| c.schedule.clone()),
        seminorm: verdict.evidence.seminorm_schedule.clone(),
        decay_profile: verdict.evidence.decay_shells.clone(),
        lower_bounds,
        probe_profile,
        classification: verdict.classification,
        constancy_flag: verdict.constancy_flag,
        consistency,
        ordering: OrderingEvidence {
            lower_max,
            upper_proxy,
        },
        seed: spec.seed,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair(p: f64, a: f64, q: f64, b: f64) -> PairParams {
        PairParams::new(
            SpaceParams::new(1, p, a).unwrap(),
            SpaceParams::new(1, q, b).unwrap(),
        )
        .unwrap()
    }

    fn z_symbol() -> HoloFunction {
        HoloFunction::coordinate(1, 0)
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn bloch_case_for_z_is_compact() {
        let v = classify(&z_symbol(), &pair(2.0, 0.0, 2.0, 0.0), &spec()).unwrap();
        assert_eq!(v.branch, Branch::PLessEqQ);
        assert_abs_diff_eq!(v.gamma, 1.0);
        assert_eq!(v.classification, Classification::Compact);
        assert!(!v.constancy_flag);
    }

    #[test]
    fn constant_symbols_are_trivially_compact() {
        let g = HoloFunction::constant(1, c(3.0, 1.0));
        for pr in [pair(2.0, 0.0, 2.0, 0.0), pair(2.0, 0.0, 1.0, 0.0), pair(1.0, 1.0, 2.0, 0.0)] {
            let v = classify(&g, &pr, &spec()).unwrap();
            assert_eq!(v.classification, Classification::Compact);
            assert!(!v.constancy_flag, "constants never raise the flag");
        }
    }

    #[test]
    fn cesaro_symbol_is_bounded_not_compact_on_the_bloch_pair() {
        let g = HoloFunction::cesaro_symbol(1);
        let v = classify(&g, &pair(2.0, 0.0, 2.0, 0.0), &spec()).unwrap();
        assert_eq!(v.classification, Classification::Bounded);
    }

    #[test]
    fn negative_gamma_diverges_with_constancy_flag() {
        // p=1,q=2,alpha=1,beta=0: gamma=-1, degenerate regime
        let v = classify(&z_symbol(), &pair(1.0, 1.0, 2.0, 0.0), &spec()).unwrap();
        assert_abs_diff_eq!(v.gamma, -1.0);
        assert_eq!(v.classification, Classification::Unbounded);
        assert!(v.constancy_flag);
        assert!(v.evidence.divergence.is_some());
    }

    #[test]
    fn classification_is_invariant_under_adding_constants_and_scaling() {
        let pr = pair(2.0, 0.0, 2.0, 0.0);
        let g = HoloFunction::cesaro_symbol(1);
        let shifted = g.add(&HoloFunction::constant(1, c(42.0, -3.0))).unwrap();
        let a = classify(&g, &pr, &spec()).unwrap();
        let b = classify(&shifted, &pr, &spec()).unwrap();
        assert_eq!(a.classification, b.classification);
        // seminorm evidence identical: Rg unchanged
        let sa = a.evidence.seminorm_schedule.unwrap();
        let sb = b.evidence.seminorm_schedule.unwrap();
        for (x, y) in sa.iter().zip(&sb) {
            assert_abs_diff_eq!(x.1, y.1, epsilon = 1e-12);
        }
        let scaled = classify(&g.scale(c(5.0, 0.0)), &pr, &spec()).unwrap();
        assert_eq!(a.classification, scaled.classification);
        let ss = scaled.evidence.seminorm_schedule.unwrap();
        for (x, y) in sa.iter().zip(&ss) {
            assert_relative_eq!(5.0 * x.1, y.1, max_relative = 1e-10);
        }
    }

    #[test]
    fn criterion_value_scales_with_the_outer_exponent() {
        let pr = pair(2.0, 0.0, 1.0, 0.0); // outer exponent 2
        let a = classify(&z_symbol(), &pr, &spec()).unwrap();
        let b = classify(&z_symbol().scale(c(3.0, 0.0)), &pr, &spec()).unwrap();
        let ca = a.evidence.criterion.unwrap().schedule;
        let cb = b.evidence.criterion.unwrap().schedule;
        for (x, y) in ca.iter().zip(&cb) {
            assert_relative_eq!(9.0 * x.1, y.1, max_relative = 1e-10);
        }
        assert_eq!(a.classification, b.classification);
    }

    #[test]
    fn ray_node_heuristic_converges_at_the_worst_corner() {
        // sharpest configuration in the suite: base at 0.999, z near the
        // boundary on the aligned ray
        let w = Point::real_1d(0.999).unwrap();
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let kernel = bergman_kernel(&w, &space);
        let g = HoloFunction::power_kernel(
            crate::holo::BasePoint::boundary(&BoundaryDirection::diagonal(1)),
            1.0,
        )
        .unwrap();
        let image = TgImage::new(&kernel, &g).unwrap();
        for &r in &[0.9f64, 0.999, 0.9999] {
            let z = [c(r, 0.0)];
            let n = ray_nodes(r, 0.999);
            let a = image.eval_with_nodes(&z, n);
            let b = image.eval_with_nodes(&z, n * 2);
            assert!(
                (a - b).norm() <= 1e-9 * b.norm().max(1.0),
                "r={r}: nodes {n} insufficient ({:e})",
                (a - b).norm()
            );
        }
    }

    #[test]
    fn tg_norm_matches_series_oracle_for_z_symbol() {
        // g=z, f = K(w,.), target A^2_0: ||T_g K||^2 =
        // pi (-log(1-rho^2) - rho^2)/rho^4 with rho = |w|
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let pair22 = pair(2.0, 0.0, 2.0, 0.0);
        for &rho in &[0.5f64, 0.9] {
            let w = Point::real_1d(rho).unwrap();
            let kernel = bergman_kernel(&w, &space);
            let got = tg_image_norm(&kernel, &z_symbol(), pair22.target(), &spec(), 0).unwrap();
            let rho2 = rho * rho;
            let expect = (std::f64::consts::PI * (-(1.0 - rho2).ln() - rho2) / (rho2 * rho2)).sqrt();
            assert_relative_eq!(got, expect, max_relative = 1e-6);
        }
    }

    #[test]
    fn probe_profile_for_z_decays_like_the_oracle() {
        let pr = pair(2.0, 0.0, 2.0, 0.0);
        let dir = BoundaryDirection::diagonal(1);
        let schedule = boundary_ray(&dir, &[1e-1, 1e-2]).unwrap();
        let probes = probe_values(&z_symbol(), &pr, &schedule, &spec(), None).unwrap();
        // oracle: sqrt(pi(-log(1-rho^2)-rho^2)/rho^4) * (1-rho^2)/sqrt(pi)
        for p in &probes {
            let rho = 1.0 - p.w_dist;
            let rho2 = rho * rho;
            let expect =
                ((-(1.0f64 - rho2).ln() - rho2) / (rho2 * rho2)).sqrt() * (1.0 - rho2);
            assert_relative_eq!(p.value, expect, max_relative = 1e-4);
        }
        assert!(probes[1].value < probes[0].value);
    }

    #[test]
    fn kernel_slopes_match_expected_exponents() {
        let s = spec();
        let dir = BoundaryDirection::diagonal(1);
        let schedule = boundary_ray(&dir, &probe_distances(5)).unwrap();
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let fit = kernel_norm_asymptotic(&space, &schedule, None, &s).unwrap();
        assert!(!fit.borderline);
        assert_relative_eq!(fit.slope, -1.0, max_relative = 0.02);
        // p=1 with the reproducing-type kernel is the borderline log case
        let space1 = SpaceParams::new(1, 1.0, 0.0).unwrap();
        let fit = kernel_norm_asymptotic(&space1, &schedule, None, &s).unwrap();
        assert!(fit.borderline);
        assert!(fit.slope < 0.0 && fit.slope > -0.35, "log-growth slope {}", fit.slope);
        // fractional kernel m=3, p=1: slope -1
        let fit = kernel_norm_asymptotic(&space1, &schedule, Some(3), &s).unwrap();
        assert!(!fit.borderline);
        assert_relative_eq!(fit.slope, -1.0, max_relative = 0.05);
    }

    #[test]
    fn lower_bound_exponent_arithmetic() {
        // p=q=2, alpha=beta=0, n=1: q+(1-q)(n+1+alpha)+beta-alpha = 0
        assert_abs_diff_eq!(lower_bound_exponent(&pair(2.0, 0.0, 2.0, 0.0)), 0.0);
        // p=1, q=2, alpha=1, beta=0, m=5: 2+2+1+0-10 = -5... q+n+1+beta-mq/p
        assert_abs_diff_eq!(
            fractional_lower_bound_exponent(&pair(1.0, 1.0, 2.0, 0.0), 5),
            2.0 + 1.0 + 1.0 + 0.0 - 10.0
        );
    }

    #[test]
    fn lower_bound_check_on_the_bloch_pair() {
        let pr = pair(2.0, 0.0, 2.0, 0.0);
        let grid: Vec<Point> = [0.5, 0.7, 0.9]
            .iter()
            .map(|&r| Point::real_1d(r).unwrap())
            .collect();
        let check = pointwise_lower_bound_check(&z_symbol(), &pr, &grid, &spec(), None).unwrap();
        assert!(check.min_ratio > 0.0);
        assert_eq!(check.skipped, 0);
        // exact oracle: ratio(w) = pi(-log(1-w^2)-w^2)/w^6
        for &(w, ratio) in &check.ratios {
            let w2 = w * w;
            let expect = std::f64::consts::PI * (-(1.0 - w2).ln() - w2) / (w2 * w2 * w2);
            assert_relative_eq!(ratio, expect, max_relative = 1e-4);
        }
    }

    #[test]
    fn lower_bound_check_skips_degenerate_grids() {
        let pr = pair(2.0, 0.0, 2.0, 0.0);
        let grid: Vec<Point> = vec![Point::real_1d(0.5).unwrap()];
        let g0 = HoloFunction::constant(1, c(2.0, 0.0));
        assert!(matches!(
            pointwise_lower_bound_check(&g0, &pr, &grid, &spec(), None),
            Err(Error::EmptyGrid)
        ));
    }

    #[test]
    fn worst_direction_finds_the_singular_ray() {
        let g = HoloFunction::cesaro_symbol(1);
        let dir = worst_direction(&g, &SupGridSpec::default()).unwrap();
        let d = dir.coords()[0];
        assert_relative_eq!(d.re, 1.0, max_relative = 1e-2);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 2e-2);
    }
}
