//! Bergman-metric lattices with covering/separation/overlap certification,
//! atomic synthesis from scaled power kernels, and the Rademacher/Khinchine
//! machinery.
//!
//! Construction is greedy: a dense candidate grid of the truncated ball
//! (hyperbolically equispaced radii, angles matched to the metric ring
//! length) is scanned boundary-inward after seeding the origin, keeping every
//! candidate at least eta/2 from all accepted nodes. Covering is certified
//! probabilistically by the verifier, never assumed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{inner_raw, Coords, Point};
use crate::holo::{BasePoint, HoloFunction};
use crate::quadrature::SpaceParams;
use crate::rules::pairwise_sum;

/// Squared pseudo-hyperbolic distance |phi_z(w)|^2 via the two-point
/// identity; cheaper than building the automorphism image.
fn pseudo_hyperbolic_sq(z: &[Complex64], w: &[Complex64]) -> f64 {
    let nz: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let nw: f64 = w.iter().map(|c| c.norm_sqr()).sum();
    let zw = inner_raw(z, w);
    let denom = (Complex64::new(1.0, 0.0) - zw).norm_sqr();
    (1.0 - (1.0 - nz) * (1.0 - nw) / denom).max(0.0)
}

/// Certification record filled in by `verify_lattice`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeCert {
    pub covering_ok: bool,
    pub separation_ok: bool,
    pub overlap_max: usize,
    pub probe_count: usize,
    /// Largest probe-to-lattice distance seen, in metric units.
    pub worst_gap: f64,
    /// A probe not covered by any eta-ball, when covering fails.
    pub covering_witness: Option<Vec<(f64, f64)>>,
}

/// An eta-lattice of the truncated ball.
#[derive(Debug, Clone)]
pub struct Lattice {
    eta: f64,
    r_max: f64,
    nodes: Vec<Point>,
    cert: Option<LatticeCert>,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    eta: f64,
    r_max: f64,
    nodes: Vec<Vec<(f64, f64)>>,
    cert: Option<LatticeCert>,
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson {
            eta: self.eta,
            r_max: self.r_max,
            nodes: self
                .nodes
                .iter()
                .map(|p| p.coords().iter().map(|c| (c.re, c.im)).collect())
                .collect(),
            cert: self.cert.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LatticeJson::deserialize(d)?;
        let nodes: std::result::Result<Vec<Point>, _> = raw
            .nodes
            .iter()
            .map(|cs| {
                Point::new(cs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
                    .map_err(serde::de::Error::custom)
            })
            .collect();
        Ok(Lattice {
            eta: raw.eta,
            r_max: raw.r_max,
            nodes: nodes?,
            cert: raw.cert,
        })
    }
}

impl Lattice {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn cert(&self) -> Option<&LatticeCert> {
        self.cert.as_ref()
    }

    /// Used by negative-control tests to break the separation invariant.
    pub fn push_node_unchecked(&mut self, node: Point) {
        self.nodes.push(node);
        self.cert = None;
    }
}

/// Band index over hyperbolic radius: only nodes whose radial band is within
/// the query distance can be within that distance.
struct BandIndex {
    band_width: f64,
    bands: Vec<Vec<usize>>,
}

impl BandIndex {
    fn new(band_width: f64) -> Self {
        BandIndex {
            band_width,
            bands: Vec::new(),
        }
    }

    fn band_of(&self, t: f64) -> usize {
        (t / self.band_width) as usize
    }

    fn insert(&mut self, t: f64, id: usize) {
        let b = self.band_of(t);
        if b >= self.bands.len() {
            self.bands.resize(b + 1, Vec::new());
        }
        self.bands[b].push(id);
    }

    /// Visits candidates in bands within `dist` of t; returns early when the
    /// visitor reports a hit.
    fn any_within<F: FnMut(usize) -> bool>(&self, t: f64, dist: f64, mut f: F) -> bool {
        let span = (dist / self.band_width).ceil() as usize + 1;
        let center = self.band_of(t);
        let lo = center.saturating_sub(span);
        let hi = (center + span).min(self.bands.len().saturating_sub(1));
        for b in lo..=hi {
            if self.bands.get(b).is_some_and(|ids| ids.iter().rev().any(|&id| f(id))) {
                return true;
            }
        }
        false
    }

    fn count_within<F: FnMut(usize) -> bool>(&self, t: f64, dist: f64, mut f: F) -> usize {
        let span = (dist / self.band_width).ceil() as usize + 1;
        let center = self.band_of(t);
        let lo = center.saturating_sub(span);
        let hi = (center + span).min(self.bands.len().saturating_sub(1));
        let mut count = 0;
        for b in lo..=hi {
            if let Some(ids) = self.bands.get(b) {
                count += ids.iter().filter(|&&id| f(id)).count();
            }
        }
        count
    }
}

/// Greedy maximal eta/2-separated subset of a dense candidate grid of the
/// ball |z| <= r_max, scanned boundary-inward after seeding the origin.
///
/// `candidate_density` >= 2 controls the grid pitch eta/(2*density); below 2
/// the grid cannot be fine enough for the covering radius eta and the call is
/// rejected rather than silently accepted.
pub fn build_lattice(eta: f64, r_max: f64, n: usize, candidate_density: usize) -> Result<Lattice> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::param("eta", "must lie in (0,1]"));
    }
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::param("r_max", "must lie in (0,1)"));
    }
    if n < 1 {
        return Err(Error::param("n", "dimension must be >= 1"));
    }
    if candidate_density < 2 {
        return Err(Error::CandidatesTooSparse(format!(
            "candidate_density = {candidate_density} < 2 cannot certify an eta-covering"
        )));
    }
    let delta = eta / (2.0 * candidate_density as f64);
    let t_max = r_max.atanh();
    let mut candidates: Vec<Coords> = Vec::new();
    let mut ring = 1usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A77_1CE5);
    while ring as f64 * delta <= t_max {
        let t = ring as f64 * delta;
        let r = t.tanh();
        if n == 1 {
            let m = ((2.0 * std::f64::consts::PI * r / ((1.0 - r * r) * delta)).ceil() as usize)
                .max(1);
            for j in 0..m {
                let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                candidates.push(Coords::from_slice(&[Complex64::from_polar(r, th)]));
            }
        } else {
            // tangential metric scale is (1-r^2)^(-1/2); oversample the
            // deterministic covering estimate 4x since directions are random
            let eps = delta * (1.0 - r * r).sqrt();
            let dim_s = 2 * n - 1;
            let area = (2.0f64.ln() + (n as f64) * std::f64::consts::PI.ln()
                - statrs::function::gamma::ln_gamma(n as f64))
            .exp();
            let cap = area / eps.powi(dim_s as i32);
            let m = ((4.0 * cap).ceil() as usize).clamp(8, 4_000_000);
            for _ in 0..m {
                let dir = sample_sphere_coords(&mut rng, n);
                candidates.push(dir.iter().map(|c| c * r).collect());
            }
        }
        ring += 1;
    }
    // boundary-inward scan
    candidates.sort_by(|a, b| {
        let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
        nb.partial_cmp(&na).unwrap()
    });

    let sep = (eta / 2.0).tanh();
    let sep_sq = sep * sep;
    let mut nodes: Vec<Coords> = vec![std::iter::repeat(Complex64::new(0.0, 0.0))
        .take(n)
        .collect()];
    let mut index = BandIndex::new(eta / 2.0);
    index.insert(0.0, 0);
    for cand in candidates {
        let t = {
            let nc: f64 = cand.iter().map(|c| c.norm_sqr()).sum();
            nc.sqrt().atanh()
        };
        let blocked = index.any_within(t, eta / 2.0, |id| {
            pseudo_hyperbolic_sq(&nodes[id], &cand) < sep_sq
        });
        if !blocked {
            index.insert(t, nodes.len());
            nodes.push(cand);
        }
    }
    Ok(Lattice {
        eta,
        r_max,
        nodes: nodes.into_iter().map(Point::new_unchecked).collect(),
        cert: None,
    })
}

fn sample_sphere_coords<R: Rng>(rng: &mut R, n: usize) -> Coords {
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

/// Certifies the lattice: covering on random probes of the truncated ball,
/// exhaustive eta/4-disjointness, and the measured overlap count of the
/// 2-eta balls.
pub fn verify_lattice(lat: &Lattice, probe_count: usize, seed: u64) -> Result<LatticeCert> {
    if lat.is_empty() {
        return Err(Error::param("lattice", "no nodes"));
    }
    let eta = lat.eta;
    let n = lat.nodes[0].dim();
    // separation: eta/4-balls around distinct nodes are disjoint iff node
    // distances are >= eta/2
    let sep_sq = (eta / 2.0).tanh().powi(2);
    let separation_ok = (0..lat.nodes.len()).into_par_iter().all(|i| {
        (i + 1..lat.nodes.len()).all(|j| {
            pseudo_hyperbolic_sq(lat.nodes[i].coords(), lat.nodes[j].coords())
                >= sep_sq * (1.0 - 1e-12)
        })
    });

    let mut index = BandIndex::new(eta.max(0.05));
    for (id, node) in lat.nodes.iter().enumerate() {
        index.insert(node.norm().atanh(), id);
    }
    let cover = eta.tanh();
    let cover_sq = cover * cover;
    let two_eta = (2.0 * eta).tanh();
    let two_eta_sq = two_eta * two_eta;
    let t_max = lat.r_max.atanh();

    let results: Vec<(f64, usize, Option<Vec<(f64, f64)>>)> = (0..probe_count)
        .into_par_iter()
        .map(|k| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            // hyperbolically uniform radius probes the boundary shells hard
            let t = rng.gen::<f64>() * t_max;
            let r = t.tanh();
            let coords: Coords = if n == 1 {
                let th = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
                Coords::from_slice(&[Complex64::from_polar(r, th)])
            } else {
                sample_sphere_coords(&mut rng, n)
                    .iter()
                    .map(|c| c * r)
                    .collect()
            };
            let mut best = f64::INFINITY;
            index.any_within(t, eta, |id| {
                let d = pseudo_hyperbolic_sq(lat.nodes[id].coords(), &coords);
                best = best.min(d);
                false
            });
            let overlap = index.count_within(t, 2.0 * eta, |id| {
                pseudo_hyperbolic_sq(lat.nodes[id].coords(), &coords) < two_eta_sq
            });
            let witness = (best >= cover_sq)
                .then(|| coords.iter().map(|c| (c.re, c.im)).collect());
            (best, overlap, witness)
        })
        .collect();

    let mut worst = 0.0f64;
    let mut overlap_max = 0usize;
    let mut covering_witness = None;
    for (best, overlap, witness) in results {
        worst = worst.max(best);
        overlap_max = overlap_max.max(overlap);
        if covering_witness.is_none() {
            covering_witness = witness;
        }
    }
    Ok(LatticeCert {
        covering_ok: covering_witness.is_none(),
        separation_ok,
        overlap_max,
        probe_count,
        worst_gap: worst.sqrt().atanh(),
        covering_witness,
    })
}

/// Builds and certifies in one step, storing the cert on the lattice.
pub fn build_certified_lattice(
    eta: f64,
    r_max: f64,
    n: usize,
    candidate_density: usize,
    probe_count: usize,
    seed: u64,
) -> Result<Lattice> {
    let mut lat = build_lattice(eta, r_max, n, candidate_density)?;
    let cert = verify_lattice(&lat, probe_count, seed)?;
    lat.cert = Some(cert);
    Ok(lat)
}

/// Hyperbolic area of |z| < r in one complex variable (metric |dz|/(1-|z|^2)).
pub fn hyperbolic_area(r: f64) -> f64 {
    std::f64::consts::PI * r * r / (1.0 - r * r)
}

/// Area-based node count prediction: truncated-ball area divided by the area
/// pi sinh(eta/4)^2 of the disjointness balls each node owns.
pub fn predicted_node_count(eta: f64, r_max: f64) -> f64 {
    hyperbolic_area(r_max) / (std::f64::consts::PI * (eta / 4.0).sinh().powi(2))
}

// ---------------------------------------------------------------------------
// atoms
// ---------------------------------------------------------------------------

/// Strict lower bound n max(1, 1/p) + (1+alpha)/p for the atom exponent.
pub fn atom_exponent_bound(space: &SpaceParams) -> f64 {
    let p = space.p();
    space.n() as f64 * 1.0f64.max(1.0 / p) + (1.0 + space.alpha()) / p
}

/// Default atom exponent: the bound rounded up, plus one.
pub fn default_atom_exponent(space: &SpaceParams) -> f64 {
    atom_exponent_bound(space).ceil() + 1.0
}

/// The normalized kernel atom
/// (1-|z_j|^2)^((pb-n-1-alpha)/p) (1-<z,z_j>)^{-b} at a lattice node.
pub fn atom(node: &Point, b: f64, space: &SpaceParams) -> Result<HoloFunction> {
    let bound = atom_exponent_bound(space);
    if !(b > bound) {
        return Err(Error::InadmissibleAtomExponent { b, bound });
    }
    let p = space.p();
    let scale_exp = (p * b - space.n() as f64 - 1.0 - space.alpha()) / p;
    let scale = (1.0 - node.norm_sq()).powf(scale_exp);
    Ok(HoloFunction::power_kernel(BasePoint::interior(node), b)?
        .scale(Complex64::new(scale, 0.0)))
}

/// Coefficient sequence for atomic synthesis, carrying its l^p exponent.
#[derive(Debug, Clone, Serialize)]
pub struct AtomCoefficients {
    pub values: Vec<(f64, f64)>,
    pub p: f64,
}

impl AtomCoefficients {
    pub fn new(values: Vec<Complex64>, p: f64) -> Result<Self> {
        if !(p > 0.0) {
            return Err(Error::param("p", "sequence exponent must be positive"));
        }
        Ok(AtomCoefficients {
            values: values.iter().map(|c| (c.re, c.im)).collect(),
            p,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn lp_norm(&self) -> f64 {
        let s: f64 = self
            .values
            .iter()
            .map(|&(re, im)| (re * re + im * im).powf(self.p / 2.0))
            .sum();
        s.powf(1.0 / self.p)
    }
}

/// f = sum_j c_j atom_j over the lattice nodes.
pub fn synthesize(
    coeffs: &AtomCoefficients,
    lat: &Lattice,
    b: f64,
    space: &SpaceParams,
) -> Result<HoloFunction> {
    if coeffs.len() != lat.len() {
        return Err(Error::LengthMismatch {
            got: coeffs.len(),
            expected: lat.len(),
        });
    }
    let n = space.n();
    let mut acc = HoloFunction::constant(n, Complex64::new(0.0, 0.0));
    for (&(re, im), node) in coeffs.values.iter().zip(lat.nodes()) {
        let c = Complex64::new(re, im);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc = acc.add(&atom(node, b, space)?.scale(c))?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Rademacher system and Khinchine averages
// ---------------------------------------------------------------------------

/// r_j(t) = r_0(2^j t) with r_0 = +1 on [0,1/2) and -1 on [1/2,1) of the
/// fractional part.
pub fn rademacher(j: u32, t: f64) -> i8 {
    let x = t * (2.0f64).powi(j as i32);
    let frac = x - x.floor();
    if frac < 0.5 {
        1
    } else {
        -1
    }
}

/// Largest coefficient count handled by exact sign enumeration.
pub const KHINCHINE_EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KhinchineValue {
    /// integral over [0,1] of |sum c_j r_j(t)|^p dt
    pub value: f64,
    pub exact: bool,
    pub std_error: Option<f64>,
}

/// Exact average of |sum_j eps_j c_j|^p over all sign vectors; the Rademacher
/// functions are constant on dyadic intervals and realize each sign pattern
/// with equal measure, so this is the integral itself.
pub fn khinchine_integral(c: &[Complex64], p: f64) -> Result<KhinchineValue> {
    if c.is_empty() {
        return Err(Error::param("c", "need at least one coefficient"));
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::param("p", "exponent must lie in (0, inf)"));
    }
    let m = c.len();
    if m > KHINCHINE_EXACT_LIMIT {
        return khinchine_integral_mc(c, p, 1 << 20, 0x5EED_5EED);
    }
    let total_patterns = 1u64 << m;
    let mut signs = vec![1.0f64; m];
    let mut sum: Complex64 = c.iter().sum();
    // Kahan accumulator; the enumeration is long enough for naive summation
    // drift to matter at the 1e-12 scale
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    let add = |acc: &mut f64, comp: &mut f64, v: f64| {
        let y = v - *comp;
        let t = *acc + y;
        *comp = (t - *acc) - y;
        *acc = t;
    };
    add(&mut acc, &mut comp, sum.norm_sqr().powf(p / 2.0));
    for k in 1..total_patterns {
        let bit = k.trailing_zeros() as usize;
        signs[bit] = -signs[bit];
        sum += 2.0 * signs[bit] * c[bit];
        if k & 0xFFF == 0 {
            // resynchronize against incremental rounding drift
            sum = c
                .iter()
                .zip(&signs)
                .map(|(cj, &s)| s * cj)
                .sum();
        }
        add(&mut acc, &mut comp, sum.norm_sqr().powf(p / 2.0));
    }
    Ok(KhinchineValue {
        value: acc / total_patterns as f64,
        exact: true,
        std_error: None,
    })
}

/// Monte Carlo fallback over random sign vectors for long sequences.
pub fn khinchine_integral_mc(
    c: &[Complex64],
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<KhinchineValue> {
    if c.is_empty() {
        return Err(Error::param("c", "need at least one coefficient"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vals: Vec<f64> = (0..samples)
        .map(|_| {
            let sum: Complex64 = c
                .iter()
                .map(|cj| if rng.gen::<bool>() { *cj } else { -cj })
                .sum();
            sum.norm_sqr().powf(p / 2.0)
        })
        .collect();
    let mean = pairwise_sum(&vals) / samples as f64;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (samples as f64 * (samples as f64 - 1.0));
    Ok(KhinchineValue {
        value: mean,
        exact: false,
        std_error: Some(var.sqrt()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::bergman_distance;
    use crate::quadrature::{bergman_norm, QuadratureSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_ball_covers_small_truncations() {
        // eta/2 >= atanh(r_max): every candidate is within eta/2 of the origin
        let r_max = 0.3f64;
        let eta = (2.0 * r_max.atanh() + 0.1).min(1.0);
        let lat = build_lattice(eta, r_max, 1, 4).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.nodes()[0].norm(), 0.0);
        let cert = verify_lattice(&lat, 2000, 1).unwrap();
        assert!(cert.covering_ok);
        assert!(cert.separation_ok);
        assert_eq!(cert.overlap_max, 1);
    }

    #[test]
    fn greedy_nodes_are_separated() {
        let lat = build_lattice(0.5, 0.9, 1, 4).unwrap();
        assert!(lat.len() > 10);
        for i in 0..lat.len() {
            for j in i + 1..lat.len() {
                let d = bergman_distance(&lat.nodes()[i], &lat.nodes()[j]).unwrap();
                assert!(d >= 0.25 - 1e-9, "violation {d} at ({i},{j})");
            }
        }
    }

    #[test]
    fn verification_certifies_moderate_lattice() {
        let lat = build_lattice(0.5, 0.9, 1, 4).unwrap();
        let cert = verify_lattice(&lat, 20_000, 2).unwrap();
        assert!(cert.covering_ok, "worst gap {}", cert.worst_gap);
        assert!(cert.separation_ok);
        assert!(cert.overlap_max >= 1);
        assert!(cert.worst_gap < 0.5);
    }

    #[test]
    fn duplicate_node_breaks_separation() {
        let mut lat = build_lattice(0.5, 0.9, 1, 4).unwrap();
        let dup = lat.nodes()[3].clone();
        lat.push_node_unchecked(dup);
        let cert = verify_lattice(&lat, 1000, 3).unwrap();
        assert!(!cert.separation_ok);
    }

    #[test]
    fn two_variable_lattice_certifies_at_desk_scale() {
        let lat = build_lattice(1.0, 0.5, 2, 2).unwrap();
        assert!(lat.len() > 1);
        let cert = verify_lattice(&lat, 5000, 4).unwrap();
        assert!(cert.covering_ok, "worst gap {}", cert.worst_gap);
        assert!(cert.separation_ok);
    }

    #[test]
    fn node_count_tracks_hyperbolic_area() {
        let lat = build_lattice(0.5, 0.9, 1, 4).unwrap();
        let ratio = lat.len() as f64 / predicted_node_count(0.5, 0.9);
        assert!(
            (0.5..2.0).contains(&ratio),
            "count {} prediction {}",
            lat.len(),
            predicted_node_count(0.5, 0.9)
        );
    }

    #[test]
    fn lattice_build_is_deterministic() {
        let a = build_lattice(0.7, 0.85, 1, 3).unwrap();
        let b = build_lattice(0.7, 0.85, 1, 3).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.nodes().iter().zip(b.nodes()) {
            assert_eq!(x.coords()[0].re.to_bits(), y.coords()[0].re.to_bits());
        }
        let json = serde_json::to_string(&a).unwrap();
        let back: Lattice = serde_json::from_str(&json).unwrap();
        assert_eq!(back.len(), a.len());
        assert_abs_diff_eq!(back.eta(), a.eta());
    }

    #[test]
    fn kernel_pairing_stays_comparable_on_metric_balls() {
        // |1 - <z, z_j>| / (1 - |z_j|^2) = 1/|1 - u conj(z_j)| on
        // z = phi_{z_j}(u), |u| < tanh(2 eta); envelope is
        // [(1+rho)^{-1}, (1-rho)^{-1}] with rho = tanh(2 eta)
        let eta = 0.5f64;
        let rho = (2.0 * eta).tanh();
        let mut rng = StdRng::seed_from_u64(8);
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for &rj in &[0.0, 0.4, 0.8, 0.95, 0.99] {
            let zj = Point::real_1d(rj).unwrap();
            for _ in 0..400 {
                let u = crate::geometry::testutil::random_point(&mut rng, 1, rho);
                let z = crate::geometry::mobius(&zj, &u).unwrap();
                let zw = crate::geometry::inner(&z, &zj).unwrap();
                let ratio = (c64(1.0, 0.0) - zw).norm() / (1.0 - zj.norm_sq());
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        assert!(lo >= 1.0 / (1.0 + rho) - 1e-9);
        assert!(hi <= 1.0 / (1.0 - rho) + 1e-9);
        assert!(hi / lo <= (1.0 + rho) / (1.0 - rho) + 1e-6);
    }

    #[test]
    fn atom_at_origin_is_constant_one() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let a = atom(&Point::origin(1), 2.0, &space).unwrap();
        let z = Point::real_1d(0.37).unwrap();
        assert_abs_diff_eq!(a.eval(&z).unwrap().re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn atom_scale_matches_hand_value() {
        // n=1, p=2, alpha=0, b=2: bound 1.5, atom(0.5) at z=0 is 0.75
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        assert_abs_diff_eq!(atom_exponent_bound(&space), 1.5);
        assert_abs_diff_eq!(default_atom_exponent(&space), 3.0);
        let a = atom(&Point::real_1d(0.5).unwrap(), 2.0, &space).unwrap();
        assert_abs_diff_eq!(a.eval(&Point::origin(1)).unwrap().re, 0.75, epsilon = 1e-14);
        assert!(matches!(
            atom(&Point::origin(1), 1.5, &space),
            Err(Error::InadmissibleAtomExponent { .. })
        ));
    }

    #[test]
    fn atom_norms_stay_level_toward_the_boundary() {
        // b=2, p=2, alpha=0 makes the A^2 norm exactly sqrt(pi) at every node
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let spec = QuadratureSpec {
            angular_nodes: 4096,
            ..QuadratureSpec::default()
        };
        for &rj in &[0.0, 0.3, 0.6, 0.9, 0.97] {
            let a = atom(&Point::real_1d(rj).unwrap(), 2.0, &space).unwrap();
            let nrm = bergman_norm(&a, &space, &spec).unwrap();
            assert_relative_eq!(nrm, PI.sqrt(), max_relative = 2e-3);
        }
    }

    #[test]
    fn synthesis_degenerate_cases() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let lat = build_lattice(0.8, 0.6, 1, 3).unwrap();
        let zeros = AtomCoefficients::new(vec![c64(0.0, 0.0); lat.len()], 2.0).unwrap();
        let f = synthesize(&zeros, &lat, 2.0, &space).unwrap();
        assert_abs_diff_eq!(f.eval(&Point::real_1d(0.5).unwrap()).unwrap().norm(), 0.0);

        // single unit coefficient at the origin node gives the constant 1
        let mut vals = vec![c64(0.0, 0.0); lat.len()];
        vals[0] = c64(1.0, 0.0);
        let one = AtomCoefficients::new(vals, 2.0).unwrap();
        let f = synthesize(&one, &lat, 2.0, &space).unwrap();
        assert_abs_diff_eq!(f.eval(&Point::real_1d(-0.4).unwrap()).unwrap().re, 1.0, epsilon = 1e-13);
        let nrm = bergman_norm(&f, &space, &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(nrm, PI.sqrt(), max_relative = 1e-6);

        let bad = AtomCoefficients::new(vec![c64(1.0, 0.0); 3], 2.0).unwrap();
        assert!(matches!(
            synthesize(&bad, &lat, 2.0, &space),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn synthesis_norm_tracks_coefficient_norm() {
        let space = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let spec = QuadratureSpec {
            angular_nodes: 1024,
            ..QuadratureSpec::default()
        };
        let lat = build_lattice(0.5, 0.9, 1, 3).unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        let mut ratios = Vec::new();
        for _ in 0..12 {
            let vals: Vec<Complex64> = (0..lat.len())
                .map(|_| {
                    c64(
                        rng.gen_range(-1.0..1.0f64),
                        rng.gen_range(-1.0..1.0f64),
                    )
                })
                .collect();
            let coeffs = AtomCoefficients::new(vals, 2.0).unwrap();
            let f = synthesize(&coeffs, &lat, 2.0, &space).unwrap();
            let nrm = bergman_norm(&f, &space, &spec).unwrap();
            ratios.push(nrm / coeffs.lp_norm());
        }
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
        assert!(lo > 0.0);
        assert!(hi / lo < 6.0, "synthesis envelope [{lo}, {hi}]");
    }

    #[test]
    fn rademacher_signs() {
        assert_eq!(rademacher(0, 0.25), 1);
        assert_eq!(rademacher(0, 0.75), -1);
        // r_1(0.3) = r_0(0.6) = -1
        assert_eq!(rademacher(1, 0.3), -1);
        // dyadic structure: r_2 flips every 1/8
        assert_eq!(rademacher(2, 0.10), 1);
        assert_eq!(rademacher(2, 0.15), -1);
    }

    #[test]
    fn khinchine_exact_values() {
        let v = khinchine_integral(&[c64(3.0, 0.0), c64(4.0, 0.0)], 2.0).unwrap();
        assert!(v.exact);
        assert_relative_eq!(v.value, 25.0, max_relative = 1e-14);
        let v = khinchine_integral(&[c64(1.0, 0.0), c64(1.0, 0.0)], 1.0).unwrap();
        assert_relative_eq!(v.value, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn khinchine_is_exact_at_p_two() {
        let mut rng = StdRng::seed_from_u64(23);
        for m in [3usize, 8, 16] {
            let c: Vec<Complex64> = (0..m)
                .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let l2: f64 = c.iter().map(|x| x.norm_sqr()).sum();
            let v = khinchine_integral(&c, 2.0).unwrap();
            assert!((v.value - l2).abs() <= 1e-12 * l2.max(1.0));
        }
    }

    #[test]
    fn khinchine_ratio_envelope() {
        let mut rng = StdRng::seed_from_u64(29);
        for &p in &[0.5f64, 1.0, 2.0, 4.0] {
            for _ in 0..40 {
                let m = rng.gen_range(4..=12);
                let c: Vec<Complex64> = (0..m)
                    .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let l2: f64 = c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                let v = khinchine_integral(&c, p).unwrap();
                let ratio = v.value.powf(1.0 / p) / l2;
                assert!((0.4..=2.5).contains(&ratio), "p={p} ratio={ratio}");
                if p == 2.0 {
                    assert_relative_eq!(ratio, 1.0, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn khinchine_mc_agrees_with_exact() {
        let c: Vec<Complex64> = (0..10).map(|k| c64(0.3 + 0.05 * k as f64, -0.1)).collect();
        let exact = khinchine_integral(&c, 1.0).unwrap();
        let mc = khinchine_integral_mc(&c, 1.0, 200_000, 7).unwrap();
        assert!(!mc.exact);
        let se = mc.std_error.unwrap();
        assert!((mc.value - exact.value).abs() < 5.0 * se + 1e-6);
    }
}
