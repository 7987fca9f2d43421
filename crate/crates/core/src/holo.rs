//! Exact calculus of holomorphic functions on the ball: sparse polynomials,
//! closed-form log/power symbols, the radial derivative, and the
//! Riemann-Stieltjes operator built from a symbol g.
//!
//! The function family {polynomials} + {scaled log kernels} + {scaled power
//! kernels} is closed under the radial derivative, so every symbol used by
//! the harness differentiates in closed form.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{inner_raw, BoundaryDirection, Coords, Point};
use crate::rules::{gauss_legendre_01, pairwise_sum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Exponent vector of a monomial z^m.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Sparse polynomial with complex coefficients; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut p = Polynomial::zero(dim);
        p.add_term(MultiIndex(vec![0; dim]), c);
        p
    }

    /// The coordinate function z_j (0-based).
    pub fn coordinate(dim: usize, j: usize) -> Self {
        assert!(j < dim, "coordinate index out of range");
        let mut exps = vec![0u32; dim];
        exps[j] = 1;
        let mut p = Polynomial::zero(dim);
        p.add_term(MultiIndex(exps), ONE);
        p
    }

    pub fn monomial(dim: usize, exponents: Vec<u32>, coeff: Complex64) -> Result<Self> {
        if exponents.len() != dim {
            return Err(Error::DimensionMismatch(exponents.len(), dim));
        }
        let mut p = Polynomial::zero(dim);
        p.add_term(MultiIndex(exponents), coeff);
        Ok(p)
    }

    /// Dense random polynomial for corpus generation; coefficients are
    /// uniform in the complex unit square.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_degree: u32, terms: usize) -> Self {
        let mut p = Polynomial::zero(dim);
        for _ in 0..terms.saturating_mul(50) {
            if p.terms.len() >= terms {
                break;
            }
            let mut exps = vec![0u32; dim];
            let mut budget = rng.gen_range(0..=max_degree);
            for e in exps.iter_mut().take(dim - 1) {
                *e = rng.gen_range(0..=budget);
                budget -= *e;
            }
            exps[dim - 1] = budget;
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            p.add_term(MultiIndex(exps), c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.terms.get(index).copied().unwrap_or(ZERO)
    }

    /// Coefficient of z^k in one variable.
    pub fn coeff_1d(&self, k: u32) -> Complex64 {
        assert_eq!(self.dim, 1);
        self.coeff(&MultiIndex(vec![k]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, index: MultiIndex, c: Complex64) {
        assert_eq!(index.dim(), self.dim, "multi-index dimension mismatch");
        if c == ZERO {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let v = slot.get_mut();
                *v += c;
                if v.re == 0.0 && v.im == 0.0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Polynomial {
        if c == ZERO {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(MultiIndex(exps), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn eval_coords(&self, coords: &[Complex64]) -> Complex64 {
        debug_assert_eq!(coords.len(), self.dim);
        let mut acc = ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (z, &e) in coords.iter().zip(&m.0) {
                if e > 0 {
                    t *= z.powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Multiplies each monomial by its total degree.
    pub fn radial_derivative(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let k = m.total_degree();
            if k > 0 {
                out.add_term(m.clone(), c * k as f64);
            }
        }
        out
    }

    /// Divides each monomial by its total degree; inverse of the radial
    /// derivative on polynomials without constant term.
    pub fn radial_primitive(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let k = m.total_degree();
            debug_assert!(k > 0, "radial primitive of a constant term");
            if k > 0 {
                out.add_term(m.clone(), c / k as f64);
            }
        }
        out
    }

    /// Largest coefficient difference against another polynomial.
    pub fn max_coeff_distance(&self, other: &Polynomial) -> f64 {
        let mut worst = 0.0f64;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coeff(m)).norm());
        }
        for (m, c) in &other.terms {
            worst = worst.max((c - self.coeff(m)).norm());
        }
        worst
    }
}

/// JSON form of a polynomial: a list of {exponents, re, im}.
#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u32>,
    re: f64,
    im: f64,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exponents: m.0.clone(),
                re: c.re,
                im: c.im,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let dim = terms.first().map(|t| t.exponents.len()).unwrap_or(1);
        let mut p = Polynomial::zero(dim);
        for t in terms {
            if t.exponents.len() != dim {
                return Err(serde::de::Error::custom("inconsistent exponent lengths"));
            }
            p.add_term(MultiIndex(t.exponents), Complex64::new(t.re, t.im));
        }
        Ok(p)
    }
}

/// Base point of a closed-form kernel: interior point or unit direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "location")]
pub enum BasePoint {
    Interior { coords: Vec<(f64, f64)> },
    Boundary { coords: Vec<(f64, f64)> },
}

impl BasePoint {
    pub fn interior(p: &Point) -> Self {
        BasePoint::Interior {
            coords: p.coords().iter().map(|c| (c.re, c.im)).collect(),
        }
    }

    pub fn boundary(d: &BoundaryDirection) -> Self {
        BasePoint::Boundary {
            coords: d.coords().iter().map(|c| (c.re, c.im)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            BasePoint::Interior { coords } | BasePoint::Boundary { coords } => coords.len(),
        }
    }

    pub fn coords(&self) -> Coords {
        match self {
            BasePoint::Interior { coords } | BasePoint::Boundary { coords } => {
                coords.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
            }
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            BasePoint::Interior { coords } | BasePoint::Boundary { coords } => coords
                .iter()
                .map(|&(re, im)| re * re + im * im)
                .sum::<f64>()
                .sqrt(),
        }
    }
}

/// Closed-form symbol with an exact radial derivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ClosedSymbol {
    /// -log(1 - <z,b>)
    Log { base: BasePoint },
    /// (1 - <z,w>)^{-s} with s > 0
    Power { base: BasePoint, exponent: f64 },
}

impl ClosedSymbol {
    pub fn dim(&self) -> usize {
        match self {
            ClosedSymbol::Log { base } | ClosedSymbol::Power { base, .. } => base.dim(),
        }
    }

    fn eval_pairing(base: &Coords, coords: &[Complex64]) -> Complex64 {
        inner_raw(coords, base)
    }
}

/// Holomorphic function: polynomial part plus finitely many scaled closed
/// symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoloFunction {
    dim: usize,
    poly: Polynomial,
    kernels: Vec<(f64, f64, ClosedSymbol)>,
}

impl HoloFunction {
    pub fn from_polynomial(p: Polynomial) -> Self {
        HoloFunction {
            dim: p.dim(),
            poly: p,
            kernels: Vec::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        HoloFunction::from_polynomial(Polynomial::constant(dim, c))
    }

    pub fn coordinate(dim: usize, j: usize) -> Self {
        HoloFunction::from_polynomial(Polynomial::coordinate(dim, j))
    }

    /// g(z) = -log(1 - <z,b>), |b| <= 1.
    pub fn log_kernel(base: BasePoint) -> Self {
        HoloFunction {
            dim: base.dim(),
            poly: Polynomial::zero(base.dim()),
            kernels: vec![(1.0, 0.0, ClosedSymbol::Log { base })],
        }
    }

    /// g(z) = (1 - <z,w>)^{-s}, s > 0.
    pub fn power_kernel(base: BasePoint, exponent: f64) -> Result<Self> {
        if !(exponent > 0.0) || !exponent.is_finite() {
            return Err(Error::param("exponent", "power kernel needs s > 0"));
        }
        Ok(HoloFunction {
            dim: base.dim(),
            poly: Polynomial::zero(base.dim()),
            kernels: vec![(1.0, 0.0, ClosedSymbol::Power { base, exponent })],
        })
    }

    /// The Cesaro symbol -log(1 - <z, 1/sqrt(n)>).
    pub fn cesaro_symbol(n: usize) -> Self {
        HoloFunction::log_kernel(BasePoint::boundary(&BoundaryDirection::diagonal(n)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_polynomial(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.kernels.is_empty().then_some(&self.poly)
    }

    pub fn polynomial_part(&self) -> &Polynomial {
        &self.poly
    }

    pub fn kernel_parts(&self) -> impl Iterator<Item = (Complex64, &ClosedSymbol)> {
        self.kernels
            .iter()
            .map(|(re, im, s)| (Complex64::new(*re, *im), s))
    }

    pub fn add(&self, other: &HoloFunction) -> Result<HoloFunction> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut kernels = self.kernels.clone();
        kernels.extend(other.kernels.iter().cloned());
        Ok(HoloFunction {
            dim: self.dim,
            poly: self.poly.add(&other.poly)?,
            kernels,
        })
    }

    pub fn scale(&self, c: Complex64) -> HoloFunction {
        HoloFunction {
            dim: self.dim,
            poly: self.poly.scale(c),
            kernels: self
                .kernels
                .iter()
                .map(|(re, im, s)| {
                    let sc = Complex64::new(*re, *im) * c;
                    (sc.re, sc.im, s.clone())
                })
                .collect(),
        }
    }

    fn push_scaled(&mut self, c: Complex64, sym: ClosedSymbol) {
        if c != ZERO {
            self.kernels.push((c.re, c.im, sym));
        }
    }

    /// Exact radial derivative; stays inside the closed family.
    pub fn radial_derivative(&self) -> HoloFunction {
        let mut out = HoloFunction::from_polynomial(self.poly.radial_derivative());
        for (c, sym) in self.kernel_parts() {
            match sym {
                ClosedSymbol::Log { base } => {
                    // R(-log(1-u)) = u/(1-u) = (1-u)^{-1} - 1
                    out.push_scaled(
                        c,
                        ClosedSymbol::Power {
                            base: base.clone(),
                            exponent: 1.0,
                        },
                    );
                    out.poly.add_term(MultiIndex(vec![0; self.dim]), -c);
                }
                ClosedSymbol::Power { base, exponent } => {
                    // R((1-u)^{-s}) = s u (1-u)^{-s-1} = s (1-u)^{-s-1} - s (1-u)^{-s}
                    let s = *exponent;
                    out.push_scaled(
                        c * s,
                        ClosedSymbol::Power {
                            base: base.clone(),
                            exponent: s + 1.0,
                        },
                    );
                    out.push_scaled(
                        -c * s,
                        ClosedSymbol::Power {
                            base: base.clone(),
                            exponent: s,
                        },
                    );
                }
            }
        }
        out
    }

    pub fn value_at_origin(&self) -> Complex64 {
        let mut v = self.poly.coeff(&MultiIndex(vec![0; self.dim]));
        for (c, sym) in self.kernel_parts() {
            match sym {
                ClosedSymbol::Log { .. } => {}
                ClosedSymbol::Power { .. } => v += c,
            }
        }
        v
    }

    pub fn eval(&self, z: &Point) -> Result<Complex64> {
        if z.dim() != self.dim {
            return Err(Error::DimensionMismatch(z.dim(), self.dim));
        }
        Ok(self.evaluator().eval(z.coords()))
    }

    /// Cheap reusable evaluator for quadrature loops.
    pub fn evaluator(&self) -> Evaluator {
        let dense1d = if self.dim == 1 && self.kernels.is_empty() {
            let deg = self.poly.degree() as usize;
            let mut coeffs = vec![ZERO; deg + 1];
            for (m, c) in self.poly.terms() {
                coeffs[m.0[0] as usize] = *c;
            }
            Some(coeffs)
        } else {
            None
        };
        Evaluator {
            dense1d,
            poly: (!self.poly.is_zero()).then(|| self.poly.clone()),
            kernels: self
                .kernels
                .iter()
                .map(|(re, im, sym)| {
                    let (base, s_log, exponent) = match sym {
                        ClosedSymbol::Log { base } => (base.coords(), true, 0.0),
                        ClosedSymbol::Power { base, exponent } => (base.coords(), false, *exponent),
                    };
                    let int_exp = if !s_log
                        && exponent.fract() == 0.0
                        && exponent <= 64.0
                    {
                        Some(exponent as i32)
                    } else {
                        None
                    };
                    CompiledKernel {
                        scale: Complex64::new(*re, *im),
                        base,
                        is_log: s_log,
                        exponent,
                        int_exp,
                    }
                })
                .collect(),
        }
    }

    /// Truncated expansion into a polynomial of total degree <= max_degree.
    pub fn truncated(&self, max_degree: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in self.poly.terms() {
            if m.total_degree() <= max_degree {
                out.add_term(m.clone(), *c);
            }
        }
        for (c, sym) in self.kernel_parts() {
            let (base, coeff_fn): (Coords, Box<dyn Fn(u32) -> f64>) = match sym {
                ClosedSymbol::Log { base } => {
                    (base.coords(), Box::new(|k: u32| if k == 0 { 0.0 } else { 1.0 / k as f64 }))
                }
                ClosedSymbol::Power { base, exponent } => {
                    let s = *exponent;
                    (
                        base.coords(),
                        Box::new(move |k: u32| {
                            // rising factorial (s)_k / k!
                            let mut v = 1.0;
                            for j in 0..k {
                                v *= (s + j as f64) / (j as f64 + 1.0);
                            }
                            v
                        }),
                    )
                }
            };
            // powers of the linear form <z,b>
            let mut linear = Polynomial::zero(self.dim);
            for (j, b) in base.iter().enumerate() {
                let mut exps = vec![0u32; self.dim];
                exps[j] = 1;
                linear.add_term(MultiIndex(exps), b.conj());
            }
            let mut pow = Polynomial::constant(self.dim, ONE);
            for k in 0..=max_degree {
                let a = coeff_fn(k);
                if a != 0.0 {
                    for (m, v) in pow.terms() {
                        out.add_term(m.clone(), c * v * a);
                    }
                }
                if k < max_degree {
                    pow = pow.mul(&linear).expect("matching dims");
                }
            }
        }
        out
    }

    /// Parseable descriptor used in reports.
    pub fn descriptor(&self) -> String {
        format!("{self}")
    }
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{}{}i)", c.re, if c.im < 0.0 { "" } else { "+" }, c.im)
    }
}

impl fmt::Display for HoloFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        for (m, c) in self.poly.terms() {
            let mut mono: Vec<String> = Vec::new();
            for (j, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    mono.push(format!("z{}", j + 1));
                } else if e > 1 {
                    mono.push(format!("z{}^{}", j + 1, e));
                }
            }
            if mono.is_empty() {
                pieces.push(fmt_complex(*c));
            } else if *c == ONE {
                pieces.push(mono.join("*"));
            } else {
                pieces.push(format!("{}*{}", fmt_complex(*c), mono.join("*")));
            }
        }
        for (c, sym) in self.kernel_parts() {
            let body = match sym {
                ClosedSymbol::Log { base } => {
                    let bs: Vec<String> = base.coords().iter().map(|&b| fmt_complex(b)).collect();
                    format!("ces({})", bs.join(","))
                }
                ClosedSymbol::Power { base, exponent } => {
                    let bs: Vec<String> = base.coords().iter().map(|&b| fmt_complex(b)).collect();
                    format!("pow({}; {})", bs.join(","), exponent)
                }
            };
            if c == ONE {
                pieces.push(body);
            } else {
                pieces.push(format!("{}*{}", fmt_complex(c), body));
            }
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

struct CompiledKernel {
    scale: Complex64,
    base: Coords,
    is_log: bool,
    exponent: f64,
    int_exp: Option<i32>,
}

/// Reentrant pointwise evaluator; safe to share across threads.
pub struct Evaluator {
    dense1d: Option<Vec<Complex64>>,
    poly: Option<Polynomial>,
    kernels: Vec<CompiledKernel>,
}

impl Evaluator {
    pub fn eval(&self, coords: &[Complex64]) -> Complex64 {
        let mut acc = ZERO;
        if let Some(dense) = &self.dense1d {
            let z = coords[0];
            let mut v = ZERO;
            for &c in dense.iter().rev() {
                v = v * z + c;
            }
            return v;
        }
        if let Some(p) = &self.poly {
            acc += p.eval_coords(coords);
        }
        for k in &self.kernels {
            let u = ClosedSymbol::eval_pairing(&k.base, coords);
            let w = ONE - u;
            let v = if k.is_log {
                -w.ln()
            } else if let Some(e) = k.int_exp {
                w.powi(-e)
            } else {
                w.powf(-k.exponent)
            };
            acc += k.scale * v;
        }
        acc
    }
}

/// Image of f under the operator with symbol g:
/// (T_g f)(z) = integral_0^1 f(tz) (Rg)(tz) dt/t.
///
/// For polynomial f, g the exact route `apply_tg_exact` divides each
/// homogeneous part of f * Rg by its degree; this evaluator is the quadrature
/// route for closed-form symbols. The integrand extends continuously to t = 0
/// because Rg vanishes at the origin.
pub struct TgImage {
    dim: usize,
    f_eval: Evaluator,
    rg_eval: Evaluator,
    tol: f64,
    start_nodes: usize,
    max_nodes: usize,
}

impl TgImage {
    pub fn new(f: &HoloFunction, g: &HoloFunction) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::DimensionMismatch(f.dim(), g.dim()));
        }
        Ok(TgImage {
            dim: f.dim(),
            f_eval: f.evaluator(),
            rg_eval: g.radial_derivative().evaluator(),
            tol: 1e-10,
            start_nodes: 64,
            max_nodes: 4096,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval_with_nodes(&self, coords: &[Complex64], nodes: usize) -> Complex64 {
        let rule = gauss_legendre_01(nodes).expect("valid node count");
        let mut scratch: Coords = coords.iter().copied().collect();
        let vals: Vec<Complex64> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&t, &w)| {
                for (s, c) in scratch.iter_mut().zip(coords) {
                    *s = c * t;
                }
                w * self.f_eval.eval(&scratch) * self.rg_eval.eval(&scratch) / t
            })
            .collect();
        let re = pairwise_sum(&vals.iter().map(|v| v.re).collect::<Vec<_>>());
        let im = pairwise_sum(&vals.iter().map(|v| v.im).collect::<Vec<_>>());
        Complex64::new(re, im)
    }

    /// Doubles the node count until two successive answers agree to 1e-10.
    pub fn eval(&self, z: &Point) -> Result<Complex64> {
        if z.dim() != self.dim {
            return Err(Error::DimensionMismatch(z.dim(), self.dim));
        }
        Ok(self.eval_adaptive(z.coords()).0)
    }

    pub(crate) fn eval_adaptive(&self, coords: &[Complex64]) -> (Complex64, usize) {
        let mut nodes = self.start_nodes;
        let mut value = self.eval_with_nodes(coords, nodes);
        while nodes < self.max_nodes {
            let next = self.eval_with_nodes(coords, nodes * 2);
            let diff = (next - value).norm();
            nodes *= 2;
            value = next;
            if diff <= self.tol * value.norm().max(1.0) {
                break;
            }
        }
        (value, nodes)
    }

    /// Node count that the adaptive rule settles on at a probe point; callers
    /// integrating over a ring reuse it for the whole ring.
    pub fn settled_nodes(&self, coords: &[Complex64]) -> usize {
        self.eval_adaptive(coords).1
    }
}

impl HoloFunction {
    /// Largest base-point norm among the closed-form parts; zero for
    /// polynomials. Controls how close to [0,1] the singularities of the
    /// ray integrand come.
    pub fn max_kernel_base_norm(&self) -> f64 {
        self.kernels
            .iter()
            .map(|(_, _, sym)| match sym {
                ClosedSymbol::Log { base } | ClosedSymbol::Power { base, .. } => base.norm(),
            })
            .fold(0.0, f64::max)
    }
}

/// Test kernel (1-<z,w>)^{-(n+1+alpha)}, the probe function for p > 1.
pub fn bergman_kernel(w: &Point, space: &crate::quadrature::SpaceParams) -> HoloFunction {
    let s = space.n() as f64 + 1.0 + space.alpha();
    HoloFunction::power_kernel(BasePoint::interior(w), s).expect("positive exponent")
}

/// Test kernel (1-<z,w>)^{-m/p} for p <= 1 probes; requires the integer
/// m > n + 1 + alpha.
pub fn fractional_kernel(
    w: &Point,
    space: &crate::quadrature::SpaceParams,
    m: u32,
) -> Result<HoloFunction> {
    let bound = space.n() as f64 + 1.0 + space.alpha();
    if !(m as f64 > bound) {
        return Err(Error::InadmissibleKernelExponent { m, bound });
    }
    HoloFunction::power_kernel(BasePoint::interior(w), m as f64 / space.p())
}

/// Default integer exponent for the fractional kernel: one past the least
/// admissible integer.
pub fn default_fractional_m(space: &crate::quadrature::SpaceParams) -> u32 {
    (space.n() as f64 + 1.0 + space.alpha()).floor() as u32 + 2
}

/// Exact operator image for polynomial f and g.
pub fn apply_tg_exact(f: &HoloFunction, g: &HoloFunction) -> Result<HoloFunction> {
    let (fp, gp) = match (f.as_polynomial(), g.as_polynomial()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::NotPolynomial),
    };
    if fp.dim() != gp.dim() {
        return Err(Error::DimensionMismatch(fp.dim(), gp.dim()));
    }
    let product = fp.mul(&gp.radial_derivative())?;
    Ok(HoloFunction::from_polynomial(product.radial_primitive()))
}
