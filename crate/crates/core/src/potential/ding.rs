//! The reduced Ding functional `𝒟 = ℒ + ℱ` for piecewise-linear potentials on `2P`.

use gauss_quad::GaussLegendre;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::guillemin::{dot, log_sinh};
use crate::criterion::{linear_part, Convention};
use crate::error::{Error, Result};
use crate::exact::{int, rat, to_f64, Rational, Vec2};
use crate::geometry::PolygonF;
use crate::polytope::GroupPolytope;
use crate::quadrature::{integrate_pl, PLFunction};

/// Quadrature controls for `ℱ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureOptions {
    /// Gauss-Legendre points per direction on each collapsed square.
    pub degree: usize,
    /// Stop refining once successive totals differ by less than this, relatively.
    pub rel_tol: f64,
    /// Largest admissible truncation error, relative to the integral.
    pub tail_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            degree: 10,
            rel_tol: 1e-8,
            tail_tol: 1e-14,
            max_depth: 16,
        }
    }
}

/// Vertices of the crease subdivision of `2P` with the values of `u` there.
pub fn crease_vertices(p: &GroupPolytope, u: &PLFunction) -> Vec<(Vec2, Rational)> {
    let full = p.scale(&int(2)).full_polygon();
    let mut out: Vec<(Vec2, Rational)> = Vec::new();
    for (_, region) in u.regions(&full) {
        for v in region.vertices {
            if !out.iter().any(|(w, _)| *w == v) {
                let val = u.eval(&v);
                out.push((v, val));
            }
        }
    }
    out
}

/// `ψ_u(x) = sup_{y ∈ 2P} ⟨x, y⟩ − u(y)`, attained on the crease vertices.
pub fn legendre_pl(p: &GroupPolytope, u: &PLFunction, x: [f64; 2]) -> f64 {
    LegendreData::new(p, u).eval(x)
}

#[derive(Clone, Debug)]
struct LegendreData {
    verts: Vec<([f64; 2], f64)>,
}

impl LegendreData {
    fn new(p: &GroupPolytope, u: &PLFunction) -> Self {
        let verts = crease_vertices(p, u)
            .iter()
            .map(|(v, c)| (v.to_f64(), to_f64(c)))
            .collect();
        LegendreData { verts }
    }

    fn eval(&self, x: [f64; 2]) -> f64 {
        self.verts
            .iter()
            .map(|(v, c)| dot(*v, x) - c)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn max_u(&self) -> f64 {
        self.verts.iter().map(|(_, c)| *c).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `log ∫_{𝔞₊} e^{−ψ_u} J dx` with an estimate of its absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogIntegral {
    pub value: f64,
    pub error: f64,
    /// Truncation level `⟨2ρ, x⟩ ≤ T`.
    pub truncation: f64,
}

struct Setup {
    roots: Vec<[f64; 2]>,
    /// Chamber rays scaled to `⟨2ρ, r⟩ = 1`.
    rays: [[f64; 2]; 2],
    two_rho_norm: f64,
    /// Decay rate of the integrand bound in `s = ⟨2ρ, x⟩`.
    k: f64,
    /// Prefactor of the integrand bound `C e^{−k s}`.
    c: f64,
}

impl Setup {
    fn new(p: &GroupPolytope, leg: &LegendreData) -> Result<Self> {
        let rs = &p.rs;
        let two_rho = rs.rho.scale(&int(2));
        if !p.contains_interior(&two_rho) {
            return Err(Error::Integrability("4ρ is not interior to 2P".into()));
        }
        let four_rho = two_rho.scale(&int(2));
        let r = p
            .orbit_facets()
            .iter()
            .map(|(u, l)| to_f64(&(l * int(2) - u.dot(&four_rho))) / dot(u.to_f64(), u.to_f64()).sqrt())
            .fold(f64::INFINITY, f64::min);
        let [a0, a1] = rs.simple_roots();
        let tr = two_rho.to_f64();
        let ray = |own: &Vec2, other: &Vec2| {
            let o = other.to_f64();
            let mut d = [-o[1], o[0]];
            if dot(own.to_f64(), d) < 0.0 {
                d = [-d[0], -d[1]];
            }
            let s = dot(tr, d);
            [d[0] / s, d[1] / s]
        };
        let rays = [ray(a0, a1), ray(a1, a0)];
        let n = dot(tr, tr).sqrt();
        let roots: Vec<[f64; 2]> = rs.positive_roots.iter().map(Vec2::to_f64).collect();
        let len1 = (rays[0][0] - rays[1][0]).hypot(rays[0][1] - rays[1][1]);
        Ok(Setup {
            c: leg.max_u().exp() * 0.25f64.powi(roots.len() as i32) * len1 / n,
            k: r / n,
            two_rho_norm: n,
            rays,
            roots,
        })
    }

    /// Bound on the integral over `s > t`.
    fn tail(&self, t: f64) -> f64 {
        self.c * (-self.k * t).exp() * (t / self.k + 1.0 / (self.k * self.k))
    }

    fn log_j(&self, x: [f64; 2]) -> f64 {
        self.roots
            .iter()
            .map(|a| {
                let t = dot(*a, x);
                if t > 0.0 {
                    2.0 * log_sinh(t)
                } else {
                    f64::NEG_INFINITY
                }
            })
            .sum()
    }
}

/// One linearity region of `ψ_u` inside the truncated chamber.
struct Region {
    v: [f64; 2],
    c: f64,
    poly: PolygonF,
}

fn regions(setup: &Setup, leg: &LegendreData, t: f64) -> Vec<Region> {
    let [r0, r1] = setup.rays;
    let tri = PolygonF {
        vertices: vec![[0.0, 0.0], [t * r0[0], t * r0[1]], [t * r1[0], t * r1[1]]],
    };
    let tri = if tri.area() < 0.0 {
        PolygonF {
            vertices: tri.vertices.into_iter().rev().collect(),
        }
    } else {
        tri
    };
    let min_area = 1e-14 * tri.area();
    leg.verts
        .iter()
        .enumerate()
        .filter_map(|(k, (vk, ck))| {
            let mut poly = tri.clone();
            for (j, (vj, cj)) in leg.verts.iter().enumerate() {
                if j != k && !poly.vertices.is_empty() {
                    poly = poly.clip([vj[0] - vk[0], vj[1] - vk[1]], cj - ck);
                }
            }
            let poly = dedup_vertices(poly, 1e-12 * t);
            (poly.vertices.len() >= 3 && poly.area() > min_area).then_some(Region { v: *vk, c: *ck, poly })
        })
        .collect()
}

fn dedup_vertices(poly: PolygonF, eps: f64) -> PolygonF {
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(poly.vertices.len());
    for v in poly.vertices {
        if out.last().is_none_or(|w| (v[0] - w[0]).hypot(v[1] - w[1]) > eps) {
            out.push(v);
        }
    }
    while out.len() > 1 {
        let (a, b) = (out[0], out[out.len() - 1]);
        if (a[0] - b[0]).hypot(a[1] - b[1]) > eps {
            break;
        }
        out.pop();
    }
    PolygonF { vertices: out }
}

struct Rule {
    nodes: Vec<(f64, f64)>,
}

impl Rule {
    fn new(degree: usize) -> Result<Self> {
        let gl = GaussLegendre::new(degree).map_err(|e| Error::Quadrature(e.to_string()))?;
        // nodes on [0, 1]
        let nodes = gl
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        Ok(Rule { nodes })
    }

    /// Collapsed tensor rule on a triangle.
    fn triangle(&self, tri: &[[f64; 2]; 3], f: &impl Fn([f64; 2]) -> f64) -> f64 {
        let [a, b, c] = *tri;
        let e1 = [b[0] - a[0], b[1] - a[1]];
        let e2 = [c[0] - a[0], c[1] - a[1]];
        let jac = (e1[0] * e2[1] - e1[1] * e2[0]).abs();
        let mut s = 0.0;
        for &(xi, wx) in &self.nodes {
            for &(eta, wy) in &self.nodes {
                let (p, q) = (xi * (1.0 - eta), xi * eta);
                s += wx * wy * xi * f([a[0] + p * e1[0] + q * e2[0], a[1] + p * e1[1] + q * e2[1]]);
            }
        }
        s * jac
    }
}

fn children(t: &[[f64; 2]; 3]) -> [[[f64; 2]; 3]; 4] {
    let mid = |p: [f64; 2], q: [f64; 2]| [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])];
    let [a, b, c] = *t;
    let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
}

fn tri_area(t: &[[f64; 2]; 3]) -> f64 {
    let [a, b, c] = *t;
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).abs()
}

#[derive(Clone, Copy)]
struct Tolerance {
    /// Allowed error per unit area.
    density: f64,
    /// Absolute error below which a triangle is never split.
    floor: f64,
}

/// Refine a triangle until the rule and its four children agree.
fn adaptive(
    rule: &Rule,
    t: &[[f64; 2]; 3],
    whole: f64,
    tol: Tolerance,
    depth: u32,
    f: &impl Fn([f64; 2]) -> f64,
) -> f64 {
    let kids = children(t);
    let parts = kids.map(|k| rule.triangle(&k, f));
    let fine: f64 = parts.iter().sum();
    if depth == 0 || (fine - whole).abs() <= tol.density * tri_area(t) + tol.floor {
        return fine;
    }
    kids.iter()
        .zip(parts)
        .map(|(k, w)| adaptive(rule, k, w, tol, depth - 1, f))
        .sum()
}

/// Integral of `e^{−ψ + log J − shift}` over the truncated chamber.
fn integrate(setup: &Setup, regs: &[Region], rule: &Rule, shift: f64, tol: Tolerance, depth: u32) -> f64 {
    let tris: Vec<([[f64; 2]; 3], usize)> = regs
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.poly.triangles().map(move |t| (t, i)).collect::<Vec<_>>())
        .collect();
    tris.par_iter()
        .map(|(t, i)| {
            let r = &regs[*i];
            let f = |x: [f64; 2]| (r.c - dot(r.v, x) + setup.log_j(x) - shift).exp();
            let whole = rule.triangle(t, &f);
            adaptive(rule, t, whole, tol, depth, &f)
        })
        .sum()
}

fn log_integral(p: &GroupPolytope, leg: &LegendreData, opts: &QuadratureOptions) -> Result<LogIntegral> {
    let setup = Setup::new(p, leg)?;
    let rule = Rule::new(opts.degree)?;
    // scale of the integrand: its largest value on a coarse sample
    let probe_t = 4.0 / setup.k;
    let probe = regions(&setup, leg, probe_t);
    let mut shift = f64::NEG_INFINITY;
    for r in &probe {
        let verts = &r.poly.vertices;
        let n = verts.len() as f64;
        let cen = verts.iter().fold([0.0, 0.0], |a, v| [a[0] + v[0] / n, a[1] + v[1] / n]);
        for q in verts.iter().chain(std::iter::once(&cen)) {
            let m = [0.9 * q[0] + 0.1 * cen[0], 0.9 * q[1] + 0.1 * cen[1]];
            shift = shift.max(r.c - dot(r.v, m) + setup.log_j(m));
        }
    }
    if !shift.is_finite() {
        return Err(Error::Quadrature("could not locate the integrand".into()));
    }
    let area_scale = setup.two_rho_norm.powi(-2);
    let coarse = Tolerance {
        density: 1e-4 * area_scale,
        floor: 0.0,
    };
    let rough = integrate(&setup, &probe, &rule, shift, coarse, 8).max(f64::MIN_POSITIVE);
    // truncation level from the explicit tail bound
    let target = opts.tail_tol * rough * shift.exp();
    let mut t = probe_t;
    while setup.tail(t) > target {
        t *= 1.25;
        if t > 1e6 {
            return Err(Error::Quadrature("truncation radius diverged".into()));
        }
    }
    let regs = regions(&setup, leg, t);
    let mut tol = Tolerance {
        density: 1e-6 * rough / (t * t),
        floor: 1e-15 * rough,
    };
    let mut prev = integrate(&setup, &regs, &rule, shift, tol, opts.max_depth);
    for _ in 0..8 {
        tol.density /= 16.0;
        let next = integrate(&setup, &regs, &rule, shift, tol, opts.max_depth);
        let diff = (next - prev).abs();
        prev = next;
        if diff <= opts.rel_tol * next.abs() {
            let rel = diff / next + setup.tail(t) / (next * shift.exp());
            return Ok(LogIntegral {
                value: next.ln() + shift,
                error: rel,
                truncation: t,
            });
        }
    }
    Err(Error::Quadrature(format!(
        "no convergence to {} after refinement",
        opts.rel_tol
    )))
}

/// `ℱ̂(u) = −log ∫_{𝔞₊} e^{−ψ_u} J dx` with its error estimate.
pub fn fhat(p: &GroupPolytope, u: &PLFunction, opts: &QuadratureOptions) -> Result<(f64, f64)> {
    let leg = LegendreData::new(p, u);
    let li = log_integral(p, &leg, opts)?;
    Ok((-li.value, li.error))
}

/// `ℱ(u) = ℱ̂(u) + u(4ρ)`, for `u` on `2P`.
pub fn f_eval(p: &GroupPolytope, u: &PLFunction, opts: &QuadratureOptions) -> Result<(f64, f64)> {
    let (fh, err) = fhat(p, u, opts)?;
    Ok((fh + to_f64(&u.eval(&p.rs.rho.scale(&int(4)))), err))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DingValue {
    #[serde(rename = "L", with = "crate::exact::serde_rational")]
    pub l: Rational,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "F_error")]
    pub f_error: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub convention: Convention,
}

/// `u(y) ↦ 2u(y/2)`: a function on `P` carried to `2P`.
pub fn double(u: &PLFunction) -> PLFunction {
    PLFunction {
        pieces: u.pieces.iter().map(|(a, c)| (a.clone(), c * int(2))).collect(),
        winvariant: u.winvariant,
    }
}

/// `𝒟(u) = ℒ(u) + ℱ(u)`. On the `P` convention `u` lives on `P` and both parts are
/// halved values of the `2P` functional at `2u(·/2)`.
pub fn ding(p: &GroupPolytope, u: &PLFunction, conv: Convention, opts: &QuadratureOptions) -> Result<DingValue> {
    let l = linear_part(p, u, conv)?;
    let (f, f_error) = match conv {
        Convention::TwoP => f_eval(p, u, opts)?,
        Convention::P => {
            let (f, e) = f_eval(p, &double(u), opts)?;
            (0.5 * f, e)
        }
    };
    let d = to_f64(&l) + f;
    Ok(DingValue {
        l,
        f,
        f_error,
        d,
        convention: conv,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FhatReport {
    pub t: Vec<f64>,
    pub values: Vec<f64>,
    pub second_differences: Vec<f64>,
    pub min_second_difference: f64,
    pub max_error: f64,
}

/// `ℱ̂` along `u_t = t u₁ + (1 − t) u₀` at `samples` equally spaced `t`.
pub fn fhat_convexity(
    p: &GroupPolytope,
    u0: &PLFunction,
    u1: &PLFunction,
    samples: usize,
    opts: &QuadratureOptions,
) -> Result<FhatReport> {
    if samples < 3 {
        return Err(Error::Input("need at least 3 samples".into()));
    }
    let full = p.scale(&int(2)).full_polygon();
    let ts: Vec<Rational> = (0..samples).map(|k| rat(k as i64, samples as i64 - 1)).collect();
    let evals: Vec<(f64, f64)> = ts
        .par_iter()
        .map(|t| {
            let ut = PLFunction::interpolate(u0, u1, t).prune(&full);
            fhat(p, &ut, opts)
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = evals.iter().map(|e| e.0).collect();
    let second: Vec<f64> = values.windows(3).map(|w| w[0] - 2.0 * w[1] + w[2]).collect();
    Ok(FhatReport {
        t: ts.iter().map(to_f64).collect(),
        min_second_difference: second.iter().copied().fold(f64::INFINITY, f64::min),
        max_error: evals.iter().map(|e| e.1).fold(0.0, f64::max),
        second_differences: second,
        values,
    })
}

/// A random W-invariant PL function `max(0, w·(a_k y + c_k))` with `c_k ≤ 0`, so that
/// `u ≥ u(0) = 0`.
pub fn random_normalized(p: &GroupPolytope, rng: &mut impl Rng, pieces: usize, scale: i64) -> PLFunction {
    let mut base = vec![(Vec2::zero(), Rational::zero())];
    for _ in 0..pieces {
        let a = Vec2::from_ints(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale));
        let c = -rat(rng.gen_range(0..=4 * scale), 4);
        base.push((a, c));
    }
    PLFunction::w_closed(&p.rs, &base)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// `(∫ uπ, 𝒟(u))` on `2P₊`, for samples with `∫ uπ ≥ 1`.
    pub samples: Vec<(f64, f64)>,
    pub min_ratio: f64,
}

/// Sample `𝒟(u) / ∫_{2P₊} uπ dy` over random normalized `u`.
pub fn properness_probe(p: &GroupPolytope, samples: usize, seed: u64, opts: &QuadratureOptions) -> Result<ProbeReport> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let cell = p.scale(&int(2)).positive_part().clone();
    let us: Vec<PLFunction> = (0..samples)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            random_normalized(p, &mut rng, k, 2)
        })
        .collect();
    let out: Vec<Option<(f64, f64)>> = us
        .par_iter()
        .map(|u| {
            let m = to_f64(&integrate_pl(&cell, u, &p.rs));
            if m < 1.0 {
                return Ok(None);
            }
            let d = ding(p, u, Convention::TwoP, opts)?;
            Ok(Some((m, d.d)))
        })
        .collect::<Result<_>>()?;
    let samples: Vec<(f64, f64)> = out.into_iter().flatten().collect();
    let min_ratio = samples.iter().map(|(m, d)| d / m).fold(f64::INFINITY, f64::min);
    Ok(ProbeReport { samples, min_ratio })
}
