//! The Guillemin potential `u = ½ Σ l_A log l_A` of `2P` and its Ricci potential `h₀`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, to_f64, Vec2};
use crate::geometry::PolygonF;
use crate::polytope::GroupPolytope;

/// Facet data of `2P` in floating point.
#[derive(Clone, Debug)]
pub struct GuilleminData {
    /// `(u_A, 2λ_A)` over the full W-orbit; `l_A(y) = 2λ_A − ⟨u_A, y⟩`.
    pub facets: Vec<([f64; 2], f64)>,
    /// Positive roots, paired naturally with points of `𝔞`.
    pub roots: Vec<[f64; 2]>,
    /// `Gᵀα`, so that `π(y) = Π ⟨Gᵀα, y⟩²`.
    pub roots_dual: Vec<[f64; 2]>,
    /// `2P₊`.
    pub cell: PolygonF,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GuilleminValue {
    pub value: f64,
    pub gradient: [f64; 2],
    pub hessian: [[f64; 2]; 2],
}

pub(crate) fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// `log sinh t` for `t > 0`, without overflow for large `t`.
pub fn log_sinh(t: f64) -> f64 {
    t - std::f64::consts::LN_2 + (-(-2.0 * t).exp_m1()).ln()
}

impl GuilleminData {
    pub fn new(p: &GroupPolytope) -> Self {
        let facets = p
            .orbit_facets()
            .iter()
            .map(|(u, l)| (u.to_f64(), to_f64(&(l * int(2)))))
            .collect();
        let rs = &p.rs;
        let gt = rs.gram.transpose();
        GuilleminData {
            facets,
            roots: rs.positive_roots.iter().map(Vec2::to_f64).collect(),
            roots_dual: rs.positive_roots.iter().map(|a| gt.apply(a).to_f64()).collect(),
            cell: p.positive_part().scale(&int(2)).polygon().to_f64(),
        }
    }

    fn slacks(&self, y: [f64; 2]) -> Result<Vec<f64>> {
        let l: Vec<f64> = self.facets.iter().map(|(u, c)| c - dot(*u, y)).collect();
        if l.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::Domain(format!("({}, {}) is not interior to 2P", y[0], y[1])));
        }
        Ok(l)
    }

    pub fn eval(&self, y: [f64; 2]) -> Result<GuilleminValue> {
        let l = self.slacks(y)?;
        let mut value = 0.0;
        let mut g = [0.0; 2];
        let mut h = [[0.0; 2]; 2];
        for ((u, _), la) in self.facets.iter().zip(&l) {
            let lg = la.ln();
            value += 0.5 * la * lg;
            for i in 0..2 {
                g[i] -= 0.5 * u[i] * (1.0 + lg);
                for j in 0..2 {
                    h[i][j] += 0.5 * u[i] * u[j] / la;
                }
            }
        }
        Ok(GuilleminValue {
            value,
            gradient: g,
            hessian: h,
        })
    }

    fn check_chamber(&self, y: [f64; 2]) -> Result<()> {
        if self.roots_dual.iter().any(|a| !(dot(*a, y) > 0.0)) {
            return Err(Error::Domain(format!(
                "({}, {}) is not inside the open chamber",
                y[0], y[1]
            )));
        }
        Ok(())
    }

    /// `log J(x) = 2 Σ log sinh α(x)`.
    pub fn log_j(&self, x: [f64; 2]) -> Result<f64> {
        let mut s = 0.0;
        for a in &self.roots {
            let t = dot(*a, x);
            if !(t > 0.0) {
                return Err(Error::Domain(format!("α(x) = {t} at ({}, {})", x[0], x[1])));
            }
            s += 2.0 * log_sinh(t);
        }
        Ok(s)
    }

    pub fn log_pi(&self, y: [f64; 2]) -> f64 {
        self.roots_dual.iter().map(|a| 2.0 * dot(*a, y).ln()).sum()
    }

    /// `log det ∇²u − ⟨y, ∇u⟩ + u + log J(∇u) − log π(y)`.
    pub fn h0(&self, y: [f64; 2]) -> Result<f64> {
        self.check_chamber(y)?;
        let gv = self.eval(y)?;
        let h = gv.hessian;
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        Ok(det.ln() - dot(y, gv.gradient) + gv.value + self.log_j(gv.gradient)? - self.log_pi(y))
    }

    /// The same `h₀`, evaluated on the Legendre side: `x = ∇u(y)` is inverted back to a
    /// point of `2P` by Newton's method and `−log det ∇²ψ − ψ + log J(x) − log π(∇ψ)` is
    /// computed there.
    pub fn h0_dual(&self, y: [f64; 2]) -> Result<f64> {
        self.check_chamber(y)?;
        let x = self.eval(y)?.gradient;
        let z = self.legendre_point(x)?;
        let gv = self.eval(z)?;
        let psi = dot(x, z) - gv.value;
        let h = gv.hessian;
        // ∇²ψ(x) is the inverse of ∇²u(z)
        let det_psi = 1.0 / (h[0][0] * h[1][1] - h[0][1] * h[1][0]);
        Ok(-det_psi.ln() - psi + self.log_j(x)? - self.log_pi(z))
    }

    /// The maximizer of `⟨x, y⟩ − u(y)` over `2P`, by damped Newton from the origin.
    pub fn legendre_point(&self, x: [f64; 2]) -> Result<[f64; 2]> {
        let mut y = [0.0, 0.0];
        for _ in 0..200 {
            let gv = self.eval(y)?;
            let r = [gv.gradient[0] - x[0], gv.gradient[1] - x[1]];
            let h = gv.hessian;
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            let step = [
                (h[1][1] * r[0] - h[0][1] * r[1]) / det,
                (h[0][0] * r[1] - h[1][0] * r[0]) / det,
            ];
            let dec = dot(r, step);
            if dec < 1e-24 * (1.0 + dot(x, x)) {
                return Ok(y);
            }
            let mut t = 1.0;
            let f0 = gv.value - dot(x, y);
            loop {
                let cand = [y[0] - t * step[0], y[1] - t * step[1]];
                if let Ok(c) = self.eval(cand) {
                    // near the optimum rounding hides the decrease; take the full step
                    if dec < 1e-10 || c.value - dot(x, cand) <= f0 - 0.25 * t * dec {
                        y = cand;
                        break;
                    }
                }
                t *= 0.5;
                if t < 1e-20 {
                    return Err(Error::Domain(format!("Newton step failed at ({}, {})", x[0], x[1])));
                }
            }
        }
        Err(Error::Domain(format!(
            "Legendre inversion did not converge at ({}, {})",
            x[0], x[1]
        )))
    }

    /// Distance from `y` to the walls and to `∂(2P)`.
    pub fn boundary_distance(&self, y: [f64; 2]) -> f64 {
        let walls = self.roots_dual.iter().map(|a| dot(*a, y) / dot(*a, *a).sqrt());
        let facets = self.facets.iter().map(|(u, c)| (c - dot(*u, y)) / dot(*u, *u).sqrt());
        walls.chain(facets).fold(f64::INFINITY, f64::min)
    }
}

pub fn guillemin_eval(p: &GroupPolytope, y: &Vec2) -> Result<GuilleminValue> {
    GuilleminData::new(p).eval(y.to_f64())
}

pub fn h0_eval(p: &GroupPolytope, y: &Vec2) -> Result<f64> {
    GuilleminData::new(p).h0(y.to_f64())
}

/// Samples of `h₀` on a regular grid over `2P₊`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H0Scan {
    pub n: usize,
    pub margin: f64,
    /// `(y₁, y₂, h₀)`.
    pub samples: Vec<[f64; 3]>,
    pub max: f64,
    pub min: f64,
    pub argmax: [f64; 2],
    pub argmin: [f64; 2],
}

impl H0Scan {
    /// Minimum over samples within `radius` of `center`.
    pub fn min_near(&self, center: [f64; 2], radius: f64) -> Option<f64> {
        self.samples
            .iter()
            .filter(|s| (s[0] - center[0]).hypot(s[1] - center[1]) <= radius)
            .map(|s| s[2])
            .reduce(f64::min)
    }
}

/// Default margin, as a fraction of the diameter of `2P₊`.
pub const SCAN_MARGIN: f64 = 1e-3;

/// `n × n` cell-centred grid on the bounding box of `2P₊`, keeping points at least
/// `margin · diam` away from the walls and from `∂(2P)`.
pub fn h0_scan(p: &GroupPolytope, n: usize, margin: f64) -> Result<H0Scan> {
    if n == 0 {
        return Err(Error::Input("grid size must be positive".into()));
    }
    let gd = GuilleminData::new(p);
    let v = &gd.cell.vertices;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for q in v {
        for k in 0..2 {
            lo[k] = lo[k].min(q[k]);
            hi[k] = hi[k].max(q[k]);
        }
    }
    let eps = margin * gd.cell.diameter();
    let d = [(hi[0] - lo[0]) / n as f64, (hi[1] - lo[1]) / n as f64];
    let samples: Vec<[f64; 3]> = (0..n * n)
        .into_par_iter()
        .filter_map(|k| {
            let y = [
                lo[0] + (k / n) as f64 * d[0] + 0.5 * d[0],
                lo[1] + (k % n) as f64 * d[1] + 0.5 * d[1],
            ];
            if gd.boundary_distance(y) < eps {
                return None;
            }
            gd.h0(y).ok().map(|h| [y[0], y[1], h])
        })
        .collect();
    if samples.is_empty() {
        return Err(Error::DegenerateCell("no grid point inside 2P₊".into()));
    }
    let (mut imax, mut imin) = (0, 0);
    for (i, s) in samples.iter().enumerate() {
        if s[2] > samples[imax][2] {
            imax = i;
        }
        if s[2] < samples[imin][2] {
            imin = i;
        }
    }
    Ok(H0Scan {
        n,
        margin,
        max: samples[imax][2],
        min: samples[imin][2],
        argmax: [samples[imax][0], samples[imax][1]],
        argmin: [samples[imin][0], samples[imin][1]],
        samples,
    })
}

/// Minimum of `h₀` on circles of radius `r · diam` around `center` (points of the
/// open cell only), for each `r`.
pub fn h0_probe(p: &GroupPolytope, center: [f64; 2], radii: &[f64]) -> Vec<(f64, Option<f64>)> {
    const DIRECTIONS: usize = 720;
    let gd = GuilleminData::new(p);
    let diam = gd.cell.diameter();
    radii
        .iter()
        .map(|&r| {
            let min = (0..DIRECTIONS)
                .filter_map(|k| {
                    let th = std::f64::consts::TAU * (k as f64 + 0.5) / DIRECTIONS as f64;
                    let y = [center[0] + r * diam * th.cos(), center[1] + r * diam * th.sin()];
                    gd.h0(y).ok()
                })
                .reduce(f64::min);
            (r, min)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::preset;
    use rand::{Rng, SeedableRng};

    fn fano(normals: &[[i64; 2]]) -> GroupPolytope {
        GroupPolytope::fano(&preset("A1xA1").unwrap(), normals).unwrap()
    }

    fn random_interior(gd: &GuilleminData, rng: &mut impl Rng) -> [f64; 2] {
        loop {
            let y = [rng.gen_range(-12.0..12.0), rng.gen_range(-12.0..12.0)];
            if gd.eval(y).is_ok() && gd.facets.iter().all(|(u, c)| c - dot(*u, y) > 1e-2) {
                return y;
            }
        }
    }

    #[test]
    fn value_at_origin() {
        let p = fano(&[[2, 1], [1, 1]]);
        let gd = GuilleminData::new(&p);
        let expect: f64 = gd.facets.iter().map(|(_, c)| 0.5 * c * c.ln()).sum();
        let v = guillemin_eval(&p, &Vec2::zero()).unwrap();
        assert!((v.value - expect).abs() < 1e-12);
        // the orbit sum of normals vanishes
        assert!(v.gradient[0].abs() < 1e-12 && v.gradient[1].abs() < 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for normals in [
            vec![[1, 0]],
            vec![[2, 1], [1, 1]],
            vec![[2, 1], [2, -1], [1, 1], [1, -1]],
        ] {
            let gd = GuilleminData::new(&fano(&normals));
            for _ in 0..30 {
                let y = random_interior(&gd, &mut rng);
                let gv = gd.eval(y).unwrap();
                let h = 1e-5;
                for i in 0..2 {
                    let mut yp = y;
                    let mut ym = y;
                    yp[i] += h;
                    ym[i] -= h;
                    let (fp, fm) = (gd.eval(yp).unwrap(), gd.eval(ym).unwrap());
                    let g = (fp.value - fm.value) / (2.0 * h);
                    assert!((g - gv.gradient[i]).abs() <= 1e-6 * gv.gradient[i].abs().max(1.0));
                    for j in 0..2 {
                        let hij = (fp.gradient[j] - fm.gradient[j]) / (2.0 * h);
                        assert!((hij - gv.hessian[i][j]).abs() <= 1e-6 * gv.hessian[i][j].abs().max(1.0));
                    }
                }
                let hs = gv.hessian;
                assert!(hs[0][0] > 0.0 && hs[0][0] * hs[1][1] - hs[0][1] * hs[1][0] > 0.0);
            }
        }
    }

    #[test]
    fn outside_is_domain_error() {
        let p = fano(&[[1, 0]]);
        assert!(matches!(
            guillemin_eval(&p, &Vec2::from_ints(6, 0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(h0_eval(&p, &Vec2::from_ints(3, 3)), Err(Error::Domain(_))));
        assert!(h0_eval(&p, &Vec2::new(rat(7, 2), rat(1, 3))).unwrap().is_finite());
    }

    #[test]
    fn h0_dual_form_agrees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for normals in [vec![[1, 0]], vec![[2, 1], [1, 1]], vec![[1, 1], [1, -1]]] {
            let gd = GuilleminData::new(&fano(&normals));
            let mut n = 0;
            while n < 25 {
                let y = random_interior(&gd, &mut rng);
                if gd.check_chamber(y).is_err() || gd.boundary_distance(y) < 1e-2 {
                    continue;
                }
                let (a, b) = (gd.h0(y).unwrap(), gd.h0_dual(y).unwrap());
                assert!(
                    (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                    "{normals:?} {y:?}: {a} vs {b}"
                );
                n += 1;
            }
        }
    }

    #[test]
    fn log_sinh_is_stable() {
        for t in [1e-6f64, 0.3, 5.0, 40.0, 800.0] {
            let direct = t.sinh().ln();
            if direct.is_finite() {
                assert!((log_sinh(t) - direct).abs() < 1e-12 * direct.abs().max(1.0));
            }
        }
        assert!((log_sinh(800.0) - (800.0 - std::f64::consts::LN_2)).abs() < 1e-9);
    }
}
