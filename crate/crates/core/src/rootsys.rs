//! Rank-2 root data: positive roots, Weyl group, ρ, the weight polynomial π
//! and the shifted cones `s·2ρ + Ξ`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Mat2, Rational, Vec2};
use crate::quadrature::poly::Polynomial2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub name: String,
    pub rank: usize,
    pub positive_roots: Vec<Vec2>,
    /// Weyl group acting on `𝔞*` coordinates.
    pub weyl: Vec<Mat2>,
    pub rho: Vec2,
    pub diagram_sym: Option<Mat2>,
    /// Gram matrix of the invariant inner product in these coordinates.
    pub gram: Mat2,
    simple: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeVerdict {
    Interior,
    Boundary,
    Outside,
}

/// Result of testing a point against `scale·2ρ + Ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTest {
    pub verdict: ConeVerdict,
    /// Signed margin per defining inequality; positive means strictly inside.
    pub margins: [Rational; 2],
}

impl ConeTest {
    /// Index and margin of the most violated (or tightest) inequality.
    pub fn worst(&self) -> (usize, Rational) {
        if self.margins[0] <= self.margins[1] {
            (0, self.margins[0].clone())
        } else {
            (1, self.margins[1].clone())
        }
    }
}

pub const PRESETS: [&str; 4] = ["A1xA1", "A2", "B2", "G2"];

pub fn preset(name: &str) -> Result<RootSystem> {
    let (roots, gram, sym): (&[[i64; 2]], Mat2, Option<Mat2>) = match name {
        "A1xA1" => (&[[1, -1], [1, 1]], Mat2::IDENTITY, Some(Mat2([[1, 0], [0, -1]]))),
        "B2" => (&[[1, -1], [0, 1], [1, 0], [1, 1]], Mat2::IDENTITY, None),
        // simple-root coordinates
        "A2" => (
            &[[1, 0], [0, 1], [1, 1]],
            Mat2([[2, -1], [-1, 2]]),
            Some(Mat2([[0, 1], [1, 0]])),
        ),
        "G2" => (
            &[[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]],
            Mat2([[2, -3], [-3, 6]]),
            None,
        ),
        _ => return Err(Error::UnknownRootSystem(name.to_string())),
    };
    RootSystem::build(name, roots, gram, sym)
}

impl RootSystem {
    fn build(name: &str, roots: &[[i64; 2]], gram: Mat2, diagram_sym: Option<Mat2>) -> Result<Self> {
        let positive_roots: Vec<Vec2> = roots.iter().map(|r| Vec2::from_ints(r[0], r[1])).collect();
        let sum = positive_roots.iter().fold(Vec2::zero(), |a, r| &a + r);
        let rho = sum.scale(&rat(1, 2));
        let simple = find_simple(roots).ok_or_else(|| Error::Input(format!("{name}: no simple basis")))?;
        let mut rs = RootSystem {
            name: name.to_string(),
            rank: 2,
            positive_roots,
            weyl: Vec::new(),
            rho,
            diagram_sym,
            gram,
            simple,
        };
        let gens: Vec<Mat2> = simple.iter().map(|&i| rs.reflection(roots[i])).collect::<Result<_>>()?;
        rs.weyl = close_group(&gens);
        Ok(rs)
    }

    /// `s_α = I − 2 α αᵀ G / ⟨α, α⟩`, required to be integral.
    fn reflection(&self, a: [i64; 2]) -> Result<Mat2> {
        let g = self.gram.0;
        let ga = [g[0][0] * a[0] + g[0][1] * a[1], g[1][0] * a[0] + g[1][1] * a[1]];
        let n = a[0] * ga[0] + a[1] * ga[1];
        let mut m = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let num = 2 * a[i] * ga[j];
                if num % n != 0 {
                    return Err(Error::Input(format!("{}: non-integral reflection", self.name)));
                }
                m[i][j] = i64::from(i == j) - num / n;
            }
        }
        Ok(Mat2(m))
    }

    /// `⟨a, b⟩` for the invariant inner product on `𝔞*`.
    pub fn inner(&self, a: &Vec2, b: &Vec2) -> Rational {
        a.dot(&self.gram.apply(b))
    }

    pub fn inner_f64(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let gb = self.gram.apply_f64(b);
        a[0] * gb[0] + a[1] * gb[1]
    }

    pub fn simple_roots(&self) -> [&Vec2; 2] {
        [
            &self.positive_roots[self.simple[0]],
            &self.positive_roots[self.simple[1]],
        ]
    }

    /// Primitive integer normals `n_i` with `⟨n_i, α_j⟩ = 0` for `j ≠ i` and
    /// `⟨n_i, α_i⟩ > 0`; `Ξ = {v : ⟨n_i, v⟩ > 0}`.
    pub fn cone_normals(&self) -> [Vec2; 2] {
        let [a0, a1] = self.simple_roots();
        let mk = |other: &Vec2, own: &Vec2| {
            let g = self.gram.apply(other);
            // n ⟂ G·other
            let mut n = Vec2::new(-&g.y, g.x.clone());
            if self.inner(&n, own).is_negative() {
                n = -&n;
            }
            primitive(&n)
        };
        [mk(a1, a0), mk(a0, a1)]
    }

    /// Test `point ∈ scale·2ρ + Ξ`, strictly (interior) or on its boundary.
    pub fn in_shifted_cone(&self, point: &Vec2, scale: &Rational) -> ConeTest {
        let apex = self.rho.scale(&(int(2) * scale));
        let d = point - &apex;
        let [n0, n1] = self.cone_normals();
        let margins = [self.inner(&n0, &d), self.inner(&n1, &d)];
        let verdict = if margins.iter().any(|m| m.is_negative()) {
            ConeVerdict::Outside
        } else if margins.iter().any(|m| m.is_zero()) {
            ConeVerdict::Boundary
        } else {
            ConeVerdict::Interior
        };
        ConeTest { verdict, margins }
    }

    /// `⟨α, y⟩ ≥ 0` for every positive root.
    pub fn in_closed_chamber(&self, y: &Vec2) -> bool {
        self.positive_roots.iter().all(|a| !self.inner(a, y).is_negative())
    }

    /// Covector `u` is dominant: `α(u) ≥ 0` for every positive root.
    pub fn is_dominant_covector(&self, u: &Vec2) -> bool {
        self.positive_roots.iter().all(|a| !a.dot(u).is_negative())
    }

    /// Weyl action on covectors, `u ↦ w⁻ᵀ u`.
    pub fn act_covector(&self, w: &Mat2, u: &Vec2) -> Vec2 {
        w.inverse_unimodular()
            .expect("Weyl elements are unimodular")
            .transpose()
            .apply(u)
    }

    /// The W-orbit of a covector, deduplicated, in a stable order.
    pub fn covector_orbit(&self, u: &Vec2) -> Vec<Vec2> {
        let mut out: Vec<Vec2> = Vec::new();
        for w in &self.weyl {
            let v = self.act_covector(w, u);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn weight_poly(&self) -> WeightPolynomial {
        let mut p = Polynomial2::constant(int(1));
        for a in &self.positive_roots {
            let ga = self.gram.transpose().apply(a);
            let lin = Polynomial2::affine(&ga, &Rational::zero());
            p = p.mul(&lin.mul(&lin));
        }
        WeightPolynomial { poly: p }
    }

    /// Chamber walls as `(root index, direction)`: the ray on which that simple root
    /// vanishes while the other stays positive.
    pub fn wall_rays(&self) -> [(usize, Vec2); 2] {
        let ray = |root: &Vec2, other: &Vec2| {
            let mut d = self.gram.apply(root).perp();
            if self.inner(other, &d).is_negative() {
                d = -&d;
            }
            primitive(&d)
        };
        let [a0, a1] = self.simple_roots();
        [(self.simple[0], ray(a0, a1)), (self.simple[1], ray(a1, a0))]
    }
}

/// π as an explicit polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPolynomial {
    pub poly: Polynomial2,
}

impl WeightPolynomial {
    pub fn eval(&self, y: &Vec2) -> Rational {
        self.poly.eval(y)
    }

    pub fn eval_f64(&self, y: [f64; 2]) -> f64 {
        self.poly.eval_f64(y)
    }
}

pub fn weight_poly(rs: &RootSystem) -> WeightPolynomial {
    rs.weight_poly()
}

pub fn in_shifted_cone(rs: &RootSystem, point: &Vec2, scale: &Rational) -> ConeVerdict {
    rs.in_shifted_cone(point, scale).verdict
}

fn primitive(v: &Vec2) -> Vec2 {
    // entries are integers up to a common rational factor
    let l = num_integer::Integer::lcm(v.x.denom(), v.y.denom());
    let xi = (&v.x * Rational::from_integer(l.clone())).to_integer();
    let yi = (&v.y * Rational::from_integer(l)).to_integer();
    let g = num_integer::Integer::gcd(&xi, &yi);
    Vec2::new(Rational::from_integer(xi / &g), Rational::from_integer(yi / &g))
}

/// Pair of positive roots such that every positive root is a nonnegative
/// integer combination of them.
fn find_simple(roots: &[[i64; 2]]) -> Option<[usize; 2]> {
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let (a, b) = (roots[i], roots[j]);
            let det = a[0] * b[1] - a[1] * b[0];
            if det == 0 {
                continue;
            }
            let ok = roots.iter().all(|r| {
                let s = r[0] * b[1] - r[1] * b[0];
                let t = a[0] * r[1] - a[1] * r[0];
                s % det == 0 && t % det == 0 && s / det >= 0 && t / det >= 0
            });
            if ok {
                return Some([i, j]);
            }
        }
    }
    None
}

fn close_group(gens: &[Mat2]) -> Vec<Mat2> {
    let mut group = vec![Mat2::IDENTITY];
    let mut frontier = vec![Mat2::IDENTITY];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.mul(&g);
            if !group.contains(&h) {
                group.push(h);
                frontier.push(h);
            }
        }
    }
    group
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a1a1() -> RootSystem {
        preset("A1xA1").unwrap()
    }

    #[test]
    fn a1a1_data() {
        let rs = a1a1();
        assert_eq!(rs.rho, Vec2::from_ints(1, 0));
        assert_eq!(rs.positive_roots, vec![Vec2::from_ints(1, -1), Vec2::from_ints(1, 1)]);
        assert_eq!(rs.weyl.len(), 4);
        assert_eq!(rs.diagram_sym, Some(Mat2([[1, 0], [0, -1]])));
        assert_eq!(rs.cone_normals(), [Vec2::from_ints(1, -1), Vec2::from_ints(1, 1)]);
    }

    #[test]
    fn weyl_oracle_from_reflections() {
        // s_{α1} swaps coordinates, s_{α2} maps (x, y) to (−y, −x)
        let s1 = Mat2([[0, 1], [1, 0]]);
        let s2 = Mat2([[0, -1], [-1, 0]]);
        let mut expect = vec![Mat2::IDENTITY, s1, s2, s1.mul(&s2)];
        let mut got = a1a1().weyl;
        expect.sort();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn group_orders() {
        for (name, n) in [("A1xA1", 4), ("A2", 6), ("B2", 8), ("G2", 12)] {
            let rs = preset(name).unwrap();
            assert_eq!(rs.weyl.len(), n, "{name}");
            for a in &rs.weyl {
                for b in &rs.weyl {
                    assert!(rs.weyl.contains(&a.mul(b)));
                }
            }
        }
        assert!(matches!(preset("E8"), Err(Error::UnknownRootSystem(_))));
    }

    #[test]
    fn weyl_permutes_roots_up_to_sign() {
        for name in PRESETS {
            let rs = preset(name).unwrap();
            for w in &rs.weyl {
                for a in &rs.positive_roots {
                    let b = w.apply(a);
                    assert!(rs.positive_roots.contains(&b) || rs.positive_roots.contains(&-&b));
                }
            }
        }
    }

    #[test]
    fn weight_poly_a1a1() {
        let p = a1a1().weight_poly();
        assert_eq!(p.eval(&Vec2::from_ints(3, 0)), int(81));
        assert_eq!(p.eval(&Vec2::from_ints(2, 2)), int(0));
        // (x² − y²)² expanded independently
        let expect = Polynomial2::monomial(int(1), 4, 0)
            .add(&Polynomial2::monomial(int(-2), 2, 2))
            .add(&Polynomial2::monomial(int(1), 0, 4));
        assert_eq!(p.poly, expect);
    }

    #[test]
    fn weight_poly_invariant_and_homogeneous() {
        for name in PRESETS {
            let rs = preset(name).unwrap();
            let p = rs.weight_poly().poly;
            assert!(p.is_homogeneous());
            assert_eq!(p.degree() as usize, 2 * rs.positive_roots.len());
            for w in &rs.weyl {
                assert_eq!(p.linear_substitute(w), p, "{name}");
            }
        }
    }

    #[test]
    fn shifted_cone_examples() {
        let rs = a1a1();
        let one = int(1);
        assert_eq!(
            in_shifted_cone(&rs, &Vec2::new(rat(18, 7), int(0)), &one),
            ConeVerdict::Interior
        );
        assert_eq!(
            in_shifted_cone(&rs, &Vec2::from_ints(3, 1), &one),
            ConeVerdict::Boundary
        );
        assert_eq!(in_shifted_cone(&rs, &Vec2::from_ints(2, 1), &one), ConeVerdict::Outside);
    }

    #[test]
    fn dominance_exhaustive() {
        for name in PRESETS {
            let rs = preset(name).unwrap();
            let ys: Vec<Vec2> = (-6..=6)
                .flat_map(|a| (-6..=6).map(move |b| Vec2::from_ints(a, b)))
                .filter(|y| rs.in_closed_chamber(y))
                .collect();
            for p in -5..=5 {
                for q in -5..=5 {
                    let u = Vec2::from_ints(p, q);
                    if !rs.is_dominant_covector(&u) {
                        continue;
                    }
                    for w in &rs.weyl {
                        let wu = rs.act_covector(w, &u);
                        for y in &ys {
                            assert!(wu.dot(y) <= u.dot(y), "{name} u={u} y={y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wall_rays_a1a1() {
        let rs = a1a1();
        let [(i0, d0), (i1, d1)] = rs.wall_rays();
        assert_eq!((i0, d0), (0, Vec2::from_ints(1, 1)));
        assert_eq!((i1, d1), (1, Vec2::from_ints(1, -1)));
    }

    proptest! {
        #[test]
        fn cone_scaling(x in -50i64..50, y in -50i64..50, s in 1i64..5, tn in 1i64..9, td in 1i64..9) {
            let rs = a1a1();
            let p = Vec2::new(rat(x, 7), rat(y, 7));
            let s = int(s);
            let t = rat(tn, td);
            prop_assert_eq!(
                in_shifted_cone(&rs, &p, &s),
                in_shifted_cone(&rs, &p.scale(&t), &(&s * &t))
            );
        }
    }
}
