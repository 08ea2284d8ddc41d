//! Convex piecewise-linear functions `u(y) = max_k (⟨a_k, y⟩ + c_k)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{Rational, Vec2};
use crate::geometry::{Constraint, ConvexPolygon};
use crate::rootsys::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub a: Vec2,
    #[serde(with = "crate::exact::serde_rational")]
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub pieces: Vec<(Vec2, Rational)>,
    pub winvariant: bool,
}

impl PLFunction {
    /// Duplicate pieces are dropped.
    pub fn new(pieces: Vec<(Vec2, Rational)>) -> Self {
        let mut out: Vec<(Vec2, Rational)> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        assert!(!out.is_empty(), "a PL function needs at least one piece");
        PLFunction {
            pieces: out,
            winvariant: false,
        }
    }

    pub fn zero() -> Self {
        PLFunction {
            pieces: vec![(Vec2::zero(), Rational::zero())],
            winvariant: true,
        }
    }

    /// Close the pieces under the Weyl action on the linear parts.
    pub fn w_closed(rs: &RootSystem, pieces: &[(Vec2, Rational)]) -> Self {
        let mut all = Vec::new();
        for (a, c) in pieces {
            for b in rs.covector_orbit(a) {
                all.push((b, c.clone()));
            }
        }
        let mut u = PLFunction::new(all);
        u.winvariant = true;
        u
    }

    pub fn is_w_closed(&self, rs: &RootSystem) -> bool {
        self.pieces.iter().all(|(a, c)| {
            rs.weyl
                .iter()
                .all(|w| self.pieces.contains(&(rs.act_covector(w, a), c.clone())))
        })
    }

    pub fn eval(&self, y: &Vec2) -> Rational {
        self.pieces.iter().map(|(a, c)| a.dot(y) + c).max().expect("nonempty")
    }

    pub fn eval_f64(&self, y: [f64; 2]) -> f64 {
        self.pieces
            .iter()
            .map(|(a, c)| {
                let a = a.to_f64();
                a[0] * y[0] + a[1] * y[1] + crate::exact::to_f64(c)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn add_constant(&self, k: &Rational) -> PLFunction {
        PLFunction {
            pieces: self.pieces.iter().map(|(a, c)| (a.clone(), c + k)).collect(),
            winvariant: self.winvariant,
        }
    }

    /// `t·u1 + (1 − t)·u0`, again a max of affine pieces.
    pub fn interpolate(u0: &PLFunction, u1: &PLFunction, t: &Rational) -> PLFunction {
        let s = Rational::one() - t;
        if t.is_zero() {
            return u0.clone();
        }
        if s.is_zero() {
            return u1.clone();
        }
        let mut pieces = Vec::with_capacity(u0.pieces.len() * u1.pieces.len());
        for (a0, c0) in &u0.pieces {
            for (a1, c1) in &u1.pieces {
                pieces.push((&a1.scale(t) + &a0.scale(&s), c1 * t + c0 * &s));
            }
        }
        let mut u = PLFunction::new(pieces);
        u.winvariant = u0.winvariant && u1.winvariant;
        u
    }

    /// Drop pieces that are nowhere maximal on `domain`.
    pub fn prune(&self, domain: &ConvexPolygon) -> PLFunction {
        let keep: Vec<(Vec2, Rational)> = self
            .regions(domain)
            .into_iter()
            .map(|(k, _)| self.pieces[k].clone())
            .collect();
        if keep.is_empty() {
            return self.clone();
        }
        PLFunction {
            pieces: keep,
            winvariant: self.winvariant,
        }
    }

    /// Linearity regions within `domain`: `(piece index, region)` for every piece
    /// that is maximal on a set of positive area.
    pub fn regions(&self, domain: &ConvexPolygon) -> Vec<(usize, ConvexPolygon)> {
        let mut out = Vec::new();
        for (k, (ak, ck)) in self.pieces.iter().enumerate() {
            let mut region = domain.clone();
            for (j, (aj, cj)) in self.pieces.iter().enumerate() {
                if j == k || region.is_empty() {
                    continue;
                }
                // ⟨a_j − a_k, y⟩ ≤ c_k − c_j; pieces are distinct so overlaps have no area
                region = region.clip(&Constraint::new(aj - ak, ck - cj));
            }
            if !region.is_empty() {
                out.push((k, region));
            }
        }
        out
    }

    pub fn to_pieces(&self) -> Vec<Piece> {
        self.pieces
            .iter()
            .map(|(a, c)| Piece {
                a: a.clone(),
                c: c.clone(),
            })
            .collect()
    }
}
