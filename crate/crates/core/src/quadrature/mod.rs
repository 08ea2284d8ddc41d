//! Exact integration against `π(y) dy` over chamber cells.

pub mod pl;
pub mod poly;

pub use pl::PLFunction;
pub use poly::Polynomial2;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, Vec2};
use crate::geometry::ConvexPolygon;
use crate::polytope::ChamberCell;
use crate::rootsys::RootSystem;

/// `∫_poly f dy`, exactly.
pub fn integrate_polygon(poly: &ConvexPolygon, f: &Polynomial2) -> Rational {
    let v = &poly.vertices;
    if v.len() < 3 || f.is_zero() {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for i in 1..v.len() - 1 {
        let e1 = &v[i] - &v[0];
        let e2 = &v[i + 1] - &v[0];
        let jac = e1.cross(&e2).abs();
        if jac.is_zero() {
            continue;
        }
        // (s, t) ↦ v0 + s e1 + t e2
        let xs = Polynomial2::affine(&Vec2::new(e1.x.clone(), e2.x.clone()), &v[0].x);
        let ys = Polynomial2::affine(&Vec2::new(e1.y.clone(), e2.y.clone()), &v[0].y);
        total += f.compose(&xs, &ys).integrate_standard_simplex() * jac;
    }
    total
}

pub fn integrate_poly(cell: &ChamberCell, f: &Polynomial2) -> Rational {
    integrate_polygon(&cell.polygon(), f)
}

pub fn weighted_volume(cell: &ChamberCell, rs: &RootSystem) -> Rational {
    integrate_poly(cell, &rs.weight_poly().poly)
}

/// `(∫ π, ∫ y₁ π, ∫ y₂ π)`.
pub fn moments(cell: &ChamberCell, rs: &RootSystem) -> (Rational, Rational, Rational) {
    let pi = rs.weight_poly().poly;
    let poly = cell.polygon();
    (
        integrate_polygon(&poly, &pi),
        integrate_polygon(&poly, &pi.mul(&Polynomial2::x())),
        integrate_polygon(&poly, &pi.mul(&Polynomial2::y())),
    )
}

pub fn barycenter(cell: &ChamberCell, rs: &RootSystem) -> Result<Vec2> {
    let (v, mx, my) = moments(cell, rs);
    if v.is_zero() {
        return Err(Error::DegenerateCell("zero weighted volume".into()));
    }
    Ok(Vec2::new(mx / &v, my / &v))
}

/// `∫_cell u π dy` for a piecewise-linear `u`, split along its creases.
pub fn integrate_pl(cell: &ChamberCell, u: &PLFunction, rs: &RootSystem) -> Rational {
    let pi = rs.weight_poly().poly;
    let poly = cell.polygon();
    u.regions(&poly)
        .into_iter()
        .map(|(k, region)| {
            let (a, c) = &u.pieces[k];
            integrate_polygon(&region, &Polynomial2::affine(a, c).mul(&pi))
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}
