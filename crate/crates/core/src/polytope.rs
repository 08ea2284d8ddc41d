//! W-invariant rational polygons given by their chamber facets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{gcd_i64, int, lcm_of_denominators, Rational, Vec2};
use crate::geometry::{Constraint, ConvexPolygon};
use crate::rootsys::RootSystem;

/// `λ − ⟨u, y⟩ ≥ 0` with primitive dominant `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub u: [i64; 2],
    pub lambda: Rational,
}

impl HalfPlane {
    pub fn normal(&self) -> Vec2 {
        Vec2::from_ints(self.u[0], self.u[1])
    }

    pub fn constraint(&self) -> Constraint {
        Constraint::new(self.normal(), self.lambda.clone())
    }

    /// `l(y) = λ − ⟨u, y⟩`.
    pub fn value(&self, y: &Vec2) -> Rational {
        &self.lambda - self.normal().dot(y)
    }

    fn sort_key(&self) -> (i64, i64, Rational) {
        (self.u[0], -self.u[1], self.lambda.clone())
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u[0], self.u[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSpec {
    /// `λ = 1 + 2ρ(u)`.
    Auto,
    Value(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// Wall on which the given positive root vanishes.
    Wall(usize),
    /// Index into the chamber facet list.
    Facet(usize),
}

/// `P₊` as a counterclockwise vertex cycle starting at the origin.
/// Edge `i` joins vertex `i` to vertex `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberCell {
    pub vertices: Vec<Vec2>,
    pub edge_labels: Vec<EdgeLabel>,
}

impl ChamberCell {
    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.clone(),
        }
    }

    pub fn scale(&self, t: &Rational) -> ChamberCell {
        ChamberCell {
            vertices: self.vertices.iter().map(|v| v.scale(t)).collect(),
            edge_labels: self.edge_labels.clone(),
        }
    }

    pub fn edge(&self, i: usize) -> (&Vec2, &Vec2) {
        (&self.vertices[i], &self.vertices[(i + 1) % self.vertices.len()])
    }
}

#[derive(Clone, Debug)]
pub struct GroupPolytope {
    pub rs: RootSystem,
    pub chamber_facets: Vec<HalfPlane>,
    pub fano_normalized: bool,
    cell: ChamberCell,
}

impl PartialEq for GroupPolytope {
    fn eq(&self, o: &Self) -> bool {
        self.rs.name == o.rs.name
            && self.chamber_facets == o.chamber_facets
            && self.fano_normalized == o.fano_normalized
    }
}

impl Eq for GroupPolytope {}

pub fn fano_lambda(rs: &RootSystem, u: [i64; 2]) -> Rational {
    int(1) + int(2) * rs.rho.dot(&Vec2::from_ints(u[0], u[1]))
}

impl GroupPolytope {
    pub fn from_chamber_facets(rs: &RootSystem, facets: &[([i64; 2], LambdaSpec)]) -> Result<Self> {
        let mut hs = Vec::with_capacity(facets.len());
        for (u, l) in facets {
            if gcd_i64(u[0], u[1]) != 1 {
                return Err(Error::NonPrimitive(u[0], u[1]));
            }
            if !rs.is_dominant_covector(&Vec2::from_ints(u[0], u[1])) {
                return Err(Error::NotDominant(u[0], u[1]));
            }
            let fano = fano_lambda(rs, *u);
            let lambda = match l {
                LambdaSpec::Auto => fano,
                LambdaSpec::Value(v) => {
                    if !v.is_positive() {
                        return Err(Error::Input(format!(
                            "lambda for ({}, {}) must be positive",
                            u[0], u[1]
                        )));
                    }
                    v.clone()
                }
            };
            if hs.iter().any(|h: &HalfPlane| h.u == *u) {
                return Err(Error::Input(format!("duplicate facet ({}, {})", u[0], u[1])));
            }
            hs.push(HalfPlane { u: *u, lambda });
        }
        let fano = is_fano(rs, &hs);
        Self::from_halfplanes(rs, hs, fano)
    }

    /// Fano-normalized polytope from chamber normals.
    pub fn fano(rs: &RootSystem, normals: &[[i64; 2]]) -> Result<Self> {
        let f: Vec<_> = normals.iter().map(|u| (*u, LambdaSpec::Auto)).collect();
        Self::from_chamber_facets(rs, &f)
    }

    fn from_halfplanes(rs: &RootSystem, facets: Vec<HalfPlane>, fano_normalized: bool) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::Unbounded);
        }
        let cell = chamber_cell(rs, &facets)?;
        Ok(GroupPolytope {
            rs: rs.clone(),
            chamber_facets: facets,
            fano_normalized,
            cell,
        })
    }

    pub fn positive_part(&self) -> &ChamberCell {
        &self.cell
    }

    pub fn normals(&self) -> Vec<[i64; 2]> {
        self.chamber_facets.iter().map(|h| h.u).collect()
    }

    /// Facets of the full polytope: W-orbits of the chamber facets.
    pub fn orbit_facets(&self) -> Vec<(Vec2, Rational)> {
        let mut out: Vec<(Vec2, Rational)> = Vec::new();
        for h in &self.chamber_facets {
            for v in self.rs.covector_orbit(&h.normal()) {
                if !out.iter().any(|(w, _)| *w == v) {
                    out.push((v, h.lambda.clone()));
                }
            }
        }
        out
    }

    /// Vertices of the full polygon `P`, counterclockwise.
    pub fn full_polygon(&self) -> ConvexPolygon {
        let mut b = Rational::one();
        for v in &self.cell.vertices {
            for w in &self.rs.weyl {
                let wv = w.apply(v);
                b = b.max(wv.x.abs()).max(wv.y.abs());
            }
        }
        let b = b + int(1);
        let nb = -&b;
        let square = ConvexPolygon::new(vec![
            Vec2::new(nb.clone(), nb.clone()),
            Vec2::new(b.clone(), nb.clone()),
            Vec2::new(b.clone(), b.clone()),
            Vec2::new(nb, b),
        ]);
        let cs: Vec<Constraint> = self
            .orbit_facets()
            .into_iter()
            .map(|(u, l)| Constraint::new(u, l))
            .collect();
        square.clip_all(&cs).without_collinear()
    }

    pub fn is_fine(&self) -> bool {
        let facets = self.orbit_facets();
        self.full_polygon()
            .vertices
            .iter()
            .all(|v| facets.iter().filter(|(u, l)| (l - u.dot(v)).is_zero()).count() == self.rs.rank)
    }

    /// Least `m` with `mP` a lattice polygon.
    pub fn multiple(&self) -> BigInt {
        let p = self.full_polygon();
        lcm_of_denominators(p.vertices.iter().flat_map(|v| [&v.x, &v.y]))
    }

    /// `p` of the facet cutting the positive x-axis (A1xA1 coordinates).
    pub fn p_zero(&self) -> Result<i64> {
        if self.rs.name != "A1xA1" {
            return Err(Error::Unsupported(format!("p_zero for {}", self.rs.name)));
        }
        let mut best: Option<(Rational, i64)> = None;
        for h in &self.chamber_facets {
            // every dominant A1xA1 normal has p ≥ 1
            let x = &h.lambda / int(h.u[0]);
            best = match best {
                None => Some((x, h.u[0])),
                Some((bx, bp)) => match x.cmp(&bx) {
                    Ordering::Less => Some((x, h.u[0])),
                    Ordering::Equal => Some((bx, bp.max(h.u[0]))),
                    Ordering::Greater => Some((bx, bp)),
                },
            };
        }
        Ok(best.expect("at least one facet").1)
    }

    /// Facets sorted by `(p, −q)`.
    pub fn sorted_facets(&self) -> Vec<HalfPlane> {
        let mut f = self.chamber_facets.clone();
        f.sort_by_key(HalfPlane::sort_key);
        f
    }

    /// The smaller of the facet set and its diagram mirror.
    pub fn canonical_form(&self) -> GroupPolytope {
        let own = self.sorted_facets();
        let Some(d) = self.rs.diagram_sym else {
            return self.with_facets(own);
        };
        let dt = d
            .inverse_unimodular()
            .expect("diagram symmetry is unimodular")
            .transpose();
        let mut mirror: Vec<HalfPlane> = own
            .iter()
            .map(|h| HalfPlane {
                u: dt.apply_int(h.u),
                lambda: h.lambda.clone(),
            })
            .collect();
        mirror.sort_by_key(HalfPlane::sort_key);
        let ko: Vec<_> = own.iter().map(HalfPlane::sort_key).collect();
        let km: Vec<_> = mirror.iter().map(HalfPlane::sort_key).collect();
        if km < ko {
            self.with_facets(mirror)
        } else {
            self.with_facets(own)
        }
    }

    fn with_facets(&self, facets: Vec<HalfPlane>) -> GroupPolytope {
        let fano = self.fano_normalized;
        GroupPolytope::from_halfplanes(&self.rs, facets, fano).expect("symmetric image of a valid polytope")
    }

    /// Dilate by `t > 0`.
    pub fn scale(&self, t: &Rational) -> GroupPolytope {
        assert!(t.is_positive(), "scale factor must be positive");
        let facets: Vec<HalfPlane> = self
            .chamber_facets
            .iter()
            .map(|h| HalfPlane {
                u: h.u,
                lambda: &h.lambda * t,
            })
            .collect();
        // the flag tracks the data, so scaling back restores it
        let fano_normalized = is_fano(&self.rs, &facets);
        GroupPolytope {
            rs: self.rs.clone(),
            chamber_facets: facets,
            fano_normalized,
            cell: self.cell.scale(t),
        }
    }

    /// Strictly inside `P` (all facet values positive).
    pub fn contains_interior(&self, y: &Vec2) -> bool {
        self.orbit_facets().iter().all(|(u, l)| (l - u.dot(y)).is_positive())
    }

    pub fn facet_label(&self) -> String {
        self.sorted_facets()
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Diameter of `P₊` in floating point.
    pub fn diameter_f64(&self) -> f64 {
        self.cell.polygon().to_f64().diameter()
    }
}

fn is_fano(rs: &RootSystem, facets: &[HalfPlane]) -> bool {
    facets.iter().all(|h| h.lambda == fano_lambda(rs, h.u))
}

/// Clip the chamber by the facets and label the edges.
fn chamber_cell(rs: &RootSystem, facets: &[HalfPlane]) -> Result<ChamberCell> {
    let [(i0, r0), (i1, r1)] = rs.wall_rays();
    let [a0, a1] = rs.simple_roots();
    let wall = |a: &Vec2| Constraint::new(-&rs.gram.transpose().apply(a), Rational::zero());
    let wall_cons = [(i0, wall(a0)), (i1, wall(a1))];

    // φ(y) linear with φ(r0) = φ(r1) = 1.
    let det = r0.cross(&r1);
    let phi_normal = Vec2::new(&r1.y - &r0.y, &r0.x - &r1.x).scale(&(int(1) / &det));
    let phi = |y: &Vec2| phi_normal.dot(y);

    let mut lines: Vec<Constraint> = facets.iter().map(HalfPlane::constraint).collect();
    lines.extend(wall_cons.iter().map(|(_, c)| c.clone()));
    let mut m = Rational::one();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if let Some(p) = lines[a].meet(&lines[b]) {
                m = m.max(phi(&p));
            }
        }
    }
    let m = m * int(2) + int(1);
    let tri = ConvexPolygon::new(vec![Vec2::zero(), r0.scale(&m), r1.scale(&m)]);
    let cs: Vec<Constraint> = facets.iter().map(HalfPlane::constraint).collect();
    let poly = tri.clip_all(&cs).without_collinear();
    if poly.is_empty() {
        return Err(Error::DegenerateCell("empty positive part".into()));
    }
    if poly.vertices.iter().any(|v| phi(v) == m) {
        return Err(Error::Unbounded);
    }
    let n = poly.vertices.len();
    let start = poly
        .vertices
        .iter()
        .position(Vec2::is_zero)
        .ok_or_else(|| Error::DegenerateCell("origin is not a vertex".into()))?;
    let vertices: Vec<Vec2> = (0..n).map(|k| poly.vertices[(start + k) % n].clone()).collect();

    let mut labels = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (&vertices[k], &vertices[(k + 1) % n]);
        let on = |c: &Constraint| c.slack(a).is_zero() && c.slack(b).is_zero();
        let label = if let Some((i, _)) = wall_cons.iter().find(|(_, c)| on(c)) {
            EdgeLabel::Wall(*i)
        } else if let Some(j) = facets.iter().position(|h| on(&h.constraint())) {
            EdgeLabel::Facet(j)
        } else {
            return Err(Error::DegenerateCell(format!("edge {a} -> {b} has no supporting line")));
        };
        labels.push(label);
    }
    for j in 0..facets.len() {
        if !labels.contains(&EdgeLabel::Facet(j)) {
            return Err(Error::RedundantFacet(j));
        }
    }
    Ok(ChamberCell {
        vertices,
        edge_labels: labels,
    })
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::preset;
    use proptest::prelude::*;

    fn rs() -> RootSystem {
        preset("A1xA1").unwrap()
    }

    fn fano(normals: &[[i64; 2]]) -> GroupPolytope {
        GroupPolytope::fano(&rs(), normals).unwrap()
    }

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::from_ints(x, y)
    }

    fn set(vs: &[Vec2]) -> Vec<Vec2> {
        let mut s = vs.to_vec();
        s.sort();
        s
    }

    /// Independent oracle: all pairwise intersections of facet and wall lines that
    /// satisfy every constraint.
    fn vertex_oracle(p: &GroupPolytope) -> Vec<Vec2> {
        let mut lines: Vec<Constraint> = p.chamber_facets.iter().map(HalfPlane::constraint).collect();
        lines.push(Constraint::new(v(-1, 1), int(0)));
        lines.push(Constraint::new(v(-1, -1), int(0)));
        let mut out = Vec::new();
        for a in 0..lines.len() {
            for b in a + 1..lines.len() {
                if let Some(x) = lines[a].meet(&lines[b]) {
                    if lines.iter().all(|c| !c.slack(&x).is_negative()) && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
        set(&out)
    }

    #[test]
    fn single_facet_triangles() {
        let p = fano(&[[1, 0]]);
        assert_eq!(p.chamber_facets[0].lambda, int(3));
        assert_eq!(set(&p.positive_part().vertices), set(&[v(0, 0), v(3, 3), v(3, -3)]));
        let p = fano(&[[2, 1]]);
        assert_eq!(p.chamber_facets[0].lambda, int(5));
        assert_eq!(
            set(&p.positive_part().vertices),
            set(&[v(0, 0), Vec2::new(rat(5, 3), rat(5, 3)), v(5, -5)])
        );
        assert_eq!(set(&p.positive_part().vertices), vertex_oracle(&p));
    }

    #[test]
    fn unbounded_and_invalid() {
        assert_eq!(GroupPolytope::fano(&rs(), &[[1, 1]]).unwrap_err(), Error::Unbounded);
        assert_eq!(
            GroupPolytope::fano(&rs(), &[[2, 4]]).unwrap_err(),
            Error::NonPrimitive(2, 4)
        );
        assert_eq!(
            GroupPolytope::fano(&rs(), &[[1, 2]]).unwrap_err(),
            Error::NotDominant(1, 2)
        );
        assert!(matches!(
            GroupPolytope::fano(&rs(), &[[1, 0], [1, 0]]),
            Err(Error::Input(_))
        ));
        // x = 3 only touches the square cut out by (1,±1)
        assert_eq!(
            GroupPolytope::fano(&rs(), &[[1, 1], [1, -1], [1, 0]]).unwrap_err(),
            Error::RedundantFacet(2)
        );
    }

    #[test]
    fn positive_part_examples() {
        let p = fano(&[[2, 1], [1, -1]]);
        let expect = set(&[
            v(0, 0),
            Vec2::new(rat(5, 3), rat(5, 3)),
            Vec2::new(rat(8, 3), rat(-1, 3)),
            Vec2::new(rat(3, 2), rat(-3, 2)),
        ]);
        assert_eq!(set(&p.positive_part().vertices), expect);
        assert_eq!(vertex_oracle(&p), expect);

        let p = fano(&[[1, 0], [1, 1]]);
        assert_eq!(
            set(&p.positive_part().vertices),
            set(&[v(0, 0), Vec2::new(rat(3, 2), rat(3, 2)), v(3, 0), v(3, -3)])
        );
        let p = fano(&[[1, -1], [1, 1]]);
        assert_eq!(
            set(&p.positive_part().vertices),
            set(&[
                v(0, 0),
                Vec2::new(rat(3, 2), rat(3, 2)),
                v(3, 0),
                Vec2::new(rat(3, 2), rat(-3, 2))
            ])
        );
    }

    #[test]
    fn cell_orientation_and_labels() {
        let p = fano(&[[2, 1], [1, -1]]);
        let c = p.positive_part();
        assert!(c.vertices[0].is_zero());
        assert!(c.polygon().signed_area2().is_positive());
        // origin -> lower wall first, upper wall closes the cycle
        assert_eq!(c.edge_labels.first(), Some(&EdgeLabel::Wall(1)));
        assert_eq!(c.edge_labels.last(), Some(&EdgeLabel::Wall(0)));
        assert_eq!(c.edge_labels.len(), 4);
    }

    #[test]
    fn vertex_facet_duality() {
        for normals in [
            vec![[2, 1], [2, -1], [1, 1], [1, -1]],
            vec![[2, 1], [1, 0], [1, 1]],
            vec![[5, 3], [4, 3], [2, 1]],
        ] {
            let p = fano(&normals);
            let c = p.positive_part();
            let n = c.vertices.len();
            let walls = [Constraint::new(v(-1, 1), int(0)), Constraint::new(v(-1, -1), int(0))];
            for (k, vert) in c.vertices.iter().enumerate() {
                let incident = [c.edge_labels[(k + n - 1) % n], c.edge_labels[k]];
                for (j, h) in p.chamber_facets.iter().enumerate() {
                    let s = h.value(vert);
                    if incident.contains(&EdgeLabel::Facet(j)) {
                        assert!(s.is_zero());
                    } else {
                        assert!(s.is_positive(), "{normals:?} vertex {vert} facet {h}");
                    }
                }
                for (i, w) in walls.iter().enumerate() {
                    let s = w.slack(vert);
                    assert_eq!(s.is_zero(), incident.contains(&EdgeLabel::Wall(i)) || vert.is_zero());
                }
            }
        }
    }

    #[test]
    fn multiples_and_fineness() {
        assert_eq!(fano(&[[2, 1]]).multiple(), BigInt::from(3));
        assert_eq!(fano(&[[2, -1], [2, 1]]).multiple(), BigInt::from(6));
        assert_eq!(fano(&[[1, 0]]).multiple(), BigInt::from(1));
        assert_eq!(fano(&[[1, -1], [1, 1]]).multiple(), BigInt::from(1));
        assert!(fano(&[[1, 0]]).is_fine());
        assert!(fano(&[[2, 1], [2, -1], [1, 1], [1, -1]]).is_fine());
        let p = fano(&[[2, 1]]);
        let m = Rational::from_integer(p.multiple());
        assert_eq!(p.scale(&m).multiple(), BigInt::from(1));
    }

    #[test]
    fn full_polygon_is_w_stable() {
        let p = fano(&[[2, 1], [1, -1]]);
        let full = set(&p.full_polygon().vertices);
        for w in &p.rs.weyl {
            let img: Vec<Vec2> = full.iter().map(|x| w.apply(x)).collect();
            assert_eq!(set(&img), full);
        }
        // (1,−1) meets the lower wall orthogonally there, so (3/2,−3/2) is not a vertex of P
        assert!(!full.contains(&Vec2::new(rat(3, 2), rat(-3, 2))));
    }

    #[test]
    fn p_zero_examples() {
        assert_eq!(fano(&[[1, 0], [1, 1]]).p_zero().unwrap(), 1);
        assert_eq!(fano(&[[2, 1], [1, 1]]).p_zero().unwrap(), 2);
        assert_eq!(fano(&[[5, 3]]).p_zero().unwrap(), 5);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            fano(&[[1, 0], [1, -1]]).canonical_form().normals(),
            vec![[1, 1], [1, 0]]
        );
        assert_eq!(
            fano(&[[1, -1], [1, 1]]).canonical_form().normals(),
            vec![[1, 1], [1, -1]]
        );
        assert_eq!(fano(&[[2, -1]]).canonical_form().normals(), vec![[2, 1]]);
        assert_eq!(fano(&[[2, 1]]).canonical_form().normals(), vec![[2, 1]]);
        // mirrored vertex sets coincide after y -> -y
        let a = fano(&[[1, 0], [1, -1]]);
        let b = a.canonical_form();
        let flip: Vec<Vec2> = a
            .positive_part()
            .vertices
            .iter()
            .map(|x| Vec2::new(x.x.clone(), -&x.y))
            .collect();
        assert_eq!(set(&flip), set(&b.positive_part().vertices));
    }

    #[test]
    fn scaling() {
        let p = fano(&[[1, 0]]);
        let s = p.scale(&int(2));
        assert_eq!(set(&s.positive_part().vertices), set(&[v(0, 0), v(6, 6), v(6, -6)]));
        assert!(!s.fano_normalized);
        assert_eq!(p.scale(&int(1)), p);
        assert_eq!(s.scale(&rat(1, 2)), p);
    }

    proptest! {
        #[test]
        fn w_invariance_random(mask in 1u32..64) {
            let pool = [[1, 0], [2, 1], [2, -1], [3, 1], [3, -1], [3, 2]];
            let normals: Vec<[i64; 2]> = (0..6).filter(|k| mask & (1 << k) != 0).map(|k| pool[k]).collect();
            if let Ok(p) = GroupPolytope::fano(&rs(), &normals) {
                let full = set(&p.full_polygon().vertices);
                for w in &p.rs.weyl {
                    let img: Vec<Vec2> = full.iter().map(|x| w.apply(x)).collect();
                    prop_assert_eq!(set(&img), full.clone());
                }
                prop_assert_eq!(set(&p.positive_part().vertices), vertex_oracle(&p));
                prop_assert!(p.is_fine());
            }
        }
    }
}
