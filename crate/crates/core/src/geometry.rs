//! Convex polygons under half-plane clipping, exact and floating point.

use num_traits::{Signed, Zero};

use crate::exact::{Rational, Vec2};

/// A closed half-plane `normal · y <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec2,
    pub offset: Rational,
}

impl Constraint {
    pub fn new(normal: Vec2, offset: Rational) -> Self {
        Constraint { normal, offset }
    }

    /// `offset - normal · y`; nonnegative inside.
    pub fn slack(&self, y: &Vec2) -> Rational {
        &self.offset - self.normal.dot(y)
    }

    /// Intersection point of the two boundary lines, if they are not parallel.
    pub fn meet(&self, other: &Constraint) -> Option<Vec2> {
        let det = self.normal.cross(&other.normal);
        if det.is_zero() {
            return None;
        }
        let x = (&self.offset * &other.normal.y - &other.offset * &self.normal.y) / &det;
        let y = (&self.normal.x * &other.offset - &other.normal.x * &self.offset) / &det;
        Some(Vec2::new(x, y))
    }
}

/// Counterclockwise convex polygon with exact vertices. May be empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConvexPolygon {
    pub vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Self {
        let mut p = ConvexPolygon { vertices };
        if p.signed_area2().is_negative() {
            p.vertices.reverse();
        }
        p
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 3 || self.signed_area2().is_zero()
    }

    /// Twice the signed area (positive for counterclockwise).
    pub fn signed_area2(&self) -> Rational {
        let n = self.vertices.len();
        (0..n).fold(Rational::zero(), |acc, i| {
            acc + self.vertices[i].cross(&self.vertices[(i + 1) % n])
        })
    }

    /// Keep the part satisfying `c`. Sutherland-Hodgman specialised to convex input.
    pub fn clip(&self, c: &Constraint) -> ConvexPolygon {
        let n = self.vertices.len();
        if n == 0 {
            return ConvexPolygon::default();
        }
        let slacks: Vec<Rational> = self.vertices.iter().map(|v| c.slack(v)).collect();
        if slacks.iter().all(|s| !s.is_negative()) {
            return self.clone();
        }
        let mut out: Vec<Vec2> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (&self.vertices[i], &self.vertices[j]);
            let (sa, sb) = (&slacks[i], &slacks[j]);
            if !sa.is_negative() {
                push_distinct(&mut out, a.clone());
            }
            if (sa.is_positive() && sb.is_negative()) || (sa.is_negative() && sb.is_positive()) {
                let t = sa / (sa - sb);
                push_distinct(&mut out, a + &(&(b - a) * &t));
            }
        }
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        let p = ConvexPolygon { vertices: out };
        if p.is_empty() {
            ConvexPolygon::default()
        } else {
            p
        }
    }

    pub fn clip_all<'a>(&self, cs: impl IntoIterator<Item = &'a Constraint>) -> ConvexPolygon {
        let mut p = self.clone();
        for c in cs {
            if p.is_empty() {
                break;
            }
            p = p.clip(c);
        }
        p
    }

    /// Drop vertices lying in the interior of an edge.
    pub fn without_collinear(&self) -> ConvexPolygon {
        let n = self.vertices.len();
        if n < 3 {
            return self.clone();
        }
        let keep: Vec<Vec2> = (0..n)
            .filter(|&i| {
                let prev = &self.vertices[(i + n - 1) % n];
                let next = &self.vertices[(i + 1) % n];
                let cur = &self.vertices[i];
                !(cur - prev).cross(&(next - cur)).is_zero()
            })
            .map(|i| self.vertices[i].clone())
            .collect();
        ConvexPolygon { vertices: keep }
    }

    pub fn contains(&self, p: &Vec2) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            !(b - a).cross(&(p - a)).is_negative()
        })
    }

    pub fn scale(&self, t: &Rational) -> ConvexPolygon {
        ConvexPolygon::new(self.vertices.iter().map(|v| v.scale(t)).collect())
    }

    pub fn to_f64(&self) -> PolygonF {
        PolygonF {
            vertices: self.vertices.iter().map(Vec2::to_f64).collect(),
        }
    }
}

fn push_distinct(out: &mut Vec<Vec2>, v: Vec2) {
    if out.last() != Some(&v) {
        out.push(v);
    }
}

/// Floating-point counterclockwise convex polygon.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolygonF {
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonF {
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
    }

    /// Keep `normal · x <= offset`.
    pub fn clip(&self, normal: [f64; 2], offset: f64) -> PolygonF {
        let n = self.vertices.len();
        if n == 0 {
            return PolygonF::default();
        }
        let slack = |v: [f64; 2]| offset - (normal[0] * v[0] + normal[1] * v[1]);
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let (sa, sb) = (slack(a), slack(b));
            if sa >= 0.0 {
                out.push(a);
            }
            if (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0) {
                let t = sa / (sa - sb);
                out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
            }
        }
        PolygonF { vertices: out }
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for a in &self.vertices {
            for b in &self.vertices {
                d = d.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
            }
        }
        d
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0.0
        })
    }

    /// Fan triangulation from vertex 0.
    pub fn triangles(&self) -> impl Iterator<Item = [[f64; 2]; 3]> + '_ {
        let v = &self.vertices;
        (1..v.len().saturating_sub(1)).map(move |i| [v[0], v[i], v[i + 1]])
    }
}
