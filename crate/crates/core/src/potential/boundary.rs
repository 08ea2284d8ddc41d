//! Boundary behaviour of `h₀` on `∂(2P₊)`, read off from how facets meet the walls.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::guillemin::{h0_probe, h0_scan, SCAN_MARGIN};
use crate::error::Result;
use crate::exact::{int, Vec2};
use crate::polytope::{EdgeLabel, GroupPolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Vertex(Vec2),
    Edge(Vec2, Vec2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    /// On a facet, away from the walls.
    C1,
    /// On a wall, away from the facets.
    C2,
    /// A wall meeting a facet orthogonal to it.
    #[serde(rename = "C3.1")]
    C31,
    /// A wall meeting a facet and its mirror image.
    #[serde(rename = "C3.2")]
    C32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Bounded,
    DivergesToMinusInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFeature {
    pub location: Location,
    pub case_label: CaseLabel,
    /// The root vanishing on the wall.
    pub alpha0: Option<Vec2>,
    /// Normal of the chamber facet through the point.
    pub u2: Option<[i64; 2]>,
    pub pairing: Option<i64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub features: Vec<BoundaryFeature>,
    pub bounded_above: bool,
    pub uniformly_bounded: bool,
}

impl BoundaryReport {
    pub fn divergent(&self) -> impl Iterator<Item = &BoundaryFeature> {
        self.features
            .iter()
            .filter(|f| f.verdict == Verdict::DivergesToMinusInfinity)
    }
}

fn feature(location: Location, case_label: CaseLabel) -> BoundaryFeature {
    BoundaryFeature {
        location,
        case_label,
        alpha0: None,
        u2: None,
        pairing: None,
        verdict: Verdict::Bounded,
    }
}

/// Label every vertex and edge of `∂(2P₊)`.
pub fn classify_boundary(p: &GroupPolytope) -> BoundaryReport {
    let cell = p.positive_part().scale(&int(2));
    let n = cell.vertices.len();
    let mut features = Vec::with_capacity(2 * n);
    for i in 0..n {
        let before = cell.edge_labels[(i + n - 1) % n];
        let after = cell.edge_labels[i];
        let v = cell.vertices[i].clone();
        let f = match (before, after) {
            (EdgeLabel::Wall(_), EdgeLabel::Wall(_)) => feature(Location::Vertex(v), CaseLabel::C2),
            (EdgeLabel::Facet(_), EdgeLabel::Facet(_)) => feature(Location::Vertex(v), CaseLabel::C1),
            (EdgeLabel::Wall(r), EdgeLabel::Facet(j)) | (EdgeLabel::Facet(j), EdgeLabel::Wall(r)) => {
                let alpha0 = p.rs.positive_roots[r].clone();
                let u2 = p.chamber_facets[j].u;
                let pairing = alpha0
                    .dot(&Vec2::from_ints(u2[0], u2[1]))
                    .to_integer()
                    .to_i64()
                    .expect("small pairing");
                let (case_label, verdict) = match pairing {
                    0 => (CaseLabel::C31, Verdict::Bounded),
                    1 => (CaseLabel::C32, Verdict::Bounded),
                    _ => (CaseLabel::C32, Verdict::DivergesToMinusInfinity),
                };
                BoundaryFeature {
                    location: Location::Vertex(v),
                    case_label,
                    alpha0: Some(alpha0),
                    u2: Some(u2),
                    pairing: Some(pairing),
                    verdict,
                }
            }
        };
        features.push(f);
        let (a, b) = cell.edge(i);
        let label = match after {
            EdgeLabel::Wall(_) => CaseLabel::C2,
            EdgeLabel::Facet(_) => CaseLabel::C1,
        };
        features.push(feature(Location::Edge(a.clone(), b.clone()), label));
    }
    let uniformly_bounded = features.iter().all(|f| f.verdict == Verdict::Bounded);
    BoundaryReport {
        features,
        bounded_above: true,
        uniformly_bounded,
    }
}

/// Grid sizes for the nested `h₀` scans.
pub const SCAN_SIZES: [usize; 3] = [50, 100, 200];
/// Probe radii, as fractions of the diameter of `2P₊`.
pub const PROBE_RADII: [f64; 10] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10];
/// Value a divergent feature must fall below on the smallest probe circle.
pub const DIVERGENCE_FLOOR: f64 = -20.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureProbe {
    pub vertex: Vec2,
    pub verdict: Verdict,
    /// `(radius, min h₀ on the circle)`.
    pub minima: Vec<(f64, f64)>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCrossCheck {
    pub report: BoundaryReport,
    /// Grid maxima for each of [`SCAN_SIZES`].
    pub grid_max: Vec<f64>,
    pub grid_min: Vec<f64>,
    pub maxima_stable: bool,
    pub probes: Vec<FeatureProbe>,
    pub consistent: bool,
}

fn probe_consistent(verdict: Verdict, minima: &[(f64, f64)]) -> bool {
    if minima.len() < 2 {
        return false;
    }
    let tail = &minima[minima.len() - 4.min(minima.len())..];
    match verdict {
        Verdict::DivergesToMinusInfinity => {
            tail.windows(2).all(|w| w[1].1 < w[0].1) && tail[tail.len() - 1].1 < DIVERGENCE_FLOOR
        }
        Verdict::Bounded => tail
            .windows(2)
            .all(|w| (w[1].1 - w[0].1).abs() <= 1e-3 * w[1].1.abs().max(1.0)),
    }
}

/// Compare the symbolic labels with sampled `h₀`: nested grid maxima must settle, and
/// on shrinking circles around each vertex feature the minima must settle (bounded)
/// or keep falling below [`DIVERGENCE_FLOOR`] (divergent).
pub fn cross_check(p: &GroupPolytope) -> Result<BoundaryCrossCheck> {
    let report = classify_boundary(p);
    let scans = SCAN_SIZES
        .iter()
        .map(|&n| h0_scan(p, n, SCAN_MARGIN))
        .collect::<Result<Vec<_>>>()?;
    let grid_max: Vec<f64> = scans.iter().map(|s| s.max).collect();
    let grid_min: Vec<f64> = scans.iter().map(|s| s.min).collect();
    let (a, b) = (grid_max[grid_max.len() - 2], grid_max[grid_max.len() - 1]);
    let maxima_stable = (a - b).abs() <= 1e-2 * b.abs().max(1.0);
    let probes: Vec<FeatureProbe> = report
        .features
        .iter()
        .filter_map(|f| match &f.location {
            Location::Vertex(v) => {
                let minima: Vec<(f64, f64)> = h0_probe(p, v.to_f64(), &PROBE_RADII)
                    .into_iter()
                    .filter_map(|(r, m)| m.map(|m| (r, m)))
                    .collect();
                let consistent = probe_consistent(f.verdict, &minima);
                Some(FeatureProbe {
                    vertex: v.clone(),
                    verdict: f.verdict,
                    minima,
                    consistent,
                })
            }
            Location::Edge(..) => None,
        })
        .collect();
    let consistent = maxima_stable && probes.iter().all(|p| p.consistent);
    Ok(BoundaryCrossCheck {
        report,
        grid_max,
        grid_min,
        maxima_stable,
        probes,
        consistent,
    })
}
