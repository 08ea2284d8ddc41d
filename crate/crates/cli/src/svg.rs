//! SVG 1.1 figure of `P₊`: Weyl walls, the cone `2ρ + Ξ`, `2ρ` and the barycenter.

use std::fmt::Write;

use mpl_core::geometry::PolygonF;
use mpl_core::{AnalysisReport, GroupPolytope, Vec2};

const SIZE: f64 = 480.0;
const PAD: f64 = 24.0;

struct View {
    lo: [f64; 2],
    hi: [f64; 2],
    scale: f64,
}

impl View {
    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        (
            PAD + (p[0] - self.lo[0]) * self.scale,
            PAD + (self.hi[1] - p[1]) * self.scale,
        )
    }

    fn frame(&self) -> PolygonF {
        let (a, b) = (self.lo, self.hi);
        PolygonF {
            vertices: vec![a, [b[0], a[1]], b, [a[0], b[1]]],
        }
    }
}

fn pts(view: &View, vs: &[[f64; 2]]) -> String {
    vs.iter()
        .map(|&v| {
            let (x, y) = view.px(v);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Far end of the ray `t·d`, `t ≥ 0`, inside the view box (origin assumed inside).
fn ray_end(view: &View, d: [f64; 2]) -> [f64; 2] {
    let mut t = f64::INFINITY;
    for k in 0..2 {
        if d[k] > 0.0 {
            t = t.min(view.hi[k] / d[k]);
        } else if d[k] < 0.0 {
            t = t.min(view.lo[k] / d[k]);
        }
    }
    [t * d[0], t * d[1]]
}

pub fn figure(p: &GroupPolytope, report: &AnalysisReport) -> String {
    let rs = &p.rs;
    let cell: Vec<[f64; 2]> = p.positive_part().vertices.iter().map(Vec2::to_f64).collect();
    let rho2 = rs.rho.scale(&mpl_core::rat(2, 1)).to_f64();
    let bar = report.barycenter_P.to_f64();
    let mut lo = [0.0f64, 0.0];
    let mut hi = [0.0f64, 0.0];
    for v in cell.iter().chain([&rho2, &bar]) {
        for k in 0..2 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
    for k in 0..2 {
        lo[k] -= 0.08 * span;
        hi[k] += 0.08 * span;
    }
    let scale = SIZE / (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let view = View { lo, hi, scale };
    let (w, h) = ((hi[0] - lo[0]) * scale + 2.0 * PAD, (hi[1] - lo[1]) * scale + 2.0 * PAD);

    // 2ρ + Ξ: ⟨n_i, v − 2ρ⟩ ≥ 0 in the Gram inner product
    let mut cone = view.frame();
    for n in rs.cone_normals() {
        let g = rs.gram.apply(&n).to_f64();
        cone = cone.clip([-g[0], -g[1]], -(g[0] * rho2[0] + g[1] * rho2[1]));
    }

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    )
    .unwrap();
    writeln!(
        s,
        "<title>{} {}</title>",
        report.root_system,
        facet_title(&report.facets)
    )
    .unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    if cone.vertices.len() >= 3 {
        writeln!(
            s,
            r##"<path d="M {} Z" fill="#f2c48d" fill-opacity="0.45" stroke="none"/>"##,
            pts(&view, &cone.vertices).replace(' ', " L ")
        )
        .unwrap();
    }
    for (_, d) in rs.wall_rays() {
        let d = d.to_f64();
        let (x1, y1) = view.px(ray_end(&view, [-d[0], -d[1]]));
        let (x2, y2) = view.px(ray_end(&view, d));
        writeln!(
            s,
            r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#777777" stroke-dasharray="6 4"/>"##
        )
        .unwrap();
    }
    writeln!(
        s,
        r##"<polygon points="{}" fill="#7aa6d8" fill-opacity="0.5" stroke="#1f4e8c" stroke-width="1.5"/>"##,
        pts(&view, &cell)
    )
    .unwrap();
    let (x, y) = view.px(rho2);
    writeln!(
        s,
        r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="#c0392b"><title>2rho</title></circle>"##
    )
    .unwrap();
    let (x, y) = view.px(bar);
    writeln!(
        s,
        r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="#111111"><title>barycenter</title></circle>"##
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

fn facet_title(facets: &[[i64; 2]]) -> String {
    facets
        .iter()
        .map(|u| format!("({},{})", u[0], u[1]))
        .collect::<Vec<_>>()
        .join(" ")
}
