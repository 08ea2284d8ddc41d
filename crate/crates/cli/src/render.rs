//! Plain-text and CSV renderings.

use std::fmt::Write;

use mpl_core::classify::golden::{find_row, GoldenRow};
use mpl_core::classify::{EnumEntry, EnumerationResult, Thm13Report};
use mpl_core::potential::{BoundaryCrossCheck, BoundaryFeature, BoundaryReport, Location};
use mpl_core::{format_rational, AnalysisReport, KEExists, Vec2};

fn ke(k: KEExists) -> &'static str {
    match k {
        KEExists::Yes => "yes",
        KEExists::No => "no",
        KEExists::Boundary => "boundary",
    }
}

fn point(v: &Vec2) -> String {
    format!("({}, {})", v.x, v.y)
}

fn normals(u: &[[i64; 2]]) -> String {
    u.iter()
        .map(|u| format!("({},{})", u[0], u[1]))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| writeln!(s, "{k:<22}{v}").unwrap();
    line("root system", r.root_system.clone());
    line("facets", normals(&r.facets));
    line("lambda", r.lambda.join(" "));
    line("volume P+", format_rational(&r.volume_P));
    line("volume 2P+", format_rational(&r.volume_2P));
    line("barycenter P+", point(&r.barycenter_P));
    line("barycenter 2P+", point(&r.barycenter_2P));
    line("KE", r.ke.map_or("n/a (not Fano)", ke).to_owned());
    if let Some(root) = &r.violated_root {
        line("violated root", point(root));
    }
    if let Some(l) = &r.witness_L {
        line("witness L", l.clone());
    }
    line("multiple", r.multiple.clone());
    line("p0", r.p0.map_or("n/a".into(), |p| p.to_string()));
    line("fine", r.fine.to_string());
    line("h0 bounded above", r.h0_bounded_above.to_string());
    line("h0 uniformly bounded", r.h0_uniformly_bounded.to_string());
    if let Some(d) = &r.ding {
        line("Ding L", format_rational(&d.l));
        line("Ding F", format!("{} (error {:.1e})", d.f, d.f_error));
        line("Ding D", d.d.to_string());
    }
    s.push_str("boundary features:\n");
    for f in &r.boundary_features {
        s.push_str(&feature(f));
    }
    s
}

fn feature(f: &BoundaryFeature) -> String {
    let at = match &f.location {
        Location::Vertex(v) => format!("vertex {}", point(v)),
        Location::Edge(a, b) => format!("edge {} -- {}", point(a), point(b)),
    };
    let label = serde_json::to_value(f.case_label).unwrap();
    let verdict = serde_json::to_value(f.verdict).unwrap();
    let mut s = format!(
        "  {at:<40} {:<5} {}",
        label.as_str().unwrap(),
        verdict.as_str().unwrap()
    );
    if let (Some(a), Some(u), Some(k)) = (&f.alpha0, f.u2, f.pairing) {
        write!(s, "  alpha0 {} u2 ({},{}) pairing {k}", point(a), u[0], u[1]).unwrap();
    }
    s.push('\n');
    s
}

pub fn boundary(r: &BoundaryReport) -> String {
    let mut s = format!(
        "bounded_above: {}\nuniformly_bounded: {}\n",
        r.bounded_above, r.uniformly_bounded
    );
    for f in &r.features {
        s.push_str(&feature(f));
    }
    s
}

pub fn cross_check(c: &BoundaryCrossCheck) -> String {
    let mut s = boundary(&c.report);
    writeln!(s, "grid maxima: {:?} (stable: {})", c.grid_max, c.maxima_stable).unwrap();
    for p in &c.probes {
        let last = p.minima.last().map_or(f64::NAN, |m| m.1);
        writeln!(
            s,
            "probe {}: min {last:.4} at radius {:.0e} (consistent: {})",
            point(&p.vertex),
            p.minima.last().map_or(f64::NAN, |m| m.0),
            p.consistent
        )
        .unwrap();
    }
    writeln!(s, "consistent: {}", c.consistent).unwrap();
    s
}

fn row_of(e: &EnumEntry, golden: Option<&[GoldenRow]>) -> (String, String) {
    match golden.and_then(|t| find_row(t, &e.facets)) {
        Some(r) => (
            r.label.to_owned(),
            if r.smooth { "smooth".into() } else { String::new() },
        ),
        None if golden.is_some() => ("?".into(), String::new()),
        None => (String::new(), String::new()),
    }
}

pub fn table_text(r: &EnumerationResult, golden: Option<&[GoldenRow]>) -> String {
    let mut s = String::new();
    let with_rows = golden.is_some();
    if with_rows {
        write!(s, "{:<7}", "row").unwrap();
    }
    writeln!(
        s,
        "{:<34}{:>4}  {:<20}{:<10}{:>8}",
        "facets", "p0", "volume", "KE", "multiple"
    )
    .unwrap();
    for e in &r.entries {
        let (row, note) = row_of(e, golden);
        if with_rows {
            write!(s, "{row:<7}").unwrap();
        }
        let line = format!(
            "{:<34}{:>4}  {:<20}{:<10}{:>8}  {note}",
            normals(&e.facets),
            e.p0,
            format_rational(&e.volume),
            ke(e.ke),
            e.multiple
        );
        writeln!(s, "{}", line.trim_end()).unwrap();
    }
    writeln!(
        s,
        "{} polytopes ({} chains before symmetry reduction)",
        r.entries.len(),
        r.raw_count
    )
    .unwrap();
    s
}

pub fn table_csv(r: &EnumerationResult, golden: Option<&[GoldenRow]>) -> String {
    let mut s = String::new();
    if golden.is_some() {
        s.push_str("row,smooth,");
    }
    s.push_str("facets,p0,volume,ke,multiple\n");
    for e in &r.entries {
        if golden.is_some() {
            let (row, note) = row_of(e, golden);
            write!(s, "{row},{},", !note.is_empty()).unwrap();
        }
        writeln!(
            s,
            "{},{},{},{},{}",
            normals(&e.facets),
            e.p0,
            format_rational(&e.volume),
            ke(e.ke),
            e.multiple
        )
        .unwrap();
    }
    s
}

pub fn thm13(r: &Thm13Report) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:>3} {:>3}  {:<28}{:<8}{:>11}{:>12}",
        "p0", "q0", "volume bound", "below", "enumerated", "exceptional"
    )
    .unwrap();
    for c in &r.cases {
        let n = c.enumerated.map_or("-".into(), |n| n.to_string());
        writeln!(
            s,
            "{:>3} {:>3}  {:<28}{:<8}{:>11}{:>12}",
            c.p0,
            c.q0,
            format_rational(&c.bound),
            if c.bound_suffices { "yes" } else { "no" },
            n,
            c.exceptional.len()
        )
        .unwrap();
        for e in &c.exceptional {
            writeln!(
                s,
                "          exceptional {}  volume {}",
                normals(&e.facets),
                format_rational(&e.volume)
            )
            .unwrap();
        }
        for e in &c.matches {
            writeln!(
                s,
                "          MATCH {}  volume {}",
                normals(&e.facets),
                format_rational(&e.volume)
            )
            .unwrap();
        }
    }
    for (p0, q0) in &r.unresolved {
        writeln!(s, "unresolved: ({p0}, {q0})").unwrap();
    }
    writeln!(s, "{}", if r.passed { "pass" } else { "FAIL" }).unwrap();
    s
}
