use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use mpl_core::classify::golden::{compare, GoldenRow, TABLE_GORENSTEIN, TABLE_QFANO_P0_2};
use mpl_core::classify::{enumerate::DEFAULT_P_MAX_GUARD, enumerate_with_guard, verify_thm13 as thm13, SearchParams};
use mpl_core::potential::{classify_boundary, cross_check, ding, ding::double, fhat_convexity, h0_scan, SCAN_MARGIN};
use mpl_core::{analyze as analyze_polytope, read_pl_function, read_polytope, Convention, Error, GroupPolytope};
use serde_json::json;

use crate::cache::Cache;
use crate::config::Config;
use crate::{render, svg, AnalyzeArgs, CheckFailed, ClassifyKind, ConventionArg, Format, PotentialCmd, Thm13Args};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_polytope(path: &Path) -> Result<GroupPolytope> {
    read_polytope(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn convention(c: ConventionArg) -> Convention {
    match c {
        ConventionArg::P => Convention::P,
        ConventionArg::TwoP => Convention::TwoP,
    }
}

fn unsupported(what: &str) -> anyhow::Error {
    Error::Input(format!("{what} output is not available for this command")).into()
}

pub fn analyze(config: &Config, args: &AnalyzeArgs) -> Result<()> {
    let p = load_polytope(&args.input)?;
    let mut report = analyze_polytope(&p)?;
    if let Some(path) = &args.ding {
        let u = read_pl_function(&read(path)?, &p).with_context(|| format!("in {}", path.display()))?;
        report.ding = Some(ding(&p, &u, convention(args.convention), &config.quadrature)?);
    }
    if let Some(path) = &args.svg {
        fs::write(path, svg::figure(&p, &report)).with_context(|| format!("writing {}", path.display()))?;
    }
    let text = match args.format {
        Format::Json => pretty(&report),
        Format::Text => render::analysis(&report),
        Format::Csv => return Err(unsupported("CSV")),
    };
    emit(args.output.as_ref(), &text)
}

pub fn classify(config: &Config, kind: &ClassifyKind) -> Result<()> {
    let (p_max, lattice_only, table_args, reference): (i64, bool, _, Option<&[GoldenRow]>) = match kind {
        ClassifyKind::Gorenstein { p_max, table } => (*p_max, true, table, Some(TABLE_GORENSTEIN)),
        ClassifyKind::Qfano { p0, table } => (*p0, false, table, (*p0 == 2).then_some(TABLE_QFANO_P0_2)),
    };
    if table_args.golden && reference.is_none() {
        return Err(Error::Input(format!("no reference table for p0 = {p_max}")).into());
    }
    let guard = config.p_max_guard.unwrap_or(DEFAULT_P_MAX_GUARD);
    let key = SearchParams {
        p_max,
        required: None,
        lattice_only,
    }
    .cache_key();
    let cache = if table_args.no_cache {
        None
    } else {
        config.cache_dir().map(Cache::new)
    };
    let cached = match &cache {
        Some(c) if (1..=guard).contains(&p_max) => c.get(&key),
        _ => None,
    };
    let result = match cached {
        Some(r) => r,
        None => {
            let r = enumerate_with_guard(p_max, None, lattice_only, guard)?;
            if let Some(c) = &cache {
                c.put(&key, &r).context("writing enumeration cache")?;
            }
            r
        }
    };
    let golden = if table_args.golden { reference } else { None };
    let discrepancies = golden.map(|t| compare(&result, t)).unwrap_or_default();
    let text = match table_args.format {
        Format::Text => render::table_text(&result, golden),
        Format::Csv => render::table_csv(&result, golden),
        Format::Json => {
            let mut v = json!({ "params": result.params, "raw_count": result.raw_count, "entries": result.entries });
            if golden.is_some() {
                v["golden"] = json!({ "passed": discrepancies.is_empty(), "discrepancies": discrepancies });
            }
            pretty(&v)
        }
    };
    print!("{text}");
    if !discrepancies.is_empty() {
        for d in &discrepancies {
            eprintln!("mismatch: {d}");
        }
        return Err(CheckFailed(format!(
            "{} mismatches against the reference table",
            discrepancies.len()
        ))
        .into());
    }
    Ok(())
}

pub fn verify_thm13(args: &Thm13Args) -> Result<()> {
    let report = thm13(args.p0_min, args.p0_max, args.bound_only)?;
    let text = match args.format {
        Format::Text => render::thm13(&report),
        Format::Json => pretty(&report),
        Format::Csv => return Err(unsupported("CSV")),
    };
    print!("{text}");
    if !report.passed {
        return Err(CheckFailed("volume-gap check did not pass".into()).into());
    }
    Ok(())
}

pub fn potential(config: &Config, cmd: &PotentialCmd) -> Result<()> {
    match cmd {
        PotentialCmd::H0Scan { input, grid, margin } => {
            let p = load_polytope(input)?;
            let n = grid.or(config.h0_grid).unwrap_or(100);
            let margin = margin.or(config.h0_margin).unwrap_or(SCAN_MARGIN);
            let scan = h0_scan(&p, n, margin)?;
            let mut out = String::from("y1,y2,h0\n");
            for [a, b, h] in &scan.samples {
                out.push_str(&format!("{a},{b},{h}\n"));
            }
            print!("{out}");
            Ok(())
        }
        PotentialCmd::ClassifyBoundary { input, check, format } => {
            let p = load_polytope(input)?;
            let text = match (format, check) {
                (Format::Json, false) => pretty(&classify_boundary(&p)),
                (Format::Json, true) => pretty(&cross_check(&p)?),
                (Format::Text, false) => render::boundary(&classify_boundary(&p)),
                (Format::Text, true) => render::cross_check(&cross_check(&p)?),
                (Format::Csv, _) => return Err(unsupported("CSV")),
            };
            print!("{text}");
            Ok(())
        }
        PotentialCmd::Ding {
            input,
            function,
            convention: conv,
            path_to,
            samples,
        } => {
            let p = load_polytope(input)?;
            let load =
                |path: &PathBuf| read_pl_function(&read(path)?, &p).with_context(|| format!("in {}", path.display()));
            let u0 = load(function)?;
            let conv = convention(*conv);
            let value = ding(&p, &u0, conv, &config.quadrature)?;
            let mut v = json!({ "ding": value });
            if let Some(path) = path_to {
                let u1 = load(path)?;
                let (a, b) = match conv {
                    Convention::TwoP => (u0, u1),
                    Convention::P => (double(&u0), double(&u1)),
                };
                v["fhat_path"] = serde_json::to_value(fhat_convexity(&p, &a, &b, *samples, &config.quadrature)?)?;
            }
            print!("{}", pretty(&v));
            Ok(())
        }
    }
}
