//! Depth-first walk over convex chains of facet lines from the upper Weyl wall
//! to the lower one.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{ke_test, KEExists};
use crate::error::{Error, Result};
use crate::exact::{gcd_i64, int, Rational, Vec2};
use crate::geometry::Constraint;
use crate::polytope::GroupPolytope;
use crate::quadrature::{barycenter, weighted_volume};
use crate::rootsys::{preset, RootSystem};

pub const DEFAULT_P_MAX_GUARD: i64 = 12;

/// Coprime `(p, q)` with `1 ≤ p ≤ p_max`, `|q| ≤ p`, and `|q| = p` only when `p = 1`.
pub fn candidate_lines(p_max: i64) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for p in 1..=p_max {
        for q in (-p..=p).rev() {
            if q.abs() == p && p != 1 {
                continue;
            }
            if gcd_i64(p, q) == 1 {
                out.push([p, q]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub p_max: i64,
    pub required: Option<[i64; 2]>,
    pub lattice_only: bool,
}

impl SearchParams {
    pub fn cache_key(&self) -> String {
        let req = match self.required {
            Some([p, q]) => format!("{p},{q}"),
            None => "-".into(),
        };
        format!(
            "p_max={};required={};lattice_only={}",
            self.p_max, req, self.lattice_only
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumEntry {
    /// Canonical chamber normals, sorted.
    pub facets: Vec<[i64; 2]>,
    #[serde(with = "crate::exact::serde_rational")]
    pub volume: Rational,
    pub barycenter: Vec2,
    #[serde(with = "bigint_string")]
    pub multiple: BigInt,
    pub p0: i64,
    pub ke: KEExists,
}

impl EnumEntry {
    pub fn from_polytope(p: &GroupPolytope) -> Result<Self> {
        let c = p.canonical_form();
        let cell = c.positive_part();
        Ok(EnumEntry {
            facets: c.normals(),
            volume: weighted_volume(cell, &c.rs),
            barycenter: barycenter(cell, &c.rs)?,
            multiple: c.multiple(),
            p0: c.p_zero()?,
            ke: ke_test(&c)?.exists,
        })
    }

    pub fn polytope(&self) -> Result<GroupPolytope> {
        GroupPolytope::fano(&preset("A1xA1")?, &self.facets)
    }

    pub fn label(&self) -> String {
        self.facets
            .iter()
            .map(|u| format!("({},{})", u[0], u[1]))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn sort_key(&self) -> (i64, Vec<(i64, i64)>) {
        (self.p0, self.facets.iter().map(|u| (u[0], -u[1])).collect())
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub params: SearchParams,
    /// Chains found before deduplication under the diagram symmetry.
    pub raw_count: usize,
    pub entries: Vec<EnumEntry>,
}

struct Line {
    u: [i64; 2],
    c: Constraint,
}

impl Line {
    /// Clockwise direction along the boundary.
    fn dir(&self) -> Vec2 {
        Vec2::from_ints(self.u[1], -self.u[0])
    }
}

struct Walker<'a> {
    lines: &'a [Line],
    required: Option<usize>,
    lattice_only: bool,
}

fn in_open_chamber(b: &Vec2) -> bool {
    b.x > b.y.abs()
}

impl Walker<'_> {
    fn walk(&self, i: usize, a: &Vec2, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let li = &self.lines[i];
        let d = li.dir();
        let has_required = self.required.is_none_or(|r| chain.contains(&r));
        // close the chain on the lower wall y = −x
        let (p, q) = (li.u[0], li.u[1]);
        if p > q && has_required {
            let c = &li.c.offset / int(p - q);
            let end = Vec2::new(c.clone(), -c);
            let orthogonal = li.u == [1, -1];
            if (&end - a).dot(&d).is_positive() && (!self.lattice_only || orthogonal || end.is_integral()) {
                out.push(chain.clone());
            }
        }
        for j in i + 1..self.lines.len() {
            if let Some(r) = self.required {
                if j > r && !chain.contains(&r) {
                    break;
                }
            }
            let Some(b) = li.c.meet(&self.lines[j].c) else { continue };
            if !(&b - a).dot(&d).is_positive() || !in_open_chamber(&b) {
                continue;
            }
            if self.lattice_only && !b.is_integral() {
                continue;
            }
            chain.push(j);
            self.walk(j, &b, chain, out);
            chain.pop();
        }
    }
}

/// Every convex chain of candidate lines, as index lists into `lines`.
fn chains(lines: &[Line], required: Option<usize>, lattice_only: bool) -> Vec<Vec<usize>> {
    let w = Walker {
        lines,
        required,
        lattice_only,
    };
    (0..lines.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let [p, q] = lines[i].u;
            if p + q <= 0 || required.is_some_and(|r| r < i) {
                return out.into_iter();
            }
            let s = &lines[i].c.offset / int(p + q);
            let start = Vec2::new(s.clone(), s);
            let orthogonal = lines[i].u == [1, 1];
            if lattice_only && !orthogonal && !start.is_integral() {
                return out.into_iter();
            }
            let mut chain = vec![i];
            w.walk(i, &start, &mut chain, &mut out);
            out.into_iter()
        })
        .collect()
}

fn sorted_lines(rs: &RootSystem, p_max: i64) -> Vec<Line> {
    let mut cands = candidate_lines(p_max);
    // normals rotate clockwise along the walk: decreasing q/p
    cands.sort_by(|a, b| (b[1] * a[0]).cmp(&(a[1] * b[0])));
    cands
        .into_iter()
        .map(|u| Line {
            u,
            c: Constraint::new(Vec2::from_ints(u[0], u[1]), crate::polytope::fano_lambda(rs, u)),
        })
        .collect()
}

/// Fano polytopes of `A1xA1` whose chamber normals are candidate lines up to `p_max`.
pub fn enumerate_polytopes(p_max: i64, required: Option<[i64; 2]>, lattice_only: bool) -> Result<EnumerationResult> {
    enumerate_with_guard(p_max, required, lattice_only, DEFAULT_P_MAX_GUARD)
}

pub fn enumerate_with_guard(
    p_max: i64,
    required: Option<[i64; 2]>,
    lattice_only: bool,
    guard: i64,
) -> Result<EnumerationResult> {
    if p_max < 1 {
        return Err(Error::Input(format!("p_max must be at least 1, got {p_max}")));
    }
    if p_max > guard {
        return Err(Error::GuardExceeded(format!(
            "p_max = {p_max} exceeds the limit {guard}"
        )));
    }
    let rs = preset("A1xA1")?;
    let lines = sorted_lines(&rs, p_max);
    let req_idx = match required {
        None => None,
        Some(u) => Some(
            lines
                .iter()
                .position(|l| l.u == u)
                .ok_or_else(|| Error::Input(format!("required facet ({}, {}) is not a candidate line", u[0], u[1])))?,
        ),
    };
    let found = chains(&lines, req_idx, lattice_only);
    let raw_count = found.len();
    let mut entries: Vec<EnumEntry> = found
        .par_iter()
        .map(|chain| {
            let normals: Vec<[i64; 2]> = chain.iter().map(|&k| lines[k].u).collect();
            let p = GroupPolytope::fano(&rs, &normals)?;
            if lattice_only && p.multiple() != BigInt::from(1) {
                return Ok(None);
            }
            Ok(Some(p.canonical_form().normals()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<std::collections::BTreeSet<_>>()
        .into_par_iter()
        .map(|normals| EnumEntry::from_polytope(&GroupPolytope::fano(&rs, &normals)?))
        .collect::<Result<_>>()?;
    entries.sort_by_key(EnumEntry::sort_key);
    Ok(EnumerationResult {
        params: SearchParams {
            p_max,
            required,
            lattice_only,
        },
        raw_count,
        entries,
    })
}

/// Reference enumeration over every subset of the candidate lines. Exponential;
/// only for small `p_max`.
pub fn brute_force(p_max: i64, lattice_only: bool) -> Result<Vec<Vec<[i64; 2]>>> {
    let rs = preset("A1xA1")?;
    let cands = candidate_lines(p_max);
    if cands.len() > 20 {
        return Err(Error::GuardExceeded(
            "brute force needs at most 20 candidate lines".into(),
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for mask in 1u32..(1 << cands.len()) {
        let normals: Vec<[i64; 2]> = (0..cands.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| cands[k])
            .collect();
        let Ok(p) = GroupPolytope::fano(&rs, &normals) else {
            continue;
        };
        if lattice_only && p.multiple() != BigInt::from(1) {
            continue;
        }
        seen.insert(p.canonical_form().normals());
    }
    Ok(seen.into_iter().collect())
}
