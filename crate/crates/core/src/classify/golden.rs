//! Reference tables of Gorenstein and ℚ-Fano SO₄(ℂ) compactifications.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::enumerate::{EnumEntry, EnumerationResult};
use crate::criterion::KEExists;
use crate::exact::{rat, Rational};

#[derive(Clone, Debug)]
pub struct GoldenRow {
    pub label: &'static str,
    pub p0: Option<i64>,
    pub facets: &'static [[i64; 2]],
    pub volume: (i64, i64),
    pub ke: KEExists,
    /// `None` where the table records "Smooth" instead of a multiple.
    pub multiple: Option<i64>,
    pub smooth: bool,
}

impl GoldenRow {
    pub fn volume(&self) -> Rational {
        rat(self.volume.0, self.volume.1)
    }

    fn key(&self) -> BTreeSet<[i64; 2]> {
        canonical_set(self.facets)
    }
}

use KEExists::{No, Yes};

pub const TABLE_GORENSTEIN: &[GoldenRow] = &[
    GoldenRow {
        label: "7-1-1",
        p0: None,
        facets: &[[1, 1], [2, 1]],
        volume: (411, 4),
        ke: No,
        multiple: Some(1),
        smooth: false,
    },
    GoldenRow {
        label: "7-1-2",
        p0: None,
        facets: &[[1, 1], [2, 1], [1, 0]],
        volume: (10751, 180),
        ke: No,
        multiple: Some(1),
        smooth: true,
    },
    GoldenRow {
        label: "7-1-3",
        p0: None,
        facets: &[[1, 1], [4, 1]],
        volume: (16349, 972),
        ke: No,
        multiple: Some(1),
        smooth: false,
    },
    GoldenRow {
        label: "7-1-4",
        p0: None,
        facets: &[[1, 1], [1, 0]],
        volume: (1701, 20),
        ke: No,
        multiple: Some(1),
        smooth: true,
    },
    GoldenRow {
        label: "7-1-5",
        p0: None,
        facets: &[[1, 1], [1, -1]],
        volume: (81, 2),
        ke: Yes,
        multiple: Some(1),
        smooth: false,
    },
    GoldenRow {
        label: "7-1-6",
        p0: None,
        facets: &[[1, 0]],
        volume: (648, 5),
        ke: Yes,
        multiple: Some(1),
        smooth: true,
    },
];

pub const TABLE_QFANO_P0_2: &[GoldenRow] = &[
    GoldenRow {
        label: "1",
        p0: Some(1),
        facets: &[[1, 0]],
        volume: (648, 5),
        ke: Yes,
        multiple: None,
        smooth: true,
    },
    GoldenRow {
        label: "2",
        p0: Some(1),
        facets: &[[1, 0], [1, 1]],
        volume: (1701, 20),
        ke: No,
        multiple: None,
        smooth: true,
    },
    GoldenRow {
        label: "3",
        p0: Some(1),
        facets: &[[1, -1], [1, 1]],
        volume: (81, 2),
        ke: Yes,
        multiple: Some(1),
        smooth: false,
    },
    GoldenRow {
        label: "4",
        p0: Some(2),
        facets: &[[2, 1]],
        volume: (25000, 243),
        ke: No,
        multiple: Some(3),
        smooth: false,
    },
    GoldenRow {
        label: "5",
        p0: Some(2),
        facets: &[[2, 1], [1, 1]],
        volume: (411, 4),
        ke: No,
        multiple: Some(1),
        smooth: false,
    },
    GoldenRow {
        label: "6",
        p0: Some(2),
        facets: &[[1, 0], [2, 1]],
        volume: (72728, 1215),
        ke: No,
        multiple: Some(3),
        smooth: false,
    },
    GoldenRow {
        label: "7",
        p0: Some(2),
        facets: &[[2, 1], [1, -1]],
        volume: (947, 36),
        ke: No,
        multiple: Some(3),
        smooth: false,
    },
    GoldenRow {
        label: "8",
        p0: Some(2),
        facets: &[[2, -1], [2, 1]],
        volume: (165625, 7776),
        ke: No,
        multiple: Some(6),
        smooth: false,
    },
    GoldenRow {
        label: "9",
        p0: Some(2),
        facets: &[[2, 1], [1, 0], [1, 1]],
        volume: (10751, 180),
        ke: No,
        multiple: None,
        smooth: true,
    },
    GoldenRow {
        label: "10",
        p0: Some(2),
        facets: &[[2, 1], [1, -1], [1, 1]],
        volume: (12721, 486),
        ke: No,
        multiple: Some(1),
        smooth: false,
    },
    GoldenRow {
        label: "11",
        p0: Some(2),
        facets: &[[2, 1], [2, -1], [1, 1]],
        volume: (164609, 7776),
        ke: No,
        multiple: Some(6),
        smooth: false,
    },
    GoldenRow {
        label: "12",
        p0: Some(2),
        facets: &[[2, 1], [2, -1], [1, 1], [1, -1]],
        volume: (6059, 288),
        ke: No,
        multiple: Some(6),
        smooth: false,
    },
];

/// Facet set up to the mirror `q ↦ −q`, as the smaller of the two sets.
pub fn canonical_set(facets: &[[i64; 2]]) -> BTreeSet<[i64; 2]> {
    let a: BTreeSet<[i64; 2]> = facets.iter().copied().collect();
    let b: BTreeSet<[i64; 2]> = facets.iter().map(|u| [u[0], -u[1]]).collect();
    a.min(b)
}

/// Compare an enumeration with a table; returns one message per discrepancy.
pub fn compare(result: &EnumerationResult, table: &[GoldenRow]) -> Vec<String> {
    let mut errs = Vec::new();
    if result.entries.len() != table.len() {
        errs.push(format!(
            "expected {} polytopes, found {}",
            table.len(),
            result.entries.len()
        ));
    }
    for row in table {
        let Some(e) = result.entries.iter().find(|e| canonical_set(&e.facets) == row.key()) else {
            errs.push(format!("row ({}) {:?} not found", row.label, row.facets));
            continue;
        };
        errs.extend(compare_row(e, row));
    }
    for e in &result.entries {
        if !table.iter().any(|r| canonical_set(&e.facets) == r.key()) {
            errs.push(format!("unexpected polytope {}", e.label()));
        }
    }
    errs
}

fn compare_row(e: &EnumEntry, row: &GoldenRow) -> Vec<String> {
    let mut errs = Vec::new();
    if e.volume != row.volume() {
        errs.push(format!("row ({}): volume {} != {}", row.label, e.volume, row.volume()));
    }
    if e.ke != row.ke {
        errs.push(format!("row ({}): KE {:?} != {:?}", row.label, e.ke, row.ke));
    }
    let m = BigInt::from(row.multiple.unwrap_or(1));
    if e.multiple != m {
        errs.push(format!("row ({}): multiple {} != {}", row.label, e.multiple, m));
    }
    if let Some(p0) = row.p0 {
        if e.p0 != p0 {
            errs.push(format!("row ({}): p0 {} != {}", row.label, e.p0, p0));
        }
    }
    errs
}

pub fn find_row<'a>(table: &'a [GoldenRow], facets: &[[i64; 2]]) -> Option<&'a GoldenRow> {
    let k = canonical_set(facets);
    table.iter().find(|r| r.key() == k)
}
