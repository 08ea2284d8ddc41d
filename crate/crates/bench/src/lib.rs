//! Fixtures shared by the benchmarks.

use mpl_core::{preset, rat, GroupPolytope, PLFunction, Vec2};

/// Fano polytopes of `A1xA1`, from one facet up to four.
pub const FIXTURES: &[(&str, &[[i64; 2]])] = &[
    ("single", &[[1, 0]]),
    ("pair", &[[2, 1], [1, 1]]),
    ("four", &[[2, 1], [2, -1], [1, 1], [1, -1]]),
];

pub fn fixture(normals: &[[i64; 2]]) -> GroupPolytope {
    GroupPolytope::fano(&preset("A1xA1").expect("preset"), normals).expect("valid fixture")
}

/// `max(0, ⟨w e₁, y⟩ − 1)` over the Weyl orbit.
pub fn bump(p: &GroupPolytope) -> PLFunction {
    PLFunction::w_closed(
        &p.rs,
        &[(Vec2::from_ints(0, 0), rat(0, 1)), (Vec2::from_ints(1, 0), rat(-1, 1))],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        for (_, n) in FIXTURES {
            let p = fixture(n);
            assert!(bump(&p).is_w_closed(&p.rs));
        }
    }
}
