//! Volume-gap check: no ℚ-Fano SO₄(ℂ) polytope with `p₀ ≥ 3` has the volume of
//! either smooth non-KE Gorenstein example.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_polytopes, EnumEntry};
use crate::error::{Error, Result};
use crate::exact::{gcd_i64, int, rat, Rational};

/// The two volumes no other polytope may share.
pub fn targets() -> [Rational; 2] {
    [rat(1701, 20), rat(10751, 180)]
}

/// Weighted volume of `{l_{p0,q0} ≥ 0} ∩ chamber`, an upper bound for `Vol(P₊)`.
pub fn vol_bound(p0: i64, q0: &Rational) -> Result<Rational> {
    let p = int(p0);
    if !q0.is_positive() || *q0 >= p {
        return Err(Error::Domain(format!("need 0 < q0 < p0, got p0 = {p0}, q0 = {q0}")));
    }
    let l = int(1 + 2 * p0);
    let d = &p * &p - q0 * q0;
    Ok(int(8) * num_traits::pow(l, 6) / (int(45) * num_traits::pow(d, 3)))
}

/// `0 < q0 < p0`, coprime to `p0`, with `q0 < p0/2 + 3/4`.
pub fn q_admissible(p0: i64) -> Vec<i64> {
    let cap = rat(2 * p0 + 3, 4);
    (1..p0).filter(|&q| gcd_i64(p0, q) == 1 && int(q) < cap).collect()
}

fn kb(p0: i64, q0: i64) -> Result<(Rational, Rational)> {
    if p0 + q0 == 0 {
        return Err(Error::Domain("p0 + q0 = 0".into()));
    }
    Ok((rat(q0 - p0, p0 + q0), rat(2 * p0 + 1, p0 + q0)))
}

/// `3b²(10b² + 10bkt + 3k²t²) / (20b³ + 45b²kt + 36bk²t² + 10k³t³)`.
pub fn barc_rational_term(p0: i64, q0: i64, t: &Rational) -> Result<Rational> {
    let (k, b) = kb(p0, q0)?;
    let kt = &k * t;
    let num = int(3) * &b * &b * (int(10) * &b * &b + int(10) * &b * &kt + int(3) * &kt * &kt);
    let den = int(20) * num_traits::pow(b.clone(), 3)
        + int(45) * &b * &b * &kt
        + int(36) * &b * &kt * &kt
        + int(10) * num_traits::pow(kt.clone(), 3);
    if den.is_zero() {
        return Err(Error::Domain("vanishing denominator".into()));
    }
    Ok(num / den)
}

/// Mean of `x + y` under `π dy` over `{l_{p0,q0} ≥ 0, 0 ≤ x − y ≤ 2t, y ≥ −x}`.
pub fn barc_formula(p0: i64, q0: i64, t: &Rational) -> Result<Rational> {
    let (k, b) = kb(p0, q0)?;
    if p0 <= q0 {
        return Err(Error::Domain(format!("need p0 > q0, got ({p0}, {q0})")));
    }
    let t_max = rat(2 * p0 + 1, p0 - q0);
    if !t.is_positive() || *t > t_max {
        return Err(Error::Domain(format!("t = {t} outside (0, {t_max}]")));
    }
    let r = barc_rational_term(p0, q0, t)?;
    Ok(rat(3, 35) * (int(15) * k * t + int(16) * b + r))
}

/// `(6/7)(2 + 1/p0)`.
pub fn symmetric_barx_bound(p0: i64) -> Rational {
    rat(6, 7) * (int(2) + rat(1, p0))
}

/// Largest `p0` for which the symmetric bound still reaches `2 = α(2ρ)`.
pub fn symmetric_barx_p0_limit() -> i64 {
    let mut p0 = 1;
    while symmetric_barx_bound(p0 + 1) >= int(2) {
        p0 += 1;
    }
    p0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm13Case {
    pub p0: i64,
    pub q0: i64,
    #[serde(with = "crate::exact::serde_rational")]
    pub bound: Rational,
    /// Bound falls strictly below the smaller target.
    pub bound_suffices: bool,
    pub enumerated: Option<usize>,
    /// Enumerated polytopes whose volume is not below the smaller target.
    pub exceptional: Vec<EnumEntry>,
    /// Enumerated polytopes whose volume equals a target (must stay empty).
    pub matches: Vec<EnumEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm13Report {
    pub p0_min: i64,
    pub p0_max: i64,
    pub bound_only: bool,
    pub cases: Vec<Thm13Case>,
    /// Every case settled and no target volume found.
    pub passed: bool,
    /// Cases left open because bound-only mode skipped their enumeration.
    pub unresolved: Vec<(i64, i64)>,
}

pub const FULL_P0_MAX: i64 = 8;
pub const BOUND_ONLY_P0_MAX: i64 = 12;

pub fn verify_thm13(p0_min: i64, p0_max: i64, bound_only: bool) -> Result<Thm13Report> {
    if p0_min < 3 {
        return Err(Error::Input(format!("p0_min must be at least 3, got {p0_min}")));
    }
    if p0_max < p0_min {
        return Err(Error::Input(format!("empty range [{p0_min}, {p0_max}]")));
    }
    let cap = if bound_only { BOUND_ONLY_P0_MAX } else { FULL_P0_MAX };
    if p0_max > cap {
        return Err(Error::GuardExceeded(format!("p0_max = {p0_max} exceeds {cap}")));
    }
    let [big, small] = targets();
    let mut cases = Vec::new();
    let mut unresolved = Vec::new();
    for p0 in p0_min..=p0_max {
        for q0 in q_admissible(p0) {
            let bound = vol_bound(p0, &int(q0))?;
            let bound_suffices = bound < small;
            let mut case = Thm13Case {
                p0,
                q0,
                bound,
                bound_suffices,
                enumerated: None,
                exceptional: Vec::new(),
                matches: Vec::new(),
            };
            if !bound_suffices {
                if bound_only {
                    unresolved.push((p0, q0));
                } else {
                    let r = enumerate_polytopes(p0, Some([p0, q0]), false)?;
                    case.enumerated = Some(r.entries.len());
                    for e in r.entries {
                        if e.volume == big || e.volume == small {
                            case.matches.push(e);
                        } else if e.volume >= small {
                            case.exceptional.push(e);
                        }
                    }
                }
            }
            cases.push(case);
        }
    }
    let passed = unresolved.is_empty() && cases.iter().all(|c| c.matches.is_empty());
    Ok(Thm13Report {
        p0_min,
        p0_max,
        bound_only,
        cases,
        passed,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{GroupPolytope, LambdaSpec};
    use crate::quadrature::{integrate_polygon, Polynomial2};
    use crate::rootsys::preset;

    #[test]
    fn bound_values() {
        assert_eq!(vol_bound(9, &rat(21, 4)).unwrap(), rat(224755712, 4100625));
        assert_eq!(vol_bound(5, &int(3)).unwrap(), int(8) * int(1771561) / int(184320));
        assert!(vol_bound(3, &int(3)).is_err());
        for p0 in 3..12 {
            let a = vol_bound(p0, &rat(p0, 2)).unwrap();
            let b = vol_bound(p0 + 1, &rat(p0 + 1, 2)).unwrap();
            assert!(b < a);
        }
    }

    #[test]
    fn bound_is_the_clipped_chamber_volume() {
        // independent route: exact integral over the clipped chamber
        let rs = preset("A1xA1").unwrap();
        for (p0, q0) in [(3, 2), (5, 3), (7, 4)] {
            let p = GroupPolytope::from_chamber_facets(&rs, &[([p0, q0], LambdaSpec::Auto)]).unwrap();
            let v = integrate_polygon(&p.positive_part().polygon(), &rs.weight_poly().poly);
            assert_eq!(v, vol_bound(p0, &int(q0)).unwrap());
        }
    }

    #[test]
    fn admissible() {
        assert_eq!(q_admissible(5), vec![1, 2, 3]);
        assert_eq!(q_admissible(3), vec![1, 2]);
        assert_eq!(q_admissible(2), vec![1]);
    }

    #[test]
    fn symmetric_bound() {
        assert_eq!(symmetric_barx_bound(1), rat(18, 7));
        assert_eq!(symmetric_barx_bound(3), int(2));
        assert_eq!(symmetric_barx_bound(4), rat(27, 14));
        assert_eq!(symmetric_barx_p0_limit(), 3);
    }

    fn clipped_cell_mean(p0: i64, q0: i64, t: &Rational) -> Rational {
        use crate::exact::Vec2;
        use crate::geometry::{Constraint, ConvexPolygon};
        let rs = preset("A1xA1").unwrap();
        let l = int(2 * p0 + 1);
        let big = int(1000);
        let mut poly = ConvexPolygon::new(vec![
            Vec2::new(-&big, -&big),
            Vec2::new(big.clone(), -&big),
            Vec2::new(big.clone(), big.clone()),
            Vec2::new(-&big, big.clone()),
        ]);
        for c in [
            Constraint::new(Vec2::from_ints(p0, q0), l),
            Constraint::new(Vec2::from_ints(-1, 1), int(0)),
            Constraint::new(Vec2::from_ints(1, -1), int(2) * t),
            Constraint::new(Vec2::from_ints(-1, -1), int(0)),
        ] {
            poly = poly.clip(&c);
        }
        let pi = rs.weight_poly().poly;
        let v = integrate_polygon(&poly, &pi);
        let m = integrate_polygon(&poly, &pi.mul(&Polynomial2::affine(&Vec2::from_ints(1, 1), &int(0))));
        m / v
    }

    #[test]
    fn barc_matches_quadrature() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut n = 0;
        while n < 20 {
            let p0 = rng.gen_range(2..12);
            let q0 = rng.gen_range(1..p0);
            let t_max = rat(2 * p0 + 1, p0 - q0);
            let t = &t_max * rat(rng.gen_range(1..=50), 50);
            assert_eq!(
                barc_formula(p0, q0, &t).unwrap(),
                clipped_cell_mean(p0, q0, &t),
                "({p0},{q0}) t={t}"
            );
            n += 1;
        }
    }

    #[test]
    fn barc_below_three_halves_b() {
        for p0 in 2..=12 {
            for q0 in q_admissible(p0) {
                let b = rat(2 * p0 + 1, p0 + q0);
                let t_max = rat(2 * p0 + 1, p0 - q0);
                for k in 1..=200 {
                    let t = &t_max * rat(k, 200);
                    assert!(barc_formula(p0, q0, &t).unwrap() <= rat(3, 2) * &b, "({p0},{q0}) t={t}");
                }
            }
        }
    }

    #[test]
    fn barc_rational_term_decays() {
        let r = barc_rational_term(5, 3, &int(1_000_000)).unwrap();
        assert!(r.abs() < rat(1, 10_000));
        assert!(barc_formula(5, 3, &int(0)).is_err());
    }
}
