//! The barycenter test for Kähler-Einstein metrics and its PL witnesses.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, Rational, Vec2};
use crate::polytope::GroupPolytope;
use crate::quadrature::{barycenter, integrate_pl, weighted_volume, PLFunction};
use crate::rootsys::{ConeVerdict, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KEExists {
    Yes,
    No,
    Boundary,
}

/// Which dilation the functionals are stated on: `P₊` with `2ρ`, or `2P₊` with `4ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "2P")]
    TwoP,
}

impl Convention {
    pub fn factor(self) -> Rational {
        match self {
            Convention::P => int(1),
            Convention::TwoP => int(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KEVerdict {
    pub exists: KEExists,
    pub barycenter_p: Vec2,
    pub barycenter_2p: Vec2,
    /// Cone inequality with the smallest margin, when not strictly satisfied.
    pub violated: Option<(usize, Rational)>,
    /// Orbit-max witness and its exact `ℒ` (P convention).
    pub witness: Option<(PLFunction, Rational)>,
}

fn exists_of(v: ConeVerdict) -> KEExists {
    match v {
        ConeVerdict::Interior => KEExists::Yes,
        ConeVerdict::Boundary => KEExists::Boundary,
        ConeVerdict::Outside => KEExists::No,
    }
}

pub fn ke_test(p: &GroupPolytope) -> Result<KEVerdict> {
    if !p.fano_normalized {
        return Err(Error::Input(
            "the barycenter test needs a Fano-normalized polytope".into(),
        ));
    }
    let rs = &p.rs;
    let bar = barycenter(p.positive_part(), rs)?;
    let bar2 = barycenter(p.scale(&int(2)).positive_part(), rs)?;
    let test = rs.in_shifted_cone(&bar, &int(1));
    let test2 = rs.in_shifted_cone(&bar2, &int(2));
    if test.verdict != test2.verdict {
        return Err(Error::DegenerateCell(
            "verdicts differ between P and 2P conventions".into(),
        ));
    }
    let exists = exists_of(test.verdict);
    let (violated, witness) = if exists == KEExists::Yes {
        (None, None)
    } else {
        let (i, margin) = test.worst();
        let l = destabilizer_l(p, i)?;
        (Some((i, margin)), Some((witness(rs, i), l)))
    };
    Ok(KEVerdict {
        exists,
        barycenter_p: bar,
        barycenter_2p: bar2,
        violated,
        witness,
    })
}

/// `u(y) = max_w ⟨w n_i, y⟩`; equals `⟨n_i, y⟩` on the chamber, i.e. `|α_i(y)|` for A1xA1.
pub fn witness(rs: &RootSystem, i: usize) -> PLFunction {
    let n = &rs.cone_normals()[i];
    let a = rs.gram.transpose().apply(n);
    PLFunction::w_closed(rs, &[(a, Rational::zero())])
}

/// `ℒ(u) = (1/V) ∫ u π − u(apex)` on `P₊` (apex `2ρ`) or `2P₊` (apex `4ρ`).
pub fn linear_part(p: &GroupPolytope, u: &PLFunction, conv: Convention) -> Result<Rational> {
    let k = conv.factor();
    let q = p.scale(&k);
    let cell = q.positive_part();
    let v = weighted_volume(cell, &p.rs);
    if v.is_zero() {
        return Err(Error::DegenerateCell("zero weighted volume".into()));
    }
    let apex = p.rs.rho.scale(&(int(2) * &k));
    Ok(integrate_pl(cell, u, &p.rs) / v - u.eval(&apex))
}

/// Exact `ℒ` of the witness for cone inequality `i`, P convention.
pub fn destabilizer_l(p: &GroupPolytope, root_index: usize) -> Result<Rational> {
    linear_part(p, &witness(&p.rs, root_index), Convention::P)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::preset;

    fn fano(normals: &[[i64; 2]]) -> GroupPolytope {
        GroupPolytope::fano(&preset("A1xA1").unwrap(), normals).unwrap()
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(ke_test(&fano(&[[1, 0]])).unwrap().exists, KEExists::Yes);
        assert_eq!(ke_test(&fano(&[[1, -1], [1, 1]])).unwrap().exists, KEExists::Yes);
        let v = ke_test(&fano(&[[1, 0], [1, 1]])).unwrap();
        assert_eq!(v.exists, KEExists::No);
        let (_, l) = v.witness.unwrap();
        assert!(l < Rational::zero());
    }

    #[test]
    fn destabilizer_values() {
        let p = fano(&[[1, 0]]);
        assert_eq!(destabilizer_l(&p, 0).unwrap(), rat(4, 7));
        let s = fano(&[[1, -1], [1, 1]]);
        assert_eq!(destabilizer_l(&s, 0).unwrap(), destabilizer_l(&s, 1).unwrap());
    }

    #[test]
    fn witness_identity_and_convention() {
        for normals in [
            vec![[2, 1]],
            vec![[2, 1], [1, 1]],
            vec![[2, 1], [2, -1], [1, 1], [1, -1]],
        ] {
            let p = fano(&normals);
            let v = ke_test(&p).unwrap();
            assert_eq!(v.barycenter_2p, v.barycenter_p.scale(&int(2)));
            for (i, a) in p.rs.positive_roots.iter().enumerate() {
                let via_bar = a.dot(&v.barycenter_p) - int(2);
                assert_eq!(destabilizer_l(&p, i).unwrap(), via_bar, "{normals:?} root {i}");
                // the 2P value is twice the P value by homogeneity
                let l2 = linear_part(&p, &witness(&p.rs, i), Convention::TwoP).unwrap();
                assert_eq!(l2, via_bar * int(2));
            }
        }
    }

    #[test]
    fn needs_fano() {
        let p = fano(&[[1, 0]]).scale(&int(3));
        assert!(matches!(ke_test(&p), Err(Error::Input(_))));
    }
}
