//! File formats: polytope and PL-function input, analysis reports.

use serde::{Deserialize, Serialize};

use crate::criterion::{ke_test, KEExists};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, parse_rational, Rational, Vec2};
use crate::polytope::{GroupPolytope, LambdaSpec};
use crate::potential::{classify_boundary, BoundaryFeature, DingValue};
use crate::quadrature::{barycenter, weighted_volume, PLFunction};
use crate::rootsys::preset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaField {
    /// Only `"fano"` is accepted.
    Keyword(String),
    Values(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub root_system: String,
    pub chamber_facets: Vec<[i64; 2]>,
    pub lambda: LambdaField,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Input(e.to_string())
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_polytope(&self) -> Result<GroupPolytope> {
        let rs = preset(&self.root_system)?;
        let specs: Vec<LambdaSpec> = match &self.lambda {
            LambdaField::Keyword(k) if k == "fano" => vec![LambdaSpec::Auto; self.chamber_facets.len()],
            LambdaField::Keyword(k) => {
                return Err(Error::Input(format!("lambda: expected \"fano\" or a list, got {k:?}")))
            }
            LambdaField::Values(v) => {
                if v.len() != self.chamber_facets.len() {
                    return Err(Error::Input(format!(
                        "lambda: {} values for {} facets",
                        v.len(),
                        self.chamber_facets.len()
                    )));
                }
                v.iter()
                    .enumerate()
                    .map(|(i, s)| {
                        parse_rational(s)
                            .map(LambdaSpec::Value)
                            .map_err(|e| Error::Input(format!("lambda[{i}]: {e}")))
                    })
                    .collect::<Result<_>>()?
            }
        };
        let facets: Vec<([i64; 2], LambdaSpec)> = self.chamber_facets.iter().copied().zip(specs).collect();
        GroupPolytope::from_chamber_facets(&rs, &facets)
    }

    pub fn from_polytope(p: &GroupPolytope) -> Self {
        let lambda = if p.fano_normalized {
            LambdaField::Keyword("fano".into())
        } else {
            LambdaField::Values(p.chamber_facets.iter().map(|h| format_rational(&h.lambda)).collect())
        };
        PolytopeFile {
            root_system: p.rs.name.clone(),
            chamber_facets: p.normals(),
            lambda,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

pub fn read_polytope(text: &str) -> Result<GroupPolytope> {
    PolytopeFile::parse(text)?.to_polytope()
}

/// A rational given either as a JSON integer or as a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Str(String),
}

impl RationalValue {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalValue::Int(n) => Ok(int(*n)),
            RationalValue::Str(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub a: [RationalValue; 2],
    pub c: RationalValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PLFile {
    Wrapped { pieces: Vec<PieceFile> },
    List(Vec<PieceFile>),
}

/// Parse pieces `u = max(⟨a, y⟩ + c)` and close them under the Weyl group.
pub fn read_pl_function(text: &str, p: &GroupPolytope) -> Result<PLFunction> {
    let file: PLFile = serde_json::from_str(text).map_err(json_error)?;
    let pieces = match file {
        PLFile::Wrapped { pieces } | PLFile::List(pieces) => pieces,
    };
    if pieces.is_empty() {
        return Err(Error::Input("pieces: at least one piece is required".into()));
    }
    let mut out = Vec::with_capacity(pieces.len());
    for (i, q) in pieces.iter().enumerate() {
        let ctx = |e: Error| Error::Input(format!("pieces[{i}]: {e}"));
        let a = Vec2::new(q.a[0].value().map_err(ctx)?, q.a[1].value().map_err(ctx)?);
        out.push((a, q.c.value().map_err(ctx)?));
    }
    Ok(PLFunction::w_closed(&p.rs, &out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct AnalysisReport {
    pub root_system: String,
    pub facets: Vec<[i64; 2]>,
    pub lambda: Vec<String>,
    pub fano: bool,
    #[serde(with = "crate::exact::serde_rational")]
    pub volume_P: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub volume_2P: Rational,
    pub barycenter_P: Vec2,
    pub barycenter_2P: Vec2,
    /// Absent unless the polytope is Fano-normalized.
    pub ke: Option<KEExists>,
    pub violated_root: Option<Vec2>,
    pub witness_L: Option<String>,
    pub multiple: String,
    pub p0: Option<i64>,
    pub fine: bool,
    pub h0_bounded_above: bool,
    pub h0_uniformly_bounded: bool,
    pub boundary_features: Vec<BoundaryFeature>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ding: Option<DingValue>,
}

pub fn analyze(p: &GroupPolytope) -> Result<AnalysisReport> {
    let rs = &p.rs;
    let two = p.scale(&int(2));
    let (ke, violated_root, witness_l) = if p.fano_normalized {
        let v = ke_test(p)?;
        let root = v.violated.as_ref().map(|(i, _)| rs.simple_roots()[*i].clone());
        let l = v.witness.as_ref().map(|(_, l)| format_rational(l));
        (Some(v.exists), root, l)
    } else {
        (None, None, None)
    };
    let boundary = classify_boundary(p);
    Ok(AnalysisReport {
        root_system: rs.name.clone(),
        facets: p.normals(),
        lambda: p.chamber_facets.iter().map(|h| format_rational(&h.lambda)).collect(),
        fano: p.fano_normalized,
        volume_P: weighted_volume(p.positive_part(), rs),
        volume_2P: weighted_volume(two.positive_part(), rs),
        barycenter_P: barycenter(p.positive_part(), rs)?,
        barycenter_2P: barycenter(two.positive_part(), rs)?,
        ke,
        violated_root,
        witness_L: witness_l,
        multiple: p.multiple().to_string(),
        p0: p.p_zero().ok(),
        fine: p.is_fine(),
        h0_bounded_above: boundary.bounded_above,
        h0_uniformly_bounded: boundary.uniformly_bounded,
        boundary_features: boundary.features,
        ding: None,
    })
}
