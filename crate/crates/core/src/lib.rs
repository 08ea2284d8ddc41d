//! Moment polytopes of rank-2 group compactifications: exact weighted
//! integration, the Kähler-Einstein barycenter test, Ricci potential
//! boundedness, the reduced Ding functional and SO₄ polytope classification.

pub mod classify;
pub mod criterion;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod polytope;
pub mod potential;
pub mod quadrature;
pub mod rootsys;

pub use criterion::{ke_test, Convention, KEExists, KEVerdict};
pub use error::{Error, Result};
pub use exact::{format_rational, parse_rational, rat, Mat2, Rational, Vec2};
pub use io::{analyze, read_pl_function, read_polytope, AnalysisReport, PolytopeFile};
pub use polytope::{ChamberCell, EdgeLabel, GroupPolytope, HalfPlane, LambdaSpec};
pub use potential::{classify_boundary, BoundaryFeature, BoundaryReport, CaseLabel, DingValue, Verdict};
pub use quadrature::{PLFunction, Polynomial2};
pub use rootsys::{preset, ConeVerdict, RootSystem, WeightPolynomial};
