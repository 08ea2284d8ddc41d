//! Guillemin potential, Ricci potential `h₀`, and the reduced Ding functional.

pub mod boundary;
pub mod ding;
pub mod guillemin;

pub use boundary::{
    classify_boundary, cross_check, BoundaryCrossCheck, BoundaryFeature, BoundaryReport, CaseLabel, FeatureProbe,
    Location, Verdict,
};
pub use ding::{
    ding, f_eval, fhat, fhat_convexity, legendre_pl, properness_probe, DingValue, FhatReport, ProbeReport,
    QuadratureOptions,
};
pub use guillemin::{guillemin_eval, h0_eval, h0_probe, h0_scan, GuilleminData, GuilleminValue, H0Scan, SCAN_MARGIN};
