//! Classification of Gorenstein and ℚ-Fano SO₄(ℂ) compactification polytopes.

pub mod enumerate;
pub mod golden;
pub mod thm13;

pub use enumerate::{
    brute_force, candidate_lines, enumerate_polytopes, enumerate_with_guard, EnumEntry, EnumerationResult, SearchParams,
};
pub use thm13::{barc_formula, q_admissible, symmetric_barx_bound, verify_thm13, vol_bound, Thm13Case, Thm13Report};
