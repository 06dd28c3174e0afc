//! Measurements taken directly from adjacency matrices.

pub mod automorphism;
pub mod census;
mod clique;
pub mod coloring;
pub mod lifting;
pub mod spread;

pub use automorphism::{automorphisms, is_automorphism, AutBudget, AutGroupResult, AutOutcome};
pub use census::{Census, Classification, Histogram};
pub use coloring::{
    chromatic_exact, is_proper_coloring, twin_classes, ColorBudget, ColoringResult, LowerBound,
};
pub use lifting::{check_lifting, fiber_wreath_check, LiftingReport};
pub use spread::elliptic_spread_coloring;
