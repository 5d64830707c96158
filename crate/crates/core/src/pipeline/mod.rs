//! The decomposition strategy at desk scale: the exact solver, absorber
//! demonstrations, the parameter ledger and an instrumented staged run.

pub mod absorber;
pub mod params;
pub mod solver;
pub mod strategy;

pub use absorber::{build_colour_absorber_demo, build_edge_absorber_demo, AbsorberDemo};
pub use params::{default_params, PipelineParams};
pub use solver::{exact_decompose, isomorphic_decompose, DecomposeOutcome};
pub use strategy::{run_strategy, StepReport, StepStatus};

