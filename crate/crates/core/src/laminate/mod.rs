//! Transformed-section composite beam model of a multilayer unimorph.
//!
//! Heights are measured upward from the bottom face. Each layer contributes
//! its modulus-weighted area to the neutral axis and parallel-axis terms to
//! the flexural stiffness, so adhesive films and split substrates are handled
//! by the same sums as the substrate and the piezoelectric films. Electrodes
//! are not modelled as layers.

mod beam;
pub mod closed_form;
mod feasibility;
mod material;
mod section;
mod stack;

pub use beam::{
    actuation_moment, blocked_force, evaluate, free_deflection, free_strain, mass_properties,
    resonance_frequency, resonant_deflection, BeamMetrics, DriveCondition, MassProperties,
    CANTILEVER_FIRST_MODE, DEFAULT_QUALITY_FACTOR,
};
pub use feasibility::{feasibility_check, ConstraintCheck, ConstraintKind, ConstraintReport};
pub use material::{default_library, Material};
pub use section::{build_section, flexural_stiffness, LayerSection, SectionAnalysis};
pub use stack::{LaminateStack, Layer, LayerRole};
