use serde::{Deserialize, Serialize};

use super::section::{build_section, flexural_stiffness, SectionAnalysis};
use super::{LaminateStack, LayerRole};
use crate::{Error, Result};

/// Clamped-free first-mode eigenvalue β₁L.
pub const CANTILEVER_FIRST_MODE: f64 = 1.875;

/// Default resonant amplification when no measured Q is available.
pub const DEFAULT_QUALITY_FACTOR: f64 = 12.0;

/// Drive amplitude, applied in parallel across every active film.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveCondition {
    /// Voltage amplitude (V).
    pub voltage: f64,
    /// Drive frequency (Hz); `None` for quasi-static operation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<f64>,
}

impl DriveCondition {
    pub fn new(voltage: f64, frequency: Option<f64>) -> Result<Self> {
        let d = DriveCondition { voltage, frequency };
        d.validate()?;
        Ok(d)
    }

    pub fn quasi_static(voltage: f64) -> Result<Self> {
        Self::new(voltage, None)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.voltage.is_finite() && self.voltage >= 0.0) {
            return Err(Error::validation(
                "drive voltage",
                format!("must be >= 0, got {}", self.voltage),
            ));
        }
        if let Some(f) = self.frequency {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::validation(
                    "drive frequency",
                    format!("must be > 0 when present, got {f}"),
                ));
            }
        }
        Ok(())
    }
}

/// Derived static and dynamic outputs of the beam model. Force, deflection
/// and moment carry the sign of d31·V; use the `*_magnitude` accessors for
/// comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamMetrics {
    /// z_n (m).
    pub neutral_axis: f64,
    /// EI_eq (N·m²).
    pub flexural_stiffness: f64,
    /// ε* (dimensionless).
    pub free_strain: f64,
    /// M_act (N·m).
    pub actuation_moment: f64,
    /// F_blocked (N).
    pub blocked_force: f64,
    /// δ_free (m).
    pub free_deflection: f64,
    /// 3·EI_eq/L³ (N/m).
    pub tip_stiffness: f64,
    /// f1 (Hz).
    pub resonance_frequency: f64,
    /// ρ_eq·A (kg/m).
    pub mass_per_length: f64,
    /// kg
    pub actuator_mass: f64,
}

impl BeamMetrics {
    pub fn blocked_force_magnitude(&self) -> f64 {
        self.blocked_force.abs()
    }

    pub fn free_deflection_magnitude(&self) -> f64 {
        self.free_deflection.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassProperties {
    /// kg/m
    pub mass_per_length: f64,
    /// kg
    pub actuator_mass: f64,
}

/// ε* = d31·V/t_ℓ
pub fn free_strain(drive: &DriveCondition, layer_thickness: f64, d31: f64) -> f64 {
    d31 * drive.voltage / layer_thickness
}

/// M_act = Σ_ℓ E_ℓ A_ℓ ε*_ℓ (z_ℓ − z_n) over the active layers.
pub fn actuation_moment(section: &SectionAnalysis, drive: &DriveCondition) -> f64 {
    section
        .layers
        .iter()
        .filter(|l| l.role == LayerRole::Active)
        .map(|l| l.modulus * l.area * free_strain(drive, l.thickness, l.d31) * l.arm)
        .sum()
}

fn moment_and_stiffness(stack: &LaminateStack, drive: &DriveCondition) -> (f64, f64) {
    let section = build_section(stack);
    (
        actuation_moment(&section, drive),
        flexural_stiffness(&section),
    )
}

/// F = 3·M_act/(2L)
pub fn blocked_force(stack: &LaminateStack, drive: &DriveCondition) -> f64 {
    let (m, _) = moment_and_stiffness(stack, drive);
    blocked_force_from_moment(m, stack.length())
}

/// δ = L²·M_act/(2·EI_eq)
pub fn free_deflection(stack: &LaminateStack, drive: &DriveCondition) -> f64 {
    let (m, ei) = moment_and_stiffness(stack, drive);
    free_deflection_from_moment(m, ei, stack.length())
}

fn blocked_force_from_moment(moment: f64, length: f64) -> f64 {
    3.0 * moment / (2.0 * length)
}

fn free_deflection_from_moment(moment: f64, stiffness: f64, length: f64) -> f64 {
    length * length * moment / (2.0 * stiffness)
}

/// Tip deflection amplitude when driven at resonance: Q·δ_free.
pub fn resonant_deflection(
    stack: &LaminateStack,
    drive: &DriveCondition,
    quality_factor: f64,
) -> f64 {
    quality_factor * free_deflection(stack, drive)
}

pub fn mass_properties(stack: &LaminateStack) -> MassProperties {
    let mass_per_length = stack.width()
        * stack
            .layers()
            .iter()
            .map(|l| l.material.density * l.thickness)
            .sum::<f64>();
    MassProperties {
        mass_per_length,
        actuator_mass: mass_per_length * stack.length(),
    }
}

/// f1 = (1.875²/(2π L²))·√(EI_eq/ρA)
pub fn resonance_frequency(stack: &LaminateStack) -> f64 {
    let ei = flexural_stiffness(&build_section(stack));
    cantilever_first_mode(ei, mass_properties(stack).mass_per_length, stack.length())
}

fn cantilever_first_mode(stiffness: f64, mass_per_length: f64, length: f64) -> f64 {
    CANTILEVER_FIRST_MODE * CANTILEVER_FIRST_MODE / (2.0 * std::f64::consts::PI * length * length)
        * (stiffness / mass_per_length).sqrt()
}

/// Full model evaluation of one stack under one drive.
pub fn evaluate(stack: &LaminateStack, drive: &DriveCondition) -> BeamMetrics {
    let section = build_section(stack);
    let ei = flexural_stiffness(&section);
    let moment = actuation_moment(&section, drive);
    let length = stack.length();
    let mass = mass_properties(stack);
    let d31 = stack
        .active_layers()
        .next()
        .map(|l| l.material.d31)
        .unwrap_or_default();
    BeamMetrics {
        neutral_axis: section.neutral_axis,
        flexural_stiffness: ei,
        free_strain: free_strain(drive, section.active_layer_thickness, d31),
        actuation_moment: moment,
        blocked_force: blocked_force_from_moment(moment, length),
        free_deflection: free_deflection_from_moment(moment, ei, length),
        tip_stiffness: 3.0 * ei / length.powi(3),
        resonance_frequency: cantilever_first_mode(ei, mass.mass_per_length, length),
        mass_per_length: mass.mass_per_length,
        actuator_mass: mass.actuator_mass,
    }
}
