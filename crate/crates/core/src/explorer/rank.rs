use serde::{Deserialize, Serialize};

use super::space::matched_energy;
use super::{DesignParams, DesignPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Quasi-static stroke at the drive frequency (f1 when none is set).
    Static,
    /// Driven at f1 with the deflection amplified by Q.
    Resonant { quality_factor: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedDesign {
    pub index: usize,
    pub params: DesignParams,
    /// Hz
    pub frequency: f64,
    /// J
    pub matched_energy: f64,
    /// W
    pub power_proxy: f64,
    /// W/kg
    pub density_proxy: f64,
}

/// Feasible points ordered by matched-load power density, highest first.
/// Equal densities keep enumeration order.
pub fn rank_by_density(points: &[DesignPoint], mode: RankMode) -> Vec<RankedDesign> {
    let mut ranked: Vec<RankedDesign> = points
        .iter()
        .filter(|p| p.feasible)
        .map(|p| {
            let (gain, frequency) = match mode {
                RankMode::Static => (
                    1.0,
                    p.drive.frequency.unwrap_or(p.metrics.resonance_frequency),
                ),
                RankMode::Resonant { quality_factor } => {
                    (quality_factor, p.metrics.resonance_frequency)
                }
            };
            let energy = matched_energy(&p.metrics, gain);
            let power = energy * frequency;
            RankedDesign {
                index: p.index,
                params: p.params,
                frequency,
                matched_energy: energy,
                power_proxy: power,
                density_proxy: power / p.metrics.actuator_mass,
            }
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.density_proxy
            .total_cmp(&a.density_proxy)
            .then(a.index.cmp(&b.index))
    });
    ranked
}
