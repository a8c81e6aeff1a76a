use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::laminate::{
    evaluate, feasibility_check, BeamMetrics, DriveCondition, LaminateStack, Material,
};
use crate::{Error, Result};

pub const DEFAULT_SWEEP_CAP: usize = 1_000_000;

/// Axis values for a grid sweep. The Cartesian product is enumerated with
/// `n_layers` as the outermost axis and `voltage` as the innermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSpace {
    pub n_layers: Vec<u32>,
    /// Film thickness t_ℓ (m).
    pub layer_thickness: Vec<f64>,
    /// Substrate thickness t_s (m).
    pub substrate_thickness: Vec<f64>,
    /// Beam length L (m).
    pub length: Vec<f64>,
    /// Beam width b (m).
    pub width: Vec<f64>,
    /// Drive amplitude (V).
    pub voltage: Vec<f64>,
    /// Drive frequency (Hz) used for the static power proxy.
    pub frequency: Option<f64>,
    pub active_material: Material,
    pub substrate_material: Material,
    pub adhesive_material: Material,
    /// Adhesive film at every interface (m); zero omits the adhesive.
    pub adhesive_thickness: f64,
    pub cap: usize,
}

impl DesignSpace {
    /// Empty axes, no adhesive, no drive frequency and the default cap.
    pub fn new(active_material: Material, substrate_material: Material) -> Self {
        DesignSpace {
            n_layers: Vec::new(),
            layer_thickness: Vec::new(),
            substrate_thickness: Vec::new(),
            length: Vec::new(),
            width: Vec::new(),
            voltage: Vec::new(),
            frequency: None,
            active_material,
            substrate_material,
            adhesive_material: Material::adhesive(),
            adhesive_thickness: 0.0,
            cap: DEFAULT_SWEEP_CAP,
        }
    }

    pub fn size(&self) -> usize {
        [
            self.n_layers.len(),
            self.layer_thickness.len(),
            self.substrate_thickness.len(),
            self.length.len(),
            self.width.len(),
            self.voltage.len(),
        ]
        .iter()
        .fold(1usize, |acc, &n| acc.saturating_mul(n))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_layers.is_empty() {
            return Err(Error::validation("sweep.n_layers", "must not be empty"));
        }
        if self.n_layers.contains(&0) {
            return Err(Error::validation(
                "sweep.n_layers",
                "layer counts must be >= 1",
            ));
        }
        for (name, axis) in [
            ("sweep.layer_thickness", &self.layer_thickness),
            ("sweep.substrate_thickness", &self.substrate_thickness),
            ("sweep.length", &self.length),
            ("sweep.width", &self.width),
        ] {
            if axis.is_empty() {
                return Err(Error::validation(name, "must not be empty"));
            }
            if let Some(v) = axis.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return Err(Error::validation(
                    name,
                    format!("values must be > 0, got {v}"),
                ));
            }
        }
        if self.voltage.is_empty() {
            return Err(Error::validation("sweep.voltage", "must not be empty"));
        }
        if let Some(v) = self.voltage.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::validation(
                "sweep.voltage",
                format!("values must be >= 0, got {v}"),
            ));
        }
        if let Some(f) = self.frequency {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::validation(
                    "sweep.frequency",
                    format!("must be > 0, got {f}"),
                ));
            }
        }
        if !(self.adhesive_thickness.is_finite() && self.adhesive_thickness >= 0.0) {
            return Err(Error::validation(
                "sweep.adhesive_thickness",
                format!("must be >= 0, got {}", self.adhesive_thickness),
            ));
        }
        self.active_material.validate()?;
        self.substrate_material.validate()?;
        self.adhesive_material.validate()?;
        let size = self.size();
        if size > self.cap {
            return Err(Error::validation(
                "sweep",
                format!(
                    "{size} design points exceed the cap of {}; use a coarser grid or raise sweep.cap",
                    self.cap
                ),
            ));
        }
        Ok(())
    }

    fn params_at(&self, mut index: usize) -> DesignParams {
        let mut take = |len: usize| {
            let i = index % len;
            index /= len;
            i
        };
        // innermost first
        let v = take(self.voltage.len());
        let b = take(self.width.len());
        let l = take(self.length.len());
        let ts = take(self.substrate_thickness.len());
        let tl = take(self.layer_thickness.len());
        let n = take(self.n_layers.len());
        DesignParams {
            n_layers: self.n_layers[n],
            layer_thickness: self.layer_thickness[tl],
            substrate_thickness: self.substrate_thickness[ts],
            length: self.length[l],
            width: self.width[b],
            voltage: self.voltage[v],
        }
    }

    /// The stack for one parameter set, built the same way as a direct
    /// [`LaminateStack::unimorph`] call.
    pub fn stack_for(&self, p: &DesignParams) -> Result<LaminateStack> {
        let adhesive = (self.adhesive_thickness > 0.0)
            .then_some((&self.adhesive_material, self.adhesive_thickness));
        LaminateStack::unimorph(
            (&self.substrate_material, p.substrate_thickness),
            (&self.active_material, p.layer_thickness),
            p.n_layers,
            adhesive,
            p.width,
            p.length,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignParams {
    pub n_layers: u32,
    pub layer_thickness: f64,
    pub substrate_thickness: f64,
    pub length: f64,
    pub width: f64,
    pub voltage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignPoint {
    /// Position in the lexicographic enumeration of the design space.
    pub index: usize,
    pub params: DesignParams,
    pub stack: LaminateStack,
    pub drive: DriveCondition,
    pub metrics: BeamMetrics,
    /// |F_blocked|·|δ_free|/4 (J).
    pub matched_energy: f64,
    /// matched_energy × drive frequency, or × f1 without one (W).
    pub power_proxy: f64,
    /// power_proxy / actuator_mass (W/kg).
    pub density_proxy: f64,
    pub feasible: bool,
    /// Human-readable failed constraints; empty when feasible.
    pub violations: Vec<String>,
    pub pareto: bool,
}

impl DesignPoint {
    pub fn evaluate(
        index: usize,
        params: DesignParams,
        stack: LaminateStack,
        frequency: Option<f64>,
    ) -> Result<Self> {
        let drive = DriveCondition::new(params.voltage, frequency)?;
        let metrics = evaluate(&stack, &drive);
        let report = feasibility_check(&stack, &drive);
        let matched_energy = matched_energy(&metrics, 1.0);
        let power_proxy = matched_energy * frequency.unwrap_or(metrics.resonance_frequency);
        Ok(DesignPoint {
            index,
            params,
            stack,
            drive,
            metrics,
            matched_energy,
            power_proxy,
            density_proxy: power_proxy / metrics.actuator_mass,
            feasible: report.feasible(),
            violations: report.failures().map(|c| c.to_string()).collect(),
            pareto: false,
        })
    }

    pub fn blocked_force(&self) -> f64 {
        self.metrics.blocked_force_magnitude()
    }

    pub fn free_deflection(&self) -> f64 {
        self.metrics.free_deflection_magnitude()
    }
}

/// Energy delivered into a matched linear spring load, with the deflection
/// amplified by `deflection_gain` (1 for quasi-static, Q at resonance).
pub(crate) fn matched_energy(metrics: &BeamMetrics, deflection_gain: f64) -> f64 {
    metrics.blocked_force_magnitude() * (deflection_gain * metrics.free_deflection_magnitude())
        / 4.0
}

/// Evaluates every grid point. Output order is the enumeration order,
/// independent of how the evaluation is scheduled.
pub fn sweep(space: &DesignSpace) -> Result<Vec<DesignPoint>> {
    space.validate()?;
    (0..space.size())
        .into_par_iter()
        .map(|i| {
            let params = space.params_at(i);
            let stack = space.stack_for(&params)?;
            DesignPoint::evaluate(i, params, stack, space.frequency)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn base_space() -> DesignSpace {
        let mut s = DesignSpace::new(Material::pvdf(), Material::kapton());
        s.n_layers = vec![4];
        s.layer_thickness = vec![7e-6];
        s.substrate_thickness = vec![50e-6];
        s.length = vec![0.01];
        s.width = vec![0.01];
        s.voltage = vec![300.0];
        s
    }

    #[test]
    fn single_point_matches_direct_model() {
        let space = base_space();
        let pts = sweep(&space).unwrap();
        assert_eq!(pts.len(), 1);
        let stack = LaminateStack::unimorph(
            (&Material::kapton(), 50e-6),
            (&Material::pvdf(), 7e-6),
            4,
            None,
            0.01,
            0.01,
        )
        .unwrap();
        let direct = evaluate(&stack, &DriveCondition::quasi_static(300.0).unwrap());
        assert_eq!(pts[0].metrics, direct);
        assert_eq!(pts[0].stack, stack);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let mut space = base_space();
        space.n_layers = vec![4, 8];
        space.voltage = vec![100.0, 200.0, 300.0];
        let pts = sweep(&space).unwrap();
        let keys: Vec<_> = pts
            .iter()
            .map(|p| (p.params.n_layers, p.params.voltage))
            .collect();
        assert_eq!(
            keys,
            [
                (4, 100.0),
                (4, 200.0),
                (4, 300.0),
                (8, 100.0),
                (8, 200.0),
                (8, 300.0)
            ]
        );
        assert!(pts.iter().enumerate().all(|(i, p)| p.index == i));
    }

    #[test]
    fn cap_is_enforced() {
        let mut space = base_space();
        space.voltage = (1..=10).map(|v| v as f64).collect();
        space.cap = 9;
        let err = sweep(&space).unwrap_err();
        assert!(err.to_string().contains("coarser grid"), "{err}");
    }

    #[test]
    fn empty_axis_or_zero_layers_rejected() {
        let mut space = base_space();
        space.width.clear();
        assert!(sweep(&space).is_err());
        let mut space = base_space();
        space.n_layers = vec![0];
        assert!(sweep(&space).is_err());
    }

    #[test]
    fn proxies_follow_definitions() {
        let mut space = base_space();
        space.frequency = Some(150.0);
        let p = &sweep(&space).unwrap()[0];
        assert_eq!(
            p.matched_energy,
            p.blocked_force() * p.free_deflection() / 4.0
        );
        assert_eq!(p.power_proxy, p.matched_energy * 150.0);
        assert_eq!(p.density_proxy, p.power_proxy / p.metrics.actuator_mass);
    }

    #[test]
    fn adhesive_layers_are_inserted() {
        let mut space = base_space();
        space.adhesive_thickness = 2e-6;
        let p = &sweep(&space).unwrap()[0];
        assert_eq!(p.stack.layers().len(), 9);
    }
}
