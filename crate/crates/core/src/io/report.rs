use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::characterize::{CharacterizeOptions, CycleMetrics, FrfPoint, QUnavailable, TraceMeta};
use crate::explorer::{DesignPoint, RankMode, RankedDesign};
use crate::laminate::{BeamMetrics, ConstraintReport, DriveCondition, LaminateStack};

pub const SWEEP_CSV_HEADER: &str =
    "index,n_layers,layer_thickness_m,substrate_thickness_m,length_m,width_m,voltage_v,\
neutral_axis_m,flexural_stiffness_nm2,actuation_moment_nm,blocked_force_n,free_deflection_m,\
resonance_frequency_hz,actuator_mass_kg,matched_energy_j,power_proxy_w,density_proxy_w_per_kg,\
feasible,pareto,violations";

pub const FRONT_CSV_HEADER: &str =
    "blocked_force_mn,free_deflection_mm,index,n_layers,layer_thickness_um,\
substrate_thickness_um,length_mm,width_mm,voltage_v";

pub const CYCLES_CSV_HEADER: &str =
    "cycle,start_time_s,end_time_s,duration_s,work_net_j,work_positive_j,\
work_gross_j,power_w,energy_density_j_per_kg,power_density_w_per_kg";

fn csv_bytes<I, R>(header: &str, rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.split(',')).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub stack: LaminateStack,
    pub drive: DriveCondition,
    pub metrics: BeamMetrics,
    pub quality_factor: f64,
    /// Q·δ_free (m).
    pub resonant_deflection: f64,
    pub feasibility: ConstraintReport,
    pub feasible: bool,
}

impl ModelReport {
    fn rows(&self) -> Vec<(&'static str, f64, &'static str, f64, &'static str)> {
        let m = &self.metrics;
        vec![
            (
                "neutral_axis",
                m.neutral_axis,
                "m",
                m.neutral_axis * 1e6,
                "um",
            ),
            (
                "flexural_stiffness",
                m.flexural_stiffness,
                "N*m^2",
                m.flexural_stiffness * 1e6,
                "N*mm^2",
            ),
            (
                "free_strain",
                m.free_strain,
                "1",
                m.free_strain * 100.0,
                "%",
            ),
            (
                "actuation_moment",
                m.actuation_moment,
                "N*m",
                m.actuation_moment * 1e3,
                "mN*m",
            ),
            (
                "blocked_force",
                m.blocked_force,
                "N",
                m.blocked_force * 1e3,
                "mN",
            ),
            (
                "free_deflection",
                m.free_deflection,
                "m",
                m.free_deflection * 1e3,
                "mm",
            ),
            (
                "resonant_deflection",
                self.resonant_deflection,
                "m",
                self.resonant_deflection * 1e3,
                "mm",
            ),
            (
                "tip_stiffness",
                m.tip_stiffness,
                "N/m",
                m.tip_stiffness,
                "N/m",
            ),
            (
                "resonance_frequency",
                m.resonance_frequency,
                "Hz",
                m.resonance_frequency,
                "Hz",
            ),
            (
                "mass_per_length",
                m.mass_per_length,
                "kg/m",
                m.mass_per_length * 1e3,
                "g/m",
            ),
            (
                "actuator_mass",
                m.actuator_mass,
                "kg",
                m.actuator_mass * 1e6,
                "mg",
            ),
        ]
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut rows: Vec<Vec<String>> = self
            .rows()
            .into_iter()
            .map(|(q, v, u, cv, cu)| {
                vec![q.into(), v.to_string(), u.into(), cv.to_string(), cu.into()]
            })
            .collect();
        rows.push(vec![
            "feasible".into(),
            u8::from(self.feasible).to_string(),
            "1".into(),
            u8::from(self.feasible).to_string(),
            "1".into(),
        ]);
        csv_bytes("quantity,value,unit,display_value,display_unit", rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "stack: {} layers ({} active, t_l = {} um), b = {} mm, L = {} mm; drive {} V",
            self.stack.layers().len(),
            self.stack.active_count(),
            self.stack.active_thickness() * 1e6,
            self.stack.width() * 1e3,
            self.stack.length() * 1e3,
            self.drive.voltage
        );
        for (q, v, u, cv, cu) in self.rows() {
            let _ = writeln!(s, "  {q:<20} {v:>14.6e} {u:<6} ({cv:.4} {cu})");
        }
        let _ = writeln!(
            s,
            "  feasible: {}",
            if self.feasible { "yes" } else { "NO" }
        );
        for c in &self.feasibility.checks {
            let _ = writeln!(s, "    {c}");
        }
        s
    }
}

fn point_row(p: &DesignPoint) -> Vec<String> {
    let m = &p.metrics;
    vec![
        p.index.to_string(),
        p.params.n_layers.to_string(),
        p.params.layer_thickness.to_string(),
        p.params.substrate_thickness.to_string(),
        p.params.length.to_string(),
        p.params.width.to_string(),
        p.params.voltage.to_string(),
        m.neutral_axis.to_string(),
        m.flexural_stiffness.to_string(),
        m.actuation_moment.to_string(),
        m.blocked_force.to_string(),
        m.free_deflection.to_string(),
        m.resonance_frequency.to_string(),
        m.actuator_mass.to_string(),
        p.matched_energy.to_string(),
        p.power_proxy.to_string(),
        p.density_proxy.to_string(),
        u8::from(p.feasible).to_string(),
        u8::from(p.pareto).to_string(),
        p.violations.join("; "),
    ]
}

pub fn sweep_csv(points: &[DesignPoint]) -> Vec<u8> {
    csv_bytes(SWEEP_CSV_HEADER, points.iter().map(point_row))
}

/// Front in plotting units: force in mN against deflection in mm.
pub fn front_csv(front: &[DesignPoint]) -> Vec<u8> {
    csv_bytes(
        FRONT_CSV_HEADER,
        front.iter().map(|p| {
            vec![
                (p.blocked_force() * 1e3).to_string(),
                (p.free_deflection() * 1e3).to_string(),
                p.index.to_string(),
                p.params.n_layers.to_string(),
                (p.params.layer_thickness * 1e6).to_string(),
                (p.params.substrate_thickness * 1e6).to_string(),
                (p.params.length * 1e3).to_string(),
                (p.params.width * 1e3).to_string(),
                p.params.voltage.to_string(),
            ]
        }),
    )
}

/// Output of `unimorph pareto` (`pareto.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoReport {
    pub total_points: usize,
    pub feasible_points: usize,
    pub front: Vec<DesignPoint>,
    pub rank_mode: RankMode,
    pub ranking: Vec<RankedDesign>,
}

/// Output of `unimorph characterize` (`characterize.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterizeReport {
    pub meta: TraceMeta,
    pub samples: usize,
    pub options: CharacterizeOptions,
    pub metrics: CycleMetrics,
}

impl CharacterizeReport {
    pub fn cycles_csv(&self) -> Vec<u8> {
        csv_bytes(
            CYCLES_CSV_HEADER,
            self.metrics.cycles.iter().enumerate().map(|(i, c)| {
                vec![
                    i.to_string(),
                    c.start_time.to_string(),
                    c.end_time.to_string(),
                    c.duration.to_string(),
                    c.work_net.to_string(),
                    c.work_positive.to_string(),
                    c.work_gross.to_string(),
                    c.power.to_string(),
                    c.energy_density.to_string(),
                    c.power_density.to_string(),
                ]
            }),
        )
    }

    pub fn to_text(&self) -> String {
        let m = &self.metrics;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} cycles retained, {} discarded; load {} mg, actuator {} mg",
            m.cycles.len(),
            m.discarded,
            self.meta.load_mass * 1e6,
            self.meta.actuator_mass * 1e6
        );
        let _ = writeln!(
            s,
            "  {:>5} {:>12} {:>12} {:>12} {:>12}",
            "cycle", "W_pos [J]", "W_net [J]", "P [W]", "p [W/kg]"
        );
        for (i, c) in m.cycles.iter().enumerate() {
            let _ = writeln!(
                s,
                "  {i:>5} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4}",
                c.work_positive, c.work_net, c.power, c.power_density
            );
        }
        let _ = writeln!(
            s,
            "  mean  W = {:.4e} ± {:.2e} J, P = {:.4e} ± {:.2e} W",
            m.mean.work_positive, m.std_dev.work_positive, m.mean.power, m.std_dev.power
        );
        let _ = writeln!(
            s,
            "  mean  w = {:.4} ± {:.2e} J/kg, p = {:.4} ± {:.2e} W/kg",
            m.mean.energy_density,
            m.std_dev.energy_density,
            m.mean.power_density,
            m.std_dev.power_density
        );
        s
    }
}

/// Output of `unimorph resonance` (`resonance.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub f_lo: f64,
    pub f_hi: f64,
    pub bins: usize,
    pub resonance_frequency: f64,
    pub boundary_limited: bool,
    pub quality_factor: Option<f64>,
    pub q_unavailable: Option<QUnavailable>,
    pub points: Vec<FrfPoint>,
}

impl ResonanceReport {
    pub fn frf_csv(&self) -> Vec<u8> {
        csv_bytes(
            "frequency_hz,amplitude_m",
            self.points
                .iter()
                .map(|p| vec![p.frequency.to_string(), p.amplitude.to_string()]),
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "f_res = {:.3} Hz{}\n",
            self.resonance_frequency,
            if self.boundary_limited {
                " (boundary-limited: peak at band edge)"
            } else {
                ""
            }
        );
        match (self.quality_factor, self.q_unavailable) {
            (Some(q), _) => {
                let _ = writeln!(s, "Q = {q:.3}");
            }
            (None, Some(reason)) => {
                let _ = writeln!(s, "Q not available: {reason}");
            }
            (None, None) => {}
        }
        s
    }
}
