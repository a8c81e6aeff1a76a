use serde::{Deserialize, Serialize};

use super::{LaminateStack, LayerRole};

/// Transformed-section record of one layer. Heights are measured upward from
/// the bottom face of the stack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerSection {
    pub role: LayerRole,
    pub bottom: f64,
    pub top: f64,
    /// Layer centroid z_i (m).
    pub centroid: f64,
    /// Cross-sectional area A_i (m²).
    pub area: f64,
    /// Young's modulus E_i (Pa).
    pub modulus: f64,
    /// Second moment about the layer's own centroid, b·t³/12 (m⁴).
    pub second_moment: f64,
    /// Offset from the neutral axis, z_i − z_n (m).
    pub arm: f64,
    pub d31: f64,
    pub thickness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionAnalysis {
    pub layers: Vec<LayerSection>,
    /// Area-weighted centroid of the active layers z_p (m).
    pub active_centroid: f64,
    /// Area-weighted centroid of the substrate layers z_s (m).
    pub substrate_centroid: f64,
    /// Modulus-weighted neutral axis z_n (m).
    pub neutral_axis: f64,
    /// Piezostack thickness t_p = N·t_ℓ (m).
    pub active_stack_thickness: f64,
    /// A_p = b·t_p (m²).
    pub active_area: f64,
    /// Total substrate area A_s (m²).
    pub substrate_area: f64,
    pub active_count: usize,
    pub active_layer_thickness: f64,
    pub width: f64,
}

impl SectionAnalysis {
    pub fn bottom(&self) -> f64 {
        self.layers.first().map_or(0.0, |l| l.bottom)
    }

    pub fn top(&self) -> f64 {
        self.layers.last().map_or(0.0, |l| l.top)
    }
}

pub fn build_section(stack: &LaminateStack) -> SectionAnalysis {
    let b = stack.width();
    let mut z = 0.0;
    let mut layers: Vec<LayerSection> = stack
        .layers()
        .iter()
        .map(|layer| {
            let t = layer.thickness;
            let rec = LayerSection {
                role: layer.role,
                bottom: z,
                top: z + t,
                centroid: z + 0.5 * t,
                area: b * t,
                modulus: layer.material.youngs_modulus,
                second_moment: b * t * t * t / 12.0,
                arm: 0.0,
                d31: layer.material.d31,
                thickness: t,
            };
            z += t;
            rec
        })
        .collect();

    let stiffness: f64 = layers.iter().map(|l| l.modulus * l.area).sum();
    let first_moment: f64 = layers.iter().map(|l| l.modulus * l.area * l.centroid).sum();
    let neutral_axis = first_moment / stiffness;

    // z_i − z_n as a weighted sum of centroid differences avoids cancelling
    // z_i against a nearby z_n.
    let arms: Vec<f64> = layers
        .iter()
        .map(|li| {
            layers
                .iter()
                .map(|lj| lj.modulus * lj.area * (li.centroid - lj.centroid))
                .sum::<f64>()
                / stiffness
        })
        .collect();
    for (l, arm) in layers.iter_mut().zip(arms) {
        l.arm = arm;
    }

    let centroid_of = |role: LayerRole| {
        let (a, az) = layers
            .iter()
            .filter(|l| l.role == role)
            .fold((0.0, 0.0), |(a, az), l| {
                (a + l.area, az + l.area * l.centroid)
            });
        (a, az / a)
    };
    let (_, active_centroid) = centroid_of(LayerRole::Active);
    let (substrate_area, substrate_centroid) = centroid_of(LayerRole::Substrate);

    let active_count = stack.active_count();
    let active_layer_thickness = stack.active_thickness();
    let active_stack_thickness = active_count as f64 * active_layer_thickness;

    SectionAnalysis {
        layers,
        active_centroid,
        substrate_centroid,
        neutral_axis,
        active_stack_thickness,
        active_area: b * active_stack_thickness,
        substrate_area,
        active_count,
        active_layer_thickness,
        width: b,
    }
}

/// EI_eq = Σ E_i (I_i + A_i (z_i − z_n)²) over every layer.
pub fn flexural_stiffness(section: &SectionAnalysis) -> f64 {
    section
        .layers
        .iter()
        .map(|l| l.modulus * (l.second_moment + l.area * l.arm * l.arm))
        .sum()
}
