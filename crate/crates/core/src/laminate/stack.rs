use serde::{Deserialize, Serialize};

use super::Material;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerRole {
    Active,
    Adhesive,
    Substrate,
}

impl std::fmt::Display for LayerRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LayerRole::Active => "active",
            LayerRole::Adhesive => "adhesive",
            LayerRole::Substrate => "substrate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub role: LayerRole,
    /// Thickness (m).
    pub thickness: f64,
    pub material: Material,
}

impl Layer {
    pub fn new(role: LayerRole, thickness: f64, material: Material) -> Self {
        Layer {
            role,
            thickness,
            material,
        }
    }
}

/// Ordered layer list (bottom to top) plus the beam planform.
///
/// Constructed only through [`LaminateStack::new`], which enforces the
/// invariants every model operation relies on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStack", into = "RawStack")]
pub struct LaminateStack {
    layers: Vec<Layer>,
    width: f64,
    length: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStack {
    layers: Vec<Layer>,
    width: f64,
    length: f64,
}

impl TryFrom<RawStack> for LaminateStack {
    type Error = Error;

    fn try_from(raw: RawStack) -> Result<Self> {
        LaminateStack::new(raw.layers, raw.width, raw.length)
    }
}

impl From<LaminateStack> for RawStack {
    fn from(s: LaminateStack) -> Self {
        RawStack {
            layers: s.layers,
            width: s.width,
            length: s.length,
        }
    }
}

/// Relative tolerance for "all active layers share one thickness".
const THICKNESS_MATCH_RTOL: f64 = 1e-9;

impl LaminateStack {
    pub fn new(layers: Vec<Layer>, width: f64, length: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::validation(
                "width",
                format!("must be > 0, got {width}"),
            ));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::validation(
                "length",
                format!("must be > 0, got {length}"),
            ));
        }
        for (i, layer) in layers.iter().enumerate() {
            layer.material.validate()?;
            if !(layer.thickness.is_finite() && layer.thickness > 0.0) {
                return Err(Error::validation(
                    format!("layer {i} thickness"),
                    format!("must be > 0, got {}", layer.thickness),
                ));
            }
            match layer.role {
                LayerRole::Active if !layer.material.is_piezoelectric() => {
                    return Err(Error::validation(
                        format!("layer {i}"),
                        format!(
                            "active layer uses material '{}' with d31 = 0",
                            layer.material.name
                        ),
                    ));
                }
                LayerRole::Adhesive | LayerRole::Substrate if layer.material.is_piezoelectric() => {
                    return Err(Error::validation(
                        format!("layer {i}"),
                        format!(
                            "{} layer uses piezoelectric material '{}'; passive layers need d31 = 0",
                            layer.role, layer.material.name
                        ),
                    ));
                }
                _ => {}
            }
        }
        let mut active = layers.iter().filter(|l| l.role == LayerRole::Active);
        let Some(first) = active.next() else {
            return Err(Error::validation("layers", "stack has no active layer"));
        };
        if let Some(other) = active.find(|l| {
            (l.thickness - first.thickness).abs() > THICKNESS_MATCH_RTOL * first.thickness
        }) {
            return Err(Error::validation(
                "layers",
                format!(
                    "active layers must share one thickness ({} m vs {} m)",
                    first.thickness, other.thickness
                ),
            ));
        }
        if !layers.iter().any(|l| l.role == LayerRole::Substrate) {
            return Err(Error::validation("layers", "stack has no substrate layer"));
        }
        Ok(LaminateStack {
            layers,
            width,
            length,
        })
    }

    /// Substrate at the bottom, `n_active` identical films on top, with an
    /// optional adhesive film at every interface.
    pub fn unimorph(
        substrate: (&Material, f64),
        active: (&Material, f64),
        n_active: u32,
        adhesive: Option<(&Material, f64)>,
        width: f64,
        length: f64,
    ) -> Result<Self> {
        let mut layers = vec![Layer::new(
            LayerRole::Substrate,
            substrate.1,
            substrate.0.clone(),
        )];
        for _ in 0..n_active {
            if let Some((mat, t)) = adhesive {
                layers.push(Layer::new(LayerRole::Adhesive, t, mat.clone()));
            }
            layers.push(Layer::new(LayerRole::Active, active.1, active.0.clone()));
        }
        Self::new(layers, width, length)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Beam width b (m).
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Free length L (m).
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn active_layers(&self) -> impl Iterator<Item = &Layer> {
        self.layers.iter().filter(|l| l.role == LayerRole::Active)
    }

    /// Number of active films N.
    pub fn active_count(&self) -> usize {
        self.active_layers().count()
    }

    /// Common active film thickness t_ℓ (m).
    pub fn active_thickness(&self) -> f64 {
        self.active_layers()
            .next()
            .map(|l| l.thickness)
            .expect("validated stack has an active layer")
    }

    pub fn total_thickness(&self) -> f64 {
        self.layers.iter().map(|l| l.thickness).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn substrate() -> Layer {
        Layer::new(LayerRole::Substrate, 50e-6, Material::kapton())
    }

    fn film(t: f64) -> Layer {
        Layer::new(LayerRole::Active, t, Material::pvdf())
    }

    #[test]
    fn accepts_unimorph() {
        let s = LaminateStack::new(vec![substrate(), film(7e-6), film(7e-6)], 0.01, 0.01).unwrap();
        assert_eq!(s.active_count(), 2);
        assert_eq!(s.active_thickness(), 7e-6);
        assert!((s.total_thickness() - 64e-6).abs() < 1e-18);
    }

    #[test]
    fn rejects_missing_active_layer() {
        let err = LaminateStack::new(vec![substrate()], 0.01, 0.01).unwrap_err();
        assert!(err.to_string().contains("no active layer"), "{err}");
    }

    #[test]
    fn rejects_missing_substrate() {
        assert!(LaminateStack::new(vec![film(7e-6)], 0.01, 0.01).is_err());
    }

    #[test]
    fn rejects_zero_thickness_and_width() {
        assert!(LaminateStack::new(vec![substrate(), film(0.0)], 0.01, 0.01).is_err());
        assert!(LaminateStack::new(vec![substrate(), film(7e-6)], 0.0, 0.01).is_err());
        assert!(LaminateStack::new(vec![substrate(), film(7e-6)], 0.01, -1.0).is_err());
    }

    #[test]
    fn rejects_mixed_active_thickness() {
        let err =
            LaminateStack::new(vec![substrate(), film(7e-6), film(12e-6)], 0.01, 0.01).unwrap_err();
        assert!(err.to_string().contains("share one thickness"), "{err}");
    }

    #[test]
    fn rejects_role_material_mismatch() {
        let passive_active = Layer::new(LayerRole::Active, 7e-6, Material::kapton());
        assert!(LaminateStack::new(vec![substrate(), passive_active], 0.01, 0.01).is_err());
        let piezo_substrate = Layer::new(LayerRole::Substrate, 50e-6, Material::pvdf());
        assert!(LaminateStack::new(vec![piezo_substrate, film(7e-6)], 0.01, 0.01).is_err());
    }

    #[test]
    fn unimorph_builder_interleaves_adhesive() {
        let adhesive = Material::adhesive();
        let s = LaminateStack::unimorph(
            (&Material::kapton(), 50e-6),
            (&Material::pvdf(), 7e-6),
            3,
            Some((&adhesive, 2e-6)),
            0.01,
            0.01,
        )
        .unwrap();
        let roles: Vec<_> = s.layers().iter().map(|l| l.role).collect();
        use LayerRole::*;
        assert_eq!(
            roles,
            [Substrate, Adhesive, Active, Adhesive, Active, Adhesive, Active]
        );
    }

    #[test]
    fn deserialization_validates() {
        let json = r#"{"layers":[],"width":0.01,"length":0.01}"#;
        assert!(serde_json::from_str::<LaminateStack>(json).is_err());
    }
}
