use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Elastic, piezoelectric and limit properties of one constituent.
///
/// All values are SI base units. Passive materials carry `d31 = 0` and no
/// dielectric strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Material {
    pub name: String,
    /// Young's modulus (Pa).
    pub youngs_modulus: f64,
    /// Mass density (kg/m³).
    pub density: f64,
    /// Transverse piezoelectric coefficient (m/V), signed.
    #[serde(default)]
    pub d31: f64,
    /// Breakdown field (V/m).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dielectric_strength: Option<f64>,
    /// Allowable strain (dimensionless).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_strain: Option<f64>,
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        let field = |f: &str| format!("material '{}' {f}", self.name);
        if self.name.trim().is_empty() {
            return Err(Error::validation("material name", "must not be empty"));
        }
        if !(self.youngs_modulus.is_finite() && self.youngs_modulus > 0.0) {
            return Err(Error::validation(
                field("youngs_modulus"),
                format!(
                    "must be a positive finite number, got {}",
                    self.youngs_modulus
                ),
            ));
        }
        if !(self.density.is_finite() && self.density > 0.0) {
            return Err(Error::validation(
                field("density"),
                format!("must be a positive finite number, got {}", self.density),
            ));
        }
        if !self.d31.is_finite() {
            return Err(Error::validation(field("d31"), "must be finite"));
        }
        for (name, value) in [
            ("dielectric_strength", self.dielectric_strength),
            ("max_strain", self.max_strain),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::validation(
                        field(name),
                        format!("must be strictly positive when present, got {v}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_piezoelectric(&self) -> bool {
        self.d31 != 0.0
    }

    /// Uniaxially stretched, poled PVDF film.
    ///
    /// The modulus is an assumed typical value for oriented PVDF film; the
    /// remaining constants are d31 ≈ −25 pm/V, ρ ≈ 1.8 g/cm³, breakdown
    /// above 100 kV/mm and strain tolerance above 2 %.
    pub fn pvdf() -> Self {
        Material {
            name: "pvdf".into(),
            youngs_modulus: 2.5e9,
            density: 1800.0,
            d31: -25e-12,
            dielectric_strength: Some(100e6),
            max_strain: Some(0.02),
        }
    }

    /// Polyimide stiffening film (datasheet modulus and density).
    pub fn kapton() -> Self {
        Material {
            name: "kapton".into(),
            youngs_modulus: 2.5e9,
            density: 1420.0,
            d31: 0.0,
            dielectric_strength: None,
            max_strain: None,
        }
    }

    /// Generic thin-film bonding adhesive, treated as a passive elastic layer.
    pub fn adhesive() -> Self {
        Material {
            name: "adhesive".into(),
            youngs_modulus: 1.0e9,
            density: 1100.0,
            d31: 0.0,
            dielectric_strength: None,
            max_strain: None,
        }
    }
}

/// Built-in material table. Project files may override any entry by name.
pub fn default_library() -> Vec<Material> {
    vec![Material::pvdf(), Material::kapton(), Material::adhesive()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_is_valid() {
        for m in default_library() {
            m.validate().unwrap();
        }
        assert!(Material::pvdf().is_piezoelectric());
        assert!(!Material::kapton().is_piezoelectric());
    }

    #[test]
    fn rejects_non_positive_modulus() {
        let mut m = Material::kapton();
        m.youngs_modulus = 0.0;
        assert!(matches!(m.validate(), Err(Error::Validation { .. })));
        m.youngs_modulus = f64::NAN;
        assert!(m.validate().is_err());
    }

    #[test]
    fn rejects_zero_limits() {
        let mut m = Material::pvdf();
        m.dielectric_strength = Some(0.0);
        assert!(m.validate().is_err());
        let mut m = Material::pvdf();
        m.max_strain = Some(-0.1);
        assert!(m.validate().is_err());
    }
}
