use serde::{Deserialize, Serialize};

use super::beam::{actuation_moment, free_strain, DriveCondition};
use super::section::{build_section, flexural_stiffness};
use super::{LaminateStack, LayerRole};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// |V|/t_ℓ against the film's dielectric strength.
    ElectricField,
    /// |ε*| against the film's allowable strain.
    FreeStrain,
    /// Outer-fibre bending strain of a layer at free deflection.
    BendingStrain,
}

impl std::fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConstraintKind::ElectricField => "electric_field",
            ConstraintKind::FreeStrain => "free_strain",
            ConstraintKind::BendingStrain => "bending_strain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub kind: ConstraintKind,
    /// Index of the layer in the stack (bottom = 0).
    pub layer: usize,
    pub value: f64,
    pub limit: f64,
    /// 1 − value/limit; negative when violated.
    pub margin: f64,
    pub pass: bool,
}

impl ConstraintCheck {
    fn new(kind: ConstraintKind, layer: usize, value: f64, limit: f64) -> Self {
        ConstraintCheck {
            kind,
            layer,
            value,
            limit,
            margin: 1.0 - value / limit,
            pass: value <= limit,
        }
    }
}

impl std::fmt::Display for ConstraintCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} layer {}: {:.4e} / {:.4e} ({})",
            self.kind,
            self.layer,
            self.value,
            self.limit,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn feasible(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks every limit a layer's material declares. Layers without a given
/// limit are not checked for it. Infeasibility is reported, never an error.
pub fn feasibility_check(stack: &LaminateStack, drive: &DriveCondition) -> ConstraintReport {
    let section = build_section(stack);
    let curvature = actuation_moment(&section, drive) / flexural_stiffness(&section);
    let zn = section.neutral_axis;

    let mut checks = Vec::new();
    for (i, (layer, sec)) in stack.layers().iter().zip(&section.layers).enumerate() {
        let mat = &layer.material;
        if layer.role == LayerRole::Active {
            if let Some(limit) = mat.dielectric_strength {
                let field = drive.voltage.abs() / layer.thickness;
                checks.push(ConstraintCheck::new(
                    ConstraintKind::ElectricField,
                    i,
                    field,
                    limit,
                ));
            }
            if let Some(limit) = mat.max_strain {
                let eps = free_strain(drive, layer.thickness, mat.d31).abs();
                checks.push(ConstraintCheck::new(
                    ConstraintKind::FreeStrain,
                    i,
                    eps,
                    limit,
                ));
            }
        }
        if let Some(limit) = mat.max_strain {
            let fibre = (sec.bottom - zn).abs().max((sec.top - zn).abs());
            let strain = (curvature * fibre).abs();
            checks.push(ConstraintCheck::new(
                ConstraintKind::BendingStrain,
                i,
                strain,
                limit,
            ));
        }
    }
    ConstraintReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laminate::Material;

    fn stack() -> LaminateStack {
        LaminateStack::unimorph(
            (&Material::kapton(), 50e-6),
            (&Material::pvdf(), 7e-6),
            4,
            None,
            0.01,
            0.01,
        )
        .unwrap()
    }

    fn field_check(r: &ConstraintReport) -> &ConstraintCheck {
        r.checks
            .iter()
            .find(|c| c.kind == ConstraintKind::ElectricField)
            .unwrap()
    }

    #[test]
    fn nominal_field_passes() {
        let r = feasibility_check(&stack(), &DriveCondition::quasi_static(300.0).unwrap());
        let c = field_check(&r);
        assert!((c.value - 300.0 / 7e-6).abs() < 1e-3);
        // 42.9 kV/mm
        assert!((c.value / 1e6 - 42.857).abs() < 1e-3);
        assert!(c.pass);
        assert!(r.feasible(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn overdriven_field_fails() {
        let r = feasibility_check(&stack(), &DriveCondition::quasi_static(800.0).unwrap());
        let c = field_check(&r);
        assert!((c.value / 1e6 - 114.2857).abs() < 1e-3);
        assert!(!c.pass && c.margin < 0.0);
        assert!(!r.feasible());
        assert_eq!(
            r.failures()
                .filter(|c| c.kind == ConstraintKind::ElectricField)
                .count(),
            4
        );
    }

    #[test]
    fn zero_drive_full_margin() {
        let r = feasibility_check(&stack(), &DriveCondition::quasi_static(0.0).unwrap());
        assert!(r.feasible());
        assert!(r.checks.iter().all(|c| c.margin == 1.0));
        // one field + free strain + bending strain per active film
        assert_eq!(r.checks.len(), 12);
    }
}
