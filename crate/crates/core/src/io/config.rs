use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::characterize::CharacterizeOptions;
use crate::explorer::{DesignSpace, RankMode, DEFAULT_SWEEP_CAP};
use crate::laminate::{
    default_library, DriveCondition, LaminateStack, Layer, LayerRole, Material,
    DEFAULT_QUALITY_FACTOR,
};
use crate::{Error, Result};

/// Project file (TOML). Unknown keys are rejected at every level.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectConfig {
    /// Entries here replace built-in materials of the same name.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub materials: Vec<Material>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stack: Option<StackConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drive: Option<DriveConfig>,
    #[serde(default)]
    pub characterize: CharacterizeOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackConfig {
    /// m
    pub width: f64,
    /// m
    pub length: f64,
    /// Bottom to top.
    pub layers: Vec<LayerConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    pub role: LayerRole,
    pub material: String,
    /// m
    pub thickness: f64,
    /// Repeat this layer `count` times.
    #[serde(default = "one")]
    pub count: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    /// V
    pub voltage: f64,
    /// Hz
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<f64>,
    #[serde(default = "default_q")]
    pub quality_factor: f64,
}

fn default_q() -> f64 {
    DEFAULT_QUALITY_FACTOR
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_layers: Vec<u32>,
    pub layer_thickness: Vec<f64>,
    pub substrate_thickness: Vec<f64>,
    pub length: Vec<f64>,
    pub width: Vec<f64>,
    pub voltage: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<f64>,
    #[serde(default = "default_active")]
    pub active_material: String,
    #[serde(default = "default_substrate")]
    pub substrate_material: String,
    #[serde(default = "default_adhesive")]
    pub adhesive_material: String,
    #[serde(default)]
    pub adhesive_thickness: f64,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default)]
    pub rank: RankConfig,
}

fn default_active() -> String {
    "pvdf".into()
}
fn default_substrate() -> String {
    "kapton".into()
}
fn default_adhesive() -> String {
    "adhesive".into()
}
fn default_cap() -> usize {
    DEFAULT_SWEEP_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankConfig {
    /// `"static"` or `"resonant"`.
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "default_q")]
    pub quality_factor: f64,
}

fn default_mode() -> String {
    "static".into()
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            mode: default_mode(),
            quality_factor: DEFAULT_QUALITY_FACTOR,
        }
    }
}

impl RankConfig {
    pub fn mode(&self) -> Result<RankMode> {
        match self.mode.as_str() {
            "static" => Ok(RankMode::Static),
            "resonant" => {
                if !(self.quality_factor.is_finite() && self.quality_factor > 0.0) {
                    return Err(Error::validation(
                        "sweep.rank.quality_factor",
                        format!("must be > 0, got {}", self.quality_factor),
                    ));
                }
                Ok(RankMode::Resonant {
                    quality_factor: self.quality_factor,
                })
            }
            other => Err(Error::validation(
                "sweep.rank.mode",
                format!("expected \"static\" or \"resonant\", got {other:?}"),
            )),
        }
    }
}

/// Built-in materials overlaid with project entries, keyed by name.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialTable {
    entries: BTreeMap<String, Material>,
}

impl MaterialTable {
    pub fn get(&self, name: &str, field: &str) -> Result<&Material> {
        self.entries.get(name).ok_or_else(|| {
            Error::validation(
                field,
                format!(
                    "unknown material {name:?} (known: {})",
                    self.entries.keys().cloned().collect::<Vec<_>>().join(", ")
                ),
            )
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.entries.values()
    }
}

impl ProjectConfig {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
            message: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn material_table(&self) -> Result<MaterialTable> {
        let mut entries: BTreeMap<String, Material> = default_library()
            .into_iter()
            .map(|m| (m.name.clone(), m))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for (i, m) in self.materials.iter().enumerate() {
            if !seen.insert(m.name.as_str()) {
                return Err(Error::validation(
                    format!("materials[{i}].name"),
                    format!("duplicate material {:?}", m.name),
                ));
            }
            m.validate().map_err(|e| match e {
                Error::Validation { field, reason } => {
                    Error::validation(format!("materials[{i}] ({field})"), reason)
                }
                other => other,
            })?;
            entries.insert(m.name.clone(), m.clone());
        }
        Ok(MaterialTable { entries })
    }

    pub fn laminate_stack(&self) -> Result<LaminateStack> {
        let cfg = self
            .stack
            .as_ref()
            .ok_or_else(|| Error::validation("stack", "section missing from project file"))?;
        let table = self.material_table()?;
        let mut layers = Vec::new();
        for (i, l) in cfg.layers.iter().enumerate() {
            if l.count == 0 {
                return Err(Error::validation(
                    format!("stack.layers[{i}].count"),
                    "must be >= 1",
                ));
            }
            let material = table.get(&l.material, &format!("stack.layers[{i}].material"))?;
            if !(l.thickness.is_finite() && l.thickness > 0.0) {
                return Err(Error::validation(
                    format!("stack.layers[{i}].thickness"),
                    format!("must be > 0, got {}", l.thickness),
                ));
            }
            for _ in 0..l.count {
                layers.push(Layer::new(l.role, l.thickness, material.clone()));
            }
        }
        LaminateStack::new(layers, cfg.width, cfg.length).map_err(|e| match e {
            Error::Validation { field, reason } => {
                Error::validation(format!("stack.{field}"), reason)
            }
            other => other,
        })
    }

    pub fn drive_condition(&self) -> Result<DriveCondition> {
        let d = self
            .drive
            .ok_or_else(|| Error::validation("drive", "section missing from project file"))?;
        DriveCondition::new(d.voltage, d.frequency).map_err(|e| match e {
            Error::Validation { reason, .. } => Error::validation("drive", reason),
            other => other,
        })
    }

    pub fn quality_factor(&self) -> Result<f64> {
        let q = self
            .drive
            .map_or(DEFAULT_QUALITY_FACTOR, |d| d.quality_factor);
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::validation(
                "drive.quality_factor",
                format!("must be > 0, got {q}"),
            ));
        }
        Ok(q)
    }

    pub fn design_space(&self) -> Result<DesignSpace> {
        let s = self
            .sweep
            .as_ref()
            .ok_or_else(|| Error::validation("sweep", "section missing from project file"))?;
        let table = self.material_table()?;
        let space = DesignSpace {
            n_layers: s.n_layers.clone(),
            layer_thickness: s.layer_thickness.clone(),
            substrate_thickness: s.substrate_thickness.clone(),
            length: s.length.clone(),
            width: s.width.clone(),
            voltage: s.voltage.clone(),
            frequency: s.frequency,
            active_material: table
                .get(&s.active_material, "sweep.active_material")?
                .clone(),
            substrate_material: table
                .get(&s.substrate_material, "sweep.substrate_material")?
                .clone(),
            adhesive_material: table
                .get(&s.adhesive_material, "sweep.adhesive_material")?
                .clone(),
            adhesive_thickness: s.adhesive_thickness,
            cap: s.cap,
        };
        space.validate()?;
        Ok(space)
    }

    pub fn rank_mode(&self) -> Result<RankMode> {
        self.sweep
            .as_ref()
            .map_or(Ok(RankMode::Static), |s| s.rank.mode())
    }

    /// Validates the characterization defaults.
    pub fn characterize_options(&self) -> Result<CharacterizeOptions> {
        let o = self.characterize;
        if o.smoothing_window == 0 || o.smoothing_window.is_multiple_of(2) {
            return Err(Error::validation(
                "characterize.smoothing_window",
                format!("must be odd and >= 1, got {}", o.smoothing_window),
            ));
        }
        if !(o.gravity.is_finite() && o.gravity > 0.0) {
            return Err(Error::validation(
                "characterize.gravity",
                format!("must be > 0, got {}", o.gravity),
            ));
        }
        Ok(o)
    }
}
