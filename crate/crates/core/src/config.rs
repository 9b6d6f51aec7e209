//! JSON run configuration. Unknown keys are rejected.

use std::f64::consts::TAU;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::classify::{SuiteSettings, Witness};
use crate::curvature::NumericOptions;
use crate::error::{Error, Result};
use crate::frenet::{integrate_frame, Curvature, CurvatureFunctions, FrenetFrame};
use crate::grid::GridSizes;
use crate::minkowski::Vec4;
use crate::spline::NaturalSpline;
use crate::tube::{Family, TubeSpec};

/// A curvature function by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CurvaturePreset {
    Zero,
    Constant(f64),
    /// a + b·sin(ωs)
    Sinusoid { a: f64, b: f64, omega: f64 },
    /// Natural cubic spline through (s, k) samples.
    Table(NaturalSpline),
}

impl CurvaturePreset {
    pub fn build(&self) -> Curvature {
        match self {
            CurvaturePreset::Zero => Curvature::Zero,
            CurvaturePreset::Constant(c) if *c == 0.0 => Curvature::Zero,
            CurvaturePreset::Constant(c) => Curvature::Constant(*c),
            CurvaturePreset::Sinusoid { a, b, omega } => Curvature::Sinusoid {
                a: *a,
                b: *b,
                omega: *omega,
            },
            CurvaturePreset::Table(spline) => Curvature::Table(spline.clone()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CurvaturePreset::Zero => "k1=0".into(),
            CurvaturePreset::Constant(c) => format!("k1={c}"),
            CurvaturePreset::Sinusoid { a, b, omega } => format!("k1={a}+{b}sin({omega}s)"),
            CurvaturePreset::Table(spline) => {
                let (a, b) = spline.domain();
                format!("k1=table[{a},{b}]")
            }
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let finite = match self {
            CurvaturePreset::Zero | CurvaturePreset::Table(_) => true,
            CurvaturePreset::Constant(c) => c.is_finite(),
            CurvaturePreset::Sinusoid { a, b, omega } => a.is_finite() && b.is_finite() && omega.is_finite(),
        };
        if finite {
            Ok(())
        } else {
            Err(Error::Invalid(format!("curvature.{name} has non-finite parameters")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurvatureConfig {
    pub k1: CurvaturePreset,
    pub k2: CurvaturePreset,
    pub k3: CurvaturePreset,
}

impl Default for CurvatureConfig {
    fn default() -> Self {
        CurvatureConfig {
            k1: CurvaturePreset::Sinusoid {
                a: 0.3,
                b: 0.1,
                omega: 1.0,
            },
            k2: CurvaturePreset::Constant(0.2),
            k3: CurvaturePreset::Constant(0.1),
        }
    }
}

impl CurvatureConfig {
    pub fn build(&self) -> CurvatureFunctions {
        CurvatureFunctions::new(self.k1.build(), self.k2.build(), self.k3.build())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Gauss-map class decisions.
    pub class: f64,
    /// Regularity margin below which a point is singular.
    pub reg: f64,
    /// Frame orthonormality drift.
    pub frame: f64,
    /// Closed form vs generic route, relative to max(1, |closed|).
    pub agreement: f64,
    /// |det g| below which the metric is degenerate.
    pub metric: f64,
    /// Nonexistence residual floor, as a multiple of `class`.
    pub floor_factor: f64,
    /// Fitted m vs predicted constant.
    pub constant: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            class: 1e-6,
            reg: 1e-3,
            frame: 1e-8,
            agreement: 1e-6,
            metric: 1e-9,
            floor_factor: 1e3,
            constant: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeshConfig {
    pub slices: usize,
    pub t: usize,
    pub w: usize,
}

impl Default for MeshConfig {
    fn default() -> Self {
        MeshConfig {
            slices: 1,
            t: 24,
            w: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub families: Vec<Family>,
    pub r: f64,
    pub curvature: CurvatureConfig,
    pub s_range: [f64; 2],
    pub grid: GridSizes,
    /// RK4 step of the frame integration.
    pub step: f64,
    pub fd_step: f64,
    pub richardson: bool,
    pub tolerances: Tolerances,
    /// k₁ presets the theorem suite runs every family on.
    pub witnesses: Vec<CurvaturePreset>,
    pub mesh: MeshConfig,
    pub output: OutputConfig,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            families: Family::ALL.to_vec(),
            r: 0.5,
            curvature: CurvatureConfig::default(),
            s_range: [0.0, TAU],
            grid: GridSizes::default(),
            step: 1e-3,
            fd_step: crate::curvature::OPERATOR_FD_STEP,
            richardson: true,
            tolerances: Tolerances::default(),
            witnesses: vec![
                CurvaturePreset::Zero,
                CurvaturePreset::Constant(0.2),
                CurvaturePreset::Sinusoid {
                    a: 0.3,
                    b: 0.1,
                    omega: 1.0,
                },
            ],
            mesh: MeshConfig::default(),
            output: OutputConfig::default(),
            seed: 20_240_917,
        }
    }
}

/// Why a configuration was rejected.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn positive(name: &str, v: f64) -> std::result::Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::Invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> std::result::Result<Self, ConfigError> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> std::result::Result<(), ConfigError> {
        let invalid = |e: Error| ConfigError::Invalid(e.to_string());
        if self.families.is_empty() {
            return Err(ConfigError::Invalid("families must not be empty".into()));
        }
        for f in &self.families {
            f.validate().map_err(invalid)?;
        }
        positive("r", self.r)?;
        positive("step", self.step)?;
        positive("fd_step", self.fd_step)?;
        if self.fd_step >= self.step {
            return Err(ConfigError::Invalid(format!(
                "fd_step ({}) must be smaller than step ({})",
                self.fd_step, self.step
            )));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("tolerances.class", t.class),
            ("tolerances.reg", t.reg),
            ("tolerances.frame", t.frame),
            ("tolerances.agreement", t.agreement),
            ("tolerances.metric", t.metric),
            ("tolerances.floor_factor", t.floor_factor),
            ("tolerances.constant", t.constant),
        ] {
            positive(name, v)?;
        }
        let [a, b] = self.s_range;
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(ConfigError::Invalid(format!("s_range must be increasing and finite, got [{a}, {b}]")));
        }
        self.grid.validate().map_err(invalid)?;
        if self.mesh.slices < 1 || self.mesh.t < 2 || self.mesh.w < 2 {
            return Err(ConfigError::Invalid("mesh needs slices >= 1 and t, w >= 2".into()));
        }
        self.curvature.k1.validate("k1").map_err(invalid)?;
        self.curvature.k2.validate("k2").map_err(invalid)?;
        self.curvature.k3.validate("k3").map_err(invalid)?;
        for w in &self.witnesses {
            w.validate("witness").map_err(invalid)?;
        }
        Ok(())
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.s_range[0], self.s_range[1])
    }

    pub fn curvatures(&self) -> CurvatureFunctions {
        self.curvature.build()
    }

    pub fn numeric_options(&self) -> NumericOptions {
        NumericOptions {
            h: self.fd_step,
            richardson: self.richardson,
            metric_tol: self.tolerances.metric,
        }
    }

    /// Tube of `family` around the curve with the given curvatures.
    pub fn tube(&self, family: Family, curvatures: &CurvatureFunctions) -> Result<TubeSpec> {
        let curve = integrate_frame(
            curvatures,
            self.s_range(),
            Vec4::ZERO,
            FrenetFrame::standard(family.curve_case()),
            self.step,
        )?;
        Ok(TubeSpec::new(curve, self.r, family)?.with_reg_tol(self.tolerances.reg))
    }

    pub fn suite_settings(&self) -> SuiteSettings {
        let base = self.curvatures();
        SuiteSettings {
            families: self.families.clone(),
            r: self.r,
            witnesses: self
                .witnesses
                .iter()
                .map(|p| Witness {
                    label: p.label(),
                    curvatures: CurvatureFunctions::new(p.build(), base.k2.clone(), base.k3.clone()),
                })
                .collect(),
            s_range: self.s_range(),
            step: self.step,
            grid: self.grid,
            class_tol: self.tolerances.class,
            floor_factor: self.tolerances.floor_factor,
            constant_tol: self.tolerances.constant,
            reg_tol: self.tolerances.reg,
            numeric: self.numeric_options(),
            seed: self.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let c = RunConfig::from_json_str("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.families.len(), 7);
    }

    #[test]
    fn parses_presets_and_families() {
        let text = r#"{
            "families": ["timelike", {"spacelike": {"j": 3, "lambda": -1}}],
            "r": 0.25,
            "curvature": {
                "k1": {"table": {"s": [0, 1, 2], "k": [0.1, 0.2, 0.1]}},
                "k2": {"constant": 0.5},
                "k3": "zero"
            },
            "witnesses": ["zero", {"sinusoid": {"a": 0.3, "b": 0.1, "omega": 2}}],
            "grid": {"s": 4, "t": 5, "w": 6}
        }"#;
        let c = RunConfig::from_json_str(text).unwrap();
        assert_eq!(c.families[1], Family::Spacelike { j: 3, lambda: -1 });
        assert!((c.curvatures().k1.value(1.0) - 0.2).abs() < 1e-15);
        assert_eq!(c.grid, GridSizes { s: 4, t: 5, w: 6 });
        assert_eq!(c.suite_settings().witnesses.len(), 2);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let err = RunConfig::from_json_str("{\n  \"r\": 0.5,\n  \"tolerance\": 1e-6\n}").unwrap_err();
        match err {
            ConfigError::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("tolerance"));
            }
            other => panic!("{other:?}"),
        }
        assert!(RunConfig::from_json_str(r#"{"tolerances": {"clas": 1}}"#).is_err());
    }

    #[test]
    fn invariants_are_enforced() {
        for bad in [
            r#"{"r": 0}"#,
            r#"{"r": -1}"#,
            r#"{"grid": {"s": 1, "t": 4, "w": 4}}"#,
            r#"{"tolerances": {"class": 0}}"#,
            r#"{"families": [{"spacelike": {"j": 5, "lambda": 1}}]}"#,
            r#"{"families": []}"#,
            r#"{"s_range": [1, 1]}"#,
            r#"{"fd_step": 1e-2}"#,
            r#"{"curvature": {"k1": {"table": {"s": [0, 0], "k": [1, 2]}}}}"#,
        ] {
            assert!(RunConfig::from_json_str(bad).is_err(), "{bad}");
        }
    }
}
