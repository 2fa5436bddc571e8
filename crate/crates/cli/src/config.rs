//! Declarative scan configuration, read from TOML or from JSON (including the
//! sidecar written next to every result file).

use std::fmt;
use std::path::Path;

use lithoqed_core::born::BornSettings;
use lithoqed_core::quadrature::Truncation;
use lithoqed_core::{
    AtomModel, DepositionBox, DepositionGeometry, GratingSpec, HalfSpace, MaterialModel, QuadratureConfig, Vec3,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub atom: AtomModel,
    pub substrate: MaterialModel,
    #[serde(default)]
    pub geometry: GeometrySection,
    #[serde(default)]
    pub quadrature: QuadratureSection,
    pub scan: ScanSection,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeometrySection {
    #[default]
    None,
    Cube {
        a: f64,
        material: MaterialModel,
    },
    Grating {
        strips: usize,
        width: f64,
        height: f64,
        length: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x0: Option<f64>,
        material: MaterialModel,
    },
    Boxes {
        boxes: Vec<BoxSpec>,
        material: MaterialModel,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub z: [f64; 2],
}

/// Numerical settings. Mirrors the core quadrature configuration and adds the
/// Born evaluation settings as a `born` sub-table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSection {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub k_truncation: Truncation,
    pub xi_nodes: usize,
    pub split_at_branch_point: bool,
    pub spatial_nodes: usize,
    pub fd_rel_step: f64,
    pub born: BornSettings,
}

impl Default for QuadratureSection {
    fn default() -> Self {
        let q = QuadratureConfig::default();
        Self {
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            max_subdivisions: q.max_subdivisions,
            k_truncation: q.k_truncation,
            xi_nodes: q.xi_nodes,
            split_at_branch_point: q.split_at_branch_point,
            spatial_nodes: q.spatial_nodes,
            fd_rel_step: q.fd_rel_step,
            born: BornSettings::default(),
        }
    }
}

impl QuadratureSection {
    pub fn numerics(&self) -> QuadratureConfig {
        QuadratureConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
            k_truncation: self.k_truncation,
            xi_nodes: self.xi_nodes,
            split_at_branch_point: self.split_at_branch_point,
            spatial_nodes: self.spatial_nodes,
            fd_rel_step: self.fd_rel_step,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    DecayRate,
    CpPotential,
    CpForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    #[serde(rename = "raw")]
    Raw,
    #[serde(rename = "bare-halfspace")]
    BareHalfspace,
    #[serde(rename = "free-space")]
    FreeSpace,
    U0,
    F0,
}

impl Quantity {
    pub fn default_normalization(self) -> Normalization {
        match self {
            Quantity::DecayRate => Normalization::FreeSpace,
            Quantity::CpPotential => Normalization::U0,
            Quantity::CpForce => Normalization::F0,
        }
    }

    fn allows(self, n: Normalization) -> bool {
        use Normalization::*;
        match self {
            Quantity::DecayRate => matches!(n, Raw | BareHalfspace | FreeSpace),
            Quantity::CpPotential => matches!(n, Raw | BareHalfspace | U0),
            Quantity::CpForce => matches!(n, Raw | F0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    X,
    Y,
    Z,
}

impl AxisName {
    pub fn index(self) -> usize {
        match self {
            AxisName::X => 0,
            AxisName::Y => 1,
            AxisName::Z => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub axis: AxisName,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub quantity: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
    /// Force direction for `cp-force`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec3>,
    /// Coordinates not swept by any axis.
    pub origin: Vec3,
    /// One or two swept axes; the first varies slowest.
    pub axes: Vec<GridAxis>,
}

impl ScanSection {
    pub fn normalization(&self) -> Normalization {
        self.normalization.unwrap_or(self.quantity.default_normalization())
    }

    /// Grid points in output order.
    pub fn points(&self) -> Vec<Vec3> {
        let mut out = vec![self.origin];
        for ax in &self.axes {
            out = out
                .iter()
                .flat_map(|p| {
                    (0..ax.count).map(move |i| {
                        let mut q = *p;
                        q[ax.axis.index()] = ax.value(i);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// A configuration problem, anchored to a line of the source where possible.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub source: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}:{}: {}", self.source, l, self.message),
            None => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Toml,
    Json,
}

impl Format {
    pub fn detect(path: &Path, text: &str) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            Some("toml") => Format::Toml,
            _ if text.trim_start().starts_with('{') => Format::Json,
            _ => Format::Toml,
        }
    }
}

/// A parsed configuration with the text it came from, for anchoring later errors.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub config: Config,
    pub source: String,
    pub text: String,
    pub format: Format,
}

impl Loaded {
    pub fn diagnostic(&self, section: &str, key: &str, message: impl Into<String>) -> Diagnostic {
        let line = match self.format {
            Format::Toml => locate_toml(&self.text, section, key),
            Format::Json => locate_json(&self.text, key),
        };
        Diagnostic { source: self.source.clone(), line, message: message.into() }
    }
}

pub fn load(path: &Path) -> Result<Loaded, Diagnostic> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic { source: source.clone(), line: None, message: format!("cannot read config: {e}") })?;
    parse(&text, source, Format::detect(path, &text))
}

pub fn parse(text: &str, source: String, format: Format) -> Result<Loaded, Diagnostic> {
    let config = match format {
        Format::Toml => toml::from_str::<Config>(text).map_err(|e| Diagnostic {
            source: source.clone(),
            line: e.span().map(|s| line_of(text, s.start)),
            message: e.message().trim().to_string(),
        })?,
        Format::Json => parse_json(text, &source)?,
    };
    let loaded = Loaded { config, source, text: text.to_string(), format };
    validate(&loaded)?;
    Ok(loaded)
}

fn parse_json(text: &str, source: &str) -> Result<Config, Diagnostic> {
    let diag = |e: serde_json::Error| Diagnostic { source: source.to_string(), line: Some(e.line()), message: e.to_string() };
    let value: serde_json::Value = serde_json::from_str(text).map_err(diag)?;
    // A result sidecar carries the configuration under `config`.
    match value.get("config") {
        Some(inner) => serde_json::from_value(inner.clone())
            .map_err(|e| Diagnostic { source: source.to_string(), line: None, message: format!("in sidecar config: {e}") }),
        None => serde_json::from_str(text).map_err(diag),
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

// Line of `key = ...` inside `[section]` (or a sub-table of it), else of the header.
fn locate_toml(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    let mut header = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('[') {
            current = line.trim_matches(|c| c == '[' || c == ']').trim().to_string();
            if current == section && header.is_none() {
                header = Some(i + 1);
            }
            continue;
        }
        let in_section = current == section || current.starts_with(&format!("{section}."));
        if in_section && !key.is_empty() {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    header
}

fn locate_json(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

/// Semantic checks beyond the schema. Grid points inside the geometry are checked
/// separately, once the geometry is built.
pub fn validate(loaded: &Loaded) -> Result<(), Diagnostic> {
    let c = &loaded.config;
    let core = |section: &str, key: &str, r: lithoqed_core::Result<()>| r.map_err(|e| loaded.diagnostic(section, key, e.to_string()));
    core("atom", "omega", c.atom.validate())?;
    core("substrate", "kind", c.substrate.validate())?;
    core("quadrature", "", c.quadrature.numerics().validate())?;
    build_geometry(c).map_err(|e| loaded.diagnostic("geometry", "kind", e.to_string()))?;

    let s = &c.scan;
    if s.axes.is_empty() || s.axes.len() > 2 {
        return Err(loaded.diagnostic("scan", "axes", "scan needs one or two axes"));
    }
    if s.axes.len() == 2 && s.axes[0].axis == s.axes[1].axis {
        return Err(loaded.diagnostic("scan", "axis", "the two scan axes must differ"));
    }
    for ax in &s.axes {
        if ax.count == 0 {
            return Err(loaded.diagnostic("scan", "count", "axis count must be at least 1"));
        }
        if !(ax.start.is_finite() && ax.stop.is_finite()) {
            return Err(loaded.diagnostic("scan", "start", "axis limits must be finite"));
        }
    }
    if !s.origin.iter().all(|v| v.is_finite()) {
        return Err(loaded.diagnostic("scan", "origin", "origin must be finite"));
    }
    if !s.quantity.allows(s.normalization()) {
        return Err(loaded.diagnostic(
            "scan",
            "normalization",
            format!("normalization {:?} does not apply to {:?}", s.normalization(), s.quantity),
        ));
    }
    match (s.quantity, s.direction) {
        (Quantity::CpForce, None) => return Err(loaded.diagnostic("scan", "quantity", "cp-force needs a `direction`")),
        (Quantity::CpForce, Some(d)) if !(d.iter().all(|v| v.is_finite()) && d.iter().any(|v| *v != 0.0)) => {
            return Err(loaded.diagnostic("scan", "direction", "direction must be a non-zero finite vector"))
        }
        (Quantity::DecayRate | Quantity::CpPotential, Some(_)) => {
            return Err(loaded.diagnostic("scan", "direction", "direction only applies to cp-force"))
        }
        _ => {}
    }
    Ok(())
}

pub fn build_geometry(c: &Config) -> lithoqed_core::Result<DepositionGeometry> {
    match &c.geometry {
        GeometrySection::None => Ok(DepositionGeometry::empty()),
        GeometrySection::Cube { a, material } => DepositionGeometry::cube(*a, material.clone()),
        GeometrySection::Grating { strips, width, height, length, x0, material } => DepositionGeometry::grating(
            &GratingSpec { strips: *strips, width: *width, height: *height, length: *length, x0: *x0 },
            material.clone(),
        ),
        GeometrySection::Boxes { boxes, material } => {
            let boxes = boxes.iter().map(|b| DepositionBox::new(b.x, b.y, b.z)).collect::<lithoqed_core::Result<Vec<_>>>()?;
            DepositionGeometry::new(boxes, material.clone())
        }
    }
}

pub fn build_substrate(c: &Config) -> lithoqed_core::Result<HalfSpace> {
    HalfSpace::new(c.substrate.clone())
}
