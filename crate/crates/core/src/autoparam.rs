//! Closed-form parameter rules and the catalog of recommended settings.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::image::Plane;
use crate::model::{ParamName, PcnnParams};

/// Catalog shipped with the crate, in `key = value` form.
pub const CATALOG: &str = include_str!("../presets.txt");

/// Feeding decay from image contrast: `ln(1 / sigma)`, with `sigma` the
/// population standard deviation of the normalized intensities.
pub fn alpha_f_auto(image: &Plane) -> Result<f64> {
    let mean = image.mean();
    let var = image.data().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / image.len() as f64;
    let sigma = var.sqrt();
    if sigma == 0.0 {
        return Err(Error::DegenerateInput("uniform image has zero standard deviation".into()));
    }
    Ok((1.0 / sigma).ln())
}

/// Threshold decay from mean brightness: `c / mean`. There is no agreed
/// value for `c`; callers must choose one (10 is a common, arbitrary pick).
pub fn alpha_e_auto(image: &Plane, c: f64) -> Result<f64> {
    if !c.is_finite() || c <= 0.0 {
        return invalid(format!("constant c must be positive, got {c}"));
    }
    let mean = image.mean();
    if mean <= 0.0 {
        return Err(Error::DegenerateInput("mean intensity is zero".into()));
    }
    Ok(c / mean)
}

/// A recommended value or interval for one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Setting {
    Value(f64),
    /// Interval written `from..to`. `from > to` denotes a decaying schedule.
    Range { from: f64, to: f64 },
}

impl Setting {
    /// Scalar used for single runs: the value itself or the range midpoint.
    pub fn resolve(&self) -> f64 {
        match *self {
            Setting::Value(v) => v,
            Setting::Range { from, to } => (from + to) / 2.0,
        }
    }

    /// `(low, high)` bounds; a plain value is a degenerate interval.
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Setting::Value(v) => (v, v),
            Setting::Range { from, to } => (from.min(to), from.max(to)),
        }
    }

    fn parse(text: &str) -> Option<Setting> {
        match text.split_once("..") {
            Some((a, b)) => Some(Setting::Range {
                from: a.trim().parse().ok()?,
                to: b.trim().parse().ok()?,
            }),
            None => text.trim().parse().ok().map(Setting::Value),
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::Value(v) => write!(f, "{v}"),
            Setting::Range { from, to } => write!(f, "{from}..{to}"),
        }
    }
}

/// One catalog entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub name: String,
    pub model: String,
    pub source: String,
    pub settings: BTreeMap<ParamName, Setting>,
}

impl Preset {
    /// Overlays the recommended values on `base`.
    pub fn apply(&self, base: &PcnnParams) -> Result<PcnnParams> {
        let mut p = *base;
        for (&name, setting) in &self.settings {
            p.set(name, setting.resolve())?;
        }
        Ok(p)
    }

    /// Recommended values over [`PcnnParams::default`].
    pub fn params(&self) -> PcnnParams {
        self.apply(&PcnnParams::default()).expect("catalog values are valid")
    }

    pub fn range(&self, name: ParamName) -> Option<(f64, f64)> {
        match self.settings.get(&name)? {
            s @ Setting::Range { .. } => Some(s.bounds()),
            Setting::Value(_) => None,
        }
    }

    /// Serializes the entry as a `[name]` section.
    pub fn to_entry(&self) -> String {
        let mut out = format!("[{}]\nmodel = {}\nsource = {}\n", self.name, self.model, self.source);
        for (name, setting) in &self.settings {
            out.push_str(&format!("{name} = {setting}\n"));
        }
        out
    }
}

/// Parses a catalog. Lines are `[name]`, `key = value` or `#` comments.
pub fn parse_catalog(text: &str) -> Result<Vec<Preset>> {
    let mut presets: Vec<Preset> = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_offset = offset;
        offset += raw.len();
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { offset: line_offset, message };
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            if name.is_empty() || presets.iter().any(|p| p.name == name) {
                return Err(err(format!("empty or duplicate section '{name}'")));
            }
            presets.push(Preset {
                name: name.to_string(),
                model: String::new(),
                source: String::new(),
                settings: BTreeMap::new(),
            });
            continue;
        }
        let Some(current) = presets.last_mut() else {
            return Err(err("entry outside of a [section]".into()));
        };
        let Some((key, value)) = line.split_once('=') else {
            return Err(err(format!("expected key = value, got '{line}'")));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "model" => current.model = value.to_string(),
            "source" => current.source = value.to_string(),
            _ => {
                let name: ParamName = key.parse().map_err(|_| err(format!("unknown key '{key}'")))?;
                let setting = Setting::parse(value).ok_or_else(|| err(format!("bad value '{value}'")))?;
                let (lo, hi) = setting.bounds();
                if !(lo.is_finite() && hi.is_finite() && lo >= 0.0) {
                    return Err(err(format!("value '{value}' must be finite and >= 0")));
                }
                if current.settings.insert(name, setting).is_some() {
                    return Err(err(format!("duplicate key '{key}'")));
                }
            }
        }
    }
    Ok(presets)
}

pub fn write_catalog(presets: &[Preset]) -> String {
    presets.iter().map(Preset::to_entry).collect::<Vec<_>>().join("\n")
}

/// The built-in catalog.
pub fn catalog() -> Vec<Preset> {
    parse_catalog(CATALOG).expect("built-in catalog parses")
}

/// Looks up a built-in preset by name (case-insensitive).
pub fn preset(name: &str) -> Result<Preset> {
    let key = name.trim().to_ascii_lowercase();
    catalog()
        .into_iter()
        .find(|p| p.name == key)
        .ok_or_else(|| Error::NotFound(format!("preset '{name}'")))
}
