use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Model constants shared by every variant.
///
/// Decay constants enter the dynamics as `exp(-alpha)`. An alpha of
/// `f64::INFINITY` is accepted and gives a decay factor of exactly 0, which
/// turns off the memory of that compartment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PcnnParams {
    pub alpha_f: f64,
    pub alpha_l: f64,
    pub alpha_e: f64,
    pub v_f: f64,
    pub v_l: f64,
    pub v_e: f64,
    pub beta: f64,
    pub radius: usize,
    pub iters: usize,
}

impl Default for PcnnParams {
    fn default() -> Self {
        PcnnParams {
            alpha_f: 0.1,
            alpha_l: 0.05,
            alpha_e: 0.02,
            v_f: 0.5,
            v_l: 1.0,
            v_e: 20.0,
            beta: 0.1,
            radius: 1,
            iters: 240,
        }
    }
}

impl PcnnParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha_f", self.alpha_f),
            ("alpha_l", self.alpha_l),
            ("alpha_e", self.alpha_e),
        ] {
            if v.is_nan() || v < 0.0 {
                return invalid(format!("{name} must be >= 0, got {v}"));
            }
        }
        for (name, v) in [("v_f", self.v_f), ("v_l", self.v_l), ("v_e", self.v_e), ("beta", self.beta)] {
            if !v.is_finite() || v < 0.0 {
                return invalid(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        if self.radius == 0 {
            return invalid("radius must be >= 1");
        }
        if self.iters == 0 {
            return invalid("iters must be >= 1");
        }
        Ok(())
    }

    #[inline]
    pub fn feeding_decay(&self) -> f64 {
        (-self.alpha_f).exp()
    }

    #[inline]
    pub fn linking_decay(&self) -> f64 {
        (-self.alpha_l).exp()
    }

    #[inline]
    pub fn threshold_decay(&self) -> f64 {
        (-self.alpha_e).exp()
    }

    pub fn get(&self, name: ParamName) -> f64 {
        match name {
            ParamName::AlphaF => self.alpha_f,
            ParamName::AlphaL => self.alpha_l,
            ParamName::AlphaE => self.alpha_e,
            ParamName::VF => self.v_f,
            ParamName::VL => self.v_l,
            ParamName::VE => self.v_e,
            ParamName::Beta => self.beta,
            ParamName::Radius => self.radius as f64,
            ParamName::Iters => self.iters as f64,
        }
    }

    /// Sets one field. Integer fields are rounded to the nearest integer.
    pub fn set(&mut self, name: ParamName, value: f64) -> Result<()> {
        match name {
            ParamName::AlphaF => self.alpha_f = value,
            ParamName::AlphaL => self.alpha_l = value,
            ParamName::AlphaE => self.alpha_e = value,
            ParamName::VF => self.v_f = value,
            ParamName::VL => self.v_l = value,
            ParamName::VE => self.v_e = value,
            ParamName::Beta => self.beta = value,
            ParamName::Radius | ParamName::Iters => {
                if !value.is_finite() || value < 0.5 {
                    return invalid(format!("{name} must be a positive integer, got {value}"));
                }
                let v = value.round() as usize;
                if name == ParamName::Radius {
                    self.radius = v;
                } else {
                    self.iters = v;
                }
            }
        }
        Ok(())
    }

    /// `key=value` lines in [`ParamName::ALL`] order.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for name in ParamName::ALL {
            out.push_str(&format!("{name}={}\n", self.get(name)));
        }
        out
    }
}

/// Names of the tunable fields, as used in preset files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamName {
    AlphaF,
    AlphaL,
    AlphaE,
    VF,
    VL,
    VE,
    Beta,
    Radius,
    Iters,
}

impl ParamName {
    pub const ALL: [ParamName; 9] = [
        ParamName::AlphaF,
        ParamName::AlphaL,
        ParamName::AlphaE,
        ParamName::VF,
        ParamName::VL,
        ParamName::VE,
        ParamName::Beta,
        ParamName::Radius,
        ParamName::Iters,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::AlphaF => "alpha_f",
            ParamName::AlphaL => "alpha_l",
            ParamName::AlphaE => "alpha_e",
            ParamName::VF => "v_f",
            ParamName::VL => "v_l",
            ParamName::VE => "v_e",
            ParamName::Beta => "beta",
            ParamName::Radius => "radius",
            ParamName::Iters => "iters",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        let name = match norm.as_str() {
            "alpha_f" => ParamName::AlphaF,
            "alpha_l" => ParamName::AlphaL,
            "alpha_e" => ParamName::AlphaE,
            "v_f" | "vf" => ParamName::VF,
            "v_l" | "vl" => ParamName::VL,
            "v_e" | "ve" => ParamName::VE,
            "beta" => ParamName::Beta,
            "radius" => ParamName::Radius,
            "iters" => ParamName::Iters,
            _ => return invalid(format!("unknown parameter '{s}'")),
        };
        Ok(name)
    }
}

/// Which update rule drives the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Leaky feeding and linking compartments.
    Full,
    /// Feeding equals the stimulus, linking is memoryless.
    Simplified,
    /// Simplified model fed with the normalized local spatial frequency.
    SfFed,
    /// Simplified model whose linking is a step function of neighbor pulses.
    Srg,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Full, Variant::Simplified, Variant::SfFed, Variant::Srg];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Simplified => "simplified",
            Variant::SfFed => "sf-fed",
            Variant::Srg => "srg",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(Variant::Full),
            "simplified" => Ok(Variant::Simplified),
            "sf-fed" | "sf_fed" => Ok(Variant::SfFed),
            "srg" => Ok(Variant::Srg),
            _ => invalid(format!("unknown variant '{s}' (expected full|simplified|sf-fed|srg)")),
        }
    }
}
