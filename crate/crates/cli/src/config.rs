use std::collections::BTreeMap;

use pcnn::autoparam::{alpha_e_auto, alpha_f_auto, preset};
use pcnn::model::{ParamName, PcnnParams};
use pcnn::{Error, GrayImage};

use crate::cli::ParamArgs;

/// Effective parameters: command defaults, then the preset, then explicit
/// flags. `extra` is treated like an explicit flag (used by sweeps).
pub fn resolve(
    args: &ParamArgs,
    base: PcnnParams,
    image: &GrayImage,
    extra: Option<(ParamName, f64)>,
) -> pcnn::Result<PcnnParams> {
    let mut p = base;
    if let Some(name) = &args.preset {
        p = preset(name)?.apply(&p)?;
    }

    let mut explicit = BTreeMap::new();
    let flags = [
        (ParamName::AlphaF, args.alpha_f),
        (ParamName::AlphaL, args.alpha_l),
        (ParamName::AlphaE, args.alpha_e),
        (ParamName::VF, args.vf),
        (ParamName::VL, args.vl),
        (ParamName::VE, args.ve),
        (ParamName::Beta, args.beta),
        (ParamName::Radius, args.radius.map(|r| r as f64)),
        (ParamName::Iters, args.iters.map(|n| n as f64)),
    ];
    for (name, value) in flags {
        if let Some(v) = value {
            explicit.insert(name, v);
        }
    }
    if let Some((name, v)) = extra {
        explicit.insert(name, v);
    }
    for (&name, &v) in &explicit {
        p.set(name, v)?;
    }

    if !explicit.contains_key(&ParamName::AlphaE) && args.auto_alpha_e {
        p.alpha_e = alpha_e_auto(image, args.c)?;
    }
    if !explicit.contains_key(&ParamName::AlphaF) {
        match alpha_f_auto(image) {
            Ok(a) => p.alpha_f = a,
            Err(Error::DegenerateInput(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if !explicit.contains_key(&ParamName::AlphaL) {
        if !(args.alpha_l_ratio.is_finite() && args.alpha_l_ratio >= 0.0) {
            return Err(Error::InvalidArgument(format!("--alpha-l-ratio must be >= 0, got {}", args.alpha_l_ratio)));
        }
        p.alpha_l = p.alpha_f * args.alpha_l_ratio;
    }
    p.validate()?;
    Ok(p)
}

/// Text of `config.txt`: the effective configuration, one `key=value` per line.
pub fn echo(command: &str, input: &str, lines: &[(&str, String)], args: &ParamArgs, params: &PcnnParams) -> String {
    let mut out = format!("command={command}\ninput={input}\n");
    for (k, v) in lines {
        out.push_str(&format!("{k}={v}\n"));
    }
    out.push_str(&format!("preset={}\n", args.preset.as_deref().unwrap_or("none")));
    out.push_str(&params.to_key_values());
    out.push_str(&format!("seed={}\n", args.seed));
    out
}
