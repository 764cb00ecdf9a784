use std::fs;
use std::io;
use std::path::Path;

use pcnn::apps::{
    denoise, denoise_params, edge_map, kmeans2, otsu, segment_sequence, segmentation_params,
};
use pcnn::autoparam::{catalog, preset, write_catalog};
use pcnn::imgio::{read_pgm_file, signature_csv, write_mask_pgm, write_pgm, write_sequence};
use pcnn::metrics::misclassification_error;
use pcnn::model::{run, time_signature, PcnnParams};
use pcnn::{GrayImage, Mask, Result};
use rayon::prelude::*;

use crate::cli::{DenoiseArgs, PresetArgs, RunArgs, SegmentArgs, SweepArgs};
use crate::config::{echo, resolve};

const KMEANS_MAX_ITERS: usize = 100;

/// Creates `dir` if needed and insists that it is empty.
fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    if fs::read_dir(dir)?.next().is_some() {
        return Err(io::Error::new(
            io::ErrorKind::AlreadyExists,
            format!("output directory {} is not empty", dir.display()),
        )
        .into());
    }
    Ok(())
}

fn load(path: &Path) -> Result<GrayImage> {
    read_pgm_file(path).map_err(|e| match e {
        pcnn::Error::Io(io) => io::Error::new(io.kind(), format!("{}: {io}", path.display())).into(),
        other => other,
    })
}

pub fn cmd_run(args: &RunArgs) -> Result<()> {
    let image = load(&args.io.input)?;
    let p = resolve(&args.params, PcnnParams::default(), &image, None)?;
    let seq = run(&image, &p, args.variant, p.iters)?;
    write_sequence(&seq, &args.io.out)?;
    let variant = [("variant", args.variant.to_string())];
    let cfg = echo("run", &args.io.input.display().to_string(), &variant, &args.params, &p);
    fs::write(args.io.out.join("config.txt"), cfg)?;
    Ok(())
}

pub fn cmd_signature(args: &RunArgs) -> Result<()> {
    let image = load(&args.io.input)?;
    let p = resolve(&args.params, PcnnParams::default(), &image, None)?;
    let seq = run(&image, &p, args.variant, p.iters)?;
    prepare_out(&args.io.out)?;
    fs::write(args.io.out.join("signature.csv"), signature_csv(&seq))?;
    let variant = [("variant", args.variant.to_string())];
    let cfg = echo("signature", &args.io.input.display().to_string(), &variant, &args.params, &p);
    fs::write(args.io.out.join("config.txt"), cfg)?;
    Ok(())
}

pub fn cmd_edges(args: &RunArgs) -> Result<()> {
    let image = load(&args.io.input)?;
    let p = resolve(&args.params, PcnnParams::default(), &image, None)?;
    let seq = run(&image, &p, args.variant, p.iters)?;
    let edges = edge_map(&seq);
    prepare_out(&args.io.out)?;
    fs::write(args.io.out.join("edges.pgm"), write_mask_pgm(&edges))?;
    let variant = [("variant", args.variant.to_string())];
    let cfg = echo("edges", &args.io.input.display().to_string(), &variant, &args.params, &p);
    fs::write(args.io.out.join("config.txt"), cfg)?;
    println!("edge_pixels={}", edges.count_ones());
    Ok(())
}

fn load_truth(path: &Path) -> Result<Mask> {
    let img = load(path)?;
    Ok(Mask::from_fn(img.width(), img.height(), |i, j| img.get(i, j) > 0.5))
}

pub fn cmd_segment(args: &SegmentArgs) -> Result<()> {
    let image = load(&args.io.input)?;
    let truth = args.truth.as_deref().map(load_truth).transpose()?;
    let p = resolve(&args.params, segmentation_params(), &image, None)?;
    let seq = run(&image, &p, args.variant, p.iters)?;
    let seg = segment_sequence(&image, &seq)?;

    prepare_out(&args.io.out)?;
    fs::write(args.io.out.join("mask.pgm"), write_mask_pgm(&seg.mask))?;
    fs::write(args.io.out.join("curve.csv"), seg.curve_csv())?;
    let mut lines = vec![("variant", args.variant.to_string())];
    if let Some(t) = &args.truth {
        lines.push(("truth", t.display().to_string()));
    }
    let cfg = echo("segment", &args.io.input.display().to_string(), &lines, &args.params, &p);
    fs::write(args.io.out.join("config.txt"), cfg)?;

    println!("iteration={} cross_entropy={}", seg.chosen_iteration, seg.min_cross_entropy());
    if let Some(truth) = truth {
        let ours = misclassification_error(&seg.mask, &truth)?;
        let o = misclassification_error(&otsu(&image).mask, &truth)?;
        let k = misclassification_error(&kmeans2(&image, KMEANS_MAX_ITERS, args.params.seed)?.mask, &truth)?;
        println!("misclassification={ours} otsu={o} kmeans={k}");
    }
    Ok(())
}

pub fn cmd_denoise(args: &DenoiseArgs) -> Result<()> {
    let image = load(&args.io.input)?;
    let p = resolve(&args.params, denoise_params(), &image, None)?;
    let r = denoise(&image, &p, args.tau)?;
    prepare_out(&args.io.out)?;
    fs::write(args.io.out.join("denoised.pgm"), write_pgm(&r.image))?;
    fs::write(args.io.out.join("candidates.pgm"), write_mask_pgm(&r.candidate_map))?;
    let lines = [("variant", "simplified".to_string()), ("tau", args.tau.to_string())];
    let cfg = echo("denoise", &args.io.input.display().to_string(), &lines, &args.params, &p);
    fs::write(args.io.out.join("config.txt"), cfg)?;
    println!("candidates={} repaired={}", r.candidate_map.count_ones(), r.repaired_count);
    Ok(())
}

/// `steps` evenly spaced values from `from` to `to` inclusive.
pub fn sweep_values(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|k| from + (to - from) * k as f64 / (steps - 1) as f64).collect()
}

struct SweepRow {
    value: f64,
    total_fired: usize,
    peak_fired: usize,
    chosen_iteration: usize,
    min_cross_entropy: f64,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    if args.steps < 2 {
        return Err(pcnn::Error::InvalidArgument(format!("--steps must be at least 2, got {}", args.steps)));
    }
    if !(args.from.is_finite() && args.to.is_finite()) || args.from > args.to {
        return Err(pcnn::Error::InvalidArgument(format!(
            "--from must not exceed --to (got {} > {})",
            args.from, args.to
        )));
    }
    let image = load(&args.io.input)?;
    let values = sweep_values(args.from, args.to, args.steps);
    let configs = values
        .iter()
        .map(|&v| resolve(&args.params, PcnnParams::default(), &image, Some((args.param, v))))
        .collect::<Result<Vec<_>>>()?;
    prepare_out(&args.io.out)?;

    let input = args.io.input.display().to_string();
    let rows = values
        .par_iter()
        .zip(configs.par_iter())
        .enumerate()
        .map(|(k, (&value, p))| -> Result<SweepRow> {
            let seq = run(&image, p, args.variant, p.iters)?;
            let dir = args.io.out.join(format!("{:03}_{}", k + 1, args.param));
            write_sequence(&seq, &dir)?;
            let lines = [("variant", args.variant.to_string()), ("sweep_value", value.to_string())];
            fs::write(dir.join("config.txt"), echo("sweep", &input, &lines, &args.params, p))?;
            let signature = time_signature(&seq);
            let seg = segment_sequence(&image, &seq)?;
            Ok(SweepRow {
                value,
                total_fired: signature.iter().sum(),
                peak_fired: signature.iter().copied().max().unwrap_or(0),
                chosen_iteration: seg.chosen_iteration,
                min_cross_entropy: seg.min_cross_entropy(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut csv = String::from("value,total_fired,peak_fired,chosen_iteration,min_cross_entropy\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.value, r.total_fired, r.peak_fired, r.chosen_iteration, r.min_cross_entropy
        ));
    }
    fs::write(args.io.out.join("sweep.csv"), csv)?;
    let lines = [
        ("variant", args.variant.to_string()),
        ("param", args.param.to_string()),
        ("from", args.from.to_string()),
        ("to", args.to.to_string()),
        ("steps", args.steps.to_string()),
    ];
    let base = resolve(&args.params, PcnnParams::default(), &image, None)?;
    fs::write(args.io.out.join("config.txt"), echo("sweep", &input, &lines, &args.params, &base))?;
    Ok(())
}

pub fn cmd_presets(args: &PresetArgs) -> Result<()> {
    match &args.name {
        None => print!("{}", write_catalog(&catalog())),
        Some(name) => {
            let entry = preset(name)?;
            print!("{}\n# resolved over the defaults\n{}", entry.to_entry(), entry.params().to_key_values());
        }
    }
    Ok(())
}
