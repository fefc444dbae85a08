//! One function per subcommand: bind the parsed config to core operations
//! and emit CSV + JSON + manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Result;
use serde::Serialize;

use fracwave_core::diagnostics::{
    default_h_list, default_k1_list, front_speed_grid, front_speed_sweep, probe_divergence,
    pw_growth_probe, FrontSpeedReport, NonsmoothnessProbe,
};
use fracwave_core::dispersion::{green_spectrum, GreenSpectrum};
use fracwave_core::fracop::{apply_fractional_laplacian, bump_profile, RadialField};
use fracwave_core::model::WaveModel;
use fracwave_core::synth::{green_spatial, pressure_spatial, GridConfig};
use fracwave_core::transform::TaperMode;

use crate::config::{Config, ConfigError};
use crate::output::{write_json, CsvWriter, Manifest};

pub struct RunContext {
    pub out_dir: PathBuf,
    pub taper: TaperMode,
    pub threads: Option<usize>,
    pub gnuplot: bool,
}

impl RunContext {
    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

fn finalize(
    ctx: &RunContext,
    command: &str,
    cfg: &Config,
    outputs: Vec<String>,
) -> Result<()> {
    cfg.finish()?;
    let mut manifest = Manifest::new(command, ctx.taper.label(), ctx.threads);
    manifest.config = cfg.resolved();
    manifest.outputs = outputs;
    write_json(&ctx.path(&format!("{command}-manifest.json")), &manifest)
}

pub fn dispersion(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let model = cfg.take_model("model")?;
    let t = cfg.take_f64("experiment", "t")?;
    let k_max = cfg.take_f64("experiment", "k_max")?;
    let points = cfg.take_usize_or("experiment", "k_points", 400)?;
    let k_grid: Vec<f64> = (0..points)
        .map(|i| k_max * i as f64 / (points - 1) as f64)
        .collect();
    let spectrum = GreenSpectrum::sample(&model, t, &k_grid);

    let mut csv = CsvWriter::new();
    csv.comment("schema: fracwave/dispersion/v1")
        .comment(&format!("model: {}", model.id()))
        .comment(&format!("t: {t}"))
        .header(&["k", "mu", "theta_sq", "g_hat", "dg_hat_dt"]);
    for s in &spectrum.samples {
        csv.row(&[s.k, s.mu, s.theta_sq, s.g, s.dg_dt]);
    }
    csv.write(&ctx.path("dispersion.csv"))?;

    #[derive(Serialize)]
    struct Report<'a> {
        schema: &'static str,
        model: &'a WaveModel,
        t: f64,
        k_max: f64,
        k_points: usize,
    }
    write_json(
        &ctx.path("dispersion.json"),
        &Report {
            schema: "fracwave/dispersion/v1",
            model: &model,
            t,
            k_max,
            k_points: points,
        },
    )?;
    finalize(
        ctx,
        "dispersion",
        cfg,
        vec!["dispersion.csv".into(), "dispersion.json".into()],
    )
}

fn field_outputs(
    ctx: &RunContext,
    command: &str,
    field: &RadialField,
    model: &WaveModel,
    t: f64,
    cfg_grid: &GridConfig,
) -> Result<Vec<String>> {
    let mut outputs = vec![format!("{command}.csv"), format!("{command}.json")];
    let mut csv = CsvWriter::new();
    csv.comment(&format!("schema: fracwave/{command}/v1"))
        .comment(&format!("model: {}", model.id()))
        .comment(&format!("t: {t}"))
        .comment(&format!(
            "k_max: {}, taper: {}, quadrature: {}",
            field.meta.k_max, field.meta.taper, field.meta.quadrature
        ))
        .header(&["r", "value", "trunc_err"]);
    let coarse = field.coarse_values();
    for (i, (&r, &v)) in field.r_grid().iter().zip(field.values()).enumerate() {
        let err = coarse.map_or(0.0, |c| (v - c[i]).abs());
        csv.row(&[r, v, err]);
    }
    csv.write(&ctx.path(&format!("{command}.csv")))?;

    #[derive(Serialize)]
    struct Report<'a> {
        schema: String,
        model: &'a WaveModel,
        t: f64,
        r_max: f64,
        dr: f64,
        k_max: f64,
        nodes_per_period: usize,
        meta: &'a fracwave_core::fracop::FieldMeta,
        peak_radius: f64,
        abs_mass: f64,
    }
    write_json(
        &ctx.path(&format!("{command}.json")),
        &Report {
            schema: format!("fracwave/{command}/v1"),
            model,
            t,
            r_max: cfg_grid.r_max,
            dr: cfg_grid.dr,
            k_max: cfg_grid.k_max,
            nodes_per_period: cfg_grid.nodes_per_period,
            meta: &field.meta,
            peak_radius: field.peak_radius(),
            abs_mass: field.abs_mass(),
        },
    )?;

    if ctx.gnuplot {
        let mut dat = CsvWriter::new();
        for (&r, &v) in field.r_grid().iter().zip(field.values()) {
            dat.row_mixed(&[format!("{r:.16e} {v:.16e}")]);
        }
        dat.write(&ctx.path(&format!("{command}.dat")))?;
        outputs.push(format!("{command}.dat"));
    }
    Ok(outputs)
}

pub fn green(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let model = cfg.take_model("model")?;
    let t = cfg.take_f64("experiment", "t")?;
    let grid = cfg.take_grid(&model, t, ctx.taper)?;
    let field = green_spatial(&model, t, &grid)?;
    let outputs = field_outputs(ctx, "green", &field, &model, t, &grid)?;
    finalize(ctx, "green", cfg, outputs)
}

pub fn pressure(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let model = cfg.take_model("model")?;
    let t = cfg.take_f64("experiment", "t")?;
    let grid = cfg.take_grid(&model, t, ctx.taper)?;
    let field = pressure_spatial(&model, t, &grid)?;
    let outputs = field_outputs(ctx, "pressure", &field, &model, t, &grid)?;
    finalize(ctx, "pressure", cfg, outputs)
}

pub fn nonlocal(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let width = cfg.take_f64_or("experiment", "bump_width", 1.0)?;
    let gammas = cfg.take_f64_list("experiment", "gamma_list")?;
    let radii = match cfg.take_str("experiment", "r_list") {
        Ok(raw) => raw
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| ConfigError(format!("key `experiment.r_list`: bad number `{s}`")))
            })
            .collect::<Result<Vec<f64>, _>>()?,
        Err(_) => vec![2.0, 3.0, 4.0, 5.0, 6.0, 8.0],
    };
    let contrast_radius = cfg.take_f64_or("experiment", "contrast_radius", 5.0)?;
    let r_max = cfg.take_f64_or("grid", "r_max", 10.0)?;
    let dr = cfg.take_f64_or("grid", "dr", 0.0025)?;
    let k_max = cfg.take_f64_or("grid", "k_max", 600.0)?;
    let n = (r_max / dr).round() as usize;

    let field = RadialField::from_profile(|r| bump_profile(r, width), r_max, n, k_max)
        .map_err(|e| ConfigError(format!("bump field: {e}")))?;
    // γ = 1 always runs as the matched local control
    let mut all_gammas = gammas.clone();
    if !all_gammas.contains(&1.0) {
        all_gammas.push(1.0);
    }
    let mut fields = Vec::new();
    for &g in &all_gammas {
        fields.push((g, apply_fractional_laplacian(&field, g)?));
    }

    let mut csv = CsvWriter::new();
    csv.comment("schema: fracwave/nonlocal/v1")
        .comment(&format!("bump_width: {width}, k_max: {k_max}, dr: {dr}"));
    let mut hdr = vec!["r0".to_string()];
    hdr.extend(all_gammas.iter().map(|g| format!("tail_mass_gamma_{g}")));
    csv.header(&hdr.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    for &r0 in &radii {
        let mut row = vec![r0];
        for (_, f) in &fields {
            row.push(f.abs_mass_beyond(r0));
        }
        csv.row(&row);
    }
    csv.write(&ctx.path("nonlocal.csv"))?;

    let control_tail = fields
        .iter()
        .find(|(g, _)| *g == 1.0)
        .map(|(_, f)| f.abs_mass_beyond(contrast_radius))
        .unwrap();
    let contrasts: BTreeMap<String, f64> = fields
        .iter()
        .filter(|(g, _)| *g != 1.0)
        .map(|(g, f)| {
            (
                format!("{g}"),
                f.abs_mass_beyond(contrast_radius) / control_tail,
            )
        })
        .collect();

    #[derive(Serialize)]
    struct Report {
        schema: &'static str,
        bump_width: f64,
        k_max: f64,
        dr: f64,
        r_max: f64,
        contrast_radius: f64,
        control_tail_mass: f64,
        contrast_factors: BTreeMap<String, f64>,
    }
    write_json(
        &ctx.path("nonlocal.json"),
        &Report {
            schema: "fracwave/nonlocal/v1",
            bump_width: width,
            k_max,
            dr,
            r_max,
            contrast_radius,
            control_tail_mass: control_tail,
            contrast_factors: contrasts,
        },
    )?;
    finalize(
        ctx,
        "nonlocal",
        cfg,
        vec!["nonlocal.csv".into(), "nonlocal.json".into()],
    )
}

fn sweep_csv(path: &Path, report: &FrontSpeedReport) -> Result<()> {
    let mut csv = CsvWriter::new();
    csv.comment("schema: fracwave/front-speed/v1")
        .comment(&format!("model: {}", report.model_id))
        .comment(&format!(
            "t: {}, taper: {}, k_max: {}",
            report.t, report.taper, report.k_max
        ))
        .header(&[
            "c_f",
            "r0",
            "tau",
            "trunc_err",
            "control_tau",
            "control_trunc_err",
        ]);
    for (e, c) in report.entries.iter().zip(&report.control) {
        csv.row(&[e.c_f, e.r0, e.tau, e.trunc_err, c.tau, c.trunc_err]);
    }
    csv.write(path)
}

pub fn front_speed(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let model = cfg.take_model("model")?;
    let t = cfg.take_f64("experiment", "t")?;
    let cf_list = cfg.take_f64_list("experiment", "cf_list")?;
    let cf_max = cf_list.iter().cloned().fold(0.0, f64::max);
    let defaults = front_speed_grid(t, cf_max);
    let r_max = cfg.take_f64_or("grid", "r_max", defaults.r_max)?;
    let dr = cfg.take_f64_or("grid", "dr", defaults.dr)?;
    let k_max = cfg.take_f64_or("grid", "k_max", 40.0 / dr)?;
    let nodes_per_period = cfg.take_usize_or("grid", "nodes_per_period", 8)?;
    let grid = GridConfig {
        r_max,
        dr,
        k_max,
        nodes_per_period,
        taper: ctx.taper,
    };
    let report = front_speed_sweep(&model, t, &cf_list, &grid)?;
    sweep_csv(&ctx.path("front-speed.csv"), &report)?;

    #[derive(Serialize)]
    struct Report<'a> {
        schema: &'static str,
        report: &'a FrontSpeedReport,
    }
    write_json(
        &ctx.path("front-speed.json"),
        &Report {
            schema: "fracwave/front-speed/v1",
            report: &report,
        },
    )?;
    finalize(
        ctx,
        "front-speed",
        cfg,
        vec!["front-speed.csv".into(), "front-speed.json".into()],
    )
}

pub fn nonsmooth(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let target = match cfg.take_str("experiment", "target") {
        Ok(t) => t,
        Err(_) => "symbol".to_string(),
    };
    let h_list = match cfg.take_str("experiment", "h_list") {
        Ok(raw) => raw
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| ConfigError(format!("key `experiment.h_list`: bad number `{s}`")))
            })
            .collect::<Result<Vec<f64>, _>>()?,
        Err(_) => default_h_list(),
    };

    #[derive(Serialize)]
    struct ProbeEntry {
        label: String,
        degree: Option<f64>,
        probe: NonsmoothnessProbe,
    }

    let mut probes: Vec<ProbeEntry> = Vec::new();
    match target.as_str() {
        "symbol" => {
            // entries like `1:2, 1.5:2, 3:4` pair symbol degree d with order n
            let pairs = cfg.take_str_list("experiment", "pairs")?;
            for pair in &pairs {
                let Some((d_raw, n_raw)) = pair.split_once(':') else {
                    return Err(ConfigError(format!(
                        "key `experiment.pairs`: expected `d:order`, got `{pair}`"
                    ))
                    .into());
                };
                let d: f64 = d_raw.trim().parse().map_err(|_| {
                    ConfigError(format!("key `experiment.pairs`: bad degree `{d_raw}`"))
                })?;
                let n: usize = n_raw.trim().parse().map_err(|_| {
                    ConfigError(format!("key `experiment.pairs`: bad order `{n_raw}`"))
                })?;
                let probe = fracwave_core::diagnostics::nonsmoothness_probe(d / 2.0, n, &h_list)?;
                probes.push(ProbeEntry {
                    label: format!("symbol|k|^{d}"),
                    degree: Some(d),
                    probe,
                });
            }
        }
        "green-spectrum" => {
            let model = cfg.take_model("model")?;
            let t = cfg.take_f64("experiment", "t")?;
            let order = cfg.take_usize_or("experiment", "order", 2)?;
            let probe =
                probe_divergence(|k| green_spectrum(k.abs(), t, &model), order, &h_list);
            probes.push(ProbeEntry {
                label: format!("green-spectrum({}, t={t})", model.id()),
                degree: None,
                probe,
            });
        }
        other => {
            return Err(ConfigError(format!(
                "key `experiment.target`: unknown target `{other}` \
                 (expected symbol | green-spectrum)"
            ))
            .into())
        }
    }

    let mut csv = CsvWriter::new();
    csv.comment("schema: fracwave/nonsmooth/v1")
        .header(&["probe_index", "order", "h", "magnitude", "converged"]);
    for (i, entry) in probes.iter().enumerate() {
        for s in &entry.probe.samples {
            csv.row(&[
                i as f64,
                entry.probe.order as f64,
                s.h,
                s.magnitude,
                f64::from(u8::from(s.converged)),
            ]);
        }
    }
    csv.write(&ctx.path("nonsmooth.csv"))?;

    #[derive(Serialize)]
    struct Report {
        schema: &'static str,
        target: String,
        probes: Vec<ProbeEntry>,
    }
    write_json(
        &ctx.path("nonsmooth.json"),
        &Report {
            schema: "fracwave/nonsmooth/v1",
            target,
            probes,
        },
    )?;
    finalize(
        ctx,
        "nonsmooth",
        cfg,
        vec!["nonsmooth.csv".into(), "nonsmooth.json".into()],
    )
}

pub fn pw_probe(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let model = cfg.take_model("model")?;
    let t = cfg.take_f64("experiment", "t")?;
    let points = cfg.take_usize_or("experiment", "points", 48)?;
    let k1_list = default_k1_list(&model, t, points);
    let report = pw_growth_probe(&model, t, &k1_list)?;

    let mut csv = CsvWriter::new();
    csv.comment("schema: fracwave/pw-probe/v1")
        .comment(&format!("model: {}", model.id()))
        .comment(&format!(
            "t: {t}, fitted exponent: {}, coefficient: {}",
            report.exponent, report.coefficient
        ))
        .header(&["k1", "log_magnitude"]);
    for s in &report.samples {
        csv.row(&[s.k1, s.log_magnitude]);
    }
    csv.write(&ctx.path("pw-probe.csv"))?;

    #[derive(Serialize)]
    struct Report<'a> {
        schema: &'static str,
        report: &'a fracwave_core::diagnostics::PwProbeReport,
    }
    write_json(
        &ctx.path("pw-probe.json"),
        &Report {
            schema: "fracwave/pw-probe/v1",
            report: &report,
        },
    )?;
    finalize(
        ctx,
        "pw-probe",
        cfg,
        vec!["pw-probe.csv".into(), "pw-probe.json".into()],
    )
}

pub fn compare(cfg: &mut Config, ctx: &RunContext) -> Result<()> {
    let names = cfg.take_str_list("compare", "models")?;
    let t = cfg.take_f64("experiment", "t")?;
    let cf_list = cfg.take_f64_list("experiment", "cf_list")?;
    let cf_max = cf_list.iter().cloned().fold(0.0, f64::max);
    let grid = GridConfig {
        taper: ctx.taper,
        ..front_speed_grid(t, cf_max)
    };
    let mut reports: Vec<(String, FrontSpeedReport)> = Vec::new();
    for name in &names {
        let model = cfg.take_model(&format!("model.{name}"))?;
        let report = front_speed_sweep(&model, t, &cf_list, &grid)?;
        reports.push((name.clone(), report));
    }

    let mut csv = CsvWriter::new();
    csv.comment("schema: fracwave/compare/v1")
        .comment(&format!("t: {t}, taper: {}", ctx.taper.label()));
    let mut hdr = vec!["c_f".to_string(), "r0".to_string()];
    for (name, _) in &reports {
        hdr.push(format!("tau_{name}"));
        hdr.push(format!("err_{name}"));
        hdr.push(format!("control_tau_{name}"));
    }
    csv.header(&hdr.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    for (i, &c_f) in cf_list.iter().enumerate() {
        let mut row = vec![c_f, reports[0].1.entries[i].r0];
        for (_, rep) in &reports {
            row.push(rep.entries[i].tau);
            row.push(rep.entries[i].trunc_err);
            row.push(rep.control[i].tau);
        }
        csv.row(&row);
    }
    csv.write(&ctx.path("compare.csv"))?;

    #[derive(Serialize)]
    struct Report {
        schema: &'static str,
        t: f64,
        cf_list: Vec<f64>,
        taper: String,
        models: BTreeMap<String, FrontSpeedReport>,
    }
    write_json(
        &ctx.path("compare.json"),
        &Report {
            schema: "fracwave/compare/v1",
            t,
            cf_list,
            taper: ctx.taper.label(),
            models: reports.into_iter().collect(),
        },
    )?;
    finalize(
        ctx,
        "compare",
        cfg,
        vec!["compare.csv".into(), "compare.json".into()],
    )
}
