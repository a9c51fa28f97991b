use std::fs;
use std::path::Path;

use confign_core::certify::{
    certify_alpha, run_certification_with_tail, u_seq, CertificationReport, GridConfig,
    EXTENDED_RANGE,
};
use confign_core::configcore::{
    balanced_family, caterpillar, cherry_count, config_profile, maximally_balanced,
    root_config_count,
};
use confign_core::distribution::{figure_grid, pmf_with_cap};
use confign_core::momentseries::{
    growth_report, k_e, mean_seq, second_moment_seq, uniform_mean_base, uniform_variance_base,
    variance_seq, wagner_constants, RationalSeq, GROWTH_PRECISION,
};
use confign_core::numeric::format_rational;
use confign_core::sampler::empirical_report_with_threads;
use confign_core::treekit::{
    labeled_history_count, labelings_and_orientations, parse_newick, render_newick,
    yule_probability, ShapeCatalog,
};
use confign_core::{Error, LabeledTopology, Model};
use rug::Float;
use serde::Serialize;
use serde_json::json;

use crate::figure::{self, Moment};
use crate::render::{csv_table, float, json};
use crate::{
    Cli, CliError, CliResult, Command, Family, FigureId, Format, Outcome, SeqArg,
    EXIT_CERTIFICATION, EXIT_OK,
};

/// Largest tree `count` accepts.
pub const COUNT_CAP: usize = 4096;

pub(crate) fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let format = cli.format;
    let csv = |f: Option<Format>| f.unwrap_or(Format::Csv) == Format::Csv;
    let text = match &cli.command {
        Command::Count {
            newick,
            family,
            n,
            cap,
        } => count(newick.as_deref(), *family, *n, *cap, csv(format))?,
        Command::Shapes { n, cap } => shapes(*n, *cap, csv(format))?,
        Command::Pmf { n, model, cap } => {
            let p = pmf_with_cap(*n, (*model).into(), *cap)?;
            if csv(format) {
                let rows = p.rows().into_iter().map(|(r, a, b)| vec![r, a, b]);
                csv_table(&[], &["rho", "p_num", "p_den"], rows)?
            } else {
                json(&p)?
            }
        }
        Command::Moments { model, max_n, seq } => {
            let s = moment_seq((*model).into(), *seq, *max_n)?;
            if csv(format) {
                let rows = s.rows().into_iter().map(|(n, a, b)| vec![n.to_string(), a, b]);
                csv_table(&[], &["n", "numerator", "denominator"], rows)?
            } else {
                json(&s)?
            }
        }
        Command::Growth {
            model,
            max_n,
            seq,
            base,
        } => growth(
            (*model).into(),
            *max_n,
            *seq,
            *base,
            cli.precision_bits,
            csv(format),
        )?,
        Command::Wagner { mu_cap, sigma_cap } => {
            let w = wagner_constants(*mu_cap, *sigma_cap)?;
            if csv(format) {
                let row = vec![
                    w.mu_cap.to_string(),
                    w.sigma_cap.to_string(),
                    float(w.mu),
                    float(w.sigma2),
                ];
                csv_table(&[], &["mu_cap", "sigma_cap", "mu", "sigma2"], [row])?
            } else {
                json(&w)?
            }
        }
        Command::Figure { id, n } => figure_data(*id, *n, csv(format))?,
        Command::Certify {
            grid_scale,
            k,
            out_dir,
            threads,
        } => {
            return certify(
                *grid_scale,
                *k,
                out_dir.as_deref(),
                *threads,
                cli.precision_bits,
                format == Some(Format::Json),
            )
        }
        Command::Sample {
            n,
            model,
            trials,
            seed,
            threads,
        } => {
            let report = empirical_report_with_threads(
                *n,
                (*model).into(),
                *trials,
                &figure_grid(),
                *seed,
                *threads,
            )?;
            if format == Some(Format::Csv) {
                let comments = vec![
                    format!("model={} n={} trials={} seed={}", report.model, report.n, report.trials, report.seed),
                    format!("rng={}", report.rng),
                    format!("mean_c_r={} var_c_r={}", float(report.mean_c_r), float(report.var_c_r)),
                    format!(
                        "mean_log_c_r={} var_log_c_r={}",
                        float(report.mean_log_c_r),
                        float(report.var_log_c_r)
                    ),
                    format!("ks={} dkw_epsilon={}", float(report.ks_statistic), float(report.dkw_epsilon)),
                ];
                let rows = report
                    .cdf_rows()
                    .into_iter()
                    .map(|(y, c, p)| vec![float(y), float(c), float(p)]);
                csv_table(&comments, &["y", "cdf", "normal"], rows)?
            } else {
                json(&report)?
            }
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct CountSummary {
    newick: String,
    n: usize,
    c_r: String,
    c: String,
    internal: Vec<String>,
    cherries: usize,
    lab: String,
    or: String,
    histories: String,
    yule_probability: String,
}

fn count(
    newick: Option<&str>,
    family: Option<Family>,
    n: Option<usize>,
    cap: usize,
    csv: bool,
) -> CliResult<String> {
    let tree = match (newick, family, n) {
        (Some(text), _, _) => parse_newick(text)?,
        (None, Some(family), Some(n)) => {
            if n == 0 {
                return Err(Error::InvalidArgument("a tree has at least one leaf".into()).into());
            }
            check_cap("count", n, cap)?;
            let shape = match family {
                Family::Caterpillar => caterpillar(n),
                Family::Balanced => maximally_balanced(n),
                Family::Maxfamily => balanced_family(n),
            };
            LabeledTopology::representative(&shape)
        }
        _ => {
            return Err(CliError::Usage(
                "count needs --newick or --family with --n".into(),
            ))
        }
    };
    check_cap("count", tree.size(), cap)?;
    let shape = tree.shape();
    let profile = config_profile(shape);
    let (lab, or) = labelings_and_orientations(shape);
    let summary = CountSummary {
        newick: render_newick(&tree),
        n: tree.size(),
        c_r: root_config_count(shape).to_string(),
        c: profile.total.to_string(),
        internal: profile.internal.iter().map(|c| c.to_string()).collect(),
        cherries: cherry_count(shape),
        lab: lab.to_string(),
        or: or.to_string(),
        histories: labeled_history_count(shape).to_string(),
        yule_probability: format_rational(&yule_probability(shape)),
    };
    if !csv {
        return json(&summary);
    }
    let p = yule_probability(shape);
    let row = vec![
        summary.newick,
        summary.n.to_string(),
        summary.c_r,
        summary.c,
        summary.cherries.to_string(),
        summary.lab,
        summary.or,
        summary.histories,
        p.numer().to_string(),
        p.denom().to_string(),
    ];
    let header = [
        "newick", "n", "c_r", "c", "cherries", "lab", "or", "histories", "yule_p_num", "yule_p_den",
    ];
    csv_table(&[], &header, [row])
}

fn check_cap(what: &'static str, requested: usize, cap: usize) -> CliResult<()> {
    if requested > cap {
        return Err(Error::CapExceeded {
            what,
            requested,
            cap,
        }
        .into());
    }
    Ok(())
}

fn shapes(n: usize, cap: usize, csv: bool) -> CliResult<String> {
    let catalog = ShapeCatalog::with_cap(n, cap)?;
    let rows: Vec<Vec<String>> = catalog
        .shapes(n)
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let (lab, or) = labelings_and_orientations(s);
            vec![
                i.to_string(),
                s.key(),
                root_config_count(s).to_string(),
                cherry_count(s).to_string(),
                lab.to_string(),
                or.to_string(),
                labeled_history_count(s).to_string(),
            ]
        })
        .collect();
    let header = ["index", "shape", "c_r", "cherries", "lab", "or", "histories"];
    if csv {
        return csv_table(&[], &header, rows);
    }
    let objects: Vec<serde_json::Value> = rows
        .into_iter()
        .map(|row| {
            let map: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(row)
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect();
            serde_json::Value::Object(map)
        })
        .collect();
    json(&json!({ "n": n, "shapes": objects }))
}

fn moment_seq(model: Model, seq: SeqArg, max_n: usize) -> CliResult<RationalSeq> {
    Ok(match seq {
        SeqArg::E => mean_seq(model, max_n)?,
        SeqArg::S => second_moment_seq(model, max_n)?,
        SeqArg::Var => variance_seq(model, max_n)?,
        SeqArg::U => {
            if model != Model::YuleHarding {
                return Err(CliError::Usage("the u sequence is defined for --model yule only".into()));
            }
            u_seq(max_n)?
        }
    })
}

fn growth(
    model: Model,
    max_n: usize,
    seq: SeqArg,
    base: Option<f64>,
    precision: Option<u32>,
    csv: bool,
) -> CliResult<String> {
    let prec = precision.unwrap_or(GROWTH_PRECISION);
    let base = match (base, model, seq) {
        (_, _, SeqArg::U) => {
            return Err(CliError::Usage("growth applies to e, s and var".into()));
        }
        (Some(b), _, _) => Float::with_val(prec, b),
        (None, Model::YuleHarding, SeqArg::E) => k_e(prec),
        (None, Model::YuleHarding, _) => {
            let root = certify_alpha(&u_seq(EXTENDED_RANGE)?)?;
            Float::with_val(prec, Float::parse(&root.k_v).expect("k_v is a decimal"))
        }
        (None, Model::Uniform, SeqArg::E) => uniform_mean_base(prec),
        (None, Model::Uniform, _) => uniform_variance_base(prec),
    };
    let report = growth_report(&moment_seq(model, seq, max_n)?, &base)?;
    if !csv {
        return json(&report);
    }
    let comments = vec![
        format!("sequence={} base={}", report.name, float(report.base)),
        format!(
            "last_ratio={} mid_ratio={} relative_drift={} successive_quotient={}",
            float(report.last_ratio),
            float(report.mid_ratio),
            float(report.relative_drift),
            float(report.successive_quotient)
        ),
    ];
    let rows = report
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), float(r.ratio)]);
    csv_table(&comments, &["n", "ratio"], rows)
}

fn figure_data(id: FigureId, n: usize, csv: bool) -> CliResult<String> {
    match id {
        FigureId::Fig4 | FigureId::Fig5 => {
            let model = if id == FigureId::Fig4 {
                Model::Uniform
            } else {
                Model::YuleHarding
            };
            let fig = figure::cdf_figure(model, n)?;
            let normal = figure::normal_column(&fig.rows);
            if !csv {
                let rows: Vec<_> = fig
                    .rows
                    .iter()
                    .zip(&normal)
                    .map(|(r, phi)| {
                        json!({ "y": r.y, "cdf": r.cdf, "normal": phi, "probability": format_rational(&r.probability) })
                    })
                    .collect();
                return json(&json!({
                    "model": model,
                    "n": n,
                    "max_normal_deviation": fig.max_normal_deviation(),
                    "rows": rows,
                }));
            }
            let comments = vec![
                format!("model={model} n={n}"),
                format!("max_normal_deviation={}", float(fig.max_normal_deviation())),
            ];
            let rows = fig.rows.iter().zip(&normal).map(|(r, phi)| {
                vec![
                    float(r.y),
                    float(r.cdf),
                    float(*phi),
                    r.probability.numer().to_string(),
                    r.probability.denom().to_string(),
                ]
            });
            csv_table(&comments, &["y", "cdf", "normal", "cdf_num", "cdf_den"], rows)
        }
        FigureId::Fig6 | FigureId::Fig7 => {
            let moment = if id == FigureId::Fig6 {
                Moment::Mean
            } else {
                Moment::Variance
            };
            let fig = figure::series_figure(moment)?;
            let quantity = match moment {
                Moment::Mean => "mean",
                Moment::Variance => "variance",
            };
            if !csv {
                let rows: Vec<_> = fig
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "uniform": format_rational(&r.uniform),
                            "yule": format_rational(&r.yule),
                        })
                    })
                    .collect();
                return json(&json!({ "quantity": quantity, "pearson": fig.pearson, "rows": rows }));
            }
            let comments = vec![
                format!("quantity={quantity}"),
                format!("pearson={}", float(fig.pearson)),
            ];
            let rows = fig.rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    float(r.uniform.to_f64()),
                    float(r.yule.to_f64()),
                    r.uniform.numer().to_string(),
                    r.uniform.denom().to_string(),
                    r.yule.numer().to_string(),
                    r.yule.denom().to_string(),
                ]
            });
            let header = ["n", "uniform", "yh", "uniform_num", "uniform_den", "yh_num", "yh_den"];
            csv_table(&comments, &header, rows)
        }
        FigureId::Fig8 => {
            let census = figure::census(figure::CENSUS_N)?;
            let mean = census.mean_c_r();
            if !csv {
                let rows: Vec<_> = census
                    .rows
                    .iter()
                    .map(|r| {
                        json!({ "shape": r.shape, "c_r": r.c_r.to_string(), "histories": r.histories.to_string() })
                    })
                    .collect();
                return json(&json!({
                    "n": census.n,
                    "shapes": census.rows.len(),
                    "pearson_log": census.pearson_log,
                    "pearson_raw": census.pearson_raw,
                    "mean_c_r": format_rational(&mean),
                    "rows": rows,
                }));
            }
            let comments = vec![
                format!("n={} shapes={}", census.n, census.rows.len()),
                format!("pearson_log={}", float(census.pearson_log)),
                format!("pearson_raw={}", float(census.pearson_raw)),
                format!("mean_c_r={}", float(mean.to_f64())),
            ];
            let rows = census.rows.iter().map(|r| {
                vec![
                    r.shape.clone(),
                    float(confign_core::numeric::ln_integer_f64(&r.histories)),
                    float(confign_core::numeric::ln_integer_f64(&r.c_r)),
                    r.histories.to_string(),
                    r.c_r.to_string(),
                ]
            });
            csv_table(&comments, &["shape", "ln_histories", "ln_c_r", "histories", "c_r"], rows)
        }
    }
}

fn certification_status(report: &CertificationReport) -> &'static str {
    if !report.rouche.polynomial.sign_change_on_half_disk_radius || !report.rouche.polynomial.beta_enclosed {
        "failed"
    } else if report.certified {
        "certified"
    } else if report.grid.reduced_confidence {
        "reduced-confidence"
    } else {
        "failed"
    }
}

fn certify(
    grid_scale: f64,
    k: usize,
    out_dir: Option<&Path>,
    threads: Option<usize>,
    precision: Option<u32>,
    as_json: bool,
) -> CliResult<Outcome> {
    if !(grid_scale > 0.0 && grid_scale <= 1.0) {
        return Err(CliError::Usage("--grid-scale must be in (0, 1]".into()));
    }
    let mut config = GridConfig::scaled(grid_scale);
    if let Some(p) = precision {
        config.precision = p;
    }
    if let Some(t) = threads {
        config.threads = t.max(1);
    }
    let report = run_certification_with_tail(&config, k)?;
    let status = certification_status(&report);
    if let Some(dir) = out_dir {
        write_certificates(dir, &report, status)?;
    }
    let code = if status == "failed" {
        EXIT_CERTIFICATION
    } else {
        EXIT_OK
    };
    if as_json {
        let text = json(&json!({ "status": status, "report": report }))?;
        return Ok(Outcome { text, code });
    }
    let mut lines = Vec::new();
    for b in &report.bounds {
        lines.push(format!(
            "bound {} n={}..{} margin={} at n={}",
            b.lemma,
            b.from,
            b.to,
            float(b.margin_decimal),
            b.margin_index
        ));
    }
    for t in &report.tails {
        lines.push(format!(
            "tail_K{}=10*(9/10)^{}={}",
            t.k,
            t.k + 1,
            float(t.decimal)
        ));
    }
    let g = &report.grid;
    lines.push(format!("grid_precision_bits={}", g.precision_used));
    lines.push(format!("g_min={} at k={}", float(g.g.value), g.g.argmin.0));
    lines.push(format!(
        "s_min={} at (r,theta)=({},{})",
        float(g.s.value),
        g.s.argmin.0,
        g.s.argmin.1
    ));
    lines.push(format!("r_bound={}", float(g.constants.r_bound_decimal)));
    lines.push(format!("rouche={}", report.rouche.holds));
    lines.push(format!("root_lower={}", format_rational(&report.root.lower)));
    lines.push(format!("root_upper={}", format_rational(&report.root.upper)));
    lines.push(format!("alpha={}", report.root.alpha));
    lines.push(format!("k_v={}", report.root.k_v));
    lines.push(format!("status={status}"));
    let mut text = lines.join("\n");
    text.push('\n');
    Ok(Outcome { text, code })
}

fn write_certificates(dir: &Path, report: &CertificationReport, status: &str) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("bounds.json"), json(&report.bounds)?)?;
    fs::write(dir.join("tails.json"), json(&report.tails)?)?;
    fs::write(dir.join("grid.json"), json(&report.grid)?)?;
    fs::write(dir.join("rouche.json"), json(&report.rouche)?)?;
    fs::write(dir.join("root.json"), json(&report.root)?)?;
    fs::write(
        dir.join("certificate.json"),
        json(&json!({ "status": status, "report": report }))?,
    )?;
    Ok(())
}
