#![allow(clippy::result_large_err)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ibig::UBig;
use serde_json::json;

use fillbounds::bounds::{bounds_report, family_fan, layering_plan};
use fillbounds::constants::{
    basic_bounds, basic_gap, constantgap_params, ideal_gap, inflation_size, knotbasic_gap,
    weeks_size, ConstantGapParams, M0Variant,
};
use fillbounds::render::{render_dot, render_svg, RenderSpec};
use fillbounds::{canonical_json, datasets, oracle, Error, ManifoldData, SignedPair, Slope};

/// Slope norms and complexity bounds for even Dehn fillings.
#[derive(Parser)]
#[command(name = "fillbounds", version)]
struct Cli {
    /// Print machine-readable JSON with sorted keys.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; the exit status carries the result.
    #[arg(long, global = true, conflicts_with = "json")]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Dataset {
    /// Dataset file, or the name of a bundled dataset such as `pretzel`.
    file: String,
}

#[derive(Subcommand)]
enum Command {
    /// Slope norm of an even slope.
    Norm {
        #[command(flatten)]
        data: Dataset,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Lower and upper complexity bounds for a filling.
    Bounds {
        #[command(flatten)]
        data: Dataset,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Bounds for the fillings `alpha + 2k beta`, `kmin <= k <= kmax`.
    Family {
        #[command(flatten)]
        data: Dataset,
        /// Even seed, as a signed pair `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: SignedPair,
        /// Neighbour of the seed, as a signed pair; its sign matters.
        #[arg(long, allow_hyphen_values = true)]
        beta: SignedPair,
        #[arg(long, default_value_t = 0)]
        kmin: u64,
        #[arg(long)]
        kmax: u64,
    },
    /// Layering sequence from the base triangle and the final fold.
    Path {
        #[command(flatten)]
        data: Dataset,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Explicit constants of the gap theorems.
    Constants {
        #[arg(long)]
        theorem: Theorem,
        /// Tetrahedra for `basic` and `ideal`, crossings otherwise.
        #[arg(long)]
        n: u64,
        /// Filling index; any size for `constantgap`.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Which value of m0 to use for `constantgap`.
        #[arg(long, value_enum, default_value_t = Variant::Proof)]
        variant: Variant,
    },
    /// Draw the Farey region around the base triangle.
    Render {
        #[command(flatten)]
        data: Dataset,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the library against brute-force enumeration of the dual tree.
    OracleCheck {
        #[command(flatten)]
        data: Dataset,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Load a dataset, resolve slopes from patterns and list violations.
    Validate {
        #[command(flatten)]
        data: Dataset,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Basic,
    Ideal,
    Knotbasic,
    Constantgap,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Statement,
    Proof,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

/// A failure reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Usage(message.into()).into()
}

/// Reads a dataset file, falling back to the bundled dataset of that name.
fn load(arg: &str) -> anyhow::Result<ManifoldData> {
    let path = Path::new(arg);
    if path.exists() {
        return ManifoldData::load(path).with_context(|| format!("loading {arg}"));
    }
    let stem = path
        .file_name()
        .and_then(|s| s.to_str())
        .map_or(arg, |s| s.strip_suffix(".json").unwrap_or(s));
    datasets::by_name(stem).map_err(|e| match e {
        Error::UnknownDataset(_) => {
            anyhow::anyhow!("{arg}: no such file and no bundled dataset of that name")
        }
        other => other.into(),
    })
}

struct Output {
    json: bool,
    quiet: bool,
}

impl Output {
    fn emit<T: serde::Serialize>(
        &self,
        value: &T,
        human: impl FnOnce() -> String,
    ) -> anyhow::Result<()> {
        if self.quiet {
            return Ok(());
        }
        if self.json {
            print!("{}", canonical_json(value)?);
        } else {
            print!("{}", human());
        }
        Ok(())
    }
}

fn parse_k<T: std::str::FromStr>(k: &Option<String>) -> anyhow::Result<Option<T>> {
    k.as_deref()
        .map(|text| {
            text.parse::<T>().map_err(|_| {
                usage(format!(
                    "invalid value {text:?} for --k: expected a nonnegative integer"
                ))
            })
        })
        .transpose()
}

fn digits(n: &UBig) -> String {
    let text = n.to_string();
    if text.len() <= 24 {
        text
    } else {
        format!(
            "{}...{} ({} digits)",
            &text[..8],
            &text[text.len() - 8..],
            text.len()
        )
    }
}

fn constant_gap_text(p: &ConstantGapParams, k: Option<&UBig>) -> anyhow::Result<String> {
    let mut out = format!(
        "crossings {}\nm0 {} (statement {}, proof {})\nn0 = m0 2^(7 m0 + 2) = {}\ngap m0 + 2 n0 - 1 = {}\n",
        p.n,
        p.m0,
        p.m0_statement,
        p.m0_proof,
        digits(&p.n0),
        digits(&p.gap)
    );
    if let Some(k) = k {
        let (lo, hi) = p.bounds(k)?;
        out.push_str(&format!(
            "k = {}: {} <= c <= {}\n",
            digits(k),
            digits(&lo),
            digits(&hi)
        ));
    }
    Ok(out)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let out = Output {
        json: cli.json,
        quiet: cli.quiet,
    };
    match cli.command {
        Command::Norm { data, slope } => {
            let m = load(&data.file)?;
            let norm = m.slope_norm(&slope)?;
            let witness = &m.surfaces[norm.witness];
            out.emit(&norm, || {
                let dual = norm
                    .dual_norm
                    .map_or_else(|| "undefined".to_string(), |d| d.to_string());
                format!(
                    "||{}|| = {}   witness: surface {} (slope {}, euler {})   dual norm {}\n",
                    norm.slope,
                    norm.norm,
                    norm.witness,
                    witness.slope.as_ref().expect("witnesses carry slopes"),
                    witness.euler,
                    dual
                )
            })
        }
        Command::Bounds { data, slope } => {
            let m = load(&data.file)?;
            let report = bounds_report(&m, &slope)?;
            out.emit(&report, || {
                let mut text = format!("{report}\n");
                if report.caveat {
                    text.push_str("lower bound assumes M(slope) is not a balanced lens space\n");
                }
                text
            })
        }
        Command::Family {
            data,
            alpha,
            beta,
            kmin,
            kmax,
        } => {
            if kmin > kmax {
                return Err(usage(format!("--kmin {kmin} exceeds --kmax {kmax}")));
            }
            let m = load(&data.file)?;
            let report = family_fan(&m, &alpha, &beta, kmin..=kmax)?;
            out.emit(&report, || report.to_string())
        }
        Command::Path { data, slope } => {
            let m = load(&data.file)?;
            let plan = layering_plan(&m, &slope)?;
            out.emit(&plan, || {
                let mut text = String::new();
                for (i, step) in plan.steps.iter().enumerate() {
                    text.push_str(&format!(
                        "{:>3}  {} -> {}   layer over {}\n",
                        i + 1,
                        step.from,
                        step.to,
                        step.layered_edge
                    ));
                }
                text.push_str(&format!(
                    "fold {} along its even edge: M({}) with at most {} tetrahedra\n",
                    plan.fold_triangle, plan.filled_slope, plan.tetrahedra
                ));
                text
            })
        }
        Command::Constants {
            theorem,
            n,
            k,
            variant,
        } => match theorem {
            Theorem::Basic => {
                let k: u64 = parse_k(&k)?.unwrap_or(0);
                let (lower, upper) = basic_bounds(n, k);
                let value = json!({"theorem": "basic", "n": n, "k": k, "lower": lower, "upper": upper, "gap": basic_gap(n)});
                out.emit(&value, || {
                    format!(
                        "n = {n}, k = {k}: {lower} <= c <= {upper}   gap {}\n",
                        basic_gap(n)
                    )
                })
            }
            Theorem::Ideal | Theorem::Knotbasic => {
                let k: u64 = parse_k(&k)?.unwrap_or(0);
                let (name, formula, size) = match theorem {
                    Theorem::Ideal => ("ideal", ideal_gap(n), inflation_size(n)),
                    _ => ("knotbasic", knotbasic_gap(n), inflation_size(weeks_size(n))),
                };
                let value = json!({
                    "theorem": name,
                    "n": n,
                    "k": k,
                    "size": size,
                    "gap": formula,
                    "lower": 2 * k,
                    "upper": 2 * k + formula.exact,
                });
                out.emit(&value, || {
                    format!(
                        "n = {n}, k = {k}: {} <= c <= {}   gap {} (stated {})   via {size} tetrahedra\n",
                        2 * k,
                        2 * k + formula.exact,
                        formula.exact,
                        formula.stated
                    )
                })
            }
            Theorem::Constantgap => {
                let variant = match variant {
                    Variant::Statement => M0Variant::Statement,
                    Variant::Proof => M0Variant::Proof,
                };
                let params = constantgap_params(n, variant)?;
                let k: Option<UBig> = parse_k(&k)?;
                let bounds = k.as_ref().map(|k| params.bounds(k)).transpose()?;
                let text = constant_gap_text(&params, k.as_ref())?;
                let value = json!({
                    "theorem": "constantgap",
                    "params": params,
                    "k": k.as_ref().map(|k| k.to_string()),
                    "lower": bounds.as_ref().map(|b| b.0.to_string()),
                    "upper": bounds.as_ref().map(|b| b.1.to_string()),
                });
                out.emit(&value, || text)
            }
        },
        Command::Render {
            data,
            depth,
            format,
            out: path,
        } => {
            let m = load(&data.file)?;
            let spec = RenderSpec::new(&m, depth)?;
            let figure = match format {
                Format::Dot => render_dot(&spec),
                Format::Svg => render_svg(&spec),
            };
            match path {
                Some(path) => {
                    std::fs::write(&path, figure)
                        .with_context(|| format!("writing {}", path.display()))?;
                    if !out.quiet && !out.json {
                        eprintln!(
                            "wrote {} triangles to {}",
                            spec.triangles.len(),
                            path.display()
                        );
                    }
                }
                None if !out.quiet => print!("{figure}"),
                None => {}
            }
            Ok(())
        }
        Command::OracleCheck { data, depth } => {
            let m = load(&data.file)?;
            let report = oracle::check(&m, depth)?;
            out.emit(&report, || {
                let mut text = format!(
                    "depth {}: {} triangles, {} distance pairs, {} fan queries, {} even pairs, {} mismatches\n",
                    report.depth,
                    report.triangles,
                    report.distance_pairs,
                    report.fan_queries,
                    report.even_pairs,
                    report.mismatch_count
                );
                for m in &report.mismatches {
                    text.push_str(&format!("  {m}\n"));
                }
                text
            })?;
            if !report.passed() {
                bail!("{} disagreements with the oracle", report.mismatch_count);
            }
            Ok(())
        }
        Command::Validate { data } => {
            let m = load(&data.file)?;
            out.emit(&m, || {
                format!(
                    "{}: {} tetrahedra, {} surface records, no violations\n",
                    m.name,
                    m.size,
                    m.surfaces.len()
                )
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.downcast_ref::<Usage>().is_some() {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
