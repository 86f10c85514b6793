//! `halfhex`: sample, verify, render and measure half-hexagon states.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! Relative output paths are resolved against `HALFHEX_OUT_DIR` when set.

mod verify;

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use halfhex::io::svg::{render, View};
use halfhex::io::{write_density_csv, Model, SampleFile};
use halfhex::limit_shape::{arctic_summary, empirical_density, frozen_boundary, DEFAULT_FROZEN_THRESHOLD};

use verify::Suite;

const OUT_DIR_ENV: &str = "HALFHEX_OUT_DIR";

#[derive(Parser)]
#[command(name = "halfhex", version, about = "Uniform half-hexagon states and their verifiers")]
struct Cli {
    /// Directory for relative output paths.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw uniform samples and write them as JSON or CSV.
    Sample {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModelArg::Tableau)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_order: usize,
        /// First seed of sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeds or samples for sampled checks.
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render one sample of a sample file as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        view: ViewArg,
        #[arg(long)]
        out: PathBuf,
        /// Which sample of the file to draw.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Empirical density, frozen boundary and curve fits.
    Limitshape {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FROZEN_THRESHOLD)]
        threshold: f64,
        /// Directory for density.csv, boundary.csv and fit.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 when the quadratic sup-residual exceeds this value.
        #[arg(long)]
        max_residual: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Tableau,
    Particles,
    Matching,
    Lozenges,
    Paths,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Tableau => Model::Tableau,
            ModelArg::Particles => Model::Particles,
            ModelArg::Matching => Model::Matching,
            ModelArg::Lozenges => Model::Lozenges,
            ModelArg::Paths => Model::Paths,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Paths,
    Boxes,
    Matching,
    Lozenges,
    Particles,
    HalfDiamond,
}

impl From<ViewArg> for View {
    fn from(v: ViewArg) -> View {
        match v {
            ViewArg::Paths => View::Paths,
            ViewArg::Boxes => View::Boxes,
            ViewArg::Matching => View::Matching,
            ViewArg::Lozenges => View::Lozenges,
            ViewArg::Particles => View::Particles,
            ViewArg::HalfDiamond => View::HalfDiamond,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Outcome {
    Pass,
    Fail,
}

fn resolve(dir: &Option<PathBuf>, p: &Path) -> PathBuf {
    match dir {
        Some(d) if p.is_relative() => d.join(p),
        _ => p.to_path_buf(),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn read_sample_file(path: &Path) -> anyhow::Result<SampleFile> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let f = if path.extension().is_some_and(|e| e == "csv") {
        SampleFile::read_csv(BufReader::new(file))?
    } else {
        SampleFile::from_json(&io::read_to_string(file)?)?
    };
    Ok(f)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let dir = &cli.out_dir;
    match cli.command {
        Command::Sample {
            order,
            count,
            seed,
            model,
            format,
            out,
        } => {
            let file = SampleFile::generate(model.into(), order, count, seed)?;
            let bytes = match format {
                Format::Json => file.to_json()?.into_bytes(),
                Format::Csv => {
                    let mut buf = Vec::new();
                    file.write_csv(&mut buf)?;
                    buf
                }
            };
            match out {
                Some(p) => write_file(&resolve(dir, &p), &bytes)?,
                None => io::stdout().lock().write_all(&bytes)?,
            }
            Ok(Outcome::Pass)
        }
        Command::Verify {
            suite,
            max_order,
            seed,
            seeds,
            json,
            report,
        } => {
            if max_order > suite.max_order() {
                bail!(
                    "suite {} supports --max-order up to {}",
                    suite.name(),
                    suite.max_order()
                );
            }
            let r = verify::run(suite, max_order, seed, seeds)?;
            let text = serde_json::to_string_pretty(&r)? + "\n";
            if let Some(p) = report {
                write_file(&resolve(dir, &p), text.as_bytes())?;
            }
            if json {
                print!("{text}");
            } else {
                print!("{}", r.human());
            }
            Ok(if r.passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Render {
            input,
            view,
            out,
            index,
        } => {
            let file = read_sample_file(&input)?;
            let Some(sample) = file.samples.get(index) else {
                bail!(
                    "sample index {index} out of range ({} samples)",
                    file.samples.len()
                );
            };
            let scene = render(view.into(), &sample.decode()?)?;
            write_file(&resolve(dir, &out), scene.to_svg().as_bytes())?;
            Ok(Outcome::Pass)
        }
        Command::Limitshape {
            order,
            samples,
            seed,
            threshold,
            out,
            max_residual,
        } => {
            if order == 0 || samples == 0 {
                bail!("--order and --samples must be positive");
            }
            if !(threshold > 0.0 && threshold < 0.5) {
                bail!("--threshold must lie in (0, 1/2)");
            }
            let d = empirical_density(order, samples, seed);
            let summary = arctic_summary(&d, threshold)?;
            let target = out.map(|p| resolve(dir, &p)).or_else(|| dir.clone());
            if let Some(target) = target {
                let mut density = Vec::new();
                write_density_csv(&mut density, &d)?;
                write_file(&target.join("density.csv"), &density)?;
                let mut boundary = csv::Writer::from_writer(Vec::new());
                for b in frozen_boundary(&d, threshold) {
                    boundary.serialize(b)?;
                }
                write_file(&target.join("boundary.csv"), &boundary.into_inner()?)?;
                let fit = serde_json::json!({ "seed": seed, "summary": summary });
                write_file(&target.join("fit.json"), (serde_json::to_string_pretty(&fit)? + "\n").as_bytes())?;
            }
            let q = &summary.quadratic;
            println!(
                "order {order}, {samples} samples, seed {seed}: {} boundary points",
                summary.boundary_points
            );
            println!(
                "quadratic y = {:.6} + {:.6} x + {:.6} x^2: sup residual {:.6}, rms {:.6}, vertical sup {:.6}",
                q.coefficients[0],
                q.coefficients[1],
                q.coefficients[2],
                q.sup_residual,
                q.rms_residual,
                q.sup_vertical_residual.unwrap_or(f64::NAN)
            );
            println!(
                "conic: discriminant {:.6}, sup residual {:.6}, rms {:.6}",
                summary.conic.discriminant.unwrap_or(f64::NAN),
                summary.conic.sup_residual,
                summary.conic.rms_residual
            );
            println!(
                "distance to y = (sqrt3/2)(1 - x^2): {:.6}",
                summary.parabola_sup_distance
            );
            Ok(match max_residual {
                Some(m) if q.sup_residual > m => Outcome::Fail,
                _ => Outcome::Pass,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
