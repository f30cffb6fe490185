use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use omegay::harness::{self, csv::Table, Evaluator, ExperimentConfig, SpecialFn, SpecialParams, YRule};
use omegay::predictors::{Context, PredictorId};
use omegay::{ComplexValue as C, Error, Result};

#[derive(Parser)]
#[command(name = "omegay", version, about = "Exact counts and asymptotic predictions for ω_y(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact histogram N_k(x, y)
    Count {
        #[arg(long, value_parser = count)]
        x: u64,
        #[arg(long, value_parser = count)]
        y: u64,
        #[arg(long)]
        k_max: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Legendre's Φ(x, y)
    Phi {
        #[arg(long, value_parser = count)]
        x: u64,
        #[arg(long, value_parser = count)]
        y: u64,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact S_z(x, y) next to its asymptotic predictions
    Sum {
        #[arg(long, value_parser = count)]
        x: u64,
        #[arg(long, value_parser = count)]
        y: u64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
        /// Comma-separated S_z predictors (default: all)
        #[arg(long)]
        model: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate w, rho, m or ell on a uniform grid
    Special {
        /// One of w, rho, m, ell
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// r for rho
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate one predictor with its terms
    Predict {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = count)]
        x: u64,
        #[arg(long, value_parser = count)]
        y: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep x and compare predictors with exact counts
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated x values
        #[arg(long)]
        x: Option<String>,
        /// Fixed y
        #[arg(long)]
        y: Option<f64>,
        /// y = x^{1/alpha}
        #[arg(long)]
        alpha: Option<f64>,
        /// y = x/beta
        #[arg(long)]
        beta: Option<f64>,
        /// y = exp(log x/(c loglog x))
        #[arg(long)]
        c: Option<f64>,
        /// K or A..B
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        k_max: Option<u32>,
        /// Comma-separated predictors
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Extract N_k by a discrete Cauchy integral and compare with the sieve
    ContourCheck {
        #[arg(long, value_parser = count)]
        x: u64,
        #[arg(long, value_parser = count)]
        y: u64,
        #[arg(long, default_value_t = 64)]
        points: usize,
        /// Radius; defaults to the k/loglog y policy
        #[arg(long)]
        r: Option<f64>,
        /// Evaluate S_z with this predictor instead of exactly
        #[arg(long)]
        model: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// N_k(x, y) for very small y against the Landau counts N_k(x) and N_{k+1}(x)
    Phenomenon {
        #[arg(long, value_parser = count)]
        x: u64,
        #[arg(long, default_value_t = harness::DEFAULT_PHENOMENON_C)]
        c: f64,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[command(flatten)]
        output: Output,
    },
}

fn count(s: &str) -> std::result::Result<u64, String> {
    harness::parse_count(s).map_err(|e| e.to_string())
}

fn emit(table: &Table, out: Option<&PathBuf>) -> Result<()> {
    let text = table.render();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_svg(svg: Option<&PathBuf>, draw: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = svg {
        std::fs::write(path, draw())?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn predictor(s: &str) -> Result<PredictorId> {
    s.parse()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count { x, y, k_max, output } => {
            emit(&harness::cmd_count(x, y, k_max)?, output.out.as_ref())
        }
        Command::Phi { x, y, cache_dir, output } => {
            let dir = harness::resolve_cache_dir(cache_dir.as_deref());
            emit(&harness::cmd_phi(x, y, &dir)?, output.out.as_ref())
        }
        Command::Sum { x, y, z_re, z_im, model, output } => {
            let models = harness::parse_predictors(model.as_deref().unwrap_or(""))?;
            let ctx = Context::default();
            emit(&harness::cmd_sum(x, y, C::new(z_re, z_im), &models, &ctx)?, output.out.as_ref())
        }
        Command::Special { function, from, to, points, r, z_re, z_im, output } => {
            let f: SpecialFn = function.parse()?;
            let params = SpecialParams { from, to, points, r, z: C::new(z_re, z_im) };
            let dump = harness::cmd_special(f, &params)?;
            emit(&dump.to_table(), output.out.as_ref())?;
            emit_svg(output.svg.as_ref(), || dump.svg())
        }
        Command::Predict { model, x, y, k, z_re, z_im, output } => {
            let ctx = Context::default();
            let t = harness::cmd_predict(predictor(&model)?, x, y, k, C::new(z_re, z_im), &ctx)?;
            emit(&t, output.out.as_ref())
        }
        Command::Compare { config, x, y, alpha, beta, c, k, k_max, model, cache_dir, output } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::load(path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(v) = x {
                cfg.x_list = harness::parse_count_list(&v)?;
            }
            let rules = [y.map(YRule::Fixed), alpha.map(YRule::Power), beta.map(YRule::Ratio), c.map(YRule::Exp)];
            let given: Vec<YRule> = rules.into_iter().flatten().collect();
            match given.as_slice() {
                [] => {}
                [rule] => cfg.y_rule = Some(*rule),
                _ => return Err(Error::Usage("give only one of --y, --alpha, --beta, --c".into())),
            }
            if let Some(v) = k {
                let (a, b) = harness::parse_k_range(&v)?;
                cfg.k_min = a;
                cfg.k_max = b;
            }
            if let Some(v) = k_max {
                cfg.k_max = v;
            }
            if let Some(v) = model {
                cfg.predictors = harness::parse_predictors(&v)?;
            }
            if cache_dir.is_some() {
                cfg.cache_dir = cache_dir;
            }
            if output.out.is_some() {
                cfg.out = output.out;
            }
            if output.svg.is_some() {
                cfg.svg = output.svg;
            }
            let ctx = Context::new(cfg.settings);
            let report = harness::cmd_compare(&cfg, &ctx)?;
            emit(&report.to_table(), cfg.out.as_ref())?;
            emit_svg(cfg.svg.as_ref(), || report.svg("relative error against exact N_k"))
        }
        Command::ContourCheck { x, y, points, r, model, output } => {
            let evaluator = match model {
                Some(m) => Evaluator::Predictor(predictor(&m)?),
                None => Evaluator::Exact,
            };
            let ctx = Context::default();
            let check = harness::cmd_contour_check(x, y, points, r, evaluator, &ctx)?;
            emit(&check.to_table(), output.out.as_ref())?;
            eprintln!(
                "radius = {}, m = {}, max_abs_deviation = {:e}",
                check.radius,
                check.points,
                check.max_abs_deviation()
            );
            Ok(())
        }
        Command::Phenomenon { x, c, k_max, output } => {
            let report = harness::cmd_phenomenon(x, c, k_max)?;
            emit(&report.to_table(), output.out.as_ref())?;
            eprint!("{}", report.summary());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
