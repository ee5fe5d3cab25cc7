use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use perceptual_qos::channel::{gain_samples, sup_distance, MultipathConfig};
use perceptual_qos::montecarlo::RNG_ALGORITHM;
use perceptual_qos::sweep::{
    self, cross_check, format_number, run_scenario, AxisVariable, McSpec, MetricKind, Scenario,
    SweepRow, ValueSpec, WeightSpec,
};
use perceptual_qos::{BaseDistribution, Error, ExponentialGain, Mode, Result};

#[derive(Parser)]
#[command(
    name = "pqos",
    version,
    about = "Prospect-theoretic perceptual link metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    lambda_gain: Option<f64>,
    #[arg(long, global = true)]
    lambda_loss: Option<f64>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Reference point of the metric.
    #[arg(long = "ref", global = true)]
    reference: Option<f64>,
    /// Average channel power gain.
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Outage threshold in bits/s/Hz.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Quadrature evaluation budget.
    #[arg(long, global = true)]
    max_evals: Option<usize>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Perceived value at each quantity X.
    Value { x: Vec<f64> },
    /// Perceived probability at each P.
    Weight { p: Vec<f64> },
    /// Perceptual CDF of the channel gain at each S.
    Pcdf { s: Vec<f64> },
    /// Perceptual PDF of the channel gain at each S.
    Ppdf { s: Vec<f64> },
    /// Perceptual utility of SNR.
    PuSnr(PowerArgs),
    /// Perceptual utility of transmission rate.
    PuRate(PowerArgs),
    /// Perceptual outage probability.
    Pop(PowerArgs),
    /// Run a scenario file or built-in preset (fig2 .. fig8).
    Sweep { scenario: String },
    /// Compare quadrature against the Monte Carlo oracle over a scenario.
    CrossCheck { scenario: String },
    /// Sum-of-paths channel simulation against the exponential gain law.
    SimulateChannel {
        #[arg(long, default_value_t = 64)]
        k_paths: usize,
    },
    /// Print a built-in preset as a scenario file.
    ShowPreset { name: String },
}

#[derive(Args)]
struct PowerArgs {
    /// Linear Pt/N0 values, strictly increasing.
    #[arg(long, num_args = 1.., default_values_t = [10.0])]
    ptn0: Vec<f64>,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    match s {
        "strict" => Ok(Mode::Strict),
        "permissive" => Ok(Mode::Permissive),
        other => Err(format!("unknown mode {other:?} (strict|permissive)")),
    }
}

impl Opts {
    fn apply(&self, s: &mut Scenario) {
        let vp: &mut ValueSpec = &mut s.value_params;
        let wp: &mut WeightSpec = &mut s.weight_params;
        if let Some(v) = self.alpha {
            vp.alpha = v;
        }
        if let Some(v) = self.lambda_gain {
            vp.lambda_gain = v;
        }
        if let Some(v) = self.lambda_loss {
            vp.lambda_loss = v;
        }
        if let Some(v) = self.gamma {
            wp.gamma = v;
        }
        if let Some(v) = self.theta {
            wp.theta = v;
        }
        if let Some(m) = self.mode {
            vp.mode = m;
            wp.mode = m;
        }
        if let Some(v) = self.reference {
            s.reference = v;
        }
        if let Some(v) = self.mu {
            s.mu = v;
        }
        if let Some(v) = self.epsilon {
            s.epsilon = v;
        }
        if let Some(v) = self.tol {
            s.tolerance = v;
        }
        if let Some(v) = self.max_evals {
            s.max_evaluations = v;
        }
        if self.samples.is_some() || self.seed.is_some() {
            let current = s.monte_carlo.unwrap_or(McSpec {
                samples: 1_000_000,
                seed: 1,
            });
            s.monte_carlo = Some(McSpec {
                samples: self.samples.unwrap_or(current.samples),
                seed: self.seed.unwrap_or(current.seed),
            });
        }
    }
}

fn point_scenario(metric: MetricKind, variable: AxisVariable, grid: Vec<f64>) -> Result<Scenario> {
    let text = serde_json::json!({
        "metric": metric,
        "axis": { "variable": variable, "grid": grid },
    });
    Ok(serde_json::from_value(text)?)
}

fn load_scenario(arg: &str) -> Result<Scenario> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    sweep::preset(arg).ok_or_else(|| {
        Error::Io(io::Error::new(
            io::ErrorKind::NotFound,
            format!("{arg}: no such scenario file or preset"),
        ))
    })
}

fn output(opts: &Opts) -> Result<Box<dyn Write>> {
    Ok(match &opts.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep_to(opts: &Opts, s: &Scenario) -> Result<()> {
    let rows = run_scenario(s)?;
    let mut out = output(opts)?;
    sweep::write_sweep_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

fn simulate_channel(opts: &Opts, k_paths: usize) -> Result<()> {
    let mu = opts.mu.unwrap_or(1.0);
    let n = opts.samples.unwrap_or(100_000);
    let cfg = MultipathConfig::new(k_paths, mu.sqrt(), opts.seed.unwrap_or(1))?;
    let gains = gain_samples(&cfg, n);
    let law = ExponentialGain::new(cfg.mean_gain())?;
    let distance = sup_distance(&gains, |g| law.cdf(g));
    let mean = gains.iter().sum::<f64>() / n as f64;
    eprintln!(
        "k_paths={k_paths} samples={n} mean_gain={} sup_distance={} rng={RNG_ALGORITHM}",
        format_number(mean),
        format_number(distance)
    );

    let mut sorted = gains;
    sorted.sort_by(f64::total_cmp);
    let rows: Vec<SweepRow> = (0..=20)
        .map(|i| {
            let g = mu * i as f64 * 0.25;
            let empirical = sorted.partition_point(|&x| x <= g) as f64 / n as f64;
            SweepRow {
                axis: g,
                value: empirical,
                err: (empirical - law.cdf(g)).abs(),
                n_eval: n,
            }
        })
        .collect();
    let mut out = output(opts)?;
    sweep::write_sweep_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let opts = &cli.opts;
    let single = |metric, variable, grid: Vec<f64>| -> Result<bool> {
        let mut s = point_scenario(metric, variable, grid)?;
        opts.apply(&mut s);
        sweep_to(opts, &s)?;
        Ok(true)
    };
    match cli.command {
        Command::Value { x } => single(MetricKind::ValueCurve, AxisVariable::X, x),
        Command::Weight { p } => single(MetricKind::WeightCurve, AxisVariable::P, p),
        Command::Pcdf { s } => single(MetricKind::Pcdf, AxisVariable::S, s),
        Command::Ppdf { s } => single(MetricKind::Ppdf, AxisVariable::S, s),
        Command::PuSnr(a) => single(MetricKind::PuSnr, AxisVariable::PtOverN0, a.ptn0),
        Command::PuRate(a) => single(MetricKind::PuRate, AxisVariable::PtOverN0, a.ptn0),
        Command::Pop(a) => single(MetricKind::Pop, AxisVariable::PtOverN0, a.ptn0),
        Command::Sweep { scenario } => {
            let mut s = load_scenario(&scenario)?;
            opts.apply(&mut s);
            sweep_to(opts, &s)?;
            Ok(true)
        }
        Command::CrossCheck { scenario } => {
            let mut s = load_scenario(&scenario)?;
            opts.apply(&mut s);
            let rows = cross_check(&s)?;
            eprintln!("rng: {RNG_ALGORITHM}");
            let mut out = output(opts)?;
            sweep::write_cross_check_csv(&mut out, &rows)?;
            out.flush()?;
            let failed = rows.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                eprintln!(
                    "{failed} of {} grid points disagree beyond 3 SE",
                    rows.len()
                );
            }
            Ok(failed == 0)
        }
        Command::SimulateChannel { k_paths } => {
            simulate_channel(opts, k_paths)?;
            Ok(true)
        }
        Command::ShowPreset { name } => {
            let s = sweep::preset(&name)
                .ok_or_else(|| Error::Scenario(format!("unknown preset {name:?}")))?;
            let mut out = output(opts)?;
            writeln!(out, "{}", s.to_json())?;
            out.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
