use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaussfid::error::Result;
use gaussfid::io::{channel_json, read_channel, read_probes, sweep_json, write_probes, write_sweep_csv};
use gaussfid::report::{
    ellipse_json, gains_json, offset_json, phase_json, physicality_json, write_key_value_csv, write_table_csv,
};
use gaussfid::{CliError, ExitCode};
use gaussfid_core::fock::{channel_on_qubit_basis, STEP_RANGE};
use gaussfid_core::random::random_physical_channel;
use gaussfid_core::scenarios::{
    amplifier_sweep, heat_bath_curve, linspace, symmetric_contour_grid, time_to_benchmark, time_to_benchmark_newton,
    AMPLIFIER_RANGE, CURVE_POINTS, HEAT_BATH_RANGE, SYMMETRIC_GRID_POINTS, SYMMETRIC_GRID_RANGE,
};
use gaussfid_core::tomography::{reconstruct_channel, simulate_probe_records};
use gaussfid_core::{
    average_qubit_fidelity, check_physical, complex_gains, optimal_phase_rotation, subtract_noise_mean,
    FidelityInputs, GainMatrix, GaussianChannel, NoiseEllipse, Quadratures,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Largest tolerated gap between the closed form and the Fock oracle.
const ORACLE_TOL: f64 = 1e-6;
const MIN_ORACLE_DIM: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "gaussfid", version, about = "Average fidelity of Fock-encoded qubits under Gaussian channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form average qubit fidelity of a channel.
    Fidelity {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Also report the output phase rotation that maximizes the fidelity.
        #[arg(long)]
        optimize_phase: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reconstruct a channel from a probe-record CSV.
    Tomography {
        /// Probe-record CSV
        probes: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Noiseless probe records a channel would produce.
    Probes {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Probe amplitude `re,im`; repeatable. Defaults to 0, 1 and i.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Vec<Complex64>,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter sweeps of the model processes.
    #[command(subcommand)]
    Scenario(Scenario),
    /// Compare the closed form against the truncated Fock-space oracle.
    OracleCheck {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Check this many random physical channels instead (seed from GAUSSFID_SEED).
        #[arg(long, conflicts_with_all = ["channel", "gain"])]
        random: Option<usize>,
        /// Fock-space truncation dimension
        #[arg(long, default_value_t = 40)]
        dim: usize,
        /// Finite-difference step in the coherent amplitude
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Scenario {
    /// Fidelity decay of an oscillator damped into a thermal bath.
    HeatBath {
        /// Mean thermal occupation of the bath
        #[arg(long, default_value_t = 0.0)]
        nbar: f64,
        #[arg(long, default_value_t = HEAT_BATH_RANGE.0)]
        t_min: f64,
        #[arg(long, default_value_t = HEAT_BATH_RANGE.1)]
        t_max: f64,
        #[arg(long, default_value_t = CURVE_POINTS)]
        t_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Symmetric gain and noise over (1 - g, 2 sigma^2 - 1), with the 2/3 contour.
    SymmetricGrid {
        #[arg(long, default_value_t = 1.0 - SYMMETRIC_GRID_RANGE.1)]
        g_min: f64,
        #[arg(long, default_value_t = 1.0 - SYMMETRIC_GRID_RANGE.0)]
        g_max: f64,
        #[arg(long, default_value_t = SYMMETRIC_GRID_POINTS)]
        g_steps: usize,
        #[arg(long, default_value_t = SYMMETRIC_GRID_RANGE.0)]
        excess_min: f64,
        #[arg(long, default_value_t = SYMMETRIC_GRID_RANGE.1)]
        excess_max: f64,
        #[arg(long, default_value_t = SYMMETRIC_GRID_POINTS)]
        excess_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Diagonal gains g0*eps, g0/eps with variances sigma0^2*eps^2, sigma0^2/eps^2.
    AmplifierSweep {
        #[arg(long, default_value_t = 1.0)]
        g0: f64,
        #[arg(long, default_value_t = 0.5)]
        sigma0sq: f64,
        #[arg(long, default_value_t = AMPLIFIER_RANGE.0)]
        eps_min: f64,
        #[arg(long, default_value_t = AMPLIFIER_RANGE.1)]
        eps_max: f64,
        #[arg(long, default_value_t = CURVE_POINTS)]
        eps_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Time at which the heat-bath fidelity reaches the classical benchmark 2/3.
    BenchmarkTime {
        /// Bath occupations, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [0.0])]
        nbar: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct ChannelArgs {
    /// Channel JSON file.
    channel: Option<PathBuf>,
    /// Inline row-major gain matrix `a11,a12,a21,a22`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "channel", requires_all = ["sigma1sq", "sigma2sq"])]
    gain: Option<Vec<f64>>,
    /// Major-axis output variance (inline form).
    #[arg(long, requires = "gain")]
    sigma1sq: Option<f64>,
    /// Minor-axis output variance (inline form).
    #[arg(long, requires = "gain")]
    sigma2sq: Option<f64>,
    /// Major-axis angle (inline form).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta: f64,
    /// Noise mean `x,p` (inline form).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "gain")]
    noise_mean: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format; reports default to JSON, sweeps to CSV
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [re, im] = parts.as_slice() else {
        return Err(format!("expected `re,im`, got `{s}`"));
    };
    let re: f64 = re.trim().parse().map_err(|e| format!("{e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Complex64::new(re, im))
}

impl ChannelArgs {
    fn load(&self) -> Result<GaussianChannel> {
        if let Some(path) = &self.channel {
            return read_channel(path);
        }
        let Some(gain) = &self.gain else {
            return Err(CliError::Input("give a channel file or --gain with --sigma1sq/--sigma2sq".into()));
        };
        let gain: [f64; 4] = gain
            .as_slice()
            .try_into()
            .map_err(|_| CliError::Input("--gain takes four comma-separated numbers".into()))?;
        let (s1, s2) = (self.sigma1sq.unwrap_or(f64::NAN), self.sigma2sq.unwrap_or(f64::NAN));
        let ellipse = NoiseEllipse::new(s1, s2, self.theta)?;
        let mut ch = GaussianChannel::from_output_ellipse(GainMatrix::from_row_major(gain), &ellipse);
        if let Some(m) = &self.noise_mean {
            let [x, p] = m.as_slice() else {
                return Err(CliError::Input("--noise-mean takes two comma-separated numbers".into()));
            };
            ch.noise_mean = Quadratures::new(*x, *p);
        }
        Ok(ch)
    }
}

impl OutputArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, bytes: &[u8]) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, bytes)?,
            None => io::stdout().write_all(bytes)?,
        }
        Ok(())
    }

    /// Object as pretty JSON or `key,value` CSV.
    fn emit_value(&self, value: &Value, default: Format) -> Result<()> {
        let mut buf = Vec::new();
        match self.format_or(default) {
            Format::Json => {
                serde_json::to_writer_pretty(&mut buf, value)?;
                buf.push(b'\n');
            }
            Format::Csv => write_key_value_csv(value, &mut buf)?,
        }
        self.emit(&buf)
    }

    /// Array of flat rows as JSON or a CSV table.
    fn emit_rows(&self, rows: &[Value], default: Format) -> Result<()> {
        let mut buf = Vec::new();
        match self.format_or(default) {
            Format::Json => {
                serde_json::to_writer_pretty(&mut buf, rows)?;
                buf.push(b'\n');
            }
            Format::Csv => write_table_csv(rows, &mut buf)?,
        }
        self.emit(&buf)
    }
}

fn cmd_fidelity(channel: &ChannelArgs, optimize_phase: bool, output: &OutputArgs) -> Result<()> {
    let ch = channel.load()?;
    let centered = subtract_noise_mean(&ch);
    let report = check_physical(&centered.channel);
    let mut value = json!({
        "physicality": physicality_json(&report),
        "noise_mean_offset": offset_json(&centered.offset),
        "complex_gains": gains_json(&complex_gains(&ch.gain)),
    });
    if !report.physical {
        output.emit_value(&value, Format::Json)?;
        return Err(CliError::Unphysical(report));
    }
    let inputs = FidelityInputs::from_channel(&centered.channel)?;
    value["fq"] = json!(average_qubit_fidelity(&inputs)?);
    value["ellipse"] = ellipse_json(&inputs.ellipse);
    if optimize_phase {
        value["phase_optimum"] = phase_json(&optimal_phase_rotation(&inputs)?);
    }
    output.emit_value(&value, Format::Json)
}

fn cmd_tomography(probes: &PathBuf, output: &OutputArgs) -> Result<()> {
    let records = read_probes(probes)?;
    let rec = reconstruct_channel(&records)?;
    output.emit_value(&channel_json(&rec.channel, Some(&rec.report)), Format::Json)
}

fn cmd_probes(channel: &ChannelArgs, alphas: &[Complex64], out: &Option<PathBuf>) -> Result<()> {
    let ch = channel.load()?;
    let defaults = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    let alphas = if alphas.is_empty() { &defaults[..] } else { alphas };
    let mut buf = Vec::new();
    write_probes(&simulate_probe_records(&ch, alphas), &mut buf)?;
    OutputArgs { format: None, out: out.clone() }.emit(&buf)
}

fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || !(lo <= hi) {
        return Err(CliError::Input(format!("bad grid: [{lo}, {hi}] with {steps} points")));
    }
    Ok(linspace(lo, hi, steps))
}

fn emit_sweep(sweep: &gaussfid_core::scenarios::SweepResult, output: &OutputArgs) -> Result<()> {
    let mut buf = Vec::new();
    match output.format_or(Format::Csv) {
        Format::Csv => {
            write_sweep_csv(sweep, &mut buf)?;
            for (k, v) in &sweep.metadata {
                eprintln!("{k} = {v}");
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &sweep_json(sweep))?;
            buf.push(b'\n');
        }
    }
    output.emit(&buf)
}

fn cmd_scenario(s: &Scenario) -> Result<()> {
    match s {
        Scenario::HeatBath { nbar, t_min, t_max, t_steps, output } => {
            emit_sweep(&heat_bath_curve(*nbar, &grid(*t_min, *t_max, *t_steps)?)?, output)
        }
        Scenario::SymmetricGrid { g_min, g_max, g_steps, excess_min, excess_max, excess_steps, output } => {
            let xs = grid(1.0 - g_max, 1.0 - g_min, *g_steps)?;
            let ys = grid(*excess_min, *excess_max, *excess_steps)?;
            emit_sweep(&symmetric_contour_grid(&xs, &ys)?, output)
        }
        Scenario::AmplifierSweep { g0, sigma0sq, eps_min, eps_max, eps_steps, output } => {
            emit_sweep(&amplifier_sweep(*g0, *sigma0sq, &grid(*eps_min, *eps_max, *eps_steps)?)?, output)
        }
        Scenario::BenchmarkTime { nbar, output } => {
            let rows = nbar
                .iter()
                .map(|&n| {
                    let b = time_to_benchmark(n)?;
                    let newton = time_to_benchmark_newton(n)?;
                    Ok(json!({
                        "nbar": n,
                        "gamma_t": b.gamma_t,
                        "coherence_fraction": b.coherence_fraction,
                        "gamma_t_newton": newton.gamma_t,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            output.emit_rows(&rows, Format::Csv)
        }
    }
}

fn oracle_seed() -> Result<u64> {
    match env::var("GAUSSFID_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Input(format!("GAUSSFID_SEED must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn cmd_oracle_check(channel: &ChannelArgs, random: Option<usize>, dim: usize, h: f64, output: &OutputArgs) -> Result<()> {
    if dim < MIN_ORACLE_DIM {
        return Err(CliError::Input(format!("--dim must be at least {MIN_ORACLE_DIM}")));
    }
    if !(STEP_RANGE.0..=STEP_RANGE.1).contains(&h) {
        return Err(CliError::Input(format!("--h must lie in [{}, {}]", STEP_RANGE.0, STEP_RANGE.1)));
    }
    let channels = match random {
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(oracle_seed()?);
            (0..n).map(|_| random_physical_channel(&mut rng)).collect()
        }
        None => vec![channel.load()?],
    };
    let mut rows = Vec::with_capacity(channels.len());
    let mut failures = 0;
    for (index, ch) in channels.iter().enumerate() {
        let centered = subtract_noise_mean(ch).channel;
        let report = check_physical(&centered);
        if !report.physical {
            return Err(CliError::Unphysical(report));
        }
        let analytic = average_qubit_fidelity(&FidelityInputs::from_channel(&centered)?)?;
        let map = channel_on_qubit_basis(&centered, dim, h)?;
        let oracle = map.average_fidelity();
        let diff = (analytic - oracle).abs();
        let pass = diff <= ORACLE_TOL;
        failures += usize::from(!pass);
        rows.push(json!({
            "index": index,
            "analytic": analytic,
            "oracle": oracle,
            "abs_diff": diff,
            "richardson_discrepancy": map.richardson_discrepancy,
            "imag_residual": map.average_fidelity_complex().im,
            "pass": pass,
        }));
    }
    output.emit_rows(&rows, Format::Json)?;
    if failures > 0 {
        return Err(CliError::OracleMismatch { failures, total: rows.len() });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Fidelity { channel, optimize_phase, output } => cmd_fidelity(channel, *optimize_phase, output),
        Command::Tomography { probes, output } => cmd_tomography(probes, output),
        Command::Probes { channel, alpha, out } => cmd_probes(channel, alpha, out),
        Command::Scenario(s) => cmd_scenario(s),
        Command::OracleCheck { channel, random, dim, h, output } => cmd_oracle_check(channel, *random, *dim, *h, output),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        if let Some(report) = e.report() {
            eprintln!("{}", serde_json::to_string_pretty(&physicality_json(report)).unwrap_or_default());
        }
        let code = e.exit_code();
        process::exit(code as i32);
    }
    process::exit(ExitCode::Ok as i32);
}
