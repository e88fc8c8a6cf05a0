//! Command-line front end.

mod output;
mod verify;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use ftqm::analytics::{
    resources_ia, resources_ib, resources_ii, threshold_curve, CurveProtocol, DeviceNoise,
    ProtocolParams, RadixPlan,
};
use ftqm::channel::{PauliChannel, RateMode};
use ftqm::codes::{
    dual, hamming_distribution, punctured_rm, punctured_rm_distribution, qrm, rm_generator, shortened_rm,
    shortened_rm_distribution,
};
use ftqm::gf2::BinaryMatrix;
use ftqm::protocols::{run_batch, PhaseValue, Protocol};

use output::{csv_writer, num, open_sink, opt_num};
pub use verify::Suite;

/// An argument problem detected after parsing; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Parser)]
#[command(name = "ftqm", version, about = "Fault-tolerant bitwise phase estimation with QRM codes")]
pub struct Cli {
    /// File of `key=value` lines supplying defaults for long options.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print generator and parity-check matrices and weight distributions.
    Codes(CodesArgs),
    /// Threshold against device noise over a grid.
    Threshold(ThresholdArgs),
    /// Interrogation counts for t = 1..T.
    Resources(ResourcesArgs),
    /// Monte Carlo runs of an estimator.
    Simulate(SimulateArgs),
    /// Built-in self-checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CodesArgs {
    #[arg(short, long)]
    pub m: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_parser = parse_curve_protocol)]
    pub protocol: CurveProtocol,
    #[arg(long, value_parser = parse_angle, default_value = "pi/32")]
    pub gamma: f64,
    /// Bit count for Ia.
    #[arg(short = 't', long)]
    pub bits: Option<usize>,
    /// Bit index for Ib, Ib-dev and Ic.
    #[arg(short = 'j', long)]
    pub bit_index: Option<usize>,
    /// Device noise grid `min:max:steps`.
    #[arg(long, value_parser = parse_grid, default_value = "0:0:1")]
    pub grid: Grid,
    /// Let device noise reduce the unencoded survival probability.
    #[arg(long)]
    pub ia_device_coupling: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResourceProtocol {
    Ia,
    Ib,
    Ii,
}

#[derive(Debug, Args)]
pub struct ResourcesArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub protocol: ResourceProtocol,
    #[arg(long, value_parser = parse_angle, default_value = "pi/32")]
    pub gamma: f64,
    /// Largest bit count.
    #[arg(short = 't', long)]
    pub bits: usize,
    #[arg(long, value_parser = parse_channel, default_value = "0")]
    pub noise: PauliChannel,
    /// Fixed confidence parameter; defaults to `1/2^t` per row.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Comma-separated radices (2 or 3) for protocol II; defaults to all 3s.
    #[arg(long)]
    pub radices: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum RateModeArg {
    #[default]
    Upper,
    Exact,
}

impl From<RateModeArg> for RateMode {
    fn from(m: RateModeArg) -> Self {
        match m {
            RateModeArg::Upper => RateMode::UpperBound,
            RateModeArg::Exact => RateMode::ExactMarginal,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_protocol)]
    pub protocol: Protocol,
    /// Phase in `[0, π)`; accepts forms like `0.3pi` or `pi/4`.
    #[arg(long, value_parser = parse_angle)]
    pub phi: f64,
    #[arg(long, value_parser = parse_angle, default_value = "pi/32")]
    pub gamma: f64,
    #[arg(short = 't', long)]
    pub bits: usize,
    #[arg(long, value_parser = parse_channel, default_value = "0")]
    pub noise: PauliChannel,
    #[arg(long)]
    pub device_noise: Option<f64>,
    /// Repetitions per bit; derived from epsilon when absent.
    #[arg(long)]
    pub repetitions: Option<u64>,
    /// Defaults to `1/2^t`.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = RateModeArg::Upper)]
    pub rate_mode: RateModeArg,
    /// Number of independent runs.
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, env = "FTQM_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Trials per Monte Carlo check.
    #[arg(long, default_value_t = 200_000)]
    pub trials: u64,
    #[arg(long, env = "FTQM_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Parses `0.1`, `pi`, `pi/32`, `3pi/4`, `0.3pi` or `0.3*pi`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(['*', ' '], "");
    let bad = || format!("cannot parse angle {s:?}");
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| bad())?),
        None => (t.clone(), 1.0),
    };
    let value = match num.strip_suffix("pi") {
        Some("") => PI,
        Some("-") => -PI,
        Some(c) => c.parse::<f64>().map_err(|_| bad())? * PI,
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let out = value / den;
    if !out.is_finite() {
        return Err(bad());
    }
    Ok(out)
}

/// `min:max:steps`, evenly spaced and inclusive; one step gives `[min]`.
pub fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(format!("grid {s:?} is not min:max:steps"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad grid minimum {lo:?}"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad grid maximum {hi:?}"))?;
    let steps: usize = steps.trim().parse().map_err(|_| format!("bad grid step count {steps:?}"))?;
    if steps == 0 || !(lo <= hi) || lo < 0.0 || hi > 1.0 {
        return Err(format!("grid {s:?} needs 0 <= min <= max <= 1 and at least one step"));
    }
    if steps == 1 {
        return Ok(Grid(vec![lo]));
    }
    let step = (hi - lo) / (steps - 1) as f64;
    Ok(Grid((0..steps).map(|i| if i + 1 == steps { hi } else { lo + step * i as f64 }).collect()))
}

fn parse_channel(s: &str) -> std::result::Result<PauliChannel, String> {
    s.parse().map_err(|e: ftqm::Error| e.to_string())
}

fn parse_protocol(s: &str) -> std::result::Result<Protocol, String> {
    s.parse().map_err(|e: ftqm::Error| e.to_string())
}

fn parse_curve_protocol(s: &str) -> std::result::Result<CurveProtocol, String> {
    s.parse().map_err(|e: ftqm::Error| e.to_string())
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!(usage(format!("{}:{}: expected key=value", path.display(), i + 1)));
        };
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn find_config(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

/// Appends config entries as long options for every key the chosen
/// subcommand accepts and the command line did not already set.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = find_config(&args) else {
        return Ok(args);
    };
    let config = read_config(&path)?;
    let mut cmd = Cli::command();
    cmd.build();
    let given: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(sub) = given.iter().find_map(|a| cmd.find_subcommand(a)) else {
        return Ok(args);
    };
    let mut out = args.clone();
    for arg in sub.get_arguments() {
        let Some(long) = arg.get_long() else { continue };
        let Some(value) = config.get(long) else { continue };
        let flag = format!("--{long}");
        let short = arg.get_short().map(|c| format!("-{c}"));
        let present = given.iter().any(|a| {
            *a == flag || a.starts_with(&format!("{flag}=")) || short.as_deref().is_some_and(|s| a.starts_with(s))
        });
        if present {
            continue;
        }
        if arg.get_action().takes_values() {
            out.push(flag.into());
            out.push(value.into());
        } else if matches!(value.to_ascii_lowercase().as_str(), "true" | "1" | "yes") {
            out.push(flag.into());
        }
    }
    Ok(out)
}

/// Whether the requested checks all passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Codes(a) => cmd_codes(&a),
        Command::Threshold(a) => cmd_threshold(&a),
        Command::Resources(a) => cmd_resources(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn write_matrix(out: &mut dyn Write, title: &str, m: &BinaryMatrix) -> Result<()> {
    writeln!(out, "{title} ({}x{}):", m.num_rows(), m.num_cols())?;
    for row in m.rows() {
        writeln!(out, "  {row}")?;
    }
    Ok(())
}

fn cmd_codes(a: &CodesArgs) -> Result<Outcome> {
    if !(2..=8).contains(&a.m) {
        bail!(usage(format!("--m must be in 2..=8, got {}", a.m)));
    }
    let m = a.m;
    let rm_bar = shortened_rm(m)?;
    let rm_star = punctured_rm(m)?;
    let hamming = dual(&rm_bar);
    let mut out = open_sink(a.out.as_deref())?;
    writeln!(out, "# ftqm {}", ftqm::VERSION)?;
    writeln!(out, "m = {m}, n = {}", rm_bar.len())?;
    write_matrix(&mut *out, &format!("RM(1,{m}) generator"), &rm_generator(1, m)?)?;
    write_matrix(&mut *out, "shortened RM generator", rm_bar.generator())?;
    write_matrix(&mut *out, "shortened RM parity check", rm_bar.parity_check())?;
    write_matrix(&mut *out, "punctured RM generator", rm_star.generator())?;
    write_matrix(&mut *out, "punctured RM parity check", rm_star.parity_check())?;
    write_matrix(&mut *out, "Hamming generator", hamming.generator())?;
    write_matrix(&mut *out, "Hamming parity check", hamming.parity_check())?;
    if m >= 3 {
        let code = qrm(m)?;
        write_matrix(&mut *out, &format!("QRM(1,{m}) h_z (detects X errors)"), code.h_z())?;
        write_matrix(&mut *out, &format!("QRM(1,{m}) h_x (detects Z errors)"), code.h_x())?;
    }
    writeln!(out, "shortened RM weights: {}", shortened_rm_distribution(m)?)?;
    writeln!(out, "punctured RM weights: {}", punctured_rm_distribution(m)?)?;
    writeln!(out, "Hamming weights: {}", hamming_distribution(m)?)?;
    out.flush()?;
    Ok(Outcome::Success)
}

fn cmd_threshold(a: &ThresholdArgs) -> Result<Outcome> {
    let j = match (a.protocol, a.bits, a.bit_index) {
        (_, Some(_), Some(_)) => bail!(usage("give only one of --bits and --bit-index")),
        (_, Some(t), None) | (_, None, Some(t)) => t,
        (_, None, None) => bail!(usage("--bits (Ia) or --bit-index (Ib, Ib-dev, Ic) is required")),
    };
    let curve = threshold_curve(a.protocol, a.gamma, j, &a.grid.0, a.ia_device_coupling)?;
    let config = [
        ("protocol", a.protocol.to_string()),
        ("gamma", num(a.gamma)),
        ("j", j.to_string()),
        ("ia_device_coupling", a.ia_device_coupling.to_string()),
    ];
    let mut w = csv_writer(a.out.as_deref(), &config)?;
    w.write_record(["p_prime", "p_th", "protocol", "j", "gamma", "one_minus_p_th"])?;
    for (pp, p_th) in &curve.points {
        w.write_record([
            num(*pp),
            opt_num(*p_th),
            a.protocol.to_string(),
            j.to_string(),
            num(a.gamma),
            opt_num(p_th.map(|p| 1.0 - p)),
        ])?;
    }
    w.flush()?;
    Ok(Outcome::Success)
}

fn parse_radices(s: &str) -> Result<Vec<u8>> {
    s.split(',')
        .map(|r| r.trim().parse::<u8>().map_err(|_| usage(format!("bad radix {r:?}"))))
        .collect()
}

fn cmd_resources(a: &ResourcesArgs) -> Result<Outcome> {
    if a.bits == 0 || a.bits > 60 {
        bail!(usage(format!("--bits must be in 1..=60, got {}", a.bits)));
    }
    let radices = match &a.radices {
        Some(s) => parse_radices(s)?,
        None => vec![3; a.bits],
    };
    let p = a.noise.p();
    let config = [
        ("protocol", format!("{:?}", a.protocol)),
        ("gamma", num(a.gamma)),
        ("noise", num(p)),
        ("epsilon", a.epsilon.map(num).unwrap_or_else(|| "2^-t".into())),
    ];
    let mut w = csv_writer(a.out.as_deref(), &config)?;
    w.write_record(["t", "N", "delta_phi", "protocol", "epsilon", "converged"])?;
    let name = match a.protocol {
        ResourceProtocol::Ia => "Ia",
        ResourceProtocol::Ib => "Ib",
        ResourceProtocol::Ii => "II",
    };
    for t in 1..=a.bits {
        let eps = a.epsilon.unwrap_or_else(|| (-(t as f64)).exp2());
        let n = match a.protocol {
            ResourceProtocol::Ia => resources_ia(a.gamma, t, eps, p),
            ResourceProtocol::Ib => resources_ib(a.gamma, t, eps, p),
            ResourceProtocol::Ii => resources_ii(t, eps, p, &radices),
        };
        let n = match n {
            Ok(n) => Some(n),
            Err(ftqm::Error::NonConvergent { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let delta_phi = match a.protocol {
            ResourceProtocol::Ii => PI / radices[..t].iter().map(|&r| r as f64).product::<f64>(),
            _ => PI / (t as f64).exp2(),
        };
        w.write_record([
            t.to_string(),
            opt_num(n),
            num(delta_phi),
            name.to_string(),
            num(eps),
            n.is_some().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(Outcome::Success)
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Outcome> {
    if !(0.0..PI).contains(&a.phi) {
        bail!(usage(format!("--phi must lie in [0, pi), got {}", a.phi)));
    }
    let eps = a.epsilon.unwrap_or_else(|| (-(a.bits as f64)).exp2());
    let plan = if a.protocol == Protocol::II { RadixPlan::MixedRadix } else { RadixPlan::FixedBinary };
    let mut params = ProtocolParams::new(a.gamma, a.bits, eps)?
        .with_rate_mode(a.rate_mode.into())
        .with_radix_plan(plan);
    if let Some(m) = a.repetitions {
        params = params.with_repetitions(m)?;
    }
    let device = a.device_noise.map(DeviceNoise::new).transpose()?;
    if a.protocol == Protocol::Ic && device.is_none() {
        bail!(usage("protocol Ic needs --device-noise"));
    }
    let results = run_batch(a.protocol, a.phi, &params, &a.noise, device, a.seed, a.trials)?;

    let phase = PhaseValue::new(a.phi)?;
    let expected = phase.binary_bits(a.bits);
    let correct = |r: &ftqm::protocols::EstimationResult| -> bool {
        if a.protocol == Protocol::II {
            let res = PI / r.radices.iter().map(|&x| x as f64).product::<f64>();
            !r.aborted() && (r.phi_hat - a.phi).abs() < res
        } else {
            r.matches(&expected)
        }
    };

    let config = [
        ("protocol", a.protocol.to_string()),
        ("phi", num(a.phi)),
        ("gamma", num(a.gamma)),
        ("bits", a.bits.to_string()),
        ("noise", format!("{},{},{},{}", num(a.noise.p()), num(a.noise.px()), num(a.noise.py()), num(a.noise.pz()))),
        ("device_noise", opt_num(a.device_noise)),
        ("repetitions", a.repetitions.map(|m| m.to_string()).unwrap_or_else(|| "derived".into())),
        ("epsilon", num(eps)),
        ("rate_mode", format!("{:?}", a.rate_mode).to_ascii_lowercase()),
        ("trials", a.trials.to_string()),
        ("seed", a.seed.to_string()),
    ];
    let mut w = csv_writer(a.out.as_deref(), &config)?;
    w.write_record([
        "run",
        "digits",
        "radices",
        "phi_hat",
        "aborted_at",
        "interrogations_used",
        "interrogations_full",
        "retransmissions",
        "correct",
    ])?;
    let digits = |v: &[u8]| v.iter().map(u8::to_string).collect::<String>();
    let mut n_correct = 0u64;
    let (mut used, mut full) = (0u128, 0u128);
    for (i, r) in results.iter().enumerate() {
        let ok = correct(r);
        n_correct += ok as u64;
        used += r.interrogations_used as u128;
        full += r.interrogations_full as u128;
        w.write_record([
            i.to_string(),
            digits(&r.digits),
            digits(&r.radices),
            num(r.phi_hat),
            r.aborted_at.map(|j| j.to_string()).unwrap_or_default(),
            r.interrogations_used.to_string(),
            r.interrogations_full.to_string(),
            r.retransmissions.to_string(),
            ok.to_string(),
        ])?;
    }
    let runs = results.len().max(1) as f64;
    w.write_record([
        "summary".to_string(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        num(used as f64 / runs),
        num(full as f64 / runs),
        String::new(),
        num(n_correct as f64 / runs),
    ])?;
    w.flush()?;
    Ok(Outcome::Success)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let mut sink = open_sink(a.out.as_deref())?;
    let mut report = verify::Report::new(&mut *sink);
    let all = a.suite == Suite::All;
    if all || a.suite == Suite::Lemmas {
        verify::lemmas(&mut report)?;
    }
    if all || a.suite == Suite::Enumerators {
        verify::enumerators(&mut report)?;
    }
    if all || a.suite == Suite::Montecarlo {
        verify::montecarlo(&mut report, a.trials, a.seed)?;
    }
    let failures = report.failures();
    writeln!(sink, "{failures} failure(s)")?;
    sink.flush()?;
    Ok(if failures == 0 { Outcome::Success } else { Outcome::VerificationFailed })
}

/// Exit code for an error returned by [`run`].
pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<ftqm::Error>() {
        Some(ftqm::Error::InvalidParameter { .. }) | Some(ftqm::Error::LengthMismatch { .. }) => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/32").unwrap(), PI / 32.0);
        assert!((parse_angle("0.3pi").unwrap() - 0.3 * PI).abs() < 1e-15);
        assert!((parse_angle("3*pi/4").unwrap() - 0.75 * PI).abs() < 1e-15);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1e-4:3").unwrap().0, vec![0.0, 5e-5, 1e-4]);
        assert_eq!(parse_grid("0.1:0.1:1").unwrap().0, vec![0.1]);
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
