//! Batch front-end over the library: wavelength scans, frustration scans,
//! moment-line certificates, Fisher-information scans, and bound tables.
//!
//! Configuration comes from flags plus an optional JSON config file; an
//! explicit flag always overrides the file field of the same name. Results
//! go to stdout (or `--output`) as CSV or JSON with floats at 12
//! significant digits, so identical inputs produce byte-identical output.
//! Heavy grids are parallelized inside the library over a bounded worker
//! pool, with rows emitted in parameter order regardless of completion
//! order.
//!
//! Exit codes: 0 on success, 2 on invalid usage or parameters, 3 when the
//! semidefinite solver fails to converge.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use entwidth::chi;
use entwidth::gradient;
use entwidth::linalg::PureState;
use entwidth::qfi;
use entwidth::random::DEFAULT_SEED;
use entwidth::report;
use entwidth::sdp::{cut_partitions, SdpOptions};
use entwidth::spin::ChainGeometry;
use entwidth::states;
use entwidth::variance;
use entwidth::Error;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

/// A failed run together with its process exit code: 2 for anything the
/// caller can fix (usage, config, parameters, I/O), 3 for numerical
/// failure of the semidefinite solver.
#[derive(Debug)]
struct Failure {
    message: String,
    numerical: bool,
}

type CliResult<T> = std::result::Result<T, Failure>;

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { message: message.into(), numerical: false }
    }

    fn exit_code(&self) -> u8 {
        if self.numerical {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            message: err.to_string(),
            numerical: matches!(err, Error::SdpNoConvergence { .. }),
        }
    }
}

/// Spin-chain entanglement-width scans and certificates.
#[derive(Parser)]
#[command(name = "entwidth", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan wavelengths: gradient variances of reference states against
    /// width bounds (CSV).
    ScanVariance(ScanVarianceArgs),
    /// Scan the frustration parameter: ground energy, chi, and criterion
    /// flags (CSV), with a jump report on stderr or to a JSON file.
    ScanChi(ScanChiArgs),
    /// Certify moment lines over partial-transpose relaxations (JSON), or
    /// sample a (j2, b2) moment cloud (CSV).
    SdpCertify(SdpCertifyArgs),
    /// Compare the Fisher information of the two pairing families across
    /// chain lengths (CSV).
    QfiScan(QfiScanArgs),
    /// Print the bound table for one parameter point (JSON).
    Bounds(BoundsArgs),
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::ScanVariance(args) => run_scan_variance(args),
        Command::ScanChi(args) => run_scan_chi(args),
        Command::SdpCertify(args) => run_sdp_certify(args),
        Command::QfiScan(args) => run_qfi_scan(args),
        Command::Bounds(args) => run_bounds(args),
    }
}

// ---------------------------------------------------------------------------
// Configuration plumbing

/// Flags shared by every subcommand.
#[derive(Args)]
struct CommonArgs {
    /// Optional JSON config file; explicit flags override its fields.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

impl CommonArgs {
    fn load(&self) -> CliResult<RunConfig> {
        let Some(path) = &self.config else {
            return Ok(RunConfig::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.output {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        }
    }
}

/// File-borne defaults. Every field is optional; a subcommand reads the
/// fields it understands and an explicit flag wins over the file value.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    n: Option<usize>,
    x0: Option<f64>,
    lambda_min: Option<f64>,
    lambda_max: Option<f64>,
    lambda_step: Option<f64>,
    widths: Option<Vec<usize>>,
    matching_widths: Option<Vec<usize>>,
    pairings: Option<Vec<NamedPairing>>,
    alpha_min: Option<f64>,
    alpha_max: Option<f64>,
    alpha_step: Option<f64>,
    jump_threshold: Option<f64>,
    cuts: Option<Vec<usize>>,
    partitions: Option<Vec<Vec<usize>>>,
    slope: Option<f64>,
    m_min: Option<f64>,
    m_max: Option<f64>,
    m_step: Option<f64>,
    seed: Option<u64>,
    max_iterations: Option<usize>,
    ns: Option<Vec<usize>>,
    alpha: Option<f64>,
    lambda_over_d: Option<f64>,
}

/// A named pairing-state file, as listed in a config file.
#[derive(Debug, Clone, Deserialize)]
struct NamedPairing {
    name: String,
    path: PathBuf,
}

/// Flag value, else file value, else default.
fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Flag list (non-empty means given), else file list, else default.
fn pick_list<T>(flag: Vec<T>, file: Option<Vec<T>>, default: Vec<T>) -> Vec<T> {
    if !flag.is_empty() {
        flag
    } else {
        file.unwrap_or(default)
    }
}

/// Flag value, else file value, else a usage error naming the parameter.
fn require<T>(flag: Option<T>, file: Option<T>, name: &str) -> CliResult<T> {
    flag.or(file)
        .ok_or_else(|| Failure::usage(format!("missing required parameter `{name}` (flag or config field)")))
}

/// Inclusive arithmetic grid `min, min+step, ..` up to `max` (the endpoint
/// is kept when it lies on the grid to within rounding).
fn float_grid(min: f64, max: f64, step: f64, name: &str) -> CliResult<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() || !step.is_finite() || step <= 0.0 {
        return Err(Failure::usage(format!(
            "invalid {name} range: bounds must be finite and the step positive"
        )));
    }
    if max < min {
        return Err(Failure::usage(format!("empty {name} range: max {max} < min {min}")));
    }
    let span = (max - min) / step;
    if span > 1e6 {
        return Err(Failure::usage(format!("{name} grid has over 10^6 points; refine the range")));
    }
    let count = (span * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| min + i as f64 * step).collect())
}

// ---------------------------------------------------------------------------
// scan-variance

#[derive(Args)]
struct ScanVarianceArgs {
    /// Chain length.
    #[arg(long)]
    n: Option<usize>,
    /// Offset of the first site, in units of the spacing.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    /// Smallest wavelength ratio lambda/d.
    #[arg(long)]
    lambda_min: Option<f64>,
    /// Largest wavelength ratio lambda/d.
    #[arg(long)]
    lambda_max: Option<f64>,
    /// Wavelength grid step.
    #[arg(long)]
    lambda_step: Option<f64>,
    /// Width for a half-sum bound column (repeatable).
    #[arg(long = "width", value_name = "W")]
    widths: Vec<usize>,
    /// Width for an exact matching bound column (repeatable).
    #[arg(long = "matching-width", value_name = "W")]
    matching_widths: Vec<usize>,
    /// Extra pairing state as NAME=PATH to a pairing JSON file (repeatable).
    #[arg(long = "pairing", value_name = "NAME=PATH")]
    pairings: Vec<String>,
    #[command(flatten)]
    common: CommonArgs,
}

fn run_scan_variance(args: ScanVarianceArgs) -> CliResult<()> {
    let file = args.common.load()?;
    let n = require(args.n, file.n, "n")?;
    let x0 = pick(args.x0, file.x0, -0.5);
    let lambda_min = pick(args.lambda_min, file.lambda_min, 2.0);
    let lambda_max = pick(args.lambda_max, file.lambda_max, 64.0);
    let lambda_step = pick(args.lambda_step, file.lambda_step, 0.5);
    let widths = pick_list(args.widths, file.widths, vec![1, 2, 4]);
    let matching_widths = pick_list(args.matching_widths, file.matching_widths, vec![2]);
    let grid = float_grid(lambda_min, lambda_max, lambda_step, "lambda")?;
    let geometry = ChainGeometry::new(n, x0)?;

    let flag_pairings = args
        .pairings
        .iter()
        .map(|spec| {
            let (name, path) = spec.split_once('=').ok_or_else(|| {
                Failure::usage(format!("pairing `{spec}` is not of the form NAME=PATH"))
            })?;
            Ok(NamedPairing { name: name.to_string(), path: PathBuf::from(path) })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let extra = if flag_pairings.is_empty() {
        file.pairings.unwrap_or_default()
    } else {
        flag_pairings
    };

    let mut named: Vec<(String, PureState)> = vec![
        ("hugging".to_string(), states::singlet_pairing_state(&states::hugging(n)?)?),
        (
            "right_neighbor".to_string(),
            states::singlet_pairing_state(&states::right_neighbor(n)?)?,
        ),
    ];
    for pairing in &extra {
        if pairing.name.is_empty()
            || !pairing.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Failure::usage(format!(
                "pairing name `{}` must be a nonempty [A-Za-z0-9_] identifier",
                pairing.name
            )));
        }
        if named.iter().any(|(existing, _)| *existing == pairing.name) {
            return Err(Failure::usage(format!("duplicate pairing name `{}`", pairing.name)));
        }
        let text = fs::read_to_string(&pairing.path).map_err(|e| {
            Failure::usage(format!("cannot read pairing {}: {e}", pairing.path.display()))
        })?;
        let config = states::PairingConfiguration::from_json(&text)?;
        if config.n != n {
            return Err(Failure::usage(format!(
                "pairing `{}` is for a chain of {} sites, scan uses {n}",
                pairing.name, config.n
            )));
        }
        named.push((pairing.name.clone(), states::singlet_pairing_state(&config)?));
    }

    let rows = variance::scan_variance(geometry, &grid, &named, &widths, &matching_widths)?;

    let mut header: Vec<String> = vec!["lambda_over_d".to_string()];
    header.extend(named.iter().map(|(name, _)| format!("variance_state_{name}")));
    header.extend(widths.iter().map(|w| format!("bound_w{w}")));
    header.extend(matching_widths.iter().map(|w| format!("bound_matching_w{w}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let cells: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| {
            let mut cell = vec![row.lambda_over_d];
            cell.extend_from_slice(&row.variances);
            cell.extend_from_slice(&row.bounds_simple);
            cell.extend_from_slice(&row.bounds_matching);
            cell
        })
        .collect();
    args.common.emit(&report::csv_document(&header, &cells))
}

// ---------------------------------------------------------------------------
// scan-chi

#[derive(Args)]
struct ScanChiArgs {
    /// Chain length (>= 5; chi is undefined below that).
    #[arg(long)]
    n: Option<usize>,
    /// Smallest frustration parameter alpha.
    #[arg(long)]
    alpha_min: Option<f64>,
    /// Largest frustration parameter alpha.
    #[arg(long)]
    alpha_max: Option<f64>,
    /// Alpha grid step.
    #[arg(long)]
    alpha_step: Option<f64>,
    /// Jump detection threshold on |delta chi| (default 0.1 per site).
    #[arg(long)]
    jump_threshold: Option<f64>,
    /// Write the jump report to this JSON file instead of stderr.
    #[arg(long, value_name = "PATH")]
    jumps_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

/// One detected jump, as serialized in the jump report.
#[derive(Serialize)]
struct JumpRecord {
    alpha_before: f64,
    alpha_after: f64,
    delta: f64,
}

#[derive(Serialize)]
struct JumpReport {
    threshold: f64,
    jumps: Vec<JumpRecord>,
}

fn run_scan_chi(args: ScanChiArgs) -> CliResult<()> {
    let file = args.common.load()?;
    let n = require(args.n, file.n, "n")?;
    let alpha_min = pick(args.alpha_min, file.alpha_min, 0.0);
    let alpha_max = pick(args.alpha_max, file.alpha_max, 1.5);
    let alpha_step = pick(args.alpha_step, file.alpha_step, 0.01);
    let grid = float_grid(alpha_min, alpha_max, alpha_step, "alpha")?;

    let rows = chi::scan_alpha(n, &grid)?;
    let threshold =
        pick(args.jump_threshold, file.jump_threshold, chi::default_jump_threshold(n));
    let jumps = chi::detect_jumps(&rows, threshold);

    let report_out = JumpReport {
        threshold,
        jumps: jumps
            .iter()
            .map(|j| JumpRecord {
                alpha_before: j.alpha_before,
                alpha_after: j.alpha_after,
                delta: j.delta,
            })
            .collect(),
    };
    match &args.jumps_out {
        Some(path) => {
            let text = to_json(&report_out)?;
            fs::write(path, text).map_err(|e| {
                Failure::usage(format!("cannot write {}: {e}", path.display()))
            })?;
        }
        None => {
            for jump in &report_out.jumps {
                eprintln!(
                    "chi jump between alpha = {} and alpha = {}: delta = {}",
                    report::fmt_float(jump.alpha_before),
                    report::fmt_float(jump.alpha_after),
                    report::fmt_float(jump.delta),
                );
            }
        }
    }

    let header = [
        "alpha",
        "energy",
        "chi",
        "bound_circulant",
        "bound_2prod",
        "bound_chi_classical",
        "flag_ent",
        "flag_multipartite",
        "flag_width3",
    ];
    let cells: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.alpha,
                r.energy,
                r.chi_symmetrized,
                r.bound_circulant,
                r.bound_2prod,
                r.bound_chi_classical,
                f64::from(u8::from(r.flag_ent)),
                f64::from(u8::from(r.flag_multipartite)),
                f64::from(u8::from(r.flag_width3)),
            ]
        })
        .collect();
    args.common.emit(&report::csv_document(&header, &cells))
}

// ---------------------------------------------------------------------------
// sdp-certify

#[derive(Args)]
struct SdpCertifyArgs {
    /// Chain length.
    #[arg(long)]
    n: Option<usize>,
    /// Contiguous cut after this site (repeatable for simultaneous cuts).
    #[arg(long = "cut", value_name = "SITE")]
    cuts: Vec<usize>,
    /// Transposed site set, comma separated (repeatable); alternative to
    /// --cut.
    #[arg(long = "partition", value_name = "SITES", conflicts_with = "cuts")]
    partitions: Vec<String>,
    /// Slope m of the single certified line.
    #[arg(long, allow_hyphen_values = true)]
    slope: Option<f64>,
    /// Certify the whole slope grid [m-min, m-max] instead of one line.
    #[arg(long, conflicts_with = "slope")]
    pareto: bool,
    /// Smallest slope of the grid.
    #[arg(long, allow_hyphen_values = true)]
    m_min: Option<f64>,
    /// Largest slope of the grid.
    #[arg(long, allow_hyphen_values = true)]
    m_max: Option<f64>,
    /// Slope grid step.
    #[arg(long)]
    m_step: Option<f64>,
    /// Emit a CSV cloud of (j2, b2) moments from this many random product
    /// states across the first cut, instead of a certificate.
    #[arg(long, value_name = "SAMPLES", conflicts_with_all = ["pareto", "slope"])]
    scatter: Option<usize>,
    /// Random seed for scatter mode.
    #[arg(long)]
    seed: Option<u64>,
    /// Iteration cap for the interior-point solver.
    #[arg(long)]
    max_iterations: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Serialize)]
struct CertifyReport {
    n: usize,
    partitions: Vec<Vec<usize>>,
    slope: f64,
    intercept: f64,
    optimum: f64,
    gap: f64,
    iterations: usize,
}

#[derive(Serialize)]
struct ParetoReport {
    n: usize,
    partitions: Vec<Vec<usize>>,
    points: Vec<ParetoEntry>,
}

#[derive(Serialize)]
struct ParetoEntry {
    slope: f64,
    intercept: f64,
    gap: f64,
    iterations: usize,
}

/// Resolves the transposed site sets from --partition, --cut, or the
/// config file (in that precedence).
fn resolve_partitions(
    n: usize,
    flag_partitions: &[String],
    flag_cuts: &[usize],
    file: &RunConfig,
) -> CliResult<Vec<Vec<usize>>> {
    if !flag_partitions.is_empty() {
        return flag_partitions
            .iter()
            .map(|spec| {
                spec.split(',')
                    .map(|site| {
                        site.trim().parse::<usize>().map_err(|_| {
                            Failure::usage(format!("partition `{spec}`: `{site}` is not a site index"))
                        })
                    })
                    .collect::<CliResult<Vec<usize>>>()
            })
            .collect();
    }
    if !flag_cuts.is_empty() {
        return Ok(cut_partitions(n, flag_cuts)?);
    }
    if let Some(partitions) = &file.partitions {
        return Ok(partitions.clone());
    }
    if let Some(cuts) = &file.cuts {
        return Ok(cut_partitions(n, cuts)?);
    }
    Err(Failure::usage("no partitions given: pass --cut or --partition (or config fields)"))
}

fn run_sdp_certify(args: SdpCertifyArgs) -> CliResult<()> {
    let file = args.common.load()?;
    let n = require(args.n, file.n, "n")?;

    if let Some(samples) = args.scatter {
        let seed = pick(args.seed, file.seed, DEFAULT_SEED);
        let cloud = gradient::sample_moment_cloud(n, samples, seed)?;
        let cells: Vec<Vec<f64>> = cloud.iter().map(|&(j2, b2)| vec![j2, b2]).collect();
        return args.common.emit(&report::csv_document(&["j2", "b2"], &cells));
    }

    let partitions = resolve_partitions(n, &args.partitions, &args.cuts, &file)?;
    let mut options = SdpOptions::default();
    if let Some(cap) = args.max_iterations.or(file.max_iterations) {
        options.max_iterations = cap;
    }

    if args.pareto {
        let m_min = pick(args.m_min, file.m_min, 8.0);
        let m_max = pick(args.m_max, file.m_max, 24.0);
        let m_step = pick(args.m_step, file.m_step, 0.1);
        let slopes = float_grid(m_min, m_max, m_step, "slope")?;
        let points = gradient::pareto_scan_partitions(n, &partitions, &slopes, &options)?;
        let out = ParetoReport {
            n,
            partitions,
            points: points
                .iter()
                .map(|p| ParetoEntry {
                    slope: p.slope,
                    intercept: p.intercept,
                    gap: p.duality_gap,
                    iterations: p.iterations,
                })
                .collect(),
        };
        return args.common.emit(&to_json(&out)?);
    }

    let slope = require(args.slope, file.slope, "slope")?;
    let line = gradient::certify_line_partitions(n, slope, partitions, &options)?;
    let out = CertifyReport {
        n,
        partitions: line.partitions.clone(),
        slope,
        intercept: line.intercept,
        optimum: line.solution.optimum,
        gap: line.solution.duality_gap,
        iterations: line.solution.iterations,
    };
    args.common.emit(&to_json(&out)?)
}

// ---------------------------------------------------------------------------
// qfi-scan

#[derive(Args)]
struct QfiScanArgs {
    /// Chain length (repeatable; defaults to 4, 8, 12, 16).
    #[arg(long = "n", value_name = "N")]
    ns: Vec<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

fn run_qfi_scan(args: QfiScanArgs) -> CliResult<()> {
    let file = args.common.load()?;
    let ns = pick_list(args.ns, file.ns, vec![4, 8, 12, 16]);
    let rows = qfi::qfi_scan(&ns)?;
    let cells: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| vec![r.n as f64, r.f_hugging, r.f_right_neighbor, r.ratio])
        .collect();
    args.common.emit(&report::csv_document(&["N", "f_hug", "f_rn", "ratio"], &cells))
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Args)]
struct BoundsArgs {
    /// Chain length.
    #[arg(long)]
    n: Option<usize>,
    /// Frustration parameter for the energy-based bounds.
    #[arg(long)]
    alpha: Option<f64>,
    /// Wavelength ratio lambda/d for the width bounds (default 2N).
    #[arg(long, value_name = "LAMBDA")]
    lambda_over_d: Option<f64>,
    /// Offset of the first site, in units of the spacing.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    /// Width to tabulate (repeatable).
    #[arg(long = "width", value_name = "W")]
    widths: Vec<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Serialize)]
struct WidthBoundEntry {
    w: usize,
    bound_simple: f64,
    /// Exact matching bound; absent when the chain is too long for it.
    bound_matching: Option<f64>,
}

#[derive(Serialize)]
struct BoundsReport {
    n: usize,
    alpha: f64,
    lambda_over_d: f64,
    x0: f64,
    /// Separable per-site energy floor of the circulant relaxation.
    h_circulant: f64,
    /// Per-site floor over two-producible states.
    h_2prod: f64,
    /// Extensive separable bound: energy below it witnesses entanglement.
    bound_circulant: f64,
    /// Extensive two-producible bound: energy below it witnesses
    /// multipartite entanglement.
    bound_2prod: f64,
    /// Classical (width-1) bound on chi.
    bound_chi_classical: f64,
    width_bounds: Vec<WidthBoundEntry>,
}

fn run_bounds(args: BoundsArgs) -> CliResult<()> {
    let file = args.common.load()?;
    let n = require(args.n, file.n, "n")?;
    let alpha = pick(args.alpha, file.alpha, 0.0);
    let lambda_over_d = pick(args.lambda_over_d, file.lambda_over_d, 2.0 * n as f64);
    let x0 = pick(args.x0, file.x0, -0.5);
    let widths = pick_list(args.widths, file.widths, vec![1, 2, 4]);

    let geometry = ChainGeometry::new(n, x0)?;
    let h_circulant = chi::h_circulant(n, alpha)?;
    let h_2prod = chi::h_2prod(alpha)?;
    let width_bounds = widths
        .iter()
        .map(|&w| {
            let bound_simple = variance::width_bound_simple(geometry, lambda_over_d, w)?;
            let bound_matching = match variance::width_bound_matching(geometry, lambda_over_d, w)
            {
                Ok(value) => Some(value),
                Err(Error::ChainTooLong { .. }) => None,
                Err(err) => return Err(Failure::from(err)),
            };
            Ok(WidthBoundEntry { w, bound_simple, bound_matching })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let out = BoundsReport {
        n,
        alpha,
        lambda_over_d,
        x0,
        h_circulant,
        h_2prod,
        bound_circulant: n as f64 * h_circulant,
        bound_2prod: -(n as f64) * h_2prod,
        bound_chi_classical: chi::chi_classical_bound(n)?,
        width_bounds,
    };
    args.common.emit(&to_json(&out)?)
}

// ---------------------------------------------------------------------------

/// Pretty JSON with a trailing newline (stable field order via struct
/// definitions, so output is byte-identical across runs).
fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::usage(format!("cannot serialize result: {e}")))?;
    text.push('\n');
    Ok(text)
}
