//! Command-line front end. Every library operation sits behind exactly one
//! subcommand (each long help lists the operations it fronts); reports are
//! CSV or JSON with 17-significant-digit numbers, so identical invocations
//! produce byte-identical artifacts.
//!
//! Exit codes: 0 success, 2 validation/usage error, 3 a bound check failed
//! (a Weil-bound violation, an Erdős–Turán dominance violation, or a decay
//! envelope violation) so CI can gate on the distinction.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equidist::decimal::Decimal;
use equidist::discrepancy::{empirical_measure, interval_count, star_discrepancy};
use equidist::expsum::{
    all_k_scan_with_limit, complete_exp_sum, conjugate_frequency_check, fourier_decay_check,
    weil_bound_check, weyl_sum,
};
use equidist::output;
use equidist::polyseq::{
    generate_sequence, linear_sequence, load_sequence, reduce_polynomial, PolynomialSpec, Sequence,
};
use equidist::primes::{geometric_schedule, PrimeSchedule};
use equidist::qmcint::{convergence_table, integrate, lookup_function, registry};
use equidist::{Error as LibError, Result as LibResult};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_BOUND_FAIL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "equidist",
    version,
    about = "Prime-modulus polynomial sequences, exponential sums, discrepancy, and quasi-Monte Carlo integration"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce exact-decimal coefficients to residues modulo a prime.
    #[command(long_about = "Reduce exact-decimal coefficients a_l to the residues t_l = \
        floor(q * a_l), reporting one row per coefficient. The modulus must be a prime at \
        or above the polynomial's minimum admissible modulus.\n\nLibrary operations: \
        reduce_polynomial, min_modulus.")]
    Reduce(ReduceArgs),

    /// Generate the grid sequence p_q(i)/q for i = 1..q.
    #[command(long_about = "Generate the sequence p_q(i)/q for i = 1..q as exact numerators \
        over q, one row per point. The modulus is validated first (is_prime) and each point \
        is a Horner evaluation of the reduced polynomial.\n\nLibrary operations: \
        generate_sequence, eval_mod, is_prime.")]
    Gen(GenArgs),

    /// Weyl sums S(k) of a sequence at one or more frequencies.
    #[command(long_about = "Compute exponential sums S(k) = sum_i exp(2*pi*i*k*s_i) for each \
        requested frequency. Sources: a polynomial grid (--poly with --q, summed over \
        i = 1..q, or over the complete residue system j = 0..q-1 with --complete) or the \
        fractional parts of i*alpha (--alpha with --n).\n\nLibrary operations: weyl_sum, \
        complete_exp_sum, linear_sequence.")]
    Weylsum(WeylsumArgs),

    /// Full DFT scan S(k) for every k = 0..q-1, with symmetry check.
    #[command(long_about = "Scan all frequencies k = 0..q-1 of a polynomial grid by direct \
        DFT over the residue histogram, verifying the conjugate pairing S(q-k) = conj(S(k)) \
        on the result; a pairing violation exits 3. Refused above the scan limit.\n\n\
        Library operations: all_k_scan, conjugate_frequency_check.")]
    Scan(ScanArgs),

    /// Check complete exponential sums against the (d-1)*sqrt(q) + 1 bound.
    #[command(long_about = "Check |S(k)| against the square-root bound (d-1)*sqrt(q) + 1 for \
        each requested frequency, reporting the margin; any violation exits 3. Frequencies \
        come from --k or are sampled uniformly from [1, q-1] with --ksample (seeded; the \
        seed is echoed into the output header).\n\nLibrary operations: weil_bound_check.")]
    Weilcheck(WeilcheckArgs),

    /// Star discrepancy, interval counts, or the empirical measure.
    #[command(long_about = "Report the exact star discrepancy D*, the two-sided D, and a \
        worst anchored interval of a sequence; with --interval, count points in [a, b) and \
        report the deviation from b - a instead; with --measure, tabulate the empirical \
        measure of a grid sequence. Sources: a polynomial grid (--poly with --q) or a text \
        file of points (--in).\n\nLibrary operations: star_discrepancy, interval_count, \
        empirical_measure, load_sequence.")]
    Discrepancy(DiscrepancyArgs),

    /// Quasi-Monte Carlo average of a test function over a grid.
    #[command(long_about = "Average a test function over the polynomial grid and report the \
        sample mean, the reference integral, and the absolute error. `--f list` prints the \
        stock function table instead.\n\nLibrary operations: integrate, registry.")]
    Integrate(IntegrateArgs),

    /// Error or deviation decay along a schedule of growing primes.
    #[command(long_about = "Drive one polynomial along a schedule of increasing primes — \
        either count geometrically spaced primes between --qmin and --qmax (each target \
        rounded up to the next prime) or a single --q — and tabulate, per modulus, the \
        integration error of a test function (--f) or discrepancy plus interval deviations \
        (--interval, repeatable), including the Erdős–Turán bound from partial Weyl sums. \
        A study row whose measured D exceeds its erdos_turan_bound value exits 3.\n\n\
        Library operations: convergence_table, weak_convergence_study, geometric_schedule, \
        next_prime, erdos_turan_bound.")]
    Converge(ConvergeArgs),

    /// Fourier coefficient decay of a smooth function on a q-grid.
    #[command(long_about = "Compute discrete Fourier coefficients of a smooth function on a \
        q-point grid for |k| <= q/2 and flag every coefficient above the envelope H/k^2; \
        any violation exits 3. The function comes from --f or is built as a mollified \
        indicator of [a, b) with --interval and --eps.\n\nLibrary operations: \
        fourier_decay_check, smooth_indicator.")]
    Decay(DecayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// A frequency K or an inclusive range A..B.
#[derive(Clone, Copy)]
struct KRange {
    lo: i64,
    hi: i64,
}

impl KRange {
    fn frequencies(self) -> Vec<i64> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| format!("`{t}` is not an integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let k = parse(s)?;
                (k, k)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(KRange { lo, hi })
    }
}

/// An interval "a,b" with exact-decimal endpoints.
#[derive(Clone)]
struct IntervalArg {
    a: BigRational,
    b: BigRational,
}

impl IntervalArg {
    fn a_f64(&self) -> f64 {
        self.a.to_f64().unwrap()
    }

    fn b_f64(&self) -> f64 {
        self.b.to_f64().unwrap()
    }
}

impl FromStr for IntervalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("`{s}` is not of the form a,b"))?;
        let parse = |t: &str| {
            Decimal::parse(t.trim())
                .map(|d| d.to_rational())
                .map_err(|e| e.to_string())
        };
        Ok(IntervalArg { a: parse(a)?, b: parse(b)? })
    }
}

#[derive(Args)]
struct ReduceArgs {
    /// Comma-separated exact decimal coefficients a_0,a_1,...,a_d.
    #[arg(long)]
    poly: String,
    /// Prime modulus.
    #[arg(long)]
    q: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct GenArgs {
    /// Comma-separated exact decimal coefficients a_0,a_1,...,a_d.
    #[arg(long)]
    poly: String,
    /// Prime modulus.
    #[arg(long)]
    q: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct WeylsumArgs {
    /// Comma-separated exact decimal coefficients (grid source; needs --q).
    #[arg(long, requires = "q", conflicts_with_all = ["alpha", "n"])]
    poly: Option<String>,
    /// Prime modulus for the grid source.
    #[arg(long)]
    q: Option<u64>,
    /// Rotation number for the linear source i*alpha mod 1 (needs --n).
    #[arg(long, requires = "n", conflicts_with = "complete")]
    alpha: Option<f64>,
    /// Number of points for the linear source.
    #[arg(long)]
    n: Option<usize>,
    /// Frequency K or inclusive range A..B.
    #[arg(long)]
    k: KRange,
    /// Sum over the complete residue system j = 0..q-1 instead of i = 1..q.
    #[arg(long)]
    complete: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ScanArgs {
    /// Comma-separated exact decimal coefficients a_0,a_1,...,a_d.
    #[arg(long)]
    poly: String,
    /// Prime modulus.
    #[arg(long)]
    q: u64,
    /// Largest modulus the O(q^2) scan accepts.
    #[arg(long, default_value_t = 4096)]
    limit: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct WeilcheckArgs {
    /// Comma-separated exact decimal coefficients a_0,a_1,...,a_d.
    #[arg(long)]
    poly: String,
    /// Prime modulus.
    #[arg(long)]
    q: u64,
    /// Frequency K or inclusive range A..B.
    #[arg(long, conflicts_with = "ksample")]
    k: Option<KRange>,
    /// Sample this many frequencies uniformly from [1, q-1].
    #[arg(long, value_name = "M")]
    ksample: Option<usize>,
    /// RNG seed for --ksample, echoed into the output header.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct DiscrepancyArgs {
    /// Comma-separated exact decimal coefficients (grid source; needs --q).
    #[arg(long, requires = "q", conflicts_with = "input")]
    poly: Option<String>,
    /// Prime modulus for the grid source.
    #[arg(long)]
    q: Option<u64>,
    /// Read the sequence from a file: one value in [0,1) per line, '#' comments.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Count points in [a, b) instead of reporting discrepancy.
    #[arg(long, value_name = "A,B")]
    interval: Option<IntervalArg>,
    /// Tabulate the empirical measure (grid source only).
    #[arg(long, conflicts_with = "interval")]
    measure: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct IntegrateArgs {
    /// Comma-separated exact decimal coefficients a_0,a_1,...,a_d.
    #[arg(long, requires = "q")]
    poly: Option<String>,
    /// Prime modulus.
    #[arg(long)]
    q: Option<u64>,
    /// Test function name, or `list` to print the stock registry.
    #[arg(long, value_name = "NAME")]
    f: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Comma-separated exact decimal coefficients a_0,a_1,...,a_d.
    #[arg(long)]
    poly: String,
    /// Single prime modulus (alternative to --qmin/--qmax/--count).
    #[arg(long, conflicts_with_all = ["qmin", "qmax", "count"])]
    q: Option<u64>,
    /// Smallest schedule target.
    #[arg(long, requires_all = ["qmax", "count"])]
    qmin: Option<u64>,
    /// Largest schedule target.
    #[arg(long)]
    qmax: Option<u64>,
    /// Number of geometrically spaced schedule targets.
    #[arg(long)]
    count: Option<usize>,
    /// Test function for the integration-error table.
    #[arg(long, value_name = "NAME", conflicts_with = "interval")]
    f: Option<String>,
    /// Interval a,b for the weak-convergence study (repeatable).
    #[arg(long, value_name = "A,B")]
    interval: Vec<IntervalArg>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct DecayArgs {
    /// Smooth test function name.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["interval", "eps"])]
    f: Option<String>,
    /// Build a mollified indicator of [a, b) (needs --eps).
    #[arg(long, value_name = "A,B", requires = "eps")]
    interval: Option<IntervalArg>,
    /// Transition half-width of the mollified indicator.
    #[arg(long)]
    eps: Option<f64>,
    /// Grid size (at least 16; primality not required here).
    #[arg(long)]
    q: u64,
    /// Decay constant H in the envelope H/k^2.
    #[arg(long = "big-h", value_name = "H")]
    big_h: f64,
    #[command(flatten)]
    output: OutputOpts,
}

/// A validation failure: which flag to blame, and why.
struct Usage(String);

impl Usage {
    fn new(flag: &str, msg: impl std::fmt::Display) -> Self {
        Usage(format!("{flag}: {msg}"))
    }
}

/// Blames the flag whose value produced a library error.
fn blame(flag: &str, err: LibError) -> Usage {
    // The stated example phrasing for a composite modulus.
    if let LibError::NotPrime { q } = err {
        return Usage::new(flag, format!("q must be prime (got {q})"));
    }
    Usage::new(flag, err)
}

fn parse_poly(text: &str) -> Result<PolynomialSpec, Usage> {
    PolynomialSpec::parse(text).map_err(|e| blame("--poly", e))
}

fn grid(poly: &str, q: u64) -> Result<Sequence, Usage> {
    let p = parse_poly(poly)?;
    let rp = reduce_polynomial(&p, q).map_err(|e| blame("--q", e))?;
    Ok(Sequence::Grid(generate_sequence(&rp)))
}

/// Report body plus header metadata echoed into the artifact (CSV comment
/// lines, JSON envelope fields).
struct Report {
    meta: Vec<(&'static str, String)>,
    csv: String,
    json: serde_json::Value,
}

impl Report {
    fn new(csv: String, json: serde_json::Value) -> Self {
        Report { meta: Vec::new(), csv, json }
    }

    fn with_meta(mut self, key: &'static str, value: impl std::fmt::Display) -> Self {
        self.meta.push((key, value.to_string()));
        self
    }
}

fn emit(opts: &OutputOpts, report: Report) -> std::io::Result<()> {
    let body = match opts.format {
        Format::Csv => {
            let mut text = String::new();
            for (key, value) in &report.meta {
                writeln!(text, "# {key}={value}").unwrap();
            }
            text.push_str(&report.csv);
            text
        }
        Format::Json => {
            let value = if report.meta.is_empty() {
                report.json
            } else {
                let mut map = serde_json::Map::new();
                for (key, value) in &report.meta {
                    map.insert((*key).to_string(), serde_json::json!(value));
                }
                map.insert("rows".to_string(), report.json);
                serde_json::Value::Object(map)
            };
            let mut text = serde_json::to_string_pretty(&value).expect("serializable");
            text.push('\n');
            text
        }
    };
    match &opts.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Reduce(a) => run_reduce(a),
        Cmd::Gen(a) => run_gen(a),
        Cmd::Weylsum(a) => run_weylsum(a),
        Cmd::Scan(a) => run_scan(a),
        Cmd::Weilcheck(a) => run_weilcheck(a),
        Cmd::Discrepancy(a) => run_discrepancy(a),
        Cmd::Integrate(a) => run_integrate(a),
        Cmd::Converge(a) => run_converge(a),
        Cmd::Decay(a) => run_decay(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_reduce(args: &ReduceArgs) -> Result<u8, Usage> {
    let p = parse_poly(&args.poly)?;
    let rp = reduce_polynomial(&p, args.q).map_err(|e| blame("--q", e))?;
    let report = Report::new(
        output::reduce_csv(p.coeffs(), rp.coeffs()),
        output::reduce_json(p.coeffs(), rp.coeffs()),
    );
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(0)
}

fn run_gen(args: &GenArgs) -> Result<u8, Usage> {
    let seq = grid(&args.poly, args.q)?;
    let g = seq.as_grid().unwrap();
    let report = Report::new(
        output::sequence_csv(g.numerators(), args.q),
        output::sequence_json(g.numerators(), args.q),
    );
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(0)
}

fn run_weylsum(args: &WeylsumArgs) -> Result<u8, Usage> {
    let frequencies = args.k.frequencies();
    let reports: Vec<_> = match (&args.poly, args.alpha) {
        (Some(poly), None) => {
            let p = parse_poly(poly)?;
            let q = args.q.expect("clap enforces --q with --poly");
            let rp = reduce_polynomial(&p, q).map_err(|e| blame("--q", e))?;
            if args.complete {
                frequencies
                    .iter()
                    .map(|&k| {
                        let sum = complete_exp_sum(&rp, k)?;
                        Ok(equidist::expsum::WeylSumReport::new(k, sum, q))
                    })
                    .collect::<LibResult<_>>()
                    .map_err(|e| blame("--k", e))?
            } else {
                let seq = Sequence::Grid(generate_sequence(&rp));
                frequencies
                    .iter()
                    .map(|&k| weyl_sum(&seq, k))
                    .collect::<LibResult<_>>()
                    .map_err(|e| blame("--k", e))?
            }
        }
        (None, Some(alpha)) => {
            let n = args.n.expect("clap enforces --n with --alpha");
            let seq = Sequence::Real(linear_sequence(alpha, n).map_err(|e| blame("--alpha", e))?);
            frequencies
                .iter()
                .map(|&k| weyl_sum(&seq, k))
                .collect::<LibResult<_>>()
                .map_err(|e| blame("--k", e))?
        }
        _ => return Err(Usage::new("--poly", "provide either --poly with --q, or --alpha with --n")),
    };
    let report = Report::new(output::weyl_csv(&reports), output::weyl_json(&reports));
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(0)
}

fn run_scan(args: &ScanArgs) -> Result<u8, Usage> {
    let p = parse_poly(&args.poly)?;
    let rp = reduce_polynomial(&p, args.q).map_err(|e| blame("--q", e))?;
    let scan = all_k_scan_with_limit(&rp, args.limit).map_err(|e| blame("--q", e))?;
    let symmetric = conjugate_frequency_check(&scan);
    let reports = output::scan_reports(&scan, args.q);
    let report = Report::new(output::weyl_csv(&reports), output::weyl_json(&reports))
        .with_meta("conjugate_symmetry", if symmetric { "pass" } else { "FAIL" });
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(if symmetric { 0 } else { EXIT_BOUND_FAIL })
}

fn run_weilcheck(args: &WeilcheckArgs) -> Result<u8, Usage> {
    let p = parse_poly(&args.poly)?;
    let rp = reduce_polynomial(&p, args.q).map_err(|e| blame("--q", e))?;
    let (k_set, sampled) = match (args.k, args.ksample) {
        (Some(range), None) => (range.frequencies(), false),
        (None, Some(m)) => {
            if args.q < 3 {
                return Err(Usage::new("--ksample", "sampling needs q >= 3"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut ks: Vec<i64> =
                (0..m).map(|_| rng.gen_range(1..=(args.q - 1) as i64)).collect();
            ks.sort_unstable();
            ks.dedup();
            (ks, true)
        }
        _ => return Err(Usage::new("--k", "provide exactly one of --k or --ksample")),
    };
    let reports = weil_bound_check(&rp, &k_set).map_err(|e| blame("--k", e))?;
    let violations = reports.iter().filter(|r| r.violates_bound()).count();
    let mut report = Report::new(output::weyl_csv(&reports), output::weyl_json(&reports));
    if sampled {
        report = report.with_meta("seed", args.seed);
    }
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(if violations == 0 { 0 } else { EXIT_BOUND_FAIL })
}

fn run_discrepancy(args: &DiscrepancyArgs) -> Result<u8, Usage> {
    let seq = match (&args.poly, &args.input) {
        (Some(poly), None) => grid(poly, args.q.expect("clap enforces --q with --poly"))?,
        (None, Some(path)) => {
            Sequence::Real(load_sequence(path).map_err(|e| blame("--in", e))?)
        }
        _ => return Err(Usage::new("--poly", "provide either --poly with --q, or --in")),
    };
    let report = if args.measure {
        let g = seq
            .as_grid()
            .ok_or_else(|| Usage::new("--measure", "the empirical measure needs a grid source"))?;
        let m = empirical_measure(g);
        Report::new(output::measure_csv(&m), output::measure_json(&m))
    } else if let Some(interval) = &args.interval {
        let count =
            interval_count(&seq, &interval.a, &interval.b).map_err(|e| blame("--interval", e))?;
        let exact = BigRational::new(
            BigInt::from(*count.numer()),
            BigInt::from(*count.denom()),
        );
        let deviation = (exact - (&interval.b - &interval.a)).abs().to_f64().unwrap();
        Report::new(
            output::interval_csv(interval.a_f64(), interval.b_f64(), count, deviation),
            output::interval_json(interval.a_f64(), interval.b_f64(), count, deviation),
        )
    } else {
        let r = star_discrepancy(&seq);
        Report::new(output::discrepancy_csv(&r), output::discrepancy_json(&r))
    };
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(0)
}

fn run_integrate(args: &IntegrateArgs) -> Result<u8, Usage> {
    if args.f == "list" {
        let fs = registry();
        let report = Report::new(output::registry_csv(&fs), output::registry_json(&fs));
        emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
        return Ok(0);
    }
    let poly = args
        .poly
        .as_deref()
        .ok_or_else(|| Usage::new("--poly", "required unless --f list"))?;
    let q = args.q.expect("clap enforces --q with --poly");
    let f = lookup_function(&args.f).map_err(|e| blame("--f", e))?;
    let seq = grid(poly, q)?;
    let integration = integrate(&seq, &f).map_err(|e| blame("--f", e))?;
    let rows = vec![equidist::qmcint::ConvergenceRow { q, report: integration }];
    let report = Report::new(output::table_csv(&rows, f.name()), output::table_json(&rows, f.name()));
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(0)
}

fn run_converge(args: &ConvergeArgs) -> Result<u8, Usage> {
    let p = parse_poly(&args.poly)?;
    let schedule = match (args.q, args.qmin, args.qmax, args.count) {
        (Some(q), None, None, None) => {
            PrimeSchedule::explicit(vec![q]).map_err(|e| blame("--q", e))?
        }
        (None, Some(qmin), Some(qmax), Some(count)) => {
            geometric_schedule(qmin, qmax, count).map_err(|e| blame("--qmin", e))?
        }
        _ => {
            return Err(Usage::new(
                "--qmin",
                "provide --qmin, --qmax and --count together, or a single --q",
            ))
        }
    };
    let code = if let Some(name) = &args.f {
        let f = lookup_function(name).map_err(|e| blame("--f", e))?;
        let rows = convergence_table(&p, &schedule, &f).map_err(|e| blame("--f", e))?;
        let report =
            Report::new(output::table_csv(&rows, f.name()), output::table_json(&rows, f.name()));
        emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
        0
    } else if !args.interval.is_empty() {
        let intervals: Vec<_> =
            args.interval.iter().map(|i| (i.a.clone(), i.b.clone())).collect();
        let rows = equidist::discrepancy::weak_convergence_study(&p, &schedule, &intervals)
            .map_err(|e| blame("--interval", e))?;
        let dominated = rows.iter().all(|row| row.d <= row.et_bound);
        let report = Report::new(output::study_csv(&rows), output::study_json(&rows));
        emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
        if dominated {
            0
        } else {
            EXIT_BOUND_FAIL
        }
    } else {
        return Err(Usage::new("--f", "provide --f for an error table or --interval for a study"));
    };
    Ok(code)
}

fn run_decay(args: &DecayArgs) -> Result<u8, Usage> {
    let f = match (&args.f, &args.interval) {
        (Some(name), None) => lookup_function(name).map_err(|e| blame("--f", e))?,
        (None, Some(interval)) => {
            let eps = args.eps.expect("clap enforces --eps with --interval");
            equidist::qmcint::TestFunction::smooth_indicator(
                interval.a_f64(),
                interval.b_f64(),
                eps,
            )
            .map_err(|e| blame("--eps", e))?
        }
        _ => return Err(Usage::new("--f", "provide either --f or --interval with --eps")),
    };
    let decay = fourier_decay_check(&f, args.q, args.big_h).map_err(|e| match e {
        LibError::NonSmoothFunction { .. } => blame("--f", e),
        LibError::NonPositiveH { .. } => blame("--big-h", e),
        _ => blame("--q", e),
    })?;
    let clean = decay.violations.is_empty();
    let report = Report::new(output::decay_csv(&decay), output::decay_json(&decay))
        .with_meta("f", f.name().to_string())
        .with_meta("violations", decay.violations.len());
    emit(&args.output, report).map_err(|e| Usage::new("--out", e))?;
    Ok(if clean { 0 } else { EXIT_BOUND_FAIL })
}
