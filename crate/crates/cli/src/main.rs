mod checks;
mod sweep;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;

use qhscatter::analytic::{
    single_delta_amplitudes, two_delta_amplitudes, SingleDeltaParams, TwoDeltaParams,
};
use qhscatter::boundstate::{
    large_l_kappa, pt_symmetry_check, solve_kappa, ThreeDeltaModel, DEFAULT_TOL,
};
use qhscatter::metric::{
    bare_wavefunction, conservation_residual, corrected_flux_factors, corrected_wavefunction,
};
use qhscatter::{scattering_coefficients, Error, Potential1D};

use sweep::SweepSpec;

/// Scattering sweeps for one-dimensional complex potentials.
///
/// Every data command writes CSV to stdout with a header row; numbers carry
/// 17 significant digits. QHSCATTER_THREADS caps the worker threads.
#[derive(Parser, Debug)]
#[command(name = "qhscatter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// iλ(δ(x − a) − δ(x + a)): closed form, with `agree` the largest
    /// deviation from the transfer-matrix amplitudes relative to max(|C|, |D|)
    TwoDelta {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(
            long = "sweep-k",
            value_name = "LO:HI:COUNT[:log]",
            allow_hyphen_values = true
        )]
        sweep_k: SweepSpec,
    },
    /// −iλ on (−a, 0), +iλ on (0, a)
    SquareWell {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(
            long = "sweep-k",
            value_name = "LO:HI:COUNT[:log]",
            allow_hyphen_values = true
        )]
        sweep_k: SweepSpec,
    },
    /// 2λ(1 + iε) δ(x) at k = qλ, with the first-order metric-corrected fluxes
    SingleDelta {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(
            long = "sweep-q",
            value_name = "LO:HI:COUNT[:log]",
            allow_hyphen_values = true
        )]
        sweep_q: SweepSpec,
    },
    /// Corrected wavefunction Ψ next to the bare ψ for the single delta
    MetricWave {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        #[arg(
            long = "sweep-x",
            value_name = "LO:HI:COUNT",
            allow_hyphen_values = true
        )]
        sweep_x: SweepSpec,
    },
    /// Bound state of −2αδ(x) + iλ(δ(x − L) − δ(x + L))
    BoundState {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(
            long = "sweep-L",
            value_name = "LO:HI:COUNT[:log]",
            allow_hyphen_values = true
        )]
        sweep_l: SweepSpec,
    },
    /// Scattering amplitudes for a potential read from a JSON document
    Scatter {
        #[arg(long)]
        potential: PathBuf,
        #[arg(
            long = "sweep-k",
            value_name = "LO:HI:COUNT[:log]",
            allow_hyphen_values = true
        )]
        sweep_k: SweepSpec,
    },
    /// Run the invariant suite; exit status 0 iff every check passes
    Check,
}

type Row = Vec<f64>;

struct Table {
    header: &'static [&'static str],
    /// name of the swept variable, for error reports
    variable: &'static str,
    /// fixed parameters, for error reports
    params: String,
}

enum Failure {
    /// bad user input: usage error, exit 2
    Usage(String),
    /// computation failed: exit 1
    Compute(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => exit_with_usage(e),
    };
    let name = subcommand_name(&cli.command);
    let result = match cli.command {
        Command::Check => return checks::run(),
        command => run(command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            let mut cmd = Cli::command();
            cmd.build();
            let sub = cmd
                .find_subcommand_mut(name)
                .expect("parsed subcommand exists");
            sub.error(clap::error::ErrorKind::ValueValidation, msg)
                .exit()
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// clap leaves the usage line out of some value errors; always show it.
fn exit_with_usage(e: clap::Error) -> ! {
    use clap::error::ErrorKind;
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
        || e.to_string().contains("Usage:")
    {
        e.exit();
    }
    let mut cmd = Cli::command();
    cmd.build();
    let usage = std::env::args()
        .nth(1)
        .and_then(|name| cmd.find_subcommand_mut(&name).map(|sub| sub.render_usage()))
        .unwrap_or_else(|| Cli::command().render_usage());
    eprint!("{e}");
    eprintln!("\n{usage}");
    std::process::exit(2);
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::TwoDelta { .. } => "two-delta",
        Command::SquareWell { .. } => "square-well",
        Command::SingleDelta { .. } => "single-delta",
        Command::MetricWave { .. } => "metric-wave",
        Command::BoundState { .. } => "bound-state",
        Command::Scatter { .. } => "scatter",
        Command::Check => "check",
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("QHSCATTER_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => builder = builder.num_threads(n),
            _ => {
                return Err(Failure::Usage(format!(
                    "QHSCATTER_THREADS must be an integer >= 1, got '{raw}'"
                )))
            }
        }
    }
    builder
        .build()
        .map_err(|e| Failure::Compute(format!("cannot start worker threads: {e}")))
}

/// Parameter problems are the user's; everything else is a computation error.
fn classify(e: Error, context: String) -> Failure {
    match e {
        Error::InvalidParameter(_) | Error::NonFinite(_) | Error::Json(_) => {
            Failure::Usage(format!("{e} ({context})"))
        }
        _ => Failure::Compute(format!("{e} ({context})")),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::TwoDelta { lambda, a, sweep_k } => {
            let table = Table {
                header: &["k", "ReC", "ImC", "ReD", "ImD", "R", "T", "total", "agree"],
                variable: "k",
                params: format!("lambda = {lambda}, a = {a}"),
            };
            TwoDeltaParams::new(lambda, a, 1.0).map_err(|e| classify(e, table.params.clone()))?;
            let potential =
                Potential1D::two_delta(lambda, a).map_err(|e| classify(e, table.params.clone()))?;
            emit(&table, &sweep_k, |k| {
                let closed = two_delta_amplitudes(&TwoDeltaParams::new(lambda, a, k)?)?;
                let transfer = scattering_coefficients(&potential, k)?;
                let scale = closed.refl.norm().max(closed.trans.norm());
                let agree = (closed.refl - transfer.refl)
                    .norm()
                    .max((closed.trans - transfer.trans).norm())
                    / scale;
                let s = closed.summary();
                let (c, d) = (closed.refl, closed.trans);
                Ok(vec![
                    k,
                    c.re,
                    c.im,
                    d.re,
                    d.im,
                    s.reflection,
                    s.transmission,
                    s.total,
                    agree,
                ])
            })
        }
        Command::SquareWell { lambda, a, sweep_k } => {
            let table = Table {
                header: &["k", "R", "T", "total"],
                variable: "k",
                params: format!("lambda = {lambda}, a = {a}"),
            };
            let well = Potential1D::imaginary_square_well(lambda, a)
                .map_err(|e| classify(e, table.params.clone()))?;
            emit(&table, &sweep_k, |k| {
                let s = scattering_coefficients(&well, k)?.summary();
                Ok(vec![k, s.reflection, s.transmission, s.total])
            })
        }
        Command::SingleDelta {
            lambda,
            epsilon,
            sweep_q,
        } => {
            let table = Table {
                header: &[
                    "q",
                    "R",
                    "T",
                    "total",
                    "corrected_incoming",
                    "corrected_R",
                    "corrected_T",
                    "conservation_residual",
                ],
                variable: "q",
                params: format!("lambda = {lambda}, epsilon = {epsilon}"),
            };
            SingleDeltaParams::new(lambda, epsilon, 1.0)
                .map_err(|e| classify(e, table.params.clone()))?;
            emit(&table, &sweep_q, |q| {
                let p = SingleDeltaParams::from_q(lambda, epsilon, q)?;
                let s = single_delta_amplitudes(&p)?.summary();
                let f = corrected_flux_factors(&p);
                Ok(vec![
                    q,
                    s.reflection,
                    s.transmission,
                    s.total,
                    f.incoming,
                    f.reflected,
                    f.transmitted,
                    conservation_residual(&p),
                ])
            })
        }
        Command::MetricWave {
            lambda,
            epsilon,
            q,
            sweep_x,
        } => {
            let table = Table {
                header: &[
                    "x", "Re_Psi", "Im_Psi", "abs2_Psi", "Re_psi", "Im_psi", "abs2_psi",
                ],
                variable: "x",
                params: format!("lambda = {lambda}, epsilon = {epsilon}, q = {q}"),
            };
            let p = SingleDeltaParams::from_q(lambda, epsilon, q)
                .map_err(|e| classify(e, table.params.clone()))?;
            let amps =
                single_delta_amplitudes(&p).map_err(|e| classify(e, table.params.clone()))?;
            emit(&table, &sweep_x, |x| {
                let big: Complex64 = corrected_wavefunction(x, &p)?;
                let bare = bare_wavefunction(x, &amps);
                Ok(vec![
                    x,
                    big.re,
                    big.im,
                    big.norm_sqr(),
                    bare.re,
                    bare.im,
                    bare.norm_sqr(),
                ])
            })
        }
        Command::BoundState {
            alpha,
            lambda,
            sweep_l,
        } => {
            let table = Table {
                header: &[
                    "L",
                    "kappa_exact",
                    "kappa_asymptotic",
                    "amp_defect",
                    "phase",
                ],
                variable: "L",
                params: format!("alpha = {alpha}, lambda = {lambda}"),
            };
            ThreeDeltaModel::new(alpha, lambda, 1.0)
                .map_err(|e| classify(e, table.params.clone()))?;
            emit(&table, &sweep_l, |l| {
                let m = ThreeDeltaModel::new(alpha, lambda, l)?;
                let s = solve_kappa(&m, DEFAULT_TOL)?;
                let pt = pt_symmetry_check(&s);
                Ok(vec![l, s.kappa, large_l_kappa(&m), pt.amp_defect, pt.phase])
            })
        }
        Command::Scatter { potential, sweep_k } => {
            let table = Table {
                header: &["k", "ReC", "ImC", "ReD", "ImD", "R", "T", "total"],
                variable: "k",
                params: format!("potential = {}", potential.display()),
            };
            let text = std::fs::read_to_string(&potential)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", potential.display())))?;
            let p = Potential1D::from_json(&text).map_err(|e| classify(e, table.params.clone()))?;
            emit(&table, &sweep_k, |k| {
                let a = scattering_coefficients(&p, k)?;
                let s = a.summary();
                Ok(vec![
                    k,
                    a.refl.re,
                    a.refl.im,
                    a.trans.re,
                    a.trans.im,
                    s.reflection,
                    s.transmission,
                    s.total,
                ])
            })
        }
        Command::Check => unreachable!("handled in main"),
    }
}

/// Evaluate every sweep point (in parallel) and print the rows in sweep order.
fn emit<F>(table: &Table, sweep: &SweepSpec, row: F) -> Result<(), Failure>
where
    F: Fn(f64) -> qhscatter::Result<Row> + Sync,
{
    let points = sweep.values();
    let pool = thread_pool()?;
    let rows: Vec<qhscatter::Result<Row>> =
        pool.install(|| points.par_iter().map(|&v| row(v)).collect());

    let mut lines = Vec::with_capacity(rows.len());
    for (v, r) in points.iter().zip(rows) {
        let values =
            r.map_err(|e| classify(e, format!("{} = {v}, {}", table.variable, table.params)))?;
        lines.push(values);
    }

    let stdout = io::stdout();
    let mut out = csv::Writer::from_writer(stdout.lock());
    let io_err = |e: csv::Error| Failure::Compute(format!("cannot write output: {e}"));
    out.write_record(table.header).map_err(io_err)?;
    for values in lines {
        out.write_record(values.iter().map(|v| format_number(*v)))
            .map_err(io_err)?;
    }
    out.flush()
        .map_err(|e| Failure::Compute(format!("cannot write output: {e}")))?;
    Ok(())
}

/// 17 significant digits, enough to round-trip any double.
fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}
