//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 I/O error.
//! CSV output has one header line; fractions are reduced and floats carry
//! 17 significant digits.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::approx_error::{
    error_grid, error_value, estimates, pow_by_squaring, select_degree_bound, select_degree_exact,
    DegreePlan,
};
use crate::chebyshev::ChebSeries;
use crate::combinatorics::rational_to_f64;
use crate::error::Error;
use crate::matpow::{
    auto_matpow, cheb_matpow, diff_norm2, norm2, parse_matrix_entries, parse_vector,
    repeated_matpow, SymMatrix,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "chebtrunc",
    version,
    about = "Truncated Chebyshev approximation of x^n on [-1, 1]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Chebyshev coefficients c_j of x^n
    Coeffs {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Last coefficient to list (defaults to n)
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact truncation error and its bounds for one (n, k)
    Error {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Smallest degree meeting a tolerance
    Degree {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
    },
    /// Compare x^n with phi_k at given points or on a Chebyshev grid
    Eval {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        k: u64,
        /// Comma-separated evaluation points
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "grid",
            required_unless_present = "grid"
        )]
        points: Vec<f64>,
        /// Number of Chebyshev nodes; the endpoints are added
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Error and bounds for k = 0..=kmax
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate A^n v with phi_k(A) v
    Matpow {
        /// Matrix file: dimension, then one row per line
        #[arg(long)]
        matrix: PathBuf,
        /// Vector file: whitespace-separated entries
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        eps: Option<f64>,
        #[arg(long)]
        k: Option<u64>,
        /// Also compute A^n v by n products and report the difference
        #[arg(long)]
        baseline: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bound,
    Exact,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Floats with 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Coeffs { n, k, format } => cmd_coeffs(n, k, format, out),
        Command::Error { n, k } => cmd_error(n, k, out),
        Command::Degree { n, eps, method } => cmd_degree(n, eps, method, out),
        Command::Eval { n, k, points, grid } => cmd_eval(n, k, &points, grid, out, err),
        Command::Table { n, kmax, out: path } => cmd_table(n, kmax, path, out),
        Command::Matpow {
            matrix,
            vector,
            n,
            eps,
            k,
            baseline,
            out: path,
        } => cmd_matpow(&matrix, &vector, n, eps, k, baseline, path, out, err),
    }
}

fn cmd_coeffs(n: u64, k: Option<u64>, format: Format, out: &mut dyn Write) -> CmdResult {
    let upto = k.unwrap_or(n);
    let series = ChebSeries::truncated_monomial(n, upto)?;
    match format {
        Format::Csv => {
            writeln!(
                out,
                "# x^{n} = c_0/2 + sum_(j>=1) c_j T_j(x): c_0 enters halved"
            )?;
            writeln!(out, "j,c_j,c_j_float")?;
            for j in 0..=upto as usize {
                let c = series.coeff(j);
                writeln!(out, "{j},{c},{}", fmt_f64(rational_to_f64(&c)))?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "x^{n} = c_0/2 + sum_(j>=1) c_j T_j(x)  (c_0 enters halved)"
            )?;
            for j in 0..=upto as usize {
                let c = series.coeff(j);
                writeln!(
                    out,
                    "c_{j:<6} {:<40} {}",
                    c.to_string(),
                    fmt_f64(rational_to_f64(&c))
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_error(n: u64, k: u64, out: &mut dyn Write) -> CmdResult {
    let r = estimates(n, k)?;
    writeln!(out, "n = {}", r.n)?;
    writeln!(out, "k = {}", r.k)?;
    writeln!(out, "exact = {}", r.exact)?;
    writeln!(out, "exact_float = {}", fmt_f64(r.exact_float))?;
    writeln!(out, "hoeffding = {}", fmt_f64(r.hoeffding))?;
    writeln!(out, "erfc_p_estimate = {}", fmt_f64(r.erfc_p_estimate))?;
    writeln!(
        out,
        "erfc_best_estimate = {}",
        fmt_f64(r.erfc_best_estimate)
    )?;
    writeln!(
        out,
        "provenance = {}",
        if r.is_log_space() {
            "log-space"
        } else {
            "exact"
        }
    )?;
    Ok(())
}

fn write_plan(plan: &DegreePlan, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "n = {}", plan.n)?;
    writeln!(out, "epsilon = {}", fmt_f64(plan.epsilon))?;
    writeln!(out, "method = {}", plan.method)?;
    writeln!(out, "k = {}", plan.k)?;
    writeln!(out, "achieved = {}", plan.achieved)?;
    writeln!(out, "achieved_float = {}", fmt_f64(plan.achieved.to_f64()))
}

fn cmd_degree(n: u64, eps: f64, method: MethodArg, out: &mut dyn Write) -> CmdResult {
    let plan = match method {
        MethodArg::Bound => select_degree_bound(n, eps)?,
        MethodArg::Exact => select_degree_exact(n, eps)?,
    };
    write_plan(&plan, out)?;
    Ok(())
}

fn cmd_eval(
    n: u64,
    k: u64,
    points: &[f64],
    grid: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let xs = match grid {
        Some(m) if m < 2 => {
            return Err(Failure::Domain(Error::GridTooSmall { got: m, min: 2 }));
        }
        Some(m) => error_grid(m),
        None => points.to_vec(),
    };
    if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Failure::Usage(format!("point {bad} is not finite")));
    }
    let phi = ChebSeries::truncated_monomial(n, k)?;
    writeln!(out, "x,x_pow_n,phi_k,abs_diff")?;
    for x in xs {
        let eval = phi.clenshaw_eval(x);
        if eval.out_of_domain {
            writeln!(
                err,
                "warning: x = {x} lies outside [-1, 1]; the error bound does not apply"
            )?;
        }
        let exact = pow_by_squaring(x, n);
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(x),
            fmt_f64(exact),
            fmt_f64(eval.value),
            fmt_f64((exact - eval.value).abs())
        )?;
    }
    Ok(())
}

fn cmd_table(n: u64, kmax: u64, path: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    if kmax > n {
        return Err(Failure::Domain(Error::DegreeTooLarge { k: kmax, n }));
    }
    let mut body = String::from("k,p_exact,hoeffding,erfc_p_estimate\n");
    for k in 0..=kmax {
        let r = estimates(n, k)?;
        body.push_str(&format!(
            "{k},{},{},{}\n",
            fmt_f64(r.exact_float),
            fmt_f64(r.hoeffding),
            fmt_f64(r.erfc_p_estimate)
        ));
    }
    emit(&body, path, out)
}

fn emit(body: &str, path: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => fs::write(&p, body)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(body.as_bytes()).map_err(Failure::from),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_matpow(
    matrix: &PathBuf,
    vector: &PathBuf,
    n: u64,
    eps: Option<f64>,
    k: Option<u64>,
    baseline: bool,
    path: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (dim, entries) = parse_matrix_entries(&read_input(matrix)?)
        .map_err(|e| Failure::Io(format!("{}: {e}", matrix.display())))?;
    let a = SymMatrix::new(dim, entries)?;
    let v = parse_vector(&read_input(vector)?)
        .map_err(|e| Failure::Io(format!("{}: {e}", vector.display())))?;

    let mut body = String::new();
    let (result, k_used, matvecs, warn) = match (eps, k) {
        (Some(eps), _) => {
            let o = auto_matpow(&a, &v, n, eps)?;
            body.push_str(&format!("# method = {}\n", o.plan.method));
            body.push_str(&format!("# epsilon = {}\n", fmt_f64(eps)));
            (o.result, o.k, o.matvecs, o.spectrum_warning)
        }
        (None, Some(k)) => {
            let o = cheb_matpow(&a, &v, n, k)?;
            (o.result, k, o.matvecs, o.spectrum_warning)
        }
        (None, None) => return Err(Failure::Usage("one of --eps or --k is required".into())),
    };
    if warn {
        writeln!(
            err,
            "warning: row-sum norm {} exceeds 1; spectrum in [-1, 1] not certified",
            a.row_sum_norm()
        )?;
    }
    let p = error_value(n, k_used)?.to_f64();
    body.push_str(&format!(
        "# n = {n}\n# k = {k_used}\n# matvecs = {matvecs}\n"
    ));
    body.push_str(&format!("# error_bound = {}\n", fmt_f64(p * norm2(&v))));
    if baseline {
        let (reference, _) = repeated_matpow(&a, &v, n)?;
        body.push_str(&format!(
            "# baseline_error_norm = {}\n",
            fmt_f64(diff_norm2(&result, &reference))
        ));
    }
    body.push_str("i,value\n");
    for (i, x) in result.iter().enumerate() {
        body.push_str(&format!("{i},{}\n", fmt_f64(*x)));
    }
    emit(&body, path, out)
}
