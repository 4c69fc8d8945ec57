//! `sigkernel` command-line front-end.
//!
//! Exit codes: 0 success, 2 usage, parse or configuration errors, 3 data
//! shape errors, 4 numeric failures.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sigkernel_core::harness::{
    convergence_experiment, gram_matrix, min_eigenvalue, records_csv, records_long_csv,
    ExperimentConfig, PartitionRule,
};
use sigkernel_core::io::{logsig_csv, read_series_file};
use sigkernel_core::oracle::{direct_truncated_kernel, linear_kernel_closed_form, tail_bound};
use sigkernel_core::tensor::words;
use sigkernel_core::{
    build_pab, every_kth_time, solve, solve_order1, Error, TimeSeries, TruncTensor,
};

#[derive(Parser)]
#[command(
    name = "sigkernel",
    version,
    about = "Signature kernels of time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel of two series.
    Kernel {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        lift: LiftArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Log-signature of every partition interval.
    Logsig {
        input: PathBuf,
        #[command(flatten)]
        lift: LiftArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gram matrix of every `.csv` series in a directory.
    Gram {
        dir: PathBuf,
        #[command(flatten)]
        lift: LiftArgs,
        /// Fail with exit code 4 if the smallest eigenvalue is below -1e-8.
        #[arg(long)]
        check_psd: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brownian-motion convergence experiment.
    Convergence {
        /// JSON config; missing keys take their defaults, unknown keys are rejected.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the number of path pairs.
        #[arg(long)]
        pairs: Option<usize>,
        /// Also write per-pair errors in long format to this file.
        #[arg(long)]
        long_output: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Quick numerical self-checks.
    Selftest {
        /// Truncation level of the explicit-signature reference.
        #[arg(long, default_value_t = 12)]
        truncation: usize,
    },
}

#[derive(Args)]
struct LiftArgs {
    /// Degree of the piecewise log-linear lift.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    degree: u64,
    /// Partition at every k-th sample (the last sample is always included).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..), conflicts_with = "times")]
    every: u64,
    /// Explicit partition, comma separated sample times.
    #[arg(long, value_delimiter = ',')]
    times: Option<Vec<f64>>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Io(_) | Error::InvalidConfig(_) => 2,
            Error::NonFinite(_) => 4,
            _ => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

impl LiftArgs {
    fn degree(&self) -> usize {
        self.degree as usize
    }

    fn partition(&self, ts: &TimeSeries) -> Result<Vec<f64>, Error> {
        match &self.times {
            Some(t) => Ok(t.clone()),
            None => every_kth_time(ts, self.every as usize),
        }
    }
}

impl OutputArgs {
    fn emit(&self, text: &str) -> CmdResult {
        match &self.output {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Failure::usage(e.to_string()))
            }
        }
    }
}

fn json_text(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values always serialise");
    s.push('\n');
    s
}

fn cmd_kernel(x: &Path, y: &Path, lift: &LiftArgs, out: &OutputArgs) -> CmdResult {
    let tx = read_series_file(x)?;
    let ty = read_series_file(y)?;
    if tx.dim() != ty.dim() {
        return Err(Error::DimMismatch(tx.dim(), ty.dim()).into());
    }
    let px = build_pab(&tx, &lift.partition(&tx)?, lift.degree())?;
    let py = build_pab(&ty, &lift.partition(&ty)?, lift.degree())?;
    let value = if lift.degree() == 1 {
        solve_order1(&px.level1_increments(), &py.level1_increments(), false)?.value
    } else {
        solve(&px, &py, false)?.value
    };
    let text = match out.format {
        Format::Csv => format!("{value:.12}\n"),
        Format::Json => json_text(json!({
            "kernel": value,
            "degree": lift.degree(),
            "intervals": [px.intervals(), py.intervals()],
        })),
    };
    out.emit(&text)
}

fn cmd_logsig(input: &Path, lift: &LiftArgs, out: &OutputArgs) -> CmdResult {
    let ts = read_series_file(input)?;
    let p = build_pab(&ts, &lift.partition(&ts)?, lift.degree())?;
    let text = match out.format {
        Format::Csv => logsig_csv(&p),
        Format::Json => {
            let labels: Vec<String> = words(p.dim(), p.degree())
                .iter()
                .skip(1)
                .map(|w| w.label(p.dim()))
                .collect();
            let rows: Vec<_> = p
                .increments()
                .iter()
                .map(|inc| {
                    let (s, t) = inc.span();
                    json!({ "t_start": s, "t_end": t, "coeffs": &inc.tensor().coeffs()[1..] })
                })
                .collect();
            json_text(
                json!({ "dim": p.dim(), "degree": p.degree(), "words": labels, "intervals": rows }),
            )
        }
    };
    out.emit(&text)
}

fn series_in(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries =
        fs::read_dir(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::usage(format!(
            "no .csv files in {}",
            dir.display()
        )));
    }
    Ok(files)
}

fn cmd_gram(dir: &Path, lift: &LiftArgs, check_psd: bool, out: &OutputArgs) -> CmdResult {
    if lift.times.is_some() {
        return Err(Failure::usage("gram supports --every only"));
    }
    let files = series_in(dir)?;
    let dataset = files
        .iter()
        .map(|f| read_series_file(f))
        .collect::<Result<Vec<_>, _>>()?;
    let gram = gram_matrix(
        &dataset,
        lift.degree(),
        PartitionRule::Every(lift.every as usize),
    )?;
    if gram.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Failure::numeric("non-finite Gram entry"));
    }
    let names: Vec<String> = files
        .iter()
        .map(|f| {
            f.file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    let text = match out.format {
        Format::Csv => {
            let mut s = format!("file,{}\n", names.join(","));
            for (name, row) in names.iter().zip(&gram) {
                s.push_str(name);
                for v in row {
                    s.push_str(&format!(",{v}"));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => json_text(json!({ "files": names, "matrix": gram })),
    };
    out.emit(&text)?;
    if check_psd {
        let lambda = min_eigenvalue(&gram);
        eprintln!("min eigenvalue {lambda:e}");
        if lambda < -1e-8 {
            return Err(Failure::numeric(format!(
                "Gram matrix is not positive semi-definite: {lambda:e}"
            )));
        }
    }
    Ok(())
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig, Failure> {
    let Some(path) = path else {
        return Ok(ExperimentConfig::default());
    };
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_convergence(
    config: Option<&Path>,
    seed: Option<u64>,
    pairs: Option<usize>,
    long_output: Option<&Path>,
    out: &OutputArgs,
) -> CmdResult {
    let mut cfg = load_config(config)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(r) = pairs {
        cfg.repetitions = r;
    }
    cfg.validate()?;
    let records = convergence_experiment(&cfg)?;
    if let Some(path) = long_output {
        fs::write(path, records_long_csv(&records))
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    let text = match out.format {
        Format::Csv => records_csv(&records),
        Format::Json => json_text(json!({ "config": cfg, "records": records })),
    };
    out.emit(&text)
}

fn check(name: &str, ok: bool, detail: String) -> bool {
    println!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn cmd_selftest(truncation: usize) -> CmdResult {
    let mut ok = true;

    let a = TruncTensor::from_words(
        2,
        3,
        &[(&[], 0.5), (&[1], 1.0), (&[2, 1], -2.0), (&[1, 2, 2], 3.0)],
    )?;
    let b = TruncTensor::from_words(2, 3, &[(&[], 1.0), (&[2], 0.25), (&[1, 1], 1.5)])?;
    let c = TruncTensor::from_words(
        2,
        3,
        &[(&[1, 2], 2.0), (&[2, 1, 1], -1.0), (&[1, 2, 2], 0.5)],
    )?;
    let lhs = c.inner(&a.mul(&b)?)?;
    let rhs = TruncTensor::left_adjoint(&a, &c)?.inner(&b)?;
    ok &= check(
        "adjoint duality",
        (lhs - rhs).abs() < 1e-12,
        format!("{lhs} vs {rhs}"),
    );

    let cell = solve_order1(&[[1.0]], &[[1.0]], false)?.value;
    ok &= check(
        "single cell",
        cell == 2.25,
        format!("u = {cell}, expected 2.25"),
    );

    let exact = linear_kernel_closed_form(1.0, 20);
    let steps = vec![[1.0 / 64.0]; 64];
    let fine = solve_order1(&steps, &steps, false)?.value;
    ok &= check(
        "Bessel limit",
        (fine - exact).abs() < 1e-4,
        format!("u = {fine:.9}, closed form {exact:.9}"),
    );

    let x = TimeSeries::from_points(vec![
        vec![0.0, 0.0],
        vec![0.4, 0.1],
        vec![0.3, 0.6],
        vec![-0.2, 0.8],
    ])?;
    let y = TimeSeries::from_points(vec![vec![0.0, 0.0], vec![0.5, -0.3], vec![0.9, 0.2]])?;
    let reference = direct_truncated_kernel(&x, &y, truncation);
    let px = build_pab(&x, x.times(), 1)?.refine(64)?;
    let py = build_pab(&y, y.times(), 1)?.refine(64)?;
    let pde = solve(&px, &py, false)?.value;
    let bound = tail_bound(x.one_variation() * y.one_variation(), truncation);
    ok &= check(
        "oracle agreement",
        (pde - reference).abs() < 1e-5 + bound,
        format!("PDE {pde:.9}, truncated signatures {reference:.9} (n = {truncation}, tail bound {bound:.1e})"),
    );

    let p2 = build_pab(&x, x.times(), 2)?;
    let q2 = build_pab(&y, y.times(), 2)?;
    let xy = solve(&p2, &q2, false)?.value;
    let yx = solve(&q2, &p2, false)?.value;
    ok &= check("symmetry", (xy - yx).abs() < 1e-12, format!("{xy} vs {yx}"));

    if ok {
        Ok(())
    } else {
        Err(Failure::numeric("self-test failed"))
    }
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Kernel { x, y, lift, out } => cmd_kernel(x, y, lift, out),
        Command::Logsig { input, lift, out } => cmd_logsig(input, lift, out),
        Command::Gram {
            dir,
            lift,
            check_psd,
            out,
        } => cmd_gram(dir, lift, *check_psd, out),
        Command::Convergence {
            config,
            seed,
            pairs,
            long_output,
            out,
        } => cmd_convergence(
            config.as_deref(),
            *seed,
            *pairs,
            long_output.as_deref(),
            out,
        ),
        Command::Selftest { truncation } => cmd_selftest(*truncation),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sigkernel: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
