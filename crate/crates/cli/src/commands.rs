use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use grover_core::worked_example::{
    self, check_worked_example, relabel_matrix, simulated_matrices, tabulated_oracle,
    tabulated_q_times_four,
};
use grover_core::{
    make_plan, oracle_new, render_dense, run_grover, BasisIndex, GroverError, OperatorSpec,
    RunOptions,
};

use crate::args::{Cli, Command, OutputFormat, PaperExampleArgs, PlanArgs, RunArgs};
use crate::output::{self, Meta, PlanRow};

/// Largest register `--dense-dump` will print.
pub const DENSE_DUMP_MAX_QUBITS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: ExitCode,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput { code: ExitCode::Success, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        CmdOutput { code: ExitCode::Usage, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

pub fn dispatch(cli: Cli) -> CmdOutput {
    match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Plan(args) => cmd_plan(&args),
        Command::PaperExample(args) => cmd_paper_example(&args),
    }
}

fn validate_run(args: &RunArgs) -> Result<(), String> {
    if args.dense_dump && args.n > DENSE_DUMP_MAX_QUBITS {
        return Err(format!("--dense-dump needs --n <= {DENSE_DUMP_MAX_QUBITS}, got {}", args.n));
    }
    if args.dense_dump && args.format != OutputFormat::Table {
        return Err("--dense-dump is only available with --format table".into());
    }
    if matches!(args.iterations, Some(i) if i < 0) {
        return Err(format!("--iterations must be >= 0, got {}", args.iterations.unwrap_or(0)));
    }
    Ok(())
}

fn make_oracle(args: &RunArgs) -> Result<grover_core::OracleBox, GroverError> {
    oracle_new(args.n, args.target.map(BasisIndex::new), Some(args.seed))
}

pub fn cmd_run(args: &RunArgs) -> CmdOutput {
    if let Err(msg) = validate_run(args) {
        return CmdOutput::usage(msg);
    }
    let mut oracle = match make_oracle(args) {
        Ok(o) => o,
        Err(e) => return CmdOutput::usage(e),
    };
    let options = RunOptions {
        rounding: args.rounding.into(),
        shots: args.shots,
        seed: args.seed,
        iterations: args.iterations,
        full_amplitudes: args.trace && args.format == OutputFormat::Json,
    };
    let report = match run_grover(&mut oracle, options) {
        Ok(r) => r,
        Err(e) => return CmdOutput::usage(e),
    };

    let mut stdout = String::new();
    match args.format {
        OutputFormat::Table => {
            if args.dense_dump {
                // A fresh box, so the run's query count is not disturbed.
                let dumped = make_oracle(args).and_then(|mut o| {
                    let i = render_dense(OperatorSpec::Oracle(&mut o), args.n)?;
                    let q = render_dense(OperatorSpec::Grover(&mut o), args.n)?;
                    Ok((i, q))
                });
                match dumped {
                    Ok((i, q)) => {
                        stdout.push_str(&output::dense_table("I|x0>", &i));
                        stdout.push('\n');
                        stdout.push_str(&output::dense_table("Q", &q));
                        stdout.push('\n');
                    }
                    Err(e) => return CmdOutput::usage(e),
                }
            }
            stdout.push_str(&output::report_table(&report, args.trace));
        }
        OutputFormat::Json => {
            let meta = (!args.no_meta).then(|| Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: args.seed,
                timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            });
            match output::report_json(&report, meta) {
                Ok(s) => stdout.push_str(&s),
                Err(e) => return CmdOutput::usage(e),
            }
        }
        OutputFormat::Csv => match output::trace_csv(&report) {
            Ok(s) => stdout.push_str(&s),
            Err(e) => return CmdOutput::usage(e),
        },
    }
    CmdOutput::ok(stdout)
}

pub fn cmd_plan(args: &PlanArgs) -> CmdOutput {
    let mut rows = Vec::new();
    for n in args.n.clone() {
        match make_plan(n, args.rounding.into()) {
            Ok(plan) => rows.push(PlanRow::new(&plan)),
            Err(e) => return CmdOutput::usage(e),
        }
    }
    let stdout = match args.format {
        OutputFormat::Table => output::plan_table(&rows),
        OutputFormat::Json => match serde_json::to_string_pretty(&rows) {
            Ok(s) => s + "\n",
            Err(e) => return CmdOutput::usage(e),
        },
        OutputFormat::Csv => match output::plan_csv(&rows) {
            Ok(s) => s,
            Err(e) => return CmdOutput::usage(e),
        },
    };
    CmdOutput::ok(stdout)
}

/// Exact-match tolerance for the reference search.
const PAPER_TOL: f64 = 1e-12;

pub fn cmd_paper_example(args: &PaperExampleArgs) -> CmdOutput {
    let check = match check_worked_example(args.rounding.into(), PAPER_TOL) {
        Ok(c) => c,
        Err(e) => return CmdOutput::usage(e),
    };
    let (i5, q) = match simulated_matrices() {
        Ok(m) => m,
        Err(e) => return CmdOutput::usage(e),
    };
    let i5_ok = relabel_matrix(&tabulated_oracle()) == i5.real_rows();
    let q_table = relabel_matrix(&tabulated_q_times_four());
    let q_dev = q
        .scale(4.0)
        .real_rows()
        .iter()
        .flatten()
        .zip(q_table.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let q_ok = q_dev <= PAPER_TOL;

    let mut s = String::new();
    let _ = writeln!(s, "Reference search: N = 8 records, marked record x0 = {}", worked_example::TARGET.value());
    let _ = writeln!(s, "  K = round(pi/(4 asin(1/sqrt 8)) - 1/2) = {}", check.k_iterations);
    for item in check.items.iter().filter(|i| i.name.starts_with("psi")) {
        if item.name.ends_with("[0]") {
            let _ = write!(s, "  {:<5}", &item.name[..4]);
        }
        let _ = write!(s, " {:>9.6}", item.actual);
        if item.name.ends_with("[7]") {
            let _ = writeln!(s);
        }
    }
    let _ = writeln!(s, "  Prob_Success = 121/128 = {:.4} (simulated {:.6})", 121.0 / 128.0, check.success_prob);
    let _ = writeln!(s, "  Prob_Failure = 7/128 = {:.4} (simulated {:.6})", 7.0 / 128.0, check.failure_prob);
    let _ = writeln!(s, "  I|5> matrix matches table: {}", if i5_ok { "yes" } else { "NO" });
    let _ = writeln!(s, "  Q matrix matches table:    {} (max deviation {q_dev:.1e})", if q_ok { "yes" } else { "NO" });
    let _ = writeln!(
        s,
        "  (tables list the marked record in slot {}; compared after swapping slots 4 and 5)",
        worked_example::TABLE_MARKED_SLOT
    );

    let passed = check.passed() && i5_ok && q_ok;
    if passed {
        let _ = writeln!(s, "all {} checks passed", check.items.len() + 2);
        return CmdOutput::ok(s);
    }
    let _ = writeln!(s, "MISMATCHES:");
    for f in check.failures() {
        let _ = writeln!(s, "  {:<20} expected {:>12.9}  got {:>12.9}", f.name, f.expected, f.actual);
    }
    if !i5_ok {
        let _ = writeln!(s, "  I|5> matrix");
    }
    if !q_ok {
        let _ = writeln!(s, "  Q matrix");
    }
    CmdOutput { code: ExitCode::VerificationFailed, stdout: s, stderr: String::new() }
}
