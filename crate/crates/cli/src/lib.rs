//! Command-line front end: argument model, report encodings and the three
//! subcommands. `main.rs` only parses arguments and forwards here so the
//! commands can be driven from tests.

pub mod args;
pub mod commands;
pub mod output;

pub use args::{Cli, Command, OutputFormat, PaperExampleArgs, PlanArgs, RoundingArg, RunArgs};
pub use commands::{cmd_paper_example, cmd_plan, cmd_run, CmdOutput, ExitCode};
