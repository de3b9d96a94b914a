use std::io::Write;

use clap::Parser;
use grover_cli::{commands, Cli};

fn main() {
    let cli = Cli::parse();
    let out = commands::dispatch(cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code as i32);
}
