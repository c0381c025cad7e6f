use std::io::Write;

use clap::Parser;

use bucolic_cli::{run, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| e.exit());
    let out = run(&cli, &argv, &mut std::io::stdin().lock());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
