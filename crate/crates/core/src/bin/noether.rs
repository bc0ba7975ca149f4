use std::io;
use std::process;

use clap::Parser;
use noether_core::cli::{run, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    let config = RunConfig::from(cli);
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = match run(&config, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(code) => code.code(),
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    process::exit(code);
}
