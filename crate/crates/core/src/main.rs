use clap::Parser;
use csl_core::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let status = run(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(status);
}
