use clap::Parser;
use hochschild::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
