mod commands;
mod output;

use clap::Parser;

fn main() {
    let cli = commands::Cli::parse();
    std::process::exit(commands::run(cli));
}
