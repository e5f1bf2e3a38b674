use clap::Parser;

use paramcodes::cli::{run, Cli};
use paramcodes::error::error_json;

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("{}", error_json(&error));
        std::process::exit(1);
    }
}
