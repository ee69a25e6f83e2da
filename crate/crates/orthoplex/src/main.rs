use clap::Parser;

use orthoplex::cli::{error_exit_code, execute, Cli};

fn main() {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.report.to_json());
            std::process::exit(outcome.exit_code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(error_exit_code(&err));
        }
    }
}
