use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = uekit::cli::Cli::parse();
    let code = uekit::cli::run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}
