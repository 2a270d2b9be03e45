use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(toric_cli::run(std::env::args_os()))
}
