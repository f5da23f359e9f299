use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(plawbg::cli::run(std::env::args_os()))
}
