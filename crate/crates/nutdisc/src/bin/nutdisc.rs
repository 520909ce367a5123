use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(nutdisc::cli::run(std::env::args()) as u8)
}
