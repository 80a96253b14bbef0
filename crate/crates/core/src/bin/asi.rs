use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::init();
    ExitCode::from(asi_bench::cli::run(std::env::args_os()))
}
