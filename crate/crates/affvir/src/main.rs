use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(affvir::run(std::env::args_os()))
}
