use std::process::ExitCode;

fn main() -> ExitCode {
    steplang::cli::main_with(std::env::args())
}
