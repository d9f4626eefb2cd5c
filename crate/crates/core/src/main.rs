use std::process::ExitCode;

fn main() -> ExitCode {
    tetrasolve::cli::main_with_args(std::env::args_os())
}
