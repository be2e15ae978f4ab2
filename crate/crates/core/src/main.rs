use std::process::ExitCode;

fn main() -> ExitCode {
    steklov_shell::cli::run()
}
