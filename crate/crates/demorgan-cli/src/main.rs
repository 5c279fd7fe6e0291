use std::process::ExitCode;

fn main() -> ExitCode {
    demorgan_cli::run()
}
