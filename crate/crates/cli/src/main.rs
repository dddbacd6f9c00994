use std::process::ExitCode;

fn main() -> ExitCode {
    let code = qembed_cli::parse_and_dispatch(std::env::args_os());
    ExitCode::from(code as u8)
}
