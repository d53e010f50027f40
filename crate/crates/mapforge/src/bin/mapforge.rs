use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = mapforge::cli::run(std::env::args_os());
    // A closed pipe on stdout is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = std::io::stdout().flush();
    let _ = std::io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
