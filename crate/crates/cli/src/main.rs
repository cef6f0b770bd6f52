use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = grfrob_cli::run_command(std::env::args_os());
    print!("{}", report.stdout());
    if let Some(e) = &report.error {
        eprintln!("{e}");
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(report.exit_code)
}
