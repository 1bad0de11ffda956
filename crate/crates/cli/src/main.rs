use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = cantor_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
        if !outcome.stderr.ends_with('\n') {
            eprintln!();
        }
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
