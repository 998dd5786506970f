use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = pseudoalg_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stdout.is_empty() && !out.stdout.ends_with('\n') {
        println!();
    }
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
