use std::io::{self, IsTerminal, Read, Write};
use std::process::ExitCode;

fn read_stdin() -> io::Result<Option<String>> {
    let stdin = io::stdin();
    if stdin.is_terminal() {
        return Ok(None);
    }
    let mut text = String::new();
    stdin.lock().read_to_string(&mut text)?;
    Ok(Some(text))
}

fn main() -> ExitCode {
    let outcome = quotvol_cli::run(std::env::args_os(), read_stdin);
    // A closed pipe is not worth a panic.
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
