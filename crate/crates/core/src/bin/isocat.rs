use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = isocat::cli::run(std::env::args_os());
    if let Some(json) = &out.json {
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(std::io::stdout(), "{json}");
    }
    if !out.message.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", out.message.trim_end());
    }
    ExitCode::from(out.code as u8)
}
