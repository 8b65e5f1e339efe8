use std::process::ExitCode;

use braidkit::cli::{run, EXIT_INPUT};

fn main() -> ExitCode {
    let result = run(std::env::args_os());
    if result.exit_code == EXIT_INPUT {
        if let Some(msg) = result.payload.get("error").and_then(|e| e.as_str()) {
            eprintln!("error: {msg}");
        }
    }
    println!("{}", result.output);
    ExitCode::from(result.exit_code as u8)
}
