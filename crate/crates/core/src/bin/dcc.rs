use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = dcc_core::cli::dispatch(std::env::args_os(), &mut std::io::stdin().lock());
    let mut stream: Box<dyn Write> = if outcome.code == 2 {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = stream.write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.code as u8)
}
