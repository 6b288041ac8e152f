use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let code = hyptet::cli::run(&argv, &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
