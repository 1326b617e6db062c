use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = stringart::cli::run(std::env::args().skip(1));
    let result = if code <= stringart::cli::EXIT_NEGATIVE || text.starts_with('{') {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    if result.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
