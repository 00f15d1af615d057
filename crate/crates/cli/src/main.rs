use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = recipdim_cli::run_args(std::env::args_os());
    let mut code = outcome.code;
    match (&outcome.json, &outcome.report) {
        (Some(path), Some(report)) if path.as_os_str() == "-" => print!("{}", report.to_json()),
        (Some(path), Some(report)) => {
            print!("{}", outcome.text);
            if let Err(e) = std::fs::write(path, report.to_json()) {
                eprintln!("cannot write {}: {e}", path.display());
                code = recipdim_cli::exit::UNSUPPORTED;
            }
        }
        _ if outcome.code == recipdim_cli::exit::PARSE && outcome.report.is_none() => eprint!("{}", outcome.text),
        _ => print!("{}", outcome.text),
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
