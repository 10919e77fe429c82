use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let refs: Vec<&str> = argv.iter().map(|s| s.as_str()).collect();
    let mut out = String::new();
    let code = latmeas_cli::run(&refs, &mut out);
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    ExitCode::from(code as u8)
}
