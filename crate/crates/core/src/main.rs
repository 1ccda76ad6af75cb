use std::io::Write;

fn main() {
    let (out, code) = xmod::cli::run(std::env::args_os());
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    std::process::exit(code);
}
