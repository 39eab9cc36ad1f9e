use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let registry = bintrans::register_builtin_identities();
    let code = bintrans::cli::run(
        std::env::args_os(),
        &registry,
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
