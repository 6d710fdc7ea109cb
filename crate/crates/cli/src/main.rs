use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exit = kmn_cli::app::run(std::env::args_os());
    print!("{}", exit.stdout);
    eprint!("{}", exit.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(exit.code as u8)
}
