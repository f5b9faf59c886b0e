use std::io::{stderr, stdout};

fn main() {
    let code = qcft_cli::run(std::env::args_os(), |k| std::env::var(k).ok(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
