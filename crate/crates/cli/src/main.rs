use std::io::{self, IsTerminal, Write};

fn main() {
    let mut stdin = io::stdin();
    let piped = !stdin.is_terminal();
    let out = ylocal_cli::run(
        std::env::args_os(),
        if piped { Some(&mut stdin) } else { None },
    );
    io::stdout().write_all(out.stdout.as_bytes()).ok();
    io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
