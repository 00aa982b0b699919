use std::io::Write;
use std::time::Instant;

use clap::Parser;
use stringy_cli::{execute, Cli, EXIT_INPUT};

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let (text, code) = execute(&cli);
    // timing goes to stderr so stdout stays reproducible
    if code == EXIT_INPUT {
        eprint!("{text}");
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
        let _ = out.flush();
    }
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    std::process::exit(code);
}
