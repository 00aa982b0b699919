//! Command layer of the `stringy` binary: flag parsing, input loading and
//! deterministic reports.

pub mod args;
pub mod fusion_table;
pub mod report;
pub mod source;
pub mod transgress;
pub mod verify;

pub use args::{Cli, Command};
pub use report::{Entry, Report, Status};

/// Exit status for a successful run whose checks all passed.
pub const EXIT_PASS: i32 = 0;
/// Some check failed; the report carries a witness.
pub const EXIT_FAIL: i32 = 1;
/// Bad input: parse errors, caps, non-cocycles, unusable flags.
pub const EXIT_INPUT: i32 = 2;

/// Runs the command on a pool of `cli.workers` threads.
pub fn run(cli: &Cli) -> stringy_core::Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
        .map_err(|e| stringy_core::Error::usage(e.to_string()))?;
    let echo = cli.command.echo();
    pool.install(|| match &cli.command {
        Command::Verify(a) => verify::cmd_verify(a, cli.max_order, echo),
        Command::Transgress(a) => transgress::cmd_transgress(a, cli.max_order, echo),
        Command::FusionTable(a) => fusion_table::cmd_fusion_table(a, cli.max_order, echo),
    })
}

/// Rendered output and exit status.
pub fn execute(cli: &Cli) -> (String, i32) {
    match run(cli) {
        Ok(r) => {
            let text = if cli.json { r.render_json() } else { r.render_text() };
            (text, if r.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(e) => (format!("error: {e}\n"), EXIT_INPUT),
    }
}
