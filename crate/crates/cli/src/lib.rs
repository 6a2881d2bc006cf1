//! The catml text format and the `twocolim` command-line driver.

pub mod commands;
pub mod elaborate;
pub mod error;
pub mod print;
pub mod report;
pub mod syntax;
pub mod workspace;

use std::path::PathBuf;

use commands::Command;
use report::Report;

/// Loads `files` and runs `cmd` against them.
pub fn execute(files: &[PathBuf], max_elab: usize, cmd: &Command) -> Report {
    let outcome = workspace::load_files(files, max_elab).and_then(|ws| commands::run(&ws, cmd));
    Report {
        command: cmd.echo(),
        outcome,
    }
}
