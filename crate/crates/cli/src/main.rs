use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twocolim_cli::commands::Command;
use twocolim_cli::report::Format;
use twocolim_cli::workspace::DEFAULT_MAX_ELAB;

#[derive(Parser)]
#[command(name = "twocolim", version, about = "Filtered 2-colimits, finite 2-limits and their interchange")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Largest category, in morphisms, that a presentation may elaborate to.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELAB)]
    max_elab: usize,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Parse and validate every entity.
    Validate { files: Vec<PathBuf> },
    /// Print every entity in canonical catml.
    Print { files: Vec<PathBuf> },
    /// Decide whether a category is filtered.
    Filtered {
        #[arg(long)]
        category: String,
        files: Vec<PathBuf>,
    },
    /// Build the 2-colimit of a pseudofunctor over a filtered index.
    Colim {
        #[arg(long)]
        pseudofunctor: String,
        files: Vec<PathBuf>,
    },
    /// Build the 2-limit of a pseudofunctor.
    Lim {
        #[arg(long)]
        pseudofunctor: String,
        files: Vec<PathBuf>,
    },
    /// Factor a cocone or cone through the universal one.
    Factor {
        #[arg(long)]
        pseudofunctor: String,
        #[arg(long, conflicts_with = "cone", required_unless_present = "cone")]
        cocone: Option<String>,
        #[arg(long)]
        cone: Option<String>,
        files: Vec<PathBuf>,
    },
    /// Compare colim-of-lims with lim-of-colims.
    Interchange {
        #[arg(long)]
        pseudofunctor: String,
        /// Build even over a non-filtered index.
        #[arg(long)]
        diagnostic_skip_filter_check: bool,
        files: Vec<PathBuf>,
    },
    /// Check the interchange on generated instances.
    Fuzz {
        #[arg(long)]
        cases: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, files) = match cli.command {
        Sub::Validate { files } => (Command::Validate, files),
        Sub::Print { files } => (Command::Print, files),
        Sub::Filtered { category, files } => (Command::Filtered { category }, files),
        Sub::Colim { pseudofunctor, files } => (Command::Colim { pseudofunctor }, files),
        Sub::Lim { pseudofunctor, files } => (Command::Lim { pseudofunctor }, files),
        Sub::Factor { pseudofunctor, cocone, cone, files } => (Command::Factor { pseudofunctor, cocone, cone }, files),
        Sub::Interchange { pseudofunctor, diagnostic_skip_filter_check, files } => (
            Command::Interchange {
                pseudofunctor,
                skip_filter_check: diagnostic_skip_filter_check,
            },
            files,
        ),
        Sub::Fuzz { cases, seed } => (Command::Fuzz { cases, seed }, Vec::new()),
    };
    let report = twocolim_cli::execute(&files, cli.max_elab, &cmd);
    let out = report.render(cli.format);
    let code = report.exit_code();
    if code >= 2 && cli.format == Format::Human {
        eprint!("{out}");
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
