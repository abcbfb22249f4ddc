use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mtdehn::{parse_spec, run_report, OracleMode, ReportOptions};

#[derive(Parser, Debug)]
#[command(name = "mtdehn", version, about = "Dehn functions of mapping tori of small RAAG automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify every automorphism in a spec file.
    Classify {
        file: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write growth and witness tables as CSV into this directory.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
        /// Largest power in growth tables.
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        /// Word length budget; a `run` directive in the file takes precedence.
        #[arg(long, env = "MTDEHN_BUDGET", default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Oracle::Tiny)]
        oracle: Oracle,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Oracle {
    Off,
    Tiny,
    Full,
}

impl From<Oracle> for OracleMode {
    fn from(o: Oracle) -> Self {
        match o {
            Oracle::Off => OracleMode::Off,
            Oracle::Tiny => OracleMode::Tiny,
            Oracle::Full => OracleMode::Full,
        }
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("mtdehn: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    // Usage errors exit with 1; 2 is reserved for heuristic verdicts.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Command::Classify {
        file,
        json,
        csv_dir,
        n_max,
        budget,
        oracle,
    } = cli.command;
    let text = match fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", file.display())),
    };
    let spec = match parse_spec(&text) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}: {e}", file.display())),
    };
    let opts = ReportOptions {
        n_max,
        budget,
        oracle: oracle.into(),
        ..ReportOptions::default()
    };
    let bundle = run_report(&spec, &opts);
    print!("{}", bundle.text);
    if let Some(errors) = bundle.json["errors"].as_array() {
        for e in errors {
            eprintln!("mtdehn: {}", e.as_str().unwrap_or_default());
        }
    }
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&bundle.json).expect("report serializes");
        if let Err(e) = fs::write(&path, body) {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    if let Some(dir) = csv_dir {
        if let Err(e) = fs::create_dir_all(&dir) {
            return fail(format!("{}: {e}", dir.display()));
        }
        for (name, body) in &bundle.csv {
            let path = dir.join(name);
            if let Err(e) = fs::write(&path, body) {
                return fail(format!("{}: {e}", path.display()));
            }
        }
    }
    ExitCode::from(bundle.exit_code as u8)
}
