use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use newton_zeta_cli::{parse_job, run, CliError, Overrides, ScopeArg, Task};

/// Monodromy zeta-functions from Newton polytopes.
///
/// Reads a JSON job document and writes the result document to stdout.
/// Exit status: 0 on success, 2 on bad input, 3 on a failed internal check.
#[derive(Parser, Debug)]
#[command(name = "newton-zeta", version)]
struct Args {
    task: Task,

    /// Job document; `-` reads standard input.
    input: PathBuf,

    /// Torus or whole affine space; ignored by euler and mixedvol.
    #[arg(long, value_enum)]
    scope: Option<ScopeArg>,

    /// Include the contribution of every factor.
    #[arg(long)]
    trace: bool,

    /// Worker threads; the output does not depend on this.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,

    /// Deformation variable (default: the last one).
    #[arg(long, value_name = "NAME")]
    deform_var: Option<String>,

    /// Also print the result in human-readable form on stderr.
    #[arg(long)]
    pretty: bool,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn execute(args: &Args) -> Result<(String, String), CliError> {
    let job = parse_job(&read_input(&args.input)?)?;
    let over = Overrides {
        task: Some(args.task),
        scope: args.scope,
        trace: args.trace,
        jobs: args.jobs,
        deform_var: args.deform_var.clone(),
    };
    let doc = run(&job, &over)?;
    Ok((doc.to_json()?, doc.summary()))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok((json, human)) => {
            println!("{json}");
            if args.pretty {
                eprintln!("{human}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("newton-zeta: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
