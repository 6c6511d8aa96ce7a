use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ruled_polar::job::{classification_json, exit, exit_code, Job};

/// Batch evaluation and verification of polar normalizations of ruled surfaces.
#[derive(Parser)]
#[command(name = "ruled-polar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the invariant table (CSV) and mesh (OBJ) named in the config.
    Eval(Common),
    /// Compare closed forms with the numerical oracles and write a JSON report.
    Verify(Common),
    /// Print the flatness/minimality/Pick/incompressibility predicates.
    Classify(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Directory that output paths in the config are relative to.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Multiplies every verification tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}

fn run(cmd: Command) -> ruled_polar::Result<i32> {
    let (Command::Eval(c) | Command::Verify(c) | Command::Classify(c)) = &cmd;
    let job = Job::load(&c.config, &c.out_dir, c.tol_scale)?;
    match cmd {
        Command::Eval(_) => {
            let out = job.run_eval()?;
            for p in out.csv_path.iter().chain(out.obj_path.iter()) {
                println!("wrote {}", p.display());
            }
            println!("{} points", out.rows.len());
            Ok(exit::OK)
        }
        Command::Verify(_) => {
            let out = job.run_verify()?;
            println!("{}", out.summary_line);
            if out.report.summary.flagged > 0 {
                println!(
                    "{} rows flagged against misprinted displays",
                    out.report.summary.flagged
                );
            }
            Ok(out.exit_code())
        }
        Command::Classify(_) => {
            print!("{}", classification_json(&job.run_classify()?));
            Ok(exit::OK)
        }
    }
}
