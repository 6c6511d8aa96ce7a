//! Run a JSON job the way the command line tool does, writing into a
//! temporary directory.

use ruled_polar::job::{Job, JobConfig};

const CONFIG: &str = r#"{
  "surface": {"delta": "2 + sin(u)", "kappa": "cos(u)", "lambda": "u/5", "domain": [0, 3]},
  "normalization": {"family": "polar", "f": "2 + sin(V)"},
  "grid": {"u_count": 6, "v_range": [-2, 2], "v_count": 6},
  "outputs": {"csv": "table.csv", "obj": "mesh.obj", "report": "report.json"}
}"#;

fn main() -> ruled_polar::Result<()> {
    let out = std::env::temp_dir().join("ruled-polar-batch-job");
    let job = Job::new(JobConfig::from_json(CONFIG)?, &out, 1.0)?;

    let eval = job.run_eval()?;
    println!("{} rows", eval.rows.len());
    for p in eval.csv_path.iter().chain(eval.obj_path.iter()) {
        println!("wrote {}", p.display());
    }
    println!(
        "{}",
        eval.csv.lines().take(3).collect::<Vec<_>>().join("\n")
    );

    let verify = job.run_verify()?;
    println!(
        "{}  (exit code {})",
        verify.summary_line,
        verify.exit_code()
    );
    Ok(())
}
