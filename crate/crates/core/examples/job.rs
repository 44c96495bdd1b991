//! Run a bundled job file in process and print the explanation of each report.

use std::path::Path;

use csa::job::{explain_value, run_job, Job};

fn main() -> csa::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/jobs/biquaternion.json");
    let job = Job::from_json(&std::fs::read_to_string(path)?)?;
    let out = run_job(&job, None)?;
    print!("{}", explain_value(&out.summary)?);
    for r in &out.reports {
        println!();
        print!("{}", explain_value(&serde_json::to_value(r).unwrap())?);
    }
    std::process::exit(out.exit_code());
}
