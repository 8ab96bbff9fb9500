//! Running a suite from a TOML configuration, as the `heis` binary does.

use heis::suite::{run, RunConfig};

fn main() -> heis::Result<()> {
    let cfg = RunConfig::from_toml(
        r#"
        command = "verdict"
        field = "plane:0.3,0.1"
        out = "heis-out/verdict"
        "#,
    )?;
    let out = run(&cfg)?;
    print!("{}", out.summary);
    for c in &out.report.checks {
        println!(
            "{:<32} {:>12.3e} {}",
            c.name,
            c.measured,
            if c.passed { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}
