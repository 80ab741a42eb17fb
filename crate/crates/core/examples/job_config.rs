//! Runs verification suites from a JSON job description, the same input
//! the `knalg` binary reads.

use kn_algebra::cli::config::JobConfig;
use kn_algebra::cli::verify::run_suite;

fn main() -> kn_algebra::Result<()> {
    let cfg = JobConfig::from_json(
        r#"{
            "punctures": ["0", "1", "-1/2"],
            "window": [-2, 2],
            "algebra": "sl2",
            "projective_connection": "1/(z-1)",
            "depth": 2
        }"#,
    )?;
    for suite in ["duality", "cocycles", "affine"] {
        for rec in run_suite(&cfg, suite)? {
            println!("{:<13} {:<40} {}", rec.status, rec.name, rec.witness);
        }
    }
    Ok(())
}
