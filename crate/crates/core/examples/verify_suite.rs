//! Runs a named property suite; pass the name as the first argument.

use largeset::verify::{run_suite, SUITES};
use largeset::Limits;

fn main() -> largeset::Result<()> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| SUITES[0].to_string());
    let checks = run_suite(&name, 2024, &Limits::default())?;
    for c in &checks {
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.subject,
            c.detail
        );
    }
    Ok(())
}
