//! Rendering of check reports: stable JSON (timings are fixed to zero so a
//! given configuration always produces byte-identical output; wall time goes
//! to stderr) and a plain text listing.

use dsbo_core::report::{CheckReport, Suite};
use serde_json::{json, Value};

pub fn check_to_json(c: &CheckReport) -> Value {
    json!({
        "check": c.check,
        "anchor": c.anchor,
        "status": c.status(),
        "details": c.details,
        "millis": 0,
    })
}

pub fn suite_to_json(s: &Suite) -> Value {
    json!({
        "suite": s.name,
        "status": if s.overall_pass() { "PASS" } else { "FAIL" },
        "checks": s.checks.iter().map(check_to_json).collect::<Vec<_>>(),
    })
}

pub fn suites_to_json(suites: &[Suite]) -> Value {
    let all = suites.iter().all(Suite::overall_pass);
    json!({
        "status": if all { "PASS" } else { "FAIL" },
        "suites": suites.iter().map(suite_to_json).collect::<Vec<_>>(),
    })
}

pub fn print_text(suites: &[Suite]) {
    for s in suites {
        println!("== suite {} ==", s.name);
        for c in &s.checks {
            if c.details.is_empty() {
                println!("[{}] {}", c.status(), c.check);
            } else {
                println!("[{}] {} ({})", c.status(), c.check, c.details);
            }
        }
        println!(
            "-- {}: {}/{} checks passed",
            s.name,
            s.checks.iter().filter(|c| c.pass).count(),
            s.checks.len()
        );
    }
}
