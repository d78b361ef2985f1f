//! Runs a handful of the named property checks and prints their JSON
//! reports, as `affschur verify <name>` does.

use affschur::verify::{self, Params};
use affschur::workspace::Workspace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::default();
    let params = Params {
        n: Some(2),
        r: Some(3),
        ..Params::default()
    };
    for name in ["kl-basics", "canonical", "cor-4.9", "involutions"] {
        let report = verify::run(&ws, name, &params)?;
        println!("{}", serde_json::to_string(&report)?);
        assert!(report.passed, "{name} failed");
    }
    Ok(())
}
