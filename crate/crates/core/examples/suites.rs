//! Runs every verification suite with its default classes and prints a summary line each.

use std::time::Instant;

use relhom::verifier::{run_suite, SuiteConfig, SUITE_IDS};
use relhom::zm::Ring;

fn main() -> relhom::Result<()> {
    let config = SuiteConfig::new(Ring::new(4)?).with_samples(12).with_seed(1);
    for id in SUITE_IDS {
        let t = Instant::now();
        let suite = run_suite(id, &config)?;
        println!("{} ({:.1?})", suite.summary(), t.elapsed());
    }
    Ok(())
}
