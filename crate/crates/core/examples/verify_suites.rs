// SPDX-License-Identifier: Apache-2.0

// Run the fast verification suites and print their metrics.

use quadpeg::verify::{run_suite, Suite, SuiteOptions, SuiteReport};
use quadpeg::Result;

pub fn run_example() -> Result<Vec<SuiteReport>> {
    let mut opts = SuiteOptions::new(7);
    opts.samples = 1024;
    opts.quads = 3;
    opts.trials = 20_000;
    [Suite::AreaIdentity, Suite::Lemma4].into_iter().map(|s| run_suite(s, &opts)).collect()
}

#[allow(dead_code)]
fn main() -> Result<()> {
    for report in run_example()? {
        println!("{}: {}", report.suite, if report.pass { "pass" } else { "fail" });
        for (k, v) in &report.metrics {
            println!("  {k} = {v}");
        }
    }
    Ok(())
}
