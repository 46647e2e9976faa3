//! Drive the suites from code instead of the command line and print the
//! markdown report for two of them.

use qism_ladder::cli::{run_suite, Suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig { suites: vec![Suite::Gab, Suite::Prop54], precision: 128, ..Default::default() };
    let report = run_suite(&cfg).expect("valid config");
    println!("{}", report.to_markdown());
    std::process::exit(i32::from(!report.ok()));
}
