//! Run the self-checks and print the full reports.
//!
//!     cargo run --release --example verify

use sizegame::verify::{render, run_all, VerifyConfig};

fn main() {
    let reports = run_all(&VerifyConfig::default());
    print!("{}", render(&reports));
    if reports.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
