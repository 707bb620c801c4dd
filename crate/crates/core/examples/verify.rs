//! Runs every reproduction check and prints one line per check.
//!
//! ```text
//! cargo run --release --example verify
//! ```

use fanspline::verify::run_all;

fn main() {
    let outcomes = run_all();
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] {:>2} {} ({:.2?})\n       {}", o.id, o.title, o.elapsed, o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} passed", outcomes.len());
}
