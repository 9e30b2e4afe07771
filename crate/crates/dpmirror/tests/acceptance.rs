//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so that every line is printed; exits
//! with status 1 if any criterion fails.

use std::process::ExitCode;

use dpmirror::report::{criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for i in 1..=CRITERIA.len() {
        match criterion(i) {
            Ok(c) => {
                println!("{} {}  measured {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.measured);
                if !c.pass {
                    println!("     expected {}", c.expected);
                    failed += 1;
                }
                if !c.note.is_empty() {
                    println!("     note: {}", c.note);
                }
            }
            Err(e) => {
                println!("FAIL {i}. {}  error: {e}", CRITERIA[i - 1]);
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
