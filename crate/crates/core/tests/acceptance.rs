//! Acceptance criteria A1 to A11, one line per criterion. Exits nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use lashof::verify::{suite, Status, VerifyConfig};

const CRITERIA: [(&str, &str); 11] = [
    ("A1", "q3x1"),
    ("A2", "eta-pushforward"),
    ("A3", "nilpotency"),
    ("A4", "hopf-one"),
    ("A5", "x-classes"),
    ("A6", "iota"),
    ("A7", "ker-r"),
    ("A8", "decompose"),
    ("A9", "desusp-count"),
    ("A10", "coherence"),
    ("A11", "w-classes"),
];

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for (id, name) in CRITERIA {
        let s = suite(name).expect("suite exists");
        let start = Instant::now();
        let checks = s.run(&cfg, false);
        let secs = start.elapsed().as_secs_f64();
        let bad: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).collect();
        let ok = !checks.is_empty() && bad.is_empty() && secs < 60.0;
        if !ok {
            failed += 1;
        }
        println!(
            "{id:<4} {} {name}: {} ({} checks, {secs:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            s.about,
            checks.len()
        );
        for c in bad {
            println!("       failed {}: {}", c.id, c.detail);
        }
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
