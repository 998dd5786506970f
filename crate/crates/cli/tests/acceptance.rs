//! One line per acceptance criterion. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pseudoalg::verify::{run_criterion, Suite, CRITERIA};

const BUDGETS: [(u8, u64); 10] = [(1, 1), (2, 1), (3, 10), (4, 30), (5, 10), (6, 10), (7, 5), (8, 5), (9, 30), (10, 180)];

fn budget(n: u8) -> Duration {
    Duration::from_secs(BUDGETS.iter().find(|(m, _)| *m == n).map(|(_, s)| *s).unwrap_or(0))
}

fn line(n: u8, title: &str, passed: bool, elapsed: Duration, detail: &str) -> bool {
    let within = elapsed < budget(n);
    let ok = passed && within;
    println!(
        "criterion {n:>2}: {}  {title} ({:.2?} of {:?}){detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget(n)
    );
    ok
}

fn main() -> ExitCode {
    let mut all = true;
    for (n, title) in CRITERIA {
        let started = Instant::now();
        let (passed, detail) = match run_criterion(n, Suite::Full) {
            Ok(r) => {
                let detail = r.problems.first().map(|p| format!(": {p}")).unwrap_or_default();
                (r.passed, detail)
            }
            Err(e) => (false, format!(": error: {e}")),
        };
        all &= line(n, title, passed, started.elapsed(), &detail);
    }

    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pseudoalg"))
        .args(["verify-classification", "--suite", "full"])
        .output();
    let (passed, detail) = match out {
        Ok(o) => (o.status.success(), format!(": exit {}", o.status.code().unwrap_or(-1))),
        Err(e) => (false, format!(": cannot spawn: {e}")),
    };
    all &= line(10, "full verification run through the command line", passed, started.elapsed(), &detail);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
