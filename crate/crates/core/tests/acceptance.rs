//! Acceptance criteria, one line per criterion.
//!
//! A criterion whose only failures are documented deviations prints FAIL but
//! does not fail the target; any other failure does.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use superspectral::config::Config;
use superspectral::verify::{self, CheckRecord, Status};

const TITLES: [&str; 9] = [
    "Clifford suite",
    "Grassmann suite",
    "superspace operators",
    "chirality",
    "fluctuation case analysis",
    "action densities",
    "(D_A)^3 cross-check",
    "SUSY invariance",
    "distance",
];

/// Checks expected to fail against the displayed form.
const DEVIATIONS: [&str; 6] = [
    "superspace.variation_upper",
    "fluctuation.ko0",
    "fluctuation.ko2",
    "action.chiral_display",
    "action.fermionic_display",
    "cube.grouped",
];

/// Wall-time budgets in seconds, by criterion.
fn budget(criterion: u8) -> Option<f64> {
    match criterion {
        1 => Some(1.0),
        2 => Some(10.0),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cfg = Config::default().with_env().expect("seed override parses");
    let start = Instant::now();
    let report = verify::run(&cfg, None);
    let total = start.elapsed().as_secs_f64();

    let mut by_criterion: BTreeMap<u8, Vec<&CheckRecord>> = BTreeMap::new();
    for c in &report.checks {
        by_criterion.entry(c.criterion).or_default().push(c);
    }

    let mut regressions = Vec::new();
    for (k, checks) in &by_criterion {
        let secs: f64 = checks.iter().filter_map(|c| c.wall_time_ms).sum::<f64>() / 1e3;
        let over_budget = budget(*k).is_some_and(|b| secs > b);
        let failed: Vec<&str> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
        let verdict = if failed.is_empty() && !over_budget { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {k} ({}): {verdict} [{secs:.2}s]", TITLES[*k as usize - 1]);
        if !failed.is_empty() {
            line.push_str(&format!(" failing: {}", failed.join(", ")));
        }
        println!("{line}");
        for c in checks {
            if c.status == Status::Obstruction {
                println!("    {}: obstruction certificate, {}", c.id, c.detail.as_deref().unwrap_or(""));
            }
            if c.status == Status::Fail {
                println!("    {}: {}", c.id, c.detail.as_deref().unwrap_or(&c.residual));
            }
        }
        if over_budget {
            regressions.push(format!("criterion {k} over its time budget"));
        }
        for c in checks {
            let expected_fail = DEVIATIONS.contains(&c.id.as_str());
            match (c.status == Status::Fail, expected_fail) {
                (true, false) => regressions.push(format!("{} failed: {}", c.id, c.residual)),
                (false, true) => regressions.push(format!("{} now passes; update the deviation list", c.id)),
                _ => {}
            }
        }
    }
    let ko4 = report.checks.iter().find(|c| c.id == "fluctuation.ko4").expect("ko4 check");
    if ko4.status != Status::Obstruction {
        regressions.push("KO-4 obstruction certificate missing".into());
    }
    if total > 300.0 {
        regressions.push(format!("full suite took {total:.1}s"));
    }
    println!("full suite: {total:.2}s");

    if regressions.is_empty() {
        ExitCode::SUCCESS
    } else {
        for r in &regressions {
            eprintln!("regression: {r}");
        }
        ExitCode::FAILURE
    }
}
