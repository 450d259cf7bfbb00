//! One PASS/FAIL line per acceptance criterion. Set AZTEC_SLOW=1 to extend
//! the symbolic ranges to the long-running orders.
//!
//! Criterion 10 (squares and hexagons) is expected to FAIL: the claimed
//! closed form does not hold for most orders, while the formula observed
//! here agrees with the oracle. Every other criterion must PASS.

use std::collections::BTreeMap;

use aztec_core::suites::{run_suite, CaseResult, SuiteOptions, SuiteResult};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: &'static str,
    /// Case-id prefixes that make up the criterion; empty means the whole suite.
    groups: &'static [&'static str],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "all-ones diamond is 2^{n(n+1)/2}, n <= 12",
        suite: "aztec-basic",
        groups: &["all-ones/"],
    },
    Criterion { id: 2, title: "pipeline = oracle on 50 random periods", suite: "aztec-basic", groups: &["oracle/"] },
    Criterion {
        id: 3,
        title: "cellular completion identity, 100 random trials",
        suite: "cellular-random",
        groups: &[],
    },
    Criterion { id: 4, title: "dungeon D symbolic values and counts", suite: "dungeon", groups: &[] },
    Criterion { id: 5, title: "delta-orbit periodicity and q-shift", suite: "orbit", groups: &[] },
    Criterion { id: 6, title: "weighted dungeon initial values", suite: "weighted-dungeon", groups: &[] },
    Criterion { id: 7, title: "dungeon E counts and recurrence", suite: "dungeon-E", groups: &[] },
    Criterion { id: 8, title: "quad-pattern column-pair recursion", suite: "yang", groups: &[] },
    Criterion { id: 9, title: "duplicate-pattern column-pair recursion", suite: "stanley", groups: &[] },
    Criterion { id: 10, title: "squares-and-hexagons closed form", suite: "hexsquare", groups: &["claim-"] },
    Criterion { id: 11, title: "dragon weights and regions", suite: "dragon", groups: &[] },
    Criterion { id: 12, title: "Blum tables and recurrence", suite: "blum", groups: &[] },
    Criterion {
        id: 13,
        title: "edges per row and column class",
        suite: "aztec-basic",
        groups: &["row-classes/", "col-classes/"],
    },
];

fn cases<'a>(r: &'a SuiteResult, groups: &[&'a str]) -> Vec<&'a CaseResult> {
    if groups.is_empty() {
        r.cases.iter().collect()
    } else {
        groups.iter().flat_map(|g| r.group(g)).collect()
    }
}

#[test]
fn acceptance() {
    let opts = SuiteOptions {
        trials: None,
        slow: std::env::var("AZTEC_SLOW").is_ok_and(|v| v == "1"),
        ..SuiteOptions::default()
    };
    let mut names: Vec<&str> = CRITERIA.iter().map(|c| c.suite).collect();
    names.sort();
    names.dedup();
    let results: BTreeMap<&str, SuiteResult> = std::thread::scope(|s| {
        let handles: Vec<_> =
            names.iter().map(|&n| (n, s.spawn(|| run_suite(n, &opts).expect("known suite")))).collect();
        handles.into_iter().map(|(n, h)| (n, h.join().expect("suite thread"))).collect()
    });

    let mut verdicts = BTreeMap::new();
    for c in CRITERIA {
        let r = &results[c.suite];
        let cs = cases(r, c.groups);
        assert!(!cs.is_empty(), "criterion {} selects no cases", c.id);
        let passed = cs.iter().filter(|x| x.pass).count();
        let ok = passed == cs.len();
        println!(
            "{} criterion {:>2}: {} [{}: {}/{}]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.suite,
            passed,
            cs.len()
        );
        for f in cs.iter().filter(|x| !x.pass) {
            println!("       {} expected {} got {}", f.id, f.expected, f.computed);
        }
        verdicts.insert(c.id, ok);
    }

    for (id, ok) in &verdicts {
        if *id == 10 {
            assert!(!ok, "criterion 10 was expected to fail");
        } else {
            assert!(ok, "criterion {id} failed");
        }
    }
    // The failure of criterion 10 is confined to the claimed form: the
    // observed formula and the oracle cross-checks in the same suite pass.
    let hex = &results["hexsquare"];
    for g in ["observed/", "oracle/"] {
        let cs: Vec<_> = hex.group(g).collect();
        assert!(!cs.is_empty() && cs.iter().all(|c| c.pass), "hexsquare {g} cases must pass");
    }
}
