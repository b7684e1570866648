//! Audits every corpus group and prints failing checks plus a tally.
//!
//! `cargo run --release -p classgraph --example audit_corpus -- [max_order]`

use std::time::Instant;

use classgraph::constructions::corpus::corpus;
use classgraph::theorems::{audit_all, summarize, Verdict};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(700);
    let start = Instant::now();
    let groups = corpus(max);
    eprintln!("{} groups in {:?}", groups.len(), start.elapsed());
    let mut reports = Vec::new();
    for entry in &groups {
        let t = Instant::now();
        let rs = audit_all(&entry.group, &entry.provenance).expect("audit runs");
        let dt = t.elapsed();
        if dt.as_millis() > 500 {
            eprintln!("slow: {} (order {}) {:?}", entry.provenance, entry.group.order(), dt);
        }
        for r in &rs {
            for c in &r.checks {
                if c.verdict == Verdict::Fail {
                    println!(
                        "FAIL {} [{}] {:?} sizes {:?}: {} {:?}",
                        r.group_name, r.n_description, r.shape.tag, r.class_sizes, c.theorem, c.notes
                    );
                }
            }
        }
        reports.extend(rs);
    }
    for (id, t) in summarize(&reports) {
        println!("{id:28} pass {:5} fail {:3} n/a {:5}", t.pass, t.fail, t.not_applicable);
    }
    eprintln!("{} pairs in {:?}", reports.len(), start.elapsed());
}
