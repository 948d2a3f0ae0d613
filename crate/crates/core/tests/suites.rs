use hrl_core::harness::{verify_suite, Suite};

#[test]
fn every_suite_passes() {
    for s in Suite::ALL {
        let start = std::time::Instant::now();
        let rep = verify_suite(s);
        eprintln!("{} {:.2?}", s.name(), start.elapsed());
        for c in &rep.checks {
            eprintln!("  [{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        assert!(rep.pass(), "suite {} failed", s.name());
    }
}
