use zariski_core::fixtures;
use zariski_core::{verify_suite, Suite};

fn run(suite: Suite) {
    for (name, s) in fixtures::all_named() {
        let r = verify_suite(&s.fan, suite).unwrap();
        for c in &r.checks {
            println!(
                "{name} {suite} {}: passed={} samples={} skipped={} {:?} {:?}",
                c.name, c.passed, c.samples, c.skipped, c.witness, c.note
            );
        }
        assert!(r.passed, "{name}: {r:#?}");
    }
}

#[test]
fn fkl() {
    run(Suite::Fkl);
}

#[test]
fn okounkov() {
    run(Suite::Okounkov);
}

#[test]
fn growth() {
    run(Suite::Growth);
}

#[test]
fn rr() {
    run(Suite::Rr);
}

#[test]
fn scan() {
    run(Suite::Scan);
}
