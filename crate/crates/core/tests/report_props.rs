use proptest::prelude::*;

use qism_ladder::cli::{run_suite, Format, Report, Suite, SuiteConfig};
use qism_ladder::qism::CheckRecord;

fn record() -> impl Strategy<Value = CheckRecord> {
    ("[a-z][a-z0-9_:']{0,12}", "[0-9]\\.[0-9]{1,2}", any::<bool>(), any::<bool>(), "[ -~]{0,20}", 0u64..1000).prop_map(
        |(id, eq, pass, flagged, residual, ms)| {
            let mut r = CheckRecord::new(id, eq, "symbolic").outcome(pass, residual).flag(flagged && !pass);
            r.ms = ms;
            r
        },
    )
}

fn sections() -> impl Strategy<Value = Vec<(Suite, Vec<CheckRecord>)>> {
    prop::collection::vec(record(), 0..12).prop_map(|recs| {
        // ids made unique by position
        let recs = recs
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.id = format!("{}{i}", r.id);
                r
            })
            .collect();
        vec![(Suite::Qism1, recs)]
    })
}

proptest! {
    #[test]
    fn json_round_trip(secs in sections()) {
        let cfg = SuiteConfig { suites: vec![Suite::Qism1], ..SuiteConfig::default() };
        let r = Report::new(cfg, secs).unwrap();
        let back = Report::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(&back, &r);
        let s = &r.summary;
        prop_assert_eq!(s.pass + s.fail + s.flagged, r.checks.len());
    }

    #[test]
    fn markdown_has_a_row_per_check(secs in sections()) {
        let cfg = SuiteConfig { suites: vec![Suite::Qism1], ..SuiteConfig::default() };
        let r = Report::new(cfg, secs).unwrap();
        let md = r.render(Format::Markdown);
        let rows = md.lines().filter(|l| l.starts_with("| (")).count();
        prop_assert_eq!(rows, r.checks.len());
    }
}

#[test]
fn duplicate_ids_are_rejected() {
    let r = CheckRecord::new("x", "1.3", "symbolic").zero();
    let cfg = SuiteConfig { suites: vec![Suite::Qism1], ..SuiteConfig::default() };
    assert!(Report::new(cfg, vec![(Suite::Qism1, vec![r.clone(), r])]).is_err());
}

#[test]
fn reports_are_deterministic() {
    for seed in [0, 7] {
        let cfg = SuiteConfig {
            suites: vec![Suite::Pairs, Suite::Envalg, Suite::JacobiRank1],
            seed,
            words: 200,
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg).unwrap().without_timings().to_json();
        let b = run_suite(&cfg).unwrap().without_timings().to_json();
        assert_eq!(a, b, "seed {seed}");
    }
}
