//! The twelve acceptance criteria, one line each. Runs without the libtest
//! harness so the lines always reach stdout.
//!
//! Three criteria are red on purpose: each hits a printed value that the
//! computation contradicts. For those the test asserts that the failing
//! records are exactly the known ones, so any new failure still breaks it.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qism_ladder::cli::{run_suite, Report, Suite, SuiteConfig};
use qism_ladder::qism::{CheckRecord, TypeTag};

struct Outcome {
    pass: bool,
    detail: String,
    /// Failing ids of a criterion that is red for a documented reason.
    known_red: Option<(Vec<String>, &'static [&'static str])>,
    elapsed: Duration,
}

fn run(suites: &[Suite], types: &[TypeTag]) -> (Report, Duration) {
    let cfg = SuiteConfig { suites: suites.to_vec(), types: types.to_vec(), ..SuiteConfig::default() };
    let t = Instant::now();
    let r = run_suite(&cfg).expect("suite runs");
    (r, t.elapsed())
}

fn select<'a>(r: &'a Report, f: impl Fn(&CheckRecord) -> bool) -> Vec<&'a CheckRecord> {
    r.checks.iter().filter(|c| f(c)).collect()
}

fn failing(recs: &[&CheckRecord]) -> Vec<String> {
    recs.iter().filter(|c| !c.pass).map(|c| c.id.clone()).collect()
}

fn all_pass(recs: &[&CheckRecord], min: usize, limit: Option<Duration>, elapsed: Duration) -> Outcome {
    let bad = failing(recs);
    let slow = limit.is_some_and(|l| elapsed > l);
    let mut detail = format!("{} checks", recs.len());
    if !bad.is_empty() {
        detail += &format!(", failing {bad:?}");
    }
    if recs.len() < min {
        detail += &format!(", expected at least {min}");
    }
    if let Some(l) = limit {
        detail += &format!(", {:.1}s of {}s", elapsed.as_secs_f64(), l.as_secs());
    }
    Outcome { pass: bad.is_empty() && recs.len() >= min && !slow, detail, known_red: None, elapsed }
}

fn known_red(recs: &[&CheckRecord], min: usize, expected: &'static [&'static str], why: &str) -> Outcome {
    let bad = failing(recs);
    let mut o = all_pass(recs, min, None, Duration::ZERO);
    if !bad.is_empty() {
        o.detail = format!("{} checks, {why}: {bad:?}", recs.len());
    }
    o.known_red = Some((bad, expected));
    o
}

fn has(c: &CheckRecord, parts: &[&str]) -> bool {
    parts.iter().any(|p| c.id.contains(p))
}

fn main() -> ExitCode {
    use TypeTag::*;
    let mut lines: Vec<(usize, Outcome)> = Vec::new();

    // 1: B and D' against the defining relation, entry by entry
    let (q1_bd, t1) = run(&[Suite::Qism1], &[B, DPrime]);
    let recs = select(&q1_bd, |c| c.eq == "1.3" || c.id.contains(":["));
    lines.push((1, all_pass(&recs, 2 * 17, Some(Duration::from_secs(30)), t1)));

    // 2: genA and genC'' reflection, entries and unitarity
    let (q2, t2) = run(&[Suite::Qism2], &[]);
    let recs = select(&q2, |c| c.eq == "1.4" || c.id.contains(":[") || c.id.contains("unitarity"));
    lines.push((2, all_pass(&recs, 2 * 21, Some(Duration::from_secs(60)), t2)));

    // 3: basis-action operators at N = 12
    let (q1_basis, t3) = run(&[Suite::Qism1], &[A, CPrime, CDoublePrime]);
    assert_eq!(q1_basis.config.degree, 12);
    let recs = select(&q1_basis, |c| c.eq == "1.3" || c.id.contains(":["));
    lines.push((3, all_pass(&recs, 3 * 17, Some(Duration::from_secs(120)), t3)));

    // 4: determinants for all seven types
    let det = |c: &CheckRecord| has(c, &["det_formulas_agree", "det_declared", "q1_printed"]);
    let mut recs = select(&q1_bd, det);
    recs.extend(select(&q1_basis, det));
    recs.extend(select(&q2, det));
    lines.push((
        4,
        known_red(&recs, 7 * 2 + 5, &["qism1/D':q1_printed"], "printed Q1 = -1 for D' contradicts the computed Q1 = 1"),
    ));

    // 5: lemma equivalence and mutation sensitivity
    let lemma = |c: &CheckRecord| has(c, &["lemma_c_", "mutant_"]);
    let mut recs = select(&q1_bd, lemma);
    recs.extend(select(&q2, lemma));
    lines.push((
        5,
        known_red(
            &recs,
            4 * 3 + 16 + 14,
            &["qism1/D':mutant_C0_d0"],
            "for D' a shift of C0 by eps B0 is central (B0 = -1) and invisible to the defining relation",
        ),
    ));

    // 6: factorization, Miller forms, the Q-lemma identities and G(a,b)
    let (mg, t6) = run(&[Suite::Miller, Suite::Gab], &[]);
    let fact = |c: &CheckRecord| c.id.contains("factorization_");
    let mut recs = select(&q1_bd, fact);
    recs.extend(select(&q1_basis, fact));
    recs.extend(select(&q2, fact));
    recs.extend(select(&mg, |_| true));
    let miller_types: BTreeSet<&str> = mg
        .checks
        .iter()
        .filter_map(|c| c.id.strip_prefix("miller/miller_").and_then(|s| s.split(':').next()))
        .collect();
    assert!(miller_types.len() >= 8, "Miller coverage {miller_types:?}");
    let mut o6 = known_red(
        &recs,
        7 * 2 + 40,
        &["gab/g_ab_D':[J-,J+]", "miller/lemma42_D':4.27"],
        "the D' printed Q1 sign propagates into the second Q-lemma identity and [J-,J+]",
    );
    o6.elapsed = t6;
    lines.push((6, o6));

    // 7: numeric shift pairs at 192 bits, 5 points each
    let (pairs, t7) = run(&[Suite::Pairs], &[]);
    assert_eq!(pairs.config.precision, 192);
    assert!(pairs.config.samples >= 5);
    let recs = select(&pairs, |_| true);
    lines.push((7, all_pass(&recs, 11, Some(Duration::from_secs(60)), t7)));

    // 8: ladder strings; a flagged genC'' entry is a separate finding with
    // its own passing derived-Q0 check, so only unflagged records count
    let (strings, t8) = run(&[Suite::Strings], &[]);
    let recs = select(&strings, |c| !c.flagged);
    let mut o8 = all_pass(&recs, 11, None, t8);
    for id in ["string_A_jacobi", "string_B_laguerre", "string_Cp_laguerre", "string_Dp_hermite", "string_genA_finite", "string_genA_reflection"] {
        if !recs.iter().any(|c| c.id.ends_with(id) && c.pass) {
            o8.pass = false;
            o8.detail += &format!(", missing {id}");
        }
    }
    lines.push((8, o8));

    // 9: finite-string rank for n = 1, 2, 3
    let (p54, t9) = run(&[Suite::Prop54], &[]);
    let recs = select(&p54, |c| c.id.contains("finite_rank_n"));
    lines.push((9, all_pass(&recs, 3, None, t9)));

    // 10: U(e(3)); the losing delta candidate is reported, not required
    let (env, t10) = run(&[Suite::Envalg], &[]);
    let recs = select(&env, |c| !c.flagged);
    let mut o10 = all_pass(&recs, 4, None, t10);
    let winner = ["literal", "central(1)"].into_iter().find(|tag| {
        let ours = select(&env, |c| c.id.starts_with(&format!("envalg/e3:{tag}:")) && !c.id.ends_with("delta_central"));
        ours.len() == 11 && ours.iter().all(|c| c.pass)
    });
    match winner {
        Some(w) => o10.detail += &format!(", relations and X(u-1/2,+-) hold for delta candidate {w}"),
        None => {
            o10.pass = false;
            o10.detail += ", no delta candidate satisfies every relation";
        }
    }
    assert_eq!(env.config.words, 1000);
    lines.push((10, o10));

    // 11: rank-1 Jacobi identity
    let (jac, t11) = run(&[Suite::JacobiRank1], &[]);
    let recs = select(&jac, |_| true);
    lines.push((11, all_pass(&recs, 15, None, t11)));

    // 12: determinism over every suite
    let t = Instant::now();
    let (a, _) = run(&Suite::ALL, &[]);
    let (b, _) = run(&Suite::ALL, &[]);
    let same = a.without_timings().to_json() == b.without_timings().to_json();
    lines.push((
        12,
        Outcome {
            pass: same,
            detail: format!("{} checks, reports {}", a.checks.len(), if same { "byte-identical" } else { "differ" }),
            known_red: None,
            elapsed: t.elapsed(),
        },
    ));

    let mut unexpected = 0;
    for (n, o) in &lines {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {status}  {} [{:.2}s]", o.detail, o.elapsed.as_secs_f64());
        let expected_outcome = match &o.known_red {
            Some((bad, expected)) => {
                let got: BTreeSet<&str> = bad.iter().map(String::as_str).collect();
                let want: BTreeSet<&str> = expected.iter().copied().collect();
                got == want
            }
            None => o.pass,
        };
        if !expected_outcome {
            unexpected += 1;
            println!("             unexpected outcome for criterion {n}");
        }
    }
    let red = lines.iter().filter(|(_, o)| !o.pass).count();
    println!("acceptance: {} of {} criteria pass, {red} red, {unexpected} unexpected", lines.len() - red, lines.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
