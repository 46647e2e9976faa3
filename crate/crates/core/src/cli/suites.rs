//! One function per suite, each returning its records in a fixed order.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Suite, SuiteConfig};
use super::CliError;
use crate::envalg::{
    bubble_normal_order, casimir, casimir_tilde, check_hom, check_x_operators, normal_order, pbw_commutator,
    DeltaCandidate, Gen, PbwElement,
};
use crate::ladder::{
    check_annihilation, check_annihilation_with, check_prop54, family_operator_variant, finite_string_rank,
    reflection_gap, sample_points, verify_pair, verify_string, Annihilation, LadderError, StringDomain, StringRun,
};
use crate::qism::{
    build_l, Backend, check_factorization, check_jacobi_rank1, check_lemma42, check_lemma_c, check_miller, check_mutations,
    check_quantum_det, check_rmatrix, crosscheck_commutators, g_ab_for, random_mu, with_backend, CEntry, CheckRecord,
    Kind, LOperator, MillerTag, QismError, TypeTag, Variant,
};
use crate::specfun::{Family, FamilyId};
use crate::symcore::{q, qf, RatFunc, Q};

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, CliError> {
    Ok(match suite {
        Suite::Qism1 => operators(cfg, Kind::QismI)?,
        Suite::Qism2 => operators(cfg, Kind::QismII)?,
        Suite::Miller => miller(cfg),
        Suite::Gab => gab(cfg)?,
        Suite::Envalg => envalg(cfg),
        Suite::Pairs => pairs(cfg),
        Suite::Strings => strings(cfg),
        Suite::Prop54 => prop54(cfg),
        Suite::JacobiRank1 => jacobi_rank1(cfg),
    })
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn failed(id: String, eq: &str, backend: &str, msg: impl ToString) -> CheckRecord {
    CheckRecord::new(id, eq, backend).outcome(false, msg.to_string())
}

fn types(cfg: &SuiteConfig, kind: Kind) -> Vec<TypeTag> {
    TypeTag::ALL.into_iter().filter(|t| t.kind() == kind && cfg.wants(*t)).collect()
}

fn operator(cfg: &SuiteConfig, tag: TypeTag) -> Result<LOperator, CliError> {
    let vals = cfg.overrides(tag)?;
    let l = build_l(tag);
    Ok(if vals.is_empty() { l } else { l.specialize(&vals) })
}

fn algebraic(be_checks: Result<Vec<CheckRecord>, QismError>, name: &str) -> Vec<CheckRecord> {
    match be_checks {
        Ok(v) => v,
        Err(QismError::NotApplicable(_)) => Vec::new(),
        Err(e) => vec![failed(format!("{name}:error"), "-", "-", e)],
    }
}

fn standard_checks<Be: Backend>(be: &Be, l: &LOperator) -> Result<Vec<CheckRecord>, QismError> {
    let mut v = check_rmatrix(be, l)?.records;
    v.extend(crosscheck_commutators(be, l)?.records);
    let (d, det) = check_quantum_det(be, l)?;
    v.extend(d.records);
    if let Some(det) = det {
        v.extend(check_factorization(be, l, &det)?.records);
    }
    Ok(v)
}

/// The defining relation, the commutator lists, the determinant, the
/// factorization, the reduced relations and their mutation sensitivity.
fn operators(cfg: &SuiteConfig, kind: Kind) -> Result<Vec<CheckRecord>, CliError> {
    let mut out = Vec::new();
    for tag in types(cfg, kind) {
        let l = operator(cfg, tag)?;
        let recs = with_backend(&l, cfg.degree, |be| standard_checks(be, &l), |be| standard_checks(be, &l));
        out.extend(algebraic(recs, &l.name()));
        out.extend(check_lemma_c(&l).records);
        if matches!(l.c, CEntry::Diff(_)) {
            out.extend(algebraic(check_mutations(&l).map(|r| r.records), &format!("{}:mutants", l.name())));
        }
    }
    Ok(out)
}

fn miller(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let all = MillerTag::SIX.into_iter().chain([MillerTag::Hyper, MillerTag::Bessel]);
    for tag in all {
        out.extend(algebraic(check_miller(tag).map(|r| r.records), &format!("miller_{tag}")));
    }
    for tag in types(cfg, Kind::QismI) {
        out.extend(algebraic(check_lemma42(tag).map(|r| r.records), &format!("lemma42_{tag}")));
    }
    out
}

fn gab(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, CliError> {
    let mut out = Vec::new();
    for tag in types(cfg, Kind::QismI) {
        out.extend(g_ab_for(&operator(cfg, tag)?).records);
    }
    Ok(out)
}

fn random_word(rng: &mut ChaCha8Rng) -> Vec<Gen> {
    let len = rng.gen_range(2..=7);
    (0..len).map(|_| Gen::ALL[rng.gen_range(0..6)]).collect()
}

/// Product of the generators in `w` with a random bracketing.
fn random_bracketing(w: &[Gen], rng: &mut ChaCha8Rng) -> PbwElement {
    if w.len() == 1 {
        return PbwElement::gen(w[0]);
    }
    let cut = rng.gen_range(1..w.len());
    random_bracketing(&w[..cut], rng).mul(&random_bracketing(&w[cut..], rng))
}

fn envalg(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad = None;
    for i in 0..cfg.words {
        let w = random_word(&mut rng);
        let left = normal_order(&w);
        let right = w.iter().rev().fold(PbwElement::one(), |acc, g| PbwElement::gen(*g).mul(&acc));
        let mixed = random_bracketing(&w, &mut rng);
        if left != right || left != mixed || left != bubble_normal_order(&w) {
            bad = Some(format!("word {i}: {w:?}"));
            break;
        }
    }
    let rec = CheckRecord::new("e3:association", "R6.1", "pbw");
    out.push(match bad {
        None => rec.zero(),
        Some(m) => rec.outcome(false, m),
    }
    .timed(start));

    let start = Instant::now();
    let mut jac = PbwElement::zero();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let (x, y, z) = (PbwElement::gen(Gen::ALL[i]), PbwElement::gen(Gen::ALL[j]), PbwElement::gen(Gen::ALL[k]));
                let t = pbw_commutator(&pbw_commutator(&x, &y), &z)
                    .add(&pbw_commutator(&pbw_commutator(&y, &z), &x))
                    .add(&pbw_commutator(&pbw_commutator(&z, &x), &y));
                jac = jac.add(&t);
            }
        }
    }
    let rec = CheckRecord::new("e3:jacobi_20_triples", "R6.1", "pbw");
    out.push(if jac.is_zero() { rec.zero() } else { rec.outcome(false, jac.to_string()) }.timed(start));

    for (name, z) in [("casimir_C", casimir()), ("casimir_Ct", casimir_tilde())] {
        let start = Instant::now();
        let bad: Vec<String> = Gen::ALL
            .iter()
            .map(|g| (g, pbw_commutator(&z, &PbwElement::gen(*g))))
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| format!("[{name}, {g}] = {c}"))
            .collect();
        let rec = CheckRecord::new(format!("e3:{name}_central"), "R6.1", "pbw");
        out.push(if bad.is_empty() { rec.zero() } else { rec.outcome(false, bad.join("; ")) }.timed(start));
    }

    let candidates = [DeltaCandidate::Literal, DeltaCandidate::Central(q(1))];
    let runs: Vec<Vec<CheckRecord>> = candidates
        .iter()
        .map(|c| {
            let mut v = check_hom(c).records;
            v.extend(check_x_operators(c).records);
            v
        })
        .collect();
    // a candidate is accepted when the relations and the identification hold
    let accepted = |recs: &[CheckRecord]| {
        recs.iter().filter(|r| r.eq == "6.7" && !r.id.ends_with("delta_central") || r.eq == "R6.4").all(|r| r.pass)
    };
    let winner = runs.iter().position(|r| accepted(r));
    for (i, recs) in runs.into_iter().enumerate() {
        for r in recs {
            let rejected = winner.is_some() && winner != Some(i) && !r.pass;
            let flag = r.flagged || rejected;
            out.push(r.flag(flag));
        }
    }
    let rec = CheckRecord::new("e3:delta_candidate", "R6.1", "pbw");
    out.push(match winner {
        Some(i) => rec.outcome(true, format!("accepted {}", candidates[i])),
        None => rec.outcome(false, "no candidate satisfies the relations"),
    });
    out
}

/// A generic spectral parameter for each family.
fn generic_u(id: FamilyId) -> Q {
    match id {
        FamilyId::P5 => q(1),
        _ => qf(1, 3),
    }
}

fn pairs(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let p = cfg.precision;
    let mut out = Vec::new();
    for (i, id) in FamilyId::ALL.into_iter().enumerate() {
        let fam = Family::standard(id);
        let (e1, e2) = id.eqs();
        let key = format!("pair_{}_{}", e1.replace('.', "_"), e2.replace('.', "_"));
        let eq = format!("{e1}-{e2}");
        let start = Instant::now();
        let xs = sample_points(&fam, cfg.samples, cfg.seed.wrapping_add(i as u64));
        let rec = match verify_pair(&fam, &generic_u(id), &xs, p) {
            Ok(c) => {
                let detail = format!(
                    "{}; down {} expected {} spread {:.1e}; up {} expected {} spread {:.1e}",
                    sci(c.max_residual()),
                    c.down.measured.value.to_f64(),
                    c.down.expected,
                    c.down.measured.spread,
                    c.up.measured.value.to_f64(),
                    c.up.expected,
                    c.up.measured.spread
                );
                CheckRecord::new(format!("{key}:{id}"), eq, format!("mp{p}")).outcome(c.pass(), detail)
            }
            Err(e) => failed(format!("{key}:{id}"), &eq, &format!("mp{p}"), e),
        };
        out.push(rec.timed(start));
    }
    out
}

fn string_record(id: &str, p: usize, run: Result<StringRun, LadderError>, start: Instant) -> CheckRecord {
    let backend = format!("mp{p}");
    match run {
        Ok(run) => {
            let det = run.dets.iter().map(|d| d.rel_err).fold(0.0, f64::max);
            let detail = format!(
                "termination {}, det rel err {}, ratio spread {}",
                if run.termination_ok { "ok" } else { "wrong" },
                sci(det),
                sci(run.max_spread)
            );
            CheckRecord::new(id, "2.32-2.36", backend).outcome(run.pass(p), detail)
        }
        Err(e) => failed(id.into(), "2.32-2.36", &backend, e),
    }
    .timed(start)
}

fn annihilation_record(id: &str, eq: &str, p: usize, r: Result<Annihilation, LadderError>, start: Instant) -> CheckRecord {
    let backend = format!("mp{p}");
    match r {
        Ok(a) => {
            let worst = a.residuals.iter().cloned().fold(0.0, f64::max);
            CheckRecord::new(id, eq, backend).outcome(a.pass, sci(worst))
        }
        Err(e) => failed(id.into(), eq, &backend, e),
    }
    .timed(start)
}

fn strings(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let p = cfg.precision;
    let mut out = Vec::new();
    let a = qf(1, 3);
    let polynomial = [
        ("string_A_jacobi", Family::standard(FamilyId::P1), -a.clone()),
        ("string_B_laguerre", Family::standard(FamilyId::P6), -a.clone()),
        ("string_Cp_laguerre", Family::standard(FamilyId::P7), q(0)),
        ("string_Dp_hermite", Family::P9, q(0)),
    ];
    for (i, (id, fam, top)) in polynomial.into_iter().enumerate() {
        let start = Instant::now();
        let dom = StringDomain { u0: top.clone(), j_minus: None, j_plus: Some(1) };
        let xs = sample_points(&fam, cfg.samples, cfg.seed.wrapping_add(100 + i as u64));
        out.push(string_record(id, p, verify_string(&fam, &dom, &top, 3, &xs, p), start));
    }

    let start = Instant::now();
    let gen_a = Family::P3 { a: q(-2), c: qf(7, 4) };
    let dom = StringDomain { u0: q(-2), j_minus: Some(-1), j_plus: Some(5) };
    let xs = sample_points(&gen_a, cfg.samples, cfg.seed.wrapping_add(110));
    out.push(string_record("string_genA_finite", p, verify_string(&gen_a, &dom, &q(2), 4, &xs, p), start));
    let start = Instant::now();
    let rec = CheckRecord::new("string_genA_reflection", "6.16", format!("mp{p}"));
    out.push(
        match reflection_gap(&gen_a, &q(1), &xs, p) {
            Ok(g) => rec.outcome(g < cfg.tolerance(), format!("F(1)/F(-1) spread {}", sci(g))),
            Err(e) => rec.outcome(false, e.to_string()),
        }
        .timed(start),
    );

    let u = qf(1, 3);
    let far = [qf(3, 2), q(2), qf(5, 2)];
    let near = [qf(1, 5), qf(1, 3), qf(3, 5)];
    let cases: [(&str, &str, Family, &[Q]); 5] = [
        ("annihilate_B", "5.17", Family::standard(FamilyId::P6), &far),
        ("annihilate_Dp", "5.19", Family::P9, &far),
        ("annihilate_Cpp", "5.20", Family::P10, &far),
        ("annihilate_genA", "6.16", Family::standard(FamilyId::P3), &near),
        ("annihilate_genCpp", "6.17", Family::P8 { delta: qf(1, 8) }, &far),
    ];
    for (id, eq, fam, xs) in cases {
        let start = Instant::now();
        let mut rec = annihilation_record(id, eq, p, check_annihilation(&fam, &u, xs, p), start);
        if id == "annihilate_genCpp" && !rec.pass {
            // the printed C(u) carries Q0 = 1; the family needs Q0 = -1/4
            rec.residual = format!("{}; printed C(u) has Q0 = 1, F(u) needs Q0 = -1/4", rec.residual);
            rec = rec.flag(true);
        }
        out.push(rec);
    }
    let start = Instant::now();
    let fam = Family::P8 { delta: qf(1, 8) };
    let r = family_operator_variant(&fam, Variant::DerivedC0(RatFunc::rat(-1, 4)))
        .and_then(|l| check_annihilation_with(&l, &fam, &u, &far, p));
    out.push(annihilation_record("annihilate_genCpp_derived_q0", "6.14", p, r, start));
    out
}

fn prop54(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let p = cfg.precision;
    let mut out = Vec::new();
    let start = Instant::now();
    match check_prop54(&qf(2, 5), &qf(7, 4), 4) {
        Ok(r) => {
            let rec = CheckRecord::new("prop54:independence", "3.10-3.11", "exact");
            out.push(
                rec.outcome(r.degrees_ok && r.rank == r.m + 1 && r.actions_ok, format!("rank {} of {} rows", r.rank, r.m + 1))
                    .timed(start),
            );
            let rec = CheckRecord::new("prop54:c0_f0", "5.14", "exact");
            out.push(if r.c0_f0_zero { rec.zero() } else { rec.outcome(false, "C0 F(0) != 0") });
            for (name, cols, ok) in r.relations {
                let rec = CheckRecord::new(format!("prop54:{name}"), "5.7", "exact");
                out.push(if ok && cols > 0 { rec.zero() } else { rec.outcome(false, format!("{cols} columns checked")) });
            }
        }
        Err(e) => out.push(failed("prop54:error".into(), "5.7", "exact", e)),
    }
    for n in 1..=3 {
        let start = Instant::now();
        let id = format!("finite_rank_n{n}");
        out.push(
            match finite_string_rank(n, p) {
                Ok(r) => CheckRecord::new(id, "3.19-3.20", "exact").outcome(
                    r.pass(),
                    format!("rank {} of {} rows, expected {}", r.rank, 2 * n + 1, n + 1),
                ),
                Err(e) => failed(id, "3.19-3.20", "exact", e),
            }
            .timed(start),
        );
    }
    out
}

fn jacobi_rank1(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for trial in 0..5u64 {
            let start = Instant::now();
            let seed = cfg.seed.wrapping_mul(31).wrapping_add(10 * n as u64 + trial);
            let mu = random_mu(n, 8, seed);
            let ok = check_jacobi_rank1(n, &mu, 0, seed);
            let rec = CheckRecord::new(format!("jacobi_n{n}_mu{trial}"), "R5.1", "exact");
            out.push(if ok { rec.zero() } else { rec.outcome(false, "Jacobi identity fails") }.timed(start));
        }
    }
    out
}
