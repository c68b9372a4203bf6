//! Acceptance run: one PASS/FAIL line per criterion, then a check that the
//! failing set is exactly the known one.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relq::oracle::corpus::{curated, generate_corpus, Corpus};
use relq::oracle::laws::{run_laws, LAWS};
use relq::oracle::suites::{run_suite, Outcome, SuiteConfig, SuiteReport};
use relq::quantale::{odot, quantale_conditions, unit_report, AtomRelationIso, Condition, ConditionOptions};
use relq::tensor::DEFAULT_GUARD;
use relq::{AugmentedPoset, FamilyKind, FinitePoset, Relation, RelationQuantale, Side, TensorBase, TensorQuantale};

/// Criteria whose clauses do not hold as stated; see the README.
const EXPECTED_FAILURES: [usize; 2] = [3, 7];

const SEED: u64 = 42;
const CASES: usize = 1000;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($why:tt)+) => {
        if !$cond {
            return Err(format!($($why)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {:.2}s, limit {:.0}s", took.as_secs_f64(), limit.as_secs_f64()));
    }
    Ok(())
}

fn suite(id: &str, corpus: &Corpus) -> Result<SuiteReport, String> {
    run_suite(id, corpus, &SuiteConfig::default()).map_err(|e| e.to_string())
}

fn outcome(rep: &SuiteReport, name: &str) -> Result<Outcome, String> {
    rep.member(name).map(|m| m.outcome).ok_or_else(|| format!("{} has no member {name}", rep.id))
}

/// Condition lines `(x) ...` of a member, keyed by their letter.
fn condition_lines<'a>(rep: &'a SuiteReport, name: &str) -> Vec<(char, &'a str)> {
    rep.member(name)
        .map(|m| {
            m.details
                .iter()
                .filter_map(|l| {
                    let rest = l.strip_prefix('(')?;
                    let c = rest.chars().next()?;
                    rest[c.len_utf8()..].strip_prefix(") ").map(|v| (c, v))
                })
                .collect()
        })
        .unwrap_or_default()
}

fn subset(a: &BTreeSet<(u8, u8)>, b: &BTreeSet<(u8, u8)>) -> bool {
    a.is_subset(b)
}

// ---- 1 ----

const PRINTED_ROWS: [&str; 6] = [
    "R0 R0 R0 R0 R0 R0 R0",
    "R1 R0 R1 R2 R1 R2 R2",
    "R2 R0 R1 R2 R1 R2 R2",
    "R3 R0 R3 R5 R3 R5 R5",
    "R4 R0 R3 R5 R3 R5 R5",
    "R5 R0 R3 R5 R3 R5 R5",
];

const PRINTED_MEMBERS: [&str; 6] = [
    "R0 = {}",
    "R1 = {(1,1)}",
    "R2 = {(1,1) (1,2)}",
    "R3 = {(1,1) (2,1)}",
    "R4 = {(1,1) (1,2) (2,1)}",
    "R5 = {(1,1) (1,2) (2,1) (2,2)}",
];

fn parse_pairs(set: &str) -> BTreeSet<(u8, u8)> {
    set.trim_matches(|c| c == '{' || c == '}')
        .split_whitespace()
        .map(|p| {
            let b = p.as_bytes();
            (b[1] - b'0', b[3] - b'0')
        })
        .collect()
}

fn criterion1() -> Check {
    let start = Instant::now();
    let out = relq_cli::run_command(["relq", "mult", "CHAIN3", "--table"]);
    ensure!(out.code == 0, "exit {}: {}", out.code, out.stderr);
    let lines: Vec<&str> = out.stdout.lines().collect();
    ensure!(lines.first() == Some(&"⊙  R0 R1 R2 R3 R4 R5"), "header {:?}", lines.first());
    let mut cells = 0;
    for (i, want) in PRINTED_ROWS.iter().enumerate() {
        let got = lines.get(1 + i).copied().unwrap_or("");
        let same = got.split_whitespace().zip(want.split_whitespace()).filter(|(a, b)| a == b).count();
        ensure!(got.split_whitespace().count() == 7, "row {i}: {got:?}");
        cells += same - 1;
    }
    ensure!(cells == 36, "{cells}/36 cells equal the printed table");
    for want in PRINTED_MEMBERS {
        ensure!(lines.contains(&want), "missing member line {want:?}");
    }

    // Laws recomputed from the printed output alone.
    let members: Vec<BTreeSet<(u8, u8)>> = PRINTED_MEMBERS.iter().map(|l| parse_pairs(&l[5..])).collect();
    let table: Vec<Vec<usize>> = PRINTED_ROWS
        .iter()
        .map(|r| r.split_whitespace().skip(1).map(|c| c[1..].parse().unwrap()).collect())
        .collect();
    let n = members.len();
    let join = |a: usize, b: usize| -> usize {
        let u: BTreeSet<(u8, u8)> = members[a].union(&members[b]).copied().collect();
        (0..n)
            .filter(|&k| subset(&u, &members[k]))
            .min_by_key(|&k| members[k].len())
            .expect("a member contains every union")
    };
    let m = |a: usize, b: usize| table[a][b];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                ensure!(m(m(x, y), z) == m(x, m(y, z)), "not associative at R{x} R{y} R{z}");
                ensure!(m(x, join(y, z)) == join(m(x, y), m(x, z)), "left distributivity fails at R{x} R{y} R{z}");
                ensure!(m(join(y, z), x) == join(m(y, x), m(z, x)), "right distributivity fails at R{x} R{y} R{z}");
            }
        }
    }
    ensure!(m(2, 3) == 1 && m(3, 2) == 5, "R2⊙R3 = R{}, R3⊙R2 = R{}", m(2, 3), m(3, 2));
    let units: Vec<usize> = (0..n).filter(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x)).collect();
    ensure!(units.is_empty(), "unit R{}", units[0]);
    ensure!(out.stdout.contains("quantale: true") && out.stdout.contains("unit: none"), "CLI summary:\n{}", out.stdout);
    within(Duration::from_secs(1), start)?;
    Ok("36/36 cells, associative, distributive, R2⊙R3=R1 ≠ R5=R3⊙R2, no unit".into())
}

// ---- 2 ----

fn criterion2(corpus: &Corpus) -> Check {
    let start = Instant::now();
    let rep = suite("thm82", corpus)?;
    ensure!(rep.ok(), "{} members disagree", rep.failed());
    ensure!(rep.skipped() == 0, "{} members skipped", rep.skipped());
    for name in ["M3", "N5", "CHAIN2", "CHAIN3", "CHAIN4", "CHAIN5", "CHAIN6", "B4", "B8"] {
        let want = name != "M3";
        let lines = condition_lines(&rep, name);
        ensure!(lines.len() >= 8, "{name}: {} condition lines", lines.len());
        for (c, v) in lines {
            if v.starts_with("skipped") {
                continue;
            }
            ensure!(v.starts_with(if want { "true" } else { "false" }), "{name} ({c}) {v}");
        }
    }

    let m3 = FinitePoset::m3();
    let base = TensorBase::lattice_square("B", &m3);
    let labels = base.left().labels().to_vec();
    let at = |l: &str| labels.iter().position(|x| x == l).expect("M3 label");
    let (a, b, c) = (at("a"), at("b"), at("c"));
    let (ab, ac, aa) = (base.pure(a, b), base.pure(a, c), base.pure(a, a));
    let joined = base.t_bar(&ab.union(&ac));
    let od = |r: &Relation, s: &Relation| odot(&base, &base, r, s).map_err(|e| e.to_string());
    let lhs = od(&joined, &aa)?;
    let rhs = base.t_bar(&od(&ab, &aa)?.union(&od(&ac, &aa)?));
    ensure!(lhs == aa, "(↓(a,b)∨↓(a,c))⊙↓(a,a) = {}", base.fmt(&lhs));
    ensure!(rhs.is_empty(), "↓(a,b)⊙↓(a,a) ∨ ↓(a,c)⊙↓(a,a) = {}", base.fmt(&rhs));
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{} lattices agree, M3 false everywhere with (↓(a,b)∨↓(a,c))⊙↓(a,a) = {} vs ∅",
        rep.total(),
        base.fmt(&lhs)
    ))
}

// ---- 3 ----

fn brute_units(tq: &TensorQuantale) -> Vec<usize> {
    let n = tq.len();
    (0..n).filter(|&e| (0..n).all(|x| tq.mul(e, x) == x && tq.mul(x, e) == x)).collect()
}

fn criterion3() -> Check {
    let mut notes = Vec::new();
    for (name, p, atoms) in [
        ("B4", FinitePoset::powerset(&["p", "q"]), 2usize),
        ("B8", FinitePoset::powerset(&["p", "q", "r"]), 3),
    ] {
        let base = TensorBase::lattice_square("B", &p);
        let tq = TensorQuantale::new(base.clone(), DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let side = base.left();
        let diag = p.atoms().into_iter().filter_map(|x| side.new_index(x)).map(|x| (x, x));
        let identity = Relation::from_pairs(base.rows(), base.cols(), diag);
        ensure!(tq.to_finite().check().is_quantale(), "{name}: not a quantale");
        let units = brute_units(&tq);
        ensure!(
            units.len() == 1 && tq.family().get(units[0]) == &identity,
            "{name}: units {:?}, I_A = {}",
            units.iter().map(|&u| base.fmt(tq.family().get(u))).collect::<Vec<_>>(),
            base.fmt(&identity)
        );
        let report = unit_report(&tq).map_err(|e| e.to_string())?;
        ensure!(report.identity == identity && report.identity_neutral, "{name}: unit report disagrees");
        let iso = AtomRelationIso::new(&base).map_err(|e| e.to_string())?;
        let rep = iso.check(&tq, CASES, &mut ChaCha8Rng::seed_from_u64(SEED));
        ensure!(rep.holds(), "{name}: isomorphism fails: {rep:?}");
        ensure!(rep.atoms == atoms && rep.tensors == 1 << (atoms * atoms), "{name}: {rep:?}");
        if name == "B4" {
            ensure!(rep.table_products == 256, "B4: {} products", rep.table_products);
        } else {
            let pure = base.rows() * base.cols();
            ensure!(rep.triples >= CASES && rep.pure_products == pure * pure, "B8: {rep:?}");
        }
        notes.push(format!("{name} unit {}", base.fmt(&identity)));
    }
    for (name, p) in [("CHAIN3", FinitePoset::chain(3)), ("M3", FinitePoset::m3())] {
        let base = TensorBase::lattice_square("B", &p);
        let tq = TensorQuantale::new(base.clone(), DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let units = brute_units(&tq);
        ensure!(
            units.is_empty(),
            "{name} has unit {} among {} tensors; notes: {}",
            base.fmt(tq.family().get(units[0])),
            tq.len(),
            notes.join(", ")
        );
        notes.push(format!("{name} no unit"));
    }
    Ok(notes.join(", "))
}

// ---- 4 ----

fn criterion4() -> Check {
    let start = Instant::now();
    let rep = suite("thm32", &curated())?;
    let spaces: Vec<_> = rep.members.iter().filter(|m| m.name.contains('*')).collect();
    ensure!(spaces.len() >= 5, "{} space pairs", spaces.len());
    for m in &spaces {
        ensure!(m.outcome == Outcome::Pass, "{} {}: {:?}", m.name, m.outcome.as_str(), m.details);
    }
    for name in ["D2*D2", "PI3*PI3", "NONT0*NONT0", "D2*NONT0", "PI3*D2"] {
        ensure!(outcome(&rep, name)? == Outcome::Pass, "{name} did not pass");
    }
    ensure!(rep.ok(), "{} ideal members failed", rep.failed());
    within(Duration::from_secs(10), start)?;
    Ok(format!("{} space pairs bijective and monotone both ways", spaces.len()))
}

// ---- 5 ----

/// `R·S` from the pair lists.
fn compose(r: &Relation, s: &Relation) -> Relation {
    let mut out = Relation::empty(r.rows(), s.cols());
    for (a, m) in r.pairs() {
        for (m2, b) in s.pairs() {
            if m == m2 {
                out.insert(a, b);
            }
        }
    }
    out
}

fn criterion5() -> Check {
    let keep = ["CHAIN3", "B4"];
    let corpus = Corpus {
        members: curated().members.into_iter().filter(|m| keep.contains(&m.name.as_str())).collect(),
    };
    let rep = suite("lem41", &corpus)?;
    ensure!(rep.ok() && rep.passed() == 2, "lem41 {}/{}", rep.passed(), rep.total());
    let chain = rep.member("CHAIN3").expect("member");
    ensure!(chain.details.iter().any(|l| l.contains("exhaustive")), "CHAIN3 not exhaustive: {:?}", chain.details);

    let q = RelationQuantale::of_side(&Side::lattice("B", &FinitePoset::powerset(&["p", "q"]))).map_err(|e| e.to_string())?;
    let members = q.enumerate(DEFAULT_GUARD).map_err(|e| e.to_string())?;
    let n = members.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..CASES {
        let (r, s, t) = (&members[rng.gen_range(0..n)], &members[rng.gen_range(0..n)], &members[rng.gen_range(0..n)]);
        let mut right = Relation::empty(r.rows(), r.cols());
        let mut left = Relation::empty(r.rows(), r.cols());
        for x in &members {
            if compose(r, x).is_subset(t) {
                right.union_with(x);
            }
            if compose(x, s).is_subset(t) {
                left.union_with(x);
            }
        }
        ensure!(q.product(r, s) == compose(r, s), "product differs at {r:?} {s:?}");
        ensure!(q.residual_right(r, t) == right, "R → T differs at R = {r:?}, T = {t:?}");
        ensure!(q.residual_left(t, s) == left, "T ← S differs at T = {t:?}, S = {s:?}");
    }
    Ok(format!("CHAIN3 exhaustive, B4 {CASES} seeded triples over {n} lower relations"))
}

// ---- 6 ----

fn criterion6() -> Check {
    let rep = suite("lem82", &curated())?;
    ensure!(rep.total() == 6, "{} orderings of CHAIN3, N5, B4", rep.total());
    ensure!(rep.ok(), "{}", rep.render());
    Ok("all six orderings of CHAIN3, N5, B4".into())
}

// ---- 7 ----

fn criterion7() -> Check {
    let rep = suite("ex11", &Corpus::default())?;
    for n in 3..=6 {
        ensure!(outcome(&rep, &format!("CHAIN{n}"))? == Outcome::Pass, "CHAIN{n}: closed form fails");
    }
    let bad: Vec<String> = (3..=6)
        .filter_map(|n| {
            let m = rep.member(&format!("CHAIN{n}/involutions"))?;
            (m.outcome != Outcome::Pass).then(|| {
                let first = m.details.iter().find(|l| l.starts_with("violation")).cloned().unwrap_or_default();
                format!("CHAIN{n}: {first}")
            })
        })
        .collect();
    ensure!(bad.is_empty(), "closed form holds on chains 3..6; involution clause fails on {}", bad.join("; "));
    Ok("closed form and involutions on chains 3..6".into())
}

// ---- 8 ----

fn criterion8() -> Check {
    let start = Instant::now();
    let ex = suite("ex91", &Corpus::default())?;
    ensure!(ex.ok(), "{}", ex.render());
    let keep = ["CHAIN3", "B4", "B8", "M3", "N5"];
    let corpus = Corpus {
        members: curated().members.into_iter().filter(|m| keep.contains(&m.name.as_str())).collect(),
    };
    let idem = suite("idem", &corpus)?;
    ensure!(idem.ok(), "{}", idem.render());
    let lead = |name: &str| -> String {
        idem.member(name).and_then(|m| m.details.first().cloned()).unwrap_or_default()
    };
    for name in ["B4", "B8"] {
        ensure!(lead(name).contains("exhaustive"), "{name}: {}", lead(name));
    }
    ensure!(lead("B16").contains("10000 samples"), "B16: {}", lead("B16"));
    let details = &ex.members[0].details;
    let find = |key: &str| details.iter().find(|l| l.starts_with(key)).cloned().unwrap_or_default();
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "fast path ≡ oracle; {}; {}; B8 {}; B16 {}",
        find("t(R) equals the printed"),
        find("(1,1)"),
        lead("B8"),
        lead("B16")
    ))
}

// ---- 9 ----

fn criterion9(corpus: &Corpus) -> Check {
    let mut notes = Vec::new();
    for kind in [FamilyKind::Directed, FamilyKind::Finite] {
        let (mut full, mut witness) = (0, None);
        for (name, p) in corpus.posets() {
            let side = Side::poset("B", AugmentedPoset::with_kind(p.clone(), kind));
            let base = TensorBase::new(side.clone(), side);
            let rep = match quantale_conditions(&base, ConditionOptions::default()) {
                Ok(r) => r,
                Err(_) => continue,
            };
            ensure!(rep.agree(), "{name}{}: conditions disagree", kind.name());
            if rep.decided() == 8 {
                full += 1;
                if rep.verdict(Condition::A).value() == Some(true) && !p.properties().pseudocomplemented {
                    witness.get_or_insert(name.to_string());
                }
            }
        }
        ensure!(full >= 10, "{}: {full} members with all eight decided", kind.name());
        let w = witness.ok_or_else(|| format!("{}: no ⊥-distributive member that is not pseudocomplemented", kind.name()))?;
        notes.push(format!("{} {full} members, e.g. {w}", kind.name()));
    }
    Ok(notes.join("; "))
}

// ---- 10 ----

fn criterion10() -> Check {
    let reports = run_laws(CASES, SEED);
    ensure!(reports.len() == LAWS.len(), "{} of {} laws ran", reports.len(), LAWS.len());
    for r in &reports {
        ensure!(r.ok() && r.cases >= CASES, "{r}");
    }
    for seed in 0..CASES as u64 {
        common::check_round_trip(&common::workspace_text(SEED ^ seed)).map_err(|why| format!("parse round trip, seed {seed}: {why}"))?;
    }
    Ok(format!("{} laws and {CASES} parse round trips, seed {SEED}", reports.len()))
}

fn main() {
    let corpus = generate_corpus(6).expect("corpus");
    let criteria: Vec<(usize, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, Box::new(criterion1)),
        (2, Box::new(|| criterion2(&corpus))),
        (3, Box::new(criterion3)),
        (4, Box::new(criterion4)),
        (5, Box::new(criterion5)),
        (6, Box::new(criterion6)),
        (7, Box::new(criterion7)),
        (8, Box::new(criterion8)),
        (9, Box::new(|| criterion9(&corpus))),
        (10, Box::new(criterion10)),
    ];
    let mut failed = Vec::new();
    for (n, check) in &criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("PASS criterion {n} ({took:.2}s): {note}"),
            Err(why) => {
                println!("FAIL criterion {n} ({took:.2}s): {why}");
                failed.push(*n);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    assert_eq!(failed, EXPECTED_FAILURES, "unexpected set of failing criteria");
}
