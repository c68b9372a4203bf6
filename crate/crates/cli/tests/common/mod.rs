//! Random workspace files for the round-trip checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relq::FinitePoset;
use relq_cli::{emit_workspace, parse_workspace, Workspace};
use relq_cli::workspace::Item;

const KINDS: [&str; 7] = ["@powerset", "@finite", "@directed", "@chains", "@singletons", "@empty", "@emptyset"];

fn subset<R: Rng>(rng: &mut R, labels: &[String]) -> String {
    let picked: Vec<&str> = labels.iter().filter(|_| rng.gen_bool(0.4)).map(String::as_str).collect();
    format!("{{{}}}", picked.join(" "))
}

/// A workspace exercising every block kind, with labels, covers, closed
/// sets, family members, relation pairs and map entries drawn from `seed`.
pub fn workspace_text(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let mut posets: Vec<(String, FinitePoset)> = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        let n = rng.gen_range(1..=5);
        let labels: Vec<String> = (0..n).map(|k| format!("{}{k}", ["a", "x", "n"][i])).collect();
        let covers: Vec<(String, String)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.35))
            .map(|(a, b)| (labels[a].clone(), labels[b].clone()))
            .collect();
        let name = format!("P{i}");
        out.push_str(&format!("# poset number {i}\nposet {name}\n  elements {}\n", labels.join(" ")));
        if !covers.is_empty() {
            let cs: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
            out.push_str(&format!("  covers {}\n", cs.join(" ")));
        }
        out.push_str("end\n\n");
        let p = FinitePoset::from_covers(&labels, &covers).expect("increasing covers are acyclic");
        posets.push((name, p));
    }
    for i in 0..rng.gen_range(0..=2) {
        let labels: Vec<String> = (0..rng.gen_range(1..=4)).map(|k| format!("s{k}")).collect();
        let sets: Vec<String> = (0..rng.gen_range(0..=4)).map(|_| subset(&mut rng, &labels)).collect();
        out.push_str(&format!("space S{i}\n  points {}\n", labels.join(" ")));
        if !sets.is_empty() {
            out.push_str(&format!("  closed {}\n", sets.join(" ")));
        }
        out.push_str("end\n");
    }
    for i in 0..rng.gen_range(0..=2) {
        let (name, p) = posets.choose(&mut rng).expect("at least one poset");
        out.push_str(&format!("family F{i} on {name}\n"));
        match rng.gen_range(0..3) {
            0 => out.push_str(&format!("  kind {}\n", KINDS.choose(&mut rng).unwrap())),
            1 => {
                let sets: Vec<String> = (0..rng.gen_range(1..=3)).map(|_| subset(&mut rng, p.labels())).collect();
                out.push_str(&format!("  sets {}\n", sets.join(" ")));
            }
            _ => {}
        }
        out.push_str("end\n");
    }
    for i in 0..rng.gen_range(0..=2) {
        let (ln, pa) = posets.choose(&mut rng).unwrap();
        let (rn, pb) = posets.choose(&mut rng).unwrap();
        let (ba, bb) = (pa.delta_empty(), pb.delta_empty());
        let pairs: Vec<String> = (0..pa.len())
            .flat_map(|a| (0..pb.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| !ba.contains(a) && !bb.contains(b))
            .filter(|_| rng.gen_bool(0.3))
            .map(|(a, b)| format!("({},{})", pa.label(a), pb.label(b)))
            .collect();
        out.push_str(&format!("relation R{i} on {ln} {rn}\n"));
        if !pairs.is_empty() {
            out.push_str(&format!("  pairs {}\n", pairs.join(" ")));
        }
        out.push_str("end\n");
    }
    for i in 0..rng.gen_range(0..=2) {
        let (ln, pa) = posets.choose(&mut rng).unwrap();
        let (rn, pb) = posets.choose(&mut rng).unwrap();
        let mut entries: Vec<String> =
            (0..pa.len()).map(|x| format!("{}:{}", pa.label(x), pb.label(rng.gen_range(0..pb.len())))).collect();
        entries.shuffle(&mut rng);
        out.push_str(&format!("map f{i} from {ln} to {rn}\n  {}\nend\n", entries.join(" ")));
    }
    out
}

fn same_items(a: &Workspace, b: &Workspace) -> bool {
    a.items.len() == b.items.len()
        && a.items.iter().zip(&b.items).all(|((na, ia), (nb, ib))| {
            na == nb
                && match (ia, ib) {
                    (Item::Poset(p), Item::Poset(q)) => p == q,
                    (Item::Space(s), Item::Space(t)) => s.labels() == t.labels() && s.closed_sets() == t.closed_sets(),
                    (Item::Family(f), Item::Family(g)) => f.poset == g.poset && f.spec == g.spec,
                    (Item::Relation(r), Item::Relation(s)) => r == s,
                    (Item::Map(f), Item::Map(g)) => f == g,
                    _ => false,
                }
        })
}

/// parse, emit, parse again: the second parse reproduces the first and
/// emitting it again changes nothing.
pub fn check_round_trip(text: &str) -> Result<(), String> {
    let first = parse_workspace(text).map_err(|e| format!("generated text rejected: {e}\n{text}"))?;
    let emitted = emit_workspace(&first);
    let second = parse_workspace(&emitted).map_err(|e| format!("emitted text rejected: {e}\n{emitted}"))?;
    if !same_items(&first, &second) {
        return Err(format!("round trip changed the workspace\n{text}\n---\n{emitted}"));
    }
    if emit_workspace(&second) != emitted {
        return Err(format!("emission is not a fixed point\n{emitted}"));
    }
    Ok(())
}
