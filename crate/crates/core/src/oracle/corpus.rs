//! Test corpora: every lattice up to a size bound, and a curated set of
//! posets and closure spaces.

use std::collections::BTreeSet;

use crate::bits::Bits;
use crate::closure::ClosureSpace;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// Largest size for exhaustive lattice generation.
pub const MAX_GENERATED: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Produced by exhaustive generation with the given size bound.
    Generated(usize),
    Curated,
}

#[derive(Clone, Debug)]
pub enum Structure {
    Poset(FinitePoset),
    Space(ClosureSpace),
}

#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub structure: Structure,
    pub provenance: Provenance,
}

impl Member {
    pub fn poset(&self) -> Option<&FinitePoset> {
        match &self.structure {
            Structure::Poset(p) => Some(p),
            Structure::Space(_) => None,
        }
    }

    pub fn space(&self) -> Option<&ClosureSpace> {
        match &self.structure {
            Structure::Space(s) => Some(s),
            Structure::Poset(_) => None,
        }
    }

    /// A poset member that is a complete lattice.
    pub fn lattice(&self) -> Option<&FinitePoset> {
        self.poset().filter(|p| p.is_complete_lattice())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub members: Vec<Member>,
}

impl Corpus {
    pub fn get(&self, name: &str) -> Option<&Member> {
        self.members.iter().find(|m| m.name == name)
    }

    pub fn lattices(&self) -> impl Iterator<Item = (&str, &FinitePoset)> {
        self.members.iter().filter_map(|m| Some((m.name.as_str(), m.lattice()?)))
    }

    pub fn posets(&self) -> impl Iterator<Item = (&str, &FinitePoset)> {
        self.members.iter().filter_map(|m| Some((m.name.as_str(), m.poset()?)))
    }

    pub fn spaces(&self) -> impl Iterator<Item = (&str, &ClosureSpace)> {
        self.members.iter().filter_map(|m| Some((m.name.as_str(), m.space()?)))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All lattices with at most `max_size` elements up to isomorphism, merged
/// with the curated set.
pub fn generate_corpus(max_size: usize) -> Result<Corpus> {
    let mut members: Vec<Member> = (1..=max_size)
        .map(lattices_of_size)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .map(|(name, p)| Member {
            name,
            structure: Structure::Poset(p),
            provenance: Provenance::Generated(max_size),
        })
        .collect();
    members.extend(curated().members);
    Ok(Corpus { members })
}

/// The curated set on its own.
pub fn curated() -> Corpus {
    let poset = |name: &str, p: FinitePoset| Member {
        name: name.to_string(),
        structure: Structure::Poset(p),
        provenance: Provenance::Curated,
    };
    let space = |name: &str, s: ClosureSpace| Member {
        name: name.to_string(),
        structure: Structure::Space(s),
        provenance: Provenance::Curated,
    };
    let from_covers = |labels: &[&str], covers: &[(&str, &str)]| FinitePoset::from_covers(labels, covers).expect("curated poset");
    let mut members = Vec::new();
    for n in 2..=6 {
        members.push(poset(&format!("CHAIN{n}"), FinitePoset::chain(n)));
    }
    members.push(poset("B4", FinitePoset::powerset(&["p", "q"])));
    members.push(poset("B8", FinitePoset::powerset(&["p", "q", "r"])));
    members.push(poset("M3", FinitePoset::m3()));
    members.push(poset("N5", FinitePoset::n5()));
    members.push(poset("AC2", FinitePoset::antichain(2)));
    members.push(poset("AC3", FinitePoset::antichain(3)));
    members.push(poset("EX91", FinitePoset::powerset(&["a", "b", "c"])));
    members.push(poset("V", from_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")])));
    members.push(poset("LAMBDA", from_covers(&["a", "b", "1"], &[("a", "1"), ("b", "1")])));
    members.push(poset(
        "BOWTIE",
        from_covers(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]),
    ));
    for (name, s) in sample_spaces() {
        members.push(space(&name, s));
    }
    Corpus { members }
}

/// Small closure spaces covering the cases the isomorphism suites need:
/// discrete, principal-ideal, non-T0, bounded and non-polarized.
pub fn sample_spaces() -> Vec<(String, ClosureSpace)> {
    let sets = |n: usize, sets: &[&[usize]]| -> ClosureSpace {
        let labels = ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect();
        let gens: Vec<Bits> = sets.iter().map(|s| Bits::from_indices(n, s.iter().copied())).collect();
        ClosureSpace::from_generators(labels, &gens).expect("valid generators")
    };
    vec![
        ("D2".to_string(), ClosureSpace::discrete(2)),
        ("D3".to_string(), ClosureSpace::discrete(3)),
        (
            "PI3".to_string(),
            ClosureSpace::principal_ideal_space(&FinitePoset::chain(3)).expect("complete"),
        ),
        ("SIERPINSKI".to_string(), sets(2, &[&[], &[0]])),
        // x and y have the same closure
        ("NONT0".to_string(), sets(3, &[&[], &[0, 1]])),
        // every closed set contains x
        ("BOUNDED".to_string(), sets(3, &[&[0], &[0, 1], &[0, 2]])),
        // three points whose pairwise joins are everything: closed sets form M3
        ("M3SPACE".to_string(), sets(3, &[&[], &[0], &[1], &[2]])),
        ("INDISCRETE".to_string(), sets(2, &[])),
    ]
}

/// One representative per isomorphism class of lattices with `n` elements,
/// named `L{n}.{k}` in order of canonical code.
pub fn lattices_of_size(n: usize) -> Result<Vec<(String, FinitePoset)>> {
    if n > MAX_GENERATED {
        return Err(Error::BoundExceeded { got: n, max: MAX_GENERATED });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let codes = lattice_codes(n);
    Ok(codes
        .iter()
        .enumerate()
        .map(|(k, &code)| (format!("L{n}.{}", k + 1), from_code(n, code)))
        .collect())
}

/// Number of lattices with `n` elements up to isomorphism.
pub fn count_lattices(n: usize) -> usize {
    lattice_codes(n).len()
}

/// Canonical codes: the `leq` matrix as bits `i * n + j`, minimized over
/// relabellings that fix the bottom (index 0) and the top (index `n - 1`).
fn lattice_codes(n: usize) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    if n <= 2 {
        out.insert(chain_code(n));
        return out;
    }
    let m = n - 2;
    // strict orders on the middle elements, extending the natural labelling
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let perms = permutations(m);
    for mask in 0u32..1 << pairs.len() {
        let lt = |i: usize, j: usize| {
            i < j && mask >> pairs.iter().position(|&p| p == (i, j)).expect("pair") & 1 == 1
        };
        let transitive = (0..m).all(|i| (i + 1..m).all(|j| !lt(i, j) || (j + 1..m).all(|k| !lt(j, k) || lt(i, k))));
        if !transitive {
            continue;
        }
        let leq = |i: usize, j: usize| -> bool {
            if i == j || i == 0 || j == n - 1 {
                return true;
            }
            if j == 0 || i == n - 1 {
                return false;
            }
            lt(i - 1, j - 1)
        };
        if !is_lattice(n, &leq) {
            continue;
        }
        let code = perms
            .iter()
            .map(|perm| {
                let map = |x: usize| if x == 0 || x == n - 1 { x } else { perm[x - 1] + 1 };
                let mut c = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if leq(i, j) {
                            c |= 1 << (map(i) * n + map(j));
                        }
                    }
                }
                c
            })
            .min()
            .expect("at least one permutation");
        out.insert(code);
    }
    out
}

fn chain_code(n: usize) -> u64 {
    let mut c = 0u64;
    for i in 0..n {
        for j in i..n {
            c |= 1 << (i * n + j);
        }
    }
    c
}

/// Every pair has a least upper bound (bounded finite posets with joins are
/// lattices).
fn is_lattice(n: usize, leq: &dyn Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let ub: Vec<usize> = (0..n).filter(|&u| leq(a, u) && leq(b, u)).collect();
            ub.iter().any(|&u| ub.iter().all(|&v| leq(u, v)))
        })
    })
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn from_code(n: usize, code: u64) -> FinitePoset {
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == n - 1 => "1".to_string(),
            _ => ((b'a' + (i - 1) as u8) as char).to_string(),
        })
        .collect();
    let down = (0..n)
        .map(|j| Bits::from_indices(n, (0..n).filter(|&i| code >> (i * n + j) & 1 == 1)))
        .collect();
    FinitePoset::from_down_sets(labels, down).expect("codes describe partial orders")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=7).map(count_lattices).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn five_element_lattices_include_m3_and_n5() {
        let lats = lattices_of_size(5).unwrap();
        let pc: Vec<bool> = lats.iter().map(|(_, p)| p.properties().distributive).collect();
        assert_eq!(pc.iter().filter(|&&d| !d).count(), 2);
        assert!(lats.iter().all(|(_, p)| p.is_complete_lattice()));
    }

    #[test]
    fn small_bounds_and_determinism() {
        let c = generate_corpus(2).unwrap();
        let gen: Vec<&str> = c
            .members
            .iter()
            .filter(|m| matches!(m.provenance, Provenance::Generated(_)))
            .map(|m| m.name.as_str())
            .collect();
        assert_eq!(gen, ["L1.1", "L2.1"]);
        let a: Vec<String> = generate_corpus(6).unwrap().members.iter().map(|m| m.name.clone()).collect();
        let b: Vec<String> = generate_corpus(6).unwrap().members.iter().map(|m| m.name.clone()).collect();
        assert_eq!(a, b);
        assert!(generate_corpus(8).is_err());
    }

    #[test]
    fn curated_spaces_cover_the_cases() {
        let spaces = sample_spaces();
        let get = |n: &str| &spaces.iter().find(|(k, _)| k == n).unwrap().1;
        assert!(!get("NONT0").properties().t0);
        assert!(get("BOUNDED").properties().uniquely_bounded || !get("BOUNDED").properties().unbounded);
        assert!(!get("M3SPACE").properties().polarized);
        assert!(get("D2").properties().polarized);
    }
}
