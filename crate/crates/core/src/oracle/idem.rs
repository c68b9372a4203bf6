//! Searches for lower relations on which one step of `t` is not idempotent,
//! and the replay of the eight-element boolean example.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{all_closed_sets, Bits};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::par;
use crate::quantale::RelationQuantale;
use crate::relation::Relation;
use crate::tensor::TensorBase;

use super::brute::{naive_closure, naive_t_step};

/// All down-sets of `P × Q` as bit masks (`a * |Q| + b`), built row by row:
/// rows are down-sets of `Q` that shrink as `a` grows.
pub fn product_downset_masks(p: &FinitePoset, q: &FinitePoset, limit: usize) -> Result<Vec<u64>> {
    let (n, m) = (p.len(), q.len());
    if n * m > 64 {
        return Err(Error::BoundExceeded { got: n * m, max: 64 });
    }
    let rows: Vec<u64> = all_closed_sets(m, |s| q.down_closure(s), usize::MAX)
        .expect("no limit")
        .iter()
        .map(Bits::mask)
        .collect();
    // larger elements first, so every strict upper bound is placed earlier
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(p.down_of(x).count()));
    let mut out = Vec::new();
    let mut chosen = vec![0u64; n];
    fn go(
        k: usize,
        order: &[usize],
        p: &FinitePoset,
        rows: &[u64],
        m: usize,
        chosen: &mut Vec<u64>,
        out: &mut Vec<u64>,
        limit: usize,
    ) -> bool {
        if k == order.len() {
            if out.len() >= limit {
                return false;
            }
            out.push(chosen.iter().enumerate().fold(0u64, |acc, (a, &r)| acc | r << (a * m)));
            return true;
        }
        let a = order[k];
        let above = p.up_of(a).iter().filter(|&b| b != a).fold(0u64, |acc, b| acc | chosen[b]);
        for &r in rows {
            if r & above == above {
                chosen[a] = r;
                if !go(k + 1, order, p, rows, m, chosen, out, limit) {
                    return false;
                }
            }
        }
        chosen[a] = 0;
        true
    }
    if !go(0, &order, p, &rows, m, &mut chosen, &mut out, limit) {
        return Err(Error::GuardExceeded { limit });
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IdemWitness {
    pub r: Relation,
    pub t1: Relation,
    pub t2: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive { checked: usize },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct IdemReport {
    pub coverage: Coverage,
    /// Number of relations with `t(R) ≠ t²(R)`.
    pub witnesses: usize,
    /// Up to three witnesses, shrunk to minimal relations.
    pub examples: Vec<IdemWitness>,
    /// The fast and rectangle-scan steps agree on every reported witness.
    pub oracle_agrees: bool,
}

fn witness(base: &TensorBase, r: &Relation) -> Option<IdemWitness> {
    let t1 = base.t_step(r).ok()?;
    let t2 = base.t_step(&t1).ok()?;
    (t1 != t2).then(|| IdemWitness { r: r.clone(), t1, t2 })
}

fn finish(base: &TensorBase, coverage: Coverage, hits: Vec<Relation>) -> IdemReport {
    let q = RelationQuantale::of_side(base.left()).expect("poset side");
    let mut examples: Vec<IdemWitness> = Vec::new();
    for r in &hits {
        if examples.len() == 3 {
            break;
        }
        let small = q.shrink(r, |x| witness(base, x).is_some());
        if examples.iter().all(|w| w.r != small) {
            examples.extend(witness(base, &small));
        }
    }
    let oracle_agrees = examples.iter().all(|w| {
        naive_t_step(base, &w.r).ok().as_ref() == Some(&w.t1) && naive_t_step(base, &w.t1).ok().as_ref() == Some(&w.t2)
    });
    IdemReport {
        coverage,
        witnesses: hits.len(),
        examples,
        oracle_agrees,
    }
}

/// Checks every down-set of `B̌ × B̌`.
pub fn idempotency_search_exhaustive(base: &TensorBase, limit: usize) -> Result<IdemReport> {
    let p = base.left().truncated().ok_or_else(|| Error::CarrierMismatch("needs poset sides".into()))?.poset().clone();
    let q = base.right().truncated().ok_or_else(|| Error::CarrierMismatch("needs poset sides".into()))?.poset().clone();
    let (n, m) = (p.len(), q.len());
    let masks = product_downset_masks(&p, &q, limit)?;
    let hit = par::map_range(masks.len(), |i| {
        witness(base, &Relation::from_bits(n, m, Bits::from_mask(n * m, masks[i]))).is_some()
    });
    let hits: Vec<Relation> = masks
        .iter()
        .zip(&hit)
        .filter(|(_, &h)| h)
        .map(|(&mask, _)| Relation::from_bits(n, m, Bits::from_mask(n * m, mask)))
        .collect();
    Ok(finish(base, Coverage::Exhaustive { checked: masks.len() }, hits))
}

/// Checks every lower relation generated by pairs of atoms of a lattice
/// base (`2^(k²)` relations for `k` atoms).
pub fn idempotency_search_atom_pairs(base: &TensorBase) -> Result<IdemReport> {
    let ap = base.left().augmented().ok_or_else(|| Error::CarrierMismatch("needs poset sides".into()))?;
    let atoms: Vec<usize> = ap.poset().atoms().into_iter().filter_map(|a| base.left().new_index(a)).collect();
    let k = atoms.len();
    if k * k > 20 {
        return Err(Error::BoundExceeded { got: k, max: 4 });
    }
    let total = 1usize << (k * k);
    let relation = |mask: usize| {
        let pairs = (0..k * k).filter(|i| mask >> i & 1 == 1).map(|i| (atoms[i / k], atoms[i % k]));
        base.down_closure(&Relation::from_pairs(base.rows(), base.cols(), pairs))
    };
    let hit = par::map_range(total, |mask| witness(base, &relation(mask)).is_some());
    let hits = (0..total).filter(|&m| hit[m]).map(relation).collect();
    Ok(finish(base, Coverage::Exhaustive { checked: total }, hits))
}

/// A random lower relation: the down-closure of up to eight random pairs.
pub fn sample_lower_relation<R: Rng + ?Sized>(base: &TensorBase, rng: &mut R) -> Relation {
    let (n, m) = (base.rows(), base.cols());
    let mut r = base.empty();
    if n == 0 || m == 0 {
        return r;
    }
    for _ in 0..rng.gen_range(1..=8) {
        r.insert(rng.gen_range(0..n), rng.gen_range(0..m));
    }
    base.down_closure(&r)
}

/// Checks `samples` seeded random lower relations.
pub fn idempotency_search_sampled(base: &TensorBase, samples: usize, seed: u64) -> Result<IdemReport> {
    if base.left().truncated().is_none() || base.right().truncated().is_none() {
        return Err(Error::CarrierMismatch("needs poset sides".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rels: Vec<Relation> = (0..samples).map(|_| sample_lower_relation(base, &mut rng)).collect();
    let hit = par::map(&rels, |r| witness(base, r).is_some());
    let hits = rels.into_iter().zip(hit).filter(|(_, h)| *h).map(|(r, _)| r).collect();
    Ok(finish(base, Coverage::Sampled { samples, seed }, hits))
}

/// The eight-element boolean replay: `R = ↓{(x, y) : x ≠ y atoms}`.
#[derive(Clone, Debug)]
pub struct AtomPairExample {
    pub base: TensorBase,
    pub r: Relation,
    pub t1: Relation,
    pub t2: Relation,
    pub t_bar: Relation,
    /// All three agree with the rectangle-scan oracle.
    pub oracle_agrees: bool,
    /// `↓{(x, x*) : x an atom}`.
    pub printed: Relation,
    pub t1_matches_printed: bool,
    pub top_pair_in_t2: bool,
}

pub fn atom_pair_example() -> Result<AtomPairExample> {
    let b8 = FinitePoset::powerset(&["a", "b", "c"]);
    let base = TensorBase::lattice_square("EX91", &b8);
    let side = base.left();
    let atoms: Vec<usize> = b8.atoms().into_iter().filter_map(|a| side.new_index(a)).collect();
    let pairs = atoms.iter().flat_map(|&x| atoms.iter().filter(move |&&y| y != x).map(move |&y| (x, y)));
    let r = base.down_closure(&Relation::from_pairs(base.rows(), base.cols(), pairs));
    let t1 = base.t_step(&r)?;
    let t2 = base.t_step(&t1)?;
    let t_bar = base.t_bar(&r);
    let oracle_agrees = naive_t_step(&base, &r)? == t1 && naive_t_step(&base, &t1)? == t2 && naive_closure(&base, &r)? == t_bar;
    let complement = |x: usize| b8.pseudocomplement(side.orig()[x]).and_then(|c| side.new_index(c));
    let printed = base.down_closure(&Relation::from_pairs(
        base.rows(),
        base.cols(),
        atoms.iter().filter_map(|&x| Some((x, complement(x)?))),
    ));
    let top = side.new_index(b8.top().expect("complete")).expect("top is not bottom");
    Ok(AtomPairExample {
        t1_matches_printed: t1 == printed,
        top_pair_in_t2: t2.contains(top, top),
        base,
        r,
        t1,
        t2,
        t_bar,
        oracle_agrees,
        printed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_downsets_match_generic_enumeration() {
        for p in [FinitePoset::chain(3), FinitePoset::antichain(2), FinitePoset::n5()] {
            let q = RelationQuantale::new(p.clone());
            let generic: Vec<u64> = q.enumerate(1 << 20).unwrap().iter().map(|r| r.bits().mask()).collect();
            let mut generic = generic;
            generic.sort_unstable();
            assert_eq!(product_downset_masks(&p, &p, 1 << 20).unwrap(), generic);
        }
        assert!(product_downset_masks(&FinitePoset::n5(), &FinitePoset::n5(), 10).is_err());
    }

    #[test]
    fn atom_pair_example_replay() {
        let rep = atom_pair_example().unwrap();
        assert!(rep.oracle_agrees);
        assert_eq!(rep.printed.count(), 9);
    }

    #[test]
    fn sampled_search_is_deterministic() {
        let base = TensorBase::lattice_square("B4", &FinitePoset::powerset(&["p", "q"]));
        let a = idempotency_search_sampled(&base, 500, 7).unwrap();
        let b = idempotency_search_sampled(&base, 500, 7).unwrap();
        assert_eq!(a.witnesses, b.witnesses);
        assert!(a.oracle_agrees);
    }
}
