//! Reference implementations by direct transcription of the definitions.
//! Slow on purpose; used to check the fast paths.

use crate::bits::{all_closed_sets, Bits};
use crate::error::{Error, Result};
use crate::quantale::RelationQuantale;
use crate::relation::Relation;
use crate::tensor::TensorBase;

fn truncated_families(base: &TensorBase) -> Option<(Vec<(Bits, Bits)>, Vec<(Bits, Bits)>)> {
    let pairs = |side: &crate::tensor::Side| -> Option<Vec<(Bits, Bits)>> {
        let ap = side.truncated()?;
        Some(ap.dotted_family().into_iter().map(|x| (ap.poset().cut(&x), x)).collect())
    };
    Some((pairs(base.left())?, pairs(base.right())?))
}

/// `t(R) = ⋃{Δ̌X × Δ̌Y : X ∈ 𝒳̌̇, Y ∈ 𝒴̌̇, X × Y ⊆ R}`, scanning every pair of
/// family members.
pub fn naive_t_step(base: &TensorBase, r: &Relation) -> Result<Relation> {
    let (xs, ys) = truncated_families(base)
        .ok_or_else(|| Error::CarrierMismatch("t is defined for augmented posets only".into()))?;
    let (n, m) = (base.rows(), base.cols());
    let mut out = Relation::empty(n, m);
    for (cx, x) in &xs {
        // columns related to every element of X
        let mut common = Bits::full(m);
        for a in x.iter() {
            common.intersect_with(&r.row(a));
        }
        for (cy, y) in &ys {
            if y.is_subset(&common) {
                out.union_with(&Relation::rectangle(n, m, cx, cy));
            }
        }
    }
    Ok(out)
}

/// The least tensor containing `R`, as the limit of [`naive_t_step`] from
/// `↓R`.
pub fn naive_closure(base: &TensorBase, r: &Relation) -> Result<Relation> {
    let mut cur = base.down_closure(r);
    loop {
        let next = naive_t_step(base, &cur)?.union(&cur);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// A truncated down-set `T` is a tensor iff `T ∪ ∅̄` satisfies the rectangle
/// condition for all members of the dotted families of the full factors (for
/// spaces: all slices of `T ∪ ∅̄` are closed).
pub fn is_tensor_by_definition(base: &TensorBase, t: &Relation) -> bool {
    if !base.is_down_closed(t) {
        return false;
    }
    let full = t
        .embed(base.full_rows(), base.full_cols(), base.left().orig(), base.right().orig())
        .union(&base.empty_bar());
    match (base.left().augmented(), base.right().augmented()) {
        (Some(ax), Some(ay)) => {
            let xs: Vec<(Bits, Bits)> = ax.dotted_family().into_iter().map(|x| (ax.poset().cut(&x), x)).collect();
            let ys: Vec<(Bits, Bits)> = ay.dotted_family().into_iter().map(|y| (ay.poset().cut(&y), y)).collect();
            xs.iter().all(|(cx, x)| {
                let mut common = Bits::full(base.full_cols());
                for a in x.iter() {
                    common.intersect_with(&full.row(a));
                }
                ys.iter().all(|(cy, y)| {
                    !y.is_subset(&common)
                        || Relation::rectangle(base.full_rows(), base.full_cols(), cx, cy).is_subset(&full)
                })
            })
        }
        _ => {
            let (Some(sa), Some(sb)) = (base.left().space_full(), base.right().space_full()) else {
                return false;
            };
            (0..base.full_rows()).all(|a| sb.is_closed(&full.row(a)))
                && (0..base.full_cols()).all(|b| sa.is_closed(&full.col(b)))
        }
    }
}

/// All truncated tensors, by filtering every down-set of `Ǎ × B̌`.
pub fn brute_tensors(base: &TensorBase, limit: usize) -> Result<Vec<Relation>> {
    let (n, m) = (base.rows(), base.cols());
    let downsets = all_closed_sets(n * m, |s| base.down_closure(&Relation::from_bits(n, m, s.clone())).bits().clone(), limit)
        .map_err(|limit| Error::GuardExceeded { limit })?;
    let mut out: Vec<Relation> = downsets
        .into_iter()
        .map(|b| Relation::from_bits(n, m, b))
        .filter(|t| is_tensor_by_definition(base, t))
        .collect();
    out.sort();
    Ok(out)
}

/// `⋂{T tensor : R ⊆ T}` over the enumerated tensors.
pub fn brute_least_tensor(base: &TensorBase, r: &Relation, limit: usize) -> Result<Relation> {
    let mut out = base.top();
    for t in brute_tensors(base, limit)? {
        if r.is_subset(&t) {
            out = out.intersection(&t);
        }
    }
    Ok(out)
}

/// `R → T` as the union of all members `S` with `R · S ⊆ T`.
pub fn brute_residual_right(q: &RelationQuantale, members: &[Relation], r: &Relation, t: &Relation) -> Relation {
    let mut out = q.empty();
    for s in members {
        if q.product(r, s).is_subset(t) {
            out.union_with(s);
        }
    }
    out
}

/// `T ← S` as the union of all members `R` with `R · S ⊆ T`.
pub fn brute_residual_left(q: &RelationQuantale, members: &[Relation], t: &Relation, s: &Relation) -> Relation {
    let mut out = q.empty();
    for r in members {
        if q.product(r, s).is_subset(t) {
            out.union_with(r);
        }
    }
    out
}

/// `{(a, c) : a R b and b S c for some b}` by a triple loop.
pub fn brute_product(r: &Relation, s: &Relation) -> Relation {
    let mut out = Relation::empty(r.rows(), s.cols());
    for (a, b) in r.pairs() {
        for c in 0..s.cols() {
            if s.contains(b, c) {
                out.insert(a, c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{AugmentedPoset, FamilyKind};
    use crate::order::FinitePoset;
    use crate::tensor::{Side, DEFAULT_GUARD};

    #[test]
    fn brute_matches_fast_enumeration() {
        for p in [FinitePoset::chain(3), FinitePoset::powerset(&["p", "q"]), FinitePoset::n5(), FinitePoset::m3()] {
            for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Finite, FamilyKind::Empty] {
                let s = Side::poset("B", AugmentedPoset::with_kind(p.clone(), kind));
                let base = TensorBase::new(s.clone(), s);
                let fast = base.enumerate(1 << 20).unwrap();
                assert_eq!(fast.members(), brute_tensors(&base, 1 << 20).unwrap().as_slice());
            }
        }
    }

    #[test]
    fn least_tensor_examples() {
        let base = TensorBase::lattice_square("CHAIN3", &FinitePoset::chain(3));
        let r = Relation::from_pairs(2, 2, [(1, 0)]);
        let least = brute_least_tensor(&base, &r, DEFAULT_GUARD).unwrap();
        assert_eq!(least, Relation::from_pairs(2, 2, [(0, 0), (1, 0)]));
        assert_eq!(naive_closure(&base, &r).unwrap(), least);
        assert_eq!(base.t_bar(&base.down_closure(&r)), least);
    }

    #[test]
    fn naive_step_matches_fast_step() {
        let base = TensorBase::lattice_square("N5", &FinitePoset::n5());
        let q = RelationQuantale::new(base.left().truncated().unwrap().poset().clone());
        for r in q.enumerate(1 << 16).unwrap() {
            assert_eq!(naive_t_step(&base, &r).unwrap(), base.t_step(&r).unwrap());
        }
    }
}
