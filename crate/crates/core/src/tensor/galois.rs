//! Correspondence between truncated tensors `T ∈ A_𝒳 ⊗̌ B` and antitone
//! maps `A → B`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::relation::Relation;

use super::TensorBase;

/// A total map between finite carriers, `f[x]` the image of `x`.
pub type MapTable = Vec<usize>;

fn right_lattice(base: &TensorBase) -> Result<&FinitePoset> {
    let ap = base
        .right()
        .augmented()
        .ok_or_else(|| Error::CarrierMismatch("map correspondence needs a poset on the right".into()))?;
    ap.poset().require_complete(base.right().name())?;
    Ok(ap.poset())
}

fn left_poset(base: &TensorBase) -> Result<&FinitePoset> {
    base.left()
        .augmented()
        .map(|ap| ap.poset())
        .ok_or_else(|| Error::CarrierMismatch("map correspondence needs a poset on the left".into()))
}

/// `f̌_T(x) = max(xT ∪ ⊥_B)` for `x ∉ ⊥_A`, and `1_B` on `⊥_A`; indices are
/// those of the full carriers.
pub fn galois_map(base: &TensorBase, t: &Relation) -> Result<MapTable> {
    let b = right_lattice(base)?;
    let a = left_poset(base)?;
    let top = b.top().expect("complete lattice has a top");
    (0..a.len())
        .map(|x| match base.left().new_index(x) {
            None => Ok(top),
            Some(xt) => {
                let slice = base.right().lift(&t.row(xt)).union(base.right().bottom());
                b.max_of(&slice)
                    .ok_or_else(|| Error::NoSliceMaximum(a.label(x).to_string()))
            }
        })
        .collect()
}

/// `Ť_f = {(x, y) ∈ Ǎ × B̌ : f(x) >= y}`.
pub fn galois_inverse(base: &TensorBase, f: &[usize]) -> Result<Relation> {
    let b = right_lattice(base)?;
    let a = left_poset(base)?;
    if f.len() != a.len() || f.iter().any(|&y| y >= b.len()) {
        return Err(Error::OutOfRange {
            index: f.len(),
            size: a.len(),
        });
    }
    for x in 0..a.len() {
        for x2 in a.up_of(x).iter() {
            if !b.leq(f[x2], f[x]) {
                return Err(Error::NotAntitone(format!(
                    "{} <= {} but f({}) = {} is not >= f({}) = {}",
                    a.label(x),
                    a.label(x2),
                    a.label(x),
                    b.label(f[x]),
                    a.label(x2),
                    b.label(f[x2])
                )));
            }
        }
    }
    let left = base.left();
    let right = base.right();
    let mut r = base.empty();
    for xt in 0..left.len() {
        let x = left.orig()[xt];
        let below = right.restrict(b.down_of(f[x]));
        r.set_row_union(xt, &below);
    }
    Ok(r)
}

/// Pointwise order of maps into `b`.
pub fn map_leq(b: &FinitePoset, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&x, &y)| b.leq(x, y))
}

/// All antitone maps `a → b`, in lexicographic order of their tables.
pub fn antitone_maps(a: &FinitePoset, b: &FinitePoset) -> Vec<MapTable> {
    let n = a.len();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(i: usize, a: &FinitePoset, b: &FinitePoset, cur: &mut Vec<usize>, out: &mut Vec<MapTable>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for y in 0..b.len() {
            let ok = (0..i).all(|j| {
                (!a.leq(j, i) || b.leq(y, cur[j])) && (!a.leq(i, j) || b.leq(cur[j], y))
            });
            if ok {
                cur[i] = y;
                go(i + 1, a, b, cur, out);
            }
        }
    }
    go(0, a, b, &mut cur, &mut out);
    out
}

/// Whether every preimage `f⁻¹[↑y]` is an ideal for `family`: it contains
/// `ΔX` whenever it contains `X`. For complete `a` this is
/// `f(⋁X) = ⋀f[X]` for all `X` in `family`.
pub fn is_family_galois(a: &FinitePoset, b: &FinitePoset, f: &[usize], family: &[Bits]) -> bool {
    (0..b.len()).all(|y| {
        let pre = Bits::from_indices(a.len(), (0..a.len()).filter(|&x| b.leq(y, f[x])));
        family.iter().all(|x| !x.is_subset(&pre) || a.cut(x).is_subset(&pre))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{AugmentedPoset, FamilyKind};
    use crate::tensor::{Side, DEFAULT_GUARD};

    #[test]
    fn chain3_examples() {
        let base = TensorBase::lattice_square("CHAIN3", &FinitePoset::chain(3));
        assert_eq!(galois_map(&base, &base.empty()).unwrap(), vec![2, 0, 0]);
        let r2 = Relation::from_pairs(2, 2, [(0, 0), (0, 1)]);
        assert_eq!(galois_map(&base, &r2).unwrap(), vec![2, 2, 0]);
        assert_eq!(galois_inverse(&base, &[2, 2, 0]).unwrap(), r2);
        assert!(matches!(galois_inverse(&base, &[0, 1, 2]), Err(Error::NotAntitone(_))));
    }

    #[test]
    fn b4_identity_tensor_gives_i_a() {
        let b4 = FinitePoset::powerset(&["p", "q"]);
        let base = TensorBase::lattice_square("B4", &b4);
        // truncated carrier p q 1 -> indices 0 1 2; I_A = {(p,p),(q,q)}
        let ia = Relation::from_pairs(3, 3, [(0, 0), (1, 1)]);
        assert!(base.is_tensor(&ia));
        // full carrier 0 p q 1
        assert_eq!(galois_map(&base, &ia).unwrap(), vec![3, 1, 2, 0]);
    }

    #[test]
    fn preimage_form_matches_join_form_on_lattices() {
        for p in [FinitePoset::chain(3), FinitePoset::powerset(&["p", "q"]), FinitePoset::m3(), FinitePoset::n5()] {
            for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Chains, FamilyKind::Empty] {
                let family = kind.build(&p);
                for f in antitone_maps(&p, &p) {
                    let joins = family.iter().all(|x| {
                        let img = Bits::from_indices(p.len(), x.iter().map(|i| f[i]));
                        p.meet(&img) == Some(f[p.join(x).unwrap()])
                    });
                    assert_eq!(is_family_galois(&p, &p, &f, &family), joins, "{f:?} {kind:?}");
                }
            }
        }
    }

    #[test]
    fn round_trips_and_order() {
        for p in [FinitePoset::chain(3), FinitePoset::powerset(&["p", "q"]), FinitePoset::n5()] {
            for kind in [FamilyKind::Powerset, FamilyKind::Empty, FamilyKind::EmptySet] {
                let left = Side::poset("A", AugmentedPoset::with_kind(p.clone(), kind));
                let base = TensorBase::new(left, Side::lattice("B", &p));
                let fam = base.enumerate(DEFAULT_GUARD).unwrap();
                let maps: Vec<MapTable> = fam.members().iter().map(|t| galois_map(&base, t).unwrap()).collect();
                for (t, f) in fam.members().iter().zip(&maps) {
                    assert_eq!(&galois_inverse(&base, f).unwrap(), t);
                }
                for (i, s) in fam.members().iter().enumerate() {
                    for (j, t) in fam.members().iter().enumerate() {
                        assert_eq!(s.is_subset(t), map_leq(&p, &maps[i], &maps[j]));
                    }
                }
            }
        }
    }
}
