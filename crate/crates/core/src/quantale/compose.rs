//! The composition `g ⊙ f` of antitone maps between complete lattices.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::relation::Relation;
use crate::tensor::{galois_inverse, galois_map, MapTable, Side, TensorBase};

use super::relational::odot;

fn check_antitone(a: &FinitePoset, b: &FinitePoset, f: &[usize], name: &str) -> Result<()> {
    if f.len() != a.len() {
        return Err(Error::OutOfRange { index: f.len(), size: a.len() });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= b.len()) {
        return Err(Error::OutOfRange { index: bad, size: b.len() });
    }
    for x in 0..a.len() {
        for y in a.up_of(x).iter() {
            if !b.leq(f[y], f[x]) {
                return Err(Error::NotAntitone(format!(
                    "{name}: {} <= {} but {name}({}) = {} is not >= {name}({}) = {}",
                    a.label(x),
                    a.label(y),
                    a.label(x),
                    b.label(f[x]),
                    a.label(y),
                    b.label(f[y])
                )));
            }
        }
    }
    Ok(())
}

/// `T_{f,g} = {(x, z) : f(x) ≥ y and g(y) ≥ z for some y > 0}` over the full
/// carriers.
pub fn composition_relation(a: &FinitePoset, b: &FinitePoset, c: &FinitePoset, f: &[usize], g: &[usize]) -> Relation {
    let zero = b.bottom();
    let mut t = Relation::empty(a.len(), c.len());
    for x in 0..a.len() {
        let mut row = Bits::new(c.len());
        for y in b.down_of(f[x]).iter().filter(|&y| Some(y) != zero) {
            row.union_with(c.down_of(g[y]));
        }
        t.set_row_union(x, &row);
    }
    t
}

/// `g ⊙ f(a) = ⋁{c : (a, c) ∈ E_{f,g}}` where `E_{f,g}` is the tensor
/// generated by [`composition_relation`] in `A ⊗ C`.
pub fn galois_compose(a: &FinitePoset, b: &FinitePoset, c: &FinitePoset, f: &[usize], g: &[usize]) -> Result<MapTable> {
    for (p, name) in [(a, "A"), (b, "B"), (c, "C")] {
        p.require_complete(name)?;
    }
    check_antitone(a, b, f, "f")?;
    check_antitone(b, c, g, "g")?;
    let base = TensorBase::new(Side::lattice("A", a), Side::lattice("C", c));
    let e = base.full_closure(&composition_relation(a, b, c, f, g));
    Ok((0..a.len())
        .map(|x| c.join(&e.row(x)).expect("complete lattice"))
        .collect())
}

/// The same composite through truncated tensors: `f ↦ Ť_f`, then `⊙`, then
/// back to a map.
pub fn galois_compose_truncated(
    a: &FinitePoset,
    b: &FinitePoset,
    c: &FinitePoset,
    f: &[usize],
    g: &[usize],
) -> Result<MapTable> {
    let ab = TensorBase::new(Side::lattice("A", a), Side::lattice("B", b));
    let bc = TensorBase::new(Side::lattice("B", b), Side::lattice("C", c));
    let ac = TensorBase::new(Side::lattice("A", a), Side::lattice("C", c));
    let r = galois_inverse(&ab, f)?;
    let s = galois_inverse(&bc, g)?;
    galois_map(&ac, &odot(&ab, &bc, &r, &s)?)
}

/// The tensor closure of the relation product of two full tensors. When the
/// middle factor has a least element, both operands contain the cross through
/// it and the result is always the largest tensor.
pub fn full_odot(left: &TensorBase, right: &TensorBase, r: &Relation, s: &Relation) -> Result<Relation> {
    if !left.full_is_tensor(r) || !right.full_is_tensor(s) {
        return Err(Error::NotATensor("operands must be full tensors".into()));
    }
    if left.right().full_labels() != right.left().full_labels() {
        return Err(Error::CarrierMismatch(format!(
            "middle factors `{}` and `{}` differ",
            left.right().name(),
            right.left().name()
        )));
    }
    let prod = r.product(s).ok_or_else(|| Error::CarrierMismatch("relation shapes differ".into()))?;
    let target = TensorBase::new(left.left().clone(), right.right().clone());
    Ok(target.full_closure(&prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{antitone_maps, is_family_galois};

    #[test]
    fn chain4_reversal() {
        let c4 = FinitePoset::chain(4);
        let rev = vec![3, 2, 1, 0];
        assert_eq!(galois_compose(&c4, &c4, &c4, &rev, &rev).unwrap(), vec![3, 2, 2, 0]);
        assert_eq!(galois_compose_truncated(&c4, &c4, &c4, &rev, &rev).unwrap(), vec![3, 2, 2, 0]);
    }

    #[test]
    fn constant_zero_map() {
        let c3 = FinitePoset::chain(3);
        let zero = vec![0, 0, 0];
        let rev = vec![2, 1, 0];
        assert_eq!(galois_compose(&c3, &c3, &c3, &zero, &rev).unwrap(), vec![2, 0, 0]);
    }

    #[test]
    fn routes_agree_and_preserve_galois_maps() {
        for p in [FinitePoset::chain(3), FinitePoset::powerset(&["p", "q"]), FinitePoset::m3()] {
            let maps = antitone_maps(&p, &p);
            let all: Vec<Bits> = crate::completion::FamilyKind::Powerset.build(&p);
            for f in &maps {
                for g in &maps {
                    let direct = galois_compose(&p, &p, &p, f, g).unwrap();
                    assert_eq!(direct, galois_compose_truncated(&p, &p, &p, f, g).unwrap());
                    if is_family_galois(&p, &p, g, &all) {
                        assert!(is_family_galois(&p, &p, &direct, &all));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_isotone_maps() {
        let c3 = FinitePoset::chain(3);
        let id = vec![0, 1, 2];
        assert!(matches!(galois_compose(&c3, &c3, &c3, &id, &id), Err(Error::NotAntitone(_))));
    }

    #[test]
    fn full_form_collapses_to_top() {
        let c3 = FinitePoset::chain(3);
        let base = TensorBase::lattice_square("CHAIN3", &c3);
        let e = base.empty_bar();
        assert_eq!(full_odot(&base, &base, &e, &e).unwrap(), Relation::full(3, 3));
    }
}
