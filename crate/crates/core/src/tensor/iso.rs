//! The isomorphism between `A ⊗ B` and `𝒞A ⊗ 𝒞B` for closure spaces, its
//! truncated variant `𝒞_AB`, and the universal extension of separately
//! continuous maps.

use crate::bits::Bits;
use crate::closure::ClosureSpace;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::relation::Relation;

use super::{Side, TensorBase};

/// A pair of closure spaces together with the tensor base over their closed
/// set lattices (each taken as its principal-ideal space).
#[derive(Clone, Debug)]
pub struct SpacePairIso {
    a: ClosureSpace,
    b: ClosureSpace,
    base: TensorBase,
    lattice_base: TensorBase,
}

impl SpacePairIso {
    pub fn new(a: ClosureSpace, b: ClosureSpace) -> Self {
        let ca = a.closed_set_lattice();
        let cb = b.closed_set_lattice();
        let base = TensorBase::new(Side::space("A", a.clone()), Side::space("B", b.clone()));
        let lattice_base = TensorBase::new(
            Side::space("CA", ClosureSpace::principal_ideal_space(&ca).expect("closed sets form a complete lattice")),
            Side::space("CB", ClosureSpace::principal_ideal_space(&cb).expect("closed sets form a complete lattice")),
        );
        SpacePairIso {
            a,
            b,
            base,
            lattice_base,
        }
    }

    /// `A ⊗ B` as a base of space factors.
    pub fn base(&self) -> &TensorBase {
        &self.base
    }

    /// `𝒞A ⊗ 𝒞B` as a base of space factors.
    pub fn lattice_base(&self) -> &TensorBase {
        &self.lattice_base
    }

    /// `h(T) = {(X, Y) closed : X × Y ⊆ T}` for a full tensor `T`.
    pub fn h(&self, t: &Relation) -> Result<Relation> {
        if !self.base.full_is_tensor(t) {
            return Err(Error::NotATensor(t.fmt_with(self.a.labels(), self.b.labels())));
        }
        let (ca, cb) = (self.a.closed_sets(), self.b.closed_sets());
        let (n, m) = (self.a.len(), self.b.len());
        Ok(Relation::from_pairs(
            ca.len(),
            cb.len(),
            (0..ca.len())
                .flat_map(|i| (0..cb.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| Relation::rectangle(n, m, &ca[i], &cb[j]).is_subset(t)),
        ))
    }

    /// `𝒯 ↦ {(x, y) : (x̄, ȳ) ∈ 𝒯}`.
    pub fn h_inverse(&self, tt: &Relation) -> Result<Relation> {
        if !self.lattice_base.full_is_tensor(tt) {
            return Err(Error::NotATensor("argument is not a tensor of closed-set lattices".into()));
        }
        let xa: Vec<usize> = (0..self.a.len())
            .map(|x| self.a.closed_index(&self.a.point_closure(x)).unwrap())
            .collect();
        let yb: Vec<usize> = (0..self.b.len())
            .map(|y| self.b.closed_index(&self.b.point_closure(y)).unwrap())
            .collect();
        Ok(Relation::from_pairs(
            self.a.len(),
            self.b.len(),
            (0..self.a.len())
                .flat_map(|x| (0..self.b.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| tt.contains(xa[x], yb[y])),
        ))
    }

    /// `𝒞_AB(T) = {(X, Y) : X ≠ ⊥, Y ≠ ⊥, X × Y ⊆ T}` in truncated form.
    pub fn c_ab(&self, t: &Relation) -> Result<Relation> {
        self.lattice_base.truncate(&self.h(t)?)
    }

    /// Inverse of `c_ab`.
    pub fn c_ab_inverse(&self, tt: &Relation) -> Result<Relation> {
        self.h_inverse(&self.lattice_base.untruncate(tt)?)
    }
}

pub fn lattice_iso_h(a: &ClosureSpace, b: &ClosureSpace, t: &Relation) -> Result<Relation> {
    SpacePairIso::new(a.clone(), b.clone()).h(t)
}

pub fn lattice_iso_h_inverse(a: &ClosureSpace, b: &ClosureSpace, tt: &Relation) -> Result<Relation> {
    SpacePairIso::new(a.clone(), b.clone()).h_inverse(tt)
}

/// `f^∨(T) = ⋁ f[T]` for a separately continuous `f : A × B → C` given as a
/// table indexed by `a * |B| + b` over the full carriers.
pub fn universal_extension(base: &TensorBase, c: &FinitePoset, f: &[usize], t: &Relation) -> Result<usize> {
    c.require_complete("codomain")?;
    let (n, m) = (base.full_rows(), base.full_cols());
    if f.len() != n * m {
        return Err(Error::OutOfRange { index: f.len(), size: n * m });
    }
    check_separately_continuous(base, c, f)?;
    let image = Bits::from_indices(c.len(), t.pairs().map(|(a, b)| f[a * m + b]));
    Ok(c.join(&image).expect("complete lattice"))
}

/// Every slice map has closed preimages of principal ideals.
pub fn check_separately_continuous(base: &TensorBase, c: &FinitePoset, f: &[usize]) -> Result<()> {
    let (n, m) = (base.full_rows(), base.full_cols());
    for z in 0..c.len() {
        for a in 0..n {
            let pre = Bits::from_indices(m, (0..m).filter(|&b| c.leq(f[a * m + b], z)));
            if !base.right().is_closed_full(&pre) {
                return Err(Error::NotSeparatelyContinuous(format!(
                    "row slice at {} pulls ↓{} back to a non-closed set",
                    base.left().full_labels()[a],
                    c.label(z)
                )));
            }
        }
        for b in 0..m {
            let pre = Bits::from_indices(n, (0..n).filter(|&a| c.leq(f[a * m + b], z)));
            if !base.left().is_closed_full(&pre) {
                return Err(Error::NotSeparatelyContinuous(format!(
                    "column slice at {} pulls ↓{} back to a non-closed set",
                    base.right().full_labels()[b],
                    c.label(z)
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::DEFAULT_GUARD;

    fn full_tensors(base: &TensorBase) -> Vec<Relation> {
        let fam = base.enumerate(DEFAULT_GUARD).unwrap();
        fam.members().iter().map(|t| base.untruncate(t).unwrap()).collect()
    }

    #[test]
    fn discrete_pair_is_bijective() {
        let d = ClosureSpace::discrete(2);
        let iso = SpacePairIso::new(d.clone(), d);
        let left = full_tensors(iso.base());
        let right = full_tensors(iso.lattice_base());
        assert_eq!(left.len(), 16);
        assert_eq!(right.len(), 16);
        let mut images: Vec<Relation> = left.iter().map(|t| iso.h(t).unwrap()).collect();
        for (t, img) in left.iter().zip(&images) {
            assert_eq!(&iso.h_inverse(img).unwrap(), t);
        }
        images.sort();
        let mut sorted = right.clone();
        sorted.sort();
        assert_eq!(images, sorted);
    }

    #[test]
    fn top_and_pure_tensors() {
        let c3 = ClosureSpace::principal_ideal_space(&FinitePoset::chain(3)).unwrap();
        let iso = SpacePairIso::new(c3.clone(), c3);
        let top = Relation::full(3, 3);
        assert_eq!(iso.h(&top).unwrap(), Relation::full(3, 3));
        let pure = iso.base().full_pure(1, 2);
        // closed sets {0} {0,1} {0,1,2}: x̄ = closed set 1, ȳ = closed set 2
        assert_eq!(iso.h(&pure).unwrap(), iso.lattice_base().full_pure(1, 2));
    }

    #[test]
    fn meet_extension_and_constant_map() {
        let c2 = FinitePoset::chain(2);
        let base = TensorBase::lattice_square("CHAIN2", &c2);
        let meet = vec![0, 0, 0, 1];
        assert_eq!(universal_extension(&base, &c2, &meet, &base.empty_bar()).unwrap(), 0);
        assert_eq!(universal_extension(&base, &c2, &meet, &Relation::full(2, 2)).unwrap(), 1);
        // the constant map 1 does not send ⊥ to ⊥ in either slice
        let one = vec![1; 4];
        assert!(matches!(
            universal_extension(&base, &c2, &one, &base.empty_bar()),
            Err(Error::NotSeparatelyContinuous(_))
        ));
    }
}
