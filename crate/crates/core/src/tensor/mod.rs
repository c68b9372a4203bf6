//! Tensors and tensor products over a pair of factors, in truncated form
//! (the primary representation) and in full form at the API boundary.

mod galois;
mod iso;
mod side;

pub use galois::{antitone_maps, galois_inverse, galois_map, is_family_galois, map_leq, MapTable};
pub use iso::{check_separately_continuous, lattice_iso_h, lattice_iso_h_inverse, universal_extension, SpacePairIso};
pub use side::Side;

use std::collections::HashMap;

use crate::bits::{all_closed_sets, Bits};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::relation::Relation;

/// Default bound on the number of enumerated tensors.
pub const DEFAULT_GUARD: usize = 4096;

/// The pair of factors `(A_𝒳, B_𝒴)` over which tensors live.
#[derive(Clone, Debug)]
pub struct TensorBase {
    left: Side,
    right: Side,
}

impl TensorBase {
    pub fn new(left: Side, right: Side) -> Self {
        TensorBase { left, right }
    }

    /// `B ⊗̌ B` with powerset families on both sides.
    pub fn lattice_square(name: &str, p: &FinitePoset) -> Self {
        let s = Side::lattice(name, p);
        TensorBase::new(s.clone(), s)
    }

    pub fn left(&self) -> &Side {
        &self.left
    }

    pub fn right(&self) -> &Side {
        &self.right
    }

    /// Rows of the truncated product.
    pub fn rows(&self) -> usize {
        self.left.len()
    }

    /// Columns of the truncated product.
    pub fn cols(&self) -> usize {
        self.right.len()
    }

    pub fn empty(&self) -> Relation {
        Relation::empty(self.rows(), self.cols())
    }

    pub fn top(&self) -> Relation {
        Relation::full(self.rows(), self.cols())
    }

    pub fn fmt(&self, r: &Relation) -> String {
        r.fmt_with(self.left.labels(), self.right.labels())
    }

    /// Truncated pure tensor `↓(x, y)` (point closures for spaces).
    pub fn pure(&self, x: usize, y: usize) -> Relation {
        Relation::rectangle(self.rows(), self.cols(), self.left.down(x), self.right.down(y))
    }

    pub fn down_closure(&self, r: &Relation) -> Relation {
        let mut out = self.empty();
        for (a, b) in r.pairs() {
            out.union_with(&self.pure(a, b));
        }
        out
    }

    pub fn is_down_closed(&self, r: &Relation) -> bool {
        r.pairs().all(|(a, b)| self.pure(a, b).is_subset(r))
    }

    /// One step of `t(R) = ⋃{Δ̌X × Δ̌Y : X ∈ 𝒳̌̇, Y ∈ 𝒴̌̇, X × Y ⊆ R}` on a
    /// down-closed `R`. Only defined over augmented posets.
    ///
    /// For fixed `X` the admissible `Y` are the members inside
    /// `C = ⋂{xR : x ∈ X}`, so the contribution is `Δ̌X × step(C)`. Singleton
    /// `X` give the row-wise step; members whose cut is their down-closure add
    /// nothing beyond that.
    pub fn t_step(&self, r: &Relation) -> Result<Relation> {
        if self.right.step(&Bits::new(self.cols())).is_none() || self.left.step(&Bits::new(self.rows())).is_none() {
            return Err(Error::CarrierMismatch(
                "the one-step operator t is defined for augmented posets only".into(),
            ));
        }
        let rows: Vec<Bits> = (0..self.rows()).map(|a| r.row(a)).collect();
        let mut out = self.empty();
        for (a, row) in rows.iter().enumerate() {
            out.set_row_union(a, &self.right.step(row).unwrap());
        }
        for (m, cut) in self.left.rules() {
            let mut c = Bits::full(self.cols());
            for x in m.iter() {
                c.intersect_with(&rows[x]);
            }
            let d = self.right.step(&c).unwrap();
            for a in cut.iter() {
                out.set_row_union(a, &d);
            }
        }
        Ok(out)
    }

    /// `t̄(R)`: the least tensor containing `R`, by closing row and column
    /// slices alternately until nothing changes.
    pub fn t_bar(&self, r: &Relation) -> Relation {
        let mut cur = r.clone();
        loop {
            let mut next = self.empty();
            for a in 0..self.rows() {
                next.set_row_union(a, &self.right.close(&cur.row(a)));
            }
            for b in 0..self.cols() {
                let col = self.left.close(&next.col(b));
                next.set_col_union(b, &col);
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `t̄(R)` as the limit of `t, t², ...` starting from `↓R`.
    pub fn t_bar_by_steps(&self, r: &Relation) -> Result<Relation> {
        let mut cur = self.down_closure(r);
        loop {
            let next = self.t_step(&cur)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Every row slice closed on the right and every column slice closed on
    /// the left.
    pub fn is_tensor_by_slices(&self, r: &Relation) -> bool {
        (0..self.rows()).all(|a| self.right.is_closed(&r.row(a)))
            && (0..self.cols()).all(|b| self.left.is_closed(&r.col(b)))
    }

    /// Rectangle form: `X × Y ⊆ R` implies `cl X × cl Y ⊆ R`. For augmented
    /// posets this is `R = ↓R` and `t(R) ⊆ R`; for spaces every row subset is
    /// scanned with its largest admissible `Y`.
    pub fn is_tensor_by_rectangles(&self, r: &Relation) -> bool {
        if let Ok(t) = self.t_step(r) {
            return self.is_down_closed(r) && t.is_subset(r);
        }
        let n = self.rows();
        assert!(n <= 20, "rectangle scan over {n} rows is too large");
        let rows: Vec<Bits> = (0..n).map(|a| r.row(a)).collect();
        (1..1u64 << n).all(|mask| {
            let xs = Bits::from_mask(n, mask);
            let mut ys = Bits::full(self.cols());
            for x in xs.iter() {
                ys.intersect_with(&rows[x]);
            }
            let rect = Relation::rectangle(n, self.cols(), &self.left.close(&xs), &self.right.close(&ys));
            rect.is_subset(r)
        })
    }

    pub fn is_tensor(&self, r: &Relation) -> bool {
        let slices = self.is_tensor_by_slices(r);
        debug_assert_eq!(
            slices,
            self.is_tensor_by_rectangles(r),
            "slice and rectangle tensor tests disagree on {}",
            self.fmt(r)
        );
        slices
    }

    /// All tensors in shortlex order, failing once more than `limit` exist.
    pub fn enumerate(&self, limit: usize) -> Result<TensorFamily> {
        let (rows, cols) = (self.rows(), self.cols());
        let members = all_closed_sets(
            rows * cols,
            |s| self.t_bar(&Relation::from_bits(rows, cols, s.clone())).bits().clone(),
            limit,
        )
        .map_err(|limit| Error::GuardExceeded { limit })?;
        let mut members: Vec<Relation> = members
            .into_iter()
            .map(|b| Relation::from_bits(rows, cols, b))
            .collect();
        members.sort();
        Ok(TensorFamily::new(self.clone(), members))
    }

    // ---- full form ----

    pub fn full_rows(&self) -> usize {
        self.left.full_len()
    }

    pub fn full_cols(&self) -> usize {
        self.right.full_len()
    }

    /// `∅̄ = (⊥_A × 𝒰B) ∪ (𝒰A × ⊥_B)`.
    pub fn empty_bar(&self) -> Relation {
        let (n, m) = (self.full_rows(), self.full_cols());
        Relation::rectangle(n, m, self.left.bottom(), &Bits::full(m))
            .union(&Relation::rectangle(n, m, &Bits::full(n), self.right.bottom()))
    }

    /// Full pure tensor `x ⊗ y = (x̄ × ȳ) ∪ ∅̄` over full indices.
    pub fn full_pure(&self, x: usize, y: usize) -> Relation {
        let (n, m) = (self.full_rows(), self.full_cols());
        Relation::rectangle(n, m, &self.left.down_full(x), &self.right.down_full(y)).union(&self.empty_bar())
    }

    pub fn full_is_tensor(&self, r: &Relation) -> bool {
        (0..self.full_rows()).all(|a| self.right.is_closed_full(&r.row(a)))
            && (0..self.full_cols()).all(|b| self.left.is_closed_full(&r.col(b)))
    }

    /// Least full tensor containing `r`.
    pub fn full_closure(&self, r: &Relation) -> Relation {
        let mut cur = r.clone();
        loop {
            let mut next = Relation::empty(self.full_rows(), self.full_cols());
            for a in 0..self.full_rows() {
                next.set_row_union(a, &self.right.close_full(&cur.row(a)));
            }
            for b in 0..self.full_cols() {
                let col = self.left.close_full(&next.col(b));
                next.set_col_union(b, &col);
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `T ↦ T ∖ ∅̄`, re-indexed to the truncated carriers.
    pub fn truncate(&self, full: &Relation) -> Result<Relation> {
        if !self.full_is_tensor(full) || !self.empty_bar().is_subset(full) {
            return Err(Error::NotATensor(format!(
                "{} is not a full tensor",
                full.fmt_with(self.left.full_labels(), self.right.full_labels())
            )));
        }
        Ok(Relation::from_pairs(
            self.rows(),
            self.cols(),
            full.pairs().filter_map(|(a, b)| Some((self.left.new_index(a)?, self.right.new_index(b)?))),
        ))
    }

    /// `T' ↦ T' ∪ ∅̄` over the full carriers.
    pub fn untruncate(&self, t: &Relation) -> Result<Relation> {
        if !self.is_tensor(t) {
            return Err(Error::NotATensor(self.fmt(t)));
        }
        Ok(t
            .embed(self.full_rows(), self.full_cols(), self.left.orig(), self.right.orig())
            .union(&self.empty_bar()))
    }
}

/// The tensors over a base, in shortlex order (`R0 = ∅`).
#[derive(Clone, Debug)]
pub struct TensorFamily {
    base: TensorBase,
    members: Vec<Relation>,
    index: HashMap<Relation, usize>,
}

impl TensorFamily {
    pub fn new(base: TensorBase, members: Vec<Relation>) -> Self {
        let index = members.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        TensorFamily { base, members, index }
    }

    pub fn base(&self) -> &TensorBase {
        &self.base
    }

    pub fn members(&self) -> &[Relation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &Relation {
        &self.members[i]
    }

    pub fn index_of(&self, r: &Relation) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn name(i: usize) -> String {
        format!("R{i}")
    }

    /// The members ordered by inclusion, labelled `R0, R1, ...`.
    pub fn lattice(&self) -> FinitePoset {
        let n = self.len();
        let labels = (0..n).map(Self::name).collect();
        let down: Vec<Bits> = crate::par::map(&self.members, |r| {
            Bits::from_indices(n, (0..n).filter(|&j| self.members[j].is_subset(r)))
        });
        FinitePoset::from_down_sets(labels, down).expect("inclusion is a partial order")
    }

    /// Index of `t̄(R_i ∪ R_j)`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let u = self.members[i].union(&self.members[j]);
        self.index_of(&self.base.t_bar(&u)).expect("closure of a union is a member")
    }

    /// Index of `R_i ∩ R_j`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.members[i].intersection(&self.members[j]))
            .expect("tensors are closed under intersection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{AugmentedPoset, FamilyKind};

    fn chain3() -> TensorBase {
        TensorBase::lattice_square("CHAIN3", &FinitePoset::chain(3))
    }

    #[test]
    fn chain3_has_six_tensors_in_printed_order() {
        let base = chain3();
        let fam = base.enumerate(DEFAULT_GUARD).unwrap();
        assert_eq!(fam.len(), 6);
        // truncated carrier {1,2} is re-indexed to {0,1}
        let expect = [
            vec![],
            vec![(0, 0)],
            vec![(0, 0), (0, 1)],
            vec![(0, 0), (1, 0)],
            vec![(0, 0), (0, 1), (1, 0)],
            vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        ];
        for (i, pairs) in expect.iter().enumerate() {
            assert_eq!(fam.get(i), &Relation::from_pairs(2, 2, pairs.iter().copied()));
            assert!(base.is_tensor(fam.get(i)));
        }
        assert_eq!(base.pure(0, 0), *fam.get(1));
        assert_eq!(base.pure(1, 1), *fam.get(5));
    }

    #[test]
    fn b4_square_has_sixteen_tensors() {
        let b4 = FinitePoset::powerset(&["p", "q"]);
        let base = TensorBase::lattice_square("B4", &b4);
        let fam = base.enumerate(DEFAULT_GUARD).unwrap();
        assert_eq!(fam.len(), 16);
        // (1,p) -> {(1,p),(p,p),(q,p)}; truncated order is p q 1
        let pure = base.pure(2, 0);
        assert_eq!(pure, Relation::from_pairs(3, 3, [(0, 0), (1, 0), (2, 0)]));
    }

    #[test]
    fn singleton_lattice_has_only_the_empty_tensor() {
        let base = TensorBase::lattice_square("ONE", &FinitePoset::chain(1));
        let fam = base.enumerate(DEFAULT_GUARD).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam.get(0).is_empty());
    }

    #[test]
    fn closure_routes_agree_on_small_bases() {
        for p in [FinitePoset::chain(3), FinitePoset::m3(), FinitePoset::n5()] {
            for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Empty, FamilyKind::EmptySet] {
                let s = Side::poset("P", AugmentedPoset::with_kind(p.clone(), kind));
                let base = TensorBase::new(s.clone(), s);
                let (n, m) = (base.rows(), base.cols());
                for mask in 0..1u64 << (n * m).min(16) {
                    let r = Relation::from_bits(n, m, Bits::from_mask(n * m, mask));
                    let r = base.down_closure(&r);
                    let fix = base.t_bar(&r);
                    assert_eq!(fix, base.t_bar_by_steps(&r).unwrap());
                    assert!(base.is_tensor(&fix));
                    assert!(base.t_step(&r).unwrap().is_subset(&fix));
                    assert!(r.is_subset(&base.t_step(&r).unwrap()));
                }
            }
        }
    }

    #[test]
    fn guard_is_reported() {
        let base = TensorBase::lattice_square("B8", &FinitePoset::powerset(&["p", "q", "r"]));
        assert_eq!(base.enumerate(10).unwrap_err(), Error::GuardExceeded { limit: 10 });
    }

    #[test]
    fn truncation_round_trip() {
        let base = chain3();
        let fam = base.enumerate(DEFAULT_GUARD).unwrap();
        assert_eq!(base.untruncate(&base.empty()).unwrap(), base.empty_bar());
        for t in fam.members() {
            let full = base.untruncate(t).unwrap();
            assert!(base.full_is_tensor(&full));
            assert_eq!(&base.truncate(&full).unwrap(), t);
        }
        // x ⊗ y corresponds to ↓(x, y)
        assert_eq!(base.truncate(&base.full_pure(2, 1)).unwrap(), base.pure(1, 0));
    }
}
