//! Binary relations between two finite carriers, stored as a flat bitset of
//! pairs in row-major order.

use std::fmt;

use crate::bits::Bits;
use crate::order::FinitePoset;

/// A relation `R ⊆ A × B`; the pair `(a, b)` has index `a * |B| + b`.
///
/// Relations compare in shortlex order on their pair indices, which is the
/// order used to name tensors `R0, R1, ...`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: usize,
    cols: usize,
    bits: Bits,
}

impl Relation {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Relation {
            rows,
            cols,
            bits: Bits::new(rows * cols),
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Relation {
            rows,
            cols,
            bits: Bits::full(rows * cols),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(rows: usize, cols: usize, pairs: I) -> Self {
        let mut r = Self::empty(rows, cols);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_bits(rows: usize, cols: usize, bits: Bits) -> Self {
        assert_eq!(bits.universe(), rows * cols);
        Relation { rows, cols, bits }
    }

    /// `X × Y`.
    pub fn rectangle(rows: usize, cols: usize, xs: &Bits, ys: &Bits) -> Self {
        let mut r = Self::empty(rows, cols);
        for a in xs.iter() {
            r.set_row_union(a, ys);
        }
        r
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits.contains(a * self.cols + b)
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        assert!(a < self.rows && b < self.cols);
        self.bits.insert(a * self.cols + b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.bits.remove(a * self.cols + b);
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count(&self) -> usize {
        self.bits.count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let c = self.cols;
        self.bits.iter().map(move |i| (i / c, i % c))
    }

    /// `aR`.
    pub fn row(&self, a: usize) -> Bits {
        Bits::from_indices(self.cols, (0..self.cols).filter(|&b| self.contains(a, b)))
    }

    /// `Rb`.
    pub fn col(&self, b: usize) -> Bits {
        Bits::from_indices(self.rows, (0..self.rows).filter(|&a| self.contains(a, b)))
    }

    pub fn set_row_union(&mut self, a: usize, ys: &Bits) {
        for b in ys.iter() {
            self.insert(a, b);
        }
    }

    pub fn set_col_union(&mut self, b: usize, xs: &Bits) {
        for a in xs.iter() {
            self.insert(a, b);
        }
    }

    /// `XR = ⋃{xR : x ∈ X}`.
    pub fn image(&self, xs: &Bits) -> Bits {
        let mut r = Bits::new(self.cols);
        for a in xs.iter() {
            r.union_with(&self.row(a));
        }
        r
    }

    /// `RY = ⋃{Ry : y ∈ Y}`.
    pub fn preimage(&self, ys: &Bits) -> Bits {
        let mut r = Bits::new(self.rows);
        for b in ys.iter() {
            r.union_with(&self.col(b));
        }
        r
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.same_shape(other) && self.bits.is_subset(&other.bits)
    }

    pub fn same_shape(&self, other: &Relation) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert!(self.same_shape(other));
        Relation {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.union(&other.bits),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert!(self.same_shape(other));
        Relation {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.intersection(&other.bits),
        }
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        assert!(self.same_shape(other));
        Relation {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.difference(&other.bits),
        }
    }

    pub fn union_with(&mut self, other: &Relation) {
        self.bits.union_with(&other.bits);
    }

    /// `R · S = {(a, c) : a R b and b S c for some b}`; `None` when the middle
    /// carriers differ.
    pub fn product(&self, other: &Relation) -> Option<Relation> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Relation::empty(self.rows, other.cols);
        let other_rows: Vec<Bits> = (0..other.rows).map(|b| other.row(b)).collect();
        for a in 0..self.rows {
            let mut acc = Bits::new(other.cols);
            for b in self.row(a).iter() {
                acc.union_with(&other_rows[b]);
            }
            out.set_row_union(a, &acc);
        }
        Some(out)
    }

    /// `R^op`.
    pub fn transpose(&self) -> Relation {
        Relation::from_pairs(self.cols, self.rows, self.pairs().map(|(a, b)| (b, a)))
    }

    /// Down-closure in the product order of `pa × pb`.
    pub fn down_closure(&self, pa: &FinitePoset, pb: &FinitePoset) -> Relation {
        let mut out = Relation::empty(self.rows, self.cols);
        for (a, b) in self.pairs() {
            out.union_with(&principal(pa, pb, a, b));
        }
        out
    }

    pub fn is_down_closed(&self, pa: &FinitePoset, pb: &FinitePoset) -> bool {
        self.pairs().all(|(a, b)| principal(pa, pb, a, b).is_subset(self))
    }

    /// Relabels rows and columns through injective index maps into a larger
    /// carrier.
    pub fn embed(&self, rows: usize, cols: usize, row_map: &[usize], col_map: &[usize]) -> Relation {
        Relation::from_pairs(rows, cols, self.pairs().map(|(a, b)| (row_map[a], col_map[b])))
    }

    pub fn fmt_with(&self, la: &[String], lb: &[String]) -> String {
        let items: Vec<String> = self
            .pairs()
            .map(|(a, b)| format!("({},{})", la[a], lb[b]))
            .collect();
        format!("{{{}}}", items.join(" "))
    }
}

/// `↓(a, b) = ↓a × ↓b`.
pub fn principal(pa: &FinitePoset, pb: &FinitePoset, a: usize, b: usize) -> Relation {
    Relation::rectangle(pa.len(), pb.len(), pa.down_of(a), pb.down_of(b))
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let r = Relation::from_pairs(2, 3, [(0, 1), (1, 2)]);
        let s = Relation::from_pairs(3, 2, [(1, 0), (2, 1), (0, 0)]);
        let rs = r.product(&s).unwrap();
        assert_eq!(rs, Relation::from_pairs(2, 2, [(0, 0), (1, 1)]));
        assert_eq!(
            rs.transpose(),
            s.transpose().product(&r.transpose()).unwrap()
        );
        assert!(r.product(&r).is_none());
        assert!(r.product(&Relation::empty(3, 4)).unwrap().is_empty());
    }

    #[test]
    fn slices_and_closure() {
        let c3 = FinitePoset::chain(3);
        let r = Relation::from_pairs(3, 3, [(2, 1)]).down_closure(&c3, &c3);
        assert_eq!(r.count(), 6);
        assert_eq!(r.row(0).to_vec(), vec![0, 1]);
        assert_eq!(r.col(1).to_vec(), vec![0, 1, 2]);
        assert!(r.is_down_closed(&c3, &c3));
        assert!(!Relation::from_pairs(3, 3, [(1, 1)]).is_down_closed(&c3, &c3));
    }
}
