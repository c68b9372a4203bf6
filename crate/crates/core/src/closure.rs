//! Finite closure spaces given by an explicit intersection-closed family.

use std::sync::OnceLock;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// A finite ground set with an intersection-closed family of closed sets.
/// The family always contains the ground set and is kept sorted.
#[derive(Clone)]
pub struct ClosureSpace {
    labels: Vec<String>,
    closed: Vec<Bits>,
    props: OnceLock<SpaceProperties>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceProperties {
    /// `∅` is closed.
    pub unbounded: bool,
    /// `cl(∅)` is a single point.
    pub uniquely_bounded: bool,
    /// Distinct points have distinct closures.
    pub t0: bool,
    /// Every polar is closed.
    pub polarized: bool,
    /// Smallest point whose polar is not closed.
    pub polar_witness: Option<usize>,
}

impl ClosureSpace {
    /// Closes `sets` under intersections and adds the ground set.
    pub fn from_generators(labels: Vec<String>, sets: &[Bits]) -> Result<Self> {
        let n = labels.len();
        for s in sets {
            if s.universe() != n {
                return Err(Error::OutOfRange {
                    index: s.universe(),
                    size: n,
                });
            }
        }
        let mut closed: Vec<Bits> = vec![Bits::full(n)];
        closed.extend(sets.iter().cloned());
        closed.sort();
        closed.dedup();
        loop {
            let mut fresh = Vec::new();
            for i in 0..closed.len() {
                for j in i + 1..closed.len() {
                    let m = closed[i].intersection(&closed[j]);
                    if closed.binary_search(&m).is_err() {
                        fresh.push(m);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            closed.extend(fresh);
            closed.sort();
            closed.dedup();
        }
        Ok(Self::from_closed_unchecked(labels, closed))
    }

    /// Points labelled `0..n`.
    pub fn from_generators_n(n: usize, sets: &[Bits]) -> Result<Self> {
        Self::from_generators((0..n).map(|i| i.to_string()).collect(), sets)
    }

    /// Wraps a family already known to be intersection-closed and to contain
    /// the ground set.
    pub(crate) fn from_closed_unchecked(labels: Vec<String>, mut closed: Vec<Bits>) -> Self {
        closed.sort();
        closed.dedup();
        debug_assert!(closed.last().is_some_and(|c| c.is_full()));
        ClosureSpace {
            labels,
            closed,
            props: OnceLock::new(),
        }
    }

    /// Every subset closed.
    pub fn discrete(n: usize) -> Self {
        let closed = (0..1u64 << n).map(|m| Bits::from_mask(n, m)).collect();
        Self::from_closed_unchecked((0..n).map(|i| i.to_string()).collect(), closed)
    }

    /// The principal ideals of a complete lattice.
    pub fn principal_ideal_space(p: &FinitePoset) -> Result<Self> {
        p.require_complete("principal ideal space carrier")?;
        let closed = (0..p.len()).map(|x| p.down_of(x).clone()).collect();
        Ok(Self::from_closed_unchecked(p.labels().to_vec(), closed))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn fmt_set(&self, s: &Bits) -> String {
        let items: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", items.join(" "))
    }

    /// The closed sets in shortlex order; the first is `⊥`, the last the
    /// ground set.
    pub fn closed_sets(&self) -> &[Bits] {
        &self.closed
    }

    pub fn is_closed(&self, s: &Bits) -> bool {
        self.closed.binary_search(s).is_ok()
    }

    /// Position of a closed set in `closed_sets`.
    pub fn closed_index(&self, s: &Bits) -> Option<usize> {
        self.closed.binary_search(s).ok()
    }

    /// Least closed superset.
    pub fn closure_of(&self, s: &Bits) -> Bits {
        let mut r = Bits::full(self.len());
        for c in &self.closed {
            if s.is_subset(c) {
                r.intersect_with(c);
            }
        }
        r
    }

    /// `x̄`.
    pub fn point_closure(&self, x: usize) -> Bits {
        self.closure_of(&Bits::singleton(self.len(), x))
    }

    /// `⊥ = cl(∅)`.
    pub fn bottom(&self) -> Bits {
        self.closed[0].clone()
    }

    /// `x^⊥ = {y : x̄ ∩ ȳ = ⊥}`.
    pub fn polar(&self, x: usize) -> Bits {
        let bottom = self.bottom();
        let cx = self.point_closure(x);
        Bits::from_indices(
            self.len(),
            (0..self.len()).filter(|&y| cx.intersection(&self.point_closure(y)) == bottom),
        )
    }

    /// Specialization preorder as down-sets: `spec[y] = ȳ`, so `x <= y`
    /// iff `x ∈ ȳ`.
    pub fn specialization(&self) -> Vec<Bits> {
        (0..self.len()).map(|y| self.point_closure(y)).collect()
    }

    /// The specialization order as a poset, available for T0 spaces.
    pub fn specialization_poset(&self) -> Option<FinitePoset> {
        if !self.properties().t0 {
            return None;
        }
        FinitePoset::from_down_sets(self.labels.clone(), self.specialization()).ok()
    }

    pub fn properties(&self) -> &SpaceProperties {
        self.props.get_or_init(|| {
            let bottom = self.bottom();
            let closures = self.specialization();
            let mut sorted = closures.clone();
            sorted.sort();
            sorted.dedup();
            let polar_witness = (0..self.len()).find(|&x| !self.is_closed(&self.polar(x)));
            SpaceProperties {
                unbounded: bottom.is_empty(),
                uniquely_bounded: bottom.count() == 1,
                t0: sorted.len() == closures.len(),
                polarized: polar_witness.is_none(),
                polar_witness,
            }
        })
    }

    /// Closed sets ordered by inclusion, labelled by their members.
    pub fn closed_set_lattice(&self) -> FinitePoset {
        let m = self.closed.len();
        let labels = self.closed.iter().map(|c| self.fmt_set(c)).collect();
        let down = self
            .closed
            .iter()
            .map(|c| Bits::from_indices(m, (0..m).filter(|&j| self.closed[j].is_subset(c))))
            .collect();
        FinitePoset::from_down_sets(labels, down).expect("inclusion is a partial order")
    }

    /// The subspace on the points outside `⊥`, with the map from new to old
    /// point indices.
    pub fn unbounded_coreflection(&self) -> (ClosureSpace, Vec<usize>) {
        let keep = self.bottom().complement();
        let old: Vec<usize> = keep.iter().collect();
        let m = old.len();
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_of[o] = i;
        }
        let labels = old.iter().map(|&o| self.labels[o].clone()).collect();
        let closed = self
            .closed
            .iter()
            .map(|c| Bits::from_indices(m, c.intersection(&keep).iter().map(|j| new_of[j])))
            .collect();
        (Self::from_closed_unchecked(labels, closed), old)
    }

}

impl PartialEq for ClosureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.closed == other.closed
    }
}

impl Eq for ClosureSpace {}

impl std::fmt::Debug for ClosureSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sets: Vec<String> = self.closed.iter().map(|c| self.fmt_set(c)).collect();
        write!(f, "ClosureSpace[{}; {}]", self.labels.join(" "), sets.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, xs: &[usize]) -> Bits {
        Bits::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn generation_examples() {
        let s = ClosureSpace::from_generators_n(2, &[]).unwrap();
        assert_eq!(s.closed_sets(), &[Bits::full(2)]);
        let s = ClosureSpace::from_generators_n(2, &[b(2, &[0]), b(2, &[1])]).unwrap();
        assert_eq!(s.closed_sets().len(), 4);
        assert!(s.is_closed(&Bits::new(2)));
        let s = ClosureSpace::from_generators_n(3, &[b(3, &[0, 1]), b(3, &[1, 2])]).unwrap();
        assert!(s.is_closed(&b(3, &[1])));
        assert_eq!(s.closed_sets().len(), 4);
        assert!(ClosureSpace::from_generators_n(2, &[b(3, &[0])]).is_err());
    }

    #[test]
    fn closure_examples() {
        let d = ClosureSpace::discrete(2);
        assert!(d.closure_of(&Bits::new(2)).is_empty());
        let c3 = ClosureSpace::principal_ideal_space(&FinitePoset::chain(3)).unwrap();
        assert_eq!(c3.closure_of(&b(3, &[0, 1])), b(3, &[0, 1]));
        assert_eq!(c3.closure_of(&b(3, &[1])), b(3, &[0, 1]));
        for c in c3.closed_sets() {
            assert_eq!(&c3.closure_of(c), c);
        }
    }

    #[test]
    fn property_examples() {
        let d = ClosureSpace::discrete(2).properties().clone();
        assert!(d.unbounded && d.t0 && d.polarized);
        let m3 = ClosureSpace::principal_ideal_space(&FinitePoset::m3()).unwrap();
        assert!(!m3.properties().polarized);
        assert_eq!(m3.properties().polar_witness, Some(1));
        let c3 = ClosureSpace::principal_ideal_space(&FinitePoset::chain(3)).unwrap();
        let p = c3.properties();
        assert!(!p.unbounded && p.uniquely_bounded && p.t0 && p.polarized);
        let non_t0 = ClosureSpace::from_generators_n(3, &[b(3, &[0, 1])]).unwrap();
        assert!(!non_t0.properties().t0);
        assert!(non_t0.specialization_poset().is_none());
    }

    #[test]
    fn lattice_and_coreflection() {
        let d = ClosureSpace::discrete(2).closed_set_lattice();
        assert!(d.is_isomorphism(&FinitePoset::powerset(&["p", "q"]), &[0, 1, 2, 3]));
        let single = ClosureSpace::from_generators_n(3, &[]).unwrap().closed_set_lattice();
        assert_eq!(single.len(), 1);
        let n5 = FinitePoset::n5();
        let l = ClosureSpace::principal_ideal_space(&n5).unwrap().closed_set_lattice();
        assert_eq!(l.len(), 5);
        assert_eq!(l.properties().pseudocomplemented, n5.properties().pseudocomplemented);

        let c3 = ClosureSpace::principal_ideal_space(&FinitePoset::chain(3)).unwrap();
        let (u, old) = c3.unbounded_coreflection();
        assert_eq!(old, vec![1, 2]);
        assert_eq!(u.closed_sets(), &[b(2, &[]), b(2, &[0]), b(2, &[0, 1])]);
        let (u, _) = ClosureSpace::discrete(2).unbounded_coreflection();
        assert_eq!(u, ClosureSpace::discrete(2));
        let (u, _) = ClosureSpace::from_generators_n(2, &[]).unwrap().unbounded_coreflection();
        assert_eq!(u.len(), 0);
        assert_eq!(u.closed_sets().len(), 1);
        assert!(ClosureSpace::principal_ideal_space(&FinitePoset::antichain(2)).is_err());
    }
}
