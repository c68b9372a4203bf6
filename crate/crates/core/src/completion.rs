//! Augmented posets `B_𝒴`: 𝒴-ideals, standard completions, truncation and
//! distributivity at the bottom.

use crate::bits::{all_closed_sets, Bits};
use crate::closure::ClosureSpace;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// Named subset selections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Powerset,
    Finite,
    Directed,
    Chains,
    Singletons,
    Empty,
    EmptySet,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::Powerset,
        FamilyKind::Finite,
        FamilyKind::Directed,
        FamilyKind::Chains,
        FamilyKind::Singletons,
        FamilyKind::Empty,
        FamilyKind::EmptySet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Powerset => "@powerset",
            FamilyKind::Finite => "@finite",
            FamilyKind::Directed => "@directed",
            FamilyKind::Chains => "@chains",
            FamilyKind::Singletons => "@singletons",
            FamilyKind::Empty => "@empty",
            FamilyKind::EmptySet => "@emptyset",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyKind> {
        FamilyKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// The members of this selection on `p`, in shortlex order.
    pub fn build(self, p: &FinitePoset) -> Vec<Bits> {
        let n = p.len();
        let all = || all_subsets(n);
        let mut v: Vec<Bits> = match self {
            FamilyKind::Powerset | FamilyKind::Finite => all().collect(),
            FamilyKind::Directed => all()
                .filter(|s| !s.is_empty())
                .filter(|s| {
                    s.iter().all(|x| {
                        s.iter()
                            .all(|y| p.up_of(x).intersection(p.up_of(y)).intersects(s))
                    })
                })
                .collect(),
            FamilyKind::Chains => all()
                .filter(|s| !s.is_empty())
                .filter(|s| s.iter().all(|x| s.iter().all(|y| p.leq(x, y) || p.leq(y, x))))
                .collect(),
            FamilyKind::Singletons => (0..n).map(|x| Bits::singleton(n, x)).collect(),
            FamilyKind::Empty => Vec::new(),
            FamilyKind::EmptySet => vec![Bits::new(n)],
        };
        v.sort();
        v
    }
}

fn all_subsets(n: usize) -> impl Iterator<Item = Bits> {
    assert!(n <= 20, "subset family over {n} points is too large");
    (0..1u64 << n).map(move |m| Bits::from_mask(n, m))
}

/// A poset with a distinguished family of subsets.
///
/// Besides the raw family, the structure keeps a normalized rule list: each
/// member is replaced by its maximal elements, and members whose cut is
/// already the down-closure are dropped. Both describe the same 𝒴-ideals.
#[derive(Clone, Debug)]
pub struct AugmentedPoset {
    poset: FinitePoset,
    family: Vec<Bits>,
    rules: Vec<(Bits, Bits)>,
    bottom: Bits,
}

impl AugmentedPoset {
    pub fn new(poset: FinitePoset, family: Vec<Bits>) -> Result<Self> {
        let n = poset.len();
        for s in &family {
            if s.universe() != n {
                return Err(Error::OutOfRange {
                    index: s.universe(),
                    size: n,
                });
            }
        }
        let mut family = family;
        family.sort();
        family.dedup();
        let mut rules: Vec<(Bits, Bits)> = family
            .iter()
            .map(|y| (poset.maximal(y), poset.cut(y)))
            .filter(|(m, cut)| &poset.down_closure(m) != cut)
            .collect();
        rules.sort();
        rules.dedup();
        let mut ap = AugmentedPoset {
            poset,
            family,
            rules,
            bottom: Bits::new(n),
        };
        ap.bottom = ap.ideal_closure(&Bits::new(n));
        Ok(ap)
    }

    pub fn with_kind(poset: FinitePoset, kind: FamilyKind) -> Self {
        let family = kind.build(&poset);
        Self::new(poset, family).expect("built-in families are in range")
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn family(&self) -> &[Bits] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Normalized `(maximal elements, cut)` pairs that can enlarge a down-set.
    pub fn rules(&self) -> &[(Bits, Bits)] {
        &self.rules
    }

    /// `𝒴̇`: the family plus all singletons.
    pub fn dotted_family(&self) -> Vec<Bits> {
        let n = self.len();
        let mut v = self.family.clone();
        v.extend((0..n).map(|x| Bits::singleton(n, x)));
        v.sort();
        v.dedup();
        v
    }

    /// One application of `Δ_𝒴 X = ⋃{ΔY : Y ∈ 𝒴̇, Y ⊆ X}`.
    pub fn delta_step(&self, x: &Bits) -> Bits {
        let mut r = self.poset.empty_set();
        for y in x.iter() {
            r.union_with(self.poset.down_of(y));
        }
        for y in &self.family {
            if y.is_subset(x) {
                r.union_with(&self.poset.cut(y));
            }
        }
        r
    }

    /// The 𝒴-ideal generated by a down-set, by saturating the rule list.
    fn saturate(&self, mut r: Bits) -> Bits {
        loop {
            let mut changed = false;
            for (m, cut) in &self.rules {
                if m.is_subset(&r) && !cut.is_subset(&r) {
                    r.union_with(cut);
                    changed = true;
                }
            }
            if !changed {
                return r;
            }
        }
    }

    /// One rule pass over a down-set: `r ∪ ⋃{ΔY : Y ∈ 𝒴, Y ⊆ r}`.
    pub(crate) fn step_down_set(&self, r: &Bits) -> Bits {
        let mut out = r.clone();
        for (m, cut) in &self.rules {
            if m.is_subset(r) {
                out.union_with(cut);
            }
        }
        out
    }

    /// Least 𝒴-ideal containing `x`.
    pub fn ideal_closure(&self, x: &Bits) -> Bits {
        self.saturate(self.poset.down_closure(x))
    }

    /// Least 𝒴-ideal containing `x`, by iterating `delta_step` literally.
    pub fn ideal_closure_by_steps(&self, x: &Bits) -> Bits {
        let mut cur = x.clone();
        loop {
            let next = self.delta_step(&cur).union(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_ideal(&self, x: &Bits) -> bool {
        self.poset.is_down_set(x) && self.rules.iter().all(|(m, c)| !m.is_subset(x) || c.is_subset(x))
    }

    /// `⊥_B`: the least 𝒴-ideal.
    pub fn bottom(&self) -> &Bits {
        &self.bottom
    }

    /// The closure system of all 𝒴-ideals.
    pub fn ideal_system(&self) -> ClosureSpace {
        let closed = all_closed_sets(self.len(), |x| self.ideal_closure(x), usize::MAX)
            .expect("no limit");
        ClosureSpace::from_closed_unchecked(self.poset.labels().to_vec(), closed)
    }

    /// `x ⊥ y` relative to the least 𝒴-ideal.
    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        self.poset
            .down_of(x)
            .intersection(self.poset.down_of(y))
            .is_subset(&self.bottom)
    }

    /// `x^⊥ = {y : ↓x ∩ ↓y ⊆ ⊥_B}`.
    pub fn polar(&self, x: usize) -> Bits {
        Bits::from_indices(self.len(), (0..self.len()).filter(|&y| self.orthogonal(x, y)))
    }

    /// Distributivity at the bottom, computed two ways that must agree:
    /// every polar is a 𝒴-ideal, and the witness form
    /// `a ∈ ΔY ∖ ⊥ ⇒ ↓a ∩ ↓Y ∖ ⊥ ≠ ∅` for every `Y ∈ 𝒴`.
    pub fn bottom_distributivity(&self) -> BottomDistributivity {
        let polar_failure = (0..self.len()).find(|&x| !self.is_ideal(&self.polar(x)));
        let witness = self.bottom_distributivity_witness();
        assert_eq!(
            polar_failure.is_none(),
            witness.is_none(),
            "polar form and witness form of distributivity at the bottom disagree"
        );
        BottomDistributivity {
            holds: witness.is_none(),
            polar_failure,
            witness,
        }
    }

    /// First `(Y, a)` with `a ∈ ΔY ∖ ⊥` and `↓a ∩ ↓Y ⊆ ⊥`.
    pub fn bottom_distributivity_witness(&self) -> Option<(Bits, usize)> {
        for y in &self.family {
            let down_y = self.poset.down_closure(y);
            let cut = self.poset.cut(y).difference(&self.bottom);
            for a in cut.iter() {
                if self
                    .poset
                    .down_of(a)
                    .intersection(&down_y)
                    .difference(&self.bottom)
                    .is_empty()
                {
                    return Some((y.clone(), a));
                }
            }
        }
        None
    }

    /// The truncation `B̌ = B ∖ ⊥` with `𝒳̌ = {X ∖ ⊥ : X ∈ 𝒳, X ∖ ⊥ ≠ ∅ or ⊥ = ∅}`,
    /// and the map from new to old indices.
    pub fn truncate(&self) -> (AugmentedPoset, Vec<usize>) {
        let keep = self.bottom.complement();
        let (sub, old) = self.poset.subposet(&keep);
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_of[o] = i;
        }
        let family = self
            .family
            .iter()
            .map(|x| x.difference(&self.bottom))
            .filter(|x| !x.is_empty() || self.bottom.is_empty())
            .map(|x| Bits::from_indices(old.len(), x.iter().map(|j| new_of[j])))
            .collect();
        let t = AugmentedPoset::new(sub, family).expect("reindexed family is in range");
        (t, old)
    }

    /// Checks `Δ̌X̌ = ΔX ∖ ⊥` for every member that survives truncation.
    pub fn truncation_cut_identity(&self) -> bool {
        let (t, old) = self.truncate();
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_of[o] = i;
        }
        self.family
            .iter()
            .filter(|x| !x.difference(&self.bottom).is_empty() || self.bottom.is_empty())
            .all(|x| {
                let xt = Bits::from_indices(t.len(), x.difference(&self.bottom).iter().map(|j| new_of[j]));
                let lhs = t.poset.cut(&xt);
                let rhs = self.poset.cut(x).difference(&self.bottom);
                lhs == Bits::from_indices(t.len(), rhs.iter().map(|j| new_of[j]))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottomDistributivity {
    pub holds: bool,
    /// Smallest element whose polar is not a 𝒴-ideal.
    pub polar_failure: Option<usize>,
    /// A member `Y` and an element `a ∈ ΔY ∖ ⊥` with `↓a ∩ ↓Y ⊆ ⊥`.
    pub witness: Option<(Bits, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &FinitePoset, labels: &[&str]) -> Bits {
        Bits::from_indices(p.len(), labels.iter().map(|l| p.index_of(l).unwrap()))
    }

    #[test]
    fn dotted_family_examples() {
        let c3 = FinitePoset::chain(3);
        let ap = AugmentedPoset::new(c3.clone(), vec![]).unwrap();
        assert_eq!(ap.dotted_family().len(), 3);
        let ap = AugmentedPoset::new(c3.clone(), vec![set(&c3, &["0", "1"])]).unwrap();
        assert_eq!(ap.dotted_family().len(), 4);
        let ap = AugmentedPoset::with_kind(c3, FamilyKind::Singletons);
        assert_eq!(ap.dotted_family(), ap.family().to_vec());
    }

    #[test]
    fn ideal_closure_examples() {
        let c3 = FinitePoset::chain(3);
        let ap = AugmentedPoset::new(c3.clone(), vec![]).unwrap();
        assert_eq!(ap.ideal_closure(&set(&c3, &["1"])), set(&c3, &["0", "1"]));
        assert!(ap.ideal_closure(&c3.empty_set()).is_empty());
        let ap = AugmentedPoset::with_kind(c3.clone(), FamilyKind::Powerset);
        assert_eq!(ap.ideal_closure(&set(&c3, &["1"])), set(&c3, &["0", "1"]));
        assert_eq!(ap.ideal_closure(&c3.empty_set()), set(&c3, &["0"]));
        let m3 = FinitePoset::m3();
        let ap = AugmentedPoset::new(m3.clone(), vec![set(&m3, &["a", "b"])]).unwrap();
        assert_eq!(ap.ideal_closure(&set(&m3, &["a", "b"])), m3.full_set());
    }

    #[test]
    fn ideal_closure_routes_agree() {
        for p in [FinitePoset::m3(), FinitePoset::n5(), FinitePoset::antichain(3)] {
            for kind in FamilyKind::ALL {
                let ap = AugmentedPoset::with_kind(p.clone(), kind);
                for m in 0..1u64 << p.len() {
                    let x = Bits::from_mask(p.len(), m);
                    assert_eq!(ap.ideal_closure(&x), ap.ideal_closure_by_steps(&x));
                }
            }
        }
    }

    #[test]
    fn ideal_system_examples() {
        let n5 = FinitePoset::n5();
        let alex = AugmentedPoset::new(n5.clone(), vec![]).unwrap().ideal_system();
        let down_sets = (0..1u64 << 5)
            .map(|m| Bits::from_mask(5, m))
            .filter(|s| n5.is_down_set(s))
            .count();
        assert_eq!(alex.closed_sets().len(), down_sets);
        let cuts = AugmentedPoset::with_kind(n5.clone(), FamilyKind::Powerset).ideal_system();
        assert_eq!(cuts.closed_sets().len(), 5);
        let directed = AugmentedPoset::with_kind(n5, FamilyKind::Directed).ideal_system();
        assert_eq!(directed.closed_sets().len(), down_sets);
    }

    #[test]
    fn bottom_distributivity_examples() {
        let m3 = FinitePoset::m3();
        let ap = AugmentedPoset::with_kind(m3.clone(), FamilyKind::Singletons);
        assert!(ap.bottom_distributivity().holds);
        let ap = AugmentedPoset::with_kind(m3.clone(), FamilyKind::EmptySet);
        assert!(ap.bottom_distributivity().holds);
        let ap = AugmentedPoset::with_kind(m3.clone(), FamilyKind::Powerset);
        let r = ap.bottom_distributivity();
        assert!(!r.holds);
        let (y, a) = r.witness.unwrap();
        assert!(!ap.poset().cut(&y).difference(ap.bottom()).is_empty());
        assert!(ap.poset().cut(&y).contains(a));
        let b8 = FinitePoset::powerset(&["p", "q", "r"]);
        assert!(AugmentedPoset::with_kind(b8, FamilyKind::Powerset).bottom_distributivity().holds);
    }

    #[test]
    fn truncate_examples() {
        let c3 = FinitePoset::chain(3);
        // Without ∅ in the family the least ideal is ∅, so nothing is cut.
        let ap = AugmentedPoset::new(c3.clone(), vec![set(&c3, &["0", "1"]), set(&c3, &["0"])]).unwrap();
        assert!(ap.bottom().is_empty());
        let (t, old) = ap.truncate();
        assert_eq!(old, vec![0, 1, 2]);
        assert_eq!(t.family().len(), 2);
        // With ∅ in the family the least ideal is {0}.
        let ap = AugmentedPoset::new(
            c3.clone(),
            vec![set(&c3, &["0", "1"]), set(&c3, &["0"]), c3.empty_set()],
        )
        .unwrap();
        let (t, old) = ap.truncate();
        assert_eq!(old, vec![1, 2]);
        assert_eq!(t.family(), &[Bits::singleton(2, 0)]);
        assert!(ap.truncation_cut_identity());
        let ap = AugmentedPoset::new(c3, vec![]).unwrap();
        assert!(ap.truncate().0.family().is_empty());
    }
}
