//! One factor of a tensor product: an augmented poset or a closure space,
//! together with its truncation.

use std::sync::Arc;

use crate::bits::Bits;
use crate::closure::ClosureSpace;
use crate::completion::{AugmentedPoset, FamilyKind};
use crate::order::FinitePoset;

#[derive(Clone, Debug)]
pub(crate) enum SideKind {
    Poset {
        full: AugmentedPoset,
        trunc: AugmentedPoset,
    },
    Space {
        full: ClosureSpace,
        trunc: ClosureSpace,
    },
}

#[derive(Debug)]
struct SideInner {
    name: String,
    kind: SideKind,
    /// Truncated index to full index.
    orig: Vec<usize>,
    /// Full index to truncated index.
    new_of: Vec<Option<usize>>,
    /// Least closed set of the full carrier.
    bottom: Bits,
    /// Point closures in the truncated carrier.
    down: Vec<Bits>,
}

/// A factor of a tensor product. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Side(Arc<SideInner>);

impl Side {
    pub fn poset(name: impl Into<String>, ap: AugmentedPoset) -> Self {
        let (trunc, orig) = ap.truncate();
        let down = (0..trunc.len()).map(|x| trunc.poset().down_of(x).clone()).collect();
        let bottom = ap.bottom().clone();
        Self::assemble(name.into(), SideKind::Poset { full: ap, trunc }, orig, bottom, down)
    }

    /// A poset with the powerset family, the usual complete-lattice case.
    pub fn lattice(name: impl Into<String>, p: &FinitePoset) -> Self {
        Self::poset(name, AugmentedPoset::with_kind(p.clone(), FamilyKind::Powerset))
    }

    pub fn space(name: impl Into<String>, s: ClosureSpace) -> Self {
        let (trunc, orig) = s.unbounded_coreflection();
        let down = (0..trunc.len()).map(|x| trunc.point_closure(x)).collect();
        let bottom = s.bottom();
        Self::assemble(name.into(), SideKind::Space { full: s, trunc }, orig, bottom, down)
    }

    fn assemble(name: String, kind: SideKind, orig: Vec<usize>, bottom: Bits, down: Vec<Bits>) -> Self {
        let mut new_of = vec![None; bottom.universe()];
        for (i, &o) in orig.iter().enumerate() {
            new_of[o] = Some(i);
        }
        Side(Arc::new(SideInner {
            name,
            kind,
            orig,
            new_of,
            bottom,
            down,
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Size of the truncated carrier.
    pub fn len(&self) -> usize {
        self.0.orig.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.orig.is_empty()
    }

    pub fn full_len(&self) -> usize {
        self.0.new_of.len()
    }

    pub fn orig(&self) -> &[usize] {
        &self.0.orig
    }

    pub fn new_index(&self, full: usize) -> Option<usize> {
        self.0.new_of[full]
    }

    /// `⊥` in the full carrier.
    pub fn bottom(&self) -> &Bits {
        &self.0.bottom
    }

    pub fn full_labels(&self) -> &[String] {
        match &self.0.kind {
            SideKind::Poset { full, .. } => full.poset().labels(),
            SideKind::Space { full, .. } => full.labels(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match &self.0.kind {
            SideKind::Poset { trunc, .. } => trunc.poset().labels(),
            SideKind::Space { trunc, .. } => trunc.labels(),
        }
    }

    /// The full augmented poset, for poset sides.
    pub fn augmented(&self) -> Option<&AugmentedPoset> {
        match &self.0.kind {
            SideKind::Poset { full, .. } => Some(full),
            SideKind::Space { .. } => None,
        }
    }

    /// The truncated augmented poset, for poset sides.
    pub fn truncated(&self) -> Option<&AugmentedPoset> {
        match &self.0.kind {
            SideKind::Poset { trunc, .. } => Some(trunc),
            SideKind::Space { .. } => None,
        }
    }

    /// The full closure space, for space sides.
    pub fn space_full(&self) -> Option<&ClosureSpace> {
        match &self.0.kind {
            SideKind::Space { full, .. } => Some(full),
            SideKind::Poset { .. } => None,
        }
    }

    /// Point closure in the truncated carrier (`↓x` for posets).
    #[inline]
    pub fn down(&self, x: usize) -> &Bits {
        &self.0.down[x]
    }

    pub fn down_closure(&self, xs: &Bits) -> Bits {
        let mut r = Bits::new(self.len());
        for x in xs.iter() {
            r.union_with(&self.0.down[x]);
        }
        r
    }

    /// Closure in the truncated carrier.
    pub fn close(&self, xs: &Bits) -> Bits {
        match &self.0.kind {
            SideKind::Poset { trunc, .. } => trunc.ideal_closure(xs),
            SideKind::Space { trunc, .. } => trunc.closure_of(xs),
        }
    }

    pub fn is_closed(&self, xs: &Bits) -> bool {
        match &self.0.kind {
            SideKind::Poset { trunc, .. } => trunc.is_ideal(xs),
            SideKind::Space { trunc, .. } => trunc.is_closed(xs),
        }
    }

    /// Closure in the full carrier.
    pub fn close_full(&self, xs: &Bits) -> Bits {
        match &self.0.kind {
            SideKind::Poset { full, .. } => full.ideal_closure(xs),
            SideKind::Space { full, .. } => full.closure_of(xs),
        }
    }

    pub fn is_closed_full(&self, xs: &Bits) -> bool {
        match &self.0.kind {
            SideKind::Poset { full, .. } => full.is_ideal(xs),
            SideKind::Space { full, .. } => full.is_closed(xs),
        }
    }

    /// Full point closure `x̄` (`↓x` for posets).
    pub fn down_full(&self, x: usize) -> Bits {
        match &self.0.kind {
            SideKind::Poset { full, .. } => full.poset().down_of(x).clone(),
            SideKind::Space { full, .. } => full.point_closure(x),
        }
    }

    /// One `Δ̌`-rule pass over a down-set of the truncated carrier; `None`
    /// for closure-space sides, where no one-step operator is defined.
    pub fn step(&self, r: &Bits) -> Option<Bits> {
        match &self.0.kind {
            SideKind::Poset { trunc, .. } => Some(trunc.step_down_set(r)),
            SideKind::Space { .. } => None,
        }
    }

    /// Normalized `(maximal elements, Δ̌X)` rules of the truncated family.
    pub fn rules(&self) -> &[(Bits, Bits)] {
        match &self.0.kind {
            SideKind::Poset { trunc, .. } => trunc.rules(),
            SideKind::Space { .. } => &[],
        }
    }

    /// Lifts a truncated subset to full indices.
    pub fn lift(&self, xs: &Bits) -> Bits {
        Bits::from_indices(self.full_len(), xs.iter().map(|i| self.0.orig[i]))
    }

    /// Restricts a full subset to the truncated carrier.
    pub fn restrict(&self, xs: &Bits) -> Bits {
        Bits::from_indices(self.len(), xs.iter().filter_map(|i| self.0.new_of[i]))
    }

    /// Whether both sides have the same truncated carrier and order, so that
    /// relations can be composed through them.
    pub fn same_carrier(&self, other: &Side) -> bool {
        self.labels() == other.labels() && self.0.down == other.0.down
    }
}
