//! Finite posets: down/up closures, cuts, joins and meets, polars and the
//! structural property record.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::par;

/// A finite partially ordered set with labelled elements.
///
/// The order is stored as one principal ideal and one principal filter per
/// element. Structural properties are computed on first request and cached.
#[derive(Clone)]
pub struct FinitePoset {
    labels: Vec<String>,
    down: Vec<Bits>,
    up: Vec<Bits>,
    props: OnceLock<PosetProperties>,
}

/// Structural flags of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetProperties {
    pub complete_lattice: bool,
    pub pseudocomplemented: bool,
    /// Smallest element without a pseudocomplement.
    pub pseudocomplement_witness: Option<usize>,
    pub atomic: bool,
    pub atomistic: bool,
    /// Smallest element that is not the join of the atoms below it.
    pub atomistic_witness: Option<usize>,
    pub distributive: bool,
    pub complemented: bool,
    pub boolean: bool,
    pub atoms: Vec<usize>,
}

impl FinitePoset {
    /// Builds a poset from principal ideals: `down[x]` lists every `y <= x`.
    /// Reflexivity, antisymmetry and transitivity are verified.
    pub fn from_down_sets(labels: Vec<String>, down: Vec<Bits>) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels)?;
        assert_eq!(down.len(), n);
        for (x, d) in down.iter().enumerate() {
            if !d.contains(x) {
                return Err(Error::NotPartialOrder(format!("`{}` is not below itself", labels[x])));
            }
            for y in d.iter() {
                if y != x && down[y].contains(x) {
                    return Err(Error::Cycle(labels[x].clone(), labels[y].clone()));
                }
                if !down[y].is_subset(d) {
                    return Err(Error::NotPartialOrder(format!(
                        "order is not transitive below `{}`",
                        labels[x]
                    )));
                }
            }
        }
        Ok(Self::from_valid(labels, down))
    }

    fn from_valid(labels: Vec<String>, down: Vec<Bits>) -> Self {
        let n = labels.len();
        let mut up = vec![Bits::new(n); n];
        for (x, d) in down.iter().enumerate() {
            for y in d.iter() {
                up[y].insert(x);
            }
        }
        FinitePoset {
            labels,
            down,
            up,
            props: OnceLock::new(),
        }
    }

    /// Reflexive-transitive closure of the given cover pairs `(lower, upper)`.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        check_labels(&labels)?;
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(labels, &pairs)
    }

    /// Reflexive-transitive closure of index pairs `(lower, upper)`.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut down: Vec<Bits> = (0..n).map(|i| Bits::singleton(n, i)).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange { index: a.max(b), size: n });
            }
            down[b].insert(a);
        }
        // Warshall on the down-set representation.
        for k in 0..n {
            let dk = down[k].clone();
            for d in down.iter_mut() {
                if d.contains(k) {
                    d.union_with(&dk);
                }
            }
        }
        Self::from_down_sets(labels, down)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let down = (0..n).map(|i| Bits::from_indices(n, 0..=i)).collect();
        Self::from_valid(labels, down)
    }

    /// `n` pairwise incomparable elements labelled `a`, `b`, ...
    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(letter_label).collect();
        let down = (0..n).map(|i| Bits::singleton(n, i)).collect();
        Self::from_valid(labels, down)
    }

    /// The powerset of the given atoms. The empty set is labelled `0`, the
    /// full set `1`, every other subset by concatenating its atom labels.
    /// Elements are ordered by size, then lexicographically.
    pub fn powerset<S: AsRef<str>>(atoms: &[S]) -> Self {
        let k = atoms.len();
        assert!(k < 16, "powerset of {k} atoms is too large");
        let mut masks: Vec<u32> = (0..1u32 << k).collect();
        masks.sort_by_key(|&m| {
            let bits: Vec<u32> = (0..k as u32).filter(|i| m >> i & 1 == 1).collect();
            (m.count_ones(), bits)
        });
        let full = (1u32 << k) - 1;
        let labels = masks
            .iter()
            .map(|&m| match m {
                0 => "0".to_string(),
                _ if m == full => "1".to_string(),
                _ => (0..k)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| atoms[i].as_ref())
                    .collect(),
            })
            .collect();
        let n = masks.len();
        let down = masks
            .iter()
            .map(|&m| Bits::from_indices(n, (0..n).filter(|&j| masks[j] & !m == 0)))
            .collect();
        Self::from_valid(labels, down)
    }

    /// `0 < a, b, c < 1` with `a, b, c` pairwise incomparable.
    pub fn m3() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .expect("M3 is a poset")
    }

    /// The pentagon: `0 < a < b < 1` and `0 < c < 1`.
    pub fn n5() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .expect("N5 is a poset")
    }

    /// Componentwise order on pairs; element `(a, b)` has index `a * |B| + b`
    /// and label `(la,lb)`.
    pub fn product(a: &FinitePoset, b: &FinitePoset) -> Self {
        let (na, nb) = (a.len(), b.len());
        let n = na * nb;
        let mut labels = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for x in 0..na {
            for y in 0..nb {
                labels.push(format!("({},{})", a.labels[x], b.labels[y]));
                let mut d = Bits::new(n);
                for x2 in a.down[x].iter() {
                    for y2 in b.down[y].iter() {
                        d.insert(x2 * nb + y2);
                    }
                }
                down.push(d);
            }
        }
        Self::from_valid(labels, down)
    }

    /// The order dual.
    pub fn dual(&self) -> Self {
        Self::from_valid(self.labels.clone(), self.up.clone())
    }

    /// The induced subposet on `keep`, with the map from new to old indices.
    pub fn subposet(&self, keep: &Bits) -> (Self, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let m = old.len();
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_of[o] = i;
        }
        let labels = old.iter().map(|&o| self.labels[o].clone()).collect();
        let down = old
            .iter()
            .map(|&o| Bits::from_indices(m, self.down[o].intersection(keep).iter().map(|j| new_of[j])))
            .collect();
        (Self::from_valid(labels, down), old)
    }

    /// Same order, new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        assert_eq!(labels.len(), self.len());
        check_labels(&labels)?;
        Ok(Self::from_valid(labels, self.down.clone()))
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

    /// Formats a subset as `{a b c}`.
    pub fn fmt_set(&self, s: &Bits) -> String {
        let items: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", items.join(" "))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// `↓x`.
    #[inline]
    pub fn down_of(&self, x: usize) -> &Bits {
        &self.down[x]
    }

    /// `↑x`.
    #[inline]
    pub fn up_of(&self, x: usize) -> &Bits {
        &self.up[x]
    }

    pub fn empty_set(&self) -> Bits {
        Bits::new(self.len())
    }

    pub fn full_set(&self) -> Bits {
        Bits::full(self.len())
    }

    /// `↓Y = {x : x <= y for some y in Y}`.
    pub fn down_closure(&self, ys: &Bits) -> Bits {
        let mut r = self.empty_set();
        for y in ys.iter() {
            r.union_with(&self.down[y]);
        }
        r
    }

    /// `↑Y`.
    pub fn up_closure(&self, ys: &Bits) -> Bits {
        let mut r = self.empty_set();
        for y in ys.iter() {
            r.union_with(&self.up[y]);
        }
        r
    }

    pub fn is_down_set(&self, s: &Bits) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    /// Common upper bounds of `xs`.
    pub fn upper_bounds(&self, xs: &Bits) -> Bits {
        let mut r = self.full_set();
        for x in xs.iter() {
            r.intersect_with(&self.up[x]);
        }
        r
    }

    /// Common lower bounds of `xs`.
    pub fn lower_bounds(&self, xs: &Bits) -> Bits {
        let mut r = self.full_set();
        for x in xs.iter() {
            r.intersect_with(&self.down[x]);
        }
        r
    }

    /// The cut `ΔX`: intersection of all principal ideals containing `X`,
    /// or the whole carrier when `X` has no upper bound.
    pub fn cut(&self, xs: &Bits) -> Bits {
        let mut r = self.full_set();
        for y in self.upper_bounds(xs).iter() {
            r.intersect_with(&self.down[y]);
        }
        r
    }

    /// Greatest element of `s`, if any.
    pub fn max_of(&self, s: &Bits) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(&self.down[x]))
    }

    /// Least element of `s`, if any.
    pub fn min_of(&self, s: &Bits) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(&self.up[x]))
    }

    /// Maximal elements of `s`.
    pub fn maximal(&self, s: &Bits) -> Bits {
        let mut r = s.clone();
        for x in s.iter() {
            let mut above = self.up[x].intersection(s);
            above.remove(x);
            if !above.is_empty() {
                r.remove(x);
            }
        }
        r
    }

    /// Minimal elements of `s`.
    pub fn minimal(&self, s: &Bits) -> Bits {
        let mut r = s.clone();
        for x in s.iter() {
            let mut below = self.down[x].intersection(s);
            below.remove(x);
            if !below.is_empty() {
                r.remove(x);
            }
        }
        r
    }

    /// `⋁X`, when the least upper bound exists.
    pub fn join(&self, xs: &Bits) -> Option<usize> {
        self.min_of(&self.upper_bounds(xs))
    }

    /// `⋀X`, when the greatest lower bound exists.
    pub fn meet(&self, xs: &Bits) -> Option<usize> {
        self.max_of(&self.lower_bounds(xs))
    }

    pub fn join2(&self, x: usize, y: usize) -> Option<usize> {
        self.min_of(&self.up[x].intersection(&self.up[y]))
    }

    pub fn meet2(&self, x: usize, y: usize) -> Option<usize> {
        self.max_of(&self.down[x].intersection(&self.down[y]))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.min_of(&self.full_set())
    }

    pub fn top(&self) -> Option<usize> {
        self.max_of(&self.full_set())
    }

    /// `Δ∅`: the least element as a singleton, or empty.
    pub fn delta_empty(&self) -> Bits {
        self.cut(&self.empty_set())
    }

    /// The polar `x^⊥ = {y : ↓x ∩ ↓y = Δ∅}`.
    pub fn polar(&self, x: usize) -> Bits {
        let bottom = self.delta_empty();
        Bits::from_indices(
            self.len(),
            (0..self.len()).filter(|&y| self.down[x].intersection(&self.down[y]) == bottom),
        )
    }

    /// The pseudocomplement `x*`, the greatest element of the polar.
    pub fn pseudocomplement(&self, x: usize) -> Option<usize> {
        self.max_of(&self.polar(x))
    }

    /// Minimal elements of the carrier without `Δ∅`.
    pub fn atoms(&self) -> Vec<usize> {
        let rest = self.full_set().difference(&self.delta_empty());
        self.minimal(&rest).to_vec()
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            let mut below = self.down[y].clone();
            below.remove(y);
            for x in self.maximal(&below).iter() {
                out.push((x, y));
            }
        }
        out.sort();
        out
    }

    /// Whether `f` (given as a table) is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FinitePoset, f: &[usize]) -> bool {
        if f.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut seen = Bits::new(other.len());
        for &y in f {
            if y >= other.len() || seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        (0..self.len())
            .all(|x| (0..self.len()).all(|y| self.leq(x, y) == other.leq(f[x], f[y])))
    }

    pub fn properties(&self) -> &PosetProperties {
        self.props.get_or_init(|| compute_properties(self))
    }

    pub fn is_complete_lattice(&self) -> bool {
        self.properties().complete_lattice
    }

    pub fn require_complete(&self, name: &str) -> Result<()> {
        if self.is_complete_lattice() {
            Ok(())
        } else {
            Err(Error::NotCompleteLattice(name.to_string()))
        }
    }
}

fn compute_properties(p: &FinitePoset) -> PosetProperties {
    let n = p.len();
    let joins: Vec<Option<usize>> = par::map_range(n * n, |k| p.join2(k / n, k % n));
    let complete_lattice = n > 0 && p.bottom().is_some() && joins.iter().all(Option::is_some);
    let pseudocomplement_witness = (0..n).find(|&x| p.pseudocomplement(x).is_none());
    let atoms = p.atoms();
    let atom_set = Bits::from_indices(n, atoms.iter().copied());
    let bottom = p.delta_empty();
    let atomic = (0..n)
        .filter(|&x| !bottom.contains(x))
        .all(|x| p.down_of(x).intersects(&atom_set));
    let atomistic_witness =
        (0..n).find(|&x| p.join(&p.down_of(x).intersection(&atom_set)) != Some(x));
    let (distributive, complemented) = if complete_lattice {
        let j = |x: usize, y: usize| joins[x * n + y].unwrap();
        let meets: Vec<usize> = par::map_range(n * n, |k| p.meet2(k / n, k % n).unwrap());
        let m = |x: usize, y: usize| meets[x * n + y];
        let (b, t) = (p.bottom().unwrap(), p.top().unwrap());
        // Distributive iff y ↦ (join-irreducibles below y) preserves binary joins.
        let irreducible = Bits::from_indices(
            n,
            (0..n).filter(|&x| x != b && p.down_of(x).iter().filter(|&y| y != x).fold(b, j) != x),
        );
        let below: Vec<Bits> = (0..n).map(|x| p.down_of(x).intersection(&irreducible)).collect();
        let distributive = (0..n).all(|x| (x + 1..n).all(|y| below[j(x, y)] == below[x].union(&below[y])));
        let complemented = (0..n).all(|x| (0..n).any(|y| m(x, y) == b && j(x, y) == t));
        (distributive, complemented)
    } else {
        (false, false)
    };
    PosetProperties {
        complete_lattice,
        pseudocomplemented: pseudocomplement_witness.is_none(),
        pseudocomplement_witness,
        atomic,
        atomistic: atomistic_witness.is_none(),
        atomistic_witness,
        distributive,
        complemented,
        boolean: complete_lattice && distributive && complemented,
        atoms,
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn letter_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.down == other.down
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "FinitePoset[{}; {}]", self.labels.join(" "), covers.join(" "))
    }
}
