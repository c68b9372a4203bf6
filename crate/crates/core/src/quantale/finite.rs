//! Finite quantales given by a complete lattice and a multiplication table,
//! their residuals, and (pre)nuclei.

use std::fmt;
use std::sync::OnceLock;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::par;

/// A complete lattice with a total binary operation, stored row-major.
#[derive(Clone, Debug)]
pub struct FiniteQuantale {
    lattice: FinitePoset,
    mult: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    /// Join-irreducibles below each element.
    irreducibles_below: Vec<Vec<usize>>,
    irreducibles: Vec<usize>,
    /// `y ↦ J(y)` preserves binary joins, i.e. the lattice is distributive.
    distributive: bool,
    distributivity: OnceLock<Option<LawFailure>>,
}

/// The first violated law found by [`FiniteQuantale::check`], by element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawFailure {
    /// `x·(y∨z) ≠ x·y ∨ x·z`.
    LeftDistributivity { x: usize, y: usize, z: usize },
    /// `(y∨z)·x ≠ y·x ∨ z·x`.
    RightDistributivity { x: usize, y: usize, z: usize },
    /// `x·0 ≠ 0` or `0·x ≠ 0`.
    Annihilation { x: usize },
    /// `(x·y)·z ≠ x·(y·z)`.
    Associativity { x: usize, y: usize, z: usize },
}

impl LawFailure {
    /// Renders the failure with element names supplied by `name`.
    pub fn describe(&self, name: impl Fn(usize) -> String) -> String {
        match *self {
            LawFailure::LeftDistributivity { x, y, z } => {
                format!("{0}·({1}∨{2}) ≠ {0}·{1} ∨ {0}·{2}", name(x), name(y), name(z))
            }
            LawFailure::RightDistributivity { x, y, z } => {
                format!("({1}∨{2})·{0} ≠ {1}·{0} ∨ {2}·{0}", name(x), name(y), name(z))
            }
            LawFailure::Annihilation { x } => format!("{0}·0 or 0·{0} is not 0", name(x)),
            LawFailure::Associativity { x, y, z } => {
                format!("({0}·{1})·{2} ≠ {0}·({1}·{2})", name(x), name(y), name(z))
            }
        }
    }
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(|i| i.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleReport {
    /// First distributivity or annihilation failure; `None` for a prequantale.
    pub distributivity: Option<LawFailure>,
    pub associativity: Option<LawFailure>,
    /// The unit, found by exhaustive search.
    pub unit: Option<usize>,
    /// A pair with `x·y ≠ y·x`.
    pub noncommuting: Option<(usize, usize)>,
}

impl QuantaleReport {
    pub fn is_prequantale(&self) -> bool {
        self.distributivity.is_none()
    }

    pub fn is_quantale(&self) -> bool {
        self.distributivity.is_none() && self.associativity.is_none()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting.is_none()
    }
}

impl FiniteQuantale {
    pub fn new(lattice: FinitePoset, mult: Vec<usize>) -> Result<Self> {
        lattice.require_complete("quantale carrier")?;
        let n = lattice.len();
        if mult.len() != n * n {
            return Err(Error::IncompleteTable(format!(
                "{} entries for a carrier of size {n}",
                mult.len()
            )));
        }
        if let Some(bad) = mult.iter().find(|&&v| v >= n) {
            return Err(Error::IncompleteTable(format!("entry {bad} outside the carrier")));
        }
        let join = par::map_range(n * n, |k| lattice.join2(k / n, k % n).expect("complete lattice"));
        let bottom = lattice.bottom().expect("complete lattice");
        let fold = |xs: &mut dyn Iterator<Item = usize>| xs.fold(bottom, |acc, x| join[acc * n + x]);
        let irreducible: Vec<bool> = par::map_range(n, |x| {
            x != bottom && fold(&mut lattice.down_of(x).iter().filter(|&y| y != x)) != x
        });
        let irreducibles: Vec<usize> = (0..n).filter(|&x| irreducible[x]).collect();
        let irreducibles_below: Vec<Vec<usize>> = (0..n)
            .map(|y| irreducibles.iter().copied().filter(|&j| lattice.leq(j, y)).collect())
            .collect();
        let below_sets: Vec<Bits> =
            irreducibles_below.iter().map(|js| Bits::from_indices(n, js.iter().copied())).collect();
        let distributive = par::find_first(n, |x| {
            (x + 1..n).find(|&y| below_sets[join[x * n + y]] != below_sets[x].union(&below_sets[y]))
        })
        .is_none();
        Ok(FiniteQuantale {
            lattice,
            mult,
            join,
            bottom,
            irreducibles_below,
            irreducibles,
            distributive,
            distributivity: OnceLock::new(),
        })
    }

    pub fn from_fn<F>(lattice: FinitePoset, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize + Sync + Send,
    {
        let n = lattice.len();
        let mult = par::map_range(n * n, |k| f(k / n, k % n));
        Self::new(lattice, mult)
    }

    pub fn lattice(&self) -> &FinitePoset {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn table(&self) -> &[usize] {
        &self.mult
    }

    /// Distributivity over binary joins and the bottom (the finite form of
    /// distributivity over arbitrary joins), associativity, unit and
    /// commutativity.
    pub fn check(&self) -> QuantaleReport {
        QuantaleReport {
            distributivity: self.distributivity_failure(),
            associativity: self.associativity_failure(),
            unit: self.units().first().copied(),
            noncommuting: self.noncommuting_pair(),
        }
    }

    pub fn distributivity_failure(&self) -> Option<LawFailure> {
        *self.distributivity.get_or_init(|| self.find_distributivity_failure())
    }

    pub fn join_irreducibles(&self) -> &[usize] {
        &self.irreducibles
    }

    pub fn is_distributive_lattice(&self) -> bool {
        self.distributive
    }

    fn find_distributivity_failure(&self) -> Option<LawFailure> {
        let n = self.len();
        let z0 = self.bottom;
        if let Some(x) = (0..n).find(|&x| self.mul(x, z0) != z0 || self.mul(z0, x) != z0) {
            return Some(LawFailure::Annihilation { x });
        }
        if !self.distributive {
            return par::find_first(n, |x| self.distributivity_failure_at(x));
        }
        // Join-irreducibles of a distributive lattice are join-prime, so a map
        // preserves binary joins iff it is the join of its values on them.
        let suspect = par::find_first(n, |x| {
            (0..n)
                .any(|y| {
                    let js = &self.irreducibles_below[y];
                    self.mul(x, y) != self.join_all(js.iter().map(|&j| self.mul(x, j)))
                        || self.mul(y, x) != self.join_all(js.iter().map(|&j| self.mul(j, x)))
                })
                .then_some(x)
        })?;
        Some(self.distributivity_failure_at(suspect).expect("a join-preservation failure has a witness pair"))
    }

    fn distributivity_failure_at(&self, x: usize) -> Option<LawFailure> {
        let n = self.len();
        for y in 0..n {
            for z in y + 1..n {
                let yz = self.join(y, z);
                if self.mul(x, yz) != self.join(self.mul(x, y), self.mul(x, z)) {
                    return Some(LawFailure::LeftDistributivity { x, y, z });
                }
                if self.mul(yz, x) != self.join(self.mul(y, x), self.mul(z, x)) {
                    return Some(LawFailure::RightDistributivity { x, y, z });
                }
            }
        }
        None
    }

    /// Once multiplication distributes over joins, associativity on
    /// join-irreducibles implies it everywhere.
    pub fn associativity_failure(&self) -> Option<LawFailure> {
        let all: Vec<usize>;
        let gens: &[usize] = if self.distributivity_failure().is_none() {
            &self.irreducibles
        } else {
            all = (0..self.len()).collect();
            &all
        };
        par::find_first(gens.len(), |i| {
            let x = gens[i];
            for &y in gens {
                let xy = self.mul(x, y);
                for &z in gens {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some(LawFailure::Associativity { x, y, z });
                    }
                }
            }
            None
        })
    }

    /// All two-sided neutral elements (at most one exists).
    pub fn units(&self) -> Vec<usize> {
        let n = self.len();
        par::map_range(n, |u| (0..n).all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
            .into_iter()
            .enumerate()
            .filter_map(|(u, ok)| ok.then_some(u))
            .collect()
    }

    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    /// Join of finitely many elements, folded through the join table.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Pairs `(v, ⋁{y : f(y) = v})` over the distinct values `v` of `f`; a
    /// residual of `f` at `z` is the join of the second components with `v ≤ z`.
    fn factor_joins(&self, f: impl Fn(usize) -> usize) -> Vec<(usize, usize)> {
        let mut acc: Vec<Option<usize>> = vec![None; self.len()];
        for y in 0..self.len() {
            let v = f(y);
            acc[v] = Some(acc[v].map_or(y, |j| self.join(j, y)));
        }
        acc.into_iter().enumerate().filter_map(|(v, j)| j.map(|j| (v, j))).collect()
    }

    /// `x → z = ⋁{y : x·y ≤ z}`.
    pub fn residual_right(&self, x: usize, z: usize) -> usize {
        self.join_all((0..self.len()).filter(|&y| self.lattice.leq(self.mul(x, y), z)))
    }

    /// `z ← y = ⋁{x : x·y ≤ z}`.
    pub fn residual_left(&self, z: usize, y: usize) -> usize {
        self.join_all((0..self.len()).filter(|&x| self.lattice.leq(self.mul(x, y), z)))
    }
}

/// An extensive, isotone endomap of a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreclosureTable {
    map: Vec<usize>,
}

impl PreclosureTable {
    pub fn new(lattice: &FinitePoset, map: Vec<usize>) -> Result<Self> {
        let n = lattice.len();
        if map.len() != n || map.iter().any(|&v| v >= n) {
            return Err(Error::NotPreclosure(format!("table of length {} for {n} elements", map.len())));
        }
        if let Some(x) = (0..n).find(|&x| !lattice.leq(x, map[x])) {
            return Err(Error::NotPreclosure(format!("not extensive at {}", lattice.label(x))));
        }
        for x in 0..n {
            for y in lattice.up_of(x).iter() {
                if !lattice.leq(map[x], map[y]) {
                    return Err(Error::NotPreclosure(format!(
                        "not isotone at {} <= {}",
                        lattice.label(x),
                        lattice.label(y)
                    )));
                }
            }
        }
        Ok(PreclosureTable { map })
    }

    pub fn identity(lattice: &FinitePoset) -> Self {
        PreclosureTable {
            map: (0..lattice.len()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().all(|&y| self.map[y] == y)
    }

    pub fn fixpoints(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == x).collect()
    }
}

/// Outcome of [`nucleus_checks`] for a quantale `Q` and preclosure `j`, with
/// `S = Q_j` the fixpoint set.
#[derive(Clone, Debug)]
pub struct NucleusReport {
    /// A pair with `x·j(y) ∨ j(x)·y ≰ j(x·y)`.
    pub prenucleus_failure: Option<(usize, usize)>,
    pub idempotent: bool,
    pub fixpoints: Vec<usize>,
    /// `k(x) = ⋀{s ∈ S : x ≤ s}` is a nucleus.
    pub closure_is_nucleus: bool,
    pub meet_closed: bool,
    /// A pair `(q, s)` with `q → s ∉ S` or `s ← q ∉ S`.
    pub residuation_failure: Option<(usize, usize)>,
    /// `x ·_S y = ⋀{s ∈ S : x·y ≤ s}`, indexed by positions in `fixpoints`.
    pub induced: Vec<usize>,
    /// `S` with the induced multiplication is a quantale.
    pub induced_quantale: bool,
}

impl NucleusReport {
    pub fn is_prenucleus(&self) -> bool {
        self.prenucleus_failure.is_none()
    }

    pub fn is_nucleus(&self) -> bool {
        self.is_prenucleus() && self.idempotent
    }

    /// Closed under meets and residuation.
    pub fn is_quantic_quotient(&self) -> bool {
        self.meet_closed && self.residuation_failure.is_none()
    }
}

/// Prenucleus and nucleus tests for `j`, the characterizations of its
/// fixpoint set, and the induced multiplication. When `q` is a quantale the
/// characterizations are asserted to agree.
pub fn nucleus_checks(q: &FiniteQuantale, j: &PreclosureTable) -> Result<NucleusReport> {
    let l = q.lattice();
    let n = q.len();
    let j = PreclosureTable::new(l, j.table().to_vec())?;
    let prenucleus_failure = par::find_first(n, |x| {
        (0..n)
            .find(|&y| {
                let lhs = q.join(q.mul(x, j.apply(y)), q.mul(j.apply(x), y));
                !l.leq(lhs, j.apply(q.mul(x, y)))
            })
            .map(|y| (x, y))
    });
    let fixpoints = j.fixpoints();
    let s_set = Bits::from_indices(n, fixpoints.iter().copied());
    let hull = |x: usize| {
        let above = l.up_of(x).intersection(&s_set);
        l.meet(&above).expect("complete lattice")
    };
    let k: Vec<usize> = (0..n).map(hull).collect();
    let meet_closed = (0..n).all(|x| s_set.contains(k[x]));
    let closure_is_nucleus =
        meet_closed && par::find_first(n, |x| (0..n).find(|&y| !l.leq(q.mul(k[x], k[y]), k[q.mul(x, y)]))).is_none();
    let residuation_failure = par::find_first(n, |a| {
        let right = q.factor_joins(|y| q.mul(a, y));
        let left = q.factor_joins(|x| q.mul(x, a));
        let residual = |groups: &[(usize, usize)], s: usize| {
            q.join_all(groups.iter().filter(|&&(v, _)| l.leq(v, s)).map(|&(_, f)| f))
        };
        fixpoints
            .iter()
            .find(|&&s| !s_set.contains(residual(&right, s)) || !s_set.contains(residual(&left, s)))
            .map(|&s| (a, s))
    });
    let m = fixpoints.len();
    let pos = |x: usize| fixpoints.binary_search(&x).ok();
    let induced: Vec<usize> = (0..m * m)
        .map(|i| {
            let v = k[q.mul(fixpoints[i / m], fixpoints[i % m])];
            pos(v).unwrap_or(usize::MAX)
        })
        .collect();
    let induced_quantale = meet_closed && {
        let (sub, _) = l.subposet(&s_set);
            let c = sub.is_complete_lattice();
            c
            && FiniteQuantale::new(sub, induced.clone())
                .map(|sq| sq.distributivity_failure().is_none() && sq.associativity_failure().is_none())
                .unwrap_or(false)
    };
    let report = NucleusReport {
        prenucleus_failure,
        idempotent: j.is_idempotent(),
        fixpoints,
        closure_is_nucleus,
        meet_closed,
        residuation_failure,
        induced,
        induced_quantale,
    };
    if q.distributivity_failure().is_none() && q.associativity_failure().is_none() {
        assert_eq!(
            report.closure_is_nucleus,
            report.is_quantic_quotient(),
            "nucleus and residuation characterizations of the fixpoint set disagree"
        );
        assert_eq!(
            report.closure_is_nucleus,
            report.induced_quantale,
            "nucleus and induced-quantale characterizations of the fixpoint set disagree"
        );
        assert!(
            !report.is_prenucleus() || report.closure_is_nucleus,
            "a prenucleus whose fixpoint set is not a quantic quotient"
        );
    }
    Ok(report)
}
