//! Lower relations under the relation product: the quantale `𝒬P` of
//! down-sets of `P × P`, its residuals, and the tensor multiplication
//! `R ⊙ S = t̄(R · S)`.

use rand::Rng;

use crate::bits::{all_closed_sets, Bits};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::par;
use crate::relation::{principal, Relation};
use crate::tensor::{Side, TensorBase, TensorFamily};

use super::finite::FiniteQuantale;

/// `{(a, c) : a R b and b S c for some b}`.
pub fn relation_product(r: &Relation, s: &Relation) -> Result<Relation> {
    r.product(s).ok_or_else(|| {
        Error::CarrierMismatch(format!(
            "cannot compose a {}×{} relation with a {}×{} relation",
            r.rows(),
            r.cols(),
            s.rows(),
            s.cols()
        ))
    })
}

/// The down-set quantale `𝒬P = 𝒜(P × P)` with union, intersection and the
/// relation product.
#[derive(Clone, Debug)]
pub struct RelationQuantale {
    poset: FinitePoset,
}

impl RelationQuantale {
    pub fn new(poset: FinitePoset) -> Self {
        RelationQuantale { poset }
    }

    /// `𝒬Ǎ` for the truncated carrier of a poset side.
    pub fn of_side(side: &Side) -> Result<Self> {
        side.truncated()
            .map(|ap| RelationQuantale::new(ap.poset().clone()))
            .ok_or_else(|| Error::CarrierMismatch("the down-set quantale needs a poset side".into()))
    }

    pub fn carrier(&self) -> &FinitePoset {
        &self.poset
    }

    /// Size of the carrier `P` (relations are `|P| × |P|`).
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn empty(&self) -> Relation {
        Relation::empty(self.len(), self.len())
    }

    pub fn top(&self) -> Relation {
        Relation::full(self.len(), self.len())
    }

    pub fn principal(&self, a: usize, b: usize) -> Relation {
        principal(&self.poset, &self.poset, a, b)
    }

    pub fn down_closure(&self, r: &Relation) -> Relation {
        r.down_closure(&self.poset, &self.poset)
    }

    pub fn is_member(&self, r: &Relation) -> bool {
        r.rows() == self.len() && r.cols() == self.len() && r.is_down_closed(&self.poset, &self.poset)
    }

    pub fn product(&self, r: &Relation, s: &Relation) -> Relation {
        r.product(s).expect("relations of 𝒬P share their carrier")
    }

    /// `R → T = {(a, b) : R(↓a) × {b} ⊆ T}`, the largest `S` with `R·S ⊆ T`.
    pub fn residual_right(&self, r: &Relation, t: &Relation) -> Relation {
        let n = self.len();
        let cols: Vec<Bits> = (0..n).map(|b| t.col(b)).collect();
        let mut out = self.empty();
        for a in 0..n {
            let pre = r.preimage(self.poset.down_of(a));
            for (b, col) in cols.iter().enumerate() {
                if pre.is_subset(col) {
                    out.insert(a, b);
                }
            }
        }
        out
    }

    /// `T ← S = {(a, b) : {a} × (↓b)S ⊆ T}`, the largest `R` with `R·S ⊆ T`.
    pub fn residual_left(&self, t: &Relation, s: &Relation) -> Relation {
        let n = self.len();
        let rows: Vec<Bits> = (0..n).map(|a| t.row(a)).collect();
        let mut out = self.empty();
        for b in 0..n {
            let img = s.image(self.poset.down_of(b));
            for (a, row) in rows.iter().enumerate() {
                if img.is_subset(row) {
                    out.insert(a, b);
                }
            }
        }
        out
    }

    /// All members in shortlex order, failing beyond `limit`.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<Relation>> {
        let n = self.len();
        let sets = all_closed_sets(n * n, |s| self.down_closure(&Relation::from_bits(n, n, s.clone())).bits().clone(), limit)
            .map_err(|limit| Error::GuardExceeded { limit })?;
        let mut out: Vec<Relation> = sets.into_iter().map(|b| Relation::from_bits(n, n, b)).collect();
        out.sort();
        Ok(out)
    }

    /// All members, in shortlex order, as a [`FiniteQuantale`] under the
    /// relation product.
    pub fn to_finite(&self, limit: usize) -> Result<(Vec<Relation>, FiniteQuantale)> {
        let members = self.enumerate(limit)?;
        let n = members.len();
        let labels = (0..n).map(TensorFamily::name).collect();
        let down: Vec<Bits> = par::map(&members, |r| {
            Bits::from_indices(n, (0..n).filter(|&j| members[j].is_subset(r)))
        });
        let lattice = FinitePoset::from_down_sets(labels, down).expect("inclusion is a partial order");
        let index = |r: &Relation| members.binary_search(r).expect("products of down-sets are down-sets");
        let mult = par::map_range(n * n, |k| index(&self.product(&members[k / n], &members[k % n])));
        let q = FiniteQuantale::new(lattice, mult)?;
        Ok((members, q))
    }

    /// A random member: the down-closure of a few random pairs.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Relation {
        let n = self.len();
        if n == 0 {
            return self.empty();
        }
        let k = rng.gen_range(0..=n.min(4));
        let mut r = self.empty();
        for _ in 0..k {
            r.union_with(&self.principal(rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        r
    }

    /// Removes maximal pairs from `r` one at a time while `keep` still holds.
    pub fn shrink(&self, r: &Relation, keep: impl Fn(&Relation) -> bool) -> Relation {
        let mut cur = r.clone();
        'outer: loop {
            let pairs: Vec<(usize, usize)> = cur.pairs().collect();
            for (a, b) in pairs.into_iter().rev() {
                let mut next = cur.clone();
                next.remove(a, b);
                if self.is_member(&next) && keep(&next) {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }
}

/// `R ⊙ S = t̄(R · S)` for `R` over `left` and `S` over `right`; the result
/// lives over the outer factors of the two bases.
pub fn odot(left: &TensorBase, right: &TensorBase, r: &Relation, s: &Relation) -> Result<Relation> {
    if !left.right().same_carrier(right.left()) {
        return Err(Error::CarrierMismatch(format!(
            "middle factors `{}` and `{}` differ",
            left.right().name(),
            right.left().name()
        )));
    }
    let target = TensorBase::new(left.left().clone(), right.right().clone());
    Ok(target.t_bar(&relation_product(r, s)?))
}

/// The tensors over a square base `B_𝒳 ⊗̌ B_𝒴` with their `⊙` and join tables.
#[derive(Clone, Debug)]
pub struct TensorQuantale {
    family: TensorFamily,
    table: Vec<usize>,
}

impl TensorQuantale {
    pub fn new(base: TensorBase, limit: usize) -> Result<Self> {
        Self::from_family(base.enumerate(limit)?)
    }

    pub fn from_family(family: TensorFamily) -> Result<Self> {
        let base = family.base();
        if !base.left().same_carrier(base.right()) {
            return Err(Error::CarrierMismatch(format!(
                "`{}` and `{}` have different truncated carriers",
                base.left().name(),
                base.right().name()
            )));
        }
        let n = family.len();
        let table = par::map_range(n * n, |k| {
            let prod = family.get(k / n).product(family.get(k % n)).expect("square base");
            family
                .index_of(&base.t_bar(&prod))
                .expect("t̄ lands in the tensor family")
        });
        Ok(TensorQuantale { family, table })
    }

    pub fn family(&self) -> &TensorFamily {
        &self.family
    }

    pub fn base(&self) -> &TensorBase {
        self.family.base()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// The tensor lattice with `⊙` as a [`FiniteQuantale`].
    pub fn to_finite(&self) -> FiniteQuantale {
        FiniteQuantale::new(self.family.lattice(), self.table.clone()).expect("tensors form a complete lattice")
    }

    /// The `⊙` table with members named `R0, R1, ...`, one row per left factor.
    pub fn format_table(&self) -> String {
        let n = self.len();
        let names: Vec<String> = (0..n).map(TensorFamily::name).collect();
        let w = names.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(1);
        let mut out = String::new();
        let cell = |s: &str| format!("{s:<w$}");
        out.push_str(&cell("⊙"));
        for name in &names {
            out.push(' ');
            out.push_str(&cell(name));
        }
        out.push('\n');
        for i in 0..n {
            out.push_str(&cell(&names[i]));
            for j in 0..n {
                out.push(' ');
                out.push_str(&cell(&names[self.mul(i, j)]));
            }
            out.push('\n');
        }
        out
    }

    /// Members listed as `Ri = {...}` in the order of the table.
    pub fn format_members(&self) -> String {
        let base = self.base();
        self.family
            .members()
            .iter()
            .enumerate()
            .map(|(i, r)| format!("{} = {}\n", TensorFamily::name(i), base.fmt(r)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::DEFAULT_GUARD;

    fn chain3() -> TensorQuantale {
        TensorQuantale::new(TensorBase::lattice_square("CHAIN3", &FinitePoset::chain(3)), DEFAULT_GUARD).unwrap()
    }

    #[test]
    fn chain3_products() {
        let q = chain3();
        let f = q.family();
        assert_eq!(relation_product(f.get(2), f.get(3)).unwrap(), *f.get(1));
        assert_eq!(relation_product(f.get(3), f.get(2)).unwrap(), *f.get(5));
        assert_eq!(q.mul(2, 3), 1);
        assert_eq!(q.mul(3, 2), 5);
        for i in 0..q.len() {
            assert_eq!(q.mul(i, 0), 0);
            assert_eq!(q.mul(0, i), 0);
        }
        assert!(relation_product(&Relation::empty(2, 3), &Relation::empty(2, 3)).is_err());
    }

    #[test]
    fn chain3_table_text() {
        let text = chain3().format_table();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0].split_whitespace().collect::<Vec<_>>(), ["⊙", "R0", "R1", "R2", "R3", "R4", "R5"]);
        assert_eq!(rows[3].split_whitespace().collect::<Vec<_>>(), ["R2", "R0", "R1", "R2", "R1", "R2", "R2"]);
    }

    #[test]
    fn residual_adjunction_on_chain3() {
        let q = RelationQuantale::new(FinitePoset::chain(2));
        let all = q.enumerate(DEFAULT_GUARD).unwrap();
        assert_eq!(all.len(), 6);
        for r in &all {
            for s in &all {
                for t in &all {
                    let rs = q.product(r, s).is_subset(t);
                    assert_eq!(rs, s.is_subset(&q.residual_right(r, t)));
                    assert_eq!(rs, r.is_subset(&q.residual_left(t, s)));
                }
            }
        }
        // R3 → R1 = ∅ and R2 ← R1 = R2
        assert!(q.residual_right(&all[3], &all[1]).is_empty());
        assert_eq!(q.residual_left(&all[2], &all[1]), all[2]);
        assert_eq!(q.residual_right(&all[4], &q.top()), q.top());
    }

    #[test]
    fn m3_distributivity_witness() {
        let m3 = FinitePoset::m3();
        let base = TensorBase::lattice_square("M3", &m3);
        // truncated carrier a b c 1
        let (a, b, c) = (0, 1, 2);
        let ab = base.pure(a, b);
        let ac = base.pure(a, c);
        let aa = base.pure(a, a);
        let join = base.t_bar(&ab.union(&ac));
        assert_eq!(odot(&base, &base, &join, &aa).unwrap(), aa);
        let sep = base.t_bar(
            &odot(&base, &base, &ab, &aa)
                .unwrap()
                .union(&odot(&base, &base, &ac, &aa).unwrap()),
        );
        assert!(sep.is_empty());
    }

    #[test]
    fn shrink_keeps_property() {
        let q = RelationQuantale::new(FinitePoset::chain(3));
        let r = q.top();
        let small = q.shrink(&r, |x| x.contains(0, 1));
        assert_eq!(small, q.principal(0, 1));
    }
}
