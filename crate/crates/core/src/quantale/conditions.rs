//! The eight equivalent conditions for `B_𝒳 ⊗̌ B_𝒴` to be a quantale,
//! each decided by its own computation. Failures carry certificates that
//! can be re-checked against the library from scratch.

use std::fmt;

use crate::bits::{all_closed_sets, Bits};
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::tensor::{TensorBase, TensorFamily, DEFAULT_GUARD};
use crate::par;

use super::finite::LawFailure;
use super::relational::{RelationQuantale, TensorQuantale};

/// Default bound on the tensor count for the cubic law checks.
pub const DEFAULT_LAW_CAP: usize = 1100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// ⊥-(𝒳∪𝒴)-distributivity.
    A,
    /// `t` is a prenucleus on `𝒬B̌`.
    B,
    /// `t̄` is a nucleus on `𝒬B̌`.
    C,
    /// The tensors are closed under residuation in `𝒬B̌`.
    D,
    /// `⊙` makes the tensors a quantale.
    E,
    /// The tensor lattice is pseudocomplemented.
    F,
    /// Some prenucleus `j ≥ t` has `j(∅) = ∅`.
    G,
    /// The canonical embeddings into the tensors separate orthogonal pairs.
    H,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::A,
        Condition::B,
        Condition::C,
        Condition::D,
        Condition::E,
        Condition::F,
        Condition::G,
        Condition::H,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::A => "distributive at the bottom for both families",
            Condition::B => "t is a prenucleus",
            Condition::C => "t̄ is a nucleus",
            Condition::D => "tensors form a quantic quotient",
            Condition::E => "⊙ is a quantale multiplication",
            Condition::F => "tensor lattice is pseudocomplemented",
            Condition::G => "a prenucleus above t fixes ∅",
            Condition::H => "orthogonality-reflecting embeddings",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    LeftDistributivity,
    RightDistributivity,
    Annihilation,
    Associativity,
}

/// Evidence that a condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `a ∈ ΔY ∖ ⊥` with `↓a ∩ ↓Y ⊆ ⊥`, for a member `Y` of the left (`𝒳`)
    /// or right (`𝒴`) family; full indices.
    BottomDistributivity { left: bool, member: Bits, element: usize },
    /// `t(R)·S ⊄ t(R·S)` (left) or `R·t(S) ⊄ t(R·S)` (right).
    Prenucleus { left: bool, r: Relation, s: Relation },
    /// `t̄(R)·S ⊄ t̄(R·S)` (left) or `R·t̄(S) ⊄ t̄(R·S)` (right).
    Nucleus { left: bool, r: Relation, s: Relation },
    /// `Q → T` (left) or `T ← Q` (right) is not a tensor.
    Residuation { left: bool, q: Relation, t: Relation },
    /// A law of `⊙` fails on tensors `x, y, z`.
    TensorLaw { law: LawKind, x: Relation, y: Relation, z: Relation },
    /// `U` and `V` are disjoint from `T` but their join is not.
    Pseudocomplement { t: Relation, u: Relation, v: Relation },
    /// `R·S = ∅` while `t(R)·S` (right family) or `R·t(S)` (left family) is
    /// not, so no prenucleus above `t` fixes `∅`.
    Obstruction { left: bool, r: Relation, s: Relation },
    /// The canonical embedding does not carry the join of a family member to
    /// a join of products; `x` is a full index.
    EmbeddingJoin { left: bool, x: usize, member: Bits },
}

impl Certificate {
    /// Re-derives the violation from the certificate alone.
    pub fn recheck(&self, base: &TensorBase) -> bool {
        let Ok(q) = RelationQuantale::of_side(base.left()) else { return false };
        let prod = |r: &Relation, s: &Relation| q.product(r, s);
        let t = |r: &Relation| base.t_step(r).expect("poset sides");
        match self {
            Certificate::BottomDistributivity { left, member, element } => {
                let side = if *left { base.left() } else { base.right() };
                let ap = side.augmented().expect("poset side");
                let p = ap.poset();
                let bot = side.bottom();
                ap.family().contains(member)
                    && p.cut(member).difference(bot).contains(*element)
                    && p.down_of(*element).intersection(&p.down_closure(member)).is_subset(bot)
            }
            Certificate::Prenucleus { left, r, s } => {
                q.is_member(r) && q.is_member(s) && {
                    let lhs = if *left { prod(&t(r), s) } else { prod(r, &t(s)) };
                    !lhs.is_subset(&t(&prod(r, s)))
                }
            }
            Certificate::Nucleus { left, r, s } => {
                q.is_member(r) && q.is_member(s) && {
                    let lhs = if *left {
                        prod(&base.t_bar(r), s)
                    } else {
                        prod(r, &base.t_bar(s))
                    };
                    !lhs.is_subset(&base.t_bar(&prod(r, s)))
                }
            }
            Certificate::Residuation { left, q: qq, t: tt } => {
                q.is_member(qq) && base.is_tensor(tt) && {
                    let res = if *left { q.residual_right(qq, tt) } else { q.residual_left(tt, qq) };
                    !base.is_tensor(&res)
                }
            }
            Certificate::TensorLaw { law, x, y, z } => {
                if ![x, y, z].iter().all(|r| base.is_tensor(r)) {
                    return false;
                }
                let m = |a: &Relation, b: &Relation| base.t_bar(&prod(a, b));
                let j = |a: &Relation, b: &Relation| base.t_bar(&a.union(b));
                match law {
                    LawKind::LeftDistributivity => m(x, &j(y, z)) != j(&m(x, y), &m(x, z)),
                    LawKind::RightDistributivity => m(&j(y, z), x) != j(&m(y, x), &m(z, x)),
                    LawKind::Annihilation => {
                        let e = base.empty();
                        !m(x, &e).is_empty() || !m(&e, x).is_empty()
                    }
                    LawKind::Associativity => m(&m(x, y), z) != m(x, &m(y, z)),
                }
            }
            Certificate::Pseudocomplement { t: tt, u, v } => {
                [tt, u, v].iter().all(|r| base.is_tensor(r))
                    && tt.intersection(u).is_empty()
                    && tt.intersection(v).is_empty()
                    && !tt.intersection(&base.t_bar(&u.union(v))).is_empty()
            }
            Certificate::Obstruction { left, r, s } => {
                q.is_member(r)
                    && q.is_member(s)
                    && prod(r, s).is_empty()
                    && !(if *left { prod(r, &t(s)) } else { prod(&t(r), s) }).is_empty()
            }
            Certificate::EmbeddingJoin { left, x, member } => {
                let Some(emb) = Embeddings::new(base) else { return false };
                emb.join_failure(*left, *x, member)
            }
        }
    }

    /// A one-line rendering with carrier labels.
    pub fn describe(&self, base: &TensorBase) -> String {
        let f = |r: &Relation| base.fmt(r);
        let side = |left: bool| if left { base.left() } else { base.right() };
        let set = |left: bool, s: &Bits| {
            let labels = side(left).full_labels();
            let items: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
            format!("{{{}}}", items.join(" "))
        };
        match self {
            Certificate::BottomDistributivity { left, member, element } => format!(
                "{} ∈ Δ{} outside ⊥ but ↓{} ∩ ↓{} ⊆ ⊥",
                side(*left).full_labels()[*element],
                set(*left, member),
                side(*left).full_labels()[*element],
                set(*left, member)
            ),
            Certificate::Prenucleus { left: true, r, s } => format!("t(R)·S ⊄ t(R·S) for R = {} S = {}", f(r), f(s)),
            Certificate::Prenucleus { left: false, r, s } => format!("R·t(S) ⊄ t(R·S) for R = {} S = {}", f(r), f(s)),
            Certificate::Nucleus { left: true, r, s } => format!("t̄(R)·S ⊄ t̄(R·S) for R = {} S = {}", f(r), f(s)),
            Certificate::Nucleus { left: false, r, s } => format!("R·t̄(S) ⊄ t̄(R·S) for R = {} S = {}", f(r), f(s)),
            Certificate::Residuation { left: true, q, t } => format!("Q → T is not a tensor for Q = {} T = {}", f(q), f(t)),
            Certificate::Residuation { left: false, q, t } => format!("T ← Q is not a tensor for Q = {} T = {}", f(q), f(t)),
            Certificate::TensorLaw { law, x, y, z } => {
                let (x, y, z) = (f(x), f(y), f(z));
                match law {
                    LawKind::LeftDistributivity => format!("({x} ∨ ... ) fails: X⊙(Y∨Z) ≠ X⊙Y ∨ X⊙Z for X = {x} Y = {y} Z = {z}"),
                    LawKind::RightDistributivity => format!("(Y∨Z)⊙X ≠ Y⊙X ∨ Z⊙X for X = {x} Y = {y} Z = {z}"),
                    LawKind::Annihilation => format!("X⊙∅ or ∅⊙X is not ∅ for X = {x}"),
                    LawKind::Associativity => format!("(X⊙Y)⊙Z ≠ X⊙(Y⊙Z) for X = {x} Y = {y} Z = {z}"),
                }
            }
            Certificate::Pseudocomplement { t, u, v } => format!(
                "T = {} has no pseudocomplement: U = {} and V = {} miss T but U ∨ V meets it",
                f(t),
                f(u),
                f(v)
            ),
            Certificate::Obstruction { left: false, r, s } => {
                format!("R·S = ∅ but t(R)·S ≠ ∅ for R = {} S = {}", f(r), f(s))
            }
            Certificate::Obstruction { left: true, r, s } => {
                format!("R·S = ∅ but R·t(S) ≠ ∅ for R = {} S = {}", f(r), f(s))
            }
            Certificate::EmbeddingJoin { left, x, member } => format!(
                "embedding does not preserve the join of {} against {}",
                set(*left, member),
                side(!*left).full_labels()[*x]
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Box<Certificate>),
    Skipped(String),
}

impl Verdict {
    pub fn value(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails(_) => Some(false),
            Verdict::Skipped(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Fails(c) => Some(c),
            _ => None,
        }
    }

    fn fails(c: Certificate) -> Self {
        Verdict::Fails(Box::new(c))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("true"),
            Verdict::Fails(_) => f.write_str("false"),
            Verdict::Skipped(why) => write!(f, "skipped ({why})"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConditionOptions {
    /// Bound on the number of enumerated tensors.
    pub guard: usize,
    /// Bound on the tensor count for the cubic law checks of (e) and (h).
    pub law_cap: usize,
}

impl Default for ConditionOptions {
    fn default() -> Self {
        ConditionOptions {
            guard: DEFAULT_GUARD,
            law_cap: DEFAULT_LAW_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionsReport {
    pub verdicts: Vec<(Condition, Verdict)>,
    /// Number of tensors, when enumerated within the guard.
    pub tensors: Option<usize>,
}

impl ConditionsReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.verdicts.iter().find(|(k, _)| *k == c).expect("all conditions present").1
    }

    /// Whether every decided condition has the same truth value.
    pub fn agree(&self) -> bool {
        let mut vals = self.verdicts.iter().filter_map(|(_, v)| v.value());
        match vals.next() {
            None => true,
            Some(first) => vals.all(|v| v == first),
        }
    }

    /// The common truth value, if all decided conditions agree.
    pub fn value(&self) -> Option<bool> {
        if !self.agree() {
            return None;
        }
        self.verdicts.iter().find_map(|(_, v)| v.value())
    }

    pub fn decided(&self) -> usize {
        self.verdicts.iter().filter(|(_, v)| v.value().is_some()).count()
    }
}

fn require_square(base: &TensorBase) -> Result<()> {
    if base.left().augmented().is_none() || base.right().augmented().is_none() {
        return Err(Error::CarrierMismatch("the quantale conditions need poset sides".into()));
    }
    if !base.left().same_carrier(base.right()) {
        return Err(Error::CarrierMismatch(format!(
            "`{}` and `{}` truncate to different carriers",
            base.left().name(),
            base.right().name()
        )));
    }
    Ok(())
}

/// Decides all eight conditions for the square base `B_𝒳 ⊗̌ B_𝒴`.
pub fn quantale_conditions(base: &TensorBase, opts: ConditionOptions) -> Result<ConditionsReport> {
    require_square(base)?;
    let a = condition_a(base);
    let b = condition_b(base);
    let c = condition_c(base);
    let family = match base.enumerate(opts.guard) {
        Ok(f) => Some(f),
        Err(Error::GuardExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let skipped = || Verdict::Skipped(format!("more than {} tensors", opts.guard));
    let d = family.as_ref().map_or_else(skipped, |f| condition_d(base, f));
    let f = family.as_ref().map_or_else(skipped, condition_f);
    let tq = match &family {
        Some(fam) if fam.len() <= opts.law_cap => Some(TensorQuantale::from_family(fam.clone())?),
        _ => None,
    };
    let capped = || match &family {
        Some(fam) => Verdict::Skipped(format!("{} tensors exceed the law-check cap {}", fam.len(), opts.law_cap)),
        None => skipped(),
    };
    let e = tq.as_ref().map_or_else(capped, condition_e);
    let h = tq.as_ref().map_or_else(capped, condition_h);
    let g = condition_g(base, c.value());
    Ok(ConditionsReport {
        verdicts: vec![
            (Condition::A, a),
            (Condition::B, b),
            (Condition::C, c),
            (Condition::D, d),
            (Condition::E, e),
            (Condition::F, f),
            (Condition::G, g),
            (Condition::H, h),
        ],
        tensors: family.map(|f| f.len()),
    })
}

/// (a) from the polar and witness forms of distributivity at the bottom, for
/// the union of both families.
pub fn condition_a(base: &TensorBase) -> Verdict {
    for left in [true, false] {
        let side = if left { base.left() } else { base.right() };
        let ap = side.augmented().expect("poset side");
        let bd = ap.bottom_distributivity();
        if let Some((member, element)) = bd.witness {
            return Verdict::fails(Certificate::BottomDistributivity { left, member, element });
        }
    }
    Verdict::Holds
}

/// Sets `X` whose rectangles generate every contribution to `t`: the
/// singletons and the normalized rules of one side.
fn generators(base: &TensorBase, left: bool) -> Vec<Bits> {
    let side = if left { base.left() } else { base.right() };
    let n = side.len();
    (0..n)
        .map(|x| Bits::singleton(n, x))
        .chain(side.rules().iter().map(|(m, _)| m.clone()))
        .collect()
}

/// (b): `t(R)·S ∪ R·t(S) ⊆ t(R·S)`. Both sides are monotone and the product
/// distributes over unions, so it suffices to take for one argument the
/// down-closed rectangles `↓(X × Y)` that generate `t`, and for the other a
/// principal down-set.
pub fn condition_b(base: &TensorBase) -> Verdict {
    let q = RelationQuantale::of_side(base.left()).expect("poset side");
    let n = q.len();
    let gx = generators(base, true);
    let gy = generators(base, false);
    let rects: Vec<Relation> = gx
        .iter()
        .flat_map(|x| gy.iter().map(move |y| (x, y)))
        .map(|(x, y)| base.down_closure(&Relation::rectangle(n, n, x, y)))
        .collect();
    let t = |r: &Relation| base.t_step(r).expect("poset sides");
    let found = par::find_first(rects.len(), |i| {
        let g = &rects[i];
        let tg = t(g);
        for y in 0..n {
            for z in 0..n {
                let p = q.principal(y, z);
                if !q.product(&tg, &p).is_subset(&t(&q.product(g, &p))) {
                    return Some(Certificate::Prenucleus { left: true, r: g.clone(), s: p });
                }
                if !q.product(&p, &tg).is_subset(&t(&q.product(&p, g))) {
                    return Some(Certificate::Prenucleus { left: false, r: p, s: g.clone() });
                }
            }
        }
        None
    });
    found.map_or(Verdict::Holds, Verdict::fails)
}

/// (c): `t̄(R)·S ⊆ t̄(R·S)` and `R·t̄(S) ⊆ t̄(R·S)`, which together with
/// idempotency give `t̄(R)·t̄(S) ⊆ t̄(R·S)`. With `S = ↓(b, c)` principal,
/// `R·S = A × ↓c` for the down-set `A` of rows meeting `↓b`; the largest `R`
/// with that `A` is `{(a, b') : a ∈ A or ↓b' ∩ ↓b = ∅}`, so only those need
/// checking (and symmetrically on the right).
pub fn condition_c(base: &TensorBase) -> Verdict {
    let q = RelationQuantale::of_side(base.left()).expect("poset side");
    let p = q.carrier().clone();
    let n = q.len();
    let downsets = all_closed_sets(n, |s| p.down_closure(s), usize::MAX).expect("no limit");
    let disjoint: Vec<Bits> = (0..n)
        .map(|b| Bits::from_indices(n, (0..n).filter(|&b2| !p.down_of(b2).intersects(p.down_of(b)))))
        .collect();
    let cases: Vec<(usize, usize)> = (0..downsets.len()).flat_map(|d| (0..n).map(move |b| (d, b))).collect();
    let found = par::find_first(cases.len(), |i| {
        let (d, b) = cases[i];
        let set = &downsets[d];
        // rows in `set`, or columns missing ↓b
        let worst_left = Relation::rectangle(n, n, set, &Bits::full(n))
            .union(&Relation::rectangle(n, n, &Bits::full(n), &disjoint[b]));
        let worst_right = Relation::rectangle(n, n, &Bits::full(n), set)
            .union(&Relation::rectangle(n, n, &disjoint[b], &Bits::full(n)));
        let closed_left = base.t_bar(&worst_left);
        let closed_right = base.t_bar(&worst_right);
        for c in 0..n {
            let s = q.principal(b, c);
            if !q.product(&closed_left, &s).is_subset(&base.t_bar(&q.product(&worst_left, &s))) {
                return Some(Certificate::Nucleus { left: true, r: worst_left, s });
            }
            let r = q.principal(c, b);
            if !q.product(&r, &closed_right).is_subset(&base.t_bar(&q.product(&r, &worst_right))) {
                return Some(Certificate::Nucleus { left: false, r, s: worst_right });
            }
        }
        None
    });
    found.map_or(Verdict::Holds, Verdict::fails)
}

/// (d): every `Q → T` and `T ← Q` with `T` a tensor is a tensor. Residuals
/// turn unions in `Q` into intersections, so principal `Q` suffice.
pub fn condition_d(base: &TensorBase, family: &TensorFamily) -> Verdict {
    let q = RelationQuantale::of_side(base.left()).expect("poset side");
    let n = q.len();
    let principals: Vec<Relation> = (0..n * n).map(|k| q.principal(k / n, k % n)).collect();
    let found = par::find_first(family.len(), |i| {
        let t = family.get(i);
        for p in &principals {
            if !base.is_tensor(&q.residual_right(p, t)) {
                return Some(Certificate::Residuation { left: true, q: p.clone(), t: t.clone() });
            }
            if !base.is_tensor(&q.residual_left(t, p)) {
                return Some(Certificate::Residuation { left: false, q: p.clone(), t: t.clone() });
            }
        }
        None
    });
    found.map_or(Verdict::Holds, Verdict::fails)
}

fn law_certificate(tq: &TensorQuantale, law: LawFailure) -> Certificate {
    let get = |i: usize| tq.family().get(i).clone();
    let empty = tq.base().empty();
    match law {
        LawFailure::LeftDistributivity { x, y, z } => Certificate::TensorLaw {
            law: LawKind::LeftDistributivity,
            x: get(x),
            y: get(y),
            z: get(z),
        },
        LawFailure::RightDistributivity { x, y, z } => Certificate::TensorLaw {
            law: LawKind::RightDistributivity,
            x: get(x),
            y: get(y),
            z: get(z),
        },
        LawFailure::Annihilation { x } => Certificate::TensorLaw {
            law: LawKind::Annihilation,
            x: get(x),
            y: empty.clone(),
            z: empty,
        },
        LawFailure::Associativity { x, y, z } => Certificate::TensorLaw {
            law: LawKind::Associativity,
            x: get(x),
            y: get(y),
            z: get(z),
        },
    }
}

/// (e): distributivity over binary joins and the bottom, and associativity,
/// on the full `⊙` table.
pub fn condition_e(tq: &TensorQuantale) -> Verdict {
    let fq = tq.to_finite();
    if let Some(law) = fq.distributivity_failure().or_else(|| fq.associativity_failure()) {
        return Verdict::fails(law_certificate(tq, law));
    }
    Verdict::Holds
}

/// (f): for each tensor `T`, the join of all tensors disjoint from `T` must
/// itself be disjoint from `T`.
pub fn condition_f(family: &TensorFamily) -> Verdict {
    let base = family.base();
    let members = family.members();
    let found = par::find_first(members.len(), |i| {
        let t = &members[i];
        let polar: Vec<&Relation> = members.iter().filter(|u| !u.intersects_rel(t)).collect();
        let mut union = base.empty();
        for u in &polar {
            union.union_with(u);
        }
        if !base.t_bar(&union).intersects_rel(t) {
            return None;
        }
        // two maximal members of the polar whose join meets T
        let maximal: Vec<&Relation> = polar
            .iter()
            .copied()
            .filter(|u| !polar.iter().any(|v| u != v && u.is_subset(v)))
            .collect();
        for (k, u) in maximal.iter().enumerate() {
            for v in &maximal[k + 1..] {
                if base.t_bar(&u.union(v)).intersects_rel(t) {
                    return Some(Certificate::Pseudocomplement {
                        t: t.clone(),
                        u: (*u).clone(),
                        v: (*v).clone(),
                    });
                }
            }
        }
        unreachable!("a polar without maximum has two maximal members with a join outside it")
    });
    found.map_or(Verdict::Holds, Verdict::fails)
}

/// (g): searches the obstruction `R·S = ∅ ≠ t(R)·S` built from a member `Y`
/// and an element `a ∈ ΔY` with `↓a ∩ ↓Y` inside the bottom (and its mirror
/// for the left family). Without an obstruction, `t̄` is the candidate, so the
/// verdict follows the nucleus test when that is known.
pub fn condition_g(base: &TensorBase, nucleus: Option<bool>) -> Verdict {
    let n = base.rows();
    if n == 0 {
        return Verdict::Holds;
    }
    let full = Bits::full(n);
    for left in [false, true] {
        let side = if left { base.left() } else { base.right() };
        let ap = side.augmented().expect("poset side");
        let p = ap.poset();
        for member in ap.family() {
            let below = side.restrict(&p.down_closure(member));
            for a in p.cut(member).difference(side.bottom()).iter() {
                let at = side.new_index(a).expect("outside the bottom");
                let down_a = side.down(at).clone();
                let (r, s) = if left {
                    (Relation::rectangle(n, n, &full, &down_a), Relation::rectangle(n, n, &below, &full))
                } else {
                    (Relation::rectangle(n, n, &full, &below), Relation::rectangle(n, n, &down_a, &full))
                };
                let cert = Certificate::Obstruction { left, r, s };
                if cert.recheck(base) {
                    return Verdict::fails(cert);
                }
            }
        }
    }
    match nucleus {
        Some(true) => Verdict::Holds,
        _ => Verdict::Skipped("no obstruction found and t̄ is not a nucleus".into()),
    }
}

/// The canonical embeddings `g(x) = ↓(b, x)` and `h(y) = ↓(y, b)` of the full
/// carrier into the tensors, for a fixed `b ∈ B̌` (`∅` on the bottom).
struct Embeddings<'a> {
    base: &'a TensorBase,
    b: usize,
}

impl<'a> Embeddings<'a> {
    fn new(base: &'a TensorBase) -> Option<Self> {
        (base.rows() > 0).then_some(Embeddings { base, b: 0 })
    }

    fn g(&self, x: usize) -> Relation {
        match self.base.right().new_index(x) {
            Some(xt) => self.base.pure(self.b, xt),
            None => self.base.empty(),
        }
    }

    fn h(&self, y: usize) -> Relation {
        match self.base.left().new_index(y) {
            Some(yt) => self.base.pure(yt, self.b),
            None => self.base.empty(),
        }
    }

    fn odot(&self, r: &Relation, s: &Relation) -> Relation {
        self.base.t_bar(&r.product(s).expect("square base"))
    }

    /// For a right-family member `Y`: `(⋁g[Y]) ⊙ h(x) ≠ ⋁{g(y) ⊙ h(x)}`; for
    /// a left-family member `X`: `g(x) ⊙ ⋁h[X] ≠ ⋁{g(x) ⊙ h(y)}`.
    fn join_failure(&self, left: bool, x: usize, member: &Bits) -> bool {
        let mut joined = self.base.empty();
        let mut parts = self.base.empty();
        for y in member.iter() {
            if left {
                let hy = self.h(y);
                joined.union_with(&hy);
                parts.union_with(&self.odot(&self.g(x), &hy));
            } else {
                let gy = self.g(y);
                joined.union_with(&gy);
                parts.union_with(&self.odot(&gy, &self.h(x)));
            }
        }
        let joined = self.base.t_bar(&joined);
        let lhs = if left {
            self.odot(&self.g(x), &joined)
        } else {
            self.odot(&joined, &self.h(x))
        };
        lhs != self.base.t_bar(&parts)
    }
}

/// (h): the canonical embeddings are order embeddings, continuous for the
/// respective ideals, reflect orthogonality through `⊙`, carry family joins to
/// joins of products, and land in a prequantale.
pub fn condition_h(tq: &TensorQuantale) -> Verdict {
    let base = tq.base();
    let Some(emb) = Embeddings::new(base) else { return Verdict::Holds };
    let ap_x = base.left().augmented().expect("poset side");
    let ap_y = base.right().augmented().expect("poset side");
    let p = ap_y.poset();
    let n = p.len();
    let gs: Vec<Relation> = (0..n).map(|x| emb.g(x)).collect();
    let hs: Vec<Relation> = (0..n).map(|y| emb.h(y)).collect();
    for x in 0..n {
        for y in 0..n {
            assert_eq!(p.leq(x, y), gs[x].is_subset(&gs[y]), "g is not an order embedding");
            assert_eq!(p.leq(x, y), hs[x].is_subset(&hs[y]), "h is not an order embedding");
            let orth = ap_y.orthogonal(x, y);
            assert_eq!(orth, emb.odot(&gs[x], &hs[y]).is_empty(), "embeddings do not reflect orthogonality");
        }
    }
    for t in tq.family().members() {
        let pre_g = Bits::from_indices(n, (0..n).filter(|&x| gs[x].is_subset(t)));
        let pre_h = Bits::from_indices(n, (0..n).filter(|&y| hs[y].is_subset(t)));
        assert!(ap_y.is_ideal(&pre_g), "g is not continuous");
        assert!(ap_x.is_ideal(&pre_h), "h is not continuous");
    }
    for (left, ap) in [(false, ap_y), (true, ap_x)] {
        for member in ap.family() {
            for x in 0..n {
                if emb.join_failure(left, x, member) {
                    return Verdict::fails(Certificate::EmbeddingJoin {
                        left,
                        x,
                        member: member.clone(),
                    });
                }
            }
        }
    }
    match tq.to_finite().distributivity_failure() {
        Some(law) => Verdict::fails(law_certificate(tq, law)),
        None => Verdict::Holds,
    }
}

trait IntersectsRel {
    fn intersects_rel(&self, other: &Relation) -> bool;
}

impl IntersectsRel for Relation {
    fn intersects_rel(&self, other: &Relation) -> bool {
        self.bits().intersects(other.bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{AugmentedPoset, FamilyKind};
    use crate::order::FinitePoset;
    use crate::tensor::Side;

    fn square(p: &FinitePoset, kind: FamilyKind) -> TensorBase {
        let s = Side::poset("B", AugmentedPoset::with_kind(p.clone(), kind));
        TensorBase::new(s.clone(), s)
    }

    #[test]
    fn chain3_satisfies_everything() {
        let base = square(&FinitePoset::chain(3), FamilyKind::Powerset);
        let r = quantale_conditions(&base, ConditionOptions::default()).unwrap();
        assert_eq!(r.tensors, Some(6));
        for (c, v) in &r.verdicts {
            assert_eq!(v, &Verdict::Holds, "condition ({})", c.letter());
        }
    }

    #[test]
    fn m3_fails_everything_with_checkable_certificates() {
        let base = square(&FinitePoset::m3(), FamilyKind::Powerset);
        let r = quantale_conditions(&base, ConditionOptions::default()).unwrap();
        for (c, v) in &r.verdicts {
            let cert = v.certificate().unwrap_or_else(|| panic!("condition ({}) should fail", c.letter()));
            assert!(cert.recheck(&base), "certificate for ({}) does not recheck", c.letter());
        }
    }

    #[test]
    fn directed_family_on_m3_is_distributive_at_the_bottom() {
        let base = square(&FinitePoset::m3(), FamilyKind::Directed);
        let r = quantale_conditions(&base, ConditionOptions::default()).unwrap();
        assert!(!FinitePoset::m3().properties().pseudocomplemented);
        assert!(r.agree(), "{:?}", r.verdicts);
        assert_eq!(r.value(), Some(true));
    }

    #[test]
    fn mismatched_bottoms_are_rejected() {
        let p = FinitePoset::chain(3);
        let base = TensorBase::new(
            Side::poset("X", AugmentedPoset::with_kind(p.clone(), FamilyKind::Powerset)),
            Side::poset("Y", AugmentedPoset::with_kind(p, FamilyKind::Directed)),
        );
        assert!(matches!(quantale_conditions(&base, ConditionOptions::default()), Err(Error::CarrierMismatch(_))));
    }
}
