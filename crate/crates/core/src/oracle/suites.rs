//! Verification suites, one per result. Every equivalence is checked by
//! computing each side on its own and comparing; failures come with the
//! relations, elements or maps that exhibit them.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{all_closed_sets, Bits};
use crate::closure::ClosureSpace;
use crate::completion::{AugmentedPoset, FamilyKind};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::par;
use crate::quantale::{
    condition_e, condition_f, galois_compose, nucleus_checks, odot, relation_product, quantale_conditions, unit_report,
    atoms_are_pure_tensors, AtomRelationIso, Condition, FiniteQuantale, PreclosureTable, RelationQuantale, TensorQuantale,
    ConditionOptions, Verdict,
};
use crate::relation::Relation;
use crate::tensor::{
    antitone_maps, galois_inverse, galois_map, is_family_galois, map_leq, MapTable, Side, SpacePairIso, TensorBase,
    TensorFamily, DEFAULT_GUARD,
};

use super::brute::{brute_residual_left, brute_residual_right};
use super::corpus::Corpus;
use super::idem::{
    atom_pair_example, idempotency_search_atom_pairs, idempotency_search_exhaustive, idempotency_search_sampled, Coverage,
    IdemReport,
};

/// Suite identifiers accepted by [`run_suite`].
pub const SUITES: [&str; 21] = [
    "thm32", "thm71", "prop71", "cor71", "thm81", "thm82", "thm83", "prop91", "lem91", "thm91", "cor91", "lem101",
    "lem82", "lem81", "prop21", "prop51", "lem41", "ex11", "ex81", "ex91", "idem",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Bound on enumerated tensors or down-sets per member.
    pub guard: usize,
    /// Sampled triples where exhaustive checks are too large.
    pub samples: usize,
    /// Seeded samples for the idempotency search on larger bases.
    pub idem_samples: usize,
    /// Largest down-set count searched exhaustively for idempotency.
    pub idem_limit: usize,
    /// Largest down-set quantale turned into a finite multiplication table.
    pub table_limit: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            guard: DEFAULT_GUARD,
            samples: 1000,
            idem_samples: 10_000,
            idem_limit: 2_100_000,
            table_limit: 1024,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MemberVerdict {
    pub name: String,
    pub outcome: Outcome,
    /// Findings and witnesses, one line each.
    pub details: Vec<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub id: String,
    pub members: Vec<MemberVerdict>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.count(Outcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Outcome::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Outcome::Skip)
    }

    pub fn total(&self) -> usize {
        self.members.len()
    }

    /// No member failed.
    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn member(&self, name: &str) -> Option<&MemberVerdict> {
        self.members.iter().find(|m| m.name == name)
    }

    fn count(&self, o: Outcome) -> usize {
        self.members.iter().filter(|m| m.outcome == o).count()
    }

    /// `MEMBER` lines with indented details, then the `SUITE` summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            let _ = writeln!(out, "MEMBER {} {} {}", m.name, self.id, m.outcome.as_str());
            for line in &m.details {
                let _ = writeln!(out, "    {line}");
            }
        }
        let _ = writeln!(out, "# {} took {:.2}s", self.id, self.elapsed.as_secs_f64());
        let _ = writeln!(out, "SUITE {} {}/{}", self.id, self.passed(), self.total());
        out
    }
}

/// Findings for one member.
#[derive(Default)]
struct Check {
    failed: bool,
    lines: Vec<String>,
}

impl Check {
    fn note(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn fail(&mut self, s: impl Into<String>) {
        self.failed = true;
        self.lines.push(format!("violation: {}", s.into()));
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }
}

fn run_members<T, F>(items: &[(String, T)], f: F) -> Vec<MemberVerdict>
where
    T: Sync,
    F: Fn(&T) -> Result<Check> + Sync + Send,
{
    par::map(items, |(name, item)| {
        let start = Instant::now();
        let (outcome, details) = match f(item) {
            Ok(c) => (if c.failed { Outcome::Fail } else { Outcome::Pass }, c.lines),
            Err(e @ (Error::GuardExceeded { .. } | Error::BoundExceeded { .. } | Error::TableTooLarge { .. })) => {
                (Outcome::Skip, vec![format!("skipped: {e}")])
            }
            Err(e) => (Outcome::Fail, vec![format!("error: {e}")]),
        };
        let elapsed = start.elapsed();
        MemberVerdict {
            name: name.clone(),
            outcome,
            details,
            elapsed,
        }
    })
}

/// Runs one suite over `corpus`.
pub fn run_suite(id: &str, corpus: &Corpus, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let members = match id {
        "thm32" => thm32(corpus, cfg),
        "thm71" => thm71(corpus, cfg),
        "prop71" => prop71(corpus, cfg),
        "cor71" => cor71(corpus),
        "thm81" => thm81(corpus, cfg),
        "thm82" => thm82(corpus, cfg),
        "thm83" => thm83(corpus, cfg),
        "prop91" => prop91(corpus, cfg),
        "lem91" => lem91(corpus, cfg),
        "thm91" => thm91(corpus, cfg),
        "cor91" => cor91(corpus, cfg),
        "lem101" => lem101(corpus, cfg),
        "lem82" => lem82(corpus, cfg),
        "lem81" => lem81(corpus, cfg),
        "prop21" => prop21(corpus, cfg),
        "prop51" => prop51(corpus, cfg),
        "lem41" => lem41(corpus, cfg),
        "ex11" => ex11(),
        "ex81" => ex81(),
        "ex91" => ex91(),
        "idem" => idem(corpus, cfg),
        _ => return Err(Error::UnknownSuite(id.to_string())),
    };
    Ok(SuiteReport {
        id: id.to_string(),
        members,
        elapsed: start.elapsed(),
    })
}

/// Runs every suite in [`SUITES`] order.
pub fn run_all(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|id| run_suite(id, corpus, cfg).expect("known suite"))
        .collect()
}

// ---- helpers ----

fn kinded(name: &str, p: &FinitePoset, kind: FamilyKind) -> Side {
    Side::poset(name, AugmentedPoset::with_kind(p.clone(), kind))
}

fn kind_tag(kind: FamilyKind) -> &'static str {
    kind.name().trim_start_matches('@')
}

fn fmt_full(base: &TensorBase, r: &Relation) -> String {
    r.fmt_with(base.left().full_labels(), base.right().full_labels())
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// All full tensors of a base, by closing subsets of the full carriers.
fn full_tensors(base: &TensorBase, limit: usize) -> Result<Vec<Relation>> {
    let (n, m) = (base.full_rows(), base.full_cols());
    let sets = all_closed_sets(n * m, |s| base.full_closure(&Relation::from_bits(n, m, s.clone())).bits().clone(), limit)
        .map_err(|limit| Error::GuardExceeded { limit })?;
    let mut out: Vec<Relation> = sets.into_iter().map(|b| Relation::from_bits(n, m, b)).collect();
    out.sort();
    Ok(out)
}

/// All down-sets of `Ǎ × B̌`.
fn lower_relations(base: &TensorBase, limit: usize) -> Result<Vec<Relation>> {
    let (n, m) = (base.rows(), base.cols());
    let sets = all_closed_sets(n * m, |s| base.down_closure(&Relation::from_bits(n, m, s.clone())).bits().clone(), limit)
        .map_err(|limit| Error::GuardExceeded { limit })?;
    Ok(sets.into_iter().map(|b| Relation::from_bits(n, m, b)).collect())
}

/// Checks that `fwd` is an order isomorphism from `src` onto `dst` with
/// inverse `back`; returns whether it is.
fn check_iso<F, G>(c: &mut Check, name: &str, src: &[Relation], dst: &[Relation], fwd: F, back: G) -> Result<bool>
where
    F: Fn(&Relation) -> Result<Relation>,
    G: Fn(&Relation) -> Result<Relation>,
{
    let img: Vec<Relation> = src.iter().map(&fwd).collect::<Result<_>>()?;
    let mut target = dst.to_vec();
    target.sort();
    let mut hit = vec![false; target.len()];
    for (s, i) in src.iter().zip(&img) {
        match target.binary_search(i) {
            Err(_) => {
                c.fail(format!("{name} sends {s:?} to {i:?}, which is not in the target"));
                return Ok(false);
            }
            Ok(p) if hit[p] => {
                c.fail(format!("{name} is not injective: {i:?} is hit twice, once by {s:?}"));
                return Ok(false);
            }
            Ok(p) => hit[p] = true,
        }
    }
    if let Some(p) = hit.iter().position(|h| !h) {
        c.fail(format!("{name} misses {:?}", target[p]));
        return Ok(false);
    }
    for (s, i) in src.iter().zip(&img) {
        let b = back(i)?;
        if b != *s {
            c.fail(format!("inverse of {name} sends {i:?} to {b:?}, expected {s:?}"));
            return Ok(false);
        }
    }
    let n = src.len();
    if let Some((i, j)) = (0..n * n)
        .map(|k| (k / n, k % n))
        .find(|&(i, j)| src[i].is_subset(&src[j]) != img[i].is_subset(&img[j]))
    {
        c.fail(format!(
            "{name} does not reflect order: {:?} ⊆ {:?} is {} but images give {}",
            src[i],
            src[j],
            src[i].is_subset(&src[j]),
            img[i].is_subset(&img[j])
        ));
        return Ok(false);
    }
    c.note(format!("{name}: order isomorphism on {n} tensors"));
    Ok(true)
}

fn verdict_line(c: Condition, v: &Verdict, base: &TensorBase) -> String {
    match v.certificate() {
        Some(cert) => format!("({}) false: {}", c.letter(), cert.describe(base)),
        None => format!("({}) {v}", c.letter()),
    }
}

fn space_pairs(corpus: &Corpus, ordered: bool) -> Vec<(String, (ClosureSpace, ClosureSpace))> {
    let spaces: Vec<(&str, &ClosureSpace)> = corpus.spaces().collect();
    let mut out = Vec::new();
    for (i, (na, a)) in spaces.iter().enumerate() {
        for (j, (nb, b)) in spaces.iter().enumerate() {
            if ordered || i <= j {
                out.push((format!("{na}*{nb}"), ((*a).clone(), (*b).clone())));
            }
        }
    }
    out
}

// ---- closure spaces ----

enum IsoItem {
    Spaces(ClosureSpace, ClosureSpace),
    Ideals(FinitePoset, FamilyKind),
}

/// `A ⊗ B ≅ 𝒞A ⊗ 𝒞B` via `h`, the truncation bijection, their composite
/// `𝒞_AB`, and `A_𝒳 ⊗ B_𝒴 = ℐ_𝒳A ⊗ ℐ_𝒴B` on augmented posets.
fn thm32(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let mut items: Vec<(String, IsoItem)> = space_pairs(corpus, true)
        .into_iter()
        .map(|(n, (a, b))| (n, IsoItem::Spaces(a, b)))
        .collect();
    for (name, p) in corpus.posets().filter(|(_, p)| p.len() <= 5) {
        for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Empty] {
            items.push((format!("{name}@{}", kind_tag(kind)), IsoItem::Ideals(p.clone(), kind)));
        }
    }
    let guard = cfg.guard;
    run_members(&items, |item| match item {
        IsoItem::Spaces(a, b) => {
            let iso = SpacePairIso::new(a.clone(), b.clone());
            let (base, lb) = (iso.base(), iso.lattice_base());
            let full = full_tensors(base, guard)?;
            let full_c = full_tensors(lb, guard)?;
            let trunc = base.enumerate(guard)?.members().to_vec();
            let trunc_c = lb.enumerate(guard)?.members().to_vec();
            let mut c = Check::default();
            check_iso(&mut c, "h", &full, &full_c, |t| iso.h(t), |t| iso.h_inverse(t))?;
            check_iso(&mut c, "truncation", &full, &trunc, |t| base.truncate(t), |t| base.untruncate(t))?;
            check_iso(
                &mut c,
                "C_AB",
                &trunc,
                &trunc_c,
                |t| iso.c_ab(&base.untruncate(t)?),
                |t| base.truncate(&iso.c_ab_inverse(t)?),
            )?;
            Ok(c)
        }
        IsoItem::Ideals(p, kind) => {
            let ap = AugmentedPoset::with_kind(p.clone(), *kind);
            let ideals = ap.ideal_system();
            let pb = TensorBase::new(Side::poset("A", ap.clone()), Side::poset("A", ap));
            let sb = TensorBase::new(Side::space("A", ideals.clone()), Side::space("A", ideals));
            let (fp, fs) = (full_tensors(&pb, guard)?, full_tensors(&sb, guard)?);
            let mut c = Check::default();
            match fp.iter().zip(&fs).find(|(x, y)| x != y) {
                _ if fp.len() != fs.len() => {
                    c.fail(format!("{} poset tensors but {} ideal-space tensors", fp.len(), fs.len()))
                }
                Some((x, y)) => c.fail(format!("poset tensor {} differs from ideal-space tensor {}", fmt_full(&pb, x), fmt_full(&sb, y))),
                None => c.note(format!("{} tensors agree with the ideal-space tensors", fp.len())),
            }
            let (tp, ts) = (pb.enumerate(guard)?, sb.enumerate(guard)?);
            c.expect(tp.members() == ts.members(), || "truncated tensors differ".into());
            Ok(c)
        }
    })
}

/// Polarized spaces, pseudocomplemented closed-set lattices and
/// pseudocomplemented tensor lattices.
fn thm71(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let items = space_pairs(corpus, false);
    let guard = cfg.guard;
    run_members(&items, |(a, b)| {
        let single = |s: &ClosureSpace| s.closed_sets().len() == 1;
        let polarized = (a.properties().polarized && b.properties().polarized) || single(a) || single(b);
        let (ca, cb) = (a.closed_set_lattice(), b.closed_set_lattice());
        let lattices_pc = (ca.properties().pseudocomplemented && cb.properties().pseudocomplemented)
            || ca.len() == 1
            || cb.len() == 1;
        let iso = SpacePairIso::new(a.clone(), b.clone());
        let tensor_lattice = iso.base().enumerate(guard)?.lattice();
        let lattice_tensors = iso.lattice_base().enumerate(guard)?.lattice();
        let vals = [
            ("(a) polarized", polarized),
            ("(b) closed-set lattices pseudocomplemented", lattices_pc),
            ("(c) A ⊗ B pseudocomplemented", tensor_lattice.properties().pseudocomplemented),
            ("(c) CA ⊗ CB pseudocomplemented", lattice_tensors.properties().pseudocomplemented),
        ];
        let mut c = Check::default();
        for (what, v) in vals {
            c.note(format!("{what}: {}", yes(v)));
        }
        if vals.iter().any(|(_, v)| *v != vals[0].1) {
            let mut why = String::from("conditions disagree");
            if let Some(x) = a.properties().polar_witness {
                let _ = write!(why, "; polar of {} in A is not closed", a.label(x));
            }
            if let Some(t) = tensor_lattice.properties().pseudocomplement_witness {
                let _ = write!(why, "; tensor {} has no pseudocomplement", tensor_lattice.label(t));
            }
            c.fail(why);
        }
        Ok(c)
    })
}

/// Pseudocomplements of `A ⊗ b` and pseudocomplementation of the tensor
/// lattice of two bounded lattices.
fn prop71(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let lats: Vec<(&str, &FinitePoset)> = corpus.lattices().filter(|(_, p)| p.len() >= 2).collect();
    let mut items = Vec::new();
    for (na, a) in &lats {
        for (nb, b) in &lats {
            if (a.len() <= 5 && b.len() <= 5) || (na == nb) {
                items.push((format!("{na}*{nb}"), ((*a).clone(), (*b).clone())));
            }
        }
    }
    let guard = cfg.guard;
    run_members(&items, |(a, b)| {
        let base = TensorBase::new(Side::lattice("A", a), Side::lattice("B", b));
        let fam = base.enumerate(guard)?;
        let lat = fam.lattice();
        let mut c = Check::default();
        let a_times = |y: usize| {
            Relation::rectangle(base.rows(), base.cols(), &Bits::full(base.rows()), &base.right().restrict(b.down_of(y)))
        };
        for y in 0..b.len() {
            let Some(idx) = fam.index_of(&a_times(y)) else {
                c.fail(format!("A ⊗ {} is not a tensor", b.label(y)));
                continue;
            };
            match (b.pseudocomplement(y), lat.pseudocomplement(idx)) {
                (Some(ys), Some(k)) => c.expect(*fam.get(k) == a_times(ys), || {
                    format!(
                        "pseudocomplement of A ⊗ {} is {}, not A ⊗ {}",
                        b.label(y),
                        base.fmt(fam.get(k)),
                        b.label(ys)
                    )
                }),
                (None, None) => {}
                (Some(ys), None) => c.fail(format!("{}* = {} but A ⊗ {} has no pseudocomplement", b.label(y), b.label(ys), b.label(y))),
                (None, Some(k)) => c.fail(format!(
                    "{} has no pseudocomplement but A ⊗ {} has {}",
                    b.label(y),
                    b.label(y),
                    base.fmt(fam.get(k))
                )),
            }
        }
        let factors = a.properties().pseudocomplemented && b.properties().pseudocomplemented;
        let tensors = lat.properties().pseudocomplemented;
        c.note(format!("factors pseudocomplemented: {}, tensor lattice: {}", yes(factors), yes(tensors)));
        c.expect(factors == tensors, || "factor and tensor pseudocomplementation disagree".into());
        Ok(c)
    })
}

/// Distributivity at the bottom in polar and witness form against the
/// pseudocomplementation of the ideal lattice.
fn cor71(corpus: &Corpus) -> Vec<MemberVerdict> {
    let mut items = Vec::new();
    for (name, p) in corpus.posets() {
        for kind in FamilyKind::ALL {
            items.push((format!("{name}@{}", kind_tag(kind)), AugmentedPoset::with_kind(p.clone(), kind)));
        }
    }
    run_members(&items, |ap| {
        let polar_failure = (0..ap.len()).find(|&x| !ap.is_ideal(&ap.polar(x)));
        let witness = ap.bottom_distributivity_witness();
        let ideals = ap.ideal_system();
        let pc = ideals.closed_set_lattice().properties().pseudocomplemented;
        let polarized = ideals.properties().polarized;
        let vals = [polar_failure.is_none(), witness.is_none(), polarized, pc];
        let mut c = Check::default();
        c.note(format!(
            "polars are ideals: {}, witness form: {}, ideal space polarized: {}, ideal lattice pseudocomplemented: {}",
            yes(vals[0]),
            yes(vals[1]),
            yes(vals[2]),
            yes(vals[3])
        ));
        if let Some((y, a)) = &witness {
            c.note(format!("{} lies in ΔY ∖ ⊥ for Y = {} but meets ↓Y only in ⊥", ap.poset().label(*a), ap.poset().fmt_set(y)));
        }
        c.expect(vals.iter().all(|&v| v == vals[0]), || "the four forms disagree".into());
        Ok(c)
    })
}

// ---- tensor quantales ----

/// All eight conditions with partial families.
fn thm81(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let mut items = Vec::new();
    for (name, p) in corpus.posets() {
        for kind in [FamilyKind::Directed, FamilyKind::Finite, FamilyKind::Chains] {
            items.push((format!("{name}@{}", kind_tag(kind)), (p.clone(), kind)));
        }
    }
    let opts = ConditionOptions {
        guard: cfg.guard,
        ..Default::default()
    };
    run_members(&items, |(p, kind)| {
        let side = kinded("B", p, *kind);
        let base = TensorBase::new(side.clone(), side);
        let rep = quantale_conditions(&base, opts)?;
        let mut c = Check::default();
        c.note(format!(
            "value {}, {} of 8 decided, pseudocomplemented {}",
            rep.value().map_or("mixed", yes),
            rep.decided(),
            yes(p.properties().pseudocomplemented)
        ));
        for (cond, v) in &rep.verdicts {
            c.note(verdict_line(*cond, v, &base));
            if let Some(cert) = v.certificate() {
                c.expect(cert.recheck(&base), || format!("certificate for ({}) does not re-check", cond.letter()));
            }
        }
        c.expect(rep.agree(), || "decided conditions disagree".into());
        Ok(c)
    })
}

/// Tensor count above which the per-family law checks of (i) and (j) are
/// skipped.
const FAMILY_LAW_CAP: usize = 200;

/// The complete-lattice case: (a) from the order, (b)-(h) as for the
/// powerset families, (i)/(j) over every family on the left for which the
/// truncated carriers match.
fn thm82(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let items: Vec<(String, FinitePoset)> = corpus.lattices().map(|(n, p)| (n.to_string(), p.clone())).collect();
    let opts = ConditionOptions {
        guard: cfg.guard,
        ..Default::default()
    };
    let guard = cfg.guard;
    run_members(&items, |p| {
        let pc = p.properties().pseudocomplemented;
        let base = TensorBase::lattice_square("B", p);
        let rep = quantale_conditions(&base, opts)?;
        let mut c = Check::default();
        let mut vals: Vec<(String, bool)> = vec![("(a) pseudocomplemented".into(), pc)];
        if let Some(x) = p.properties().pseudocomplement_witness {
            c.note(format!("{} has no pseudocomplement", p.label(x)));
        }
        for (cond, v) in &rep.verdicts {
            c.note(verdict_line(*cond, v, &base));
            if let Some(cert) = v.certificate() {
                c.expect(cert.recheck(&base), || format!("certificate for ({}) does not re-check", cond.letter()));
            }
            if let Some(b) = v.value() {
                vals.push((format!("({})", cond.letter()), b));
            }
        }
        let (mut quantale, mut pseudo) = (Vec::new(), Vec::new());
        for kind in FamilyKind::ALL {
            let left = kinded("X", p, kind);
            let right = Side::lattice("B", p);
            if !left.same_carrier(&right) {
                continue;
            }
            let fam = match TensorBase::new(left, right).enumerate(guard.min(FAMILY_LAW_CAP)) {
                Ok(f) => f,
                Err(Error::GuardExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            let fb = fam.base().clone();
            let e = condition_e(&TensorQuantale::from_family(fam.clone())?);
            let f = condition_f(&fam);
            for (v, tag) in [(&e, 'e'), (&f, 'f')] {
                if let Some(cert) = v.certificate() {
                    c.note(format!("{} ({tag}): {}", kind.name(), cert.describe(&fb)));
                    c.expect(cert.recheck(&fb), || format!("certificate for {} ({tag}) does not re-check", kind.name()));
                }
            }
            quantale.extend(e.value().map(|v| (kind, v)));
            pseudo.extend(f.value().map(|v| (kind, v)));
        }
        for (tag, list) in [("(i)", &quantale), ("(j)", &pseudo)] {
            if list.is_empty() {
                c.note(format!("{tag} skipped: no family within {FAMILY_LAW_CAP} tensors"));
                continue;
            }
            let names: Vec<&str> = list.iter().map(|(k, _)| k.name()).collect();
            let v = list.iter().all(|(_, v)| *v);
            c.note(format!("{tag} {} over {}", yes(v), names.join(" ")));
            vals.push((tag.to_string(), v));
        }
        if vals.iter().any(|(_, v)| *v != pc) {
            let odd: Vec<&str> = vals.iter().filter(|(_, v)| *v != pc).map(|(k, _)| k.as_str()).collect();
            c.fail(format!("disagree with (a): {}", odd.join(" ")));
        }
        Ok(c)
    })
}

/// A closure space is polarized iff `Ǎ ⊗̌ Ǎ` is a quantale under `⊙`.
fn thm83(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let items: Vec<(String, ClosureSpace)> = corpus.spaces().map(|(n, s)| (n.to_string(), s.clone())).collect();
    let guard = cfg.guard;
    run_members(&items, |a| {
        let side = Side::space("A", a.clone());
        let tq = TensorQuantale::new(TensorBase::new(side.clone(), side), guard)?;
        let report = tq.to_finite().check();
        let vals = [
            ("polarized", a.properties().polarized),
            ("CA pseudocomplemented", a.closed_set_lattice().properties().pseudocomplemented),
            ("quantale", report.is_quantale()),
        ];
        let mut c = Check::default();
        for (k, v) in vals {
            c.note(format!("{k}: {}", yes(v)));
        }
        let fam = tq.family();
        if let Some(f) = report.distributivity.as_ref().or(report.associativity.as_ref()) {
            c.note(format!("law failure: {}", f.describe(|i| tq.base().fmt(fam.get(i)))));
        }
        c.expect(vals.iter().all(|(_, v)| *v == vals[0].1), || "conditions disagree".into());
        Ok(c)
    })
}

// ---- units ----

fn square_quantale(p: &FinitePoset, guard: usize) -> Result<TensorQuantale> {
    TensorQuantale::new(TensorBase::lattice_square("B", p), guard)
}

/// Atomistic, `I_A` neutral, unital, `i_A` neutral in `Gal(B, B)`, and
/// `Gal(B, B)` unital.
fn prop91(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let items: Vec<(String, FinitePoset)> = corpus.lattices().map(|(n, p)| (n.to_string(), p.clone())).collect();
    let guard = cfg.guard;
    run_members(&items, |p| {
        let tq = square_quantale(p, guard)?;
        let r = unit_report(&tq)?;
        let base = tq.base();
        let mut c = Check::default();
        c.note(format!(
            "atomistic {}, I_A neutral {}, units {}, i_A neutral {}, Galois units {}",
            yes(r.atomistic),
            yes(r.identity_neutral),
            r.units.len(),
            yes(r.map_neutral),
            r.map_units.len()
        ));
        c.note(format!("I_A = {}", base.fmt(&r.identity)));
        if let Some(x) = p.properties().atomistic_witness {
            c.note(format!("{} is not a join of atoms", p.label(x)));
        }
        c.expect(r.agree(), || "the five forms disagree".into());
        if r.unital() {
            let idx = tq.family().index_of(&r.identity);
            c.expect(r.units.len() == 1 && idx == Some(r.units[0]), || "the unit is not I_A".into());
            c.expect(r.map_units == [r.map.clone()], || "the Galois unit is not i_A".into());
            c.expect(r.map_matches_identity, || "i_A is not the map of I_A".into());
        }
        Ok(c)
    })
}

/// Atoms of `B ⊗̌ C` are the pure tensors of atoms; atomistic factors give
/// an atomistic tensor lattice.
fn lem91(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let lats: Vec<(&str, &FinitePoset)> = corpus.lattices().collect();
    let mut items = Vec::new();
    for (na, a) in &lats {
        for (nb, b) in &lats {
            if (a.len() <= 5 && b.len() <= 5) || na == nb {
                items.push((format!("{na}*{nb}"), ((*a).clone(), (*b).clone())));
            }
        }
    }
    let guard = cfg.guard;
    run_members(&items, |(a, b)| {
        let fam = TensorBase::new(Side::lattice("B", a), Side::lattice("C", b)).enumerate(guard)?;
        let lat = fam.lattice();
        let factors = a.properties().atomistic && b.properties().atomistic;
        let tensors = lat.properties().atomistic;
        let mut c = Check::default();
        c.note(format!("factors atomistic: {}, tensor lattice atomistic: {}", yes(factors), yes(tensors)));
        c.expect(atoms_are_pure_tensors(&fam), || "atoms of the tensor lattice are not the pure tensors of atoms".into());
        c.expect(!factors || tensors, || {
            let x = lat.properties().atomistic_witness.map_or("?".into(), |x| fam.base().fmt(fam.get(x)));
            format!("tensor {x} is not a join of atoms")
        });
        Ok(c)
    })
}

/// ABC-lattices, atomistic pseudocomplemented lattices, unital tensor
/// quantales and relation quantales on the atoms.
fn thm91(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let items: Vec<(String, FinitePoset)> = corpus.lattices().map(|(n, p)| (n.to_string(), p.clone())).collect();
    let (guard, samples, seed) = (cfg.guard, cfg.samples, cfg.seed);
    run_members(&items, |p| {
        let props = p.properties();
        let tq = square_quantale(p, guard)?;
        let q = tq.to_finite().check();
        let mut vals = vec![
            ("(a) atomic and boolean", props.atomic && props.boolean),
            ("(b) atomistic and pseudocomplemented", props.atomistic && props.pseudocomplemented),
            ("(c) unital quantale", q.is_quantale() && q.is_unital()),
        ];
        let mut c = Check::default();
        match AtomRelationIso::new(tq.base()) {
            Ok(iso) => {
                let rep = iso.check(&tq, samples, &mut ChaCha8Rng::seed_from_u64(seed));
                c.note(format!(
                    "atom relations: {} atoms, {} tensors, bijective {}, {} table products, {} triples, {} pure products",
                    rep.atoms,
                    rep.tensors,
                    yes(rep.bijective),
                    rep.table_products,
                    rep.triples,
                    rep.pure_products
                ));
                vals.push(("(d) isomorphic to all relations on the atoms", rep.holds()));
            }
            Err(Error::BoundExceeded { got, .. }) => c.note(format!("(d) skipped: {got} atoms")),
            Err(e) => return Err(e),
        }
        for (k, v) in &vals {
            c.note(format!("{k}: {}", yes(*v)));
        }
        c.expect(vals.iter().all(|(_, v)| *v == vals[0].1), || "conditions disagree".into());
        Ok(c)
    })
}

/// The Alexandroff space of all down-sets of `p`.
fn alexandroff(p: &FinitePoset) -> Option<ClosureSpace> {
    let sets = all_closed_sets(p.len(), |s| p.down_closure(s), 1 << 12).ok()?;
    ClosureSpace::from_generators(p.labels().to_vec(), &sets).ok()
}

/// Unbounded T0 spaces: discrete iff `A ⊗ A` is a unital quantale.
fn cor91(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let mut items: Vec<(String, ClosureSpace)> = corpus.spaces().map(|(n, s)| (n.to_string(), s.clone())).collect();
    for (name, p) in corpus.posets().filter(|(_, p)| p.len() <= 4) {
        items.extend(alexandroff(p).map(|s| (format!("ALEX({name})"), s)));
    }
    items.retain(|(_, s)| s.properties().unbounded && s.properties().t0);
    let guard = cfg.guard;
    run_members(&items, |a| {
        let discrete = a.closed_sets().len() == 1 << a.len();
        let side = Side::space("A", a.clone());
        let q = TensorQuantale::new(TensorBase::new(side.clone(), side), guard)?.to_finite().check();
        let unital = q.is_quantale() && q.is_unital();
        let mut c = Check::default();
        c.note(format!("discrete: {}, unital quantale: {}", yes(discrete), yes(unital)));
        c.expect(discrete == unital, || "discreteness and unitality disagree".into());
        Ok(c)
    })
}

// ---- composition across factors ----

/// All pairs of `xs × ys`, or a seeded sample of `samples` of them.
fn pairs_or_sample(nx: usize, ny: usize, cap: usize, samples: usize, seed: u64) -> Vec<(usize, usize)> {
    if nx * ny <= cap {
        return (0..nx * ny).map(|k| (k / ny, k % ny)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (rng.gen_range(0..nx), rng.gen_range(0..ny))).collect()
}

/// `𝒞_AC(R ⊙ S) = 𝒞_AB(R) ⊙ 𝒞_BC(S)` and
/// `R·S ⊆ T ⟺ 𝒞_AB(R)·𝒞_BC(S) ⊆ 𝒞_AC(T)` on truncated tensors.
fn lem101(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let spaces: Vec<(&str, &ClosureSpace)> = corpus.spaces().filter(|(_, s)| s.closed_sets().len() <= 5).collect();
    let mut items = Vec::new();
    for (na, a) in &spaces {
        for (nb, b) in &spaces {
            for (nc, cc) in &spaces {
                items.push((format!("{na}*{nb}*{nc}"), ((*a).clone(), (*b).clone(), (*cc).clone())));
            }
        }
    }
    let (guard, samples, seed) = (cfg.guard, cfg.samples, cfg.seed);
    run_members(&items, |(a, b, cc)| {
        let ab = SpacePairIso::new(a.clone(), b.clone());
        let bc = SpacePairIso::new(b.clone(), cc.clone());
        let ac = SpacePairIso::new(a.clone(), cc.clone());
        let (fab, fbc, fac) = (ab.base().enumerate(guard)?, bc.base().enumerate(guard)?, ac.base().enumerate(guard)?);
        let c_of = |iso: &SpacePairIso, t: &Relation| iso.c_ab(&iso.base().untruncate(t)?);
        let cab: Vec<Relation> = fab.members().iter().map(|t| c_of(&ab, t)).collect::<Result<_>>()?;
        let cbc: Vec<Relation> = fbc.members().iter().map(|t| c_of(&bc, t)).collect::<Result<_>>()?;
        let cac: Vec<Relation> = fac.members().iter().map(|t| c_of(&ac, t)).collect::<Result<_>>()?;
        let pairs = pairs_or_sample(fab.len(), fbc.len(), 4096, samples, seed);
        let mut c = Check::default();
        for &(i, j) in &pairs {
            let (r, s) = (fab.get(i), fbc.get(j));
            let lhs = c_of(&ac, &odot(ab.base(), bc.base(), r, s)?)?;
            let rhs = odot(ab.lattice_base(), bc.lattice_base(), &cab[i], &cbc[j])?;
            if lhs != rhs {
                c.fail(format!(
                    "R = {}, S = {}: C(R ⊙ S) = {} but C(R) ⊙ C(S) = {}",
                    ab.base().fmt(r),
                    bc.base().fmt(s),
                    ac.lattice_base().fmt(&lhs),
                    ac.lattice_base().fmt(&rhs)
                ));
                return Ok(c);
            }
            let rs = relation_product(r, s)?;
            let crs = relation_product(&cab[i], &cbc[j])?;
            for (k, t) in fac.members().iter().enumerate() {
                if rs.is_subset(t) != crs.is_subset(&cac[k]) {
                    c.fail(format!(
                        "R = {}, S = {}, T = {}: R·S ⊆ T is {} but the transported inclusion is {}",
                        ab.base().fmt(r),
                        bc.base().fmt(s),
                        ac.base().fmt(t),
                        rs.is_subset(t),
                        crs.is_subset(&cac[k])
                    ));
                    return Ok(c);
                }
            }
        }
        c.note(format!(
            "{} pairs (R, S) against {} tensors T ({} x {} tensors)",
            pairs.len(),
            fac.len(),
            fab.len(),
            fbc.len()
        ));
        Ok(c)
    })
}

/// The prenucleus inclusion and the closure equation for three lattices with
/// powerset families, and associativity of `⊙` across them.
fn lem82(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let names = ["CHAIN3", "N5", "B4"];
    let lats: Vec<(&str, FinitePoset)> = names
        .iter()
        .filter_map(|n| Some((*n, corpus.get(n)?.lattice()?.clone())))
        .collect();
    let mut items = Vec::new();
    if lats.len() == 3 {
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let [x, y, z] = perm.map(|i| lats[i].clone());
            items.push((format!("{},{},{}", x.0, y.0, z.0), (x.1, y.1, z.1)));
        }
    }
    let (guard, samples, seed) = (cfg.guard, cfg.samples, cfg.seed);
    run_members(&items, |(a, b, cc)| {
        let (sa, sb, sc) = (Side::lattice("A", a), Side::lattice("B", b), Side::lattice("C", cc));
        let ab = TensorBase::new(sa.clone(), sb.clone());
        let bc = TensorBase::new(sb, sc.clone());
        let ac = TensorBase::new(sa.clone(), sc.clone());
        let ca = TensorBase::new(sc, sa);
        let (lab, lbc) = (lower_relations(&ab, guard)?, lower_relations(&bc, guard)?);
        let pairs = pairs_or_sample(lab.len(), lbc.len(), 1 << 17, samples * 10, seed);
        let mut c = Check::default();
        let prod = |r: &Relation, s: &Relation| relation_product(r, s).expect("matching middle factor");
        for &(i, j) in &pairs {
            let (r, s) = (&lab[i], &lbc[j]);
            let rs = prod(r, s);
            let t_rs = ac.t_step(&rs)?;
            let lhs = prod(&ab.t_step(r)?, s).union(&prod(r, &bc.t_step(s)?));
            if !lhs.is_subset(&t_rs) {
                c.fail(format!("t(R)·S ∪ R·t(S) ⊄ t(R·S) for R = {}, S = {}", ab.fmt(r), bc.fmt(s)));
                return Ok(c);
            }
            let closed = ac.t_bar(&prod(&ab.t_bar(r), &bc.t_bar(s)));
            if closed != ac.t_bar(&rs) {
                c.fail(format!("t̄(t̄(R)·t̄(S)) ≠ t̄(R·S) for R = {}, S = {}", ab.fmt(r), bc.fmt(s)));
                return Ok(c);
            }
        }
        c.note(format!("{} pairs (R, S) of lower relations", pairs.len()));
        let (tab, tbc, tca) = (ab.enumerate(guard)?, bc.enumerate(guard)?, ca.enumerate(guard)?);
        let triples = tab.len() * tbc.len() * tca.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks: Vec<(usize, usize, usize)> = if triples <= 1 << 16 {
            (0..triples)
                .map(|k| (k / (tbc.len() * tca.len()), k / tca.len() % tbc.len(), k % tca.len()))
                .collect()
        } else {
            (0..samples)
                .map(|_| (rng.gen_range(0..tab.len()), rng.gen_range(0..tbc.len()), rng.gen_range(0..tca.len())))
                .collect()
        };
        let aa = TensorBase::new(ac.left().clone(), ca.right().clone());
        let ba = TensorBase::new(bc.left().clone(), ca.right().clone());
        for &(i, j, k) in &picks {
            let (r, s, u) = (tab.get(i), tbc.get(j), tca.get(k));
            let left = odot(&ac, &ca, &odot(&ab, &bc, r, s)?, u)?;
            let right = odot(&ab, &ba, r, &odot(&bc, &ca, s, u)?)?;
            if left != right {
                c.fail(format!(
                    "(R ⊙ S) ⊙ U = {} but R ⊙ (S ⊙ U) = {} for R = {}, S = {}, U = {}",
                    aa.fmt(&left),
                    aa.fmt(&right),
                    ab.fmt(r),
                    bc.fmt(s),
                    ca.fmt(u)
                ));
                return Ok(c);
            }
        }
        c.note(format!("⊙ associative on {} triples of tensors", picks.len()));
        Ok(c)
    })
}

fn table_of(q: &RelationQuantale, cfg: &SuiteConfig) -> Result<(Vec<Relation>, FiniteQuantale)> {
    q.to_finite(cfg.table_limit).map_err(|e| match e {
        Error::GuardExceeded { limit } => Error::TableTooLarge { limit },
        e => e,
    })
}

/// `𝒬B̌` is a quantale under union and relation product, unital only when
/// the order of `B̌` is equality.
fn lem81(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let mut items = Vec::new();
    for (name, p) in corpus.posets() {
        for kind in [FamilyKind::Empty, FamilyKind::Powerset] {
            items.push((format!("{name}@{}", kind_tag(kind)), (p.clone(), kind)));
        }
    }
    run_members(&items, |(p, kind)| {
        let side = kinded("B", p, *kind);
        let q = RelationQuantale::of_side(&side)?;
        let (members, fq) = table_of(&q, cfg)?;
        let report = fq.check();
        let carrier = q.carrier();
        let discrete = (0..carrier.len()).all(|x| carrier.down_of(x).count() == 1);
        let mut c = Check::default();
        c.note(format!(
            "{} lower relations, quantale {}, unit {}, order is equality {}",
            members.len(),
            yes(report.is_quantale()),
            yes(report.unit.is_some()),
            yes(discrete)
        ));
        c.expect(report.is_quantale(), || "not a quantale".into());
        c.expect(report.unit.is_some() == discrete, || "unitality does not match the order".into());
        if let Some(u) = report.unit {
            let id = Relation::from_pairs(carrier.len(), carrier.len(), (0..carrier.len()).map(|x| (x, x)));
            c.expect(members[u] == id, || format!("unit is {:?}, not the identity", members[u]));
        }
        let empty_family = TensorBase::new(kinded("B", p, FamilyKind::Empty), kinded("B", p, FamilyKind::Empty));
        if *kind == FamilyKind::Empty {
            let fam = empty_family.enumerate(cfg.table_limit)?;
            c.expect(fam.members() == members.as_slice(), || "tensors for the empty families are not all lower relations".into());
        }
        Ok(c)
    })
}

/// Fixpoints of `t` on `𝒬B̌`: prenucleus, nucleus, residuation closure and
/// induced multiplication.
fn prop21(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let mut items = Vec::new();
    for (name, p) in corpus.lattices() {
        for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Chains, FamilyKind::Singletons] {
            items.push((format!("{name}@{}", kind_tag(kind)), (p.clone(), kind)));
        }
    }
    let guard = cfg.guard;
    run_members(&items, |(p, kind)| {
        let side = kinded("B", p, *kind);
        let base = TensorBase::new(side.clone(), side.clone());
        let q = RelationQuantale::of_side(&side)?;
        let (members, fq) = table_of(&q, cfg)?;
        let index = |r: &Relation| members.binary_search(r).expect("t maps lower relations to lower relations");
        let table: Vec<usize> = members.iter().map(|r| base.t_step(r).map(|t| index(&t))).collect::<Result<_>>()?;
        let j = PreclosureTable::new(fq.lattice(), table)?;
        let rep = nucleus_checks(&fq, &j)?;
        let fam = base.enumerate(guard)?;
        let fix: Vec<Relation> = rep.fixpoints.iter().map(|&i| members[i].clone()).collect();
        let mut c = Check::default();
        c.note(format!(
            "{} lower relations, {} fixpoints, prenucleus {}, closure is a nucleus {}, closed under residuation {}, induced quantale {}",
            members.len(),
            fix.len(),
            yes(rep.is_prenucleus()),
            yes(rep.closure_is_nucleus),
            yes(rep.is_quantic_quotient()),
            yes(rep.induced_quantale)
        ));
        c.expect(fix == fam.members(), || "fixpoints of t are not the tensors".into());
        c.expect(!rep.is_prenucleus() || rep.closure_is_nucleus, || "t is a prenucleus but its closure is no nucleus".into());
        c.expect(rep.closure_is_nucleus == rep.is_quantic_quotient(), || "nucleus and residuation forms disagree".into());
        c.expect(rep.closure_is_nucleus == rep.induced_quantale, || "nucleus and induced-quantale forms disagree".into());
        if let Some((x, y)) = rep.prenucleus_failure {
            c.note(format!("prenucleus fails at R = {}, S = {}", base.fmt(&members[x]), base.fmt(&members[y])));
        }
        let m = fix.len();
        let odot_ok = (0..m * m).all(|k| {
            let prod = fix[k / m].product(&fix[k % m]).expect("square");
            rep.induced[k] < m && fix[rep.induced[k]] == base.t_bar(&prod)
        });
        c.expect(odot_ok, || "induced multiplication differs from ⊙".into());
        Ok(c)
    })
}

/// Tensors against Galois maps for a family on the left and a complete
/// lattice on the right, both ways round.
fn prop51(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let lats: Vec<(&str, &FinitePoset)> = corpus.lattices().filter(|(_, p)| p.len() <= 4).collect();
    let mut items = Vec::new();
    for (na, a) in corpus.posets().filter(|(_, p)| p.len() <= 4) {
        for (nb, b) in &lats {
            items.push((format!("{na}*{nb}"), (a.clone(), (*b).clone())));
        }
    }
    let guard = cfg.guard;
    run_members(&items, |(a, b)| {
        let mut c = Check::default();
        let all_maps = antitone_maps(a, b);
        for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Finite, FamilyKind::Empty, FamilyKind::EmptySet] {
            let ap = AugmentedPoset::with_kind(a.clone(), kind);
            let base = TensorBase::new(Side::poset("A", ap.clone()), Side::lattice("B", b));
            let fam = base.enumerate(guard)?;
            let mut expected: Vec<MapTable> = all_maps.iter().filter(|f| is_family_galois(a, b, f, ap.family())).cloned().collect();
            expected.sort();
            let maps: Vec<MapTable> = fam.members().iter().map(|t| galois_map(&base, t)).collect::<Result<_>>()?;
            let mut sorted = maps.clone();
            sorted.sort();
            let tag = kind.name();
            if sorted != expected {
                let extra = sorted.iter().find(|f| expected.binary_search(f).is_err());
                let missing = expected.iter().find(|f| sorted.binary_search(f).is_err());
                c.fail(format!("{tag}: tensor maps differ from the Galois maps (extra {extra:?}, missing {missing:?})"));
                continue;
            }
            for (t, f) in fam.members().iter().zip(&maps) {
                let back = galois_inverse(&base, f)?;
                c.expect(back == *t, || format!("{tag}: map {f:?} of {} returns {}", base.fmt(t), base.fmt(&back)));
            }
            let n = maps.len();
            if let Some((i, j)) = (0..n * n)
                .map(|k| (k / n, k % n))
                .find(|&(i, j)| fam.get(i).is_subset(fam.get(j)) != map_leq(b, &maps[i], &maps[j]))
            {
                c.fail(format!("{tag}: order differs at {} and {}", base.fmt(fam.get(i)), base.fmt(fam.get(j))));
            }
            c.note(format!("{tag}: {n} tensors"));
        }
        Ok(c)
    })
}

/// Residuals in `𝒬B̌` by formula against brute force, with the adjunction.
fn lem41(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let items: Vec<(String, FinitePoset)> = corpus.posets().map(|(n, p)| (n.to_string(), p.clone())).collect();
    let (guard, samples, seed) = (cfg.guard, cfg.samples, cfg.seed);
    run_members(&items, |p| {
        let q = RelationQuantale::of_side(&Side::lattice("B", p))?;
        let members = q.enumerate(guard)?;
        let n = members.len();
        let triples: Vec<(usize, usize, usize)> = if n * n * n <= 10_000 {
            (0..n * n * n).map(|k| (k / (n * n), k / n % n, k % n)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        let mut c = Check::default();
        let right_ok = |r: &Relation, t: &Relation| q.residual_right(r, t) == brute_residual_right(&q, &members, r, t);
        let left_ok = |t: &Relation, s: &Relation| q.residual_left(t, s) == brute_residual_left(&q, &members, t, s);
        for &(i, j, k) in &triples {
            let (r, s, t) = (&members[i], &members[j], &members[k]);
            let rs = q.product(r, s);
            if !q.is_member(&rs) {
                c.fail(format!("R·S = {rs:?} is not a lower relation"));
                return Ok(c);
            }
            if !right_ok(r, t) {
                let r = q.shrink(r, |x| !right_ok(x, t));
                c.fail(format!("R → T differs from brute force for R = {r:?}, T = {t:?}"));
                return Ok(c);
            }
            if !left_ok(t, s) {
                let s = q.shrink(s, |x| !left_ok(t, x));
                c.fail(format!("T ← S differs from brute force for T = {t:?}, S = {s:?}"));
                return Ok(c);
            }
            let a = rs.is_subset(t);
            let b = s.is_subset(&q.residual_right(r, t));
            let d = r.is_subset(&q.residual_left(t, s));
            if a != b || a != d {
                c.fail(format!("adjunction fails at R = {r:?}, S = {s:?}, T = {t:?}"));
                return Ok(c);
            }
        }
        c.note(format!(
            "{} triples over {n} lower relations ({})",
            triples.len(),
            if n * n * n <= 10_000 { "exhaustive" } else { "sampled" }
        ));
        Ok(c)
    })
}

// ---- worked examples ----

/// `g ⊙ f` of antitone maps on chains against the step-function closed form,
/// and the composite of two involutions against the constant top map.
fn ex11() -> Vec<MemberVerdict> {
    let mut items = Vec::new();
    for n in 3..=6 {
        items.push((format!("CHAIN{n}"), (n, false)));
        items.push((format!("CHAIN{n}/involutions"), (n, true)));
    }
    run_members(&items, |&(n, involutions)| {
        let ch = FinitePoset::chain(n);
        let top = n - 1;
        let mut c = Check::default();
        if involutions {
            let maps: Vec<MapTable> = antitone_maps(&ch, &ch)
                .into_iter()
                .filter(|f| (0..n).all(|x| f[f[x]] == x))
                .collect();
            for f in &maps {
                for g in &maps {
                    let h = galois_compose(&ch, &ch, &ch, f, g)?;
                    c.expect(h.iter().all(|&v| v == top), || format!("f = {f:?}, g = {g:?}: g ⊙ f = {h:?}, not constant {top}"));
                }
            }
            c.note(format!("{} involutions", maps.len()));
            return Ok(c);
        }
        let maps = antitone_maps(&ch, &ch);
        let m = maps.len();
        let closed = |f: &MapTable, g: &MapTable| -> MapTable {
            let r = (0..n).filter(|&x| f[x] > 0).max().unwrap_or(0);
            let s = (1..n).map(|y| g[y]).max().unwrap_or(0);
            (0..n)
                .map(|a| match a {
                    0 => top,
                    _ if a <= r => s,
                    _ => 0,
                })
                .collect()
        };
        let bad = par::find_first(m * m, |k| {
            let (f, g) = (&maps[k / m], &maps[k % m]);
            let h = galois_compose(&ch, &ch, &ch, f, g).ok()?;
            let want = closed(f, g);
            (h != want).then(|| format!("f = {f:?}, g = {g:?}: g ⊙ f = {h:?}, closed form {want:?}"))
        });
        match bad {
            Some(w) => c.fail(w),
            None => c.note(format!("{} pairs of antitone maps match the closed form", m * m)),
        }
        Ok(c)
    })
}

/// The printed `⊙` table of the three-element chain, with
/// `R0 = ∅, R1 = {(1,1)}, R2 = {(1,1),(1,2)}, R3 = {(1,1),(2,1)},
/// R4 = {(1,1),(1,2),(2,1)}, R5` everything.
pub const CHAIN3_TABLE: [[usize; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 1, 2, 1, 2, 2],
    [0, 1, 2, 1, 2, 2],
    [0, 3, 5, 3, 5, 5],
    [0, 3, 5, 3, 5, 5],
    [0, 3, 5, 3, 5, 5],
];

/// Printed members of the three-element chain example, as label pairs.
pub const CHAIN3_MEMBERS: [&[(&str, &str)]; 6] = [
    &[],
    &[("1", "1")],
    &[("1", "1"), ("1", "2")],
    &[("1", "1"), ("2", "1")],
    &[("1", "1"), ("1", "2"), ("2", "1")],
    &[("1", "1"), ("1", "2"), ("2", "1"), ("2", "2")],
];

fn ex81() -> Vec<MemberVerdict> {
    let items = vec![("CHAIN3".to_string(), ())];
    run_members(&items, |_| {
        let tq = square_quantale(&FinitePoset::chain(3), DEFAULT_GUARD)?;
        let fam: &TensorFamily = tq.family();
        let base = tq.base();
        let labels = base.left().labels();
        let idx = |l: &str| labels.iter().position(|x| x == l).expect("chain label");
        let mut c = Check::default();
        for line in tq.format_table().lines() {
            c.note(line.to_string());
        }
        c.expect(fam.len() == 6, || format!("{} tensors, expected 6", fam.len()));
        if fam.len() != 6 {
            return Ok(c);
        }
        for (i, pairs) in CHAIN3_MEMBERS.iter().enumerate() {
            let want = Relation::from_pairs(2, 2, pairs.iter().map(|(a, b)| (idx(a), idx(b))));
            c.expect(*fam.get(i) == want, || format!("R{i} is {}, printed {}", base.fmt(fam.get(i)), base.fmt(&want)));
        }
        let cells = (0..36).filter(|&k| tq.mul(k / 6, k % 6) == CHAIN3_TABLE[k / 6][k % 6]).count();
        c.note(format!("{cells}/36 cells equal the printed table"));
        c.expect(cells == 36, || {
            let k = (0..36).find(|&k| tq.mul(k / 6, k % 6) != CHAIN3_TABLE[k / 6][k % 6]).expect("a differing cell");
            format!("R{} ⊙ R{} = R{}, printed R{}", k / 6, k % 6, tq.mul(k / 6, k % 6), CHAIN3_TABLE[k / 6][k % 6])
        });
        let report = tq.to_finite().check();
        c.expect(report.associativity.is_none(), || "not associative".into());
        c.expect(report.distributivity.is_none(), || "not distributive".into());
        c.expect(report.unit.is_none(), || "has a unit".into());
        c.expect(tq.mul(2, 3) == 1 && tq.mul(3, 2) == 5, || "R2 ⊙ R3 = R1 ≠ R5 = R3 ⊙ R2 does not hold".into());
        Ok(c)
    })
}

/// Replay of the eight-element boolean example: reported, not asserted,
/// beyond agreement of the fast path with the rectangle-scan oracle.
fn ex91() -> Vec<MemberVerdict> {
    let items = vec![("EX91".to_string(), ())];
    run_members(&items, |_| {
        let rep = atom_pair_example()?;
        let b = &rep.base;
        let mut c = Check::default();
        c.note(format!("R = {}", b.fmt(&rep.r)));
        c.note(format!("t(R) = {}", b.fmt(&rep.t1)));
        c.note(format!("t²(R) = {}", b.fmt(&rep.t2)));
        c.note(format!("t̄(R) = {}", b.fmt(&rep.t_bar)));
        c.note(format!("t(R) = t²(R): {}", yes(rep.t1 == rep.t2)));
        c.note(format!("printed t(R) = {}", b.fmt(&rep.printed)));
        c.note(format!("t(R) equals the printed value: {}", yes(rep.t1_matches_printed)));
        c.note(format!("(1,1) ∈ t²(R): {}", yes(rep.top_pair_in_t2)));
        c.expect(rep.oracle_agrees, || "fast path and rectangle-scan oracle disagree".into());
        Ok(c)
    })
}

fn idem_lines(c: &mut Check, base: &TensorBase, label: &str, rep: &IdemReport) {
    let scope = match rep.coverage {
        Coverage::Exhaustive { checked } => format!("exhaustive over {checked}"),
        Coverage::Sampled { samples, seed } => format!("{samples} samples, seed {seed}"),
    };
    c.note(format!("{label}: {} with t ≠ t² ({scope})", rep.witnesses));
    for w in &rep.examples {
        c.note(format!("  R = {}", base.fmt(&w.r)));
        c.note(format!("    t(R) = {}", base.fmt(&w.t1)));
        c.note(format!("    t²(R) = {}", base.fmt(&w.t2)));
    }
    c.expect(rep.oracle_agrees, || format!("{label}: oracle disagrees on a witness"));
}

/// Lower relations with `t(R) ≠ t²(R)`: exhaustive where the down-sets of
/// `B̌ × B̌` can be listed, sampled otherwise, and over all atom-pair
/// relations on boolean bases.
fn idem(corpus: &Corpus, cfg: &SuiteConfig) -> Vec<MemberVerdict> {
    let mut items: Vec<(String, FinitePoset)> = corpus.lattices().map(|(n, p)| (n.to_string(), p.clone())).collect();
    if !items.iter().any(|(_, p)| p.len() == 16 && p.properties().boolean) {
        items.push(("B16".to_string(), FinitePoset::powerset(&["p", "q", "r", "s"])));
    }
    let cfg = *cfg;
    run_members(&items, |p| {
        let base = TensorBase::lattice_square("B", p);
        let mut c = Check::default();
        let exhaustive = match idempotency_search_exhaustive(&base, cfg.idem_limit) {
            Ok(rep) => Some(rep),
            Err(Error::GuardExceeded { .. } | Error::BoundExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        match exhaustive {
            Some(rep) => idem_lines(&mut c, &base, "lower relations", &rep),
            None => {
                let rep = idempotency_search_sampled(&base, cfg.idem_samples, cfg.seed)?;
                idem_lines(&mut c, &base, "lower relations", &rep);
            }
        }
        let props = p.properties();
        if props.boolean && props.atoms.len() <= 4 {
            let rep = idempotency_search_atom_pairs(&base)?;
            idem_lines(&mut c, &base, "atom-pair relations", &rep);
        }
        Ok(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::corpus::curated;

    fn small() -> Corpus {
        let keep = ["CHAIN3", "B4", "M3", "N5", "V", "D2", "PI3", "NONT0", "M3SPACE"];
        Corpus {
            members: curated().members.into_iter().filter(|m| keep.contains(&m.name.as_str())).collect(),
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nope", &small(), &SuiteConfig::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn report_format() {
        let rep = run_suite("ex81", &Corpus::default(), &SuiteConfig::default()).unwrap();
        let text = rep.render();
        assert!(text.starts_with("MEMBER CHAIN3 ex81 PASS\n"));
        assert!(text.ends_with("SUITE ex81 1/1\n"));
    }

    #[test]
    fn small_suites_pass() {
        let corpus = small();
        let cfg = SuiteConfig {
            samples: 100,
            idem_samples: 200,
            ..Default::default()
        };
        for id in ["thm32", "thm71", "prop71", "cor71", "thm81", "thm82", "thm83", "prop91", "lem91", "thm91", "cor91", "lem81", "prop21", "prop51", "lem41"] {
            let rep = run_suite(id, &corpus, &cfg).unwrap();
            assert!(rep.ok(), "{}", rep.render());
            assert!(rep.total() > 0, "{id} has no members");
        }
    }

    #[test]
    fn m3_lands_on_the_false_side() {
        let rep = run_suite("thm82", &small(), &SuiteConfig::default()).unwrap();
        let m3 = rep.member("M3").unwrap();
        assert_eq!(m3.outcome, Outcome::Pass);
        assert!(m3.details.iter().any(|l| l.starts_with("(e) false")));
    }
}
