//! Subcommands. Each returns its text and an exit status; nothing here
//! touches stdout directly so the acceptance tests can drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use relq::oracle::corpus::{curated, generate_corpus, lattices_of_size, Corpus, Member, Provenance, Structure};
use relq::oracle::suites::{run_suite, SuiteConfig, SUITES};
use relq::quantale::{full_odot, galois_compose, odot};
use relq::tensor::{galois_inverse, galois_map, DEFAULT_GUARD};
use relq::{
    AugmentedPoset, ClosureSpace, Error, FamilyKind, FinitePoset, Relation, Side, TensorBase, TensorFamily,
    TensorQuantale,
};

use crate::workspace::{parse_workspace, FamilySpec, Workspace};

#[derive(Parser, Debug)]
#[command(name = "relq", version, about = "Tensor products of closure spaces and posets, and the tensor quantale ⊙")]
pub struct Cli {
    /// Workspace file with named posets, spaces, families, relations and maps.
    #[arg(short, long, global = true)]
    pub workspace: Vec<PathBuf>,
    /// Largest number of tensors or down-sets to enumerate.
    #[arg(long, global = true, env = "RELQ_MAX_TENSORS")]
    pub max_tensors: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum What {
    Poset,
    Space,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Structural properties of a poset or closure space.
    Check { what: What, name: String },
    /// Truncated tensors of two posets or spaces.
    Tensor {
        a: String,
        b: String,
        #[arg(long)]
        family_left: Option<String>,
        #[arg(long)]
        family_right: Option<String>,
        /// Print every tensor.
        #[arg(long, conflicts_with = "count")]
        list: bool,
        /// Print only the number of tensors.
        #[arg(long)]
        count: bool,
    },
    /// One step of t, two steps, and the least tensor above a relation.
    Closure {
        r: String,
        #[arg(long)]
        family_left: Option<String>,
        #[arg(long)]
        family_right: Option<String>,
    },
    /// `R ⊙ S`, the least tensor above the relation product.
    Compose {
        r: String,
        s: String,
        #[arg(long)]
        family_left: Option<String>,
        #[arg(long)]
        family_middle: Option<String>,
        #[arg(long)]
        family_right: Option<String>,
        /// Also close the product of the full tensors, which always gives
        /// the largest tensor when the middle factor has a least element.
        #[arg(long)]
        demonstrate_degenerate: bool,
    },
    /// The tensor quantale of a lattice with its ⊙ table.
    Mult {
        b: String,
        #[arg(long)]
        family_left: Option<String>,
        #[arg(long)]
        family_right: Option<String>,
        /// Print the full multiplication table.
        #[arg(long)]
        table: bool,
    },
    /// Antitone maps and tensors, converted both ways.
    Galois {
        b: String,
        /// Map as `x:y,...` over the labels of B.
        #[arg(long, conflicts_with_all = ["relation", "compose"])]
        map: Option<String>,
        /// A workspace relation on B × B.
        #[arg(long)]
        relation: Option<String>,
        /// Two maps `f;g` composed as g ⊙ f.
        #[arg(long)]
        compose: Option<String>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Run a verification suite (or `all`) over the generated corpus.
    Verify {
        #[arg(long)]
        suite: String,
        /// Largest generated lattice.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest down-set quantale turned into a multiplication table.
        #[arg(long, default_value_t = 1024)]
        table_limit: usize,
        /// Run members one after another.
        #[arg(long)]
        sequential: bool,
    },
    /// Hasse diagram of a poset, or of the closed sets of a space, in DOT.
    Dot { what: What, name: String },
}

/// Text and exit status of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_command<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stderr: text,
                    ..Default::default()
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    ..Default::default()
                }
            };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Output {
    let mut out = String::new();
    let result = load(&cli.workspace).and_then(|ws| {
        let ctx = Ctx {
            ws,
            guard: cli.max_tensors.unwrap_or(DEFAULT_GUARD),
        };
        ctx.dispatch(&cli.cmd, &mut out)
    });
    match result {
        Ok(code) => Output {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(f) => Output {
            code: 2,
            stdout: out,
            stderr: format!(
                "error: {}\n",
                match f {
                    Failure::Usage(s) => s,
                    Failure::Lib(e) => e.to_string(),
                }
            ),
        },
    }
}

fn load(paths: &[PathBuf]) -> Res<Workspace> {
    let mut ws = Workspace::default();
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        let more = parse_workspace(&text).map_err(|e| format!("{}: {e}", p.display()))?;
        for (name, item) in more.items {
            crate::workspace::insert(&mut ws, &name, item).map_err(|e| format!("{}: {e}", p.display()))?;
        }
    }
    Ok(ws)
}

struct Ctx {
    ws: Workspace,
    guard: usize,
}

/// Built-in posets: the curated corpus, `CHAIN<n>`, and generated lattices
/// `L<n>.<k>`.
fn builtin_poset(name: &str) -> Option<FinitePoset> {
    if let Some(p) = curated().get(name).and_then(Member::poset) {
        return Some(p.clone());
    }
    if let Some(n) = name.strip_prefix("CHAIN").and_then(|n| n.parse::<usize>().ok()) {
        return (n <= 64).then(|| FinitePoset::chain(n));
    }
    let (n, _) = name.strip_prefix('L')?.split_once('.')?;
    let n: usize = n.parse().ok()?;
    lattices_of_size(n).ok()?.into_iter().find(|(k, _)| k == name).map(|(_, p)| p)
}

fn builtin_space(name: &str) -> Option<ClosureSpace> {
    curated().get(name).and_then(Member::space).cloned()
}

impl Ctx {
    fn poset(&self, name: &str) -> Res<FinitePoset> {
        self.ws
            .poset(name)
            .cloned()
            .or_else(|| builtin_poset(name))
            .ok_or_else(|| Failure::Usage(format!("unknown poset `{name}`")))
    }

    fn space(&self, name: &str) -> Res<ClosureSpace> {
        self.ws
            .space(name)
            .cloned()
            .or_else(|| builtin_space(name))
            .ok_or_else(|| Failure::Usage(format!("unknown space `{name}`")))
    }

    fn augmented(&self, poset_name: &str, p: &FinitePoset, family: Option<&str>) -> Res<AugmentedPoset> {
        let Some(f) = family else {
            return Ok(AugmentedPoset::with_kind(p.clone(), FamilyKind::Powerset));
        };
        if let Some(kind) = FamilyKind::parse(f) {
            return Ok(AugmentedPoset::with_kind(p.clone(), kind));
        }
        let decl = self
            .ws
            .family(f)
            .ok_or_else(|| Failure::Usage(format!("unknown family `{f}` (built-ins: @powerset @finite @directed @chains @singletons @empty @emptyset)")))?;
        if decl.poset != poset_name {
            return Err(Failure::Usage(format!("family `{f}` is declared on `{}`, not `{poset_name}`", decl.poset)));
        }
        Ok(match &decl.spec {
            FamilySpec::Kind(k) => AugmentedPoset::with_kind(p.clone(), *k),
            FamilySpec::Sets(sets) => AugmentedPoset::new(p.clone(), sets.clone())?,
        })
    }

    /// A poset (with family) or, failing that, a space.
    fn side(&self, name: &str, family: Option<&str>) -> Res<Side> {
        if let Ok(p) = self.poset(name) {
            return Ok(Side::poset(name, self.augmented(name, &p, family)?));
        }
        if family.is_some() {
            return Err(Failure::Usage(format!("families apply to posets; `{name}` is a space")));
        }
        Ok(Side::space(name, self.space(name)?))
    }

    /// A workspace relation carried onto the truncated carriers of `base`.
    fn relation(&self, name: &str, base: &TensorBase) -> Res<Relation> {
        let decl = self.ws.relation(name).ok_or_else(|| Failure::Usage(format!("unknown relation `{name}`")))?;
        let (l, r) = (base.left(), base.right());
        let mut out = base.empty();
        for (a, b) in decl.rel.pairs() {
            match (l.new_index(a), r.new_index(b)) {
                (Some(x), Some(y)) => out.insert(x, y),
                _ => {
                    return Err(Error::BottomPair(l.full_labels()[a].clone(), r.full_labels()[b].clone()).into());
                }
            }
        }
        Ok(base.down_closure(&out))
    }

    fn relation_sides(&self, name: &str) -> Res<(String, String)> {
        let d = self.ws.relation(name).ok_or_else(|| Failure::Usage(format!("unknown relation `{name}`")))?;
        Ok((d.left.clone(), d.right.clone()))
    }

    fn dispatch(&self, cmd: &Cmd, out: &mut String) -> Res<i32> {
        match cmd {
            Cmd::Check { what, name } => self.check(*what, name, out),
            Cmd::Tensor {
                a,
                b,
                family_left,
                family_right,
                list,
                count,
            } => {
                let base = TensorBase::new(self.side(a, family_left.as_deref())?, self.side(b, family_right.as_deref())?);
                let fam = base.enumerate(self.guard)?;
                if *count {
                    let _ = writeln!(out, "{}", fam.len());
                    return Ok(0);
                }
                let _ = writeln!(out, "{} tensors over {} ⊗ {}", fam.len(), a, b);
                if *list {
                    for (i, t) in fam.members().iter().enumerate() {
                        let _ = writeln!(out, "{} = {}", TensorFamily::name(i), base.fmt(t));
                    }
                }
                Ok(0)
            }
            Cmd::Closure {
                r,
                family_left,
                family_right,
            } => {
                let (a, b) = self.relation_sides(r)?;
                let base = TensorBase::new(self.side(&a, family_left.as_deref())?, self.side(&b, family_right.as_deref())?);
                let rel = self.relation(r, &base)?;
                let t1 = base.t_step(&rel)?;
                let t2 = base.t_step(&t1)?;
                let t_bar = base.t_bar(&rel);
                let _ = writeln!(out, "R  = {}", base.fmt(&rel));
                let _ = writeln!(out, "t  = {}", base.fmt(&t1));
                let _ = writeln!(out, "t² = {}", base.fmt(&t2));
                let _ = writeln!(out, "t̄  = {}", base.fmt(&t_bar));
                let _ = writeln!(out, "R is a tensor: {}", base.is_tensor(&rel));
                let _ = writeln!(out, "t idempotent on R: {}", t1 == t2);
                Ok(0)
            }
            Cmd::Compose {
                r,
                s,
                family_left,
                family_middle,
                family_right,
                demonstrate_degenerate,
            } => {
                let (a, b) = self.relation_sides(r)?;
                let (b2, c) = self.relation_sides(s)?;
                if b != b2 {
                    return Err(Failure::Usage(format!("`{r}` ends in `{b}` but `{s}` starts in `{b2}`")));
                }
                let mid = self.side(&b, family_middle.as_deref())?;
                let left = TensorBase::new(self.side(&a, family_left.as_deref())?, mid.clone());
                let right = TensorBase::new(mid, self.side(&c, family_right.as_deref())?);
                let target = TensorBase::new(left.left().clone(), right.right().clone());
                let (mut rr, mut ss) = (self.relation(r, &left)?, self.relation(s, &right)?);
                for (name, base, rel) in [(r, &left, &mut rr), (s, &right, &mut ss)] {
                    if !base.is_tensor(rel) {
                        *rel = base.t_bar(rel);
                        let _ = writeln!(out, "# {name} is not a tensor; using its closure {}", base.fmt(rel));
                    }
                }
                let prod = rr.product(&ss).expect("shapes match through the middle factor");
                let res = odot(&left, &right, &rr, &ss)?;
                let _ = writeln!(out, "R·S = {}", target.fmt(&prod));
                let _ = writeln!(out, "R⊙S = {}", target.fmt(&res));
                if *demonstrate_degenerate {
                    let (fr, fs) = (left.untruncate(&rr)?, right.untruncate(&ss)?);
                    let full = full_odot(&left, &right, &fr, &fs)?;
                    let top = Relation::full(target.full_rows(), target.full_cols());
                    let lab = |rel: &Relation| rel.fmt_with(target.left().full_labels(), target.right().full_labels());
                    let _ = writeln!(out, "full R·S closure = {}", lab(&full));
                    let _ = writeln!(out, "largest tensor: {}", full == top);
                }
                Ok(0)
            }
            Cmd::Mult {
                b,
                family_left,
                family_right,
                table,
            } => {
                let base = TensorBase::new(self.side(b, family_left.as_deref())?, self.side(b, family_right.as_deref())?);
                let tq = TensorQuantale::new(base, self.guard)?;
                if *table {
                    out.push_str(&tq.format_table());
                    out.push('\n');
                }
                out.push_str(&tq.format_members());
                let rep = tq.to_finite().check();
                let name = |i: usize| TensorFamily::name(i);
                out.push('\n');
                let _ = writeln!(out, "quantale: {}", rep.is_quantale());
                if let Some(f) = rep.distributivity.as_ref() {
                    let _ = writeln!(out, "  distributivity fails: {}", f.describe(name));
                }
                if let Some(f) = rep.associativity.as_ref() {
                    let _ = writeln!(out, "  associativity fails: {}", f.describe(name));
                }
                match rep.noncommuting {
                    Some((i, j)) => {
                        let _ = writeln!(
                            out,
                            "commutative: false ({0}⊙{1}={2}, {1}⊙{0}={3})",
                            name(i),
                            name(j),
                            name(tq.mul(i, j)),
                            name(tq.mul(j, i))
                        );
                    }
                    None => {
                        let _ = writeln!(out, "commutative: true");
                    }
                }
                let _ = writeln!(out, "unit: {}", rep.unit.map_or("none".to_string(), name));
                Ok(0)
            }
            Cmd::Galois {
                b,
                map,
                relation,
                compose,
                family,
            } => self.galois(b, map.as_deref(), relation.as_deref(), compose.as_deref(), family.as_deref(), out),
            Cmd::Verify {
                suite,
                max_size,
                seed,
                table_limit,
                sequential,
            } => {
                let mut corpus = generate_corpus(*max_size)?;
                self.extend_corpus(&mut corpus);
                let cfg = SuiteConfig {
                    seed: *seed,
                    guard: self.guard,
                    table_limit: *table_limit,
                    ..Default::default()
                };
                if *sequential {
                    relq::par::set_parallel(false);
                }
                let ids: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
                let mut failed = false;
                for id in ids {
                    let rep = run_suite(id, &corpus, &cfg)?;
                    out.push_str(&rep.render());
                    failed |= !rep.ok();
                }
                Ok(i32::from(failed))
            }
            Cmd::Dot { what, name } => {
                let (p, title) = match what {
                    What::Poset => (self.poset(name)?, name.clone()),
                    What::Space => {
                        let s = self.space(name)?;
                        (s.closed_set_lattice(), format!("{name} closed sets"))
                    }
                };
                out.push_str(&dot(&title, &p));
                Ok(0)
            }
        }
    }

    fn extend_corpus(&self, corpus: &mut Corpus) {
        for (name, p) in self.ws.posets() {
            corpus.members.push(Member {
                name: name.to_string(),
                structure: Structure::Poset(p.clone()),
                provenance: Provenance::Curated,
            });
        }
        for (name, s) in self.ws.spaces() {
            corpus.members.push(Member {
                name: name.to_string(),
                structure: Structure::Space(s.clone()),
                provenance: Provenance::Curated,
            });
        }
    }

    fn check(&self, what: What, name: &str, out: &mut String) -> Res<i32> {
        match what {
            What::Poset => {
                let p = self.poset(name)?;
                let pr = p.properties();
                let _ = writeln!(out, "poset {name}: {} elements", p.len());
                let _ = writeln!(out, "elements: {}", p.labels().join(" "));
                let covers: Vec<String> = p.covers().iter().map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b))).collect();
                let _ = writeln!(out, "covers: {}", covers.join(" "));
                let _ = writeln!(out, "complete lattice: {}", pr.complete_lattice);
                let _ = writeln!(out, "pseudocomplemented: {}", pr.pseudocomplemented);
                if let Some(x) = pr.pseudocomplement_witness {
                    let _ = writeln!(out, "  witness: {} has no pseudocomplement", p.label(x));
                }
                let _ = writeln!(out, "distributive: {}", pr.distributive);
                let _ = writeln!(out, "complemented: {}", pr.complemented);
                let _ = writeln!(out, "boolean: {}", pr.boolean);
                let _ = writeln!(out, "atomic: {}", pr.atomic);
                let _ = writeln!(out, "atomistic: {}", pr.atomistic);
                if let Some(x) = pr.atomistic_witness {
                    let _ = writeln!(out, "  witness: {} is not a join of atoms", p.label(x));
                }
                let atoms: Vec<&str> = pr.atoms.iter().map(|&a| p.label(a)).collect();
                let _ = writeln!(out, "atoms: {}", atoms.join(" "));
                for kind in [FamilyKind::Powerset, FamilyKind::Directed, FamilyKind::Finite] {
                    let ap = AugmentedPoset::with_kind(p.clone(), kind);
                    let w = ap.bottom_distributivity_witness();
                    let _ = writeln!(out, "bottom-distributive for {}: {}", kind.name(), w.is_none());
                }
            }
            What::Space => {
                let s = self.space(name)?;
                let pr = s.properties();
                let _ = writeln!(out, "space {name}: {} points", s.len());
                let sets: Vec<String> = s.closed_sets().iter().map(|c| s.fmt_set(c)).collect();
                let _ = writeln!(out, "closed sets: {}", sets.join(" "));
                let _ = writeln!(out, "unbounded: {}", pr.unbounded);
                let _ = writeln!(out, "uniquely bounded: {}", pr.uniquely_bounded);
                let _ = writeln!(out, "T0: {}", pr.t0);
                let _ = writeln!(out, "polarized: {}", pr.polarized);
                if let Some(x) = pr.polar_witness {
                    let _ = writeln!(out, "  witness: the polar of {} is not closed", s.label(x));
                }
                let lat = s.closed_set_lattice().properties().pseudocomplemented;
                let _ = writeln!(out, "closed-set lattice pseudocomplemented: {lat}");
            }
        }
        Ok(0)
    }

    fn galois(
        &self,
        b: &str,
        map: Option<&str>,
        relation: Option<&str>,
        compose: Option<&str>,
        family: Option<&str>,
        out: &mut String,
    ) -> Res<i32> {
        let p = self.poset(b)?;
        let base = TensorBase::new(Side::poset(b, self.augmented(b, &p, family)?), Side::lattice(b, &p));
        let parse_map = |text: &str| -> Res<Vec<usize>> {
            if let Some(m) = self.ws.map(text) {
                return Ok(m.table.clone());
            }
            let mut table = vec![None; p.len()];
            for entry in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (k, v) = entry
                    .split_once(':')
                    .ok_or_else(|| Failure::Usage(format!("expected `k:v`, found `{entry}`")))?;
                table[p.index_of(k.trim())?] = Some(p.index_of(v.trim())?);
            }
            table
                .iter()
                .enumerate()
                .map(|(x, v)| v.ok_or_else(|| Failure::Usage(format!("`{}` is not mapped", p.label(x)))))
                .collect()
        };
        let show = |f: &[usize]| -> String {
            f.iter().enumerate().map(|(x, &y)| format!("{}:{}", p.label(x), p.label(y))).collect::<Vec<_>>().join(",")
        };
        match (map, relation, compose) {
            (Some(m), None, None) => {
                let f = parse_map(m)?;
                let t = galois_inverse(&base, &f)?;
                let back = galois_map(&base, &t)?;
                let _ = writeln!(out, "map    {}", show(&f));
                let _ = writeln!(out, "tensor {}", base.fmt(&t));
                let _ = writeln!(out, "back   {}", show(&back));
                let _ = writeln!(out, "Galois: {}", back == f);
                Ok(i32::from(back != f))
            }
            (None, Some(r), None) => {
                let t = self.relation(r, &base)?;
                if !base.is_tensor(&t) {
                    return Err(Error::NotATensor(format!("`{r}` = {}", base.fmt(&t))).into());
                }
                let f = galois_map(&base, &t)?;
                let back = galois_inverse(&base, &f)?;
                let _ = writeln!(out, "tensor {}", base.fmt(&t));
                let _ = writeln!(out, "map    {}", show(&f));
                let _ = writeln!(out, "back   {}", base.fmt(&back));
                Ok(i32::from(back != t))
            }
            (None, None, Some(fg)) => {
                let (fs, gs) = fg
                    .split_once(';')
                    .ok_or_else(|| Failure::Usage("expected `f;g` for --compose".into()))?;
                let (f, g) = (parse_map(fs)?, parse_map(gs)?);
                let h = galois_compose(&p, &p, &p, &f, &g)?;
                let _ = writeln!(out, "f   {}", show(&f));
                let _ = writeln!(out, "g   {}", show(&g));
                let _ = writeln!(out, "g⊙f {}", show(&h));
                Ok(0)
            }
            _ => Err(Failure::Usage("give one of --map, --relation or --compose".into())),
        }
    }
}

/// Cover relation as a DOT digraph, least elements at the bottom.
pub fn dot(title: &str, p: &FinitePoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", title.replace('"', "\\\""));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, l) in p.labels().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Output {
        run_command(std::iter::once("relq").chain(args.iter().copied()))
    }

    #[test]
    fn m3_check_names_the_witness() {
        let o = run(&["check", "poset", "M3"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("pseudocomplemented: false\n  witness: a has no pseudocomplement"), "{}", o.stdout);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["check", "poset", "NOPE"]).code, 2);
        assert_eq!(run(&["verify", "--suite", "nope", "--max-size", "2"]).code, 2);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn guard_flag_is_honoured() {
        let o = run(&["--max-tensors", "3", "tensor", "CHAIN3", "CHAIN3", "--count"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("guard of 3"), "{}", o.stderr);
        assert_eq!(run(&["tensor", "CHAIN3", "CHAIN3", "--count"]).stdout, "6\n");
    }

    #[test]
    fn dot_draws_covers_bottom_up() {
        let o = run(&["dot", "poset", "CHAIN3"]);
        assert!(o.stdout.contains("rankdir=BT"));
        assert_eq!(o.stdout.matches("->").count(), 2);
        let s = run(&["dot", "space", "M3SPACE"]);
        assert_eq!(s.stdout.matches("->").count(), 6);
    }

    #[test]
    fn galois_round_trip_on_chain3() {
        let o = run(&["galois", "CHAIN3", "--map", "0:2,1:1,2:0"]);
        assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
        assert!(o.stdout.contains("Galois: true"));
        let o = run(&["galois", "CHAIN3", "--compose", "0:2,1:1,2:0;0:2,1:1,2:0"]);
        assert!(o.stdout.contains("g⊙f 0:2,1:1,2:0"), "{}", o.stdout);
    }
}
