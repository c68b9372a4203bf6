//! Workspace files: named posets, closure spaces, families, relations and
//! maps in a line-oriented block format.
//!
//! ```text
//! # a three-element chain and a relation on it
//! poset C
//!   elements 0 1 2
//!   covers 0<1 1<2
//! end
//! space S
//!   points x y
//!   closed {} {x}
//! end
//! family D on C
//!   kind @directed
//! end
//! family F on C
//!   sets {1} {1 2}
//! end
//! relation R on C C
//!   pairs (1,2) (2,1)
//! end
//! map f from C to C
//!   0:2 1:1 2:0
//! end
//! ```
//!
//! Relations are stored down-closed; pairs may not touch the least element
//! `Δ∅` of either poset, since relations live on the truncated carriers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use relq::{Bits, ClosureSpace, FamilyKind, FinitePoset, Relation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: relq::Error,
    },
}

impl ParseError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line, msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Kind(FamilyKind),
    /// Explicit members as sets of element indices.
    Sets(Vec<Bits>),
}

#[derive(Clone, Debug)]
pub struct FamilyDecl {
    pub poset: String,
    pub spec: FamilySpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub left: String,
    pub right: String,
    /// Indices of the full carriers, down-closed.
    pub rel: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub from: String,
    pub to: String,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Item {
    Poset(FinitePoset),
    Space(ClosureSpace),
    Family(FamilyDecl),
    Relation(RelationDecl),
    Map(MapDecl),
}

impl Item {
    fn keyword(&self) -> &'static str {
        match self {
            Item::Poset(_) => "poset",
            Item::Space(_) => "space",
            Item::Family(_) => "family",
            Item::Relation(_) => "relation",
            Item::Map(_) => "map",
        }
    }
}

/// Declarations in file order; names are unique across kinds.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub items: Vec<(String, Item)>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        emit_workspace(self) == emit_workspace(other)
    }
}

impl Workspace {
    fn find(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn poset(&self, name: &str) -> Option<&FinitePoset> {
        match self.find(name)? {
            Item::Poset(p) => Some(p),
            _ => None,
        }
    }

    pub fn space(&self, name: &str) -> Option<&ClosureSpace> {
        match self.find(name)? {
            Item::Space(s) => Some(s),
            _ => None,
        }
    }

    pub fn family(&self, name: &str) -> Option<&FamilyDecl> {
        match self.find(name)? {
            Item::Family(f) => Some(f),
            _ => None,
        }
    }

    pub fn relation(&self, name: &str) -> Option<&RelationDecl> {
        match self.find(name)? {
            Item::Relation(r) => Some(r),
            _ => None,
        }
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        match self.find(name)? {
            Item::Map(m) => Some(m),
            _ => None,
        }
    }

    pub fn posets(&self) -> impl Iterator<Item = (&str, &FinitePoset)> {
        self.items.iter().filter_map(|(n, i)| match i {
            Item::Poset(p) => Some((n.as_str(), p)),
            _ => None,
        })
    }

    pub fn spaces(&self) -> impl Iterator<Item = (&str, &ClosureSpace)> {
        self.items.iter().filter_map(|(n, i)| match i {
            Item::Space(s) => Some((n.as_str(), s)),
            _ => None,
        })
    }
}

/// Splits a line into tokens, keeping `{...}` and `(...)` groups whole.
fn tokens(line: &str, no: usize) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut close: Option<char> = None;
    for ch in line.chars() {
        match close {
            Some(c) => {
                cur.push(ch);
                if ch == c {
                    close = None;
                }
            }
            None if ch.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            None => {
                if ch == '{' {
                    close = Some('}');
                } else if ch == '(' {
                    close = Some(')');
                }
                cur.push(ch);
            }
        }
    }
    if close.is_some() {
        return Err(ParseError::at(no, format!("unclosed group in `{cur}`")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_set(tok: &str, labels: &[String], no: usize) -> Result<Bits, ParseError> {
    let inner = tok
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| ParseError::at(no, format!("expected a set `{{...}}`, found `{tok}`")))?;
    let mut s = Bits::new(labels.len());
    for l in inner.split_whitespace() {
        s.insert(lookup(labels, l, no)?);
    }
    Ok(s)
}

fn parse_pair(tok: &str, no: usize) -> Result<(&str, &str), ParseError> {
    tok.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .and_then(|t| t.split_once(','))
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| ParseError::at(no, format!("expected a pair `(a,b)`, found `{tok}`")))
}

fn lookup(labels: &[String], l: &str, no: usize) -> Result<usize, ParseError> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| ParseError::at(no, format!("unknown element `{l}`")))
}

fn fmt_set(labels: &[String], s: &Bits) -> String {
    let parts: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(" "))
}

/// `↓R` with the pairs on `Δ∅` of either side removed again.
fn truncated_down_closure(r: &Relation, pa: &FinitePoset, pb: &FinitePoset) -> Relation {
    let (ba, bb) = (pa.delta_empty(), pb.delta_empty());
    let full = r.down_closure(pa, pb);
    Relation::from_pairs(r.rows(), r.cols(), full.pairs().filter(|&(a, b)| !ba.contains(a) && !bb.contains(b)))
}

struct Block {
    line: usize,
    header: Vec<String>,
    body: Vec<(usize, Vec<String>)>,
}

fn blocks(text: &str) -> Result<Vec<Block>, ParseError> {
    let mut out: Vec<Block> = Vec::new();
    let mut open: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let toks = tokens(strip_comment(raw), no)?;
        if toks.is_empty() {
            continue;
        }
        match open.as_mut() {
            None => {
                open = Some(Block {
                    line: no,
                    header: toks,
                    body: Vec::new(),
                })
            }
            Some(_) if toks == ["end"] => out.push(open.take().expect("open block")),
            Some(b) => b.body.push((no, toks)),
        }
    }
    if let Some(b) = open {
        return Err(ParseError::at(b.line, format!("block `{}` has no `end`", b.header.join(" "))));
    }
    Ok(out)
}

/// Body lines keyed by their first token; each key may appear more than once
/// and its values are concatenated.
fn fields(b: &Block, allowed: &[&str]) -> Result<BTreeMap<String, (usize, Vec<String>)>, ParseError> {
    let mut out: BTreeMap<String, (usize, Vec<String>)> = BTreeMap::new();
    for (no, toks) in &b.body {
        let key = &toks[0];
        if !allowed.contains(&key.as_str()) {
            return Err(ParseError::at(*no, format!("unexpected `{key}` in `{}` block", b.header[0])));
        }
        out.entry(key.clone()).or_insert((*no, Vec::new())).1.extend(toks[1..].iter().cloned());
    }
    Ok(out)
}

fn header<'a>(b: &'a Block, shape: &[&str]) -> Result<Vec<&'a str>, ParseError> {
    let ok = b.header.len() == shape.len()
        && shape.iter().zip(&b.header).all(|(s, h)| s.starts_with('<') || s == h);
    if !ok {
        return Err(ParseError::at(b.line, format!("expected `{}`", shape.join(" "))));
    }
    Ok(shape
        .iter()
        .zip(&b.header)
        .filter(|(s, _)| s.starts_with('<'))
        .map(|(_, h)| h.as_str())
        .collect())
}

pub fn parse_workspace(text: &str) -> Result<Workspace, ParseError> {
    let mut ws = Workspace::default();
    for b in blocks(text)? {
        let kind = b.header[0].as_str();
        let (name, item) = match kind {
            "poset" => {
                let h = header(&b, &["poset", "<name>"])?;
                let f = fields(&b, &["elements", "covers"])?;
                let labels = f.get("elements").map(|(_, v)| v.clone()).unwrap_or_default();
                let mut covers = Vec::new();
                for tok in f.get("covers").map(|(_, v)| v.as_slice()).unwrap_or_default() {
                    let no = f["covers"].0;
                    let (a, c) = tok
                        .split_once('<')
                        .ok_or_else(|| ParseError::at(no, format!("expected `a<b`, found `{tok}`")))?;
                    covers.push((a.to_string(), c.to_string()));
                }
                let p = FinitePoset::from_covers(&labels, &covers)
                    .map_err(|source| ParseError::Invalid { line: b.line, source })?;
                (h[0], Item::Poset(p))
            }
            "space" => {
                let h = header(&b, &["space", "<name>"])?;
                let f = fields(&b, &["points", "closed"])?;
                let labels = f.get("points").map(|(_, v)| v.clone()).unwrap_or_default();
                let sets = match f.get("closed") {
                    Some((no, v)) => v.iter().map(|t| parse_set(t, &labels, *no)).collect::<Result<Vec<_>, _>>()?,
                    None => Vec::new(),
                };
                let s = ClosureSpace::from_generators(labels, &sets)
                    .map_err(|source| ParseError::Invalid { line: b.line, source })?;
                (h[0], Item::Space(s))
            }
            "family" => {
                let h = header(&b, &["family", "<name>", "on", "<poset>"])?;
                let p = ws
                    .poset(h[1])
                    .ok_or_else(|| ParseError::at(b.line, format!("unknown poset `{}`", h[1])))?;
                let f = fields(&b, &["kind", "sets"])?;
                let spec = match (f.get("kind"), f.get("sets")) {
                    (Some((no, k)), None) => {
                        let [k] = k.as_slice() else {
                            return Err(ParseError::at(*no, "expected one family kind"));
                        };
                        FamilySpec::Kind(
                            FamilyKind::parse(k).ok_or_else(|| ParseError::at(*no, format!("unknown family kind `{k}`")))?,
                        )
                    }
                    (None, Some((no, v))) => {
                        let mut sets = v.iter().map(|t| parse_set(t, p.labels(), *no)).collect::<Result<Vec<_>, _>>()?;
                        sets.sort();
                        sets.dedup();
                        FamilySpec::Sets(sets)
                    }
                    (None, None) => FamilySpec::Kind(FamilyKind::Powerset),
                    (Some(_), Some(_)) => return Err(ParseError::at(b.line, "family has both `kind` and `sets`")),
                };
                (
                    h[0],
                    Item::Family(FamilyDecl {
                        poset: h[1].to_string(),
                        spec,
                    }),
                )
            }
            "relation" => {
                let h = header(&b, &["relation", "<name>", "on", "<left>", "<right>"])?;
                let get = |n: &str| ws.poset(n).ok_or_else(|| ParseError::at(b.line, format!("unknown poset `{n}`")));
                let (pa, pb) = (get(h[1])?, get(h[2])?);
                let f = fields(&b, &["pairs"])?;
                let (ba, bb) = (pa.delta_empty(), pb.delta_empty());
                let mut rel = Relation::empty(pa.len(), pb.len());
                if let Some((no, v)) = f.get("pairs") {
                    for tok in v {
                        let (a, c) = parse_pair(tok, *no)?;
                        let (x, y) = (lookup(pa.labels(), a, *no)?, lookup(pb.labels(), c, *no)?);
                        if ba.contains(x) || bb.contains(y) {
                            return Err(ParseError::Invalid {
                                line: *no,
                                source: relq::Error::BottomPair(a.to_string(), c.to_string()),
                            });
                        }
                        rel.insert(x, y);
                    }
                }
                (
                    h[0],
                    Item::Relation(RelationDecl {
                        left: h[1].to_string(),
                        right: h[2].to_string(),
                        rel: truncated_down_closure(&rel, pa, pb),
                    }),
                )
            }
            "map" => {
                let h = header(&b, &["map", "<name>", "from", "<from>", "to", "<to>"])?;
                let get = |n: &str| ws.poset(n).ok_or_else(|| ParseError::at(b.line, format!("unknown poset `{n}`")));
                let (pa, pb) = (get(h[1])?, get(h[2])?);
                let mut table: Vec<Option<usize>> = vec![None; pa.len()];
                for (no, toks) in &b.body {
                    for tok in toks {
                        let (k, v) = tok
                            .split_once(':')
                            .ok_or_else(|| ParseError::at(*no, format!("expected `k:v`, found `{tok}`")))?;
                        let x = lookup(pa.labels(), k, *no)?;
                        if table[x].is_some() {
                            return Err(ParseError::at(*no, format!("`{k}` is mapped twice")));
                        }
                        table[x] = Some(lookup(pb.labels(), v, *no)?);
                    }
                }
                let table = table
                    .iter()
                    .enumerate()
                    .map(|(x, v)| v.ok_or_else(|| ParseError::at(b.line, format!("`{}` is not mapped", pa.label(x)))))
                    .collect::<Result<_, _>>()?;
                (
                    h[0],
                    Item::Map(MapDecl {
                        from: h[1].to_string(),
                        to: h[2].to_string(),
                        table,
                    }),
                )
            }
            other => return Err(ParseError::at(b.line, format!("unknown block `{other}`"))),
        };
        if ws.find(name).is_some() {
            return Err(ParseError::at(b.line, format!("`{name}` is declared twice")));
        }
        ws.items.push((name.to_string(), item));
    }
    Ok(ws)
}

/// Canonical text: posets by their cover relation, spaces by all closed
/// sets, relations by their maximal pairs.
pub fn emit_workspace(ws: &Workspace) -> String {
    let mut out = String::new();
    for (i, (name, item)) in ws.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match item {
            Item::Poset(p) => {
                let _ = writeln!(out, "poset {name}");
                let _ = writeln!(out, "  elements {}", p.labels().join(" "));
                let covers: Vec<String> = p.covers().iter().map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b))).collect();
                if !covers.is_empty() {
                    let _ = writeln!(out, "  covers {}", covers.join(" "));
                }
            }
            Item::Space(s) => {
                let _ = writeln!(out, "space {name}");
                let _ = writeln!(out, "  points {}", s.labels().join(" "));
                let sets: Vec<String> = s.closed_sets().iter().map(|c| fmt_set(s.labels(), c)).collect();
                let _ = writeln!(out, "  closed {}", sets.join(" "));
            }
            Item::Family(f) => {
                let _ = writeln!(out, "family {name} on {}", f.poset);
                match &f.spec {
                    FamilySpec::Kind(k) => {
                        let _ = writeln!(out, "  kind {}", k.name());
                    }
                    FamilySpec::Sets(sets) => {
                        let labels = ws.poset(&f.poset).expect("resolved on parse").labels();
                        let sets: Vec<String> = sets.iter().map(|c| fmt_set(labels, c)).collect();
                        let _ = writeln!(out, "  sets {}", sets.join(" "));
                    }
                }
            }
            Item::Relation(r) => {
                let _ = writeln!(out, "relation {name} on {} {}", r.left, r.right);
                let (pa, pb) = (ws.poset(&r.left).expect("resolved"), ws.poset(&r.right).expect("resolved"));
                let maximal: Vec<String> = r
                    .rel
                    .pairs()
                    .filter(|&(a, b)| {
                        !r.rel.pairs().any(|(c, d)| (c, d) != (a, b) && pa.leq(a, c) && pb.leq(b, d))
                    })
                    .map(|(a, b)| format!("({},{})", pa.label(a), pb.label(b)))
                    .collect();
                if !maximal.is_empty() {
                    let _ = writeln!(out, "  pairs {}", maximal.join(" "));
                }
            }
            Item::Map(m) => {
                let _ = writeln!(out, "map {name} from {} to {}", m.from, m.to);
                let (pa, pb) = (ws.poset(&m.from).expect("resolved"), ws.poset(&m.to).expect("resolved"));
                let entries: Vec<String> =
                    m.table.iter().enumerate().map(|(x, &y)| format!("{}:{}", pa.label(x), pb.label(y))).collect();
                let _ = writeln!(out, "  {}", entries.join(" "));
            }
        }
        out.push_str("end\n");
    }
    out
}

/// Adds a declaration, refusing duplicate names.
pub fn insert(ws: &mut Workspace, name: &str, item: Item) -> Result<(), String> {
    if let Some(old) = ws.find(name) {
        return Err(format!("`{name}` is already declared as a {}", old.keyword()));
    }
    ws.items.push((name.to_string(), item));
    Ok(())
}
