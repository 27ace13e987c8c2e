//! Character table files.
//!
//! ```text
//! # comment
//! group B 5
//! L 1 2 4 5
//! let w15 = 1 2 4 5        # tokens: words, names, `name^k`
//! class 15 rep w15         # DERIVED
//! gen w15 value E(6)
//! gen w0 value 1
//! ```
//!
//! A token is a word in the generator labels (`43212345`, `1'2321'343`), a
//! name (`w0`, `wL`, `r`, `id`, or one introduced by `let`), optionally
//! followed by `^k`. Each `gen` line belongs to the preceding `class`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use coxeter_core::coxgroup::{Classes, ElemId, GroupBox, Subgroup};
use coxeter_core::lincar::{linear_character, LinearCharacter};
use coxeter_core::rootsys::CoxeterType;
use coxeter_core::Cyclotomic;

use crate::group::group_name;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableError {
    pub line: usize,
    pub column: usize,
    pub kind: TableErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableErrorKind {
    Syntax,
    Semantic,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TableErrorKind::Syntax => "syntax error",
            TableErrorKind::Semantic => "semantic error",
        };
        write!(f, "{}:{}: {kind}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for TableError {}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> TableError {
    TableError { line, column, kind: TableErrorKind::Syntax, message: message.into() }
}

fn semantic(line: usize, column: usize, message: impl Into<String>) -> TableError {
    TableError { line, column, kind: TableErrorKind::Semantic, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenLine {
    pub word: Vec<Token>,
    pub value: Cyclotomic,
    pub value_text: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub rep: Vec<Token>,
    pub gens: Vec<GenLine>,
    /// Trailing comment of the `class` line.
    pub comment: Option<String>,
    pub line: usize,
}

impl Entry {
    pub fn is_derived(&self) -> bool {
        self.comment.as_deref().is_some_and(|c| c.contains("DERIVED"))
    }
}

/// A parsed but not yet resolved table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFile {
    pub family: CoxeterType,
    pub rank: usize,
    pub subset: Vec<Token>,
    pub lets: Vec<(String, Vec<Token>)>,
    pub entries: Vec<Entry>,
}

impl TableFile {
    pub fn group_name(&self) -> String {
        group_name(self.family, self.rank)
    }

    pub fn read(path: &Path) -> Result<Self, crate::AppError> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::AppError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text).map_err(|e| crate::AppError::Table(path.display().to_string(), e))
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut family = None;
        let mut subset = None;
        let mut lets: Vec<(String, Vec<Token>)> = Vec::new();
        let mut entries: Vec<Entry> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let (body, comment) = match raw.find('#') {
                Some(i) => (&raw[..i], Some(raw[i + 1..].trim().to_string())),
                None => (raw, None),
            };
            let words = split_columns(body, line);
            let Some(head) = words.first() else { continue };
            let rest = &words[1..];
            match head.text.as_str() {
                "group" => {
                    if family.is_some() {
                        return Err(syntax(line, head.column, "duplicate group line"));
                    }
                    let joined: String = rest.iter().map(|t| t.text.as_str()).collect();
                    let (f, r) = crate::group::parse_group_name(&joined)
                        .map_err(|_| syntax(line, rest.first().map_or(head.column, |t| t.column), format!("bad group {joined:?}")))?;
                    family = Some((f, r));
                }
                "L" => {
                    if subset.is_some() {
                        return Err(syntax(line, head.column, "duplicate L line"));
                    }
                    subset = Some(rest.to_vec());
                }
                "let" => {
                    if rest.len() < 2 || rest[1].text != "=" {
                        return Err(syntax(line, head.column, "expected `let <name> = <tokens>`"));
                    }
                    let name = &rest[0];
                    if !is_name(&name.text) {
                        return Err(syntax(line, name.column, format!("invalid name {:?}", name.text)));
                    }
                    if ["w0", "wL", "r", "id"].contains(&name.text.as_str()) || lets.iter().any(|(n, _)| *n == name.text) {
                        return Err(syntax(line, name.column, format!("name {:?} already defined", name.text)));
                    }
                    lets.push((name.text.clone(), rest[2..].to_vec()));
                }
                "class" => {
                    if rest.len() < 2 || rest[1].text != "rep" {
                        return Err(syntax(line, head.column, "expected `class <label> rep <tokens>`"));
                    }
                    if rest.len() < 3 {
                        return Err(syntax(line, rest[1].column, "missing representative"));
                    }
                    entries.push(Entry { label: rest[0].text.clone(), rep: rest[2..].to_vec(), gens: Vec::new(), comment, line });
                }
                "gen" => {
                    let Some(entry) = entries.last_mut() else {
                        return Err(syntax(line, head.column, "`gen` before any `class`"));
                    };
                    let Some(v) = rest.iter().position(|t| t.text == "value") else {
                        return Err(syntax(line, head.column, "expected `gen <tokens> value <literal>`"));
                    };
                    if v == 0 {
                        return Err(syntax(line, rest[0].column, "missing generator"));
                    }
                    let Some(first) = rest.get(v + 1) else {
                        return Err(syntax(line, rest[v].column, "missing value"));
                    };
                    let offset = body.char_indices().nth(first.column - 1).map_or(body.len(), |(i, _)| i);
                    let value_text = body[offset..].trim().to_string();
                    let value = Cyclotomic::parse(&value_text).map_err(|e| syntax(line, first.column, e.to_string()))?;
                    entry.gens.push(GenLine { word: rest[..v].to_vec(), value, value_text, line });
                }
                other => return Err(syntax(line, head.column, format!("unknown directive {other:?}"))),
            }
        }
        let (family, rank) = family.ok_or_else(|| syntax(1, 1, "missing group line"))?;
        let subset = subset.ok_or_else(|| syntax(1, 1, "missing L line"))?;
        Ok(TableFile { family, rank, subset, lets, entries })
    }
}

fn split_columns(body: &str, line: usize) -> Vec<Token> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: body[s..i].to_string(), line, column: body[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|c| c.is_ascii_alphabetic()) && c.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One validated entry: a cuspidal representative, its centralizer and the
/// linear character given on generators.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub label: String,
    pub rep: ElemId,
    pub centralizer: Subgroup,
    pub classes: Classes,
    pub character: LinearCharacter,
    pub derived: bool,
}

#[derive(Debug, Clone)]
pub struct ResolvedTable {
    pub subset: Vec<usize>,
    pub assignments: Vec<Assignment>,
}

struct Resolver<'a> {
    gb: &'a GroupBox,
    names: HashMap<String, ElemId>,
}

impl Resolver<'_> {
    fn token(&self, t: &Token) -> Result<ElemId, TableError> {
        let (base, power) = match t.text.split_once('^') {
            Some((b, p)) => {
                let k: u32 = p.parse().map_err(|_| syntax(t.line, t.column, format!("bad exponent in {:?}", t.text)))?;
                (b, k)
            }
            None => (t.text.as_str(), 1),
        };
        let x = if is_name(base) {
            *self.names.get(base).ok_or_else(|| semantic(t.line, t.column, format!("undefined name {base:?}")))?
        } else {
            let word = self.gb.datum().parse_word(base).map_err(|e| semantic(t.line, t.column, e.to_string()))?;
            self.gb.from_word(&word).map_err(|e| semantic(t.line, t.column, e.to_string()))?
        };
        let mut out = self.gb.identity();
        for _ in 0..power {
            out = self.gb.mul(out, x);
        }
        Ok(out)
    }

    fn tokens(&self, ts: &[Token]) -> Result<ElemId, TableError> {
        let mut out = self.gb.identity();
        for t in ts {
            out = self.gb.mul(out, self.token(t)?);
        }
        Ok(out)
    }
}

impl TableFile {
    /// Resolves all words in `gb` and validates every entry: the
    /// representatives are cuspidal in `W_L` and pairwise non-conjugate in
    /// `W_L`, one per cuspidal class; the generators generate the
    /// centralizer; the values define a linear character.
    pub fn resolve(&self, gb: &GroupBox) -> Result<ResolvedTable, TableError> {
        let datum = gb.datum();
        if datum.family() != Some((self.family, self.rank)) {
            return Err(semantic(1, 1, format!("table is for {} but the group is {}", self.group_name(), datum.name())));
        }
        let mut subset = Vec::new();
        for t in &self.subset {
            if t.text == "S" {
                subset.extend(0..gb.rank());
                continue;
            }
            let i = datum.label_index(&t.text).ok_or_else(|| semantic(t.line, t.column, format!("unknown generator {:?}", t.text)))?;
            subset.push(i);
        }
        subset.sort_unstable();
        subset.dedup();

        let mut r = Resolver { gb, names: HashMap::new() };
        r.names.insert("id".into(), gb.identity());
        r.names.insert("w0".into(), gb.longest_element());
        r.names.insert("wL".into(), gb.longest_in(&subset).map_err(|e| semantic(1, 1, e.to_string()))?);
        let hr = gb.reflection(datum.highest_root()).map_err(|e| semantic(1, 1, e.to_string()))?;
        r.names.insert("r".into(), hr);
        for (name, ts) in &self.lets {
            let x = r.tokens(ts)?;
            r.names.insert(name.clone(), x);
        }

        let wl = Subgroup::parabolic(gb, &subset);
        let wl_classes = wl.classes(gb);
        let cuspidal: Vec<usize> =
            (0..wl_classes.len()).filter(|&k| gb.is_cuspidal_in(wl_classes.rep(k), &subset)).collect();
        let full = Subgroup::full(gb);
        let mut seen: HashMap<usize, String> = HashMap::new();
        let mut assignments = Vec::new();
        for e in &self.entries {
            let col = e.rep.first().map_or(1, |t| t.column);
            let rep = r.tokens(&e.rep)?;
            let k = wl_classes
                .class_of(rep)
                .ok_or_else(|| semantic(e.line, col, format!("representative of class {} is not in W_L", e.label)))?;
            if !cuspidal.contains(&k) {
                return Err(semantic(e.line, col, format!("representative of class {} is not cuspidal in W_L", e.label)));
            }
            if let Some(other) = seen.insert(k, e.label.clone()) {
                return Err(semantic(e.line, col, format!("classes {other} and {} are conjugate in W_L", e.label)));
            }
            let cent = full.centralizer(gb, rep);
            let mut spec = Vec::with_capacity(e.gens.len());
            for g in &e.gens {
                let x = r.tokens(&g.word)?;
                if !gb.commutes(x, rep) {
                    return Err(semantic(g.line, g.word[0].column, format!("generator does not centralize the representative of class {}", e.label)));
                }
                spec.push((x, g.value.clone()));
            }
            let gens: Vec<ElemId> = spec.iter().map(|(x, _)| *x).collect();
            let centralizer = cent
                .with_generators(gb, &gens)
                .map_err(|err| semantic(e.line, col, format!("class {}: {err}", e.label)))?;
            let classes = centralizer.classes(gb);
            let character = linear_character(gb, &centralizer, &classes, &spec).map_err(|err| {
                let err = match err {
                    coxeter_core::Error::InconsistentCharacter { first, second, value_a, value_b } => format!(
                        "inconsistent character: words {} and {} give the same element with values {value_a} and {value_b}",
                        datum.format_word(&first),
                        datum.format_word(&second)
                    ),
                    other => other.to_string(),
                };
                semantic(e.line, col, format!("class {}: {err}", e.label))
            })?;
            assignments.push(Assignment { label: e.label.clone(), rep, centralizer, classes, character, derived: e.is_derived() });
        }
        if seen.len() != cuspidal.len() {
            let missing: Vec<String> =
                cuspidal.iter().filter(|k| !seen.contains_key(k)).map(|&k| gb.format(wl_classes.rep(k))).collect();
            return Err(semantic(1, 1, format!("no entry for the cuspidal classes of {}", missing.join(", "))));
        }
        Ok(ResolvedTable { subset, assignments })
    }
}
