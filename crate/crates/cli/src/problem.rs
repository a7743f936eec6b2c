//! Problem files.
//!
//! ```text
//! # comment
//! field Q                 # Q, F5, F3[u]/(u^2), F5xF5
//! vars 3 [x y z]          # names are optional
//! ideal: x1*x2 - 1; x3    # or:
//! module rank 2
//! rel: x1, x2             # one relation row, components separated by commas
//! sample: x1, 0           # elements for the KDC checks
//! ```
//!
//! Statements end at a newline or `;`. After `ideal:`, `rel:` or `sample:`
//! the rest of the line is a `;`-separated list. Positional names `x3`
//! always work alongside declared ones.

use std::fmt;

use krull_core::poly::parse_poly_named;
use krull_core::{CoeffRing, Error, FreeElem, Ideal, ModulePresentation, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: CoeffRing,
    pub nvars: usize,
    pub names: Vec<String>,
    pub module: ModulePresentation,
    /// True when the file used `ideal:`.
    pub cyclic: bool,
    pub sample: Vec<FreeElem>,
}

/// A piece of source text with its 1-based line and column.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Span<'a> {
    fn err(&self, msg: impl Into<String>) -> InputError {
        InputError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn sub(&self, start: usize, end: usize) -> Span<'a> {
        Span { text: &self.text[start..end], line: self.line, col: self.col + self.text[..start].chars().count() }
    }

    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        self.sub(start, end)
    }
}

/// Splits at top-level `sep`, ignoring separators inside parentheses.
fn split_top<'a>(s: Span<'a>, sep: char) -> Vec<Span<'a>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s.sub(start, i));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(s.sub(start, s.text.len()));
    out
}

enum Body<'a> {
    Ideal(Vec<Span<'a>>),
    Module(usize),
}

#[derive(Default)]
struct Builder<'a> {
    ring: Option<CoeffRing>,
    vars: Option<(usize, Vec<String>)>,
    body: Option<(Span<'a>, Body<'a>)>,
    rels: Vec<Span<'a>>,
    samples: Vec<Span<'a>>,
}

pub fn parse_problem(src: &str) -> Result<Problem, InputError> {
    let mut b = Builder::default();
    for (i, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let mut rest = Span { text, line: i + 1, col: 1 };
        while !rest.trim().text.is_empty() {
            let t = rest.trim();
            let head = ["ideal:", "rel:", "sample:"].iter().find(|k| t.text.starts_with(**k));
            if let Some(kw) = head {
                let payload = t.sub(kw.len(), t.text.len());
                let items: Vec<Span> = split_top(payload, ';').into_iter().map(|s| s.trim()).collect();
                let items: Vec<Span> = items.into_iter().filter(|s| !s.text.is_empty()).collect();
                match *kw {
                    "ideal:" => {
                        if b.body.is_some() {
                            return Err(t.err("only one `ideal:` or `module` statement is allowed"));
                        }
                        b.body = Some((t, Body::Ideal(items)));
                    }
                    "rel:" => b.rels.extend(items),
                    _ => b.samples.extend(items),
                }
                break;
            }
            let end = t.text.find(';').unwrap_or(t.text.len());
            b.statement(t.sub(0, end).trim())?;
            rest = t.sub((end + 1).min(t.text.len()), t.text.len());
        }
    }
    b.finish()
}

impl<'a> Builder<'a> {
    fn statement(&mut self, s: Span<'a>) -> Result<(), InputError> {
        let mut words = s.text.split_whitespace();
        let kw = words.next().unwrap_or("");
        match kw {
            "field" | "ring" => {
                let desc: String = words.by_ref().collect();
                if desc.is_empty() {
                    return Err(s.err("`field` needs a ring such as Q or F5"));
                }
                let ring = desc.parse::<CoeffRing>().map_err(|e| s.err(format!("bad ring `{desc}`: {e}")))?;
                self.ring = Some(ring);
            }
            "vars" => {
                let n: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| s.err("`vars` needs a variable count"))?;
                let rest: String = words.by_ref().collect::<Vec<_>>().join(" ");
                let names: Vec<String> = if rest.is_empty() {
                    Vec::new()
                } else {
                    let inner = rest
                        .strip_prefix('[')
                        .and_then(|r| r.strip_suffix(']'))
                        .ok_or_else(|| s.err("variable names go in brackets: vars 2 [a b]"))?;
                    inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty()).map(String::from).collect()
                };
                if !names.is_empty() && names.len() != n {
                    return Err(s.err(format!("{} names given for {n} variables", names.len())));
                }
                for name in &names {
                    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        && name != "u";
                    if !ok {
                        return Err(s.err(format!("invalid variable name `{name}`")));
                    }
                }
                self.vars = Some((n, names));
            }
            "module" => {
                if words.next() != Some("rank") {
                    return Err(s.err("expected `module rank k`"));
                }
                let k: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .filter(|k| *k > 0)
                    .ok_or_else(|| s.err("module rank must be a positive integer"))?;
                if self.body.is_some() {
                    return Err(s.err("only one `ideal:` or `module` statement is allowed"));
                }
                self.body = Some((s, Body::Module(k)));
            }
            _ => return Err(s.err(format!("unknown statement `{kw}`"))),
        }
        if words.next().is_some() {
            return Err(s.err(format!("trailing input after `{kw}`")));
        }
        Ok(())
    }

    fn finish(self) -> Result<Problem, InputError> {
        let eof = InputError { line: 1, col: 1, msg: String::new() };
        let ring = self.ring.ok_or(InputError { msg: "missing `field` statement".into(), ..eof.clone() })?;
        let (nvars, names) = self.vars.ok_or(InputError { msg: "missing `vars` statement".into(), ..eof.clone() })?;
        let (at, body) = self.body.ok_or(InputError { msg: "missing `ideal:` or `module rank` statement".into(), ..eof })?;
        let poly = |s: Span| -> Result<Poly, InputError> {
            parse_poly_named(s.text, ring, nvars, &names).map_err(|e| match e {
                Error::Parse { pos, msg } => InputError { line: s.line, col: s.col + s.text[..pos.min(s.text.len())].chars().count(), msg },
                other => s.err(other.to_string()),
            })
        };
        let row = |s: Span, rank: usize| -> Result<FreeElem, InputError> {
            let comps = split_top(s, ',').into_iter().map(|c| poly(c.trim())).collect::<Result<Vec<_>, _>>()?;
            if comps.len() != rank {
                return Err(s.err(format!("expected {rank} components, found {}", comps.len())));
            }
            FreeElem::new(comps).map_err(|e| s.err(e.to_string()))
        };
        let (module, cyclic) = match body {
            Body::Ideal(items) => {
                if !self.rels.is_empty() {
                    return Err(self.rels[0].err("`rel:` needs `module rank k`, not `ideal:`"));
                }
                let gens = items.into_iter().map(poly).collect::<Result<Vec<_>, _>>()?;
                let ideal = Ideal::new(ring, nvars, gens).map_err(|e| at.err(e.to_string()))?;
                (ModulePresentation::cyclic(&ideal), true)
            }
            Body::Module(rank) => {
                let rels = self.rels.iter().map(|s| row(*s, rank)).collect::<Result<Vec<_>, _>>()?;
                (ModulePresentation::new(ring, nvars, rank, rels).map_err(|e| at.err(e.to_string()))?, false)
            }
        };
        let rank = module.rank();
        let sample = self.samples.iter().map(|s| row(*s, rank)).collect::<Result<Vec<_>, _>>()?;
        Ok(Problem { ring, nvars, names, module, cyclic, sample })
    }
}
