//! Text and JSON encodings of set systems.
//!
//! Text form (whitespace-insensitive, `#` starts a comment):
//!
//! ```text
//! ground: a b c
//! feasible: {}; {b,c}
//! ```
//!
//! JSON form: `{"ground":["a","b","c"],"feasible":[[],["b","c"]]}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsystem::{GroundSet, SetSystem, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Comma,
    Open,
    Close,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            let column = line[..start].chars().count() + 1;
            let single = match c {
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semi),
                ',' => Some(Tok::Comma),
                '{' => Some(Tok::Open),
                '}' => Some(Tok::Close),
                _ => None,
            };
            if let Some(tok) = single {
                chars.next();
                out.push(Spanned {
                    tok,
                    line: ln + 1,
                    column,
                });
            } else if c.is_whitespace() {
                chars.next();
            } else if "[]=\"".contains(c) {
                return Err(Error::parse(
                    ln + 1,
                    column,
                    format!("unexpected character {c:?}"),
                ));
            } else {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || ":;,{}[]=\"".contains(c) {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                out.push(Spanned {
                    tok: Tok::Word(word),
                    line: ln + 1,
                    column,
                });
            }
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn at(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column))
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.at();
        Error::parse(l, c, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn keyword(&mut self, name: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Word(w)) if w == name => {
                self.pos += 1;
                self.expect(Tok::Colon, "':'")
            }
            _ => Err(self.err(format!("expected `{name}:`"))),
        }
    }

    fn is_keyword_next(&self, name: &str) -> bool {
        matches!(self.toks.get(self.pos), Some(Spanned { tok: Tok::Word(w), .. }) if w == name)
            && matches!(
                self.toks.get(self.pos + 1),
                Some(Spanned {
                    tok: Tok::Colon,
                    ..
                })
            )
    }
}

fn parse_text(text: &str) -> Result<SetSystem> {
    let toks = tokenize(text)?;
    let lines = text.lines().count().max(1);
    let end = (
        lines,
        text.lines().last().map_or(0, |l| l.chars().count()) + 1,
    );
    let mut cur = Cursor { toks, pos: 0, end };

    cur.keyword("ground")?;
    let mut labels = Vec::new();
    while !cur.is_keyword_next("feasible") {
        match cur.peek() {
            Some(Tok::Word(w)) => {
                labels.push(w.clone());
                cur.pos += 1;
            }
            _ => return Err(cur.err("expected element label or `feasible:`")),
        }
    }
    let ground_at = cur.at();
    let ground = GroundSet::new(labels)
        .map_err(|e| Error::parse(ground_at.0, ground_at.1, e.to_string()))?;
    cur.keyword("feasible")?;

    let mut masks = Vec::new();
    loop {
        cur.expect(Tok::Open, "'{'")?;
        let mut mask = SubsetMask::EMPTY;
        if cur.peek() != Some(&Tok::Close) {
            loop {
                let (l, c) = cur.at();
                match cur.peek() {
                    Some(Tok::Word(w)) => {
                        let i = ground
                            .index_of(w)
                            .map_err(|e| Error::parse(l, c, e.to_string()))?;
                        mask = mask | SubsetMask::singleton(i);
                        cur.pos += 1;
                    }
                    _ => return Err(cur.err("expected element label")),
                }
                if cur.peek() == Some(&Tok::Comma) {
                    cur.pos += 1;
                } else {
                    break;
                }
            }
        }
        cur.expect(Tok::Close, "'}'")?;
        masks.push(mask);
        match cur.peek() {
            Some(Tok::Semi) => cur.pos += 1,
            None => break,
            _ => return Err(cur.err("expected ';' or end of input")),
        }
        // tolerate a trailing semicolon
        if cur.peek().is_none() {
            break;
        }
    }
    SetSystem::new(ground, masks).map_err(|e| {
        let (l, c) = cur.at();
        Error::parse(l, c, e.to_string())
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonSetSystem {
    ground: Vec<String>,
    feasible: Vec<Vec<String>>,
}

fn parse_json(text: &str) -> Result<SetSystem> {
    let raw: JsonSetSystem = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let ground = GroundSet::new(raw.ground).map_err(|e| Error::parse(1, 1, e.to_string()))?;
    let masks = raw
        .feasible
        .iter()
        .map(|f| ground.mask_of(f))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::parse(1, 1, e.to_string()))?;
    SetSystem::new(ground, masks).map_err(|e| Error::parse(1, 1, e.to_string()))
}

/// Parses either encoding; input whose first non-blank character is `{`
/// is treated as JSON.
pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

impl std::str::FromStr for SetSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_set_system(s)
    }
}

impl SetSystem {
    pub fn to_json(&self) -> serde_json::Value {
        let ground = self.ground();
        serde_json::json!({
            "ground": ground.labels().collect::<Vec<_>>(),
            "feasible": self
                .feasible()
                .iter()
                .map(|f| f.iter().map(|i| ground.label(i)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// The feasible family as `{}; {b,c}`.
    pub fn format_family(&self) -> String {
        self.feasible()
            .iter()
            .map(|&f| self.ground().format_mask(f))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Writes the text encoding, so any printed system can be fed back in.
impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.ground().labels().collect();
        writeln!(f, "ground: {}", labels.join(" "))?;
        write!(f, "feasible: {}", self.format_family())
    }
}
