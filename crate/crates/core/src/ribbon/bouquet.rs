//! One-vertex ribbon graphs written as cyclic double-occurrence words, and
//! the two moves on edges with neighbouring ends.
//!
//! Conventions for a pair `(a, b)` whose ends are adjacent at positions
//! `i, i + 1` (the first such adjacency, scanning cyclically from 0):
//!
//! * exchange transposes the two adjacent ends;
//! * slide carries the end of `a` along the ribbon of `b` to the far end of
//!   `b`. On an untwisted ribbon the side of the band is swapped on the way
//!   across, so an `a` sitting just before `b` lands just after the other
//!   end of `b`, and an `a` just after `b` lands just before it.
//!
//! With these conventions `D(B̃_ab) = D(B)~_ab` and `D(B'_ab) = D(B)'_ab`.
//! Only orientable bouquets are supported.

use std::fmt;

use super::{RibbonGraph, Sign};
use crate::error::{Error, Result};
use crate::setsystem::GroundSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bouquet {
    labels: GroundSet,
    word: Vec<usize>,
    signs: Vec<Sign>,
}

impl Bouquet {
    /// Edges are numbered in order of first appearance in `word`.
    pub fn new<S: AsRef<str>>(word: &[S], twisted: &[S]) -> Result<Bouquet> {
        let mut names: Vec<&str> = Vec::new();
        let mut letters = Vec::with_capacity(word.len());
        for w in word {
            let w = w.as_ref();
            let idx = match names.iter().position(|&n| n == w) {
                Some(i) => i,
                None => {
                    names.push(w);
                    names.len() - 1
                }
            };
            letters.push(idx);
        }
        let labels = GroundSet::new(names.iter().copied())?;
        for e in 0..labels.len() {
            let count = letters.iter().filter(|&&l| l == e).count();
            if count != 2 {
                return Err(Error::InvalidRibbonGraph(format!(
                    "label {:?} occurs {count} times in the bouquet word, expected 2",
                    labels.label(e)
                )));
            }
        }
        let mut signs = vec![Sign::Plus; labels.len()];
        for t in twisted {
            signs[labels.index_of(t.as_ref())?] = Sign::Minus;
        }
        Ok(Bouquet {
            labels,
            word: letters,
            signs,
        })
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    /// Labels around the vertex in cyclic order.
    pub fn word(&self) -> Vec<&str> {
        self.word.iter().map(|&e| self.labels.label(e)).collect()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_orientable(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Plus)
    }

    pub fn to_ribbon(&self) -> RibbonGraph {
        let mut seen = vec![false; self.labels.len()];
        let rotation = self
            .word
            .iter()
            .map(|&e| 2 * e + usize::from(std::mem::replace(&mut seen[e], true)))
            .collect();
        RibbonGraph::build(vec![rotation], self.labels.clone(), self.signs.clone())
            .expect("a double-occurrence word is a valid bouquet")
    }

    fn with_word(&self, word: Vec<usize>) -> Bouquet {
        Bouquet {
            labels: self.labels.clone(),
            word,
            signs: self.signs.clone(),
        }
    }

    fn move_pair(&self, a: &str, b: &str) -> Result<(usize, usize, usize)> {
        if a == b {
            return Err(Error::DegeneratePair(a.to_string()));
        }
        let (ia, ib) = (self.labels.index_of(a)?, self.labels.index_of(b)?);
        if let Some(e) = (0..self.labels.len()).find(|&e| self.signs[e] == Sign::Minus) {
            return Err(Error::NonOrientable(self.labels.label(e).to_string()));
        }
        let n = self.word.len();
        let i = (0..n)
            .find(|&i| {
                let (x, y) = (self.word[i], self.word[(i + 1) % n]);
                (x == ia && y == ib) || (x == ib && y == ia)
            })
            .ok_or_else(|| Error::EndsNotNeighbouring {
                a: a.to_string(),
                b: b.to_string(),
            })?;
        Ok((ia, ib, i))
    }

    pub fn parse(text: &str) -> Result<Bouquet> {
        super::text::parse_bouquet(text)
    }
}

/// Exchange of the neighbouring ends of `a` and `b`.
pub fn bouquet_exchange(bq: &Bouquet, a: &str, b: &str) -> Result<Bouquet> {
    let (_, _, i) = bq.move_pair(a, b)?;
    let n = bq.word.len();
    let mut word = bq.word.clone();
    word.swap(i, (i + 1) % n);
    Ok(bq.with_word(word))
}

/// Slide of the end of `a` next to `b` along `b`.
pub fn bouquet_slide(bq: &Bouquet, a: &str, b: &str) -> Result<Bouquet> {
    let (ia, ib, i) = bq.move_pair(a, b)?;
    let n = bq.word.len();
    let (a_pos, b_pos, a_before_b) = if bq.word[i] == ia {
        (i, (i + 1) % n, true)
    } else {
        ((i + 1) % n, i, false)
    };
    let far_b = (0..n)
        .find(|&p| p != b_pos && bq.word[p] == ib)
        .expect("b occurs twice");
    // cyclic sequence starting right after the moving end, without it
    let rest: Vec<usize> = (1..n).map(|k| bq.word[(a_pos + k) % n]).collect();
    let far = (far_b + n - a_pos - 1) % n;
    let insert_at = if a_before_b { far + 1 } else { far };
    let mut word = rest;
    word.insert(insert_at, ia);
    Ok(bq.with_word(word))
}

impl fmt::Display for Bouquet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bouquet: {}", self.word().join(" "))?;
        let twisted: Vec<String> = (0..self.labels.len())
            .filter(|&e| self.signs[e] == Sign::Minus)
            .map(|e| format!("{}=-", self.labels.label(e)))
            .collect();
        if !twisted.is_empty() {
            write!(f, "\nsigns: {}", twisted.join(" "))?;
        }
        Ok(())
    }
}
