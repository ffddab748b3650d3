//! The two Vassiliev moves on set systems.
//!
//! For distinct `a, b ∈ E`:
//!
//! * handle slide of `a` over `b`:
//!   `F̃_ab = F Δ {F ∪ a | F ∪ b ∈ F, F ⊆ E∖{a,b}}`
//! * exchange of handle ends:
//!   `F'_ab = F Δ {F ∪ {a,b} | F ∈ F, F ⊆ E∖{a,b}}`
//! * both at once:
//!   `F̃'_ab = F Δ {F ∪ {a,b} | …} Δ {F ∪ a | F ∪ b ∈ F, …}`
//!
//! All three keep the ground set and its order unchanged.

use crate::error::{Error, Result};
use crate::setsystem::{GroundSet, SetSystem, SubsetMask};

/// An ordered pair of distinct ground-set elements, stored as indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MovePair {
    pub a: usize,
    pub b: usize,
}

impl MovePair {
    pub fn new(ground: &GroundSet, a: &str, b: &str) -> Result<Self> {
        if a == b {
            return Err(Error::DegeneratePair(a.to_string()));
        }
        Ok(MovePair {
            a: ground.index_of(a)?,
            b: ground.index_of(b)?,
        })
    }

    pub fn from_indices(ground: &GroundSet, a: usize, b: usize) -> Result<Self> {
        if a >= ground.len() || b >= ground.len() {
            return Err(Error::UnknownElement(format!("#{}", a.max(b))));
        }
        if a == b {
            return Err(Error::DegeneratePair(ground.label(a).to_string()));
        }
        Ok(MovePair { a, b })
    }

    pub fn reversed(self) -> MovePair {
        MovePair {
            a: self.b,
            b: self.a,
        }
    }

    /// All ordered pairs of distinct elements of a ground set of size `n`.
    pub fn all(n: usize) -> impl Iterator<Item = MovePair> {
        (0..n).flat_map(move |a| {
            (0..n)
                .filter(move |&b| b != a)
                .map(move |b| MovePair { a, b })
        })
    }

    fn check(self, d: &SetSystem) -> Result<()> {
        Self::from_indices(d.ground(), self.a, self.b).map(|_| ())
    }

    fn masks(self) -> (SubsetMask, SubsetMask) {
        (SubsetMask::singleton(self.a), SubsetMask::singleton(self.b))
    }
}

/// `{F ∪ a | F ∪ b ∈ F, F ⊆ E∖{a,b}}`, sorted.
fn slide_terms(d: &SetSystem, m: MovePair) -> Vec<SubsetMask> {
    let (a, b) = m.masks();
    let mut out: Vec<SubsetMask> = d
        .feasible()
        .iter()
        .filter(|f| f.contains(m.b) && !f.contains(m.a))
        .map(|&f| f ^ b ^ a)
        .collect();
    out.sort_unstable();
    out
}

/// `{F ∪ {a,b} | F ∈ F, F ⊆ E∖{a,b}}`, sorted.
fn exchange_terms(d: &SetSystem, m: MovePair) -> Vec<SubsetMask> {
    let (a, b) = m.masks();
    // feasible is sorted and OR-ing in fixed absent bits is monotone
    d.feasible()
        .iter()
        .filter(|f| !f.contains(m.a) && !f.contains(m.b))
        .map(|&f| f | a | b)
        .collect()
}

/// Symmetric difference of two sorted duplicate-free mask lists.
fn sym_diff(x: &[SubsetMask], y: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

fn rebuild(d: &SetSystem, family: Vec<SubsetMask>) -> Result<SetSystem> {
    SetSystem::new(d.ground().clone(), family)
}

/// Handle slide of `m.a` over `m.b`, the system `D̃_ab`.
pub fn handle_slide(d: &SetSystem, m: MovePair) -> Result<SetSystem> {
    m.check(d)?;
    rebuild(d, sym_diff(d.feasible(), &slide_terms(d, m)))
}

/// Exchange of the handle ends of `m.a` and `m.b`, the system `D'_ab`.
/// Symmetric in `a` and `b`.
pub fn exchange_ends(d: &SetSystem, m: MovePair) -> Result<SetSystem> {
    m.check(d)?;
    rebuild(d, sym_diff(d.feasible(), &exchange_terms(d, m)))
}

/// `D̃'_ab`, computed from the closed three-term formula rather than by
/// composing [`handle_slide`] and [`exchange_ends`]. Both slide and
/// exchange terms are taken from the original family.
pub fn slide_exchange(d: &SetSystem, m: MovePair) -> Result<SetSystem> {
    m.check(d)?;
    let once = sym_diff(d.feasible(), &exchange_terms(d, m));
    rebuild(d, sym_diff(&once, &slide_terms(d, m)))
}
