//! Set systems over a small labelled ground set.
//!
//! A [`SetSystem`] is a ground set together with a nonempty family of
//! feasible subsets. Subsets are bitmasks: bit `i` stands for the `i`-th
//! element of the [`GroundSet`], so the ground-set order fixed at
//! construction is also the bit order. The feasible family is kept sorted
//! by unsigned mask value with duplicates removed, which makes structural
//! equality and hashing exact.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use crate::error::{Error, Result};

/// Largest supported ground set. Twist-polynomial enumeration visits
/// `2^|E|` subsets, and masks must fit in a `u32`.
pub const MAX_GROUND: usize = 24;

/// A ground-set element label: nonempty, no whitespace, and none of the
/// separator characters used by the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(String);

impl Element {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let bad = |c: char| c.is_whitespace() || "{}[],;:=\"".contains(c);
        if label.is_empty() || label.chars().any(bad) {
            return Err(Error::InvalidLabel(label));
        }
        Ok(Element(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A subset of a ground set, bit `i` for the `i`-th element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of the set bits in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Removes bit `i` and shifts the higher bits down by one, matching the
    /// element order of a ground set with element `i` removed.
    pub fn squeeze_out(self, i: usize) -> SubsetMask {
        let low = self.0 & ((1u32 << i) - 1);
        let high = (self.0 >> (i + 1)) << i;
        SubsetMask(low | high)
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    fn bitxor(self, rhs: Self) -> Self {
        SubsetMask(self.0 ^ rhs.0)
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    fn not(self) -> Self {
        SubsetMask(!self.0)
    }
}

/// Ordered, duplicate-free sequence of at most [`MAX_GROUND`] elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroundSet {
    elements: Vec<Element>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements = labels
            .into_iter()
            .map(Element::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(elements)
    }

    pub fn from_elements(elements: Vec<Element>) -> Result<Self> {
        if elements.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                size: elements.len(),
                bound: MAX_GROUND,
            });
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::DuplicateLabel(e.0.clone()));
            }
        }
        Ok(GroundSet { elements })
    }

    /// Ground set `e1, …, en`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("e{i}")))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        self.elements[i].as_str()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(Element::as_str)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.as_str() == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask(((1u64 << self.len()) - 1) as u32)
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_subset_of(self.full_mask()) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask: mask.0,
                size: self.len(),
            })
        }
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        labels.iter().try_fold(SubsetMask::EMPTY, |acc, l| {
            Ok(acc | SubsetMask::singleton(self.index_of(l.as_ref())?))
        })
    }

    /// Renders a subset as `{b,c}`, `{}` for the empty set.
    pub fn format_mask(&self, mask: SubsetMask) -> String {
        let inner: Vec<&str> = mask.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// The ground set with element `i` removed, order otherwise preserved.
    pub fn without(&self, i: usize) -> GroundSet {
        let mut elements = self.elements.clone();
        elements.remove(i);
        GroundSet { elements }
    }
}

/// Sizes of the smallest and largest feasible sets, and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WidthReport {
    pub r_min: u32,
    pub r_max: u32,
    pub width: u32,
}

/// A proper set system `(E, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: GroundSet,
    feasible: Vec<SubsetMask>,
}

impl SetSystem {
    /// Builds a set system, sorting and deduplicating the family.
    pub fn new(ground: GroundSet, feasible: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut feasible: Vec<SubsetMask> = feasible.into_iter().collect();
        for &m in &feasible {
            ground.check_mask(m)?;
        }
        feasible.sort_unstable();
        feasible.dedup();
        if feasible.is_empty() {
            return Err(Error::Improper);
        }
        Ok(SetSystem { ground, feasible })
    }

    /// Convenience constructor from labels, e.g.
    /// `SetSystem::from_labels(&["a", "b", "c"], &[&[], &["b", "c"]])`.
    pub fn from_labels(ground: &[&str], feasible: &[&[&str]]) -> Result<Self> {
        let ground = GroundSet::new(ground.iter().copied())?;
        let masks = feasible
            .iter()
            .map(|f| ground.mask_of(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, masks)
    }

    /// Takes an already sorted, deduplicated, validated family.
    pub(crate) fn from_sorted_unchecked(ground: GroundSet, feasible: Vec<SubsetMask>) -> Self {
        debug_assert!(!feasible.is_empty());
        debug_assert!(feasible.windows(2).all(|w| w[0] < w[1]));
        SetSystem { ground, feasible }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn feasible(&self) -> &[SubsetMask] {
        &self.feasible
    }

    pub fn num_feasible(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_feasible(&self, mask: SubsetMask) -> bool {
        self.feasible.binary_search(&mask).is_ok()
    }

    /// `D * A = (E, {A Δ X : X ∈ F})`.
    pub fn twist(&self, a: SubsetMask) -> Result<SetSystem> {
        self.ground.check_mask(a)?;
        let mut feasible: Vec<SubsetMask> = self.feasible.iter().map(|&f| f ^ a).collect();
        feasible.sort_unstable();
        Ok(SetSystem::from_sorted_unchecked(
            self.ground.clone(),
            feasible,
        ))
    }

    pub fn twist_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SetSystem> {
        self.twist(self.ground.mask_of(labels)?)
    }

    /// True iff element `i` belongs to no feasible set.
    pub fn is_loop_index(&self, i: usize) -> bool {
        self.feasible.iter().all(|f| !f.contains(i))
    }

    /// True iff element `i` belongs to every feasible set.
    pub fn is_coloop_index(&self, i: usize) -> bool {
        self.feasible.iter().all(|f| f.contains(i))
    }

    pub fn is_loop(&self, e: &str) -> Result<bool> {
        Ok(self.is_loop_index(self.ground.index_of(e)?))
    }

    pub fn is_coloop(&self, e: &str) -> Result<bool> {
        Ok(self.is_coloop_index(self.ground.index_of(e)?))
    }

    /// `D \ e`: drop feasible sets containing `e`, unless `e` is a coloop,
    /// in which case `e` is stripped from every feasible set.
    pub fn delete_index(&self, i: usize) -> Result<SetSystem> {
        if i >= self.ground.len() {
            return Err(Error::UnknownElement(format!("#{i}")));
        }
        let coloop = self.is_coloop_index(i);
        let feasible: Vec<SubsetMask> = self
            .feasible
            .iter()
            .filter(|f| coloop || !f.contains(i))
            .map(|f| f.squeeze_out(i))
            .collect();
        if feasible.is_empty() {
            return Err(Error::ImproperDeletion);
        }
        // Squeezing out bit `i` is monotone on masks that agree on bit `i`,
        // so the family stays sorted in both cases.
        Ok(SetSystem::from_sorted_unchecked(
            self.ground.without(i),
            feasible,
        ))
    }

    /// `D / e := (D * e) \ e`.
    pub fn contract_index(&self, i: usize) -> Result<SetSystem> {
        if i >= self.ground.len() {
            return Err(Error::UnknownElement(format!("#{i}")));
        }
        self.twist(SubsetMask::singleton(i))?.delete_index(i)
    }

    pub fn delete(&self, e: &str) -> Result<SetSystem> {
        self.delete_index(self.ground.index_of(e)?)
    }

    pub fn contract(&self, e: &str) -> Result<SetSystem> {
        self.contract_index(self.ground.index_of(e)?)
    }

    pub fn width(&self) -> WidthReport {
        let (r_min, r_max) = self.feasible.iter().fold((u32::MAX, 0), |(lo, hi), f| {
            (lo.min(f.len()), hi.max(f.len()))
        });
        WidthReport {
            r_min,
            r_max,
            width: r_max - r_min,
        }
    }

    /// Symmetric exchange axiom: for all `X, Y ∈ F` and `u ∈ X Δ Y` there is
    /// `v ∈ X Δ Y` with `X Δ {u, v} ∈ F`.
    pub fn is_delta_matroid(&self) -> bool {
        let member = MembershipTable::new(self);
        for &x in &self.feasible {
            for &y in &self.feasible {
                let diff = x ^ y;
                let ok = diff.iter().all(|u| {
                    diff.iter().any(|v| {
                        let uv = SubsetMask::singleton(u) | SubsetMask::singleton(v);
                        member.contains(x ^ uv)
                    })
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Relabels by a bijection: element `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<SetSystem> {
        let n = self.ground.len();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidLabel(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        let mut elements = vec![None; n];
        for (i, &p) in perm.iter().enumerate() {
            elements[p] = Some(self.ground.elements[i].clone());
        }
        let ground = GroundSet {
            elements: elements.into_iter().map(Option::unwrap).collect(),
        };
        let feasible = self
            .feasible
            .iter()
            .map(|f| SubsetMask(f.iter().fold(0, |acc, i| acc | 1 << perm[i])));
        SetSystem::new(ground, feasible)
    }
}

/// Dense bitmap over all `2^|E|` subsets for O(1) feasibility tests.
pub(crate) struct MembershipTable {
    words: Vec<u64>,
}

impl MembershipTable {
    pub(crate) fn new(d: &SetSystem) -> Self {
        let size = 1usize << d.ground.len();
        let mut words = vec![0u64; size.div_ceil(64)];
        for f in &d.feasible {
            words[f.0 as usize / 64] |= 1 << (f.0 % 64);
        }
        MembershipTable { words }
    }

    pub(crate) fn contains(&self, m: SubsetMask) -> bool {
        self.words[m.0 as usize / 64] >> (m.0 % 64) & 1 == 1
    }
}
