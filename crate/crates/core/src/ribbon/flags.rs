//! Flag model of a ribbon graph.
//!
//! Every edge has four flags, one for each (end, side) pair. Three
//! fixed-point-free involutions act on them:
//!
//! * `ends` joins the two ends of an edge along one side of its ribbon,
//! * `corners` joins neighbouring half-edges around a vertex,
//! * `sides` joins the two sides of a single half-edge.
//!
//! Vertices are the orbits of `⟨corners, sides⟩`, edges those of
//! `⟨ends, sides⟩` and boundary components those of `⟨ends, corners⟩`.
//! Exchanging `ends` and `sides` on the flags of the edges in `A` yields
//! the partial dual `G^A`.

use std::collections::VecDeque;

use super::{RibbonGraph, Sign};
use crate::setsystem::{GroundSet, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagSystem {
    edges: GroundSet,
    ends: Vec<usize>,
    corners: Vec<usize>,
    sides: Vec<usize>,
    /// Vertices without any flags, i.e. without incident edges.
    isolated: usize,
}

impl FlagSystem {
    /// Flag `2h + s` is side `s` of half-edge `h`; side 1 faces the next
    /// half-edge in the rotation.
    pub fn from_ribbon(g: &RibbonGraph) -> FlagSystem {
        let n = 4 * g.num_edges();
        let mut ends = vec![0; n];
        let mut corners = vec![0; n];
        let sides = (0..n).map(|f| f ^ 1).collect();
        for e in 0..g.num_edges() {
            let (h0, h1) = (2 * e, 2 * e + 1);
            for s in 0..2 {
                let t = match g.sign(e) {
                    Sign::Plus => 1 - s,
                    Sign::Minus => s,
                };
                ends[2 * h0 + s] = 2 * h1 + t;
                ends[2 * h1 + t] = 2 * h0 + s;
            }
        }
        let mut isolated = 0;
        for rot in g.rotations() {
            if rot.is_empty() {
                isolated += 1;
            }
            for (i, &h) in rot.iter().enumerate() {
                let next = rot[(i + 1) % rot.len()];
                corners[2 * h + 1] = 2 * next;
                corners[2 * next] = 2 * h + 1;
            }
        }
        FlagSystem {
            edges: g.edges().clone(),
            ends,
            corners,
            sides,
            isolated,
        }
    }

    pub fn num_flags(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_of(flag: usize) -> usize {
        flag / 4
    }

    fn count_orbits(&self, x: &[usize], y: &[usize]) -> usize {
        let mut seen = vec![false; self.num_flags()];
        let mut orbits = 0;
        let mut stack = Vec::new();
        for f in 0..self.num_flags() {
            if seen[f] {
                continue;
            }
            orbits += 1;
            seen[f] = true;
            stack.push(f);
            while let Some(g) = stack.pop() {
                for h in [x[g], y[g]] {
                    if !seen[h] {
                        seen[h] = true;
                        stack.push(h);
                    }
                }
            }
        }
        orbits
    }

    pub fn vertices(&self) -> usize {
        self.count_orbits(&self.corners, &self.sides) + self.isolated
    }

    pub fn edge_orbits(&self) -> usize {
        self.count_orbits(&self.ends, &self.sides)
    }

    pub fn faces(&self) -> usize {
        self.count_orbits(&self.ends, &self.corners) + self.isolated
    }

    /// Exchanges `ends` and `sides` on the flags of the edges in `a`.
    pub fn partial_dual(&self, a: SubsetMask) -> FlagSystem {
        let mut out = self.clone();
        for e in a.iter() {
            for f in 4 * e..4 * e + 4 {
                out.ends[f] = self.sides[f];
                out.sides[f] = self.ends[f];
            }
        }
        out
    }

    /// Reads off a signed rotation system. Each vertex orbit is walked
    /// alternating `sides` and `corners`; the walk direction fixes the local
    /// orientation, and an edge is `+` exactly when `ends` swaps the sides
    /// so defined.
    pub fn to_ribbon(&self) -> RibbonGraph {
        let n = self.num_flags();
        let m = n / 4;
        // half-edge of each flag: the sides-pair holding the lowest flag of
        // an edge becomes its first half-edge
        let half_of = |f: usize| {
            let e = f / 4;
            if f == 4 * e || self.sides[f] == 4 * e {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let mut local_side = vec![usize::MAX; n];
        let mut rotations = Vec::new();
        for start in 0..n {
            if local_side[start] != usize::MAX {
                continue;
            }
            let mut rot = Vec::new();
            let mut f = start;
            loop {
                let g = self.sides[f];
                local_side[f] = 0;
                local_side[g] = 1;
                rot.push(half_of(f));
                f = self.corners[g];
                if f == start {
                    break;
                }
            }
            rotations.push(rot);
        }
        rotations.extend(std::iter::repeat_with(Vec::new).take(self.isolated));
        let signs = (0..m)
            .map(|e| {
                let f = 4 * e;
                if local_side[f] == local_side[self.ends[f]] {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        RibbonGraph::build(rotations, self.edges.clone(), signs)
            .expect("flag system encodes a ribbon graph")
    }

    /// Isomorphism commuting with all three involutions and mapping each
    /// edge's flags to the flags of the equally labelled edge.
    pub fn is_isomorphic(&self, other: &FlagSystem) -> bool {
        if self.edges != other.edges
            || self.num_flags() != other.num_flags()
            || self.isolated != other.isolated
        {
            return false;
        }
        let n = self.num_flags();
        if n == 0 {
            return true;
        }
        // components are matched one at a time from their lowest flag
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for root in 0..n {
            if phi[root] != usize::MAX {
                continue;
            }
            let e = Self::edge_of(root);
            let candidates: Vec<usize> = (4 * e..4 * e + 4).filter(|&t| !used[t]).collect();
            let found = candidates.into_iter().any(|t| {
                let mut trial_phi = phi.clone();
                let mut trial_used = used.clone();
                if self.extend(other, root, t, &mut trial_phi, &mut trial_used) {
                    phi = trial_phi;
                    used = trial_used;
                    true
                } else {
                    false
                }
            });
            if !found {
                return false;
            }
        }
        true
    }

    fn extend(
        &self,
        other: &FlagSystem,
        root: usize,
        target: usize,
        phi: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let mine = [&self.ends, &self.corners, &self.sides];
        let theirs = [&other.ends, &other.corners, &other.sides];
        phi[root] = target;
        used[target] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            for k in 0..3 {
                let (g, t) = (mine[k][f], theirs[k][phi[f]]);
                if phi[g] == usize::MAX {
                    if used[t] || Self::edge_of(g) != Self::edge_of(t) {
                        return false;
                    }
                    phi[g] = t;
                    used[t] = true;
                    queue.push_back(g);
                } else if phi[g] != t {
                    return false;
                }
            }
        }
        true
    }
}
