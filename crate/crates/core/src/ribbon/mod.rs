//! Ribbon graphs as signed rotation systems.
//!
//! Edge `i` owns the half-edges `2i` and `2i + 1`. Each vertex lists its
//! half-edges in cyclic order, and each edge carries a sign: `+` for an
//! untwisted ribbon, `-` for a twisted one.
//!
//! The same data is also available as a [`FlagSystem`], where partial
//! duality is a local operation. Boundary components are counted on both
//! representations by independent code paths.

mod bouquet;
mod flags;
mod text;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;
use crate::setsystem::{GroundSet, SetSystem, SubsetMask};
use crate::weight::twist_polynomial;

pub use bouquet::{bouquet_exchange, bouquet_slide, Bouquet};
pub use flags::FlagSystem;

/// Largest edge count for the direct partial-dual polynomial.
pub const MAX_DIRECT_EDGES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A ribbon graph given by a signed rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    edges: GroundSet,
    signs: Vec<Sign>,
    rotations: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    position: Vec<usize>,
}

impl RibbonGraph {
    /// Builds a connected ribbon graph. `rotations[v]` is the cyclic order
    /// of half-edges at vertex `v`; edge `i` is labelled `labels[i]` and
    /// joins half-edges `2i` and `2i + 1`.
    pub fn new<S: Into<String>>(
        rotations: Vec<Vec<usize>>,
        labels: impl IntoIterator<Item = S>,
        signs: Vec<Sign>,
    ) -> Result<Self> {
        let g = Self::build(rotations, GroundSet::new(labels)?, signs)?;
        if g.components() != 1 {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// As [`RibbonGraph::new`] but admits disconnected graphs, which arise
    /// as spanning subgraphs.
    pub(crate) fn build(
        rotations: Vec<Vec<usize>>,
        edges: GroundSet,
        signs: Vec<Sign>,
    ) -> Result<Self> {
        let m = edges.len();
        if signs.len() != m {
            return Err(Error::InvalidRibbonGraph(format!(
                "{} signs for {m} edges",
                signs.len()
            )));
        }
        if rotations.is_empty() {
            return Err(Error::InvalidRibbonGraph("no vertices".into()));
        }
        let mut vertex_of = vec![usize::MAX; 2 * m];
        let mut position = vec![usize::MAX; 2 * m];
        for (v, rot) in rotations.iter().enumerate() {
            for (p, &h) in rot.iter().enumerate() {
                if h >= 2 * m {
                    return Err(Error::InvalidRibbonGraph(format!(
                        "half-edge {h} out of range"
                    )));
                }
                if vertex_of[h] != usize::MAX {
                    return Err(Error::InvalidRibbonGraph(format!(
                        "half-edge of edge {:?} appears twice",
                        edges.label(h / 2)
                    )));
                }
                vertex_of[h] = v;
                position[h] = p;
            }
        }
        if let Some(h) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidRibbonGraph(format!(
                "half-edge of edge {:?} is not attached to a vertex",
                edges.label(h / 2)
            )));
        }
        Ok(RibbonGraph {
            edges,
            signs,
            rotations,
            vertex_of,
            position,
        })
    }

    pub fn edges(&self) -> &GroundSet {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, edge: usize) -> Sign {
        self.signs[edge]
    }

    pub fn is_orientable_signed(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Plus)
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    /// Neighbour of `h` in the rotation at its vertex, skipping half-edges
    /// of edges outside `mask`. `forward` follows the cyclic order.
    fn step(&self, h: usize, forward: bool, mask: u32) -> usize {
        let rot = &self.rotations[self.vertex_of[h]];
        let d = rot.len();
        let mut p = self.position[h];
        loop {
            p = if forward {
                (p + 1) % d
            } else {
                (p + d - 1) % d
            };
            let g = rot[p];
            if mask >> (g / 2) & 1 == 1 {
                return g;
            }
        }
    }

    /// Connected components of the spanning subgraph with edge set `mask`.
    pub fn components_masked(&self, mask: SubsetMask) -> usize {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = n;
        for e in mask.iter() {
            let (u, v) = (self.vertex_of[2 * e], self.vertex_of[2 * e + 1]);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                count -= 1;
            }
        }
        count
    }

    pub fn components(&self) -> usize {
        self.components_masked(self.edges.full_mask())
    }

    /// Boundary components of the spanning subgraph with edge set `mask`,
    /// traced on the rotation system.
    ///
    /// A side of a half-edge is `(h, s)`: `s = 1` faces the next half-edge
    /// in the rotation, `s = 0` the previous one. Walking a boundary
    /// alternates crossing a ribbon (a `+` edge swaps the side, a `-` edge
    /// keeps it) and turning the corner to the neighbouring half-edge.
    /// Every boundary component is met once in each direction, and every
    /// vertex without remaining edges is a boundary circle of its own.
    pub fn boundary_components_masked(&self, mask: SubsetMask) -> usize {
        let mask = mask.bits();
        let m = self.num_edges();
        let mut seen = vec![false; 4 * m];
        let mut walks = 0;
        for e in 0..m {
            if mask >> e & 1 == 0 {
                continue;
            }
            for start in 4 * e..4 * e + 4 {
                if seen[start] {
                    continue;
                }
                walks += 1;
                let mut flag = start;
                loop {
                    seen[flag] = true;
                    let (h, s) = (flag / 2, flag % 2);
                    let other = h ^ 1;
                    let side = match self.signs[h / 2] {
                        Sign::Plus => 1 - s,
                        Sign::Minus => s,
                    };
                    flag = if side == 1 {
                        2 * self.step(other, true, mask)
                    } else {
                        2 * self.step(other, false, mask) + 1
                    };
                    if flag == start {
                        break;
                    }
                }
            }
        }
        let bare = (0..self.num_vertices())
            .filter(|&v| self.rotations[v].iter().all(|&h| mask >> (h / 2) & 1 == 0))
            .count();
        walks / 2 + bare
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary_components_masked(self.edges.full_mask())
    }

    /// `ε = 2k − v + e − f`.
    pub fn euler_genus(&self) -> usize {
        2 * self.components() + self.num_edges() - self.num_vertices() - self.boundary_components()
    }

    /// The spanning subgraph keeping the edges in `mask`, relabelled in
    /// order; vertices are all kept, so it may be disconnected.
    pub fn spanning_subgraph(&self, mask: SubsetMask) -> RibbonGraph {
        let kept: Vec<usize> = mask.iter().filter(|&e| e < self.num_edges()).collect();
        let mut new_id = vec![usize::MAX; 2 * self.num_edges()];
        for (i, &e) in kept.iter().enumerate() {
            new_id[2 * e] = 2 * i;
            new_id[2 * e + 1] = 2 * i + 1;
        }
        let rotations = self
            .rotations
            .iter()
            .map(|rot| {
                rot.iter()
                    .filter_map(|&h| Some(new_id[h]).filter(|&x| x != usize::MAX))
                    .collect()
            })
            .collect();
        let labels = GroundSet::new(kept.iter().map(|&e| self.edges.label(e)))
            .expect("subset of valid labels");
        let signs = kept.iter().map(|&e| self.signs[e]).collect();
        RibbonGraph::build(rotations, labels, signs).expect("subgraph of a valid graph")
    }

    /// `D(G)`: edge sets of spanning quasi-trees, i.e. spanning subgraphs
    /// that are connected and have exactly one boundary component.
    pub fn delta_matroid(&self) -> Result<SetSystem> {
        if self.components() != 1 {
            return Err(Error::Disconnected);
        }
        let total = 1u32 << self.num_edges();
        let is_quasi_tree = |a: u32| {
            let a = SubsetMask(a);
            self.components_masked(a) == 1 && self.boundary_components_masked(a) == 1
        };
        let feasible: Vec<SubsetMask> = if total <= 1 << 10 {
            (0..total)
                .filter(|&a| is_quasi_tree(a))
                .map(SubsetMask)
                .collect()
        } else {
            (0..total)
                .into_par_iter()
                .filter(|&a| is_quasi_tree(a))
                .map(SubsetMask)
                .collect()
        };
        SetSystem::new(self.edges.clone(), feasible)
    }

    /// The partial dual `G^A`, computed on the flag system.
    pub fn partial_dual(&self, a: SubsetMask) -> Result<RibbonGraph> {
        self.edges.check_mask(a)?;
        Ok(FlagSystem::from_ribbon(self).partial_dual(a).to_ribbon())
    }

    /// Same ribbon graph up to renaming vertices, choosing where each
    /// rotation starts, reversing local orientations, and swapping the two
    /// ends of an edge. Edge labels must agree.
    pub fn is_equivalent(&self, other: &RibbonGraph) -> bool {
        self.edges == other.edges
            && self.num_vertices() == other.num_vertices()
            && FlagSystem::from_ribbon(self).is_isomorphic(&FlagSystem::from_ribbon(other))
    }

    pub fn parse(text: &str) -> Result<RibbonGraph> {
        text::parse_ribbon(text)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_ribbon(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolynomialMode {
    /// `Σ_A z^{ε(G^A)}` from explicit partial duals.
    Direct,
    /// The twist polynomial of `D(G)`.
    ViaDeltaMatroid,
}

/// The partial-dual polynomial `Σ_{A ⊆ E} z^{ε(G^A)}`.
pub fn partial_dual_polynomial(g: &RibbonGraph, mode: PolynomialMode) -> Result<IntPolynomial> {
    match mode {
        PolynomialMode::ViaDeltaMatroid => Ok(twist_polynomial(&g.delta_matroid()?)),
        PolynomialMode::Direct => {
            if g.num_edges() > MAX_DIRECT_EDGES {
                return Err(Error::GroundTooLarge {
                    size: g.num_edges(),
                    bound: MAX_DIRECT_EDGES,
                });
            }
            if g.components() != 1 {
                return Err(Error::Disconnected);
            }
            let flags = FlagSystem::from_ribbon(g);
            let genus = |a: u32| flags.partial_dual(SubsetMask(a)).to_ribbon().euler_genus();
            let total = 1u32 << g.num_edges();
            let mut counts = vec![0u64; g.num_edges() + 2];
            let genera: Vec<usize> = if total <= 1 << 8 {
                (0..total).map(genus).collect()
            } else {
                (0..total).into_par_iter().map(genus).collect()
            };
            for eps in genera {
                counts[eps] += 1;
            }
            Ok(IntPolynomial::from_counts(&counts))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bouquet(word: &str) -> RibbonGraph {
        Bouquet::parse(word).unwrap().to_ribbon()
    }

    fn sys(ground: &[&str], family: &[&[&str]]) -> SetSystem {
        SetSystem::from_labels(ground, family).unwrap()
    }

    #[test]
    fn lone_vertex() {
        let g = RibbonGraph::new(vec![vec![]], Vec::<String>::new(), vec![]).unwrap();
        assert_eq!(g.boundary_components(), 1);
        assert_eq!(g.euler_genus(), 0);
        assert_eq!(
            g.delta_matroid().unwrap(),
            SetSystem::new(GroundSet::default(), [SubsetMask::EMPTY]).unwrap()
        );
    }

    #[test]
    fn single_loops() {
        let annulus = bouquet("bouquet: a a");
        assert_eq!(annulus.boundary_components(), 2);
        assert_eq!(annulus.euler_genus(), 0);
        let mobius = bouquet("bouquet: a a\nsigns: a=-");
        assert_eq!(mobius.boundary_components(), 1);
        assert_eq!(mobius.euler_genus(), 1);
        assert_eq!(mobius.delta_matroid().unwrap(), sys(&["a"], &[&[], &["a"]]));
    }

    #[test]
    fn interlaced_loops_form_a_torus() {
        let g = bouquet("bouquet: a b a b");
        assert_eq!(g.boundary_components(), 1);
        assert_eq!(g.euler_genus(), 2);
        assert_eq!(
            g.delta_matroid().unwrap(),
            sys(&["a", "b"], &[&[], &["a", "b"]])
        );
        let via_dm = partial_dual_polynomial(&g, PolynomialMode::ViaDeltaMatroid).unwrap();
        assert_eq!(via_dm.coefficient_sum(), 4.into());
        assert_eq!(
            partial_dual_polynomial(&g, PolynomialMode::Direct).unwrap(),
            via_dm
        );
    }

    #[test]
    fn single_edge_tree() {
        let g = RibbonGraph::new(vec![vec![0], vec![1]], ["e"], vec![Sign::Plus]).unwrap();
        assert_eq!(g.boundary_components(), 1);
        assert_eq!(g.euler_genus(), 0);
        assert_eq!(g.delta_matroid().unwrap(), sys(&["e"], &[&["e"]]));
        assert_eq!(
            partial_dual_polynomial(&g, PolynomialMode::Direct).unwrap(),
            partial_dual_polynomial(&g, PolynomialMode::ViaDeltaMatroid).unwrap()
        );
        // the sign of a non-loop edge can be switched away at either end
        let twisted = RibbonGraph::new(vec![vec![0], vec![1]], ["e"], vec![Sign::Minus]).unwrap();
        assert_eq!(twisted.euler_genus(), 0);
        assert!(g.is_equivalent(&twisted));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            RibbonGraph::new(vec![vec![0], vec![1], vec![]], ["e"], vec![Sign::Plus]),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            RibbonGraph::new(vec![vec![0, 0, 1]], ["e"], vec![Sign::Plus]),
            Err(Error::InvalidRibbonGraph(_))
        ));
        assert!(matches!(
            RibbonGraph::new(vec![vec![0]], ["e"], vec![Sign::Plus]),
            Err(Error::InvalidRibbonGraph(_))
        ));
        assert!(matches!(
            RibbonGraph::new(vec![vec![0, 1]], ["e"], vec![]),
            Err(Error::InvalidRibbonGraph(_))
        ));
    }

    #[test]
    fn spanning_subgraph_matches_masked_counts() {
        let g = bouquet("bouquet: a b c a c b");
        for a in 0..8 {
            let sub = g.spanning_subgraph(SubsetMask(a));
            assert_eq!(
                sub.boundary_components(),
                g.boundary_components_masked(SubsetMask(a))
            );
            assert_eq!(
                FlagSystem::from_ribbon(&sub).faces(),
                sub.boundary_components()
            );
        }
    }

    #[test]
    fn partial_dual_basics() {
        let g = bouquet("bouquet: a b a c c b");
        assert!(g.partial_dual(SubsetMask::EMPTY).unwrap().is_equivalent(&g));
        for a in 0..8 {
            let a = SubsetMask(a);
            let dual = g.partial_dual(a).unwrap();
            assert_eq!(dual.num_edges(), 3);
            assert!(dual.partial_dual(a).unwrap().is_equivalent(&g));
            assert_eq!(
                dual.delta_matroid().unwrap(),
                g.delta_matroid().unwrap().twist(a).unwrap()
            );
        }
        let full = g.partial_dual(g.edges().full_mask()).unwrap();
        assert_eq!(full.num_vertices(), g.boundary_components());
        assert_eq!(full.boundary_components(), g.num_vertices());
        assert!(g.partial_dual(SubsetMask(8)).is_err());
    }

    #[test]
    fn inequivalent_graphs() {
        let torus = bouquet("bouquet: a b a b");
        let plane = bouquet("bouquet: a a b b");
        assert!(!torus.is_equivalent(&plane));
        let twisted = bouquet("bouquet: a b a b\nsigns: a=-");
        assert!(!torus.is_equivalent(&twisted));
    }
}
