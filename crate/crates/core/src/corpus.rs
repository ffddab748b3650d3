//! Instance generators for exhaustive and randomized verification: every
//! proper set system on a small ground set, seeded random systems, every
//! connected ribbon graph with few edges, and every bouquet word.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ribbon::{Bouquet, RibbonGraph, Sign};
use crate::setsystem::{GroundSet, SetSystem, SubsetMask};

/// Largest ground set for [`all_set_systems`]: `2^(2^4) − 1` families.
pub const MAX_EXHAUSTIVE: usize = 4;

/// Ground set `a, b, c, …`.
pub fn letters(n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
        .expect("at most 24 letters")
}

/// Deterministic generator used by every randomized check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The set system whose family is encoded by `code`: subset `A` is
/// feasible iff bit `A` of `code` is set. `code` must be nonzero.
pub fn system_from_code(ground: &GroundSet, code: u64) -> SetSystem {
    let feasible: Vec<SubsetMask> = (0..1u32 << ground.len())
        .filter(|&a| code >> a & 1 == 1)
        .map(SubsetMask)
        .collect();
    SetSystem::new(ground.clone(), feasible).expect("nonzero family code")
}

/// Number of proper set systems on `n` labelled elements, `2^(2^n) − 1`.
pub fn count_set_systems(n: usize) -> u64 {
    (1u64 << (1u32 << n)) - 1
}

/// Every proper set system on the ground set `a, b, …` of size `n`.
pub fn all_set_systems(n: usize) -> Result<impl Iterator<Item = SetSystem> + Clone> {
    if n > MAX_EXHAUSTIVE {
        return Err(Error::GroundTooLarge {
            size: n,
            bound: MAX_EXHAUSTIVE,
        });
    }
    let ground = letters(n);
    Ok((1..=count_set_systems(n)).map(move |code| system_from_code(&ground, code)))
}

/// Each subset is feasible independently with probability 1/2, redrawn
/// until the family is nonempty.
pub fn random_set_system<R: Rng>(rng: &mut R, n: usize) -> SetSystem {
    let ground = letters(n);
    loop {
        let feasible: Vec<SubsetMask> = (0..1u32 << n)
            .filter(|_| rng.gen())
            .map(SubsetMask)
            .collect();
        if let Ok(d) = SetSystem::new(ground.clone(), feasible) {
            return d;
        }
    }
}

/// Every delta-matroid on `n ≤ 4` labelled elements.
pub fn all_delta_matroids(n: usize) -> Result<Vec<SetSystem>> {
    Ok(all_set_systems(n)?
        .filter(SetSystem::is_delta_matroid)
        .collect())
}

/// Set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(&mut vec![0], 0, n, &mut out);
    }
    out
}

/// All cyclic orders of `items` with `items[0]` first.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, k: usize, acc: &mut Vec<Vec<usize>>, head: usize) {
        if k == rest.len() {
            let mut v = vec![head];
            v.extend_from_slice(rest);
            acc.push(v);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, acc, head);
            rest.swap(k, i);
        }
    }
    let Some((&head, tail)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut acc = Vec::new();
    permute(&mut tail.to_vec(), 0, &mut acc, head);
    acc
}

fn edge_labels(m: usize) -> Vec<String> {
    letters(m).labels().map(str::to_string).collect()
}

/// Every connected ribbon graph with exactly `m` edges labelled `a, b, …`,
/// over all vertex partitions of the half-edges, all rotations and all
/// sign patterns. Graphs differing only by relabelling half-edges or
/// vertices are listed separately.
pub fn all_connected_ribbon_graphs(m: usize) -> Vec<RibbonGraph> {
    let labels = edge_labels(m);
    if m == 0 {
        return vec![RibbonGraph::new(vec![vec![]], labels, vec![]).expect("lone vertex")];
    }
    let mut out = Vec::new();
    for partition in set_partitions(2 * m) {
        let blocks = partition.iter().max().map_or(0, |&b| b + 1);
        let members: Vec<Vec<usize>> = (0..blocks)
            .map(|b| (0..2 * m).filter(|&h| partition[h] == b).collect())
            .collect();
        let choices: Vec<Vec<Vec<usize>>> = members.iter().map(|b| cyclic_orders(b)).collect();
        let mut idx = vec![0usize; blocks];
        loop {
            let rotations: Vec<Vec<usize>> =
                (0..blocks).map(|b| choices[b][idx[b]].clone()).collect();
            // connectivity does not depend on rotations or signs
            let probe = RibbonGraph::new(rotations.clone(), labels.clone(), vec![Sign::Plus; m]);
            match probe {
                Ok(_) => {
                    for signs in 0..1u32 << m {
                        let signs = (0..m)
                            .map(|e| {
                                if signs >> e & 1 == 1 {
                                    Sign::Minus
                                } else {
                                    Sign::Plus
                                }
                            })
                            .collect();
                        out.push(
                            RibbonGraph::new(rotations.clone(), labels.clone(), signs)
                                .expect("connected"),
                        );
                    }
                }
                Err(Error::Disconnected) => {}
                Err(e) => panic!("generated an invalid ribbon graph: {e}"),
            }
            // odometer over the per-vertex cyclic orders
            let Some(b) = (0..blocks).find(|&b| idx[b] + 1 < choices[b].len()) else {
                break;
            };
            idx[b] += 1;
            idx[..b].iter_mut().for_each(|i| *i = 0);
        }
    }
    out
}

/// A random connected ribbon graph with `m ≥ 1` edges.
pub fn random_connected_ribbon_graph<R: Rng>(rng: &mut R, m: usize) -> RibbonGraph {
    let labels = edge_labels(m);
    loop {
        let v = rng.gen_range(1..=m + 1);
        let mut rotations = vec![Vec::new(); v];
        for h in 0..2 * m {
            rotations[rng.gen_range(0..v)].push(h);
        }
        if rotations.iter().any(Vec::is_empty) {
            continue;
        }
        for rot in &mut rotations {
            rot.shuffle(rng);
        }
        let signs = (0..m)
            .map(|_| if rng.gen() { Sign::Minus } else { Sign::Plus })
            .collect();
        if let Ok(g) = RibbonGraph::new(rotations, labels.clone(), signs) {
            return g;
        }
    }
}

/// Every orientable bouquet word with `m` chords labelled `a, b, …`,
/// `(2m)! / 2^m` words in all (rotations of a word are listed separately).
pub fn all_orientable_bouquets(m: usize) -> Vec<Bouquet> {
    fn fill(word: &mut Vec<Option<usize>>, m: usize, out: &mut Vec<Vec<usize>>) {
        let Some(first) = word.iter().position(Option::is_none) else {
            out.push(word.iter().map(|c| c.expect("filled")).collect());
            return;
        };
        // the first free slot gets an unused label, paired with any later free slot
        for second in first + 1..word.len() {
            if word[second].is_none() {
                for label in 0..m {
                    if word.contains(&Some(label)) {
                        continue;
                    }
                    word[first] = Some(label);
                    word[second] = Some(label);
                    fill(word, m, out);
                    word[first] = None;
                    word[second] = None;
                }
            }
        }
    }
    let mut words = Vec::new();
    fill(&mut vec![None; 2 * m], m, &mut words);
    let labels = edge_labels(m);
    words
        .into_iter()
        .map(|w| {
            let word: Vec<&str> = w.iter().map(|&e| labels[e].as_str()).collect();
            Bouquet::new(&word, &[]).expect("valid word")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_system_counts() {
        assert_eq!(all_set_systems(2).unwrap().count(), 15);
        assert_eq!(all_set_systems(3).unwrap().count(), 255);
        assert!(all_set_systems(5).is_err());
    }

    #[test]
    fn partitions_are_bell_numbers() {
        let bell: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, [1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn cyclic_order_counts() {
        assert_eq!(cyclic_orders(&[0, 1, 2, 3]).len(), 6);
        assert_eq!(cyclic_orders(&[5]).len(), 1);
    }

    #[test]
    fn bouquet_word_counts() {
        assert_eq!(all_orientable_bouquets(2).len(), 6);
        assert_eq!(all_orientable_bouquets(3).len(), 90);
        assert_eq!(all_orientable_bouquets(4).len(), 2520);
    }

    #[test]
    fn ribbon_graph_corpus_is_connected() {
        let one = all_connected_ribbon_graphs(1);
        // a loop on one vertex (two signs) or a bridge between two (two signs)
        assert_eq!(one.len(), 4);
        for g in all_connected_ribbon_graphs(2) {
            assert_eq!(g.components(), 1);
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a: Vec<_> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_set_system(&mut r, 5)
            })
            .collect();
        let b: Vec<_> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_set_system(&mut r, 5)
            })
            .collect();
        assert_eq!(a, b);
        let mut r = rng(1);
        for m in 1..5 {
            assert_eq!(random_connected_ribbon_graph(&mut r, m).num_edges(), m);
        }
    }
}
