//! Binary delta-matroids.
//!
//! A symmetric matrix `C` over GF(2) indexed by a ground set defines
//! `D(C) = (E, {A ⊆ E : C[A] non-singular})`, with `C[∅]` non-singular by
//! convention. A set system is binary if one of its twists equals `D(C)`
//! for some symmetric `C`; [`is_binary`] decides this under the identity
//! labelling.

use std::fmt;

use crate::error::{Error, Result};
use crate::setsystem::{GroundSet, SetSystem, SubsetMask, MAX_GROUND};

/// Largest ground set accepted by [`is_binary`].
pub const MAX_BINARY_TEST: usize = 12;

/// Symmetric `n × n` matrix over GF(2); row `i` is a bitmask of columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2SymMatrix {
    rows: Vec<u32>,
}

impl Gf2SymMatrix {
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                size: n,
                bound: MAX_GROUND,
            });
        }
        for (i, &r) in rows.iter().enumerate() {
            if n < 32 && r >> n != 0 {
                let col = 31 - r.leading_zeros() as usize;
                return Err(Error::AsymmetricMatrix { row: i, col });
            }
            for (j, &other) in rows[..i].iter().enumerate() {
                if (r >> j & 1) != (other >> i & 1) {
                    return Err(Error::AsymmetricMatrix { row: i, col: j });
                }
            }
        }
        Ok(Gf2SymMatrix { rows })
    }

    pub fn zero(n: usize) -> Self {
        Gf2SymMatrix { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        Gf2SymMatrix {
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// Number of free bits of an `n × n` symmetric matrix, `n(n+1)/2`.
    pub fn free_bits(n: usize) -> usize {
        n * (n + 1) / 2
    }

    /// Decodes the upper triangle (row-major, diagonal included) from the
    /// low `n(n+1)/2` bits of `pattern`. Every symmetric matrix arises from
    /// exactly one pattern.
    pub fn from_pattern(n: usize, pattern: u64) -> Self {
        let mut m = Gf2SymMatrix::zero(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i..n {
                if pattern >> bit & 1 == 1 {
                    m.set(i, j, true);
                }
                bit += 1;
            }
        }
        m
    }

    /// All symmetric `n × n` matrices.
    pub fn all(n: usize) -> impl Iterator<Item = Gf2SymMatrix> {
        (0..1u64 << Self::free_bits(n)).map(move |p| Self::from_pattern(n, p))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        for (r, c) in [(i, j), (j, i)] {
            if value {
                self.rows[r] |= 1 << c;
            } else {
                self.rows[r] &= !(1 << c);
            }
        }
    }

    /// Whether the principal submatrix `C[A]` is non-singular.
    pub fn is_principal_nonsingular(&self, a: SubsetMask) -> bool {
        let mut rows: Vec<u32> = a.iter().map(|i| self.rows[i] & a.bits()).collect();
        gf2_full_rank(&mut rows, a.bits())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "expected matrix dimension"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(ln, 1, format!("bad dimension {first:?}")))?;
        if n > MAX_GROUND {
            return Err(Error::parse(
                ln,
                1,
                format!("dimension {n} exceeds the bound of {MAX_GROUND}"),
            ));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (ln, line) = lines.next().ok_or_else(|| {
                Error::parse(
                    ln + i + 1,
                    1,
                    format!("expected {n} matrix rows, found {i}"),
                )
            })?;
            let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if chars.len() != n {
                return Err(Error::parse(
                    ln,
                    1,
                    format!("row has {} entries, expected {n}", chars.len()),
                ));
            }
            let mut row = 0u32;
            for (j, c) in chars.into_iter().enumerate() {
                match c {
                    '0' => {}
                    '1' => row |= 1 << j,
                    other => {
                        return Err(Error::parse(
                            ln,
                            j + 1,
                            format!("unexpected {other:?}, expected 0 or 1"),
                        ))
                    }
                }
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, 1, "trailing input after matrix"));
        }
        Self::from_rows(rows)
    }
}

impl fmt::Display for Gf2SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dim())?;
        for i in 0..self.dim() {
            f.write_str("\n")?;
            for j in 0..self.dim() {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Gaussian elimination over GF(2): true iff the square system `rows`
/// (columns restricted to `cols`) has full rank.
fn gf2_full_rank(rows: &mut [u32], cols: u32) -> bool {
    let mut rank = 0;
    let mut remaining = cols;
    while remaining != 0 {
        let bit = remaining & remaining.wrapping_neg();
        remaining ^= bit;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank == rows.len()
}

/// Non-singularity of the principal submatrix `C[A]`; `C[∅]` counts as
/// non-singular.
pub fn gf2_is_nonsingular(c: &Gf2SymMatrix, a: SubsetMask) -> bool {
    c.is_principal_nonsingular(a)
}

/// `D(C)`: the feasible sets are the `A` with `C[A]` non-singular.
pub fn from_matrix(ground: &GroundSet, c: &Gf2SymMatrix) -> Result<SetSystem> {
    if ground.len() != c.dim() {
        return Err(Error::DimensionMismatch {
            matrix: c.dim(),
            ground: ground.len(),
        });
    }
    let feasible: Vec<SubsetMask> = (0..1u32 << c.dim())
        .map(SubsetMask)
        .filter(|&a| c.is_principal_nonsingular(a))
        .collect();
    Ok(SetSystem::from_sorted_unchecked(ground.clone(), feasible))
}

/// A twist `A` and matrix `C` with `D * A = D(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryWitness {
    pub twist: SubsetMask,
    pub matrix: Gf2SymMatrix,
}

/// The only symmetric matrix that can represent a system containing `∅`:
/// `C_ee = [{e} ∈ F]` and, since `det C[{e,f}] = C_ee C_ff + C_ef` over
/// GF(2), `C_ef = [{e,f} ∈ F] + C_ee C_ff`.
pub fn forced_matrix(d: &SetSystem) -> Gf2SymMatrix {
    let n = d.ground().len();
    let mut c = Gf2SymMatrix::zero(n);
    for e in 0..n {
        c.set(e, e, d.is_feasible(SubsetMask::singleton(e)));
    }
    for e in 0..n {
        for f in e + 1..n {
            let pair = d.is_feasible(SubsetMask::singleton(e) | SubsetMask::singleton(f));
            c.set(e, f, pair ^ (c.get(e, e) && c.get(f, f)));
        }
    }
    c
}

/// Searches the twists `D * A`, `A ∈ F`, for one equal to `D(C)`.
pub fn binary_witness(d: &SetSystem) -> Result<Option<BinaryWitness>> {
    let n = d.ground().len();
    if n > MAX_BINARY_TEST {
        return Err(Error::GroundTooLarge {
            size: n,
            bound: MAX_BINARY_TEST,
        });
    }
    if !d.is_delta_matroid() {
        return Ok(None);
    }
    for &a in d.feasible() {
        let twisted = d.twist(a)?;
        let c = forced_matrix(&twisted);
        if from_matrix(d.ground(), &c)? == twisted {
            return Ok(Some(BinaryWitness {
                twist: a,
                matrix: c,
            }));
        }
    }
    Ok(None)
}

pub fn is_binary(d: &SetSystem) -> Result<bool> {
    Ok(binary_witness(d)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(n: usize) -> GroundSet {
        GroundSet::new(["a", "b", "c", "d"].into_iter().take(n)).unwrap()
    }

    #[test]
    fn small_determinants() {
        let c = Gf2SymMatrix::from_rows(vec![0b10, 0b01]).unwrap();
        assert!(gf2_is_nonsingular(&c, SubsetMask::EMPTY));
        assert!(!gf2_is_nonsingular(&c, SubsetMask(0b01)));
        assert!(gf2_is_nonsingular(&c, SubsetMask(0b11)));
        let one = Gf2SymMatrix::identity(1);
        assert!(gf2_is_nonsingular(&one, SubsetMask(1)));
        let all_ones = Gf2SymMatrix::from_rows(vec![0b11, 0b11]).unwrap();
        assert!(!gf2_is_nonsingular(&all_ones, SubsetMask(0b11)));
    }

    #[test]
    fn from_matrix_examples() {
        let g = ground(2);
        let zero = from_matrix(&g, &Gf2SymMatrix::zero(2)).unwrap();
        assert_eq!(zero, SetSystem::from_labels(&["a", "b"], &[&[]]).unwrap());
        let id = from_matrix(&g, &Gf2SymMatrix::identity(2)).unwrap();
        assert_eq!(id.num_feasible(), 4);
        let swap = from_matrix(&g, &Gf2SymMatrix::from_rows(vec![0b10, 0b01]).unwrap()).unwrap();
        assert_eq!(
            swap,
            SetSystem::from_labels(&["a", "b"], &[&[], &["a", "b"]]).unwrap()
        );
        assert!(matches!(
            from_matrix(&g, &Gf2SymMatrix::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            Gf2SymMatrix::from_rows(vec![0b10, 0b00]),
            Err(Error::AsymmetricMatrix { row: 1, col: 0 })
        );
    }

    #[test]
    fn patterns_enumerate_each_matrix_once() {
        let all: std::collections::HashSet<_> = Gf2SymMatrix::all(3).collect();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn text_format() {
        let c = Gf2SymMatrix::parse("3\n011\n101\n110\n").unwrap();
        assert_eq!(c.to_string(), "3\n011\n101\n110");
        assert_eq!(Gf2SymMatrix::parse(&c.to_string()).unwrap(), c);
        assert!(matches!(
            Gf2SymMatrix::parse("2\n01\n00"),
            Err(Error::AsymmetricMatrix { .. })
        ));
        assert!(matches!(
            Gf2SymMatrix::parse("2\n01\n1x"),
            Err(Error::Parse {
                line: 3,
                column: 2,
                ..
            })
        ));
        assert!(matches!(
            Gf2SymMatrix::parse("2\n01"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Gf2SymMatrix::parse("1\n0\n1"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn round_trip_recovers_matrix() {
        for n in 0..=3 {
            for c in Gf2SymMatrix::all(n) {
                let d = from_matrix(&ground(n), &c).unwrap();
                let w = binary_witness(&d).unwrap().expect("D(C) is binary");
                assert_eq!(w.twist, SubsetMask::EMPTY);
                assert_eq!(w.matrix, c);
            }
        }
    }

    #[test]
    fn worked_example_is_binary_by_brute_force_too() {
        let d = SetSystem::from_labels(&["a", "b", "c"], &[&[], &["b", "c"]]).unwrap();
        assert!(is_binary(&d).unwrap());
        // independent search: every twist against every symmetric 3x3 matrix
        let g = ground(3);
        let brute = (0..8u32).any(|a| {
            let t = d.twist(SubsetMask(a)).unwrap();
            Gf2SymMatrix::all(3).any(|c| from_matrix(&g, &c).unwrap() == t)
        });
        assert!(brute);
    }

    #[test]
    fn non_delta_matroid_is_not_binary() {
        let d = SetSystem::from_labels(&["a", "b", "c"], &[&[], &["a", "b", "c"]]).unwrap();
        assert!(!d.is_delta_matroid());
        assert!(!is_binary(&d).unwrap());
    }

    #[test]
    fn size_bound() {
        let g = GroundSet::numbered(13).unwrap();
        let d = SetSystem::new(g, [SubsetMask::EMPTY]).unwrap();
        assert!(matches!(
            is_binary(&d),
            Err(Error::GroundTooLarge { bound: 12, .. })
        ));
    }
}
