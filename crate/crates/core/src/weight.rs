//! The twist polynomial `Σ_{A ⊆ E} z^{w(D*A)}`, its split into the four
//! quadrants cut out by a pair `(a, b)`, the four-term defect, and the
//! Tutte-relation checker.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::moves::{exchange_ends, handle_slide, slide_exchange, MovePair};
use crate::polynomial::IntPolynomial;
use crate::setsystem::{SetSystem, SubsetMask, MAX_GROUND};

/// Masks per work unit. Chunk boundaries depend only on `|E|`, never on the
/// thread count, and per-chunk histograms are merged by integer addition,
/// so results are identical for any degree of parallelism.
const CHUNK: u64 = 1 << 12;

type Histogram = [u64; MAX_GROUND + 1];

/// Width of `D * A` without materialising the twisted family.
#[inline]
fn twisted_width(feasible: &[u32], twist: u32) -> u32 {
    let mut lo = u32::MAX;
    let mut hi = 0;
    for &f in feasible {
        let r = (f ^ twist).count_ones();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    hi - lo
}

fn width_histogram(d: &SetSystem, keep: impl Fn(u32) -> bool + Sync) -> Histogram {
    let feasible: Vec<u32> = d.feasible().iter().map(|m| m.bits()).collect();
    let total = 1u64 << d.ground().len();
    let sweep = |range: std::ops::Range<u64>| {
        let mut hist = [0u64; MAX_GROUND + 1];
        for a in range {
            let a = a as u32;
            if keep(a) {
                hist[twisted_width(&feasible, a) as usize] += 1;
            }
        }
        hist
    };
    if total <= CHUNK {
        return sweep(0..total);
    }
    (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| sweep(c * CHUNK..((c + 1) * CHUNK).min(total)))
        .reduce(
            || [0u64; MAX_GROUND + 1],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(s, t)| *s += t);
                x
            },
        )
}

/// `∂ω_D(z) = Σ_{A ⊆ E} z^{w(D*A)}`.
pub fn twist_polynomial(d: &SetSystem) -> IntPolynomial {
    IntPolynomial::from_counts(&width_histogram(d, |_| true))
}

/// Selects the subsets `A` by whether `a ∈ A` and whether `b ∈ A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadrantSelector {
    pub a_in: bool,
    pub b_in: bool,
}

impl QuadrantSelector {
    pub const ALL: [QuadrantSelector; 4] = [
        QuadrantSelector {
            a_in: false,
            b_in: false,
        },
        QuadrantSelector {
            a_in: true,
            b_in: false,
        },
        QuadrantSelector {
            a_in: false,
            b_in: true,
        },
        QuadrantSelector {
            a_in: true,
            b_in: true,
        },
    ];

    pub fn selects(self, m: MovePair, mask: u32) -> bool {
        (mask >> m.a & 1 == 1) == self.a_in && (mask >> m.b & 1 == 1) == self.b_in
    }

    /// `"10"` means `a ∈ A`, `b ∉ A`.
    pub fn code(self) -> &'static str {
        match (self.a_in, self.b_in) {
            (false, false) => "00",
            (true, false) => "10",
            (false, true) => "01",
            (true, true) => "11",
        }
    }
}

/// Twist-polynomial terms for the subsets in one quadrant.
pub fn quadrant_polynomial(
    d: &SetSystem,
    m: MovePair,
    q: QuadrantSelector,
) -> Result<IntPolynomial> {
    MovePair::from_indices(d.ground(), m.a, m.b)?;
    Ok(IntPolynomial::from_counts(&width_histogram(d, |a| {
        q.selects(m, a)
    })))
}

/// The four systems of the four-term relation and their twist polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourTermReport {
    pub pair: MovePair,
    /// `D`, `D'_ab`, `D̃'_ab`, `D̃_ab` in that order.
    pub systems: [SetSystem; 4],
    /// Twist polynomials of `systems`, same order.
    pub polynomials: [IntPolynomial; 4],
    /// `p(D) + p(D̃'_ab) − p(D'_ab) − p(D̃_ab)`.
    pub defect: IntPolynomial,
}

impl FourTermReport {
    pub const NAMES: [&'static str; 4] = ["D", "D'_ab", "D~'_ab", "D~_ab"];

    pub fn holds(&self) -> bool {
        self.defect.is_zero()
    }
}

pub fn four_term_report(d: &SetSystem, m: MovePair) -> Result<FourTermReport> {
    let exchanged = exchange_ends(d, m)?;
    let both = slide_exchange(d, m)?;
    let slid = handle_slide(d, m)?;
    let systems = [d.clone(), exchanged, both, slid];
    let polynomials = systems.clone().map(|s| twist_polynomial(&s));
    let [p1, p2, p3, p4] = &polynomials;
    let defect = p1 + p3 - p2 - p4;
    Ok(FourTermReport {
        pair: m,
        systems,
        polynomials,
        defect,
    })
}

/// First subset `A` where the quadrant width equalities fail: on quadrants
/// 00 and 11 `w(D*A)` must equal `w(D̃_ab*A)`, on 10 and 01 it must equal
/// `w(D'_ab*A)`.
pub fn quadrant_mismatch(d: &SetSystem, m: MovePair) -> Result<Option<SubsetMask>> {
    let slid = handle_slide(d, m)?;
    let exchanged = exchange_ends(d, m)?;
    let bits = |s: &SetSystem| s.feasible().iter().map(|f| f.bits()).collect::<Vec<_>>();
    let (base, slid, exchanged) = (bits(d), bits(&slid), bits(&exchanged));
    let total = 1u64 << d.ground().len();
    Ok((0..total)
        .map(|a| a as u32)
        .find(|&a| {
            let partner = if (a >> m.a & 1) == (a >> m.b & 1) {
                &slid
            } else {
                &exchanged
            };
            twisted_width(&base, a) != twisted_width(partner, a)
        })
        .map(SubsetMask))
}

pub fn quadrant_equalities(d: &SetSystem, m: MovePair) -> Result<bool> {
    Ok(quadrant_mismatch(d, m)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TutteCase {
    Loop,
    Coloop,
    Ordinary,
}

impl TutteCase {
    pub fn name(self) -> &'static str {
        match self {
            TutteCase::Loop => "loop",
            TutteCase::Coloop => "coloop",
            TutteCase::Ordinary => "ordinary",
        }
    }
}

/// `(∂ω_D, ∂ω_{D\e}, ∂ω_{D/e})` together with the case of `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteTriple {
    pub case: TutteCase,
    pub whole: IntPolynomial,
    pub deletion: IntPolynomial,
    pub contraction: IntPolynomial,
}

pub fn tutte_check(d: &SetSystem, e: &str) -> Result<TutteTriple> {
    let i = d.ground().index_of(e)?;
    let case = if d.is_loop_index(i) {
        TutteCase::Loop
    } else if d.is_coloop_index(i) {
        TutteCase::Coloop
    } else {
        TutteCase::Ordinary
    };
    Ok(TutteTriple {
        case,
        whole: twist_polynomial(d),
        deletion: twist_polynomial(&d.delete_index(i)?),
        contraction: twist_polynomial(&d.contract_index(i)?),
    })
}

/// Rational values for the Tutte-relation weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteScalars {
    pub x: BigRational,
    pub y: BigRational,
    pub p: BigRational,
    pub q: BigRational,
}

impl TutteScalars {
    pub fn from_integers(x: i64, y: i64, p: i64, q: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        TutteScalars {
            x: r(x),
            y: r(y),
            p: r(p),
            q: r(q),
        }
    }

    fn as_array(&self) -> [&BigRational; 4] {
        [&self.x, &self.y, &self.p, &self.q]
    }
}

/// Coefficients of `(x, y, p, q)` in the relation for `triple` at `z^k`.
fn relation_row(triple: &TutteTriple, k: u32) -> [BigRational; 4] {
    let c = |p: &IntPolynomial| BigRational::from_integer(p.coeff(k));
    let zero = BigRational::zero;
    match triple.case {
        TutteCase::Loop => [c(&triple.deletion), zero(), zero(), zero()],
        TutteCase::Coloop => [zero(), c(&triple.contraction), zero(), zero()],
        TutteCase::Ordinary => [zero(), zero(), c(&triple.deletion), c(&triple.contraction)],
    }
}

fn exponents(triples: &[TutteTriple]) -> Vec<u32> {
    let mut ks: Vec<u32> = triples
        .iter()
        .flat_map(|t| [&t.whole, &t.deletion, &t.contraction])
        .flat_map(|p| p.terms().map(|(k, _)| k))
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// Whether every relation holds for the given scalars:
/// `f(D) = x f(D\e)` for a loop, `y f(D/e)` for a coloop, and
/// `p f(D\e) + q f(D/e)` otherwise.
pub fn tutte_consistent(triples: &[TutteTriple], s: &TutteScalars) -> bool {
    let ks = exponents(triples);
    triples.iter().all(|t| {
        ks.iter().all(|&k| {
            let rhs: BigRational = relation_row(t, k)
                .iter()
                .zip(s.as_array())
                .map(|(c, v)| c * v)
                .sum();
            rhs == BigRational::from_integer(t.whole.coeff(k))
        })
    })
}

/// Decides whether some rational `(x, y, p, q)` satisfies all relations at
/// once, by exact Gaussian elimination on the coefficient equations.
/// Returns a solution (free weights set to zero) or `None`.
pub fn tutte_solve(triples: &[TutteTriple]) -> Option<TutteScalars> {
    let mut rows: Vec<[BigRational; 5]> = Vec::new();
    for k in exponents(triples) {
        for t in triples {
            let [a, b, c, d] = relation_row(t, k);
            rows.push([a, b, c, d, BigRational::from_integer(t.whole.coeff(k))]);
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[4].is_zero()) {
        return None;
    }
    let mut sol: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][4].clone();
    }
    let [x, y, p, q] = sol;
    Some(TutteScalars { x, y, p, q })
}
