//! Exhaustive verification sweeps. Each sweep enumerates a corpus, checks
//! one property on every instance in parallel, and reports counts plus any
//! counterexample in a form the command line can read back.

use std::fmt;

use rayon::prelude::*;

use crate::corpus;
use crate::error::{Error, Result};
use crate::gf2::{from_matrix, is_binary, Gf2SymMatrix};
use crate::moves::{exchange_ends, handle_slide, slide_exchange, MovePair};
use crate::ribbon::{partial_dual_polynomial, PolynomialMode, RibbonGraph};
use crate::setsystem::SetSystem;
use crate::weight::{four_term_report, quadrant_mismatch};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    FourTerm,
    Quadrants,
    Involutions,
    BinaryClosure,
    RibbonLemma,
}

impl SweepKind {
    pub const ALL: [SweepKind; 5] = [
        SweepKind::FourTerm,
        SweepKind::Quadrants,
        SweepKind::Involutions,
        SweepKind::BinaryClosure,
        SweepKind::RibbonLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::FourTerm => "four-term",
            SweepKind::Quadrants => "quadrants",
            SweepKind::Involutions => "involutions",
            SweepKind::BinaryClosure => "binary-closure",
            SweepKind::RibbonLemma => "ribbon-lemma",
        }
    }

    /// Largest admissible size parameter.
    pub fn bound(self) -> usize {
        match self {
            SweepKind::FourTerm | SweepKind::Quadrants | SweepKind::Involutions => {
                corpus::MAX_EXHAUSTIVE
            }
            SweepKind::BinaryClosure => 5,
            SweepKind::RibbonLemma => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub size: usize,
    /// Number of instances (systems, matrices or graphs) enumerated.
    pub instances: usize,
    /// Number of individual checks, e.g. instances × ordered pairs.
    pub checks: usize,
    pub summary: String,
    /// Failing instances in the input text format.
    pub counterexamples: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary)?;
        for c in &self.counterexamples {
            write!(f, "\n\ncounterexample:\n{c}")?;
        }
        Ok(())
    }
}

fn pair_text(d: &SetSystem, m: MovePair) -> String {
    format!(
        "{d}\npair: {} {}",
        d.ground().label(m.a),
        d.ground().label(m.b)
    )
}

/// Runs `check` on every (system, ordered pair) of the size-`n` corpus.
fn system_sweep(
    n: usize,
    check: impl Fn(&SetSystem, MovePair) -> Result<bool> + Sync,
) -> Result<(usize, usize, Vec<String>)> {
    let systems: Vec<SetSystem> = corpus::all_set_systems(n)?.collect();
    let pairs: Vec<MovePair> = MovePair::all(n).collect();
    let failures: Vec<Vec<String>> = systems
        .par_iter()
        .map(|d| {
            pairs
                .iter()
                .filter_map(|&m| match check(d, m) {
                    Ok(true) => None,
                    Ok(false) => Some(Ok(pair_text(d, m))),
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok((
        systems.len(),
        pairs.len(),
        failures.into_iter().flatten().collect(),
    ))
}

pub fn run_sweep(kind: SweepKind, n: usize) -> Result<SweepReport> {
    if n > kind.bound() {
        return Err(Error::GroundTooLarge {
            size: n,
            bound: kind.bound(),
        });
    }
    let (instances, per, counterexamples, what, ok, bad) = match kind {
        SweepKind::FourTerm => {
            let (s, p, c) = system_sweep(n, |d, m| Ok(four_term_report(d, m)?.holds()))?;
            (s, p, c, "systems", "all defects zero", "nonzero defects")
        }
        SweepKind::Quadrants => {
            let (s, p, c) = system_sweep(n, |d, m| Ok(quadrant_mismatch(d, m)?.is_none()))?;
            (
                s,
                p,
                c,
                "systems",
                "all quadrant width equalities hold",
                "quadrant mismatches",
            )
        }
        SweepKind::Involutions => {
            let (s, p, c) = system_sweep(n, |d, m| {
                let slid = handle_slide(d, m)?;
                let exchanged = exchange_ends(d, m)?;
                let closed = slide_exchange(d, m)?;
                Ok(handle_slide(&slid, m)? == *d
                    && exchange_ends(&exchanged, m)? == *d
                    && exchange_ends(&slid, m)? == closed
                    && handle_slide(&exchanged, m)? == closed)
            })?;
            (
                s,
                p,
                c,
                "systems",
                "both moves are involutions and commute with the closed formula",
                "failures",
            )
        }
        SweepKind::BinaryClosure => {
            let ground = corpus::letters(n);
            let matrices: Vec<Gf2SymMatrix> = Gf2SymMatrix::all(n).collect();
            let pairs: Vec<MovePair> = MovePair::all(n).collect();
            let failures: Vec<Vec<String>> = matrices
                .par_iter()
                .map(|c| {
                    let d = from_matrix(&ground, c)?;
                    let mut bad = Vec::new();
                    for &m in &pairs {
                        if !is_binary(&handle_slide(&d, m)?)? || !is_binary(&exchange_ends(&d, m)?)?
                        {
                            bad.push(format!(
                                "{c}\npair: {} {}",
                                ground.label(m.a),
                                ground.label(m.b)
                            ));
                        }
                    }
                    Ok(bad)
                })
                .collect::<Result<_>>()?;
            let c = failures.into_iter().flatten().collect();
            (
                matrices.len(),
                pairs.len(),
                c,
                "symmetric matrices",
                "all moved systems binary",
                "non-binary results",
            )
        }
        SweepKind::RibbonLemma => {
            let graphs: Vec<RibbonGraph> = (0..=n)
                .flat_map(corpus::all_connected_ribbon_graphs)
                .collect();
            let failures: Vec<Option<String>> = graphs
                .par_iter()
                .map(|g| {
                    let direct = partial_dual_polynomial(g, PolynomialMode::Direct)?;
                    let via = partial_dual_polynomial(g, PolynomialMode::ViaDeltaMatroid)?;
                    Ok((direct != via).then(|| g.to_string()))
                })
                .collect::<Result<_>>()?;
            let c: Vec<String> = failures.into_iter().flatten().collect();
            let summary = if c.is_empty() {
                format!(
                    "{} connected ribbon graphs with ≤ {n} edges: direct and delta-matroid partial-dual polynomials agree",
                    graphs.len()
                )
            } else {
                format!(
                    "{} connected ribbon graphs with ≤ {n} edges: {} disagreements",
                    graphs.len(),
                    c.len()
                )
            };
            return Ok(SweepReport {
                kind,
                size: n,
                instances: graphs.len(),
                checks: graphs.len(),
                summary,
                counterexamples: c,
            });
        }
    };
    let summary = if counterexamples.is_empty() {
        format!("{instances} {what} × {per} ordered pairs: {ok}")
    } else {
        format!(
            "{instances} {what} × {per} ordered pairs: {} {bad}",
            counterexamples.len()
        )
    };
    Ok(SweepReport {
        kind,
        size: n,
        instances,
        checks: instances * per,
        summary,
        counterexamples,
    })
}
