//! Exact computation with set systems and delta-matroids.
//!
//! The crate covers twists and widths of set systems, the twist polynomial
//! `Σ_{A ⊆ E} z^{w(D*A)}`, the handle-slide and exchange-of-ends moves, the
//! four-term relation they generate, binary delta-matroids `D(C)` built
//! from symmetric GF(2) matrices, and the delta-matroids of ribbon graphs
//! obtained from their spanning quasi-trees.
//!
//! ```
//! use twistpoly::{four_term_report, twist_polynomial, MovePair, SetSystem};
//!
//! let d: SetSystem = "ground: a b c\nfeasible: {}; {b,c}".parse().unwrap();
//! assert_eq!(twist_polynomial(&d).to_string(), "4z^2+4");
//!
//! let m = MovePair::new(d.ground(), "a", "b").unwrap();
//! assert!(four_term_report(&d, m).unwrap().defect.is_zero());
//! ```

pub mod corpus;
pub mod error;
pub mod gf2;
pub mod io;
pub mod moves;
pub mod polynomial;
pub mod ribbon;
pub mod setsystem;
pub mod sweep;
pub mod weight;

pub use error::{Error, Result};
pub use gf2::{
    binary_witness, from_matrix, gf2_is_nonsingular, is_binary, BinaryWitness, Gf2SymMatrix,
};
pub use io::parse_set_system;
pub use moves::{exchange_ends, handle_slide, slide_exchange, MovePair};
pub use polynomial::IntPolynomial;
pub use ribbon::{Bouquet, FlagSystem, RibbonGraph};
pub use setsystem::{Element, GroundSet, SetSystem, SubsetMask, WidthReport, MAX_GROUND};
pub use weight::{
    four_term_report, quadrant_equalities, quadrant_mismatch, quadrant_polynomial, tutte_check,
    tutte_consistent, tutte_solve, twist_polynomial, FourTermReport, QuadrantSelector, TutteCase,
    TutteScalars, TutteTriple,
};
