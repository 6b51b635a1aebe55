//! Exact-arithmetic toolkit for lattice simplices and cyclic quotient
//! singularities.
//!
//! The crate classifies odd-dimensional lattice simplices with basic facets
//! by Cayley decomposition into lattice segments, computes h*-polynomials
//! and quotient-group structure exactly, verifies the Bernoulli/Stickelberger
//! rank and nonvanishing statements at desk scale, and classifies isolated
//! Gorenstein cyclic quotient singularities by minimal log-discrepancy.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! everywhere, cyclotomic numbers represented modulo the cyclotomic
//! polynomial so that zero tests are decisions rather than tolerances.

// index-style loops and `% == 0` mirror the matrix and divisibility math
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::manual_div_ceil)]

pub mod cayley;
pub mod charsum;
pub mod linalg;
pub mod quotsing;
pub mod simplex;
pub mod verify;

pub use cayley::{cayley_build, delta_family, scramble, verify_decomposition};
pub use cayley::{CayleyDecomposition, CayleyError, Segment, WeightVector};
pub use charsum::{
    b1, b1_chi, characters, find_pairing, stickelberger, stickelberger_rank, u_chi_in_span_check,
    u_perp_basis_check, verify_prop15, CharsumError, CyclotomicNumber, DirichletCharacter,
    GroupAlgebraVector, PairingCertificate, PairingOutcome,
};
pub use linalg::{Int, IntMatrix, Rational, SmithForm, UnimodularAffineMap};
pub use quotsing::{
    classify_singularity, verify_thm18, ClassificationVerdict, QuotsingError, SingularityType,
};
pub use simplex::{
    GroupStructure, HStarPoly, LatticeSimplex, ParPoint, Prop24Report, SimplexError,
};

/// Default cap on candidate points in bounding-box enumerations.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;
