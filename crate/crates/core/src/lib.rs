//! Exact lattice TQFT state sums on triangulated closed surfaces.
//!
//! The invariant `I_A(S)` of a semisimple (*-)algebra `A` is computed by
//! contracting a tensor network built on a Δ-complex triangulation of `S`.
//! For group algebras it is compared against brute-force counts of
//! homomorphisms from the surface group and against closed forms built from
//! irreducible dimensions and Frobenius–Schur indicators.

pub mod algebra;
pub mod cli;
pub mod grouptheory;
pub mod surface;
pub mod tqft;
pub mod verify;

pub use num_rational::BigRational as Rational;

/// Resource caps shared by group construction, enumeration and contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order accepted or generated.
    pub max_order: usize,
    /// Budget for brute-force enumeration steps.
    pub max_work: u64,
    /// Largest algebra dimension accepted.
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 10_000,
            max_work: 100_000_000,
            max_dim: 4_096,
        }
    }
}
