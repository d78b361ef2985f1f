//! Exact computations in affine quantum Schur algebras, extended affine Hecke
//! algebras and Ringel–Hall algebras of cyclic quivers.
//!
//! The crate is layered bottom-up:
//!
//! * [`laurent`]: exact arithmetic in `Z[v, v^-1]` and `Z[q]`.
//! * [`affweyl`]: the extended affine symmetric group, Bruhat order, Young
//!   subgroups, double cosets and the bijection between double cosets and
//!   periodic matrices.
//! * [`matrix`]: periodic `Z x Z` matrices and their combinatorics.
//! * [`hecke`]: the extended affine Hecke algebra, its bar involution and
//!   Kazhdan–Lusztig polynomials.
//! * [`schur`]: the affine quantum Schur algebra, its canonical basis and
//!   structure constants.
//! * [`hall`]: nilpotent representations of the cyclic quiver and Hall
//!   polynomials by finite-field counting.
//! * [`transfer`]: maps between Schur algebras of different sizes and the
//!   structure-constant reductions built on them.
//! * [`workspace`]: shared caches and size caps for multi-algebra work.
//! * [`verify`]: reusable property checks returning machine-readable reports.
//! * [`cli`]: the command layer behind the `affschur` binary.

pub mod cli;
pub mod laurent;

pub use laurent::{IntPoly, LaurentError, LaurentPoly};
pub mod affweyl;
pub mod hall;
pub mod hecke;
pub mod matrix;
pub mod schur;
pub mod transfer;
pub mod verify;
pub mod workspace;

pub use affweyl::{AffPerm, Composition};
pub use matrix::AffMatrix;
