//! Exact combinatorics of signed and even-signed permutations.
//!
//! The crate is organised around a handful of representations of the
//! hyperoctahedral group `B_n` and its even-signed subgroup `D_n`:
//!
//! * [`sgnperm`]: permutations and signed permutations in window notation,
//!   with descents and inversions for the Coxeter types A, B and D, mates,
//!   smoothness and the `chi` decomposition of non-smooth elements.
//! * [`pathrep`]: East/South lattice paths, height functions and the path
//!   representation of a signed permutation.
//! * [`barred`]: simply and loosely barred permutations, the bijection `psi`
//!   onto `B_n`, and the `Theta` maps that index barred permutations by
//!   descent counts.
//! * [`threshold`]: simple graphs, the vicinal preorder, threshold graph
//!   recognition and the correspondences between threshold graphs, even
//!   signed permutations and barred permutations.
//! * [`eulerian`]: Eulerian numbers of types A, B, D computed both by brute
//!   force and by closed formulas, plus the identities relating them.
//! * [`posets`]: finite posets for the weak orders and for the order on
//!   threshold pairs, with lattice and isomorphism checks.
//! * [`audit`]: exhaustive round-trip audits of every bijection.
//!
//! All arithmetic is exact. Nothing in the crate uses floating point.

pub mod audit;
pub mod barred;
pub mod error;
pub mod eulerian;
pub mod pathrep;
pub mod posets;
pub mod sgnperm;
pub mod threshold;

mod text;

pub use error::{Error, Result};
pub use sgnperm::{Budget, Kind, Permutation, SignedPermutation};
