//! Exact linear algebra over `Z/kZ` for an arbitrary modulus `k >= 2`.
//!
//! The crate decides feasibility of linear congruences `A x = y (mod k)`,
//! produces explicit solutions, and computes generating sets for nullspaces
//! of integer matrices modulo `k`. Nullspaces modulo a prime power `p^e` are
//! built by lifting a basis over `F_p` one power of `p` at a time; answers
//! for composite `k` are assembled from the prime-power factors with the
//! Chinese remainder theorem.
//!
//! ```
//! use lincong::{solve, MatModK, Modulus, SolveOutcome, VecModK};
//!
//! let k = Modulus::new(6).unwrap();
//! let a = MatModK::from_rows(&[vec![4]], &k).unwrap();
//! let y = VecModK::from_i64(&[2], &k);
//! match solve(&a, &y).unwrap() {
//!     SolveOutcome::Solution(x) => assert_eq!(a.mat_vec_mul(&x).unwrap(), y),
//!     SolveOutcome::Infeasible => unreachable!(),
//! }
//! ```
//!
//! Every algorithmic route has a brute-force counterpart in [`oracle`] that
//! enumerates `(Z/kZ)^n` directly, for cross-checking at small sizes.

pub mod branch_counter;
pub mod cli;
pub mod crt_combine;
mod error;
pub mod fp_linalg;
pub mod lifting;
pub mod matrix;
pub mod oracle;
pub mod residue_ring;
pub mod solver;

pub use branch_counter::LayeredProgram;
pub use crt_combine::combine_nullspaces;
pub use error::{Error, Result};
pub use fp_linalg::{nullspace_basis_mod_p, rref_mod_p, RrefResult};
pub use lifting::{
    build_lifted_constraint, decompose, lift_step, nullspace_levels, nullspace_mod_prime_power,
    GeneratingSet, LiftDecomposition,
};
pub use matrix::{MatModK, VecModK};
pub use residue_ring::{crt_reconstruct, factorize, mod_inverse, Modulus, PrimePower, Residue};
pub use solver::{
    embed_lower_modulus, feasible, nullspace, solve, solve_prime_power, SolveOutcome,
};
