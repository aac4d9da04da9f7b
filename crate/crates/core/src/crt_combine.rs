//! Assembling a mod-`k` nullspace generating set from the prime-power factors.
//!
//! If `X_1 .. X_N` span `Null(B) mod q_j`, then the scaled vectors
//! `(k / q_j) X_i` lie in `Null(B) mod k` and vanish modulo every other
//! factor. Taken over all factors they span `Null(B) mod k`.

use crate::error::{Error, Result};
use crate::lifting::GeneratingSet;
use crate::matrix::{MatModK, VecModK};

/// Concatenates `(k / q_j) X_i` in factor order, then generator order.
///
/// `per_factor` must list `(q_j, generators mod q_j)` for exactly the
/// prime-power factors of `B`'s modulus, ascending.
pub fn combine_nullspaces(
    b: &MatModK,
    per_factor: &[(u64, GeneratingSet)],
) -> Result<GeneratingSet> {
    let modulus = b.modulus();
    let k = modulus.k();
    let factors = modulus.factors();
    if per_factor.len() != factors.len()
        || per_factor
            .iter()
            .zip(factors)
            .any(|((q, g), f)| *q != f.q() || g.modulus().k() != *q)
    {
        return Err(Error::FactorMismatch { modulus: k });
    }
    let n = b.cols();
    let mut out = Vec::new();
    for (q, gens) in per_factor {
        if gens.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "generators of length {} for {} columns",
                gens.dim(),
                n
            )));
        }
        let cofactor = k / q;
        out.extend(gens.iter().map(|v| {
            // entries < q_j, so the scaled values stay below k
            let scaled: Vec<u64> = v.entries().iter().map(|&x| x * cofactor).collect();
            VecModK::from_canonical(scaled, modulus)
        }));
    }
    GeneratingSet::new(n, modulus, out)
}
