//! Nullspaces modulo a prime power `p^e` by lifting one power of `p` at a time.
//!
//! A generating set at level `t` is a list of vectors `V_1 .. V_N` (stored
//! modulo `p^e`) such that every `w` with `B w = 0 (mod p^t)` can be written
//! as `w = sum u_j V_j + p^t w'`. Any such `w` is a lift to level `t + 1`
//! exactly when `z = (u, w')` satisfies `Bbar z = 0 (mod p)` for the block
//! matrix
//!
//! ```text
//! Bbar = [ b_1 .. b_N | B_t ],   b_j = B_t V_j / p^t + Bhat_t V_j,
//! ```
//!
//! where `B = B_t + p^t Bhat_t` with `B_t` the entries reduced into `[0, p^t)`.
//! The new generators are `V z` for `z` ranging over `p e_1 .. p e_N` and a
//! basis of `Null(Bbar)` over `F_p`, giving at most `2N + n` vectors.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fp_linalg::nullspace_basis_mod_p;
use crate::matrix::{check_modulus, MatModK, VecModK};
use crate::residue_ring::{add_mod, mul_mod, Modulus};

/// An ordered list of vectors spanning a subgroup of `(Z/kZ)^n`.
///
/// Construction drops zero vectors and exact duplicates (keeping the first
/// occurrence), so the stored list never contains either.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratingSet {
    dim: usize,
    modulus: Modulus,
    vectors: Vec<VecModK>,
}

impl GeneratingSet {
    pub fn new(dim: usize, modulus: &Modulus, vectors: Vec<VecModK>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(vectors.len());
        for v in vectors {
            check_modulus(modulus, v.modulus())?;
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator of length {} in dimension {dim}",
                    v.dim()
                )));
            }
            if !v.is_zero() && seen.insert(v.entries().to_vec()) {
                kept.push(v);
            }
        }
        Ok(Self {
            dim,
            modulus: modulus.clone(),
            vectors: kept,
        })
    }

    pub fn empty(dim: usize, modulus: &Modulus) -> Self {
        Self {
            dim,
            modulus: modulus.clone(),
            vectors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VecModK> {
        self.vectors.iter()
    }

    pub fn vectors(&self) -> &[VecModK] {
        &self.vectors
    }

    pub fn as_rows(&self) -> Vec<Vec<u64>> {
        self.vectors.iter().map(|v| v.entries().to_vec()).collect()
    }
}

impl<'a> IntoIterator for &'a GeneratingSet {
    type Item = &'a VecModK;
    type IntoIter = std::slice::Iter<'a, VecModK>;

    fn into_iter(self) -> Self::IntoIter {
        self.vectors.iter()
    }
}

/// `B = low + p^t * high` entry-wise over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftDecomposition {
    /// `B_t`, entries in `[0, p^t)`, carried modulo `p^t`.
    pub low: MatModK,
    /// `Bhat_t`, entries in `[0, p^(e-t))`, carried modulo `p^(e-t)`.
    pub high: MatModK,
    pub p: u64,
    pub t: u32,
}

/// Exponent `e` with `modulus = p^e`.
fn exponent_of(modulus: &Modulus, p: u64) -> Result<u32> {
    match modulus.as_prime_power() {
        Some(f) if f.p == p => Ok(f.e),
        _ => Err(Error::NotAPrimePower {
            modulus: modulus.k(),
            p,
        }),
    }
}

fn check_level(t: u32, e: u32) -> Result<()> {
    if (1..e).contains(&t) {
        Ok(())
    } else {
        Err(Error::LevelOutOfRange { t, e })
    }
}

/// Splits `B` (modulo `p^e`) as `B_t + p^t Bhat_t` for `1 <= t < e`.
pub fn decompose(b: &MatModK, p: u64, t: u32) -> Result<LiftDecomposition> {
    let e = exponent_of(b.modulus(), p)?;
    check_level(t, e)?;
    let pt = p.pow(t);
    let low: Vec<u64> = b.entries().iter().map(|&x| x % pt).collect();
    let high: Vec<u64> = b.entries().iter().map(|&x| x / pt).collect();
    Ok(LiftDecomposition {
        low: MatModK::from_canonical(b.rows(), b.cols(), low, &Modulus::new(pt)?),
        high: MatModK::from_canonical(b.rows(), b.cols(), high, &Modulus::new(p.pow(e - t))?),
        p,
        t,
    })
}

/// Builds `Bbar = [ b_1 .. b_N | B_t ] mod p` from a level-`t` generating set.
///
/// Each `B_t V_j` must be divisible by `p^t`; a generator violating this is
/// reported as [`Error::InexactDivision`]. The quotient is only needed mod
/// `p`, so the integer product is evaluated exactly modulo `p^(t+1)`.
pub fn build_lifted_constraint(
    b: &MatModK,
    gens: &GeneratingSet,
    p: u64,
    t: u32,
) -> Result<MatModK> {
    let parts = decompose(b, p, t)?;
    check_modulus(b.modulus(), gens.modulus())?;
    if gens.dim() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "generators of length {} for a matrix with {} columns",
            gens.dim(),
            b.cols()
        )));
    }
    let pt = p.pow(t);
    let pt1 = pt * p;
    let (rows, n, count) = (b.rows(), b.cols(), gens.len());
    let width = count + n;
    let mut out = vec![0u64; rows * width];
    for (j, v) in gens.iter().enumerate() {
        let v = v.entries();
        for i in 0..rows {
            let low_row = parts.low.row(i);
            let high_row = parts.high.row(i);
            let exact = dot(low_row, v, pt1);
            if !exact.is_multiple_of(pt) {
                return Err(Error::InexactDivision { index: j, p, t });
            }
            let carry = exact / pt;
            out[i * width + j] = add_mod(carry, dot(high_row, v, p), p);
        }
    }
    for i in 0..rows {
        for (c, &x) in parts.low.row(i).iter().enumerate() {
            out[i * width + count + c] = x % p;
        }
    }
    Ok(MatModK::from_canonical(rows, width, out, &Modulus::new(p)?))
}

fn dot(a: &[u64], b: &[u64], m: u64) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x % m, y % m, m), m))
}

/// One lifting step: from generators of `Null(B) mod p^t` to generators of
/// `Null(B) mod p^(t+1)`, all represented modulo `p^e`.
pub fn lift_step(b: &MatModK, gens: &GeneratingSet, p: u64, t: u32) -> Result<GeneratingSet> {
    let bbar = build_lifted_constraint(b, gens, p, t)?;
    let basis = nullspace_basis_mod_p(&bbar)?;
    let modulus = b.modulus();
    let q = modulus.k();
    let pt = p.pow(t);
    let n = b.cols();
    let count = gens.len();

    let mut next: Vec<VecModK> = gens.iter().map(|v| v.scale(p)).collect();
    for z in basis.iter() {
        let z = z.entries();
        let mut w = vec![0u64; n];
        for (coef, v) in z[..count].iter().zip(gens.iter()) {
            if *coef != 0 {
                for (acc, &x) in w.iter_mut().zip(v.entries()) {
                    *acc = add_mod(*acc, mul_mod(*coef, x, q), q);
                }
            }
        }
        for (acc, &coef) in w.iter_mut().zip(&z[count..]) {
            *acc = add_mod(*acc, mul_mod(coef, pt, q), q);
        }
        next.push(VecModK::from_canonical(w, modulus));
    }
    GeneratingSet::new(n, modulus, next)
}

/// Generating sets for `Null(B) mod p^t` at every level `t = 1 ..= e`, where
/// `B` is carried modulo `p^e`. The last entry spans `Null(B)` in `Z/p^eZ`.
pub fn nullspace_levels(b: &MatModK, p: u64, e: u32) -> Result<Vec<GeneratingSet>> {
    let actual = exponent_of(b.modulus(), p)?;
    if actual != e {
        return Err(Error::NotAPrimePower {
            modulus: b.modulus().k(),
            p,
        });
    }
    let field = Modulus::new(p)?;
    let base = nullspace_basis_mod_p(&b.reduce_to(&field)?)?;
    let lifted: Vec<VecModK> = base.iter().map(|v| v.with_modulus(b.modulus())).collect();
    let mut levels = vec![GeneratingSet::new(b.cols(), b.modulus(), lifted)?];
    for t in 1..e {
        let next = lift_step(b, &levels[levels.len() - 1], p, t)?;
        levels.push(next);
    }
    Ok(levels)
}

/// Generating set for `{v : B v = 0 (mod p^e)}`.
pub fn nullspace_mod_prime_power(b: &MatModK, p: u64, e: u32) -> Result<GeneratingSet> {
    Ok(nullspace_levels(b, p, e)?
        .pop()
        .expect("at least the base level"))
}
