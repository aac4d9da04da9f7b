//! Row reduction and nullspace bases over the prime field `F_p`.

use crate::error::{Error, Result};
use crate::lifting::GeneratingSet;
use crate::matrix::{MatModK, VecModK};
use crate::residue_ring::{inv_mod, mul_mod, neg_mod, sub_mod};

/// Reduced row echelon form: unit pivots, pivot columns otherwise zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub reduced: MatModK,
    /// Strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RrefResult {
    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivots.iter().peekable();
        (0..self.reduced.cols())
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

/// Gauss-Jordan elimination over `F_p`. Scans columns left to right and
/// takes the topmost nonzero entry at or below the current row as pivot.
pub fn rref_mod_p(m: &MatModK) -> Result<RrefResult> {
    let p = m.modulus().k();
    if !m.modulus().is_prime() {
        return Err(Error::CompositeModulus(p));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.entries().to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if found != r {
            for j in 0..cols {
                a.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p).expect("nonzero elements of F_p are units");
        for x in &mut a[r * cols + c..(r + 1) * cols] {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            let factor = a[i * cols + c];
            if i != r && factor != 0 {
                for j in c..cols {
                    let s = mul_mod(factor, a[r * cols + j], p);
                    a[i * cols + j] = sub_mod(a[i * cols + j], s, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Ok(RrefResult {
        reduced: MatModK::from_canonical(rows, cols, a, m.modulus()),
        pivots,
        rank,
    })
}

/// Basis of `{v : M v = 0}` over `F_p`, one vector per free column in
/// ascending order: `v[f] = 1`, `v[pivot_i] = -R[i][f]`, zero elsewhere.
pub fn nullspace_basis_mod_p(m: &MatModK) -> Result<GeneratingSet> {
    let rref = rref_mod_p(m)?;
    let p = m.modulus().k();
    let n = m.cols();
    let vectors = rref
        .free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &pc) in rref.pivots.iter().enumerate() {
                v[pc] = neg_mod(rref.reduced.get(i, f), p);
            }
            VecModK::from_canonical(v, m.modulus())
        })
        .collect();
    GeneratingSet::new(n, m.modulus(), vectors)
}
