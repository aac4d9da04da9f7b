//! Iterated matrix products as path counts in a layered graph.
//!
//! A nonnegative entry `M_t[u][v]` is read as that many parallel edges from
//! row-position `v` to row-position `u`. Starting at position `j` and
//! applying `M_T`, then `M_{T-1}`, down to `M_1`, the number of paths that
//! end at position `h` is exactly `(M_1 M_2 ... M_T)[h][j]`.
//!
//! Positions are zero-based.

use crate::error::{Error, Result};
use crate::matrix::MatModK;
use crate::residue_ring::{Modulus, Residue};

/// Largest total path count [`LayeredProgram::count_paths_explicit`] walks.
pub const EXPLICIT_PATH_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredProgram {
    dim: usize,
    /// `layers[t]` is `M_{t+1}`, row-major `dim x dim`.
    layers: Vec<Vec<u64>>,
}

impl LayeredProgram {
    /// Builds a program from square layers given as rows. Negative entries
    /// are rejected; reduce them modulo `k` first.
    pub fn new(layers: &[Vec<Vec<i64>>]) -> Result<Self> {
        let dim = layers
            .first()
            .map(Vec::len)
            .filter(|&d| d > 0)
            .ok_or(Error::EmptyMatrix)?;
        let mut out = Vec::with_capacity(layers.len());
        for layer in layers {
            if layer.len() != dim || layer.iter().any(|row| row.len() != dim) {
                return Err(Error::DimensionMismatch(format!(
                    "every layer must be {dim}x{dim}"
                )));
            }
            let flat = layer
                .iter()
                .flatten()
                .map(|&x| u64::try_from(x).map_err(|_| Error::NegativeEntry(x)))
                .collect::<Result<Vec<_>>>()?;
            out.push(flat);
        }
        Ok(Self { dim, layers: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// The layers as matrices modulo `k`, in product order `M_1 .. M_T`.
    pub fn matrices(&self, k: &Modulus) -> Vec<MatModK> {
        self.layers
            .iter()
            .map(|l| MatModK::from_u64(self.dim, self.dim, l, k).expect("square, nonempty"))
            .collect()
    }

    fn check_positions(&self, start: usize, end: usize) -> Result<()> {
        for index in [start, end] {
            if index >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index,
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    /// `(M_1 ... M_T)[end][start] mod k` by propagating the count vector
    /// layer by layer, starting from the unit vector at `start`.
    pub fn count_paths_entry(&self, start: usize, end: usize, k: &Modulus) -> Result<Residue> {
        self.check_positions(start, end)?;
        let n = self.dim;
        let q = k.k() as u128;
        let mut v = vec![0u128; n];
        v[start] = 1 % q;
        for layer in self.layers.iter().rev() {
            v = (0..n)
                .map(|u| {
                    (0..n).fold(0u128, |acc, w| {
                        (acc + (layer[u * n + w] as u128 % q) * v[w]) % q
                    })
                })
                .collect();
        }
        Ok(k.element(v[end] as u64))
    }

    /// The same count by walking every individual path, one parallel edge
    /// at a time. Refuses programs with more than [`EXPLICIT_PATH_LIMIT`]
    /// paths out of `start`.
    pub fn count_paths_explicit(&self, start: usize, end: usize, k: &Modulus) -> Result<Residue> {
        self.check_positions(start, end)?;
        let total = self.total_paths(start);
        if total > EXPLICIT_PATH_LIMIT {
            return Err(Error::TooLarge(format!(
                "{total} paths exceed {EXPLICIT_PATH_LIMIT}"
            )));
        }
        let mut hits = 0u64;
        self.walk(self.layers.len(), start, end, &mut hits);
        Ok(k.element(hits))
    }

    fn walk(&self, remaining: usize, position: usize, end: usize, hits: &mut u64) {
        if remaining == 0 {
            if position == end {
                *hits += 1;
            }
            return;
        }
        let n = self.dim;
        let layer = &self.layers[remaining - 1];
        for next in 0..n {
            for _edge in 0..layer[next * n + position] {
                self.walk(remaining - 1, next, end, hits);
            }
        }
    }

    /// Number of paths leaving `start`, saturating.
    fn total_paths(&self, start: usize) -> u128 {
        let n = self.dim;
        let mut v = vec![0u128; n];
        v[start] = 1;
        for layer in self.layers.iter().rev() {
            v = (0..n)
                .map(|u| {
                    (0..n).fold(0u128, |acc, w| {
                        acc.saturating_add((layer[u * n + w] as u128).saturating_mul(v[w]))
                    })
                })
                .collect();
        }
        v.iter().fold(0u128, |acc, &x| acc.saturating_add(x))
    }
}
