//! Dense matrices and vectors over `Z/kZ`.
//!
//! Determinant and inverse are computed separately modulo every prime-power
//! factor `p^e` of `k` and recombined with the CRT. Modulo `p^e` the
//! elimination pivots on an entry of minimal `p`-adic valuation, so every row
//! operation is exact in the ring and no zero divisor is ever inverted.

use std::fmt;

use crate::error::{Error, Result};
use crate::residue_ring::{
    add_mod, crt_reconstruct, crt_term, gcd, inv_mod, mul_mod, neg_mod, sub_mod, valuation,
    Modulus, Residue,
};

/// Row-major matrix with canonical entries in `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatModK {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    modulus: Modulus,
}

/// Vector with canonical entries in `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VecModK {
    data: Vec<u64>,
    modulus: Modulus,
}

impl VecModK {
    pub fn from_i64(entries: &[i64], modulus: &Modulus) -> Self {
        Self {
            data: entries.iter().map(|&x| modulus.reduce(x)).collect(),
            modulus: modulus.clone(),
        }
    }

    /// Reduces arbitrary unsigned entries modulo `k`.
    pub fn from_u64(entries: &[u64], modulus: &Modulus) -> Self {
        Self {
            data: entries.iter().map(|&x| x % modulus.k()).collect(),
            modulus: modulus.clone(),
        }
    }

    pub fn zeros(dim: usize, modulus: &Modulus) -> Self {
        Self {
            data: vec![0; dim],
            modulus: modulus.clone(),
        }
    }

    /// The unit vector `e_index` scaled by `scale`.
    pub fn unit(dim: usize, index: usize, scale: u64, modulus: &Modulus) -> Self {
        let mut v = Self::zeros(dim, modulus);
        v.data[index] = scale % modulus.k();
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: u64) -> Self {
        let k = self.modulus.k();
        Self {
            data: self.data.iter().map(|&x| mul_mod(x, c, k)).collect(),
            modulus: self.modulus.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_modulus(&self.modulus, &other.modulus)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector add {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        let k = self.modulus.k();
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add_mod(a, b, k))
                .collect(),
            modulus: self.modulus.clone(),
        })
    }

    /// Reduces to a modulus dividing the current one.
    pub fn reduce_to(&self, target: &Modulus) -> Result<Self> {
        check_divides(target, &self.modulus)?;
        Ok(Self::from_u64(&self.data, target))
    }

    /// Reinterprets the representatives under another modulus; they must
    /// already be canonical there.
    pub(crate) fn with_modulus(&self, target: &Modulus) -> Self {
        debug_assert!(self.data.iter().all(|&x| x < target.k()));
        Self {
            data: self.data.clone(),
            modulus: target.clone(),
        }
    }

    pub(crate) fn from_canonical(data: Vec<u64>, modulus: &Modulus) -> Self {
        debug_assert!(data.iter().all(|&x| x < modulus.k()));
        Self {
            data,
            modulus: modulus.clone(),
        }
    }
}

impl fmt::Display for VecModK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl MatModK {
    /// Entry-wise canonical reduction of a signed integer matrix.
    pub fn from_rows(rows: &[Vec<i64>], modulus: &Modulus) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: {} vs {}",
                bad.len(),
                cols
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| modulus.reduce(x)).collect(),
            modulus: modulus.clone(),
        })
    }

    /// Builds from row-major unsigned entries, reducing each modulo `k`.
    pub fn from_u64(rows: usize, cols: usize, data: &[u64], modulus: &Modulus) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            data: data.iter().map(|&x| x % modulus.k()).collect(),
            modulus: modulus.clone(),
        })
    }

    pub fn zeros(rows: usize, cols: usize, modulus: &Modulus) -> Result<Self> {
        Self::from_u64(rows, cols, &vec![0; rows * cols], modulus)
    }

    pub fn identity(n: usize, modulus: &Modulus) -> Result<Self> {
        let mut m = Self::zeros(n, n, modulus)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus.k();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> VecModK {
        VecModK::from_canonical(
            (0..self.rows).map(|i| self.get(i, j)).collect(),
            &self.modulus,
        )
    }

    /// Row-major view of the entries.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reduces every entry to a modulus dividing the current one.
    pub fn reduce_to(&self, target: &Modulus) -> Result<Self> {
        check_divides(target, &self.modulus)?;
        Self::from_u64(self.rows, self.cols, &self.data, target)
    }

    pub(crate) fn from_canonical(
        rows: usize,
        cols: usize,
        data: Vec<u64>,
        modulus: &Modulus,
    ) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < modulus.k()));
        Self {
            rows,
            cols,
            data,
            modulus: modulus.clone(),
        }
    }

    /// Zero-pads `A` and `y` to a square `max(m, n)` system. Extra rows are
    /// `0 = 0`; extra columns are unconstrained variables, so projecting onto
    /// the original coordinates recovers the original solution set.
    pub fn pad_square(&self, y: &VecModK) -> Result<(MatModK, VecModK)> {
        check_modulus(&self.modulus, &y.modulus)?;
        if y.dim() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix with right-hand side of length {}",
                self.rows,
                self.cols,
                y.dim()
            )));
        }
        let s = self.rows.max(self.cols);
        let mut data = vec![0; s * s];
        for i in 0..self.rows {
            data[i * s..i * s + self.cols].copy_from_slice(self.row(i));
        }
        let mut rhs = y.data.clone();
        rhs.resize(s, 0);
        Ok((
            Self::from_canonical(s, s, data, &self.modulus),
            VecModK::from_canonical(rhs, &self.modulus),
        ))
    }

    pub fn mat_mul(&self, other: &MatModK) -> Result<MatModK> {
        check_modulus(&self.modulus, &other.modulus)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = self.modulus.k();
        let mut data = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                data[i * other.cols + j] = (0..self.cols).fold(0, |acc, l| {
                    add_mod(acc, mul_mod(self.get(i, l), other.get(l, j), k), k)
                });
            }
        }
        Ok(Self::from_canonical(
            self.rows,
            other.cols,
            data,
            &self.modulus,
        ))
    }

    pub fn mat_vec_mul(&self, v: &VecModK) -> Result<VecModK> {
        check_modulus(&self.modulus, &v.modulus)?;
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(VecModK::from_canonical(
            (0..self.rows)
                .map(|i| dot_mod(self.row(i), &v.data, self.modulus.k()))
                .collect(),
            &self.modulus,
        ))
    }

    pub fn determinant_mod_k(&self) -> Result<Residue> {
        self.require_square()?;
        let parts: Vec<(u64, u64)> = self
            .modulus
            .factors()
            .iter()
            .map(|f| {
                let q = f.q();
                let local: Vec<u64> = self.data.iter().map(|&x| x % q).collect();
                (det_prime_power(local, self.rows, f.p, q), q)
            })
            .collect();
        crt_reconstruct(&parts, &self.modulus)
    }

    /// Inverse modulo `k`; exists iff the determinant is a unit.
    pub fn inverse_mod_k(&self) -> Result<MatModK> {
        let det = self.determinant_mod_k()?;
        let k = self.modulus.k();
        if gcd(det.value(), k) != 1 {
            return Err(Error::NotInvertible {
                det: det.value(),
                modulus: k,
            });
        }
        let n = self.rows;
        let mut data = vec![0u64; n * n];
        for f in self.modulus.factors() {
            let q = f.q();
            let local: Vec<u64> = self.data.iter().map(|&x| x % q).collect();
            let inv = inverse_prime_power(local, n, f.p, q)
                .expect("unit determinant implies an invertible reduction");
            for (acc, x) in data.iter_mut().zip(inv) {
                *acc = add_mod(*acc, crt_term(x, q, k), k);
            }
        }
        Ok(Self::from_canonical(n, n, data, &self.modulus))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl fmt::Display for MatModK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn dot_mod(a: &[u64], b: &[u64], k: u64) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y, k), k))
}

pub(crate) fn check_modulus(a: &Modulus, b: &Modulus) -> Result<()> {
    if a.k() == b.k() {
        Ok(())
    } else {
        Err(Error::ModulusMismatch {
            left: a.k(),
            right: b.k(),
        })
    }
}

fn check_divides(target: &Modulus, source: &Modulus) -> Result<()> {
    if source.divides(target.k()) {
        Ok(())
    } else {
        Err(Error::NotADivisor(target.k(), source.k()))
    }
}

/// Subtracts `factor * row[src]` from `row[dst]` over columns `from..`.
fn row_axpy(data: &mut [u64], n: usize, dst: usize, src: usize, factor: u64, from: usize, q: u64) {
    for c in from..n {
        let s = mul_mod(factor, data[src * n + c], q);
        data[dst * n + c] = sub_mod(data[dst * n + c], s, q);
    }
}

fn swap_rows(data: &mut [u64], n: usize, a: usize, b: usize) {
    if a != b {
        for c in 0..n {
            data.swap(a * n + c, b * n + c);
        }
    }
}

/// Determinant modulo `q = p^e` by triangularisation with minimal-valuation
/// pivots: every entry below the pivot is then a multiple of the pivot's
/// `p`-power, so it can be cleared by a determinant-preserving row operation.
fn det_prime_power(mut data: Vec<u64>, n: usize, p: u64, q: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..n {
        let pivot = (c..n)
            .filter(|&r| data[r * n + c] != 0)
            .min_by_key(|&r| valuation(data[r * n + c], p));
        let Some(r) = pivot else {
            return 0;
        };
        if r != c {
            swap_rows(&mut data, n, r, c);
            det = neg_mod(det, q);
        }
        let pv = data[c * n + c];
        let v = valuation(pv, p);
        let scale = p.pow(v);
        let unit_inv = inv_mod((pv / scale) % q, q).expect("p-free part is a unit");
        for r in c + 1..n {
            let a = data[r * n + c];
            if a != 0 {
                let factor = mul_mod(a / scale, unit_inv, q);
                row_axpy(&mut data, n, r, c, factor, c, q);
                debug_assert_eq!(data[r * n + c], 0);
            }
        }
        det = mul_mod(det, pv, q);
    }
    det
}

/// Gauss-Jordan on `[A | I]` modulo `q = p^e` with unit pivots. `None` when
/// some column has no unit pivot, i.e. `A` is singular modulo `p`.
fn inverse_prime_power(mut a: Vec<u64>, n: usize, p: u64, q: u64) -> Option<Vec<u64>> {
    let w = 2 * n;
    let mut aug = vec![0u64; n * w];
    for i in 0..n {
        aug[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        aug[i * w + n + i] = 1 % q;
    }
    a.clear();
    for c in 0..n {
        let r = (c..n).find(|&r| !aug[r * w + c].is_multiple_of(p))?;
        swap_rows(&mut aug, w, r, c);
        let inv = inv_mod(aug[c * w + c], q).ok()?;
        for x in &mut aug[c * w..(c + 1) * w] {
            *x = mul_mod(*x, inv, q);
        }
        for r in 0..n {
            let factor = aug[r * w + c];
            if r != c && factor != 0 {
                row_axpy(&mut aug, w, r, c, factor, 0, q);
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|i| aug[i * w + n..(i + 1) * w].to_vec())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::determinant_by_permutations;
    use proptest::prelude::*;

    fn m(k: u64) -> Modulus {
        Modulus::new(k).unwrap()
    }

    fn mat(rows: &[Vec<i64>], k: u64) -> MatModK {
        MatModK::from_rows(rows, &m(k)).unwrap()
    }

    #[test]
    fn reduce_entries_examples() {
        assert_eq!(mat(&[vec![5]], 3).to_rows(), vec![vec![2]]);
        assert_eq!(mat(&[vec![-1]], 4).to_rows(), vec![vec![3]]);
        assert_eq!(
            mat(&[vec![7, 8], vec![9, 10]], 7).to_rows(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(MatModK::from_rows(&[], &m(3)), Err(Error::EmptyMatrix));
        assert!(matches!(
            MatModK::from_rows(&[vec![1, 2], vec![3]], &m(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn pad_square_examples() {
        let k = m(5);
        let (a, y) = mat(&[vec![1, 1]], 5)
            .pad_square(&VecModK::from_i64(&[0], &k))
            .unwrap();
        assert_eq!(a.to_rows(), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(y.entries(), &[0, 0]);

        let sq = mat(&[vec![1, 2], vec![3, 4]], 5);
        let y0 = VecModK::from_i64(&[1, 2], &k);
        assert_eq!(sq.pad_square(&y0).unwrap(), (sq.clone(), y0));

        let (a, y) = mat(&[vec![1], vec![1]], 5)
            .pad_square(&VecModK::from_i64(&[1, 1], &k))
            .unwrap();
        assert_eq!(a.to_rows(), vec![vec![1, 0], vec![1, 0]]);
        assert_eq!(y.entries(), &[1, 1]);

        assert!(sq.pad_square(&VecModK::from_i64(&[1], &k)).is_err());
    }

    #[test]
    fn mat_mul_examples() {
        let a = mat(&[vec![1, 1], vec![0, 1]], 2);
        assert_eq!(
            a.mat_mul(&a).unwrap().to_rows(),
            vec![vec![1, 0], vec![0, 1]]
        );
        let b = mat(&[vec![3, 4, 5], vec![1, 0, 2]], 6);
        assert_eq!(b.mat_mul(&MatModK::identity(3, &m(6)).unwrap()).unwrap(), b);
        let z = MatModK::zeros(3, 2, &m(6)).unwrap();
        assert_eq!(b.mat_mul(&z).unwrap(), MatModK::zeros(2, 2, &m(6)).unwrap());
        assert!(b.mat_mul(&b).is_err());
        assert!(matches!(
            b.mat_mul(&MatModK::identity(3, &m(7)).unwrap()),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn determinant_examples() {
        for k in [2, 6, 12] {
            let i = MatModK::identity(3, &m(k)).unwrap();
            assert_eq!(i.determinant_mod_k().unwrap().value(), 1);
        }
        assert_eq!(
            mat(&[vec![2, 1], vec![1, 2]], 3)
                .determinant_mod_k()
                .unwrap()
                .value(),
            0
        );
        assert_eq!(mat(&[vec![5]], 6).determinant_mod_k().unwrap().value(), 5);
        assert_eq!(
            mat(&[vec![1, 2]], 6).determinant_mod_k(),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn determinant_with_no_unit_pivot() {
        // det = 4 - 9 = -5 = 1 (mod 6) although no entry is a unit mod 6.
        let a = mat(&[vec![2, 3], vec![3, 2]], 6);
        assert_eq!(a.determinant_mod_k().unwrap().value(), 1);
        let inv = a.inverse_mod_k().unwrap();
        assert_eq!(
            a.mat_mul(&inv).unwrap(),
            MatModK::identity(2, &m(6)).unwrap()
        );
    }

    #[test]
    fn inverse_examples() {
        for k in [2, 5, 9, 12] {
            let i = MatModK::identity(2, &m(k)).unwrap();
            assert_eq!(i.inverse_mod_k().unwrap(), i);
            let a = mat(&[vec![1, 1], vec![0, 1]], k);
            assert_eq!(
                a.inverse_mod_k().unwrap().to_rows(),
                vec![vec![1, k - 1], vec![0, 1]]
            );
        }
        assert_eq!(
            mat(&[vec![2]], 4).inverse_mod_k(),
            Err(Error::NotInvertible { det: 2, modulus: 4 })
        );
    }

    #[test]
    fn inverse_exists_iff_unit_determinant_2x2() {
        for k in [2u64, 3, 4] {
            let modulus = m(k);
            for code in 0..k.pow(4) {
                let entries: Vec<u64> = (0..4).map(|i| code / k.pow(i) % k).collect();
                let a = MatModK::from_u64(2, 2, &entries, &modulus).unwrap();
                let det = a.determinant_mod_k().unwrap();
                match a.inverse_mod_k() {
                    Ok(inv) => {
                        assert!(det.is_unit());
                        let id = MatModK::identity(2, &modulus).unwrap();
                        assert_eq!(a.mat_mul(&inv).unwrap(), id);
                        assert_eq!(inv.mat_mul(&a).unwrap(), id);
                    }
                    Err(Error::NotInvertible { det: d, .. }) => {
                        assert!(!det.is_unit());
                        assert_eq!(d, det.value());
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    fn square(max_n: usize) -> impl Strategy<Value = (u64, usize, Vec<u64>)> {
        (2u64..=60, 1..=max_n)
            .prop_flat_map(|(k, n)| (Just(k), Just(n), proptest::collection::vec(0..k, n * n)))
    }

    fn triple() -> impl Strategy<Value = (u64, usize, Vec<u64>, Vec<u64>, Vec<u64>)> {
        (2u64..=60, 1usize..=4).prop_flat_map(|(k, n)| {
            let v = || proptest::collection::vec(0..k, n * n);
            (Just(k), Just(n), v(), v(), v())
        })
    }

    proptest! {
        #[test]
        fn mat_mul_associative_and_distributive((k, n, a, b, c) in triple()) {
            let k = m(k);
            let a = MatModK::from_u64(n, n, &a, &k).unwrap();
            let b = MatModK::from_u64(n, n, &b, &k).unwrap();
            let c = MatModK::from_u64(n, n, &c, &k).unwrap();
            prop_assert_eq!(
                a.mat_mul(&b).unwrap().mat_mul(&c).unwrap(),
                a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap()
            );
            let sum = |x: &MatModK, y: &MatModK| {
                let data: Vec<u64> = x.entries().iter().zip(y.entries())
                    .map(|(&s, &t)| add_mod(s, t, k.k())).collect();
                MatModK::from_u64(n, n, &data, &k).unwrap()
            };
            prop_assert_eq!(
                a.mat_mul(&sum(&b, &c)).unwrap(),
                sum(&a.mat_mul(&b).unwrap(), &a.mat_mul(&c).unwrap())
            );
        }

        #[test]
        fn determinant_is_multiplicative((k, n, a, b, _c) in triple()) {
            let k = m(k);
            let a = MatModK::from_u64(n, n, &a, &k).unwrap();
            let b = MatModK::from_u64(n, n, &b, &k).unwrap();
            let lhs = a.mat_mul(&b).unwrap().determinant_mod_k().unwrap().value();
            let rhs = mul_mod(
                a.determinant_mod_k().unwrap().value(),
                b.determinant_mod_k().unwrap().value(),
                k.k(),
            );
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn determinant_matches_permutation_expansion((k, n, a) in square(4)) {
            let a = MatModK::from_u64(n, n, &a, &m(k)).unwrap();
            prop_assert_eq!(
                a.determinant_mod_k().unwrap(),
                determinant_by_permutations(&a).unwrap()
            );
        }

        #[test]
        fn inverse_round_trips((k, n, a) in square(5)) {
            let k = m(k);
            let a = MatModK::from_u64(n, n, &a, &k).unwrap();
            if let Ok(inv) = a.inverse_mod_k() {
                let id = MatModK::identity(n, &k).unwrap();
                prop_assert_eq!(a.mat_mul(&inv).unwrap(), id.clone());
                prop_assert_eq!(inv.mat_mul(&a).unwrap(), id);
            } else {
                prop_assert!(!a.determinant_mod_k().unwrap().is_unit());
            }
        }
    }
}
