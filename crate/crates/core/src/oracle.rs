//! Brute-force ground truth by direct enumeration of `(Z/kZ)^n`.
//!
//! Nothing here shares code paths with the elimination or lifting routines;
//! it is deliberately naive and guarded against instances larger than
//! [`ENUMERATION_LIMIT`].

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::lifting::GeneratingSet;
use crate::matrix::{MatModK, VecModK};
use crate::residue_ring::{Modulus, Residue};

/// Largest `k^n` any enumeration here will attempt.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

fn group_size(k: u64, n: usize) -> Result<u64> {
    u32::try_from(n)
        .ok()
        .and_then(|n| k.checked_pow(n))
        .filter(|&size| size <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{k}^{n} exceeds {ENUMERATION_LIMIT}")))
}

/// Every `x` in `(Z/kZ)^n` with `A x = y (mod k)`.
pub fn brute_force_solve(a: &MatModK, y: &VecModK) -> Result<BTreeSet<VecModK>> {
    let k = a.modulus().k();
    if y.dim() != a.rows() || y.modulus() != a.modulus() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system mod {k} with right-hand side of length {} mod {}",
            a.rows(),
            a.cols(),
            y.dim(),
            y.modulus()
        )));
    }
    let n = a.cols();
    let size = group_size(k, n)?;
    let mut found = BTreeSet::new();
    let mut x = vec![0u64; n];
    for _ in 0..size {
        let satisfied = (0..a.rows()).all(|i| {
            let lhs: u128 = a
                .row(i)
                .iter()
                .zip(&x)
                .map(|(&c, &v)| c as u128 * v as u128 % k as u128)
                .sum();
            (lhs % k as u128) as u64 == y.entries()[i]
        });
        if satisfied {
            found.insert(VecModK::from_u64(&x, a.modulus()));
        }
        // odometer increment
        for digit in x.iter_mut() {
            *digit += 1;
            if *digit < k {
                break;
            }
            *digit = 0;
        }
    }
    Ok(found)
}

/// The subgroup `{sum c_i g_i mod k}` generated by `gens`, found by a
/// worklist closure under adding a generator, starting from zero.
pub fn subgroup_closure(gens: &GeneratingSet) -> Result<BTreeSet<VecModK>> {
    let modulus = gens.modulus();
    let k = modulus.k();
    let n = gens.dim();
    group_size(k, n)?;
    let zero = vec![0u64; n];
    let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(current) = queue.pop_front() {
        for g in gens {
            let next: Vec<u64> = current
                .iter()
                .zip(g.entries())
                .map(|(&a, &b)| ((a as u128 + b as u128) % k as u128) as u64)
                .collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|v| VecModK::from_u64(&v, modulus))
        .collect())
}

/// Whether two generating sets span the same subgroup.
pub fn spans_same(a: &GeneratingSet, b: &GeneratingSet) -> Result<bool> {
    if a.dim() != b.dim() || a.modulus() != b.modulus() {
        return Err(Error::DimensionMismatch(format!(
            "dimension {} mod {} vs dimension {} mod {}",
            a.dim(),
            a.modulus(),
            b.dim(),
            b.modulus()
        )));
    }
    Ok(subgroup_closure(a)? == subgroup_closure(b)?)
}

/// Leibniz expansion `sum_sigma sgn(sigma) prod_i A[i, sigma(i)]` mod `k`.
/// Limited to `n <= 8`.
pub fn determinant_by_permutations(a: &MatModK) -> Result<Residue> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > 8 {
        return Err(Error::TooLarge(format!("{n}! permutations")));
    }
    let k = a.modulus().k() as i128;
    let mut total: i128 = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let term = (0..n).fold(1i128, |acc, i| acc * a.get(i, p[i]) as i128 % k);
        total = if inversions % 2 == 0 {
            (total + term) % k
        } else {
            (total - term) % k
        };
    });
    Ok(residue_of(total, a.modulus()))
}

fn residue_of(x: i128, modulus: &Modulus) -> Residue {
    let k = modulus.k() as i128;
    modulus.element(x.rem_euclid(k) as u64)
}

fn permute(perm: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == perm.len() {
        visit(perm);
        return;
    }
    for i in start..perm.len() {
        perm.swap(start, i);
        permute(perm, start + 1, visit);
        perm.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: u64) -> Modulus {
        Modulus::new(k).unwrap()
    }

    fn set(rows: &[Vec<i64>], k: u64) -> BTreeSet<VecModK> {
        rows.iter().map(|r| VecModK::from_i64(r, &m(k))).collect()
    }

    fn gens(rows: &[Vec<i64>], dim: usize, k: u64) -> GeneratingSet {
        let vs = rows.iter().map(|r| VecModK::from_i64(r, &m(k))).collect();
        GeneratingSet::new(dim, &m(k), vs).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let a = MatModK::from_rows(&[vec![2]], &m(4)).unwrap();
        let two = VecModK::from_i64(&[2], &m(4));
        assert_eq!(
            brute_force_solve(&a, &two).unwrap(),
            set(&[vec![1], vec![3]], 4)
        );
        let one = VecModK::from_i64(&[1], &m(4));
        assert!(brute_force_solve(&a, &one).unwrap().is_empty());

        let id = MatModK::identity(3, &m(5)).unwrap();
        let y = VecModK::from_i64(&[4, 0, 2], &m(5));
        assert_eq!(brute_force_solve(&id, &y).unwrap(), BTreeSet::from([y]));
    }

    #[test]
    fn brute_force_guard() {
        let a = MatModK::zeros(1, 8, &m(10)).unwrap();
        let y = VecModK::zeros(1, &m(10));
        assert!(matches!(brute_force_solve(&a, &y), Err(Error::TooLarge(_))));
        // exactly at the limit: enumerated, and 0 = 1 has no solution
        let a = MatModK::zeros(1, 7, &m(10)).unwrap();
        let one = VecModK::from_i64(&[1], &m(10));
        assert!(brute_force_solve(&a, &one).unwrap().is_empty());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            subgroup_closure(&gens(&[], 2, 7)).unwrap(),
            set(&[vec![0, 0]], 7)
        );
        assert_eq!(
            subgroup_closure(&gens(&[vec![2]], 1, 4)).unwrap(),
            set(&[vec![0], vec![2]], 4)
        );
        assert_eq!(
            subgroup_closure(&gens(&[vec![2], vec![3]], 1, 6)).unwrap(),
            set(&[vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]], 6)
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let g = gens(&[vec![2, 4], vec![6, 3]], 2, 12);
        let once = subgroup_closure(&g).unwrap();
        let again = GeneratingSet::new(2, &m(12), once.iter().cloned().collect()).unwrap();
        assert_eq!(subgroup_closure(&again).unwrap(), once);
    }

    #[test]
    fn null_set_is_subgroup() {
        let a = MatModK::from_rows(&[vec![2, 4], vec![3, 3]], &m(12)).unwrap();
        let null = brute_force_solve(&a, &VecModK::zeros(2, &m(12))).unwrap();
        for u in &null {
            for v in &null {
                assert!(null.contains(&u.add(v).unwrap()));
            }
        }
    }

    #[test]
    fn spans_same_examples() {
        assert!(spans_same(&gens(&[], 1, 5), &gens(&[vec![0]], 1, 5)).unwrap());
        assert!(spans_same(&gens(&[vec![2]], 1, 4), &gens(&[vec![2], vec![2]], 1, 4)).unwrap());
        assert!(!spans_same(&gens(&[vec![2]], 1, 4), &gens(&[vec![1]], 1, 4)).unwrap());
        assert!(spans_same(&gens(&[vec![2]], 1, 4), &gens(&[vec![2]], 1, 8)).is_err());
    }

    #[test]
    fn permutation_determinant() {
        let a = MatModK::from_rows(&[vec![2, 1], vec![1, 2]], &m(7)).unwrap();
        assert_eq!(determinant_by_permutations(&a).unwrap().value(), 3);
        let a =
            MatModK::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]], &m(100)).unwrap();
        // 1(50-48) - 2(40-42) + 3(32-35) = -3
        assert_eq!(determinant_by_permutations(&a).unwrap().value(), 97);
    }
}
