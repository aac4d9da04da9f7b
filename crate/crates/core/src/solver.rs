//! Feasibility, solutions and nullspaces of linear congruences modulo `k`.
//!
//! A system `A x = y (mod p^e)` is solved through the nullspace of the
//! augmented matrix `B = [A | y]`: a null vector whose last coordinate `c` is
//! a unit yields the solution `-c^-1 * (first n coordinates)`. Composite
//! moduli are handled factor by factor and recombined with the CRT.

use crate::crt_combine::combine_nullspaces;
use crate::error::{Error, Result};
use crate::lifting::{nullspace_mod_prime_power, GeneratingSet};
use crate::matrix::{check_modulus, MatModK, VecModK};
use crate::residue_ring::{crt_reconstruct, inv_mod, mul_mod, neg_mod, Modulus, PrimePower};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SolveOutcome {
    /// Satisfies `A x = y (mod k)`.
    Solution(VecModK),
    Infeasible,
}

impl SolveOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, Self::Solution(_))
    }

    pub fn solution(&self) -> Option<&VecModK> {
        match self {
            Self::Solution(x) => Some(x),
            Self::Infeasible => None,
        }
    }
}

/// Generating set for `{v : B v = 0 (mod k)}` where `k` is `B`'s modulus.
pub fn nullspace(b: &MatModK) -> Result<GeneratingSet> {
    let per_factor = b
        .modulus()
        .factors()
        .iter()
        .map(|f| {
            let local = b.reduce_to(&Modulus::new(f.q())?)?;
            Ok((f.q(), nullspace_mod_prime_power(&local, f.p, f.e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    combine_nullspaces(b, &per_factor)
}

/// Solves a square system modulo the prime power `p^e` carried by `a`.
///
/// Among the generators of `Null([A | y])` the first one whose last
/// coordinate is not divisible by `p` is used; none means no solution.
pub fn solve_prime_power(a: &MatModK, y: &VecModK, p: u64, e: u32) -> Result<SolveOutcome> {
    let modulus = a.modulus();
    if modulus.as_prime_power() != Some(PrimePower { p, e }) {
        return Err(Error::NotAPrimePower {
            modulus: modulus.k(),
            p,
        });
    }
    check_modulus(modulus, y.modulus())?;
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.cols();
    if y.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n}x{n} matrix with right-hand side of length {}",
            y.dim()
        )));
    }
    let q = modulus.k();

    // [A | y] with a zero row appended, (n+1) x (n+1)
    let w = n + 1;
    let mut data = vec![0u64; w * w];
    for i in 0..n {
        data[i * w..i * w + n].copy_from_slice(a.row(i));
        data[i * w + n] = y.entries()[i];
    }
    let augmented = MatModK::from_canonical(w, w, data, modulus);
    let gens = nullspace_mod_prime_power(&augmented, p, e)?;

    let Some(z) = gens.iter().find(|z| z.entries()[n] % p != 0) else {
        return Ok(SolveOutcome::Infeasible);
    };
    let last_inv = inv_mod(z.entries()[n], q).expect("not divisible by p");
    let alpha = neg_mod(last_inv, q);
    let x: Vec<u64> = z.entries()[..n]
        .iter()
        .map(|&c| mul_mod(alpha, c, q))
        .collect();
    Ok(SolveOutcome::Solution(VecModK::from_canonical(x, modulus)))
}

/// Solves `A x = y (mod k)` for any `m x n` system.
pub fn solve(a: &MatModK, y: &VecModK) -> Result<SolveOutcome> {
    let (sq, rhs) = a.pad_square(y)?;
    let modulus = a.modulus();
    let mut per_factor = Vec::with_capacity(modulus.factors().len());
    for f in modulus.factors() {
        let local = Modulus::new(f.q())?;
        match solve_prime_power(&sq.reduce_to(&local)?, &rhs.reduce_to(&local)?, f.p, f.e)? {
            SolveOutcome::Solution(x) => per_factor.push((f.q(), x)),
            SolveOutcome::Infeasible => return Ok(SolveOutcome::Infeasible),
        }
    }
    let x = (0..a.cols())
        .map(|i| {
            let parts: Vec<(u64, u64)> = per_factor
                .iter()
                .map(|(q, x)| (x.entries()[i], *q))
                .collect();
            crt_reconstruct(&parts, modulus).map(|r| r.value())
        })
        .collect::<Result<Vec<_>>>()?;
    let x = VecModK::from_canonical(x, modulus);
    debug_assert_eq!(a.mat_vec_mul(&x).as_ref(), Ok(y));
    Ok(SolveOutcome::Solution(x))
}

/// Whether `A x = y (mod k)` has a solution: the conjunction of
/// feasibility modulo every prime-power factor.
pub fn feasible(a: &MatModK, y: &VecModK) -> Result<bool> {
    let (sq, rhs) = a.pad_square(y)?;
    for f in a.modulus().factors() {
        let local = Modulus::new(f.q())?;
        if !solve_prime_power(&sq.reduce_to(&local)?, &rhs.reduce_to(&local)?, f.p, f.e)?
            .is_solution()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scales a system modulo `d` (a divisor of `k`, typically a prime) into an
/// equivalent system modulo `k`: `(k/d) A x = (k/d) y (mod k)` holds exactly
/// when `A x = y (mod d)`.
pub fn embed_lower_modulus(a: &MatModK, y: &VecModK, k: &Modulus) -> Result<(MatModK, VecModK)> {
    let d = a.modulus().k();
    check_modulus(a.modulus(), y.modulus())?;
    if !k.divides(d) {
        return Err(Error::NotADivisor(d, k.k()));
    }
    let c = k.k() / d;
    // entries < d, so the products stay below k
    let scaled: Vec<u64> = a.entries().iter().map(|&x| x * c).collect();
    let rhs: Vec<u64> = y.entries().iter().map(|&x| x * c).collect();
    Ok((
        MatModK::from_canonical(a.rows(), a.cols(), scaled, k),
        VecModK::from_canonical(rhs, k),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_solve;

    fn m(k: u64) -> Modulus {
        Modulus::new(k).unwrap()
    }

    fn mat(rows: &[Vec<i64>], k: u64) -> MatModK {
        MatModK::from_rows(rows, &m(k)).unwrap()
    }

    fn vec_(v: &[i64], k: u64) -> VecModK {
        VecModK::from_i64(v, &m(k))
    }

    #[test]
    fn nullspace_examples() {
        for k in [2, 6, 12, 49] {
            assert!(nullspace(&MatModK::identity(3, &m(k)).unwrap())
                .unwrap()
                .is_empty());
        }
        assert_eq!(
            nullspace(&mat(&[vec![2]], 4)).unwrap().as_rows(),
            vec![vec![2]]
        );
        assert_eq!(
            nullspace(&mat(&[vec![3]], 6)).unwrap().as_rows(),
            vec![vec![2]]
        );
    }

    #[test]
    fn solve_prime_power_examples() {
        let a = mat(&[vec![2]], 4);
        let x = solve_prime_power(&a, &vec_(&[2], 4), 2, 2).unwrap();
        let x = x.solution().expect("2x = 2 (mod 4) is feasible");
        assert!(x.entries() == [1] || x.entries() == [3]);

        assert_eq!(
            solve_prime_power(&a, &vec_(&[1], 4), 2, 2).unwrap(),
            SolveOutcome::Infeasible
        );

        let id = MatModK::identity(3, &m(27)).unwrap();
        let y = vec_(&[5, 0, 26], 27);
        assert_eq!(
            solve_prime_power(&id, &y, 3, 3).unwrap(),
            SolveOutcome::Solution(y)
        );
    }

    #[test]
    fn solve_prime_power_validates_inputs() {
        let a = mat(&[vec![1, 2]], 4);
        assert!(matches!(
            solve_prime_power(&a, &vec_(&[1], 4), 2, 2),
            Err(Error::NotSquare { .. })
        ));
        let a = mat(&[vec![1]], 6);
        assert!(solve_prime_power(&a, &vec_(&[1], 6), 2, 1).is_err());
    }

    #[test]
    fn solve_examples() {
        let a = mat(&[vec![4]], 6);
        let y = vec_(&[2], 6);
        let x = solve(&a, &y).unwrap();
        let x = x.solution().unwrap();
        assert!(x.entries() == [2] || x.entries() == [5]);
        assert_eq!(a.mat_vec_mul(x).unwrap(), y);

        assert_eq!(
            solve(&mat(&[vec![2]], 6), &vec_(&[1], 6)).unwrap(),
            SolveOutcome::Infeasible
        );

        let zero = MatModK::zeros(2, 3, &m(10)).unwrap();
        let x = solve(&zero, &vec_(&[0, 0], 10)).unwrap();
        assert_eq!(x, SolveOutcome::Solution(VecModK::zeros(3, &m(10))));
    }

    #[test]
    fn solve_rectangular_projects_solution() {
        // 2 equations, 3 unknowns and 3 equations, 1 unknown
        let a = mat(&[vec![1, 2, 3], vec![0, 4, 2]], 12);
        let y = vec_(&[5, 6], 12);
        let x = solve(&a, &y).unwrap();
        let x = x.solution().unwrap();
        assert_eq!(x.dim(), 3);
        assert_eq!(a.mat_vec_mul(x).unwrap(), y);

        let tall = mat(&[vec![2], vec![4], vec![6]], 12);
        let ok = vec_(&[6, 0, 6], 12);
        let x = solve(&tall, &ok).unwrap();
        assert_eq!(tall.mat_vec_mul(x.solution().unwrap()).unwrap(), ok);
        assert!(!feasible(&tall, &vec_(&[2, 4, 1], 12)).unwrap());
    }

    #[test]
    fn feasible_examples() {
        assert!(feasible(&mat(&[vec![4]], 6), &vec_(&[2], 6)).unwrap());
        assert!(!feasible(&mat(&[vec![2]], 4), &vec_(&[1], 4)).unwrap());
        for k in [2, 6, 35] {
            let id = MatModK::identity(2, &m(k)).unwrap();
            assert!(feasible(&id, &vec_(&[1, -1], k)).unwrap());
        }
        assert!(feasible(&mat(&[vec![1]], 6), &vec_(&[1, 1], 6)).is_err());
    }

    #[test]
    fn embed_examples() {
        let six = m(6);
        let (a, y) = embed_lower_modulus(&mat(&[vec![1]], 2), &vec_(&[1], 2), &six).unwrap();
        assert_eq!(
            (a.to_rows(), y.entries().to_vec()),
            (vec![vec![3]], vec![3])
        );

        let (a, y) = embed_lower_modulus(&mat(&[vec![2]], 2), &vec_(&[1], 2), &six).unwrap();
        assert_eq!(
            (a.to_rows(), y.entries().to_vec()),
            (vec![vec![0]], vec![3])
        );
        assert!(!feasible(&a, &y).unwrap());
        assert!(!feasible(&mat(&[vec![2]], 2), &vec_(&[1], 2)).unwrap());

        let (a, y) = embed_lower_modulus(&mat(&[vec![1]], 3), &vec_(&[0], 3), &six).unwrap();
        assert_eq!(
            (a.to_rows(), y.entries().to_vec()),
            (vec![vec![2]], vec![0])
        );
        assert!(feasible(&a, &y).unwrap());

        assert_eq!(
            embed_lower_modulus(&mat(&[vec![1]], 5), &vec_(&[0], 5), &six),
            Err(Error::NotADivisor(5, 6))
        );
    }

    /// All 2x2 systems modulo 2, 3 and 4 against exhaustive enumeration.
    #[test]
    fn exhaustive_feasibility_small() {
        for k in [2u64, 3, 4] {
            let modulus = m(k);
            for code in 0..k.pow(6) {
                let digits: Vec<u64> = (0..6).map(|i| code / k.pow(i) % k).collect();
                let a = MatModK::from_u64(2, 2, &digits[..4], &modulus).unwrap();
                let y = VecModK::from_u64(&digits[4..], &modulus);
                let truth = brute_force_solve(&a, &y).unwrap();
                match solve(&a, &y).unwrap() {
                    SolveOutcome::Solution(x) => assert!(truth.contains(&x)),
                    SolveOutcome::Infeasible => assert!(truth.is_empty()),
                }
                assert_eq!(feasible(&a, &y).unwrap(), !truth.is_empty());
            }
        }
    }

    #[test]
    fn deterministic_outputs() {
        let a = mat(&[vec![3, 6, 9], vec![2, 4, 8], vec![1, 11, 5]], 12);
        let y = vec_(&[3, 2, 1], 12);
        let first = (solve(&a, &y).unwrap(), nullspace(&a).unwrap());
        for _ in 0..5 {
            assert_eq!((solve(&a, &y).unwrap(), nullspace(&a).unwrap()), first);
        }
    }
}
