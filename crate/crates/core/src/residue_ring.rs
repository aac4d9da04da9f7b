//! Arithmetic in `Z/kZ` and the prime-power factorization of the modulus.
//!
//! Residues are always exchanged as canonical representatives in `[0, k)`.
//! Products are formed in 128-bit arithmetic, so any `k < 2^64` is supported.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A maximal prime-power divisor `p^e` of a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    /// The value `q = p^e`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }
}

/// The modulus `k` together with its factorization into prime powers,
/// ordered by strictly increasing prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    k: u64,
    factors: Arc<[PrimePower]>,
}

impl Modulus {
    /// Same as [`factorize`].
    pub fn new(k: u64) -> Result<Self> {
        factorize(k)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].e == 1
    }

    /// Returns the factor when `k` is a power of a single prime.
    pub fn as_prime_power(&self) -> Option<PrimePower> {
        match *self.factors {
            [f] => Some(f),
            _ => None,
        }
    }

    /// Canonical representative of an arbitrary signed integer.
    pub fn reduce(&self, x: i64) -> u64 {
        reduce_i128(x as i128, self.k)
    }

    pub fn residue(&self, x: i64) -> Residue {
        Residue {
            value: self.reduce(x),
            modulus: self.clone(),
        }
    }

    /// The residue class of an unsigned integer.
    pub fn element(&self, x: u64) -> Residue {
        Residue {
            value: x % self.k,
            modulus: self.clone(),
        }
    }

    pub fn divides(&self, d: u64) -> bool {
        d != 0 && self.k.is_multiple_of(d)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)
    }
}

/// An element of `Z/kZ` stored by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus.k) == 1
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Factors `k` by trial division up to `sqrt(k)`.
pub fn factorize(k: u64) -> Result<Modulus> {
    if k < 2 {
        return Err(Error::InvalidModulus(k));
    }
    let mut factors = Vec::new();
    let mut rest = k;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push(PrimePower { p, e });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower { p: rest, e: 1 });
    }
    Ok(Modulus {
        k,
        factors: factors.into(),
    })
}

/// Inverse of `a` modulo `k`, or [`Error::NotAUnit`] carrying `gcd(a, k)`.
pub fn mod_inverse(a: i64, k: &Modulus) -> Result<Residue> {
    let a = k.reduce(a);
    let value = inv_mod(a, k.k).map_err(|g| Error::NotAUnit {
        value: a,
        modulus: k.k,
        gcd: g,
    })?;
    Ok(Residue {
        value,
        modulus: k.clone(),
    })
}

/// Reassembles `x mod k` from its residues modulo each prime-power factor.
///
/// `residues` holds `(value, q_j)` pairs and must list exactly the factors of
/// `k` in ascending order.
pub fn crt_reconstruct(residues: &[(u64, u64)], k: &Modulus) -> Result<Residue> {
    let mismatch = || Error::FactorMismatch { modulus: k.k };
    if residues.len() != k.factors.len() {
        return Err(mismatch());
    }
    let mut acc = 0u64;
    for (&(value, q), f) in residues.iter().zip(k.factors.iter()) {
        if q != f.q() || value >= q {
            return Err(mismatch());
        }
        acc = add_mod(acc, crt_term(value, q, k.k), k.k);
    }
    Ok(Residue {
        value: acc,
        modulus: k.clone(),
    })
}

/// `value * (k/q) * ((k/q)^-1 mod q) mod k`, the CRT basis contribution of one factor.
pub(crate) fn crt_term(value: u64, q: u64, k: u64) -> u64 {
    let cofactor = k / q;
    if cofactor == 1 {
        return value % k;
    }
    let inv = inv_mod(cofactor % q, q).expect("prime-power factors are coprime");
    mul_mod(mul_mod(value, inv, q), cofactor, k)
}

pub(crate) fn reduce_i128(x: i128, k: u64) -> u64 {
    x.rem_euclid(k as i128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, k: u64) -> u64 {
    ((a as u128 + b as u128) % k as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, k: u64) -> u64 {
    add_mod(a, k - b % k, k)
}

pub(crate) fn mul_mod(a: u64, b: u64, k: u64) -> u64 {
    ((a as u128 * b as u128) % k as u128) as u64
}

pub(crate) fn neg_mod(a: u64, k: u64) -> u64 {
    let a = a % k;
    if a == 0 {
        0
    } else {
        k - a
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid. `Err(g)` when `g = gcd(a, k) > 1`.
pub(crate) fn inv_mod(a: u64, k: u64) -> std::result::Result<u64, u64> {
    if k == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (k as i128, (a % k) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(r0 as u64);
    }
    Ok(reduce_i128(s0, k))
}

/// Exponent of the largest power of `p` dividing `x` (with `x != 0`).
pub(crate) fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}
