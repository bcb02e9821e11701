//! Arithmetic in the small Galois fields GF(q).
//!
//! Prime q is plain modular arithmetic; q ∈ {4, 8, 9} use fixed irreducible
//! polynomials over the prime subfield. Elements are indices `0..q` encoding
//! base-p digit vectors (the constant digit first), with `0` the zero and `1`
//! the one of the field. Larger prime powers are rejected; the generators
//! only need desk-scale models.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    UnsupportedOrder(u32),
}

impl core::fmt::Display for FieldError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldError::UnsupportedOrder(q) => {
                write!(
                    f,
                    "unsupported field order {} (primes up to 61, or 4, 8, 9)",
                    q
                )
            }
        }
    }
}

/// GF(q) with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct Gf {
    q: u32,
    p: u32,
    degree: u32,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Reduction rule for GF(p^k): the coefficients of x^k as a polynomial of
/// lower degree, constant first.
fn reduction_rule(q: u32) -> Option<(u32, Vec<u32>)> {
    match q {
        // x^2 = x + 1 over GF(2)
        4 => Some((2, vec![1, 1])),
        // x^3 = x + 1 over GF(2)
        8 => Some((2, vec![1, 1, 0])),
        // x^2 = -1 = 2 over GF(3)
        9 => Some((3, vec![2, 0])),
        _ => None,
    }
}

impl Gf {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        if is_prime(q) && q <= 61 {
            return Ok(Self::tables(
                q,
                q,
                1,
                |a, b| (a + b) % q,
                |a, b| (a * b) % q,
            ));
        }
        let (p, rule) = reduction_rule(q).ok_or(FieldError::UnsupportedOrder(q))?;
        let degree = rule.len() as u32;
        let digits = move |x: u32| -> Vec<u32> {
            let mut x = x;
            (0..degree)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let undigits = move |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let add = move |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&sum)
        };
        let rule_for_mul = rule.clone();
        let mul = move |a: u32, b: u32| -> u32 {
            // schoolbook product, then reduce degrees >= k via the rule
            let (da, db) = (digits(a), digits(b));
            let k = rule_for_mul.len();
            let mut prod = vec![0u32; 2 * k];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for d in (k..2 * k).rev() {
                let coeff = prod[d];
                if coeff != 0 {
                    prod[d] = 0;
                    for (i, &c) in rule_for_mul.iter().enumerate() {
                        prod[d - k + i] = (prod[d - k + i] + coeff * c) % p;
                    }
                }
            }
            undigits(&prod[..k])
        };
        Ok(Self::tables(q, p, degree, add, mul))
    }

    fn tables(
        q: u32,
        p: u32,
        degree: u32,
        add: impl Fn(u32, u32) -> u32,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Self {
        let add_t: Vec<Vec<u32>> = (0..q)
            .map(|a| (0..q).map(|b| add(a, b)).collect())
            .collect();
        let mul_t: Vec<Vec<u32>> = (0..q)
            .map(|a| (0..q).map(|b| mul(a, b)).collect())
            .collect();
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| add_t[a as usize][b as usize] == 0)
                    .expect("additive inverse")
            })
            .collect();
        let inv: Vec<u32> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q)
                        .find(|&b| mul_t[a as usize][b as usize] == 1)
                        .expect("multiplicative inverse")
                }
            })
            .collect();
        // x ^ p generates the automorphism group over the prime subfield
        let frob: Vec<u32> = (0..q)
            .map(|a| (0..p - 1).fold(a, |acc, _| mul_t[acc as usize][a as usize]))
            .collect();
        Gf {
            q,
            p,
            degree,
            add: add_t,
            mul: mul_t,
            neg,
            inv,
            frob,
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// The Frobenius map `x ↦ x^p`; an involution exactly on degree ≤ 2
    /// extensions.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}
