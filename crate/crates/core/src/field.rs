//! Coefficient fields for linear realizations: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest prime accepted for `GF(p)`; keeps products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Primes up to this bound get a precomputed inverse table.
const INVERSE_TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidInput(format!("GF({p}): {p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rational);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidInput(format!("unknown field {t:?}")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unknown field {t:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parse a rational literal such as `3`, `-2`, or `5/7`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Arithmetic in `GF(p)` on residues `0..p`.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    inverses: Vec<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        let inverses = if p <= INVERSE_TABLE_LIMIT {
            let mut inv = vec![0u64; p as usize];
            if p > 1 {
                inv[1] = 1;
            }
            for a in 2..p {
                // inv[a] = -(p / a) * inv[p % a]
                inv[a as usize] = (p - (p / a) * inv[(p % a) as usize] % p) % p;
            }
            inv
        } else {
            Vec::new()
        };
        PrimeField { p, inverses }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        if !self.inverses.is_empty() {
            return self.inverses[a as usize];
        }
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Rank of a row-major matrix over `GF(p)`.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        self.row_reduce(&mut rows).len()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn row_reduce(&self, rows: &mut [Vec<u64>]) -> Vec<usize> {
        let m = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..m {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Convert an exact rational into a `GF(p)` residue; fails when the
/// denominator vanishes mod `p`.
pub fn rational_to_residue(field: &PrimeField, q: &BigRational) -> Option<u64> {
    let p = BigInt::from(field.modulus());
    let reduce = |v: &BigInt| -> u64 {
        let r = ((v % &p) + &p) % &p;
        r.to_string().parse().expect("residue fits in u64")
    };
    let den = reduce(q.denom());
    if den == 0 {
        return None;
    }
    Some(field.mul(reduce(q.numer()), field.inv(den)))
}
