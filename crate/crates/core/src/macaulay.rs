//! Macaulay pseudopowers and the h-vector bound on Whitney numbers.

use serde::Serialize;

use crate::matroid::binomial;

/// Greedy `p`-binomial representation `a = C(a_p, p) + ... + C(a_s, s)`
/// with `a_p > a_{p-1} > ... > a_s >= s >= 1`, as `(top, bottom)` pairs.
pub fn binomial_representation(a: u128, p: usize) -> Vec<(usize, usize)> {
    assert!(p >= 1, "degree must be positive");
    let mut rest = a;
    let mut out = Vec::new();
    let mut k = p;
    while rest > 0 && k >= 1 {
        // largest top with C(top, k) <= rest
        let mut top = k;
        while binomial(top + 1, k) <= rest {
            top += 1;
        }
        rest -= binomial(top, k);
        out.push((top, k));
        k -= 1;
    }
    debug_assert_eq!(rest, 0);
    out
}

/// `a^{<p>} = C(a_p + 1, p + 1) + ... + C(a_s + 1, s + 1)`.
pub fn macaulay_pseudopower(a: u128, p: usize) -> u128 {
    binomial_representation(a, p)
        .into_iter()
        .map(|(top, bottom)| binomial(top + 1, bottom + 1))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HVectorReport {
    pub p: usize,
    /// `|L^{p+1}| - |L^p|`.
    pub step: i128,
    /// `(|L^p| - |L^{p-1}|)^{<p>}`, or `None` when the base difference is negative.
    pub bound: Option<u128>,
    pub holds: bool,
}

/// Checks `0 <= |L^{p+1}| - |L^p| <= (|L^p| - |L^{p-1}|)^{<p>}`.
pub fn check_h_vector(whitney: &[usize], p: usize) -> HVectorReport {
    assert!(p >= 1 && p + 1 < whitney.len(), "degree out of range");
    let step = whitney[p + 1] as i128 - whitney[p] as i128;
    let base = whitney[p] as i128 - whitney[p - 1] as i128;
    let bound = u128::try_from(base).ok().map(|b| macaulay_pseudopower(b, p));
    let holds = step >= 0 && bound.is_some_and(|b| step as u128 <= b);
    HVectorReport {
        p,
        step,
        bound,
        holds,
    }
}
