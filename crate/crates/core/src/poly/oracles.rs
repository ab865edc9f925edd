//! Brute-force oracles: elementary symmetric and power-sum polynomials, and
//! the Newton-identity polynomials `Z_k`.
//!
//! These are the reference points every formula construction is checked
//! against, so they are written for obviousness, not speed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Monomial, RingMode, SparsePolynomial, VarId};

/// `S^k_n`, the elementary symmetric polynomial: sum over all ascending
/// k-subsets of `x1..xn` of the product of the subset. Computed by the
/// recurrence `S^k_n = S^k_{n-1} + S^{k-1}_{n-1} * x_n` (appending `x_n` keeps
/// ordered monomials ascending). `k = 0` gives 1; `k > n` gives 0.
pub fn oracle_s<T: Scalar>(n: u32, k: u32, mode: RingMode) -> SparsePolynomial<T> {
    if k > n {
        return SparsePolynomial::zero(mode);
    }
    // row m of the DP holds S^j_m for j = 0..=k
    let mut row: Vec<SparsePolynomial<T>> = vec![SparsePolynomial::one(mode)];
    for m in 1..=n {
        let x_m = SparsePolynomial::var(VarId(m), mode);
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(SparsePolynomial::one(mode));
        let top = (m.min(k)) as usize;
        for j in 1..=top {
            let keep = if j < row.len() {
                row[j].clone()
            } else {
                SparsePolynomial::zero(mode)
            };
            let extend = row[j - 1].mul(&x_m).expect("uniform mode");
            next.push(keep.add(&extend).expect("uniform mode"));
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `S^k_n` by direct enumeration of k-subsets; the independent route used to
/// cross-check the recurrence.
pub fn oracle_s_by_enumeration<T: Scalar>(n: u32, k: u32, mode: RingMode) -> SparsePolynomial<T> {
    if k > n {
        return SparsePolynomial::zero(mode);
    }
    let k_us = k as usize;
    let mut terms = Vec::new();
    let mut subset: Vec<u32> = (1..=k).collect();
    loop {
        let monomial = match mode {
            RingMode::Commutative => Monomial::from_exponents(subset.iter().map(|&v| (VarId(v), 1))),
            RingMode::Noncommutative => Monomial::Ordered(subset.iter().map(|&v| VarId(v)).collect()),
        };
        terms.push((monomial, T::one()));
        // advance to the next ascending k-subset of 1..=n
        let mut i = k_us;
        while i > 0 && subset[i - 1] == n - (k - i as u32) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k_us {
            subset[j] = subset[j - 1] + 1;
        }
    }
    SparsePolynomial::from_terms(mode, terms).expect("uniform mode")
}

/// `P^k_n = x1^k + ... + xn^k` (commutative).
pub fn oracle_p<T: Scalar>(n: u32, k: u32) -> Result<SparsePolynomial<T>> {
    if k == 0 {
        return Err(Error::precondition("power sum requires k >= 1"));
    }
    let terms = (1..=n).map(|i| {
        (
            Monomial::from_exponents([(VarId(i), k)]),
            T::one(),
        )
    });
    SparsePolynomial::from_terms(RingMode::Commutative, terms)
}

/// The Newton polynomials over `x1..xk`:
/// `Z_0 = 1`, `Z_m = (1/m) * sum_{i=1..m} (-1)^(i-1) x_i Z_{m-i}`.
/// `Z_k` is w-homogeneous of w-degree `k` under `w(x_i) = i`, and
/// `S^k_n = Z_k(P^1_n, ..., P^k_n)`.
pub fn newton_z<T: Scalar>(k: u32) -> SparsePolynomial<T> {
    let mode = RingMode::Commutative;
    let mut z: Vec<SparsePolynomial<T>> = vec![SparsePolynomial::one(mode)];
    for m in 1..=k {
        let mut acc = SparsePolynomial::zero(mode);
        for i in 1..=m {
            let y_i = SparsePolynomial::var(VarId(i), mode);
            let term = y_i.mul(&z[(m - i) as usize]).expect("uniform mode");
            acc = if i % 2 == 1 {
                acc.add(&term).expect("uniform mode")
            } else {
                acc.sub(&term).expect("uniform mode")
            };
        }
        let inv_m = T::one() / T::from_int(m as i64);
        z.push(acc.scale(&inv_m));
    }
    z.swap_remove(k as usize)
}

/// Two polynomials are weakly equivalent when they have identical monomial
/// support (coefficients may differ). Rejects mixed ring modes.
pub fn weakly_equivalent<T: Scalar>(
    f: &SparsePolynomial<T>,
    g: &SparsePolynomial<T>,
) -> Result<bool> {
    if f.mode() != g.mode() {
        return Err(Error::ModeMismatch);
    }
    Ok(f.support().eq(g.support()))
}

/// Substitute `P^i_n` for `x_i` in `Z_k`; by Newton's identities this equals
/// `S^k_n`. Exposed for tests and the selftest suite.
pub fn newton_s<T: Scalar>(n: u32, k: u32) -> Result<SparsePolynomial<T>> {
    let z = newton_z::<T>(k);
    let mut subs = BTreeMap::new();
    for i in 1..=k {
        subs.insert(VarId(i), oracle_p::<T>(n, i)?);
    }
    z.compose(&subs)
}
