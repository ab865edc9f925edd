//! Evaluators and checkers for the quantitative estimates: the binomial
//! product inequality, monomial-count bounds for balanced and formed
//! polynomials, the derived size lower bounds, the monotone divide-and-conquer
//! upper bound with its growth-function recurrence, and the partition
//! function.
//!
//! Rounding discipline: every bound evaluated in floating point is rounded
//! outward — upper bounds up, lower bounds down — so that a reported pass or
//! certified value is conservative. Wherever the expression permits, the
//! comparison is done exactly over the integers or rationals instead
//! (binomial products as squared integer comparisons, the growth recurrence
//! over power-of-two grids as exact rationals).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rat;

/// Pinned numeric constants. These are configuration, never silently
/// changed; tests assert against exactly these values.
#[derive(Debug, Clone)]
pub struct BoundConstants {
    /// The constant `c` in the balanced monomial bound `3 k^{-c log2 k + 3/2}
    /// C(n,k) minvar/n`, fixed at `1/(8 log2 3)`.
    ///
    /// Derivation: in a balanced factorization the degree windows force
    /// `k_i > (1/3)^i k`, so every factor with `i <= log2(k) / (2 log2 3)`
    /// has degree at least `sqrt(k)`; those factors alone push
    /// `(k_1 ... k_p)^{-1/2}` below `k^{-log2(k) / (8 log2 3)}`.
    pub c_balanced: f64,
    /// Relative outward-rounding margin for floating-point bound evaluation;
    /// generously above the accumulated ulp error of the expressions here.
    pub rel_margin: f64,
    /// Exponent constants `(a, b)` pinning the balancing size cap
    /// `(s*k)^(a*log2(k) + b)` for the circuit-to-formula transform,
    /// validated on the construction grid.
    pub balance_size_exponent: (f64, f64),
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            c_balanced: 1.0 / (8.0 * 3f64.log2()),
            rel_margin: 1e-9,
            balance_size_exponent: (0.5, 1.0),
        }
    }
}

fn round_up(x: f64, margin: f64) -> f64 {
    debug_assert!(x >= 0.0);
    x * (1.0 + margin)
}

fn round_down(x: f64, margin: f64) -> f64 {
    debug_assert!(x >= 0.0);
    x * (1.0 - margin)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Evaluated bound: name, inputs, the bound value, the quantity it was
/// compared against (when any), and the verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub bound: String,
    pub compared: Option<String>,
    pub pass: bool,
    pub trivial: bool,
    pub cases_checked: u64,
    pub failures: Vec<String>,
}

impl BoundReport {
    pub fn new(name: &str) -> Self {
        BoundReport {
            name: name.to_string(),
            inputs: BTreeMap::new(),
            bound: String::new(),
            compared: None,
            pass: true,
            trivial: false,
            cases_checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn record_failure(&mut self, msg: String) {
        self.pass = false;
        if self.failures.len() < 16 {
            self.failures.push(msg);
        }
    }
}

/// Exact check of the binomial product inequality
/// `prod_i C(n_i, k_i) <= 3 k^{1/2} (k_1...k_p)^{-1/2} C(n, k)`
/// for one composition pair, via the squared integer comparison
/// `lhs^2 * prod_i k_i <= 9 k C(n,k)^2` (no rounding at all).
///
/// Requires every `k_i >= 1` and `sum n_i >= 2 sum k_i`.
pub fn binomial_product_check(n_parts: &[u64], k_parts: &[u64]) -> Result<BoundReport> {
    if n_parts.len() != k_parts.len() || k_parts.is_empty() {
        return Err(Error::precondition(
            "compositions must be nonempty and of equal length",
        ));
    }
    if k_parts.contains(&0) {
        return Err(Error::precondition("every k_i must be >= 1"));
    }
    let k: u64 = k_parts.iter().sum();
    let n: u64 = n_parts.iter().sum();
    if n < 2 * k {
        return Err(Error::precondition(format!(
            "requires n >= 2k, got n={n} k={k}"
        )));
    }
    let mut lhs = BigUint::one();
    for (&ni, &ki) in n_parts.iter().zip(k_parts) {
        lhs *= binomial(ni, ki);
    }
    let k_product: BigUint = k_parts.iter().map(|&ki| BigUint::from(ki)).product();
    let c_nk = binomial(n, k);
    let lhs_sq = &lhs * &lhs * &k_product;
    let rhs_sq = BigUint::from(9u32) * BigUint::from(k) * &c_nk * &c_nk;
    let pass = lhs_sq <= rhs_sq;
    let rhs_approx = 3.0 * (k as f64).sqrt()
        / k_product.to_f64().unwrap_or(f64::INFINITY).sqrt()
        * c_nk.to_f64().unwrap_or(f64::INFINITY);
    let mut report = BoundReport::new("binomial-product")
        .input("n_parts", format!("{n_parts:?}"))
        .input("k_parts", format!("{k_parts:?}"));
    report.bound = format!("{rhs_approx:.4}");
    report.compared = Some(lhs.to_string());
    report.pass = pass;
    report.cases_checked = 1;
    if !pass {
        report.record_failure(format!("lhs {lhs} exceeds bound at {n_parts:?}/{k_parts:?}"));
    }
    Ok(report)
}

/// Exhaustive sweep of the binomial product inequality over every
/// composition of `k <= k_max` into positive parts paired with every
/// composition of each `n` in `2k..=n_max` into as many nonnegative parts.
pub fn binomial_product_sweep(n_max: u64, k_max: u64) -> BoundReport {
    let mut report = BoundReport::new("binomial-product-sweep")
        .input("n_max", n_max)
        .input("k_max", k_max);
    // binomial table
    let table: Vec<Vec<BigUint>> = (0..=n_max)
        .map(|n| (0..=n_max).map(|k| binomial(n, k)).collect())
        .collect();
    let mut cases = 0u64;

    fn k_compositions(k: u64, out: &mut Vec<Vec<u64>>, prefix: &mut Vec<u64>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=k {
            prefix.push(first);
            k_compositions(k - first, out, prefix);
            prefix.pop();
        }
    }

    for k in 1..=k_max {
        let mut comps = Vec::new();
        k_compositions(k, &mut comps, &mut Vec::new());
        for n in (2 * k)..=n_max {
            for k_parts in &comps {
                let p = k_parts.len();
                let nine_k_c2 = BigUint::from(9u32)
                    * BigUint::from(k)
                    * &table[n as usize][k as usize]
                    * &table[n as usize][k as usize];
                let k_product: BigUint = k_parts.iter().map(|&ki| BigUint::from(ki)).product();
                // enumerate compositions of n into p nonnegative parts
                let mut n_parts = vec![0u64; p];
                #[allow(clippy::too_many_arguments)]
                fn rec(
                    idx: usize,
                    remaining: u64,
                    n_parts: &mut Vec<u64>,
                    k_parts: &[u64],
                    table: &[Vec<BigUint>],
                    k_product: &BigUint,
                    rhs_sq: &BigUint,
                    cases: &mut u64,
                    report: &mut BoundReport,
                ) {
                    if idx == n_parts.len() - 1 {
                        n_parts[idx] = remaining;
                        *cases += 1;
                        let mut lhs = BigUint::one();
                        for (&ni, &ki) in n_parts.iter().zip(k_parts) {
                            lhs *= &table[ni as usize][ki.min(ni) as usize]
                                * if ki > ni { BigUint::zero() } else { BigUint::one() };
                        }
                        if lhs.is_zero() {
                            return;
                        }
                        let lhs_sq = &lhs * &lhs * k_product;
                        if lhs_sq > *rhs_sq {
                            report.record_failure(format!(
                                "violated at n_parts={n_parts:?} k_parts={k_parts:?}"
                            ));
                        }
                        return;
                    }
                    for v in 0..=remaining {
                        n_parts[idx] = v;
                        rec(
                            idx + 1,
                            remaining - v,
                            n_parts,
                            k_parts,
                            table,
                            k_product,
                            rhs_sq,
                            cases,
                            report,
                        );
                    }
                }
                rec(
                    0,
                    n,
                    &mut n_parts,
                    k_parts,
                    &table,
                    &k_product,
                    &nine_k_c2,
                    &mut cases,
                    &mut report,
                );
            }
        }
    }
    report.cases_checked = cases;
    report.bound = "squared-integer comparison".to_string();
    report
}

fn require_half(n: u64, k: u64) -> Result<()> {
    if k == 0 || n < 2 * k {
        return Err(Error::precondition(format!(
            "requires n >= 2k >= 2, got n={n} k={k}"
        )));
    }
    Ok(())
}

/// Monomial-count bound for a balanced multilinear polynomial:
/// `3 k^{-c log2 k + 3/2} C(n,k) minvar / n`, rounded up.
pub fn balanced_monomial_bound(
    k: u64,
    n: u64,
    minvar: u64,
    consts: &BoundConstants,
) -> Result<f64> {
    require_half(n, k)?;
    let kf = k as f64;
    let exponent = -consts.c_balanced * kf.log2() + 1.5;
    let value = 3.0 * kf.powf(exponent) * binomial_f64(n, k) * minvar as f64 / n as f64;
    Ok(round_up(value, consts.rel_margin))
}

/// Monomial-count bound for a multilinear homogeneous fan-in-2 formula of
/// size `s`: `3 k^{-c log2 k + 3/2} C(n,k) s / n`, rounded up.
pub fn formula_monomial_bound(s: u64, k: u64, n: u64, consts: &BoundConstants) -> Result<f64> {
    if s == 0 {
        return Err(Error::precondition("size must be >= 1"));
    }
    require_half(n, k)?;
    let kf = k as f64;
    let exponent = -consts.c_balanced * kf.log2() + 1.5;
    let value = 3.0 * kf.powf(exponent) * binomial_f64(n, k) * s as f64 / n as f64;
    Ok(round_up(value, consts.rel_margin))
}

/// Monomial-count bound for a multilinear `(p, l)`-form polynomial:
/// `3 k^{3/2} l^{-(p-1)/2} C(n,k) minvar / n`, rounded up.
/// Requires `p >= 2` and `l >= 2`.
pub fn form_monomial_bound(
    k: u64,
    n: u64,
    p: u64,
    l: f64,
    minvar: u64,
    consts: &BoundConstants,
) -> Result<f64> {
    require_half(n, k)?;
    if p < 2 || l < 2.0 {
        return Err(Error::precondition(format!(
            "requires p >= 2 and l >= 2, got p={p} l={l}"
        )));
    }
    let kf = k as f64;
    let value = 3.0
        * kf.powf(1.5)
        * l.powf(-((p as f64 - 1.0) / 2.0))
        * binomial_f64(n, k)
        * minvar as f64
        / n as f64;
    Ok(round_up(value, consts.rel_margin))
}

/// Monomial-count bound for a multilinear homogeneous formula of size `s`
/// and product-depth `d`: `6 k^{3/2} 2^{-k^{1/d}/8} C(n,k) s / n`, rounded
/// up. Requires `k^{1/d} >= 8`, i.e. `k >= 8^d`.
pub fn const_depth_monomial_bound(
    s: u64,
    k: u64,
    n: u64,
    d: u32,
    consts: &BoundConstants,
) -> Result<f64> {
    require_half(n, k)?;
    if d == 0 {
        return Err(Error::precondition("product-depth d must be >= 1"));
    }
    let root = (k as f64).powf(1.0 / d as f64);
    if root < 8.0 - 1e-12 {
        return Err(Error::precondition(format!(
            "requires k^(1/d) >= 8, got k={k} d={d}"
        )));
    }
    let kf = k as f64;
    let value =
        6.0 * kf.powf(1.5) * (-root / 8.0).exp2() * binomial_f64(n, k) * s as f64 / n as f64;
    Ok(round_up(value, consts.rel_margin))
}

/// A certified size lower bound; `trivial` marks the fallback `n` (every
/// variable must appear as a leaf) used when the hypotheses fail or the
/// expression dips below `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBound {
    pub value: f64,
    pub trivial: bool,
}

/// Raw value of the multilinear homogeneous size lower bound
/// `n k^{c log2 k - 3/2} / 3` (no trivial fallback), rounded down.
pub fn lower_bound_size_raw(n: u64, k: u64, consts: &BoundConstants) -> f64 {
    let kf = k as f64;
    let exponent = consts.c_balanced * kf.log2() - 1.5;
    round_down(n as f64 / 3.0 * kf.powf(exponent), consts.rel_margin)
}

/// Size lower bound for multilinear homogeneous formulas computing `S^k_n`,
/// obtained by instantiating the formula monomial bound at `C(n,k)` counts.
/// Returns the trivial bound `n` (flagged) when `n < 2k`, `k == 0`, or the
/// expression falls below `n`.
pub fn lower_bound_size(n: u64, k: u64, consts: &BoundConstants) -> LowerBound {
    if k == 0 || n < 2 * k {
        return LowerBound {
            value: n as f64,
            trivial: true,
        };
    }
    let raw = lower_bound_size_raw(n, k, consts);
    if raw < n as f64 {
        LowerBound {
            value: n as f64,
            trivial: true,
        }
    } else {
        LowerBound {
            value: raw,
            trivial: false,
        }
    }
}

/// Size lower bound for product-depth-`d` multilinear homogeneous formulas:
/// `n 2^{k^{1/d}/8} / (6 k^{3/2})`, rounded down; trivial fallback `n` when
/// `k^{1/d} < 8` or below `n`.
pub fn lower_bound_size_depth(n: u64, k: u64, d: u32, consts: &BoundConstants) -> LowerBound {
    if k == 0 || n < 2 * k || d == 0 {
        return LowerBound {
            value: n as f64,
            trivial: true,
        };
    }
    let root = (k as f64).powf(1.0 / d as f64);
    if root < 8.0 {
        return LowerBound {
            value: n as f64,
            trivial: true,
        };
    }
    let kf = k as f64;
    let raw = round_down(
        n as f64 * (root / 8.0).exp2() / (6.0 * kf.powf(1.5)),
        consts.rel_margin,
    );
    if raw < n as f64 {
        LowerBound {
            value: n as f64,
            trivial: true,
        }
    } else {
        LowerBound {
            value: raw,
            trivial: false,
        }
    }
}

/// The monotone divide-and-conquer size upper bound (logs base 2):
/// `2n * n^{log2((k-1)/log2(2n) + 1)} * (log2(2n)/(k-1) + 1)^(k-1)`,
/// rounded up. Requires `k >= 2`.
pub fn monotone_upper_bound(n: u64, k: u64, consts: &BoundConstants) -> Result<f64> {
    if k < 2 {
        return Err(Error::precondition("closed form requires k >= 2"));
    }
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    let nf = n as f64;
    let l2n = (2.0 * nf).log2();
    let km1 = (k - 1) as f64;
    let value = 2.0 * nf * nf.powf((km1 / l2n + 1.0).log2()) * (l2n / km1 + 1.0).powf(km1);
    Ok(round_up(value, consts.rel_margin))
}

/// Integer ceiling of [`monotone_upper_bound`], for leaf-count comparisons.
pub fn monotone_upper_bound_ceil(n: u64, k: u64, consts: &BoundConstants) -> Result<u128> {
    Ok(monotone_upper_bound(n, k, consts)?.ceil() as u128)
}

/// How to pick the growth exponent for the recurrence check.
#[derive(Debug, Clone)]
pub enum AlphaChoice {
    /// Per grid point `(n, k)`: `alpha = log2(1 + z)` with `z = (k-1)/log2 n`
    /// — exact rational arithmetic on power-of-two grids.
    ProofRule,
    /// Fixed rational `z` with `alpha = log2(1 + z)`; exact.
    FixedZ(Rat),
    /// Fixed floating `alpha > 0`; evaluated in f64 with outward rounding.
    Fixed(f64),
}

/// Exact `g(n, i)` for `n = 2^e`, parameterized by `z` where `2^alpha = 1+z`:
/// `g(n, i) = n^(1+alpha) / (1 - 2^-alpha)^(i-1) = n (1+z)^e ((1+z)/z)^(i-1)`.
fn g_exact(n: u64, e: u32, i: u32, z: &Rat) -> Rat {
    let one_plus_z = Rat::one() + z.clone();
    let mut acc = Rat::from_int(n as i64);
    for _ in 0..e {
        acc *= one_plus_z.clone();
    }
    for _ in 1..i {
        acc *= one_plus_z.clone() / z.clone();
    }
    acc
}

/// Check the divide-and-conquer growth conditions
/// `g(2n, k) >= 2 sum_{i=1..k} g(n, i)` and `g(n, 1) >= n` for
/// `g(n, k) = n^(1+alpha) / (1 - 2^-alpha)^(k-1)`, over all powers of two
/// `n <= n_max` and `k <= k_max`.
pub fn monotone_size_recurrence_check(
    alpha: &AlphaChoice,
    n_max: u64,
    k_max: u32,
    consts: &BoundConstants,
) -> Result<BoundReport> {
    if n_max < 2 || k_max == 0 {
        return Err(Error::precondition("requires n_max >= 2 and k_max >= 1"));
    }
    let mut report = BoundReport::new("monotone-size-recurrence")
        .input("n_max", n_max)
        .input("k_max", k_max)
        .input("alpha", format!("{alpha:?}"));
    let mut cases = 0u64;
    let mut e = 1u32;
    while (1u64 << e) <= n_max {
        let n = 1u64 << e;
        for k in 1..=k_max {
            cases += 1;
            let ok = match alpha {
                AlphaChoice::ProofRule => {
                    let z = Rat::new((k as i64 - 1).into(), (e as i64).into());
                    if z.is_zero() && k > 1 {
                        return Err(Error::internal("degenerate z for k > 1"));
                    }
                    exact_recurrence_holds(n, e, k, &z)
                }
                AlphaChoice::FixedZ(z) => {
                    if !z.is_positive() {
                        return Err(Error::precondition("z must be > 0"));
                    }
                    exact_recurrence_holds(n, e, k, z)
                }
                AlphaChoice::Fixed(alpha) => {
                    if *alpha <= 0.0 {
                        return Err(Error::precondition("alpha must be > 0"));
                    }
                    float_recurrence_holds(n, k, *alpha, consts.rel_margin)
                }
            };
            if !ok {
                report.record_failure(format!("recurrence fails at n={n} k={k}"));
            }
        }
        e += 1;
    }
    report.cases_checked = cases;
    report.bound = "g(2n,k) >= 2 sum_i<=k g(n,i); g(n,1) >= n".to_string();
    Ok(report)
}

fn exact_recurrence_holds(n: u64, e: u32, k: u32, z: &Rat) -> bool {
    // z == 0 encodes alpha == 0, only consistent for k == 1 where the
    // (1 - 2^-alpha)^(k-1) factor is an empty product
    let lhs = g_exact(2 * n, e + 1, k, z);
    let mut rhs = Rat::zero();
    for i in 1..=k {
        rhs += g_exact(n, e, i, z);
    }
    rhs *= Rat::from_int(2);
    let base = g_exact(n, e, 1, z) >= Rat::from_int(n as i64);
    lhs >= rhs && base
}

fn float_recurrence_holds(n: u64, k: u32, alpha: f64, margin: f64) -> bool {
    let g = |n: f64, i: u32| n.powf(1.0 + alpha) / (1.0 - (-alpha).exp2()).powi(i as i32 - 1);
    let nf = n as f64;
    let lhs = round_down(g(2.0 * nf, k), margin);
    let mut rhs = 0.0;
    for i in 1..=k {
        rhs += g(nf, i);
    }
    let rhs = round_up(2.0 * rhs, margin);
    let base = round_down(g(nf, 1), margin) >= nf;
    lhs >= rhs && base
}

/// `p(k)` by the pentagonal-number recurrence, exact. Capped at `k <= 1000`
/// to stay comfortably inside i128 intermediate arithmetic.
pub fn partition_function(k: u32) -> Result<u128> {
    if k > 1000 {
        return Err(Error::precondition("partition function capped at k <= 1000"));
    }
    let n = k as usize;
    let mut table: Vec<u128> = vec![0; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum: i128 = 0;
        let mut j = 1i64;
        loop {
            let g1 = (j * (3 * j - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign: i128 = if j % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1] as i128;
            let g2 = (j * (3 * j + 1) / 2) as usize;
            if g2 <= i {
                sum += sign * table[i - g2] as i128;
            }
            j += 1;
        }
        debug_assert!(sum >= 0);
        table[i] = sum as u128;
    }
    Ok(table[n])
}

/// `p(k)` by bounded dynamic programming over the largest part; the
/// independent route cross-checking the pentagonal recurrence.
pub fn partition_function_dp(k: u32) -> u128 {
    let n = k as usize;
    let mut count: Vec<u128> = vec![0; n + 1];
    count[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            count[total] += count[total - part];
        }
    }
    count[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> BoundConstants {
        BoundConstants::default()
    }

    #[test]
    fn partition_values() {
        let expected: [u128; 11] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (k, &want) in expected.iter().enumerate() {
            assert_eq!(partition_function(k as u32).unwrap(), want);
            assert_eq!(partition_function_dp(k as u32), want);
        }
        for k in 0..=60u32 {
            assert_eq!(partition_function(k).unwrap(), partition_function_dp(k));
        }
        assert_eq!(partition_function(100).unwrap(), 190_569_292);
    }

    #[test]
    fn binomial_product_single_block_passes() {
        for (n, k) in [(4u64, 2u64), (10, 5), (14, 7)] {
            let r = binomial_product_check(&[n], &[k]).unwrap();
            assert!(r.pass);
        }
    }

    #[test]
    fn binomial_product_hand_example() {
        // n=6, k=3, parts (3,3)/(2,1): lhs = C(3,2) C(3,1) = 9,
        // bound approx 3 sqrt(3) / sqrt(2) * 20 = 73.48
        let r = binomial_product_check(&[3, 3], &[2, 1]).unwrap();
        assert!(r.pass);
        assert_eq!(r.compared.as_deref(), Some("9"));
        let bound: f64 = r.bound.parse().unwrap();
        assert!((bound - 73.48).abs() < 0.01);
    }

    #[test]
    fn binomial_product_preconditions() {
        assert!(binomial_product_check(&[2], &[2]).is_err()); // n < 2k
        assert!(binomial_product_check(&[4, 1], &[2, 0]).is_err()); // k_i = 0
        assert!(binomial_product_check(&[], &[]).is_err());
    }

    #[test]
    fn small_sweep_passes() {
        let r = binomial_product_sweep(8, 4);
        assert!(r.pass, "failures: {:?}", r.failures);
        assert!(r.cases_checked > 100);
    }

    #[test]
    fn formula_bound_regression_pin() {
        // frozen on first computation; guards against silent constant drift
        let v = formula_monomial_bound(12, 4, 8, &consts()).unwrap();
        assert!((v - 2025.051865).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn balanced_bound_k1_collapses() {
        // k=1: 3 * 1 * C(n,1) * minvar / n = 3 * minvar
        let v = balanced_monomial_bound(1, 10, 4, &consts()).unwrap();
        assert!((v - 12.0).abs() / 12.0 < 1e-6);
    }

    #[test]
    fn lower_bound_small_k_is_trivial() {
        let lb = lower_bound_size(20, 2, &consts());
        assert!(lb.trivial);
        assert_eq!(lb.value, 20.0);
    }

    #[test]
    fn lower_bound_depth_hypothesis_gate() {
        let lb = lower_bound_size_depth(64, 8, 2, &consts());
        assert!(lb.trivial); // 8^(1/2) < 8
        let lb = lower_bound_size_depth(2000, 512, 3, &consts());
        assert!(lb.trivial); // 512^(1/3) = 8, but expression is below n
    }

    #[test]
    fn monotone_upper_bound_hand_value() {
        // n=2, k=2: 4 * 2^(log2 1.5) * 3 = 18
        let v = monotone_upper_bound(2, 2, &consts()).unwrap();
        assert!((v - 18.0).abs() < 1e-6, "got {v}");
        assert!(monotone_upper_bound(4, 1, &consts()).is_err());
    }

    #[test]
    fn recurrence_check_proof_rule() {
        let r =
            monotone_size_recurrence_check(&AlphaChoice::ProofRule, 64, 6, &consts()).unwrap();
        assert!(r.pass, "failures: {:?}", r.failures);
        assert_eq!(r.cases_checked, 6 * 6);
    }

    #[test]
    fn recurrence_check_fixed_alpha() {
        let r = monotone_size_recurrence_check(&AlphaChoice::Fixed(1.0), 64, 5, &consts())
            .unwrap();
        assert!(r.pass, "failures: {:?}", r.failures);
        assert!(
            monotone_size_recurrence_check(&AlphaChoice::Fixed(0.0), 64, 5, &consts()).is_err()
        );
    }

    #[test]
    fn form_bound_plugs_in() {
        // p=2, l=2: factor l^{-(p-1)/2} = 2^{-1/2}
        let v = form_monomial_bound(4, 8, 2, 2.0, 3, &consts()).unwrap();
        let expect = 3.0 * 8.0 * 0.5f64.sqrt() * binomial_f64(8, 4) * 3.0 / 8.0;
        assert!((v - expect).abs() / expect < 1e-6);
    }

    #[test]
    fn const_depth_bound_d1_k8() {
        // d=1, k=8: factor 2^{-8/8} = 1/2
        let v = const_depth_monomial_bound(12, 8, 16, 1, &consts()).unwrap();
        let expect = 6.0 * 8f64.powf(1.5) * 0.5 * binomial_f64(16, 8) * 12.0 / 16.0;
        assert!((v - expect).abs() / expect < 1e-6);
        assert!(const_depth_monomial_bound(12, 7, 16, 1, &consts()).is_err());
    }
}
