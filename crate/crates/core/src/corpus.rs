//! Seeded random corpora for the property suites: arbitrary formulas,
//! homogeneous multilinear fan-in-2 formulas, bounded-product-depth formulas,
//! and w-homogeneous circuits. All generation is deterministic in the seed.

use std::collections::BTreeMap;

use crate::formula::{Circuit, CircuitBuilder, Formula, NodeId, TreeBuilder};
use crate::poly::{RingMode, VarId, Weighting};
use crate::rng::Rng;
use crate::Rat;

fn small_rational(rng: &mut Rng, allow_zero: bool) -> Rat {
    loop {
        let num = rng.range(0, 12) as i64 - 6;
        if num == 0 && !allow_zero {
            continue;
        }
        let den = rng.range(1, 4) as i64;
        return Rat::new(num.into(), den.into());
    }
}

fn shuffled(rng: &mut Rng, vars: &[u32]) -> Vec<u32> {
    let mut out = vars.to_vec();
    for i in (1..out.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        out.swap(i, j);
    }
    out
}

/// An arbitrary-shape random formula over `x1..xn` with at most `max_size`
/// leaves: mixed sums/products of fan-in 2-3, signed rational constants.
pub fn random_formula(rng: &mut Rng, n_vars: u32, max_size: u64) -> Formula<Rat> {
    fn gen(rng: &mut Rng, b: &mut TreeBuilder<Rat>, n_vars: u32, budget: u64) -> (NodeId, u64) {
        if budget <= 2 || rng.coin(1, 4) {
            if rng.coin(3, 4) {
                (b.var(VarId(rng.range(1, n_vars as u64) as u32)), 1)
            } else {
                let c = small_rational(rng, true);
                (b.constant(c), 1)
            }
        } else {
            let arity = rng.range(2, 3);
            let mut used = 0;
            let mut children = Vec::new();
            for i in 0..arity {
                let share = (budget - used) / (arity - i);
                let (id, leaves) = gen(rng, b, n_vars, share.max(1));
                children.push(id);
                used += leaves;
            }
            let id = if rng.coin(1, 2) {
                b.sum(children)
            } else {
                b.prod(children)
            };
            (id, used)
        }
    }
    let mut b = TreeBuilder::new();
    let (root, _) = gen(rng, &mut b, n_vars.max(1), max_size.max(2));
    b.finish(root).expect("generated tree is valid")
}

/// A random rational point covering `x1..xn`.
pub fn random_point(rng: &mut Rng, n_vars: u32) -> BTreeMap<VarId, Rat> {
    (1..=n_vars)
        .map(|i| (VarId(i), small_rational(rng, true)))
        .collect()
}

/// A homogeneous multilinear sample: the formula, its variable universe size,
/// and its degree.
#[derive(Debug, Clone)]
pub struct HomogeneousSample {
    pub formula: Formula<Rat>,
    pub universe: u32,
    pub degree: u32,
}

/// Seeded corpus of random homogeneous multilinear fan-in-2 formulas
/// (degree 2-8, universe up to 16 variables with `n >= 2k`, size <= 80).
/// Every node expands to a nonzero polynomial; samples violating that are
/// regenerated, deterministically.
pub fn homogeneous_multilinear_corpus(seed: u64, count: usize) -> Vec<HomogeneousSample> {
    let mut rng = Rng::new(seed ^ 0x484f4d4f47454e); // section-specific stream
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.range(2, 8) as u32;
        let universe = rng.range(2 * k as u64, 16) as u32;
        let vars: Vec<u32> = (1..=universe).collect();
        let mut b = TreeBuilder::new();
        let root = gen_homog(&mut rng, &mut b, &vars, k, 3);
        let formula = b.finish(root).expect("generated tree is valid");
        if formula.size() > 80 {
            continue;
        }
        // regenerate on internal cancellation so degrees stay meaningful
        let polys = formula.as_circuit().expand_nodes(RingMode::Commutative);
        if polys.iter().any(|p| p.is_zero()) {
            continue;
        }
        out.push(HomogeneousSample {
            formula,
            universe,
            degree: k,
        });
    }
    out
}

/// Homogeneous multilinear fan-in-2 subtree of exact degree `deg` over a
/// disjoint slice of `vars`; `sum_budget` throttles sum fan-out so sizes stay
/// small.
fn gen_homog(
    rng: &mut Rng,
    b: &mut TreeBuilder<Rat>,
    vars: &[u32],
    deg: u32,
    sum_budget: u32,
) -> NodeId {
    debug_assert!(vars.len() as u32 >= deg && deg >= 1);
    if deg == 1 {
        let width = rng.range(1, 3.min(vars.len() as u64)) as usize;
        let picked = shuffled(rng, vars);
        let mut acc: Option<NodeId> = None;
        for &v in picked.iter().take(width) {
            let term = if rng.coin(1, 2) {
                b.var(VarId(v))
            } else {
                let c = b.constant(small_rational(rng, false));
                let x = b.var(VarId(v));
                b.prod(vec![c, x])
            };
            acc = Some(match acc {
                None => term,
                Some(a) => b.sum(vec![a, term]),
            });
        }
        return acc.expect("width >= 1");
    }
    if sum_budget > 0 && rng.coin(1, 3) {
        let left = gen_homog(rng, b, vars, deg, sum_budget - 1);
        let right = gen_homog(rng, b, vars, deg, sum_budget - 1);
        return b.sum(vec![left, right]);
    }
    // product split: degrees d1 + d2 = deg over disjoint variable slices
    let d1 = rng.range(1, deg as u64 - 1) as u32;
    let d2 = deg - d1;
    let pool = shuffled(rng, vars);
    let need_right = d2 as usize;
    let max_left = pool.len() - need_right;
    let left_len = rng.range(d1 as u64, max_left as u64) as usize;
    let (left_vars, right_vars) = pool.split_at(left_len);
    let left = gen_homog(rng, b, left_vars, d1, sum_budget.saturating_sub(1));
    let right = gen_homog(rng, b, right_vars, d2, sum_budget.saturating_sub(1));
    b.prod(vec![left, right])
}

/// A bounded-product-depth multilinear homogeneous sample with the form
/// parameters it is meant to be decomposed under.
#[derive(Debug, Clone)]
pub struct BoundedDepthSample {
    pub formula: Formula<Rat>,
    pub universe: u32,
    pub degree: u32,
    pub product_depth: u32,
    pub q: u32,
}

/// Seeded corpus of multilinear homogeneous formulas of product-depth at
/// most `d` for `d = 1, 2, 3`, with degrees beyond the `k (2q)^{-d} > 1`
/// threshold at `q = 2`, plus deep high-degree samples (`k >= 64`) where the
/// constant-depth monomial bound's `k^{1/d} >= 8` hypothesis holds. Monomial
/// counts are kept small by biasing factors toward single variables.
pub fn bounded_depth_corpus(seed: u64) -> Vec<BoundedDepthSample> {
    let mut rng = Rng::new(seed ^ 0x0044_4550_5448); // section-specific stream
    let mut out = Vec::new();
    let q = 2u32;
    let push = |rng: &mut Rng, out: &mut Vec<BoundedDepthSample>, k: u32, d: u32| {
        let universe = 2 * k + rng.range(0, 4) as u32;
        let vars: Vec<u32> = (1..=universe).collect();
        loop {
            let mut b = TreeBuilder::new();
            let mut mono_budget = 2048u64;
            let root = gen_depth(rng, &mut b, &vars, k, d, &mut mono_budget, 2);
            let formula = b.finish(root).expect("generated tree is valid");
            let polys = formula.as_circuit().expand_nodes(RingMode::Commutative);
            if polys.iter().any(|p| p.is_zero()) {
                continue;
            }
            out.push(BoundedDepthSample {
                formula,
                universe,
                degree: k,
                product_depth: d,
                q,
            });
            break;
        }
    };
    for _ in 0..12 {
        let k = rng.range(5, 9) as u32;
        push(&mut rng, &mut out, k, 1);
    }
    for _ in 0..8 {
        let k = rng.range(17, 20) as u32;
        push(&mut rng, &mut out, k, 2);
    }
    // high-degree depth-2 samples where k^(1/2) >= 8 holds
    for _ in 0..3 {
        let k = rng.range(64, 66) as u32;
        push(&mut rng, &mut out, k, 2);
    }
    for _ in 0..5 {
        let k = rng.range(65, 68) as u32;
        push(&mut rng, &mut out, k, 3);
    }
    out
}

/// Multilinear homogeneous subtree of exact degree `deg` with product-depth
/// at most `d`, over a disjoint slice of `vars`.
fn gen_depth(
    rng: &mut Rng,
    b: &mut TreeBuilder<Rat>,
    vars: &[u32],
    deg: u32,
    d: u32,
    mono_budget: &mut u64,
    sum_budget: u32,
) -> NodeId {
    debug_assert!(vars.len() as u32 >= deg);
    if deg == 1 {
        if *mono_budget >= 2 && vars.len() >= 2 && rng.coin(1, 4) {
            *mono_budget = mono_budget.saturating_sub(*mono_budget / 2);
            let picked = shuffled(rng, vars);
            let x = b.var(VarId(picked[0]));
            let y = b.var(VarId(picked[1]));
            return b.sum(vec![x, y]);
        }
        let v = vars[rng.below(vars.len() as u64) as usize];
        return b.var(VarId(v));
    }
    if d == 0 {
        unreachable!("degree above 1 requires product budget");
    }
    if sum_budget > 0 && rng.coin(1, 5) {
        let left = gen_depth(rng, b, vars, deg, d, mono_budget, sum_budget - 1);
        let right = gen_depth(rng, b, vars, deg, d, mono_budget, sum_budget - 1);
        return b.sum(vec![left, right]);
    }
    // product node: partition the degree into parts buildable at depth d-1;
    // at d == 1 every part must be linear
    let parts: Vec<u32> = if d == 1 {
        vec![1; deg as usize]
    } else {
        let mut remaining = deg;
        let mut parts = Vec::new();
        while remaining > 0 {
            let cap = if d == 2 { remaining.min(6) } else { remaining };
            let part = if remaining <= 2 {
                remaining
            } else {
                rng.range(1, cap as u64) as u32
            };
            parts.push(part);
            remaining -= part;
        }
        if parts.len() == 1 {
            // a product needs at least two factors; peel one degree off
            let only = parts[0];
            parts.clear();
            parts.push(only - 1);
            parts.push(1);
        }
        parts
    };
    let pool = shuffled(rng, vars);
    let mut children = Vec::with_capacity(parts.len());
    let mut offset = 0usize;
    for (i, &part) in parts.iter().enumerate() {
        // leave enough variables for the remaining parts, spend the rest here
        let need_rest: usize = parts[i + 1..].iter().map(|&p| p as usize).sum();
        let available = pool.len() - offset - need_rest;
        debug_assert!(available >= part as usize);
        let take = if i + 1 == parts.len() {
            available
        } else {
            part as usize + rng.below((available - part as usize) as u64 + 1) as usize
        };
        let slice = &pool[offset..offset + take];
        offset += take;
        children.push(gen_depth(
            rng,
            b,
            slice,
            part,
            d - 1,
            mono_budget,
            sum_budget.saturating_sub(1),
        ));
    }
    b.prod(children)
}

/// Seeded corpus of w-homogeneous fan-in-2 circuits with ascending integer
/// weights, built bottom-up with node sharing; every node's w-degree stays
/// at or below the output's.
pub fn w_homogeneous_circuits(seed: u64, count: usize) -> Vec<(Circuit<Rat>, Weighting)> {
    let mut rng = Rng::new(seed ^ 0x57484f4d4f47);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let m = rng.range(3, 6) as u32;
        let target = rng.range(4, 10).max(m as u64 + 1);
        let mut b = CircuitBuilder::new();
        // pool of nodes by w-degree for sharing
        let mut pool: BTreeMap<u64, Vec<NodeId>> = BTreeMap::new();
        for i in 1..=m {
            pool.entry(i as u64).or_default().push(b.var(VarId(i)));
        }
        let root = gen_w_node(&mut rng, &mut b, &mut pool, m, target);
        let circuit = b.finish(root).expect("generated circuit is valid");
        let pruned = circuit.cone(circuit.output()).expect("cone of output");
        let weights = Weighting::ascending(m);
        debug_assert!(pruned.formal_w_degrees(&weights).is_ok());
        out.push((pruned, weights));
    }
    out
}

fn gen_w_node(
    rng: &mut Rng,
    b: &mut CircuitBuilder<Rat>,
    pool: &mut BTreeMap<u64, Vec<NodeId>>,
    m: u32,
    target: u64,
) -> NodeId {
    debug_assert!(target >= 1);
    // reuse an existing node of this w-degree half the time
    if rng.coin(1, 2) {
        if let Some(nodes) = pool.get(&target) {
            if !nodes.is_empty() {
                return nodes[rng.below(nodes.len() as u64) as usize];
            }
        }
    }
    let node = if target <= m as u64 && rng.coin(1, 3) {
        b.var(VarId(target as u32))
    } else if target == 1 {
        // no split possible below weight 2; use the weight-1 variable,
        // possibly scaled
        let x = b.var(VarId(1));
        if rng.coin(1, 2) {
            let c = b.constant(small_rational(rng, false));
            b.prod(vec![c, x])
        } else {
            x
        }
    } else {
        match rng.below(3) {
            0 => {
                // product split
                let a = rng.range(1, target - 1);
                let left = gen_w_node(rng, b, pool, m, a);
                let right = gen_w_node(rng, b, pool, m, target - a);
                b.prod(vec![left, right])
            }
            1 => {
                // sum of equal w-degrees
                let left = gen_w_node(rng, b, pool, m, target);
                let right = gen_w_node(rng, b, pool, m, target);
                b.sum(vec![left, right])
            }
            _ => {
                // scalar multiple
                let c = b.constant(small_rational(rng, false));
                let inner = gen_w_node(rng, b, pool, m, target);
                b.prod(vec![c, inner])
            }
        }
    };
    pool.entry(target).or_default().push(node);
    node
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingMode;

    #[test]
    fn corpora_are_deterministic() {
        let a = homogeneous_multilinear_corpus(7, 5);
        let b = homogeneous_multilinear_corpus(7, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.formula, y.formula);
        }
        let mut r1 = Rng::new(3);
        let mut r2 = Rng::new(3);
        assert_eq!(
            random_formula(&mut r1, 5, 30),
            random_formula(&mut r2, 5, 30)
        );
    }

    #[test]
    fn homogeneous_corpus_properties_hold() {
        for sample in homogeneous_multilinear_corpus(11, 10) {
            let f = &sample.formula;
            assert!(f.max_fan_in() <= 2);
            assert!(f.size() <= 80);
            assert!(f.variables().len() as u32 <= sample.universe);
            assert!(sample.universe >= 2 * sample.degree);
            let report = f.verify_properties(None).unwrap();
            assert!(report.homogeneous.ok);
            assert!(report.multilinear.ok);
            assert!(report.syntactically_multilinear.ok);
            assert_eq!(f.formal_degree(f.root()), sample.degree as u64);
        }
    }

    #[test]
    fn bounded_depth_corpus_properties_hold() {
        for sample in bounded_depth_corpus(13) {
            let f = &sample.formula;
            let stats = f.analyze();
            assert!(stats.product_depth <= sample.product_depth as u64);
            assert_eq!(stats.formal_degree, sample.degree as u64);
            let report = f.verify_properties(None).unwrap();
            assert!(report.homogeneous.ok);
            assert!(report.multilinear.ok);
            // the form threshold is satisfied
            let two_q = 2 * sample.q as u64;
            assert!(
                (sample.degree as u64) > two_q.pow(sample.product_depth),
                "k={} d={} q={}",
                sample.degree,
                sample.product_depth,
                sample.q
            );
            // expansion stays desk-scale
            assert!(f.expand(RingMode::Commutative).monomial_count() <= 5000);
        }
    }

    #[test]
    fn w_circuit_corpus_is_w_homogeneous() {
        for (c, w) in w_homogeneous_circuits(17, 10) {
            let wdeg = c.formal_w_degrees(&w).unwrap();
            let k = wdeg[c.output().index()];
            assert!(wdeg.iter().all(|&d| d <= k));
            assert!(c.max_fan_in() <= 2);
        }
    }
}
