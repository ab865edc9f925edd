//! w-homogeneous circuits and the circuit-to-formula balancing transform.
//!
//! The transform follows the classical degree-halving recursion: pick the set
//! `V` of "frontier" positions where a derivation's w-degree first exceeds
//! half the output w-degree, write the circuit's polynomial as
//! `sum_{v in V} h_v * v1^ * v2^` (with `h_v` the gate quotient of `v`), and
//! recurse on the pieces, whose w-degrees are at most half the original.
//!
//! Frontier positions are product nodes `v = v1 x v2` with
//! `w-deg(v) > k/2 >= w-deg(v1), w-deg(v2)` — the strict threshold guarantees
//! a derivation meets at most one such node — plus input leaves of w-degree
//! above `k/2`: a weighted variable can carry a derivation past `k/2` without
//! passing any qualifying product, so those leaves are frontier elements of
//! their own (with `h_v * v^` as the corresponding term).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Circuit, CircuitBuilder, Formula, NodeId, NodeKind, TreeBuilder};
use crate::poly::{RingMode, SparsePolynomial, Weighting};
use crate::scalar::Scalar;

/// The w-homogeneous circuit computing the Newton polynomial `Z_k` over
/// `x1..xk` (weights `w(x_i) = i`), realizing the recurrence
/// `Z_m = (1/m) (x_1 Z_{m-1} - x_2 Z_{m-2} + ... )` as a DAG that reuses
/// `Z_0..Z_{k-1}`. Fan-in 2 throughout; leaf count is `3k - 2` for `k >= 2`
/// (documented cap: `4 * max(k,1)^2`).
pub fn newton_circuit<T: Scalar>(k: u32) -> Circuit<T> {
    let mut b = CircuitBuilder::new();
    if k == 0 {
        let one = b.constant(T::one());
        return b.finish(one).expect("valid circuit");
    }
    // z_nodes[m] computes Z_m; Z_0 = 1 never materializes as a node, its
    // occurrences are elided from the products instead.
    let mut z_nodes: Vec<Option<NodeId>> = vec![None; k as usize + 1];
    z_nodes[1] = Some(b.var(crate::poly::VarId(1)));
    for m in 2..=k {
        let inv_m = T::one() / T::from_int(m as i64);
        let mut acc: Option<NodeId> = None;
        for i in 1..=m {
            let coeff = if i % 2 == 1 {
                inv_m.clone()
            } else {
                -inv_m.clone()
            };
            let c = b.constant(coeff);
            let y_i = b.var(crate::poly::VarId(i));
            let term = if i == m {
                // x_m * Z_0 with the constant factor Z_0 = 1 elided
                b.prod(vec![c, y_i])
            } else {
                let inner = b.prod(vec![y_i, z_nodes[(m - i) as usize].expect("built")]);
                b.prod(vec![c, inner])
            };
            acc = Some(match acc {
                None => term,
                Some(a) => b.sum(vec![a, term]),
            });
        }
        z_nodes[m as usize] = acc;
    }
    b.finish(z_nodes[k as usize].expect("built"))
        .expect("valid circuit")
}

/// A frontier element: a product node with its two children, or a heavy
/// input leaf (`split == None`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrontierElem {
    pub node: NodeId,
    pub split: Option<(NodeId, NodeId)>,
}

fn checked_w_degrees<T: Scalar>(c: &Circuit<T>, w: &Weighting) -> Result<(Vec<u64>, u64)> {
    if c.max_fan_in() > 2 {
        return Err(Error::structural(
            "circuit must be binarized (fan-in <= 2) for balancing",
        ));
    }
    let wdeg = c.formal_w_degrees(w)?;
    let k = wdeg[c.output().index()];
    for id in c.node_ids() {
        if wdeg[id.index()] > k {
            return Err(Error::structural(format!(
                "node {} has w-degree {} above the output w-degree {k}",
                id.index(),
                wdeg[id.index()]
            )));
        }
    }
    Ok((wdeg, k))
}

/// The frontier `V` of a w-homogeneous fan-in-2 circuit of output w-degree
/// `k >= 2`: product nodes of w-degree `> k/2` whose children both have
/// w-degree `<= k/2`, plus variable leaves of w-degree `> k/2`.
pub fn frontier<T: Scalar>(c: &Circuit<T>, w: &Weighting) -> Result<Vec<FrontierElem>> {
    let (wdeg, k) = checked_w_degrees(c, w)?;
    if k < 2 {
        return Err(Error::precondition(
            "frontier requires output w-degree >= 2",
        ));
    }
    let heavy = |id: NodeId| 2 * wdeg[id.index()] > k;
    let mut out = Vec::new();
    for id in c.node_ids() {
        match c.kind(id) {
            NodeKind::Prod(cs) if heavy(id) && !heavy(cs[0]) && !heavy(cs[1]) => {
                out.push(FrontierElem {
                    node: id,
                    split: Some((cs[0], cs[1])),
                });
            }
            NodeKind::Var(_) if heavy(id) => {
                out.push(FrontierElem { node: id, split: None });
            }
            _ => {}
        }
    }
    if out.is_empty() {
        return Err(Error::structural(
            "empty frontier on a circuit of w-degree >= 2",
        ));
    }
    Ok(out)
}

/// The gate quotient `h_v`: the circuit computing the coefficient of `z` in
/// the polynomial of `C` after replacing gate `v` by a fresh variable `z`.
///
/// Built structurally by tracking, per node `u`, circuit nodes for the
/// z-free part and the z-linear part of `u^`; the z-quadratic part cannot
/// occur once every node w-degree is at most the output w-degree. The result
/// is pruned to the cone of its output and has at most `size(C) + 1` leaves.
pub fn gate_quotient<T: Scalar>(
    c: &Circuit<T>,
    v: NodeId,
    w: &Weighting,
) -> Result<Circuit<T>> {
    let (_, _) = checked_w_degrees(c, w)?;
    if v.index() >= c.len() {
        return Err(Error::NodeNotFound(v));
    }
    let mut b = CircuitBuilder::new();
    // (z-free part, z-linear part); None encodes the zero polynomial
    let mut parts: Vec<(Option<NodeId>, Option<NodeId>)> = Vec::with_capacity(c.len());
    for id in c.node_ids() {
        let entry = if id == v {
            (None, Some(b.constant(T::one())))
        } else {
            match c.kind(id) {
                NodeKind::Var(x) => (Some(b.var(*x)), None),
                NodeKind::Const(a) => (Some(b.constant(a.clone())), None),
                NodeKind::Sum(cs) => {
                    let (a0, b0) = parts[cs[0].index()];
                    let (a1, b1) = parts[cs[1].index()];
                    (opt_sum(&mut b, a0, a1), opt_sum(&mut b, b0, b1))
                }
                NodeKind::Prod(cs) => {
                    let (a0, b0) = parts[cs[0].index()];
                    let (a1, b1) = parts[cs[1].index()];
                    if b0.is_some() && b1.is_some() {
                        return Err(Error::internal(
                            "gate quotient is nonlinear in the replaced gate",
                        ));
                    }
                    let lin = match (b0, b1) {
                        (Some(b0), None) => opt_prod(&mut b, Some(b0), a1),
                        (None, Some(b1)) => opt_prod(&mut b, a0, Some(b1)),
                        _ => None,
                    };
                    (opt_prod(&mut b, a0, a1), lin)
                }
            }
        };
        parts.push(entry);
    }
    let out = match parts[c.output().index()].1 {
        Some(id) => id,
        None => b.constant(T::zero()),
    };
    let full = b.finish(out)?;
    full.cone(full.output())
}

fn opt_sum<T: Scalar>(b: &mut CircuitBuilder<T>, x: Option<NodeId>, y: Option<NodeId>) -> Option<NodeId> {
    match (x, y) {
        (Some(x), Some(y)) => Some(b.sum(vec![x, y])),
        (Some(x), None) => Some(x),
        (None, Some(y)) => Some(y),
        (None, None) => None,
    }
}

fn opt_prod<T: Scalar>(b: &mut CircuitBuilder<T>, x: Option<NodeId>, y: Option<NodeId>) -> Option<NodeId> {
    match (x, y) {
        (Some(x), Some(y)) => Some(b.prod(vec![x, y])),
        _ => None,
    }
}

/// Verify `expand(C) = sum_{v in V} h_v * v1^ * v2^` (with `h_v * v^` for
/// leaf elements) by full symbolic expansion.
pub fn frontier_identity_holds<T: Scalar>(c: &Circuit<T>, w: &Weighting) -> Result<bool> {
    let elems = frontier(c, w)?;
    let polys = c.expand_nodes(RingMode::Commutative);
    let mut acc = SparsePolynomial::<T>::zero(RingMode::Commutative);
    for elem in &elems {
        let h = gate_quotient(c, elem.node, w)?.expand(RingMode::Commutative);
        let gate_poly = match elem.split {
            Some((a, b)) => polys[a.index()].mul(&polys[b.index()])?,
            None => polys[elem.node.index()].clone(),
        };
        acc = acc.add(&h.mul(&gate_poly)?)?;
    }
    Ok(acc == polys[c.output().index()])
}

/// Build a formula computing the given polynomial directly: a sum of one
/// product per term.
pub fn polynomial_to_formula<T: Scalar>(p: &SparsePolynomial<T>) -> Formula<T> {
    let mut b = TreeBuilder::new();
    if p.is_zero() {
        let z = b.constant(T::zero());
        return b.finish(z).expect("valid formula");
    }
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut factors = Vec::new();
        if !c.is_one() || m.is_one() {
            factors.push(b.constant(c.clone()));
        }
        match m {
            crate::poly::Monomial::Commutative(ps) => {
                for &(v, e) in ps {
                    for _ in 0..e {
                        factors.push(b.var(v));
                    }
                }
            }
            crate::poly::Monomial::Ordered(vs) => {
                for &v in vs {
                    factors.push(b.var(v));
                }
            }
        }
        terms.push(b.prod(factors));
    }
    let root = b.sum(terms);
    b.finish(root).expect("valid formula")
}

/// Transform a w-homogeneous fan-in-2 circuit into a w-homogeneous formula
/// computing the same polynomial.
///
/// w-degree <= 1 outputs are rebuilt directly from their (at most
/// size-many-term) expansion; otherwise the frontier decomposition is applied
/// and the recursion runs on the subcircuits of the frontier children and on
/// the gate-quotient circuits, all of w-degree at most half the original.
/// The decomposition identity is re-checked symbolically on every call.
pub fn circuit_to_formula<T: Scalar>(c: &Circuit<T>, w: &Weighting) -> Result<Formula<T>> {
    let (_, k) = checked_w_degrees(c, w)?;
    if k <= 1 {
        return Ok(polynomial_to_formula(&c.expand(RingMode::Commutative)));
    }
    let elems = frontier(c, w)?;
    let mut cone_formulas: BTreeMap<NodeId, Formula<T>> = BTreeMap::new();
    let build_cone = |node: NodeId, memo: &mut BTreeMap<NodeId, Formula<T>>| -> Result<Formula<T>> {
        if let Some(f) = memo.get(&node) {
            return Ok(f.clone());
        }
        let f = circuit_to_formula(&c.cone(node)?, w)?;
        memo.insert(node, f.clone());
        Ok(f)
    };
    let mut b = TreeBuilder::new();
    let mut parts = Vec::new();
    for elem in &elems {
        let h_circ = gate_quotient(c, elem.node, w)?;
        let h_poly = h_circ.expand(RingMode::Commutative);
        if h_poly.is_zero() {
            continue;
        }
        let f_h = circuit_to_formula(&h_circ, w)?;
        let h_id = b.copy_subtree(&f_h, f_h.root());
        let part = match elem.split {
            Some((left, right)) => {
                let f_left = build_cone(left, &mut cone_formulas)?;
                let f_right = build_cone(right, &mut cone_formulas)?;
                let l_id = b.copy_subtree(&f_left, f_left.root());
                let r_id = b.copy_subtree(&f_right, f_right.root());
                b.prod(vec![h_id, l_id, r_id])
            }
            None => {
                let NodeKind::Var(x) = c.kind(elem.node) else {
                    return Err(Error::internal("leaf frontier element is not a variable"));
                };
                let v_id = b.var(*x);
                b.prod(vec![h_id, v_id])
            }
        };
        parts.push(part);
    }
    let root = b.sum(parts);
    let result = b.finish(root)?;
    if result.expand(RingMode::Commutative) != c.expand(RingMode::Commutative) {
        return Err(Error::internal(
            "balancing decomposition identity failed symbolic verification",
        ));
    }
    Ok(result)
}
