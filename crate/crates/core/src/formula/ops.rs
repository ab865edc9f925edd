//! Semantic operations on circuits and formulas: symbolic expansion, point
//! evaluation, per-node property verification, and the structural transforms
//! (binarize, substitute, restrict, abs-constants).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{RingMode, SparsePolynomial, VarId, Weighting};
use crate::scalar::Scalar;

use super::{Circuit, Formula, NodeId, NodeKind, TreeBuilder};

impl<T: Scalar> Circuit<T> {
    /// Exact symbolic expansion of every node, in topological order; shared
    /// subresults are expanded once and reused.
    pub fn expand_nodes(&self, mode: RingMode) -> Vec<SparsePolynomial<T>> {
        let mut polys: Vec<SparsePolynomial<T>> = Vec::with_capacity(self.len());
        for id in self.node_ids() {
            let p = match self.kind(id) {
                NodeKind::Var(v) => SparsePolynomial::var(*v, mode),
                NodeKind::Const(c) => SparsePolynomial::constant(c.clone(), mode),
                NodeKind::Sum(cs) => {
                    let mut acc = polys[cs[0].index()].clone();
                    for c in &cs[1..] {
                        acc = acc.add(&polys[c.index()]).expect("uniform mode");
                    }
                    acc
                }
                NodeKind::Prod(cs) => {
                    // left-to-right: the stored child order is the
                    // noncommutative multiplication order
                    let mut acc = polys[cs[0].index()].clone();
                    for c in &cs[1..] {
                        acc = acc.mul(&polys[c.index()]).expect("uniform mode");
                    }
                    acc
                }
            };
            polys.push(p);
        }
        polys
    }

    /// The polynomial computed at the output.
    pub fn expand(&self, mode: RingMode) -> SparsePolynomial<T> {
        let mut polys = self.expand_nodes(mode);
        polys.swap_remove(self.output().index())
    }

    /// Evaluate at a rational point; errors on the first missing variable.
    pub fn eval(&self, point: &BTreeMap<VarId, T>) -> Result<T> {
        let mut vals: Vec<T> = Vec::with_capacity(self.len());
        for id in self.node_ids() {
            let v = match self.kind(id) {
                NodeKind::Var(x) => point.get(x).ok_or(Error::MissingVariable(*x))?.clone(),
                NodeKind::Const(c) => c.clone(),
                NodeKind::Sum(cs) => {
                    let mut acc = vals[cs[0].index()].clone();
                    for c in &cs[1..] {
                        acc = acc + vals[c.index()].clone();
                    }
                    acc
                }
                NodeKind::Prod(cs) => {
                    let mut acc = vals[cs[0].index()].clone();
                    for c in &cs[1..] {
                        acc = acc * vals[c.index()].clone();
                    }
                    acc
                }
            };
            vals.push(v);
        }
        Ok(vals.swap_remove(self.output().index()))
    }
}

/// One per-node property check: whether it held at every node, and the first
/// offending node when it did not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropCheck {
    pub ok: bool,
    pub first_offender: Option<NodeId>,
}

impl PropCheck {
    fn pass() -> Self {
        PropCheck {
            ok: true,
            first_offender: None,
        }
    }

    fn fail(node: NodeId) -> Self {
        PropCheck {
            ok: false,
            first_offender: Some(node),
        }
    }
}

/// Result of per-node property verification.
///
/// `homogeneous`, `w_homogeneous` and `multilinear` are semantic: each node's
/// polynomial is expanded and inspected, and the formula passes only if every
/// node does. `syntactically_multilinear` asks product children to use
/// disjoint variable sets; `monotone` scans constants for nonnegativity.
/// `sum_degrees_consistent` is the formal-degree side condition: all children
/// of every sum node have equal formal degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub homogeneous: PropCheck,
    pub w_homogeneous: PropCheck,
    pub multilinear: PropCheck,
    pub syntactically_multilinear: PropCheck,
    pub monotone: PropCheck,
    pub sum_degrees_consistent: PropCheck,
}

impl PropertyReport {
    pub fn all_of(&self, checks: &[&str]) -> bool {
        checks.iter().all(|name| match *name {
            "homogeneous" => self.homogeneous.ok,
            "w_homogeneous" => self.w_homogeneous.ok,
            "multilinear" => self.multilinear.ok,
            "syntactically_multilinear" => self.syntactically_multilinear.ok,
            "monotone" => self.monotone.ok,
            _ => false,
        })
    }
}

impl<T: Scalar> Formula<T> {
    /// Per-node verification of homogeneity, w-homogeneity, multilinearity,
    /// syntactic multilinearity and monotonicity. With `weights == None` the
    /// w-check uses the all-ones weighting (so it coincides with plain
    /// homogeneity). Errors if a supplied weighting misses a variable.
    pub fn verify_properties(&self, weights: Option<&Weighting>) -> Result<PropertyReport> {
        let owned;
        let w = match weights {
            Some(w) => w,
            None => {
                owned = Weighting::uniform(self.variables().iter().copied());
                &owned
            }
        };
        let polys = self.as_circuit().expand_nodes(RingMode::Commutative);

        let mut homogeneous = PropCheck::pass();
        let mut w_homogeneous = PropCheck::pass();
        let mut multilinear = PropCheck::pass();
        let mut syntactic = PropCheck::pass();
        let mut monotone = PropCheck::pass();
        let mut sum_degrees = PropCheck::pass();

        for id in self.node_ids() {
            let poly = &polys[id.index()];
            if homogeneous.ok && !poly.is_homogeneous() {
                homogeneous = PropCheck::fail(id);
            }
            if w_homogeneous.ok && !poly.is_w_homogeneous(w)? {
                w_homogeneous = PropCheck::fail(id);
            }
            if multilinear.ok && !poly.is_multilinear() {
                multilinear = PropCheck::fail(id);
            }
            match self.kind(id) {
                NodeKind::Const(c) => {
                    if monotone.ok && c.is_negative() {
                        monotone = PropCheck::fail(id);
                    }
                }
                NodeKind::Prod(cs) => {
                    if syntactic.ok {
                        let mut seen: std::collections::BTreeSet<VarId> =
                            std::collections::BTreeSet::new();
                        'outer: for c in cs {
                            for v in self.var_set(*c) {
                                if !seen.insert(*v) {
                                    syntactic = PropCheck::fail(id);
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                NodeKind::Sum(cs) => {
                    if sum_degrees.ok {
                        let d0 = self.formal_degree(cs[0]);
                        if cs[1..].iter().any(|c| self.formal_degree(*c) != d0) {
                            sum_degrees = PropCheck::fail(id);
                        }
                    }
                }
                NodeKind::Var(_) => {}
            }
        }
        Ok(PropertyReport {
            homogeneous,
            w_homogeneous,
            multilinear,
            syntactically_multilinear: syntactic,
            monotone,
            sum_degrees_consistent: sum_degrees,
        })
    }

    pub fn expand(&self, mode: RingMode) -> SparsePolynomial<T> {
        self.as_circuit().expand(mode)
    }

    pub fn eval(&self, point: &BTreeMap<VarId, T>) -> Result<T> {
        self.as_circuit().eval(point)
    }

    /// Left-deep binarization: fan-in <= 2 everywhere, expansion, leaf count
    /// and per-node properties unchanged. Association follows stored child
    /// order, so noncommutative expansion is preserved as well.
    pub fn binarize(&self) -> Formula<T> {
        fn rec<T: Scalar>(src: &Formula<T>, id: NodeId, out: &mut TreeBuilder<T>) -> NodeId {
            match src.kind(id) {
                NodeKind::Var(v) => out.var(*v),
                NodeKind::Const(c) => {
                    let c = c.clone();
                    out.constant(c)
                }
                NodeKind::Sum(cs) => {
                    let cs = cs.clone();
                    let mut acc = rec(src, cs[0], out);
                    for c in &cs[1..] {
                        let rhs = rec(src, *c, out);
                        acc = out.sum(vec![acc, rhs]);
                    }
                    acc
                }
                NodeKind::Prod(cs) => {
                    let cs = cs.clone();
                    let mut acc = rec(src, cs[0], out);
                    for c in &cs[1..] {
                        let rhs = rec(src, *c, out);
                        acc = out.prod(vec![acc, rhs]);
                    }
                    acc
                }
            }
        }
        let mut b = TreeBuilder::new();
        let root = rec(self, self.root(), &mut b);
        b.finish(root).expect("binarize preserves tree shape")
    }

    /// Replace every occurrence of each variable by a fresh copy of its
    /// substitute formula. Every variable of `self` must be covered.
    pub fn substitute(&self, subs: &BTreeMap<VarId, Formula<T>>) -> Result<Formula<T>> {
        for v in self.variables() {
            if !subs.contains_key(v) {
                return Err(Error::MissingSubstitution(*v));
            }
        }
        fn rec<T: Scalar>(
            src: &Formula<T>,
            id: NodeId,
            subs: &BTreeMap<VarId, Formula<T>>,
            out: &mut TreeBuilder<T>,
        ) -> NodeId {
            match src.kind(id) {
                NodeKind::Var(v) => {
                    let sub = &subs[v];
                    out.copy_subtree(sub, sub.root())
                }
                NodeKind::Const(c) => {
                    let c = c.clone();
                    out.constant(c)
                }
                NodeKind::Sum(cs) => {
                    let copied: Vec<NodeId> = cs
                        .clone()
                        .into_iter()
                        .map(|c| rec(src, c, subs, out))
                        .collect();
                    out.sum(copied)
                }
                NodeKind::Prod(cs) => {
                    let copied: Vec<NodeId> = cs
                        .clone()
                        .into_iter()
                        .map(|c| rec(src, c, subs, out))
                        .collect();
                    out.prod(copied)
                }
            }
        }
        let mut b = TreeBuilder::new();
        let root = rec(self, self.root(), subs, &mut b);
        b.finish(root)
    }

    /// The restriction: delete the edges into `node` and relabel it with the
    /// field element `alpha`. The detached subtree stays available via
    /// [`Formula::subformula`].
    pub fn restrict(&self, node: NodeId, alpha: T) -> Result<Formula<T>> {
        if !self.contains(node) {
            return Err(Error::NodeNotFound(node));
        }
        fn rec<T: Scalar>(
            src: &Formula<T>,
            id: NodeId,
            target: NodeId,
            alpha: &T,
            out: &mut TreeBuilder<T>,
        ) -> NodeId {
            if id == target {
                return out.constant(alpha.clone());
            }
            match src.kind(id) {
                NodeKind::Var(v) => out.var(*v),
                NodeKind::Const(c) => {
                    let c = c.clone();
                    out.constant(c)
                }
                NodeKind::Sum(cs) => {
                    let copied: Vec<NodeId> = cs
                        .clone()
                        .into_iter()
                        .map(|c| rec(src, c, target, alpha, out))
                        .collect();
                    out.sum(copied)
                }
                NodeKind::Prod(cs) => {
                    let copied: Vec<NodeId> = cs
                        .clone()
                        .into_iter()
                        .map(|c| rec(src, c, target, alpha, out))
                        .collect();
                    out.prod(copied)
                }
            }
        }
        let mut b = TreeBuilder::new();
        let root = rec(self, self.root(), node, &alpha, &mut b);
        b.finish(root)
    }

    /// The subformula rooted at `node`, as a formula of its own.
    pub fn subformula(&self, node: NodeId) -> Result<Formula<T>> {
        if !self.contains(node) {
            return Err(Error::NodeNotFound(node));
        }
        let mut b = TreeBuilder::new();
        let root = b.copy_subtree(self, node);
        b.finish(root)
    }

    /// Replace every constant `a` by `|a|`. The result is monotone and the
    /// size is unchanged; for multilinear formulas no monomial of the
    /// expansion is lost.
    pub fn abs_constants(&self) -> Formula<T> {
        fn rec<T: Scalar>(src: &Formula<T>, id: NodeId, out: &mut TreeBuilder<T>) -> NodeId {
            match src.kind(id) {
                NodeKind::Var(v) => out.var(*v),
                NodeKind::Const(c) => {
                    let c = c.abs();
                    out.constant(c)
                }
                NodeKind::Sum(cs) => {
                    let copied: Vec<NodeId> =
                        cs.clone().into_iter().map(|c| rec(src, c, out)).collect();
                    out.sum(copied)
                }
                NodeKind::Prod(cs) => {
                    let copied: Vec<NodeId> =
                        cs.clone().into_iter().map(|c| rec(src, c, out)).collect();
                    out.prod(copied)
                }
            }
        }
        let mut b = TreeBuilder::new();
        let root = rec(self, self.root(), &mut b);
        b.finish(root).expect("abs_constants preserves tree shape")
    }
}
