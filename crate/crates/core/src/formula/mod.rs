//! Arithmetic expression IR: circuits (DAGs) and formulas (trees).
//!
//! A circuit is a node arena in topological order (children strictly precede
//! parents) with one designated output; sums and products have fan-in at
//! least two. A formula is a circuit whose graph is a tree: every node except
//! the output has exactly one parent. Both are immutable after construction;
//! transforms build new values.
//!
//! Size is the number of leaves: leaf occurrences for a formula, leaf nodes
//! (each counted once) for a circuit — for a tree the two coincide. Depth is
//! the longest directed path in edges; product-depth the largest number of
//! product nodes on a directed path. Product-depth is primarily a formula
//! notion; for circuits we report the same maximum over all paths.

mod ops;
mod sexpr;

pub use ops::{PropCheck, PropertyReport};
pub use sexpr::parse_formula;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::VarId;
use crate::scalar::Scalar;

/// Index of a node inside its owning circuit or formula arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind<T> {
    Var(VarId),
    Const(T),
    Sum(Vec<NodeId>),
    Prod(Vec<NodeId>),
}

impl<T> NodeKind<T> {
    pub fn children(&self) -> &[NodeId] {
        match self {
            NodeKind::Var(_) | NodeKind::Const(_) => &[],
            NodeKind::Sum(cs) | NodeKind::Prod(cs) => cs,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, NodeKind::Var(_) | NodeKind::Const(_))
    }
}

/// Structural measurements shared by circuits and formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructStats {
    pub size: u64,
    pub depth: u64,
    pub product_depth: u64,
    pub formal_degree: u64,
    pub variables: BTreeSet<VarId>,
}

/// An arithmetic circuit: node arena in topological order plus an output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit<T: Scalar> {
    nodes: Vec<NodeKind<T>>,
    output: NodeId,
}

impl<T: Scalar> Circuit<T> {
    /// Validates topological order (children strictly before parents, which
    /// also rules out cycles), fan-in >= 2, and the output index.
    pub fn new(nodes: Vec<NodeKind<T>>, output: NodeId) -> Result<Self> {
        if output.index() >= nodes.len() {
            return Err(Error::structural("output node out of range"));
        }
        for (i, node) in nodes.iter().enumerate() {
            match node {
                NodeKind::Var(_) | NodeKind::Const(_) => {}
                NodeKind::Sum(cs) | NodeKind::Prod(cs) => {
                    if cs.len() < 2 {
                        return Err(Error::structural(format!(
                            "node {i} has fan-in {} (< 2)",
                            cs.len()
                        )));
                    }
                    for c in cs {
                        if c.index() >= i {
                            return Err(Error::structural(format!(
                                "node {i} references node {} out of topological order",
                                c.index()
                            )));
                        }
                    }
                }
            }
        }
        Ok(Circuit { nodes, output })
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn kind(&self, id: NodeId) -> &NodeKind<T> {
        &self.nodes[id.index()]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(|i| NodeId(i as u32))
    }

    /// Nodes reachable from the output.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.output];
        while let Some(id) = stack.pop() {
            if seen[id.index()] {
                continue;
            }
            seen[id.index()] = true;
            stack.extend(self.kind(id).children().iter().copied());
        }
        seen
    }

    /// Leaf count for size: distinct leaf nodes reachable from the output.
    pub fn size(&self) -> u64 {
        let reach = self.reachable();
        self.nodes
            .iter()
            .enumerate()
            .filter(|(i, n)| reach[*i] && n.is_leaf())
            .count() as u64
    }

    /// Formal degree per node: 1 at variables, 0 at constants, max at sums,
    /// sum at products.
    pub fn formal_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            deg[i] = match node {
                NodeKind::Var(_) => 1,
                NodeKind::Const(_) => 0,
                NodeKind::Sum(cs) => cs.iter().map(|c| deg[c.index()]).max().unwrap_or(0),
                NodeKind::Prod(cs) => cs.iter().map(|c| deg[c.index()]).sum(),
            };
        }
        deg
    }

    /// Formal w-degree per node, requiring every sum's children to agree
    /// (rejects with the offending node otherwise).
    pub fn formal_w_degrees(&self, weights: &crate::poly::Weighting) -> Result<Vec<u64>> {
        let mut deg = vec![0u64; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            deg[i] = match node {
                NodeKind::Var(v) => weights.weight(*v)? as u64,
                NodeKind::Const(_) => 0,
                NodeKind::Sum(cs) => {
                    let d0 = deg[cs[0].index()];
                    for c in &cs[1..] {
                        if deg[c.index()] != d0 {
                            return Err(Error::NotWHomogeneous { node: NodeId(i as u32) });
                        }
                    }
                    d0
                }
                NodeKind::Prod(cs) => cs.iter().map(|c| deg[c.index()]).sum(),
            };
        }
        Ok(deg)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        let reach = self.reachable();
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                NodeKind::Var(v) if reach[i] => Some(*v),
                _ => None,
            })
            .collect()
    }

    pub fn max_fan_in(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.children().len())
            .max()
            .unwrap_or(0)
    }

    /// Size, depth, product-depth, formal degree and variable set.
    pub fn analyze(&self) -> StructStats {
        // depth[i] = longest path from i down to a leaf, in edges;
        // pdepth[i] = max number of product nodes on such a path (counting i).
        let mut depth = vec![0u64; self.nodes.len()];
        let mut pdepth = vec![0u64; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            let (d, p) = match node {
                NodeKind::Var(_) | NodeKind::Const(_) => (0, 0),
                NodeKind::Sum(cs) => (
                    cs.iter().map(|c| depth[c.index()]).max().unwrap_or(0) + 1,
                    cs.iter().map(|c| pdepth[c.index()]).max().unwrap_or(0),
                ),
                NodeKind::Prod(cs) => (
                    cs.iter().map(|c| depth[c.index()]).max().unwrap_or(0) + 1,
                    cs.iter().map(|c| pdepth[c.index()]).max().unwrap_or(0) + 1,
                ),
            };
            depth[i] = d;
            pdepth[i] = p;
        }
        StructStats {
            size: self.size(),
            depth: depth[self.output.index()],
            product_depth: pdepth[self.output.index()],
            formal_degree: self.formal_degrees()[self.output.index()],
            variables: self.variables(),
        }
    }

    /// Extract the subcircuit feeding `node` as a circuit of its own.
    pub fn cone(&self, node: NodeId) -> Result<Circuit<T>> {
        if node.index() >= self.nodes.len() {
            return Err(Error::NodeNotFound(node));
        }
        let mut keep = vec![false; self.nodes.len()];
        let mut stack = vec![node];
        while let Some(id) = stack.pop() {
            if keep[id.index()] {
                continue;
            }
            keep[id.index()] = true;
            stack.extend(self.kind(id).children().iter().copied());
        }
        let mut remap = vec![NodeId(0); self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, node_kind) in self.nodes.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            let copied = match node_kind {
                NodeKind::Var(v) => NodeKind::Var(*v),
                NodeKind::Const(c) => NodeKind::Const(c.clone()),
                NodeKind::Sum(cs) => NodeKind::Sum(cs.iter().map(|c| remap[c.index()]).collect()),
                NodeKind::Prod(cs) => NodeKind::Prod(cs.iter().map(|c| remap[c.index()]).collect()),
            };
            remap[i] = NodeId(nodes.len() as u32);
            nodes.push(copied);
        }
        Circuit::new(nodes, remap[node.index()])
    }
}

/// Append-only circuit construction helper. Nodes are pushed children-first,
/// which makes the topological invariant hold by construction.
pub struct CircuitBuilder<T: Scalar> {
    nodes: Vec<NodeKind<T>>,
    const_cache: Vec<(T, NodeId)>,
    var_cache: Vec<(VarId, NodeId)>,
}

impl<T: Scalar> CircuitBuilder<T> {
    pub fn new() -> Self {
        CircuitBuilder {
            nodes: Vec::new(),
            const_cache: Vec::new(),
            var_cache: Vec::new(),
        }
    }

    fn push(&mut self, kind: NodeKind<T>) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(kind);
        id
    }

    /// Shared variable node (circuits reuse input nodes).
    pub fn var(&mut self, v: VarId) -> NodeId {
        if let Some(&(_, id)) = self.var_cache.iter().find(|(u, _)| *u == v) {
            return id;
        }
        let id = self.push(NodeKind::Var(v));
        self.var_cache.push((v, id));
        id
    }

    /// Shared constant node, deduplicated by value.
    pub fn constant(&mut self, c: T) -> NodeId {
        if let Some((_, id)) = self.const_cache.iter().find(|(v, _)| *v == c) {
            return *id;
        }
        let id = self.push(NodeKind::Const(c.clone()));
        self.const_cache.push((c, id));
        id
    }

    /// Sum node; a single summand is returned as-is.
    pub fn sum(&mut self, children: Vec<NodeId>) -> NodeId {
        match children.len() {
            0 => self.constant(T::zero()),
            1 => children[0],
            _ => self.push(NodeKind::Sum(children)),
        }
    }

    /// Product node; a single factor is returned as-is.
    pub fn prod(&mut self, children: Vec<NodeId>) -> NodeId {
        match children.len() {
            0 => self.constant(T::one()),
            1 => children[0],
            _ => self.push(NodeKind::Prod(children)),
        }
    }

    pub fn finish(self, output: NodeId) -> Result<Circuit<T>> {
        Circuit::new(self.nodes, output)
    }
}

impl<T: Scalar> Default for CircuitBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// An arithmetic formula: a circuit whose graph is a tree, with cached
/// per-node annotations (formal degree, leaf count, variable set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula<T: Scalar> {
    circuit: Circuit<T>,
    formal_degree: Vec<u64>,
    leaf_count: Vec<u64>,
    var_sets: Vec<BTreeSet<VarId>>,
}

impl<T: Scalar> Formula<T> {
    /// Build from an arena. Beyond the circuit invariants this checks the
    /// tree shape: every node except the output has exactly one parent, and
    /// all nodes are reachable from the output.
    pub fn new(nodes: Vec<NodeKind<T>>, root: NodeId) -> Result<Self> {
        let circuit = Circuit::new(nodes, root)?;
        let mut parents = vec![0usize; circuit.len()];
        for id in circuit.node_ids() {
            for c in circuit.kind(id).children() {
                parents[c.index()] += 1;
            }
        }
        for id in circuit.node_ids() {
            let count = parents[id.index()];
            if id == circuit.output() {
                if count != 0 {
                    return Err(Error::structural("output node has a parent"));
                }
            } else if count != 1 {
                return Err(Error::structural(format!(
                    "node {} has {} parents (must have exactly one)",
                    id.index(),
                    count
                )));
            }
        }
        let formal_degree = circuit.formal_degrees();
        let mut leaf_count = vec![0u64; circuit.len()];
        let mut var_sets: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); circuit.len()];
        for id in circuit.node_ids() {
            let i = id.index();
            match circuit.kind(id) {
                NodeKind::Var(v) => {
                    leaf_count[i] = 1;
                    var_sets[i].insert(*v);
                }
                NodeKind::Const(_) => leaf_count[i] = 1,
                NodeKind::Sum(cs) | NodeKind::Prod(cs) => {
                    for c in cs {
                        leaf_count[i] += leaf_count[c.index()];
                        let child_vars = var_sets[c.index()].clone();
                        var_sets[i].extend(child_vars);
                    }
                }
            }
        }
        Ok(Formula {
            circuit,
            formal_degree,
            leaf_count,
            var_sets,
        })
    }

    pub fn as_circuit(&self) -> &Circuit<T> {
        &self.circuit
    }

    pub fn root(&self) -> NodeId {
        self.circuit.output()
    }

    pub fn len(&self) -> usize {
        self.circuit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuit.is_empty()
    }

    pub fn kind(&self, id: NodeId) -> &NodeKind<T> {
        self.circuit.kind(id)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        self.circuit.node_ids()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.circuit.len()
    }

    /// Number of leaves (the formula's size).
    pub fn size(&self) -> u64 {
        self.leaf_count[self.root().index()]
    }

    pub fn formal_degree(&self, id: NodeId) -> u64 {
        self.formal_degree[id.index()]
    }

    pub fn leaf_count(&self, id: NodeId) -> u64 {
        self.leaf_count[id.index()]
    }

    pub fn var_set(&self, id: NodeId) -> &BTreeSet<VarId> {
        &self.var_sets[id.index()]
    }

    pub fn variables(&self) -> &BTreeSet<VarId> {
        self.var_set(self.root())
    }

    pub fn analyze(&self) -> StructStats {
        self.circuit.analyze()
    }

    pub fn max_fan_in(&self) -> usize {
        self.circuit.max_fan_in()
    }
}

impl<T: Scalar> fmt::Display for Formula<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Tree construction helper mirroring [`CircuitBuilder`], without node
/// sharing: every child id may be used exactly once.
pub struct TreeBuilder<T: Scalar> {
    nodes: Vec<NodeKind<T>>,
}

impl<T: Scalar> TreeBuilder<T> {
    pub fn new() -> Self {
        TreeBuilder { nodes: Vec::new() }
    }

    fn push(&mut self, kind: NodeKind<T>) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(kind);
        id
    }

    pub fn var(&mut self, v: VarId) -> NodeId {
        self.push(NodeKind::Var(v))
    }

    pub fn constant(&mut self, c: T) -> NodeId {
        self.push(NodeKind::Const(c))
    }

    pub fn sum(&mut self, children: Vec<NodeId>) -> NodeId {
        match children.len() {
            0 => self.constant(T::zero()),
            1 => children[0],
            _ => self.push(NodeKind::Sum(children)),
        }
    }

    pub fn prod(&mut self, children: Vec<NodeId>) -> NodeId {
        match children.len() {
            0 => self.constant(T::one()),
            1 => children[0],
            _ => self.push(NodeKind::Prod(children)),
        }
    }

    /// Copy a subtree of another formula into this builder.
    pub fn copy_subtree(&mut self, src: &Formula<T>, node: NodeId) -> NodeId {
        match src.kind(node) {
            NodeKind::Var(v) => self.var(*v),
            NodeKind::Const(c) => {
                let c = c.clone();
                self.constant(c)
            }
            NodeKind::Sum(cs) => {
                let copied: Vec<NodeId> = cs
                    .clone()
                    .into_iter()
                    .map(|c| self.copy_subtree(src, c))
                    .collect();
                self.push(NodeKind::Sum(copied))
            }
            NodeKind::Prod(cs) => {
                let copied: Vec<NodeId> = cs
                    .clone()
                    .into_iter()
                    .map(|c| self.copy_subtree(src, c))
                    .collect();
                self.push(NodeKind::Prod(copied))
            }
        }
    }

    pub fn finish(self, root: NodeId) -> Result<Formula<T>> {
        Formula::new(self.nodes, root)
    }
}

impl<T: Scalar> Default for TreeBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}
