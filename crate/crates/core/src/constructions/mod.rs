//! The four formula constructions for the elementary symmetric polynomial
//! `S^k_n`, plus the interpolation plan and power-sum building blocks.

mod balance;

pub use balance::{
    circuit_to_formula, frontier, frontier_identity_holds, gate_quotient, newton_circuit,
    polynomial_to_formula, FrontierElem,
};

use crate::error::{Error, Result};
use crate::formula::{Formula, NodeId, NodeKind, TreeBuilder};
use crate::poly::{newton_z, VarId, Weighting};
use crate::scalar::Scalar;

fn require_k_in_range(n: u32, k: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    if k == 0 || k > n {
        return Err(Error::precondition(format!(
            "requires 1 <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(())
}

/// Evaluation points `t = 1..n+1` and the exact rational coefficients
/// expressing `S^k_n` as `sum_j c_{k,j} f_j` where `f_j = prod_i (x_i j + 1)`.
///
/// The coefficient `c_{k,j}` is the degree-`k` coefficient of the `j`-th
/// Lagrange basis polynomial over the points, so `sum_j c_{k,j} j^i` is 1 at
/// `i = k` and 0 for every other `i <= n` — rechecked exactly by
/// [`InterpolationPlan::residual_is_unit_vector`].
#[derive(Debug, Clone)]
pub struct InterpolationPlan<T: Scalar> {
    pub n: u32,
    pub k: u32,
    pub points: Vec<T>,
    pub coefficients: Vec<T>,
}

impl<T: Scalar> InterpolationPlan<T> {
    /// Recompute `A * c` and compare with the `k`-th unit vector, exactly.
    pub fn residual_is_unit_vector(&self) -> bool {
        for i in 0..=self.n {
            let mut acc = T::zero();
            for (j, c) in self.coefficients.iter().enumerate() {
                // power (j+1)^i
                let mut p = T::one();
                for _ in 0..i {
                    p = p * T::from_int(j as i64 + 1);
                }
                acc = acc + c.clone() * p;
            }
            let expected = if i == self.k { T::one() } else { T::zero() };
            if acc != expected {
                return false;
            }
        }
        true
    }
}

/// Exact Lagrange solve of the Vandermonde system over the points `1..n+1`.
pub fn interpolation_coefficients<T: Scalar>(n: u32, k: u32) -> Result<InterpolationPlan<T>> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    if k > n {
        return Err(Error::precondition(format!(
            "coefficient row needs k <= n, got n={n} k={k}"
        )));
    }
    let m = (n + 1) as usize;
    // master polynomial prod_{j=1..n+1} (t - j), dense coefficients by power
    let mut master: Vec<T> = vec![T::one()];
    for j in 1..=m {
        let r = T::from_int(j as i64);
        let mut next = vec![T::zero(); master.len() + 1];
        for (i, a) in master.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + a.clone();
            next[i] = next[i].clone() - r.clone() * a.clone();
        }
        master = next;
    }
    let mut coefficients = Vec::with_capacity(m);
    let mut points = Vec::with_capacity(m);
    for j in 1..=m {
        let r = T::from_int(j as i64);
        points.push(r.clone());
        // synthetic division: master / (t - j), exact
        let mut quotient = vec![T::zero(); m];
        let mut carry = T::zero();
        for i in (0..m).rev() {
            let q = master[i + 1].clone() + r.clone() * carry.clone();
            quotient[i] = q.clone();
            carry = q;
        }
        // denominator prod_{l != j} (j - l)
        let mut denom = T::one();
        for l in 1..=m {
            if l != j {
                denom = denom * (r.clone() - T::from_int(l as i64));
            }
        }
        coefficients.push(quotient[k as usize].clone() / denom);
    }
    Ok(InterpolationPlan {
        n,
        k,
        points,
        coefficients,
    })
}

/// Ben-Or's depth-three interpolation formula for `S^k_n` (`0 <= k <= n`):
///
/// ```text
/// sum_{j=1..n+1}  (c_{k,j} j^n) * (x_1 + 1/j) * ... * (x_n + 1/j)
/// ```
///
/// using `f_j = prod_i (x_i j + 1) = j^n prod_i (x_i + 1/j)`. Multilinear,
/// product-depth one, `(n+1)(2n+1) <= 4(n+1)^2` leaves; expands to `S^k_n` in
/// both ring modes since the factors are multiplied in index order.
pub fn ben_or<T: Scalar>(n: u32, k: u32) -> Result<Formula<T>> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    if k > n {
        return Err(Error::precondition(format!(
            "ben_or needs 0 <= k <= n, got n={n} k={k}"
        )));
    }
    let plan = interpolation_coefficients::<T>(n, k)?;
    let mut b = TreeBuilder::new();
    let mut terms = Vec::with_capacity((n + 1) as usize);
    for (idx, c) in plan.coefficients.iter().enumerate() {
        let j = idx as i64 + 1;
        // scale c_{k,j} by j^n
        let mut scaled = c.clone();
        for _ in 0..n {
            scaled = scaled * T::from_int(j);
        }
        let inv_j = T::one() / T::from_int(j);
        let mut factors = Vec::with_capacity((n + 1) as usize);
        factors.push(b.constant(scaled));
        for i in 1..=n {
            let x = b.var(VarId(i));
            let c = b.constant(inv_j.clone());
            factors.push(b.sum(vec![x, c]));
        }
        terms.push(b.prod(factors));
    }
    let root = b.sum(terms);
    b.finish(root)
}

/// The power sum `P^i_n = x1^i + ... + xn^i` as a homogeneous formula of
/// exactly `i * n` leaves.
pub fn power_sum_formula<T: Scalar>(n: u32, i: u32) -> Result<Formula<T>> {
    if n == 0 || i == 0 {
        return Err(Error::precondition("power sum formula needs n, i >= 1"));
    }
    let mut b = TreeBuilder::new();
    let root = scaled_power_sum(&mut b, n, i, T::one());
    b.finish(root)
}

/// `scale * P^i_n` with the scalar distributed into each of the `n` summands,
/// keeping the leaf count an exact multiple of `n`.
fn scaled_power_sum<T: Scalar>(b: &mut TreeBuilder<T>, n: u32, i: u32, scale: T) -> NodeId {
    let mut terms = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let mut factors = Vec::with_capacity(i as usize + 1);
        if !scale.is_one() {
            factors.push(b.constant(scale.clone()));
        }
        for _ in 0..i {
            factors.push(b.var(VarId(j)));
        }
        terms.push(b.prod(factors));
    }
    b.sum(terms)
}

/// The homogeneous formula for `S^k_n` obtained by balancing the Newton
/// circuit for `Z_k` into a w-homogeneous formula and substituting power sums
/// for its variables (`x_i` receives `P^i_n`, matching `w(x_i) = i`).
///
/// Constants of the balanced formula are fused into the substituted power-sum
/// copies, so every leaf of the result is part of some `P^i_n` copy and the
/// size is an exact multiple of `n`: `size(2n, k) / size(n, k) = 2` for fixed
/// `k`. Homogeneous of degree `k`; expands to `S^k_n`.
pub fn newton_homogeneous_formula<T: Scalar>(n: u32, k: u32) -> Result<Formula<T>> {
    require_k_in_range(n, k)?;
    let circuit = newton_circuit::<T>(k);
    let weights = Weighting::ascending(k);
    let fz = circuit_to_formula(&circuit, &weights)?;
    let mut b = TreeBuilder::new();
    match substitute_scaled(&fz, fz.root(), T::one(), n, &mut b)? {
        Emitted::Node(root) => b.finish(root),
        Emitted::Scalar(_) => Err(Error::internal(
            "balanced Newton formula degenerated to a constant",
        )),
    }
}

enum Emitted<T> {
    Node(NodeId),
    Scalar(T),
}

/// Emit `scale * subtree` with all constants pushed into power-sum copies.
/// Pure-constant subtrees come back as scalars for the caller to fold.
fn substitute_scaled<T: Scalar>(
    fz: &Formula<T>,
    id: NodeId,
    scale: T,
    n: u32,
    b: &mut TreeBuilder<T>,
) -> Result<Emitted<T>> {
    match fz.kind(id) {
        NodeKind::Const(c) => Ok(Emitted::Scalar(scale * c.clone())),
        NodeKind::Var(v) => Ok(Emitted::Node(scaled_power_sum(b, n, v.0, scale))),
        NodeKind::Sum(cs) => {
            let cs = cs.clone();
            let mut nodes = Vec::with_capacity(cs.len());
            for c in cs {
                match substitute_scaled(fz, c, scale.clone(), n, b)? {
                    Emitted::Node(id) => nodes.push(id),
                    Emitted::Scalar(v) => {
                        if !v.is_zero() {
                            return Err(Error::internal(
                                "nonzero constant summand in a homogeneous context",
                            ));
                        }
                    }
                }
            }
            if nodes.is_empty() {
                Ok(Emitted::Scalar(T::zero()))
            } else {
                Ok(Emitted::Node(b.sum(nodes)))
            }
        }
        NodeKind::Prod(cs) => {
            let cs = cs.clone();
            // fold pure-constant children into the pending scalar first
            let mut total = scale;
            let mut tree_children = Vec::new();
            for c in &cs {
                if fz.var_set(*c).is_empty() {
                    total = total * eval_constant_subtree(fz, *c)?;
                } else {
                    tree_children.push(*c);
                }
            }
            if tree_children.is_empty() {
                return Ok(Emitted::Scalar(total));
            }
            if total.is_zero() {
                return Ok(Emitted::Scalar(T::zero()));
            }
            let mut nodes = Vec::with_capacity(tree_children.len());
            for (pos, c) in tree_children.iter().enumerate() {
                let child_scale = if pos == 0 { total.clone() } else { T::one() };
                match substitute_scaled(fz, *c, child_scale, n, b)? {
                    Emitted::Node(id) => nodes.push(id),
                    Emitted::Scalar(_) => {
                        return Err(Error::internal(
                            "variable-bearing product child emitted a scalar",
                        ))
                    }
                }
            }
            Ok(Emitted::Node(b.prod(nodes)))
        }
    }
}

fn eval_constant_subtree<T: Scalar>(f: &Formula<T>, id: NodeId) -> Result<T> {
    match f.kind(id) {
        NodeKind::Const(c) => Ok(c.clone()),
        NodeKind::Var(v) => Err(Error::MissingVariable(*v)),
        NodeKind::Sum(cs) => {
            let cs = cs.clone();
            let mut acc = T::zero();
            for c in cs {
                acc = acc + eval_constant_subtree(f, c)?;
            }
            Ok(acc)
        }
        NodeKind::Prod(cs) => {
            let cs = cs.clone();
            let mut acc = T::one();
            for c in cs {
                acc = acc * eval_constant_subtree(f, c)?;
            }
            Ok(acc)
        }
    }
}

/// The depth-four (product-depth two) homogeneous formula for `S^k_n`: an
/// outer sum with one term per monomial of `Z_k` — partition-many — each term
/// the coefficient times the matching product of power sums.
///
/// Size is exactly `p(k) * (k*n + 1)`.
pub fn depth_four_formula<T: Scalar>(n: u32, k: u32) -> Result<Formula<T>> {
    require_k_in_range(n, k)?;
    let z = newton_z::<T>(k);
    let mut b = TreeBuilder::new();
    let mut terms = Vec::new();
    for (monomial, coeff) in z.terms() {
        let mut factors = vec![b.constant(coeff.clone())];
        if let crate::poly::Monomial::Commutative(ps) = monomial {
            for &(v, e) in ps {
                for _ in 0..e {
                    factors.push(scaled_power_sum(&mut b, n, v.0, T::one()));
                }
            }
        }
        terms.push(b.prod(factors));
    }
    let root = b.sum(terms);
    b.finish(root)
}

/// The monotone divide-and-conquer formula for `S^k_n`, splitting the
/// variables at the power-of-two midpoint:
/// `S^k(left ++ right) = sum_i S^i(left) * S^{k-i}(right)`.
///
/// Trivial factors (`S^0 = 1`) are elided and unary sums and products
/// collapsed, so only genuine leaves are counted; branches over too few
/// variables are pruned. Monotone, multilinear, homogeneous; expands to
/// `S^k_n` in both ring modes (left half multiplied first). `k = 0` yields
/// the constant-1 formula, `k > n` is rejected.
pub fn monotone_dc<T: Scalar>(n: u32, k: u32) -> Result<Formula<T>> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    if k > n {
        return Err(Error::precondition(format!(
            "monotone_dc needs 0 <= k <= n, got n={n} k={k}"
        )));
    }
    enum Part {
        One,
        Node(NodeId),
    }
    fn rec<T: Scalar>(b: &mut TreeBuilder<T>, vars: &[u32], k: u32) -> Option<Part> {
        if k == 0 {
            return Some(Part::One);
        }
        let len = vars.len() as u32;
        if k > len {
            return None;
        }
        if k == 1 {
            let leaves: Vec<NodeId> = vars.iter().map(|&v| b.var(VarId(v))).collect();
            return Some(Part::Node(b.sum(leaves)));
        }
        // split where the padding to the next power of two would
        let half = (len.next_power_of_two() / 2).clamp(1, len - 1) as usize;
        let (left, right) = vars.split_at(half);
        let mut parts = Vec::new();
        for i in 0..=k {
            // feasibility first, so no orphaned subtrees are ever built
            if i > left.len() as u32 || k - i > right.len() as u32 {
                continue;
            }
            let l = rec(b, left, i).expect("feasible split");
            let r = rec(b, right, k - i).expect("feasible split");
            let part = match (l, r) {
                (Part::One, Part::One) => unreachable!("k >= 2 rules out 0 + 0"),
                (Part::One, Part::Node(x)) | (Part::Node(x), Part::One) => x,
                (Part::Node(x), Part::Node(y)) => b.prod(vec![x, y]),
            };
            parts.push(part);
        }
        debug_assert!(!parts.is_empty());
        Some(Part::Node(b.sum(parts)))
    }
    let vars: Vec<u32> = (1..=n).collect();
    let mut b = TreeBuilder::new();
    match rec(&mut b, &vars, k) {
        Some(Part::Node(root)) => b.finish(root),
        Some(Part::One) => {
            let one = b.constant(T::one());
            b.finish(one)
        }
        None => Err(Error::internal("pruned the whole construction")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{oracle_p, oracle_s, RingMode};
    use crate::{rat, Rat};

    #[test]
    fn interpolation_hand_solved_rows() {
        // n = 1: points {1,2}; row k=1 is (-1, 1), row k=0 is (2, -1)
        let plan = interpolation_coefficients::<Rat>(1, 1).unwrap();
        assert_eq!(plan.coefficients, vec![rat(-1, 1), rat(1, 1)]);
        assert!(plan.residual_is_unit_vector());
        let plan = interpolation_coefficients::<Rat>(1, 0).unwrap();
        assert_eq!(plan.coefficients, vec![rat(2, 1), rat(-1, 1)]);
        assert!(plan.residual_is_unit_vector());
    }

    #[test]
    fn interpolation_residuals_vanish() {
        for n in 1..=8u32 {
            for k in 0..=n {
                let plan = interpolation_coefficients::<Rat>(n, k).unwrap();
                assert!(plan.residual_is_unit_vector(), "residual at n={n} k={k}");
            }
        }
    }

    #[test]
    fn ben_or_smallest_case() {
        let f = ben_or::<Rat>(1, 1).unwrap();
        assert_eq!(
            f.expand(RingMode::Commutative),
            oracle_s::<Rat>(1, 1, RingMode::Commutative)
        );
        let stats = f.analyze();
        assert_eq!(stats.product_depth, 1);
        assert_eq!(stats.depth, 3);
    }

    #[test]
    fn ben_or_oracle_and_structure() {
        for (n, k) in [(3, 0), (4, 2), (5, 5), (4, 1)] {
            let f = ben_or::<Rat>(n, k).unwrap();
            assert_eq!(
                f.expand(RingMode::Commutative),
                oracle_s::<Rat>(n, k, RingMode::Commutative),
                "oracle mismatch at n={n} k={k}"
            );
            let stats = f.analyze();
            assert_eq!(stats.product_depth, 1);
            assert!(stats.size <= 4 * (n as u64 + 1).pow(2));
            let props = f.verify_properties(None).unwrap();
            assert!(props.multilinear.ok);
            if 0 < k && k < n {
                assert!(!props.homogeneous.ok, "ben_or should mix degrees");
            }
        }
    }

    #[test]
    fn ben_or_noncommutative() {
        for (n, k) in [(3, 2), (4, 3)] {
            let f = ben_or::<Rat>(n, k).unwrap();
            assert_eq!(
                f.expand(RingMode::Noncommutative),
                oracle_s::<Rat>(n, k, RingMode::Noncommutative),
                "ordered oracle mismatch at n={n} k={k}"
            );
        }
    }

    #[test]
    fn power_sum_examples() {
        let f = power_sum_formula::<Rat>(3, 1).unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.expand(RingMode::Commutative).to_string(), "x1 + x2 + x3");
        let f = power_sum_formula::<Rat>(2, 3).unwrap();
        assert_eq!(f.size(), 6);
        assert_eq!(
            f.expand(RingMode::Commutative),
            oracle_p::<Rat>(2, 3).unwrap()
        );
        let f = power_sum_formula::<Rat>(5, 4).unwrap();
        assert_eq!(f.expand(RingMode::Commutative), oracle_p::<Rat>(5, 4).unwrap());
        assert!(f.verify_properties(None).unwrap().homogeneous.ok);
    }

    #[test]
    fn newton_formula_small_grid() {
        for (n, k) in [(2, 2), (3, 2), (4, 3), (6, 3), (5, 1)] {
            let f = newton_homogeneous_formula::<Rat>(n, k).unwrap();
            assert_eq!(
                f.expand(RingMode::Commutative),
                oracle_s::<Rat>(n, k, RingMode::Commutative),
                "oracle mismatch at n={n} k={k}"
            );
            let props = f.verify_properties(None).unwrap();
            assert!(props.homogeneous.ok, "not homogeneous at n={n} k={k}");
        }
        assert!(newton_homogeneous_formula::<Rat>(2, 3).is_err());
        assert!(newton_homogeneous_formula::<Rat>(2, 0).is_err());
    }

    #[test]
    fn newton_formula_size_is_linear_in_n() {
        for k in [2u32, 3, 4] {
            let base = newton_homogeneous_formula::<Rat>(8, k).unwrap().size();
            for n in [16u32, 32] {
                let size = newton_homogeneous_formula::<Rat>(n, k).unwrap().size();
                assert_eq!(
                    size * 8,
                    base * n as u64,
                    "size not proportional to n at k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn depth_four_shape_and_oracle() {
        for (n, k) in [(3, 2), (8, 4), (5, 5)] {
            let f = depth_four_formula::<Rat>(n, k).unwrap();
            assert_eq!(
                f.expand(RingMode::Commutative),
                oracle_s::<Rat>(n, k, RingMode::Commutative),
                "oracle mismatch at n={n} k={k}"
            );
            let stats = f.analyze();
            assert!(stats.product_depth <= 2);
            let p_k = crate::bounds::partition_function(k).unwrap();
            assert!(stats.size as u128 <= p_k * (k as u128 * n as u128 + 1));
            assert!(f.verify_properties(None).unwrap().homogeneous.ok);
        }
    }

    #[test]
    fn monotone_dc_examples() {
        let f = monotone_dc::<Rat>(2, 2).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.expand(RingMode::Commutative).to_string(), "x1*x2");

        let f = monotone_dc::<Rat>(8, 3).unwrap();
        assert_eq!(
            f.expand(RingMode::Commutative),
            oracle_s::<Rat>(8, 3, RingMode::Commutative)
        );
        let props = f.verify_properties(None).unwrap();
        assert!(props.monotone.ok);
        assert!(props.multilinear.ok);
        assert!(props.homogeneous.ok);
        assert!(props.syntactically_multilinear.ok);

        // non-power-of-two n
        let f = monotone_dc::<Rat>(6, 2).unwrap();
        assert_eq!(
            f.expand(RingMode::Commutative),
            oracle_s::<Rat>(6, 2, RingMode::Commutative)
        );

        let f = monotone_dc::<Rat>(5, 1).unwrap();
        assert_eq!(f.size(), 5);

        let f = monotone_dc::<Rat>(4, 0).unwrap();
        assert_eq!(f.expand(RingMode::Commutative).to_string(), "1");

        assert!(monotone_dc::<Rat>(3, 4).is_err());
    }

    #[test]
    fn monotone_dc_noncommutative() {
        for (n, k) in [(4, 2), (6, 3), (8, 8)] {
            let f = monotone_dc::<Rat>(n, k).unwrap();
            assert_eq!(
                f.expand(RingMode::Noncommutative),
                oracle_s::<Rat>(n, k, RingMode::Noncommutative),
                "ordered oracle mismatch at n={n} k={k}"
            );
        }
    }
}
