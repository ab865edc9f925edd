//! Constructive decompositions of homogeneous formulas into short sums of
//! factored polynomials, with full certificate validation.
//!
//! Two decompositions are implemented. The balanced decomposition splits a
//! homogeneous fan-in-2 formula at a node of degree between `k/3` and `2k/3`,
//! writes the polynomial as `h * phi_w^ + phi_{w=0}^`, and recurses; each
//! resulting part is a product of factors whose degrees fall in geometrically
//! shrinking windows `((1/3)^i k, (2/3)^i k]` ending in a linear factor. The
//! form decomposition does the analogous split at a deep product node of a
//! bounded-product-depth formula and groups that node's factors into `q`
//! blocks of degree at least `k (2q)^{-d}` each.
//!
//! Parts are carried as factored polynomials (expanded factors), not
//! sub-formulas; at desk scale expansion is affordable and makes validation
//! exact. Zero-polynomial restrictions contribute no parts. Tie-breaking
//! (split node, descent child, grouping) is first-in-order throughout, so
//! certificates are deterministic.

use num_traits::One;
use serde::Serialize;

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::formula::{Formula, NodeId, NodeKind};
use crate::poly::{div_exact, Degree, RingMode, SparsePolynomial};
use crate::scalar::Scalar;
use crate::Rat;

/// A product of homogeneous factors with degrees in the balanced windows:
/// `(1/3)^i k < deg f_i <= (2/3)^i k` for `i < p`, and `deg f_p = 1`.
/// `minvar` is the number of variables occurring in the final linear factor.
#[derive(Debug, Clone, PartialEq)]
pub struct BalancedFactorization<T: Scalar> {
    pub factors: Vec<SparsePolynomial<T>>,
}

impl<T: Scalar> BalancedFactorization<T> {
    pub fn degrees(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| f.degree().finite().unwrap_or(0))
            .collect()
    }

    pub fn minvar(&self) -> u64 {
        self.factors
            .last()
            .map(|f| f.variables().len() as u64)
            .unwrap_or(0)
    }

    pub fn product(&self) -> Result<SparsePolynomial<T>> {
        let mut acc = SparsePolynomial::one(RingMode::Commutative);
        for f in &self.factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }
}

/// A product of `p` homogeneous factors, each of degree at least `l`;
/// `minvar` is the least variable count among the factors.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFactorization<T: Scalar> {
    pub factors: Vec<SparsePolynomial<T>>,
}

impl<T: Scalar> FormFactorization<T> {
    pub fn degrees(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| f.degree().finite().unwrap_or(0))
            .collect()
    }

    pub fn minvar(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| f.variables().len() as u64)
            .min()
            .unwrap_or(0)
    }

    pub fn product(&self) -> Result<SparsePolynomial<T>> {
        let mut acc = SparsePolynomial::one(RingMode::Commutative);
        for f in &self.factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }
}

/// A decomposition: parts summing to the source formula's expansion, with
/// the source size recorded for the `s' <= s` and `sum minvar <= s`
/// accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionCertificate<P> {
    pub parts: Vec<P>,
    pub source_size: u64,
}

impl<T: Scalar> DecompositionCertificate<BalancedFactorization<T>> {
    pub fn minvar_total(&self) -> u64 {
        self.parts.iter().map(|p| p.minvar()).sum()
    }
}

impl<T: Scalar> DecompositionCertificate<FormFactorization<T>> {
    pub fn minvar_total(&self) -> u64 {
        self.parts.iter().map(|p| p.minvar()).sum()
    }
}

/// Serializable rendering of a certificate (factors in canonical text form).
#[derive(Debug, Clone, Serialize)]
pub struct CertificateSummary {
    pub kind: String,
    pub source_size: u64,
    pub part_count: usize,
    pub minvar_total: u64,
    pub parts: Vec<CertificatePart>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificatePart {
    pub factors: Vec<String>,
    pub degrees: Vec<u64>,
    pub minvar: u64,
}

impl<T: Scalar> DecompositionCertificate<BalancedFactorization<T>> {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            kind: "balanced".to_string(),
            source_size: self.source_size,
            part_count: self.parts.len(),
            minvar_total: self.minvar_total(),
            parts: self
                .parts
                .iter()
                .map(|p| CertificatePart {
                    factors: p.factors.iter().map(|f| f.to_string()).collect(),
                    degrees: p.degrees(),
                    minvar: p.minvar(),
                })
                .collect(),
        }
    }
}

impl<T: Scalar> DecompositionCertificate<FormFactorization<T>> {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            kind: "form".to_string(),
            source_size: self.source_size,
            part_count: self.parts.len(),
            minvar_total: self.minvar_total(),
            parts: self
                .parts
                .iter()
                .map(|p| CertificatePart {
                    factors: p.factors.iter().map(|f| f.to_string()).collect(),
                    degrees: p.degrees(),
                    minvar: p.minvar(),
                })
                .collect(),
        }
    }
}

/// Find a node `w` with `(1/3) k <= deg(w) < (2/3) k` in a fan-in-2 formula
/// of formal degree `k >= 2`.
///
/// Walk: descend from the root into any child of degree `>= (2/3) k` (first
/// such child) for as long as one exists; the stop node is necessarily a
/// product, and its larger-degree child (first on ties) is `w`.
pub fn find_split_node<T: Scalar>(phi: &Formula<T>) -> Result<NodeId> {
    if phi.max_fan_in() > 2 {
        return Err(Error::structural(
            "find_split_node needs fan-in <= 2; binarize first",
        ));
    }
    let k = phi.formal_degree(phi.root());
    if k < 2 {
        return Err(Error::precondition(format!(
            "split node needs degree >= 2, got {k}"
        )));
    }
    let mut v = phi.root();
    loop {
        let heavy = phi
            .kind(v)
            .children()
            .iter()
            .copied()
            .find(|c| 3 * phi.formal_degree(*c) >= 2 * k);
        match heavy {
            Some(c) => v = c,
            None => break,
        }
    }
    let NodeKind::Prod(cs) = phi.kind(v) else {
        return Err(Error::internal("split walk stopped at a non-product node"));
    };
    let w = if phi.formal_degree(cs[0]) >= phi.formal_degree(cs[1]) {
        cs[0]
    } else {
        cs[1]
    };
    let d = phi.formal_degree(w);
    debug_assert!(3 * d >= k && 3 * d < 2 * k, "split degree {d} outside [k/3, 2k/3)");
    Ok(w)
}

/// Decompose a homogeneous fan-in-2 formula into a sum of balanced
/// factorizations: at most `size` parts, summing exactly to the expansion,
/// with total minvar at most `size`. Multilinearity of the input carries
/// over to every part.
pub fn balanced_decompose<T: Scalar>(
    phi: &Formula<T>,
) -> Result<DecompositionCertificate<BalancedFactorization<T>>> {
    if phi.max_fan_in() > 2 {
        return Err(Error::structural(
            "balanced decomposition needs fan-in <= 2; binarize first",
        ));
    }
    let props = phi.verify_properties(None)?;
    if !props.homogeneous.ok {
        return Err(Error::NotHomogeneous {
            node: props.homogeneous.first_offender.expect("offender recorded"),
        });
    }
    if phi.formal_degree(phi.root()) == 0 {
        return Err(Error::precondition(
            "balanced decomposition needs degree >= 1",
        ));
    }
    let parts = balanced_parts(phi)?;
    Ok(DecompositionCertificate {
        parts,
        source_size: phi.size(),
    })
}

fn balanced_parts<T: Scalar>(phi: &Formula<T>) -> Result<Vec<BalancedFactorization<T>>> {
    let p = phi.expand(RingMode::Commutative);
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let k = phi.formal_degree(phi.root());
    if k == 1 {
        if p.degree() != Degree::Finite(1) {
            return Err(Error::internal("degree-1 base case with non-linear value"));
        }
        return Ok(vec![BalancedFactorization { factors: vec![p] }]);
    }
    let w = find_split_node(phi)?;
    let phi_w = phi.subformula(w)?;
    let phi_0 = phi.restrict(w, T::zero())?;
    let p_w = phi_w.expand(RingMode::Commutative);
    let p_0 = phi_0.expand(RingMode::Commutative);
    let mut parts = Vec::new();
    if p_w.is_zero() {
        if p != p_0 {
            return Err(Error::internal("zero split factor with nonzero remainder"));
        }
    } else {
        let h = div_exact(&p.sub(&p_0)?, &p_w)?;
        if !h.is_zero() {
            for sub in balanced_parts(&phi_w)? {
                let mut factors = Vec::with_capacity(sub.factors.len() + 1);
                factors.push(h.clone());
                factors.extend(sub.factors);
                parts.push(BalancedFactorization { factors });
            }
        }
    }
    parts.extend(balanced_parts(&phi_0)?);
    Ok(parts)
}

fn window_ok(degree: u64, k: u64, i: u32) -> bool {
    // (1/3)^i k < degree <= (2/3)^i k, exactly over integers
    let three_i = 3u128.pow(i);
    let two_i = 2u128.pow(i);
    let d = degree as u128;
    let k = k as u128;
    k < d * three_i && d * three_i <= two_i * k
}

/// Re-derive every condition of a balanced certificate from scratch:
/// part count, factor homogeneity and degree windows, the linear last
/// factor, sum equality by full expansion, the minvar accounting, and
/// multilinearity preservation when the source formula is multilinear.
pub fn validate_balanced<T: Scalar>(
    cert: &DecompositionCertificate<BalancedFactorization<T>>,
    phi: &Formula<T>,
) -> Result<BoundReport> {
    let mut report = BoundReport::new("balanced-certificate")
        .input("parts", cert.parts.len())
        .input("source_size", cert.source_size);
    let s = phi.size();
    if cert.source_size != s {
        report.record_failure(format!(
            "recorded size {} differs from formula size {s}",
            cert.source_size
        ));
    }
    if cert.parts.len() as u64 > s {
        report.record_failure(format!("{} parts exceed size {s}", cert.parts.len()));
    }
    let expansion = phi.expand(RingMode::Commutative);
    let multilinear_source = phi.verify_properties(None)?.multilinear.ok;
    let k = match expansion.degree() {
        Degree::Finite(k) => k,
        Degree::MinusInfinity => {
            if !cert.parts.is_empty() {
                report.record_failure("zero polynomial with nonempty certificate".to_string());
            }
            report.cases_checked = 1;
            report.bound = "vacuous".to_string();
            return Ok(report);
        }
    };
    let mut total = SparsePolynomial::<T>::zero(RingMode::Commutative);
    let mut minvar_total = 0u64;
    for (idx, part) in cert.parts.iter().enumerate() {
        let degrees = part.degrees();
        let p = part.factors.len();
        if p == 0 {
            report.record_failure(format!("part {idx} has no factors"));
            continue;
        }
        for (j, f) in part.factors.iter().enumerate() {
            if f.is_zero() {
                report.record_failure(format!("part {idx} factor {j} is zero"));
            }
            if !f.is_homogeneous() {
                report.record_failure(format!("part {idx} factor {j} not homogeneous"));
            }
        }
        if degrees.iter().sum::<u64>() != k {
            report.record_failure(format!(
                "part {idx} degrees {degrees:?} do not sum to {k}"
            ));
        }
        if degrees.last() != Some(&1) {
            report.record_failure(format!("part {idx} final factor degree is not 1"));
        }
        for (j, &d) in degrees.iter().take(p - 1).enumerate() {
            if !window_ok(d, k, j as u32 + 1) {
                report.record_failure(format!(
                    "part {idx} factor {j} degree {d} outside window {}",
                    j + 1
                ));
            }
        }
        let prod = part.product()?;
        if multilinear_source && !prod.is_multilinear() {
            report.record_failure(format!("part {idx} is not multilinear"));
        }
        total = total.add(&prod)?;
        minvar_total += part.minvar();
    }
    if total != expansion {
        report.record_failure("part sum differs from the formula expansion".to_string());
    }
    if minvar_total > s {
        report.record_failure(format!("minvar total {minvar_total} exceeds size {s}"));
    }
    report.cases_checked = cert.parts.len() as u64 + 1;
    report.bound = format!("s' <= {s}, sum minvar <= {s}");
    report.compared = Some(format!(
        "s' = {}, sum minvar = {minvar_total}",
        cert.parts.len()
    ));
    Ok(report)
}

/// Find a product node `w` with `deg(w) >= k r^{-(d-1)}` whose children all
/// have degree `< deg(w)/r`, in a formula of product-depth at most `d` and
/// degree `k` with `k r^{-d} > 1`.
pub fn find_deep_product_node<T: Scalar>(phi: &Formula<T>, r: &Rat, d: u32) -> Result<NodeId> {
    if *r <= Rat::one() {
        return Err(Error::precondition("r must be > 1"));
    }
    if d == 0 {
        return Err(Error::precondition("product-depth bound d must be >= 1"));
    }
    let stats = phi.analyze();
    if stats.product_depth > d as u64 {
        return Err(Error::precondition(format!(
            "product-depth {} exceeds d={d}",
            stats.product_depth
        )));
    }
    let k = phi.formal_degree(phi.root());
    let mut r_pow_d = Rat::one();
    for _ in 0..d {
        r_pow_d *= r.clone();
    }
    if Rat::from_int(k as i64) <= r_pow_d {
        return Err(Error::precondition(format!(
            "requires k r^-d > 1, got k={k}, r^d={r_pow_d}"
        )));
    }
    let mut u = top_product(phi, phi.root())?;
    loop {
        let deg_u = phi.formal_degree(u);
        let heavy = phi.kind(u).children().iter().copied().find(|c| {
            Rat::from_int(phi.formal_degree(*c) as i64) * r.clone()
                >= Rat::from_int(deg_u as i64)
        });
        match heavy {
            Some(c) => u = top_product(phi, c)?,
            None => return Ok(u),
        }
    }
}

/// Walk down through sum nodes along a maximal-degree child (first on ties)
/// until a product node is reached.
fn top_product<T: Scalar>(phi: &Formula<T>, start: NodeId) -> Result<NodeId> {
    let mut cur = start;
    loop {
        match phi.kind(cur) {
            NodeKind::Prod(_) => return Ok(cur),
            NodeKind::Sum(cs) => {
                let best = cs
                    .iter()
                    .copied()
                    .max_by_key(|c| phi.formal_degree(*c));
                let best = best.expect("sum has children");
                // first child attaining the max
                cur = cs
                    .iter()
                    .copied()
                    .find(|c| phi.formal_degree(*c) == phi.formal_degree(best))
                    .expect("max exists");
            }
            NodeKind::Var(_) | NodeKind::Const(_) => {
                return Err(Error::internal(
                    "deep-product walk reached a leaf; degree precondition violated",
                ))
            }
        }
    }
}

/// Decompose a multilinear homogeneous formula of product-depth at most `d`
/// into a sum of `(q, k (2q)^{-d})`-form factorizations, each with exactly
/// `q` factors.
///
/// Repeatedly: find a deep product node `w` (threshold `r = 2q`), write the
/// polynomial as `h * w^ + (rest)`, group `w`'s factors greedily in child
/// order until each group's degree reaches `deg(w)/(2q)` (a deficient final
/// group merges into its predecessor, surplus groups fold into the last),
/// fuse `h` into the first group, and continue on the restricted formula.
pub fn form_decompose<T: Scalar>(
    phi: &Formula<T>,
    q: u32,
    d: u32,
) -> Result<DecompositionCertificate<FormFactorization<T>>> {
    if q < 2 {
        return Err(Error::precondition("q must be a natural number > 1"));
    }
    let props = phi.verify_properties(None)?;
    if !props.homogeneous.ok {
        return Err(Error::NotHomogeneous {
            node: props.homogeneous.first_offender.expect("offender recorded"),
        });
    }
    if !props.multilinear.ok {
        return Err(Error::precondition(
            "form decomposition needs a multilinear formula",
        ));
    }
    let k = phi.formal_degree(phi.root());
    let r = Rat::from_int(2 * q as i64);
    // k (2q)^-d > 1  <=>  k > (2q)^d
    let threshold = (2u64 * q as u64).checked_pow(d).unwrap_or(u64::MAX);
    if k <= threshold {
        return Err(Error::precondition(format!(
            "requires k (2q)^-d > 1, got k={k}, (2q)^d={threshold}"
        )));
    }
    let source_size = phi.size();
    let mut parts = Vec::new();
    let mut current = phi.clone();
    loop {
        let polys = current.as_circuit().expand_nodes(RingMode::Commutative);
        let p_cur = &polys[current.root().index()];
        if p_cur.is_zero() {
            break;
        }
        let w = find_deep_product_node(&current, &r, d)?;
        let p_w = &polys[w.index()];
        if !p_w.is_zero() {
            let restricted = current.restrict(w, T::zero())?;
            let p_0 = restricted.expand(RingMode::Commutative);
            let h = div_exact(&p_cur.sub(&p_0)?, p_w)?;
            if !h.is_zero() {
                let children = current.kind(w).children().to_vec();
                let child_polys: Vec<&SparsePolynomial<T>> =
                    children.iter().map(|c| &polys[c.index()]).collect();
                let factors = group_factors(&child_polys, q, &h)?;
                parts.push(FormFactorization { factors });
            }
            current = restricted;
        } else {
            current = current.restrict(w, T::zero())?;
        }
    }
    Ok(DecompositionCertificate {
        parts,
        source_size,
    })
}

/// Group the (in-order) factor polynomials of a deep product node into
/// exactly `q` blocks of degree at least `deg/(2q)` each and fuse `h` into
/// the first block.
fn group_factors<T: Scalar>(
    child_polys: &[&SparsePolynomial<T>],
    q: u32,
    h: &SparsePolynomial<T>,
) -> Result<Vec<SparsePolynomial<T>>> {
    let total_degree: u64 = child_polys
        .iter()
        .map(|p| p.degree().finite().unwrap_or(0))
        .sum();
    // close a group once group_degree >= total/(2q), i.e. 2q*deg >= total
    let two_q = 2 * q as u64;
    let mut groups: Vec<SparsePolynomial<T>> = Vec::new();
    let mut acc = SparsePolynomial::<T>::one(RingMode::Commutative);
    let mut acc_deg = 0u64;
    for p in child_polys {
        acc = acc.mul(p)?;
        acc_deg += p.degree().finite().unwrap_or(0);
        if two_q * acc_deg >= total_degree {
            groups.push(acc);
            acc = SparsePolynomial::one(RingMode::Commutative);
            acc_deg = 0;
        }
    }
    if acc_deg > 0 {
        // deficient trailing group: merge into its predecessor
        match groups.last_mut() {
            Some(last) => *last = last.mul(&acc)?,
            None => groups.push(acc),
        }
    }
    if (groups.len() as u32) < q {
        return Err(Error::internal(
            "grouping produced fewer blocks than q; degree accounting broken",
        ));
    }
    // surplus blocks fold into the last kept one
    while groups.len() as u32 > q {
        let extra = groups.pop().expect("nonempty");
        let last = groups.last_mut().expect("nonempty");
        *last = last.mul(&extra)?;
    }
    groups[0] = groups[0].mul(h)?;
    Ok(groups)
}

/// Re-derive every condition of a form certificate: factor count `q`,
/// homogeneity, the degree floor `l`, sum equality by expansion, part count
/// and minvar accounting, and multilinearity preservation.
pub fn validate_form<T: Scalar>(
    cert: &DecompositionCertificate<FormFactorization<T>>,
    phi: &Formula<T>,
    q: u32,
    l: &Rat,
) -> Result<BoundReport> {
    let mut report = BoundReport::new("form-certificate")
        .input("parts", cert.parts.len())
        .input("q", q)
        .input("l", l.to_string())
        .input("source_size", cert.source_size);
    let s = phi.size();
    if cert.source_size != s {
        report.record_failure(format!(
            "recorded size {} differs from formula size {s}",
            cert.source_size
        ));
    }
    if cert.parts.len() as u64 > s {
        report.record_failure(format!("{} parts exceed size {s}", cert.parts.len()));
    }
    let expansion = phi.expand(RingMode::Commutative);
    let multilinear_source = phi.verify_properties(None)?.multilinear.ok;
    if expansion.is_zero() && !cert.parts.is_empty() {
        report.record_failure("zero polynomial with nonempty certificate".to_string());
    }
    let k = expansion.degree().finite().unwrap_or(0);
    let mut total = SparsePolynomial::<T>::zero(RingMode::Commutative);
    let mut minvar_total = 0u64;
    for (idx, part) in cert.parts.iter().enumerate() {
        if part.factors.len() != q as usize {
            report.record_failure(format!(
                "part {idx} has {} factors, expected q={q}",
                part.factors.len()
            ));
        }
        let mut deg_sum = 0u64;
        for (j, f) in part.factors.iter().enumerate() {
            if f.is_zero() {
                report.record_failure(format!("part {idx} factor {j} is zero"));
                continue;
            }
            if !f.is_homogeneous() {
                report.record_failure(format!("part {idx} factor {j} not homogeneous"));
            }
            let deg = f.degree().finite().unwrap_or(0);
            deg_sum += deg;
            if Rat::from_int(deg as i64) < *l {
                report.record_failure(format!(
                    "part {idx} factor {j} degree {deg} below floor {l}"
                ));
            }
        }
        if !expansion.is_zero() && deg_sum != k {
            report.record_failure(format!(
                "part {idx} degrees sum to {deg_sum}, expected {k}"
            ));
        }
        let prod = part.product()?;
        if multilinear_source && !prod.is_multilinear() {
            report.record_failure(format!("part {idx} is not multilinear"));
        }
        total = total.add(&prod)?;
        minvar_total += part.minvar();
    }
    if total != expansion {
        report.record_failure("part sum differs from the formula expansion".to_string());
    }
    if minvar_total > s {
        report.record_failure(format!("minvar total {minvar_total} exceeds size {s}"));
    }
    report.cases_checked = cert.parts.len() as u64 + 1;
    report.bound = format!("(q={q}, l={l})-form, sum minvar <= {s}");
    report.compared = Some(format!(
        "s' = {}, sum minvar = {minvar_total}",
        cert.parts.len()
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::TreeBuilder;
    use crate::poly::VarId;
    use crate::Rat;

    /// x1*(x2*(x3*x4)), the hand-traced walk example
    fn right_comb() -> Formula<Rat> {
        let mut b = TreeBuilder::new();
        let x3 = b.var(VarId(3));
        let x4 = b.var(VarId(4));
        let inner = b.prod(vec![x3, x4]);
        let x2 = b.var(VarId(2));
        let mid = b.prod(vec![x2, inner]);
        let x1 = b.var(VarId(1));
        let root = b.prod(vec![x1, mid]);
        b.finish(root).unwrap()
    }

    #[test]
    fn split_node_balanced_product() {
        // (x1*x2)*(x3*x4): either child works; the walk returns a child of
        // the root with degree 2 in [4/3, 8/3)
        let mut b = TreeBuilder::new();
        let x1 = b.var(VarId(1));
        let x2 = b.var(VarId(2));
        let l = b.prod(vec![x1, x2]);
        let x3 = b.var(VarId(3));
        let x4 = b.var(VarId(4));
        let r = b.prod(vec![x3, x4]);
        let root = b.prod(vec![l, r]);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let w = find_split_node(&phi).unwrap();
        assert_eq!(phi.formal_degree(w), 2);
    }

    #[test]
    fn split_node_right_comb_traced() {
        let phi = right_comb();
        let w = find_split_node(&phi).unwrap();
        // the walk descends to x2*(x3*x4) and returns its larger child x3*x4
        assert_eq!(phi.formal_degree(w), 2);
        let sub = phi.subformula(w).unwrap();
        assert_eq!(sub.expand(RingMode::Commutative).to_string(), "x3*x4");
    }

    #[test]
    fn split_node_rejects_degree_below_two() {
        let mut b = TreeBuilder::new();
        let x1 = b.var(VarId(1));
        let x2 = b.var(VarId(2));
        let root = b.sum(vec![x1, x2]);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        assert!(find_split_node(&phi).is_err());
    }

    #[test]
    fn balanced_decompose_linear_base() {
        let mut b = TreeBuilder::new();
        let x1 = b.var(VarId(1));
        let x2 = b.var(VarId(2));
        let root = b.sum(vec![x1, x2]);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let cert = balanced_decompose(&phi).unwrap();
        assert_eq!(cert.parts.len(), 1);
        assert_eq!(cert.parts[0].minvar(), 2);
        assert!(cert.minvar_total() <= phi.size());
        let report = validate_balanced(&cert, &phi).unwrap();
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn balanced_decompose_two_leaf_product() {
        let mut b = TreeBuilder::new();
        let x1 = b.var(VarId(1));
        let x2 = b.var(VarId(2));
        let root = b.prod(vec![x1, x2]);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let cert = balanced_decompose(&phi).unwrap();
        assert_eq!(cert.parts.len(), 1);
        assert_eq!(cert.parts[0].factors.len(), 2);
        assert_eq!(cert.parts[0].minvar(), 1);
        let report = validate_balanced(&cert, &phi).unwrap();
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn balanced_decompose_monotone_construction() {
        let phi = crate::constructions::monotone_dc::<Rat>(4, 2)
            .unwrap()
            .binarize();
        let cert = balanced_decompose(&phi).unwrap();
        let report = validate_balanced(&cert, &phi).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert!(cert.parts.len() as u64 <= phi.size());
    }

    #[test]
    fn balanced_decompose_rejects_inhomogeneous() {
        let mut b = TreeBuilder::new();
        let x1 = b.var(VarId(1));
        let one = b.constant(Rat::one());
        let root = b.sum(vec![x1, one]);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        assert!(matches!(
            balanced_decompose(&phi),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn tampered_balanced_certificate_fails() {
        let phi = crate::constructions::monotone_dc::<Rat>(4, 2)
            .unwrap()
            .binarize();
        let mut cert = balanced_decompose(&phi).unwrap();
        // bump one factor's degree by squaring a variable into it
        let x9 = SparsePolynomial::<Rat>::var(VarId(9), RingMode::Commutative);
        let first = &mut cert.parts[0].factors[0];
        *first = first.mul(&x9).unwrap();
        let report = validate_balanced(&cert, &phi).unwrap();
        assert!(!report.pass);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn empty_certificate_validates_against_zero() {
        // x1*x2 - x1*x2 expands to zero
        let mut b = TreeBuilder::new();
        let x1 = b.var(VarId(1));
        let x2 = b.var(VarId(2));
        let p1 = b.prod(vec![x1, x2]);
        let m1 = b.constant(-Rat::one());
        let x1b = b.var(VarId(1));
        let x2b = b.var(VarId(2));
        let p2 = b.prod(vec![m1, x1b, x2b]);
        let root = b.sum(vec![p1, p2]);
        let phi: Formula<Rat> = b.finish(root).unwrap().binarize();
        let cert = balanced_decompose(&phi).unwrap();
        assert!(cert.parts.is_empty());
        let report = validate_balanced(&cert, &phi).unwrap();
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn certificates_are_deterministic() {
        let phi = crate::constructions::monotone_dc::<Rat>(6, 3)
            .unwrap()
            .binarize();
        assert_eq!(
            balanced_decompose(&phi).unwrap(),
            balanced_decompose(&phi).unwrap()
        );
    }

    #[test]
    fn deep_product_node_in_a_depth_four_formula() {
        // product-depth 2, degree 5, r = 2: the returned node has degree at
        // least 5/2 and every child below half its degree
        let phi = crate::constructions::depth_four_formula::<Rat>(8, 5).unwrap();
        let r = Rat::from_int(2);
        let w = find_deep_product_node(&phi, &r, 2).unwrap();
        let deg = phi.formal_degree(w);
        assert!(2 * deg >= 5, "degree {deg} below k r^(-d+1)");
        for c in phi.kind(w).children() {
            assert!(2 * phi.formal_degree(*c) < deg, "child too heavy");
        }
    }

    #[test]
    fn deep_product_node_depth_one() {
        // product-depth 1: a single product of linear factors; the top
        // product qualifies with any r
        let mut b = TreeBuilder::new();
        let factors: Vec<_> = (1..=5)
            .map(|i| {
                let x = b.var(VarId(i));
                let y = b.var(VarId(i + 5));
                b.sum(vec![x, y])
            })
            .collect();
        let root = b.prod(factors);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let r = Rat::from_int(4);
        let w = find_deep_product_node(&phi, &r, 1).unwrap();
        assert_eq!(w, phi.root());
    }

    #[test]
    fn form_decompose_single_product() {
        // 2q+1 = 5 linear factors, q = 2, d = 1: one part with 2 groups
        let mut b = TreeBuilder::new();
        let factors: Vec<_> = (1..=5).map(|i| b.var(VarId(i))).collect();
        let root = b.prod(factors);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let cert = form_decompose(&phi, 2, 1).unwrap();
        assert_eq!(cert.parts.len(), 1);
        assert_eq!(cert.parts[0].factors.len(), 2);
        let l = Rat::new(5.into(), 4.into());
        let report = validate_form(&cert, &phi, 2, &l).unwrap();
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn form_decompose_rejects_shallow_degree() {
        // k = 4 = (2q)^d with q=2, d=1: the strict precondition fails
        let mut b = TreeBuilder::new();
        let factors: Vec<_> = (1..=4).map(|i| b.var(VarId(i))).collect();
        let root = b.prod(factors);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let err = form_decompose(&phi, 2, 1).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn form_decompose_sum_of_products() {
        // (x1..x5 product) + (x6..x10 product), q=2, d=1
        let mut b = TreeBuilder::new();
        let f1: Vec<_> = (1..=5).map(|i| b.var(VarId(i))).collect();
        let p1 = b.prod(f1);
        let f2: Vec<_> = (6..=10).map(|i| b.var(VarId(i))).collect();
        let p2 = b.prod(f2);
        let root = b.sum(vec![p1, p2]);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let cert = form_decompose(&phi, 2, 1).unwrap();
        assert_eq!(cert.parts.len(), 2);
        let l = Rat::new(5.into(), 4.into());
        let report = validate_form(&cert, &phi, 2, &l).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert!(cert.minvar_total() <= phi.size());
    }

    #[test]
    fn tampered_form_certificate_fails() {
        let mut b = TreeBuilder::new();
        let factors: Vec<_> = (1..=5).map(|i| b.var(VarId(i))).collect();
        let root = b.prod(factors);
        let phi: Formula<Rat> = b.finish(root).unwrap();
        let mut cert = form_decompose(&phi, 2, 1).unwrap();
        let extra = SparsePolynomial::<Rat>::var(VarId(9), RingMode::Commutative);
        cert.parts[0].factors[0] = cert.parts[0].factors[0].mul(&extra).unwrap();
        let l = Rat::new(5.into(), 4.into());
        let report = validate_form(&cert, &phi, 2, &l).unwrap();
        assert!(!report.pass);
    }
}
