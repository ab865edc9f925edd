//! Exact sparse multivariate polynomials with commutative or ordered
//! (noncommutative) monomials.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration order — and
//! hence every serialization — is deterministic: commutative monomials compare
//! by their sorted `(variable, exponent)` lists, ordered monomials by their
//! variable sequence.

mod divide;
mod oracles;

pub use divide::div_exact;
pub use oracles::{
    newton_s, newton_z, oracle_p, oracle_s, oracle_s_by_enumeration, weakly_equivalent,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A variable identifier; rendered as `x<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Whether variables multiplicatively commute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RingMode {
    Commutative,
    Noncommutative,
}

/// A power product. The commutative variant stores sorted `(var, exp)` pairs
/// with no zero exponents; the ordered variant stores the exact sequence of
/// variable factors, used only in noncommutative mode.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Commutative(Vec<(VarId, u32)>),
    Ordered(Vec<VarId>),
}

impl Monomial {
    pub fn one(mode: RingMode) -> Self {
        match mode {
            RingMode::Commutative => Monomial::Commutative(Vec::new()),
            RingMode::Noncommutative => Monomial::Ordered(Vec::new()),
        }
    }

    pub fn var(v: VarId, mode: RingMode) -> Self {
        match mode {
            RingMode::Commutative => Monomial::Commutative(vec![(v, 1)]),
            RingMode::Noncommutative => Monomial::Ordered(vec![v]),
        }
    }

    /// Build a commutative monomial from arbitrary `(var, exp)` pairs.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial::Commutative(map.into_iter().collect())
    }

    pub fn mode(&self) -> RingMode {
        match self {
            Monomial::Commutative(_) => RingMode::Commutative,
            Monomial::Ordered(_) => RingMode::Noncommutative,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Monomial::Commutative(ps) => ps.is_empty(),
            Monomial::Ordered(vs) => vs.is_empty(),
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Monomial::Commutative(ps) => ps.iter().map(|&(_, e)| e as u64).sum(),
            Monomial::Ordered(vs) => vs.len() as u64,
        }
    }

    pub fn w_degree(&self, weights: &Weighting) -> Result<u64> {
        let mut total = 0u64;
        match self {
            Monomial::Commutative(ps) => {
                for &(v, e) in ps {
                    total += weights.weight(v)? as u64 * e as u64;
                }
            }
            Monomial::Ordered(vs) => {
                for &v in vs {
                    total += weights.weight(v)? as u64;
                }
            }
        }
        Ok(total)
    }

    pub fn is_multilinear(&self) -> bool {
        match self {
            Monomial::Commutative(ps) => ps.iter().all(|&(_, e)| e <= 1),
            Monomial::Ordered(vs) => {
                let set: BTreeSet<_> = vs.iter().collect();
                set.len() == vs.len()
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        match self {
            Monomial::Commutative(ps) => ps.iter().map(|&(v, _)| v).collect(),
            Monomial::Ordered(vs) => vs.iter().copied().collect(),
        }
    }

    /// Product of monomials; ordered monomials concatenate left-to-right.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        match (self, other) {
            (Monomial::Commutative(a), Monomial::Commutative(b)) => {
                let mut out: Vec<(VarId, u32)> = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Less => {
                            out.push(a[i]);
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            out.push(b[j]);
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            out.push((a[i].0, a[i].1 + b[j].1));
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend_from_slice(&a[i..]);
                out.extend_from_slice(&b[j..]);
                Ok(Monomial::Commutative(out))
            }
            (Monomial::Ordered(a), Monomial::Ordered(b)) => {
                let mut out = Vec::with_capacity(a.len() + b.len());
                out.extend_from_slice(a);
                out.extend_from_slice(b);
                Ok(Monomial::Ordered(out))
            }
            _ => Err(Error::ModeMismatch),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        match self {
            Monomial::Commutative(ps) => {
                let mut first = true;
                for &(v, e) in ps {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{e}")?;
                    }
                }
                Ok(())
            }
            Monomial::Ordered(vs) => {
                let mut first = true;
                for v in vs {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Positive integer weights per variable, inducing the w-degree of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    weights: BTreeMap<VarId, u32>,
}

impl Weighting {
    pub fn new(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (v, w) in pairs {
            if w == 0 {
                return Err(Error::precondition(format!("weight of {v} must be >= 1")));
            }
            weights.insert(v, w);
        }
        Ok(Weighting { weights })
    }

    /// `w(x_i) = i` over variables `x1..xk` — the weighting of the power-sum
    /// substitution variables.
    pub fn ascending(k: u32) -> Self {
        Weighting {
            weights: (1..=k).map(|i| (VarId(i), i)).collect(),
        }
    }

    /// `w == 1` on the given variables.
    pub fn uniform(vars: impl IntoIterator<Item = VarId>) -> Self {
        Weighting {
            weights: vars.into_iter().map(|v| (v, 1)).collect(),
        }
    }

    pub fn weight(&self, v: VarId) -> Result<u32> {
        self.weights.get(&v).copied().ok_or(Error::MissingWeight(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.weights.iter().map(|(&v, &w)| (v, w))
    }
}

/// Total degree of a polynomial; the zero polynomial gets a distinguished
/// marker and counts as homogeneous of every degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Degree {
    MinusInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Structural facts about a polynomial, as reported by
/// [`SparsePolynomial::props`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyProps {
    pub degree: Degree,
    pub monomial_count: usize,
    pub is_homogeneous: bool,
    pub is_multilinear: bool,
    pub w_degree_set: BTreeSet<u64>,
}

/// Sparse polynomial with exact coefficients. Zero coefficients are never
/// stored; all monomials match `mode`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial<T: Scalar> {
    mode: RingMode,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> SparsePolynomial<T> {
    pub fn zero(mode: RingMode) -> Self {
        SparsePolynomial {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T, mode: RingMode) -> Self {
        let mut p = Self::zero(mode);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(mode), c);
        }
        p
    }

    pub fn one(mode: RingMode) -> Self {
        Self::constant(T::one(), mode)
    }

    pub fn var(v: VarId, mode: RingMode) -> Self {
        let mut p = Self::zero(mode);
        p.terms.insert(Monomial::var(v, mode), T::one());
        p
    }

    pub fn from_terms(
        mode: RingMode,
        terms: impl IntoIterator<Item = (Monomial, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(mode);
        for (m, c) in terms {
            if m.mode() != mode {
                return Err(Error::ModeMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&T> {
        self.terms.get(m)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    /// Exact sum. Rejects mixed ring modes.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exact difference. Rejects mixed ring modes.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact product; in noncommutative mode monomials concatenate
    /// left-to-right, `self` first.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = Self::zero(self.mode);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb)?;
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.mode);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), -a.clone());
        }
        out
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.variables());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.is_multilinear())
    }

    /// Distinct w-degrees among the monomials present.
    pub fn w_degree_set(&self, weights: &Weighting) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.insert(m.w_degree(weights)?);
        }
        Ok(out)
    }

    pub fn is_w_homogeneous(&self, weights: &Weighting) -> Result<bool> {
        Ok(self.w_degree_set(weights)?.len() <= 1)
    }

    /// Degree/count/homogeneity/multilinearity record; errors if `weights`
    /// is given but misses a variable of `self`.
    pub fn props(&self, weights: Option<&Weighting>) -> Result<PolyProps> {
        let w_degree_set = match weights {
            Some(w) => self.w_degree_set(w)?,
            None => {
                let owned = Weighting::uniform(self.variables());
                self.w_degree_set(&owned)?
            }
        };
        Ok(PolyProps {
            degree: self.degree(),
            monomial_count: self.monomial_count(),
            is_homogeneous: self.is_homogeneous(),
            is_multilinear: self.is_multilinear(),
            w_degree_set,
        })
    }

    /// Evaluate at a point. Errors on the first variable missing from `point`.
    pub fn eval(&self, point: &BTreeMap<VarId, T>) -> Result<T> {
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            match m {
                Monomial::Commutative(ps) => {
                    for &(v, e) in ps {
                        let x = point.get(&v).ok_or(Error::MissingVariable(v))?;
                        for _ in 0..e {
                            term = term * x.clone();
                        }
                    }
                }
                Monomial::Ordered(vs) => {
                    for &v in vs {
                        let x = point.get(&v).ok_or(Error::MissingVariable(v))?;
                        term = term * x.clone();
                    }
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Substitute polynomials for variables (commutative mode only).
    pub fn compose(&self, subs: &BTreeMap<VarId, SparsePolynomial<T>>) -> Result<Self> {
        if self.mode != RingMode::Commutative {
            return Err(Error::OrderedUnsupported("polynomial composition"));
        }
        let mut total = Self::zero(self.mode);
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone(), self.mode);
            if let Monomial::Commutative(ps) = m {
                for &(v, e) in ps {
                    let sub = subs.get(&v).ok_or(Error::MissingSubstitution(v))?;
                    for _ in 0..e {
                        term = term.mul(sub)?;
                    }
                }
            }
            total = total.add(&term)?;
        }
        Ok(total)
    }
}

impl<T: Scalar> fmt::Display for SparsePolynomial<T> {
    /// Canonical text form: terms in monomial order joined by ` + `, each as
    /// `coeff` (constant term) or `coeff*monomial`, with unit coefficients
    /// elided. The zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", c.token())?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", c.token())?;
            }
        }
        Ok(())
    }
}

/// Parse the canonical polynomial text form produced by `Display`.
///
/// Grammar (whitespace-tolerant around `+`):
/// `poly := "0" | term (" + " term)*`,
/// `term := rational | [rational "*"] factor ("*" factor)*`,
/// `factor := var ["^" digits]` (commutative) or `var` (ordered),
/// `var := "x" digits`, `rational := ["-"] digits ["/" digits]`.
pub fn parse_poly<T: Scalar>(input: &str, mode: RingMode) -> Result<SparsePolynomial<T>> {
    let bad = |msg: String| Error::Parse {
        line: 1,
        col: 1,
        message: msg,
    };
    let input = input.trim();
    if input.is_empty() {
        return Err(bad("empty polynomial text".into()));
    }
    if input == "0" {
        return Ok(SparsePolynomial::zero(mode));
    }
    let mut poly = SparsePolynomial::zero(mode);
    for term_text in input.split('+') {
        let term_text = term_text.trim();
        if term_text.is_empty() {
            return Err(bad("empty term".into()));
        }
        let mut coeff = T::one();
        let mut factors: Vec<(VarId, u32)> = Vec::new();
        let mut saw_coeff = false;
        for piece in term_text.split('*') {
            let piece = piece.trim();
            if let Some(rest) = piece.strip_prefix('x') {
                let (var_text, exp) = match rest.split_once('^') {
                    Some((v, e)) => {
                        if mode == RingMode::Noncommutative {
                            return Err(bad("exponents not allowed in ordered mode".into()));
                        }
                        let e: u32 = e
                            .parse()
                            .map_err(|_| bad(format!("bad exponent {e:?}")))?;
                        (v, e)
                    }
                    None => (rest, 1),
                };
                let idx: u32 = var_text
                    .parse()
                    .map_err(|_| bad(format!("bad variable {piece:?}")))?;
                factors.push((VarId(idx), exp));
            } else {
                if saw_coeff || !factors.is_empty() {
                    return Err(bad(format!("unexpected token {piece:?}")));
                }
                coeff =
                    T::parse_token(piece).ok_or_else(|| bad(format!("bad rational {piece:?}")))?;
                saw_coeff = true;
            }
        }
        let monomial = match mode {
            RingMode::Commutative => Monomial::from_exponents(factors),
            RingMode::Noncommutative => {
                let mut seq = Vec::new();
                for (v, e) in factors {
                    for _ in 0..e {
                        seq.push(v);
                    }
                }
                Monomial::Ordered(seq)
            }
        };
        poly.add_term(monomial, coeff);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::One;

    fn x(i: u32) -> SparsePolynomial<Rat> {
        SparsePolynomial::var(VarId(i), RingMode::Commutative)
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_yields_empty_term_map() {
        let p = x(1).add(&x(1).neg()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.monomial_count(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let one = SparsePolynomial::one(RingMode::Commutative);
        let p = x(1).add(&one).unwrap();
        let q = x(1).sub(&one).unwrap();
        let prod = p.mul(&q).unwrap();
        let expected = x(1)
            .mul(&x(1))
            .unwrap()
            .sub(&SparsePolynomial::one(RingMode::Commutative))
            .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn ordered_multiplication_concatenates() {
        let nc = RingMode::Noncommutative;
        let x1 = SparsePolynomial::<Rat>::var(VarId(1), nc);
        let x2 = SparsePolynomial::<Rat>::var(VarId(2), nc);
        let sum = x1.add(&x2).unwrap();
        let prod = sum.mul(&x1).unwrap();
        // x1*x1 + x2*x1: two distinct ordered monomials
        assert_eq!(prod.monomial_count(), 2);
        assert!(prod
            .coefficient(&Monomial::Ordered(vec![VarId(1), VarId(1)]))
            .is_some());
        assert!(prod
            .coefficient(&Monomial::Ordered(vec![VarId(2), VarId(1)]))
            .is_some());
        // and the commutative reading would have merged nothing here either,
        // but x1*(x1+x2) differs in ordered mode:
        let prod2 = x1.mul(&sum).unwrap();
        assert_ne!(prod, prod2);
    }

    #[test]
    fn mode_mismatch_rejected() {
        let a = x(1);
        let b = SparsePolynomial::<Rat>::var(VarId(1), RingMode::Noncommutative);
        assert_eq!(a.add(&b), Err(Error::ModeMismatch));
        assert_eq!(a.mul(&b), Err(Error::ModeMismatch));
    }

    #[test]
    fn props_of_mixed_poly() {
        // x1*x2 + x3^2
        let p = x(1)
            .mul(&x(2))
            .unwrap()
            .add(&x(3).mul(&x(3)).unwrap())
            .unwrap();
        let props = p.props(None).unwrap();
        assert_eq!(props.degree, Degree::Finite(2));
        assert_eq!(props.monomial_count, 2);
        assert!(props.is_homogeneous);
        assert!(!props.is_multilinear);
    }

    #[test]
    fn props_of_zero() {
        let z = SparsePolynomial::<Rat>::zero(RingMode::Commutative);
        let props = z.props(None).unwrap();
        assert_eq!(props.degree, Degree::MinusInfinity);
        assert_eq!(props.monomial_count, 0);
        assert!(props.is_homogeneous);
        assert!(props.is_multilinear);
        assert!(props.w_degree_set.is_empty());
    }

    #[test]
    fn w_degree_set_constant() {
        let c = SparsePolynomial::constant(rat(7, 1), RingMode::Commutative);
        let props = c.props(None).unwrap();
        assert_eq!(props.w_degree_set.iter().copied().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn missing_weight_is_named() {
        let p = x(1).mul(&x(2)).unwrap();
        let w = Weighting::new([(VarId(1), 1)]).unwrap();
        assert_eq!(p.w_degree_set(&w), Err(Error::MissingWeight(VarId(2))));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = x(1)
            .mul(&x(2))
            .unwrap()
            .scale(&rat(3, 2))
            .add(&x(3).scale(&rat(-1, 1)))
            .unwrap()
            .add(&SparsePolynomial::constant(rat(5, 3), RingMode::Commutative))
            .unwrap();
        let text = p.to_string();
        let q: SparsePolynomial<Rat> = parse_poly(&text, RingMode::Commutative).unwrap();
        assert_eq!(p, q);
        assert!(Rat::one().is_one());
    }

    #[test]
    fn ordered_display_parse_round_trip() {
        let nc = RingMode::Noncommutative;
        let x1 = SparsePolynomial::<Rat>::var(VarId(1), nc);
        let x2 = SparsePolynomial::<Rat>::var(VarId(2), nc);
        let p = x1.mul(&x1).unwrap().add(&x2.mul(&x1).unwrap()).unwrap();
        let q: SparsePolynomial<Rat> = parse_poly(&p.to_string(), nc).unwrap();
        assert_eq!(p, q);
    }
}
