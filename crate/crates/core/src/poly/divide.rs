//! Exact multivariate division (commutative mode).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Monomial, RingMode, SparsePolynomial, VarId};

/// Graded-lex comparison used as the division term order. The storage order of
/// monomials is not multiplication-compatible, so the division loop orders
/// terms itself.
fn cmp_grlex(a: &[(VarId, u32)], b: &[(VarId, u32)]) -> Ordering {
    let da: u64 = a.iter().map(|&(_, e)| e as u64).sum();
    let db: u64 = b.iter().map(|&(_, e)| e as u64).sum();
    da.cmp(&db).then_with(|| {
        // lex on (var, exp) with smaller VarId more significant; exponent
        // comparison is enough because the pair lists are sorted by var.
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    // earlier variable => larger in lex
                    match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Less => return Ordering::Less,
                            Ordering::Greater => return Ordering::Greater,
                            Ordering::Equal => {}
                        },
                    }
                }
            }
            i += 1;
        }
    })
}

fn pairs(m: &Monomial) -> &[(VarId, u32)] {
    match m {
        Monomial::Commutative(ps) => ps,
        Monomial::Ordered(_) => unreachable!("division is commutative-only"),
    }
}

fn leading<T: Scalar>(p: &SparsePolynomial<T>) -> (&Monomial, &T) {
    p.terms()
        .max_by(|(ma, _), (mb, _)| cmp_grlex(pairs(ma), pairs(mb)))
        .expect("leading term of nonzero polynomial")
}

/// `a / b` when the quotient divides exactly; `None` when it does not.
fn monomial_quotient(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let (a, b) = (pairs(a), pairs(b));
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &(v, e) in a {
        if j < b.len() && b[j].0 == v {
            let eb = b[j].1;
            j += 1;
            match e.cmp(&eb) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v, e - eb)),
            }
        } else {
            out.push((v, e));
        }
    }
    if j < b.len() {
        return None; // divisor has a variable the dividend term lacks
    }
    Some(Monomial::Commutative(out))
}

/// Exact division of commutative polynomials: returns `q` with `a = q * b`,
/// or an error if `b` is zero, the modes are wrong, or the division leaves a
/// remainder.
pub fn div_exact<T: Scalar>(
    a: &SparsePolynomial<T>,
    b: &SparsePolynomial<T>,
) -> Result<SparsePolynomial<T>> {
    if a.mode() != RingMode::Commutative || b.mode() != RingMode::Commutative {
        return Err(Error::OrderedUnsupported("polynomial division"));
    }
    if b.is_zero() {
        return Err(Error::precondition("division by the zero polynomial"));
    }
    let mut remainder = a.clone();
    let mut quotient = SparsePolynomial::zero(RingMode::Commutative);
    let (lm_b, lc_b) = {
        let (m, c) = leading(b);
        (m.clone(), c.clone())
    };
    while !remainder.is_zero() {
        let (lm_r, lc_r) = {
            let (m, c) = leading(&remainder);
            (m.clone(), c.clone())
        };
        let Some(qm) = monomial_quotient(&lm_r, &lm_b) else {
            return Err(Error::internal(
                "exact division failed: leading monomial not divisible",
            ));
        };
        let qc = lc_r / lc_b.clone();
        let t = SparsePolynomial::from_terms(RingMode::Commutative, [(qm, qc)])?;
        remainder = remainder.sub(&t.mul(b)?)?;
        quotient = quotient.add(&t)?;
    }
    Ok(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;
    use crate::Rat;

    fn x(i: u32) -> SparsePolynomial<Rat> {
        SparsePolynomial::var(VarId(i), RingMode::Commutative)
    }

    #[test]
    fn divides_products_exactly() {
        let one = SparsePolynomial::one(RingMode::Commutative);
        let a = x(1).add(&x(2)).unwrap();
        let b = x(1).sub(&one).unwrap().add(&x(3)).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(div_exact(&prod, &a).unwrap(), b);
        assert_eq!(div_exact(&prod, &b).unwrap(), a);
    }

    #[test]
    fn rejects_inexact_division() {
        let a = x(1).mul(&x(1)).unwrap();
        let b = x(2);
        assert!(div_exact(&a, &b).is_err());
    }

    #[test]
    fn zero_divided_by_anything_is_zero() {
        let z = SparsePolynomial::<Rat>::zero(RingMode::Commutative);
        let q = div_exact(&z, &x(1)).unwrap();
        assert!(q.is_zero());
    }
}
