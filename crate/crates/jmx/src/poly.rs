//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept sorted strictly decreasing in the polynomial's active
//! monomial order, with no zero coefficients and no duplicate monomials;
//! the empty term list is zero. The stored order is a presentation
//! detail: the polynomial's value is order-independent and re-sorting
//! happens when a computation asks for a different active order.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::order::MonomialOrder;
use crate::ring::{GradedRing, Monomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
}

#[derive(Clone)]
pub struct Polynomial {
    ring: GradedRing,
    order: MonomialOrder,
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(ring: &GradedRing) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::GrevLex,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &GradedRing) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn constant(ring: &GradedRing, c: u64) -> Self {
        let c = ring.field().reduce_u64(c);
        let mut terms = Vec::new();
        if c != 0 {
            terms.push((ring.one_monomial(), c));
        }
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::GrevLex,
            terms,
        }
    }

    pub fn variable(ring: &GradedRing, idx: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::GrevLex,
            terms: vec![(ring.var_monomial(idx), 1)],
        }
    }

    /// Build from arbitrary (monomial, coefficient) pairs: merges
    /// duplicates, drops zeros, sorts under `order`.
    pub fn from_terms(
        ring: &GradedRing,
        order: MonomialOrder,
        mut pairs: Vec<(Monomial, u64)>,
    ) -> Self {
        let field = ring.field();
        let weights = ring.weights();
        pairs.sort_by(|a, b| order.cmp(weights, &b.0, &a.0));
        let mut terms: Vec<(Monomial, u64)> = Vec::with_capacity(pairs.len());
        for (m, c) in pairs {
            let c = field.reduce_u64(c);
            match terms.last_mut() {
                Some((last, acc)) if *last == m => {
                    *acc = field.add(*acc, c);
                }
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.terms.first().map(|&(_, c)| c)
    }

    /// Largest weighted degree among the terms (None for zero).
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree()).max()
    }

    /// Some(d) when every term has weighted degree d ("w-homogeneous").
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Re-sort the terms under a different active order.
    pub fn with_order(&self, order: &MonomialOrder) -> Polynomial {
        if &self.order == order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        let weights = self.ring.weights();
        terms.sort_by(|a, b| order.cmp(weights, &b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            order: order.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let other = other.with_order(&self.order);
        let field = self.ring.field();
        let weights = self.ring.weights();
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.order.cmp(weights, &self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            order: self.order.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    /// Scale by a field element.
    pub fn scale(&self, c: u64) -> Polynomial {
        let field = self.ring.field();
        let c = field.reduce_u64(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), field.mul(*k, c)))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`. Preserves term ordering.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Polynomial {
        let field = self.ring.field();
        let c = field.reduce_u64(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), field.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.ring.field();
        let mut acc: std::collections::HashMap<Monomial, u64> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(*ca, *cb);
                let slot = acc.entry(m).or_insert(0);
                *slot = field.add(*slot, c);
            }
        }
        let pairs: Vec<(Monomial, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(Polynomial::from_terms(&self.ring, self.order.clone(), pairs))
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a
    /// remainder. Used to unscale elimination results by the colon
    /// denominator, where exactness is guaranteed.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let field = self.ring.field();
        let divisor = divisor.with_order(&self.order);
        let dlm = divisor.leading_monomial().unwrap().clone();
        let dlc = divisor.leading_coeff().unwrap();
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, u64)> = Vec::new();
        while let Some(lm) = rem.leading_monomial() {
            if !dlm.divides(lm) {
                return Err(PolyError::InexactDivision);
            }
            let qm = dlm.div_into(lm);
            let qc = field.div(rem.leading_coeff().unwrap(), dlc);
            quo.push((qm.clone(), qc));
            let sub = divisor.mul_term(&qm, qc);
            rem = rem.sub(&sub)?;
        }
        Ok(Polynomial::from_terms(&self.ring, self.order.clone(), quo))
    }

    /// Map into `target` by sending variable `i` to variable `var_map[i]`.
    /// Exponents on unmapped target variables stay zero.
    pub fn map_vars(&self, target: &GradedRing, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.ring.num_vars());
        let pairs: Vec<(Monomial, u64)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; target.num_vars()];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[var_map[i]] += e;
                }
                (Monomial::new(exps, target.weights()), *c)
            })
            .collect();
        Polynomial::from_terms(target, self.order.clone(), pairs)
    }

    /// Substitute zero for the given variables, dropping every term that
    /// touches them.
    pub fn set_vars_to_zero(&self, vars: &[usize]) -> Polynomial {
        let terms: Vec<(Monomial, u64)> = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&i| m.exps()[i] == 0))
            .map(|(m, c)| (m.clone(), *c))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            order: self.order.clone(),
            terms,
        }
    }

    /// True when no term involves any of the given variables.
    pub fn avoids_vars(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| vars.iter().all(|&i| m.exps()[i] == 0))
    }

    /// Monic multiple (leading coefficient 1).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        self.terms == other.with_order(&self.order).terms
    }
}
impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Canonical printing: terms strictly decreasing in the active order,
/// coefficients as canonical representatives in [1, p), explicit `*` and
/// `^`, so the output reparses to an equal polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring2() -> GradedRing {
        GradedRing::standard(&["x", "y"], PrimeField::default_field()).unwrap()
    }

    fn ring3() -> GradedRing {
        GradedRing::standard(&["x", "y", "z"], PrimeField::default_field()).unwrap()
    }

    #[test]
    fn add_identity_and_inverse() {
        let r = ring2();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let f = x.add(&y).unwrap();
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
        let p = r.field().modulus();
        let minus_x = x.scale(p - 1);
        assert_eq!(f.add(&minus_x).unwrap(), y);
    }

    #[test]
    fn add_merges_common_monomials() {
        // (x^2 + y) + (x^2 + z) = 2x^2 + y + z
        let r = ring3();
        let x2 = Polynomial::variable(&r, 0).mul(&Polynomial::variable(&r, 0)).unwrap();
        let y = Polynomial::variable(&r, 1);
        let z = Polynomial::variable(&r, 2);
        let s = x2.add(&y).unwrap().add(&x2.add(&z).unwrap()).unwrap();
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.leading_coeff(), Some(2));
        assert_eq!(s.to_string(), "2*x^2 + y + z");
    }

    #[test]
    fn mul_difference_of_squares() {
        let r = ring2();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let f = x.add(&y).unwrap();
        let g = x.sub(&y).unwrap();
        let prod = f.mul(&g).unwrap();
        let x2 = x.mul(&x).unwrap();
        let y2 = y.mul(&y).unwrap();
        assert_eq!(prod, x2.sub(&y2).unwrap());
        assert_eq!(x.mul(&Polynomial::one(&r)).unwrap(), x);
        assert!(x.mul(&Polynomial::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn homogeneity_of_products() {
        let r = GradedRing::weighted(&["x", "y"], &[2, 3], PrimeField::default_field()).unwrap();
        let x = Polynomial::variable(&r, 0); // degree 2
        let y = Polynomial::variable(&r, 1); // degree 3
        let x3 = x.mul(&x).unwrap().mul(&x).unwrap();
        let y2 = y.mul(&y).unwrap();
        let f = x3.sub(&y2).unwrap(); // both degree 6
        assert_eq!(f.homogeneous_degree(), Some(6));
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.homogeneous_degree(), Some(12));
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let f = x.add(&y).unwrap();
        let g = x.sub(&y).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(x.exact_div(&f), Err(PolyError::InexactDivision));
    }

    #[test]
    fn order_independent_value() {
        let r = ring3();
        let x = Polynomial::variable(&r, 0);
        let z2 = Polynomial::variable(&r, 2).mul(&Polynomial::variable(&r, 2)).unwrap();
        let f = x.add(&z2).unwrap(); // grevlex leader z^2, lex leader x
        let g = f.with_order(&MonomialOrder::Lex);
        assert_eq!(g.leading_monomial().unwrap().exps(), &[1, 0, 0]);
        assert_eq!(f, g);
    }
}
