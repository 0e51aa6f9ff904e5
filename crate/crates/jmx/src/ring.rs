//! Weighted-graded polynomial rings and their monomials.
//!
//! A [`GradedRing`] is `F_p[x_1, ..., x_n]` with a positive integer weight
//! per variable; all weights equal to one is the standard grading. Rings
//! are immutable and cheap to clone (shared internals). Two rings are
//! interchangeable exactly when their variables, weights and field agree.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::PrimeField;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("ring must have at least one variable")]
    NoVariables,
    #[error("weight of variable {0} must be positive")]
    ZeroWeight(String),
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("weight count does not match variable count")]
    WeightCount,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingInner {
    vars: Vec<String>,
    weights: Vec<u64>,
    field: PrimeField,
}

/// A weighted-graded polynomial ring over a prime field.
#[derive(Clone)]
pub struct GradedRing {
    inner: Arc<RingInner>,
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}
impl Eq for GradedRing {}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedRing(F_{}[{}], weights {:?})",
            self.field().modulus(),
            self.inner.vars.join(","),
            self.inner.weights
        )
    }
}

impl GradedRing {
    pub fn new(
        vars: Vec<String>,
        weights: Vec<u64>,
        field: PrimeField,
    ) -> Result<Self, RingError> {
        if vars.is_empty() {
            return Err(RingError::NoVariables);
        }
        if vars.len() != weights.len() {
            return Err(RingError::WeightCount);
        }
        for (v, &w) in vars.iter().zip(&weights) {
            if w == 0 {
                return Err(RingError::ZeroWeight(v.clone()));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(RingError::DuplicateVariable(v.clone()));
            }
        }
        Ok(GradedRing {
            inner: Arc::new(RingInner { vars, weights, field }),
        })
    }

    /// Standard-graded ring (all weights 1).
    pub fn standard(vars: &[&str], field: PrimeField) -> Result<Self, RingError> {
        GradedRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            vec![1; vars.len()],
            field,
        )
    }

    pub fn weighted(vars: &[&str], weights: &[u64], field: PrimeField) -> Result<Self, RingError> {
        GradedRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
            field,
        )
    }

    pub fn num_vars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn weights(&self) -> &[u64] {
        &self.inner.weights
    }

    pub fn field(&self) -> PrimeField {
        self.inner.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.inner.weights.iter().all(|&w| w == 1)
    }

    /// Ring with one extra variable appended (used for auxiliary
    /// elimination variables; the name must be fresh).
    pub fn append_var(&self, name: &str, weight: u64) -> Result<GradedRing, RingError> {
        let mut vars = self.inner.vars.clone();
        vars.push(name.to_string());
        let mut weights = self.inner.weights.clone();
        weights.push(weight);
        GradedRing::new(vars, weights, self.inner.field)
    }

    /// A variable name of the form `base`, `base0`, `base1`, ... that does
    /// not collide with the ring's variables.
    pub fn fresh_var_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        let mut i = 0usize;
        loop {
            let cand = format!("{base}{i}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
            i += 1;
        }
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        debug_assert_eq!(exps.len(), self.num_vars());
        Monomial::new(exps.to_vec(), self.weights())
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::new(vec![0; self.num_vars()], self.weights())
    }

    pub fn var_monomial(&self, idx: usize) -> Monomial {
        let mut exps = vec![0u16; self.num_vars()];
        exps[idx] = 1;
        Monomial::new(exps, self.weights())
    }
}

/// A monomial: an exponent vector with its weighted degree cached.
/// The cached degree always equals the dot product of exponents and the
/// weights of the ring it was built against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    wdeg: u64,
}

impl Monomial {
    pub fn new(exps: Vec<u16>, weights: &[u64]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let wdeg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            wdeg,
        }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn weighted_degree(&self) -> u64 {
        self.wdeg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a + b)
            .collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            wdeg: self.wdeg + other.wdeg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Vec<u16> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(&b, &a)| b - a)
            .collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            wdeg: other.wdeg - self.wdeg,
        }
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial, weights: &[u64]) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial::new(exps, weights)
    }

    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Support as variable indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> GradedRing {
        GradedRing::standard(&["x", "y", "z"], PrimeField::default_field()).unwrap()
    }

    #[test]
    fn weighted_degree_cache() {
        let r = GradedRing::weighted(&["x", "y", "z"], &[3, 4, 5], PrimeField::default_field())
            .unwrap();
        let m = r.monomial(&[1, 2, 0]);
        assert_eq!(m.weighted_degree(), 3 + 8);
        let n = r.monomial(&[0, 0, 2]);
        assert_eq!(m.mul(&n).weighted_degree(), 11 + 10);
    }

    #[test]
    fn monomial_divisibility() {
        let r = ring3();
        let xy = r.monomial(&[1, 1, 0]);
        let x2y = r.monomial(&[2, 1, 0]);
        assert!(xy.divides(&x2y));
        assert!(!x2y.divides(&xy));
        assert_eq!(xy.div_into(&x2y), r.var_monomial(0));
        assert!(r.var_monomial(0).coprime(&r.var_monomial(2)));
    }

    #[test]
    fn ring_validation() {
        assert_eq!(
            GradedRing::weighted(&["x"], &[0], PrimeField::default_field()),
            Err(RingError::ZeroWeight("x".into()))
        );
        assert_eq!(
            GradedRing::standard(&["x", "x"], PrimeField::default_field()),
            Err(RingError::DuplicateVariable("x".into()))
        );
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = GradedRing::standard(&["t", "t0"], PrimeField::default_field()).unwrap();
        assert_eq!(r.fresh_var_name("t"), "t1");
        assert_eq!(r.fresh_var_name("u"), "u");
    }
}
