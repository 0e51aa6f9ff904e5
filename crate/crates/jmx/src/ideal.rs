//! Ideal-level algebra: sum, product, power, intersection, colon,
//! saturation, elimination, and quotient-ring presentations.
//!
//! An [`Ideal`] is a generator list plus a cache of reduced Groebner
//! bases, one per monomial order. Ideal equality means equality of the
//! reduced grevlex bases; that canonical form is also the fixed-point
//! test of the saturation loop. Randomness never enters this module:
//! colon ideals go through intersections over the generators, and the
//! intersection itself goes through the classical one-auxiliary-variable
//! elimination.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::groebner::{buchberger_with_cap, GroebnerBasis, GroebnerError};
use crate::order::MonomialOrder;
use crate::poly::{PolyError, Polynomial};
use crate::ring::{GradedRing, Monomial};

/// Saturation must stabilize in a Noetherian ring; hitting this cap
/// signals a bug, not a hard input.
pub const SATURATION_ITERATION_CAP: u32 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("colon by the zero polynomial or zero ideal")]
    ColonByZero,
    #[error("saturation did not stabilize within {cap} iterations")]
    SaturationDiverged { cap: u32 },
    #[error("defining ideal of a quotient must be proper")]
    UnitDefiningIdeal,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

thread_local! {
    static DEGREE_CAP: std::cell::Cell<Option<u64>> = const { std::cell::Cell::new(None) };
}

/// Set a weighted-degree cap for all subsequent basis computations on
/// this thread (None disables). Exceeding it aborts the computation with
/// a diagnostic instead of running away.
pub fn set_degree_cap(cap: Option<u64>) {
    DEGREE_CAP.with(|c| c.set(cap));
}

pub fn degree_cap() -> Option<u64> {
    DEGREE_CAP.with(|c| c.get())
}

pub struct Ideal {
    ring: GradedRing,
    gens: Vec<Polynomial>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("cache poisoned").clone();
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(cache),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl Ideal {
    /// Generators must live in `ring`; zero generators are dropped.
    pub fn new(ring: &GradedRing, gens: Vec<Polynomial>) -> Self {
        for g in &gens {
            assert!(g.ring() == ring, "generator from a different ring");
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn zero(ring: &GradedRing) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &GradedRing) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(&f.ring().clone(), vec![f.clone()])
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// True iff every generator is w-homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Reduced Groebner basis under `order`, cached per order. Concurrent
    /// readers see either no cached basis or a complete one.
    pub fn basis(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>, IdealError> {
        if let Some(b) = self.cache.read().expect("cache poisoned").get(order) {
            return Ok(b.clone());
        }
        let gb = Arc::new(buchberger_with_cap(
            &self.ring,
            &self.gens,
            order,
            degree_cap(),
        )?);
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(order.clone(), gb.clone());
        Ok(gb)
    }

    pub fn grevlex_basis(&self) -> Result<Arc<GroebnerBasis>, IdealError> {
        self.basis(&MonomialOrder::GrevLex)
    }

    /// Same ideal presented by its reduced grevlex basis. Useful before
    /// expensive products to keep generator lists small.
    pub fn reduced(&self) -> Result<Ideal, IdealError> {
        let gb = self.grevlex_basis()?;
        let ideal = Ideal::new(&self.ring, gb.elements().to_vec());
        ideal
            .cache
            .write()
            .expect("cache poisoned")
            .insert(MonomialOrder::GrevLex, gb);
        Ok(ideal)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.grevlex_basis()?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        let gb = self.grevlex_basis()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool, IdealError> {
        if self.gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Ok(true);
        }
        Ok(self.grevlex_basis()?.is_unit_ideal())
    }

    /// Ideal equality through canonical reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool, IdealError> {
        if self.ring != other.ring {
            return Ok(false);
        }
        let a = self.grevlex_basis()?;
        let b = other.grevlex_basis()?;
        Ok(a.elements() == b.elements())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g)?);
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I^n`, with `I^0` the unit ideal. Generators are the distinct
    /// n-fold products of the given generators.
    pub fn power(&self, n: u32) -> Result<Ideal, IdealError> {
        if n == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut gens: Vec<Polynomial> = Vec::new();
        let mut idx = vec![0usize; n as usize];
        if self.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        loop {
            let mut prod = self.gens[idx[0]].clone();
            for &k in &idx[1..] {
                prod = prod.mul(&self.gens[k])?;
            }
            gens.push(prod);
            // advance the non-decreasing index tuple (multisets only)
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return Ok(Ideal::new(&self.ring, gens));
                }
                pos -= 1;
                if idx[pos] + 1 < self.gens.len() {
                    idx[pos] += 1;
                    for later in pos + 1..idx.len() {
                        idx[later] = idx[pos];
                    }
                    break;
                }
            }
        }
    }

    /// Intersection through the classical auxiliary-variable elimination:
    /// eliminate t from t*I + (1-t)*J. The auxiliary variable is appended
    /// with weight 1 and never leaks into the result.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let n = self.ring.num_vars();
        let tname = self.ring.fresh_var_name("t");
        let big = self
            .ring
            .append_var(&tname, 1)
            .expect("fresh name cannot collide");
        let id_map: Vec<usize> = (0..n).collect();
        let t = Polynomial::variable(&big, n);
        let one_minus_t = Polynomial::one(&big).sub(&t)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        for f in &self.gens {
            gens.push(f.map_vars(&big, &id_map).mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.map_vars(&big, &id_map).mul(&one_minus_t)?);
        }
        let order = MonomialOrder::elimination(vec![n]);
        let gb = buchberger_with_cap(&big, &gens, &order, degree_cap())?;
        let mut result: Vec<Polynomial> = Vec::new();
        for g in gb.elements() {
            if g.avoids_vars(&[n]) {
                result.push(project_drop_last(g, &self.ring));
            }
        }
        Ok(Ideal::new(&self.ring, result))
    }

    /// Ideal quotient by a single polynomial: `(I : f) = (1/f)(I ∩ (f))`.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<Ideal, IdealError> {
        if f.is_zero() {
            return Err(IdealError::ColonByZero);
        }
        if f.ring() != &self.ring {
            return Err(IdealError::RingMismatch);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let meet = self.intersect(&Ideal::principal(f))?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            gens.push(g.exact_div(f)?);
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(I : J)` as the intersection of the quotients by J's generators.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let nonzero: Vec<&Polynomial> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(IdealError::ColonByZero);
        }
        let mut acc = self.colon_poly(nonzero[0])?;
        for g in &nonzero[1..] {
            acc = acc.intersect(&self.colon_poly(g)?)?;
        }
        Ok(acc)
    }

    /// Saturation `I : J^∞` by iterated colon, returning the fixed point
    /// and the stabilization exponent.
    pub fn saturate(&self, other: &Ideal) -> Result<(Ideal, u32), IdealError> {
        self.check_ring(other)?;
        if other.is_zero_ideal() {
            return Err(IdealError::ColonByZero);
        }
        let mut current = self.clone();
        for k in 0..SATURATION_ITERATION_CAP {
            let next = current.colon_ideal(other)?;
            if next.equals(&current)? {
                return Ok((current, k));
            }
            current = next;
        }
        Err(IdealError::SaturationDiverged {
            cap: SATURATION_ITERATION_CAP,
        })
    }

    /// Generators of `I ∩ k[back variables]`: the elimination-order basis
    /// filtered to polynomials avoiding the front block. The result still
    /// lives in the full ring.
    pub fn eliminate(&self, front: &[usize]) -> Result<Ideal, IdealError> {
        if front.is_empty() {
            return Ok(self.clone());
        }
        let order = MonomialOrder::elimination(front.to_vec());
        let gb = self.basis(&order)?;
        let gens: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.avoids_vars(front))
            .cloned()
            .collect();
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Saturation with respect to a single variable, exploiting the
    /// reverse-lex property: in a grevlex basis of a w-homogeneous ideal
    /// with `var` sorted last, the smallest variable divides a basis
    /// element exactly as often as it divides its leading term, so
    /// `I : var^∞` is generated (as a Groebner basis) by the elements
    /// with that variable divided out.
    pub fn saturate_variable(&self, var: usize) -> Result<Ideal, IdealError> {
        debug_assert!(self.is_homogeneous());
        let n = self.ring.num_vars();
        debug_assert!(var < n);
        // permuted ring with `var` moved last
        let mut perm: Vec<usize> = (0..n).filter(|&i| i != var).collect();
        perm.push(var);
        let vars: Vec<&str> = perm.iter().map(|&i| self.ring.vars()[i].as_str()).collect();
        let weights: Vec<u64> = perm.iter().map(|&i| self.ring.weights()[i]).collect();
        let permuted =
            GradedRing::weighted(&vars, &weights, self.ring.field()).expect("valid ring");
        // src index i goes to position of i in perm
        let mut fwd = vec![0usize; n];
        for (pos, &i) in perm.iter().enumerate() {
            fwd[i] = pos;
        }
        let mapped: Vec<Polynomial> = self.gens.iter().map(|g| g.map_vars(&permuted, &fwd)).collect();
        let gb = buchberger_with_cap(&permuted, &mapped, &MonomialOrder::GrevLex, degree_cap())?;
        let mut back = vec![0usize; n];
        for (pos, &i) in perm.iter().enumerate() {
            back[pos] = i;
        }
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in gb.elements() {
            let strip = g
                .terms()
                .iter()
                .map(|(m, _)| m.exps()[n - 1])
                .min()
                .unwrap_or(0);
            let divided = if strip == 0 {
                g.clone()
            } else {
                let divisor = Polynomial::from_terms(
                    &permuted,
                    MonomialOrder::GrevLex,
                    vec![(
                        Monomial::new(
                            {
                                let mut e = vec![0u16; n];
                                e[n - 1] = strip;
                                e
                            },
                            permuted.weights(),
                        ),
                        1,
                    )],
                );
                g.exact_div(&divisor)?
            };
            gens.push(divided.map_vars(&self.ring, &back));
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Saturation with respect to the irrelevant maximal ideal, as the
    /// intersection of the per-variable saturations. Only valid for
    /// w-homogeneous ideals; cross-checked against the iterated-colon
    /// `saturate` in the test suite.
    pub fn saturate_irrelevant(&self) -> Result<Ideal, IdealError> {
        let n = self.ring.num_vars();
        let mut parts: Vec<Ideal> = Vec::with_capacity(n);
        for v in 0..n {
            let s = self.saturate_variable(v)?;
            if s.is_unit()? {
                continue; // intersecting with (1) is a no-op
            }
            if !parts.iter().any(|p| p.equals(&s).unwrap_or(false)) {
                parts.push(s);
            }
        }
        if parts.is_empty() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = acc.intersect(p)?;
        }
        Ok(acc)
    }

    fn check_ring(&self, other: &Ideal) -> Result<(), IdealError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(IdealError::RingMismatch)
        }
    }
}

fn project_drop_last(g: &Polynomial, target: &GradedRing) -> Polynomial {
    let pairs: Vec<(Monomial, u64)> = g
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(*m.exps().last().unwrap(), 0);
            (
                Monomial::new(m.exps()[..target.num_vars()].to_vec(), target.weights()),
                *c,
            )
        })
        .collect();
    Polynomial::from_terms(target, MonomialOrder::GrevLex, pairs)
}

/// All 2x2 minors of a 2-row matrix of ring elements.
pub fn minors2(ring: &GradedRing, top: &[Polynomial], bottom: &[Polynomial]) -> Result<Ideal, IdealError> {
    if top.len() != bottom.len() {
        return Err(IdealError::RingMismatch);
    }
    for f in top.iter().chain(bottom) {
        if f.ring() != ring {
            return Err(IdealError::RingMismatch);
        }
    }
    let n = top.len();
    let mut gens = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let m = top[i].mul(&bottom[j])?.sub(&top[j].mul(&bottom[i])?)?;
            gens.push(m);
        }
    }
    Ok(Ideal::new(ring, gens))
}

/// A cyclic quotient `S/J` presented by its defining ideal. The module
/// argument of the length formula is always such a quotient.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    ring: GradedRing,
    defining: Ideal,
}

impl QuotientPresentation {
    /// `J` must be proper (checked via the normal form of 1).
    pub fn new(defining: Ideal) -> Result<Self, IdealError> {
        if defining.is_unit()? {
            return Err(IdealError::UnitDefiningIdeal);
        }
        Ok(QuotientPresentation {
            ring: defining.ring().clone(),
            defining,
        })
    }

    /// The full ring `S` itself (zero defining ideal).
    pub fn full(ring: &GradedRing) -> Self {
        QuotientPresentation {
            ring: ring.clone(),
            defining: Ideal::zero(ring),
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;

    fn ring2() -> GradedRing {
        GradedRing::standard(&["x", "y"], PrimeField::default_field()).unwrap()
    }

    fn ideal(ring: &GradedRing, gens: &[&str]) -> Ideal {
        Ideal::new(
            ring,
            gens.iter()
                .map(|s| parse_polynomial(s, ring).unwrap())
                .collect(),
        )
    }

    #[test]
    fn sum_reduces_redundant_generators() {
        let r = ring2();
        let a = ideal(&r, &["x^2"]);
        let b = ideal(&r, &["x"]);
        let s = a.sum(&b).unwrap();
        assert!(s.equals(&ideal(&r, &["x"])).unwrap());
        let with_zero = a.sum(&Ideal::zero(&r)).unwrap();
        assert!(with_zero.equals(&a).unwrap());
        assert!(ideal(&r, &["x"]).sum(&ideal(&r, &["y"])).unwrap().equals(&ideal(&r, &["x", "y"])).unwrap());
    }

    #[test]
    fn powers() {
        let r = ring2();
        let m = ideal(&r, &["x", "y"]);
        assert!(m.power(0).unwrap().is_unit().unwrap());
        assert!(m.power(1).unwrap().equals(&m).unwrap());
        let sq = m.power(2).unwrap();
        assert!(sq.equals(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
        assert_eq!(sq.num_generators(), 3);
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let r = ring2();
        let a = ideal(&r, &["x"]);
        let b = ideal(&r, &["y"]);
        let meet = a.intersect(&b).unwrap();
        assert!(meet.equals(&ideal(&r, &["x*y"])).unwrap());
        assert!(a.intersect(&Ideal::unit(&r)).unwrap().equals(&a).unwrap());
        assert!(a.intersect(&a).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn colon_cases() {
        let r = ring2();
        let i = ideal(&r, &["x^2", "x*y"]);
        let x = parse_polynomial("x", &r).unwrap();
        let q = i.colon_poly(&x).unwrap();
        assert!(q.equals(&ideal(&r, &["x", "y"])).unwrap());
        // I : 1 = I
        let one = Polynomial::one(&r);
        assert!(i.colon_poly(&one).unwrap().equals(&i).unwrap());
        // (fg) : f = (g) for coprime monomials
        let fg = ideal(&r, &["x^2*y^3"]);
        let f = parse_polynomial("x^2", &r).unwrap();
        assert!(fg.colon_poly(&f).unwrap().equals(&ideal(&r, &["y^3"])).unwrap());
        assert!(matches!(
            i.colon_poly(&Polynomial::zero(&r)),
            Err(IdealError::ColonByZero)
        ));
    }

    #[test]
    fn saturation_exponents() {
        let r = ring2();
        let i = ideal(&r, &["x^2", "x*y"]);
        let (sat, k) = i.saturate(&ideal(&r, &["y"])).unwrap();
        assert!(sat.equals(&ideal(&r, &["x"])).unwrap());
        assert_eq!(k, 1);
        let (sat, _) = i.saturate(&ideal(&r, &["x"])).unwrap();
        assert!(sat.is_unit().unwrap());
        let (sat, k) = i.saturate(&Ideal::unit(&r)).unwrap();
        assert!(sat.equals(&i).unwrap());
        assert_eq!(k, 0);
    }

    #[test]
    fn eliminate_substitution() {
        let f = PrimeField::default_field();
        let r = GradedRing::standard(&["x", "y", "t"], f).unwrap();
        let i = ideal(&r, &["x - t", "y - t^2"]);
        let e = i.eliminate(&[2]).unwrap();
        assert!(e.equals(&ideal(&r, &["y - x^2"])).unwrap());
        // no t-free consequence of (x - t) alone
        let only = ideal(&r, &["x - t"]).eliminate(&[2]).unwrap();
        assert!(only.is_zero_ideal());
        // empty front block is the identity
        assert!(i.eliminate(&[]).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn minors_of_small_matrices() {
        let f = PrimeField::default_field();
        let r = GradedRing::standard(&["x", "y", "z"], f).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = minors2(&r, &[p("x"), p("y")], &[p("y"), p("z")]).unwrap();
        assert!(m.equals(&ideal(&r, &["x*z - y^2"])).unwrap());
        let herzog = minors2(
            &r,
            &[p("x"), p("y"), p("z")],
            &[p("y"), p("z"), p("x^2")],
        )
        .unwrap();
        assert!(herzog
            .equals(&ideal(&r, &["x*z - y^2", "x^3 - y*z", "x^2*y - z^2"]))
            .unwrap());
    }

    #[test]
    fn variable_saturation_matches_iterated_colon() {
        let r = ring2();
        let i = ideal(&r, &["x^2", "x*y"]);
        let fast = i.saturate_variable(1).unwrap();
        let (slow, _) = i.saturate(&ideal(&r, &["y"])).unwrap();
        assert!(fast.equals(&slow).unwrap());
        let fast_irr = i.saturate_irrelevant().unwrap();
        let (slow_irr, _) = i.saturate(&ideal(&r, &["x", "y"])).unwrap();
        assert!(fast_irr.equals(&slow_irr).unwrap());
    }

    #[test]
    fn quotient_presentation_rejects_unit() {
        let r = ring2();
        assert!(QuotientPresentation::new(Ideal::unit(&r)).is_err());
        QuotientPresentation::new(ideal(&r, &["x^2 - y^2"])).unwrap();
    }
}
