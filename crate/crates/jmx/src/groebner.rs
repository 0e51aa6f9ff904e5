//! Buchberger's algorithm with the Gebauer-Moeller pair criteria, normal
//! forms, and reduced Groebner bases.
//!
//! Pair selection is the normal strategy (minimal weighted degree of the
//! lcm) with the sugar degree as tie-break, which behaves well on the
//! inhomogeneous intermediate ideals that show up in elimination. The
//! returned basis is always reduced: monic, auto-reduced, leading
//! monomials pairwise non-divisible, elements sorted increasingly in the
//! active order. That canonical form is what makes ideal equality
//! decidable by comparing bases.

use std::cmp::Ordering;

use thiserror::Error;

use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("generators belong to different rings")]
    RingMismatch,
    #[error("weighted degree cap {cap} exceeded during basis computation")]
    DegreeCapExceeded { cap: u64 },
}

/// A reduced Groebner basis together with the data identifying what it
/// presents.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: GradedRing,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    fingerprint: u64,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Fingerprint of the generators the basis was computed from.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// The ideal contains 1.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    /// Fully reduced remainder of `f` modulo the basis: no term of the
    /// result is divisible by any leading monomial, and `f - r` lies in
    /// the ideal. Idempotent and linear.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = f.with_order(&self.order);
        normal_form(&f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Minimal monomial generators of the initial ideal. For a reduced
    /// basis the leading monomials are already pairwise non-divisible.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Buchberger criterion: every S-polynomial reduces to zero. Used by
    /// the test suites, not by the algorithms.
    pub fn verify(&self) -> bool {
        let weights = self.ring.weights();
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j], weights);
                if !normal_form(&s, &self.elements, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Multivariate division: fully reduce `f` against `reducers` (all in the
/// same ring, terms sorted under `order`).
pub fn normal_form(f: &Polynomial, reducers: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut rem: Vec<(Monomial, u64)> = Vec::new();
    let mut h = f.clone();
    'outer: while let Some(lm) = h.leading_monomial() {
        let lm = lm.clone();
        let lc = h.leading_coeff().unwrap();
        for g in reducers {
            if let Some(glm) = g.leading_monomial() {
                if glm.divides(&lm) {
                    let qm = glm.div_into(&lm);
                    let qc = field.div(lc, g.leading_coeff().unwrap());
                    h = h.sub(&g.mul_term(&qm, qc)).expect("same ring");
                    continue 'outer;
                }
            }
        }
        // no reducer: the leading term is part of the normal form
        rem.push((lm, lc));
        h = strip_leading(&h);
    }
    Polynomial::from_terms(&ring, order.clone(), rem)
}

fn strip_leading(f: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        f.ring(),
        f.order().clone(),
        f.terms()[1..].to_vec(),
    )
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, weights: &[u64]) -> Polynomial {
    let flm = f.leading_monomial().unwrap();
    let glm = g.leading_monomial().unwrap();
    let lcm = flm.lcm(glm, weights);
    let field = f.ring().field();
    let fm = flm.div_into(&lcm);
    let gm = glm.div_into(&lcm);
    let fc = field.inv(f.leading_coeff().unwrap());
    let gc = field.inv(g.leading_coeff().unwrap());
    f.mul_term(&fm, fc)
        .sub(&g.mul_term(&gm, gc))
        .expect("same ring")
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(
    ring: &GradedRing,
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_cap(ring, gens, order, None)
}

/// Same, aborting with a diagnostic once an S-pair's lcm exceeds the
/// weighted degree cap.
pub fn buchberger_with_cap(
    ring: &GradedRing,
    gens: &[Polynomial],
    order: &MonomialOrder,
    cap: Option<u64>,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ring.clone();
    for g in gens {
        if g.ring() != &ring {
            return Err(GroebnerError::RingMismatch);
        }
    }
    let fingerprint = fingerprint_gens(&ring, order, gens);
    let weights = ring.weights().to_vec();

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).monic())
        .collect();
    // deterministic startup: feed generators smallest-leading-term first
    inputs.sort_by(|a, b| {
        order.cmp(
            &weights,
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    for g in inputs {
        let sugar = g.weighted_degree().unwrap_or(0);
        let reduced = normal_form(&g, &basis, order);
        if reduced.is_zero() {
            continue;
        }
        add_with_update(&mut basis, &mut sugars, &mut pairs, reduced.monic(), sugar, &weights);
    }

    while !pairs.is_empty() {
        let best = select_pair(&pairs, &weights, order);
        let pair = pairs.swap_remove(best);
        if let Some(cap) = cap {
            if pair.lcm.weighted_degree() > cap {
                return Err(GroebnerError::DegreeCapExceeded { cap });
            }
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &weights);
        let (r, sugar) = normal_form_sugar(&s, pair.sugar, &basis, &sugars, order);
        if !r.is_zero() {
            add_with_update(&mut basis, &mut sugars, &mut pairs, r.monic(), sugar, &weights);
        }
    }

    let elements = reduce_basis(basis, order, &weights);
    Ok(GroebnerBasis {
        ring,
        order: order.clone(),
        elements,
        fingerprint,
    })
}

/// Normal form that also tracks the sugar degree of the result.
fn normal_form_sugar(
    f: &Polynomial,
    sugar0: u64,
    basis: &[Polynomial],
    sugars: &[u64],
    order: &MonomialOrder,
) -> (Polynomial, u64) {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut sugar = sugar0;
    let mut rem: Vec<(Monomial, u64)> = Vec::new();
    let mut h = f.clone();
    'outer: while let Some(lm) = h.leading_monomial() {
        let lm = lm.clone();
        let lc = h.leading_coeff().unwrap();
        for (k, g) in basis.iter().enumerate() {
            let glm = g.leading_monomial().unwrap();
            if glm.divides(&lm) {
                let qm = glm.div_into(&lm);
                let qc = field.div(lc, g.leading_coeff().unwrap());
                sugar = sugar.max(sugars[k] + qm.weighted_degree());
                h = h.sub(&g.mul_term(&qm, qc)).expect("same ring");
                continue 'outer;
            }
        }
        rem.push((lm, lc));
        h = strip_leading(&h);
    }
    (Polynomial::from_terms(&ring, order.clone(), rem), sugar)
}

/// Normal selection strategy: minimal lcm weighted degree, then minimal
/// sugar, then the orderwise-smallest lcm, then lowest indices.
fn select_pair(pairs: &[Pair], weights: &[u64], order: &MonomialOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let a = &pairs[k];
        let b = &pairs[best];
        let key = a
            .lcm
            .weighted_degree()
            .cmp(&b.lcm.weighted_degree())
            .then(a.sugar.cmp(&b.sugar))
            .then(order.cmp(weights, &a.lcm, &b.lcm))
            .then(a.j.cmp(&b.j))
            .then(a.i.cmp(&b.i));
        if key == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Gebauer-Moeller update: push `h` onto the basis, prune the pending
/// pair set by the chain criterion, and add the surviving new pairs
/// (lcm criterion among the new ones, then Buchberger's coprimality
/// criterion).
fn add_with_update(
    basis: &mut Vec<Polynomial>,
    sugars: &mut Vec<u64>,
    pairs: &mut Vec<Pair>,
    h: Polynomial,
    sugar: u64,
    weights: &[u64],
) {
    let t = basis.len();
    let hlm = h.leading_monomial().unwrap().clone();

    let lcm_with = |i: usize, basis: &[Polynomial]| -> Monomial {
        basis[i].leading_monomial().unwrap().lcm(&hlm, weights)
    };

    // candidate pairs (i, t), pruned among themselves: drop (i, t) when
    // some other candidate's lcm properly divides its lcm, or divides it
    // with a smaller index (keeps exactly one representative per lcm)
    let cand_lcms: Vec<Monomial> = (0..t).map(|i| lcm_with(i, basis)).collect();
    let mut keep = vec![true; t];
    for i in 0..t {
        if !keep[i] {
            continue;
        }
        for j in 0..t {
            if i == j || !keep[j] {
                continue;
            }
            if cand_lcms[j].divides(&cand_lcms[i]) && cand_lcms[j] != cand_lcms[i] {
                keep[i] = false;
                break;
            }
        }
    }
    // equal lcms: keep the lowest index
    for i in 0..t {
        if !keep[i] {
            continue;
        }
        for j in 0..i {
            if keep[j] && cand_lcms[j] == cand_lcms[i] {
                keep[i] = false;
                break;
            }
        }
    }

    // chain criterion on the old pairs
    pairs.retain(|p| {
        let l = &p.lcm;
        if !hlm.divides(l) {
            return true;
        }
        let li = basis[p.i].leading_monomial().unwrap().lcm(&hlm, weights);
        let lj = basis[p.j].leading_monomial().unwrap().lcm(&hlm, weights);
        li == *l || lj == *l
    });

    for i in 0..t {
        if !keep[i] {
            continue;
        }
        let ilm = basis[i].leading_monomial().unwrap();
        if ilm.coprime(&hlm) {
            continue; // Buchberger's first criterion
        }
        let lcm = cand_lcms[i].clone();
        let sug = (sugars[i] + ilm.div_into(&lcm).weighted_degree())
            .max(sugar + hlm.div_into(&lcm).weighted_degree());
        pairs.push(Pair { i, j: t, lcm, sugar: sug });
    }

    basis.push(h);
    sugars.push(sugar);
}

/// Minimalize and tail-reduce: the reduced basis is unique for the ideal
/// and order.
fn reduce_basis(
    mut basis: Vec<Polynomial>,
    order: &MonomialOrder,
    weights: &[u64],
) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    // minimal generators of the leading ideal
    let mut minimal: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| {
        order.cmp(
            weights,
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    for g in basis.into_iter() {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|k| k.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    // tail-reduce until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = normal_form(&minimal[i], &others, order).monic();
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| {
        order.cmp(
            weights,
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    minimal
}

/// FNV-1a over a canonical encoding; stable across runs so reports that
/// mention it are reproducible.
fn fingerprint_gens(ring: &GradedRing, order: &MonomialOrder, gens: &[Polynomial]) -> u64 {
    let mut strings: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    strings.sort();
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(ring.field().modulus().to_string().as_bytes());
    for (v, w) in ring.vars().iter().zip(ring.weights()) {
        eat(v.as_bytes());
        eat(&w.to_le_bytes());
    }
    eat(order.label().as_bytes());
    for s in &strings {
        eat(s.as_bytes());
        eat(b";");
    }
    h
}
