//! Numerical invariants of graded quotients: Krull dimension, Hilbert
//! series, length, multiplicity, and analytic spread.
//!
//! Everything here reduces to combinatorics on the initial monomial
//! ideal of a reduced Groebner basis. A load-bearing fact used
//! throughout: in a positively graded polynomial ring every graded
//! proper ideal sits inside the irrelevant maximal ideal, so the local
//! length of an Artinian graded quotient at the irrelevant ideal equals
//! its total vector-space dimension, counted by standard monomials.

use serde::Serialize;
use thiserror::Error;

use crate::ideal::{Ideal, IdealError, QuotientPresentation};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("operation requires a w-homogeneous ideal")]
    Inhomogeneous,
    #[error("multiplicity is only defined here for the standard grading")]
    WeightedMultiplicityUnsupported,
    #[error("ideal is not proper in the quotient ring")]
    ImproperIdeal,
    #[error("internal Hilbert series division left a remainder")]
    SeriesDivision,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Length of a graded module: finite count of standard monomials, or a
/// distinguished infinite outcome (dimension > 0). The infinite case is
/// a result, not an error: the sampling engine reads it as "non-general
/// sample, retry".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }
}

/// Krull dimension of `S/I`; `None` is the zero ring (unit ideal).
pub fn dimension(ideal: &Ideal) -> Result<Option<usize>, InvariantError> {
    let gb = ideal.grevlex_basis()?;
    if gb.is_unit_ideal() {
        return Ok(None);
    }
    let lms = gb.leading_monomials();
    Ok(Some(monomial_dimension(
        &lms,
        ideal.ring().num_vars(),
    )))
}

pub fn dimension_of_quotient(q: &QuotientPresentation) -> Result<usize, InvariantError> {
    // the defining ideal is proper by construction
    Ok(dimension(q.defining_ideal())?.expect("proper defining ideal"))
}

/// Maximal size of a set of variables independent modulo the monomial
/// ideal: no generator's support may be contained in the set.
fn monomial_dimension(gens: &[Monomial], n: usize) -> usize {
    assert!(n <= 24, "independent-set search limited to 24 variables");
    let supports: Vec<u32> = gens
        .iter()
        .map(|m| {
            let mut mask = 0u32;
            for i in m.support() {
                mask |= 1 << i;
            }
            mask
        })
        .collect();
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !mask != 0) {
            best = size;
        }
    }
    best
}

/// Hilbert series data of `S/I`: the series is
/// `numerator(t) / prod_i (1 - t^{w_i})`.
#[derive(Debug, Clone, Serialize)]
pub struct HilbertData {
    /// Coefficient of `t^k` at index `k`.
    pub numerator: Vec<i64>,
    /// Exponents of the denominator factors, one per ring variable.
    pub denominator_weights: Vec<u64>,
    /// Krull dimension of the quotient; `None` for the zero ring.
    pub dimension: Option<usize>,
    /// Multiplicity, standard grading only.
    pub multiplicity: Option<u64>,
}

/// Numerator of the Hilbert series of `S/I` for w-homogeneous `I`,
/// by pivot splitting on the initial monomial ideal.
pub fn hilbert_data(ideal: &Ideal) -> Result<HilbertData, InvariantError> {
    if !ideal.is_homogeneous() {
        return Err(InvariantError::Inhomogeneous);
    }
    let ring = ideal.ring();
    let gb = ideal.grevlex_basis()?;
    let lms = gb.leading_monomials();
    let weights = ring.weights();
    let mut memo = std::collections::HashMap::new();
    let numerator = monomial_numerator(lms.clone(), weights, &mut memo);
    let dim = if gb.is_unit_ideal() {
        None
    } else {
        Some(monomial_dimension(&lms, ring.num_vars()))
    };
    let multiplicity = if ring.is_standard_graded() {
        Some(multiplicity_from_numerator(
            &numerator,
            ring.num_vars(),
            dim,
        )?)
    } else {
        None
    };
    Ok(HilbertData {
        numerator,
        denominator_weights: weights.to_vec(),
        dimension: dim,
        multiplicity,
    })
}

/// Integer polynomials in one formal variable, dense, index = degree.
fn poly1_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn poly1_shift(a: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + k];
    for (i, &c) in a.iter().enumerate() {
        out[i + k] = c;
    }
    out
}

fn poly1_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn monomial_numerator(
    gens: Vec<Monomial>,
    weights: &[u64],
    memo: &mut std::collections::HashMap<Vec<Box<[u16]>>, Vec<i64>>,
) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new(); // zero ring: numerator 0
    }
    if gens.is_empty() {
        return vec![1];
    }
    let key: Vec<Box<[u16]>> = {
        let mut k: Vec<Box<[u16]>> = gens.iter().map(|m| m.exps().to_vec().into_boxed_slice()).collect();
        k.sort();
        k
    };
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }

    let n = weights.len();
    // occurrence counts per variable
    let mut count = vec![0usize; n];
    for g in &gens {
        for i in g.support() {
            count[i] += 1;
        }
    }
    let result = match count.iter().enumerate().max_by_key(|(_, &c)| c) {
        Some((v, &c)) if c >= 2 => {
            // pivot: v^e with e the minimal positive exponent of v
            let e = gens
                .iter()
                .map(|g| g.exps()[v])
                .filter(|&x| x > 0)
                .min()
                .unwrap();
            let pivot_deg = (e as u64 * weights[v]) as usize;
            // I + (v^e): v^e plus the generators not divisible by it
            let mut plus: Vec<Monomial> = gens
                .iter()
                .filter(|g| g.exps()[v] == 0)
                .cloned()
                .collect();
            let mut pexps = vec![0u16; n];
            pexps[v] = e;
            plus.push(Monomial::new(pexps, weights));
            // I : v^e
            let colon: Vec<Monomial> = gens
                .iter()
                .map(|g| {
                    let mut exps = g.exps().to_vec();
                    exps[v] = exps[v].saturating_sub(e);
                    Monomial::new(exps, weights)
                })
                .collect();
            let n_plus = monomial_numerator(plus, weights, memo);
            let n_colon = monomial_numerator(colon, weights, memo);
            poly1_add(&n_plus, &poly1_shift(&n_colon, pivot_deg))
        }
        _ => {
            // pairwise disjoint supports: a monomial regular sequence
            let mut acc = vec![1i64];
            for g in &gens {
                let d = g.weighted_degree() as usize;
                let mut factor = vec![0i64; d + 1];
                factor[0] = 1;
                factor[d] = -1;
                acc = poly1_mul(&acc, &factor);
            }
            acc
        }
    };
    memo.insert(key, result.clone());
    result
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.weighted_degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Vector-space dimension of `S/I` for Artinian quotients, by counting
/// standard monomials (monomials outside the initial ideal).
pub fn length(ideal: &Ideal) -> Result<Length, InvariantError> {
    let gb = ideal.grevlex_basis()?;
    if gb.is_unit_ideal() {
        return Ok(Length::Finite(0));
    }
    let n = ideal.ring().num_vars();
    let lms = minimalize(gb.leading_monomials());
    if monomial_dimension(&lms, n) > 0 {
        return Ok(Length::Infinite);
    }
    // Artinian: every variable has a pure power among the generators
    let mut bounds = vec![0u16; n];
    for m in &lms {
        let mut support = m.support();
        if let (Some(v), None) = (support.next(), support.next()) {
            let e = m.exps()[v];
            if bounds[v] == 0 || e < bounds[v] {
                bounds[v] = e;
            }
        }
    }
    debug_assert!(bounds.iter().all(|&b| b > 0));
    let mut count = 0u64;
    let mut exps = vec![0u16; n];
    loop {
        let covered = lms.iter().any(|m| {
            m.exps()
                .iter()
                .zip(&exps)
                .all(|(&a, &b)| a <= b)
        });
        if !covered {
            count += 1;
        }
        // odometer over the box of candidate standard monomials
        let mut i = 0;
        loop {
            if i == n {
                return Ok(Length::Finite(count));
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn length_of_quotient(q: &QuotientPresentation) -> Result<Length, InvariantError> {
    length(q.defining_ideal())
}

/// Multiplicity (with respect to the irrelevant ideal) of `S/I` in the
/// standard grading: the reduced Hilbert numerator evaluated at 1. The
/// zero ring gets multiplicity 0 by convention, so that unit-ideal
/// branches of the j-multiplicity engine report 0.
pub fn multiplicity(ideal: &Ideal) -> Result<u64, InvariantError> {
    if !ideal.ring().is_standard_graded() {
        return Err(InvariantError::WeightedMultiplicityUnsupported);
    }
    let data = hilbert_data(ideal)?;
    multiplicity_from_numerator(&data.numerator, ideal.ring().num_vars(), data.dimension)
}

fn multiplicity_from_numerator(
    numerator: &[i64],
    n: usize,
    dim: Option<usize>,
) -> Result<u64, InvariantError> {
    let Some(dim) = dim else {
        return Ok(0);
    };
    let codim = n - dim;
    let mut reduced = numerator.to_vec();
    for _ in 0..codim {
        reduced = divide_by_one_minus_t(&reduced).ok_or(InvariantError::SeriesDivision)?;
    }
    let e: i64 = reduced.iter().sum();
    debug_assert!(e > 0);
    let e = e as u64;
    if dim == 1 {
        // cross-check against the stabilized Hilbert function, computed
        // from the unreduced numerator by the binomial formula
        let probe = numerator.len() as i64 + 1;
        for j in [probe, probe + 1] {
            let hf = hilbert_function_value(numerator, n, j);
            if hf != e as i64 {
                return Err(InvariantError::SeriesDivision);
            }
        }
    }
    Ok(e)
}

/// Quotient of an integer polynomial by (1 - t); None when a remainder
/// is left (the partial sums must vanish eventually).
fn divide_by_one_minus_t(p: &[i64]) -> Option<Vec<i64>> {
    let mut acc = 0i64;
    let mut out = Vec::with_capacity(p.len());
    for &c in p {
        acc += c;
        out.push(acc);
    }
    if acc != 0 {
        return None;
    }
    out.pop(); // the top coefficient of the quotient is the final zero sum
    Some(trim(out))
}

/// Hilbert function of `S/I` at degree `j` in the standard grading:
/// `sum_i N_i * binom(n - 1 + j - i, n - 1)`.
fn hilbert_function_value(numerator: &[i64], n: usize, j: i64) -> i64 {
    let mut total = 0i64;
    for (i, &c) in numerator.iter().enumerate() {
        let d = j - i as i64;
        if d < 0 {
            continue;
        }
        total += c * binom(d + n as i64 - 1, n as i64 - 1);
    }
    total
}

fn binom(top: i64, k: i64) -> i64 {
    if k < 0 || top < k {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// Dimension of the fiber cone of `I` in `S/J`: the analytic spread.
///
/// For equigenerated `I` the fiber cone is the subalgebra generated by
/// the generators, presented by eliminating the ring variables from
/// `J + (T_i - g_i)`. In the mixed-degree case the Rees presentation is
/// computed first (eliminate the auxiliary `t` from `J + (T_i - t g_i)`)
/// and then specialized at the irrelevant ideal by setting the ring
/// variables to zero; going through the Rees ideal keeps the count
/// correct for generators of different degrees.
pub fn analytic_spread(
    q: &QuotientPresentation,
    ideal: &Ideal,
) -> Result<usize, InvariantError> {
    let ring = q.ring();
    if ideal.ring() != ring {
        return Err(InvariantError::Ideal(IdealError::RingMismatch));
    }
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    if gens.is_empty() {
        return Ok(0);
    }
    let total = q.defining_ideal().sum(ideal)?;
    if total.is_unit()? {
        return Err(InvariantError::ImproperIdeal);
    }
    let mut degrees = Vec::with_capacity(gens.len());
    for g in &gens {
        match g.homogeneous_degree() {
            Some(d) => degrees.push(d),
            None => return Err(InvariantError::Inhomogeneous),
        }
    }
    let n = ring.num_vars();
    let equigenerated = degrees.windows(2).all(|w| w[0] == w[1]);

    let tag_names: Vec<String> = (0..gens.len())
        .map(|i| format!("{}{}", tag_base(ring), i + 1))
        .collect();

    let fiber_gens: Vec<Polynomial>;
    let tag_ring: GradedRing;
    if equigenerated {
        // k[x, T], T_i -> g_i
        let mut vars: Vec<&str> = ring.vars().iter().map(|s| s.as_str()).collect();
        let mut weights = ring.weights().to_vec();
        for (name, &d) in tag_names.iter().zip(&degrees) {
            vars.push(name);
            weights.push(d);
        }
        let big = GradedRing::weighted(&vars, &weights, ring.field()).expect("valid ring");
        let id_map: Vec<usize> = (0..n).collect();
        let mut h: Vec<Polynomial> = q
            .defining_ideal()
            .generators()
            .iter()
            .map(|g| g.map_vars(&big, &id_map))
            .collect();
        for (i, g) in gens.iter().enumerate() {
            let tag = Polynomial::variable(&big, n + i);
            h.push(tag.sub(&g.map_vars(&big, &id_map)).expect("same ring"));
        }
        let front: Vec<usize> = (0..n).collect();
        let kernel = Ideal::new(&big, h).eliminate(&front)?;
        tag_ring = GradedRing::weighted(
            &tag_names.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &degrees,
            ring.field(),
        )
        .expect("valid ring");
        let shift_map: Vec<usize> = (0..big.num_vars())
            .map(|i| if i >= n { i - n } else { usize::MAX })
            .collect();
        fiber_gens = kernel
            .generators()
            .iter()
            .map(|g| {
                debug_assert!(g.avoids_vars(&front));
                project_vars(g, &tag_ring, &shift_map)
            })
            .collect();
    } else {
        // k[x, t, T], T_i -> t*g_i; eliminate t, then set x = 0
        let tname = ring.fresh_var_name("t");
        let mut vars: Vec<&str> = ring.vars().iter().map(|s| s.as_str()).collect();
        vars.push(&tname);
        let mut weights = ring.weights().to_vec();
        weights.push(1);
        for (name, &d) in tag_names.iter().zip(&degrees) {
            vars.push(name);
            weights.push(d + 1);
        }
        let big = GradedRing::weighted(&vars, &weights, ring.field()).expect("valid ring");
        let id_map: Vec<usize> = (0..n).collect();
        let t = Polynomial::variable(&big, n);
        let mut h: Vec<Polynomial> = q
            .defining_ideal()
            .generators()
            .iter()
            .map(|g| g.map_vars(&big, &id_map))
            .collect();
        for (i, g) in gens.iter().enumerate() {
            let tag = Polynomial::variable(&big, n + 1 + i);
            h.push(
                tag.sub(&t.mul(&g.map_vars(&big, &id_map)).expect("same ring"))
                    .expect("same ring"),
            );
        }
        let rees = Ideal::new(&big, h).eliminate(&[n])?;
        tag_ring = GradedRing::weighted(
            &tag_names.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &degrees.iter().map(|&d| d + 1).collect::<Vec<_>>(),
            ring.field(),
        )
        .expect("valid ring");
        let ring_vars: Vec<usize> = (0..n).collect();
        let shift_map: Vec<usize> = (0..big.num_vars())
            .map(|i| if i > n { i - n - 1 } else { usize::MAX })
            .collect();
        fiber_gens = rees
            .generators()
            .iter()
            .map(|g| g.set_vars_to_zero(&ring_vars))
            .filter(|g| !g.is_zero())
            .map(|g| {
                debug_assert!(g.avoids_vars(&ring_vars) && g.avoids_vars(&[n]));
                project_vars(&g, &tag_ring, &shift_map)
            })
            .collect();
    }
    let fiber = Ideal::new(&tag_ring, fiber_gens);
    Ok(dimension(&fiber)?.expect("fiber cone is never the zero ring"))
}

fn tag_base(ring: &GradedRing) -> String {
    // a tag prefix that cannot collide with user variables
    let mut base = "T".to_string();
    while ring.vars().iter().any(|v| v.starts_with(&base)) {
        base.push('T');
    }
    base
}

/// Remap variables by `map` (source index -> target index, usize::MAX
/// for variables that must not occur).
fn project_vars(g: &Polynomial, target: &GradedRing, map: &[usize]) -> Polynomial {
    let pairs: Vec<(Monomial, u64)> = g
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = vec![0u16; target.num_vars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    assert!(map[i] != usize::MAX, "unexpected variable in projection");
                    exps[map[i]] = e;
                }
            }
            (Monomial::new(exps, target.weights()), *c)
        })
        .collect();
    Polynomial::from_terms(target, MonomialOrder::GrevLex, pairs)
}
