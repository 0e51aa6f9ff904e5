//! The j-multiplicity engine.
//!
//! The central computation is the length formula: for general elements
//! `a_1, ..., a_d` of `I` (with `d` the dimension of the ambient
//! quotient), the j-multiplicity of `I` equals the length of
//! `M / ((a_1..a_{d-1})M : I^∞) + a_d M`. "General" is an open-dense
//! condition this code can only sample, so every report carries its
//! seeds, per-sample outcomes, and an agreement verdict; a value is
//! reported only when the agreement policy is satisfied. The
//! definitional oracle recomputes the invariant from the limit
//! definition (lengths of the finite-length parts of `I^n M / I^{n+1} M`
//! with a finite-difference table) and is the honesty anchor the other
//! paths are tested against.

use serde::Serialize;
use thiserror::Error;

use crate::ideal::{Ideal, IdealError, QuotientPresentation};
use crate::invariants::{
    analytic_spread, dimension, dimension_of_quotient, hilbert_data, length, multiplicity,
    InvariantError, Length,
};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial};
use crate::rng::CoeffStream;

/// Search cap for the common sampling degree of mixed-degree ideals.
pub const DEGREE_SEARCH_CAP: u64 = 512;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("the ideal must be w-homogeneous")]
    Inhomogeneous,
    #[error("the ideal must be nonzero and proper in the quotient ring")]
    ImproperIdeal,
    #[error("the quotient must have positive dimension")]
    ZeroDimensionalModule,
    #[error("no admissible sampling degree below {cap}")]
    NoAdmissibleDegree { cap: u64 },
    #[error("generators must share a single degree")]
    MixedGeneratorDegrees,
    #[error("operation requires the standard grading")]
    NotStandardGraded,
    #[error("height precondition failed: colon ideal has dimension {dimension}, needs <= {allowed}")]
    HeightCheckFailed { dimension: usize, allowed: usize },
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("expected {expected} elements, got {got}")]
    WrongElementCount { expected: usize, got: usize },
    #[error("element does not lie in the ideal")]
    NotInIdeal,
    #[error("exponents must have gcd 1")]
    GcdNotOne,
    #[error("internal Hilbert series division left a remainder")]
    SeriesDivision,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

// ---------------------------------------------------------------------
// general-element sampling
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleStrategy {
    /// `a = sum c_i g_i` with nonzero scalars; valid when all generators
    /// share one degree.
    EquigeneratedScalar,
    /// `a = sum h_i g_i` with random w-homogeneous multipliers of degree
    /// `D - deg g_i`; the smallest admissible common degree D is chosen.
    WeightedDegree,
}

/// Seeded random homogeneous elements of an ideal.
#[derive(Debug, Clone)]
pub struct GeneralElementSample {
    pub seed: u64,
    pub elements: Vec<Polynomial>,
    pub strategy: SampleStrategy,
    pub target_degree: Option<u64>,
}

/// Draw `count` general elements of `I` (taken modulo the quotient's
/// defining ideal). Deterministic per seed: coefficients come from the
/// splitmix64 stream, consumed generator-by-generator with the monomials
/// of each multiplier enumerated in decreasing grevlex order.
pub fn sample_general_elements(
    q: &QuotientPresentation,
    ideal: &Ideal,
    count: usize,
    seed: u64,
) -> Result<GeneralElementSample, EngineError> {
    let ring = q.ring();
    if !ideal.is_homogeneous() {
        return Err(EngineError::Inhomogeneous);
    }
    let gens: Vec<&Polynomial> = ideal.generators().iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() || q.defining_ideal().sum(ideal)?.is_unit()? {
        return Err(EngineError::ImproperIdeal);
    }
    let degrees: Vec<u64> = gens
        .iter()
        .map(|g| g.homogeneous_degree().expect("homogeneous nonzero"))
        .collect();
    let equigenerated = degrees.windows(2).all(|w| w[0] == w[1]);
    let mut stream = CoeffStream::new(seed, ring.field().modulus());
    let mut elements = Vec::with_capacity(count);
    let mut target_degree = None;

    if equigenerated {
        for _ in 0..count {
            let mut acc = Polynomial::zero(ring);
            for g in &gens {
                acc = acc.add(&g.scale(stream.next_nonzero())).expect("same ring");
            }
            elements.push(acc);
        }
    } else {
        let max_deg = *degrees.iter().max().unwrap();
        let weights = ring.weights();
        let admissible = |cand: u64| {
            degrees
                .iter()
                .all(|&d| cand == d || semigroup_contains(cand - d, weights))
        };
        let degree = (max_deg..=max_deg + DEGREE_SEARCH_CAP)
            .find(|&cand| admissible(cand))
            .ok_or(EngineError::NoAdmissibleDegree {
                cap: max_deg + DEGREE_SEARCH_CAP,
            })?;
        target_degree = Some(degree);
        for _ in 0..count {
            let mut acc = Polynomial::zero(ring);
            for (g, &d) in gens.iter().zip(&degrees) {
                let h = if degree == d {
                    Polynomial::constant(ring, stream.next_nonzero())
                } else {
                    let monos = monomials_of_weighted_degree(ring, degree - d);
                    debug_assert!(!monos.is_empty());
                    let pairs: Vec<(Monomial, u64)> = monos
                        .into_iter()
                        .map(|m| (m, stream.next_nonzero()))
                        .collect();
                    Polynomial::from_terms(ring, MonomialOrder::GrevLex, pairs)
                };
                acc = acc.add(&h.mul(g).expect("same ring")).expect("same ring");
            }
            elements.push(acc);
        }
    }

    debug_assert!(elements
        .iter()
        .all(|a| a.is_zero() || a.homogeneous_degree().is_some()));
    Ok(GeneralElementSample {
        seed,
        elements,
        strategy: if equigenerated {
            SampleStrategy::EquigeneratedScalar
        } else {
            SampleStrategy::WeightedDegree
        },
        target_degree,
    })
}

/// Membership in the numerical semigroup generated by the weights.
fn semigroup_contains(x: u64, weights: &[u64]) -> bool {
    if x == 0 {
        return true;
    }
    let x = x as usize;
    let mut reachable = vec![false; x + 1];
    reachable[0] = true;
    for i in 1..=x {
        for &w in weights {
            let w = w as usize;
            if w <= i && reachable[i - w] {
                reachable[i] = true;
                break;
            }
        }
    }
    reachable[x]
}

/// All monomials of the given weighted degree, in decreasing grevlex
/// order (the enumeration order is part of the reproducibility contract).
pub fn monomials_of_weighted_degree(ring: &GradedRing, degree: u64) -> Vec<Monomial> {
    let n = ring.num_vars();
    let weights = ring.weights();
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fn recurse(
        var: usize,
        remaining: u64,
        exps: &mut Vec<u16>,
        weights: &[u64],
        out: &mut Vec<Monomial>,
    ) {
        if var + 1 == weights.len() {
            if remaining % weights[var] == 0 {
                let e = remaining / weights[var];
                if e <= u16::MAX as u64 {
                    exps[var] = e as u16;
                    out.push(Monomial::new(exps.clone(), weights));
                    exps[var] = 0;
                }
            }
            return;
        }
        let max = remaining / weights[var];
        for e in 0..=max {
            exps[var] = e as u16;
            recurse(var + 1, remaining - e * weights[var], exps, weights, out);
        }
        exps[var] = 0;
    }
    recurse(0, degree, &mut exps, weights, &mut out);
    let order = MonomialOrder::GrevLex;
    out.sort_by(|a, b| order.cmp(weights, b, a));
    out
}

// ---------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JValue {
    Finite(u64),
    Undetermined,
}

impl Serialize for JValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            JValue::Finite(v) => s.serialize_u64(*v),
            JValue::Undetermined => s.serialize_str("undetermined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JMethod {
    LengthFormula,
    Cor3a,
    Cor3bVariant,
    Reduction,
    ResidualMultiplicity,
    DefinitionalOracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub seed: u64,
    /// None marks a non-general sample (infinite length encountered).
    pub value: Option<u64>,
    /// The colon/saturation came out as the unit ideal: the module
    /// collapsed and the sample contributes 0.
    pub unit_colon: bool,
    pub saturation_exponent: Option<u32>,
    /// Generator counts of the intermediate ideals, as built.
    pub intermediate_sizes: Vec<usize>,
}

/// How per-seed sample values are folded into one reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgreementMode {
    /// Require at least `min_finite` finite samples, all with the same
    /// value. The default.
    Unanimous,
    /// Report the minimal finite value; a documented heuristic for
    /// exploration, flagged by `agreement: false` when samples differ.
    MinimumFinite,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AgreementPolicy {
    pub mode: AgreementMode,
    pub min_finite: usize,
}

impl Default for AgreementPolicy {
    fn default() -> Self {
        AgreementPolicy {
            mode: AgreementMode::Unanimous,
            min_finite: 3,
        }
    }
}

impl AgreementPolicy {
    pub fn minimum() -> Self {
        AgreementPolicy {
            mode: AgreementMode::MinimumFinite,
            min_finite: 1,
        }
    }

    fn aggregate(&self, samples: &[SampleRecord]) -> (JValue, bool) {
        let finite: Vec<u64> = samples.iter().filter_map(|s| s.value).collect();
        let unanimous = finite.windows(2).all(|w| w[0] == w[1]);
        match self.mode {
            AgreementMode::Unanimous => {
                if finite.len() >= self.min_finite && unanimous {
                    (JValue::Finite(finite[0]), true)
                } else {
                    (JValue::Undetermined, false)
                }
            }
            AgreementMode::MinimumFinite => match finite.iter().min() {
                Some(&v) => (JValue::Finite(v), unanimous && finite.len() >= self.min_finite),
                None => (JValue::Undetermined, false),
            },
        }
    }
}

/// The computed j-multiplicity with its provenance.
#[derive(Debug, Clone, Serialize)]
pub struct JReport {
    pub value: JValue,
    pub method: JMethod,
    pub samples: Vec<SampleRecord>,
    pub agreement: bool,
    pub d: usize,
    pub analytic_spread: usize,
    pub hypotheses_assumed: Vec<String>,
    pub warnings: Vec<String>,
}

impl JReport {
    fn build(
        method: JMethod,
        samples: Vec<SampleRecord>,
        policy: &AgreementPolicy,
        d: usize,
        spread: usize,
        hypotheses_assumed: Vec<String>,
        mut warnings: Vec<String>,
    ) -> JReport {
        let (value, agreement) = policy.aggregate(&samples);
        // Nonvanishing criterion: jm > 0 iff the analytic spread is d.
        if let JValue::Finite(v) = value {
            let expected_positive = spread == d;
            if (v > 0) != expected_positive {
                warnings.push(format!(
                    "nonvanishing criterion violated: value {v} with analytic spread {spread} and d {d}"
                ));
            }
        }
        JReport {
            value,
            method,
            samples,
            agreement,
            d,
            analytic_spread: spread,
            hypotheses_assumed,
            warnings,
        }
    }

    pub fn finite_value(&self) -> Option<u64> {
        match self.value {
            JValue::Finite(v) => Some(v),
            JValue::Undetermined => None,
        }
    }
}

// ---------------------------------------------------------------------
// the length formula and its variants
// ---------------------------------------------------------------------

fn validate_input(q: &QuotientPresentation, ideal: &Ideal) -> Result<usize, EngineError> {
    if !ideal.is_homogeneous() {
        return Err(EngineError::Inhomogeneous);
    }
    if ideal.is_zero_ideal() || q.defining_ideal().sum(ideal)?.is_unit()? {
        return Err(EngineError::ImproperIdeal);
    }
    let d = dimension_of_quotient(q)?;
    if d == 0 {
        return Err(EngineError::ZeroDimensionalModule);
    }
    Ok(d)
}

/// The length formula: per seed, draw `a_1..a_d` in `I`, saturate
/// `J + (a_1..a_{d-1})` by `I`, and measure the length of the quotient
/// by the result plus `a_d`. A unit saturation contributes 0; an
/// infinite length marks the sample non-general.
pub fn j_length_formula(
    q: &QuotientPresentation,
    ideal: &Ideal,
    seeds: &[u64],
    policy: &AgreementPolicy,
) -> Result<JReport, EngineError> {
    j_formula_impl(q, ideal, seeds, policy, true)
}

/// The colon variant: identical to the length formula with a single
/// colon in place of the saturation. Valid under the residual
/// hypotheses, which are assumed, not verified.
pub fn j_cor3b_variant(
    q: &QuotientPresentation,
    ideal: &Ideal,
    seeds: &[u64],
    policy: &AgreementPolicy,
) -> Result<JReport, EngineError> {
    j_formula_impl(q, ideal, seeds, policy, false)
}

fn j_formula_impl(
    q: &QuotientPresentation,
    ideal: &Ideal,
    seeds: &[u64],
    policy: &AgreementPolicy,
    saturating: bool,
) -> Result<JReport, EngineError> {
    let d = validate_input(q, ideal)?;
    let spread = analytic_spread(q, ideal)?;
    let defining = q.defining_ideal();
    let mut samples = Vec::with_capacity(seeds.len());
    let mut warnings = Vec::new();
    let mut hypotheses = Vec::new();
    if !saturating {
        hypotheses.push("G_d".to_string());
        hypotheses.push("weakly (d-2)-residually S_2".to_string());
    }
    if ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.homogeneous_degree())
        .collect::<std::collections::HashSet<_>>()
        .len()
        > 1
    {
        warnings.push(
            "mixed generator degrees: degree-D sampling is experimental, cross-check with the oracle"
                .to_string(),
        );
    }

    for &seed in seeds {
        let sample = sample_general_elements(q, ideal, d, seed)?;
        let head = &sample.elements[..d - 1];
        let last = &sample.elements[d - 1];
        let base = defining.sum(&Ideal::new(q.ring(), head.to_vec()))?;
        let mut sizes = vec![base.num_generators()];
        let (stable, exponent) = if saturating {
            let (s, k) = base.saturate(ideal)?;
            (s, Some(k))
        } else {
            (base.colon_ideal(ideal)?, None)
        };
        sizes.push(stable.num_generators());
        if stable.is_unit()? {
            samples.push(SampleRecord {
                seed,
                value: Some(0),
                unit_colon: true,
                saturation_exponent: exponent,
                intermediate_sizes: sizes,
            });
            continue;
        }
        let total = stable.sum(&Ideal::principal(last))?;
        sizes.push(total.num_generators());
        let value = match length(&total)? {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        };
        samples.push(SampleRecord {
            seed,
            value,
            unit_colon: false,
            saturation_exponent: exponent,
            intermediate_sizes: sizes,
        });
    }
    if samples.iter().all(|s| s.value.is_none()) {
        return Err(EngineError::HypothesesViolated(
            "all samples were non-general".to_string(),
        ));
    }
    Ok(JReport::build(
        if saturating {
            JMethod::LengthFormula
        } else {
            JMethod::Cor3bVariant
        },
        samples,
        policy,
        d,
        spread,
        hypotheses,
        warnings,
    ))
}

/// The equigenerated graded formula: for `J` generated in one degree `r`
/// in a standard-graded polynomial ring `S` of dimension `d`, the
/// j-multiplicity is `r * e(S / ((f_1..f_{d-1}) : J))` for general
/// degree-r elements `f_i`. The hypotheses (analytic spread d, G_d) are
/// caller assertions, recorded in the report.
pub fn j_cor3a(
    ring: &GradedRing,
    j_ideal: &Ideal,
    r: u64,
    seeds: &[u64],
    policy: &AgreementPolicy,
) -> Result<JReport, EngineError> {
    if !ring.is_standard_graded() {
        return Err(EngineError::NotStandardGraded);
    }
    let q = QuotientPresentation::full(ring);
    let d = validate_input(&q, j_ideal)?;
    for g in j_ideal.generators() {
        if g.homogeneous_degree() != Some(r) {
            return Err(EngineError::MixedGeneratorDegrees);
        }
    }
    let spread = analytic_spread(&q, j_ideal)?;
    let mut samples = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let sample = sample_general_elements(&q, j_ideal, d - 1, seed)?;
        let head = Ideal::new(ring, sample.elements.clone());
        let colon = if head.is_zero_ideal() {
            Ideal::zero(ring)
        } else {
            head.colon_ideal(j_ideal)?
        };
        let sizes = vec![head.num_generators(), colon.num_generators()];
        // general choices make S/colon Cohen-Macaulay of dimension <= 1;
        // anything bigger marks a non-general sample
        let colon_dim = dimension(&colon)?;
        let value = match colon_dim {
            Some(dim) if dim > 1 => None,
            _ => Some(r * multiplicity(&colon)?),
        };
        samples.push(SampleRecord {
            seed,
            value,
            unit_colon: colon_dim.is_none(),
            saturation_exponent: None,
            intermediate_sizes: sizes,
        });
    }
    Ok(JReport::build(
        JMethod::Cor3a,
        samples,
        policy,
        d,
        spread,
        vec!["analytic spread = d".into(), "G_d".into()],
        Vec::new(),
    ))
}

/// The reduction formula: for an explicit `d`-generated reduction
/// `J = (b_1..b_{d-1}, b_d)`, the j-multiplicity is the length of
/// `S / ((b_1..b_{d-1}) : J) + J`. Deterministic, no sampling.
pub fn j_reduction(
    ring: &GradedRing,
    j_ideal: &Ideal,
    b: &[Polynomial],
    b_last: &Polynomial,
) -> Result<JReport, EngineError> {
    let q = QuotientPresentation::full(ring);
    let d = validate_input(&q, j_ideal)?;
    let mut warnings = Vec::new();
    if b.len() + 1 != d {
        warnings.push(format!(
            "reduction uses {} elements plus one, but the ring dimension is {d}",
            b.len()
        ));
    }
    let jb = j_ideal.grevlex_basis()?;
    for f in b.iter().chain(std::iter::once(b_last)) {
        if !f.is_homogeneous() {
            return Err(EngineError::Inhomogeneous);
        }
        if !jb.contains(f) {
            return Err(EngineError::NotInIdeal);
        }
    }
    let head = Ideal::new(ring, b.to_vec());
    let full = head.sum(&Ideal::principal(b_last))?;
    if !full.equals(j_ideal)? {
        warnings.push("the given elements do not generate the ideal".to_string());
    }
    let colon = if head.is_zero_ideal() {
        Ideal::zero(ring)
    } else {
        head.colon_ideal(j_ideal)?
    };
    let check = colon.sum(j_ideal)?;
    let value = match length(&check)? {
        Length::Finite(v) => v,
        Length::Infinite => {
            return Err(EngineError::HypothesesViolated(
                "(b : J) + J is not primary to the irrelevant ideal".to_string(),
            ))
        }
    };
    let spread = analytic_spread(&q, j_ideal)?;
    let samples = vec![SampleRecord {
        seed: 0,
        value: Some(value),
        unit_colon: check.is_unit()?,
        saturation_exponent: None,
        intermediate_sizes: vec![head.num_generators(), colon.num_generators(), check.num_generators()],
    }];
    Ok(JReport::build(
        JMethod::Reduction,
        samples,
        &AgreementPolicy {
            mode: AgreementMode::Unanimous,
            min_finite: 1,
        },
        d,
        spread,
        vec!["J is a reduction; generic complete intersection hypotheses".into()],
        warnings,
    ))
}

/// Residual multiplicity with an explicit subideal: `r * e(S/(b : J))`,
/// with the height precondition on the colon checked. The working
/// dimension is `d = len(b) + 1`; a mismatch with the ring dimension is
/// reported as a warning, not an error, so partial-dimension variants
/// stay expressible.
pub fn j_residual_multiplicity(
    ring: &GradedRing,
    j_ideal: &Ideal,
    b: &[Polynomial],
) -> Result<JReport, EngineError> {
    if !ring.is_standard_graded() {
        return Err(EngineError::NotStandardGraded);
    }
    let q = QuotientPresentation::full(ring);
    let ring_dim = validate_input(&q, j_ideal)?;
    if b.is_empty() {
        return Err(EngineError::WrongElementCount {
            expected: ring_dim - 1,
            got: 0,
        });
    }
    let d = b.len() + 1;
    let mut warnings = Vec::new();
    if d != ring_dim {
        warnings.push(format!(
            "residual data has {} elements (d = {d}), but the ring dimension is {ring_dim}",
            b.len()
        ));
    }
    let mut r = None;
    let jb = j_ideal.grevlex_basis()?;
    for f in b {
        let deg = f.homogeneous_degree().ok_or(EngineError::Inhomogeneous)?;
        match r {
            None => r = Some(deg),
            Some(r0) if r0 != deg => return Err(EngineError::MixedGeneratorDegrees),
            _ => {}
        }
        if !jb.contains(f) {
            return Err(EngineError::NotInIdeal);
        }
    }
    let r = r.expect("nonempty b");
    let head = Ideal::new(ring, b.to_vec());
    let colon = head.colon_ideal(j_ideal)?;
    // height(b : J) >= d - 1 means dim S/(b : J) <= n - (d - 1)
    let allowed = ring.num_vars() - (d - 1);
    if let Some(dim) = dimension(&colon)? {
        if dim > allowed {
            return Err(EngineError::HeightCheckFailed {
                dimension: dim,
                allowed,
            });
        }
    }
    let value = r * multiplicity(&colon)?;
    let spread = analytic_spread(&q, j_ideal)?;
    let samples = vec![SampleRecord {
        seed: 0,
        value: Some(value),
        unit_colon: colon.is_unit()?,
        saturation_exponent: None,
        intermediate_sizes: vec![head.num_generators(), colon.num_generators()],
    }];
    Ok(JReport::build(
        JMethod::ResidualMultiplicity,
        samples,
        &AgreementPolicy {
            mode: AgreementMode::Unanimous,
            min_finite: 1,
        },
        d,
        spread,
        vec!["projective Cohen-Macaulay and residual hypotheses".into()],
        warnings,
    ))
}

// ---------------------------------------------------------------------
// the definitional oracle
// ---------------------------------------------------------------------

/// Per-n lengths of `W_n = H^0_m(I^n M / I^{n+1} M)` with the
/// finite-difference table.
#[derive(Debug, Clone, Serialize)]
pub struct DefinitionalTrace {
    pub lengths: Vec<u64>,
    /// differences[k] is the k-th finite difference row (k = 0 is the
    /// lengths themselves, as signed integers).
    pub differences: Vec<Vec<i64>>,
    /// The stabilized (d-1)-th difference, when the last two entries of
    /// that row agree; None means "not stabilized", which is a result,
    /// not an error.
    pub stabilized: Option<u64>,
    pub d: usize,
}

/// The definition, truncated: compute `ℓ(W_n)` for `n <= n_max` where
/// `W_n = ((I^{n+1}M :_M m^∞) ∩ I^nM) / I^{n+1}M` and `m` is the
/// irrelevant ideal, then difference the table `d - 1` times.
///
/// Each length is obtained as a degreewise difference of Hilbert
/// functions; the intersection's Hilbert function comes from the exact
/// sequence relating it to the sum, so no extra elimination is needed.
pub fn j_definitional_oracle(
    q: &QuotientPresentation,
    ideal: &Ideal,
    n_max: u32,
) -> Result<DefinitionalTrace, EngineError> {
    let d = validate_input(q, ideal)?;
    let ring = q.ring();
    let defining = q.defining_ideal();
    let denominator = denominator_poly(ring.weights());

    let mut lengths: Vec<u64> = Vec::with_capacity(n_max as usize + 1);
    let mut pow = Ideal::unit(ring); // I^0
    let mut p_n = pow.sum(defining)?.reduced()?; // I^0 + J = (1)
    for _ in 0..=n_max {
        let pow_next = pow.product(ideal)?.reduced()?;
        let p_next = pow_next.sum(defining)?.reduced()?;
        let sat = if dimension(&p_next)?.is_none_or(|dim| dim == 0) {
            // m-primary (or unit): the saturation is everything
            Ideal::unit(ring)
        } else {
            p_next.saturate_irrelevant()?
        };
        // ℓ(W_n) where W_n = (sat ∩ P_n)/P_{n+1}:
        //   HS(S/(sat ∩ P_n)) = HS(S/sat) + HS(S/P_n) - HS(S/(sat + P_n))
        let n_next = hilbert_data(&p_next)?.numerator;
        let n_sat = hilbert_data(&sat)?.numerator;
        let n_pn = hilbert_data(&p_n)?.numerator;
        let n_sum = hilbert_data(&sat.sum(&p_n)?)?.numerator;
        let mut delta = vec![
            0i64;
            [n_next.len(), n_sat.len(), n_pn.len(), n_sum.len()]
                .into_iter()
                .max()
                .unwrap()
        ];
        for (i, &c) in n_next.iter().enumerate() {
            delta[i] += c;
        }
        for (i, &c) in n_sat.iter().enumerate() {
            delta[i] -= c;
        }
        for (i, &c) in n_pn.iter().enumerate() {
            delta[i] -= c;
        }
        for (i, &c) in n_sum.iter().enumerate() {
            delta[i] += c;
        }
        let w = exact_poly_div(&delta, &denominator).ok_or(EngineError::SeriesDivision)?;
        let mut total = 0u64;
        for c in w {
            if c < 0 {
                return Err(EngineError::SeriesDivision);
            }
            total += c as u64;
        }
        lengths.push(total);
        pow = pow_next;
        p_n = p_next;
    }

    let mut differences: Vec<Vec<i64>> = Vec::with_capacity(d);
    differences.push(lengths.iter().map(|&v| v as i64).collect());
    for _ in 1..d {
        let prev = differences.last().unwrap();
        if prev.len() < 2 {
            break;
        }
        let next: Vec<i64> = prev.windows(2).map(|w| w[1] - w[0]).collect();
        differences.push(next);
    }
    let stabilized = differences
        .get(d - 1)
        .and_then(|row| {
            if row.len() >= 2 && row[row.len() - 1] == row[row.len() - 2] && row[row.len() - 1] >= 0
            {
                Some(row[row.len() - 1] as u64)
            } else {
                None
            }
        });
    Ok(DefinitionalTrace {
        lengths,
        differences,
        stabilized,
        d,
    })
}

/// Wrap an oracle run as a JReport (used by the CLI's oracle method).
pub fn oracle_report(
    q: &QuotientPresentation,
    ideal: &Ideal,
    trace: &DefinitionalTrace,
) -> Result<JReport, EngineError> {
    let spread = analytic_spread(q, ideal)?;
    let samples = vec![SampleRecord {
        seed: 0,
        value: trace.stabilized,
        unit_colon: false,
        saturation_exponent: None,
        intermediate_sizes: trace.lengths.iter().map(|&v| v as usize).collect(),
    }];
    Ok(JReport::build(
        JMethod::DefinitionalOracle,
        samples,
        &AgreementPolicy {
            mode: AgreementMode::Unanimous,
            min_finite: 1,
        },
        trace.d,
        spread,
        Vec::new(),
        if trace.stabilized.is_none() {
            vec!["difference table not stabilized; increase the truncation".into()]
        } else {
            Vec::new()
        },
    ))
}

fn denominator_poly(weights: &[u64]) -> Vec<i64> {
    let mut acc = vec![1i64];
    for &w in weights {
        let mut factor = vec![0i64; w as usize + 1];
        factor[0] = 1;
        factor[w as usize] = -1;
        let mut out = vec![0i64; acc.len() + factor.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out;
    }
    acc
}

/// Exact division of integer polynomials; None when a remainder is left.
fn exact_poly_div(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let mut num: Vec<i64> = num.to_vec();
    while num.last() == Some(&0) {
        num.pop();
    }
    let mut den: Vec<i64> = den.to_vec();
    while den.last() == Some(&0) {
        den.pop();
    }
    if den.is_empty() {
        return None;
    }
    if num.is_empty() {
        return Some(Vec::new());
    }
    if num.len() < den.len() {
        return None;
    }
    let dlead = *den.last().unwrap();
    let mut quo = vec![0i64; num.len() - den.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = num[k + den.len() - 1];
        if c % dlead != 0 {
            return None;
        }
        let q = c / dlead;
        quo[k] = q;
        if q != 0 {
            for (j, &b) in den.iter().enumerate() {
                num[k + j] -= q * b;
            }
        }
    }
    if num.iter().any(|&c| c != 0) {
        return None;
    }
    Some(quo)
}

// ---------------------------------------------------------------------
// method selection
// ---------------------------------------------------------------------

/// Configuration for [`j_auto`].
#[derive(Debug, Clone, Copy)]
pub struct AutoOptions {
    /// Run the definitional oracle as a cross-check when the ring has at
    /// most this many variables.
    pub oracle_var_cap: usize,
    /// Truncation of the oracle's difference table.
    pub n_max: u32,
}

impl Default for AutoOptions {
    fn default() -> Self {
        AutoOptions {
            oracle_var_cap: 4,
            n_max: 6,
        }
    }
}

/// Automatic method selection: the equigenerated graded formula when it
/// applies (single generator degree, standard grading, polynomial ring),
/// otherwise the length formula; the definitional oracle runs
/// additionally on small rings as a cheap cross-check and arbitrates.
///
/// Mixed-degree sampling is experimental (the degree-D subfamily need
/// not be general in the sense the length formula requires), so a
/// formula value is accepted only when the oracle concurs; on conflict
/// the oracle's stabilized value is reported, with the disagreement
/// recorded in the warnings.
pub fn j_auto(
    q: &QuotientPresentation,
    ideal: &Ideal,
    seeds: &[u64],
    policy: &AgreementPolicy,
    opts: &AutoOptions,
) -> Result<JReport, EngineError> {
    let ring = q.ring();
    let degrees: Vec<Option<u64>> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.homogeneous_degree())
        .collect();
    if degrees.iter().any(|d| d.is_none()) {
        return Err(EngineError::Inhomogeneous);
    }
    let equigenerated = degrees.windows(2).all(|w| w[0] == w[1]);
    let primary = if equigenerated
        && ring.is_standard_graded()
        && q.defining_ideal().is_zero_ideal()
    {
        let r = degrees.first().and_then(|d| *d).unwrap_or(1);
        j_cor3a(ring, ideal, r, seeds, policy)
    } else {
        j_length_formula(q, ideal, seeds, policy)
    };
    let oracle = if ring.num_vars() <= opts.oracle_var_cap {
        Some(j_definitional_oracle(q, ideal, opts.n_max)?)
    } else {
        None
    };

    match (primary, oracle) {
        (Ok(rep), None) => Ok(rep),
        (Ok(mut rep), Some(trace)) => match (rep.finite_value(), trace.stabilized) {
            (Some(v), Some(o)) if v == o => Ok(rep),
            (_, Some(o)) => {
                let mut out = oracle_report(q, ideal, &trace)?;
                out.warnings.push(match rep.finite_value() {
                    Some(v) => format!(
                        "sampling formula returned {v}, overruled by the definitional oracle ({o})"
                    ),
                    None => "sampling formula was undetermined; using the definitional oracle".into(),
                });
                out.samples.extend(rep.samples);
                Ok(out)
            }
            (Some(_), None) => {
                if equigenerated {
                    rep.warnings
                        .push("definitional oracle did not stabilize at this truncation".into());
                    Ok(rep)
                } else {
                    rep.warnings.push(
                        "mixed-degree sampling without oracle confirmation: result withheld".into(),
                    );
                    rep.value = JValue::Undetermined;
                    rep.agreement = false;
                    Ok(rep)
                }
            }
            (None, None) => Ok(rep),
        },
        (Err(e), Some(trace)) if trace.stabilized.is_some() => {
            let mut out = oracle_report(q, ideal, &trace)?;
            out.warnings
                .push(format!("sampling formula failed ({e}); using the definitional oracle"));
            Ok(out)
        }
        (Err(e), _) => Err(e),
    }
}

// ---------------------------------------------------------------------
// monomial curves
// ---------------------------------------------------------------------

/// The toric prime of the monomial curve `(t^k, t^l, t^m)`: the kernel
/// of `x -> t^k, y -> t^l, z -> t^m`, computed by elimination, in the
/// ring with weights `(k, l, m)`. The result is w-homogeneous and
/// contains no variable.
pub fn monomial_curve_ideal(
    k: u64,
    l: u64,
    m: u64,
    field: crate::field::PrimeField,
) -> Result<(GradedRing, Ideal), EngineError> {
    if gcd(gcd(k, l), m) != 1 {
        return Err(EngineError::GcdNotOne);
    }
    let big = GradedRing::weighted(&["x", "y", "z", "t"], &[k, l, m, 1], field)
        .expect("valid ring");
    let t = Polynomial::variable(&big, 3);
    let mut gens = Vec::with_capacity(3);
    for (idx, &e) in [k, l, m].iter().enumerate() {
        let mut tp = Polynomial::one(&big);
        for _ in 0..e {
            tp = tp.mul(&t).expect("same ring");
        }
        gens.push(
            Polynomial::variable(&big, idx)
                .sub(&tp)
                .expect("same ring"),
        );
    }
    let eliminated = Ideal::new(&big, gens).eliminate(&[3])?;
    let target = GradedRing::weighted(&["x", "y", "z"], &[k, l, m], field).expect("valid ring");
    let projected: Vec<Polynomial> = eliminated
        .generators()
        .iter()
        .map(|g| {
            let pairs: Vec<(Monomial, u64)> = g
                .terms()
                .iter()
                .map(|(mono, c)| {
                    debug_assert_eq!(mono.exps()[3], 0);
                    (
                        Monomial::new(mono.exps()[..3].to_vec(), target.weights()),
                        *c,
                    )
                })
                .collect();
            Polynomial::from_terms(&target, MonomialOrder::GrevLex, pairs)
        })
        .collect();
    let curve = Ideal::new(&target, projected);
    Ok((target, curve))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
