//! Session state and command execution.
//!
//! A session holds named rings, ideals and quotient presentations plus
//! the run configuration. Executing a script yields one JSON object per
//! command (newline-delimited on stdout in the CLI) and a short human
//! summary line; engine errors are serialized with machine-readable
//! codes instead of aborting the whole run. Exit status is success only
//! when every command succeeded.

use std::collections::HashMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::field::{FieldError, PrimeField};
use crate::ideal::{minors2, set_degree_cap, Ideal, IdealError, QuotientPresentation};
use crate::invariants::{
    analytic_spread, dimension, dimension_of_quotient, hilbert_data, length, multiplicity,
    InvariantError, Length,
};
use crate::jmult::{
    j_auto, j_cor3a, j_cor3b_variant, j_definitional_oracle, j_length_formula, j_reduction,
    j_residual_multiplicity, oracle_report, AgreementPolicy, AutoOptions, EngineError, JReport,
};
use crate::parse::{parse_polynomial, ParseError};
use crate::poly::Polynomial;
use crate::ring::{GradedRing, RingError};
use crate::script::{parse_script, Command, CommandKind, IdealSource, MethodFlag, ScriptError};

#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub modulus: u64,
    pub seed: u64,
    pub samples: usize,
    pub n_max: u32,
    /// Report the minimal finite sample value instead of requiring
    /// unanimity.
    pub min_policy: bool,
    pub degree_cap: Option<u64>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            modulus: crate::field::DEFAULT_MODULUS,
            seed: 1,
            samples: 3,
            n_max: 6,
            min_policy: false,
            degree_cap: None,
        }
    }
}

impl SessionConfig {
    fn seeds(&self) -> Vec<u64> {
        (0..self.samples as u64).map(|k| self.seed + k).collect()
    }

    fn policy(&self) -> AgreementPolicy {
        if self.min_policy {
            AgreementPolicy::minimum()
        } else {
            AgreementPolicy::default()
        }
    }
}

/// Result of one executed command.
#[derive(Debug, Clone)]
pub struct CommandOutcome {
    pub json: Value,
    pub summary: String,
    pub ok: bool,
}

pub struct Session {
    field: PrimeField,
    config: SessionConfig,
    rings: HashMap<String, GradedRing>,
    ideals: HashMap<String, Ideal>,
    quotients: HashMap<String, QuotientPresentation>,
    current_ring: Option<String>,
}

#[derive(Debug)]
enum CmdError {
    UnknownName { kind: &'static str, name: String },
    DuplicateName { kind: &'static str, name: String },
    NoCurrentRing,
    WrongRing { name: String },
    MissingArgument { what: &'static str },
    Unsupported { msg: String },
    Field(FieldError),
    RingDef(RingError),
    Poly(ParseError),
    Ideal(IdealError),
    Invariant(InvariantError),
    Engine(EngineError),
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::UnknownName { kind, name } => write!(f, "unknown {kind} `{name}`"),
            CmdError::DuplicateName { kind, name } => write!(f, "{kind} `{name}` already bound"),
            CmdError::NoCurrentRing => write!(f, "no ring defined yet"),
            CmdError::WrongRing { name } => {
                write!(f, "`{name}` does not live in the expected ring")
            }
            CmdError::MissingArgument { what } => write!(f, "missing argument: {what}"),
            CmdError::Unsupported { msg } => write!(f, "{msg}"),
            CmdError::Field(e) => write!(f, "{e}"),
            CmdError::RingDef(e) => write!(f, "{e}"),
            CmdError::Poly(e) => write!(f, "{e}"),
            CmdError::Ideal(e) => write!(f, "{e}"),
            CmdError::Invariant(e) => write!(f, "{e}"),
            CmdError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<FieldError> for CmdError {
    fn from(e: FieldError) -> Self {
        CmdError::Field(e)
    }
}
impl From<RingError> for CmdError {
    fn from(e: RingError) -> Self {
        CmdError::RingDef(e)
    }
}
impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::Poly(e)
    }
}
impl From<IdealError> for CmdError {
    fn from(e: IdealError) -> Self {
        CmdError::Ideal(e)
    }
}
impl From<InvariantError> for CmdError {
    fn from(e: InvariantError) -> Self {
        CmdError::Invariant(e)
    }
}
impl From<EngineError> for CmdError {
    fn from(e: EngineError) -> Self {
        CmdError::Engine(e)
    }
}

fn error_code(e: &CmdError) -> &'static str {
    match e {
        CmdError::UnknownName { .. } => "E_UNKNOWN_NAME",
        CmdError::DuplicateName { .. } => "E_DUPLICATE_NAME",
        CmdError::NoCurrentRing => "E_NO_RING",
        CmdError::WrongRing { .. } => "E_RING_MISMATCH",
        CmdError::MissingArgument { .. } => "E_MISSING_ARGUMENT",
        CmdError::Unsupported { .. } => "E_UNSUPPORTED",
        CmdError::Field(_) => "E_FIELD",
        CmdError::RingDef(_) => "E_RING_DEF",
        CmdError::Poly(_) => "E_POLY_PARSE",
        CmdError::Ideal(IdealError::RingMismatch) => "E_RING_MISMATCH",
        CmdError::Ideal(IdealError::ColonByZero) => "E_COLON_ZERO",
        CmdError::Ideal(IdealError::SaturationDiverged { .. }) => "E_SATURATION_CAP",
        CmdError::Ideal(IdealError::UnitDefiningIdeal) => "E_UNIT_IDEAL",
        CmdError::Ideal(IdealError::Groebner(_)) => "E_DEGREE_CAP",
        CmdError::Ideal(IdealError::Poly(_)) => "E_POLY_ARITH",
        CmdError::Invariant(InvariantError::Inhomogeneous) => "E_INHOMOGENEOUS",
        CmdError::Invariant(InvariantError::WeightedMultiplicityUnsupported) => "E_WEIGHTED_MULT",
        CmdError::Invariant(InvariantError::ImproperIdeal) => "E_IMPROPER",
        CmdError::Invariant(InvariantError::SeriesDivision) => "E_SERIES",
        CmdError::Invariant(InvariantError::Ideal(_)) => "E_IDEAL",
        CmdError::Engine(EngineError::Inhomogeneous) => "E_INHOMOGENEOUS",
        CmdError::Engine(EngineError::ImproperIdeal) => "E_IMPROPER",
        CmdError::Engine(EngineError::ZeroDimensionalModule) => "E_ZERO_DIM",
        CmdError::Engine(EngineError::NoAdmissibleDegree { .. }) => "E_NO_DEGREE",
        CmdError::Engine(EngineError::MixedGeneratorDegrees) => "E_MIXED_DEGREES",
        CmdError::Engine(EngineError::NotStandardGraded) => "E_NOT_STANDARD",
        CmdError::Engine(EngineError::HeightCheckFailed { .. }) => "E_HEIGHT",
        CmdError::Engine(EngineError::HypothesesViolated(_)) => "E_HYPOTHESES",
        CmdError::Engine(EngineError::WrongElementCount { .. }) => "E_COUNT",
        CmdError::Engine(EngineError::NotInIdeal) => "E_NOT_IN_IDEAL",
        CmdError::Engine(EngineError::GcdNotOne) => "E_GCD",
        CmdError::Engine(EngineError::SeriesDivision) => "E_SERIES",
        CmdError::Engine(EngineError::Ideal(_)) => "E_IDEAL",
        CmdError::Engine(EngineError::Invariant(_)) => "E_INVARIANT",
    }
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Self, FieldError> {
        let field = PrimeField::new(config.modulus)?;
        set_degree_cap(config.degree_cap);
        Ok(Session {
            field,
            config,
            rings: HashMap::new(),
            ideals: HashMap::new(),
            quotients: HashMap::new(),
            current_ring: None,
        })
    }

    pub fn execute_script(&mut self, text: &str) -> Result<Vec<CommandOutcome>, ScriptError> {
        let commands = parse_script(text)?;
        Ok(commands.iter().map(|c| self.execute(c)).collect())
    }

    pub fn execute(&mut self, command: &Command) -> CommandOutcome {
        let started = Instant::now();
        let inputs = inputs_json(&command.kind);
        match self.run(&command.kind) {
            Ok((result, summary)) => {
                let ms = started.elapsed().as_millis() as u64;
                let mut obj = json!({
                    "command": command.verb,
                    "inputs": inputs,
                    "result": result,
                    "timings": {"ms": ms},
                });
                promote(&mut obj, "method");
                promote(&mut obj, "seeds");
                promote(&mut obj, "warnings");
                CommandOutcome {
                    json: obj,
                    summary: format!("{summary} [{ms} ms]"),
                    ok: true,
                }
            }
            Err(e) => {
                let ms = started.elapsed().as_millis() as u64;
                let code = error_code(&e);
                let message = e.to_string();
                CommandOutcome {
                    json: json!({
                        "command": command.verb,
                        "inputs": inputs,
                        "error": {"code": code, "message": message},
                        "timings": {"ms": ms},
                    }),
                    summary: format!(
                        "{} (line {}): error {code}: {message}",
                        command.verb, command.pos.line
                    ),
                    ok: false,
                }
            }
        }
    }

    fn run(&mut self, kind: &CommandKind) -> Result<(Value, String), CmdError> {
        match kind {
            CommandKind::DefRing { name, vars, weights } => {
                self.check_fresh("ring", name, self.rings.contains_key(name))?;
                let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
                let ring = match weights {
                    Some(w) => GradedRing::weighted(&var_refs, w, self.field)?,
                    None => GradedRing::standard(&var_refs, self.field)?,
                };
                let summary = format!(
                    "ring {name} = F_{}[{}] weights {:?}",
                    self.field.modulus(),
                    vars.join(","),
                    ring.weights()
                );
                let result = json!({
                    "name": name,
                    "vars": vars,
                    "weights": ring.weights(),
                    "modulus": self.field.modulus(),
                });
                self.rings.insert(name.clone(), ring);
                self.current_ring = Some(name.clone());
                Ok((result, summary))
            }
            CommandKind::DefIdeal { name, source } => {
                self.check_fresh("ideal", name, self.ideals.contains_key(name))?;
                let ring = self.current_ring()?.clone();
                let ideal = match source {
                    IdealSource::Generators(texts) => {
                        let gens = self.parse_polys(texts, &ring)?;
                        Ideal::new(&ring, gens)
                    }
                    IdealSource::Minors2 { top, bottom } => {
                        if top.len() != bottom.len() {
                            return Err(CmdError::Unsupported {
                                msg: "minors2 rows must have equal length".into(),
                            });
                        }
                        let top = self.parse_polys(top, &ring)?;
                        let bottom = self.parse_polys(bottom, &ring)?;
                        minors2(&ring, &top, &bottom)?
                    }
                };
                let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
                let summary = format!("ideal {name}: {} generators", gens.len());
                let result = json!({
                    "name": name,
                    "generators": gens,
                    "homogeneous": ideal.is_homogeneous(),
                });
                self.ideals.insert(name.clone(), ideal);
                Ok((result, summary))
            }
            CommandKind::DefQuotient { name, ring, ideal } => {
                self.check_fresh("quotient", name, self.quotients.contains_key(name))?;
                let ring_val = self.ring(ring)?.clone();
                let ideal_val = self.ideal(ideal)?.clone();
                if ideal_val.ring() != &ring_val {
                    return Err(CmdError::WrongRing { name: ideal.clone() });
                }
                let q = QuotientPresentation::new(ideal_val)?;
                let result = json!({
                    "name": name,
                    "ring": ring,
                    "defining": self.quotient_gens(&q),
                });
                self.quotients.insert(name.clone(), q);
                Ok((result, format!("quotient {name} = {ring}/{ideal}")))
            }
            CommandKind::DefCurve {
                ring_name,
                ideal_name,
                exponents,
            } => {
                self.check_fresh("ring", ring_name, self.rings.contains_key(ring_name))?;
                self.check_fresh("ideal", ideal_name, self.ideals.contains_key(ideal_name))?;
                let [k, l, m] = *exponents;
                let (ring, ideal) = crate::jmult::monomial_curve_ideal(k, l, m, self.field)?;
                let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
                let result = json!({
                    "ring": ring_name,
                    "ideal": ideal_name,
                    "weights": [k, l, m],
                    "generators": gens,
                });
                self.rings.insert(ring_name.clone(), ring);
                self.ideals.insert(ideal_name.clone(), ideal);
                self.current_ring = Some(ring_name.clone());
                Ok((
                    result,
                    format!("curve {ring_name} {ideal_name} = t^{k}, t^{l}, t^{m}"),
                ))
            }
            CommandKind::JMult {
                ideal,
                quotient,
                method,
                using,
                last,
            } => self.run_jmult(ideal, quotient.as_deref(), *method, using.as_deref(), last.as_deref()),
            CommandKind::Dim { target } => {
                if let Ok(ideal) = self.ideal(target) {
                    let value = dimension(ideal)?;
                    let v = match value {
                        Some(n) => json!(n),
                        None => json!("empty"),
                    };
                    return Ok((json!({"value": v}), format!("dim {target} = {v}")));
                }
                let q = self.quotient(target)?;
                let v = dimension_of_quotient(q)?;
                Ok((json!({"value": v}), format!("dim {target} = {v}")))
            }
            CommandKind::Length { ideal } => {
                let i = self.ideal_or_defining(ideal)?;
                let v = match length(&i)? {
                    Length::Finite(v) => json!(v),
                    Length::Infinite => json!("infinite"),
                };
                Ok((json!({"value": v}), format!("length {ideal} = {v}")))
            }
            CommandKind::Mult { ideal } => {
                let i = self.ideal_or_defining(ideal)?;
                let v = multiplicity(&i)?;
                Ok((json!({"value": v}), format!("mult {ideal} = {v}")))
            }
            CommandKind::Spread { ideal, quotient } => {
                let i = self.ideal(ideal)?.clone();
                let q = self.quotient_or_full(quotient.as_deref(), i.ring())?;
                let v = analytic_spread(&q, &i)?;
                Ok((json!({"value": v}), format!("spread {ideal} = {v}")))
            }
            CommandKind::Saturate { ideal, by } => {
                let i = self.ideal(ideal)?.clone();
                let j = self.ideal(by)?.clone();
                let (sat, exponent) = i.saturate(&j)?;
                let gens = basis_strings(&sat)?;
                Ok((
                    json!({"generators": gens, "exponent": exponent}),
                    format!("saturate {ideal} {by}: {} generators, exponent {exponent}", gens.len()),
                ))
            }
            CommandKind::Colon { ideal, by } => {
                let i = self.ideal(ideal)?.clone();
                let j = self.ideal(by)?.clone();
                let quo = i.colon_ideal(&j)?;
                let gens = basis_strings(&quo)?;
                Ok((
                    json!({"generators": gens}),
                    format!("colon {ideal} {by}: {} generators", gens.len()),
                ))
            }
            CommandKind::Hilbert { ideal } => {
                let i = self.ideal(ideal)?;
                let data = hilbert_data(i)?;
                let v = serde_json::to_value(&data).expect("serializable");
                let s = format!(
                    "hilbert {ideal}: dim {:?}, numerator degree {}",
                    data.dimension,
                    data.numerator.len().saturating_sub(1)
                );
                Ok((v, s))
            }
            CommandKind::Oracle {
                ideal,
                quotient,
                n_max,
            } => {
                let i = self.ideal(ideal)?.clone();
                let q = self.quotient_or_full(quotient.as_deref(), i.ring())?;
                let trace =
                    j_definitional_oracle(&q, &i, n_max.unwrap_or(self.config.n_max))?;
                let v = serde_json::to_value(&trace).expect("serializable");
                let s = match trace.stabilized {
                    Some(v) => format!("oracle {ideal}: stabilized at {v}"),
                    None => format!("oracle {ideal}: not stabilized"),
                };
                Ok((v, s))
            }
        }
    }

    fn run_jmult(
        &mut self,
        ideal: &str,
        quotient: Option<&str>,
        method: MethodFlag,
        using: Option<&str>,
        last: Option<&str>,
    ) -> Result<(Value, String), CmdError> {
        let i = self.ideal(ideal)?.clone();
        let ring = i.ring().clone();
        let q = self.quotient_or_full(quotient, &ring)?;
        let seeds = self.config.seeds();
        let policy = self.config.policy();
        let auto_opts = AutoOptions {
            oracle_var_cap: 4,
            n_max: self.config.n_max,
        };
        let report: JReport = match method {
            MethodFlag::Auto => j_auto(&q, &i, &seeds, &policy, &auto_opts)?,
            MethodFlag::Formula => j_length_formula(&q, &i, &seeds, &policy)?,
            MethodFlag::Cor3b => j_cor3b_variant(&q, &i, &seeds, &policy)?,
            MethodFlag::Cor3a => {
                if quotient.is_some() {
                    return Err(CmdError::Unsupported {
                        msg: "method cor3a works in the full polynomial ring".into(),
                    });
                }
                let r = equigenerated_degree(&i)?;
                j_cor3a(&ring, &i, r, &seeds, &policy)?
            }
            MethodFlag::Oracle => {
                let trace = j_definitional_oracle(&q, &i, self.config.n_max)?;
                oracle_report(&q, &i, &trace)?
            }
            MethodFlag::Reduction => {
                let b_name = using.ok_or(CmdError::MissingArgument {
                    what: "`using <ideal>` with the first d-1 reduction elements",
                })?;
                let b = self.ideal(b_name)?.clone();
                if b.ring() != &ring {
                    return Err(CmdError::WrongRing { name: b_name.into() });
                }
                let last_text = last.ok_or(CmdError::MissingArgument {
                    what: "`last [poly]` with the final reduction element",
                })?;
                let b_last = parse_polynomial(last_text, &ring)?;
                j_reduction(&ring, &i, b.generators(), &b_last)?
            }
            MethodFlag::Residual => {
                let b_name = using.ok_or(CmdError::MissingArgument {
                    what: "`using <ideal>` with the d-1 residual elements",
                })?;
                let b = self.ideal(b_name)?.clone();
                if b.ring() != &ring {
                    return Err(CmdError::WrongRing { name: b_name.into() });
                }
                j_residual_multiplicity(&ring, &i, b.generators())?
            }
        };
        let mut result = serde_json::to_value(&report).expect("serializable");
        if let Value::Object(map) = &mut result {
            map.insert("seeds".into(), json!(seeds));
        }
        let method_label = serde_json::to_value(report.method)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let summary = format!(
            "jmult {ideal}: {} ({method_label}, agreement={})",
            match report.finite_value() {
                Some(v) => v.to_string(),
                None => "undetermined".into(),
            },
            report.agreement
        );
        Ok((result, summary))
    }

    fn parse_polys(
        &self,
        texts: &[String],
        ring: &GradedRing,
    ) -> Result<Vec<Polynomial>, CmdError> {
        texts
            .iter()
            .map(|t| parse_polynomial(t, ring).map_err(CmdError::from))
            .collect()
    }

    fn check_fresh(&self, kind: &'static str, name: &str, taken: bool) -> Result<(), CmdError> {
        if taken {
            Err(CmdError::DuplicateName {
                kind,
                name: name.to_string(),
            })
        } else {
            Ok(())
        }
    }

    fn current_ring(&self) -> Result<&GradedRing, CmdError> {
        let name = self.current_ring.as_ref().ok_or(CmdError::NoCurrentRing)?;
        Ok(&self.rings[name])
    }

    fn ring(&self, name: &str) -> Result<&GradedRing, CmdError> {
        self.rings.get(name).ok_or_else(|| CmdError::UnknownName {
            kind: "ring",
            name: name.to_string(),
        })
    }

    fn ideal(&self, name: &str) -> Result<&Ideal, CmdError> {
        self.ideals.get(name).ok_or_else(|| CmdError::UnknownName {
            kind: "ideal",
            name: name.to_string(),
        })
    }

    fn quotient(&self, name: &str) -> Result<&QuotientPresentation, CmdError> {
        self.quotients
            .get(name)
            .ok_or_else(|| CmdError::UnknownName {
                kind: "quotient",
                name: name.to_string(),
            })
    }

    /// Length/multiplicity targets may name an ideal (meaning S/I) or a
    /// bound quotient presentation.
    fn ideal_or_defining(&self, name: &str) -> Result<Ideal, CmdError> {
        if let Ok(i) = self.ideal(name) {
            return Ok(i.clone());
        }
        Ok(self.quotient(name)?.defining_ideal().clone())
    }

    fn quotient_or_full(
        &self,
        name: Option<&str>,
        ring: &GradedRing,
    ) -> Result<QuotientPresentation, CmdError> {
        match name {
            Some(n) => {
                let q = self.quotient(n)?;
                if q.ring() != ring {
                    return Err(CmdError::WrongRing { name: n.to_string() });
                }
                Ok(q.clone())
            }
            None => Ok(QuotientPresentation::full(ring)),
        }
    }

    fn quotient_gens(&self, q: &QuotientPresentation) -> Vec<String> {
        q.defining_ideal()
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }
}

/// Canonical generator strings: the reduced grevlex basis.
fn basis_strings(ideal: &Ideal) -> Result<Vec<String>, CmdError> {
    Ok(ideal
        .grevlex_basis()?
        .elements()
        .iter()
        .map(|g| g.to_string())
        .collect())
}

fn equigenerated_degree(ideal: &Ideal) -> Result<u64, CmdError> {
    let mut degree = None;
    for g in ideal.generators() {
        let d = g
            .homogeneous_degree()
            .ok_or(CmdError::Engine(EngineError::Inhomogeneous))?;
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return Err(CmdError::Engine(EngineError::MixedGeneratorDegrees))
            }
            _ => {}
        }
    }
    degree.ok_or(CmdError::Engine(EngineError::ImproperIdeal))
}

fn inputs_json(kind: &CommandKind) -> Value {
    match kind {
        CommandKind::DefRing { name, vars, weights } => json!({
            "name": name, "vars": vars, "weights": weights,
        }),
        CommandKind::DefIdeal { name, source } => {
            let src = match source {
                IdealSource::Generators(g) => json!({"generators": g}),
                IdealSource::Minors2 { top, bottom } => json!({"minors2": [top, bottom]}),
            };
            json!({"name": name, "source": src})
        }
        CommandKind::DefQuotient { name, ring, ideal } => {
            json!({"name": name, "ring": ring, "ideal": ideal})
        }
        CommandKind::DefCurve {
            ring_name,
            ideal_name,
            exponents,
        } => json!({"ring": ring_name, "ideal": ideal_name, "exponents": exponents}),
        CommandKind::JMult {
            ideal,
            quotient,
            method,
            using,
            last,
        } => json!({
            "ideal": ideal, "quotient": quotient, "method": method.label(),
            "using": using, "last": last,
        }),
        CommandKind::Dim { target } => json!({"target": target}),
        CommandKind::Length { ideal } => json!({"ideal": ideal}),
        CommandKind::Mult { ideal } => json!({"ideal": ideal}),
        CommandKind::Spread { ideal, quotient } => {
            json!({"ideal": ideal, "quotient": quotient})
        }
        CommandKind::Saturate { ideal, by } => json!({"ideal": ideal, "by": by}),
        CommandKind::Colon { ideal, by } => json!({"ideal": ideal, "by": by}),
        CommandKind::Hilbert { ideal } => json!({"ideal": ideal}),
        CommandKind::Oracle {
            ideal,
            quotient,
            n_max,
        } => json!({"ideal": ideal, "quotient": quotient, "n_max": n_max}),
    }
}

/// Lift a result field to the top level of the report object (method,
/// seeds, warnings), matching the report schema.
fn promote(obj: &mut Value, key: &str) {
    let Value::Object(map) = obj else { return };
    let found = match map.get("result") {
        Some(Value::Object(result)) => result.get(key).cloned(),
        _ => None,
    };
    map.insert(
        key.into(),
        match (key, found) {
            (_, Some(v)) => v,
            ("warnings", None) => json!([]),
            ("seeds", None) => json!([]),
            (_, None) => Value::Null,
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(script: &str) -> Vec<CommandOutcome> {
        let mut session = Session::new(SessionConfig::default()).unwrap();
        session.execute_script(script).unwrap()
    }

    #[test]
    fn define_and_measure() {
        let out = run("ring S = vars x,y; ideal I = [x]; dim I;");
        assert!(out.iter().all(|o| o.ok));
        assert_eq!(out[2].json["result"]["value"], json!(1));
    }

    #[test]
    fn jmult_on_maximal_ideal() {
        let out = run("ring S = vars x,y; ideal I = [x, y]; jmult I;");
        assert!(out[2].ok, "{}", out[2].summary);
        assert_eq!(out[2].json["result"]["value"], json!(1));
        assert_eq!(out[2].json["result"]["agreement"], json!(true));
        assert_eq!(out[2].json["method"], out[2].json["result"]["method"]);
    }

    #[test]
    fn errors_are_coded_and_non_fatal() {
        let out = run("dim I; ring S = vars x,y; ideal I = [x]; dim I;");
        assert!(!out[0].ok);
        assert_eq!(out[0].json["error"]["code"], json!("E_UNKNOWN_NAME"));
        assert!(out[3].ok);
    }

    #[test]
    fn duplicate_names_rejected() {
        let out = run("ring S = vars x; ring S = vars y;");
        assert!(!out[1].ok);
        assert_eq!(out[1].json["error"]["code"], json!("E_DUPLICATE_NAME"));
    }

    #[test]
    fn curve_binds_ring_and_ideal() {
        let out = run("curve C P = 3 4 5; dim P; spread P;");
        assert!(out.iter().all(|o| o.ok));
        assert_eq!(out[1].json["result"]["value"], json!(1));
        assert_eq!(out[2].json["result"]["value"], json!(3));
    }

    #[test]
    fn saturate_and_colon_results() {
        let out = run(
            "ring S = vars x,y; ideal I = [x^2, x*y]; ideal Y = [y]; saturate I Y; colon I Y;",
        );
        assert_eq!(out[3].json["result"]["generators"], json!(["x"]));
        assert_eq!(out[3].json["result"]["exponent"], json!(1));
        assert_eq!(out[4].json["result"]["generators"], json!(["x"]));
    }
}
