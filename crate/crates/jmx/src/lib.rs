//! Exact computation of the j-multiplicity of homogeneous ideals in
//! weighted-graded polynomial rings over prime finite fields.
//!
//! The j-multiplicity generalizes the Hilbert-Samuel multiplicity to
//! ideals that are not primary to the maximal ideal. This crate computes
//! it exactly: a Groebner engine supplies ideal arithmetic (colon,
//! saturation, elimination), graded invariants (dimension, Hilbert
//! series, length, multiplicity, analytic spread) supply the numbers,
//! and the engine in [`jmult`] evaluates the length formula with
//! randomized general elements, its graded corollaries, and a
//! definitional oracle used for cross-validation.
//!
//! ```
//! use jmx::field::PrimeField;
//! use jmx::ring::GradedRing;
//! use jmx::parse::parse_polynomial;
//! use jmx::ideal::{Ideal, QuotientPresentation};
//! use jmx::jmult::{j_length_formula, AgreementPolicy, JValue};
//!
//! let ring = GradedRing::standard(&["x", "y"], PrimeField::default_field()).unwrap();
//! let m = Ideal::new(&ring, vec![
//!     parse_polynomial("x", &ring).unwrap(),
//!     parse_polynomial("y", &ring).unwrap(),
//! ]);
//! let q = QuotientPresentation::full(&ring);
//! let report = j_length_formula(&q, &m, &[1, 2, 3], &AgreementPolicy::default()).unwrap();
//! assert_eq!(report.value, JValue::Finite(1));
//! ```
//!
//! The narrative guide lives in `book/`; its code listings are compiled
//! and run as doc-tests through the [`book`] module.

pub mod field;
pub mod ring;
pub mod order;
pub mod poly;
pub mod parse;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod rng;
pub mod jmult;
pub mod script;
pub mod session;

pub mod book;

pub use field::PrimeField;
pub use ideal::{Ideal, QuotientPresentation};
pub use jmult::{AgreementPolicy, JReport, JValue};
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::{GradedRing, Monomial};
