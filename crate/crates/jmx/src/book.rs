//! The chapters of the guide under `book/`, included here so that every
//! code listing in the book compiles and runs under `cargo test --doc`.
//! mdBook cannot execute listings itself; routing them through rustdoc
//! keeps the book and the library in lockstep.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/rings-and-polynomials.md")]
pub mod rings_and_polynomials {}

#[doc = include_str!("../../../book/src/groebner-bases.md")]
pub mod groebner_bases {}

#[doc = include_str!("../../../book/src/ideal-arithmetic.md")]
pub mod ideal_arithmetic {}

#[doc = include_str!("../../../book/src/graded-invariants.md")]
pub mod graded_invariants {}

#[doc = include_str!("../../../book/src/j-multiplicity.md")]
pub mod j_multiplicity {}

#[doc = include_str!("../../../book/src/scripts-and-reports.md")]
pub mod scripts_and_reports {}
