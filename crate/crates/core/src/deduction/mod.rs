//! Labelled natural deduction with identity types: terms, typing, the
//! endpoints of reasons, derivation checking, the identity computation rules
//! and paths extracted from λ-term reductions.

pub mod derivation;
pub mod endpoints;
pub mod env;
pub mod idrules;
pub mod paths;
pub mod sample;
pub mod syntax;
pub mod term;
pub mod typing;

pub use derivation::{check_derivation, Derivation, DerivationJsonError, Diagnostic, DiagnosticKind, Judgment};
pub use endpoints::{endpoints_at, endpoints_of, source_to, target_from, EndpointError};
pub use env::{Env, EnvError, ReasonBinding, StepBinding};
pub use idrules::{id_beta, id_eta, zeta_permute};
pub use sample::{check_preservation, sample_env, Sample, TypedReasonGen, Violation};
pub use paths::{path_of_reduction, reduction, PathError, PathStep, PathStrategy, Reduction, DEFAULT_PATH_FUEL};
pub use syntax::{parse_judgment, parse_term, parse_ty, SyntaxError};
pub use term::{Connective, Term, Ty};
pub use typing::{check, check_ty, infer, TypeError};
