//! Exact computer algebra for the variant cohomology of `SL_n` Hitchin moduli
//! spaces at prime rank.
//!
//! The crate computes the variant E-polynomial from the topological mirror
//! symmetry formula, extracts variant Betti numbers, re-derives the same
//! polynomial on the character-variety side from the two special hook
//! polynomials, and realizes the perverse and weight filtration tables,
//! checking them against the two numerical k-sequence criteria.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere.

pub mod epoly;
pub mod error;
pub mod filtration;
pub mod hitchin;
pub mod hookchar;
pub mod laurent;
pub mod suite;

pub use epoly::{
    closed_e, euler_variant, make_params, mirror_difference, variant_betti, CohomologyProfile,
    ModuliParams,
};
pub use error::{Error, Result};
pub use filtration::{
    check_prop21, check_prop22, falsification_search, is_k_sequence, Condition, Counterexample,
    Criterion, CriterionReport, FiltrationTable, SearchBounds, Violation,
};
pub use hitchin::{perverse_table, prop14_bound, verify_pw, weight_table, PWReport};
pub use hookchar::{evar_from_types, hook_special, hrv_term, HookData, SpecialType};
pub use laurent::{BiLaurentPoly, HalfExp, LaurentPoly, Rational};
pub use suite::{run_suite, CheckResult};
