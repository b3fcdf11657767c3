//! Exact symbolic engine for the combinatorics of restriction from
//! GL(n+1) to GL(n) over a p-adic field: Zelevinsky segment calculus,
//! Bernstein-Zelevinsky derivatives, recombination canonical forms,
//! quotient-obstruction and Ext-vanishing certificates, and affine Hecke
//! algebra checks at small rank.
//!
//! All arithmetic is exact (rational exponents, Laurent-polynomial Hecke
//! scalars); every operation is a pure function over immutable values.

#![forbid(unsafe_code)]

pub mod branching;
pub mod derivative;
pub mod error;
pub mod hecke;
pub mod line;
pub mod rat;
pub mod recombination;
pub mod segment;
pub mod universe;

pub use branching::{
    bz_filtration, ep_pairing, ext_vanishing_certificate, generic_subquotients_of_derivative,
    m_count, quotient_obstruction, Certificate, CertificateKind, Collision, FiltrationLayer,
    FreshLine, SpectraCheck,
};
pub use derivative::{
    check_derivative_duality, derive, derive_st_segment, derive_zel_segment, whittaker_dim,
    DerivativeRequest,
};
pub use error::{Error, Result};
pub use line::{LineId, LineInfo, LineRegistry};
pub use rat::Rat;
pub use recombination::{
    is_generic, recombine, recombine_with_trace, truncations, verify_truncation_lemma,
    LemmaReport, RewriteStep, TruncationPattern,
};
pub use segment::{
    CuspidalPoint, Flavor, FormalSum, InducedRep, Multisegment, Segment, Side, Support,
};
pub use universe::{enumerate_multisegments, enumerate_reps, enumerate_segments, LineDecl, UniverseSpec};
