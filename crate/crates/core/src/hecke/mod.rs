//! Affine Hecke algebra of type A in the Bernstein presentation at small
//! rank: exact normal-form arithmetic over Laurent-polynomial scalars,
//! the sign-induced module, principal series, and central-character
//! quotients.

pub mod algebra;
pub mod laurent;
pub mod linalg;
pub mod modules;
pub mod perm;

pub use algebra::{specialize, verify_relations, HeckeElement, Lambda, RelationCheck, RelationReport};
pub use laurent::Laurent;
pub use linalg::RatMatrix;
pub use modules::{
    central_quotient, sign_isotypic_dim, CentralQuotientReport, PrincipalSeries, SigmaVector,
    SignModule,
};
pub use perm::Perm;
