//! Exact polynomial identities over finite fields and the root-of-unity span
//! computations, all by direct expansion or row reduction.

pub mod identity;
pub mod poly;
pub mod wild;

pub use identity::{
    verify_derivative_steps, verify_identity_grouped, verify_identity_split, DerivativeReport,
    GroupedIdentityReport, IdentityReport,
};
pub use poly::BivariatePoly;
pub use wild::{
    root_span, virtual_character_values, wild_inertia_span, RootSpanReport, VirtualCharacterTable,
    WildInertiaReport,
};
