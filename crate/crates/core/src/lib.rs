//! Exact Frobenius trace statistics for the rigid local systems
//! `G(k, 2q-1, ψ)` together with the character theory of `Alt(2q)` and
//! `Sym(2q)` that predicts them.

pub mod algebra;
pub mod arith;
pub mod characters;
pub mod compare;
pub mod config;
pub mod curves;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod group;
pub mod pipeline;
pub mod rational;
pub mod trace_lab;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use field::{build_field, Field, FieldDescriptor, FieldElement};
