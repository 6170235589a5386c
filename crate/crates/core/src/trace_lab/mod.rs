//! Normalized Frobenius traces of `G(k, 2q-1, ψ)` over extension towers.

pub mod cache;
pub mod descent;
pub mod engine;
pub mod moments;
pub mod params;
pub mod table;

pub use descent::{descent_consistency, descent_trace, DescentReport, DescentValue};
pub use engine::{normalized_trace, raw_sum, TraceEngine, TraceValue};
pub use moments::{empirical_moment, moment_of_table, moment_scan, third_moment_target, MomentReport, MomentRow};
pub use params::SystemParams;
pub use table::{trace_table, Strategy, TableOptions, TraceTable};
