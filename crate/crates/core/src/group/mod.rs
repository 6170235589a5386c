//! Exact character statistics of `Sym(m)` and `Alt(m)` on the deleted
//! permutation representation `V` (value `fix - 1`) and its sign twist.

pub mod specht;
pub mod stats;

pub use specht::{mn_character, specht_dim, tensor_square_check, TensorSquareReport};
pub use stats::{
    bell_numbers, build_stats, class_size, exact_moment, partitions, singleton_free_partitions,
    spectrum, ConjugacyClass, GroupStats, Regime, SpectrumTable, Twist,
};
