//! Exact combinatorics of (k,i)-singular overpartitions.
//!
//! The library implements the full chain of bijections between singular
//! overpartitions (Frobenius symbols with dotted parity blocks) and
//! overpartitions with no part divisible by k and overlines only on
//! parts congruent to +-i mod k, together with exhaustive enumeration,
//! exact counting, and truncated q-series verification of the counting
//! identities.
//!
//! Everything is an immutable value and every operation is a pure
//! function; all arithmetic on counts is exact (big integers).

pub mod bijections;
pub mod blocks;
pub mod census;
pub mod error;
pub mod frobenius;
pub mod maps;
pub mod partition;

pub use bijections::{
    andrews_forward, andrews_inverse, gamma_trace, psi_forward, psi_inverse, PsiTrace,
    RestrictedOverpartition,
};
pub use blocks::{
    column_parity, decompose_blocks, dotted_configurations, dotted_from_overlined, from_dotted,
    is_singular, Block, BlockDecomposition, BlockKind, ColumnParity, DotStart, DottedRun,
    DottedSymbol, ModulusPair, OverlinedFrobenius,
};
pub use census::{
    count_restricted, count_restricted_by_m, count_singular, count_singular_by_m,
    enumerate_restricted, enumerate_singular, product_series, verify_identities,
    SeriesTruncation, VerificationReport,
};
pub use error::{Error, Result};
pub use frobenius::{from_frobenius, to_frobenius, FrobeniusSymbol};
pub use maps::{
    dyson, dyson_frobenius, dyson_inverse, shift, shifted_conjugate, wright_forward,
    wright_inverse, WrightInput, WrightOutput,
};
pub use partition::{
    enumerate_partitions, enumerate_partitions_filtered, partition_count, Partition,
    PartitionIter, PartitionTable,
};
