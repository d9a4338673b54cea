pub mod cli;
pub mod error;
pub mod fields;
pub mod identity;
pub mod indefinite;
pub mod partitions;
pub mod qseries;
pub mod quadform;
pub mod tables;

pub use error::{Error, Result};
pub use qseries::{eta_quotient_series, qpochhammer_product, PochhammerTerm, QSeries, SeriesRecord, EXACT};
pub use identity::{compute, verify, IdentityReport, RouteId, Series};
pub use partitions::{colored_partition_counts, ColoredPartitionCount, SigmaConvention};
pub use quadform::{QuadForm, ResidueEntry, ResiduePairSet};
