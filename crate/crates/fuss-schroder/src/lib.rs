//! Exact enumeration and counting of Dyck, Schröder, Fuss–Catalan and
//! (k,r)-Fuss–Schröder paths refined by type, with the flaw-class bijection
//! on free paths and the tracing map to sparse noncrossing partitions.

pub mod bijections;
pub mod chung_feller;
pub mod counting;
pub mod enumeration;
pub mod partition;
pub mod path;
pub mod schroder_nc;
pub mod verification;

pub use bijections::{shift_r, ShiftError};
pub use chung_feller::{add_flaw, circular_shift, flaw_count, orbit, remove_flaw, AnnotatedPath, FlawEngine, FlawError, FlawReport};
pub use counting::Count;
pub use enumeration::{count_by_type, enumerate, CountTable};
pub use partition::TypePartition;
pub use path::{is_member, FamilyClass, FamilySpec, LatticePath, Step};
pub use schroder_nc::{small_partition, trace_to_partition, NCPartition};
