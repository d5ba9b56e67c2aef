//! Combinatorics of symbols for unipotent characters of symplectic and even
//! orthogonal groups, and the unipotent part of the Θ-correspondence between
//! them: Θ-sets, the maps `θ_k`, and the one-to-one correspondences `θ̲`, `θ̄`.

pub mod correspond;
pub mod error;
pub mod order;
pub mod partition;
pub mod properties;
pub mod symbol;
pub mod theta;

pub use correspond::{
    find_k0, first_defined, first_occurrence, group_of, occurrence_preimage, overline_theta, overline_theta_family,
    select_overline, semi_persistence_violations, stable_range_violations, table_violations, theta_k_map,
    theta_zero_closed, underline_theta, CorrespondenceTable, OccurrenceMode, PeakDiagnostics, Selection, TableRow,
};
pub use error::{Error, Result};
pub use order::{
    entry_move_ord_delta, ord_closed, ord_of_entries, ord_oracle, q_power_degree, DegreeBreakdown, EntrySequence,
};
pub use partition::{BiPartition, Partition};
pub use properties::{run_property, sweep_pairs, SweepReport, PROPERTY_IDS};
pub use symbol::{
    enumerate_family, family_of, is_special, linear_cmp, sorted_family, special_closure, BetaSet, GroupKind, GroupTag,
    Sign, Symbol,
};
pub use theta::{
    b_relation, b_relation_by_entries, beta_interleaves, max_block, related, theta_set, theta_set_by_filter, DualPair,
    ThetaBlock, ThetaSet,
};
