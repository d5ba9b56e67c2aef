//! Inputs shared by the benchmarks.

/// Dual pairs and defects used as benchmark workloads: `(pair, delta)`.
pub const TABLE_WORKLOADS: &[(&str, i32)] = &[("O+8,Sp10", 0), ("O+12,Sp14", 0), ("Sp10,O+12", 1), ("O-10,Sp12", 2)];

/// Symbols with large Θ-sets.
pub const THETA_WORKLOADS: &[(&str, &str)] =
    &[("O+30,Sp30", "9,4,2,1;5,4,2,0"), ("O+20,Sp22", "5,2;3,2"), ("O+8,Sp10", "4;0")];
