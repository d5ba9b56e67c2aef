//! The order of a symbol: the degree in `q` of its unipotent character's
//! dimension polynomial.
//!
//! [`ord_closed`] uses the closed form in the merged entries. [`ord_oracle`]
//! adds up the degrees of every factor of the dimension formula separately
//! and serves as an independent check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A weakly decreasing sequence of entries, each value at most twice, as
/// arises from merging the two rows of a symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntrySequence {
    entries: Vec<u32>,
}

impl EntrySequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let decreasing = entries.windows(2).all(|w| w[0] >= w[1]);
        let at_most_twice = entries.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2]));
        if !decreasing || !at_most_twice {
            return Err(Error::InvalidEntrySequence(entries));
        }
        Ok(EntrySequence { entries })
    }

    pub fn of_symbol(s: &Symbol) -> Self {
        EntrySequence { entries: s.merged_entries() }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ord(&self) -> i64 {
        let z: Vec<i64> = self.entries.iter().map(|&v| i64::from(v)).collect();
        ord_of_entries(&z)
    }
}

/// Degrees of the factors in the dimension formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBreakdown {
    pub deg_delta_a: i64,
    pub deg_delta_b: i64,
    pub deg_theta_a: i64,
    pub deg_theta_b: i64,
    pub deg_pi: i64,
    pub deg_group_order: i64,
    pub deg_q_power: i64,
    /// Exponent of the constant `1/2^c`. It never changes the degree.
    #[serde(skip)]
    pub c: u32,
    pub total: i64,
}

/// `Σ (m-i) z_i - Σ z_i(z_i+1) + const(n, m)` for decreasing `z`, where `n`
/// is recovered from the entry sum. Works on any integers, which lets entry
/// moves be evaluated without checking that the result is a symbol.
pub fn ord_of_entries(z: &[i64]) -> i64 {
    let m = z.len() as i64;
    let sum: i64 = z.iter().sum();
    let n = sum - staircase(m);
    let weighted: i64 = z.iter().enumerate().map(|(i, &v)| (m - 1 - i as i64) * v).sum();
    let theta: i64 = z.iter().map(|&v| v * (v + 1)).sum();
    let constant = if m % 2 == 1 {
        n * (n + 1) - (m - 1) * (m - 3) * (2 * m - 1) / 24
    } else {
        n * n - m * (m - 2) * (2 * m - 5) / 24
    };
    weighted - theta + constant
}

/// `⌊((m-1)/2)²⌋`, the entry sum of the rank-zero symbol with `m` entries.
fn staircase(m: i64) -> i64 {
    if m == 0 {
        return 0;
    }
    let h = (m - 1) / 2;
    if m % 2 == 1 {
        h * h
    } else {
        h * (h + 1)
    }
}

pub fn ord_closed(s: &Symbol) -> i64 {
    EntrySequence::of_symbol(s).ord()
}

/// `binom(M-2,2) + binom(M-4,2) + ...`, summed term by term.
pub fn q_power_degree(total_entries: i64) -> i64 {
    let mut sum = 0;
    let mut k = total_entries - 2;
    while k >= 2 {
        sum += k * (k - 1) / 2;
        k -= 2;
    }
    sum
}

pub fn ord_oracle(s: &Symbol) -> DegreeBreakdown {
    let a: Vec<i64> = s.top().entries().iter().map(|&v| i64::from(v)).collect();
    let b: Vec<i64> = s.bottom().entries().iter().map(|&v| i64::from(v)).collect();
    let n = i64::from(s.rank());
    let delta_deg = |row: &[i64]| -> i64 {
        let m = row.len() as i64;
        row.iter().enumerate().map(|(i, &v)| (m - 1 - i as i64) * v).sum()
    };
    let theta_deg = |row: &[i64]| -> i64 { row.iter().map(|&v| v * (v + 1)).sum() };
    let deg_pi = a.iter().map(|&x| b.iter().map(|&y| x.max(y)).sum::<i64>()).sum();
    // Odd defect: symplectic, |Sp_2n| has degree n(n+1); even: n².
    let deg_group_order = if s.defect() % 2 != 0 { n * (n + 1) } else { n * n };
    let deg_q_power = q_power_degree((a.len() + b.len()) as i64);
    let c = if a == b { a.len() as u32 } else { ((a.len() + b.len()).saturating_sub(1) / 2) as u32 };

    let mut out = DegreeBreakdown {
        deg_delta_a: delta_deg(&a),
        deg_delta_b: delta_deg(&b),
        deg_theta_a: theta_deg(&a),
        deg_theta_b: theta_deg(&b),
        deg_pi,
        deg_group_order,
        deg_q_power,
        c,
        total: 0,
    };
    out.total = out.deg_group_order + out.deg_delta_a + out.deg_delta_b + out.deg_pi
        - out.deg_theta_a
        - out.deg_theta_b
        - out.deg_q_power;
    out
}

/// The exact change `ord(Z') - ord(Z)` when `z_k` is raised by one and `z_l`
/// lowered by one (1-based, `k < l`): `(l-k) + 2(z_l - z_k - 1)`.
///
/// Requires `z_{k-1} >= z_k + 1` and `z_l - 1 >= z_{l+1}` so the moved
/// sequence stays decreasing; the second bound is vacuous for `l = m`.
pub fn entry_move_ord_delta(z: &EntrySequence, k: usize, l: usize) -> Result<i64> {
    let e = z.entries();
    let fail = |reason| Err(Error::EntryMove { k, l, reason });
    if k == 0 || k >= l || l > e.len() {
        return fail("need 1 <= k < l <= m");
    }
    let (zk, zl) = (i64::from(e[k - 1]), i64::from(e[l - 1]));
    if k > 1 && i64::from(e[k - 2]) < zk + 1 {
        return fail("z_{k-1} < z_k + 1");
    }
    if l < e.len() && zl - 1 < i64::from(e[l]) {
        return fail("z_l - 1 < z_{l+1}");
    }
    Ok((l - k) as i64 + 2 * (zl - zk - 1))
}
