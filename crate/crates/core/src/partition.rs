//! Partitions and bi-partitions.
//!
//! A [`Partition`] is kept in canonical form: weakly decreasing parts with
//! trailing zeros stripped. Every comparison that needs two partitions of the
//! same length pads the shorter one with zeros on the fly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// accepted and stripped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(parts));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> u32 {
        self.part(0)
    }

    pub fn norm(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The conjugate partition: `dual[j] = #{ i : parts[i] > j }`.
    pub fn dual(&self) -> Partition {
        let width = self.first() as usize;
        let parts = (1..=width as u32).map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32).collect();
        Partition { parts }
    }

    /// Lexicographic comparison after padding the shorter partition with zeros.
    pub fn lex_cmp(&self, other: &Partition) -> Ordering {
        let len = self.len().max(other.len());
        (0..len).map(|i| self.part(i).cmp(&other.part(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// Adds a single part (zero is a no-op).
    pub fn with_part(&self, part: u32) -> Partition {
        self.union(&Partition::from_sorted(vec![part]))
    }

    /// Removes one copy of `part`, if present.
    pub fn without_part(&self, part: u32) -> Option<Partition> {
        if part == 0 {
            return Some(self.clone());
        }
        let pos = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// The relation `self ≼ mu`: `mu_i - 1 <= self_i <= mu_i` for every `i`.
    pub fn precq(&self, mu: &Partition) -> bool {
        let len = self.len().max(mu.len());
        (0..len).all(|i| {
            let (l, m) = (self.part(i), mu.part(i));
            l <= m && l + 1 >= m
        })
    }

    /// `mu_{i+1} <= self_i <= mu_i` for every `i`; equivalently
    /// `self.dual().precq(&mu.dual())`.
    pub fn interleaves(&self, mu: &Partition) -> bool {
        let len = self.len().max(mu.len());
        (0..len).all(|i| mu.part(i + 1) <= self.part(i) && self.part(i) <= mu.part(i))
    }

    /// Whether every prefix sum of `self` is at least the matching prefix sum
    /// of `other` (both padded with zeros).
    pub fn prefix_dominates(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u64, 0u64);
        (0..len).all(|i| {
            a += u64::from(self.part(i));
            b += u64::from(other.part(i));
            a >= b
        })
    }

    /// Partitions obtained by removing a horizontal strip (no two boxes in
    /// the same column), i.e. all `nu` with `nu.interleaves(self)`.
    pub fn horizontal_strip_removals(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.len());
        self.removals_rec(0, &mut current, &mut out);
        out
    }

    fn removals_rec(&self, i: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == self.len() {
            out.push(Partition::from_sorted(current.clone()));
            return;
        }
        for v in self.part(i + 1)..=self.part(i) {
            current.push(v);
            self.removals_rec(i + 1, current, out);
            current.pop();
        }
    }

    /// Partitions obtained by adding a horizontal strip of exactly `size`
    /// boxes, i.e. all `nu` with `self.interleaves(nu)` and
    /// `nu.norm() == self.norm() + size`.
    pub fn horizontal_strip_additions(&self, size: u32) -> Vec<Partition> {
        let len = self.len() + 1;
        let mut out = Vec::new();
        let mut current = vec![0u32; len];
        // Rows 1.. are bounded by the row above in `self`; row 0 absorbs the rest.
        self.additions_rec(len - 1, size, &mut current, &mut out);
        out
    }

    fn additions_rec(&self, i: usize, remaining: u32, current: &mut [u32], out: &mut Vec<Partition>) {
        if i == 0 {
            current[0] = self.part(0) + remaining;
            out.push(Partition::from_sorted(current.to_vec()));
            return;
        }
        let low = self.part(i);
        let high = self.part(i - 1);
        for v in low..=high {
            let added = v - low;
            if added > remaining {
                break;
            }
            current[i] = v;
            self.additions_rec(i - 1, remaining - added, current, out);
        }
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions_rec(n, n, &mut current, &mut out);
        out
    }
}

fn partitions_rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        partitions_rec(remaining - p, p, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.parts)
    }
}

pub(crate) fn write_row(f: &mut fmt::Formatter<'_>, row: &[u32]) -> fmt::Result {
    if row.is_empty() {
        return f.write_str("-");
    }
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn parse_row(text: &str, what: &'static str) -> Result<Vec<u32>> {
    let text = text.trim();
    let err = || Error::Parse { what, text: text.to_string() };
    if text == "-" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| err())).collect()
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_row(s, "partition")?)
    }
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::from_unsorted(parts)
    }
}

/// An ordered pair of partitions `[top | bottom]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPartition {
    pub top: Partition,
    pub bottom: Partition,
}

impl BiPartition {
    pub fn new(top: Partition, bottom: Partition) -> Self {
        BiPartition { top, bottom }
    }

    pub fn norm(&self) -> u32 {
        self.top.norm() + self.bottom.norm()
    }

    pub fn transpose(&self) -> BiPartition {
        BiPartition { top: self.bottom.clone(), bottom: self.top.clone() }
    }

    /// Row-wise union.
    pub fn union(&self, other: &BiPartition) -> BiPartition {
        BiPartition { top: self.top.union(&other.top), bottom: self.bottom.union(&other.bottom) }
    }

    /// All bi-partitions of `n`.
    pub fn all(n: u32) -> Vec<BiPartition> {
        let mut out = Vec::new();
        for k in 0..=n {
            let tops = Partition::all(k);
            let bottoms = Partition::all(n - k);
            for t in &tops {
                for b in &bottoms {
                    out.push(BiPartition::new(t.clone(), b.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for BiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.top, self.bottom)
    }
}

impl FromStr for BiPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (top, bottom) =
            s.split_once('|').ok_or_else(|| Error::Parse { what: "bi-partition", text: s.to_string() })?;
        Ok(BiPartition::new(top.parse()?, bottom.parse()?))
    }
}
