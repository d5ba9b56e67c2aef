//! The Θ-relation between symbol families of a symplectic/even-orthogonal
//! dual pair, and its decomposition into blocks `Θ_k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::correspond::theta_k_map;
use crate::error::{Error, Result};
use crate::order::ord_closed;
use crate::partition::BiPartition;
use crate::symbol::{enumerate_family, GroupKind, GroupTag, Sign, Symbol};

/// An ordered dual pair `(G, G')`: one symplectic and one even orthogonal group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualPair {
    pub first: GroupTag,
    pub second: GroupTag,
}

impl DualPair {
    pub fn new(first: GroupTag, second: GroupTag) -> Result<Self> {
        if first.kind.is_symplectic() == second.kind.is_symplectic() {
            return Err(Error::InvalidPair(format!("{first},{second}")));
        }
        Ok(DualPair { first, second })
    }

    /// The type of the orthogonal member.
    pub fn eps(&self) -> Sign {
        self.first.kind.orthogonal_sign().or(self.second.kind.orthogonal_sign()).expect("one member is orthogonal")
    }

    pub fn reversed(&self) -> DualPair {
        DualPair { first: self.second, second: self.first }
    }

    pub fn symplectic(&self) -> GroupTag {
        if self.first.kind.is_symplectic() {
            self.first
        } else {
            self.second
        }
    }

    pub fn orthogonal(&self) -> GroupTag {
        if self.first.kind.is_symplectic() {
            self.second
        } else {
            self.first
        }
    }

    /// Stable range as used for the unique-maximum property of `θ_0`:
    /// `n_O ≤ n_Sp / 2` when the orthogonal group is `O^+_{2n}` or `O^-_{2n}`
    /// paired with a larger symplectic group, `n_Sp ≤ n_O / 2` against
    /// `O^+_{2n'}`, and `n_Sp ≤ (n_O - 1) / 2` against `O^-_{2n'}`.
    pub fn stable_range(&self) -> bool {
        let (n, n2) = (self.first.n, self.second.n);
        match (self.first.kind, self.second.kind) {
            (GroupKind::Sp, GroupKind::OMinus) => n2 > 2 * n,
            _ => n2 >= 2 * n,
        }
    }

    /// `d` with `δ = 4d + r` for the residue `r` of the first member.
    pub fn d(&self, delta: i32) -> i32 {
        (delta - self.first.kind.residue()).div_euclid(4)
    }

    pub fn tau(&self, delta: i32) -> i64 {
        let n = i64::from(self.first.n);
        let n2 = i64::from(self.second.n);
        let d = i64::from(self.d(delta));
        match self.eps() {
            Sign::Plus => n2 - n + 2 * d,
            Sign::Minus => n2 - n - 1 - 2 * d,
        }
    }

    /// Defect of every symbol Θ-related to a symbol of defect `delta`.
    pub fn target_defect(&self, delta: i32) -> i32 {
        match self.eps() {
            Sign::Plus => -delta + 1,
            Sign::Minus => -delta - 1,
        }
    }

    /// Checks that `s` lies in `S_G` for the first member.
    pub fn check_source(&self, s: &Symbol) -> Result<()> {
        check_member(s, self.first)
    }
}

pub(crate) fn check_member(s: &Symbol, g: GroupTag) -> Result<()> {
    if s.belongs_to(g) {
        Ok(())
    } else {
        Err(Error::NotInFamily { symbol: s.to_string(), group: g.to_string() })
    }
}

impl fmt::Display for DualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

impl FromStr for DualPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse { what: "dual pair", text: s.to_string() })?;
        DualPair::new(a.parse()?, b.parse()?)
    }
}

impl Serialize for DualPair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The `B^ε` test on two symbols. Symmetric in its arguments.
pub fn b_relation(s: &Symbol, t: &Symbol, eps: Sign) -> bool {
    let BiPartition { top: lam, bottom: mu } = s.upsilon();
    let BiPartition { top: lam2, bottom: mu2 } = t.upsilon();
    match eps {
        Sign::Plus => t.defect() == -s.defect() + 1 && mu.interleaves(&lam2) && mu2.interleaves(&lam),
        Sign::Minus => t.defect() == -s.defect() - 1 && lam.interleaves(&mu2) && lam2.interleaves(&mu),
    }
}

/// Whether `(s, t)` is in the Θ-relation of `pair`, with `s` in the first
/// member's family and `t` in the second's.
pub fn related(s: &Symbol, t: &Symbol, pair: &DualPair) -> Result<bool> {
    check_member(s, pair.first)?;
    check_member(t, pair.second)?;
    Ok(b_relation(s, t, pair.eps()))
}

/// `Θ_{G'}(Λ)_k` with its distinguished element and order-maximal members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaBlock {
    pub k: u32,
    pub members: Vec<Symbol>,
    #[serde(rename = "theta_k")]
    pub distinguished: Option<Symbol>,
    #[serde(rename = "max_order")]
    pub max_order_members: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaSet {
    #[serde(rename = "symbol")]
    pub source: Symbol,
    pub pair: DualPair,
    pub tau: i64,
    pub blocks: Vec<ThetaBlock>,
}

impl ThetaSet {
    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|b| b.members.is_empty())
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.members.len()).sum()
    }

    /// All members, block by block.
    pub fn members(&self) -> impl Iterator<Item = &Symbol> {
        self.blocks.iter().flat_map(|b| b.members.iter())
    }

    pub fn block_of(&self, t: &Symbol) -> Option<u32> {
        self.blocks.iter().find(|b| b.members.contains(t)).map(|b| b.k)
    }

    pub fn contains(&self, t: &Symbol) -> bool {
        self.block_of(t).is_some()
    }

    /// Order-maximal members across all blocks.
    pub fn max_order_members(&self) -> impl Iterator<Item = &Symbol> {
        self.blocks.iter().flat_map(|b| b.max_order_members.iter())
    }
}

/// Largest block index: `λ_1` for `ε = +`, `μ_1` for `ε = -`.
pub fn max_block(s: &Symbol, eps: Sign) -> u32 {
    let b = s.upsilon();
    match eps {
        Sign::Plus => b.top.first(),
        Sign::Minus => b.bottom.first(),
    }
}

/// Order used to list the members of a block after `θ_k`: the target-side
/// linear order with the roles of the two Υ-rows exchanged.
pub fn block_member_cmp(a: &Symbol, b: &Symbol, eps: Sign) -> Ordering {
    let other = match eps {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    };
    let (_, a1, a2) = a.linear_key(other);
    let (_, b1, b2) = b.linear_key(other);
    (a1, a2).cmp(&(b1, b2))
}

/// `Θ_{G'}(Λ)` split into blocks, built constructively: remove a horizontal
/// strip of `k` boxes from one Υ-row of `Λ` and add a horizontal strip of
/// `k + τ` boxes to the other.
pub fn theta_set(s: &Symbol, pair: &DualPair) -> Result<ThetaSet> {
    pair.check_source(s)?;
    let eps = pair.eps();
    let delta = s.defect();
    let tau = pair.tau(delta);
    let target_delta = pair.target_defect(delta);
    let BiPartition { top: lam, bottom: mu } = s.upsilon();
    let (shrink, grow) = match eps {
        Sign::Plus => (&lam, &mu),
        Sign::Minus => (&mu, &lam),
    };
    let kmax = shrink.first();
    let mut raw: Vec<Vec<Symbol>> = vec![Vec::new(); kmax as usize + 1];
    for removed in shrink.horizontal_strip_removals() {
        let k = shrink.norm() - removed.norm();
        let added = i64::from(k) + tau;
        if added < 0 {
            continue;
        }
        for enlarged in grow.horizontal_strip_additions(added as u32) {
            let image = match eps {
                Sign::Plus => BiPartition::new(enlarged, removed.clone()),
                Sign::Minus => BiPartition::new(removed.clone(), enlarged),
            };
            raw[k as usize].push(Symbol::upsilon_inv(&image, target_delta));
        }
    }

    let ords: Vec<Vec<i64>> = raw.iter().map(|b| b.iter().map(ord_closed).collect()).collect();
    let top_ord = ords.iter().flatten().copied().max();
    let mut blocks = Vec::with_capacity(raw.len());
    for (k, (mut members, block_ords)) in raw.into_iter().zip(ords).enumerate() {
        let max_order_members: Vec<Symbol> =
            members.iter().zip(&block_ords).filter(|(_, &o)| Some(o) == top_ord).map(|(m, _)| m.clone()).collect();
        let distinguished = if tau >= 0 { Some(theta_k_map(s, pair, k as u32)?) } else { None };
        members.sort_by(|a, b| {
            let first = |x: &Symbol| Some(x) != distinguished.as_ref();
            first(a).cmp(&first(b)).then_with(|| block_member_cmp(a, b, eps))
        });
        let mut max_order_members = max_order_members;
        max_order_members.sort_by(|a, b| block_member_cmp(a, b, eps));
        blocks.push(ThetaBlock { k: k as u32, members, distinguished, max_order_members });
    }
    Ok(ThetaSet { source: s.clone(), pair: *pair, tau, blocks })
}

/// Brute-force `Θ_{G'}(Λ)`: filter the whole target family through the
/// relation test. Returned in target Υ-enumeration order.
pub fn theta_set_by_filter(s: &Symbol, pair: &DualPair) -> Result<Vec<Symbol>> {
    pair.check_source(s)?;
    let target_delta = pair.target_defect(s.defect());
    Ok(enumerate_family(pair.second.n, target_delta).into_iter().filter(|t| b_relation(s, t, pair.eps())).collect())
}

/// Interleaving test on β-sets: for `|B| = |A|` it is
/// `b_1 ≥ a_1 > b_2 ≥ a_2 > ...`; for `|B| = |A| + 1` it is
/// `b_1 > a_1 ≥ b_2 > ... > a_m ≥ b_{m+1}`. `None` for other lengths.
pub fn beta_interleaves(a: &[u32], b: &[u32]) -> Option<bool> {
    let m = a.len();
    if b.len() == m {
        Some((0..m).all(|i| b[i] >= a[i] && (i + 1 == m || a[i] > b[i + 1])))
    } else if b.len() == m + 1 {
        Some((0..m).all(|i| b[i] > a[i] && a[i] >= b[i + 1]))
    } else {
        None
    }
}

fn shift_rows(s: &Symbol, times: usize) -> (Vec<u32>, Vec<u32>) {
    let shift = |row: &[u32]| -> Vec<u32> {
        let t = times as u32;
        row.iter().map(|v| v + t).chain((0..t).rev()).collect()
    };
    (shift(s.top().entries()), shift(s.bottom().entries()))
}

/// The `B^ε` test evaluated directly on symbol entries: both symbols are
/// shifted until the row lengths fit the β-set criterion.
pub fn b_relation_by_entries(s: &Symbol, t: &Symbol, eps: Sign) -> bool {
    let expected = match eps {
        Sign::Plus => -s.defect() + 1,
        Sign::Minus => -s.defect() - 1,
    };
    if t.defect() != expected {
        return false;
    }
    // ε=+ needs |t.top| - |s.bottom| ∈ {0, 1}; ε=- needs |t.bottom| - |s.top| ∈ {0, 1}.
    let gap = match eps {
        Sign::Plus => t.top().len() as i64 - s.bottom().len() as i64,
        Sign::Minus => t.bottom().len() as i64 - s.top().len() as i64,
    };
    // Shift s by `ss` and t by `ts` so the gap becomes 0.
    let (ss, ts) = if gap >= 0 { (gap as usize, 0) } else { (0, (-gap) as usize) };
    let (a, b) = shift_rows(s, ss);
    let (a2, b2) = shift_rows(t, ts);
    let ok = |x: &[u32], y: &[u32]| beta_interleaves(x, y).expect("row lengths normalized");
    match eps {
        Sign::Plus => ok(&b, &a2) && ok(&b2, &a),
        Sign::Minus => ok(&a, &b2) && ok(&a2, &b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(text: &str) -> Symbol {
        text.parse().unwrap()
    }

    fn pair(text: &str) -> DualPair {
        text.parse().unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(pair("O+8,Sp10").tau(0), 1);
        assert_eq!(pair("O+30,Sp30").tau(0), 0);
        for n2 in 0..6 {
            let p = DualPair::new(GroupTag::sp(0), GroupTag::o_plus(n2)).unwrap();
            assert_eq!(p.tau(1), i64::from(n2));
        }
        assert_eq!(pair("Sp10,O+8").tau(1), -1);
        assert_eq!(pair("O+8,Sp10").target_defect(4), -3);
        assert_eq!(pair("Sp10,O-8").target_defect(1), -2);
        assert!("Sp4,Sp6".parse::<DualPair>().is_err());
        assert!("O+4,O-6".parse::<DualPair>().is_err());
    }

    #[test]
    fn related_examples() {
        let p = pair("O+8,Sp10");
        assert!(related(&sym("0;4"), &sym("5,1;0"), &p).unwrap());
        assert!(related(&sym("4;0"), &sym("2,0;4"), &p).unwrap());
        let lonely = sym("-;3,2,1,0");
        assert!(enumerate_family(5, 5).iter().all(|t| !b_relation(&lonely, t, Sign::Plus)));
        assert!(theta_set(&lonely, &p).unwrap().is_empty());
        assert!(related(&sym("2,0;1"), &sym("5,1;0"), &p).is_err());
    }

    #[test]
    fn theta_set_row_2_2() {
        let t = theta_set(&sym("2;2"), &pair("O+8,Sp10")).unwrap();
        let blocks: Vec<Vec<String>> =
            t.blocks.iter().map(|b| b.members.iter().map(|m| m.to_string()).collect()).collect();
        assert_eq!(
            blocks,
            vec![vec!["3,1;2", "4,0;2"], vec!["3,2;1", "4,1;1", "5,0;1"], vec!["4,2;0", "5,1;0", "5;-"],]
        );
        let max: Vec<String> = t.max_order_members().map(|m| m.to_string()).collect();
        assert_eq!(max, vec!["3,1;2", "3,2;1"]);
    }

    #[test]
    fn theta_set_of_rank_seven_source() {
        let t = theta_set(&sym("3,2,1,0;-"), &pair("O+8,Sp10")).unwrap();
        assert_eq!(t.blocks.len(), 1);
        assert_eq!(t.blocks[0].members, vec![sym("3;3,2,1,0")]);

        let s = sym("4,1;3,1");
        let to8: Vec<Symbol> = theta_set(&s, &pair("O+14,Sp8")).unwrap().members().cloned().collect();
        assert_eq!(to8, vec![sym("3,1;1")]);
        let mut to10: Vec<Symbol> = theta_set(&s, &pair("O+14,Sp10")).unwrap().members().cloned().collect();
        to10.sort();
        // (3,1;2) has Υ = [2,1|2] and satisfies both interleavings with [3,1|2,1].
        let mut expect = vec![sym("4,1;1"), sym("3,2;1"), sym("4,2,1;2,0"), sym("4,2,0;2,1"), sym("3,1;2")];
        expect.sort();
        assert_eq!(to10, expect);
    }

    #[test]
    fn orientation_does_not_matter() {
        let p = pair("O+8,Sp10");
        for s in enumerate_family(4, 0) {
            for t in enumerate_family(5, 1) {
                assert_eq!(b_relation(&s, &t, Sign::Plus), b_relation(&t, &s, Sign::Plus));
                assert_eq!(related(&s, &t, &p).unwrap(), related(&t, &s, &p.reversed()).unwrap());
            }
        }
    }

    #[test]
    fn beta_interleaving_matches_partitions() {
        // Every β-set pair of lengths (m, m) or (m, m+1) with entries below 7.
        let sets: Vec<Vec<u32>> =
            (0u32..128).map(|mask| (0..7).rev().filter(|b| mask >> b & 1 == 1).collect()).collect();
        for a in &sets {
            for b in &sets {
                if let Some(by_entries) = beta_interleaves(a, b) {
                    let pa = crate::symbol::BetaSet::new(a.clone()).unwrap().to_partition();
                    let pb = crate::symbol::BetaSet::new(b.clone()).unwrap().to_partition();
                    assert_eq!(by_entries, pa.interleaves(&pb), "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn stable_range_flags() {
        assert!(pair("O-4,Sp10").stable_range());
        assert!(pair("Sp0,O+10").stable_range());
        assert!(!pair("O+8,Sp10").stable_range());
        assert!(pair("Sp4,O-10").stable_range());
        assert!(!pair("Sp4,O-8").stable_range());
    }
}
