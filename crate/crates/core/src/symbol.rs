//! β-sets, reduced symbols, group families and the Υ bijection.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{parse_row, write_row, BiPartition, Partition};

/// A finite set of non-negative integers, stored strictly decreasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaSet {
    entries: Vec<u32>,
}

impl BetaSet {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotStrictlyDecreasing(entries));
        }
        Ok(BetaSet { entries })
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

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.entries.binary_search_by(|probe| v.cmp(probe)).is_ok()
    }

    /// `a_i - (m - i)` for each entry, as a partition.
    pub fn to_partition(&self) -> Partition {
        let m = self.len() as u32;
        let parts = self.entries.iter().enumerate().map(|(i, &a)| a - (m - 1 - i as u32)).collect();
        Partition::new(parts).expect("beta-set staircase is weakly decreasing")
    }

    /// The β-set of length `m` whose staircase-subtracted parts are `p`.
    /// `m` must be at least the number of non-zero parts.
    pub fn from_partition(p: &Partition, m: usize) -> BetaSet {
        debug_assert!(m >= p.len());
        let entries = (0..m).map(|i| p.part(i) + (m - 1 - i) as u32).collect();
        BetaSet { entries }
    }

    fn shifted(&self) -> BetaSet {
        let mut entries: Vec<u32> = self.entries.iter().map(|a| a + 1).collect();
        entries.push(0);
        BetaSet { entries }
    }
}

impl fmt::Display for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.entries)
    }
}

/// A reduced symbol `(top; bottom)`. Construction always reduces.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    top: BetaSet,
    bottom: BetaSet,
}

impl Symbol {
    /// Builds the reduced representative of the symbol with the given rows.
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self> {
        Ok(Symbol::from_beta_sets(BetaSet::new(top)?, BetaSet::new(bottom)?))
    }

    pub fn from_beta_sets(top: BetaSet, bottom: BetaSet) -> Self {
        let mut s = Symbol { top, bottom };
        s.reduce_in_place();
        s
    }

    fn reduce_in_place(&mut self) {
        while self.top.entries.last() == Some(&0) && self.bottom.entries.last() == Some(&0) {
            self.top.entries.pop();
            self.bottom.entries.pop();
            self.top.entries.iter_mut().for_each(|a| *a -= 1);
            self.bottom.entries.iter_mut().for_each(|b| *b -= 1);
        }
    }

    pub fn top(&self) -> &BetaSet {
        &self.top
    }

    pub fn bottom(&self) -> &BetaSet {
        &self.bottom
    }

    /// One application of the equivalence shift: add 1 everywhere, append 0
    /// to both rows. The result is returned as raw rows since it is not
    /// reduced.
    pub fn shifted_rows(&self) -> (BetaSet, BetaSet) {
        (self.top.shifted(), self.bottom.shifted())
    }

    pub fn rank(&self) -> u32 {
        rank_of_rows(self.top.entries(), self.bottom.entries())
    }

    pub fn defect(&self) -> i32 {
        self.top.len() as i32 - self.bottom.len() as i32
    }

    pub fn rank_defect(&self) -> (u32, i32) {
        (self.rank(), self.defect())
    }

    pub fn transpose(&self) -> Symbol {
        Symbol { top: self.bottom.clone(), bottom: self.top.clone() }
    }

    /// Total number of entries in both rows.
    pub fn entry_count(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    /// All entries of both rows, sorted decreasing.
    pub fn merged_entries(&self) -> Vec<u32> {
        let mut z: Vec<u32> = self.top.entries.iter().chain(&self.bottom.entries).copied().collect();
        z.sort_unstable_by(|a, b| b.cmp(a));
        z
    }

    pub fn upsilon(&self) -> BiPartition {
        BiPartition::new(self.top.to_partition(), self.bottom.to_partition())
    }

    /// The unique reduced symbol of defect `delta` whose Υ-image is `b`.
    pub fn upsilon_inv(b: &BiPartition, delta: i32) -> Symbol {
        let l1 = b.top.len() as i64;
        let l2 = b.bottom.len() as i64;
        let m1 = l1.max(l2 + i64::from(delta));
        let m2 = m1 - i64::from(delta);
        let top = BetaSet::from_partition(&b.top, m1 as usize);
        let bottom = BetaSet::from_partition(&b.bottom, m2 as usize);
        Symbol::from_beta_sets(top, bottom)
    }

    /// Whether the symbol lies in `S_G` for the given group.
    pub fn belongs_to(&self, g: GroupTag) -> bool {
        g.kind.admits(self.defect()) && self.rank() == g.n
    }

    /// The ε-linear-order key: compares the Υ-row selected by `eps` first by
    /// norm, then lexicographically, then the other row lexicographically.
    pub fn linear_key(&self, eps: Sign) -> (u32, Partition, Partition) {
        let BiPartition { top, bottom } = self.upsilon();
        match eps {
            Sign::Plus => (top.norm(), top, bottom),
            Sign::Minus => (bottom.norm(), bottom, top),
        }
    }
}

/// `Σa + Σb - ⌊((|A|+|B|-1)/2)²⌋` on raw rows, equivalent symbols agree.
pub fn rank_of_rows(top: &[u32], bottom: &[u32]) -> u32 {
    let sum: u64 = top.iter().chain(bottom).map(|&v| u64::from(v)).sum();
    let count = (top.len() + bottom.len()) as u64;
    let half = count.saturating_sub(1) / 2;
    // ⌊((c-1)/2)²⌋ is h² for odd c and h(h+1) for even c, with h = ⌊(c-1)/2⌋.
    let staircase = if count == 0 {
        0
    } else if count % 2 == 1 {
        half * half
    } else {
        half * (half + 1)
    };
    (sum - staircase) as u32
}

/// `n - ‖Υ(Λ)‖` for any symbol of defect `delta`.
pub fn defect_offset(delta: i32) -> u32 {
    let d = i64::from(delta);
    let c = if d % 2 == 0 { (d / 2) * (d / 2) } else { (d + 1) * (d - 1) / 4 };
    c as u32
}

/// Compares two symbols of the same family under the ε-linear order.
pub fn linear_cmp(s: &Symbol, t: &Symbol, eps: Sign) -> Result<Ordering> {
    if s.rank_defect() != t.rank_defect() {
        return Err(Error::FamilyMismatch(s.to_string(), t.to_string()));
    }
    if !eps.orders_defect(s.defect()) {
        return Err(Error::IncompatibleSign { eps: eps.as_char(), delta: s.defect() });
    }
    Ok(s.linear_key(eps).cmp(&t.linear_key(eps)))
}

/// All reduced symbols of rank `n` and defect `delta`, in Υ-enumeration order.
pub fn enumerate_family(n: u32, delta: i32) -> Vec<Symbol> {
    let offset = defect_offset(delta);
    if n < offset {
        return Vec::new();
    }
    BiPartition::all(n - offset).iter().map(|b| Symbol::upsilon_inv(b, delta)).collect()
}

/// `S_{n,δ}` sorted by the ε-linear order.
pub fn sorted_family(n: u32, delta: i32, eps: Sign) -> Vec<Symbol> {
    let mut members = enumerate_family(n, delta);
    members.sort_by_cached_key(|s| s.linear_key(eps));
    members
}

/// Defects `δ` whose family `S_{n,δ}` makes up `S_G`, decreasing.
pub fn family_of(g: GroupTag) -> Vec<i32> {
    // ⌊(δ/2)²⌋ <= n bounds |δ| by 2√n + 2.
    let bound = 2 * (g.n as f64).sqrt() as i32 + 3;
    (-bound..=bound).rev().filter(|&d| g.kind.admits(d) && floor_quarter_square(d) <= g.n).collect()
}

fn floor_quarter_square(d: i32) -> u32 {
    (i64::from(d) * i64::from(d) / 4) as u32
}

/// The special symbol with the same entries as `s`, together with every
/// reduced symbol built from those entries whose defect is admissible for the
/// entry count: `δ ≡ 1 (mod 4)` for an odd count, any even `δ` otherwise.
pub fn special_closure(s: &Symbol) -> (Symbol, Vec<Symbol>) {
    let z = s.merged_entries();
    let special_top: Vec<u32> = z.iter().step_by(2).copied().collect();
    let special_bottom: Vec<u32> = z.iter().skip(1).step_by(2).copied().collect();
    let special = Symbol::new(special_top, special_bottom).expect("interlaced rows are strictly decreasing");

    let odd = z.len() % 2 == 1;
    let mut family = BTreeSet::new();
    // Split the multiset into runs of equal values. A value occurring twice
    // must go to both rows; a single value goes to either row.
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &v in &z {
        match runs.last_mut() {
            Some((w, c)) if *w == v => *c += 1,
            _ => runs.push((v, 1)),
        }
    }
    let singles: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].1 == 1).collect();
    for mask in 0u64..(1u64 << singles.len()) {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        let mut single_idx = 0;
        for (i, &(v, c)) in runs.iter().enumerate() {
            if c == 2 {
                top.push(v);
                bottom.push(v);
            } else {
                debug_assert_eq!(singles[single_idx], i);
                if mask >> single_idx & 1 == 0 {
                    top.push(v);
                } else {
                    bottom.push(v);
                }
                single_idx += 1;
            }
        }
        // Skip assignments that would need a shift to become reduced: they
        // have different entries once reduced.
        if top.last() == Some(&0) && bottom.last() == Some(&0) {
            continue;
        }
        let delta = top.len() as i32 - bottom.len() as i32;
        let admissible = if odd { delta.rem_euclid(4) == 1 } else { delta % 2 == 0 };
        if admissible {
            family.insert(Symbol::new(top, bottom).expect("rows built strictly decreasing"));
        }
    }
    (special, family.into_iter().collect())
}

/// Whether `s` is special: defect 0 or 1 with weakly decreasing interlaced entries.
pub fn is_special(s: &Symbol) -> bool {
    let (closure, _) = special_closure(s);
    closure == *s
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.top, self.bottom)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (top, bottom) = s.split_once(';').ok_or_else(|| Error::Parse { what: "symbol", text: s.to_string() })?;
        Symbol::new(parse_row(top, "symbol row")?, parse_row(bottom, "symbol row")?)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Type of the orthogonal member of a dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Whether the ε-linear order is defined on families of this defect.
    pub fn orders_defect(self, delta: i32) -> bool {
        matches!((self, delta.rem_euclid(4)), (_, 1) | (Sign::Plus, 0) | (Sign::Minus, 2))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse { what: "sign", text: other.to_string() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Sp,
    OPlus,
    OMinus,
}

impl GroupKind {
    /// Residue of the admissible defects modulo 4.
    pub fn residue(self) -> i32 {
        match self {
            GroupKind::Sp => 1,
            GroupKind::OPlus => 0,
            GroupKind::OMinus => 2,
        }
    }

    pub fn admits(self, delta: i32) -> bool {
        delta.rem_euclid(4) == self.residue()
    }

    pub fn is_symplectic(self) -> bool {
        self == GroupKind::Sp
    }

    /// The ε of an orthogonal kind.
    pub fn orthogonal_sign(self) -> Option<Sign> {
        match self {
            GroupKind::Sp => None,
            GroupKind::OPlus => Some(Sign::Plus),
            GroupKind::OMinus => Some(Sign::Minus),
        }
    }

    pub fn orthogonal(eps: Sign) -> GroupKind {
        match eps {
            Sign::Plus => GroupKind::OPlus,
            Sign::Minus => GroupKind::OMinus,
        }
    }

    /// The kind whose family contains symbols of defect `delta`, if any.
    pub fn of_defect(delta: i32) -> Option<GroupKind> {
        match delta.rem_euclid(4) {
            0 => Some(GroupKind::OPlus),
            1 => Some(GroupKind::Sp),
            2 => Some(GroupKind::OMinus),
            _ => None,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            GroupKind::Sp => "Sp",
            GroupKind::OPlus => "O+",
            GroupKind::OMinus => "O-",
        }
    }
}

/// Writes the series name: `Sp`, `O+` or `O-`.
impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        [GroupKind::Sp, GroupKind::OPlus, GroupKind::OMinus]
            .into_iter()
            .find(|k| k.prefix() == text)
            .ok_or_else(|| Error::Parse { what: "series", text: text.to_string() })
    }
}

/// `Sp_{2n}`, `O^+_{2n}` or `O^-_{2n}`; `n` is half the matrix size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupTag {
    pub kind: GroupKind,
    pub n: u32,
}

impl GroupTag {
    pub fn new(kind: GroupKind, n: u32) -> Self {
        GroupTag { kind, n }
    }

    pub fn sp(n: u32) -> Self {
        GroupTag::new(GroupKind::Sp, n)
    }

    pub fn o_plus(n: u32) -> Self {
        GroupTag::new(GroupKind::OPlus, n)
    }

    pub fn o_minus(n: u32) -> Self {
        GroupTag::new(GroupKind::OMinus, n)
    }

    /// Every symbol of `S_G`, family by family in decreasing defect.
    pub fn symbols(self) -> Vec<Symbol> {
        family_of(self).into_iter().flat_map(|d| enumerate_family(self.n, d)).collect()
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), 2 * self.n)
    }
}

impl FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let err = || Error::Parse { what: "group", text: text.to_string() };
        let (kind, rest) = [GroupKind::Sp, GroupKind::OPlus, GroupKind::OMinus]
            .into_iter()
            .find_map(|k| text.strip_prefix(k.prefix()).map(|r| (k, r)))
            .ok_or_else(err)?;
        let size: u32 = rest.parse().map_err(|_| err())?;
        if !size.is_multiple_of(2) {
            return Err(err());
        }
        Ok(GroupTag::new(kind, size / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(text: &str) -> Symbol {
        text.parse().unwrap()
    }

    fn bp(text: &str) -> BiPartition {
        text.parse().unwrap()
    }

    #[test]
    fn rank_defect_examples() {
        assert_eq!(sym("-;-").rank_defect(), (0, 0));
        assert_eq!(sym("2,0;1").rank_defect(), (2, 1));
        assert_eq!(sym("3,2,1,0;-").rank_defect(), (4, 4));
        assert_eq!(sym("3,2;1,0").rank_defect(), (4, 0));
    }

    #[test]
    fn series_names_round_trip() {
        for k in [GroupKind::Sp, GroupKind::OPlus, GroupKind::OMinus] {
            assert_eq!(k.to_string().parse::<GroupKind>().unwrap(), k);
        }
        assert!("O".parse::<GroupKind>().is_err());
    }

    #[test]
    fn reduce_examples() {
        let s = Symbol::new(vec![3, 1, 0], vec![2, 0]).unwrap();
        assert_eq!(s, sym("2,0;1"));
        assert_eq!(sym("2,0;1").shifted_rows().0.entries(), &[3, 1, 0]);
        // Several inverse shifts in a row; rank is untouched.
        let s = Symbol::new(vec![4, 2, 1, 0], vec![3, 2, 1, 0]).unwrap();
        assert_eq!(s, sym("1;0"));
        assert_eq!(rank_of_rows(&[4, 2, 1, 0], &[3, 2, 1, 0]), s.rank());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn transpose_examples() {
        let t = sym("2,0;1").transpose();
        assert_eq!(t, sym("1;2,0"));
        assert_eq!(t.defect(), -1);
        let s = sym("3,2;1,0");
        assert_eq!(s.transpose(), sym("1,0;3,2"));
        assert_eq!(s.transpose().rank(), 4);
    }

    #[test]
    fn upsilon_examples() {
        assert_eq!(sym("9,4,2,1;5,4,2,0").upsilon(), bp("6,2,1,1|2,2,1"));
        assert_eq!(sym("-;-").upsilon(), bp("-|-"));
        assert_eq!(sym("4,1;3,1").upsilon(), bp("3,1|2,1"));
        assert_eq!(Symbol::upsilon_inv(&bp("6,2,1,1|2,2,1"), 0), sym("9,4,2,1;5,4,2,0"));
        assert_eq!(Symbol::upsilon_inv(&bp("-|-"), 1), sym("0;-"));
        assert_eq!(Symbol::upsilon_inv(&bp("3,1|2,1"), 0), sym("4,1;3,1"));
    }

    #[test]
    fn family_examples() {
        assert_eq!(enumerate_family(4, 0).len(), 20);
        assert_eq!(enumerate_family(4, -4), vec![sym("-;3,2,1,0")]);
        assert_eq!(enumerate_family(0, 1), vec![sym("0;-")]);
        assert!(enumerate_family(3, 4).is_empty());
        assert_eq!(family_of("O+8".parse().unwrap()), vec![4, 0, -4]);
        assert_eq!(family_of("Sp10".parse().unwrap()), vec![1, -3]);
        assert_eq!(family_of(GroupTag::sp(0)), vec![1]);
        assert_eq!(family_of(GroupTag::o_minus(2)), vec![2, -2]);
    }

    #[test]
    fn s40_order_matches_fixture_chain() {
        let chain = "3,2,1,0;4,3,2,1 2,1,0;4,2,1 1,0;3,2 1,0;4,1 0;4 3,1,0;3,2,1 2,0;3,1 1;3 \
                     2,1;2,1 2,1;3,0 3,0;2,1 2;2 3,2,1;3,1,0 3,1;2,0 3;1 4,3,2,1;3,2,1,0 \
                     4,2,1;2,1,0 3,2;1,0 4,1;1,0 4;0";
        let expect: Vec<Symbol> = chain.split_whitespace().map(sym).collect();
        assert_eq!(sorted_family(4, 0, Sign::Plus), expect);
        assert_eq!(linear_cmp(&expect[0], &expect[1], Sign::Plus).unwrap(), Ordering::Less);
        assert!(linear_cmp(&expect[0], &expect[1], Sign::Minus).is_err());
        assert!(linear_cmp(&expect[0], &sym("2,0;1"), Sign::Plus).is_err());
    }

    #[test]
    fn special_closure_examples() {
        let (z, family) = special_closure(&sym("2,0;1"));
        assert_eq!(z, sym("2,0;1"));
        let mut expect = vec![sym("2,0;1"), sym("2,1;0"), sym("1,0;2"), sym("-;2,1,0")];
        expect.sort();
        assert_eq!(family, expect);
        assert!(family.iter().all(|s| s.rank() == 2));

        let (z, family) = special_closure(&sym("-;-"));
        assert_eq!(z, sym("-;-"));
        assert_eq!(family, vec![sym("-;-")]);

        let (z, family) = special_closure(&sym("1;3"));
        assert_eq!(z, sym("3;1"));
        let mut expect = vec![sym("3;1"), sym("1;3"), sym("3,1;-"), sym("-;3,1")];
        expect.sort();
        assert_eq!(family, expect);
    }

    #[test]
    fn group_text() {
        for text in ["Sp10", "O+8", "O-4", "Sp0"] {
            assert_eq!(text.parse::<GroupTag>().unwrap().to_string(), text);
        }
        assert_eq!("O-4".parse::<GroupTag>().unwrap(), GroupTag::o_minus(2));
        assert!("Sp9".parse::<GroupTag>().is_err());
        assert!("U4".parse::<GroupTag>().is_err());
    }

    #[test]
    fn symbol_text() {
        assert_eq!(sym("3,2,1,0;-").to_string(), "3,2,1,0;-");
        assert_eq!(sym("-;3,2,1,0").to_string(), "-;3,2,1,0");
        assert!("2,2;1".parse::<Symbol>().is_err());
        assert!("2,1".parse::<Symbol>().is_err());
    }
}
