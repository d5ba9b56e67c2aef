//! The maps `θ_k`, the peak index `k_0`, and the one-to-one correspondences
//! `θ̲` (underline) and `θ̄` (overline).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::order::ord_closed;
use crate::partition::BiPartition;
use crate::symbol::{sorted_family, GroupKind, GroupTag, Sign, Symbol};
use crate::theta::{check_member, max_block, theta_set, DualPair, ThetaSet};

fn require_tau(pair: &DualPair, s: &Symbol) -> Result<i64> {
    let tau = pair.tau(s.defect());
    if tau < 0 {
        return Err(Error::NegativeTau(tau));
    }
    Ok(tau)
}

/// `θ_k(Λ)`. For `ε = +` the Υ-image is `[μ ∪ {τ+k} | λ_2,... ∪ {λ_1-k}]`,
/// for `ε = -` it is `[μ_2,... ∪ {μ_1-k} | λ ∪ {τ+k}]`.
pub fn theta_k_map(s: &Symbol, pair: &DualPair, k: u32) -> Result<Symbol> {
    pair.check_source(s)?;
    let tau = require_tau(pair, s)?;
    let eps = pair.eps();
    let max = max_block(s, eps);
    if k > max {
        return Err(Error::BlockOutOfRange { k, max });
    }
    let BiPartition { top: lam, bottom: mu } = s.upsilon();
    let grown = (tau + i64::from(k)) as u32;
    let image = match eps {
        Sign::Plus => {
            let rest = lam.without_part(lam.first()).expect("first part is present");
            BiPartition::new(mu.with_part(grown), rest.with_part(lam.first() - k))
        }
        Sign::Minus => {
            let rest = mu.without_part(mu.first()).expect("first part is present");
            BiPartition::new(rest.with_part(mu.first() - k), lam.with_part(grown))
        }
    };
    Ok(Symbol::upsilon_inv(&image, pair.target_defect(s.defect())))
}

/// `θ_0(Λ)` through the entry formulas where they apply (`τ = 0`, or `τ` at
/// least the first part of the growing Υ-row), otherwise through
/// [`theta_k_map`].
pub fn theta_zero_closed(s: &Symbol, pair: &DualPair) -> Result<Symbol> {
    pair.check_source(s)?;
    let tau = require_tau(pair, s)?;
    let a = s.top().entries();
    let b = s.bottom().entries();
    let bumped = |row: &[u32]| -> Vec<u32> { row.iter().map(|v| v + 1).chain([0]).collect() };
    let ups = s.upsilon();
    let symbol = match pair.eps() {
        Sign::Plus if tau == 0 => Symbol::new(bumped(b), a.to_vec())?,
        Sign::Plus if tau >= i64::from(ups.bottom.first()) => {
            let head = tau as u32 + b.len() as u32;
            Symbol::new([head].into_iter().chain(b.iter().copied()).collect(), a.to_vec())?
        }
        Sign::Minus if tau == 0 => Symbol::new(b.to_vec(), bumped(a))?,
        Sign::Minus if tau >= i64::from(ups.top.first()) => {
            let head = tau as u32 + a.len() as u32;
            Symbol::new(b.to_vec(), [head].into_iter().chain(a.iter().copied()).collect())?
        }
        _ => return theta_k_map(s, pair, 0),
    };
    Ok(symbol)
}

/// Bookkeeping for the peak of `k ↦ ord(θ_k(Λ))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeakDiagnostics {
    /// Entry of the growing row that `θ_k → θ_{k+1}` raises by one.
    pub alpha: Vec<i64>,
    /// Entry of the shrinking row that `θ_k → θ_{k+1}` lowers by one.
    pub beta: Vec<i64>,
    /// `ord(θ_k(Λ))` for every `k`.
    pub orders: Vec<i64>,
    pub k0: u32,
    /// Whether `θ_{k0}` and `θ_{k0+1}` share the maximal order.
    pub tie: bool,
}

impl PeakDiagnostics {
    /// Direction of `ord(θ_k) → ord(θ_{k+1})` predicted from `α_k, β_k`:
    /// `1` rising, `0` flat, `-1` falling.
    pub fn predicted_step(&self, k: usize, eps: Sign) -> i32 {
        let (inc, dec) = match eps {
            Sign::Plus => (self.alpha[k], self.beta[k]),
            Sign::Minus => (self.beta[k], self.alpha[k]),
        };
        if inc + 2 <= dec {
            1
        } else if inc + 1 == dec {
            0
        } else {
            -1
        }
    }
}

/// Computes `ord(θ_k(Λ))` for every `k`, the peak `k_0` (first argmax), and
/// the `α_k`, `β_k` sequences read off the raw symbol coordinates of
/// `θ_k(Λ)`, where the growing row has one more entry than the matching row
/// of `Λ` and the shrinking row keeps its length.
pub fn find_k0(s: &Symbol, pair: &DualPair) -> Result<PeakDiagnostics> {
    pair.check_source(s)?;
    let tau = require_tau(pair, s)?;
    let eps = pair.eps();
    let kmax = max_block(s, eps);
    let orders = (0..=kmax).map(|k| theta_k_map(s, pair, k).map(|t| ord_closed(&t))).collect::<Result<Vec<_>>>()?;
    let best = *orders.iter().max().expect("at least k = 0");
    let k0 = orders.iter().position(|&o| o == best).expect("max is attained");
    let tie = orders.get(k0 + 1) == Some(&best);

    let BiPartition { top: lam, bottom: mu } = s.upsilon();
    let (m1, m2) = (s.top().len(), s.bottom().len());
    let pad =
        |p: &crate::partition::Partition, m: usize| -> Vec<i64> { (0..m).map(|i| i64::from(p.part(i))).collect() };
    let (lam, mu) = (pad(&lam, m1), pad(&mu, m2));
    // Inserting `y` into the growing row, placed before equal parts.
    let grow_entry = |row: &[i64], y: i64| -> i64 {
        let q = 1 + row.iter().filter(|&&v| v > y).count() as i64;
        y + (row.len() as i64 + 1) - q
    };
    // Lowering the first part of the shrinking row to `x`, placed after equal parts.
    let shrink_entry = |row: &[i64], x: i64| -> i64 {
        let p = 1 + row.iter().skip(1).filter(|&&v| v >= x).count() as i64;
        x + row.len() as i64 - p
    };
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for k in 0..=i64::from(kmax) {
        let y = tau + k;
        match eps {
            Sign::Plus => {
                alpha.push(grow_entry(&mu, y));
                beta.push(shrink_entry(&lam, lam.first().copied().unwrap_or(0) - k));
            }
            Sign::Minus => {
                alpha.push(shrink_entry(&mu, mu.first().copied().unwrap_or(0) - k));
                beta.push(grow_entry(&lam, y));
            }
        }
    }
    Ok(PeakDiagnostics { alpha, beta, orders, k0: k0 as u32, tie })
}

/// `θ̲_{G'}(Λ)`: `θ_0(Λ)` when `τ ≥ 0`; otherwise the unique `Λ'` with
/// `θ_0(Λ') = Λ` for the reversed pair, if there is one.
pub fn underline_theta(s: &Symbol, pair: &DualPair) -> Result<Option<Symbol>> {
    pair.check_source(s)?;
    let tau = pair.tau(s.defect());
    if tau >= 0 {
        return theta_k_map(s, pair, 0).map(Some);
    }
    let missing = (-tau) as u32;
    let BiPartition { top: lam, bottom: mu } = s.upsilon();
    let image = match pair.eps() {
        Sign::Plus => lam.without_part(missing).map(|rest| BiPartition::new(mu, rest)),
        Sign::Minus => mu.without_part(missing).map(|rest| BiPartition::new(rest, lam)),
    };
    Ok(image.map(|b| Symbol::upsilon_inv(&b, pair.target_defect(s.defect()))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub source: Symbol,
    pub underline: Option<Symbol>,
    pub overline: Option<Symbol>,
    /// `|Θ♭(Λ)|` at the moment `θ̄(Λ)` was chosen; only defined for `τ ≥ 0`.
    #[serde(skip)]
    pub theta_flat_size: Option<usize>,
    pub k0: Option<u32>,
    pub tie: Option<bool>,
}

/// `θ̲` and `θ̄` on one family `S_{n,δ}`, rows in increasing ε-linear order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceTable {
    pub pair: DualPair,
    pub delta: i32,
    pub tau: i64,
    pub rows: Vec<TableRow>,
    /// Targets consumed by `θ̄`.
    #[serde(skip)]
    pub used: BTreeSet<Symbol>,
}

impl CorrespondenceTable {
    pub fn row(&self, s: &Symbol) -> Option<&TableRow> {
        self.rows.iter().find(|r| &r.source == s)
    }

    /// `θ̄` targets of the rows strictly before row `i`.
    pub fn used_before(&self, i: usize) -> BTreeSet<Symbol> {
        self.rows[..i].iter().filter_map(|r| r.overline.clone()).collect()
    }
}

#[derive(Deserialize)]
struct TableWire {
    pair: String,
    delta: i32,
    tau: i64,
    rows: Vec<TableRow>,
}

impl<'de> Deserialize<'de> for CorrespondenceTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = TableWire::deserialize(deserializer)?;
        let pair: DualPair = wire.pair.parse().map_err(serde::de::Error::custom)?;
        let used = wire.rows.iter().filter_map(|r| r.overline.clone()).collect();
        Ok(CorrespondenceTable { pair, delta: wire.delta, tau: wire.tau, rows: wire.rows, used })
    }
}

/// One `θ̄` selection: the chosen target and the block it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub chosen: Symbol,
    pub block: u32,
    /// Blocks holding an order-maximal element of `Θ♭(Λ)`.
    pub max_blocks: Vec<u32>,
    pub flat_size: usize,
}

/// Picks `θ̄(Λ)` from `Θ(Λ)` given the targets already used: among the
/// order-maximal elements of `Θ♭(Λ)`, the smallest in the ε-linear order.
pub fn select_overline(theta: &ThetaSet, used: &BTreeSet<Symbol>, eps: Sign) -> Option<Selection> {
    let flat: Vec<(u32, &Symbol, i64)> = theta
        .blocks
        .iter()
        .flat_map(|b| b.members.iter().map(move |m| (b.k, m)))
        .filter(|(_, m)| !used.contains(*m))
        .map(|(k, m)| (k, m, ord_closed(m)))
        .collect();
    let best = flat.iter().map(|&(_, _, o)| o).max()?;
    let maximal: Vec<&(u32, &Symbol, i64)> = flat.iter().filter(|&&(_, _, o)| o == best).collect();
    let &&(block, chosen, _) = maximal.iter().min_by_key(|(_, m, _)| m.linear_key(eps))?;
    let mut max_blocks: Vec<u32> = maximal.iter().map(|&&(k, _, _)| k).collect();
    max_blocks.sort_unstable();
    max_blocks.dedup();
    Some(Selection { chosen: chosen.clone(), block, max_blocks, flat_size: flat.len() })
}

/// Builds the `θ̲`/`θ̄` table for `S_{n,δ}`, `n` the first member's half rank.
///
/// For `τ ≥ 0` this runs the inductive definition of `θ̄`. For `τ < 0` both
/// maps are read off the reversed pair's table by inversion.
pub fn overline_theta_family(pair: &DualPair, delta: i32) -> Result<CorrespondenceTable> {
    let eps = pair.eps();
    if !pair.first.kind.admits(delta) {
        return Err(Error::IncompatibleSign { eps: eps.as_char(), delta });
    }
    let tau = pair.tau(delta);
    let sources = sorted_family(pair.first.n, delta, eps);
    let mut rows = Vec::with_capacity(sources.len());
    let mut used = BTreeSet::new();

    if tau >= 0 {
        for s in sources {
            let theta = theta_set(&s, pair)?;
            let pick = select_overline(&theta, &used, eps)
                .ok_or_else(|| Error::EmptyResidual { source_symbol: s.to_string(), pair: pair.to_string() })?;
            let peak = find_k0(&s, pair)?;
            used.insert(pick.chosen.clone());
            rows.push(TableRow {
                underline: Some(theta_k_map(&s, pair, 0)?),
                overline: Some(pick.chosen),
                theta_flat_size: Some(pick.flat_size),
                k0: Some(peak.k0),
                tie: Some(peak.tie),
                source: s,
            });
        }
    } else {
        let back = overline_theta_family(&pair.reversed(), pair.target_defect(delta))?;
        let inverse: BTreeMap<&Symbol, &Symbol> =
            back.rows.iter().filter_map(|r| r.overline.as_ref().map(|o| (o, &r.source))).collect();
        for s in sources {
            let overline = inverse.get(&s).map(|&t| t.clone());
            if let Some(t) = &overline {
                used.insert(t.clone());
            }
            rows.push(TableRow {
                underline: underline_theta(&s, pair)?,
                overline,
                theta_flat_size: None,
                k0: None,
                tie: None,
                source: s,
            });
        }
    }
    Ok(CorrespondenceTable { pair: *pair, delta, tau, rows, used })
}

/// `θ̄_{G'}(Λ)`, computed through the table of the family containing `Λ`.
pub fn overline_theta(s: &Symbol, pair: &DualPair) -> Result<Option<Symbol>> {
    pair.check_source(s)?;
    let table = overline_theta_family(pair, s.defect())?;
    Ok(table.row(s).and_then(|r| r.overline.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccurrenceMode {
    Theta,
    Underline,
    Overline,
}

/// The group of `S_G` containing `s`.
pub fn group_of(s: &Symbol) -> Result<GroupTag> {
    let kind = GroupKind::of_defect(s.defect()).ok_or_else(|| Error::NotInFamily {
        symbol: s.to_string(),
        group: "any symplectic or even orthogonal group".to_string(),
    })?;
    Ok(GroupTag::new(kind, s.rank()))
}

fn series_pair(sprime: &Symbol, series: GroupKind, n: u32) -> Result<DualPair> {
    DualPair::new(group_of(sprime)?, GroupTag::new(series, n))
}

/// The symbol `Λ` with `θ_0(Λ) = Λ'` built entry by entry: for `ε = +` drop
/// the first top entry of `Λ'` and swap rows (or bump the bottom row when the
/// top is empty); for `ε = -` the same with the roles of the rows exchanged.
pub fn occurrence_preimage(sprime: &Symbol, eps: Sign) -> Symbol {
    let a = sprime.top().entries();
    let b = sprime.bottom().entries();
    let bumped = |row: &[u32]| -> Vec<u32> { row.iter().map(|v| v + 1).chain([0]).collect() };
    let rows = match eps {
        Sign::Plus if a.is_empty() => (bumped(b), Vec::new()),
        Sign::Plus => (b.to_vec(), a[1..].to_vec()),
        Sign::Minus if b.is_empty() => (Vec::new(), bumped(a)),
        Sign::Minus => (b[1..].to_vec(), a.to_vec()),
    };
    Symbol::new(rows.0, rows.1).expect("rows of a symbol stay strictly decreasing")
}

fn series_sign(sprime: &Symbol, series: GroupKind) -> Result<Sign> {
    let own = group_of(sprime)?;
    if own.kind.is_symplectic() == series.is_symplectic() {
        return Err(Error::InvalidPair(format!("{own} with a {series:?} series")));
    }
    Ok(series.orthogonal_sign().or(own.kind.orthogonal_sign()).expect("one side orthogonal"))
}

/// Smallest `n` for which the map selected by `mode` from `Λ'` into the
/// `n`-th group of `series` is defined (non-empty for `Theta`).
pub fn first_defined(sprime: &Symbol, series: GroupKind, mode: OccurrenceMode) -> Result<u32> {
    series_sign(sprime, series)?;
    let own = group_of(sprime)?;
    let bound = 2 * own.n + sprime.defect().unsigned_abs() + 8;
    for n in 0..=bound {
        let pair = series_pair(sprime, series, n)?;
        let found = match mode {
            OccurrenceMode::Theta => !theta_set(sprime, &pair)?.is_empty(),
            OccurrenceMode::Underline => underline_theta(sprime, &pair)?.is_some(),
            OccurrenceMode::Overline => overline_theta(sprime, &pair)?.is_some(),
        };
        if found {
            return Ok(n);
        }
    }
    Err(Error::SearchExhausted { symbol: sprime.to_string(), bound })
}

/// First occurrence index of `Λ'` along the Witt series of kind `series`,
/// indexed by half rank. `Underline` uses the explicit preimage; the other
/// modes search upward.
pub fn first_occurrence(sprime: &Symbol, series: GroupKind, mode: OccurrenceMode) -> Result<u32> {
    let eps = series_sign(sprime, series)?;
    match mode {
        OccurrenceMode::Underline => Ok(occurrence_preimage(sprime, eps).rank()),
        _ => first_defined(sprime, series, mode),
    }
}

/// Sources of `table`'s family with a missing `θ̲` or `θ̄` although `τ ≥ 0`.
pub fn semi_persistence_violations(table: &CorrespondenceTable, overline: bool) -> Vec<String> {
    if table.tau < 0 {
        return Vec::new();
    }
    let eps = table.pair.eps();
    sorted_family(table.pair.first.n, table.delta, eps)
        .into_iter()
        .filter(|s| {
            let value = table.row(s).and_then(|r| if overline { r.overline.as_ref() } else { r.underline.as_ref() });
            value.is_none()
        })
        .map(|s| format!("{} undefined on {s} under {}", if overline { "overline" } else { "underline" }, table.pair))
        .collect()
}

/// Structural checks on a table: sources strictly increasing, `θ̲` and `θ̄`
/// one-to-one, and every value inside `Θ(source)`.
pub fn table_violations(table: &CorrespondenceTable) -> Vec<String> {
    let mut out = Vec::new();
    let eps = table.pair.eps();
    for w in table.rows.windows(2) {
        if w[0].source.linear_key(eps) >= w[1].source.linear_key(eps) {
            out.push(format!("rows {} and {} out of order", w[0].source, w[1].source));
        }
    }
    for (name, pick) in [("underline", 0), ("overline", 1)] {
        let mut seen: BTreeMap<&Symbol, &Symbol> = BTreeMap::new();
        for r in &table.rows {
            let value = if pick == 0 { r.underline.as_ref() } else { r.overline.as_ref() };
            if let Some(v) = value {
                if let Some(prev) = seen.insert(v, &r.source) {
                    out.push(format!("{name} sends both {prev} and {} to {v}", r.source));
                }
            }
        }
    }
    for r in &table.rows {
        if check_member(&r.source, table.pair.first).is_err() {
            out.push(format!("{} is not in {}", r.source, table.pair.first));
            continue;
        }
        let theta = match theta_set(&r.source, &table.pair) {
            Ok(t) => t,
            Err(e) => {
                out.push(e.to_string());
                continue;
            }
        };
        for v in [&r.underline, &r.overline].into_iter().flatten() {
            if !theta.contains(v) {
                out.push(format!("{v} is not Θ-related to {}", r.source));
            }
        }
    }
    out
}

/// Whether `θ_0(Λ)` is the unique order-maximal element of `Θ(Λ)` and
/// `θ̄(Λ) = θ̲(Λ)` for every symbol of the first member.
pub fn stable_range_violations(pair: &DualPair) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for delta in crate::symbol::family_of(pair.first) {
        if pair.tau(delta) < 0 {
            out.push(format!("tau < 0 for delta {delta} in stable pair {pair}"));
            continue;
        }
        let table = overline_theta_family(pair, delta)?;
        for r in &table.rows {
            let theta = theta_set(&r.source, pair)?;
            let theta0 = theta_k_map(&r.source, pair, 0)?;
            let max: Vec<&Symbol> = theta.max_order_members().collect();
            if max != vec![&theta0] {
                out.push(format!("theta_0({}) is not the unique maximum under {pair}", r.source));
            }
            if r.overline != r.underline {
                out.push(format!("overline differs from underline at {} under {pair}", r.source));
            }
        }
    }
    Ok(out)
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
    fn theta_k_examples_o20_sp22() {
        let p = pair("O+20,Sp22");
        let row = |s: &str| -> Vec<String> {
            let s = sym(s);
            (0..=max_block(&s, Sign::Plus)).map(|k| theta_k_map(&s, &p, k).unwrap().to_string()).collect()
        };
        assert_eq!(row("4,3;3,2"), vec!["4,3,1;4,3", "4,3,2;4,2", "5,3,2;4,1", "6,3,2;4,0"]);
        assert_eq!(row("5,2;3,2"), vec!["4,3,1;5,2", "4,3,2;4,2", "5,3,2;3,2", "6,3,2;3,1", "7,3,2;3,0"]);
    }

    #[test]
    fn theta_zero_of_trivial_symbol() {
        for n2 in 0..6 {
            let p = DualPair::new(GroupTag::sp(0), GroupTag::o_plus(n2)).unwrap();
            let expect = Symbol::new(vec![n2], vec![0]).unwrap();
            assert_eq!(theta_k_map(&sym("0;-"), &p, 0).unwrap(), expect);
            assert_eq!(theta_zero_closed(&sym("0;-"), &p).unwrap(), expect);
        }
    }

    #[test]
    fn theta_zero_closed_tau_zero() {
        let p = pair("O+8,Sp8");
        assert_eq!(p.tau(0), 0);
        let s = sym("3,2;1,0");
        assert_eq!(theta_zero_closed(&s, &p).unwrap(), sym("2,1,0;3,2"));
        assert_eq!(theta_k_map(&s, &p, 0).unwrap(), sym("2,1,0;3,2"));
        let p = pair("Sp8,O-10");
        assert_eq!(p.tau(1), 0);
        for s in sorted_family(4, 1, Sign::Minus) {
            let expect = Symbol::new(
                s.bottom().entries().to_vec(),
                s.top().entries().iter().map(|v| v + 1).chain([0]).collect(),
            )
            .unwrap();
            assert_eq!(theta_zero_closed(&s, &p).unwrap(), expect);
            assert_eq!(theta_k_map(&s, &p, 0).unwrap(), expect);
        }
    }

    #[test]
    fn peak_of_o30_example() {
        let d = find_k0(&sym("9,4,2,1;5,4,2,0"), &pair("O+30,Sp30")).unwrap();
        assert_eq!(d.alpha, vec![1, 3, 6, 7, 8, 9, 10]);
        assert_eq!(d.beta, vec![9, 8, 7, 6, 4, 1, 0]);
        assert_eq!((d.k0, d.tie), (2, true));
    }

    #[test]
    fn peak_of_4_0() {
        let d = find_k0(&sym("4;0"), &pair("O+8,Sp10")).unwrap();
        assert_eq!((d.k0, d.tie), (1, false));
        let d = find_k0(&sym("0;4"), &pair("O+8,Sp10")).unwrap();
        assert_eq!((d.k0, d.tie, d.alpha.len()), (0, false, 1));
    }

    #[test]
    fn underline_examples() {
        assert_eq!(underline_theta(&sym("4;0"), &pair("O+8,Sp10")).unwrap(), Some(sym("2,0;4")));
        assert_eq!(underline_theta(&sym("4,1;3,1"), &pair("O+14,Sp10")).unwrap(), None);
        assert_eq!(underline_theta(&sym("4,1;3,1"), &pair("O+14,Sp8")).unwrap(), Some(sym("3,1;1")));
        assert!(theta_k_map(&sym("4,1;3,1"), &pair("O+14,Sp8"), 0).is_err());
    }

    #[test]
    fn overline_examples() {
        let t = overline_theta_family(&pair("O+8,Sp10"), 0).unwrap();
        let differing: Vec<&TableRow> = t.rows.iter().filter(|r| r.overline != r.underline).collect();
        assert_eq!(differing.len(), 1);
        assert_eq!(differing[0].source, sym("4;0"));
        assert_eq!(differing[0].overline, Some(sym("3,0;3")));

        let t = overline_theta_family(&pair("O+20,Sp22"), 0).unwrap();
        assert_eq!(t.row(&sym("4,3;3,2")).unwrap().overline, Some(sym("4,3,2;4,2")));
        // (4,2;4,2) precedes (5,2;3,2) and takes (5,3,2;3,2), its unique maximum.
        assert_eq!(t.row(&sym("4,2;4,2")).unwrap().overline, Some(sym("5,3,2;3,2")));
        assert_eq!(t.row(&sym("5,2;3,2")).unwrap().overline, Some(sym("4,3,1;5,2")));
    }

    #[test]
    fn first_occurrence_examples() {
        let s = sym("2,0;4");
        assert_eq!(first_occurrence(&s, GroupKind::OPlus, OccurrenceMode::Underline).unwrap(), 4);
        assert_eq!(first_occurrence(&s, GroupKind::OPlus, OccurrenceMode::Overline).unwrap(), 5);
        assert_eq!(first_occurrence(&s, GroupKind::OPlus, OccurrenceMode::Theta).unwrap(), 4);
        assert_eq!(first_occurrence(&s, GroupKind::OMinus, OccurrenceMode::Underline).unwrap(), 2);
        assert_eq!(first_occurrence(&s, GroupKind::OMinus, OccurrenceMode::Overline).unwrap(), 2);
        assert_eq!(first_occurrence(&s, GroupKind::OMinus, OccurrenceMode::Theta).unwrap(), 2);
        assert_eq!(occurrence_preimage(&s, Sign::Minus), sym("-;2,0"));
        for n2 in 1..5 {
            let trivial = Symbol::new(vec![n2], vec![0]).unwrap();
            assert_eq!(first_occurrence(&trivial, GroupKind::Sp, OccurrenceMode::Underline).unwrap(), 0);
        }
        assert!(first_occurrence(&s, GroupKind::Sp, OccurrenceMode::Theta).is_err());
    }

    #[test]
    fn stable_example() {
        let p = pair("O-4,Sp10");
        assert!(p.stable_range());
        let s = sym("-;2,0");
        assert_eq!(underline_theta(&s, &p).unwrap(), Some(sym("2,0;4")));
        assert_eq!(overline_theta(&s, &p).unwrap(), Some(sym("2,0;4")));
        assert!(stable_range_violations(&p).unwrap().is_empty());
    }

    #[test]
    fn negative_tau_table_inverts_reversed_table() {
        let t = overline_theta_family(&pair("Sp10,O+8"), 1).unwrap();
        assert_eq!(t.tau, -1);
        let back = overline_theta_family(&pair("O+8,Sp10"), 0).unwrap();
        for r in &back.rows {
            let o = r.overline.as_ref().unwrap();
            assert_eq!(t.row(o).unwrap().overline.as_ref(), Some(&r.source));
            let u = r.underline.as_ref().unwrap();
            assert_eq!(t.row(u).unwrap().underline.as_ref(), Some(&r.source));
        }
        assert_eq!(t.row(&sym("2,0;4")).unwrap().overline, None);
    }

    #[test]
    fn truncated_table_reports_violation() {
        let mut t = overline_theta_family(&pair("O+8,Sp10"), 0).unwrap();
        assert!(semi_persistence_violations(&t, true).is_empty());
        t.rows.remove(3);
        assert_eq!(semi_persistence_violations(&t, true).len(), 1);
        assert_eq!(semi_persistence_violations(&t, false).len(), 1);
    }

    #[test]
    fn table_json_round_trip() {
        let t = overline_theta_family(&pair("O+8,Sp10"), 0).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: CorrespondenceTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rows.len(), t.rows.len());
        assert_eq!(back.used, t.used);
        assert!(table_violations(&back).is_empty());
        let mut broken = back.clone();
        broken.rows[1].overline = broken.rows[0].overline.clone();
        assert!(!table_violations(&broken).is_empty());
    }
}
