//! Exhaustive property sweeps, one per identifier, over every dual pair up to
//! a rank bound. Used by `verify` and by the acceptance tests.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::correspond::{
    find_k0, first_occurrence, occurrence_preimage, overline_theta_family, select_overline,
    semi_persistence_violations, table_violations, theta_k_map, theta_zero_closed, underline_theta, OccurrenceMode,
};
use crate::error::{Error, Result};
use crate::order::{entry_move_ord_delta, ord_closed, ord_of_entries, ord_oracle, EntrySequence};
use crate::partition::{BiPartition, Partition};
use crate::symbol::{
    enumerate_family, family_of, is_special, special_closure, BetaSet, GroupKind, GroupTag, Sign, Symbol,
};
use crate::theta::{
    b_relation_by_entries, beta_interleaves, max_block, related, theta_set, theta_set_by_filter, DualPair,
};

/// Identifiers accepted by [`run_property`].
pub const PROPERTY_IDS: &[&str] = &[
    "L0203",
    "L0210",
    "L0213-oracle",
    "L0215",
    "L0216",
    "L0218",
    "L0219",
    "L0302",
    "L0309",
    "L0310",
    "L0314",
    "L0413",
    "L0414",
    "L0415",
    "L0416",
    "L0418",
    "L0423",
    "L0424",
    "L0430",
    "L0432",
    "L0503",
    "L0504",
    "SEMIPERSIST",
    "SYMMETRY",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub property: String,
    pub max_rank: u32,
    /// Number of individual checks performed.
    pub checked: usize,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Partial result of one shard.
#[derive(Default)]
struct Tally {
    checked: usize,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(describe());
        }
    }

    fn fail(&mut self, err: Error) {
        self.checked += 1;
        self.violations.push(err.to_string());
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }
}

fn kinds() -> [GroupKind; 3] {
    [GroupKind::Sp, GroupKind::OPlus, GroupKind::OMinus]
}

/// Groups of rank at most `n` of every kind (`O^-_0` does not exist).
pub fn groups_up_to(n: u32) -> Vec<GroupTag> {
    let mut out = Vec::new();
    for rank in 0..=n {
        for kind in kinds() {
            if !(kind == GroupKind::OMinus && rank == 0) {
                out.push(GroupTag::new(kind, rank));
            }
        }
    }
    out
}

/// Every pair with the first member of rank at most `n` and the second of
/// rank at most `2n`, in both orientations.
pub fn sweep_pairs(n: u32) -> Vec<DualPair> {
    let mut out = BTreeSet::new();
    for g in groups_up_to(n) {
        for h in groups_up_to(2 * n) {
            if let Ok(p) = DualPair::new(g, h) {
                out.insert(p);
                out.insert(p.reversed());
            }
        }
    }
    out.into_iter().collect()
}

fn all_symbols(n: u32) -> Vec<Symbol> {
    let set: BTreeSet<Symbol> = groups_up_to(n).into_iter().flat_map(|g| g.symbols()).collect();
    set.into_iter().collect()
}

fn per_pair(pairs: &[DualPair], f: impl Fn(&DualPair, &mut Tally) + Sync) -> Tally {
    pairs
        .par_iter()
        .map(|p| {
            let mut t = Tally::default();
            f(p, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn per_item<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Families of the first member with `τ ≥ 0`.
fn nonneg_families(p: &DualPair) -> Vec<i32> {
    family_of(p.first).into_iter().filter(|&d| p.tau(d) >= 0).collect()
}

/// Runs the sweep named `id` with rank bound `max_rank`.
pub fn run_property(id: &str, max_rank: u32) -> Result<SweepReport> {
    let n = max_rank;
    let pairs = sweep_pairs(n);
    let tally = match id {
        "L0203" => check_l0203(n),
        "L0210" => check_l0210(n),
        "L0213-oracle" => per_item(&all_symbols(n), |s, t| {
            let oracle = ord_oracle(s).total;
            t.check(ord_closed(s) == oracle, || format!("ord {s}: closed {} vs oracle {oracle}", ord_closed(s)));
        }),
        "L0215" => check_l0215(n),
        "L0216" => per_item(&all_symbols(n), |s, t| {
            let (z, members) = special_closure(s);
            let expect = ord_oracle(&z).total;
            t.check(members.contains(s) || s.defect().rem_euclid(4) == 3, || format!("{s} missing from S_Z of {z}"));
            for m in &members {
                t.check(ord_oracle(m).total == expect, || format!("ord({m}) differs from ord({z})"));
            }
        }),
        "L0218" => check_l0218(n),
        "L0219" => check_l0219(n),
        "L0302" => check_l0302(&pairs),
        "L0309" => check_l0309(2 * n),
        "L0310" => per_pair(&pairs, block_decomposition),
        "L0314" => check_l0314(n),
        "L0413" => per_pair(&pairs, check_l0413),
        "L0414" => per_pair(&pairs, check_l0414),
        "L0415" => per_pair(&pairs, check_l0415),
        "L0416" => per_pair(&pairs, check_l0416),
        "L0418" => per_pair(&pairs, check_l0418),
        "L0423" => per_pair(&pairs, |p, t| {
            for delta in nonneg_families(p) {
                match overline_theta_family(p, delta) {
                    Ok(table) => t.check(table.rows.iter().all(|r| r.overline.is_some()), || {
                        format!("overline incomplete on delta {delta} under {p}")
                    }),
                    Err(e) => t.fail(e),
                }
            }
        }),
        "L0424" => per_pair(&pairs, check_l0424),
        "L0430" => per_pair(&pairs, |p, t| {
            for delta in family_of(p.first) {
                match overline_theta_family(p, delta) {
                    Ok(table) => {
                        let v = table_violations(&table);
                        t.checked += table.rows.len();
                        t.violations.extend(v);
                    }
                    Err(e) => t.fail(e),
                }
            }
        }),
        "L0432" => per_pair(&pairs, check_l0432),
        "L0503" => per_pair(&pairs, check_l0503),
        "L0504" => per_pair(&pairs, check_l0504),
        "SEMIPERSIST" => per_pair(&pairs, |p, t| {
            for delta in nonneg_families(p) {
                match overline_theta_family(p, delta) {
                    Ok(table) => {
                        for overline in [false, true] {
                            let v = semi_persistence_violations(&table, overline);
                            t.checked += table.rows.len();
                            t.violations.extend(v);
                        }
                    }
                    Err(e) => t.fail(e),
                }
            }
        }),
        "SYMMETRY" => per_pair(&pairs, symmetry),
        _ => return Err(Error::Parse { what: "property id", text: id.to_string() }),
    };
    Ok(SweepReport { property: id.to_string(), max_rank, checked: tally.checked, violations: tally.violations })
}

fn beta_sets(max_entry: u32) -> Vec<BetaSet> {
    (0u32..1 << (max_entry + 1))
        .map(|mask| {
            let entries: Vec<u32> = (0..=max_entry).rev().filter(|i| mask >> i & 1 == 1).collect();
            BetaSet::new(entries).expect("strictly decreasing by construction")
        })
        .collect()
}

fn check_l0203(n: u32) -> Tally {
    let sets = beta_sets(n + 1);
    let mut tally = per_item(&sets, |a, t| {
        let lam = a.to_partition().dual();
        for b in &sets {
            if let Some(fast) = beta_interleaves(a.entries(), b.entries()) {
                let slow = lam.precq(&b.to_partition().dual());
                t.check(fast == slow, || format!("beta interleaving of {a} and {b}: {fast} vs {slow}"));
            }
        }
    });
    // The entry-level relation test agrees with the partition-level one.
    let pairs = sweep_pairs(n.min(3));
    tally = tally.merge(per_pair(&pairs, |p, t| {
        let targets = p.second.symbols();
        for s in p.first.symbols() {
            for u in &targets {
                let a = related(&s, u, p).unwrap_or(false);
                let b = b_relation_by_entries(&s, u, p.eps());
                t.check(a == b, || format!("entry test disagrees on {s}, {u} under {p}"));
            }
        }
    }));
    tally
}

fn check_l0210(n: u32) -> Tally {
    let symbols = all_symbols(n);
    per_item(&symbols, |big, t| {
        let (a, b) = (big.top().entries(), big.bottom().entries());
        for small in &symbols {
            let (a2, b2) = (small.top().entries(), small.bottom().entries());
            if a.len() != a2.len() + 1 || b.len() != b2.len() + 1 {
                continue;
            }
            if a2.iter().zip(a).all(|(x, y)| y > x) && b2.iter().zip(b).all(|(x, y)| y > x) {
                t.check(big.rank() > small.rank(), || format!("rank({big}) <= rank({small})"));
            }
        }
    })
}

/// A symbol with entries `z` (weakly decreasing, at most two copies each):
/// odd-indexed entries on top, even-indexed ones below.
fn interlaced(z: &[i64]) -> Option<Symbol> {
    if z.iter().any(|&v| v < 0) {
        return None;
    }
    let top = z.iter().step_by(2).map(|&v| v as u32).collect();
    let bottom = z.iter().skip(1).step_by(2).map(|&v| v as u32).collect();
    Symbol::new(top, bottom).ok()
}

fn check_l0215(n: u32) -> Tally {
    per_item(&all_symbols(n), |s, t| {
        let seq = EntrySequence::of_symbol(s);
        let z: Vec<i64> = seq.entries().iter().map(|&v| i64::from(v)).collect();
        let m = z.len();
        for k in 1..=m {
            for l in k + 1..=m {
                let Ok(delta) = entry_move_ord_delta(&seq, k, l) else { continue };
                let mut moved = z.clone();
                moved[k - 1] += 1;
                moved[l - 1] -= 1;
                t.check(delta < 0, || format!("move ({k},{l}) on {s} raises ord"));
                t.check(delta == ord_of_entries(&moved) - ord_of_entries(&z), || {
                    format!("move ({k},{l}) on {s}: formula {delta}")
                });
                if let (Some(before), Some(after)) = (interlaced(&z), interlaced(&moved)) {
                    let direct = ord_oracle(&after).total - ord_oracle(&before).total;
                    t.check(delta == direct, || format!("move ({k},{l}) on {s}: {delta} vs oracle {direct}"));
                }
            }
        }
    })
}

fn prefix_sums<I: IntoIterator<Item = u32>>(values: I) -> Vec<i64> {
    values
        .into_iter()
        .scan(0i64, |acc, v| {
            *acc += i64::from(v);
            Some(*acc)
        })
        .collect()
}

fn check_l0218(n: u32) -> Tally {
    let specials: Vec<Symbol> =
        all_symbols(n).into_iter().filter(|s| s.defect() == 0 || s.defect() == 1).filter(is_special).collect();
    per_item(&specials, |z, t| {
        let ez = z.merged_entries();
        let pz = prefix_sums(ez.iter().copied());
        for w in &specials {
            let ew = w.merged_entries();
            if w.rank() != z.rank() || ew.len() != ez.len() {
                continue;
            }
            let pw = prefix_sums(ew.iter().copied());
            if pz.iter().zip(&pw).all(|(x, y)| x >= y) {
                let (oz, ow) = (ord_oracle(z).total, ord_oracle(w).total);
                t.check(oz <= ow && ((oz == ow) == (ez == ew)), || format!("ord({z}) = {oz}, ord({w}) = {ow}"));
            }
        }
    })
}

fn padded_prefix(p: &Partition, len: usize) -> Vec<i64> {
    prefix_sums((0..len).map(|i| p.part(i)))
}

fn dominates(p: &Partition, q: &Partition) -> bool {
    let len = p.len().max(q.len());
    padded_prefix(p, len).iter().zip(padded_prefix(q, len)).all(|(x, y)| *x >= y)
}

fn check_l0219(n: u32) -> Tally {
    let families: Vec<(u32, i32)> =
        groups_up_to(n).into_iter().flat_map(|g| family_of(g).into_iter().map(move |d| (g.n, d))).collect();
    per_item(&families, |&(rank, delta), t| {
        let members = enumerate_family(rank, delta);
        let ups: Vec<BiPartition> = members.iter().map(Symbol::upsilon).collect();
        for (s, us) in members.iter().zip(&ups) {
            for (u, uu) in members.iter().zip(&ups) {
                let one_row = (us.bottom == uu.bottom && dominates(&us.top, &uu.top))
                    || (us.top == uu.top && dominates(&us.bottom, &uu.bottom));
                if one_row {
                    let (os, ou) = (ord_oracle(s).total, ord_oracle(u).total);
                    t.check(os <= ou && ((os == ou) == (s == u)), || format!("ord({s}) = {os}, ord({u}) = {ou}"));
                }
            }
        }
    })
}

fn check_l0302(pairs: &[DualPair]) -> Tally {
    let stable: Vec<DualPair> = pairs.iter().copied().filter(DualPair::stable_range).collect();
    per_pair(&stable, |p, t| {
        let eps = p.eps();
        for s in p.first.symbols() {
            let theta = match theta_set(&s, p) {
                Ok(x) => x,
                Err(e) => return t.fail(e),
            };
            let under = underline_theta(&s, p).ok().flatten();
            for u in theta.members().filter(|u| Some(*u) != under.as_ref()) {
                let pre = occurrence_preimage(u, eps);
                t.check(pre.rank() < p.first.n, || format!("{u} from {s} under {p}: preimage {pre} not smaller"));
                let Ok(back) = DualPair::new(GroupTag::new(p.first.kind, pre.rank()), p.second) else {
                    t.fail(Error::InvalidPair(p.to_string()));
                    continue;
                };
                let image = underline_theta(&pre, &back).ok().flatten();
                t.check(image.as_ref() == Some(u), || format!("underline of {pre} under {back} is not {u}"));
                match first_occurrence(u, p.first.kind, OccurrenceMode::Theta) {
                    Ok(n0) => {
                        t.check(n0 < p.first.n, || format!("first occurrence of {u} is {n0}, not below {}", p.first.n))
                    }
                    Err(e) => t.fail(e),
                }
            }
        }
    })
}

fn check_l0309(max_norm: u32) -> Tally {
    let parts: Vec<Partition> = (0..=max_norm).flat_map(Partition::all).collect();
    per_item(&parts, |lam, t| {
        let dl = lam.dual();
        for mu in &parts {
            let a = lam.interleaves(mu);
            let b = dl.precq(&mu.dual());
            t.check(a == b, || format!("{lam} vs {mu}: interleave {a}, dual precq {b}"));
        }
    })
}

fn block_decomposition(p: &DualPair, t: &mut Tally) {
    let eps = p.eps();
    for s in p.first.symbols() {
        let theta = match theta_set(&s, p) {
            Ok(x) => x,
            Err(e) => return t.fail(e),
        };
        let src = s.upsilon();
        let shrink_norm = match eps {
            Sign::Plus => src.top.norm(),
            Sign::Minus => src.bottom.norm(),
        };
        t.check(theta.blocks.len() as u32 == max_block(&s, eps) + 1, || format!("block count of {s} under {p}"));
        for block in &theta.blocks {
            for u in &block.members {
                let up = u.upsilon();
                let shrunk = match eps {
                    Sign::Plus => up.bottom.norm(),
                    Sign::Minus => up.top.norm(),
                };
                t.check(i64::from(up.norm()) == i64::from(src.norm()) + theta.tau, || {
                    format!("norm law fails for {u} from {s}")
                });
                t.check(shrunk + block.k == shrink_norm, || format!("{u} misplaced in block {} of {s}", block.k));
                t.check(u.defect() == p.target_defect(s.defect()), || format!("defect law fails for {u} from {s}"));
            }
        }
        match theta_set_by_filter(&s, p) {
            Ok(filtered) => {
                let a: BTreeSet<&Symbol> = theta.members().collect();
                let b: BTreeSet<&Symbol> = filtered.iter().collect();
                t.check(a == b, || format!("constructive and filtered theta sets differ for {s} under {p}"));
            }
            Err(e) => t.fail(e),
        }
    }
}

fn check_l0314(n: u32) -> Tally {
    let groups = groups_up_to(n);
    per_item(&groups, |g, t| {
        for series in kinds().into_iter().filter(|k| k.is_symplectic() != g.kind.is_symplectic()) {
            for s in g.symbols() {
                let a = first_occurrence(&s, series, OccurrenceMode::Underline);
                let b = first_occurrence(&s, series, OccurrenceMode::Theta);
                match (a, b) {
                    (Ok(a), Ok(b)) => t.check(a == b, || format!("{s} toward {series:?}: underline {a}, theta {b}")),
                    (Err(e), _) | (_, Err(e)) => t.fail(e),
                }
                let pre = occurrence_preimage(
                    &s,
                    series.orthogonal_sign().or(g.kind.orthogonal_sign()).expect("orthogonal side"),
                );
                let Some(kind) = GroupKind::of_defect(pre.defect()) else {
                    t.fail(Error::InvalidPair(format!("preimage {pre} of {s}")));
                    continue;
                };
                t.check(kind == series, || format!("preimage {pre} of {s} is not in the {series:?} series"));
                if let Ok(p) = DualPair::new(GroupTag::new(kind, pre.rank()), *g) {
                    let image = theta_zero_closed(&pre, &p).ok();
                    t.check(image.as_ref() == Some(&s), || format!("theta_0 of preimage {pre} is not {s}"));
                }
            }
        }
    })
}

fn check_l0413(p: &DualPair, t: &mut Tally) {
    for delta in nonneg_families(p) {
        for s in enumerate_family(p.first.n, delta) {
            let theta = match theta_set(&s, p) {
                Ok(x) => x,
                Err(e) => return t.fail(e),
            };
            for block in &theta.blocks {
                let Some(tk) = &block.distinguished else {
                    t.fail(Error::NegativeTau(theta.tau));
                    continue;
                };
                t.check(block.members.contains(tk), || format!("theta_{}({s}) outside its block under {p}", block.k));
                let top = ord_closed(tk);
                let rivals = block.members.iter().filter(|u| *u != tk && ord_closed(u) >= top).count();
                t.check(rivals == 0, || format!("theta_{}({s}) not the unique maximum under {p}", block.k));
            }
        }
    }
}

fn check_l0414(p: &DualPair, t: &mut Tally) {
    let eps = p.eps();
    for delta in nonneg_families(p) {
        for s in enumerate_family(p.first.n, delta) {
            let d = match find_k0(&s, p) {
                Ok(x) => x,
                Err(e) => return t.fail(e),
            };
            let best = *d.orders.iter().max().expect("non-empty");
            let argmax: Vec<usize> = (0..d.orders.len()).filter(|&k| d.orders[k] == best).collect();
            let k0 = d.k0 as usize;
            t.check(argmax.len() <= 2 && argmax[0] == k0, || format!("peak of {s} under {p}: {:?}", d.orders));
            t.check(d.tie == (argmax.len() == 2), || format!("tie flag of {s} under {p}"));
            if argmax.len() == 2 {
                t.check(argmax[1] == k0 + 1, || format!("split plateau for {s} under {p}"));
            }
            let rising = d.orders[..=k0].windows(2).all(|w| w[0] < w[1]);
            let last = argmax.last().copied().expect("non-empty");
            let falling = d.orders[last..].windows(2).all(|w| w[0] > w[1]);
            t.check(rising && falling, || format!("ord(theta_k({s})) not unimodal under {p}: {:?}", d.orders));
            let inc_ok = d.alpha.windows(2).all(|w| w[0] < w[1]);
            let dec_ok = d.beta.windows(2).all(|w| w[0] > w[1]);
            let (inc_ok, dec_ok) = match eps {
                Sign::Plus => (inc_ok, dec_ok),
                Sign::Minus => (d.beta.windows(2).all(|w| w[0] < w[1]), d.alpha.windows(2).all(|w| w[0] > w[1])),
            };
            t.check(inc_ok && dec_ok, || format!("alpha/beta not monotone for {s} under {p}"));
            for k in 0..d.orders.len() - 1 {
                let actual = (d.orders[k + 1] - d.orders[k]).signum() as i32;
                t.check(d.predicted_step(k, eps) == actual, || format!("step {k} of {s} under {p} mispredicted"));
            }
        }
    }
}

fn check_l0415(p: &DualPair, t: &mut Tally) {
    for delta in family_of(p.first).into_iter().filter(|&d| p.tau(d) == 0) {
        let table = match overline_theta_family(p, delta) {
            Ok(x) => x,
            Err(e) => return t.fail(e),
        };
        for (i, row) in table.rows.iter().enumerate() {
            let s = &row.source;
            let (theta, t0) = match (theta_set(s, p), theta_k_map(s, p, 0)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return t.fail(e),
            };
            t.check(theta.blocks[0].members == vec![t0.clone()], || {
                format!("Theta_0({s}) is not {{theta_0}} under {p}")
            });
            let used = table.used_before(i);
            let flat: Vec<&Symbol> = theta.members().filter(|u| !used.contains(*u)).collect();
            t.check(flat == vec![&t0], || format!("flat set of {s} is not {{theta_0}} under {p}"));
        }
    }
}

fn check_l0416(p: &DualPair, t: &mut Tally) {
    if !p.stable_range() {
        return;
    }
    for s in p.first.symbols() {
        let (theta, t0) = match (theta_set(&s, p), theta_k_map(&s, p, 0)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return t.fail(e),
        };
        let top = ord_closed(&t0);
        let rivals = theta.members().filter(|u| **u != t0 && ord_closed(u) >= top).count();
        t.check(rivals == 0, || format!("theta_0({s}) not the unique maximum under {p}"));
    }
}

fn check_l0418(p: &DualPair, t: &mut Tally) {
    for delta in nonneg_families(p) {
        for s in enumerate_family(p.first.n, delta) {
            let theta = match theta_set(&s, p) {
                Ok(x) => x,
                Err(e) => return t.fail(e),
            };
            for block in &theta.blocks {
                let Some(tk) = &block.distinguished else { continue };
                let base = tk.upsilon();
                for u in &block.members {
                    let other = u.upsilon();
                    t.check(dominates(&other.top, &base.top) && dominates(&other.bottom, &base.bottom), || {
                        format!("{u} does not dominate theta_{}({s}) under {p}", block.k)
                    });
                }
            }
        }
    }
}

/// The peak test at `k = 0` for large `τ`, with `α_0`, `β_0` as recomputed
/// from the actual changed entries.
fn check_l0424(p: &DualPair, t: &mut Tally) {
    let eps = p.eps();
    for delta in nonneg_families(p) {
        let tau = p.tau(delta);
        for s in enumerate_family(p.first.n, delta) {
            let ups = s.upsilon();
            let threshold = match eps {
                Sign::Plus => ups.bottom.first(),
                Sign::Minus => ups.top.first(),
            };
            if tau < i64::from(threshold) || max_block(&s, eps) == 0 {
                continue;
            }
            let d = match find_k0(&s, p) {
                Ok(x) => x,
                Err(e) => return t.fail(e),
            };
            let (grow, shrink) = match eps {
                Sign::Plus => (d.alpha[0], d.beta[0]),
                Sign::Minus => (d.beta[0], d.alpha[0]),
            };
            let (m1, m2) = (s.top().len() as i64, s.bottom().len() as i64);
            let expected_grow = match eps {
                Sign::Plus => tau + m2,
                Sign::Minus => tau + m1,
            };
            t.check(grow == expected_grow, || format!("growing entry of {s} under {p} is {grow}"));
            let unique = d.k0 == 0 && !d.tie;
            let pair_max = d.k0 == 0 && d.tie;
            t.check(unique == (grow >= shrink), || format!("unique-maximum test at k = 0 fails for {s} under {p}"));
            t.check(pair_max == (grow + 1 == shrink), || format!("tie test at k = 0 fails for {s} under {p}"));
        }
    }
}

fn check_l0432(p: &DualPair, t: &mut Tally) {
    let eps = p.eps();
    for delta in nonneg_families(p) {
        let table = match overline_theta_family(p, delta) {
            Ok(x) => x,
            Err(e) => return t.fail(e),
        };
        for (i, row) in table.rows.iter().enumerate() {
            let theta = match theta_set(&row.source, p) {
                Ok(x) => x,
                Err(e) => return t.fail(e),
            };
            let Some(pick) = select_overline(&theta, &table.used_before(i), eps) else {
                t.fail(Error::EmptyResidual { source_symbol: row.source.to_string(), pair: p.to_string() });
                continue;
            };
            t.check(Some(&pick.chosen) == row.overline.as_ref(), || {
                format!("selection for {} not reproducible", row.source)
            });
            t.check(pick.block == pick.max_blocks[0], || {
                format!("overline of {} taken from block {} of {:?}", row.source, pick.block, pick.max_blocks)
            });
        }
    }
}

fn check_l0503(p: &DualPair, t: &mut Tally) {
    let eps = p.eps();
    for delta in family_of(p.first).into_iter().filter(|&d| p.tau(d) == 0) {
        let table = match overline_theta_family(p, delta) {
            Ok(x) => x,
            Err(e) => return t.fail(e),
        };
        for row in &table.rows {
            let a = row.source.top().entries();
            let b = row.source.bottom().entries();
            let bump = |r: &[u32]| -> Vec<u32> { r.iter().map(|v| v + 1).chain([0]).collect() };
            let formula = match eps {
                Sign::Plus => Symbol::new(bump(b), a.to_vec()),
                Sign::Minus => Symbol::new(b.to_vec(), bump(a)),
            }
            .expect("rows stay strictly decreasing");
            t.check(row.overline.as_ref() == Some(&formula) && row.underline.as_ref() == Some(&formula), || {
                format!("tau = 0 formula fails at {} under {p}", row.source)
            });
        }
    }
}

fn check_l0504(p: &DualPair, t: &mut Tally) {
    if !p.stable_range() {
        return;
    }
    for delta in family_of(p.first) {
        let table = match overline_theta_family(p, delta) {
            Ok(x) => x,
            Err(e) => return t.fail(e),
        };
        for row in &table.rows {
            t.check(row.overline.is_some() && row.overline == row.underline, || {
                format!("overline and underline differ at {} under {p}", row.source)
            });
        }
    }
}

fn symmetry(p: &DualPair, t: &mut Tally) {
    let back = p.reversed();
    let targets = p.second.symbols();
    for s in p.first.symbols() {
        for u in &targets {
            match (related(&s, u, p), related(u, &s, &back)) {
                (Ok(a), Ok(b)) => t.check(a == b, || format!("relation of {s} and {u} not symmetric under {p}")),
                (Err(e), _) | (_, Err(e)) => t.fail(e),
            }
        }
    }
}
