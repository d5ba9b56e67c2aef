use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::Index;
use theta_symbols::{
    enumerate_family, find_k0, linear_cmp, ord_closed, ord_oracle, overline_theta_family, related, sorted_family,
    table_violations, theta_set, theta_set_by_filter, underline_theta, BiPartition, DualPair, GroupKind, GroupTag,
    Partition, Sign, Symbol,
};

/// Partition counts by the usual recurrence over the largest part.
fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

fn bipartition_count(n: u32) -> u64 {
    (0..=n).map(|i| partition_count(i) * partition_count(n - i)).sum()
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..7, 0..6).prop_map(Partition::from_unsorted)
}

fn beta_row() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..12, 0..6).prop_map(|s| s.into_iter().rev().collect())
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (beta_row(), beta_row()).prop_map(|(a, b)| Symbol::new(a, b).unwrap())
}

fn raw_rank(top: &[u32], bottom: &[u32]) -> i64 {
    let c = (top.len() + bottom.len()) as i64;
    let sum: i64 = top.iter().chain(bottom).map(|&v| i64::from(v)).sum();
    // floor(((c-1)/2)^2) with c-1 possibly odd
    sum - ((c - 1) * (c - 1)) / 4
}

fn pair(max_first: u32, max_second: u32) -> impl Strategy<Value = DualPair> {
    (0usize..3, 1..=max_first, any::<bool>(), 1..=max_second).prop_map(|(kind, n, plus, m)| {
        let first = GroupTag::new([GroupKind::Sp, GroupKind::OPlus, GroupKind::OMinus][kind], n);
        let second = if first.kind.is_symplectic() {
            GroupTag::new(if plus { GroupKind::OPlus } else { GroupKind::OMinus }, m)
        } else {
            GroupTag::sp(m)
        };
        DualPair::new(first, second).unwrap()
    })
}

fn source_in(p: &DualPair, index: Index) -> Symbol {
    let all = p.first.symbols();
    all[index.index(all.len())].clone()
}

proptest! {
    #[test]
    fn reduction_ignores_shifts(top in beta_row(), bottom in beta_row(), shifts in 0usize..4) {
        let (mut a, mut b) = (top.clone(), bottom.clone());
        for _ in 0..shifts {
            a = a.iter().map(|v| v + 1).chain([0]).collect();
            b = b.iter().map(|v| v + 1).chain([0]).collect();
        }
        let s = Symbol::new(top.clone(), bottom.clone()).unwrap();
        prop_assert_eq!(&Symbol::new(a.clone(), b.clone()).unwrap(), &s);
        prop_assert_eq!(i64::from(s.rank()), raw_rank(&a, &b));
        prop_assert_eq!(s.defect(), top.len() as i32 - bottom.len() as i32);
    }

    #[test]
    fn upsilon_round_trip(top in partition(), bottom in partition(), delta in -6i32..=6) {
        let b = BiPartition::new(top, bottom);
        let s = Symbol::upsilon_inv(&b, delta);
        prop_assert_eq!(s.upsilon(), b.clone());
        prop_assert_eq!(s.defect(), delta);
        let offset = ((delta * delta) / 4) as u32;
        prop_assert_eq!(s.rank(), b.norm() + offset);
    }

    #[test]
    fn upsilon_of_reduced_symbol_inverts(s in symbol()) {
        prop_assert_eq!(Symbol::upsilon_inv(&s.upsilon(), s.defect()), s);
    }

    #[test]
    fn interleaving_is_dual_precq(lam in partition(), mu in partition()) {
        let len = lam.len().max(mu.len()) + 1;
        let direct = (0..len).all(|i| mu.part(i + 1) <= lam.part(i) && lam.part(i) <= mu.part(i));
        prop_assert_eq!(lam.interleaves(&mu), direct);
        prop_assert_eq!(lam.dual().precq(&mu.dual()), direct);
    }

    #[test]
    fn closed_order_matches_degree_oracle(s in symbol()) {
        prop_assert_eq!(ord_closed(&s), ord_oracle(&s).total);
    }

    #[test]
    fn linear_order_is_total(n in 0u32..6, delta in -4i32..=4, plus in any::<bool>(), i in any::<Index>(), j in any::<Index>()) {
        let eps = if plus { Sign::Plus } else { Sign::Minus };
        prop_assume!(eps.orders_defect(delta));
        let family = sorted_family(n, delta, eps);
        prop_assume!(!family.is_empty());
        let (a, b) = (&family[i.index(family.len())], &family[j.index(family.len())]);
        let ab = linear_cmp(a, b, eps).unwrap();
        prop_assert_eq!(ab, linear_cmp(b, a, eps).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(ab, a.linear_key(eps).cmp(&b.linear_key(eps)));
    }

    #[test]
    fn theta_set_agrees_with_filter(p in pair(5, 8), i in any::<Index>()) {
        let s = source_in(&p, i);
        let theta = theta_set(&s, &p).unwrap();
        let constructed: BTreeSet<Symbol> = theta.members().cloned().collect();
        let filtered: BTreeSet<Symbol> = theta_set_by_filter(&s, &p).unwrap().into_iter().collect();
        prop_assert_eq!(constructed.len(), theta.len());
        for t in &constructed {
            prop_assert!(related(&s, t, &p).unwrap());
        }
        prop_assert_eq!(constructed, filtered);
    }

    #[test]
    fn peak_is_first_maximum(p in pair(6, 10), i in any::<Index>()) {
        let s = source_in(&p, i);
        prop_assume!(p.tau(s.defect()) >= 0);
        let d = find_k0(&s, &p).unwrap();
        let best = *d.orders.iter().max().unwrap();
        let k0 = d.k0 as usize;
        prop_assert_eq!(d.orders[k0], best);
        prop_assert!(d.orders[..k0].iter().all(|&o| o < best));
        prop_assert_eq!(d.tie, d.orders.get(k0 + 1) == Some(&best));
    }

    #[test]
    fn correspondences_are_injective(p in pair(5, 8), pick in any::<Index>()) {
        let deltas = theta_symbols::family_of(p.first);
        let delta = deltas[pick.index(deltas.len())];
        let table = overline_theta_family(&p, delta).unwrap();
        prop_assert_eq!(table_violations(&table), Vec::<String>::new());
        for row in &table.rows {
            if let Some(t) = &row.underline {
                prop_assert!(theta_set(&row.source, &p).unwrap().contains(t));
                prop_assert_eq!(underline_theta(&row.source, &p).unwrap(), Some(t.clone()));
            }
        }
    }
}

#[test]
fn family_sizes_match_bipartition_counts() {
    for n in 0..=8 {
        for delta in -6i32..=6 {
            let offset = ((delta * delta) / 4) as u32;
            let expected = if offset > n { 0 } else { bipartition_count(n - offset) };
            assert_eq!(enumerate_family(n, delta).len() as u64, expected, "n={n} delta={delta}");
        }
    }
}
