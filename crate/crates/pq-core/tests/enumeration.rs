//! Cross-checks of the normal-subgroup enumeration against a from-scratch
//! all-subgroups oracle, and the monoid laws of the setwise product.

use std::collections::HashSet;

use pq_core::{GroupTable, IndexSet};

/// From-scratch subgroup enumeration: close single-element extensions,
/// without touching conjugacy classes or the library's closure helper.
fn all_subgroups(g: &GroupTable) -> Vec<IndexSet> {
    let n = g.order();
    let close = |seed: Vec<usize>| -> IndexSet {
        let mut bits = IndexSet::from_indices(n, seed.iter().copied());
        let mut members = seed;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            let mut j = 0;
            while j < members.len() {
                let y = members[j];
                for p in [g.mul(x, y), g.mul(y, x)] {
                    if bits.insert(p) {
                        members.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        bits
    };
    let mut found: HashSet<IndexSet> = HashSet::new();
    let mut queue = vec![close(vec![g.identity()])];
    found.insert(queue[0].clone());
    let mut next = 0;
    while next < queue.len() {
        let base = queue[next].clone();
        next += 1;
        for x in 0..n {
            if base.contains(x) {
                continue;
            }
            let mut seed: Vec<usize> = base.iter().collect();
            seed.push(x);
            let grown = close(seed);
            if found.insert(grown.clone()) {
                queue.push(grown);
            }
        }
    }
    found.into_iter().collect()
}

#[test]
fn enumeration_matches_oracle_up_to_order_48() {
    for spec in ["Z48", "Z2xS4", "A4xZ2", "D8xZ3", "Z6xZ6", "D16xZ2", "S3xS3"] {
        let g = GroupTable::build(spec).unwrap();
        assert!(g.order() <= 48, "{spec}");
        let n = g.order();
        let mut expected: Vec<Vec<usize>> = all_subgroups(&g)
            .into_iter()
            .filter(|s| (0..n).all(|x| s.iter().all(|h| s.contains(g.mul(g.mul(x, h), g.inv(x))))))
            .map(|s| s.to_vec())
            .collect();
        expected.sort();
        let mut got: Vec<Vec<usize>> = g
            .normal_subgroups()
            .unwrap()
            .iter()
            .map(|s| s.members().to_vec())
            .collect();
        got.sort();
        assert_eq!(got, expected, "{spec}");
    }
}

#[test]
fn enumerated_subgroups_satisfy_the_subgroup_contract() {
    for spec in pq_core::corpus::corpus_group_specs() {
        let g = GroupTable::build(&spec).unwrap();
        let subs = g.normal_subgroups().unwrap();
        assert_eq!(subs[0].size(), 1, "{spec}: trivial subgroup first");
        assert_eq!(
            subs.last().unwrap().size(),
            g.order(),
            "{spec}: whole group last"
        );
        for s in &subs {
            // Revalidate through the independent constructor.
            let rebuilt = g.subgroup(s.members().clone()).unwrap();
            assert!(rebuilt.is_normal(), "{spec}");
            assert_eq!(rebuilt.size(), s.size());
            assert_eq!(g.order() % s.size(), 0, "{spec}: Lagrange");
        }
        // Canonical order: ascending size, then member-lexicographic.
        for w in subs.windows(2) {
            let by_size = w[0].size() < w[1].size();
            let tie = w[0].size() == w[1].size()
                && w[0].members().cmp_members(w[1].members()) == std::cmp::Ordering::Less;
            assert!(by_size || tie, "{spec}: canonical order violated");
        }
    }
}

#[test]
fn setwise_product_is_a_commutative_idempotent_monoid() {
    for spec in ["Q8", "Z12", "S4", "D12", "A4"] {
        let g = GroupTable::build(spec).unwrap();
        let subs = g.normal_subgroups().unwrap();
        let prod = |i: usize, j: usize| {
            let p = g.subgroup_product(&subs[i], &subs[j]).unwrap();
            subs.iter()
                .position(|s| s.members() == p.members())
                .expect("product is in the canonical list")
        };
        let k = subs.len();
        for i in 0..k {
            assert_eq!(prod(i, i), i, "{spec}: idempotence");
            assert_eq!(prod(i, 0), i, "{spec}: trivial subgroup is the unit");
            for j in 0..k {
                assert_eq!(prod(i, j), prod(j, i), "{spec}: commutativity");
                for l in 0..k {
                    assert_eq!(
                        prod(prod(i, j), l),
                        prod(i, prod(j, l)),
                        "{spec}: associativity"
                    );
                }
            }
        }
    }
}
