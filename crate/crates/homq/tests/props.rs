//! Property-based invariants on random small instances.

use num_complex::Complex64;
use proptest::prelude::*;

use homq::graph::{Graph, VertexSubset};
use homq::hom::{global_power_sums, RestrictedHomInstance, SymmetricMatrixAssignment};
use homq::interp::{newton_power_sums_to, CoefficientPrefix};
use homq::oracle::full_polynomial_coefficients;

/// Random simple graph on `n` vertices as an edge bitmask.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let all_pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let count = all_pairs.len();
        (Just(n), Just(all_pairs), 0u64..(1u64 << count))
    })
    .prop_map(|(n, all_pairs, mask)| {
        let pairs: Vec<(usize, usize)> = all_pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::new(n, &pairs).unwrap()
    })
}

/// Exhaustive powerset filter for connected subsets.
fn brute_connected_subsets(g: &Graph, bound: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if members.is_empty() || members.len() > bound {
            continue;
        }
        let subset = VertexSubset::new(members.clone());
        if g.is_connected_subset(&subset).unwrap() {
            out.push(members);
        }
    }
    out.sort_by_key(|m| (m.len(), m.clone()));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_powerset_filter(g in graph_strategy(8), bound in 1usize..=8) {
        let listed: Vec<Vec<usize>> = g
            .enumerate_connected_subsets(bound)
            .into_iter()
            .map(|s| s.members().to_vec())
            .collect();
        let brute = brute_connected_subsets(&g, bound);
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn enumeration_has_no_duplicates(g in graph_strategy(8)) {
        let listed = g.enumerate_connected_subsets(g.vertex_count());
        let mut seen = std::collections::HashSet::new();
        for s in &listed {
            prop_assert!(seen.insert(s.members().to_vec()));
        }
    }

    #[test]
    fn newton_prefix_stability(
        coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
        order in 1usize..8,
    ) {
        // p_j depends only on a_1..a_j: truncating the prefix keeps p_1..p_k
        let mut full = vec![Complex64::new(1.0, 0.0)];
        full.extend(coeffs.iter().map(|&(re, im)| Complex64::new(re, im)));
        let all = newton_power_sums_to(&CoefficientPrefix::new(full.clone()).unwrap(), order);
        for k in 1..full.len() {
            let prefix = CoefficientPrefix::new(full[..=k].to_vec()).unwrap();
            let partial = newton_power_sums_to(&prefix, k.min(order));
            for (a, b) in partial.sums().iter().zip(all.sums()) {
                prop_assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn engine_matches_edge_subset_oracle(
        g in graph_strategy(5),
        entries in proptest::collection::vec((-0.3f64..0.3, -0.3f64..0.3), 0..31),
    ) {
        prop_assume!(entries.len() >= 3 * g.edge_count());
        let per_edge: Vec<Vec<Complex64>> = (0..g.edge_count())
            .map(|e| {
                let a = Complex64::new(1.0 + entries[3 * e].0, entries[3 * e].1);
                let b = Complex64::new(1.0 + entries[3 * e + 1].0, entries[3 * e + 1].1);
                let d = Complex64::new(1.0 + entries[3 * e + 2].0, entries[3 * e + 2].1);
                vec![a, b, b, d]
            })
            .collect();
        let mats = SymmetricMatrixAssignment::new(2, per_edge).unwrap();
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
        let order = inst.graph.edge_count().max(1);
        let engine = global_power_sums(&inst, order).unwrap();
        let oracle = newton_power_sums_to(&full_polynomial_coefficients(&inst).unwrap(), order);
        for (a, b) in engine.sums().iter().zip(oracle.sums()) {
            prop_assert!((a - b).norm() <= 1e-9 * b.norm().max(1.0));
        }
    }
}
