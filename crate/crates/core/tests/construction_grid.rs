//! Oracle equivalence and structural certificates on a medium grid; the
//! full grid lives in the CLI crate's acceptance suite.

use symform::constructions::{
    ben_or, depth_four_formula, frontier_identity_holds, monotone_dc, newton_circuit,
    newton_homogeneous_formula,
};
use symform::poly::{oracle_s, RingMode, Weighting};
use symform::Rat;

#[test]
fn all_constructions_match_the_oracle_up_to_seven() {
    for n in 1..=7u32 {
        for k in 1..=n {
            let oracle = oracle_s::<Rat>(n, k, RingMode::Commutative);
            for (name, f) in [
                ("ben-or", ben_or::<Rat>(n, k).unwrap()),
                ("newton", newton_homogeneous_formula::<Rat>(n, k).unwrap()),
                ("depth4", depth_four_formula::<Rat>(n, k).unwrap()),
                ("monotone", monotone_dc::<Rat>(n, k).unwrap()),
            ] {
                assert_eq!(
                    f.expand(RingMode::Commutative),
                    oracle,
                    "{name} misses the oracle at n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn structural_certificates_up_to_six() {
    for n in 1..=6u32 {
        for k in 1..=n {
            let f = ben_or::<Rat>(n, k).unwrap();
            let stats = f.analyze();
            assert_eq!(stats.product_depth, 1, "ben-or at n={n} k={k}");
            assert!(f.verify_properties(None).unwrap().multilinear.ok);

            let f = newton_homogeneous_formula::<Rat>(n, k).unwrap();
            assert!(
                f.verify_properties(None).unwrap().homogeneous.ok,
                "newton at n={n} k={k}"
            );

            let f = depth_four_formula::<Rat>(n, k).unwrap();
            assert!(f.analyze().product_depth <= 2, "depth4 at n={n} k={k}");
            assert!(f.verify_properties(None).unwrap().homogeneous.ok);

            let f = monotone_dc::<Rat>(n, k).unwrap();
            let report = f.verify_properties(None).unwrap();
            assert!(
                report.monotone.ok && report.multilinear.ok && report.homogeneous.ok,
                "monotone at n={n} k={k}"
            );
        }
    }
}

#[test]
fn newton_circuit_per_node_w_homogeneity_up_to_ten() {
    for k in 1..=10u32 {
        let c = newton_circuit::<Rat>(k);
        let w = Weighting::ascending(k);
        // formal per-node w-degrees exist (sums consistent) ...
        let wdeg = c.formal_w_degrees(&w).unwrap();
        assert_eq!(wdeg[c.output().index()], k as u64);
        // ... and the polynomial at every node is w-homogeneous of exactly
        // that degree
        let polys = c.expand_nodes(RingMode::Commutative);
        for id in c.node_ids() {
            let degs = polys[id.index()].w_degree_set(&w).unwrap();
            assert!(degs.len() <= 1, "node {id:?} mixes w-degrees at k={k}");
            if let Some(&d) = degs.iter().next() {
                assert_eq!(d, wdeg[id.index()], "node {id:?} w-degree at k={k}");
            }
        }
    }
}

#[test]
fn frontier_identity_up_to_eight() {
    for k in 2..=8u32 {
        let c = newton_circuit::<Rat>(k);
        let w = Weighting::ascending(k);
        assert!(
            frontier_identity_holds(&c, &w).unwrap(),
            "frontier identity fails at k={k}"
        );
    }
}

#[test]
fn ben_or_size_is_independent_of_k() {
    for n in 1..=12u32 {
        let sizes: Vec<u64> = (0..=n).map(|k| ben_or::<Rat>(n, k).unwrap().size()).collect();
        assert!(sizes.windows(2).all(|w| w[0] == w[1]), "sizes vary at n={n}");
        assert_eq!(sizes[0], (n as u64 + 1) * (2 * n as u64 + 1));
    }
}

#[test]
fn balancing_size_stays_under_the_pinned_exponent_cap() {
    let consts = symform::bounds::BoundConstants::default();
    let (a, b) = consts.balance_size_exponent;
    for k in 2..=10u32 {
        let c = newton_circuit::<Rat>(k);
        let w = Weighting::ascending(k);
        let f = symform::constructions::circuit_to_formula(&c, &w).unwrap();
        let cap = (c.size() as f64 * k as f64).powf(a * (k as f64).log2() + b);
        assert!(
            (f.size() as f64) <= cap,
            "balanced formula size {} above cap {cap:.1} at k={k}",
            f.size()
        );
    }
}

#[test]
fn depth_four_outer_term_count_is_the_partition_number() {
    use symform::formula::NodeKind;
    for k in [3u32, 4, 5] {
        let f = depth_four_formula::<Rat>(8, k).unwrap();
        let NodeKind::Sum(terms) = f.kind(f.root()) else {
            panic!("depth-4 root should be a sum for k >= 2");
        };
        let p_k = symform::bounds::partition_function(k).unwrap();
        assert_eq!(terms.len() as u128, p_k, "outer term count at k={k}");
    }
}

#[test]
fn substituting_power_sums_into_the_newton_formula_is_homogeneous() {
    // plain substitution: a w-homogeneous formula over x1..x3 composed with
    // homogeneous formulas of matching degrees stays homogeneous, with
    // degree equal to the w-degree
    use std::collections::BTreeMap;
    use symform::constructions::{circuit_to_formula, polynomial_to_formula, power_sum_formula};
    use symform::poly::{newton_z, oracle_s, VarId};

    for source in [
        circuit_to_formula(&newton_circuit::<Rat>(3), &Weighting::ascending(3)).unwrap(),
        polynomial_to_formula(&newton_z::<Rat>(3)),
    ] {
        let mut subs = BTreeMap::new();
        for i in 1..=3u32 {
            subs.insert(VarId(i), power_sum_formula::<Rat>(4, i).unwrap());
        }
        let composed = source.substitute(&subs).unwrap();
        assert_eq!(
            composed.expand(RingMode::Commutative),
            oracle_s::<Rat>(4, 3, RingMode::Commutative)
        );
        let report = composed.verify_properties(None).unwrap();
        assert!(report.homogeneous.ok);
        assert_eq!(composed.analyze().formal_degree, 3);
    }
}

#[test]
fn monotone_diagonal_size_grows_superlinearly() {
    // along n = 2k the size outgrows both n and n^{3/2}: checked as exact
    // integer inequalities m_{k+1}^2 (2k)^3 > m_k^2 (2k+2)^3
    let sizes: Vec<u128> = (2..=9u32)
        .map(|k| monotone_dc::<Rat>(2 * k, k).unwrap().size() as u128)
        .collect();
    for (i, pair) in sizes.windows(2).enumerate() {
        let k = i as u128 + 2;
        let n_cur = 2 * k;
        let n_next = 2 * k + 2;
        assert!(
            pair[1] * n_cur > pair[0] * n_next,
            "size/n not increasing at k={k}"
        );
        assert!(
            pair[1] * pair[1] * n_cur.pow(3) > pair[0] * pair[0] * n_next.pow(3),
            "size/n^1.5 not increasing at k={k}"
        );
    }
}

#[test]
fn gate_quotient_circuits_stay_small() {
    use symform::constructions::{frontier, gate_quotient};
    for k in 2..=8u32 {
        let c = newton_circuit::<Rat>(k);
        let w = Weighting::ascending(k);
        for elem in frontier(&c, &w).unwrap() {
            let h = gate_quotient(&c, elem.node, &w).unwrap();
            assert!(
                h.size() <= c.size() + 1,
                "quotient size {} above {} + 1 at k={k}",
                h.size(),
                c.size()
            );
        }
    }
    for (c, w) in symform::corpus::w_homogeneous_circuits(5, 10) {
        let k = c.formal_w_degrees(&w).unwrap()[c.output().index()];
        if k < 2 {
            continue;
        }
        for elem in frontier(&c, &w).unwrap() {
            let h = gate_quotient(&c, elem.node, &w).unwrap();
            assert!(h.size() <= c.size() + 1);
        }
    }
}
