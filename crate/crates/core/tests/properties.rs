//! Property-based invariants over randomized graphs, potentials and times.

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use qtunnel_core::doublewell::{sup_transfer, SweepConfig};
use qtunnel_core::exact::{odd_over_even, ratio, RadicalScalar, Rational};
use qtunnel_core::graph::Graph;
use qtunnel_core::spectral::{
    eigendecompose, evolve, hamiltonian, symmetrized_laplacian, PotentialSpec, QuantumState,
};
use qtunnel_core::walks::{cospectrality, transition_powers};
use std::collections::BTreeSet;

/// Connected graph on 2..=6 vertices drawn from the edge subsets of K6.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=6, any::<u32>()).prop_filter_map("connected graph", |(n, bits)| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        // always keep a spanning path so the filter discards little
        for v in 1..n {
            if !edges.contains(&(v - 1, v)) {
                edges.push((v - 1, v));
            }
        }
        Graph::with_vertices(n, &edges).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rows_of_transition_powers_are_stochastic(g in connected_graph(), k in 0usize..5) {
        let table = transition_powers(&g, k, &BTreeSet::new()).unwrap();
        let n = g.vertex_count();
        for v in 0..n {
            let total: Rational = (0..n).map(|w| table.entry(k, v, w).clone()).sum();
            prop_assert_eq!(total, Rational::one());
        }
    }

    #[test]
    fn cospectrality_is_symmetric(g in connected_graph(), cut in 2usize..8) {
        let n = g.vertex_count();
        for x in 0..n {
            for y in x + 1..n {
                prop_assert_eq!(
                    cospectrality(&g, x, y, cut).unwrap(),
                    cospectrality(&g, y, x, cut).unwrap()
                );
            }
        }
    }

    #[test]
    fn graph_file_round_trip(g in connected_graph()) {
        let text = g.to_file_string();
        let parsed = Graph::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(parsed.to_file_string(), text);
    }

    #[test]
    fn radical_products_square_consistently(
        a in 1i64..200, b in 1i64..200, r in 1u32..120, s in 1u32..120,
    ) {
        let x = RadicalScalar::new(ratio(a, b), BigUint::from(r));
        let y = RadicalScalar::new(ratio(b, a), BigUint::from(s));
        // multiplication commutes and squares multiply
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).square(), x.square() * y.square());
        // squaring then square-rooting a rational square is the identity
        let sq = RadicalScalar::from_rational(x.square());
        prop_assert!(sq.is_rational());
        // reciprocal inverts
        prop_assert_eq!(x.mul(&x.recip()).as_rational(), Some(&Rational::one()));
    }

    #[test]
    fn odd_over_even_matches_definition(p in -400i64..400, q in 1i64..400) {
        prop_assume!(p != 0);
        let value = ratio(p, q);
        let numer_odd = value.numer().magnitude() % 2u32 == BigUint::from(1u32);
        let denom_even = value.denom().magnitude() % 2u32 == BigUint::from(0u32);
        prop_assert_eq!(odd_over_even(&value), numer_odd && denom_even);
    }

    #[test]
    fn evolution_is_unitary_and_composes(
        g in connected_graph(),
        well_seed in any::<u64>(),
        q in 1.0f64..2000.0,
        s in 0.0f64..60.0,
        t in 0.0f64..60.0,
    ) {
        let n = g.vertex_count();
        let well = (well_seed as usize) % n;
        let p = PotentialSpec::simple(n, &[well], q).unwrap();
        let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
        let phi0 = QuantumState::basis_state(n, (well + 1) % n).unwrap();

        let phi_s = evolve(&d, &phi0, s);
        prop_assert!((phi_s.norm() - 1.0).abs() < 1e-9);

        let chained = evolve(&d, &phi_s, t);
        let direct = evolve(&d, &phi0, s + t);
        let defect: f64 = chained
            .amplitudes()
            .iter()
            .zip(direct.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        prop_assert!(defect < 1e-8, "group law defect {defect}");
    }

    #[test]
    fn sup_transfer_is_monotone_in_the_window(
        t_low in 0.5f64..30.0,
        factor in 1.0f64..8.0,
    ) {
        let g = Graph::path(3);
        let p = PotentialSpec::simple(3, &[0, 2], 40.0).unwrap();
        let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
        let cfg = SweepConfig::default();
        let small = sup_transfer(&d, 0, 2, t_low, &cfg).unwrap();
        let large = sup_transfer(&d, 0, 2, t_low * factor, &cfg).unwrap();
        prop_assert!(large.sup_prob + 1e-12 >= small.sup_prob);
    }

    #[test]
    fn self_transfer_approaches_one_for_short_windows(eps in 1e-4f64..0.3) {
        let g = Graph::cycle(6);
        let d = eigendecompose(&symmetrized_laplacian(&g)).unwrap();
        let cfg = SweepConfig::default();
        let est = sup_transfer(&d, 3, 3, eps, &cfg).unwrap();
        // the window always contains t = 0 where the probability is one
        prop_assert!(est.sup_prob > 0.999);
    }
}
