use qtunnel_core::graph::Graph;
use qtunnel_core::series::ztilde_truncated;
use qtunnel_core::spectral::*;
use std::collections::BTreeSet;

fn level_stats(g: &Graph, weights: &[f64], q: f64) -> (f64, f64) {
    let p = PotentialSpec::new(weights.to_vec(), q).unwrap();
    let d = eigendecompose(&hamiltonian(g, &p).unwrap()).unwrap();
    // pair ascending eigenvalues with descending potential values
    let mut sorted_w = weights.to_vec();
    sorted_w.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let max_dev = (0..d.len())
        .map(|i| (d.eigenvalue(i) / q + sorted_w[i]).abs())
        .fold(0.0f64, f64::max);
    // off-level mass of the well (weight 1) eigenvectors: indices 0..#wells
    let wells: Vec<usize> = (0..weights.len()).filter(|&v| weights[v] == 1.0).collect();
    let mut off_mass = 0.0f64;
    for k in 0..wells.len() {
        let m: f64 = (0..weights.len())
            .filter(|v| !wells.contains(v))
            .map(|v| d.component(k, v).powi(2))
            .sum();
        off_mass = off_mass.max(m);
    }
    (max_dev, off_mass)
}

fn main() {
    let g = Graph::path(8);
    let w = [1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0];
    for q in [1e2, 1e3, 1e4] {
        let (dev, mass) = level_stats(&g, &w, q);
        println!("Q={q:>8.0}  max|lambda/Q + w| = {dev:.6e}   max off-level well mass = {mass:.6e}");
    }

    println!("\nZ-tilde fixed point at Q=1000 on the trichotomy instances:");
    for (name, g, wells) in [
        ("P3", Graph::path(3), vec![0usize, 2]),
        ("P4", Graph::path(4), vec![0, 2]),
        ("P5", Graph::path(5), vec![0, 3]),
    ] {
        let q = 1000.0;
        let p = PotentialSpec::simple(g.vertex_count(), &wells, q).unwrap();
        let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
        let pairs = well_eigenpairs(&d, &wells, 0.5).unwrap();
        let k_terms = 4 * g.diameter() + 8;
        let wset: BTreeSet<usize> = wells.iter().copied().collect();
        for &k in &pairs {
            let lambda = d.eigenvalue(k);
            let z = ztilde_truncated(&g, &wset, lambda, k_terms).unwrap();
            let target = 1.0 - q / (1.0 - lambda);
            let f: Vec<f64> = wells.iter().map(|&v| d.component(k, v)).collect();
            let mut res = 0.0f64;
            for i in 0..wells.len() {
                let zi: f64 = (0..wells.len()).map(|j| z.matrix[(i, j)] * f[j]).sum();
                res = res.max((zi - target * f[i]).abs());
            }
            println!(
                "  {name} eigenpair {k}: residual {res:.3e}  tail bound {:.3e}  K={k_terms}",
                z.max_tail()
            );
        }
    }

    println!("\nEigenvector condition on P5 (0,2,4) at Q=1000:");
    let g = Graph::path(5);
    let q = 1000.0;
    let p = PotentialSpec::simple(5, &[0, 2, 4], q).unwrap();
    let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
    let pairs = well_eigenpairs(&d, &[0, 2, 4], 0.5).unwrap();
    println!("  well pairs: {pairs:?}");
    for &k in &pairs {
        println!(
            "  k={k} lambda={:.4} psi|wells = ({:+.5}, {:+.5}, {:+.5})",
            d.eigenvalue(k),
            d.component(k, 0),
            d.component(k, 2),
            d.component(k, 4)
        );
    }
}
