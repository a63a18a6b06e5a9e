use qtunnel_core::doublewell::*;
use qtunnel_core::graph::Graph;
use qtunnel_core::spectral::*;
use qtunnel_core::triplewell::*;
use qtunnel_core::walks::geodesic_coupling;

fn curve(g: &Graph, wells: &[usize], start: usize, target: usize, exp: f64, qs: &[f64]) {
    let p = PotentialSpec::simple(g.vertex_count(), wells, 1.0).unwrap();
    let cfg = SweepConfig {
        q_schedule: qs.to_vec(),
        window_exp: exp,
        ..SweepConfig::default()
    };
    match tc_curve(g, &p, start, target, &cfg) {
        Ok(curve) => {
            for e in &curve {
                println!(
                    "  Q={:>8.1} T={:>12.0} sup={:.6} argmax={:>12.2} step={:.3} negl={:.2e}",
                    e.q, e.window_t, e.sup_prob, e.argmax_t, e.grid_step, e.neglected_weight
                );
            }
        }
        Err(e) => println!("  error: {e}"),
    }
}

fn main() {
    let qs3 = [100.0, 10f64.powf(2.5), 1000.0];

    println!("== P3 symmetric double well (perfect, d=2), window 32*Q:");
    let p3 = Graph::path(3);
    curve(&p3, &[0, 2], 0, 2, 1.0, &qs3);
    let p = PotentialSpec::simple(3, &[0, 2], 1.0).unwrap();
    let cfg = SweepConfig { q_schedule: qs3.to_vec(), ..SweepConfig::default() };
    let fit = gap_scaling_fit(&p3, &p, &cfg).unwrap();
    println!("  gap slope = {:.4}", fit.slope);
    for pt in &fit.points {
        println!("  Q={:>8.1} gap={:.6e} argmax*gap/pi={:.5}", pt.q, pt.gap, pt.argmax_gap_over_pi);
    }
    let curve_est = tc_curve(&p3, &p, 0, 2, &cfg).unwrap();
    println!("  time exponent = {:.4}", time_exponent_fit(&curve_est, 0.5).unwrap());

    println!("== P4 partial (0,2), tc_pred = 8/9 = 0.8889, window 32*Q:");
    let p4 = Graph::path(4);
    curve(&p4, &[0, 2], 0, 2, 1.0, &qs3);

    println!("== P5 none (0,3), window 32*Q^2:");
    let p5 = Graph::path(5);
    curve(&p5, &[0, 3], 0, 3, 2.0, &qs3);

    println!("== spider(3,3,3) wells 1,4,7 (equal arms), start 4 -> 7, window 32*Q^2:");
    let y333 = Graph::spider(&[3, 3, 3]);
    curve(&y333, &[1, 4, 7], 4, 7, 2.0, &qs3);

    println!("== spider(2,3,3) wells 1,3,6, start 3 -> 6, window 32*Q^2:");
    let y233 = Graph::spider(&[2, 3, 3]);
    curve(&y233, &[1, 3, 6], 3, 6, 2.0, &qs3);

    println!("== spider(3,4,4) wells 1,4,8, start 4 -> 8, window 32*Q^2:");
    let y344 = Graph::spider(&[3, 4, 4]);
    curve(&y344, &[1, 4, 8], 4, 8, 2.0, &qs3);

    println!("== P5 (0,2,4) start 0 -> 4 (apex-mediated perfect), window 32*Q:");
    curve(&p5, &[0, 2, 4], 0, 4, 1.0, &qs3);

    println!("== broom: x=0; path 0-1-2(y); three 2-paths 0-*-6(z); start 2 -> 6, window 32*Q:");
    let broom = Graph::from_edge_list(&[(0,1),(1,2),(0,3),(0,4),(0,5),(3,6),(4,6),(5,6)]).unwrap();
    for v in 0..broom.vertex_count() { print!(" d({v})={}", broom.degree(v)); }
    println!();
    let gy = geodesic_coupling(&broom, 0, 2).unwrap();
    let gz = geodesic_coupling(&broom, 0, 6).unwrap();
    println!("  c(x,y)={} ({:.4})  c(x,z)={} ({:.4})", gy, gy.to_f64(), gz, gz.to_f64());
    curve(&broom, &[2, 6, 0], 2, 6, 1.0, &qs3);
    let analysis = classify_triple_well(&broom, 0, 2, 6, 2, None);
    match analysis { Ok(a) => println!("  broom classify tag: {:?} notes={:?}", a.tag, a.notes), Err(e) => println!("  err {e}") }

    println!("== P5 (0,2,4) start 2 (mixed from apex): scan both probabilities, Q=1000, T=32Q");
    let q = 1000.0;
    let pot = PotentialSpec::simple(5, &[0, 2, 4], q).unwrap();
    let d = eigendecompose(&hamiltonian(&p5, &pot).unwrap()).unwrap();
    let w_y = transfer_weights(&d, 2, 0);
    let w_z = transfer_weights(&d, 2, 4);
    let t_max = 32.0 * q;
    let steps = 200000;
    let mut best = (0.0f64, 0.0, 0.0);
    for i in 0..=steps {
        let t = i as f64 / steps as f64 * t_max;
        let py = transfer_probability_from_weights(&w_y, t);
        let pz = transfer_probability_from_weights(&w_z, t);
        let score = py.min(pz);
        if score > best.0 { best = (score, py, pz); }
    }
    println!("  best min(py,pz) = {:.4} (py={:.4}, pz={:.4})", best.0, best.1, best.2);
}
