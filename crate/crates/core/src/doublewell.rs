//! Tunneling measurement and double-well classification.
//!
//! The tunneling coefficient between two wells is the (liminf over depth of
//! the) supremum over time of the transfer probability. Operationally: scan
//! a window `T(Q) = C·Q^e` on a grid fine enough for every frequency that
//! carries weight, refine the best bracket by golden section, and watch the
//! estimates stabilize along an ascending depth schedule.
//!
//! The double-well regime itself needs no simulation: it is decided by two
//! integers, the well distance `d` and the cospectrality `co`, with the
//! partial-transfer level predicted exactly from walk sums at length `d`.

use crate::exact::{Rational, RadicalScalar};
use crate::graph::Graph;
use crate::spectral::{
    eigendecompose, hamiltonian, transfer_probability_from_weights, transfer_weights,
    well_eigenpairs, PotentialSpec, SpectralDecomposition,
};
use crate::walks::{cospectrality, Cospectrality, WellWalkSums};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

/// Sweep and scan parameters.
///
/// The window rule is `T(Q) = window_const · Q^window_exp`. The coarse grid
/// is densified at run time so its step stays below a tenth of the shortest
/// period among the frequencies that carry transfer weight; components whose
/// total weight falls below `neglect_mass` are excluded from that spread
/// (their worst-case effect on any probability is `2·neglect_mass`, recorded
/// per estimate), which is what keeps deep-well windows of size `Q²`
/// scannable at all.
#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    pub q_schedule: Vec<f64>,
    pub window_exp: f64,
    pub window_const: f64,
    pub coarse_steps: usize,
    pub refine_iters: usize,
    /// Ties within this tolerance resolve to the earliest time.
    pub tie_tol: f64,
    /// Spectral weight allowed to be ignored when sizing the grid.
    pub neglect_mass: f64,
    /// Hard cap on grid points; exceeding it is an error.
    pub max_grid: u64,
    /// Mass threshold for identifying well-concentrated eigenpairs.
    pub mass_threshold: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            q_schedule: vec![100.0, 10f64.powf(2.5), 1000.0],
            window_exp: 1.0,
            window_const: 32.0,
            coarse_steps: 4096,
            refine_iters: 48,
            tie_tol: 1e-4,
            neglect_mass: 1e-4,
            max_grid: 1 << 26,
            mass_threshold: 0.5,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_schedule.is_empty() {
            return Err(Error::InvalidArgument("empty Q schedule".into()));
        }
        if self
            .q_schedule
            .windows(2)
            .any(|w| !(w[0] < w[1]))
        {
            return Err(Error::InvalidArgument(
                "Q schedule must be strictly ascending".into(),
            ));
        }
        if self.q_schedule[0] <= 0.0 {
            return Err(Error::InvalidArgument("Q values must be positive".into()));
        }
        if self.window_const <= 0.0 {
            return Err(Error::InvalidArgument("window constant must be positive".into()));
        }
        if self.coarse_steps < 2 {
            return Err(Error::InvalidArgument("need at least two coarse steps".into()));
        }
        Ok(())
    }

    pub fn window(&self, q: f64) -> f64 {
        self.window_const * q.powf(self.window_exp)
    }
}

/// One supremum estimate at a fixed depth.
#[derive(Clone, Debug, Serialize)]
pub struct TunnelingEstimate {
    pub q: f64,
    pub window_t: f64,
    /// Largest transfer probability found; a lower bound on the true sup.
    pub sup_prob: f64,
    /// Earliest time attaining `sup_prob` within the tie tolerance.
    pub argmax_t: f64,
    /// Coarse grid step actually used.
    pub grid_step: f64,
    /// Total spectral weight excluded when sizing the grid.
    pub neglected_weight: f64,
}

/// Scan result before the depth label is attached.
#[derive(Clone, Debug)]
pub struct SupEstimate {
    pub sup_prob: f64,
    pub argmax_t: f64,
    pub grid_step: f64,
    pub neglected_weight: f64,
}

impl SupEstimate {
    pub fn with_depth(self, q: f64, window_t: f64) -> TunnelingEstimate {
        TunnelingEstimate {
            q,
            window_t,
            sup_prob: self.sup_prob,
            argmax_t: self.argmax_t,
            grid_step: self.grid_step,
            neglected_weight: self.neglected_weight,
        }
    }
}

fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    iters: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Supremum of the `start → target` transfer probability over `[0, T]`.
///
/// Coarse scan followed by golden-section refinement; the reported value is
/// a lower bound on the true supremum, and `argmax_t` is the earliest time
/// whose refined value ties the best one within `tie_tol`.
pub fn sup_transfer(
    d: &SpectralDecomposition,
    start: usize,
    target: usize,
    window_t: f64,
    cfg: &SweepConfig,
) -> Result<SupEstimate> {
    if !(window_t > 0.0) || !window_t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "window must be positive and finite, got {window_t}"
        )));
    }
    let weights = transfer_weights(d, start, target);

    // drop negligible-weight components from the grid-sizing spread
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&i, &j| {
        weights[j].1.abs().partial_cmp(&weights[i].1.abs()).unwrap()
    });
    let total: f64 = weights.iter().map(|&(_, w)| w.abs()).sum();
    let mut kept_mass = 0.0;
    let mut relevant: Vec<usize> = Vec::new();
    for &k in &order {
        if total - kept_mass <= cfg.neglect_mass && relevant.len() >= 2 {
            break;
        }
        kept_mass += weights[k].1.abs();
        relevant.push(k);
    }
    let neglected_weight = (total - kept_mass).max(0.0);
    let spread = {
        let freqs: Vec<f64> = relevant.iter().map(|&k| weights[k].0).collect();
        let lo = freqs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = freqs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo).max(0.0)
    };

    let steps_for_spread = if spread > 0.0 {
        (window_t * spread / (0.1 * std::f64::consts::TAU)).ceil() as u64
    } else {
        0
    };
    let steps = steps_for_spread.max(cfg.coarse_steps as u64);
    if steps > cfg.max_grid {
        return Err(Error::GridCapExceeded {
            needed: steps,
            cap: cfg.max_grid,
        });
    }
    let steps = steps as usize;
    let grid_step = window_t / steps as f64;

    let eval = |t: f64| transfer_probability_from_weights(&weights, t);

    let mut best_value = f64::NEG_INFINITY;
    let mut best_index = 0;
    let mut values = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let v = eval(i as f64 * grid_step);
        values.push(v);
        if v > best_value {
            best_value = v;
            best_index = i;
        }
    }

    let refine = |idx: usize| -> (f64, f64) {
        let lo = (idx.saturating_sub(1)) as f64 * grid_step;
        let hi = ((idx + 1).min(steps)) as f64 * grid_step;
        if lo >= hi {
            return (idx as f64 * grid_step, values[idx]);
        }
        let (t, v) = golden_section_max(eval, lo, hi, cfg.refine_iters);
        if v >= values[idx] {
            (t, v)
        } else {
            (idx as f64 * grid_step, values[idx])
        }
    };
    let (t_best, v_best) = refine(best_index);

    // argmax ties break to the earliest local maximum of the grid whose
    // refined summit reaches the best value within the tie tolerance
    let is_local_max = |i: usize| -> bool {
        let left_ok = i == 0 || values[i] >= values[i - 1];
        let right_ok = i == steps || values[i] >= values[i + 1];
        left_ok && right_ok
    };
    let mut sup_prob = v_best;
    let mut argmax_t = t_best;
    for i in 0..=steps {
        if !is_local_max(i) || values[i] < v_best - 2.0 * cfg.tie_tol {
            continue;
        }
        let (t, v) = refine(i);
        if v >= v_best - cfg.tie_tol {
            sup_prob = sup_prob.max(v);
            argmax_t = t;
            break;
        }
        if i >= best_index {
            break;
        }
    }

    Ok(SupEstimate {
        sup_prob: sup_prob.min(1.0),
        argmax_t,
        grid_step,
        neglected_weight,
    })
}

/// One tunneling estimate per scheduled depth, ascending.
pub fn tc_curve(
    g: &Graph,
    template: &PotentialSpec,
    start: usize,
    target: usize,
    cfg: &SweepConfig,
) -> Result<Vec<TunnelingEstimate>> {
    cfg.validate()?;
    g.check_vertex(start)?;
    g.check_vertex(target)?;
    let mut estimates = Vec::with_capacity(cfg.q_schedule.len());
    for &q in &cfg.q_schedule {
        let p = template.with_depth(q);
        let d = eigendecompose(&hamiltonian(g, &p)?)?;
        let window = cfg.window(q);
        let sup = sup_transfer(&d, start, target, window, cfg)?;
        estimates.push(sup.with_depth(q, window));
    }
    Ok(estimates)
}

/// Stabilization diagnostic over the tail of a sweep: the last value, and
/// whether the final three estimates agree within 0.02.
#[derive(Clone, Debug, Serialize)]
pub struct Stabilization {
    pub tail_value: f64,
    pub stable: bool,
    pub max_tail_deviation: f64,
}

pub fn stabilization(estimates: &[TunnelingEstimate]) -> Option<Stabilization> {
    let last = estimates.last()?;
    let window = &estimates[estimates.len().saturating_sub(3)..];
    let max_dev = window
        .iter()
        .map(|e| (e.sup_prob - last.sup_prob).abs())
        .fold(0.0f64, f64::max);
    Some(Stabilization {
        tail_value: last.sup_prob,
        stable: window.len() >= 3 && max_dev <= 0.02,
        max_tail_deviation: max_dev,
    })
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Least-squares slope of `log(argmax_t)` against `log(Q)` over estimates
/// whose supremum clears the usefulness floor.
pub fn time_exponent_fit(estimates: &[TunnelingEstimate], floor: f64) -> Result<f64> {
    let usable: Vec<&TunnelingEstimate> = estimates
        .iter()
        .filter(|e| e.sup_prob >= floor && e.argmax_t > 0.0)
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientPoints {
            need: 3,
            have: usable.len(),
        });
    }
    let xs: Vec<f64> = usable.iter().map(|e| e.q.ln()).collect();
    let ys: Vec<f64> = usable.iter().map(|e| e.argmax_t.ln()).collect();
    Ok(least_squares_slope(&xs, &ys))
}

/// Per-depth gap data for a double well.
#[derive(Clone, Debug, Serialize)]
pub struct GapPoint {
    pub q: f64,
    pub gap: f64,
    pub argmax_t: f64,
    /// `argmax_t · gap / π`; near 1 when the transfer peaks at the first
    /// half-period of the well doublet.
    pub argmax_gap_over_pi: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapScaling {
    /// Slope of `log(λ₂ − λ₁)` against `log Q`.
    pub slope: f64,
    pub points: Vec<GapPoint>,
}

/// Gap scaling over the schedule for a double well, with the per-depth
/// check that the transfer peaks at `π / gap`.
pub fn gap_scaling_fit(g: &Graph, template: &PotentialSpec, cfg: &SweepConfig) -> Result<GapScaling> {
    cfg.validate()?;
    let wells = template.wells();
    if wells.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "gap scaling needs exactly two wells, got {}",
            wells.len()
        )));
    }
    let mut points = Vec::new();
    for &q in &cfg.q_schedule {
        let p = template.with_depth(q);
        let d = eigendecompose(&hamiltonian(g, &p)?)?;
        let pairs = well_eigenpairs(&d, &wells, cfg.mass_threshold)?;
        if pairs.len() != 2 {
            return Err(Error::EigenpairIdentification {
                q,
                found: pairs.len(),
                expected: 2,
            });
        }
        let gap = d.eigenvalue(pairs[1]) - d.eigenvalue(pairs[0]);
        let window = cfg.window(q);
        let sup = sup_transfer(&d, wells[0], wells[1], window, cfg)?;
        points.push(GapPoint {
            q,
            gap,
            argmax_t: sup.argmax_t,
            argmax_gap_over_pi: sup.argmax_t * gap / std::f64::consts::PI,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.q.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.gap.abs().ln()).collect();
    Ok(GapScaling {
        slope: least_squares_slope(&xs, &ys),
        points,
    })
}

/// Double-well trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Perfect,
    Partial,
    NoTunneling,
}

/// Partial-regime prediction data derived from exact walk sums at the well
/// distance: the limiting well-restricted eigenvectors are `(a, b)` and
/// `(−b, a)`, and the transfer probability oscillates up to `4a²b²`.
#[derive(Clone, Debug, Serialize)]
pub struct PartialPrediction {
    /// `(P_xx(d) − P_yy(d)) / P_xy(d)`, exact.
    pub eigenvector_ratio: RadicalScalar,
    /// Predicted supremum `4a²b²` of the transfer probability.
    pub tc_pred: f64,
    pub a_sq: f64,
    pub b_sq: f64,
    /// The complementary level `a² = 1 − b²` (the reachable bound on the
    /// target-state occupancy quoted alongside the oscillation maximum;
    /// disagrees with `tc_pred` whenever `b² ≠ 1/4`, and simulation is the
    /// arbiter).
    pub occupancy_bound_a_sq: f64,
}

/// Combinatorial double-well classification.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleWellClassification {
    pub x: usize,
    pub y: usize,
    pub distance: usize,
    pub cospectrality: Cospectrality,
    pub k_cut: usize,
    pub regime: Regime,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<PartialPrediction>,
    /// Exact square of the leading gap coefficient: the doublet splitting is
    /// asymptotically `√(gap_coeff_sq) / (1 + Q)^{d−1}` in the tunneling
    /// regimes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_coeff_sq: Option<RadicalScalar>,
    /// Predicted time exponent `d − 1` (meaningful in tunneling regimes).
    pub time_exponent: usize,
}

impl DoubleWellClassification {
    /// Predicted doublet gap at depth `q`.
    pub fn gap_prediction(&self, q: f64) -> Option<f64> {
        let coeff_sq = self.gap_coeff_sq.as_ref()?.to_f64();
        Some(coeff_sq.sqrt() / (1.0 + q).powi(self.distance as i32 - 1))
    }

    /// Predicted first-peak transfer time at depth `q`: `π / gap`.
    pub fn peak_time_prediction(&self, q: f64) -> Option<f64> {
        self.gap_prediction(q).map(|gap| std::f64::consts::PI / gap)
    }

    /// The expected tunneling coefficient, when the regime pins one down.
    pub fn tc_expectation(&self) -> Option<f64> {
        match self.regime {
            Regime::Perfect => Some(1.0),
            Regime::Partial => self.partial.as_ref().map(|p| p.tc_pred),
            Regime::NoTunneling => Some(0.0),
        }
    }
}

/// Classifies the simple-potential double well at `x`, `y`:
/// `co ≥ d` is perfect, `co = d − 1` partial, `co < d − 1` no tunneling.
/// The default cospectrality cutoff is `2·diameter + 2`.
pub fn classify_double_well(
    g: &Graph,
    x: usize,
    y: usize,
    k_cut: Option<usize>,
) -> Result<DoubleWellClassification> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::CoincidentVertices(x));
    }
    let distance = g.distance(x, y)?;
    let k_cut = k_cut.unwrap_or(2 * g.diameter() + 2).max(distance);
    let co = cospectrality(g, x, y, k_cut)?;

    let regime = if co.at_least(distance) {
        Regime::Perfect
    } else if co.exact_value() == Some(distance - 1) {
        Regime::Partial
    } else {
        Regime::NoTunneling
    };

    let wells: BTreeSet<usize> = [x, y].into_iter().collect();
    let sums = WellWalkSums::new(g, &wells, distance)?;
    let p_xy = sums.value(distance, x, y)?;
    let (partial, gap_coeff_sq) = match regime {
        Regime::NoTunneling => (None, None),
        Regime::Perfect => {
            // diagonal difference vanishes through k = d; gap is 2·P_xy(d)
            let coeff_sq = p_xy.square() * Rational::from_integer(4.into());
            (None, Some(RadicalScalar::from_rational(coeff_sq)))
        }
        Regime::Partial => {
            let p_xx = sums.value(distance, x, x)?;
            let p_yy = sums.value(distance, y, y)?;
            let diff = p_xx
                .checked_add(&p_yy.neg())
                .expect("diagonal walk sums are rational");
            let ratio = diff.div(&p_xy);
            let c_abs = ratio.to_f64().abs();
            let r = 0.5 * (c_abs + (c_abs * c_abs + 4.0).sqrt());
            let a_sq = r * r / (1.0 + r * r);
            let b_sq = 1.0 / (1.0 + r * r);
            let coeff_sq = diff.square()
                + p_xy.square() * Rational::from_integer(4.into());
            (
                Some(PartialPrediction {
                    eigenvector_ratio: ratio,
                    tc_pred: 4.0 * a_sq * b_sq,
                    a_sq,
                    b_sq,
                    occupancy_bound_a_sq: a_sq,
                }),
                Some(RadicalScalar::from_rational(coeff_sq)),
            )
        }
    };

    Ok(DoubleWellClassification {
        x,
        y,
        distance,
        cospectrality: co,
        k_cut,
        regime,
        partial,
        gap_coeff_sq,
        time_exponent: distance - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::symmetrized_laplacian;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn decomposition(g: &Graph, wells: &[usize], q: f64) -> SpectralDecomposition {
        let p = PotentialSpec::simple(g.vertex_count(), wells, q).unwrap();
        eigendecompose(&hamiltonian(g, &p).unwrap()).unwrap()
    }

    #[test]
    fn sup_at_origin_for_self_transfer() {
        let g = Graph::cycle(4);
        let d = eigendecompose(&symmetrized_laplacian(&g)).unwrap();
        let cfg = SweepConfig::default();
        let est = sup_transfer(&d, 0, 0, 0.05, &cfg).unwrap();
        assert!(est.sup_prob > 0.999);
        assert!(est.argmax_t < 1e-3);
    }

    #[test]
    fn two_level_sup_is_sine_peak() {
        let g = Graph::path(2);
        let d = eigendecompose(&symmetrized_laplacian(&g)).unwrap();
        let cfg = SweepConfig::default();
        let est = sup_transfer(&d, 0, 1, PI, &cfg).unwrap();
        assert_relative_eq!(est.sup_prob, 1.0, epsilon = 1e-9);
        assert_relative_eq!(est.argmax_t, PI / 2.0, epsilon = 1e-6);
    }

    #[test]
    fn sup_monotone_in_window() {
        let g = Graph::path(3);
        let d = decomposition(&g, &[0, 2], 50.0);
        let cfg = SweepConfig::default();
        let mut last = 0.0;
        for &t in &[10.0, 60.0, 200.0, 800.0] {
            let est = sup_transfer(&d, 0, 2, t, &cfg).unwrap();
            assert!(est.sup_prob + 1e-12 >= last, "sup shrank when window grew");
            last = est.sup_prob;
        }
    }

    #[test]
    fn symmetric_double_well_curve_rises_to_one() {
        let g = Graph::path(3);
        let p = PotentialSpec::simple(3, &[0, 2], 1.0).unwrap();
        let cfg = SweepConfig {
            q_schedule: vec![100.0, 316.0, 1000.0],
            ..SweepConfig::default()
        };
        let curve = tc_curve(&g, &p, 0, 2, &cfg).unwrap();
        assert!(curve.windows(2).all(|w| w[0].q < w[1].q));
        assert!(curve.last().unwrap().sup_prob > 0.99);
        let stab = stabilization(&curve).unwrap();
        assert!(stab.stable, "tail deviation {}", stab.max_tail_deviation);
    }

    #[test]
    fn exponent_fit_on_synthetic_data() {
        let mk = |q: f64, t: f64| TunnelingEstimate {
            q,
            window_t: 1e9,
            sup_prob: 0.99,
            argmax_t: t,
            grid_step: 0.1,
            neglected_weight: 0.0,
        };
        // argmax_t ∝ Q gives slope 1; constant data gives slope 0
        let linear: Vec<_> = [10.0, 100.0, 1000.0].iter().map(|&q| mk(q, 3.0 * q)).collect();
        assert_relative_eq!(time_exponent_fit(&linear, 0.5).unwrap(), 1.0, epsilon = 1e-12);
        let flat: Vec<_> = [10.0, 100.0, 1000.0].iter().map(|&q| mk(q, 7.0)).collect();
        assert_relative_eq!(time_exponent_fit(&flat, 0.5).unwrap(), 0.0, epsilon = 1e-12);
        assert!(time_exponent_fit(&linear[..2], 0.5).is_err());
    }

    #[test]
    fn gap_scaling_identity_shift_is_flat() {
        // both vertices are wells: H = Δ − Q·I and the gap is exactly 2
        let g = Graph::path(2);
        let p = PotentialSpec::new(vec![1.0, 1.0], 1.0).unwrap();
        let cfg = SweepConfig {
            q_schedule: vec![10.0, 100.0, 1000.0],
            window_exp: 0.0,
            window_const: 8.0,
            ..SweepConfig::default()
        };
        let fit = gap_scaling_fit(&g, &p, &cfg).unwrap();
        assert_relative_eq!(fit.slope, 0.0, epsilon = 1e-9);
        for point in &fit.points {
            assert_relative_eq!(point.gap, 2.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn classify_path_ends_perfect() {
        let g = Graph::path(3);
        let c = classify_double_well(&g, 0, 2, None).unwrap();
        assert_eq!(c.regime, Regime::Perfect);
        assert_eq!(c.distance, 2);
        assert!(c.cospectrality.is_saturated());
        assert_eq!(c.time_exponent, 1);
        // gap coefficient 2·P_xy(2) = 2·(1/2) = 1
        assert_relative_eq!(c.gap_coeff_sq.unwrap().to_f64(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn classify_partial_and_none_instances() {
        // ends-vs-interior on the 4-path: distance 2, first return mismatch
        // at step 2, so cospectrality d − 1
        let g = Graph::path(4);
        let c = classify_double_well(&g, 0, 2, None).unwrap();
        assert_eq!(c.regime, Regime::Partial);
        assert_eq!(c.distance, 2);
        assert_eq!(c.cospectrality, Cospectrality::Exact(1));
        let partial = c.partial.unwrap();
        // ratio = (1/2 − 3/4)/(√2/4) = −(1/2)√2, tc_pred = 8/9
        assert_eq!(partial.eigenvector_ratio.to_string(), "-1/2*sqrt(2)");
        assert_relative_eq!(partial.tc_pred, 8.0 / 9.0, epsilon = 1e-12);
        assert_relative_eq!(
            partial.tc_pred + (partial.a_sq - partial.b_sq).powi(2),
            1.0,
            epsilon = 1e-12
        );

        // distance 3 with degree-mismatched wells: no tunneling
        let g = Graph::path(5);
        let c = classify_double_well(&g, 0, 3, None).unwrap();
        assert_eq!(c.regime, Regime::NoTunneling);
        assert_eq!(c.distance, 3);
        assert_eq!(c.cospectrality, Cospectrality::Exact(1));
        assert_eq!(c.tc_expectation(), Some(0.0));

        assert!(classify_double_well(&g, 2, 2, None).is_err());
    }
}
