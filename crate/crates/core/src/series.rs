//! Truncated well-series matrices and the eigenfunction extension map.
//!
//! For a simple potential the well-restricted eigenvalue problem reduces to
//! the matrix `Z̃(λ)` with entries `Σ_{k≥1} P_vw(k)/(1−λ)^k`, where the
//! `P_vw(k)` are the symmetrized well-avoiding walk sums. For a general
//! potential the analogous matrix sums walk weights
//! `Π 1/(√(d_j d_{j+1})(1−λ−Q·W(x_j)))` grouped by length. Both series are
//! infinite; every truncation here is paired with a certified geometric
//! tail bound.

use crate::graph::Graph;
use crate::spectral::PotentialSpec;
use crate::walks::WellWalkSums;
use crate::{Error, Result};
use nalgebra::DMatrix;
use std::collections::BTreeSet;

/// A truncated well-series matrix with its tail bounds.
#[derive(Clone, Debug)]
pub struct SeriesMatrix {
    /// Wells in ascending vertex order; indexes the matrix.
    pub wells: Vec<usize>,
    /// Partial sums through walk length `terms`.
    pub matrix: DMatrix<f64>,
    /// Entrywise bound on the neglected tail.
    pub tail: DMatrix<f64>,
    /// Number of series terms summed.
    pub terms: usize,
}

impl SeriesMatrix {
    pub fn max_tail(&self) -> f64 {
        self.tail.iter().fold(0.0f64, |acc, &t| acc.max(t))
    }

    pub fn well_index(&self, v: usize) -> Option<usize> {
        self.wells.iter().position(|&w| w == v)
    }
}

/// Truncated `Z̃(λ)`: partial sums of `P_vw(k)/(1−λ)^k` through `k = terms`.
///
/// Needs `λ < −1` so that `|1−λ| > 2` dominates the walk sums (each
/// `|P_vw(k)| ≤ √(d_v d_w)`), making the tail geometric:
/// `|remainder| ≤ √(d_v d_w)·r^{K+1}/(1−r)` with `r = 1/|1−λ|`.
pub fn ztilde_truncated(
    g: &Graph,
    wells: &BTreeSet<usize>,
    lambda: f64,
    terms: usize,
) -> Result<SeriesMatrix> {
    if !(lambda < -1.0) {
        return Err(Error::LambdaOutOfRange {
            lambda,
            requirement: "lambda < -1 so that |1 - lambda| > 2".into(),
        });
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("need at least one series term".into()));
    }
    let sums = WellWalkSums::new(g, wells, terms)?;
    let well_list: Vec<usize> = sums.wells().to_vec();
    let m = well_list.len();
    let t = 1.0 / (1.0 - lambda);

    let mut matrix = DMatrix::zeros(m, m);
    for (i, &v) in well_list.iter().enumerate() {
        for (j, &w) in well_list.iter().enumerate() {
            let mut acc = 0.0;
            let mut tk = 1.0;
            for k in 1..=terms {
                tk *= t;
                acc += sums.value(k, v, w)?.to_f64() * tk;
            }
            matrix[(i, j)] = acc;
        }
    }
    // symmetrize: the exact values are symmetric, only rounding differs
    for i in 0..m {
        for j in 0..i {
            let avg = 0.5 * (matrix[(i, j)] + matrix[(j, i)]);
            matrix[(i, j)] = avg;
            matrix[(j, i)] = avg;
        }
    }

    let r = t.abs();
    let geometric = r.powi(terms as i32 + 1) / (1.0 - r);
    let mut tail = DMatrix::zeros(m, m);
    for (i, &v) in well_list.iter().enumerate() {
        for (j, &w) in well_list.iter().enumerate() {
            tail[(i, j)] = ((g.degree(v) as f64) * (g.degree(w) as f64)).sqrt() * geometric;
        }
    }

    Ok(SeriesMatrix {
        wells: well_list,
        matrix,
        tail,
        terms,
    })
}

/// Walk-weight factors for the general-potential series at `(λ, Q)`:
/// `B(x, y) = 1/(√(d_x d_y)·(1 − λ − Q·W(x)))` on edges.
struct WeightedStep {
    n: usize,
    wells: Vec<usize>,
    is_well: Vec<bool>,
    b: DMatrix<f64>,
    /// geometric ratio of the off-well factors
    bulk_ratio: f64,
    /// 1/|1−λ−Q| at the wells
    well_factor: f64,
}

fn weighted_step(g: &Graph, p: &PotentialSpec, lambda: f64) -> Result<WeightedStep> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::DimensionMismatch(p.vertex_count(), g.vertex_count()));
    }
    let n = g.vertex_count();
    let q = p.depth();
    let margin = 1e-9 * (1.0 + lambda.abs() + q);
    let mut denom = vec![0.0; n];
    for x in 0..n {
        let d = 1.0 - lambda - q * p.weight(x);
        if d.abs() < margin {
            return Err(Error::MarginViolation {
                vertex: x,
                value: d.abs(),
            });
        }
        denom[x] = d;
    }
    let mut b = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        let root = ((g.degree(u) as f64) * (g.degree(v) as f64)).sqrt();
        b[(u, v)] = 1.0 / (root * denom[u]);
        b[(v, u)] = 1.0 / (root * denom[v]);
    }
    let wells = p.wells();
    let is_well: Vec<bool> = (0..n).map(|x| wells.contains(&x)).collect();
    let bulk_ratio = (0..n)
        .filter(|&x| !is_well[x])
        .map(|x| 1.0 / denom[x].abs())
        .fold(0.0f64, f64::max);
    let well_factor = 1.0 / (1.0 - lambda - q).abs();
    Ok(WeightedStep {
        n,
        wells,
        is_well,
        b,
        bulk_ratio,
        well_factor,
    })
}

/// Truncated general-potential well matrix: the sum of walk weights over
/// walks `v → w` (wells at both ends, interior off the wells), grouped by
/// length and computed by a linear recurrence — never by path enumeration.
///
/// For the simple potential this equals `(1−λ)/(1−λ−Q) · Z̃(λ)` entrywise.
pub fn z_general_truncated(
    g: &Graph,
    p: &PotentialSpec,
    lambda: f64,
    terms: usize,
) -> Result<SeriesMatrix> {
    if terms == 0 {
        return Err(Error::InvalidArgument("need at least one series term".into()));
    }
    let step = weighted_step(g, p, lambda)?;
    let m = step.wells.len();
    let mut matrix = DMatrix::zeros(m, m);

    // column w: col_k(x) = sum over walks x -> w of length k, interiors off
    // the wells; col_{k+1} = B · (mask · col_k)
    for (j, &w) in step.wells.iter().enumerate() {
        let mut col: Vec<f64> = (0..step.n).map(|x| step.b[(x, w)]).collect();
        for (i, &v) in step.wells.iter().enumerate() {
            matrix[(i, j)] += col[v];
        }
        for _k in 2..=terms {
            let masked: Vec<f64> = (0..step.n)
                .map(|x| if step.is_well[x] { 0.0 } else { col[x] })
                .collect();
            let mut next = vec![0.0; step.n];
            for x in 0..step.n {
                let mut acc = 0.0;
                for &y in g.neighbors(x) {
                    acc += step.b[(x, y)] * masked[y];
                }
                next[x] = acc;
            }
            col = next;
            for (i, &v) in step.wells.iter().enumerate() {
                matrix[(i, j)] += col[v];
            }
        }
    }

    // |length-k sum| <= sqrt(d_v d_w) · well_factor · bulk_ratio^{k-1}
    let q_ratio = step.bulk_ratio;
    let geometric = if q_ratio < 1.0 {
        step.well_factor * q_ratio.powi(terms as i32) / (1.0 - q_ratio)
    } else {
        f64::INFINITY
    };
    let mut tail = DMatrix::zeros(m, m);
    for (i, &v) in step.wells.iter().enumerate() {
        for (j, &w) in step.wells.iter().enumerate() {
            tail[(i, j)] = ((g.degree(v) as f64) * (g.degree(w) as f64)).sqrt() * geometric;
        }
    }

    Ok(SeriesMatrix {
        wells: step.wells,
        matrix,
        tail,
        terms,
    })
}

/// A truncated extension of well values to the whole graph.
#[derive(Clone, Debug)]
pub struct Extension {
    /// Values on every vertex; wells carry the prescribed values.
    pub values: Vec<f64>,
    /// Uniform bound on the truncation error of any off-well value.
    pub tail_bound: f64,
    /// Bound on `|(H f)(x) − λ f(x)|` for off-well `x`, valid whenever the
    /// prescribed well values are eigen-consistent at this `λ`.
    pub residual_bound: f64,
}

/// Extends `f` from the wells to all of `X` by truncated walk sums: for
/// `x ∉ L`, `f(x) = Σ_{walks x→L} f(endpoint)·(walk weight)` summed through
/// the length cutoff.
pub fn extend_from_wells(
    g: &Graph,
    p: &PotentialSpec,
    f_wells: &[f64],
    lambda: f64,
    terms: usize,
) -> Result<Extension> {
    if terms == 0 {
        return Err(Error::InvalidArgument("need at least one series term".into()));
    }
    let step = weighted_step(g, p, lambda)?;
    if f_wells.len() != step.wells.len() {
        return Err(Error::DimensionMismatch(f_wells.len(), step.wells.len()));
    }
    let mut embedded = vec![0.0; step.n];
    for (&w, &fw) in step.wells.iter().zip(f_wells) {
        embedded[w] = fw;
    }

    // u_1 = B · f_L, u_{k+1} = B · (mask · u_k); off-well extension sums u_k
    let mut values = vec![0.0; step.n];
    let mut u: Vec<f64> = (0..step.n)
        .map(|x| {
            g.neighbors(x)
                .iter()
                .map(|&y| step.b[(x, y)] * embedded[y])
                .sum()
        })
        .collect();
    for x in 0..step.n {
        if !step.is_well[x] {
            values[x] += u[x];
        }
    }
    for _k in 2..=terms {
        let masked: Vec<f64> = (0..step.n)
            .map(|x| if step.is_well[x] { 0.0 } else { u[x] })
            .collect();
        let mut next = vec![0.0; step.n];
        for x in 0..step.n {
            let mut acc = 0.0;
            for &y in g.neighbors(x) {
                acc += step.b[(x, y)] * masked[y];
            }
            next[x] = acc;
        }
        u = next;
        for x in 0..step.n {
            if !step.is_well[x] {
                values[x] += u[x];
            }
        }
    }
    for (&w, &fw) in step.wells.iter().zip(f_wells) {
        values[w] = fw;
    }

    let d_max = (0..step.n).map(|v| g.degree(v)).max().unwrap_or(1) as f64;
    let f_scale: f64 = step
        .wells
        .iter()
        .zip(f_wells)
        .map(|(&w, &fw)| (g.degree(w) as f64).sqrt() * fw.abs())
        .sum();
    let q_ratio = step.bulk_ratio;
    let tail_bound = if q_ratio < 1.0 {
        d_max.sqrt() * f_scale * q_ratio.powi(terms as i32 + 1) / (1.0 - q_ratio)
    } else {
        f64::INFINITY
    };
    // (H f − λ f)(x) only feels the truncated tail, through the diagonal
    // factor and at most d_max neighbor couplings
    let residual_bound =
        tail_bound * ((1.0 + lambda.abs() + p.depth()) + d_max);

    Ok(Extension {
        values,
        tail_bound,
        residual_bound,
    })
}
