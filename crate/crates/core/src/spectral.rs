//! Floating-point spectral layer: potentials, Hamiltonians, eigensystems,
//! and closed-form quantum evolution.
//!
//! The Hamiltonian is `H = Δ − Q·diag(W)` with `Δ` the symmetrized graph
//! Laplacian (ones on the diagonal, `−1/√(d_x d_y)` on edges). Evolution is
//! evaluated in the eigenbasis, so states at arbitrary times cost `O(n²)`
//! with no error accumulation — essential when scanning windows that grow
//! polynomially in the well depth.

use crate::graph::Graph;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Relative eigenpair residual tolerance: `1e-10 · (1 + ‖H‖)`.
pub const EIGEN_TOL: f64 = 1e-10;
/// Two eigenvalues closer than `1e-8 · ‖H‖` are reported as a cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Unit-norm tolerance for quantum states.
pub const STATE_NORM_TOL: f64 = 1e-9;

/// Vertex weights in `[0, 1]` with the maximum exactly 1 (attained on the
/// well set), plus the depth scalar `Q`.
#[derive(Clone, Debug)]
pub struct PotentialSpec {
    weights: Vec<f64>,
    depth: f64,
}

impl PotentialSpec {
    pub fn new(weights: Vec<f64>, depth: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidPotential("no vertices".into()));
        }
        if !depth.is_finite() || depth < 0.0 {
            return Err(Error::InvalidPotential(format!(
                "depth must be finite and nonnegative, got {depth}"
            )));
        }
        let mut saw_one = false;
        for (v, &w) in weights.iter().enumerate() {
            if !w.is_finite() || !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidPotential(format!(
                    "weight at vertex {v} must lie in [0, 1], got {w}"
                )));
            }
            saw_one |= w == 1.0;
        }
        if !saw_one {
            return Err(Error::InvalidPotential(
                "no vertex attains the maximum weight 1".into(),
            ));
        }
        Ok(Self { weights, depth })
    }

    /// Simple potential: weight 1 exactly on `wells`, 0 elsewhere.
    pub fn simple(n: usize, wells: &[usize], depth: f64) -> Result<Self> {
        if wells.is_empty() {
            return Err(Error::InvalidPotential("no wells given".into()));
        }
        let mut weights = vec![0.0; n];
        for &w in wells {
            if w >= n {
                return Err(Error::InvalidVertex { vertex: w, n });
            }
            weights[w] = 1.0;
        }
        Self::new(weights, depth)
    }

    /// Parses the potential file format: lines `vertex weight`, unspecified
    /// vertices default to 0; `#` comments allowed. Depth is supplied
    /// separately.
    pub fn parse(text: &str, n: usize, depth: f64) -> Result<Self> {
        let mut weights = vec![0.0; n];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::InvalidPotential(format!(
                    "line {}: expected `vertex weight`",
                    lineno + 1
                )));
            }
            let v: usize = fields[0].parse().map_err(|_| {
                Error::InvalidPotential(format!("line {}: bad vertex id", lineno + 1))
            })?;
            let w: f64 = fields[1].parse().map_err(|_| {
                Error::InvalidPotential(format!("line {}: bad weight", lineno + 1))
            })?;
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            weights[v] = w;
        }
        Self::new(weights, depth)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    /// Same weights, different depth.
    pub fn with_depth(&self, depth: f64) -> Self {
        Self {
            weights: self.weights.clone(),
            depth,
        }
    }

    /// The well set: vertices where the weight is exactly 1, ascending.
    pub fn wells(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter_map(|(v, &w)| (w == 1.0).then_some(v))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }
}

/// A real symmetric operator, constructed symmetric rather than tested.
#[derive(Clone, Debug)]
pub struct SymmetricOperator {
    mat: DMatrix<f64>,
}

impl SymmetricOperator {
    pub fn dimension(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.mat[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Builds from the strict lower triangle plus diagonal of `f`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut mat = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let value = f(i, j);
                mat[(i, j)] = value;
                mat[(j, i)] = value;
            }
        }
        Self { mat }
    }
}

/// Symmetrized Laplacian: 1 on the diagonal, `−1/√(d_x d_y)` on edges.
pub fn symmetrized_laplacian(g: &Graph) -> SymmetricOperator {
    let n = g.vertex_count();
    let mut mat = DMatrix::zeros(n, n);
    for v in 0..n {
        mat[(v, v)] = 1.0;
    }
    for &(u, v) in g.edges() {
        let coupling = -1.0 / ((g.degree(u) as f64) * (g.degree(v) as f64)).sqrt();
        mat[(u, v)] = coupling;
        mat[(v, u)] = coupling;
    }
    SymmetricOperator { mat }
}

/// `H = Δ − Q·diag(W)`.
pub fn hamiltonian(g: &Graph, p: &PotentialSpec) -> Result<SymmetricOperator> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::DimensionMismatch(p.vertex_count(), g.vertex_count()));
    }
    let mut op = symmetrized_laplacian(g);
    for v in 0..g.vertex_count() {
        op.mat[(v, v)] -= p.depth() * p.weight(v);
    }
    Ok(op)
}

/// Ascending eigenvalues with orthonormal eigenvectors.
///
/// Signs are fixed deterministically (first coordinate of magnitude above
/// `1e-12` is positive). Eigenvalues closer than `CLUSTER_TOL · ‖H‖` are
/// grouped into clusters; individual vectors inside a cluster span the right
/// space but are not individually meaningful.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    vectors: DMatrix<f64>,
    clusters: Vec<(usize, usize)>,
    operator_norm: f64,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k]
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Coordinate `x` of eigenvector `k`.
    pub fn component(&self, k: usize, x: usize) -> f64 {
        self.vectors[(x, k)]
    }

    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.vectors.column(k).into_owned()
    }

    /// Inclusive index ranges of numerically degenerate clusters.
    pub fn clusters(&self) -> &[(usize, usize)] {
        &self.clusters
    }

    /// The cluster containing eigenpair `k`.
    pub fn cluster_of(&self, k: usize) -> (usize, usize) {
        *self
            .clusters
            .iter()
            .find(|&&(lo, hi)| lo <= k && k <= hi)
            .expect("every index belongs to a cluster")
    }

    pub fn operator_norm(&self) -> f64 {
        self.operator_norm
    }
}

/// Cyclic Jacobi diagonalization. Slower than tridiagonal reduction but
/// backward stable with residuals near machine precision even for clustered
/// eigenvalues, which the deep-well Hamiltonians produce on purpose.
fn jacobi_eigen(mat: &DMatrix<f64>, max_sweeps: usize) -> Option<(Vec<f64>, DMatrix<f64>)> {
    let n = mat.nrows();
    let mut a = mat.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 1 || frobenius == 0.0 {
        return Some(((0..n).map(|i| a[(i, i)]).collect(), v));
    }
    let target = f64::EPSILON * frobenius;
    for _sweep in 0..max_sweeps {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if (2.0 * off).sqrt() <= target {
            return Some(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[(r, p)];
                        let arq = a[(r, q)];
                        a[(r, p)] = c * arp - s * arq;
                        a[(p, r)] = a[(r, p)];
                        a[(r, q)] = s * arp + c * arq;
                        a[(q, r)] = a[(r, q)];
                    }
                }
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
    }
    None
}

/// Dense symmetric eigendecomposition with validation.
pub fn eigendecompose(op: &SymmetricOperator) -> Result<SpectralDecomposition> {
    let n = op.dimension();
    let (raw_values, raw_vectors) = jacobi_eigen(&op.mat, 64).ok_or(Error::EigenConvergence)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        raw_values[i]
            .partial_cmp(&raw_values[j])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = raw_vectors.column(src).into_owned();
        if let Some(lead) = col.iter().find(|c| c.abs() > 1e-12) {
            if *lead < 0.0 {
                col.neg_mut();
            }
        }
        vectors.set_column(dst, &col);
    }

    let operator_norm = eigenvalues
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs()));

    // validation: residuals and orthonormality
    let residual_tol = EIGEN_TOL * (1.0 + operator_norm);
    for k in 0..n {
        let v = vectors.column(k);
        let r = (&op.mat * v) - eigenvalues[k] * v;
        if r.norm() > residual_tol {
            return Err(Error::SpectralValidation(format!(
                "residual {:.3e} above tolerance {residual_tol:.3e} for eigenpair {k}",
                r.norm()
            )));
        }
    }
    let gram = vectors.transpose() * &vectors;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { 1.0 } else { 0.0 };
            if (gram[(i, j)] - expect).abs() > 1e-10 {
                return Err(Error::SpectralValidation(format!(
                    "orthonormality defect {:.3e} at ({i}, {j})",
                    (gram[(i, j)] - expect).abs()
                )));
            }
        }
    }

    let mut clusters = Vec::new();
    let gap_tol = CLUSTER_TOL * operator_norm.max(f64::MIN_POSITIVE);
    let mut start = 0;
    for k in 1..=n {
        if k == n || eigenvalues[k] - eigenvalues[k - 1] > gap_tol {
            clusters.push((start, k - 1));
            start = k;
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        vectors,
        clusters,
        operator_norm,
    })
}

/// A pure state: complex amplitudes of unit norm.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self { amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "state norm {norm} is not 1 within {STATE_NORM_TOL:e}"
            )));
        }
        Ok(state)
    }

    /// The particle localized at vertex `v`.
    pub fn basis_state(n: usize, v: usize) -> Result<Self> {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
        let mut amplitudes = vec![Complex64::ZERO; n];
        amplitudes[v] = Complex64::ONE;
        Ok(Self { amplitudes })
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, v: usize) -> Complex64 {
        self.amplitudes[v]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `|φ(x)|²` for every vertex.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Closed-form evolution: `φ_t = Σ_k ⟨ψ_k, φ₀⟩ e^{i t λ_k} ψ_k`.
pub fn evolve(d: &SpectralDecomposition, phi0: &QuantumState, t: f64) -> QuantumState {
    let n = d.len();
    debug_assert_eq!(phi0.dimension(), n);
    debug_assert!((phi0.norm() - 1.0).abs() < 1e-6, "evolve needs a unit state");
    let mut amplitudes = vec![Complex64::ZERO; n];
    for k in 0..n {
        let mut coeff = Complex64::ZERO;
        for x in 0..n {
            coeff += phi0.amplitude(x) * d.component(k, x);
        }
        let phase = Complex64::from_polar(1.0, t * d.eigenvalue(k));
        let rotated = coeff * phase;
        for x in 0..n {
            amplitudes[x] += rotated * d.component(k, x);
        }
    }
    QuantumState { amplitudes }
}

/// Spectral weights of the `start → target` transfer: pairs
/// `(λ_k − λ_1, ψ_k(start)·ψ_k(target))`. The common shift by `λ_1` is a
/// global phase, harmless to probabilities but much better conditioned when
/// `t·λ` would otherwise reach 1e10.
pub fn transfer_weights(d: &SpectralDecomposition, start: usize, target: usize) -> Vec<(f64, f64)> {
    let base = d.eigenvalue(0);
    (0..d.len())
        .map(|k| {
            (
                d.eigenvalue(k) - base,
                d.component(k, start) * d.component(k, target),
            )
        })
        .collect()
}

/// `|φ_t(target)|²` for the particle started at `start`, via the shifted
/// weight form. Equal to `evolve(..).probabilities()[target]` up to global
/// phase.
pub fn transfer_probability_from_weights(weights: &[(f64, f64)], t: f64) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for &(freq, w) in weights {
        let (s, c) = (t * freq).sin_cos();
        re += w * c;
        im += w * s;
    }
    re * re + im * im
}

pub fn transfer_probability(
    d: &SpectralDecomposition,
    start: usize,
    target: usize,
    t: f64,
) -> f64 {
    transfer_probability_from_weights(&transfer_weights(d, start, target), t)
}

/// Indices of eigenpairs whose squared mass on the wells reaches the
/// threshold. For a deep enough potential this returns exactly one index per
/// well, and they are the lowest eigenvalues; fewer indices than wells is a
/// "depth too small" diagnostic, not an error.
pub fn well_eigenpairs(
    d: &SpectralDecomposition,
    wells: &[usize],
    mass_threshold: f64,
) -> Result<Vec<usize>> {
    if !(0.0..1.0).contains(&mass_threshold) || mass_threshold == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mass threshold must lie in (0, 1), got {mass_threshold}"
        )));
    }
    Ok((0..d.len())
        .filter(|&k| {
            let mass: f64 = wells.iter().map(|&x| d.component(k, x).powi(2)).sum();
            mass >= mass_threshold
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laplacian_entries() {
        let p2 = Graph::path(2);
        let l = symmetrized_laplacian(&p2);
        assert_eq!(l.entry(0, 0), 1.0);
        assert_eq!(l.entry(0, 1), -1.0);

        let k3 = Graph::complete(3);
        let l = symmetrized_laplacian(&k3);
        assert_eq!(l.entry(1, 1), 1.0);
        assert_eq!(l.entry(0, 2), -0.5);

        let star = Graph::star(3);
        let l = symmetrized_laplacian(&star);
        assert_relative_eq!(l.entry(0, 1), -1.0 / 3.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn hamiltonian_assembly() {
        let g = Graph::path(2);
        let q = 7.5;
        let p = PotentialSpec::new(vec![1.0, 0.0], q).unwrap();
        let h = hamiltonian(&g, &p).unwrap();
        assert_eq!(h.entry(0, 0), 1.0 - q);
        assert_eq!(h.entry(1, 1), 1.0);
        assert_eq!(h.entry(0, 1), -1.0);

        // W == 1 everywhere shifts the whole spectrum by -Q
        let p = PotentialSpec::new(vec![1.0, 1.0], q).unwrap();
        let h = hamiltonian(&g, &p).unwrap();
        let d = eigendecompose(&h).unwrap();
        assert_relative_eq!(d.eigenvalue(0), -q, epsilon = 1e-12);
        assert_relative_eq!(d.eigenvalue(1), 2.0 - q, epsilon = 1e-12);
    }

    #[test]
    fn potential_validation() {
        assert!(PotentialSpec::new(vec![0.5, 0.2], 1.0).is_err());
        assert!(PotentialSpec::new(vec![1.0, 1.5], 1.0).is_err());
        assert!(PotentialSpec::new(vec![1.0, 0.0], f64::NAN).is_err());
        let p = PotentialSpec::simple(4, &[1, 3], 10.0).unwrap();
        assert_eq!(p.wells(), vec![1, 3]);
    }

    #[test]
    fn eigendecompose_known_spectra() {
        let d = eigendecompose(&symmetrized_laplacian(&Graph::path(2))).unwrap();
        assert_relative_eq!(d.eigenvalue(0), 0.0, epsilon = 1e-12);
        assert_relative_eq!(d.eigenvalue(1), 2.0, epsilon = 1e-12);

        // characteristic polynomial of the triangle Laplacian: 0, 3/2, 3/2
        let d = eigendecompose(&symmetrized_laplacian(&Graph::complete(3))).unwrap();
        assert_relative_eq!(d.eigenvalue(0), 0.0, epsilon = 1e-12);
        assert_relative_eq!(d.eigenvalue(1), 1.5, epsilon = 1e-12);
        assert_relative_eq!(d.eigenvalue(2), 1.5, epsilon = 1e-12);
        assert_eq!(d.clusters().len(), 2);
        assert_eq!(d.cluster_of(2), (1, 2));

        // closed-form quadratic for the two-vertex single well
        let q = 50.0;
        let g = Graph::path(2);
        let p = PotentialSpec::new(vec![1.0, 0.0], q).unwrap();
        let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
        let root = (q * q / 4.0 + 1.0).sqrt();
        assert_relative_eq!(d.eigenvalue(0), 1.0 - q / 2.0 - root, epsilon = 1e-9);
        assert_relative_eq!(d.eigenvalue(1), 1.0 - q / 2.0 + root, epsilon = 1e-9);
    }

    #[test]
    fn evolution_two_level() {
        let g = Graph::path(2);
        let d = eigendecompose(&symmetrized_laplacian(&g)).unwrap();
        let phi0 = QuantumState::basis_state(2, 0).unwrap();
        for &t in &[0.0, 0.3, 1.0, std::f64::consts::FRAC_PI_2, 4.7] {
            let phi = evolve(&d, &phi0, t);
            assert_relative_eq!(phi.probabilities()[1], t.sin().powi(2), epsilon = 1e-12);
            assert_relative_eq!(phi.norm(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(
                transfer_probability(&d, 0, 1, t),
                t.sin().powi(2),
                epsilon = 1e-12
            );
        }
        // t = 0 is the identity
        let phi = evolve(&d, &phi0, 0.0);
        assert_relative_eq!(phi.amplitude(0).re, 1.0, epsilon = 1e-12);
        assert_relative_eq!(phi.amplitude(0).im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn well_eigenpair_identification() {
        let g = Graph::path(2);
        let p = PotentialSpec::new(vec![1.0, 0.0], 100.0).unwrap();
        let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
        assert_eq!(well_eigenpairs(&d, &[0], 0.5).unwrap(), vec![0]);

        // no potential: every eigenspace of the 5-cycle carries at most
        // mass 2/5 on a fixed vertex, below the threshold
        let c5 = Graph::cycle(5);
        let d = eigendecompose(&symmetrized_laplacian(&c5)).unwrap();
        assert!(well_eigenpairs(&d, &[0], 0.5).unwrap().is_empty());

        assert!(well_eigenpairs(&d, &[0], 0.0).is_err());
        assert!(well_eigenpairs(&d, &[0], 1.0).is_err());
    }

    #[test]
    fn symmetric_double_well_two_lowest() {
        let g = Graph::path(3);
        let p = PotentialSpec::simple(3, &[0, 2], 200.0).unwrap();
        let d = eigendecompose(&hamiltonian(&g, &p).unwrap()).unwrap();
        assert_eq!(well_eigenpairs(&d, &[0, 2], 0.5).unwrap(), vec![0, 1]);
    }

    #[test]
    fn potential_file_parsing() {
        let p = PotentialSpec::parse("0 1.0\n2 0.25 # partial\n", 3, 5.0).unwrap();
        assert_eq!(p.weights(), &[1.0, 0.0, 0.25]);
        assert!(PotentialSpec::parse("0 0.5\n", 2, 1.0).is_err());
        assert!(PotentialSpec::parse("9 1.0\n", 2, 1.0).is_err());
    }
}
