//! Quantum tunneling of a single particle on a finite graph.
//!
//! A particle hopping on a connected graph under a deep potential well
//! exhibits tunneling between the wells, and whether the tunneling is
//! perfect, partial, or absent is decided by combinatorial data of the
//! graph near the wells. This crate provides both sides of that story:
//!
//! - [`graph`] and [`walks`]: exact (big-rational) random-walk algebra —
//!   return probabilities, vertex cospectrality, geodesic couplings, and
//!   well-avoiding walk sums;
//! - [`spectral`] and [`series`]: floating-point spectral machinery — the
//!   symmetrized Laplacian, Hamiltonians `H = Δ − Q·W`, closed-form time
//!   evolution, and the truncated well-series matrices that tie spectra
//!   back to walk data;
//! - [`doublewell`] and [`triplewell`]: measurement and prediction —
//!   tunneling-coefficient sweeps, time/gap scaling fits, and regime
//!   classification for two and three wells;
//! - [`verify`]: the self-contained check suites behind `qtunnel verify`.
//!
//! ```
//! use qtunnel_core::graph::Graph;
//! use qtunnel_core::doublewell::{classify_double_well, Regime};
//!
//! // Path on three vertices, wells at the two ends: perfect tunneling.
//! let g = Graph::path(3);
//! let report = classify_double_well(&g, 0, 2, None).unwrap();
//! assert_eq!(report.regime, Regime::Perfect);
//! ```

pub mod doublewell;
pub mod exact;
pub mod graph;
pub mod series;
pub mod spectral;
pub mod triplewell;
pub mod verify;
pub mod walks;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}--{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("graph file parse error at line {line}: {msg}")]
    GraphParse { line: usize, msg: String },
    #[error("vertices must be distinct (got {0} twice)")]
    CoincidentVertices(usize),
    #[error("vertex {0} is not a well")]
    NotAWell(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("eigensolver did not converge within the iteration cap")]
    EigenConvergence,
    #[error("spectral decomposition failed validation: {0}")]
    SpectralValidation(String),
    #[error("lambda = {lambda} outside the admissible range ({requirement})")]
    LambdaOutOfRange { lambda: f64, requirement: String },
    #[error("resonance margin violated at vertex {vertex}: |1 - lambda - Q W| = {value:e}")]
    MarginViolation { vertex: usize, value: f64 },
    #[error("time grid needs {needed} points, above the cap of {cap}")]
    GridCapExceeded { needed: u64, cap: u64 },
    #[error("not enough usable points: need {need}, have {have}")]
    InsufficientPoints { need: usize, have: usize },
    #[error("well eigenpair identification failed at Q = {q}: found {found}, expected {expected}")]
    EigenpairIdentification { q: f64, found: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
