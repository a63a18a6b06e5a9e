//! Exact random-walk algebra: transition powers, return probabilities,
//! cospectrality, geodesic couplings, and well-avoiding walk sums.
//!
//! All quantities here are big rationals (or rational multiples of a single
//! square root), so equality tests are decisions, not tolerance checks.

use crate::exact::{Rational, RadicalScalar};
use crate::graph::Graph;
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Powers of the row-stochastic transition matrix `T = D⁻¹A`, optionally
/// restricted so that walk *interiors* avoid a fixed vertex set. Walk
/// endpoints are exempt from the restriction.
///
/// `powers[0]` is the identity. With an empty avoid set, `powers[k] = T^k`.
/// With a nonempty avoid set, entry `(v, w)` of `powers[k]` is the total
/// probability of walks `v → w` of length `k` whose vertices at positions
/// `1..k-1` stay outside the avoid set.
pub struct WalkTable {
    n: usize,
    avoid: BTreeSet<usize>,
    powers: Vec<Vec<Rational>>,
}

impl WalkTable {
    pub fn max_length(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn avoid_set(&self) -> &BTreeSet<usize> {
        &self.avoid
    }

    pub fn entry(&self, k: usize, v: usize, w: usize) -> &Rational {
        &self.powers[k][v * self.n + w]
    }
}

/// Computes walk tables up to length `k_max`.
pub fn transition_powers(g: &Graph, k_max: usize, avoid: &BTreeSet<usize>) -> Result<WalkTable> {
    for &v in avoid {
        g.check_vertex(v)?;
    }
    let n = g.vertex_count();
    let mut transition = vec![Rational::zero(); n * n];
    for v in 0..n {
        let step = Rational::new(BigInt::one(), BigInt::from(g.degree(v)));
        for &w in g.neighbors(v) {
            transition[v * n + w] = step.clone();
        }
    }

    let mut identity = vec![Rational::zero(); n * n];
    for v in 0..n {
        identity[v * n + v] = Rational::one();
    }

    let mut powers = Vec::with_capacity(k_max + 1);
    powers.push(identity);
    if k_max >= 1 {
        powers.push(transition.clone());
    }
    let blocked: Vec<bool> = (0..n).map(|v| avoid.contains(&v)).collect();
    for k in 2..=k_max {
        let prev = &powers[k - 1];
        let mut next = vec![Rational::zero(); n * n];
        for v in 0..n {
            for y in 0..n {
                // y sits at position k-1, which is interior once we extend
                if blocked[y] {
                    continue;
                }
                let p = &prev[v * n + y];
                if p.is_zero() {
                    continue;
                }
                for &w in g.neighbors(y) {
                    next[v * n + w] += p * &transition[y * n + w];
                }
            }
        }
        powers.push(next);
    }
    Ok(WalkTable {
        n,
        avoid: avoid.clone(),
        powers,
    })
}

/// Probability that the simple random walk started at `x` is back at `x`
/// after exactly `k` steps (no restriction on intermediate vertices).
pub fn return_probability(g: &Graph, x: usize, k: usize) -> Result<Rational> {
    g.check_vertex(x)?;
    let table = transition_powers(g, k, &BTreeSet::new())?;
    Ok(table.entry(k, x, x).clone())
}

/// Return-probability sequence `k = 0..=k_max` for every vertex at once.
pub fn return_probability_profile(g: &Graph, k_max: usize) -> Result<Vec<Vec<Rational>>> {
    let table = transition_powers(g, k_max, &BTreeSet::new())?;
    let n = g.vertex_count();
    Ok((0..n)
        .map(|x| (0..=k_max).map(|k| table.entry(k, x, x).clone()).collect())
        .collect())
}

/// Outcome of a cospectrality computation cut off at `k_cut`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cospectrality {
    /// Return probabilities agree exactly for `k <= m` and differ at `m + 1`.
    Exact(usize),
    /// Agreement holds through the whole cutoff.
    AtLeast(usize),
}

impl Cospectrality {
    /// True when the measured value certifies `co >= m`.
    pub fn at_least(&self, m: usize) -> bool {
        match *self {
            Cospectrality::Exact(v) => v >= m,
            Cospectrality::AtLeast(cut) => cut >= m,
        }
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, Cospectrality::AtLeast(_))
    }

    /// The exact value when the cutoff resolved it.
    pub fn exact_value(&self) -> Option<usize> {
        match *self {
            Cospectrality::Exact(v) => Some(v),
            Cospectrality::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for Cospectrality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cospectrality::Exact(m) => write!(f, "{m}"),
            Cospectrality::AtLeast(cut) => write!(f, ">={cut}"),
        }
    }
}

impl serde::Serialize for Cospectrality {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Largest `m <= k_cut` such that the return probabilities from `x` and `y`
/// agree exactly for all `0 <= k <= m`; saturation is reported when the
/// agreement survives the whole cutoff.
pub fn cospectrality(g: &Graph, x: usize, y: usize, k_cut: usize) -> Result<Cospectrality> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::CoincidentVertices(x));
    }
    let table = transition_powers(g, k_cut, &BTreeSet::new())?;
    for k in 0..=k_cut {
        if table.entry(k, x, x) != table.entry(k, y, y) {
            // k = 0 both sides are 1, so k >= 1 here
            return Ok(Cospectrality::Exact(k - 1));
        }
    }
    Ok(Cospectrality::AtLeast(k_cut))
}

/// Sum over shortest `u → v` paths of the product of `1/√(d_i d_j)` along
/// the path's edges; always a rational multiple of `1/√(d_u d_v)`, and
/// strictly positive on a connected graph.
///
/// Geodesics are never enumerated one by one: the sum is folded along the
/// DAG of breadth-first predecessors, so each shortest path contributes
/// exactly once.
pub fn geodesic_coupling(g: &Graph, u: usize, v: usize) -> Result<RadicalScalar> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::CoincidentVertices(u));
    }
    let dist = g.distances_from(u)?;
    let target = dist[v];
    // weight[x] = sum over geodesic prefixes u -> x of the product of 1/d
    // over interior vertices seen so far (x's own factor not yet applied)
    let mut weight: Vec<Rational> = vec![Rational::zero(); g.vertex_count()];
    weight[u] = Rational::one();
    let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); target + 1];
    for x in 0..g.vertex_count() {
        if dist[x] <= target {
            by_layer[dist[x]].push(x);
        }
    }
    for layer in 1..=target {
        for &x in &by_layer[layer] {
            let mut acc = Rational::zero();
            for &p in g.neighbors(x) {
                if dist[p] + 1 == layer && !weight[p].is_zero() {
                    if dist[p] == 0 {
                        acc += &weight[p];
                    } else {
                        acc += &weight[p] / Rational::from_integer(BigInt::from(g.degree(p)));
                    }
                }
            }
            weight[x] = acc;
        }
    }
    let endpoint_product = BigUint::from(g.degree(u)) * BigUint::from(g.degree(v));
    Ok(RadicalScalar::inv_sqrt(&endpoint_product).scale(&weight[v]))
}

/// Symmetrized walk sums between wells with interiors avoiding the well set.
///
/// `value(k, v, w)` is `√(d_v/d_w)` times the total probability of length-`k`
/// walks `v → w` whose interior vertices avoid the wells. These are the
/// coefficients of the well power series, and the matrix they form for each
/// `k` is symmetric as an exact radical value.
pub struct WellWalkSums {
    wells: Vec<usize>,
    degrees: Vec<usize>,
    table: WalkTable,
}

impl WellWalkSums {
    pub fn new(g: &Graph, wells: &BTreeSet<usize>, k_max: usize) -> Result<Self> {
        if wells.is_empty() {
            return Err(Error::InvalidArgument("well set is empty".into()));
        }
        let table = transition_powers(g, k_max, wells)?;
        Ok(Self {
            wells: wells.iter().copied().collect(),
            degrees: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
            table,
        })
    }

    pub fn wells(&self) -> &[usize] {
        &self.wells
    }

    pub fn max_length(&self) -> usize {
        self.table.max_length()
    }

    pub fn value(&self, k: usize, v: usize, w: usize) -> Result<RadicalScalar> {
        if !self.wells.contains(&v) {
            return Err(Error::NotAWell(v));
        }
        if !self.wells.contains(&w) {
            return Err(Error::NotAWell(w));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("walk sums start at length 1".into()));
        }
        let prob = self.table.entry(k, v, w);
        if prob.is_zero() {
            return Ok(RadicalScalar::zero());
        }
        let ratio = Rational::new(BigInt::from(self.degrees[v]), BigInt::from(self.degrees[w]));
        Ok(RadicalScalar::sqrt_of_rational(&ratio).scale(prob))
    }
}

/// One-off wrapper around [`WellWalkSums`].
pub fn well_walk_sum(
    g: &Graph,
    wells: &BTreeSet<usize>,
    v: usize,
    w: usize,
    k: usize,
) -> Result<RadicalScalar> {
    WellWalkSums::new(g, wells, k)?.value(k, v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn powers_start_at_identity() {
        let g = Graph::cycle(4);
        let t = transition_powers(&g, 2, &BTreeSet::new()).unwrap();
        for v in 0..4 {
            for w in 0..4 {
                let expect = if v == w { Rational::one() } else { Rational::zero() };
                assert_eq!(*t.entry(0, v, w), expect);
            }
        }
        // return to x via either neighbor
        assert_eq!(*t.entry(2, 0, 0), ratio(1, 2));
    }

    #[test]
    fn triangle_three_step_return() {
        // all eight length-3 walks from a fixed vertex; two of them return
        let g = Graph::complete(3);
        assert_eq!(return_probability(&g, 0, 3).unwrap(), ratio(1, 4));
    }

    #[test]
    fn return_probability_basics() {
        let g = Graph::cycle(4);
        assert_eq!(return_probability(&g, 1, 3).unwrap(), ratio(0, 1));
        assert_eq!(return_probability(&g, 1, 0).unwrap(), ratio(1, 1));
        let p3 = Graph::path(3);
        assert_eq!(return_probability(&p3, 1, 2).unwrap(), ratio(1, 1));
    }

    #[test]
    fn rows_sum_to_one_without_avoid() {
        let g = Graph::spider(&[2, 3, 3]);
        let n = g.vertex_count();
        let t = transition_powers(&g, 5, &BTreeSet::new()).unwrap();
        for k in 0..=5 {
            for v in 0..n {
                let sum: Rational = (0..n).map(|w| t.entry(k, v, w).clone()).sum();
                assert_eq!(sum, Rational::one(), "row {v} at power {k}");
            }
        }
    }

    #[test]
    fn cospectrality_values() {
        let c6 = Graph::cycle(6);
        assert_eq!(
            cospectrality(&c6, 0, 2, 10).unwrap(),
            Cospectrality::AtLeast(10)
        );
        let p3 = Graph::path(3);
        assert_eq!(cospectrality(&p3, 0, 1, 6).unwrap(), Cospectrality::Exact(1));
        let star = Graph::star(3);
        assert_eq!(
            cospectrality(&star, 1, 2, 8).unwrap(),
            Cospectrality::AtLeast(8)
        );
        assert!(cospectrality(&p3, 1, 1, 4).is_err());
    }

    #[test]
    fn geodesic_coupling_values() {
        // path ends, degrees 1-2-1: single geodesic, product 1/2
        let p3 = Graph::path(3);
        let c = geodesic_coupling(&p3, 0, 2).unwrap();
        assert_eq!(c.as_rational(), Some(&ratio(1, 2)));

        // antipodal pair on the 4-cycle: two geodesics, each 1/4
        let c4 = Graph::cycle(4);
        let c = geodesic_coupling(&c4, 0, 2).unwrap();
        assert_eq!(c.as_rational(), Some(&ratio(1, 2)));

        // two neighbors of the branch vertex on an equal-arm spider
        let y = Graph::spider(&[2, 2, 2]);
        let c = geodesic_coupling(&y, 1, 3).unwrap();
        assert_eq!(c.as_rational(), Some(&ratio(1, 6)));

        assert!(geodesic_coupling(&p3, 0, 0).is_err());
    }

    #[test]
    fn well_walk_sum_values() {
        let p3 = Graph::path(3);
        let wells = set(&[0, 2]);
        // too short to connect distinct wells
        assert!(well_walk_sum(&p3, &wells, 0, 2, 1).unwrap().is_zero());
        // shortest walks are exactly the geodesics avoiding the well set
        let at_distance = well_walk_sum(&p3, &wells, 0, 2, 2).unwrap();
        assert_eq!(at_distance, geodesic_coupling(&p3, 0, 2).unwrap());
        // end -> mid -> end keeps its interior off the wells
        let back = well_walk_sum(&p3, &wells, 0, 0, 2).unwrap();
        assert_eq!(back.as_rational(), Some(&ratio(1, 2)));
        // contract violations
        assert!(well_walk_sum(&p3, &wells, 1, 0, 2).is_err());
        assert!(well_walk_sum(&p3, &wells, 0, 2, 0).is_err());
    }

    #[test]
    fn well_sums_are_symmetric() {
        let g = Graph::spider(&[2, 3, 3]);
        let wells = set(&[1, 3, 6]);
        let sums = WellWalkSums::new(&g, &wells, 8).unwrap();
        for k in 1..=8 {
            for &v in sums.wells() {
                for &w in sums.wells() {
                    assert_eq!(
                        sums.value(k, v, w).unwrap(),
                        sums.value(k, w, v).unwrap(),
                        "k={k} v={v} w={w}"
                    );
                }
            }
        }
    }
}
