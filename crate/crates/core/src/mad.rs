//! Exact maximum average degree.
//!
//! `mad(G)` is the largest `2|E(H)|/|V(H)|` over nonempty subgraphs `H`.
//! The maximum is attained by an induced subgraph, so everything here works
//! with vertex sets. Decisions go through an integer minimum cut; the
//! brute-force enumerator is kept as an independent check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::Graph;

/// Exact arbitrary-precision fraction, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Largest vertex count accepted by [`mad_brute`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MadError {
    #[error("maximum average degree is undefined for the null graph")]
    NullGraph,
    #[error("{n} vertices exceeds the brute-force budget of {max}")]
    BudgetExceeded { n: usize, max: usize },
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q`, with the denominator written even when it is 1.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Density `2|E(G[S])|/|S|` of a nonempty vertex set.
pub fn density(g: &Graph, set: &[usize]) -> Rational {
    assert!(!set.is_empty(), "density of an empty set");
    ratio(2 * g.edges_within(set) as i64, set.len() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MadCertificate {
    pub value: Rational,
    /// Sorted, nonempty vertex set whose induced density equals `value`.
    pub witness: Vec<usize>,
}

impl MadCertificate {
    /// Recompute the witness density from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        !self.witness.is_empty() && density(g, &self.witness) == self.value
    }
}

/// Dinic max-flow on `i128` capacities.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i128>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i128) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, limit: i128, level: &[usize], next: &mut [usize]) -> i128 {
        if u == t {
            return limit;
        }
        while next[u] < self.head[u].len() {
            let e = self.head[u][next[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.augment(v, t, limit.min(self.cap[e]), level, next);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0; self.head.len()];
            loop {
                let pushed = self.augment(s, t, i128::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let level = self.levels(s);
        level.iter().map(|&l| l != usize::MAX).collect()
    }
}

/// Smallest achievable density `2a/b` (with `1 <= b <= n`) that is at least
/// `t`, as a reduced pair `(num, den)`. `None` when `t` exceeds every
/// achievable density.
fn round_up_to_achievable(t: &Rational, n: usize) -> Option<(i64, i64)> {
    let mut best: Option<(i64, i64)> = None;
    for b in 1..=n as i64 {
        // least a with 2a/b >= t, i.e. a >= t*b/2
        let need = (t * Rational::from_integer(BigInt::from(b)) / Rational::from_integer(BigInt::from(2))).ceil();
        let a = need.to_integer().max(BigInt::zero());
        if a > BigInt::from(b * (b - 1) / 2) {
            continue;
        }
        let a = a.to_i64().expect("bounded by b^2");
        let cand = (2 * a, b);
        if best.is_none_or(|(p, q)| cand.0 * q < p * cand.1) {
            best = Some(cand);
        }
    }
    best.map(|(p, q)| {
        let g = p.gcd(&q);
        (p / g, q / g)
    })
}

/// A nonempty vertex set of density at least `t`, or `None` if none exists.
///
/// Thresholds are first rounded up to the nearest achievable density
/// `p/q` (so `q <= n`). With `N = n + 1` the objective
/// `f(S) = N * (2q|E(S)| - p|S|) + |S|` is positive exactly when `S` is
/// nonempty and dense enough, because a deficit of at least 1 in the
/// bracket cannot be paid back by `|S| <= n`. Maximizing
/// `f(S) = 2qN * |E(S)| - (pN - 1) * |S|` is a closure problem: the source
/// feeds every edge node with capacity `2qN`, edge nodes point to both
/// endpoints with infinite capacity, and every vertex drains `pN - 1` to the
/// sink. The best closure value is `2qN * m - maxflow`, and its vertex nodes
/// on the source side of a minimum cut form the witness.
pub fn density_decision(g: &Graph, t: &Rational) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    if !t.is_positive() {
        return Some(g.vertices().collect());
    }
    let (p, q) = round_up_to_achievable(t, n)?;
    let big_n = (n + 1) as i128;
    let gain = 2 * q as i128 * big_n;
    let cost = p as i128 * big_n - 1;
    let edges = g.edges();
    let m = edges.len();
    let (s, sink) = (0, 1);
    let vertex_node = |v: usize| 2 + v;
    let mut net = FlowNetwork::new(2 + n + m);
    let infinite = gain * m as i128 + 1;
    for (i, &(u, v)) in edges.iter().enumerate() {
        let e = 2 + n + i;
        net.add_edge(s, e, gain);
        net.add_edge(e, vertex_node(u), infinite);
        net.add_edge(e, vertex_node(v), infinite);
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), sink, cost);
    }
    let flow = net.max_flow(s, sink);
    if gain * m as i128 - flow <= 0 {
        return None;
    }
    let side = net.source_side(s);
    let witness: Vec<usize> = (0..n).filter(|&v| side[vertex_node(v)]).collect();
    debug_assert!(!witness.is_empty());
    Some(witness)
}

/// Exact `mad(G)` by binary search over the finite set of achievable
/// densities `2a/b` with `1 <= b <= n` and `a <= min(m, b(b-1)/2)`.
pub fn mad_exact(g: &Graph) -> Result<MadCertificate, MadError> {
    let n = g.n();
    if n == 0 {
        return Err(MadError::NullGraph);
    }
    let m = g.m() as i64;
    let mut candidates: Vec<(i64, i64)> = Vec::new();
    for b in 1..=n as i64 {
        for a in 0..=m.min(b * (b - 1) / 2) {
            let g = (2 * a).gcd(&b);
            candidates.push((2 * a / g, b / g));
        }
    }
    candidates.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    candidates.dedup();
    // candidates[lo] is always feasible (density 0 is); candidates[hi] never is
    let mut lo = 0;
    let mut hi = candidates.len();
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let (p, q) = candidates[mid];
        if density_decision(g, &ratio(p, q)).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (p, q) = candidates[lo];
    let value = ratio(p, q);
    let witness = density_decision(g, &value).expect("feasible by search invariant");
    let cert = MadCertificate { value, witness };
    debug_assert!(cert.verify(g));
    Ok(cert)
}

/// Exhaustive maximum over all nonempty vertex subsets.
pub fn mad_brute(g: &Graph) -> Result<MadCertificate, MadError> {
    let n = g.n();
    if n == 0 {
        return Err(MadError::NullGraph);
    }
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(MadError::BudgetExceeded { n, max: BRUTE_FORCE_MAX_VERTICES });
    }
    let masks: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | (1 << u)))
        .collect();
    let mut best = (0i64, 1i64, 1u32);
    for set in 1u32..(1 << n) {
        let size = set.count_ones() as i64;
        let twice_edges: i64 = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| (masks[v] & set).count_ones() as i64)
            .sum();
        if twice_edges * best.1 > best.0 * size {
            best = (twice_edges, size, set);
        }
    }
    let witness = (0..n).filter(|&v| best.2 >> v & 1 == 1).collect();
    Ok(MadCertificate { value: ratio(best.0, best.1), witness })
}

/// `2m/n` as an exact rational (the whole graph's average degree).
pub fn average_degree(g: &Graph) -> Rational {
    if g.n() == 0 {
        return Rational::zero();
    }
    ratio(2 * g.m() as i64, g.n() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, hk, kstar, path};

    #[test]
    fn decision_examples() {
        assert_eq!(density_decision(&cycle(5), &ratio(22, 9)), None);
        assert_eq!(density_decision(&cycle(5), &ratio(2, 1)), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(density_decision(&complete(2), &ratio(1, 1)), Some(vec![0, 1]));
        assert_eq!(density_decision(&Graph::empty(0), &ratio(1, 1)), None);
        assert!(density_decision(&Graph::empty(3), &ratio(0, 1)).is_some());
        assert_eq!(density_decision(&Graph::empty(3), &ratio(1, 100)), None);
    }

    #[test]
    fn decision_handles_unreduced_thresholds() {
        // thresholds with large denominators are rounded to achievable ones
        let t = Rational::new(BigInt::from(10_000_001i64), BigInt::from(5_000_000i64));
        assert_eq!(density_decision(&cycle(5), &t), None);
        let t = Rational::new(BigInt::from(9_999_999i64), BigInt::from(5_000_000i64));
        assert!(density_decision(&cycle(5), &t).is_some());
    }

    #[test]
    fn exact_examples() {
        let k = mad_exact(&kstar(4)).unwrap();
        assert_eq!(k.value, ratio(12, 5));
        assert_eq!(k.witness, (0..10).collect::<Vec<_>>());
        assert_eq!(mad_exact(&hk(2)).unwrap().value, ratio(20, 9));
        assert_eq!(mad_exact(&complete(1)).unwrap().value, ratio(0, 1));
        assert_eq!(mad_exact(&Graph::empty(0)), Err(MadError::NullGraph));
        // a triangle with a long tail: densest part is the triangle
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let cert = mad_exact(&g).unwrap();
        assert_eq!(cert.value, ratio(2, 1));
        assert!(cert.verify(&g));
    }

    #[test]
    fn brute_examples() {
        assert_eq!(mad_brute(&cycle(5)).unwrap().value, ratio(2, 1));
        let p3 = mad_brute(&path(3)).unwrap();
        assert_eq!(p3.value, ratio(4, 3));
        assert_eq!(p3.witness, vec![0, 1, 2]);
        assert_eq!(mad_brute(&complete(1)).unwrap().value, ratio(0, 1));
        assert!(matches!(mad_brute(&path(17)), Err(MadError::BudgetExceeded { n: 17, .. })));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_ratio(&ratio(24, 10)), "12/5");
        assert_eq!(format_ratio(&ratio(3, 1)), "3/1");
    }

    #[test]
    fn max_flow_small_network() {
        let mut net = FlowNetwork::new(6);
        for (u, v, c) in [(0, 1, 10), (0, 2, 10), (1, 3, 4), (1, 4, 8), (2, 4, 9), (3, 5, 10), (4, 3, 6), (4, 5, 10)] {
            net.add_edge(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5), 19);
    }
}
