//! Named graph families and seeded random instances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::discharging::Embedding;
use crate::graph::Graph;
use crate::mad::{density_decision, Rational};

/// Fresh trees tried by [`random_sparse`] before giving up.
pub const TREE_RETRY_BUDGET: usize = 32;
/// Extra-edge proposals per vertex in [`random_sparse`].
pub const EDGE_ATTEMPTS_PER_VERTEX: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("parameter out of range for {name}: {reason}")]
    BadParameter { name: &'static str, reason: String },
    #[error("no graph met the constraints after {attempts} attempts")]
    GenerationExhausted { attempts: usize },
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Replace every edge by a path of length two. The new vertex of the
/// `i`-th edge (in sorted edge order) gets id `n + i`.
pub fn subdivide(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        edges.push((u, n + i));
        edges.push((n + i, v));
    }
    Graph::from_edges(n + g.m(), &edges).unwrap()
}

/// `K_c` with every edge subdivided once; branch vertices are `0..c`.
pub fn kstar(c: usize) -> Graph {
    assert!(c >= 3, "kstar needs c >= 3");
    subdivide(&complete(c))
}

/// `k` five-cycles sharing one vertex. The hub is vertex 0 and cycle `i`
/// uses `4i+1..=4i+4` in order.
pub fn hk(k: usize) -> Graph {
    assert!(k >= 1, "hk needs k >= 1");
    let mut edges = Vec::with_capacity(5 * k);
    for i in 0..k {
        let b = 4 * i + 1;
        edges.extend([(0, b), (b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, 0)]);
    }
    Graph::from_edges(4 * k + 1, &edges).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Dodecahedron as three rings: an inner pentagon `0..5`, a middle
/// decagon `5..15` and an outer pentagon `15..20`. Inner vertex `i` meets
/// decagon vertex `2i`, outer vertex `i` meets decagon vertex `2i+1`.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    Graph::from_edges(20, &edges).unwrap()
}

fn polar(r: f64, turn: f64) -> (f64, f64) {
    let a = turn * std::f64::consts::TAU;
    (r * a.cos(), r * a.sin())
}

/// Straight-line plane drawing of [`dodecahedron`]; the rings sit on
/// concentric circles.
pub fn dodecahedron_embedding() -> Embedding {
    let mut pts = Vec::with_capacity(20);
    pts.extend((0..5).map(|i| polar(1.0, (2 * i) as f64 / 10.0)));
    pts.extend((0..10).map(|j| polar(2.0, j as f64 / 10.0)));
    pts.extend((0..5).map(|i| polar(3.0, (2 * i + 1) as f64 / 10.0)));
    Embedding::from_coordinates(&dodecahedron(), &pts).expect("dodecahedron drawing is valid")
}

/// The cycle drawn on a circle.
pub fn cycle_embedding(n: usize) -> Embedding {
    let pts: Vec<_> = (0..n).map(|i| polar(1.0, i as f64 / n as f64)).collect();
    Embedding::from_coordinates(&cycle(n), &pts).expect("cycle drawing is valid")
}

/// `K_4` drawn as a triangle around vertex 0.
pub fn k4_embedding() -> Embedding {
    let pts = [(0.0, 0.0), polar(1.0, 0.0), polar(1.0, 1.0 / 3.0), polar(1.0, 2.0 / 3.0)];
    Embedding::from_coordinates(&complete(4), &pts).expect("K4 drawing is valid")
}

/// Connected graph with `mad < mad_cap` (and no induced 5-cycle when
/// `forbid_induced_c5`): a random spanning tree, then random extra edges,
/// each kept only if the constraints still hold. Deterministic per seed.
pub fn random_sparse(n: usize, mad_cap: &Rational, forbid_induced_c5: bool, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::BadParameter { name: "random_sparse", reason: "n must be at least 1".into() });
    }
    if !mad_cap.is_positive() {
        return Err(GenError::BadParameter { name: "random_sparse", reason: "mad cap must be positive".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let below_cap = |g: &Graph| density_decision(g, mad_cap).is_none();
    for _ in 0..TREE_RETRY_BUDGET {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for i in 1..n {
            let j = rng.gen_range(0..i);
            let (a, b) = (order[i], order[j]);
            edges.insert((a.min(b), a.max(b)));
        }
        let build = |edges: &BTreeSet<(usize, usize)>| {
            Graph::from_edges(n, &edges.iter().copied().collect::<Vec<_>>()).unwrap()
        };
        let tree = build(&edges);
        if !below_cap(&tree) {
            continue;
        }
        if n >= 2 {
            for _ in 0..EDGE_ATTEMPTS_PER_VERTEX * n {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let e = (a.min(b), a.max(b));
                if a == b || edges.contains(&e) {
                    continue;
                }
                edges.insert(e);
                let g = build(&edges);
                if !below_cap(&g) || (forbid_induced_c5 && g.find_induced_c5().is_some()) {
                    edges.remove(&e);
                }
            }
        }
        let g = build(&edges);
        debug_assert!(g.is_connected() && below_cap(&g));
        debug_assert!(!forbid_induced_c5 || g.find_induced_c5().is_none());
        return Ok(g);
    }
    Err(GenError::GenerationExhausted { attempts: TREE_RETRY_BUDGET })
}

/// Connected `d`-regular graph on `n` vertices: a circulant scrambled by
/// random double-edge swaps. Deterministic per seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(GenError::BadParameter {
            name: "random_regular",
            reason: format!("no simple {d}-regular graph on {n} vertices"),
        });
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    for i in 0..n {
        for k in 1..=d / 2 {
            add(i, (i + k) % n);
        }
        if d % 2 == 1 {
            add(i, (i + n / 2) % n);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list: Vec<(usize, usize)> = edges.iter().copied().collect();
    let swaps = 10 * list.len().max(1);
    for round in 0.. {
        for _ in 0..swaps {
            if list.len() < 2 {
                break;
            }
            let i = rng.gen_range(0..list.len());
            let j = rng.gen_range(0..list.len());
            let (a, b) = list[i];
            let (c, e) = list[j];
            let (c, e) = if rng.gen_bool(0.5) { (c, e) } else { (e, c) };
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let x = (a.min(e), a.max(e));
            let y = (c.min(b), c.max(b));
            if edges.contains(&x) || edges.contains(&y) {
                continue;
            }
            edges.remove(&list[i]);
            edges.remove(&list[j]);
            edges.insert(x);
            edges.insert(y);
            list[i] = x;
            list[j] = y;
        }
        let g = Graph::from_edges(n, &list).unwrap();
        if g.is_connected() {
            return Ok(g);
        }
        if round > 100 {
            return Err(GenError::GenerationExhausted { attempts: round });
        }
    }
    unreachable!()
}

/// Identifier of a fixed, canonically labeled graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraphId {
    Cycle(usize),
    Complete(usize),
    Path(usize),
    Kstar(usize),
    Hk(usize),
    Dodecahedron,
    Petersen,
}

impl fmt::Display for NamedGraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraphId::Cycle(n) => write!(f, "cycle:{n}"),
            NamedGraphId::Complete(n) => write!(f, "complete:{n}"),
            NamedGraphId::Path(n) => write!(f, "path:{n}"),
            NamedGraphId::Kstar(c) => write!(f, "kstar:{c}"),
            NamedGraphId::Hk(k) => write!(f, "hk:{k}"),
            NamedGraphId::Dodecahedron => write!(f, "dodecahedron"),
            NamedGraphId::Petersen => write!(f, "petersen"),
        }
    }
}

impl FromStr for NamedGraphId {
    type Err = GenError;

    /// Accepts `name` or `name:param`, e.g. `cycle:5`, `kstar:4`, `petersen`.
    fn from_str(s: &str) -> Result<Self, GenError> {
        let (name, param) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let need = |name: &'static str, min: usize| -> Result<usize, GenError> {
            let raw = param.ok_or_else(|| GenError::BadParameter { name, reason: "missing parameter".into() })?;
            let v: usize = raw
                .parse()
                .map_err(|_| GenError::BadParameter { name, reason: format!("not an integer: {raw:?}") })?;
            if v < min {
                return Err(GenError::BadParameter { name, reason: format!("must be at least {min}") });
            }
            Ok(v)
        };
        let no_param = |id: NamedGraphId| match param {
            None => Ok(id),
            Some(_) => Err(GenError::BadParameter { name: "named graph", reason: format!("{s} takes no parameter") }),
        };
        match name {
            "cycle" => Ok(NamedGraphId::Cycle(need("cycle", 3)?)),
            "complete" => Ok(NamedGraphId::Complete(need("complete", 1)?)),
            "path" => Ok(NamedGraphId::Path(need("path", 1)?)),
            "kstar" => Ok(NamedGraphId::Kstar(need("kstar", 3)?)),
            "hk" => Ok(NamedGraphId::Hk(need("hk", 1)?)),
            "dodecahedron" => no_param(NamedGraphId::Dodecahedron),
            "petersen" => no_param(NamedGraphId::Petersen),
            _ => Err(GenError::UnknownName(s.to_string())),
        }
    }
}

pub fn named(id: NamedGraphId) -> Graph {
    match id {
        NamedGraphId::Cycle(n) => cycle(n),
        NamedGraphId::Complete(n) => complete(n),
        NamedGraphId::Path(n) => path(n),
        NamedGraphId::Kstar(c) => kstar(c),
        NamedGraphId::Hk(k) => hk(k),
        NamedGraphId::Dodecahedron => dodecahedron(),
        NamedGraphId::Petersen => petersen(),
    }
}

/// Canonical plane embedding for the named graphs that ship with one.
pub fn named_embedding(id: NamedGraphId) -> Option<Embedding> {
    match id {
        NamedGraphId::Dodecahedron => Some(dodecahedron_embedding()),
        NamedGraphId::Cycle(n) => Some(cycle_embedding(n)),
        NamedGraphId::Complete(4) => Some(k4_embedding()),
        _ => None,
    }
}

/// Parse `p/q` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse().ok()?, q.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, num_bigint::BigInt::from(1)),
    };
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}
