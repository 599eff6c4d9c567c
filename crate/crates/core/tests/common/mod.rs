//! Shared instance families and the detect/delete/solve/extend harness.
#![allow(dead_code)]

use std::collections::BTreeMap;

use oddcolor::generators::{random_regular, random_sparse};
use oddcolor::graph::Graph;
use oddcolor::mad::ratio;
use oddcolor::reductions::{extend_step, isolated_find, keylem_find, rc5_find, struc_find, thread_find, ReductionStep};
use oddcolor::solver::find_odd_coloring;
use oddcolor::Coloring;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `g` with vertex `v` renamed `perm[v]`.
pub fn permute(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

/// Exact odd `c`-coloring of `g`, searched under a random relabeling so that
/// repeated calls see different witnesses. `None` when there is none or the
/// budget runs out.
pub fn solve_shuffled(g: &Graph, c: usize, rng: &mut ChaCha8Rng, budget: u64) -> Option<Coloring> {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let h = permute(g, &perm);
    let w = find_odd_coloring(&h, c, Some(budget)).witness?;
    let mut colors: Vec<usize> = (1..=c).collect();
    colors.shuffle(rng);
    let back: Vec<Option<usize>> = (0..g.n()).map(|v| w.get(perm[v]).map(|k| colors[k - 1])).collect();
    let col = Coloring::from_colors(c, back).unwrap();
    debug_assert!(col.is_odd_coloring(g));
    Some(col)
}

/// Per-kind results of the recipe harness.
#[derive(Debug, Default)]
pub struct Tally {
    pub passed: BTreeMap<String, usize>,
    pub failures: Vec<String>,
    pub unsolved: usize,
}

impl Tally {
    pub fn count(&self, key: &str) -> usize {
        self.passed.get(key).copied().unwrap_or(0)
    }
}

/// Repeatedly: detect with `find`, delete `S`, solve the remainder exactly,
/// extend, check the result is an odd coloring. Stops when nothing is found
/// or the remainder cannot be solved. `label` names a step in the tally.
pub fn chain(
    g: &Graph,
    c: usize,
    find: &dyn Fn(&Graph) -> Option<ReductionStep>,
    label: &dyn Fn(&ReductionStep) -> String,
    rng: &mut ChaCha8Rng,
    budget: u64,
    tally: &mut Tally,
) {
    let mut h = g.clone();
    while let Some(step) = find(&h) {
        let (rest, map) = h.delete(&step.deletion_set);
        let Some(sub) = solve_shuffled(&rest, c, rng, budget) else {
            tally.unsolved += 1;
            return;
        };
        let partial = sub.lift(h.n(), &map);
        match extend_step(&h, c, &step, &partial) {
            Ok(full) if full.is_odd_coloring(&h) && full.palette() <= c => {
                *tally.passed.entry(label(&step)).or_default() += 1;
            }
            outcome => tally.failures.push(format!(
                "{}: {:?}\ngraph:\n{}partial:\n{}",
                step.to_line(),
                outcome.map(|col| col.to_text()),
                h.to_edge_list(),
                partial.to_text()
            )),
        }
        h = rest;
    }
}

/// Detection order of the four-color pipeline.
pub fn sparse4_find(g: &Graph) -> Option<ReductionStep> {
    isolated_find(g).or_else(|| rc5_find(g)).or_else(|| thread_find(g))
}

pub fn planar6_find(g: &Graph) -> Option<ReductionStep> {
    isolated_find(g).or_else(|| struc_find(g))
}

pub fn keylem_finder(c: usize) -> impl Fn(&Graph) -> Option<ReductionStep> {
    move |g: &Graph| isolated_find(g).or_else(|| keylem_find(g, c))
}

/// Replace each edge of `g` by a path through `len(edge)` new 2-vertices.
pub fn subdivide_by(g: &Graph, mut len: impl FnMut() -> usize) -> Graph {
    let mut n = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let k = len();
        let mut prev = u;
        for _ in 0..k {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A random `d`-regular graph whose edges carry threads of 0 to 3 vertices,
/// biased towards long threads; no induced 5-cycle.
pub fn planted_threads(seed: u64) -> Graph {
    let mut r = rng(seed);
    loop {
        let d = [4, 4, 4, 5, 6][r.gen_range(0..5)];
        let n = r.gen_range(d + 1..=d + 3);
        if (n * d) % 2 == 1 {
            continue;
        }
        let base = random_regular(n, d, r.gen()).unwrap();
        let g = subdivide_by(&base, || [0, 1, 2, 2, 3, 3, 3][r.gen_range(0..7)]);
        if g.find_induced_c5().is_none() {
            return g;
        }
    }
}

/// 3-vertices hung by subdivided edges onto a 4-regular graph, so each sees
/// three 2-neighbors whose far ends have even degree.
pub fn planted_claws(seed: u64) -> Graph {
    let mut r = rng(seed);
    loop {
        let n = r.gen_range(6..=8);
        let base = random_regular(n, 4, r.gen()).unwrap();
        let mut edges = base.edges();
        let mut next = n;
        for _ in 0..2 {
            let mut ends: Vec<usize> = (0..n).collect();
            ends.shuffle(&mut r);
            let centre = next;
            next += 1;
            for &e in &ends[..3] {
                edges.push((centre, next));
                edges.push((next, e));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, &edges).unwrap();
        if g.find_induced_c5().is_none() {
            return g;
        }
    }
}

/// Sparse graph below the `c`-color density bound `4c/(c+2)`.
pub fn sparse_for(c: usize, n: usize, seed: u64) -> Graph {
    random_sparse(n, &ratio(4 * c as i64, c as i64 + 2), false, seed).unwrap()
}

/// A `d`-regular graph with a random subset of edges subdivided once.
pub fn partly_subdivided(seed: u64) -> Graph {
    let mut r = rng(seed);
    loop {
        let d = r.gen_range(3..=6);
        let n = r.gen_range(d + 1..=d + 5);
        if (n * d) % 2 == 1 {
            continue;
        }
        let base = random_regular(n, d, r.gen()).unwrap();
        let p = r.gen_range(0.2..0.9);
        return subdivide_by(&base, || usize::from(r.gen_bool(p)));
    }
}

pub fn kind_label(step: &ReductionStep) -> String {
    step.kind.to_string()
}

/// An even-regular graph where vertex 0 carries a 3-thread plus enough
/// 2-threads for the second thread configuration, either next to one
/// 3+-neighbor or with only 2-neighbors; other edges carry at most one
/// 2-vertex.
pub fn planted_thread_ii(seed: u64) -> Graph {
    let mut r = rng(seed);
    loop {
        let d = [4, 4, 6][r.gen_range(0..3)];
        let n = r.gen_range(d + 1..=d + 3);
        let base = random_regular(n, d, r.gen()).unwrap();
        let all_twos = r.gen_bool(0.5);
        let mut at_zero: Vec<usize> = vec![3];
        if all_twos {
            at_zero.extend((0..d - 3).map(|_| r.gen_range(2..=3)));
            at_zero.extend([1, 1]);
        } else {
            at_zero.extend((0..d - 2).map(|_| r.gen_range(2..=3)));
            at_zero.push(0);
        }
        at_zero.shuffle(&mut r);
        let mut plan = Vec::new();
        for (u, _) in base.edges() {
            plan.push(if u == 0 { at_zero.pop().unwrap() } else { usize::from(r.gen_bool(0.3)) });
        }
        let mut it = plan.into_iter();
        let g = subdivide_by(&base, || it.next().unwrap());
        if g.find_induced_c5().is_none() {
            return g;
        }
    }
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices, as edge bitmasks over the pairs `(i, j)`, `i < j`, in
/// lexicographic order. Practical up to `n = 7`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Vec<u8>> = vec![vec![]];
    for k in 1..=n {
        let mut seen = std::collections::BTreeSet::new();
        let mut next = Vec::new();
        for adj in &reps {
            for mask in 0u8..(1 << (k - 1)) {
                let mut a = adj.clone();
                for (i, row) in a.iter_mut().enumerate() {
                    if mask >> i & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                a.push(mask);
                if seen.insert(canonical(&a)) {
                    next.push(a);
                }
            }
        }
        reps = next;
    }
    reps.iter().map(|a| from_rows(a)).collect()
}

fn from_rows(a: &[u8]) -> Graph {
    let mut edges = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for j in i + 1..a.len() {
            if row >> j & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(a.len(), &edges).unwrap()
}

/// Least upper-triangle bit string over relabelings that respect a
/// degree-based vertex partition.
fn canonical(a: &[u8]) -> u32 {
    let n = a.len();
    let deg: Vec<u32> = a.iter().map(|r| r.count_ones()).collect();
    let inv: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&u| a[v] >> u & 1 == 1).map(|u| deg[u]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| inv[x].cmp(&inv[y]));
    let mut best = u32::MAX;
    let mut pos = vec![0usize; n];
    permute_classes(&order, &inv, 0, &mut pos, &mut |perm: &[usize]| {
        let mut code = 0u32;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if a[perm[i]] >> perm[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(code);
    });
    best
}

/// Calls `f` with every ordering of `order` that only permutes runs of
/// equal invariant.
fn permute_classes<T: Eq>(order: &[usize], inv: &[T], start: usize, scratch: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let n = order.len();
    if start == n {
        f(&scratch[..n]);
        return;
    }
    let mut end = start + 1;
    while end < n && inv[order[end]] == inv[order[start]] {
        end += 1;
    }
    let mut class: Vec<usize> = order[start..end].to_vec();
    heap_permutations(&mut class, &mut |p: &[usize]| {
        scratch[start..end].copy_from_slice(p);
        permute_classes(order, inv, end, scratch, f);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            go(k - 1, items, f);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            if i + 1 < k {
                items.swap(j, k - 1);
            }
        }
    }
    let k = items.len();
    go(k, items, f);
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gnp(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
