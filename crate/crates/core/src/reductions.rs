//! Reducible configurations: detectors that find them, recipes that extend
//! an odd coloring of the rest of the graph over them, and the three
//! delete-recurse-extend colorers assembled from those pieces.
//!
//! Every detector returns the first configuration in a fixed scan order
//! (configuration kind first, then least anchor vertex). Extenders take the
//! host graph and an odd coloring of the host minus the deletion set, with
//! the deletion set uncolored.
//!
//! During an extension, the odd color `φ_o(w)` of a vertex is sticky: once
//! chosen it is reused for as long as it stays odd, so two recipe steps that
//! both protect `w` protect the same color.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::Graph;
use crate::mad::{format_ratio, mad_exact, ratio};
use crate::solver::{find_odd_coloring, proper_color_guaranteed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// A vertex with no neighbors; any color extends.
    Isolated,
    OneVertex,
    Keylem,
    StrucI,
    StrucII,
    StrucIII,
    StrucIV,
    Rc5I,
    Rc5II,
    Rc5III,
    Rc5IV,
    Rc5V,
    ThreadI,
    ThreadII,
}

impl Kind {
    pub const ALL: [Kind; 14] = [
        Kind::Isolated,
        Kind::OneVertex,
        Kind::Keylem,
        Kind::StrucI,
        Kind::StrucII,
        Kind::StrucIII,
        Kind::StrucIV,
        Kind::Rc5I,
        Kind::Rc5II,
        Kind::Rc5III,
        Kind::Rc5IV,
        Kind::Rc5V,
        Kind::ThreadI,
        Kind::ThreadII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Isolated => "isolated",
            Kind::OneVertex => "one_vertex",
            Kind::Keylem => "keylem",
            Kind::StrucI => "struc_i",
            Kind::StrucII => "struc_ii",
            Kind::StrucIII => "struc_iii",
            Kind::StrucIV => "struc_iv",
            Kind::Rc5I => "rc5_i",
            Kind::Rc5II => "rc5_ii",
            Kind::Rc5III => "rc5_iii",
            Kind::Rc5IV => "rc5_iv",
            Kind::Rc5V => "rc5_v",
            Kind::ThreadI => "thread_i",
            Kind::ThreadII => "thread_ii",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown configuration kind {s:?}"))
    }
}

/// One deletion: the configuration kind, the set `S` removed before
/// recursing, and the named vertices the extension recipe refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: Kind,
    pub deletion_set: BTreeSet<usize>,
    pub anchors: BTreeMap<String, usize>,
}

impl ReductionStep {
    fn new(kind: Kind, s: impl IntoIterator<Item = usize>, anchors: impl IntoIterator<Item = (String, usize)>) -> Self {
        ReductionStep { kind, deletion_set: s.into_iter().collect(), anchors: anchors.into_iter().collect() }
    }

    pub fn anchor(&self, role: &str) -> Result<usize, ReductionError> {
        self.anchors
            .get(role)
            .copied()
            .ok_or_else(|| ReductionError::MissingAnchor { kind: self.kind, role: role.into() })
    }

    /// Same step with every vertex id passed through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        ReductionStep {
            kind: self.kind,
            deletion_set: self.deletion_set.iter().map(|&v| f(v)).collect(),
            anchors: self.anchors.iter().map(|(k, &v)| (k.clone(), f(v))).collect(),
        }
    }

    /// `kind S=a,b,c role=v ...`, anchors in role order.
    pub fn to_line(&self) -> String {
        let set: Vec<String> = self.deletion_set.iter().map(usize::to_string).collect();
        let mut line = format!("{} S={}", self.kind, set.join(","));
        for (role, v) in &self.anchors {
            line.push_str(&format!(" {role}={v}"));
        }
        line
    }
}

fn role(name: &str, i: usize) -> String {
    format!("{name}{i}")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{kind}: no color left for vertex {vertex}")]
    RecipeStuck { kind: Kind, vertex: usize },
    #[error("{kind}: anchors must be distinct: {detail}")]
    DistinctnessViolated { kind: Kind, detail: String },
    #[error("{kind}: vertex {vertex} must have even degree and a defined odd color")]
    ParityPreconditionViolated { kind: Kind, vertex: usize },
    #[error("{kind}: step has no anchor `{role}`")]
    MissingAnchor { kind: Kind, role: String },
    #[error("partial coloring does not fit the step: {0}")]
    InvalidPartial(String),
    #[error("{kind}: extension did not produce an odd coloring")]
    VerificationFailed { kind: Kind },
    #[error("{0} steps are not handled by this extender")]
    WrongKind(Kind),
}

// ---------------------------------------------------------------------------
// extension state

struct Ext<'g> {
    g: &'g Graph,
    kind: Kind,
    col: Coloring,
    memo: Vec<Option<Color>>,
}

impl<'g> Ext<'g> {
    fn new(g: &'g Graph, step: &ReductionStep, partial: &Coloring, palette: usize) -> Result<Self, ReductionError> {
        let bad = |why: String| Err(ReductionError::InvalidPartial(why));
        if partial.len() != g.n() {
            return bad(format!("coloring has {} entries for {} vertices", partial.len(), g.n()));
        }
        if partial.palette() > palette {
            return bad(format!("palette {} exceeds {palette}", partial.palette()));
        }
        if let Some(&v) = step.deletion_set.iter().find(|&&v| v >= g.n()) {
            return bad(format!("deletion set names vertex {v} outside the graph"));
        }
        for v in g.vertices() {
            let inside = step.deletion_set.contains(&v);
            if inside == partial.get(v).is_some() {
                let what = if inside { "colored although deleted" } else { "uncolored although kept" };
                return bad(format!("vertex {v} is {what}"));
            }
        }
        if !partial.is_proper(g) {
            return bad("coloring is not proper".into());
        }
        for v in g.vertices().filter(|v| !step.deletion_set.contains(v)) {
            let kept = g.neighbors(v).iter().any(|u| !step.deletion_set.contains(u));
            if kept && partial.odd_colors(g, v).is_empty() {
                return bad(format!("vertex {v} has no odd color in the graph minus the deletion set"));
            }
        }
        Ok(Ext {
            g,
            kind: step.kind,
            col: partial.with_palette(palette).expect("palette only grows"),
            memo: vec![None; g.n()],
        })
    }

    fn phi(&self, v: usize) -> Option<Color> {
        self.col.get(v)
    }

    /// Sticky odd color of `v` under the current partial coloring.
    fn odd(&mut self, v: usize) -> Option<Color> {
        let odd = self.col.odd_colors(self.g, v);
        if let Some(c) = self.memo[v].filter(|c| odd.contains(c)) {
            return Some(c);
        }
        self.memo[v] = odd.first().copied();
        self.memo[v]
    }

    /// Give `v` the least color outside `forbidden` (absent entries ignored).
    fn paint(&mut self, v: usize, forbidden: &[Option<Color>]) -> Result<Color, ReductionError> {
        let color = (1..=self.col.palette())
            .find(|c| !forbidden.contains(&Some(*c)))
            .ok_or(ReductionError::RecipeStuck { kind: self.kind, vertex: v })?;
        self.col.set(v, color);
        Ok(color)
    }

    /// Colors and sticky odd colors of every neighbor of `v`.
    fn around(&mut self, v: usize) -> Vec<Option<Color>> {
        let mut out = Vec::new();
        for &w in self.g.neighbors(v) {
            out.push(self.phi(w));
            out.push(self.odd(w));
        }
        out
    }

    fn require_outside(&self, step: &ReductionStep, v: usize, what: &str) -> Result<(), ReductionError> {
        if step.deletion_set.contains(&v) {
            return Err(ReductionError::DistinctnessViolated { kind: self.kind, detail: format!("{what} = {v} lies in S") });
        }
        Ok(())
    }

    fn finish(self) -> Result<Coloring, ReductionError> {
        if self.col.is_odd_coloring(self.g) {
            Ok(self.col)
        } else {
            Err(ReductionError::VerificationFailed { kind: self.kind })
        }
    }
}

// ---------------------------------------------------------------------------
// detectors

fn is_gen_easy(g: &Graph, v: usize) -> bool {
    let d = g.degree(v);
    d > 0 && (d % 2 == 1 || g.n2(v) > 0)
}

fn easy_neighbors(g: &Graph, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| g.is_easy(u)).count()
}

fn with_two_neighbors(g: &Graph, kind: Kind, v: usize) -> ReductionStep {
    let s = std::iter::once(v).chain(g.neighbors_of_degree(v, 2));
    ReductionStep::new(kind, s, [("v".to_string(), v)])
}

fn one_vertex_step(g: &Graph, kind: Kind) -> Option<ReductionStep> {
    let v = g.vertices().find(|&v| g.degree(v) == 1)?;
    Some(ReductionStep::new(kind, [v], [("v".to_string(), v), ("u".to_string(), g.neighbors(v)[0])]))
}

/// Least isolated vertex.
pub fn isolated_find(g: &Graph) -> Option<ReductionStep> {
    let v = g.vertices().find(|&v| g.degree(v) == 0)?;
    Some(ReductionStep::new(Kind::Isolated, [v], [("v".to_string(), v)]))
}

/// A 1-vertex, or else a vertex `v` of positive degree with odd degree or
/// a 2-neighbor such that `2d(v) <= n_2(v) + n_e(v) + c - 1`, where `n_e`
/// counts easy neighbors. Deletes `v` and its 2-neighbors.
pub fn keylem_find(g: &Graph, c: usize) -> Option<ReductionStep> {
    if let Some(step) = one_vertex_step(g, Kind::OneVertex) {
        return Some(step);
    }
    g.vertices()
        .find(|&v| is_gen_easy(g, v) && 2 * g.degree(v) < g.n2(v) + easy_neighbors(g, v) + c)
        .map(|v| with_two_neighbors(g, Kind::Keylem, v))
}

/// The four plane girth-5 configurations, scanned in order: a 1-vertex, a
/// thread of at least two 2-vertices, a 3-vertex with a 2-neighbor or an
/// easy neighbor, an easy 4-vertex with at least two easy neighbors.
pub fn struc_find(g: &Graph) -> Option<ReductionStep> {
    if let Some(step) = one_vertex_step(g, Kind::StrucI) {
        return Some(step);
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 2 && g.n2(v) > 0) {
        return Some(with_two_neighbors(g, Kind::StrucII, v));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 3 && (g.n2(v) > 0 || easy_neighbors(g, v) > 0)) {
        return Some(with_two_neighbors(g, Kind::StrucIII, v));
    }
    g.vertices()
        .find(|&v| g.degree(v) == 4 && g.is_easy(v) && easy_neighbors(g, v) >= 2)
        .map(|v| with_two_neighbors(g, Kind::StrucIV, v))
}

/// Cycles whose vertices all have degree 2, each listed from its least
/// vertex towards the smaller neighbor.
fn bare_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut seen = vec![false; g.n()];
    for v in g.vertices() {
        if seen[v] || g.degree(v) != 2 {
            continue;
        }
        let comp = {
            let mut walk = vec![v];
            let (mut prev, mut cur) = (v, g.neighbors(v)[0]);
            while cur != v && g.degree(cur) == 2 && walk.len() <= g.n() {
                walk.push(cur);
                let next = g.other_neighbor(cur, prev);
                prev = cur;
                cur = next;
            }
            (cur == v).then_some(walk)
        };
        if let Some(walk) = comp {
            for &u in &walk {
                seen[u] = true;
            }
            out.push(walk);
        }
    }
    out
}

/// The five sparse configurations for four colors, scanned in order:
/// (i) a 1-vertex; (ii) a 3- or 4-cycle whose vertices other than `u1` are
/// 2-vertices; (iii) four consecutive 2-vertices; (iv) an odd-degree vertex
/// next to two consecutive 2-vertices; (v) a 3-vertex with only
/// 2-neighbors.
pub fn rc5_find(g: &Graph) -> Option<ReductionStep> {
    let two = |v: usize| g.degree(v) == 2;
    if let Some(step) = one_vertex_step(g, Kind::Rc5I) {
        return Some(step);
    }
    // (ii)
    for u1 in g.vertices() {
        let nbrs = g.neighbors(u1);
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !two(a) || !two(b) {
                    continue;
                }
                if g.has_edge(a, b) {
                    let anchors = [("u1", u1), ("u2", a), ("u3", b)].map(|(k, v)| (k.to_string(), v));
                    return Some(ReductionStep::new(Kind::Rc5II, [a, b], anchors));
                }
                let w = g.other_neighbor(a, u1);
                if w != b && two(w) && g.other_neighbor(w, a) == b {
                    let anchors = [("u1", u1), ("u2", a), ("u3", w), ("u4", b)].map(|(k, v)| (k.to_string(), v));
                    return Some(ReductionStep::new(Kind::Rc5II, [a, w, b], anchors));
                }
            }
        }
    }
    // (iii)
    let mut runs: Vec<(Vec<usize>, usize, usize)> = Vec::new();
    for t in g.maximal_threads().into_iter().filter(|t| t.len() >= 4) {
        let u1 = if t.len() == 1 { g.neighbors(t[0])[0] } else { g.other_neighbor(t[0], t[1]) };
        let u2 = g.other_neighbor(t[3], t[2]);
        runs.push((t[..4].to_vec(), u1, u2));
    }
    for cyc in bare_cycles(g).into_iter().filter(|c| c.len() >= 5) {
        let k = cyc.len();
        runs.push((cyc[..4].to_vec(), cyc[k - 1], cyc[4 % k]));
    }
    if let Some((vs, u1, u2)) = runs.into_iter().min() {
        let mut anchors = vec![("u1".to_string(), u1), ("u2".to_string(), u2)];
        anchors.extend(vs.iter().enumerate().map(|(i, &v)| (role("v", i + 1), v)));
        return Some(ReductionStep::new(Kind::Rc5III, vs, anchors));
    }
    // (iv)
    for u1 in g.vertices().filter(|&u| g.degree(u) % 2 == 1) {
        for &v1 in g.neighbors(u1) {
            if !two(v1) {
                continue;
            }
            let v2 = g.other_neighbor(v1, u1);
            if two(v2) {
                let u2 = g.other_neighbor(v2, v1);
                let anchors = [("u1", u1), ("v1", v1), ("v2", v2), ("u2", u2)].map(|(k, v)| (k.to_string(), v));
                return Some(ReductionStep::new(Kind::Rc5IV, [v1, v2], anchors));
            }
        }
    }
    // (v)
    let v = g.vertices().find(|&v| g.degree(v) == 3 && g.n2(v) == 3)?;
    let mut anchors = vec![("v".to_string(), v)];
    let mut s = vec![v];
    for (i, &u) in g.neighbors(v).iter().enumerate() {
        anchors.push((role("u", i + 1), u));
        anchors.push((format!("u'{}", i + 1), g.other_neighbor(u, v)));
        s.push(u);
    }
    Some(ReductionStep::new(Kind::Rc5V, s, anchors))
}

/// For a 2-neighbor `u` of `v`, whether `u` starts a thread of at least two
/// 2-vertices going away from `v`.
fn starts_two_thread(g: &Graph, v: usize, u: usize) -> bool {
    g.degree(u) == 2 && g.degree(g.other_neighbor(u, v)) == 2
}

/// The two thread configurations at a 4+-vertex `v`, scanned (i) over all
/// vertices, then (ii):
/// (i) only 2-neighbors, at least `d(v) - 1` of them starting 2-threads;
/// (ii) a 3-thread at `u1` plus at least `d(v) - 3 + min(n_3+(v), 1)` other
/// 2-threads.
pub fn thread_find(g: &Graph) -> Option<ReductionStep> {
    g.vertices().find_map(|v| thread_i_at(g, v)).or_else(|| g.vertices().find_map(|v| thread_ii_at(g, v)))
}

fn thread_i_at(g: &Graph, v: usize) -> Option<ReductionStep> {
    let d = g.degree(v);
    if d < 4 || g.n2(v) != d {
        return None;
    }
    let nbrs = g.neighbors(v);
    let threads: Vec<usize> = nbrs.iter().copied().filter(|&u| starts_two_thread(g, v, u)).collect();
    if threads.len() + 1 < d {
        return None;
    }
    let u1 = nbrs.iter().copied().find(|u| !threads.contains(u)).unwrap_or(nbrs[0]);
    let rest: Vec<usize> = nbrs.iter().copied().filter(|&u| u != u1).collect();
    let mut anchors = vec![("v".to_string(), v), ("u1".to_string(), u1), ("x1".to_string(), g.other_neighbor(u1, v))];
    let mut s = vec![v, u1];
    for (k, &u) in rest.iter().enumerate() {
        let i = k + 2;
        let x = g.other_neighbor(u, v);
        anchors.push((role("u", i), u));
        anchors.push((role("x", i), x));
        anchors.push((role("y", i), g.other_neighbor(x, u)));
        s.extend([u, x]);
    }
    Some(ReductionStep::new(Kind::ThreadI, s, anchors))
}

fn thread_ii_at(g: &Graph, v: usize) -> Option<ReductionStep> {
    let d = g.degree(v);
    if d < 4 {
        return None;
    }
    let nbrs = g.neighbors(v);
    let u1 = nbrs.iter().copied().find(|&u| {
        starts_two_thread(g, v, u) && {
            let x = g.other_neighbor(u, v);
            g.degree(g.other_neighbor(x, u)) == 2
        }
    })?;
    let x1 = g.other_neighbor(u1, v);
    let y1 = g.other_neighbor(x1, u1);
    let z1 = g.other_neighbor(y1, x1);
    let mut threads: Vec<usize> = nbrs.iter().copied().filter(|&u| u != u1 && starts_two_thread(g, v, u)).collect();
    let n3 = g.n3_plus(v);
    if threads.len() + 3 < d + n3.min(1) {
        return None;
    }
    let others: Vec<usize> = nbrs.iter().copied().filter(|&u| u != u1 && !threads.contains(&u)).collect();
    // the last one or two neighbors are the ones the color of v must dodge
    let tail: Vec<usize> = if n3 >= 1 {
        others
    } else {
        if g.n2(v) != d {
            return None;
        }
        let mut tail = others;
        while tail.len() < 2 {
            tail.push(threads.pop().expect("enough threads to fill the tail"));
        }
        tail.sort_unstable();
        tail
    };
    let mut anchors: Vec<(String, usize)> =
        [("v", v), ("u1", u1), ("x1", x1), ("y1", y1), ("z1", z1)].map(|(k, v)| (k.to_string(), v)).into();
    let mut s = vec![v, u1, x1, y1];
    for (k, &u) in threads.iter().enumerate() {
        let i = k + 2;
        let x = g.other_neighbor(u, v);
        anchors.push((role("u", i), u));
        anchors.push((role("x", i), x));
        anchors.push((role("y", i), g.other_neighbor(x, u)));
        s.extend([u, x]);
    }
    let first_tail = threads.len() + 2;
    for (k, &u) in tail.iter().enumerate() {
        let i = first_tail + k;
        anchors.push((role("u", i), u));
        if g.degree(u) == 2 {
            anchors.push((role("x", i), g.other_neighbor(u, v)));
            s.push(u);
        }
    }
    Some(ReductionStep::new(Kind::ThreadII, s, anchors))
}

// ---------------------------------------------------------------------------
// extenders

fn one_vertex_recipe(ext: &mut Ext, step: &ReductionStep) -> Result<(), ReductionError> {
    let (v, u) = (step.anchor("v")?, step.anchor("u")?);
    let forbid = [ext.phi(u), ext.odd(u)];
    ext.paint(v, &forbid)?;
    Ok(())
}

fn keylem_recipe(ext: &mut Ext, step: &ReductionStep) -> Result<(), ReductionError> {
    let g = ext.g;
    let v = step.anchor("v")?;
    let twos: Vec<usize> = g.neighbors_of_degree(v, 2).collect();
    let mut forbid = Vec::new();
    for &u in &twos {
        forbid.extend(g.neighbors(u).iter().filter(|&&x| x != v).map(|&x| ext.phi(x)));
    }
    for &w in g.neighbors(v) {
        forbid.push(ext.phi(w));
        if g.degree(w) >= 3 && !g.is_easy(w) {
            forbid.push(ext.odd(w));
        }
    }
    ext.paint(v, &forbid)?;
    for &u in &twos {
        let forbid = ext.around(u);
        ext.paint(u, &forbid)?;
    }
    // easy neighbors left without an odd color have even degree and hence
    // a 2-neighbor, whose recoloring fixes them
    for &w in g.neighbors(v) {
        if !g.is_easy(w) || !ext.col.odd_colors(g, w).is_empty() {
            continue;
        }
        let x = g.neighbors_of_degree(w, 2).next().ok_or(ReductionError::RecipeStuck { kind: ext.kind, vertex: w })?;
        ext.col.clear(x);
        let forbid = ext.around(x);
        ext.paint(x, &forbid)?;
    }
    Ok(())
}

/// Extend over a `one_vertex`, `keylem`, `struc_*` or `isolated` step with
/// `c` colors.
pub fn keylem_extend(g: &Graph, c: usize, step: &ReductionStep, partial: &Coloring) -> Result<Coloring, ReductionError> {
    let mut ext = Ext::new(g, step, partial, c)?;
    match step.kind {
        Kind::Isolated => {
            ext.paint(step.anchor("v")?, &[])?;
        }
        Kind::OneVertex | Kind::StrucI | Kind::Rc5I => one_vertex_recipe(&mut ext, step)?,
        Kind::Keylem | Kind::StrucII | Kind::StrucIII | Kind::StrucIV => keylem_recipe(&mut ext, step)?,
        other => return Err(ReductionError::WrongKind(other)),
    }
    ext.finish()
}

/// Extend over an `rc5_*` step with four colors.
pub fn rc5_extend(g: &Graph, step: &ReductionStep, partial: &Coloring) -> Result<Coloring, ReductionError> {
    let mut ext = Ext::new(g, step, partial, 4)?;
    match step.kind {
        Kind::Rc5I => one_vertex_recipe(&mut ext, step)?,
        Kind::Rc5II => {
            let len = if step.anchors.contains_key("u4") { 4 } else { 3 };
            let cyc: Vec<usize> = (1..=len).map(|i| step.anchor(&role("u", i))).collect::<Result<_, _>>()?;
            let order: &[usize] = if len == 4 { &[1, 3, 2] } else { &[1, 2] };
            for &i in order {
                let (prev, next) = (cyc[i - 1], cyc[(i + 1) % len]);
                let forbid = [ext.phi(prev), ext.odd(prev), ext.phi(next), ext.odd(next)];
                ext.paint(cyc[i], &forbid)?;
            }
        }
        Kind::Rc5III => {
            let (u1, u2) = (step.anchor("u1")?, step.anchor("u2")?);
            let vs: Vec<usize> = (1..=4).map(|i| step.anchor(&role("v", i))).collect::<Result<_, _>>()?;
            ext.require_outside(step, u1, "u1")?;
            ext.require_outside(step, u2, "u2")?;
            if u1 == u2 {
                return Err(ReductionError::DistinctnessViolated { kind: ext.kind, detail: format!("u1 = u2 = {u1}") });
            }
            let a1 = [ext.phi(u1), ext.odd(u1)];
            let a2 = [ext.phi(u2), ext.odd(u2)];
            let union: BTreeSet<Color> = a1.iter().chain(&a2).flatten().copied().collect();
            if union.len() <= 3 {
                let shared = (1..=4).find(|c| !union.contains(c)).expect("at most three colors used");
                ext.col.set(vs[0], shared);
                ext.col.set(vs[3], shared);
            } else {
                ext.col.set(vs[0], a2[0].expect("u2 is colored"));
                ext.col.set(vs[3], a1[0].expect("u1 is colored"));
            }
            for i in [1, 2] {
                let forbid = ext.around(vs[i]);
                ext.paint(vs[i], &forbid)?;
            }
        }
        Kind::Rc5IV => {
            let [u1, v1, v2, u2] = ["u1", "v1", "v2", "u2"].map(|r| step.anchor(r));
            let (u1, v1, v2, u2) = (u1?, v1?, v2?, u2?);
            if u1 == u2 {
                return Err(ReductionError::DistinctnessViolated { kind: ext.kind, detail: format!("u1 = u2 = {u1}") });
            }
            if g.degree(u1).is_multiple_of(2) {
                return Err(ReductionError::ParityPreconditionViolated { kind: ext.kind, vertex: u1 });
            }
            let forbid = [ext.phi(u2), ext.odd(u2), ext.phi(u1)];
            ext.paint(v2, &forbid)?;
            let forbid = [ext.phi(v2), ext.phi(u2), ext.phi(u1)];
            ext.paint(v1, &forbid)?;
        }
        Kind::Rc5V => {
            let v = step.anchor("v")?;
            let mut pairs = Vec::new();
            for i in 1..=3 {
                let (u, up) = (step.anchor(&role("u", i))?, step.anchor(&format!("u'{i}"))?);
                ext.require_outside(step, up, &format!("u'{i}"))?;
                pairs.push((u, up));
            }
            let forbid: Vec<_> = pairs.iter().map(|&(_, up)| ext.phi(up)).collect();
            ext.paint(v, &forbid)?;
            for (u, up) in pairs {
                let forbid = [ext.phi(up), ext.odd(up), ext.phi(v)];
                ext.paint(u, &forbid)?;
            }
        }
        other => return Err(ReductionError::WrongKind(other)),
    }
    ext.finish()
}

/// Extend over a `thread_*` step with four colors.
pub fn thread_extend(g: &Graph, step: &ReductionStep, partial: &Coloring) -> Result<Coloring, ReductionError> {
    let mut ext = Ext::new(g, step, partial, 4)?;
    let v = step.anchor("v")?;
    let d = g.degree(v);
    let parity = |ext: &Ext| ReductionError::ParityPreconditionViolated { kind: ext.kind, vertex: v };
    match step.kind {
        Kind::ThreadI => {
            let (u1, x1) = (step.anchor("u1")?, step.anchor("x1")?);
            ext.require_outside(step, x1, "x1")?;
            let mut roles = Vec::new();
            for i in 2..=d {
                let (u, x, y) = (step.anchor(&role("u", i))?, step.anchor(&role("x", i))?, step.anchor(&role("y", i))?);
                ext.require_outside(step, y, &role("y", i))?;
                roles.push((u, x, y));
            }
            let start = ext.odd(x1).ok_or(ReductionError::RecipeStuck { kind: ext.kind, vertex: v })?;
            ext.col.set(v, start);
            for &(_, x, y) in &roles {
                let forbid = [ext.phi(y), ext.odd(y), ext.phi(v)];
                ext.paint(x, &forbid)?;
            }
            for &(u, x, y) in &roles {
                let forbid = [ext.phi(x), ext.phi(y), ext.phi(v)];
                ext.paint(u, &forbid)?;
            }
            let odd_v = ext.odd(v).ok_or_else(|| parity(&ext))?;
            let forbid = [ext.phi(v), Some(odd_v), ext.phi(x1)];
            ext.paint(u1, &forbid)?;
        }
        Kind::ThreadII => {
            if d % 2 == 1 {
                return Err(parity(&ext));
            }
            let [u1, x1, y1, z1] = ["u1", "x1", "y1", "z1"].map(|r| step.anchor(r));
            let (u1, x1, y1, z1) = (u1?, x1?, y1?, z1?);
            ext.require_outside(step, z1, "z1")?;
            let ud = step.anchor(&role("u", d))?;
            let former = g.degree(ud) >= 3;
            let last_thread = if former { d - 1 } else { d - 2 };
            let mut roles = Vec::new();
            for i in 2..=last_thread {
                let (u, x, y) = (step.anchor(&role("u", i))?, step.anchor(&role("x", i))?, step.anchor(&role("y", i))?);
                ext.require_outside(step, y, &role("y", i))?;
                roles.push((u, x, y));
            }
            let mut tail = Vec::new();
            let x_set: Vec<Option<Color>> = if former {
                vec![ext.phi(ud), ext.odd(ud)]
            } else {
                let mut xs = Vec::new();
                for i in [d - 1, d] {
                    let (u, x) = (step.anchor(&role("u", i))?, step.anchor(&role("x", i))?);
                    ext.require_outside(step, x, &role("x", i))?;
                    tail.push((u, x));
                    xs.push(ext.phi(x));
                }
                xs
            };
            match ext.odd(z1) {
                Some(alpha) => {
                    let mut forbid = x_set.clone();
                    forbid.push(Some(alpha));
                    ext.paint(v, &forbid)?;
                }
                None => {
                    // z1 has no odd color yet: y1 supplies one, and v copies it
                    let mut forbid = x_set.clone();
                    forbid.push(ext.phi(z1));
                    let c = ext.paint(y1, &forbid)?;
                    ext.col.set(v, c);
                }
            }
            for &(_, x, y) in &roles {
                let forbid = [ext.phi(y), ext.odd(y), ext.phi(v)];
                ext.paint(x, &forbid)?;
            }
            for (u, x) in roles.iter().map(|&(u, x, _)| (u, x)).chain(tail.iter().copied()) {
                let forbid = [ext.phi(v), ext.phi(x), ext.odd(x)];
                ext.paint(u, &forbid)?;
            }
            let odd_v = ext.odd(v).ok_or_else(|| parity(&ext))?;
            if ext.phi(y1).is_none() {
                let oz = ext.odd(z1);
                ext.paint(u1, &[ext.phi(v), Some(odd_v), oz])?;
                let forbid = [ext.phi(z1), oz, ext.phi(u1)];
                ext.paint(y1, &forbid)?;
                let oz = oz.ok_or(ReductionError::RecipeStuck { kind: ext.kind, vertex: x1 })?;
                ext.col.set(x1, oz);
            } else {
                ext.paint(u1, &[ext.phi(v), Some(odd_v)])?;
                let forbid = [ext.phi(u1), ext.phi(v), ext.phi(z1)];
                ext.paint(x1, &forbid)?;
            }
        }
        other => return Err(ReductionError::WrongKind(other)),
    }
    ext.finish()
}

/// Dispatch to the extender for `step.kind`. `c` is the palette for the
/// palette-parametrized kinds; the four-color kinds ignore it.
pub fn extend_step(g: &Graph, c: usize, step: &ReductionStep, partial: &Coloring) -> Result<Coloring, ReductionError> {
    match step.kind {
        Kind::Rc5II | Kind::Rc5III | Kind::Rc5IV | Kind::Rc5V => rc5_extend(g, step, partial),
        Kind::ThreadI | Kind::ThreadII => thread_extend(g, step, partial),
        _ => keylem_extend(g, c, step, partial),
    }
}

// ---------------------------------------------------------------------------
// pipelines

/// How the deletion loop ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseCase {
    Empty,
    /// The remaining graph is the given regular graph with every edge
    /// subdivided once.
    SubdivisionOfRegular(Graph),
    FallbackExactSolver,
}

impl BaseCase {
    pub fn tag(&self) -> &'static str {
        match self {
            BaseCase::Empty => "empty",
            BaseCase::SubdivisionOfRegular(_) => "subdivision_of_regular",
            BaseCase::FallbackExactSolver => "fallback_exact_solver",
        }
    }
}

/// Deletions in order (vertex ids of the input graph) and the graph left
/// when no configuration remained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub steps: Vec<ReductionStep>,
    pub base_case: BaseCase,
    /// Input ids of the vertices left after all deletions, ascending.
    pub remaining_vertices: Vec<usize>,
    pub remaining: Graph,
}

impl PipelineTrace {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {i} {}\n", step.to_line()));
        }
        out.push_str(&format!("base {} n={} m={}\n", self.base_case.tag(), self.remaining.n(), self.remaining.m()));
        out
    }
}

/// Delete the trace's sets from `g` in order and return what is left.
pub fn replay_deletions(g: &Graph, trace: &PipelineTrace) -> Graph {
    let gone: BTreeSet<usize> = trace.steps.iter().flat_map(|s| s.deletion_set.iter().copied()).collect();
    g.delete(&gone).0
}

/// A subdivided `K_{c+1}`: branch vertices and the subdividing vertices, as
/// input ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub branch_vertices: Vec<usize>,
    pub subdivision_vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub coloring: Option<Coloring>,
    pub trace: PipelineTrace,
    pub refusal: Option<Refusal>,
    /// Precondition violations noticed on the input, and anything that sent
    /// the pipeline to the exact solver.
    pub warnings: Vec<String>,
    /// Set when a recipe failed during replay and the whole input was
    /// handed to the exact solver instead.
    pub extension_failure: Option<ReductionError>,
}

impl PipelineResult {
    pub fn used_solver(&self) -> bool {
        self.trace.base_case == BaseCase::FallbackExactSolver || self.extension_failure.is_some()
    }
}

struct Reduced {
    steps: Vec<ReductionStep>,
    /// Input ids alive just before each step.
    alive_before: Vec<Vec<usize>>,
    remaining_vertices: Vec<usize>,
    remaining: Graph,
}

fn reduce(g: &Graph, detect: impl Fn(&Graph) -> Option<ReductionStep>) -> Reduced {
    let mut alive: Vec<usize> = g.vertices().collect();
    let mut steps = Vec::new();
    let mut alive_before = Vec::new();
    loop {
        let (h, _) = g.induced(&alive);
        let Some(local) = isolated_find(&h).or_else(|| detect(&h)) else {
            return Reduced { steps, alive_before, remaining_vertices: alive, remaining: h };
        };
        let step = local.relabel(|v| alive[v]);
        alive_before.push(alive.clone());
        alive.retain(|v| !step.deletion_set.contains(v));
        steps.push(step);
    }
}

/// Run the recorded extensions in reverse, starting from a coloring of the
/// remaining graph.
fn replay(g: &Graph, red: &Reduced, palette: usize, base: &Coloring) -> Result<Coloring, ReductionError> {
    let mut full: Vec<Option<Color>> = vec![None; g.n()];
    for (i, &v) in red.remaining_vertices.iter().enumerate() {
        full[v] = base.get(i);
    }
    for (step, alive) in red.steps.iter().zip(&red.alive_before).rev() {
        let (h, old_to_new) = g.induced(alive);
        let local_step = step.relabel(|v| old_to_new[v].expect("anchors are alive"));
        let partial = Coloring::from_colors(palette, alive.iter().map(|&v| full[v]).collect())
            .map_err(|e| ReductionError::InvalidPartial(e.to_string()))?;
        let done = extend_step(&h, palette, &local_step, &partial)?;
        for (i, &v) in alive.iter().enumerate() {
            full[v] = done.get(i);
        }
    }
    Ok(Coloring::from_colors(palette, full).expect("palette respected"))
}

/// Assemble the result: replay over `base_coloring`, falling back to the
/// exact solver on the whole input if a recipe fails.
fn finish(
    g: &Graph,
    red: Reduced,
    palette: usize,
    base_case: BaseCase,
    base_coloring: Option<Coloring>,
    mut warnings: Vec<String>,
) -> PipelineResult {
    let mut extension_failure = None;
    let coloring = match base_coloring {
        None => None,
        Some(base) => match replay(g, &red, palette, &base) {
            Ok(col) => Some(col),
            Err(e) => {
                warnings.push(format!("extension failed ({e}); solving the whole input exactly"));
                extension_failure = Some(e);
                find_odd_coloring(g, palette, None).witness
            }
        },
    };
    let trace = PipelineTrace {
        steps: red.steps,
        base_case,
        remaining_vertices: red.remaining_vertices,
        remaining: red.remaining,
    };
    PipelineResult { coloring, trace, refusal: None, warnings, extension_failure }
}

fn fallback(g: &Graph, red: Reduced, palette: usize, mut warnings: Vec<String>) -> PipelineResult {
    warnings.push(format!(
        "no configuration applies to a remaining graph with {} vertices; using the exact solver",
        red.remaining.n()
    ));
    let base = find_odd_coloring(&red.remaining, palette, None).witness;
    if base.is_none() {
        warnings.push("remaining graph is not odd colorable with the palette".into());
    }
    finish(g, red, palette, BaseCase::FallbackExactSolver, base, warnings)
}

fn empty_base(palette: usize) -> Option<Coloring> {
    Some(Coloring::uncolored(0, palette))
}

/// Is `h` a regular graph of degree `c` with every edge subdivided once?
fn subdivision_shape(h: &Graph, c: usize) -> bool {
    h.vertices().all(|v| match h.degree(v) {
        2 => h.neighbors(v).iter().all(|&u| h.degree(u) == c),
        d if d == c => h.neighbors(v).iter().all(|&u| h.degree(u) == 2),
        _ => false,
    })
}

/// Odd `c`-coloring for graphs with `mad <= 4c/(c+2)`, `c >= 7`: delete
/// keylem configurations until none is left; a nonempty remainder must be a
/// subdivided `c`-regular graph, colored by Brooks on the branch vertices
/// and greedily on the subdivision vertices. A subdivided `K_{c+1}` there
/// is reported as a refusal.
pub fn pipeline_sparse(g: &Graph, c: usize) -> PipelineResult {
    let mut warnings = Vec::new();
    if c < 7 {
        warnings.push(format!("palette {c} is below 7; the coloring guarantee does not apply"));
    }
    if let Ok(cert) = mad_exact(g) {
        let cap = ratio(4 * c as i64, c as i64 + 2);
        if cert.value > cap {
            warnings.push(format!("mad {} exceeds {}", format_ratio(&cert.value), format_ratio(&cap)));
        }
    }
    let red = reduce(g, |h| keylem_find(h, c));
    let h = red.remaining.clone();
    if h.is_null() {
        return finish(g, red, c, BaseCase::Empty, empty_base(c), warnings);
    }
    if c < 3 || !subdivision_shape(&h, c) {
        return fallback(g, red, c, warnings);
    }
    let contraction = h.contract_threads().expect("subdivisions contract cleanly");
    let base = contraction.base.clone();
    let mut col = Coloring::uncolored(h.n(), c);
    for comp in base.components() {
        let (sub, _) = base.induced(&comp);
        if sub.n() == c + 1 && sub.is_complete() {
            let to_input = |v: usize| red.remaining_vertices[v];
            let branch: Vec<usize> = comp.iter().map(|&b| to_input(contraction.base_vertices[b])).collect();
            let mut subdiv: Vec<usize> = contraction
                .thread_of_edge
                .iter()
                .filter(|((a, _), _)| comp.contains(a))
                .flat_map(|(_, path)| path.iter().map(|&v| to_input(v)))
                .collect();
            subdiv.sort_unstable();
            let mut res = finish(g, red, c, BaseCase::SubdivisionOfRegular(base), None, warnings);
            res.refusal = Some(Refusal { branch_vertices: branch, subdivision_vertices: subdiv });
            return res;
        }
        let part = proper_color_guaranteed(&sub, c).expect("Brooks hypotheses hold on a component");
        for (i, &b) in comp.iter().enumerate() {
            col.set(contraction.base_vertices[b], part.get(i).expect("total"));
        }
    }
    let mut ext = Ext { g: &h, kind: Kind::Keylem, col, memo: vec![None; h.n()] };
    for x in h.vertices().filter(|&v| h.degree(v) == 2) {
        let forbid = ext.around(x);
        if ext.paint(x, &forbid).is_err() {
            return fallback(g, red, c, warnings);
        }
    }
    let base_col = ext.col;
    finish(g, red, c, BaseCase::SubdivisionOfRegular(base), Some(base_col), warnings)
}

/// Odd 6-coloring for plane graphs of girth at least 5: delete the four
/// plane configurations (and any other keylem configuration for six colors)
/// until the graph is empty.
pub fn pipeline_planar6(g: &Graph) -> PipelineResult {
    let mut warnings = Vec::new();
    if let Some(k) = g.girth().filter(|&k| k < 5) {
        warnings.push(format!("girth {k} is below 5"));
    }
    let red = reduce(g, |h| struc_find(h).or_else(|| keylem_find(h, 6)));
    if red.remaining.is_null() {
        return finish(g, red, 6, BaseCase::Empty, empty_base(6), warnings);
    }
    fallback(g, red, 6, warnings)
}

/// Odd 4-coloring for graphs with `mad < 22/9` and no induced 5-cycle:
/// delete the sparse configurations, then the thread configurations,
/// until the graph is empty.
pub fn pipeline_sparse4(g: &Graph) -> PipelineResult {
    let mut warnings = Vec::new();
    if let Ok(cert) = mad_exact(g) {
        if cert.value >= ratio(22, 9) {
            warnings.push(format!("mad {} is not below 22/9", format_ratio(&cert.value)));
        }
    }
    if let Some(c5) = g.find_induced_c5() {
        warnings.push(format!("induced 5-cycle {c5:?}"));
    }
    let red = reduce(g, |h| rc5_find(h).or_else(|| thread_find(h)));
    if red.remaining.is_null() {
        return finish(g, red, 4, BaseCase::Empty, empty_base(4), warnings);
    }
    fallback(g, red, 4, warnings)
}
