//! Exact charge bookkeeping for the three discharging systems, plus the
//! rotation-system face machinery the plane-graph rules need.
//!
//! Rotations are read as counterclockwise neighbor orders. Faces are traced
//! by the successor rule: after the dart `(u, v)` comes `(v, w)` where `w`
//! immediately follows `u` in the rotation at `v`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::graph::Graph;
use crate::mad::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("rotation at vertex {vertex} is not a cyclic order of its neighbors")]
    BadRotation { vertex: usize },
    #[error("embedding covers {found} vertices but the graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("line {line}: malformed embedding: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("euler check failed: n - m + f = {n} - {m} + {f} != 2 * {components} (one sphere per component)")]
    EulerViolated { n: usize, m: usize, f: usize, components: usize },
    #[error("girth {0} is below 5")]
    GirthViolated(usize),
}

/// A rotation system: for every vertex, its neighbors in counterclockwise
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn from_rotation(g: &Graph, rotation: Vec<Vec<usize>>) -> Result<Self, DischargeError> {
        if rotation.len() != g.n() {
            return Err(DischargeError::SizeMismatch { expected: g.n(), found: rotation.len() });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(DischargeError::BadRotation { vertex: v });
            }
        }
        Ok(Embedding { rotation })
    }

    /// Rotation read off a straight-line drawing: neighbors sorted by angle.
    pub fn from_coordinates(g: &Graph, points: &[(f64, f64)]) -> Result<Self, DischargeError> {
        if points.len() != g.n() {
            return Err(DischargeError::SizeMismatch { expected: g.n(), found: points.len() });
        }
        let rotation = g
            .vertices()
            .map(|v| {
                let (vx, vy) = points[v];
                let mut nbrs = g.neighbors(v).to_vec();
                let angle = |u: usize| (points[u].1 - vy).atan2(points[u].0 - vx);
                nbrs.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
                nbrs
            })
            .collect();
        Self::from_rotation(g, rotation)
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// The neighbor after `u` in the rotation at `v`.
    pub fn successor(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("u is a neighbor of v");
        rot[(i + 1) % rot.len()]
    }

    /// Text format: one line `v: n1 n2 ... nd` per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, rot) in self.rotation.iter().enumerate() {
            out.push_str(&format!("{v}:"));
            for u in rot {
                out.push_str(&format!(" {u}"));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the text format against `g`. Isolated vertices may be omitted.
    pub fn parse(text: &str, g: &Graph) -> Result<Self, DischargeError> {
        let mut rotation: Vec<Option<Vec<usize>>> = vec![None; g.n()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let malformed = |reason: &str| DischargeError::Malformed { line, reason: reason.into() };
            let (head, rest) = body.split_once(':').ok_or_else(|| malformed("expected `v: n1 n2 ...`"))?;
            let v: usize = head.trim().parse().map_err(|_| malformed("vertex must be an integer"))?;
            if v >= g.n() {
                return Err(malformed("vertex out of range"));
            }
            if rotation[v].is_some() {
                return Err(malformed("vertex listed twice"));
            }
            let nbrs = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| malformed("neighbor must be an integer")))
                .collect::<Result<Vec<_>, _>>()?;
            rotation[v] = Some(nbrs);
        }
        let rotation = rotation.into_iter().map(Option::unwrap_or_default).collect();
        Self::from_rotation(g, rotation)
    }
}

/// A face, given by its boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<usize>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// Each position on the walk as `(previous, vertex, next)`.
    pub fn corners(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.boundary.len();
        (0..k).map(move |i| (self.boundary[(i + k - 1) % k], self.boundary[i], self.boundary[(i + 1) % k]))
    }
}

/// Trace all faces. Walks start from the least untraversed dart, so the
/// output is deterministic. Each component is traced on its own sphere (an
/// isolated vertex gets one empty face), so this fails unless
/// `n - m + f = 2k` for `k` components.
pub fn faces(g: &Graph, emb: &Embedding) -> Result<Vec<Face>, DischargeError> {
    let mut out = Vec::new();
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (a, b) in g.edges() {
        for start in [(a, b), (b, a)] {
            if used.contains(&start) {
                continue;
            }
            let mut boundary = Vec::new();
            let mut dart = start;
            while used.insert(dart) {
                boundary.push(dart.0);
                let (u, v) = dart;
                dart = (v, emb.successor(v, u));
            }
            debug_assert_eq!(dart, start);
            out.push(Face { boundary });
        }
    }
    out.extend(g.vertices().filter(|&v| g.degree(v) == 0).map(|_| Face { boundary: Vec::new() }));
    let (n, m, f, components) = (g.n(), g.m(), out.len(), g.components().len());
    if n + f != m + 2 * components {
        return Err(DischargeError::EulerViolated { n, m, f, components });
    }
    Ok(out)
}

/// Something that carries charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Rational,
    pub rule: &'static str,
}

/// Initial and final charges with the full transfer ledger. Elements whose
/// final charge is below `threshold` are flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeReport {
    pub initial: BTreeMap<Element, Rational>,
    pub final_charge: BTreeMap<Element, Rational>,
    pub transfers: Vec<Transfer>,
    pub threshold: Rational,
    pub flagged: BTreeSet<Element>,
    /// Faces the report refers to as `Element::Face(i)`; empty for the
    /// vertex-only systems.
    pub faces: Vec<Face>,
}

impl ChargeReport {
    fn settle(initial: BTreeMap<Element, Rational>, transfers: Vec<Transfer>, threshold: Rational, faces: Vec<Face>) -> Self {
        let mut final_charge = initial.clone();
        for t in &transfers {
            *final_charge.get_mut(&t.from).expect("known sender") -= &t.amount;
            *final_charge.get_mut(&t.to).expect("known receiver") += &t.amount;
        }
        let flagged = final_charge.iter().filter(|(_, q)| **q < threshold).map(|(&e, _)| e).collect();
        ChargeReport { initial, final_charge, transfers, threshold, flagged, faces }
    }

    pub fn total_initial(&self) -> Rational {
        self.initial.values().sum()
    }

    pub fn total_final(&self) -> Rational {
        self.final_charge.values().sum()
    }

    /// Recompute every final charge from the ledger and compare totals.
    pub fn is_conserved(&self) -> bool {
        let mut net: BTreeMap<Element, Rational> = BTreeMap::new();
        for t in &self.transfers {
            *net.entry(t.from).or_insert_with(Rational::zero) -= &t.amount;
            *net.entry(t.to).or_insert_with(Rational::zero) += &t.amount;
        }
        let per_element = self.initial.iter().all(|(e, q)| {
            let moved = net.get(e).cloned().unwrap_or_else(Rational::zero);
            self.final_charge.get(e) == Some(&(q + moved))
        });
        per_element && self.initial.len() == self.final_charge.len() && self.total_initial() == self.total_final()
    }

    pub fn flagged_vertices(&self) -> Vec<usize> {
        self.flagged
            .iter()
            .filter_map(|e| match e {
                Element::Vertex(v) => Some(*v),
                Element::Face(_) => None,
            })
            .collect()
    }
}

fn vertex_charges(g: &Graph, offset: i64) -> BTreeMap<Element, Rational> {
    g.vertices().map(|v| (Element::Vertex(v), ratio(g.degree(v) as i64 + offset, 1))).collect()
}

/// Charge `d(v)`; every 4+-vertex sends `(c-2)/(c+2)` to each 2-neighbor.
/// Flags vertices ending below `4c/(c+2)`.
pub fn audit_sec3(g: &Graph, c: usize) -> ChargeReport {
    let c = c as i64;
    let amount = ratio(c - 2, c + 2);
    let mut transfers = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) >= 4) {
        for u in g.neighbors_of_degree(v, 2) {
            transfers.push(Transfer { from: Element::Vertex(v), to: Element::Vertex(u), amount: amount.clone(), rule: "R1" });
        }
    }
    ChargeReport::settle(vertex_charges(g, 0), transfers, ratio(4 * c, c + 2), Vec::new())
}

/// Charge `d(v)`; every 3+-vertex sends `2/9` to each close 2-vertex.
/// Flags vertices ending below `22/9`.
pub fn audit_sec5(g: &Graph) -> ChargeReport {
    let mut transfers = Vec::new();
    for (v, close) in g.close_map() {
        for u in close {
            transfers.push(Transfer { from: Element::Vertex(v), to: Element::Vertex(u), amount: ratio(2, 9), rule: "R1" });
        }
    }
    ChargeReport::settle(vertex_charges(g, 0), transfers, ratio(22, 9), Vec::new())
}

/// Vertex charge `d(v) - 6`, face charge `2d(f) - 6`, then rules R1-R5.
/// Face rules fire once per occurrence of a vertex on the boundary walk;
/// "exactly one 2-vertex" counts distinct vertices. Flags negative finals.
pub fn audit_sec4(g: &Graph, emb: &Embedding) -> Result<ChargeReport, DischargeError> {
    if let Some(girth) = g.girth().filter(|&k| k < 5) {
        return Err(DischargeError::GirthViolated(girth));
    }
    let fs = faces(g, emb)?;
    let mut initial = vertex_charges(g, -6);
    for (i, f) in fs.iter().enumerate() {
        initial.insert(Element::Face(i), ratio(2 * f.degree() as i64 - 6, 1));
    }
    let half = ratio(1, 2);
    let deg = |v: usize| g.degree(v);
    let mut transfers = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let mut send = |v: usize, amount: Rational, rule: &'static str| {
            if !amount.is_zero() {
                transfers.push(Transfer { from: Element::Face(i), to: Element::Vertex(v), amount, rule });
            }
        };
        let twos: BTreeSet<usize> = f.boundary.iter().copied().filter(|&v| deg(v) == 2).collect();
        let five = f.degree() == 5;
        let bad = five && !twos.is_empty();
        let good = five && twos.is_empty();
        for (x, v, z) in f.corners() {
            match deg(v) {
                2 => send(v, ratio(2, 1), "R1"),
                3 => send(v, ratio(1, 1), "R2"),
                d if d >= 4 => {
                    if bad && twos.len() == 1 && (deg(x) >= 4 || deg(z) >= 4) {
                        send(v, half.clone(), "R3");
                    }
                    if good {
                        let amount = if d == 4 && g.is_easy(v) { ratio(1, 1) } else { half.clone() };
                        send(v, amount, "R4");
                    }
                    if f.degree() >= 6 {
                        let ends: BTreeSet<usize> = [x, z].into();
                        let counted = ends.iter().filter(|&&w| !(deg(w) == 2 && g.has_edge(v, w))).count();
                        send(v, &half * ratio(counted as i64, 1), "R5");
                    }
                }
                _ => {}
            }
        }
    }
    Ok(ChargeReport::settle(initial, transfers, Rational::zero(), fs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, cycle_embedding, dodecahedron, dodecahedron_embedding, hk, k4_embedding, complete, kstar, path};

    #[test]
    fn face_counts() {
        let c5 = cycle_embedding(5);
        let fs = faces(&cycle(5), &c5).unwrap();
        assert_eq!(fs.iter().map(Face::degree).collect::<Vec<_>>(), vec![5, 5]);
        let fs = faces(&dodecahedron(), &dodecahedron_embedding()).unwrap();
        assert_eq!(fs.len(), 12);
        assert!(fs.iter().all(|f| f.degree() == 5));
        let fs = faces(&complete(4), &k4_embedding()).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn tree_has_one_face() {
        let p = path(3);
        let emb = Embedding::from_rotation(&p, vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let fs = faces(&p, &emb).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].boundary, vec![0, 1, 2, 1]);
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        // K4 with a twisted rotation at one vertex traces too few faces
        let k4 = complete(4);
        let good = k4_embedding();
        let mut rot: Vec<Vec<usize>> = (0..4).map(|v| good.rotation(v).to_vec()).collect();
        rot[0].swap(0, 1);
        let twisted = Embedding::from_rotation(&k4, rot).unwrap();
        assert!(matches!(faces(&k4, &twisted), Err(DischargeError::EulerViolated { .. })));
    }

    #[test]
    fn rotation_must_match_neighbors() {
        let c4 = cycle(4);
        assert!(Embedding::from_rotation(&c4, vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 1]]).is_err());
    }

    #[test]
    fn embedding_text_round_trip() {
        let g = dodecahedron();
        let emb = dodecahedron_embedding();
        assert_eq!(Embedding::parse(&emb.to_text(), &g).unwrap(), emb);
        assert!(Embedding::parse("0 1 2\n", &g).is_err());
    }

    #[test]
    fn sec3_on_subdivided_cliques() {
        // K*_8 is the subdivision of the 7-regular K_8: equality everywhere
        let r = audit_sec3(&kstar(8), 7);
        assert!(r.final_charge.values().all(|q| *q == ratio(28, 9)));
        assert!(r.flagged.is_empty());
        assert!(r.is_conserved());
        // K*_7 has 6-vertices, which end at 6 - 6 * 5/9
        let r = audit_sec3(&kstar(7), 7);
        assert_eq!(r.final_charge[&Element::Vertex(0)], ratio(24, 9));
        assert_eq!(r.final_charge[&Element::Vertex(7)], ratio(28, 9));
        let r = audit_sec3(&complete(4), 7);
        assert!(r.transfers.is_empty());
        assert_eq!(r.flagged.len(), 4);
    }

    #[test]
    fn sec4_examples() {
        let r = audit_sec4(&dodecahedron(), &dodecahedron_embedding()).unwrap();
        assert_eq!(r.total_initial(), ratio(-12, 1));
        assert!(r.is_conserved());
        for (e, q) in &r.final_charge {
            match e {
                Element::Vertex(_) => assert_eq!(*q, ratio(0, 1)),
                Element::Face(_) => assert_eq!(*q, ratio(-1, 1)),
            }
        }
        let r = audit_sec4(&cycle(5), &cycle_embedding(5)).unwrap();
        assert_eq!(r.total_final(), ratio(-12, 1));
        assert!(r.transfers.iter().all(|t| t.rule == "R1" && t.amount == ratio(2, 1)));
        assert!(matches!(audit_sec4(&cycle(4), &cycle_embedding(4)), Err(DischargeError::GirthViolated(4))));
    }

    #[test]
    fn sec5_examples() {
        let r = audit_sec5(&hk(1));
        assert!(r.transfers.is_empty());
        assert_eq!(r.flagged_vertices(), vec![0, 1, 2, 3, 4]);
        assert!(audit_sec5(&complete(4)).flagged.is_empty());
        // a - x - y - b with a, b of degree 3 via pendant leaves
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (3, 6), (3, 7)]).unwrap();
        let r = audit_sec5(&g);
        assert_eq!(r.final_charge[&Element::Vertex(1)], ratio(22, 9));
        assert_eq!(r.final_charge[&Element::Vertex(2)], ratio(22, 9));
    }
}
