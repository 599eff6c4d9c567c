//! Partial and total colorings, properness and the odd-neighborhood
//! condition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("line {line}: malformed coloring: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("color {color} outside palette 1..={palette}")]
    OutOfPalette { color: Color, palette: usize },
    #[error("vertex {vertex} listed more than once")]
    DuplicateVertex { vertex: usize },
    #[error("coloring lists vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Assignment of colors from `1..=palette` to some or all vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    palette: usize,
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn uncolored(n: usize, palette: usize) -> Self {
        Coloring { palette, colors: vec![None; n] }
    }

    pub fn from_colors(palette: usize, colors: Vec<Option<Color>>) -> Result<Self, ColoringError> {
        if let Some(&c) = colors.iter().flatten().find(|&&c| c == 0 || c > palette) {
            return Err(ColoringError::OutOfPalette { color: c, palette });
        }
        Ok(Coloring { palette, colors })
    }

    /// Total coloring from a plain slice of colors.
    pub fn total(palette: usize, colors: &[Color]) -> Result<Self, ColoringError> {
        Self::from_colors(palette, colors.iter().map(|&c| Some(c)).collect())
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: Color) {
        assert!(
            (1..=self.palette).contains(&color),
            "color {color} outside palette 1..={}",
            self.palette
        );
        self.colors[v] = Some(color);
    }

    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// No edge has the same color at both (colored) ends.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().into_iter().all(|(u, v)| match (self.colors[u], self.colors[v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }

    /// Colors of odd multiplicity among the colored neighbors of `v`.
    pub fn odd_colors(&self, g: &Graph, v: usize) -> BTreeSet<Color> {
        let mut odd = BTreeSet::new();
        for c in g.neighbors(v).iter().filter_map(|&u| self.colors[u]) {
            if !odd.remove(&c) {
                odd.insert(c);
            }
        }
        odd
    }

    /// Smallest odd color of `v`, if any.
    pub fn pick_odd_color(&self, g: &Graph, v: usize) -> Option<Color> {
        self.odd_colors(g, v).into_iter().next()
    }

    pub fn is_odd_coloring(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && self.is_total()
            && self.is_proper(g)
            && g.vertices().all(|v| g.degree(v) == 0 || !self.odd_colors(g, v).is_empty())
    }

    /// Copy of this coloring on a larger host: `map[i]` is the host id of
    /// local vertex `i`; unmapped host vertices stay uncolored.
    pub fn lift(&self, host_n: usize, map: &[usize]) -> Coloring {
        let mut out = Coloring::uncolored(host_n, self.palette);
        for (i, &h) in map.iter().enumerate() {
            out.colors[h] = self.colors[i];
        }
        out
    }

    /// Same assignment under a different (at least as large) palette.
    pub fn with_palette(&self, palette: usize) -> Result<Coloring, ColoringError> {
        Coloring::from_colors(palette, self.colors.clone())
    }

    /// Text format: a line with the palette size, then `v color` per vertex
    /// (`v -` when uncolored).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.palette);
        for (v, c) in self.colors.iter().enumerate() {
            match c {
                Some(c) => writeln!(out, "{v} {c}").unwrap(),
                None => writeln!(out, "{v} -").unwrap(),
            }
        }
        out
    }

    /// Parse the text format for a graph on `n` vertices. Vertices that are
    /// not listed are uncolored.
    pub fn parse(text: &str, n: usize) -> Result<Self, ColoringError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let malformed = |line: usize, reason: &str| ColoringError::Malformed { line, reason: reason.into() };
        let (hline, header) = lines.next().ok_or_else(|| malformed(0, "missing palette line"))?;
        let palette: usize = header.parse().map_err(|_| malformed(hline, "palette must be an integer"))?;
        let mut seen: BTreeMap<usize, Option<Color>> = BTreeMap::new();
        for (line, body) in lines {
            let mut parts = body.split_whitespace();
            let (Some(v), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(malformed(line, "expected `vertex color`"));
            };
            let v: usize = v.parse().map_err(|_| malformed(line, "vertex must be an integer"))?;
            if v >= n {
                return Err(ColoringError::VertexOutOfRange { vertex: v, n });
            }
            let c = if c == "-" {
                None
            } else {
                Some(c.parse::<Color>().map_err(|_| malformed(line, "color must be an integer or `-`"))?)
            };
            if seen.insert(v, c).is_some() {
                return Err(ColoringError::DuplicateVertex { vertex: v });
            }
        }
        let mut colors = vec![None; n];
        for (v, c) in seen {
            colors[v] = c;
        }
        Coloring::from_colors(palette, colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn properness() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(!Coloring::total(1, &[1, 1]).unwrap().is_proper(&k2));
        assert!(Coloring::total(3, &[1, 2, 3, 1, 2, 3]).unwrap().is_proper(&cycle(6)));
        let partial = Coloring::from_colors(3, vec![Some(1), Some(2), Some(1), Some(2), None]).unwrap();
        assert!(partial.is_proper(&cycle(5)));
    }

    #[test]
    fn odd_color_queries() {
        let c5 = cycle(5);
        let col = Coloring::from_colors(3, vec![None, Some(2), None, None, Some(2)]).unwrap();
        assert!(col.odd_colors(&c5, 0).is_empty());
        let c6 = cycle(6);
        let col = Coloring::total(3, &[1, 2, 3, 1, 2, 3]).unwrap();
        assert_eq!(col.odd_colors(&c6, 0), [2, 3].into());
        assert_eq!(col.pick_odd_color(&c6, 0), Some(2));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let col = Coloring::total(2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(col.odd_colors(&star, 0), [1].into());
        let lone = Graph::empty(1);
        assert_eq!(Coloring::total(1, &[1]).unwrap().pick_odd_color(&lone, 0), None);
    }

    #[test]
    fn odd_coloring_examples() {
        assert!(!Coloring::total(3, &[1, 2, 3, 1, 2]).unwrap().is_odd_coloring(&cycle(5)));
        assert!(Coloring::total(3, &[1, 2, 3, 1, 2, 3]).unwrap().is_odd_coloring(&cycle(6)));
        assert!(Coloring::total(1, &[1]).unwrap().is_odd_coloring(&Graph::empty(1)));
        assert!(Coloring::uncolored(0, 1).is_odd_coloring(&Graph::empty(0)));
        // partial colorings never qualify
        assert!(!Coloring::uncolored(1, 1).is_odd_coloring(&Graph::empty(1)));
    }

    #[test]
    fn palette_is_enforced() {
        assert!(matches!(
            Coloring::total(3, &[1, 4]),
            Err(ColoringError::OutOfPalette { color: 4, palette: 3 })
        ));
        assert!(Coloring::total(3, &[0]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let col = Coloring::from_colors(4, vec![Some(1), None, Some(4)]).unwrap();
        let text = col.to_text();
        assert_eq!(text, "4\n0 1\n1 -\n2 4\n");
        assert_eq!(Coloring::parse(&text, 3).unwrap(), col);
        assert!(matches!(
            Coloring::parse("4\n0 1\n0 2\n", 3),
            Err(ColoringError::DuplicateVertex { vertex: 0 })
        ));
        assert!(matches!(
            Coloring::parse("4\n5 1\n", 3),
            Err(ColoringError::VertexOutOfRange { vertex: 5, n: 3 })
        ));
        assert!(Coloring::parse("4\n0\n", 3).is_err());
    }
}
