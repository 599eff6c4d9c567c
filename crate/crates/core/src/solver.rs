//! Exact odd-colorability search, the odd chromatic number, a brute-force
//! oracle, and guaranteed proper colorings under Brooks' hypotheses.

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::Graph;

/// Default assignment budget for [`brute_force_odd_colorable`]: `4^10`.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Colorable,
    NotColorable,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    /// Present exactly when the verdict is [`Verdict::Colorable`].
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

impl SolveOutcome {
    pub fn colorable(&self) -> bool {
        self.verdict == Verdict::Colorable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{palette}^{n} assignments exceeds the brute-force budget of {budget}")]
    BudgetExceeded { n: usize, palette: usize, budget: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

struct Search<'g> {
    g: &'g Graph,
    palette: usize,
    order: Vec<usize>,
    colors: Vec<Color>,
    /// Uncolored neighbors left per vertex.
    remaining: Vec<usize>,
    /// Per-vertex parity bitset over colors, `words` u64s each.
    parity: Vec<u64>,
    words: usize,
    nodes: u64,
    budget: Option<u64>,
    out_of_budget: bool,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, palette: usize, budget: Option<u64>) -> Self {
        let mut order: Vec<usize> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let words = palette / 64 + 1;
        Search {
            g,
            palette,
            order,
            colors: vec![0; g.n()],
            remaining: g.vertices().map(|v| g.degree(v)).collect(),
            parity: vec![0; g.n() * words],
            words,
            nodes: 0,
            budget,
            out_of_budget: false,
        }
    }

    fn flip(&mut self, v: usize, color: Color) {
        self.parity[v * self.words + color / 64] ^= 1 << (color % 64);
    }

    fn has_odd(&self, v: usize) -> bool {
        self.parity[v * self.words..(v + 1) * self.words].iter().any(|&w| w != 0)
    }

    fn run(&mut self, depth: usize, max_used: Color) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let g = self.g;
        for color in 1..=self.palette.min(max_used + 1) {
            if g.neighbors(v).iter().any(|&u| self.colors[u] == color) {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                self.out_of_budget = true;
                return false;
            }
            self.colors[v] = color;
            let mut ok = true;
            for &u in g.neighbors(v) {
                self.flip(u, color);
                self.remaining[u] -= 1;
                // u's neighborhood just became fully colored
                if self.remaining[u] == 0 && !self.has_odd(u) {
                    ok = false;
                }
            }
            if ok && self.run(depth + 1, max_used.max(color)) {
                return true;
            }
            for &u in g.neighbors(v) {
                self.flip(u, color);
                self.remaining[u] += 1;
            }
            self.colors[v] = 0;
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Decide odd `palette`-colorability by backtracking in descending-degree
/// order. Partial assignments are pruned on properness, and on parity as
/// soon as some vertex has all of its neighbors colored without an odd
/// color. Colors are tried only up to one past the largest color in use,
/// which loses nothing because the constraints are symmetric under
/// renaming colors. `budget` caps the number of assignments tried.
pub fn find_odd_coloring(g: &Graph, palette: usize, budget: Option<u64>) -> SolveOutcome {
    if g.is_null() {
        return SolveOutcome {
            verdict: Verdict::Colorable,
            witness: Some(Coloring::uncolored(0, palette.max(1))),
            nodes_explored: 0,
        };
    }
    if palette == 0 {
        return SolveOutcome { verdict: Verdict::NotColorable, witness: None, nodes_explored: 0 };
    }
    let mut search = Search::new(g, palette, budget);
    let found = search.run(0, 0);
    let nodes_explored = search.nodes;
    if found {
        let witness = Coloring::total(palette, &search.colors).expect("colors drawn from the palette");
        assert!(witness.is_odd_coloring(g), "search returned an invalid witness");
        SolveOutcome { verdict: Verdict::Colorable, witness: Some(witness), nodes_explored }
    } else if search.out_of_budget {
        SolveOutcome { verdict: Verdict::BudgetExceeded, witness: None, nodes_explored }
    } else {
        SolveOutcome { verdict: Verdict::NotColorable, witness: None, nodes_explored }
    }
}

/// Odd chromatic number with a witness, searching `c = 1, 2, ...`. The null
/// graph gets 0. `Err` carries the palette at which the budget ran out.
pub fn chi_odd_with_witness(g: &Graph, budget: Option<u64>) -> Result<Option<(usize, Coloring)>, usize> {
    if g.is_null() {
        return Ok(Some((0, Coloring::uncolored(0, 1))));
    }
    // distinct colors everywhere is always an odd coloring, so c = n suffices
    for c in 1..=g.n() {
        let out = find_odd_coloring(g, c, budget);
        match out.verdict {
            Verdict::Colorable => return Ok(Some((c, out.witness.unwrap()))),
            Verdict::NotColorable => {}
            Verdict::BudgetExceeded => return Err(c),
        }
    }
    Ok(None)
}

pub fn chi_odd(g: &Graph) -> Option<usize> {
    chi_odd_with_witness(g, None).expect("unbudgeted search").map(|(c, _)| c)
}

/// Enumerate all `palette^n` total assignments in lexicographic order and
/// return the first odd coloring.
pub fn brute_force_odd_colorable(g: &Graph, palette: usize, budget: u64) -> Result<SolveOutcome, SolverError> {
    let n = g.n();
    let total = (palette as u64).checked_pow(n as u32);
    if total.is_none_or(|t| t > budget) {
        return Err(SolverError::BudgetExceeded { n, palette, budget });
    }
    if n == 0 {
        return Ok(SolveOutcome {
            verdict: Verdict::Colorable,
            witness: Some(Coloring::uncolored(0, palette.max(1))),
            nodes_explored: 1,
        });
    }
    if palette == 0 {
        return Ok(SolveOutcome { verdict: Verdict::NotColorable, witness: None, nodes_explored: 0 });
    }
    let mut digits = vec![1; n];
    let mut tried = 0;
    loop {
        tried += 1;
        let col = Coloring::total(palette, &digits).unwrap();
        if col.is_odd_coloring(g) {
            return Ok(SolveOutcome { verdict: Verdict::Colorable, witness: Some(col), nodes_explored: tried });
        }
        // odometer, last vertex fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(SolveOutcome { verdict: Verdict::NotColorable, witness: None, nodes_explored: tried });
            }
            i -= 1;
            if digits[i] < palette {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
        }
    }
}

/// A total proper coloring with `palette` colors of a graph meeting Brooks'
/// hypotheses: connected, maximum degree at most `palette`, not
/// `K_{palette+1}`, and not an odd cycle when `palette == 2`. Found by
/// saturation-ordered backtracking; the hypotheses guarantee success.
pub fn proper_color_guaranteed(g: &Graph, palette: usize) -> Result<Coloring, SolverError> {
    let bad = |why: String| Err(SolverError::PreconditionViolated(why));
    if palette == 0 {
        return bad("palette must be positive".into());
    }
    if !g.is_connected() {
        return bad("graph is not connected".into());
    }
    if g.max_degree() > palette {
        return bad(format!("maximum degree {} exceeds {palette}", g.max_degree()));
    }
    if g.n() == palette + 1 && g.is_complete() {
        return bad(format!("graph is K_{}", palette + 1));
    }
    if palette == 2 && g.n() % 2 == 1 && g.n() >= 3 && g.vertices().all(|v| g.degree(v) == 2) {
        return bad("odd cycle with 2 colors".into());
    }
    let mut colors = vec![0; g.n()];
    if !dsatur(g, palette, &mut colors, 0) {
        unreachable!("Brooks' theorem guarantees a proper coloring");
    }
    let col = Coloring::total(palette, &colors).unwrap();
    debug_assert!(col.is_proper(g));
    Ok(col)
}

fn dsatur(g: &Graph, palette: usize, colors: &mut [Color], max_used: Color) -> bool {
    let pick = g.vertices().filter(|&v| colors[v] == 0).max_by_key(|&v| {
        let mut seen: Vec<Color> = g.neighbors(v).iter().map(|&u| colors[u]).filter(|&c| c > 0).collect();
        seen.sort_unstable();
        seen.dedup();
        (seen.len(), g.degree(v), std::cmp::Reverse(v))
    });
    let Some(v) = pick else {
        return true;
    };
    for color in 1..=palette.min(max_used + 1) {
        if g.neighbors(v).iter().all(|&u| colors[u] != color) {
            colors[v] = color;
            if dsatur(g, palette, colors, max_used.max(color)) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}
