//! Command-line front end. [`run`] takes an argument vector and returns the
//! exit status with everything that would be written, so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 success or true, 1 false or not colorable, 2 input error,
//! 3 budget exceeded.
//!
//! With `--kv` every subcommand prints flat `key=value` lines.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::coloring::Coloring;
use crate::discharging::{audit_sec3, audit_sec4, audit_sec5, ChargeReport, Embedding};
use crate::generators::{named, named_embedding, parse_rational, random_regular, random_sparse, NamedGraphId};
use crate::graph::Graph;
use crate::mad::{format_ratio, mad_brute, mad_exact};
use crate::reductions::{keylem_find, pipeline_planar6, pipeline_sparse, pipeline_sparse4, rc5_find, struc_find, thread_find, PipelineResult};
use crate::solver::{brute_force_odd_colorable, chi_odd_with_witness, find_odd_coloring, Verdict, DEFAULT_BRUTE_FORCE_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default node budget for the exact solver.
pub const DEFAULT_SOLVER_BUDGET: u64 = 50_000_000;

#[derive(Debug, Parser)]
#[command(name = "oddcolor", version, about = "Odd colorings of sparse graphs: exact solvers, maximum average degree, constructive colorers and discharging audits")]
struct Cli {
    /// Print flat key=value lines instead of human-oriented text.
    #[arg(long, global = true, alias = "json")]
    kv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a generated graph in edge-list format.
    Gen {
        /// cycle:N, complete:N, path:N, kstar:C, hk:K, dodecahedron, petersen,
        /// random-sparse or random-regular.
        name: String,
        /// Vertex count for the random families.
        #[arg(long)]
        n: Option<usize>,
        /// Exclusive mad cap `p/q` for random-sparse.
        #[arg(long, default_value = "22/9")]
        cap: String,
        /// Reject induced 5-cycles in random-sparse.
        #[arg(long)]
        forbid_c5: bool,
        /// Degree for random-regular.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the canonical embedding instead of the graph.
        #[arg(long)]
        embedding: bool,
    },
    /// Odd chromatic number.
    ChiOdd {
        graph: String,
        /// Search-node budget per palette size.
        #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
        budget: u64,
        /// Also print the witness coloring.
        #[arg(long)]
        witness: bool,
    },
    /// Decide odd colorability with a fixed palette; prints the witness.
    OddColor {
        graph: String,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
        budget: u64,
        /// Enumerate every assignment instead of searching.
        #[arg(long)]
        brute_force: bool,
    },
    /// Check that a coloring file is an odd coloring of a graph.
    Verify { graph: String, coloring: String },
    /// Exact maximum average degree with a densest vertex set.
    Mad {
        graph: String,
        /// Enumerate all vertex subsets (at most 16 vertices).
        #[arg(long)]
        brute_force: bool,
    },
    /// Length of a shortest cycle.
    Girth { graph: String },
    /// Lexicographically least induced 5-cycle.
    FindC5 { graph: String },
    /// Constructive odd c-coloring for sparse graphs (c >= 7).
    ColorSparse {
        graph: String,
        #[arg(long)]
        colors: usize,
        /// Print the deletion transcript as `#` comment lines.
        #[arg(long)]
        trace: bool,
    },
    /// Constructive odd 6-coloring for plane graphs of girth at least 5.
    ColorPlanar6 {
        graph: String,
        #[arg(long)]
        trace: bool,
    },
    /// Constructive odd 4-coloring for sparse graphs without induced 5-cycles.
    ColorSparse4 {
        graph: String,
        #[arg(long)]
        trace: bool,
    },
    /// Run a discharging system and print its ledger.
    Audit {
        system: System,
        graph: String,
        /// Rotation-system file (`v: n1 n2 ...`), required for sec4 unless
        /// the graph is given by a name with a canonical embedding.
        #[arg(long)]
        embedding: Option<String>,
        /// Palette for sec3.
        #[arg(long, default_value_t = 7)]
        colors: usize,
    },
    /// Report the first reducible configuration of a family.
    ReduceFind {
        family: Family,
        graph: String,
        /// Palette for the keylem family.
        #[arg(long, default_value_t = 5)]
        colors: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum System {
    Sec3,
    Sec4,
    Sec5,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Keylem,
    Struc,
    Rc5,
    Thread,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    kv: bool,
    stdout: String,
    stderr: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn pair(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.stdout, "{key}={value}").unwrap();
    }

    /// `human` in text mode, `key=value` in kv mode.
    fn either(&mut self, key: &str, value: impl std::fmt::Display, human: impl AsRef<str>) {
        if self.kv {
            self.pair(key, value);
        } else {
            self.line(human);
        }
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        writeln!(self.stderr, "warning: {}", s.as_ref()).unwrap();
    }

    fn coloring(&mut self, col: &Coloring) {
        if self.kv {
            self.pair("palette", col.palette());
            for (v, c) in col.colors().iter().enumerate() {
                match c {
                    Some(c) => self.pair(&format!("color.{v}"), c),
                    None => self.pair(&format!("color.{v}"), "-"),
                }
            }
        } else {
            self.stdout.push_str(&col.to_text());
        }
    }
}

/// An input problem: bad file, bad format, bad flag value.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_source(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

/// A graph argument: a file path, `-` for stdin, or `name:NAME` for a named
/// graph (e.g. `name:dodecahedron`).
fn load_graph(arg: &str) -> Result<(Graph, Option<NamedGraphId>), InputError> {
    if let Some(name) = arg.strip_prefix("name:") {
        let id: NamedGraphId = name.parse()?;
        return Ok((named(id), Some(id)));
    }
    let text = read_source(arg)?;
    Ok((Graph::parse(&text).map_err(|e| InputError(format!("{arg}: {e}")))?, None))
}

/// Run one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Out { kv: cli.kv, stdout: String::new(), stderr: String::new() };
    let code = match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            writeln!(out.stderr, "error: {msg}").unwrap();
            EXIT_INPUT
        }
    };
    CliOutput { code, stdout: out.stdout, stderr: out.stderr }
}

fn dispatch(cmd: Command, out: &mut Out) -> Result<i32, InputError> {
    match cmd {
        Command::Gen { name, n, cap, forbid_c5, degree, seed, embedding } => {
            let g = match name.as_str() {
                "random-sparse" | "random-regular" => {
                    if embedding {
                        return Err(InputError(format!("{name} has no canonical embedding")));
                    }
                    let n = n.ok_or_else(|| InputError(format!("{name} needs --n")))?;
                    if name == "random-sparse" {
                        let cap = parse_rational(&cap).ok_or_else(|| InputError(format!("bad --cap {cap:?}")))?;
                        random_sparse(n, &cap, forbid_c5, seed)?
                    } else {
                        random_regular(n, degree, seed)?
                    }
                }
                _ => {
                    let id: NamedGraphId = name.parse()?;
                    if embedding {
                        let emb = named_embedding(id).ok_or_else(|| InputError(format!("{id} has no canonical embedding")))?;
                        out.stdout.push_str(&emb.to_text());
                        return Ok(EXIT_OK);
                    }
                    named(id)
                }
            };
            out.stdout.push_str(&g.to_edge_list());
            Ok(EXIT_OK)
        }
        Command::ChiOdd { graph, budget, witness } => {
            let (g, _) = load_graph(&graph)?;
            match chi_odd_with_witness(&g, Some(budget)) {
                Ok(Some((c, col))) => {
                    out.either("chi_odd", c, c.to_string());
                    if witness {
                        out.coloring(&col);
                    }
                    Ok(EXIT_OK)
                }
                Ok(None) => unreachable!("n colors always suffice"),
                Err(c) => {
                    out.either("result", "budget_exceeded", format!("budget exceeded while trying {c} colors"));
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::OddColor { graph, colors, budget, brute_force } => {
            let (g, _) = load_graph(&graph)?;
            if colors == 0 {
                return Err(InputError("--colors must be positive".into()));
            }
            let outcome = if brute_force {
                let b = budget.min(DEFAULT_BRUTE_FORCE_BUDGET.max(budget));
                brute_force_odd_colorable(&g, colors, b).map_err(|e| InputError(e.to_string()))?
            } else {
                find_odd_coloring(&g, colors, Some(budget))
            };
            if out.kv {
                out.pair("nodes", outcome.nodes_explored);
            }
            match outcome.verdict {
                Verdict::Colorable => {
                    out.either("result", "colorable", "");
                    if !out.kv {
                        out.stdout.clear();
                    }
                    out.coloring(outcome.witness.as_ref().expect("witness"));
                    Ok(EXIT_OK)
                }
                Verdict::NotColorable => {
                    out.either("result", "not_colorable", format!("not odd {colors}-colorable"));
                    Ok(EXIT_FALSE)
                }
                Verdict::BudgetExceeded => {
                    out.either("result", "budget_exceeded", format!("budget of {budget} nodes exceeded"));
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Verify { graph, coloring } => {
            let (g, _) = load_graph(&graph)?;
            let col = Coloring::parse(&read_source(&coloring)?, g.n())?;
            match explain_invalid(&g, &col) {
                None => {
                    out.either("valid", true, "valid");
                    Ok(EXIT_OK)
                }
                Some(why) => {
                    if out.kv {
                        out.pair("valid", false);
                        out.pair("reason", &why);
                    } else {
                        out.line(format!("invalid: {why}"));
                    }
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Mad { graph, brute_force } => {
            let (g, _) = load_graph(&graph)?;
            let cert = if brute_force { mad_brute(&g)? } else { mad_exact(&g)? };
            let set: Vec<String> = cert.witness.iter().map(usize::to_string).collect();
            if out.kv {
                out.pair("mad", format_ratio(&cert.value));
                out.pair("witness", set.join(","));
            } else {
                out.line(format_ratio(&cert.value));
                out.line(format!("witness: {}", set.join(" ")));
            }
            Ok(EXIT_OK)
        }
        Command::Girth { graph } => {
            let (g, _) = load_graph(&graph)?;
            let value = g.girth().map_or("none".to_string(), |k| k.to_string());
            out.either("girth", &value, &value);
            Ok(EXIT_OK)
        }
        Command::FindC5 { graph } => {
            let (g, _) = load_graph(&graph)?;
            match g.find_induced_c5() {
                Some(c5) => {
                    let s: Vec<String> = c5.iter().map(usize::to_string).collect();
                    out.either("c5", s.join(","), s.join(" "));
                    Ok(EXIT_OK)
                }
                None => {
                    out.either("c5", "none", "none");
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::ColorSparse { graph, colors, trace } => {
            let (g, _) = load_graph(&graph)?;
            if colors < 7 {
                return Err(InputError(format!("--colors must be at least 7, got {colors}")));
            }
            Ok(report_pipeline(out, &pipeline_sparse(&g, colors), trace))
        }
        Command::ColorPlanar6 { graph, trace } => {
            let (g, _) = load_graph(&graph)?;
            Ok(report_pipeline(out, &pipeline_planar6(&g), trace))
        }
        Command::ColorSparse4 { graph, trace } => {
            let (g, _) = load_graph(&graph)?;
            Ok(report_pipeline(out, &pipeline_sparse4(&g), trace))
        }
        Command::Audit { system, graph, embedding, colors } => {
            let (g, id) = load_graph(&graph)?;
            let report = match system {
                System::Sec3 => audit_sec3(&g, colors),
                System::Sec5 => audit_sec5(&g),
                System::Sec4 => {
                    let emb = match (&embedding, id.and_then(named_embedding)) {
                        (Some(path), _) => Embedding::parse(&read_source(path)?, &g)?,
                        (None, Some(emb)) => emb,
                        (None, None) => return Err(InputError("sec4 needs --embedding".into())),
                    };
                    audit_sec4(&g, &emb)?
                }
            };
            report_audit(out, &report);
            Ok(EXIT_OK)
        }
        Command::ReduceFind { family, graph, colors } => {
            let (g, _) = load_graph(&graph)?;
            let step = match family {
                Family::Keylem => {
                    if colors < 5 {
                        return Err(InputError(format!("--colors must be at least 5, got {colors}")));
                    }
                    keylem_find(&g, colors)
                }
                Family::Struc => struc_find(&g),
                Family::Rc5 => rc5_find(&g),
                Family::Thread => thread_find(&g),
            };
            match step {
                Some(step) => {
                    if out.kv {
                        out.pair("kind", step.kind);
                        let s: Vec<String> = step.deletion_set.iter().map(usize::to_string).collect();
                        out.pair("S", s.join(","));
                        for (role, v) in &step.anchors {
                            out.pair(&format!("anchor.{role}"), v);
                        }
                    } else {
                        out.line(step.to_line());
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    out.either("kind", "none", "none");
                    Ok(EXIT_FALSE)
                }
            }
        }
    }
}

/// Why `col` is not an odd coloring of `g`, if it is not.
fn explain_invalid(g: &Graph, col: &Coloring) -> Option<String> {
    if let Some(v) = col.colors().iter().position(Option::is_none) {
        return Some(format!("vertex {v} is uncolored"));
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| col.get(u) == col.get(v)) {
        return Some(format!("edge {u}-{v} is monochromatic"));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) > 0 && col.odd_colors(g, v).is_empty()) {
        return Some(format!("vertex {v} has no odd color"));
    }
    None
}

fn report_pipeline(out: &mut Out, res: &PipelineResult, trace: bool) -> i32 {
    for w in &res.warnings {
        out.warn(w);
    }
    if out.kv {
        out.pair("base_case", res.trace.base_case.tag());
        out.pair("steps", res.trace.steps.len());
        out.pair("used_solver", res.used_solver());
    }
    if trace {
        for line in res.trace.to_text().lines() {
            if out.kv {
                out.pair("trace", line);
            } else {
                out.line(format!("# {line}"));
            }
        }
    }
    if let Some(refusal) = &res.refusal {
        let join = |vs: &[usize]| vs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        if out.kv {
            out.pair("result", "refusal");
            out.pair("refusal.branch", join(&refusal.branch_vertices));
            out.pair("refusal.subdivision", join(&refusal.subdivision_vertices));
        } else {
            out.line(format!(
                "refusal: subdivided clique with branch vertices {} and subdivision vertices {}",
                join(&refusal.branch_vertices),
                join(&refusal.subdivision_vertices)
            ));
        }
        return EXIT_FALSE;
    }
    match &res.coloring {
        Some(col) => {
            if out.kv {
                out.pair("result", "colored");
            }
            out.coloring(col);
            EXIT_OK
        }
        None => {
            out.either("result", "not_colorable", "not colorable");
            EXIT_FALSE
        }
    }
}

fn report_audit(out: &mut Out, r: &ChargeReport) {
    if out.kv {
        for (e, q) in &r.initial {
            out.pair(&format!("initial.{e}"), format_ratio(q));
        }
        for t in &r.transfers {
            out.pair("transfer", format!("{},{},{},{}", t.from, t.to, format_ratio(&t.amount), t.rule));
        }
        for (e, q) in &r.final_charge {
            out.pair(&format!("final.{e}"), format_ratio(q));
        }
        out.pair("total_initial", format_ratio(&r.total_initial()));
        out.pair("total_final", format_ratio(&r.total_final()));
        out.pair("threshold", format_ratio(&r.threshold));
        out.pair("conserved", r.is_conserved());
        let flagged: Vec<String> = r.flagged.iter().map(|e| e.to_string()).collect();
        out.pair("flagged", flagged.join(","));
    } else {
        for (i, f) in r.faces.iter().enumerate() {
            let walk: Vec<String> = f.boundary.iter().map(usize::to_string).collect();
            out.line(format!("face f{i}: {}", walk.join(" ")));
        }
        for t in &r.transfers {
            out.line(format!("{} {} -> {} {}", t.rule, t.from, t.to, format_ratio(&t.amount)));
        }
        for (e, q) in &r.final_charge {
            let flag = if r.flagged.contains(e) { "  below threshold" } else { "" };
            out.line(format!("{e}: {} -> {}{flag}", format_ratio(&r.initial[e]), format_ratio(q)));
        }
        out.line(format!(
            "total: {} -> {} (threshold {})",
            format_ratio(&r.total_initial()),
            format_ratio(&r.total_final()),
            format_ratio(&r.threshold)
        ));
    }
}
