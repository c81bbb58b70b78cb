//! Finite simple graphs with optional vertex colours and labels, a plain
//! text exchange format, and counting constraints over them.
//!
//! Vertices are `0..n`. Edges are unordered pairs stored normalised as
//! `(min, max)` and kept sorted, so two graphs compare equal exactly when
//! they have the same vertex count, edge set, colouring and labels.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::counting::{self, Budget, CountError};
use crate::degseq::DegreeSequence;

pub type Vertex = usize;

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// A finite simple undirected graph.
///
/// A graph is either *plain* or carries a total vertex colouring (every
/// vertex has exactly one colour). Independently it may carry *labels*:
/// named distinguished vertices. Distinct labels may share a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Normalised `(u, v)` with `u < v`, sorted ascending, no duplicates.
    edges: Vec<(Vertex, Vertex)>,
    /// `Some(colours)` with `colours.len() == n`, or `None` for plain graphs.
    colours: Option<Vec<String>>,
    /// Label name -> vertex.
    labels: BTreeMap<String, Vertex>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0} not allowed in a simple graph")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("colouring has {0} entries for a graph on {1} vertices")]
    ColouringLength(usize, usize),
    #[error("label {0:?} already assigned to vertex {1}")]
    DuplicateLabel(String, Vertex),
}

impl Graph {
    /// Edgeless plain graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            colours: None,
            labels: BTreeMap::new(),
        }
    }

    /// Plain graph on `n` vertices with the given edges.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The star with `leaves` leaves: centre `0` joined to `1..=leaves`.
    /// `leaves = 0` is a single vertex, `leaves = 1` is a single edge.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v).expect("star edges are distinct");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalised `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = (u.min(v), u.max(v));
        if b >= self.n {
            return Err(GraphError::VertexOutOfRange(b, self.n));
        }
        match self.edges.binary_search(&(a, b)) {
            Ok(_) => Err(GraphError::DuplicateEdge(a, b)),
            Err(pos) => {
                self.edges.insert(pos, (a, b));
                Ok(())
            }
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Install a total colouring; `colours.len()` must equal `n`.
    pub fn set_colouring(&mut self, colours: Vec<String>) -> Result<(), GraphError> {
        if colours.len() != self.n {
            return Err(GraphError::ColouringLength(colours.len(), self.n));
        }
        self.colours = Some(colours);
        Ok(())
    }

    /// Colour of `v`, or `None` on plain graphs.
    pub fn colour(&self, v: Vertex) -> Option<&str> {
        self.colours.as_ref().map(|c| c[v].as_str())
    }

    pub fn colouring(&self) -> Option<&[String]> {
        self.colours.as_deref()
    }

    pub fn is_coloured(&self) -> bool {
        self.colours.is_some()
    }

    pub fn set_label(&mut self, name: &str, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if let Some(&old) = self.labels.get(name) {
            return Err(GraphError::DuplicateLabel(name.to_owned(), old));
        }
        self.labels.insert(name.to_owned(), v);
        Ok(())
    }

    /// Labels as a name -> vertex map (iteration order is name order).
    pub fn labels(&self) -> &BTreeMap<String, Vertex> {
        &self.labels
    }

    pub fn is_labelled(&self) -> bool {
        !self.labels.is_empty()
    }

    /// Plain means neither coloured nor labelled.
    pub fn is_plain(&self) -> bool {
        !self.is_coloured() && !self.is_labelled()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// All vertex degrees, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The degree sequence (non-increasing).
    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees())
    }

    /// Neighbour lists, each sorted ascending.
    pub fn neighbour_lists(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// If this graph is a plain star, the number of leaves; otherwise `None`.
    ///
    /// A star on `k + 1` vertices has `k` edges all sharing one centre; the
    /// single vertex (`k = 0`) and the single edge (`k = 1`) are stars.
    pub fn star_leaves(&self) -> Option<usize> {
        if !self.is_plain() || self.n == 0 || self.edges.len() != self.n - 1 {
            return None;
        }
        if self.n <= 2 {
            return Some(self.n - 1);
        }
        let max_deg = self.degrees().into_iter().max().unwrap_or(0);
        (max_deg == self.n - 1).then_some(self.n - 1)
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Errors produced by [`parse_graph`], tagged with a 1-based line number.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: expected `n <count>` before any other directive")]
    MissingHeader(usize),
    #[error("line {0}: duplicate `n` directive")]
    DuplicateHeader(usize),
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: directive takes {expected} argument(s), got {got}")]
    Arity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: invalid number {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("line {line}: vertex {vertex} coloured twice")]
    DuplicateColour { line: usize, vertex: Vertex },
    #[error("colouring is partial: vertex {0} has no colour")]
    PartialColouring(Vertex),
    #[error("no `n` directive found")]
    Empty,
}

/// Parse a graph from its text form.
///
/// The format is line based. `#` starts a comment; blank lines are
/// ignored. The first directive must be `n <count>`. After it:
///
/// ```text
/// e <u> <v>        an edge
/// c <v> <colour>   colour of vertex v (if used, every vertex needs one)
/// l <name> <v>     label <name> on vertex v
/// ```
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut colours: Vec<Option<String>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let directive = parts.next().expect("non-empty line has a first token");
        let args: Vec<&str> = parts.collect();

        let expect_args = |expected: usize| -> Result<(), ParseError> {
            if args.len() == expected {
                Ok(())
            } else {
                Err(ParseError::Arity {
                    line: line_no,
                    expected,
                    got: args.len(),
                })
            }
        };
        let number = |token: &str| -> Result<usize, ParseError> {
            token.parse::<usize>().map_err(|_| ParseError::BadNumber {
                line: line_no,
                token: token.to_owned(),
            })
        };

        match directive {
            "n" => {
                expect_args(1)?;
                if graph.is_some() {
                    return Err(ParseError::DuplicateHeader(line_no));
                }
                let n = number(args[0])?;
                graph = Some(Graph::new(n));
                colours = vec![None; n];
            }
            "e" | "c" | "l" => {
                let g = graph.as_mut().ok_or(ParseError::MissingHeader(line_no))?;
                match directive {
                    "e" => {
                        expect_args(2)?;
                        let (u, v) = (number(args[0])?, number(args[1])?);
                        g.add_edge(u, v).map_err(|source| ParseError::Graph {
                            line: line_no,
                            source,
                        })?;
                    }
                    "c" => {
                        expect_args(2)?;
                        let v = number(args[0])?;
                        if v >= g.vertex_count() {
                            return Err(ParseError::Graph {
                                line: line_no,
                                source: GraphError::VertexOutOfRange(v, g.vertex_count()),
                            });
                        }
                        if colours[v].is_some() {
                            return Err(ParseError::DuplicateColour {
                                line: line_no,
                                vertex: v,
                            });
                        }
                        colours[v] = Some(args[1].to_owned());
                    }
                    "l" => {
                        expect_args(2)?;
                        let v = number(args[1])?;
                        g.set_label(args[0], v)
                            .map_err(|source| ParseError::Graph {
                                line: line_no,
                                source,
                            })?;
                    }
                    _ => unreachable!(),
                }
            }
            other => {
                return Err(ParseError::UnknownDirective {
                    line: line_no,
                    directive: other.to_owned(),
                })
            }
        }
    }

    let mut graph = graph.ok_or(ParseError::Empty)?;
    if colours.iter().any(Option::is_some) {
        let mut total = Vec::with_capacity(colours.len());
        for (v, c) in colours.into_iter().enumerate() {
            total.push(c.ok_or(ParseError::PartialColouring(v))?);
        }
        graph.set_colouring(total).expect("length checked");
    }
    Ok(graph)
}

/// Serialise a graph to the text form accepted by [`parse_graph`].
///
/// Emission is deterministic: edges ascending, colours by vertex, labels by
/// name, so `parse_graph(&serialize_graph(g)) == g`.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", g.vertex_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    if let Some(colours) = g.colouring() {
        for (v, colour) in colours.iter().enumerate() {
            out.push_str(&format!("c {v} {colour}\n"));
        }
    }
    for (name, &v) in g.labels() {
        out.push_str(&format!("l {name} {v}\n"));
    }
    out
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_graph(self))
    }
}

// ---------------------------------------------------------------------------
// Constraints
// ---------------------------------------------------------------------------

/// Which counting function a constraint talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMode {
    /// Homomorphisms (colour- and label-preserving vertex maps that
    /// preserve adjacency).
    Hom,
    /// Subgraph copies (subgraphs of the target isomorphic to the pattern).
    Sub,
}

impl CountMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMode::Hom => "hom",
            CountMode::Sub => "sub",
        }
    }
}

impl std::str::FromStr for CountMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hom" => Ok(CountMode::Hom),
            "sub" => Ok(CountMode::Sub),
            other => Err(format!("unknown mode {other:?}, expected `hom` or `sub`")),
        }
    }
}

/// "The target graph must have exactly `required` copies/images of
/// `pattern` under `mode`."
///
/// Subgraph-copy constraints are only meaningful for plain patterns, so
/// coloured or labelled patterns require [`CountMode::Hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternConstraint {
    pattern: Graph,
    required: BigUint,
    mode: CountMode,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("subgraph-copy constraints require a plain pattern")]
    SubPatternNotPlain,
}

impl PatternConstraint {
    pub fn new(
        pattern: Graph,
        mode: CountMode,
        required: BigUint,
    ) -> Result<Self, ConstraintError> {
        if mode == CountMode::Sub && !pattern.is_plain() {
            return Err(ConstraintError::SubPatternNotPlain);
        }
        Ok(PatternConstraint {
            pattern,
            required,
            mode,
        })
    }

    /// Homomorphism-count constraint (any pattern).
    pub fn hom(pattern: Graph, required: impl Into<BigUint>) -> Self {
        PatternConstraint {
            pattern,
            required: required.into(),
            mode: CountMode::Hom,
        }
    }

    /// Subgraph-copy constraint; panics on non-plain patterns.
    pub fn sub(pattern: Graph, required: impl Into<BigUint>) -> Self {
        Self::new(pattern, CountMode::Sub, required.into()).expect("sub pattern must be plain")
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn required(&self) -> &BigUint {
        &self.required
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }
}

/// Result of checking one constraint against a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintCheck {
    pub required: BigUint,
    pub actual: BigUint,
    pub mode: CountMode,
    pub satisfied: bool,
}

/// Per-constraint outcomes, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintReport {
    pub entries: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }
}

/// Count every constraint's pattern in `target` and compare with the
/// required values. Always evaluates all constraints (the report shows
/// each count); use the counting functions directly for fail-fast checks.
pub fn check_constraints(
    target: &Graph,
    constraints: &[PatternConstraint],
    budget: &mut Budget,
) -> Result<ConstraintReport, CountError> {
    let mut entries = Vec::with_capacity(constraints.len());
    for c in constraints {
        let actual = match c.mode {
            CountMode::Hom => counting::count_homomorphisms(&c.pattern, target, budget)?,
            CountMode::Sub => counting::count_subgraph_copies(&c.pattern, target, budget)?,
        };
        entries.push(ConstraintCheck {
            satisfied: actual == c.required,
            required: c.required.clone(),
            actual,
            mode: c.mode,
        });
    }
    Ok(ConstraintReport { entries })
}

// ---------------------------------------------------------------------------
