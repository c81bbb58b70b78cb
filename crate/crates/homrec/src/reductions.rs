//! Compilers from decision problems into counting-constraint lists.
//!
//! Three constructions are provided, each turning an instance of a hard
//! problem into a list of [`PatternConstraint`]s that is satisfiable by
//! some graph exactly when the instance is a yes-instance:
//!
//! * [`circuit_to_constraints`]: boolean circuit satisfiability, over
//!   coloured patterns. A four-vertex *value gadget* (a path
//!   `bot — alpha — alpha — top`) gives every node vertex two possible
//!   attachment points encoding false/true; per-node constraints force
//!   exactly one attachment, forbidden patterns at count 0 rule out
//!   gate-inconsistent value combinations, and one output constraint
//!   forces the output node to the true side.
//! * [`coloring_to_constraints`]: blocked extension of 3-colourings,
//!   over labelled patterns. A witness is a labelled triangle, i.e. an
//!   assignment of the input graph's degree-1 vertices to the three
//!   colours, and the count-0 constraint on the labelled input graph
//!   says the assignment extends to no proper 3-colouring.
//! * [`colors_to_four`]: compression of a coloured-constraint list over
//!   an arbitrary palette of size `m` into one over the four colours
//!   `A`, `S`, `X`, `T`. Every pattern gains a spine `S — X^m — T`
//!   with each vertex attached to the spine position of its old colour,
//!   and side constraints pin the spine so that homomorphism counts are
//!   preserved between corresponding instances.
//!
//! [`verify_reduction`] closes the loop: it runs the brute-force solver
//! on a compiled list and compares satisfiability with the expectation
//! computed directly on the source instance.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::brute::{brute_solve, BruteError, BruteOptions};
use crate::counting::{count_homomorphisms, Budget, CountError};
use crate::graph::{CountMode, Graph, PatternConstraint, Vertex};

// ---------------------------------------------------------------------------
// Colour names
// ---------------------------------------------------------------------------

/// Colour of the two value-gadget vertices node vertices attach to.
pub const ALPHA: &str = "alpha";
/// Colour of the value gadget's false-side endpoint.
pub const BOT: &str = "bot";
/// Colour of the value gadget's true-side endpoint.
pub const TOP: &str = "top";

/// Single vertex colour of compressed patterns in [`colors_to_four`].
pub const COLOUR_A: &str = "A";
/// Spine start colour.
pub const COLOUR_S: &str = "S";
/// Spine end colour.
pub const COLOUR_T: &str = "T";
/// Spine interior colour.
pub const COLOUR_X: &str = "X";

/// Colour of the vertex standing for circuit node `name`.
pub fn node_colour(name: &str) -> String {
    format!("C_{name}")
}

/// Index of the value-gadget vertex encoding false, resp. true.
const FALSE_ANCHOR: usize = 1;
const TRUE_ANCHOR: usize = 2;

fn anchor(value: bool) -> usize {
    if value {
        TRUE_ANCHOR
    } else {
        FALSE_ANCHOR
    }
}

fn coloured_graph(n: usize, edges: &[(usize, usize)], colours: &[&str]) -> Graph {
    let mut g = Graph::from_edges(n, edges.iter().copied()).expect("gadget edges are valid");
    g.set_colouring(colours.iter().map(|c| (*c).to_owned()).collect())
        .expect("one colour per vertex");
    g
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("input graph must be plain (no colours, no labels)")]
    InputNotPlain,
    #[error("constraint {index}: colour compression requires homomorphism counts")]
    WrongMode { index: usize },
    #[error("constraint {index}: colour compression requires fully coloured patterns")]
    UncolouredPattern { index: usize },
    #[error("constraint {index}: colour compression does not support labelled patterns")]
    LabelledPattern { index: usize },
    #[error("constraint list mentions no colours; nothing to compress")]
    EmptyPalette,
    #[error("input palette uses the reserved colour {0:?}")]
    ReservedColour(String),
    #[error(transparent)]
    Count(#[from] CountError),
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

/// One node of a [`Circuit`]; operands are indices of earlier nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateOp {
    Input,
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
}

/// A boolean circuit: nodes in definition order (inputs and gates, with
/// gate operands referring to earlier nodes, so the circuit is acyclic
/// by construction) and one designated output node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    names: Vec<String>,
    ops: Vec<GateOp>,
    output: usize,
}

impl Circuit {
    pub fn node_count(&self) -> usize {
        self.ops.len()
    }

    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn output_index(&self) -> usize {
        self.output
    }

    pub fn output_name(&self) -> &str {
        &self.names[self.output]
    }

    pub fn input_count(&self) -> usize {
        self.ops.iter().filter(|op| **op == GateOp::Input).count()
    }

    /// Value of every node under the given input assignment (one bit per
    /// input node, in definition order).
    pub fn evaluate(&self, inputs: &[bool]) -> Vec<bool> {
        assert_eq!(inputs.len(), self.input_count(), "one bit per input");
        let mut values: Vec<bool> = Vec::with_capacity(self.ops.len());
        let mut next_input = 0;
        for op in &self.ops {
            let value = match *op {
                GateOp::Input => {
                    let v = inputs[next_input];
                    next_input += 1;
                    v
                }
                GateOp::And(a, b) => values[a] && values[b],
                GateOp::Or(a, b) => values[a] || values[b],
                GateOp::Not(a) => !values[a],
            };
            values.push(value);
        }
        values
    }

    pub fn output_value(&self, inputs: &[bool]) -> bool {
        self.evaluate(inputs)[self.output]
    }

    /// First satisfying input assignment, enumerating assignments as
    /// ascending binary counters with input `j` reading bit `j`.
    pub fn truth_table_satisfiable(&self) -> Option<Vec<bool>> {
        let k = self.input_count();
        assert!(k < 63, "truth-table search supports at most 62 inputs");
        (0u64..1 << k)
            .map(|a| (0..k).map(|j| a >> j & 1 == 1).collect::<Vec<bool>>())
            .find(|bits| self.output_value(bits))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitParseError {
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: expected {expected} arguments, got {got}")]
    Arity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: node {name:?} is already defined")]
    DuplicateNode { line: usize, name: String },
    #[error("line {line}: node {name:?} is not defined yet")]
    UndefinedNode { line: usize, name: String },
    #[error("line {line}: output is already declared")]
    DuplicateOutput { line: usize },
    #[error("circuit declares no output")]
    MissingOutput,
}

/// Parse the line-oriented circuit format: `input <name>`,
/// `and <name> <a> <b>`, `or <name> <a> <b>`, `not <name> <a>`,
/// `output <name>`, with `#` starting a comment. Operands must refer to
/// previously defined nodes.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut ops: Vec<GateOp> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut output: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let directive = parts.next().expect("line is non-empty");
        let args: Vec<&str> = parts.collect();

        let expect_arity = |expected: usize| {
            if args.len() == expected {
                Ok(())
            } else {
                Err(CircuitParseError::Arity {
                    line,
                    expected,
                    got: args.len(),
                })
            }
        };
        let resolve = |name: &str, index: &BTreeMap<String, usize>| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| CircuitParseError::UndefinedNode {
                    line,
                    name: name.to_owned(),
                })
        };

        let op = match directive {
            "input" => {
                expect_arity(1)?;
                GateOp::Input
            }
            "and" => {
                expect_arity(3)?;
                GateOp::And(resolve(args[1], &index)?, resolve(args[2], &index)?)
            }
            "or" => {
                expect_arity(3)?;
                GateOp::Or(resolve(args[1], &index)?, resolve(args[2], &index)?)
            }
            "not" => {
                expect_arity(2)?;
                GateOp::Not(resolve(args[1], &index)?)
            }
            "output" => {
                expect_arity(1)?;
                if output.is_some() {
                    return Err(CircuitParseError::DuplicateOutput { line });
                }
                output = Some(resolve(args[0], &index)?);
                continue;
            }
            other => {
                return Err(CircuitParseError::UnknownDirective {
                    line,
                    directive: other.to_owned(),
                })
            }
        };

        let name = args[0].to_owned();
        if index.contains_key(&name) {
            return Err(CircuitParseError::DuplicateNode { line, name });
        }
        index.insert(name.clone(), ops.len());
        names.push(name);
        ops.push(op);
    }

    let output = output.ok_or(CircuitParseError::MissingOutput)?;
    Ok(Circuit { names, ops, output })
}

// ---------------------------------------------------------------------------
// Value gadget and circuit compilation
// ---------------------------------------------------------------------------

/// The four-vertex value gadget: the path `bot — alpha — alpha — top`.
/// The alpha vertex next to `bot` is the false anchor, the one next to
/// `top` the true anchor.
pub fn value_gadget() -> Graph {
    coloured_graph(4, &[(0, 1), (1, 2), (2, 3)], &[BOT, ALPHA, ALPHA, TOP])
}

/// Constraints pinning a unique value gadget: exactly two alpha, one
/// bot, one top vertex; the gadget path occurs once; and one alpha
/// vertex touches bot, one touches top.
pub fn value_gadget_constraints() -> Vec<PatternConstraint> {
    vec![
        PatternConstraint::hom(coloured_graph(1, &[], &[ALPHA]), 2u32),
        PatternConstraint::hom(coloured_graph(1, &[], &[BOT]), 1u32),
        PatternConstraint::hom(coloured_graph(1, &[], &[TOP]), 1u32),
        PatternConstraint::hom(value_gadget(), 1u32),
        PatternConstraint::hom(coloured_graph(2, &[(0, 1)], &[ALPHA, BOT]), 1u32),
        PatternConstraint::hom(coloured_graph(2, &[(0, 1)], &[ALPHA, TOP]), 1u32),
    ]
}

/// Three constraints forcing exactly `n` vertices of colour `a`, each
/// with exactly `m` neighbours of colour `b`: the counts fix the number
/// of `a`-vertices, the sum of their `b`-degrees to `n·m`, and the sum
/// of squared `b`-degrees to `n·m²`, which by the equality case of
/// Cauchy–Schwarz forces every `b`-degree to `m`.
pub fn nm_constraint(a: &str, b: &str, n: u64, m: u64) -> Vec<PatternConstraint> {
    assert!(n >= 1 && m >= 1, "degenerate counts need no constraints");
    let (n, m) = (BigUint::from(n), BigUint::from(m));
    vec![
        PatternConstraint::hom(coloured_graph(1, &[], &[a]), n.clone()),
        PatternConstraint::hom(coloured_graph(2, &[(0, 1)], &[a, b]), &n * &m),
        PatternConstraint::hom(
            coloured_graph(3, &[(0, 1), (1, 2)], &[b, a, b]),
            &n * &m * &m,
        ),
    ]
}

/// The value gadget plus one extra vertex per `(colour, value)` pair,
/// attached to the anchor for its value.
fn anchored_pattern(attachments: &[(String, bool)]) -> Graph {
    let n = 4 + attachments.len();
    let mut edges = vec![(0, 1), (1, 2), (2, 3)];
    let mut colours: Vec<&str> = vec![BOT, ALPHA, ALPHA, TOP];
    for (k, (colour, value)) in attachments.iter().enumerate() {
        edges.push((anchor(*value), 4 + k));
        colours.push(colour);
    }
    coloured_graph(n, &edges, &colours)
}

/// Forbidden value combinations per gate, in output order: the pattern
/// for a combination occurring in a witness would mean the gate's
/// output value disagrees with its operands.
fn gate_constraints(circuit: &Circuit, node: usize) -> Vec<PatternConstraint> {
    let name = |i: usize| circuit.node_names()[i].as_str();
    let v = node_colour(name(node));
    let combos: Vec<Vec<(String, bool)>> = match circuit.ops()[node] {
        GateOp::Input => return Vec::new(),
        GateOp::And(a, b) => {
            let (u, w) = (node_colour(name(a)), node_colour(name(b)));
            [
                (false, false, true),
                (false, true, true),
                (true, false, true),
                (true, true, false),
            ]
            .iter()
            .map(|&(x, y, z)| vec![(u.clone(), x), (w.clone(), y), (v.clone(), z)])
            .collect()
        }
        GateOp::Or(a, b) => {
            let (u, w) = (node_colour(name(a)), node_colour(name(b)));
            [
                (false, false, true),
                (false, true, false),
                (true, false, false),
                (true, true, false),
            ]
            .iter()
            .map(|&(x, y, z)| vec![(u.clone(), x), (w.clone(), y), (v.clone(), z)])
            .collect()
        }
        GateOp::Not(a) => {
            let w = node_colour(name(a));
            [(false, false), (true, true)]
                .iter()
                .map(|&(x, z)| vec![(w.clone(), x), (v.clone(), z)])
                .collect()
        }
    };
    combos
        .into_iter()
        .map(|attachments| PatternConstraint::hom(anchored_pattern(&attachments), 0u32))
        .collect()
}

/// Compile a circuit into coloured constraints satisfiable exactly when
/// the circuit is. In order: the value-gadget list, the output-true
/// constraint, one [`nm_constraint`] triple per node (each node vertex
/// attaches to exactly one anchor), and the per-gate forbidden patterns.
pub fn circuit_to_constraints(circuit: &Circuit) -> Vec<PatternConstraint> {
    let mut out = value_gadget_constraints();
    // The output node's vertex must sit on the true anchor: only the
    // true anchor extends to a top vertex.
    let output_pattern = coloured_graph(
        3,
        &[(0, 1), (1, 2)],
        &[&node_colour(circuit.output_name()), ALPHA, TOP],
    );
    out.push(PatternConstraint::hom(output_pattern, 1u32));
    for name in circuit.node_names() {
        out.extend(nm_constraint(&node_colour(name), ALPHA, 1, 1));
    }
    for node in 0..circuit.node_count() {
        out.extend(gate_constraints(circuit, node));
    }
    out
}

/// The canonical witness for a satisfying input assignment: the value
/// gadget plus one vertex per node, attached to the anchor matching the
/// node's evaluated value. Satisfies [`circuit_to_constraints`] exactly
/// when the assignment makes the circuit output true.
pub fn circuit_witness_graph(circuit: &Circuit, inputs: &[bool]) -> Graph {
    let values = circuit.evaluate(inputs);
    let mut edges = vec![(0, 1), (1, 2), (2, 3)];
    let mut colours: Vec<String> = [BOT, ALPHA, ALPHA, TOP]
        .iter()
        .map(|c| (*c).to_owned())
        .collect();
    for (i, name) in circuit.node_names().iter().enumerate() {
        edges.push((anchor(values[i]), 4 + i));
        colours.push(node_colour(name));
    }
    let mut g = Graph::from_edges(4 + circuit.node_count(), edges).expect("distinct edges");
    g.set_colouring(colours).expect("one colour per vertex");
    g
}

// ---------------------------------------------------------------------------
// Blocked 3-colouring extension
// ---------------------------------------------------------------------------

fn boundary_vertices(f: &Graph) -> Vec<Vertex> {
    (0..f.vertex_count())
        .filter(|&v| f.degree(v) == 1)
        .collect()
}

fn labelled_copy(f: &Graph) -> Graph {
    let mut labelled = f.clone();
    for (i, &v) in boundary_vertices(f).iter().enumerate() {
        labelled
            .set_label(&format!("l{}", i + 1), v)
            .expect("labels l1, l2, … are fresh");
    }
    labelled
}

/// Compile a plain graph into labelled constraints satisfiable exactly
/// when some assignment of the graph's degree-1 vertices to three
/// colours extends to no proper 3-colouring. A witness is a triangle
/// (forced by `hom(K_1) = 3`, `hom(K_2) = 6`) carrying one label per
/// degree-1 vertex (in ascending vertex order: labels `l1`, `l2`, …);
/// the count-0 constraint on the labelled input graph states that the
/// encoded assignment does not extend.
pub fn coloring_to_constraints(f: &Graph) -> Result<Vec<PatternConstraint>, ReductionError> {
    if !f.is_plain() {
        return Err(ReductionError::InputNotPlain);
    }
    let boundary = boundary_vertices(f);
    let mut out = vec![
        PatternConstraint::hom(labelled_copy(f), 0u32),
        PatternConstraint::hom(Graph::star(0), 3u32),
        PatternConstraint::hom(Graph::star(1), 6u32),
    ];
    for i in 1..=boundary.len() {
        let mut single = Graph::new(1);
        single
            .set_label(&format!("l{i}"), 0)
            .expect("one label on one vertex");
        out.push(PatternConstraint::hom(single, 1u32));
    }
    Ok(out)
}

/// Direct decision procedure for the problem behind
/// [`coloring_to_constraints`]: does some assignment of the degree-1
/// vertices to three colours extend to no proper 3-colouring of `f`?
/// Tries all `3^m` assignments, checking extendability by counting
/// label-respecting homomorphisms into a labelled triangle.
pub fn blocking_colouring_exists(f: &Graph, budget: &mut Budget) -> Result<bool, ReductionError> {
    if !f.is_plain() {
        return Err(ReductionError::InputNotPlain);
    }
    let boundary = boundary_vertices(f);
    let pattern = labelled_copy(f);
    let m = boundary.len() as u32;
    for code in 0..3u64.pow(m) {
        let mut triangle = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).expect("triangle");
        for i in 0..m {
            let vertex = (code / 3u64.pow(i) % 3) as usize;
            triangle
                .set_label(&format!("l{}", i + 1), vertex)
                .expect("fresh label");
        }
        if count_homomorphisms(&pattern, &triangle, budget)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Colour compression to four colours
// ---------------------------------------------------------------------------

/// Sorted distinct colours appearing in the patterns.
pub fn colour_palette(constraints: &[PatternConstraint]) -> Vec<String> {
    let mut set: BTreeSet<String> = BTreeSet::new();
    for c in constraints {
        if let Some(colours) = c.pattern().colouring() {
            set.extend(colours.iter().cloned());
        }
    }
    set.into_iter().collect()
}

/// The spine on `m + 2` vertices: `S — X — … — X — T` with `m` interior
/// `X` vertices (vertex 0 is `S`, vertices `1..=m` the interior,
/// vertex `m + 1` is `T`).
pub fn spine_gadget(m: usize) -> Graph {
    assert!(m >= 1, "the spine needs at least one interior vertex");
    let edges: Vec<(usize, usize)> = (0..=m).map(|i| (i, i + 1)).collect();
    let mut colours = vec![COLOUR_S];
    colours.extend(std::iter::repeat_n(COLOUR_X, m));
    colours.push(COLOUR_T);
    coloured_graph(m + 2, &edges, &colours)
}

/// Expand a pattern over `palette` to the four-colour form: all original
/// vertices are recoloured to `A` and keep their edges, a spine
/// [`spine_gadget`]`(m)` is appended, and each original vertex gains an
/// edge to the spine position of its old colour (position `i + 1` for
/// the `i`-th palette colour).
pub fn four_expand(pattern: &Graph, palette: &[String]) -> Graph {
    let old_colours = pattern.colouring().expect("pattern is fully coloured");
    let n = pattern.vertex_count();
    let m = palette.len();
    let mut edges: Vec<(usize, usize)> = pattern.edges().to_vec();
    for (v, colour) in old_colours.iter().enumerate() {
        let i = palette
            .iter()
            .position(|p| p == colour)
            .expect("pattern colour in palette");
        edges.push((v, n + 1 + i));
    }
    edges.extend((0..=m).map(|i| (n + i, n + i + 1)));
    let mut colours: Vec<String> = std::iter::repeat_n(COLOUR_A.to_owned(), n).collect();
    colours.push(COLOUR_S.to_owned());
    colours.extend(std::iter::repeat_n(COLOUR_X.to_owned(), m));
    colours.push(COLOUR_T.to_owned());
    let mut g = Graph::from_edges(n + m + 2, edges).expect("expansion edges are distinct");
    g.set_colouring(colours).expect("one colour per vertex");
    g
}

/// Constraints pinning the spine of a compressed witness: exactly `m`
/// interior vertices between unique endpoints, one endpoint-adjacent
/// interior vertex on each side, `m − 1` interior adjacencies, exactly
/// one spine walk of full length, and no shorter `S`-to-`T` walk.
fn spine_constraints(m: usize) -> Vec<PatternConstraint> {
    let mut out = vec![
        PatternConstraint::hom(coloured_graph(1, &[], &[COLOUR_X]), BigUint::from(m)),
        PatternConstraint::hom(coloured_graph(1, &[], &[COLOUR_S]), 1u32),
        PatternConstraint::hom(coloured_graph(1, &[], &[COLOUR_T]), 1u32),
        PatternConstraint::hom(coloured_graph(2, &[(0, 1)], &[COLOUR_X, COLOUR_S]), 1u32),
        PatternConstraint::hom(
            coloured_graph(2, &[(0, 1)], &[COLOUR_X, COLOUR_X]),
            BigUint::from(2 * m - 2),
        ),
        PatternConstraint::hom(coloured_graph(2, &[(0, 1)], &[COLOUR_X, COLOUR_T]), 1u32),
        PatternConstraint::hom(spine_gadget(m), 1u32),
    ];
    out.extend((1..m).map(|k| PatternConstraint::hom(spine_gadget(k), 0u32)));
    out
}

/// The spine plus one `A`-vertex adjacent to interior positions `i` and
/// `j`; at count 0 it forbids any compressed vertex from sitting on two
/// different old colours.
fn spine_conflict_pattern(m: usize, i: usize, j: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..=m).map(|k| (k, k + 1)).collect();
    edges.push((i, m + 2));
    edges.push((j, m + 2));
    let mut colours = vec![COLOUR_S];
    colours.extend(std::iter::repeat_n(COLOUR_X, m));
    colours.push(COLOUR_T);
    colours.push(COLOUR_A);
    coloured_graph(m + 3, &edges, &colours)
}

/// Compress a homomorphism-constraint list over an arbitrary colour
/// palette of size `m` into one over the four colours `A`, `S`, `X`,
/// `T`, preserving satisfiability and witness counts: each original
/// constraint `(F, c)` becomes `([`four_expand`]`(F), c)`, followed by
/// the spine-pinning constraints and one conflict constraint per pair
/// of palette positions.
pub fn colors_to_four(
    constraints: &[PatternConstraint],
) -> Result<Vec<PatternConstraint>, ReductionError> {
    for (index, c) in constraints.iter().enumerate() {
        if c.mode() != CountMode::Hom {
            return Err(ReductionError::WrongMode { index });
        }
        if c.pattern().is_labelled() {
            return Err(ReductionError::LabelledPattern { index });
        }
        if !c.pattern().is_coloured() {
            return Err(ReductionError::UncolouredPattern { index });
        }
    }
    let palette = colour_palette(constraints);
    if palette.is_empty() {
        return Err(ReductionError::EmptyPalette);
    }
    for reserved in [COLOUR_A, COLOUR_S, COLOUR_T, COLOUR_X] {
        if palette.iter().any(|c| c == reserved) {
            return Err(ReductionError::ReservedColour(reserved.to_owned()));
        }
    }
    let m = palette.len();
    let mut out: Vec<PatternConstraint> = constraints
        .iter()
        .map(|c| PatternConstraint::hom(four_expand(c.pattern(), &palette), c.required().clone()))
        .collect();
    out.extend(spine_constraints(m));
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(PatternConstraint::hom(
                spine_conflict_pattern(m, i, j),
                0u32,
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Verification harness
// ---------------------------------------------------------------------------

/// Outcome of checking a compiled constraint list against the source
/// instance's expected satisfiability.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub expected_satisfiable: bool,
    pub satisfiable: bool,
    /// `satisfiable == expected_satisfiable`.
    pub matches: bool,
    pub witness: Option<Graph>,
    /// Vertex bound the brute search exhausted when no witness exists.
    pub searched_bound: usize,
}

/// Brute-solve the constraint list and compare against the expectation.
pub fn verify_reduction(
    constraints: &[PatternConstraint],
    expected_satisfiable: bool,
    options: &BruteOptions,
) -> Result<VerifyReport, BruteError> {
    let outcome = brute_solve(constraints, options)?;
    let satisfiable = outcome.witness.is_some();
    Ok(VerifyReport {
        expected_satisfiable,
        satisfiable,
        matches: satisfiable == expected_satisfiable,
        witness: outcome.witness,
        searched_bound: outcome.searched_bound,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{check_constraints, serialize_graph};

    fn check(target: &Graph, constraints: &[PatternConstraint]) -> bool {
        let mut budget = Budget::default();
        check_constraints(target, constraints, &mut budget)
            .unwrap()
            .all_satisfied()
    }

    // -- circuits ----------------------------------------------------------

    #[test]
    fn parse_not_circuit() {
        let c = parse_circuit("# negation\ninput x\nnot g x\noutput g").unwrap();
        assert_eq!(c.node_count(), 2);
        assert_eq!(c.input_count(), 1);
        assert_eq!(c.node_names(), ["x", "g"]);
        assert_eq!(c.ops(), [GateOp::Input, GateOp::Not(0)]);
        assert_eq!(c.output_name(), "g");
        assert_eq!(c.evaluate(&[false]), [false, true]);
        assert_eq!(c.evaluate(&[true]), [true, false]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_circuit("xor g a b").unwrap_err(),
            CircuitParseError::UnknownDirective {
                line: 1,
                directive: "xor".into()
            }
        );
        assert_eq!(
            parse_circuit("input x\nnot g\noutput g").unwrap_err(),
            CircuitParseError::Arity {
                line: 2,
                expected: 2,
                got: 1
            }
        );
        assert_eq!(
            parse_circuit("and g a b").unwrap_err(),
            CircuitParseError::UndefinedNode {
                line: 1,
                name: "a".into()
            }
        );
        assert_eq!(
            parse_circuit("input x\ninput x\noutput x").unwrap_err(),
            CircuitParseError::DuplicateNode {
                line: 2,
                name: "x".into()
            }
        );
        assert_eq!(
            parse_circuit("input x\noutput x\noutput x").unwrap_err(),
            CircuitParseError::DuplicateOutput { line: 3 }
        );
        assert_eq!(
            parse_circuit("input x").unwrap_err(),
            CircuitParseError::MissingOutput
        );
    }

    #[test]
    fn truth_tables() {
        let unsat = parse_circuit("input x\nnot n x\nand g x n\noutput g").unwrap();
        assert_eq!(unsat.truth_table_satisfiable(), None);
        let valid = parse_circuit("input x\nnot n x\nor g x n\noutput g").unwrap();
        assert_eq!(valid.truth_table_satisfiable(), Some(vec![false]));
        let and = parse_circuit("input x\ninput y\nand g x y\noutput g").unwrap();
        assert_eq!(and.truth_table_satisfiable(), Some(vec![true, true]));
    }

    #[test]
    fn value_gadget_satisfies_its_own_constraints() {
        let constraints = value_gadget_constraints();
        assert_eq!(constraints.len(), 6);
        assert!(check(&value_gadget(), &constraints));
    }

    #[test]
    fn extra_alpha_vertex_violates_gadget_constraints() {
        let mut g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
        g.set_colouring(
            [BOT, ALPHA, ALPHA, TOP, ALPHA]
                .iter()
                .map(|c| (*c).to_owned())
                .collect(),
        )
        .unwrap();
        assert!(!check(&g, &value_gadget_constraints()));
    }

    #[test]
    fn nm_constraint_counts() {
        let list = nm_constraint("a", "b", 2, 3);
        let counts: Vec<u64> = list
            .iter()
            .map(|c| u64::try_from(c.required()).unwrap())
            .collect();
        assert_eq!(counts, [2, 6, 18]);
        let ones = nm_constraint("a", "b", 1, 1);
        let counts: Vec<u64> = ones
            .iter()
            .map(|c| u64::try_from(c.required()).unwrap())
            .collect();
        assert_eq!(counts, [1, 1, 1]);
        // The two-edge path pattern has its centre coloured `a`.
        assert_eq!(list[2].pattern().colouring().unwrap(), ["b", "a", "b"]);
    }

    #[test]
    fn nm_constraint_witnesses_have_exact_neighbour_counts() {
        // Every coloured graph on up to 5 vertices satisfying the list
        // has exactly n a-vertices, each with m b-neighbours.
        use crate::brute::enumerate_graphs;
        for (n, m) in [(1u64, 1u64), (1, 2), (2, 1), (2, 2)] {
            let list = nm_constraint("a", "b", n, m);
            let mut found = 0usize;
            for size in 0..=5usize {
                for a_count in 0..=size {
                    let classes = vec![("a".to_owned(), a_count), ("b".to_owned(), size - a_count)];
                    for g in enumerate_graphs(size, Some(&classes)).unwrap() {
                        if !check(&g, &list) {
                            continue;
                        }
                        found += 1;
                        assert_eq!(a_count as u64, n);
                        for v in 0..a_count {
                            let b_neighbours =
                                (a_count..size).filter(|&u| g.has_edge(v, u)).count();
                            assert_eq!(b_neighbours as u64, m);
                        }
                    }
                }
            }
            assert!(found > 0, "some witness exists for n = {n}, m = {m}");
        }
    }

    #[test]
    fn identity_circuit_witness() {
        let c = parse_circuit("input x\noutput x").unwrap();
        let constraints = circuit_to_constraints(&c);
        assert_eq!(constraints.len(), 6 + 1 + 3);
        assert!(check(&circuit_witness_graph(&c, &[true]), &constraints));
        assert!(!check(&circuit_witness_graph(&c, &[false]), &constraints));
    }

    #[test]
    fn not_circuit_constraint_count() {
        let c = parse_circuit("input x\nnot g x\noutput g").unwrap();
        assert_eq!(circuit_to_constraints(&c).len(), 15);
    }

    #[test]
    fn and_circuit_witnesses_match_evaluation() {
        let c = parse_circuit("input x\ninput y\nand g x y\noutput g").unwrap();
        let constraints = circuit_to_constraints(&c);
        for (x, y) in [(false, false), (false, true), (true, false), (true, true)] {
            let witness = circuit_witness_graph(&c, &[x, y]);
            assert_eq!(check(&witness, &constraints), x && y);
        }
    }

    #[test]
    fn wrong_gate_value_trips_a_forbidden_pattern() {
        // Gadget plus x, y on the true anchor and g on the false anchor:
        // an AND gate with inputs true and output false.
        let c = parse_circuit("input x\ninput y\nand g x y\noutput g").unwrap();
        let mut g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (1, 6)]).unwrap();
        g.set_colouring(
            [BOT, ALPHA, ALPHA, TOP, "C_x", "C_y", "C_g"]
                .iter()
                .map(|s| (*s).to_owned())
                .collect(),
        )
        .unwrap();
        let constraints = circuit_to_constraints(&c);
        let mut budget = Budget::default();
        let report = check_constraints(&g, &constraints, &mut budget).unwrap();
        assert!(!report.all_satisfied());
        // The violated entry is the count-0 pattern for (true, true, false).
        let violated: Vec<usize> = report
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.satisfied)
            .map(|(i, _)| i)
            .collect();
        let forbidden_start = 6 + 1 + 3 * 3;
        assert!(violated.contains(&(forbidden_start + 3)));
    }

    #[test]
    fn not_circuit_brute_witness_encodes_values() {
        let c = parse_circuit("input x\nnot g x\noutput g").unwrap();
        let constraints = circuit_to_constraints(&c);
        let outcome = brute_solve(&constraints, &BruteOptions::default()).unwrap();
        let witness = outcome.witness.expect("x = false satisfies the circuit");
        assert!(check(&witness, &constraints));

        let colours = witness.colouring().unwrap();
        let vertex_of = |colour: &str| colours.iter().position(|c| c == colour).unwrap();
        let bot = vertex_of(BOT);
        let top = vertex_of(TOP);
        let false_anchor = (0..witness.vertex_count())
            .find(|&v| colours[v] == ALPHA && witness.has_edge(bot, v))
            .unwrap();
        let true_anchor = (0..witness.vertex_count())
            .find(|&v| colours[v] == ALPHA && witness.has_edge(top, v))
            .unwrap();
        assert_ne!(false_anchor, true_anchor);
        assert!(
            witness.has_edge(vertex_of("C_x"), false_anchor),
            "x reads false"
        );
        assert!(
            witness.has_edge(vertex_of("C_g"), true_anchor),
            "g reads true"
        );
    }

    #[test]
    fn gate_patterns_golden() {
        let c = parse_circuit("input x\nnot g x\noutput g").unwrap();
        let constraints = circuit_to_constraints(&c);
        // Entries 13, 14 are the NOT gate's two forbidden patterns:
        // operand and output both false, resp. both true.
        assert_eq!(
            serialize_graph(constraints[13].pattern()),
            "n 6\ne 0 1\ne 1 2\ne 1 4\ne 1 5\ne 2 3\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_g\n"
        );
        assert_eq!(constraints[13].required(), &BigUint::zero());
        assert_eq!(
            serialize_graph(constraints[14].pattern()),
            "n 6\ne 0 1\ne 1 2\ne 2 3\ne 2 4\ne 2 5\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_g\n"
        );

        let c = parse_circuit("input x\ninput y\nand g x y\noutput g").unwrap();
        let constraints = circuit_to_constraints(&c);
        let start = 6 + 1 + 3 * 3;
        let golden = [
            // (x, y, g) = (0, 0, 1)
            "n 7\ne 0 1\ne 1 2\ne 1 4\ne 1 5\ne 2 3\ne 2 6\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
            // (0, 1, 1)
            "n 7\ne 0 1\ne 1 2\ne 1 4\ne 2 3\ne 2 5\ne 2 6\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
            // (1, 0, 1)
            "n 7\ne 0 1\ne 1 2\ne 1 5\ne 2 3\ne 2 4\ne 2 6\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
            // (1, 1, 0)
            "n 7\ne 0 1\ne 1 2\ne 1 6\ne 2 3\ne 2 4\ne 2 5\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
        ];
        for (offset, expected) in golden.iter().enumerate() {
            assert_eq!(
                &serialize_graph(constraints[start + offset].pattern()),
                expected
            );
            assert_eq!(constraints[start + offset].required(), &BigUint::zero());
        }

        let c = parse_circuit("input x\ninput y\nor g x y\noutput g").unwrap();
        let constraints = circuit_to_constraints(&c);
        let golden = [
            // (x, y, g) = (0, 0, 1)
            "n 7\ne 0 1\ne 1 2\ne 1 4\ne 1 5\ne 2 3\ne 2 6\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
            // (0, 1, 0)
            "n 7\ne 0 1\ne 1 2\ne 1 4\ne 1 6\ne 2 3\ne 2 5\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
            // (1, 0, 0)
            "n 7\ne 0 1\ne 1 2\ne 1 5\ne 1 6\ne 2 3\ne 2 4\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
            // (1, 1, 0)
            "n 7\ne 0 1\ne 1 2\ne 1 6\ne 2 3\ne 2 4\ne 2 5\n\
             c 0 bot\nc 1 alpha\nc 2 alpha\nc 3 top\nc 4 C_x\nc 5 C_y\nc 6 C_g\n",
        ];
        for (offset, expected) in golden.iter().enumerate() {
            assert_eq!(
                &serialize_graph(constraints[start + offset].pattern()),
                expected
            );
            assert_eq!(constraints[start + offset].required(), &BigUint::zero());
        }
    }

    #[test]
    fn verify_tiny_circuits() {
        let unsat = parse_circuit("input x\nnot n x\nand g x n\noutput g").unwrap();
        let report = verify_reduction(
            &circuit_to_constraints(&unsat),
            unsat.truth_table_satisfiable().is_some(),
            &BruteOptions::default(),
        )
        .unwrap();
        assert!(report.matches);
        assert!(!report.satisfiable);

        let valid = parse_circuit("input x\nnot n x\nor g x n\noutput g").unwrap();
        let report = verify_reduction(
            &circuit_to_constraints(&valid),
            valid.truth_table_satisfiable().is_some(),
            &BruteOptions::default(),
        )
        .unwrap();
        assert!(report.matches);
        assert!(report.satisfiable);
    }

    // -- blocked 3-colouring extension ---------------------------------------

    #[test]
    fn coloring_constraints_shape() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let constraints = coloring_to_constraints(&path).unwrap();
        assert_eq!(constraints.len(), 5);
        let labelled = constraints[0].pattern();
        assert_eq!(labelled.labels().get("l1"), Some(&0));
        assert_eq!(labelled.labels().get("l2"), Some(&2));
        let coloured = coloured_graph(1, &[], &["a"]);
        assert!(matches!(
            coloring_to_constraints(&coloured),
            Err(ReductionError::InputNotPlain)
        ));
    }

    #[test]
    fn blocking_colouring_examples() {
        let mut budget = Budget::default();
        // Path: the middle vertex always has a spare colour.
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!blocking_colouring_exists(&path, &mut budget).unwrap());
        // Claw: colouring the three leaves with three distinct colours
        // leaves nothing for the centre.
        let claw = Graph::star(3);
        assert!(blocking_colouring_exists(&claw, &mut budget).unwrap());
        // Triangle: no degree-1 vertices and 3-colourable.
        let triangle = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!blocking_colouring_exists(&triangle, &mut budget).unwrap());
        // K_4: no degree-1 vertices and not 3-colourable at all.
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(blocking_colouring_exists(&k4, &mut budget).unwrap());
    }

    #[test]
    fn verify_tiny_colorings() {
        let mut budget = Budget::default();
        for graph in [
            Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap(),
            Graph::star(3),
            Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        ] {
            let expected = blocking_colouring_exists(&graph, &mut budget).unwrap();
            let report = verify_reduction(
                &coloring_to_constraints(&graph).unwrap(),
                expected,
                &BruteOptions::default(),
            )
            .unwrap();
            assert!(report.matches, "agreement on {graph:?}");
        }
    }

    // -- colour compression --------------------------------------------------

    #[test]
    fn four_expand_shapes() {
        let palette: Vec<String> = vec!["p".into(), "q".into()];
        let single = coloured_graph(1, &[], &["p"]);
        let expanded = four_expand(&single, &palette);
        assert_eq!(expanded.vertex_count(), 5);
        assert_eq!(expanded.colouring().unwrap(), ["A", "S", "X", "X", "T"]);
        // Attachment to spine position 1 (colour p is palette index 0).
        assert!(expanded.has_edge(0, 2));
        assert!(!expanded.has_edge(0, 3));
        assert_eq!(spine_gadget(2).vertex_count(), 4);
        assert_eq!(spine_gadget(1).colouring().unwrap(), ["S", "X", "T"]);
    }

    #[test]
    fn colors_to_four_counts_and_manual_witness() {
        // Palette {p, q}; one p-vertex, one q-vertex, joined by an edge.
        let list = vec![
            PatternConstraint::hom(coloured_graph(1, &[], &["p"]), 1u32),
            PatternConstraint::hom(coloured_graph(1, &[], &["q"]), 1u32),
            PatternConstraint::hom(coloured_graph(2, &[(0, 1)], &["p", "q"]), 1u32),
        ];
        let compressed = colors_to_four(&list).unwrap();
        // 3 originals + (7 + m − 1) spine constraints + C(m, 2) conflicts.
        assert_eq!(compressed.len(), 3 + 8 + 1);

        // The expansion of the original witness satisfies the compressed
        // list: p-vertex on spine position 1, q-vertex on position 2.
        let mut witness = Graph::from_edges(2, [(0, 1)]).unwrap();
        witness.set_colouring(vec!["p".into(), "q".into()]).unwrap();
        let expanded = four_expand(&witness, &["p".into(), "q".into()]);
        assert!(check(&expanded, &compressed));

        // Swapping an attachment breaks the compressed counts.
        let mut wrong =
            Graph::from_edges(6, [(0, 1), (0, 4), (1, 4), (2, 3), (3, 4), (4, 5)]).unwrap();
        wrong
            .set_colouring(vec![
                "A".into(),
                "A".into(),
                "S".into(),
                "X".into(),
                "X".into(),
                "T".into(),
            ])
            .unwrap();
        assert!(!check(&wrong, &compressed));
    }

    #[test]
    fn colors_to_four_rejects_bad_inputs() {
        let plain = PatternConstraint::hom(Graph::star(1), 2u32);
        assert!(matches!(
            colors_to_four(&[plain]),
            Err(ReductionError::UncolouredPattern { index: 0 })
        ));
        let sub = PatternConstraint::sub(Graph::star(1), 2u32);
        assert!(matches!(
            colors_to_four(&[sub]),
            Err(ReductionError::WrongMode { index: 0 })
        ));
        let reserved = PatternConstraint::hom(coloured_graph(1, &[], &["X"]), 1u32);
        assert!(matches!(
            colors_to_four(&[reserved]),
            Err(ReductionError::ReservedColour(_))
        ));
        assert!(matches!(
            colors_to_four(&[]),
            Err(ReductionError::EmptyPalette)
        ));
    }

    #[test]
    fn compression_preserves_hom_counts_on_samples() {
        // hom(F, G) = hom(F*, G*) for a few hand-picked coloured pairs.
        let palette: Vec<String> = vec!["p".into(), "q".into()];
        let f_candidates = [
            coloured_graph(1, &[], &["p"]),
            coloured_graph(2, &[(0, 1)], &["p", "q"]),
            coloured_graph(2, &[], &["q", "q"]),
            coloured_graph(3, &[(0, 1), (1, 2)], &["p", "q", "p"]),
        ];
        let g_candidates = [
            coloured_graph(2, &[(0, 1)], &["p", "q"]),
            coloured_graph(3, &[(0, 1), (0, 2)], &["q", "p", "p"]),
            coloured_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &["p", "q", "p", "q"]),
        ];
        let mut budget = Budget::default();
        for f in &f_candidates {
            for g in &g_candidates {
                let direct = count_homomorphisms(f, g, &mut budget).unwrap();
                let expanded = count_homomorphisms(
                    &four_expand(f, &palette),
                    &four_expand(g, &palette),
                    &mut budget,
                )
                .unwrap();
                assert_eq!(direct, expanded, "counts differ for {f:?} into {g:?}");
            }
        }
    }
}
