//! Shared reference oracles for the integration suites.
//!
//! Everything here is written directly from definitions — full map
//! enumeration for counting, the textbook Havel–Hakimi recursion for
//! graphicality, explicit backtracking for colouring extensions — so the
//! library's optimized implementations have something independent to be
//! measured against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use homrec::graph::{CountMode, Graph};
use homrec::stars::StarCountVector;
use num_bigint::BigUint;

// ---------------------------------------------------------------------------
// Exact small arithmetic
// ---------------------------------------------------------------------------

/// Binomial coefficient `C(n, k)` for desk-scale inputs.
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Exact at every step: acc holds C(n, i), and C(n, i) * (n - i)
        // is divisible by i + 1.
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits in u64 at test scale")
}

/// `sub(S_0..S_ell, G)` computed from a degree list alone: vertex count,
/// edge count, then `Σ_v C(deg v, j)` for `j ≥ 2`.
pub fn sub_vector_of_degrees(degrees: &[usize], ell: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(ell + 1);
    out.push(degrees.len() as u64);
    if ell >= 1 {
        let total: u64 = degrees.iter().map(|&d| d as u64).sum();
        assert_eq!(total % 2, 0, "degree lists of graphs have even sum");
        out.push(total / 2);
    }
    for j in 2..=ell {
        out.push(degrees.iter().map(|&d| binom(d, j)).sum());
    }
    out
}

/// `hom(S_0..S_ell, G)` computed from a degree list alone: `Σ_v (deg v)^j`.
pub fn hom_vector_of_degrees(degrees: &[usize], ell: usize) -> Vec<u64> {
    (0..=ell)
        .map(|j| degrees.iter().map(|&d| (d as u64).pow(j as u32)).sum())
        .collect()
}

/// A fully specified subgraph-copy vector from plain integers.
pub fn sub_vector(counts: &[u64]) -> StarCountVector {
    StarCountVector::specified(
        CountMode::Sub,
        counts.iter().map(|&c| BigUint::from(c)).collect(),
    )
}

/// A fully specified homomorphism vector from plain integers.
pub fn hom_vector(counts: &[u64]) -> StarCountVector {
    StarCountVector::specified(
        CountMode::Hom,
        counts.iter().map(|&c| BigUint::from(c)).collect(),
    )
}

/// The `u64` values of a specified vector (panics on unspecified slots).
pub fn vector_counts(vector: &StarCountVector) -> Vec<u64> {
    vector
        .slots()
        .iter()
        .map(|slot| u64::try_from(slot.as_ref().expect("slot specified")).unwrap())
        .collect()
}

// ---------------------------------------------------------------------------
// Exhaustive graph enumeration
// ---------------------------------------------------------------------------

/// All vertex pairs `(u, v)` with `u < v`, lexicographic.
pub fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n.max(1) - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

/// The graph on `n` vertices whose edges are the pairs selected by `mask`.
pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled simple graph on `n` vertices — all `2^C(n,2)` of them.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs = vertex_pairs(n);
    (0..1u64 << pairs.len())
        .map(|mask| graph_from_mask(n, &pairs, mask))
        .collect()
}

/// Degree lists of every labelled simple graph on `n` vertices, visited
/// without materializing the graphs (fast enough for `n = 7`).
pub fn for_each_degree_list(n: usize, mut visit: impl FnMut(&[usize])) {
    let pairs = vertex_pairs(n);
    let mut degrees = vec![0usize; n];
    for mask in 0..1u64 << pairs.len() {
        degrees.iter_mut().for_each(|d| *d = 0);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                degrees[u] += 1;
                degrees[v] += 1;
            }
        }
        visit(&degrees);
    }
}

// ---------------------------------------------------------------------------
// Naive counting
// ---------------------------------------------------------------------------

fn map_respects(pattern: &Graph, target: &Graph, map: &[usize]) -> bool {
    for &(u, v) in pattern.edges() {
        if !target.has_edge(map[u], map[v]) {
            return false;
        }
    }
    if let Some(colours) = pattern.colouring() {
        for (v, colour) in colours.iter().enumerate() {
            if target.colour(map[v]) != Some(colour.as_str()) {
                return false;
            }
        }
    }
    for (name, &v) in pattern.labels() {
        if target.labels().get(name) != Some(&map[v]) {
            return false;
        }
    }
    true
}

fn count_maps(pattern: &Graph, target: &Graph, injective: bool) -> u64 {
    let pn = pattern.vertex_count();
    let tn = target.vertex_count();
    if pn == 0 {
        return 1;
    }
    if tn == 0 {
        return 0;
    }
    let mut map = vec![0usize; pn];
    let mut count = 0u64;
    'maps: loop {
        let distinct = !injective || {
            let set: BTreeSet<usize> = map.iter().copied().collect();
            set.len() == pn
        };
        if distinct && map_respects(pattern, target, &map) {
            count += 1;
        }
        for slot in (0..pn).rev() {
            map[slot] += 1;
            if map[slot] < tn {
                continue 'maps;
            }
            map[slot] = 0;
        }
        break;
    }
    count
}

/// Homomorphism count by enumerating all `|V(G)|^|V(F)|` vertex maps.
pub fn naive_hom(pattern: &Graph, target: &Graph) -> u64 {
    count_maps(pattern, target, false)
}

/// Subgraph-copy count as injective homomorphisms divided by the
/// automorphism count (itself the injective self-homomorphism count).
pub fn naive_sub(pattern: &Graph, target: &Graph) -> u64 {
    assert!(pattern.is_plain() && target.is_plain());
    let aut = count_maps(pattern, pattern, true);
    let inj = count_maps(pattern, target, true);
    assert_eq!(inj % aut, 0, "injective maps come in automorphism orbits");
    inj / aut
}

// ---------------------------------------------------------------------------
// Independent graphicality decider
// ---------------------------------------------------------------------------

/// The textbook Havel–Hakimi recursion: strip zeros, connect the largest
/// remaining degree to the next-largest ones, repeat. Entirely separate
/// from the library's inequality-based test.
pub fn hh_graphic(seq: &[usize]) -> bool {
    let mut d = seq.to_vec();
    loop {
        d.sort_unstable_by(|a, b| b.cmp(a));
        while d.last() == Some(&0) {
            d.pop();
        }
        let Some(&first) = d.first() else { return true };
        if first >= d.len() {
            return false;
        }
        d.remove(0);
        for slot in d.iter_mut().take(first) {
            *slot -= 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Tiny-circuit enumeration
// ---------------------------------------------------------------------------

/// Gate shapes for the tiny-circuit enumerator; operands are node indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TinyOp {
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
}

/// One enumerated circuit: its text form plus its ground-truth
/// satisfiability from a direct truth-table sweep.
pub struct TinyCircuit {
    pub text: String,
    pub satisfiable: bool,
}

/// Every circuit with `1..=max_inputs` inputs, `0..=max_gates` gates, and
/// output at the last node, reduced to one representative per structural
/// identity class (input renamings and topology-preserving gate
/// reorderings).
pub fn enumerate_small_circuits(max_inputs: usize, max_gates: usize) -> Vec<TinyCircuit> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for inputs in 1..=max_inputs {
        for gates in 0..=max_gates {
            let mut ops = Vec::new();
            gen_ops(inputs, gates, &mut ops, &mut |ops| {
                if seen.insert(canonical_circuit_key(inputs, ops)) {
                    out.push(TinyCircuit {
                        text: circuit_text(inputs, ops),
                        satisfiable: truth_table_sat(inputs, ops),
                    });
                }
            });
        }
    }
    out
}

fn gen_ops(
    inputs: usize,
    remaining: usize,
    ops: &mut Vec<TinyOp>,
    emit: &mut impl FnMut(&[TinyOp]),
) {
    if remaining == 0 {
        emit(ops);
        return;
    }
    let nodes = inputs + ops.len();
    for a in 0..nodes {
        for b in a..nodes {
            for op in [TinyOp::And(a, b), TinyOp::Or(a, b)] {
                ops.push(op);
                gen_ops(inputs, remaining - 1, ops, emit);
                ops.pop();
            }
        }
        ops.push(TinyOp::Not(a));
        gen_ops(inputs, remaining - 1, ops, emit);
        ops.pop();
    }
}

fn truth_table_sat(inputs: usize, ops: &[TinyOp]) -> bool {
    (0..1u32 << inputs).any(|assignment| {
        let mut vals: Vec<bool> = (0..inputs).map(|i| assignment >> i & 1 == 1).collect();
        for op in ops {
            let value = match *op {
                TinyOp::And(a, b) => vals[a] && vals[b],
                TinyOp::Or(a, b) => vals[a] || vals[b],
                TinyOp::Not(a) => !vals[a],
            };
            vals.push(value);
        }
        *vals.last().unwrap()
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut perm = rest.clone();
            perm.insert(pos, k - 1);
            out.push(perm);
        }
    }
    out
}

/// Minimum serialization over all relabellings that keep inputs inputs,
/// gates gates, and every operand before its gate.
fn canonical_circuit_key(inputs: usize, ops: &[TinyOp]) -> String {
    let gates = ops.len();
    let nodes = inputs + gates;
    let mut best: Option<String> = None;
    for input_perm in permutations(inputs) {
        for gate_perm in permutations(gates) {
            let relabel = |node: usize| -> usize {
                if node < inputs {
                    input_perm[node]
                } else {
                    inputs + gate_perm[node - inputs]
                }
            };
            let mut new_ops: Vec<Option<TinyOp>> = vec![None; gates];
            let mut valid = true;
            for (old, op) in ops.iter().enumerate() {
                let position = relabel(inputs + old);
                let relabelled = match *op {
                    TinyOp::And(a, b) => {
                        let (a, b) = (relabel(a), relabel(b));
                        TinyOp::And(a.min(b), a.max(b))
                    }
                    TinyOp::Or(a, b) => {
                        let (a, b) = (relabel(a), relabel(b));
                        TinyOp::Or(a.min(b), a.max(b))
                    }
                    TinyOp::Not(a) => TinyOp::Not(relabel(a)),
                };
                let operands_ok = match relabelled {
                    TinyOp::And(a, b) | TinyOp::Or(a, b) => a < position && b < position,
                    TinyOp::Not(a) => a < position,
                };
                if !operands_ok {
                    valid = false;
                    break;
                }
                new_ops[position - inputs] = Some(relabelled);
            }
            if !valid {
                continue;
            }
            let serialized = format!(
                "i{inputs}|{:?}|o{}",
                new_ops.iter().map(|op| op.unwrap()).collect::<Vec<_>>(),
                relabel(nodes - 1),
            );
            if best.as_ref().is_none_or(|b| serialized < *b) {
                best = Some(serialized);
            }
        }
    }
    best.expect("identity relabelling is always valid")
}

fn node_name(inputs: usize, node: usize) -> String {
    if node < inputs {
        format!("x{}", node + 1)
    } else {
        format!("g{}", node - inputs + 1)
    }
}

fn circuit_text(inputs: usize, ops: &[TinyOp]) -> String {
    let mut lines: Vec<String> = (0..inputs).map(|i| format!("input x{}", i + 1)).collect();
    for (i, op) in ops.iter().enumerate() {
        let gate = format!("g{}", i + 1);
        lines.push(match *op {
            TinyOp::And(a, b) => {
                format!(
                    "and {gate} {} {}",
                    node_name(inputs, a),
                    node_name(inputs, b)
                )
            }
            TinyOp::Or(a, b) => {
                format!(
                    "or {gate} {} {}",
                    node_name(inputs, a),
                    node_name(inputs, b)
                )
            }
            TinyOp::Not(a) => format!("not {gate} {}", node_name(inputs, a)),
        });
    }
    lines.push(format!(
        "output {}",
        node_name(inputs, inputs + ops.len() - 1)
    ));
    lines.join("\n")
}

// ---------------------------------------------------------------------------
// Direct blocking-colouring decider
// ---------------------------------------------------------------------------

/// Does some 3-colouring of the degree-1 vertices of `f` fail to extend
/// to a proper 3-colouring of all of `f`? Decided by enumerating boundary
/// colourings and running a backtracking extension search for each.
pub fn blocking_colouring_oracle(f: &Graph) -> bool {
    let n = f.vertex_count();
    let boundary: Vec<usize> = (0..n).filter(|&v| f.degree(v) == 1).collect();
    let mut assignment = vec![usize::MAX; n];
    some_boundary_blocks(f, &boundary, 0, &mut assignment)
}

fn some_boundary_blocks(
    f: &Graph,
    boundary: &[usize],
    next: usize,
    assignment: &mut Vec<usize>,
) -> bool {
    let Some(&vertex) = boundary.get(next) else {
        return !extends_properly(f, assignment, 0);
    };
    for colour in 0..3 {
        assignment[vertex] = colour;
        if some_boundary_blocks(f, boundary, next + 1, assignment) {
            assignment[vertex] = usize::MAX;
            return true;
        }
    }
    assignment[vertex] = usize::MAX;
    false
}

fn extends_properly(f: &Graph, assignment: &mut Vec<usize>, vertex: usize) -> bool {
    if vertex == f.vertex_count() {
        return f
            .edges()
            .iter()
            .all(|&(u, v)| assignment[u] != assignment[v]);
    }
    if assignment[vertex] != usize::MAX {
        return extends_properly(f, assignment, vertex + 1);
    }
    for colour in 0..3 {
        assignment[vertex] = colour;
        if extends_properly(f, assignment, vertex + 1) {
            assignment[vertex] = usize::MAX;
            return true;
        }
    }
    assignment[vertex] = usize::MAX;
    false
}
