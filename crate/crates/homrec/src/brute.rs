//! Brute-force search for a graph satisfying a list of counting
//! constraints, plus the manifest format the CLI uses to exchange
//! constraint lists.
//!
//! The search enumerates candidate targets in a fixed deterministic order
//! (vertex count ascending, then colour-class sizes, then edge sets as
//! ascending bitmasks, then label placements) and returns the first
//! candidate whose counts all match. Two exact prunes keep the space
//! manageable without changing which candidate is found first:
//!
//! * single-vertex patterns pin the vertex count (plain) or a colour
//!   class size (coloured), so mismatching candidates are skipped;
//! * an edge between two colours that no constraint pattern ever joins
//!   cannot influence any count, so such edges are never placed. If a
//!   satisfying graph used one, the same graph without it would satisfy
//!   too and precedes it in enumeration order.

use std::collections::{BTreeMap, BTreeSet};
use std::io;
use std::path::Path;

use itertools::Itertools;
use num_bigint::BigUint;
use thiserror::Error;

use crate::counting::{self, Budget, CountError};
use crate::graph::{
    parse_graph, serialize_graph, ConstraintError, CountMode, Graph, ParseError, PatternConstraint,
};

// ---------------------------------------------------------------------------
// Errors and options
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum BruteError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("{0} candidate edge slots at n = {1} exceed the 63-bit mask; lower the vertex bound")]
    TooManySlots(usize, usize),
    #[error("isomorphism reduction requires plain patterns and unlabelled targets")]
    NotPlain,
    #[error("colour class sizes sum to {total}, expected {n}")]
    ClassSizes { total: usize, n: usize },
}

/// Search limits for [`brute_solve`].
#[derive(Clone, Debug)]
pub struct BruteOptions {
    /// Hard cap on the candidate vertex count.
    pub n_max: usize,
    /// Step budget shared by all counting work in one solve.
    pub step_budget: u64,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions {
            n_max: 8,
            step_budget: counting::DEFAULT_STEP_BUDGET,
        }
    }
}

/// Result of a brute search. `witness: None` means no satisfying graph on
/// at most `searched_bound` vertices exists (for homomorphism-only
/// constraint lists with the default bound this is a definitive
/// infeasibility answer; see [`solution_size_bound`]).
#[derive(Clone, Debug)]
pub struct BruteOutcome {
    pub witness: Option<Graph>,
    pub searched_bound: usize,
}

// ---------------------------------------------------------------------------
// Size bound
// ---------------------------------------------------------------------------

/// `Σ required · |V(pattern)|` over the constraints.
///
/// Any satisfiable list of homomorphism-count constraints has a witness
/// with at most this many vertices, so exhausting `0..=bound` decides
/// feasibility outright for such lists.
pub fn solution_size_bound(constraints: &[PatternConstraint]) -> BigUint {
    constraints
        .iter()
        .map(|c| c.required() * BigUint::from(c.pattern().vertex_count()))
        .sum()
}

fn effective_bound(constraints: &[PatternConstraint], n_max: usize) -> usize {
    let bound = solution_size_bound(constraints);
    usize::try_from(&bound).map_or(n_max, |b| b.min(n_max))
}

// ---------------------------------------------------------------------------
// Search space analysis
// ---------------------------------------------------------------------------

struct SearchSpace {
    /// Sorted colour classes: `(colour, pinned size)`.
    classes: Vec<(String, Option<usize>)>,
    /// Sorted label names the targets must carry.
    labels: Vec<String>,
    /// Exact vertex count required by plain single-vertex constraints.
    n_pin: Option<usize>,
    /// Two single-vertex constraints disagreed; nothing can satisfy them.
    impossible: bool,
    /// Some pattern joins arbitrary colours, so every edge slot is live.
    all_pairs_allowed: bool,
    /// Colour pairs that occur as pattern edges (normalised name order).
    allowed_pairs: BTreeSet<(String, String)>,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

impl SearchSpace {
    fn build(constraints: &[PatternConstraint]) -> SearchSpace {
        let mut palette: BTreeSet<String> = BTreeSet::new();
        let mut labels: BTreeSet<String> = BTreeSet::new();
        let mut uncoloured_structure = false;
        let mut allowed_pairs = BTreeSet::new();
        let mut n_pin: Option<usize> = None;
        let mut class_pins: BTreeMap<String, usize> = BTreeMap::new();
        let mut impossible = false;

        let pin = |slot: &mut Option<usize>, value: usize, impossible: &mut bool| match slot {
            None => *slot = Some(value),
            Some(existing) if *existing == value => {}
            Some(_) => *impossible = true,
        };

        for c in constraints {
            let p = c.pattern();
            if let Some(colours) = p.colouring() {
                palette.extend(colours.iter().cloned());
                for &(u, v) in p.edges() {
                    allowed_pairs.insert(pair_key(&colours[u], &colours[v]));
                }
            } else if p.vertex_count() > 0 {
                uncoloured_structure = true;
            }
            labels.extend(p.labels().keys().cloned());

            // Single-vertex patterns pin counts exactly.
            if p.vertex_count() == 1 && p.edge_count() == 0 && !p.is_labelled() {
                let required = usize::try_from(c.required()).unwrap_or(usize::MAX);
                match p.colour(0) {
                    None => pin(&mut n_pin, required, &mut impossible),
                    Some(colour) if c.mode() == CountMode::Hom => {
                        let slot = class_pins.entry(colour.to_owned()).or_insert(required);
                        if *slot != required {
                            impossible = true;
                        }
                    }
                    Some(_) => {}
                }
            }
        }

        // An uncoloured pattern with vertices counts every target vertex,
        // so witnesses may need vertices outside the pattern palette; give
        // those a filler colour that no pattern mentions.
        if !palette.is_empty() && uncoloured_structure {
            let mut filler = "_".to_owned();
            while palette.contains(&filler) {
                filler.push('_');
            }
            palette.insert(filler);
        }

        let classes = palette
            .into_iter()
            .map(|colour| {
                let pinned = class_pins.get(&colour).copied();
                (colour, pinned)
            })
            .collect();
        SearchSpace {
            classes,
            labels: labels.into_iter().collect(),
            n_pin,
            impossible,
            all_pairs_allowed: uncoloured_structure,
            allowed_pairs,
        }
    }

    fn n_allowed(&self, n: usize) -> bool {
        self.n_pin.is_none_or(|pin| pin == n)
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All plain graphs on `n` vertices, as ascending edge bitmasks over the
/// lexicographic pair order `(0,1), (0,2), …`.
pub fn all_plain_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, BruteError> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    if pairs.len() > 63 {
        return Err(BruteError::TooManySlots(pairs.len(), n));
    }
    let count: u64 = 1 << pairs.len();
    Ok((0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &pair)| pair);
        Graph::from_edges(n, edges).expect("pairs are distinct and in range")
    }))
}

/// Every labelled simple graph on `n` vertices, each exactly once, in a
/// deterministic order. With `colour_classes` given, the sizes must sum
/// to `n` and every graph carries the fixed colouring that assigns
/// classes to contiguous vertex blocks in the given order.
pub fn enumerate_graphs(
    n: usize,
    colour_classes: Option<&[(String, usize)]>,
) -> Result<Box<dyn Iterator<Item = Graph>>, BruteError> {
    let colours: Option<Vec<String>> = match colour_classes {
        None => None,
        Some(classes) => {
            let total: usize = classes.iter().map(|(_, size)| size).sum();
            if total != n {
                return Err(BruteError::ClassSizes { total, n });
            }
            Some(
                classes
                    .iter()
                    .flat_map(|(colour, size)| std::iter::repeat_n(colour.clone(), *size))
                    .collect(),
            )
        }
    };
    let plain = all_plain_graphs(n)?;
    Ok(Box::new(plain.map(move |mut g| {
        if let Some(colours) = &colours {
            g.set_colouring(colours.clone()).expect("sizes sum to n");
        }
        g
    })))
}

/// Constraint order for fail-fast checking: cheapest patterns first.
fn check_order(constraints: &[PatternConstraint]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..constraints.len()).collect();
    order.sort_by_key(|&i| {
        let p = constraints[i].pattern();
        (p.vertex_count(), p.edge_count(), i)
    });
    order
}

fn satisfies_all(
    target: &Graph,
    constraints: &[PatternConstraint],
    order: &[usize],
    budget: &mut Budget,
) -> Result<bool, CountError> {
    for &i in order {
        let c = &constraints[i];
        let actual = match c.mode() {
            CountMode::Hom => counting::count_homomorphisms(c.pattern(), target, budget)?,
            CountMode::Sub => counting::count_subgraph_copies(c.pattern(), target, budget)?,
        };
        if actual != *c.required() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compositions of `total` into `parts` non-negative summands, in
/// lexicographic order (first part varies slowest).
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; parts];
    fn rec(idx: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx + 1 == current.len() {
            current[idx] = remaining;
            out.push(current.clone());
            return;
        }
        for v in 0..=remaining {
            current[idx] = v;
            rec(idx + 1, remaining - v, current, out);
        }
    }
    rec(0, total, &mut current, &mut out);
    out
}

/// Search all candidates on exactly `n` vertices; first hit wins.
fn search_n(
    constraints: &[PatternConstraint],
    order: &[usize],
    space: &SearchSpace,
    n: usize,
    budget: &mut Budget,
) -> Result<Option<Graph>, BruteError> {
    // Candidate colourings: pinned classes are fixed, free classes share
    // the remaining vertices in every possible way.
    let pinned_total: usize = space.classes.iter().filter_map(|(_, p)| *p).sum();
    let colourings: Vec<Option<Vec<usize>>> = if space.classes.is_empty() {
        vec![None]
    } else if pinned_total > n {
        Vec::new()
    } else {
        let free_indices: Vec<usize> = space
            .classes
            .iter()
            .enumerate()
            .filter(|(_, (_, p))| p.is_none())
            .map(|(i, _)| i)
            .collect();
        compositions(n - pinned_total, free_indices.len())
            .into_iter()
            .map(|free_sizes| {
                let mut sizes: Vec<usize> =
                    space.classes.iter().map(|(_, p)| p.unwrap_or(0)).collect();
                for (slot, size) in free_indices.iter().zip(free_sizes) {
                    sizes[*slot] = size;
                }
                Some(sizes)
            })
            .collect()
    };

    for sizes in colourings {
        // Vertices are assigned to classes as contiguous blocks in class
        // order, which fixes the colour vector.
        let colour_vec: Option<Vec<String>> = sizes.as_ref().map(|sizes| {
            space
                .classes
                .iter()
                .zip(sizes)
                .flat_map(|((colour, _), &size)| std::iter::repeat_n(colour.clone(), size))
                .collect()
        });
        let colour_of = |v: usize| colour_vec.as_ref().map(|c| c[v].as_str());

        // Live edge slots under the colour-pair rule.
        let slots: Vec<(usize, usize)> = (0..n)
            .tuple_combinations()
            .filter(|&(u, v)| {
                space.all_pairs_allowed
                    || match (colour_of(u), colour_of(v)) {
                        (Some(a), Some(b)) => space.allowed_pairs.contains(&pair_key(a, b)),
                        _ => true,
                    }
            })
            .collect();
        if slots.len() > 63 {
            return Err(BruteError::TooManySlots(slots.len(), n));
        }

        let mask_count: u64 = 1 << slots.len();
        for mask in 0..mask_count {
            budget.charge(1)?;
            let mut graph = Graph::new(n);
            for (i, &(u, v)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    graph.add_edge(u, v).expect("slots are distinct pairs");
                }
            }
            if let Some(colours) = &colour_vec {
                graph
                    .set_colouring(colours.clone())
                    .expect("one colour per vertex");
            }

            if space.labels.is_empty() {
                if satisfies_all(&graph, constraints, order, budget)? {
                    return Ok(Some(graph));
                }
                continue;
            }
            // Label placements: every map from label names to vertices,
            // in ascending odometer order. (No vertices means no
            // placements, so labelled instances need n ≥ 1.)
            if n == 0 {
                continue;
            }
            let mut placement = vec![0usize; space.labels.len()];
            loop {
                budget.charge(1)?;
                let mut candidate = graph.clone();
                for (name, &v) in space.labels.iter().zip(&placement) {
                    candidate
                        .set_label(name, v)
                        .expect("labels are distinct and in range");
                }
                if satisfies_all(&candidate, constraints, order, budget)? {
                    return Ok(Some(candidate));
                }
                // Advance the odometer (last label fastest).
                let mut idx = placement.len();
                loop {
                    if idx == 0 {
                        break;
                    }
                    idx -= 1;
                    placement[idx] += 1;
                    if placement[idx] < n {
                        break;
                    }
                    placement[idx] = 0;
                }
                if placement.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Find the first graph (in the documented enumeration order) satisfying
/// every constraint, searching vertex counts `0..=bound` where `bound` is
/// the minimum of `options.n_max` and [`solution_size_bound`].
pub fn brute_solve(
    constraints: &[PatternConstraint],
    options: &BruteOptions,
) -> Result<BruteOutcome, BruteError> {
    let mut budget = Budget::new(options.step_budget);
    let bound = effective_bound(constraints, options.n_max);
    let space = SearchSpace::build(constraints);
    if space.impossible {
        return Ok(BruteOutcome {
            witness: None,
            searched_bound: bound,
        });
    }
    let order = check_order(constraints);
    for n in 0..=bound {
        if !space.n_allowed(n) {
            continue;
        }
        if let Some(witness) = search_n(constraints, &order, &space, n, &mut budget)? {
            return Ok(BruteOutcome {
                witness: Some(witness),
                searched_bound: bound,
            });
        }
    }
    Ok(BruteOutcome {
        witness: None,
        searched_bound: bound,
    })
}

/// All plain graphs on exactly `n` vertices satisfying the constraints,
/// optionally reduced to one representative per isomorphism class.
pub fn find_all_on_n(
    constraints: &[PatternConstraint],
    n: usize,
    up_to_iso: bool,
    budget: &mut Budget,
) -> Result<Vec<Graph>, BruteError> {
    let order = check_order(constraints);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for graph in all_plain_graphs(n)? {
        budget.charge(1)?;
        if !satisfies_all(&graph, constraints, &order, budget)? {
            continue;
        }
        if up_to_iso {
            let form = canonical_form(&graph)?;
            if !seen.insert(form) {
                continue;
            }
        }
        out.push(graph);
    }
    Ok(out)
}

/// Minimum adjacency bitstring of a plain graph over all vertex
/// relabellings: equal exactly for isomorphic graphs. Needs `n ≤ 11`
/// (55 bits) and is practical up to `n ≈ 8`.
pub fn canonical_form(graph: &Graph) -> Result<u64, BruteError> {
    if !graph.is_plain() {
        return Err(BruteError::NotPlain);
    }
    let n = graph.vertex_count();
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    if pairs.len() > 63 {
        return Err(BruteError::TooManySlots(pairs.len(), n));
    }
    let index: BTreeMap<(usize, usize), usize> = pairs
        .iter()
        .copied()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut best = u64::MAX;
    for perm in (0..n).permutations(n) {
        let mut mask = 0u64;
        for &(u, v) in graph.edges() {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            mask |= 1 << index[&(a, b)];
        }
        best = best.min(mask);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Manifest format
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("manifest line {line}: expected `<graph-file> <mode> <count>`")]
    BadLine { line: usize },
    #[error("manifest line {line}: unknown mode {token:?}")]
    BadMode { line: usize, token: String },
    #[error("manifest line {line}: invalid count {token:?}")]
    BadCount { line: usize, token: String },
    #[error("{file}: {source}")]
    Graph { file: String, source: ParseError },
    #[error("manifest line {line}: {source}")]
    Constraint {
        line: usize,
        source: ConstraintError,
    },
}

/// Read a constraint list from a manifest directory: a file named
/// `manifest` whose lines are `<graph-file> <mode> <count>`, with the
/// graph files living in the same directory. `#` starts a comment.
pub fn read_manifest(dir: &Path) -> Result<Vec<PatternConstraint>, ManifestError> {
    let text = std::fs::read_to_string(dir.join("manifest"))?;
    let mut constraints = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [file, mode, count] = parts[..] else {
            return Err(ManifestError::BadLine { line: line_no });
        };
        let mode: CountMode = mode.parse().map_err(|_| ManifestError::BadMode {
            line: line_no,
            token: mode.to_owned(),
        })?;
        let required: BigUint = count.parse().map_err(|_| ManifestError::BadCount {
            line: line_no,
            token: count.to_owned(),
        })?;
        let graph_text = std::fs::read_to_string(dir.join(file))?;
        let pattern = parse_graph(&graph_text).map_err(|source| ManifestError::Graph {
            file: file.to_owned(),
            source,
        })?;
        let constraint = PatternConstraint::new(pattern, mode, required).map_err(|source| {
            ManifestError::Constraint {
                line: line_no,
                source,
            }
        })?;
        constraints.push(constraint);
    }
    Ok(constraints)
}

/// Write a constraint list as a manifest directory readable by
/// [`read_manifest`]. Pattern files are named `pattern_000.graph`,
/// `pattern_001.graph`, … in constraint order.
pub fn write_manifest(dir: &Path, constraints: &[PatternConstraint]) -> Result<(), ManifestError> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = String::new();
    for (i, c) in constraints.iter().enumerate() {
        let file = format!("pattern_{i:03}.graph");
        std::fs::write(dir.join(&file), serialize_graph(c.pattern()))?;
        manifest.push_str(&format!("{file} {} {}\n", c.mode().as_str(), c.required()));
    }
    std::fs::write(dir.join("manifest"), manifest)?;
    Ok(())
}

// ---------------------------------------------------------------------------
