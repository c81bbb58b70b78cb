//! Exact homomorphism and subgraph-copy counting.
//!
//! Both counters are exact and budgeted: they either return the true count
//! or fail with [`CountError::BudgetExceeded`], never an approximation.
//! Plain star patterns take a fast path through degree arithmetic
//! (`hom(S_j, G) = Σ_v deg(v)^j`, `sub(S_j, G) = Σ_v C(deg(v), j)` for
//! `j ≠ 1`, `sub(S_1, G) = |E|`), which keeps star-shaped constraint checks
//! cheap even on large targets.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

// ---------------------------------------------------------------------------
// Budget
// ---------------------------------------------------------------------------

/// Step budget shared across counting calls.
///
/// One step is one elementary unit of search work (a candidate image, an
/// enumerated subset, a tested permutation). Exceeding the budget aborts
/// the computation with an error rather than returning a partial count.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

/// Default step budget, also used by the brute-force solver.
pub const DEFAULT_STEP_BUDGET: u64 = 100_000_000;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub(crate) fn charge(&mut self, steps: u64) -> Result<(), CountError> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            Err(CountError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_STEP_BUDGET)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("step budget of {limit} exceeded; result would be exact or nothing")]
    BudgetExceeded { limit: u64 },
    #[error("subgraph-copy counting is defined for plain patterns only")]
    SubPatternNotPlain,
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

/// Number of homomorphisms from `pattern` to `target`.
///
/// A homomorphism maps pattern vertices to target vertices so that edges go
/// to edges. A coloured pattern vertex must land on a target vertex of the
/// same colour (a plain pattern ignores target colours entirely). A pattern
/// vertex carrying label `x` must land on the target's `x`-vertex; if the
/// target has no such label the count is 0.
pub fn count_homomorphisms(
    pattern: &Graph,
    target: &Graph,
    budget: &mut Budget,
) -> Result<BigUint, CountError> {
    if let Some(j) = pattern.star_leaves() {
        budget.charge(target.vertex_count() as u64 + 1)?;
        return Ok(hom_star_total(j, target));
    }

    let k = pattern.vertex_count();
    if k == 0 {
        budget.charge(1)?;
        return Ok(BigUint::one());
    }

    // Candidate images per pattern vertex, before adjacency filtering.
    let mut candidates: Vec<Vec<Vertex>> = Vec::with_capacity(k);
    for u in 0..k {
        let mut pinned: Option<Vertex> = None;
        let mut dead = false;
        for (name, &pu) in pattern.labels() {
            if pu != u {
                continue;
            }
            match target.labels().get(name) {
                Some(&tv) => match pinned {
                    None => pinned = Some(tv),
                    Some(prev) if prev == tv => {}
                    Some(_) => dead = true,
                },
                None => dead = true,
            }
        }
        if dead {
            return Ok(BigUint::zero());
        }
        let colour_ok = |v: Vertex| match pattern.colour(u) {
            None => true,
            Some(c) => target.colour(v) == Some(c),
        };
        let cand: Vec<Vertex> = match pinned {
            Some(v) => colour_ok(v).then_some(v).into_iter().collect(),
            None => (0..target.vertex_count())
                .filter(|&v| colour_ok(v))
                .collect(),
        };
        if cand.is_empty() {
            return Ok(BigUint::zero());
        }
        candidates.push(cand);
    }

    // Backtracking over pattern vertices in index order. For vertex u only
    // the pattern edges into already-assigned vertices need checking.
    let mut earlier_neighbours: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    for &(a, b) in pattern.edges() {
        earlier_neighbours[b].push(a); // a < b by normalisation
    }

    let mut assignment = vec![0 as Vertex; k];
    let mut total: u128 = 0;
    count_hom_rec(
        0,
        &candidates,
        &earlier_neighbours,
        target,
        &mut assignment,
        &mut total,
        budget,
    )?;
    Ok(BigUint::from(total))
}

fn count_hom_rec(
    u: usize,
    candidates: &[Vec<Vertex>],
    earlier_neighbours: &[Vec<Vertex>],
    target: &Graph,
    assignment: &mut [Vertex],
    total: &mut u128,
    budget: &mut Budget,
) -> Result<(), CountError> {
    if u == candidates.len() {
        // Each completed map costs at least one step, so `total` stays
        // within the (u64) budget and cannot overflow u128.
        *total += 1;
        return Ok(());
    }
    for &v in &candidates[u] {
        budget.charge(1)?;
        if earlier_neighbours[u]
            .iter()
            .all(|&w| target.has_edge(assignment[w], v))
        {
            assignment[u] = v;
            count_hom_rec(
                u + 1,
                candidates,
                earlier_neighbours,
                target,
                assignment,
                total,
                budget,
            )?;
        }
    }
    Ok(())
}

fn hom_star_total(leaves: usize, target: &Graph) -> BigUint {
    target
        .degrees()
        .into_iter()
        .map(|d| BigUint::from(d).pow(leaves as u32))
        .sum()
}

// ---------------------------------------------------------------------------
// Subgraph copies
// ---------------------------------------------------------------------------

/// Number of subgraphs of `target` isomorphic to `pattern`.
///
/// Only defined for plain patterns; colours and labels on the target are
/// ignored (copies are counted purely structurally).
pub fn count_subgraph_copies(
    pattern: &Graph,
    target: &Graph,
    budget: &mut Budget,
) -> Result<BigUint, CountError> {
    if !pattern.is_plain() {
        return Err(CountError::SubPatternNotPlain);
    }
    if let Some(j) = pattern.star_leaves() {
        budget.charge(target.vertex_count() as u64 + 1)?;
        return Ok(sub_star_total(j, target));
    }

    let k = pattern.vertex_count();
    let n = target.vertex_count();
    if k > n {
        budget.charge(1)?;
        return Ok(BigUint::zero());
    }
    let want_edges = pattern.edge_count();
    let mut pattern_degrees: Vec<usize> = pattern.degrees();
    pattern_degrees.sort_unstable();

    let mut total: u128 = 0;
    for subset in (0..n).combinations(k) {
        budget.charge(1)?;
        // Target edges inside the subset, in local coordinates.
        let local: Vec<(usize, usize)> = subset
            .iter()
            .enumerate()
            .tuple_combinations()
            .filter(|((_, &u), (_, &v))| target.has_edge(u, v))
            .map(|((i, _), (j, _))| (i, j))
            .collect();
        if local.len() < want_edges {
            continue;
        }
        for chosen in local.iter().copied().combinations(want_edges) {
            budget.charge(1)?;
            if is_isomorphic_small(k, &pattern_degrees, pattern.edges(), &chosen, budget)? {
                total += 1;
            }
        }
    }
    Ok(BigUint::from(total))
}

/// Isomorphism test between `pattern` and the graph on `k` vertices with
/// edge list `chosen`, by degree pre-check plus permutation search.
fn is_isomorphic_small(
    k: usize,
    pattern_degrees_sorted: &[usize],
    pattern_edges: &[(usize, usize)],
    chosen: &[(usize, usize)],
    budget: &mut Budget,
) -> Result<bool, CountError> {
    let mut degrees = vec![0usize; k];
    let mut adj = vec![false; k * k];
    for &(a, b) in chosen {
        degrees[a] += 1;
        degrees[b] += 1;
        adj[a * k + b] = true;
        adj[b * k + a] = true;
    }
    degrees.sort_unstable();
    if degrees != pattern_degrees_sorted {
        return Ok(false);
    }
    for perm in (0..k).permutations(k) {
        budget.charge(1)?;
        if pattern_edges
            .iter()
            .all(|&(a, b)| adj[perm[a] * k + perm[b]])
        {
            // Both graphs have the same edge count, so covering every
            // pattern edge makes the map an isomorphism.
            return Ok(true);
        }
    }
    Ok(false)
}

fn sub_star_total(leaves: usize, target: &Graph) -> BigUint {
    match leaves {
        0 => BigUint::from(target.vertex_count()),
        1 => BigUint::from(target.edge_count()),
        j => target
            .degrees()
            .into_iter()
            .map(|d| num_integer::binomial(BigUint::from(d), BigUint::from(j)))
            .sum(),
    }
}

// ---------------------------------------------------------------------------
