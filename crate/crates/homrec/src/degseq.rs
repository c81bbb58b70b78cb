//! Degree sequences: the Erdős–Gallai graphicality test, Havel–Hakimi
//! realisation, and the single-vertex reduction step used by the star
//! solver's correctness arguments.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

/// A multiset of vertex degrees, stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Sorts the entries non-increasing; any input order is accepted.
    pub fn new(mut entries: Vec<usize>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(entries)
    }

    /// Entries, non-increasing.
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all degrees.
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    /// Parse a comma-separated list such as `3,3,2,2,0`. The empty string
    /// denotes the empty sequence.
    pub fn parse(text: &str) -> Result<Self, ParseSeqError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(DegreeSequence::new(Vec::new()));
        }
        let mut entries = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            entries.push(token.parse::<usize>().map_err(|_| ParseSeqError {
                token: token.to_owned(),
            })?);
        }
        Ok(DegreeSequence::new(entries))
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid degree {token:?} in sequence")]
pub struct ParseSeqError {
    pub token: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("degree sequence is not graphic")]
pub struct NotGraphic;

/// Preconditions of [`reduction_step`] that the input failed.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepError {
    #[error("reduction step needs at least two entries")]
    TooShort,
    #[error("reduction step needs all entries positive")]
    ZeroEntry,
    #[error("reduction step needs the maximum entry at most n - 1")]
    MaxDegreeTooLarge,
}

/// Erdős–Gallai test: a non-increasing sequence `d_1 ≥ … ≥ d_n` is the
/// degree sequence of some simple graph iff the degree sum is even and for
/// every `k ∈ [1, n]`:
///
/// ```text
/// Σ_{i=1..k} d_i  ≤  k(k-1) + Σ_{i=k+1..n} min(d_i, k)
/// ```
///
/// Every `k` is checked (no early-exit shortcuts beyond a failed
/// inequality).
pub fn is_graphic(seq: &DegreeSequence) -> bool {
    let d = seq.entries();
    let n = d.len();
    if d.iter().map(|&x| x as u128).sum::<u128>() % 2 != 0 {
        return false;
    }
    let mut prefix: u128 = 0;
    for k in 1..=n {
        prefix += d[k - 1] as u128;
        let mut rhs = (k as u128) * (k as u128 - 1);
        for &di in &d[k..] {
            rhs += di.min(k) as u128;
        }
        if prefix > rhs {
            return false;
        }
    }
    true
}

/// Build a concrete plain graph with the given degree sequence, or fail if
/// the sequence is not graphic.
///
/// Vertex `i` of the result gets the `i`-th entry of the (non-increasing)
/// sequence as its degree. The construction is the Havel–Hakimi greedy:
/// repeatedly take the vertex with the largest remaining demand (ties by
/// lowest index) and connect it to the next-largest demands (same tie
/// rule). This is deterministic, so equal inputs give identical graphs.
pub fn havel_hakimi_realize(seq: &DegreeSequence) -> Result<Graph, NotGraphic> {
    if !is_graphic(seq) {
        return Err(NotGraphic);
    }
    let n = seq.len();
    let mut graph = Graph::new(n);
    let mut residual: Vec<usize> = seq.entries().to_vec();

    loop {
        // Order vertices by (residual demand desc, index asc).
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (usize::MAX - residual[v], v));
        let Some(&centre) = order.first() else { break };
        let demand = residual[centre];
        if demand == 0 {
            break;
        }
        // Once a vertex has been a centre its residual is 0 and it can
        // never be selected again, so no duplicate edges arise.
        for &other in order[1..=demand].iter() {
            debug_assert!(residual[other] > 0, "graphic sequences never run dry here");
            graph
                .add_edge(centre, other)
                .expect("greedy never repeats an edge");
            residual[other] -= 1;
        }
        residual[centre] = 0;
    }
    debug_assert_eq!(
        graph.degrees(),
        seq.entries(),
        "realisation hits every degree"
    );
    Ok(graph)
}

/// One peeling step: for a positive non-increasing sequence
/// `(d_1, …, d_n)` with `n ≥ 2` and `d_1 ≤ n - 1`, produce
///
/// ```text
/// (d_2 - 1, …, d_n - 1)  merged with  (n - 1 - d_1) extra 1-entries
/// ```
///
/// sorted non-increasing. The original sequence is graphic iff the reduced
/// one is. The merge is a stable splice of the 1-block into the decremented
/// tail rather than a full sort.
pub fn reduction_step(seq: &DegreeSequence) -> Result<DegreeSequence, StepError> {
    let d = seq.entries();
    let n = d.len();
    if n < 2 {
        return Err(StepError::TooShort);
    }
    if d[n - 1] == 0 {
        return Err(StepError::ZeroEntry);
    }
    if d[0] > n - 1 {
        return Err(StepError::MaxDegreeTooLarge);
    }
    let ones = n - 1 - d[0];
    let decremented: Vec<usize> = d[1..].iter().map(|&x| x - 1).collect();
    // `decremented` is non-increasing with entries ≥ 0; splice the 1-block
    // in front of its zero suffix.
    let split = decremented.partition_point(|&x| x >= 1);
    let mut out = Vec::with_capacity(decremented.len() + ones);
    out.extend_from_slice(&decremented[..split]);
    out.extend(std::iter::repeat_n(1, ones));
    out.extend_from_slice(&decremented[split..]);
    debug_assert!(
        out.windows(2).all(|w| w[0] >= w[1]),
        "splice keeps the order"
    );
    Ok(DegreeSequence(out))
}

// ---------------------------------------------------------------------------
