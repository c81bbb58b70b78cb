//! Reconstruction of a graph from its star counts.
//!
//! The solver answers: is there a graph whose counts of the stars
//! `S_0 … S_ell` match a given vector, and if so, which one? Feasibility is
//! decided by a memoised recursion over abstracted degree sequences, a
//! witness degree sequence is recovered by walking the recorded choices,
//! and a concrete graph is realised from it. Every returned graph is
//! re-verified against the requested counts before it leaves this module.
//!
//! # States
//!
//! A state `(s_0, …, s_ell; m, x)` asks for a degree multiset
//! `d_1 ≥ … ≥ d_{s_0}` with all `d_i ≤ m` such that some graph with degree
//! sequence `(d_1, …, d_{s_0}, 1^x)` has star-copy counts
//!
//! ```text
//! sub(S_0) = s_0 + x,   2·sub(S_1) = s_1 + x,   sub(S_j) = s_j  (j ≥ 2).
//! ```
//!
//! Peeling a top vertex of degree `d` when `n_1` of the `s_0` slots carry
//! positive degree leads to the child state
//!
//! ```text
//! s'_0 = n_1 - 1,   s'_j = s_j - C(d, j) - s'_{j-1},
//! m' = d - 1,       x' = x + (n_1 - 1) - d,
//! ```
//!
//! valid when `d ≤ n_1 - 1 + x` and no `s'_j` goes negative. A state is
//! feasible iff a base case applies or some child is feasible; candidates
//! are explored with `d` descending, then `n_1` descending, and the first
//! feasible child is recorded, which makes witnesses deterministic.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::counting::Budget;
use crate::degseq::{self, DegreeSequence};
use crate::graph::{check_constraints, CountMode, Graph, PatternConstraint};
use crate::stars::{self, StarCountVector};

// ---------------------------------------------------------------------------
// States and the memo table
// ---------------------------------------------------------------------------

/// A feasibility state. `s` has one slot per star (`s.len() = ell + 1`,
/// `ell ≥ 1`), `m` caps the remaining degrees, `x` counts pendant
/// 1-entries accumulated by peeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DpKey {
    pub s: Vec<u64>,
    pub m: u64,
    pub x: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct DpEntry {
    feasible: bool,
    /// The first feasible `(d, n_1)` choice, absent for base cases.
    witness: Option<(u64, u64)>,
}

/// Memo table shared across solver calls, with lookup statistics.
#[derive(Debug, Default)]
pub struct DpTable {
    memo: HashMap<DpKey, DpEntry>,
    lookups: u64,
    hits: u64,
}

/// Statistics of a solve: memo traffic and table size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    pub lookups: u64,
    pub hits: u64,
    pub entries: u64,
}

impl DpStats {
    pub fn hit_rate(&self) -> f64 {
        if self.lookups == 0 {
            0.0
        } else {
            self.hits as f64 / self.lookups as f64
        }
    }
}

impl DpTable {
    pub fn stats(&self) -> DpStats {
        DpStats {
            lookups: self.lookups,
            hits: self.hits,
            entries: self.memo.len() as u64,
        }
    }
}

/// `C(d, j)`, capped at `u128::MAX` on overflow. The cap is sound here:
/// a capped value only ever makes a child state fail its non-negativity
/// check, which is what an astronomically large true value would do too.
fn binomial_capped(d: u64, j: usize) -> u128 {
    let j = j as u64;
    if j > d {
        return 0;
    }
    let j = j.min(d - j);
    let mut result: u128 = 1;
    for i in 1..=j {
        match result.checked_mul((d - j + i) as u128) {
            Some(v) => result = v / i as u128,
            None => return u128::MAX,
        }
    }
    result
}

/// The child state for choice `(d, n_1)`, or `None` if any derived slot
/// would go negative (or the arithmetic leaves u64 range, which only
/// happens past any realisable instance).
fn child_key(key: &DpKey, d: u64, n1: u64) -> Option<DpKey> {
    let ell = key.s.len() - 1;
    let mut s = Vec::with_capacity(ell + 1);
    s.push(n1 - 1);
    let mut prev = (n1 - 1) as u128;
    for j in 1..=ell {
        let need = binomial_capped(d, j).saturating_add(prev);
        let sj = key.s[j] as u128;
        if sj < need {
            return None;
        }
        let next = sj - need;
        s.push(next as u64);
        prev = next;
    }
    let x = key.x.checked_add(n1 - 1)?.checked_sub(d)?;
    let child = DpKey { s, m: d - 1, x };
    debug_assert_eq!(
        (child.s[1] + child.x) % 2,
        (key.s[1] + key.x) % 2,
        "peeling a degree changes s_1 + x by 2d"
    );
    Some(child)
}

/// Base-case value of a state, if one applies.
///
/// * `s_1 = 0`: no degree mass is left, so every higher count must be 0.
/// * `s_0 = 1`: one slot remains; with `s_1 ≥ 1` the only option is a
///   single vertex holding one pendant edge into the 1-entries, which
///   needs `s_1 = 1`, no higher stars, `m ≥ 1` and `x ≥ 1`.
fn base_value(key: &DpKey) -> Option<bool> {
    let s = &key.s;
    let tail_zero = s[2..].iter().all(|&v| v == 0);
    if s[1] == 0 {
        return Some(tail_zero);
    }
    if s[0] == 1 {
        return Some(s[1] == 1 && tail_zero && key.m >= 1 && key.x >= 1);
    }
    None
}

/// Look a state up in the memo, or settle it directly if it is a base
/// case. `None` means it needs expansion.
fn resolve_immediately(key: &DpKey, table: &mut DpTable) -> Option<bool> {
    table.lookups += 1;
    if let Some(entry) = table.memo.get(key) {
        table.hits += 1;
        return Some(entry.feasible);
    }
    let value = base_value(key)?;
    table.memo.insert(
        key.clone(),
        DpEntry {
            feasible: value,
            witness: None,
        },
    );
    Some(value)
}

/// One in-flight state: a cursor over its `(d, n_1)` candidates plus the
/// child currently under evaluation.
struct Frame {
    key: DpKey,
    d: u64,
    /// `None` right after moving to a new `d` (upper bound not computed yet).
    n1: Option<u64>,
    awaiting: Option<(u64, u64)>,
}

impl Frame {
    fn new(key: DpKey) -> Self {
        let d = key.m.min(key.s[1]);
        Frame {
            key,
            d,
            n1: None,
            awaiting: None,
        }
    }

    /// Advance the cursor to the next candidate with a valid child state.
    fn next_candidate(&mut self) -> Option<(u64, u64, DpKey)> {
        let (s0, s1, x) = (self.key.s[0], self.key.s[1], self.key.x);
        while self.d >= 1 {
            let d = self.d;
            // Realisability needs d ≤ n_1 - 1 + x; s'_1 ≥ 0 needs
            // n_1 ≤ s_1 - d + 1. Both prunes are exact, so skipping the
            // excluded candidates never changes the first feasible child.
            let lo = 1.max(d.saturating_add(1).saturating_sub(x));
            let hi = s0.min(s1 - d + 1);
            let mut n1 = self.n1.unwrap_or(hi);
            while n1 >= lo && n1 >= 1 {
                self.n1 = Some(n1 - 1);
                if let Some(child) = child_key(&self.key, d, n1) {
                    return Some((d, n1, child));
                }
                n1 -= 1;
            }
            self.d -= 1;
            self.n1 = None;
        }
        None
    }
}

/// Decide feasibility of `root`, filling `table` with every state the
/// search settles (including the first feasible choice of non-base
/// states, for witness recovery).
pub fn dp_feasible(root: &DpKey, table: &mut DpTable) -> bool {
    assert!(root.s.len() >= 2, "states carry at least slots 0 and 1");
    if let Some(value) = resolve_immediately(root, table) {
        return value;
    }

    enum Action {
        Pop,
        Push(DpKey),
    }

    let mut stack = vec![Frame::new(root.clone())];
    while let Some(top) = stack.last_mut() {
        let action = 'act: {
            if let Some((d, n1)) = top.awaiting.take() {
                let child = child_key(&top.key, d, n1).expect("awaited child was valid");
                let feasible = table
                    .memo
                    .get(&child)
                    .expect("awaited child is settled")
                    .feasible;
                if feasible {
                    table.memo.insert(
                        top.key.clone(),
                        DpEntry {
                            feasible: true,
                            witness: Some((d, n1)),
                        },
                    );
                    break 'act Action::Pop;
                }
            }
            loop {
                match top.next_candidate() {
                    None => {
                        table.memo.insert(
                            top.key.clone(),
                            DpEntry {
                                feasible: false,
                                witness: None,
                            },
                        );
                        break 'act Action::Pop;
                    }
                    Some((d, n1, child)) => match resolve_immediately(&child, table) {
                        Some(true) => {
                            table.memo.insert(
                                top.key.clone(),
                                DpEntry {
                                    feasible: true,
                                    witness: Some((d, n1)),
                                },
                            );
                            break 'act Action::Pop;
                        }
                        Some(false) => continue,
                        None => {
                            top.awaiting = Some((d, n1));
                            break 'act Action::Push(child);
                        }
                    },
                }
            }
        };
        match action {
            Action::Pop => {
                stack.pop();
            }
            Action::Push(child) => stack.push(Frame::new(child)),
        }
    }

    table
        .memo
        .get(root)
        .expect("root settled by the search")
        .feasible
}

// ---------------------------------------------------------------------------
// Witness recovery
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("count for star {slot} exceeds the solver's 64-bit state range")]
    TooLarge { slot: usize },
    #[error("count for star {slot} is unspecified; only the partial solver accepts gaps")]
    UnspecifiedSlot { slot: usize },
    #[error("instance has mode {got}, expected {expected}")]
    WrongMode {
        expected: &'static str,
        got: &'static str,
    },
    #[error("partially specified instances are only supported in hom mode")]
    PartialSubUnsupported,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn internal(msg: impl Into<String>) -> SolveError {
    SolveError::Internal(msg.into())
}

/// Recover the witness degree sequence of a feasible root from the
/// recorded choices, then validate it: right length, graphic, and exactly
/// the root's star counts. Any failure is an internal error.
pub fn backtrack_degree_sequence(
    root: &DpKey,
    table: &DpTable,
) -> Result<DegreeSequence, SolveError> {
    let mut degrees: Vec<usize> = Vec::new();
    let mut key = root.clone();
    let mut depth: u64 = 1;
    loop {
        let entry = table
            .memo
            .get(&key)
            .filter(|e| e.feasible)
            .ok_or_else(|| internal("walked into an unsettled or infeasible state"))?;
        let original = |residual: u64| (residual + depth - 1) as usize;
        if key.s[1] == 0 {
            // All remaining slots are exhausted vertices.
            if key.s[2..].iter().any(|&v| v != 0) {
                return Err(internal("exhausted state with positive higher counts"));
            }
            degrees.extend(std::iter::repeat_n(original(0), key.s[0] as usize));
            break;
        }
        if key.s[0] == 1 {
            // Single slot holding one pendant edge.
            if key.s[1] != 1 || key.s[2..].iter().any(|&v| v != 0) {
                return Err(internal("single-slot state is feasible only with s_1 = 1"));
            }
            degrees.push(original(1));
            break;
        }
        let (d, n1) = entry
            .witness
            .ok_or_else(|| internal("non-base feasible state lacks a recorded choice"))?;
        // The peeled vertex, plus the slots that reached degree 0 here.
        degrees.push(original(d));
        degrees.extend(std::iter::repeat_n(original(0), (key.s[0] - n1) as usize));
        key = child_key(&key, d, n1)
            .ok_or_else(|| internal("recorded choice no longer yields a valid child"))?;
        depth += 1;
    }

    if degrees.len() as u64 != root.s[0] {
        return Err(internal(
            "witness length differs from the requested vertex count",
        ));
    }
    let seq = DegreeSequence::new(degrees);
    if !degseq::is_graphic(&seq) {
        return Err(internal("witness degree sequence is not graphic"));
    }
    let ell = root.s.len() - 1;
    if !root.s[1].is_multiple_of(2) {
        return Err(internal(
            "root slot 1 must be even (it is twice the edge count)",
        ));
    }
    let counts = stars::star_counts_of_degseq(&seq, ell, CountMode::Sub).counts();
    let expected: Vec<BigUint> = root
        .s
        .iter()
        .enumerate()
        .map(|(j, &v)| BigUint::from(if j == 1 { v / 2 } else { v }))
        .collect();
    if counts != expected {
        return Err(internal(
            "witness degree sequence misses the requested star counts",
        ));
    }
    Ok(seq)
}

// ---------------------------------------------------------------------------
// Solving star instances
// ---------------------------------------------------------------------------

/// A solved instance: the witness (absent when infeasible) plus solver
/// statistics.
#[derive(Debug)]
pub struct SolveOutcome {
    pub witness: Option<Witness>,
    pub stats: DpStats,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub graph: Graph,
    pub degrees: DegreeSequence,
}

impl SolveOutcome {
    fn infeasible(stats: DpStats) -> Self {
        SolveOutcome {
            witness: None,
            stats,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.witness.is_some()
    }
}

fn to_u64(value: &BigUint, slot: usize) -> Result<u64, SolveError> {
    u64::try_from(value).map_err(|_| SolveError::TooLarge { slot })
}

fn require_fully_specified(vector: &StarCountVector) -> Result<Vec<BigUint>, SolveError> {
    for (j, slot) in vector.slots().iter().enumerate() {
        if slot.is_none() {
            return Err(SolveError::UnspecifiedSlot { slot: j });
        }
    }
    Ok(vector.counts())
}

fn require_mode(vector: &StarCountVector, expected: CountMode) -> Result<(), SolveError> {
    if vector.mode() != expected {
        return Err(SolveError::WrongMode {
            expected: expected.as_str(),
            got: vector.mode().as_str(),
        });
    }
    Ok(())
}

/// Star constraints equivalent to the vector, for re-verification.
fn star_constraints(mode: CountMode, counts: &[BigUint]) -> Vec<PatternConstraint> {
    counts
        .iter()
        .enumerate()
        .map(|(j, c)| match mode {
            CountMode::Hom => PatternConstraint::hom(Graph::star(j), c.clone()),
            CountMode::Sub => PatternConstraint::sub(Graph::star(j), c.clone()),
        })
        .collect()
}

fn verify_witness(graph: &Graph, mode: CountMode, counts: &[BigUint]) -> Result<(), SolveError> {
    let constraints = star_constraints(mode, counts);
    let report = check_constraints(graph, &constraints, &mut Budget::default())
        .map_err(|e| internal(format!("verification counting failed: {e}")))?;
    if report.all_satisfied() {
        Ok(())
    } else {
        Err(internal("constructed witness fails re-verification"))
    }
}

/// Solve a fully specified subgraph-copy instance; see [`solve_star_sub`].
/// The memo `table` may be shared across calls to reuse settled states.
pub fn solve_star_sub_with_table(
    vector: &StarCountVector,
    table: &mut DpTable,
) -> Result<SolveOutcome, SolveError> {
    require_mode(vector, CountMode::Sub)?;
    let t = require_fully_specified(vector)?;
    let ell = vector.ell();
    let n = to_u64(&t[0], 0)?;

    let build_witness =
        |seq: &DegreeSequence, stats: DpStats| -> Result<SolveOutcome, SolveError> {
            let graph = degseq::havel_hakimi_realize(seq)
                .map_err(|_| internal("validated witness sequence is not graphic"))?;
            verify_witness(&graph, CountMode::Sub, &t)?;
            Ok(SolveOutcome {
                witness: Some(Witness {
                    graph,
                    degrees: seq.clone(),
                }),
                stats,
            })
        };

    // Degenerate shapes that need no search: no stars beyond S_0, or no
    // vertices at all.
    if ell == 0 {
        let seq = DegreeSequence::new(vec![0; n as usize]);
        return build_witness(&seq, table.stats());
    }
    if n == 0 {
        return if t[1..].iter().all(Zero::is_zero) {
            build_witness(&DegreeSequence::new(Vec::new()), table.stats())
        } else {
            Ok(SolveOutcome::infeasible(table.stats()))
        };
    }

    let mut s = Vec::with_capacity(ell + 1);
    s.push(n);
    let twice = &t[1] * 2u32;
    s.push(to_u64(&twice, 1)?);
    for (j, tj) in t.iter().enumerate().skip(2) {
        s.push(to_u64(tj, j)?);
    }
    let root = DpKey { s, m: n - 1, x: 0 };

    if !dp_feasible(&root, table) {
        return Ok(SolveOutcome::infeasible(table.stats()));
    }
    let seq = backtrack_degree_sequence(&root, table)?;
    build_witness(&seq, table.stats())
}

/// Find a graph with exactly the requested subgraph-copy star counts.
///
/// Feasible instances yield a verified witness graph together with its
/// degree sequence; infeasible ones yield `witness: None`. Witnesses are
/// deterministic in the instance.
pub fn solve_star_sub(vector: &StarCountVector) -> Result<SolveOutcome, SolveError> {
    solve_star_sub_with_table(vector, &mut DpTable::default())
}

/// Solve a fully specified homomorphism instance; see [`solve_star_hom`].
pub fn solve_star_hom_with_table(
    vector: &StarCountVector,
    table: &mut DpTable,
) -> Result<SolveOutcome, SolveError> {
    require_mode(vector, CountMode::Hom)?;
    let h = require_fully_specified(vector)?;
    let sub_vector = match stars::hom_to_sub(vector) {
        Ok(v) => v,
        // Arithmetically impossible vectors have no witness at all.
        Err(_) => return Ok(SolveOutcome::infeasible(table.stats())),
    };
    let outcome = solve_star_sub_with_table(&sub_vector, table)?;
    if let Some(witness) = &outcome.witness {
        verify_witness(&witness.graph, CountMode::Hom, &h)?;
    }
    Ok(outcome)
}

/// Find a graph with exactly the requested homomorphism star counts.
///
/// The vector is converted to its unique candidate subgraph-copy vector
/// (rejection there means infeasible) and solved; witnesses are verified
/// against the homomorphism counts before being returned.
pub fn solve_star_hom(vector: &StarCountVector) -> Result<SolveOutcome, SolveError> {
    solve_star_hom_with_table(vector, &mut DpTable::default())
}

/// Find a graph matching a partially specified homomorphism vector.
///
/// Unspecified slots are existentially quantified. Candidate completions
/// are enumerated using the fact that `hom(S_1) ≤ hom(S_2) ≤ …` for every
/// graph (degrees contribute `d^j ≤ d^{j+1}` once `j ≥ 1`), so an
/// unspecified slot ranges from its predecessor's value up to the nearest
/// specified slot above. An unspecified slot 0 ranges over `[0, hom(S_1)]`
/// innermost — a graph can always shed isolated vertices, so `n ≤ Σ deg`
/// holds for some witness whenever any exists. Completions are tried in
/// ascending lexicographic order (slot 0 last) and the first feasible one
/// wins.
pub fn solve_star_partial(vector: &StarCountVector) -> Result<SolveOutcome, SolveError> {
    require_mode(vector, CountMode::Hom).map_err(|e| match e {
        SolveError::WrongMode { .. } => SolveError::PartialSubUnsupported,
        other => other,
    })?;
    if vector.is_fully_specified() {
        return solve_star_hom(vector);
    }
    let ell = vector.ell();
    let slots = vector.slots();

    // u64 working copies of the specified counts. (Enumerating completions
    // below a count that overflows u64 is hopeless anyway.)
    let mut specified: Vec<Option<u64>> = Vec::with_capacity(ell + 1);
    for (j, slot) in slots.iter().enumerate() {
        specified.push(match slot {
            Some(v) => Some(to_u64(v, j)?),
            None => None,
        });
    }

    // For each slot, the value of the nearest specified slot at or above
    // it (exists for j ≥ 1 because slot ell is specified).
    let mut cap_above = vec![0u64; ell + 1];
    let mut running = None;
    for j in (1..=ell).rev() {
        if let Some(v) = specified[j] {
            running = Some(v);
        }
        cap_above[j] = running.expect("slot ell is specified");
    }

    let mut table = DpTable::default();
    let mut current: Vec<Option<u64>> = specified.clone();

    fn attempt(
        current: &[Option<u64>],
        table: &mut DpTable,
    ) -> Result<Option<SolveOutcome>, SolveError> {
        let counts: Vec<BigUint> = current
            .iter()
            .map(|v| BigUint::from(v.expect("completion is total")))
            .collect();
        let candidate = StarCountVector::specified(CountMode::Hom, counts);
        let outcome = solve_star_hom_with_table(&candidate, table)?;
        Ok(outcome.is_feasible().then_some(outcome))
    }

    /// Depth-first completion of slots `j..`, low values first.
    fn search(
        j: usize,
        current: &mut Vec<Option<u64>>,
        specified: &[Option<u64>],
        cap_above: &[u64],
        table: &mut DpTable,
    ) -> Result<Option<SolveOutcome>, SolveError> {
        let ell = current.len() - 1;
        // Locate the next unspecified slot among 1..=ell.
        let mut j = j;
        while j <= ell && specified[j].is_some() {
            // A specified slot must respect the monotone chain.
            if j >= 2 {
                if let (Some(prev), Some(here)) = (current[j - 1], current[j]) {
                    if prev > here {
                        return Ok(None);
                    }
                }
            }
            j += 1;
        }
        if j > ell {
            // All of 1..=ell fixed; handle slot 0 last.
            if specified[0].is_some() {
                return attempt(current, table);
            }
            let h1 = current[1].expect("slot 1 settled");
            for n in 0..=h1 {
                current[0] = Some(n);
                if let Some(outcome) = attempt(current, table)? {
                    return Ok(Some(outcome));
                }
            }
            current[0] = None;
            return Ok(None);
        }
        let lo = if j >= 2 {
            current[j - 1].expect("previous slot settled")
        } else {
            0
        };
        let hi = cap_above[j];
        for v in lo..=hi {
            // Slot 1 is twice the edge count; odd values can never work.
            if j == 1 && v % 2 != 0 {
                continue;
            }
            current[j] = Some(v);
            if let Some(outcome) = search(j + 1, current, specified, cap_above, table)? {
                return Ok(Some(outcome));
            }
        }
        current[j] = None;
        Ok(None)
    }

    match search(1, &mut current, &specified, &cap_above, &mut table)? {
        Some(outcome) => Ok(outcome),
        None => Ok(SolveOutcome::infeasible(table.stats())),
    }
}

// ---------------------------------------------------------------------------
// Star instance files
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StarFileError {
    #[error("line {0}: expected `mode hom` or `mode sub`")]
    BadMode(usize),
    #[error("line {0}: duplicate `mode` directive")]
    DuplicateMode(usize),
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: expected `star <index> <count>`")]
    BadStar { line: usize },
    #[error("missing `mode` directive")]
    MissingMode,
    #[error("no star constraints given")]
    NoConstraints,
}

/// Parse a star instance file: a `mode hom|sub` line plus one
/// `star <index> <count>` line per constrained star (any star not listed
/// is unspecified). `#` starts a comment.
pub fn parse_star_file(text: &str) -> Result<(CountMode, Vec<(usize, BigUint)>), StarFileError> {
    let mut mode: Option<CountMode> = None;
    let mut pairs: Vec<(usize, BigUint)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "mode" => {
                if mode.is_some() {
                    return Err(StarFileError::DuplicateMode(line_no));
                }
                mode = Some(
                    parts
                        .next()
                        .and_then(|m| m.parse().ok())
                        .ok_or(StarFileError::BadMode(line_no))?,
                );
                if parts.next().is_some() {
                    return Err(StarFileError::BadMode(line_no));
                }
            }
            "star" => {
                let index = parts.next().and_then(|t| t.parse::<usize>().ok());
                let count = parts.next().and_then(|t| t.parse::<BigUint>().ok());
                match (index, count, parts.next()) {
                    (Some(i), Some(c), None) => pairs.push((i, c)),
                    _ => return Err(StarFileError::BadStar { line: line_no }),
                }
            }
            other => {
                return Err(StarFileError::UnknownDirective {
                    line: line_no,
                    directive: other.to_owned(),
                })
            }
        }
    }
    let mode = mode.ok_or(StarFileError::MissingMode)?;
    if pairs.is_empty() {
        return Err(StarFileError::NoConstraints);
    }
    Ok((mode, pairs))
}

/// Outcome of assembling `(star, count)` pairs into a vector.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildVectorError {
    /// The same star was constrained to two different counts. No graph can
    /// satisfy that, so callers should report the instance as infeasible.
    #[error("star {slot} is constrained to two different counts")]
    Conflict { slot: usize },
    #[error("no star constraints given")]
    Empty,
}

/// Assemble constraint pairs into a star count vector. Consistent
/// duplicates collapse; conflicting duplicates are reported (the instance
/// is trivially infeasible). Stars between the given indices stay
/// unspecified.
pub fn vector_from_pairs(
    mode: CountMode,
    pairs: &[(usize, BigUint)],
) -> Result<StarCountVector, BuildVectorError> {
    let ell = pairs
        .iter()
        .map(|&(j, _)| j)
        .max()
        .ok_or(BuildVectorError::Empty)?;
    let mut slots: Vec<Option<BigUint>> = vec![None; ell + 1];
    for (j, count) in pairs {
        match &slots[*j] {
            None => slots[*j] = Some(count.clone()),
            Some(existing) if existing == count => {}
            Some(_) => return Err(BuildVectorError::Conflict { slot: *j }),
        }
    }
    Ok(StarCountVector::new(mode, slots))
}

// ---------------------------------------------------------------------------
