//! Star counts: how many homomorphisms/copies of the star `S_j` (one
//! centre, `j` leaves) land at a vertex of given degree, aggregation over a
//! degree sequence, and the Stirling transform connecting homomorphism
//! vectors to subgraph-copy vectors.
//!
//! Per vertex of degree `d`:
//!
//! * copies rooted there:   `s_j(d) = s_j(d-1) + s_{j-1}(d-1)` (= `C(d, j)`)
//! * homs centred there:    `h_j(d) = Σ_i C(j, i) · h_i(d-1)` (= `d^j`)
//!
//! Both are implemented by the recursion (tabulated), not the closed form;
//! the closed forms serve as test anchors. Summing over all vertices gives
//! the graph-level counts, with the one twist that every edge is a copy of
//! `S_1` rooted at both endpoints, so `sub(S_1, G) = (Σ_v deg v) / 2`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::degseq::DegreeSequence;
use crate::graph::CountMode;

// ---------------------------------------------------------------------------
// Per-degree counts
// ---------------------------------------------------------------------------

/// Table of `s_j(d)` for `j ≤ ell`, `d ≤ max_d`; row `d`, column `j`.
fn sub_table(ell: usize, max_d: usize) -> Vec<Vec<BigUint>> {
    let mut table = vec![vec![BigUint::zero(); ell + 1]; max_d + 1];
    for row in table.iter_mut() {
        row[0] = BigUint::one();
    }
    for d in 1..=max_d {
        for j in 1..=ell {
            let prev = &table[d - 1];
            table[d][j] = &prev[j] + &prev[j - 1];
        }
    }
    table
}

/// Table of `h_j(d)` for `j ≤ ell`, `d ≤ max_d`; row `d`, column `j`.
fn hom_table(ell: usize, max_d: usize) -> Vec<Vec<BigUint>> {
    // Pascal triangle for the C(j, i) weights of the recursion.
    let mut choose = vec![vec![BigUint::zero(); ell + 1]; ell + 1];
    for j in 0..=ell {
        choose[j][0] = BigUint::one();
        for i in 1..=j {
            choose[j][i] = &choose[j - 1][i - 1]
                + if i < j {
                    choose[j - 1][i].clone()
                } else {
                    BigUint::zero()
                };
        }
    }
    let mut table = vec![vec![BigUint::zero(); ell + 1]; max_d + 1];
    for row in table.iter_mut() {
        row[0] = BigUint::one();
    }
    for d in 1..=max_d {
        for j in 1..=ell {
            let mut acc = BigUint::zero();
            for i in 0..=j {
                acc += &choose[j][i] * &table[d - 1][i];
            }
            table[d][j] = acc;
        }
    }
    table
}

/// Copies of `S_j` rooted at a vertex of degree `d` (equals `C(d, j)`).
pub fn sub_count_at_degree(j: usize, d: usize) -> BigUint {
    sub_table(j, d)[d][j].clone()
}

/// Homomorphisms of `S_j` centred at a vertex of degree `d` (equals `d^j`).
pub fn hom_count_at_degree(j: usize, d: usize) -> BigUint {
    hom_table(j, d)[d][j].clone()
}

// ---------------------------------------------------------------------------
// Star count vectors
// ---------------------------------------------------------------------------

/// Counts of the stars `S_0 … S_ell` in one mode; `None` marks a slot the
/// caller left unspecified. The final slot (which defines `ell`) is always
/// specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCountVector {
    mode: CountMode,
    slots: Vec<Option<BigUint>>,
}

impl StarCountVector {
    /// `slots[j]` is the count for `S_j`. The vector must be non-empty and
    /// its last slot specified.
    pub fn new(mode: CountMode, slots: Vec<Option<BigUint>>) -> Self {
        assert!(
            !slots.is_empty(),
            "a star count vector needs at least slot 0"
        );
        assert!(
            slots.last().unwrap().is_some(),
            "the largest star's count must be specified"
        );
        StarCountVector { mode, slots }
    }

    /// Fully specified vector from plain counts.
    pub fn specified(mode: CountMode, counts: Vec<BigUint>) -> Self {
        Self::new(mode, counts.into_iter().map(Some).collect())
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    /// Index of the largest star, i.e. `slots.len() - 1`.
    pub fn ell(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn slots(&self) -> &[Option<BigUint>] {
        &self.slots
    }

    pub fn slot(&self, j: usize) -> Option<&BigUint> {
        self.slots.get(j).and_then(Option::as_ref)
    }

    pub fn is_fully_specified(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// The counts of a fully specified vector; panics otherwise.
    pub fn counts(&self) -> Vec<BigUint> {
        self.slots
            .iter()
            .map(|s| s.clone().expect("vector must be fully specified"))
            .collect()
    }
}

/// Star counts of any graph realising `seq`, for `j ∈ [0, ell]`.
///
/// These depend on the degree sequence alone. In sub mode slot 1 is the
/// edge count `(Σ_i d_i) / 2`, so the degree sum must be even (true for
/// every graph's degree sequence).
pub fn star_counts_of_degseq(seq: &DegreeSequence, ell: usize, mode: CountMode) -> StarCountVector {
    let max_d = seq.entries().first().copied().unwrap_or(0);
    let table = match mode {
        CountMode::Hom => hom_table(ell, max_d),
        CountMode::Sub => sub_table(ell, max_d),
    };
    let mut counts = vec![BigUint::zero(); ell + 1];
    for &d in seq.entries() {
        for j in 0..=ell {
            counts[j] += &table[d][j];
        }
    }
    if mode == CountMode::Sub && ell >= 1 {
        assert!(
            seq.sum().is_multiple_of(2),
            "slot 1 needs an even degree sum, got {}",
            seq.sum()
        );
        counts[1] = BigUint::from(seq.sum() / 2);
    }
    StarCountVector::specified(mode, counts)
}

// ---------------------------------------------------------------------------
// Stirling transform
// ---------------------------------------------------------------------------

/// Stirling number of the second kind `S2(j, i)`, by the recurrence
/// `S2(j, i) = i · S2(j-1, i) + S2(j-1, i-1)`.
pub fn stirling2(j: usize, i: usize) -> BigUint {
    if i > j {
        return BigUint::zero();
    }
    stirling2_table(j)[j][i].clone()
}

/// Rows `0..=ell` of the Stirling-number triangle (row `j` has `j + 1`
/// meaningful columns, padded with zeros to `ell + 1`).
fn stirling2_table(ell: usize) -> Vec<Vec<BigUint>> {
    let mut table = vec![vec![BigUint::zero(); ell + 1]; ell + 1];
    table[0][0] = BigUint::one();
    for j in 1..=ell {
        for i in 1..=j {
            table[j][i] = BigUint::from(i) * &table[j - 1][i] + &table[j - 1][i - 1];
        }
    }
    table
}

fn factorials(ell: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::one(); ell + 1];
    for i in 1..=ell {
        f[i] = &f[i - 1] * BigUint::from(i);
    }
    f
}

/// Reasons a homomorphism vector cannot come from any graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Inconsistency {
    #[error("slot 1 (twice the edge count) is odd")]
    OddEdgeSum,
    #[error("derived binomial moment p_{slot} is negative")]
    NegativeMoment { slot: usize },
    #[error("derived binomial moment p_{slot} is not an integer")]
    FractionalMoment { slot: usize },
}

/// Convert a fully specified homomorphism vector into the unique candidate
/// subgraph-copy vector, or report why none exists.
///
/// Writing `p_i = Σ_v C(deg v, i)` for the binomial moments, homomorphism
/// counts satisfy `h_j = Σ_{i ≤ j} S2(j, i) · i! · p_i`, which inverts
/// slot by slot as `p_j = (h_j - Σ_{i < j} S2(j, i) · i! · p_i) / j!`.
/// The vector is rejected iff some derived `p_j` is negative or
/// fractional, or `p_1` (the degree sum) is odd. Acceptance means the
/// arithmetic is consistent; whether the moments are realised by an actual
/// degree sequence is the solver's job.
pub fn hom_to_sub(vector: &StarCountVector) -> Result<StarCountVector, Inconsistency> {
    assert_eq!(
        vector.mode(),
        CountMode::Hom,
        "input must be a homomorphism vector"
    );
    assert!(vector.is_fully_specified(), "input must be fully specified");
    let h = vector.counts();
    let ell = vector.ell();
    let s2 = stirling2_table(ell);
    let fact = factorials(ell);

    let mut p: Vec<BigUint> = Vec::with_capacity(ell + 1);
    p.push(h[0].clone());
    for j in 1..=ell {
        let mut acc = BigUint::zero();
        for i in 0..j {
            acc += &s2[j][i] * &fact[i] * &p[i];
        }
        let numerator = BigInt::from(h[j].clone()) - BigInt::from(acc);
        if numerator.is_negative() {
            return Err(Inconsistency::NegativeMoment { slot: j });
        }
        let (q, r) = numerator.div_rem(&BigInt::from(fact[j].clone()));
        if !r.is_zero() {
            return Err(Inconsistency::FractionalMoment { slot: j });
        }
        let q: BigUint = q.try_into().expect("non-negative by the checks above");
        if j == 1 && q.is_odd() {
            return Err(Inconsistency::OddEdgeSum);
        }
        p.push(q);
    }

    let mut counts = p;
    if ell >= 1 {
        counts[1] = &counts[1] / BigUint::from(2u32);
    }
    Ok(StarCountVector::specified(CountMode::Sub, counts))
}

/// Convert a fully specified subgraph-copy vector into the homomorphism
/// vector of any graph with those star counts. Always well defined.
pub fn sub_to_hom(vector: &StarCountVector) -> StarCountVector {
    assert_eq!(
        vector.mode(),
        CountMode::Sub,
        "input must be a subgraph-copy vector"
    );
    assert!(vector.is_fully_specified(), "input must be fully specified");
    let t = vector.counts();
    let ell = vector.ell();
    let s2 = stirling2_table(ell);
    let fact = factorials(ell);

    // Binomial moments: p_1 = 2 · t_1, p_j = t_j otherwise.
    let mut p = t;
    if ell >= 1 {
        p[1] = &p[1] * BigUint::from(2u32);
    }
    let counts: Vec<BigUint> = (0..=ell)
        .map(|j| (0..=j).map(|i| &s2[j][i] * &fact[i] * &p[i]).sum())
        .collect();
    StarCountVector::specified(CountMode::Hom, counts)
}

// ---------------------------------------------------------------------------
