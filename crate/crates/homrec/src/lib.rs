//! Graph reconstruction from star counts, exhaustive constraint solving,
//! and compilers from hard decision problems into counting constraints.
//!
//! The central question: given, for each star `S_j` with `j` leaves up to
//! some bound, how often it occurs in an unknown graph — as homomorphisms
//! (`hom(S_j, G) = Σ_v deg(v)^j`) or as subgraph copies
//! (`sub(S_j, G) = Σ_v C(deg(v), j)` for `j ≥ 2`) — reconstruct such a
//! graph or decide that none exists. [`solve_star_sub`] and
//! [`solve_star_hom`] answer this in polynomial time via a memoized
//! search over degree sequences; [`solve_star_partial`] extends it to
//! homomorphism vectors with unspecified entries.
//!
//! Around that core:
//!
//! * [`graph`]: graphs (optionally coloured or labelled), the text
//!   format, and counting constraints;
//! * [`counting`]: budgeted homomorphism and subgraph-copy counting;
//! * [`degseq`]: degree sequences, graphicality, realization, and the
//!   peeling step underlying the solver;
//! * [`stars`]: star counts of degree sequences and the change of basis
//!   between homomorphism and subgraph-copy vectors;
//! * [`solver`]: the reconstruction search itself;
//! * [`brute`]: an exhaustive ground-truth solver for general constraint
//!   lists at tiny scale, plus the manifest format;
//! * [`reductions`]: compilers from circuit satisfiability, blocked
//!   3-colouring extension, and many-colour constraint lists into
//!   equivalent constraint lists over few colours.

pub mod brute;
pub mod counting;
pub mod degseq;
pub mod graph;
pub mod reductions;
pub mod solver;
pub mod stars;

pub use brute::{
    all_plain_graphs, brute_solve, canonical_form, enumerate_graphs, find_all_on_n, read_manifest,
    solution_size_bound, write_manifest, BruteError, BruteOptions, BruteOutcome, ManifestError,
};
pub use counting::{
    count_homomorphisms, count_subgraph_copies, Budget, CountError, DEFAULT_STEP_BUDGET,
};
pub use degseq::{
    havel_hakimi_realize, is_graphic, reduction_step, DegreeSequence, NotGraphic, ParseSeqError,
    StepError,
};
pub use graph::{
    check_constraints, parse_graph, serialize_graph, ConstraintReport, CountMode, Graph,
    GraphError, ParseError, PatternConstraint, Vertex,
};
pub use reductions::{
    blocking_colouring_exists, circuit_to_constraints, circuit_witness_graph,
    coloring_to_constraints, colors_to_four, four_expand, nm_constraint, parse_circuit,
    value_gadget, value_gadget_constraints, verify_reduction, Circuit, CircuitParseError, GateOp,
    ReductionError, VerifyReport,
};
pub use solver::{
    parse_star_file, solve_star_hom, solve_star_partial, solve_star_sub, vector_from_pairs,
    BuildVectorError, DpStats, SolveError, SolveOutcome, StarFileError, Witness,
};
pub use stars::{
    hom_count_at_degree, hom_to_sub, star_counts_of_degseq, stirling2, sub_count_at_degree,
    sub_to_hom, Inconsistency, StarCountVector,
};
