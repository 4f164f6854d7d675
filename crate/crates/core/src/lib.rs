//! Cellular free resolutions of monomial ideals by discrete Morse pruning.
//!
//! The pipeline: an ideal with ordered generators ([`MonomialIdeal`]) gives a
//! graded complex ([`GradedComplex`], the Taylor complex or a subcomplex);
//! the pruning sweep ([`prune`]) produces a homogeneous acyclic matching; the
//! critical cells carry a free resolution whose differential is computed by
//! [`morse_differential`]. The Betti oracle ([`betti_numbers`]) is computed
//! independently and decides minimality by comparison.

pub mod betti;
pub mod classes;
pub mod error;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod monomial;
pub mod morse;
pub mod power;
pub mod pruning;
pub mod splitting;
pub mod taylor;

pub use betti::{betti_numbers, betti_numbers_with, pruned_betti, BettiMethod, BettiTable};
pub use error::{Error, Result};
pub use ideal::{Graph, MonomialIdeal};
pub use limits::Limits;
pub use monomial::Monomial;
pub use morse::{
    morse_differential, search_minimal_order, verify_complex, ComplexCheck, MorseComplex,
    OrderSearch, SearchBudget,
};
pub use power::{lrq_complex, prune_power, PowerComplex, PowerPruning, VertexOrder};
pub use pruning::{critical_cells, prune, prune_partial, verify_matching, Matching, MatchedPair};
pub use taylor::{boundary, cell_lcm, Cell, GradedCell, GradedComplex};
pub use classes::{borel_closure, classify, vertex_split, Classification, SplitCertificate};
pub use splitting::{
    auto_plan, edge_split_recursion, intersection_gens, is_betti_splitting, split_prune, xi_partition,
    AutoPlan, Partition, SplitOptions, SplitOutcome, SplitPlan,
};
