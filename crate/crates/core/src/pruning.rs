//! The pruning sweep: homogeneous acyclic matchings on a graded complex.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::taylor::{boundary, Cell, GradedCell, GradedComplex};

/// A matched edge between `lower` and `lower + ε_dir` (`dir` 0-based,
/// `lower` not containing `dir`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchedPair {
    pub lower: Cell,
    pub dir: usize,
}

impl MatchedPair {
    pub fn upper(&self) -> Cell {
        self.lower | 1u64 << self.dir
    }
}

/// A set of matched pairs, in the order they were produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<MatchedPair>,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    cell: Cell,
    dir: usize,
}

impl Matching {
    pub fn new(pairs: Vec<MatchedPair>) -> Self {
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[MatchedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn push(&mut self, p: MatchedPair) {
        self.pairs.push(p);
    }

    pub fn extend(&mut self, other: &Matching) {
        self.pairs.extend_from_slice(&other.pairs);
    }

    /// Pairs as `{"cell": mask, "dir": j}` with `j` 1-based.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(
            self.pairs
                .iter()
                .map(|p| PairJson {
                    cell: p.lower,
                    dir: p.dir + 1,
                })
                .collect::<Vec<_>>(),
        )
        .expect("plain data")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: Vec<PairJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut pairs = Vec::with_capacity(raw.len());
        for p in raw {
            if p.dir == 0 || p.dir > 64 {
                return Err(Error::Parse(format!("direction {} out of range", p.dir)));
            }
            pairs.push(MatchedPair {
                lower: p.cell,
                dir: p.dir - 1,
            });
        }
        Ok(Matching { pairs })
    }

    /// Dense partner table: `mate[c]` is the other cell of `c`'s pair, or
    /// `None`. Assumes a valid matching.
    pub(crate) fn mates(&self, bound: u64) -> Vec<Option<Cell>> {
        let mut mate = vec![None; bound as usize];
        for p in &self.pairs {
            mate[p.lower as usize] = Some(p.upper());
            mate[p.upper() as usize] = Some(p.lower);
        }
        mate
    }
}

/// The pruning sweep on the whole complex, directions in index order.
pub fn prune(complex: &GradedComplex) -> Matching {
    let order: Vec<usize> = (0..complex.vertices()).collect();
    prune_partial(complex, &order, |_, _| true, None)
}

/// The pruning sweep restricted to admissible edges.
///
/// Directions are visited in `order`. At direction `j`, each cell `σ` with
/// `j ∉ σ` (ascending mask) is matched to `σ + ε_j` when both are cells of
/// the complex, neither is matched yet, `allowed(σ, j)` holds, and the two
/// multidegrees agree. Pairs in `initial` count as already matched and are
/// included in the result.
pub fn prune_partial(
    complex: &GradedComplex,
    order: &[usize],
    allowed: impl Fn(Cell, usize) -> bool,
    initial: Option<&Matching>,
) -> Matching {
    let bound = complex.mask_bound();
    let mut taken = vec![false; bound as usize];
    let mut out = Matching::default();
    if let Some(init) = initial {
        for p in init.pairs() {
            taken[p.lower as usize] = true;
            taken[p.upper() as usize] = true;
        }
        out.extend(init);
    }
    let table = complex.table();
    for &j in order {
        let bit = 1u64 << j;
        for s in 0..bound {
            if s & bit != 0 {
                continue;
            }
            let t = s | bit;
            if taken[s as usize] || taken[t as usize] || !complex.contains(t) {
                continue;
            }
            if table.id(s) != table.id(t) || !allowed(s, j) {
                continue;
            }
            taken[s as usize] = true;
            taken[t as usize] = true;
            out.pairs.push(MatchedPair { lower: s, dir: j });
        }
    }
    out
}

/// Why a matching was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingFailure {
    /// The pair's direction is already in the lower cell or out of range.
    BadDirection(MatchedPair),
    /// The pair is not an edge of the complex.
    OutsideComplex(MatchedPair),
    /// A cell occurs in two pairs.
    NotAMatching { cell: Cell },
    /// The two cells of a pair have different multidegrees.
    NotHomogeneous(MatchedPair),
    /// A directed cycle in the reversed-matching graph, listed as cells.
    Cycle(Vec<Cell>),
}

impl fmt::Display for MatchingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingFailure::BadDirection(p) => {
                write!(f, "bad direction {} for cell {:#b}", p.dir + 1, p.lower)
            }
            MatchingFailure::OutsideComplex(p) => {
                write!(f, "pair ({:#b}, {}) is not an edge of the complex", p.lower, p.dir + 1)
            }
            MatchingFailure::NotAMatching { cell } => {
                write!(f, "matching property: cell {cell:#b} is matched twice")
            }
            MatchingFailure::NotHomogeneous(p) => {
                write!(f, "homogeneous: pair ({:#b}, {}) changes multidegree", p.lower, p.dir + 1)
            }
            MatchingFailure::Cycle(c) => {
                write!(f, "acyclic: cycle through ")?;
                for (k, x) in c.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" -> ")?;
                    }
                    write!(f, "{x:#b}")?;
                }
                Ok(())
            }
        }
    }
}

/// Outcome of [`verify_matching`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingReport {
    pub pairs: usize,
    pub failure: Option<MatchingFailure>,
}

impl MatchingReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check the matching property, homogeneity and acyclicity.
///
/// A directed cycle in the reversed-matching graph alternates between two
/// adjacent levels, so it suffices to look for cycles among pairs, where pair
/// `P` points to pair `P'` when the lower cell of `P'` is a facet of the upper
/// cell of `P` other than the lower cell of `P`.
pub fn verify_matching(complex: &GradedComplex, matching: &Matching) -> MatchingReport {
    let fail = |f| MatchingReport {
        pairs: matching.len(),
        failure: Some(f),
    };
    let mut mate: HashMap<Cell, usize> = HashMap::with_capacity(2 * matching.len());
    for (k, p) in matching.pairs().iter().enumerate() {
        if p.dir >= complex.vertices() || p.lower >> p.dir & 1 == 1 {
            return fail(MatchingFailure::BadDirection(*p));
        }
        if !complex.contains(p.upper()) {
            return fail(MatchingFailure::OutsideComplex(*p));
        }
        for c in [p.lower, p.upper()] {
            if mate.insert(c, k).is_some() {
                return fail(MatchingFailure::NotAMatching { cell: c });
            }
        }
        if complex.degree_id(p.lower) != complex.degree_id(p.upper()) {
            return fail(MatchingFailure::NotHomogeneous(*p));
        }
    }
    let pairs = matching.pairs();
    let succ = |k: usize| -> Vec<usize> {
        let p = pairs[k];
        boundary(p.upper())
            .filter(|&(f, _)| f != p.lower)
            .filter_map(|(f, _)| {
                let &k2 = mate.get(&f)?;
                (pairs[k2].lower == f).then_some(k2)
            })
            .collect()
    };
    // Iterative three-colour DFS.
    let mut colour = vec![0u8; pairs.len()];
    for root in 0..pairs.len() {
        if colour[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, succ(root))];
        colour[root] = 1;
        while let Some((node, next)) = stack.last_mut() {
            let node = *node;
            if let Some(k) = next.pop() {
                match colour[k] {
                    0 => {
                        colour[k] = 1;
                        let s = succ(k);
                        stack.push((k, s));
                    }
                    1 => {
                        let start = stack.iter().position(|(x, _)| *x == k).unwrap_or(0);
                        let mut cells = Vec::new();
                        for (x, _) in &stack[start..] {
                            cells.push(pairs[*x].lower);
                            cells.push(pairs[*x].upper());
                        }
                        cells.push(pairs[k].lower);
                        return fail(MatchingFailure::Cycle(cells));
                    }
                    _ => {}
                }
            } else {
                colour[node] = 2;
                stack.pop();
            }
        }
    }
    MatchingReport {
        pairs: matching.len(),
        failure: None,
    }
}

/// Unmatched cells grouped by homological index (`result[i]` holds cells
/// with `i` vertices), ascending mask within each group.
pub fn critical_cells(complex: &GradedComplex, matching: &Matching) -> Vec<Vec<GradedCell>> {
    let mut out: Vec<Vec<GradedCell>> = vec![Vec::new(); complex.vertices() + 1];
    for c in critical_masks(complex, matching) {
        out[c.count_ones() as usize].push(complex.graded(c));
    }
    while out.len() > 1 && out.last().is_some_and(Vec::is_empty) {
        out.pop();
    }
    out
}

pub(crate) fn critical_masks(complex: &GradedComplex, matching: &Matching) -> Vec<Cell> {
    let mut taken = vec![false; complex.mask_bound() as usize];
    for p in matching.pairs() {
        taken[p.lower as usize] = true;
        taken[p.upper() as usize] = true;
    }
    complex.cells().filter(|&c| !taken[c as usize]).collect()
}
