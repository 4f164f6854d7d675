//! Morse complexes of acyclic matchings: differentials, checks, minimality.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::betti::{check_characteristic, pruned_betti, strand_homology, BettiTable};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::Monomial;
use crate::pruning::{critical_masks, prune_partial, verify_matching, Matching};
use crate::taylor::{boundary, incidence, Cell, GradedCell, GradedComplex};

/// One differential `D_i`: rows index stratum `i−1`, columns stratum `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Differential {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero entries `(row, col, coefficient)`, sorted by column then row.
    pub entries: Vec<(usize, usize, BigInt)>,
}

/// The complex on critical cells. `strata[i]` lists the critical cells with
/// `i` vertices in ascending mask order; `differentials[i]` is `D_i`
/// (`differentials[0]` is empty).
#[derive(Clone, Debug)]
pub struct MorseComplex {
    n: usize,
    strata: Vec<Vec<GradedCell>>,
    degree_ids: Vec<Vec<u32>>,
    differentials: Vec<Differential>,
}

impl MorseComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strata(&self) -> &[Vec<GradedCell>] {
        &self.strata
    }

    pub fn differential(&self, i: usize) -> &Differential {
        &self.differentials[i]
    }

    pub fn differentials(&self) -> &[Differential] {
        &self.differentials
    }

    /// Counts per homological index.
    pub fn ranks(&self) -> Vec<usize> {
        self.strata.iter().map(Vec::len).collect()
    }

    /// Coefficient of `e_{row cell}` in `D_i(e_{col cell})`, by cell masks.
    pub fn coefficient(&self, i: usize, col_cell: Cell, row_cell: Cell) -> Option<BigInt> {
        let c = self.strata.get(i)?.iter().position(|g| g.cell == col_cell)?;
        let r = self.strata.get(i - 1)?.iter().position(|g| g.cell == row_cell)?;
        Some(
            self.differentials[i]
                .entries
                .iter()
                .find(|(rr, cc, _)| *rr == r && *cc == c)
                .map(|(_, _, v)| v.clone())
                .unwrap_or_default(),
        )
    }

    /// Entries joining cells of equal multidegree that are nonzero in the
    /// given characteristic, as `(i, column cell, row cell, coefficient)`.
    pub fn minimality_obstructions(&self, characteristic: u64) -> Vec<(usize, Cell, Cell, BigInt)> {
        let p = BigInt::from(characteristic);
        let mut out = Vec::new();
        for (i, d) in self.differentials.iter().enumerate().skip(1) {
            for (r, c, v) in &d.entries {
                if self.degree_ids[i - 1][*r] != self.degree_ids[i][*c] {
                    continue;
                }
                let vanishes = if characteristic == 0 {
                    v.is_zero()
                } else {
                    (v % &p).is_zero()
                };
                if !vanishes {
                    out.push((i, self.strata[i][*c].cell, self.strata[i - 1][*r].cell, v.clone()));
                }
            }
        }
        out
    }

    /// Whether the resolution is minimal over a field of this characteristic:
    /// no entry between equal multidegrees survives reduction.
    pub fn is_minimal(&self, characteristic: u64) -> bool {
        self.minimality_obstructions(characteristic).is_empty()
    }

    /// Betti numbers read off the complex: homology of each multidegree
    /// strand of `F ⊗ k`.
    pub fn strand_betti(&self, characteristic: u64) -> BettiTable {
        let mut by_deg: HashMap<u32, Vec<Vec<Cell>>> = HashMap::new();
        let mut where_: HashMap<Cell, (usize, usize)> = HashMap::new();
        for (i, s) in self.strata.iter().enumerate() {
            for (k, g) in s.iter().enumerate() {
                let lv = by_deg
                    .entry(self.degree_ids[i][k])
                    .or_insert_with(|| vec![Vec::new(); self.strata.len() + 1]);
                lv[i].push(g.cell);
                where_.insert(g.cell, (i, k));
            }
        }
        // Column lookup: cell -> its entries.
        let mut cols: HashMap<Cell, Vec<(Cell, BigInt)>> = HashMap::new();
        for (i, d) in self.differentials.iter().enumerate().skip(1) {
            for (r, c, v) in &d.entries {
                cols.entry(self.strata[i][*c].cell)
                    .or_default()
                    .push((self.strata[i - 1][*r].cell, v.clone()));
            }
        }
        let mut t = BettiTable::new(self.n, characteristic);
        for (id, levels) in by_deg {
            let any = levels.iter().flatten().next().copied().expect("nonempty strand");
            let (i0, k0) = where_[&any];
            let degree = self.strata[i0][k0].degree.clone();
            debug_assert_eq!(self.degree_ids[i0][k0], id);
            for (i, h) in strand_homology(&levels, characteristic, |c| {
                cols.get(&c).cloned().unwrap_or_default()
            }) {
                t.add(i, degree.clone(), h);
            }
        }
        t
    }

    /// Strata (cells, degrees) and sparse differentials with monomial labels
    /// `x^{gr(column) − gr(row)}`.
    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| {
                Value::Array(
                    s.iter()
                        .map(|g| json!({"cell": g.cell, "degree": g.degree.exponents()}))
                        .collect(),
                )
            })
            .collect();
        let diffs: Vec<Value> = self
            .differentials
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, d)| {
                let entries: Vec<Value> = d
                    .entries
                    .iter()
                    .map(|(r, c, v)| {
                        let label = self.strata[i][*c]
                            .degree
                            .div(&self.strata[i - 1][*r].degree)
                            .expect("labels divide");
                        json!([r, c, bigint_json(v), label.exponents()])
                    })
                    .collect();
                json!({"index": i, "rows": d.rows, "cols": d.cols, "entries": entries})
            })
            .collect();
        json!({"n": self.n, "strata": strata, "differentials": diffs})
    }
}

pub(crate) fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// The Morse complex of `matching` on `complex`.
///
/// For a critical cell `σ`, `d(e_σ) = Σ [σ:σ']·flow(σ')` over facets `σ'`,
/// where `flow(c)` collects signed path weights from `c` to critical cells of
/// the same level through the reversed matching. A path leaving a lower
/// matched cell `c` climbs to its partner `τ` with weight `−[τ:c]` and then
/// descends to each other facet of `τ`. Flows are memoized per cell.
pub fn morse_differential(complex: &GradedComplex, matching: &Matching) -> Result<MorseComplex> {
    let report = verify_matching(complex, matching);
    if let Some(f) = report.failure {
        return Err(Error::InvalidMatching(f.to_string()));
    }
    let mate = matching.mates(complex.mask_bound());
    let crit = critical_masks(complex, matching);
    let top = crit.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let mut strata: Vec<Vec<GradedCell>> = vec![Vec::new(); top + 1];
    let mut degree_ids: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    let mut pos: HashMap<Cell, usize> = HashMap::with_capacity(crit.len());
    for &c in &crit {
        let i = c.count_ones() as usize;
        pos.insert(c, strata[i].len());
        strata[i].push(complex.graded(c));
        degree_ids[i].push(complex.degree_id(c));
    }

    let mut memo: HashMap<Cell, Rc<Vec<(usize, BigInt)>>> = HashMap::new();
    let mut flow = |start: Cell| -> Result<Rc<Vec<(usize, BigInt)>>> {
        let mut stack = vec![start];
        while let Some(&c) = stack.last() {
            if memo.contains_key(&c) {
                stack.pop();
                continue;
            }
            let value: Vec<(usize, BigInt)> = match mate[c as usize] {
                None => vec![(pos[&c], BigInt::from(1))],
                Some(t) if t < c => Vec::new(),
                Some(t) => {
                    let missing: Vec<Cell> = boundary(t)
                        .map(|(f, _)| f)
                        .filter(|&f| f != c && !memo.contains_key(&f))
                        .collect();
                    if !missing.is_empty() {
                        if stack.len() > complex.mask_bound() as usize {
                            return Err(Error::Internal("flow recursion did not terminate".into()));
                        }
                        stack.extend(missing);
                        continue;
                    }
                    let up = -i64::from(incidence(t, (t ^ c).trailing_zeros() as usize));
                    let mut acc: HashMap<usize, BigInt> = HashMap::new();
                    for (f, s) in boundary(t) {
                        if f == c {
                            continue;
                        }
                        for (k, v) in memo[&f].iter() {
                            *acc.entry(*k).or_default() += v * (up * i64::from(s));
                        }
                    }
                    let mut v: Vec<(usize, BigInt)> =
                        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    v.sort_by_key(|(k, _)| *k);
                    v
                }
            };
            memo.insert(c, Rc::new(value));
            stack.pop();
        }
        Ok(memo[&start].clone())
    };

    let mut differentials = vec![Differential::default()];
    for i in 1..=top {
        let mut entries = Vec::new();
        for (col, g) in strata[i].iter().enumerate() {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (f, s) in boundary(g.cell) {
                for (row, v) in flow(f)?.iter() {
                    *acc.entry(*row).or_default() += v * i64::from(s);
                }
            }
            let mut col_entries: Vec<(usize, usize, BigInt)> = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(r, v)| (r, col, v))
                .collect();
            col_entries.sort_by_key(|e| e.0);
            entries.extend(col_entries);
        }
        differentials.push(Differential {
            rows: strata[i - 1].len(),
            cols: strata[i].len(),
            entries,
        });
    }
    Ok(MorseComplex {
        n: complex.n(),
        strata,
        degree_ids,
        differentials,
    })
}

/// Outcome of [`verify_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexCheck {
    Pass,
    /// A nonzero entry whose row degree does not divide its column degree.
    BadLabel { index: usize, row: usize, col: usize },
    /// `D_i · D_{i+1}` has a nonzero entry.
    NotAComplex {
        index: usize,
        row: usize,
        col: usize,
        value: BigInt,
    },
}

/// Checks multigraded composability of labels and `D_i · D_{i+1} = 0` over ℤ.
pub fn verify_complex(c: &MorseComplex) -> ComplexCheck {
    for (i, d) in c.differentials.iter().enumerate().skip(1) {
        for (r, col, _) in &d.entries {
            if !c.strata[i - 1][*r].degree.divides(&c.strata[i][*col].degree) {
                return ComplexCheck::BadLabel { index: i, row: *r, col: *col };
            }
        }
    }
    for i in 1..c.differentials.len().saturating_sub(1) {
        let a = &c.differentials[i];
        let b = &c.differentials[i + 1];
        let mut rows_of: HashMap<usize, Vec<(usize, &BigInt)>> = HashMap::new();
        for (r, col, v) in &a.entries {
            rows_of.entry(*col).or_default().push((*r, v));
        }
        let mut prod: HashMap<(usize, usize), BigInt> = HashMap::new();
        for (mid, col, v) in &b.entries {
            if let Some(list) = rows_of.get(mid) {
                for (r, u) in list {
                    *prod.entry((*r, *col)).or_default() += *u * v;
                }
            }
        }
        let mut bad: Vec<_> = prod.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        bad.sort_by(|x, y| x.0.cmp(&y.0));
        if let Some(((row, col), value)) = bad.into_iter().next() {
            return ComplexCheck::NotAComplex { index: i, row, col, value };
        }
    }
    ComplexCheck::Pass
}

/// Search limits for [`search_minimal_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Try every order when `q` is at most this.
    pub exhaustive_up_to: usize,
    /// Number of orders tried beyond the exhaustive range.
    pub max_orders: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exhaustive_up_to: 8,
            max_orders: 5000,
            seed: 0,
        }
    }
}

/// Result of an order search. Orders are 0-based generator permutations:
/// position `k` of the order holds the generator swept `k`-th.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSearch {
    Found { order: Vec<usize>, tried: usize },
    /// Every order was tried.
    NoOrder { tried: usize },
    /// The budget ran out first.
    Unknown { tried: usize },
}

impl OrderSearch {
    pub fn order(&self) -> Option<&[usize]> {
        match self {
            OrderSearch::Found { order, .. } => Some(order),
            _ => None,
        }
    }
}

/// Pruned counts of `ideal` when its generators are swept in `order`.
pub fn pruned_counts_for_order(
    complex: &GradedComplex,
    order: &[usize],
    characteristic: u64,
) -> BettiTable {
    let m = prune_partial(complex, order, |_, _| true, None);
    pruned_betti(complex, &m, characteristic)
}

/// Look for a generator order whose pruned resolution is minimal in the given
/// characteristic, i.e. whose critical-cell counts equal the Betti numbers.
///
/// `hints` are tried first. Up to `budget.exhaustive_up_to` generators every
/// permutation is tried, so a miss is definitive. Beyond that, the identity,
/// degree-then-lex order, its reverse, and seeded random orders with local
/// swaps are tried until the budget runs out.
pub fn search_minimal_order(
    ideal: &MonomialIdeal,
    characteristic: u64,
    budget: &SearchBudget,
    hints: &[Vec<usize>],
    limits: &Limits,
) -> Result<OrderSearch> {
    check_characteristic(characteristic)?;
    ideal.require_proper("order search")?;
    let q = ideal.q();
    let complex = GradedComplex::taylor(ideal, limits)?;
    let oracle = crate::betti::betti_numbers(ideal, characteristic, limits)?;
    let target: u64 = oracle.totals().iter().sum();
    let counter = std::cell::Cell::new(0usize);
    let check = |order: &[usize]| -> bool {
        counter.set(counter.get() + 1);
        let m = prune_partial(&complex, order, |_, _| true, None);
        let crit = complex.cell_count() - 2 * m.len();
        crit as u64 == target && pruned_betti(&complex, &m, characteristic).same_counts(&oracle)
    };
    for h in hints {
        crate::ideal::check_permutation(h, q)?;
        if check(h) {
            return Ok(OrderSearch::Found { order: h.clone(), tried: counter.get() });
        }
    }
    let identity: Vec<usize> = (0..q).collect();
    if q <= budget.exhaustive_up_to {
        let mut perm = identity;
        loop {
            if check(&perm) {
                return Ok(OrderSearch::Found { order: perm, tried: counter.get() });
            }
            if !next_permutation(&mut perm) {
                return Ok(OrderSearch::NoOrder { tried: counter.get() });
            }
        }
    }
    let mut by_degree = identity.clone();
    by_degree.sort_by(|&a, &b| {
        let (ga, gb) = (ideal.gen(a), ideal.gen(b));
        ga.degree().cmp(&gb.degree()).then_with(|| gb.lex_cmp(ga))
    });
    let mut reversed = by_degree.clone();
    reversed.reverse();
    for cand in [identity.clone(), by_degree, reversed] {
        if counter.get() >= budget.max_orders {
            return Ok(OrderSearch::Unknown { tried: counter.get() });
        }
        if check(&cand) {
            return Ok(OrderSearch::Found { order: cand, tried: counter.get() });
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(budget.seed);
    let mut cur = identity;
    while counter.get() < budget.max_orders {
        if counter.get() % 8 == 0 {
            cur.shuffle(&mut rng);
        } else {
            let a = rand::Rng::gen_range(&mut rng, 0..q);
            let b = rand::Rng::gen_range(&mut rng, 0..q);
            cur.swap(a, b);
        }
        if check(&cur) {
            return Ok(OrderSearch::Found { order: cur, tried: counter.get() });
        }
    }
    Ok(OrderSearch::Unknown { tried: counter.get() })
}

/// Lexicographic successor; false once the last permutation is reached.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Monomial label `x^{gr(σ) − gr(σ')}` of an entry.
pub fn entry_label(c: &MorseComplex, i: usize, row: usize, col: usize) -> Option<Monomial> {
    c.strata[i][col].degree.div(&c.strata[i - 1][row].degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pruning::prune;
    use crate::taylor::cell_from_indices;

    fn taylor(s: &str) -> GradedComplex {
        GradedComplex::taylor(&s.parse::<MonomialIdeal>().unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn empty_matching_gives_taylor_differential() {
        let c = taylor("x1*x2, x2*x3, x3*x4");
        let m = morse_differential(&c, &Matching::default()).unwrap();
        assert_eq!(m.ranks(), vec![1, 3, 3, 1]);
        let top = cell_from_indices([0, 1, 2]);
        for (f, s) in boundary(top) {
            assert_eq!(m.coefficient(3, top, f), Some(BigInt::from(s)));
        }
        assert_eq!(verify_complex(&m), ComplexCheck::Pass);
    }

    #[test]
    fn triangle_is_minimal() {
        let c = taylor("x1*x2, x1*x3, x2*x3");
        let m = morse_differential(&c, &prune(&c)).unwrap();
        assert_eq!(m.ranks(), vec![1, 3, 2]);
        assert_eq!(verify_complex(&m), ComplexCheck::Pass);
        for d in m.differentials() {
            for (_, _, v) in &d.entries {
                assert!(v == &BigInt::from(1) || v == &BigInt::from(-1));
            }
        }
        assert!(m.is_minimal(0));
    }

    #[test]
    fn flipped_sign_is_caught() {
        let c = taylor("x1*x2, x2*x3, x3*x4");
        let mut m = morse_differential(&c, &Matching::default()).unwrap();
        let v = &mut m.differentials[2].entries[0].2;
        *v = -v.clone();
        assert!(matches!(verify_complex(&m), ComplexCheck::NotAComplex { .. }));
    }

    #[test]
    fn invalid_matching_rejected() {
        let c = taylor("x1*x2, x1*x3, x2*x3");
        let bad = Matching::new(vec![crate::pruning::MatchedPair { lower: 1, dir: 1 }]);
        assert!(matches!(morse_differential(&c, &bad), Err(Error::InvalidMatching(_))));
    }

    #[test]
    fn permutations_enumerate() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
    }

    #[test]
    fn single_generator_search() {
        let i: MonomialIdeal = "x1*x2".parse().unwrap();
        let r = search_minimal_order(&i, 0, &SearchBudget::default(), &[], &Limits::default())
            .unwrap();
        assert_eq!(r.order(), Some(&[0usize][..]));
    }
}
