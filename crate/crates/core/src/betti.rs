//! Multigraded Betti numbers of `R/I`: the exact oracle, tables and diagrams.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::{is_prime, MonomialIdeal};
use crate::limits::Limits;
use crate::linalg::{rank_big, rank_i64, Triplets};
use crate::monomial::Monomial;
use crate::pruning::{critical_masks, Matching};
use crate::taylor::{boundary, Cell, GradedComplex};

/// Counts indexed by homological index `i` and multidegree `α`.
///
/// Entries are stored only when nonzero. Unless stated otherwise a table
/// describes `R/I`, so `β_{0,0} = 1` for a proper ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    characteristic: u64,
    entries: BTreeMap<(usize, Monomial), u64>,
}

/// Which computation backs [`betti_numbers_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BettiMethod {
    /// Reduced homology of the upper Koszul simplicial complexes `K^α(I)`
    /// over the lcm lattice.
    #[default]
    Koszul,
    /// Homology of the multidegree strands of the Taylor complex.
    TaylorStrand,
}

pub fn check_characteristic(p: u64) -> Result<()> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "characteristic must be 0 or a prime, got {p}"
        )))
    }
}

impl BettiTable {
    pub fn new(n: usize, characteristic: u64) -> Self {
        BettiTable {
            n,
            characteristic,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn add(&mut self, i: usize, alpha: Monomial, count: u64) {
        if count > 0 {
            *self.entries.entry((i, alpha)).or_default() += count;
        }
    }

    pub fn get(&self, i: usize, alpha: &Monomial) -> u64 {
        self.entries.get(&(i, alpha.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> {
        self.entries.iter().map(|((i, a), &c)| (*i, a, c))
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Total count per homological index.
    pub fn totals(&self) -> Vec<u64> {
        let mut t = vec![0u64; self.length() + 1];
        if self.entries.is_empty() {
            return Vec::new();
        }
        for ((i, _), c) in &self.entries {
            t[*i] += c;
        }
        t
    }

    /// ℤ-graded projection: `(i, j) ↦ β_{i,j}` with `j = |α|`.
    pub fn graded(&self) -> BTreeMap<(usize, u64), u64> {
        let mut g = BTreeMap::new();
        for ((i, a), c) in &self.entries {
            *g.entry((*i, a.degree())).or_default() += c;
        }
        g
    }

    /// Same entries, ignoring the characteristic tag.
    pub fn same_counts(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    /// `β_{i,α} ≥ other.β_{i,α}` everywhere.
    pub fn dominates(&self, other: &BettiTable) -> bool {
        other
            .entries
            .iter()
            .all(|(k, &c)| self.entries.get(k).copied().unwrap_or(0) >= c)
    }

    /// Entries of `self` and `other` that differ, as `(i, α, self, other)`.
    pub fn differences(&self, other: &BettiTable) -> Vec<(usize, Monomial, u64, u64)> {
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.entries.get(k).copied().unwrap_or(0);
                let b = other.entries.get(k).copied().unwrap_or(0);
                (a != b).then(|| (k.0, k.1.clone(), a, b))
            })
            .collect()
    }

    /// The table of the ideal `I` from the table of `R/I`: drop `β_{0,0}`
    /// and lower every index by one.
    pub fn to_ideal_indexing(&self) -> BettiTable {
        let mut t = BettiTable::new(self.n, self.characteristic);
        for ((i, a), &c) in &self.entries {
            if *i > 0 {
                t.add(i - 1, a.clone(), c);
            }
        }
        t
    }

    /// Inverse of [`BettiTable::to_ideal_indexing`] for a proper ideal.
    pub fn from_ideal_indexing(ideal_table: &BettiTable) -> BettiTable {
        let mut t = BettiTable::new(ideal_table.n, ideal_table.characteristic);
        t.add(0, Monomial::one(ideal_table.n), 1);
        for ((i, a), &c) in &ideal_table.entries {
            t.add(i + 1, a.clone(), c);
        }
        t
    }

    /// Add `other` with its homological index raised by `shift`.
    pub fn absorb(&mut self, other: &BettiTable, shift: usize) {
        for ((i, a), &c) in &other.entries {
            self.add(i + shift, a.clone(), c);
        }
    }

    /// Multiply every multidegree by `m` (all indices kept).
    pub fn scaled(&self, m: &Monomial) -> Result<BettiTable> {
        let mut t = BettiTable::new(self.n, self.characteristic);
        for ((i, a), &c) in &self.entries {
            t.add(*i, a.mul(m)?, c);
        }
        Ok(t)
    }

    /// The Betti diagram: entry in row `j`, column `i` is `β_{i,i+j}`, zeros
    /// shown as `.`, each column right-aligned to its widest entry.
    pub fn render_diagram(&self) -> String {
        let graded = self.graded();
        let cols = if graded.is_empty() { 0 } else { self.length() + 1 };
        let rows: Vec<i64> = {
            let lo = graded
                .keys()
                .map(|&(i, j)| j as i64 - i as i64)
                .min()
                .unwrap_or(0)
                .min(0);
            let hi = graded
                .keys()
                .map(|&(i, j)| j as i64 - i as i64)
                .max()
                .unwrap_or(0)
                .max(0);
            (lo..=hi).collect()
        };
        let totals = self.totals();
        let cell = |i: usize, row: i64| -> String {
            let j = row + i as i64;
            if j < 0 {
                return ".".into();
            }
            match graded.get(&(i, j as u64)) {
                Some(&c) if c > 0 => c.to_string(),
                _ => ".".into(),
            }
        };
        let mut table: Vec<(String, Vec<String>)> = Vec::new();
        table.push((String::new(), (0..cols).map(|i| i.to_string()).collect()));
        table.push((
            "total:".into(),
            (0..cols).map(|i| totals[i].to_string()).collect(),
        ));
        for &r in &rows {
            table.push((format!("{r}:"), (0..cols).map(|i| cell(i, r)).collect()));
        }
        let label_w = table.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|i| table.iter().map(|(_, row)| row[i].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (label, row) in &table {
            let mut line = format!("{label:>label_w$}");
            for (i, v) in row.iter().enumerate() {
                let w = widths[i];
                let _ = write!(line, " {v:>w$}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((i, a), c)| json!({"i": i, "degree": a.exponents(), "count": c}))
            .collect();
        let graded: Vec<Value> = self
            .graded()
            .into_iter()
            .map(|((i, j), c)| json!([i, j, c]))
            .collect();
        json!({
            "n": self.n,
            "characteristic": self.characteristic,
            "totals": self.totals(),
            "graded": graded,
            "entries": entries,
        })
    }
}

/// Critical-cell counts of a matching, as a table for `R/I` at the given
/// characteristic tag.
pub fn pruned_betti(complex: &GradedComplex, matching: &Matching, characteristic: u64) -> BettiTable {
    let mut counts: HashMap<(usize, u32), u64> = HashMap::new();
    for c in critical_masks(complex, matching) {
        *counts
            .entry((c.count_ones() as usize, complex.degree_id(c)))
            .or_default() += 1;
    }
    let mut t = BettiTable::new(complex.n(), characteristic);
    for ((i, id), c) in counts {
        t.add(i, complex.table().degrees()[id as usize].clone(), c);
    }
    t
}

/// Betti numbers of `R/I` over a field of the given characteristic.
pub fn betti_numbers(ideal: &MonomialIdeal, characteristic: u64, limits: &Limits) -> Result<BettiTable> {
    betti_numbers_with(ideal, characteristic, BettiMethod::Koszul, limits)
}

pub fn betti_numbers_with(
    ideal: &MonomialIdeal,
    characteristic: u64,
    method: BettiMethod,
    limits: &Limits,
) -> Result<BettiTable> {
    check_characteristic(characteristic)?;
    let mut t = BettiTable::new(ideal.n(), characteristic);
    if ideal.is_unit() {
        return Ok(t);
    }
    t.add(0, Monomial::one(ideal.n()), 1);
    if ideal.is_zero() {
        return Ok(t);
    }
    match method {
        BettiMethod::Koszul => {
            let lattice = lcm_lattice(ideal, limits)?;
            let parts: Vec<Vec<(usize, u64)>> = lattice
                .par_iter()
                .map(|a| koszul_betti_at(ideal, a, characteristic, limits))
                .collect::<Result<_>>()?;
            for (a, part) in lattice.iter().zip(parts) {
                for (i, c) in part {
                    t.add(i, a.clone(), c);
                }
            }
        }
        BettiMethod::TaylorStrand => {
            let complex = GradedComplex::taylor(ideal, limits)?;
            let mut strands: HashMap<u32, Vec<Cell>> = HashMap::new();
            for c in complex.cells().skip(1) {
                strands.entry(complex.degree_id(c)).or_default().push(c);
            }
            let strands: Vec<(u32, Vec<Cell>)> = strands.into_iter().collect();
            let parts: Vec<(u32, Vec<(usize, u64)>)> = strands
                .par_iter()
                .map(|(id, cells)| (*id, taylor_strand_homology(cells, characteristic)))
                .collect();
            for (id, part) in parts {
                for (i, c) in part {
                    t.add(i, complex.table().degrees()[id as usize].clone(), c);
                }
            }
        }
    }
    Ok(t)
}

/// All lcms of nonempty sets of generators, in discovery order.
pub fn lcm_lattice(ideal: &MonomialIdeal, limits: &Limits) -> Result<Vec<Monomial>> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut out: Vec<Monomial> = Vec::new();
    for g in ideal.gens() {
        if seen.insert(g.clone()) {
            out.push(g.clone());
        }
    }
    let mut k = 0;
    while k < out.len() {
        let e = out[k].clone();
        for g in ideal.gens() {
            let l = e.lcm_unchecked(g);
            if !seen.contains(&l) {
                seen.insert(l.clone());
                out.push(l);
                if out.len() > limits.max_lattice {
                    return Err(Error::Capacity {
                        what: "lcm lattice elements",
                        size: out.len(),
                        cap: limits.max_lattice,
                        hint: "raise MORSERES_MAX_LATTICE or split the ideal",
                    });
                }
            }
        }
        k += 1;
    }
    Ok(out)
}

/// `β_{i,α}(R/I) = dim H̃_{i−2}(K^α(I))` where
/// `K^α(I) = {τ ⊆ supp α : x^{α−τ} ∈ I}`; returns the nonzero `(i, β)`.
pub fn koszul_betti_at(
    ideal: &MonomialIdeal,
    alpha: &Monomial,
    characteristic: u64,
    limits: &Limits,
) -> Result<Vec<(usize, u64)>> {
    if !ideal.contains(alpha) {
        return Ok(Vec::new());
    }
    let verts: Vec<usize> = alpha.support().collect();
    let is_face = |tau: u64| -> bool {
        let mut m = alpha.clone();
        {
            let e = m.exponents_mut();
            for (k, &v) in verts.iter().enumerate() {
                if tau >> k & 1 == 1 {
                    e[v] -= 1;
                }
            }
        }
        ideal.contains(&m)
    };
    // faces[d+1] holds the faces of dimension d, ascending.
    let mut faces: Vec<Vec<u64>> = vec![vec![0]];
    let mut total = 1usize;
    let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
    while let Some((tau, from)) = stack.pop() {
        for k in from..verts.len() {
            let s = tau | 1u64 << k;
            if is_face(s) {
                let d = s.count_ones() as usize;
                if faces.len() <= d {
                    faces.resize(d + 1, Vec::new());
                }
                faces[d].push(s);
                total += 1;
                if total > limits.max_faces {
                    return Err(Error::Capacity {
                        what: "faces of an upper Koszul complex",
                        size: total,
                        cap: limits.max_faces,
                        hint: "raise MORSERES_MAX_FACES",
                    });
                }
                stack.push((s, k + 1));
            }
        }
    }
    for level in &mut faces {
        level.sort_unstable();
    }
    let index: Vec<HashMap<u64, usize>> = faces
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, &f)| (f, k)).collect())
        .collect();
    // rank of ∂ from level s (faces with s vertices) to level s−1.
    let ranks: Vec<usize> = (0..=faces.len())
        .map(|s| {
            if s == 0 || s >= faces.len() {
                return 0;
            }
            let mut m = Triplets::new(faces[s - 1].len(), faces[s].len());
            for (c, &f) in faces[s].iter().enumerate() {
                for (g, sign) in boundary(f) {
                    m.push(index[s - 1][&g], c, sign as i64);
                }
            }
            rank_i64(&m, characteristic)
        })
        .collect();
    let mut out = Vec::new();
    for s in 0..faces.len() {
        // faces with s vertices have dimension s−1 and give index i = s+1.
        let h = faces[s].len() - ranks[s] - ranks[s + 1];
        if h > 0 {
            out.push((s + 1, h as u64));
        }
    }
    Ok(out)
}

/// Homology of one Taylor strand (all cells sharing a multidegree).
fn taylor_strand_homology(cells: &[Cell], characteristic: u64) -> Vec<(usize, u64)> {
    let top = cells.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let mut levels: Vec<Vec<Cell>> = vec![Vec::new(); top + 2];
    for &c in cells {
        levels[c.count_ones() as usize].push(c);
    }
    strand_homology(&levels, characteristic, |c| {
        boundary(c).map(|(f, s)| (f, BigInt::from(s))).collect()
    })
}

/// Homology of a graded piece given by cells per level and a boundary map
/// returning signed faces (faces outside the piece are ignored).
pub(crate) fn strand_homology(
    levels: &[Vec<Cell>],
    characteristic: u64,
    bd: impl Fn(Cell) -> Vec<(Cell, BigInt)>,
) -> Vec<(usize, u64)> {
    let index: Vec<HashMap<Cell, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, &c)| (c, k)).collect())
        .collect();
    let rank = |i: usize| -> usize {
        if i == 0 || i >= levels.len() || levels[i].is_empty() || levels[i - 1].is_empty() {
            return 0;
        }
        let mut m = Triplets::new(levels[i - 1].len(), levels[i].len());
        for (c, &cell) in levels[i].iter().enumerate() {
            for (f, s) in bd(cell) {
                if let Some(&r) = index[i - 1].get(&f) {
                    m.push(r, c, s);
                }
            }
        }
        rank_big(&m, characteristic)
    };
    let ranks: Vec<usize> = (0..=levels.len()).map(rank).collect();
    (0..levels.len())
        .filter_map(|i| {
            let h = levels[i].len() - ranks[i] - ranks[i + 1];
            (h > 0).then_some((i, h as u64))
        })
        .collect()
}
