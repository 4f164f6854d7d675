//! Graded simplicial complexes on labelled vertices: the Taylor complex and
//! its subcomplexes.
//!
//! Cells are bitmasks over vertex indices. A cell's multidegree is the lcm of
//! its vertex labels; the empty cell has degree `1` and homological index 0.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::Monomial;

/// A cell, as a bitmask over vertex (generator) indices.
pub type Cell = u64;

const NO_CELL: u32 = u32::MAX;

/// A cell together with its multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCell {
    pub cell: Cell,
    pub degree: Monomial,
}

impl GradedCell {
    pub fn index(&self) -> usize {
        self.cell.count_ones() as usize
    }
}

/// Signed facets of `cell`: removing the `k`-th smallest index (1-based) has
/// sign `(-1)^(k-1)`.
pub fn boundary(cell: Cell) -> impl Iterator<Item = (Cell, i8)> {
    let mut rest = cell;
    let mut k = 0u32;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let bit = rest & rest.wrapping_neg();
        rest ^= bit;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        k += 1;
        Some((cell ^ bit, sign))
    })
}

/// `[cell : cell \ {i}]` for `i` in `cell`.
#[inline]
pub fn incidence(cell: Cell, i: usize) -> i8 {
    debug_assert!(cell >> i & 1 == 1);
    let below = (cell & ((1u64 << i) - 1)).count_ones();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

/// lcm of the generators indexed by `cell`; `1` for the empty cell.
pub fn cell_lcm(ideal: &MonomialIdeal, cell: Cell) -> Result<Monomial> {
    if ideal.q() < 64 && cell >> ideal.q() != 0 {
        return Err(Error::Invalid(format!(
            "cell {cell:#b} uses indices beyond q = {}",
            ideal.q()
        )));
    }
    let mut l = Monomial::one(ideal.n());
    for i in bits(cell) {
        l.lcm_assign(ideal.gen(i));
    }
    Ok(l)
}

/// Indices of set bits, ascending.
pub fn bits(mut cell: Cell) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if cell == 0 {
            return None;
        }
        let i = cell.trailing_zeros() as usize;
        cell &= cell - 1;
        Some(i)
    })
}

pub fn cell_from_indices(idx: impl IntoIterator<Item = usize>) -> Cell {
    idx.into_iter().fold(0, |c, i| c | 1u64 << i)
}

/// Edges `σ → σ'` of the Taylor complex on `q` generators with `|σ'| = |σ|−1`,
/// by ascending `σ` and then facet position. Nothing is materialized.
pub fn taylor_edges(q: usize, limits: &Limits) -> Result<impl Iterator<Item = (Cell, Cell)>> {
    limits.check_dense(q, "generators for edge enumeration")?;
    let top: u64 = 1u64 << q;
    Ok((1..top).flat_map(|s| boundary(s).map(move |(f, _)| (s, f))))
}

/// Multidegrees of all cells of a complex, interned.
///
/// `id(mask)` indexes into `degrees()`; equal ids mean equal multidegrees.
#[derive(Clone, Debug)]
pub struct DegreeTable {
    degrees: Vec<Monomial>,
    ids: Vec<u32>,
}

impl DegreeTable {
    fn build(labels: &[Monomial], n: usize, member: Option<&[bool]>) -> Self {
        let v = labels.len();
        let size = 1usize << v;
        let mut degrees = vec![Monomial::one(n)];
        let mut index: HashMap<Monomial, u32> = HashMap::new();
        index.insert(Monomial::one(n), 0);
        let mut join: HashMap<(u32, u32), u32> = HashMap::new();
        let mut ids = vec![NO_CELL; size];
        ids[0] = 0;
        for mask in 1..size {
            if let Some(m) = member {
                if !m[mask] {
                    continue;
                }
            }
            let low = mask.trailing_zeros();
            let rest = ids[mask & (mask - 1)];
            let id = *join.entry((rest, low)).or_insert_with(|| {
                let d = degrees[rest as usize].lcm_unchecked(&labels[low as usize]);
                *index.entry(d).or_insert_with_key(|d| {
                    degrees.push(d.clone());
                    (degrees.len() - 1) as u32
                })
            });
            ids[mask] = id;
        }
        DegreeTable { degrees, ids }
    }

    #[inline]
    pub fn id(&self, cell: Cell) -> u32 {
        self.ids[cell as usize]
    }

    pub fn degrees(&self) -> &[Monomial] {
        &self.degrees
    }

    pub fn degree(&self, cell: Cell) -> &Monomial {
        &self.degrees[self.id(cell) as usize]
    }
}

/// A simplicial complex on at most `max_dense_vertices` labelled vertices,
/// graded by lcm of labels. The Taylor complex is the full simplex.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    n: usize,
    labels: Vec<Monomial>,
    member: Option<Vec<bool>>,
    table: DegreeTable,
}

impl GradedComplex {
    /// The Taylor complex of `ideal` (the empty cell included).
    pub fn taylor(ideal: &MonomialIdeal, limits: &Limits) -> Result<Self> {
        limits.check_dense(ideal.q(), "generators for the Taylor complex")?;
        let labels = ideal.gens().to_vec();
        let table = DegreeTable::build(&labels, ideal.n(), None);
        Ok(GradedComplex {
            n: ideal.n(),
            labels,
            member: None,
            table,
        })
    }

    /// The subcomplex of the simplex on `labels` generated by `facets`.
    pub fn from_facets(
        n: usize,
        labels: Vec<Monomial>,
        facets: &[Cell],
        limits: &Limits,
    ) -> Result<Self> {
        limits.check_dense(labels.len(), "vertices of the complex")?;
        let size = 1usize << labels.len();
        let mut member = vec![false; size];
        let mut count = 0usize;
        for &f in facets {
            if f >> labels.len() != 0 {
                return Err(Error::Invalid(format!("facet {f:#b} outside the vertex set")));
            }
            let mut s = f;
            loop {
                if !member[s as usize] {
                    member[s as usize] = true;
                    count += 1;
                    if count > limits.max_faces {
                        return Err(Error::Capacity {
                            what: "faces of the complex",
                            size: count,
                            cap: limits.max_faces,
                            hint: "raise MORSERES_MAX_FACES",
                        });
                    }
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        member[0] = true;
        let table = DegreeTable::build(&labels, n, Some(&member));
        Ok(GradedComplex {
            n,
            labels,
            member: Some(member),
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices.
    pub fn vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    pub fn is_full_simplex(&self) -> bool {
        self.member.is_none()
    }

    /// One past the largest mask.
    pub fn mask_bound(&self) -> u64 {
        1u64 << self.labels.len()
    }

    #[inline]
    pub fn contains(&self, cell: Cell) -> bool {
        if cell >= self.mask_bound() {
            return false;
        }
        match &self.member {
            None => true,
            Some(m) => m[cell as usize],
        }
    }

    /// Cells in ascending mask order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.mask_bound()).filter(move |&c| self.contains(c))
    }

    pub fn cell_count(&self) -> usize {
        match &self.member {
            None => self.mask_bound() as usize,
            Some(m) => m.iter().filter(|&&b| b).count(),
        }
    }

    pub fn table(&self) -> &DegreeTable {
        &self.table
    }

    #[inline]
    pub fn degree_id(&self, cell: Cell) -> u32 {
        self.table.id(cell)
    }

    pub fn degree(&self, cell: Cell) -> &Monomial {
        self.table.degree(cell)
    }

    pub fn graded(&self, cell: Cell) -> GradedCell {
        GradedCell {
            cell,
            degree: self.degree(cell).clone(),
        }
    }

    /// Largest homological index present.
    pub fn top_index(&self) -> usize {
        self.cells().map(|c| c.count_ones() as usize).max().unwrap_or(0)
    }

    /// The graded Hasse diagram: cells with degrees and signed codimension-one
    /// edges. Vertex indices in masks and lists are 1-based in the output.
    pub fn hasse_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells()
            .map(|c| {
                json!({
                    "cell": c,
                    "vertices": bits(c).map(|i| i + 1).collect::<Vec<_>>(),
                    "index": c.count_ones(),
                    "degree": self.degree(c).exponents(),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .cells()
            .flat_map(|c| boundary(c).map(move |(f, s)| json!([c, f, s])))
            .collect();
        json!({
            "vertices": self.labels.iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
            "cells": cells,
            "edges": edges,
        })
    }
}
