//! The complex `𝕃^r_q` supporting a resolution of `I^r` for squarefree `I`,
//! and the pruning sweep over its edges.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::betti::{pruned_betti, BettiTable};
use crate::error::{Error, Result};
use crate::ideal::{compositions, MonomialIdeal};
use crate::limits::Limits;
use crate::monomial::Monomial;
use crate::pruning::{prune, Matching};
use crate::taylor::{Cell, GradedComplex};

/// Order of the vertices `σ ∈ 𝒩^r_q`, which is also the sweep order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VertexOrder {
    /// Descending lex on `σ`, the order of the generators of `I^r`.
    #[default]
    Lex,
    /// Ascending lex on `σ`.
    RevLex,
    /// The pure powers `r·e_i` first, then the rest in descending lex.
    PowersFirst,
}

impl FromStr for VertexOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(VertexOrder::Lex),
            "revlex" => Ok(VertexOrder::RevLex),
            "powers-first" => Ok(VertexOrder::PowersFirst),
            _ => Err(Error::Parse(format!(
                "unknown vertex order {s:?} (expected lex, revlex or powers-first)"
            ))),
        }
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexOrder::Lex => "lex",
            VertexOrder::RevLex => "revlex",
            VertexOrder::PowersFirst => "powers-first",
        })
    }
}

/// `𝕃^r_q` as a facet list over an ordered vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerComplex {
    pub q: usize,
    pub r: u64,
    pub vertices: Vec<Vec<u64>>,
    pub facets: Vec<Cell>,
}

fn ordered_vertices(q: usize, r: u64, order: VertexOrder) -> Vec<Vec<u64>> {
    let mut v = compositions(q, r);
    match order {
        VertexOrder::Lex => {}
        VertexOrder::RevLex => v.reverse(),
        VertexOrder::PowersFirst => {
            let (mut pure, rest): (Vec<_>, Vec<_>) =
                v.into_iter().partition(|s| s.iter().any(|&e| e == r));
            pure.extend(rest);
            v = pure;
        }
    }
    v
}

/// Facets of `𝕃^r_q` with `s = ⌈r/2⌉`:
/// `F_i = {σ_i ≤ max(r−1, s), σ_j ≤ s for j ≠ i}`, `G_i = {σ_i ≥ r−1}` and
/// `B = {σ_j ≤ s for all j}`.
pub fn lrq_complex(q: usize, r: u64, order: VertexOrder, limits: &Limits) -> Result<PowerComplex> {
    if q == 0 || r == 0 {
        return Err(Error::Invalid("𝕃^r_q needs q ≥ 1 and r ≥ 1".into()));
    }
    let vertices = ordered_vertices(q, r, order);
    limits.check_dense(vertices.len(), "vertices of 𝕃^r_q")?;
    let s = r.div_ceil(2);
    let mask = |pred: &dyn Fn(&[u64]) -> bool| -> Cell {
        vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| pred(v))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    };
    let g = |i: usize| mask(&|v: &[u64]| v[i] + 1 >= r);
    let facets = if r == 1 || q == 1 {
        vec![(1u64 << vertices.len()) - 1]
    } else if r > 3 {
        let cap = (r - 1).max(s);
        let mut f: Vec<Cell> = (0..q)
            .map(|i| {
                mask(&|v: &[u64]| {
                    v.iter()
                        .enumerate()
                        .all(|(j, &e)| if j == i { e <= cap } else { e <= s })
                })
            })
            .collect();
        f.extend((0..q).map(g));
        f
    } else if r == 3 || q > 2 {
        let mut f = vec![mask(&|v: &[u64]| v.iter().all(|&e| e <= s))];
        f.extend((0..q).map(g));
        f
    } else {
        (0..q).map(g).collect()
    };
    Ok(PowerComplex {
        q,
        r,
        vertices,
        facets,
    })
}

/// Result of pruning `𝕃^r_q` for a concrete ideal.
#[derive(Clone, Debug)]
pub struct PowerPruning {
    pub lrq: PowerComplex,
    pub complex: GradedComplex,
    pub matching: Matching,
    /// Cell counts of `𝕃^r_q` itself, as a table for `R/I^r`.
    pub unpruned: BettiTable,
    pub pruned: BettiTable,
    /// Some vertex label is not a minimal generator of `I^r`.
    pub nonminimal_labels: bool,
}

impl PowerPruning {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.lrq.q,
            "r": self.lrq.r,
            "vertices": self.lrq.vertices,
            "labels": self.complex.labels().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "facets": self.lrq.facets.iter().map(|&f| crate::taylor::bits(f).map(|b| b + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "cells": self.complex.cell_count(),
            "matching": self.matching.to_json(),
            "unpruned": self.unpruned.to_json(),
            "pruned": self.pruned.to_json(),
            "nonminimal_labels": self.nonminimal_labels,
        })
    }
}

/// The pruning sweep over the edges of `𝕃^r_q`, vertices labelled by
/// `m_1^{σ_1}⋯m_q^{σ_q}`.
pub fn prune_power(
    ideal: &MonomialIdeal,
    r: u64,
    order: VertexOrder,
    characteristic: u64,
    limits: &Limits,
) -> Result<PowerPruning> {
    ideal.require_proper("prune_power")?;
    if !ideal.is_squarefree() {
        return Err(Error::Invalid(
            "the power complex supports resolutions of squarefree ideals only".into(),
        ));
    }
    let lrq = lrq_complex(ideal.q(), r, order, limits)?;
    let labels: Vec<Monomial> = lrq
        .vertices
        .iter()
        .map(|s| ideal.power_product(s))
        .collect::<Result<_>>()?;
    let minimal = crate::ideal::minimal_positions(&labels);
    let nonminimal_labels = minimal.len() < labels.len()
        || (1..labels.len()).any(|k| labels[..k].contains(&labels[k]));
    let complex = GradedComplex::from_facets(ideal.n(), labels, &lrq.facets, limits)?;
    let matching = prune(&complex);
    let unpruned = pruned_betti(&complex, &Matching::default(), characteristic);
    let pruned = pruned_betti(&complex, &matching, characteristic);
    Ok(PowerPruning {
        lrq,
        complex,
        matching,
        unpruned,
        pruned,
        nonminimal_labels,
    })
}
