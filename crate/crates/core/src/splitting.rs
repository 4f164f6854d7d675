//! Betti splittings `I = J + K`, split pruning and its recursive driver,
//! automatic plans, and the edge-ideal neighbourhood recursion.
//!
//! Every node of a plan first divides its ideal by the gcd of the generators
//! (multiplying by a monomial shifts all multidegrees and changes no pruning
//! decision), then partitions the remaining generators.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::betti::{betti_numbers, pruned_betti, BettiTable};
use crate::classes::vertex_split;
use crate::error::{Error, Result};
use crate::ideal::{Graph, MonomialIdeal};
use crate::limits::Limits;
use crate::monomial::Monomial;
use crate::pruning::{prune, prune_partial, verify_matching, MatchedPair, Matching, MatchingReport};
use crate::taylor::{Cell, GradedComplex};

/// How a node's generators are divided into the `J`-part and the `K`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partition {
    /// `J` = generators divisible by `x_i` (0-based).
    Var(usize),
    /// `J` = these generator positions (0-based), `K` = the rest.
    Indices(Vec<usize>),
}

/// A recursive splitting plan. Leaves prune directly.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum SplitPlan {
    #[default]
    Leaf,
    Split {
        by: Partition,
        j: Box<SplitPlan>,
        k: Box<SplitPlan>,
        meet: Box<SplitPlan>,
    },
}

impl SplitPlan {
    pub fn split(by: Partition, j: SplitPlan, k: SplitPlan, meet: SplitPlan) -> Self {
        SplitPlan::Split {
            by,
            j: Box::new(j),
            k: Box::new(k),
            meet: Box::new(meet),
        }
    }

    /// `"leaf"` or `{"var": i, "j": …, "k": …, "meet": …}` (or `"indices"`
    /// instead of `"var"`), 1-based.
    pub fn to_json(&self) -> Value {
        match self {
            SplitPlan::Leaf => json!("leaf"),
            SplitPlan::Split { by, j, k, meet } => {
                let mut m = Map::new();
                match by {
                    Partition::Var(i) => m.insert("var".into(), json!(i + 1)),
                    Partition::Indices(v) => m.insert(
                        "indices".into(),
                        json!(v.iter().map(|x| x + 1).collect::<Vec<_>>()),
                    ),
                };
                m.insert("j".into(), j.to_json());
                m.insert("k".into(), k.to_json());
                m.insert("meet".into(), meet.to_json());
                Value::Object(m)
            }
        }
    }

    /// Inverse of [`SplitPlan::to_json`]; missing children are leaves.
    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Null => Ok(SplitPlan::Leaf),
            Value::String(s) if s == "leaf" => Ok(SplitPlan::Leaf),
            Value::Object(m) => {
                let one_based = |x: &Value| -> Result<usize> {
                    match x.as_u64() {
                        Some(i) if i >= 1 => Ok(i as usize - 1),
                        _ => Err(Error::Parse(format!("expected a positive index, got {x}"))),
                    }
                };
                let by = match (m.get("var"), m.get("indices")) {
                    (Some(x), None) => Partition::Var(one_based(x)?),
                    (None, Some(Value::Array(xs))) => Partition::Indices(
                        xs.iter().map(one_based).collect::<Result<Vec<_>>>()?,
                    ),
                    _ => {
                        return Err(Error::Parse(
                            "a split node needs exactly one of \"var\" or \"indices\" (an array)"
                                .into(),
                        ))
                    }
                };
                for key in m.keys() {
                    if !matches!(key.as_str(), "var" | "indices" | "j" | "k" | "meet") {
                        return Err(Error::Parse(format!("unknown plan field {key:?}")));
                    }
                }
                let child = |key: &str| m.get(key).map_or(Ok(SplitPlan::Leaf), SplitPlan::from_json);
                Ok(SplitPlan::split(by, child("j")?, child("k")?, child("meet")?))
            }
            other => Err(Error::Parse(format!("not a plan node: {other}"))),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SplitPlan::Leaf => 0,
            SplitPlan::Split { j, k, meet, .. } => 1 + j.depth().max(k.depth()).max(meet.depth()),
        }
    }
}

/// Generators divisible by `x_i` versus the rest.
#[derive(Clone, Debug)]
pub struct XiPartition {
    pub j: MonomialIdeal,
    pub k: MonomialIdeal,
    pub j_idx: Vec<usize>,
    pub k_idx: Vec<usize>,
    /// One side is empty, so the splitting is trivial.
    pub degenerate: bool,
}

pub fn xi_partition(ideal: &MonomialIdeal, i: usize) -> Result<XiPartition> {
    if i >= ideal.n() {
        return Err(Error::Dimension {
            expected: ideal.n(),
            found: i + 1,
        });
    }
    let (j_idx, k_idx) = ideal.var_partition(i);
    Ok(XiPartition {
        j: ideal.select(&j_idx),
        k: ideal.select(&k_idx),
        degenerate: j_idx.is_empty() || k_idx.is_empty(),
        j_idx,
        k_idx,
    })
}

/// Generators of `J ∩ K` from all pairwise lcms.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub ideal: MonomialIdeal,
    /// `(a, b)` positions in `J` and `K` of every lcm, in enumeration order.
    pub pairs: Vec<(usize, usize)>,
    /// Enumeration positions of the surviving lcms, one per generator of
    /// `ideal`.
    pub kept: Vec<usize>,
    /// `(removed, witness)`: enumeration positions; the witness is the
    /// lowest-index surviving lcm dividing the removed one.
    pub dominated: Vec<(usize, usize)>,
}

/// `lcm(m_a, m_b)` for `a` in `J` (outer loop) and `b` in `K` (inner loop),
/// minimalized keeping first occurrences.
pub fn intersection_gens(j: &MonomialIdeal, k: &MonomialIdeal) -> Result<Intersection> {
    if j.n() != k.n() {
        return Err(Error::Dimension {
            expected: j.n(),
            found: k.n(),
        });
    }
    let mut pairs = Vec::with_capacity(j.q() * k.q());
    let mut lcms = Vec::with_capacity(j.q() * k.q());
    for a in 0..j.q() {
        for b in 0..k.q() {
            pairs.push((a, b));
            lcms.push(j.gen(a).lcm_unchecked(k.gen(b)));
        }
    }
    let kept = crate::ideal::minimal_positions(&lcms);
    let is_kept: BTreeSet<usize> = kept.iter().copied().collect();
    let dominated = (0..lcms.len())
        .filter(|p| !is_kept.contains(p))
        .map(|p| {
            let w = *kept
                .iter()
                .find(|&&s| lcms[s].divides(&lcms[p]))
                .expect("a removed lcm has a surviving divisor");
            (p, w)
        })
        .collect();
    let ideal = MonomialIdeal::from_minimal(j.n(), kept.iter().map(|&p| lcms[p].clone()).collect())?;
    Ok(Intersection {
        ideal,
        pairs,
        kept,
        dominated,
    })
}

/// Outcome of [`is_betti_splitting`].
#[derive(Clone, Debug)]
pub struct SplittingCheck {
    pub holds: bool,
    /// `(i, α, β_{i,α}(I), β_{i,α}(J) + β_{i,α}(K) + β_{i−1,α}(J∩K))`,
    /// ideal indexing.
    pub failures: Vec<(usize, Monomial, u64, u64)>,
}

/// Check `β_{i,α}(I) = β_{i,α}(J) + β_{i,α}(K) + β_{i−1,α}(J∩K)` for every
/// `(i, α)` with the oracle, where `J`, `K` are the generator positions
/// `j_idx` and their complement.
pub fn is_betti_splitting(
    ideal: &MonomialIdeal,
    j_idx: &[usize],
    characteristic: u64,
    limits: &Limits,
) -> Result<SplittingCheck> {
    let (j, k) = split_by_indices(ideal, j_idx)?;
    let meet = intersection_gens(&j, &k)?.ideal;
    let beta = |i: &MonomialIdeal| -> Result<BettiTable> {
        Ok(betti_numbers(i, characteristic, limits)?.to_ideal_indexing())
    };
    let lhs = beta(ideal)?;
    let mut rhs = beta(&j)?;
    rhs.absorb(&beta(&k)?, 0);
    rhs.absorb(&beta(&meet)?, 1);
    let failures = lhs.differences(&rhs);
    Ok(SplittingCheck {
        holds: failures.is_empty(),
        failures,
    })
}

fn split_by_indices(ideal: &MonomialIdeal, j_idx: &[usize]) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let (j_idx, k_idx) = complement(ideal.q(), j_idx)?;
    Ok((ideal.select(&j_idx), ideal.select(&k_idx)))
}

fn complement(q: usize, j_idx: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let set: BTreeSet<usize> = j_idx.iter().copied().collect();
    if set.len() != j_idx.len() {
        return Err(Error::Invalid("repeated generator index in a partition".into()));
    }
    if let Some(&bad) = set.iter().find(|&&i| i >= q) {
        return Err(Error::Invalid(format!(
            "generator index {} out of range (the node has {q} generators)",
            bad + 1
        )));
    }
    let k_idx = (0..q).filter(|i| !set.contains(i)).collect();
    Ok((set.into_iter().collect(), k_idx))
}

/// One evaluated node of a plan.
#[derive(Clone, Debug)]
pub struct SplitNode {
    /// The node's ideal before the gcd is divided out.
    pub ideal: MonomialIdeal,
    pub gcd: Monomial,
    /// Pruned counts `β̄` of the node's ideal, ideal indexing.
    pub table: BettiTable,
    pub kind: NodeKind,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    Leaf {
        /// A split was requested but one side was empty.
        degenerate: bool,
    },
    Split {
        j_idx: Vec<usize>,
        k_idx: Vec<usize>,
        meet: Intersection,
        children: Box<[SplitNode; 3]>,
    },
}

impl SplitNode {
    pub fn leaves(&self) -> usize {
        match &self.kind {
            NodeKind::Leaf { .. } => 1,
            NodeKind::Split { children, .. } => children.iter().map(SplitNode::leaves).sum(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("ideal".into(), json!(self.ideal.to_string()));
        m.insert("gcd".into(), json!(self.gcd.to_string()));
        m.insert("totals".into(), json!(self.table.totals()));
        match &self.kind {
            NodeKind::Leaf { degenerate } => {
                m.insert("leaf".into(), json!(true));
                m.insert("degenerate".into(), json!(degenerate));
            }
            NodeKind::Split {
                j_idx,
                k_idx,
                meet,
                children,
            } => {
                let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
                m.insert("leaf".into(), json!(false));
                m.insert("j_part".into(), json!(one(j_idx)));
                m.insert("k_part".into(), json!(one(k_idx)));
                m.insert("meet_generators".into(), json!(meet.ideal.q()));
                m.insert("meet_superfluous".into(), json!(meet.dominated.len()));
                m.insert("j".into(), children[0].to_json());
                m.insert("k".into(), children[1].to_json());
                m.insert("meet".into(), children[2].to_json());
            }
        }
        Value::Object(m)
    }
}

/// The split matching realized on the Taylor complex of the top ideal.
#[derive(Clone, Debug)]
pub struct TaylorRealization {
    pub matching: Matching,
    pub report: MatchingReport,
    /// Critical-cell counts of `matching`, for `R/I`.
    pub pruned: BettiTable,
}

#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub tree: SplitNode,
    /// `β̄` for `R/I`.
    pub pruned: BettiTable,
    pub oracle: BettiTable,
    pub minimal: bool,
    pub taylor: Option<TaylorRealization>,
}

impl SplitOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "minimal": self.minimal,
            "pruned": self.pruned.to_json(),
            "oracle": self.oracle.to_json(),
            "tree": self.tree.to_json(),
            "taylor": self.taylor.as_ref().map(|t| json!({
                "pairs": t.matching.len(),
                "verified": t.report.passed(),
                "failure": t.report.failure.as_ref().map(|f| f.to_string()),
                "pruned": t.pruned.to_json(),
                "matching": t.matching.to_json(),
            })),
        })
    }
}

/// Pruned counts of `ideal` under `plan`, combined by
/// `β̄_{i,α}(I) = β̄_{i,α}(J) + β̄_{i,α}(K) + β̄_{i−1,α}(J∩K)`.
pub fn split_tree(ideal: &MonomialIdeal, plan: &SplitPlan, limits: &Limits) -> Result<SplitNode> {
    let (gcd, base) = ideal.factor_gcd();
    let leaf = |degenerate: bool| -> Result<SplitNode> {
        let table = if ideal.is_zero() {
            BettiTable::new(ideal.n(), 0)
        } else {
            let complex = GradedComplex::taylor(ideal, limits)?;
            pruned_betti(&complex, &prune(&complex), 0).to_ideal_indexing()
        };
        Ok(SplitNode {
            ideal: ideal.clone(),
            gcd: gcd.clone(),
            table,
            kind: NodeKind::Leaf { degenerate },
        })
    };
    let SplitPlan::Split { by, j, k, meet } = plan else {
        return leaf(false);
    };
    let j_idx = match by {
        Partition::Var(i) => xi_partition(&base, *i)?.j_idx,
        Partition::Indices(v) => v.clone(),
    };
    let (j_idx, k_idx) = complement(base.q(), &j_idx)?;
    if j_idx.is_empty() || k_idx.is_empty() {
        return leaf(true);
    }
    let ji = base.select(&j_idx);
    let ki = base.select(&k_idx);
    let inter = intersection_gens(&ji, &ki)?;
    let ((cj, ck), cm) = rayon::join(
        || rayon::join(|| split_tree(&ji, j, limits), || split_tree(&ki, k, limits)),
        || split_tree(&inter.ideal, meet, limits),
    );
    let (cj, ck, cm) = (cj?, ck?, cm?);
    let mut table = cj.table.clone();
    table.absorb(&ck.table, 0);
    table.absorb(&cm.table, 1);
    Ok(SplitNode {
        ideal: ideal.clone(),
        gcd: gcd.clone(),
        table: table.scaled(&gcd)?,
        kind: NodeKind::Split {
            j_idx,
            k_idx,
            meet: inter,
            children: Box::new([cj, ck, cm]),
        },
    })
}

/// Options for [`split_prune`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitOptions {
    pub characteristic: u64,
    /// Also build the combined matching on the Taylor complex of `I` (needs
    /// `q` within the dense cap).
    pub realize: bool,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions {
            characteristic: 0,
            realize: true,
        }
    }
}

/// Split pruning along `plan`; minimality is decided against the oracle.
pub fn split_prune(
    ideal: &MonomialIdeal,
    plan: &SplitPlan,
    options: SplitOptions,
    limits: &Limits,
) -> Result<SplitOutcome> {
    ideal.require_proper("split_prune")?;
    let tree = split_tree(ideal, plan, limits)?;
    let mut pruned = BettiTable::from_ideal_indexing(&tree.table);
    pruned = retag(&pruned, options.characteristic);
    let oracle = betti_numbers(ideal, options.characteristic, limits)?;
    let minimal = pruned.same_counts(&oracle);
    let taylor = if options.realize && ideal.q() <= limits.max_dense_vertices {
        Some(realize(ideal, &tree, options.characteristic, limits)?)
    } else {
        None
    };
    Ok(SplitOutcome {
        tree,
        pruned,
        oracle,
        minimal,
        taylor,
    })
}

fn retag(t: &BettiTable, characteristic: u64) -> BettiTable {
    let mut out = BettiTable::new(t.n(), characteristic);
    for (i, a, c) in t.entries() {
        out.add(i, a.clone(), c);
    }
    out
}

/// Combined matching on the Taylor complex of the top ideal: each `J`/`K`
/// region is handled recursively; the cells meeting both parts (`X'`) first
/// receive the domination pairs for superfluous lcms, then one sweep
/// restricted to edges inside `X'`.
fn realize(
    ideal: &MonomialIdeal,
    tree: &SplitNode,
    characteristic: u64,
    limits: &Limits,
) -> Result<TaylorRealization> {
    let complex = GradedComplex::taylor(ideal, limits)?;
    let mut taken = vec![false; complex.mask_bound() as usize];
    let mut matching = Matching::default();
    let vertices: Vec<usize> = (0..ideal.q()).collect();
    realize_node(&complex, tree, &vertices, &mut taken, &mut matching);
    let report = verify_matching(&complex, &matching);
    let pruned = pruned_betti(&complex, &matching, characteristic);
    Ok(TaylorRealization {
        matching,
        report,
        pruned,
    })
}

fn mask_of(vs: &[usize]) -> Cell {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

fn realize_node(
    complex: &GradedComplex,
    node: &SplitNode,
    vertices: &[usize],
    taken: &mut [bool],
    out: &mut Matching,
) {
    let region = mask_of(vertices);
    let sweep = |allowed: &dyn Fn(Cell) -> bool, taken: &mut [bool], out: &mut Matching| {
        let init = Matching::new(
            out.pairs()
                .iter()
                .copied()
                .filter(|p| taken[p.lower as usize])
                .collect(),
        );
        let m = prune_partial(complex, vertices, |s, _| allowed(s), Some(&init));
        for p in &m.pairs()[init.len()..] {
            taken[p.lower as usize] = true;
            taken[p.upper() as usize] = true;
            out.push(*p);
        }
    };
    match &node.kind {
        NodeKind::Leaf { .. } => {
            sweep(&|s| s & !region == 0, taken, out);
        }
        NodeKind::Split {
            j_idx,
            k_idx,
            meet,
            children,
        } => {
            let jv: Vec<usize> = j_idx.iter().map(|&a| vertices[a]).collect();
            let kv: Vec<usize> = k_idx.iter().map(|&b| vertices[b]).collect();
            realize_node(complex, &children[0], &jv, taken, out);
            realize_node(complex, &children[1], &kv, taken, out);
            let (jm, km) = (mask_of(&jv), mask_of(&kv));
            for &(removed, witness) in &meet.dominated {
                let (a, b) = meet.pairs[removed];
                let (a2, b2) = meet.pairs[witness];
                let base = 1u64 << jv[a] | 1u64 << kv[b];
                let w = (1u64 << jv[a2] | 1u64 << kv[b2]) & !base;
                let dir = w.trailing_zeros() as usize;
                let free = region & !base & !(1u64 << dir);
                // Every subset of the free vertices, added to the pair.
                let mut s = free;
                loop {
                    let lower = base | s;
                    let upper = lower | 1u64 << dir;
                    if !taken[lower as usize] && !taken[upper as usize] {
                        taken[lower as usize] = true;
                        taken[upper as usize] = true;
                        out.push(MatchedPair { lower, dir });
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & free;
                }
            }
            sweep(
                &|s| s & !region == 0 && s & jm != 0 && s & km != 0,
                taken,
                out,
            );
        }
    }
}

/// Strategies for building a plan automatically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutoPlan {
    /// Follow a vertex-splitting certificate, recomputed at every node.
    Cert,
    /// Split by the variable dividing the most (but not all) generators.
    MaxVar,
    /// The edge-ideal neighbourhood recursion.
    Edge,
}

impl std::str::FromStr for AutoPlan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cert" => Ok(AutoPlan::Cert),
            "maxvar" => Ok(AutoPlan::MaxVar),
            "edge" => Ok(AutoPlan::Edge),
            _ => Err(Error::Parse(format!(
                "unknown strategy {s:?} (expected cert, maxvar or edge)"
            ))),
        }
    }
}

impl fmt::Display for AutoPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutoPlan::Cert => "cert",
            AutoPlan::MaxVar => "maxvar",
            AutoPlan::Edge => "edge",
        })
    }
}

/// Build a plan for `ideal`. `Cert` fails with `Invalid` when the ideal is
/// not vertex splittable.
pub fn auto_plan(ideal: &MonomialIdeal, strategy: AutoPlan) -> Result<SplitPlan> {
    match strategy {
        AutoPlan::Cert => cert_plan(ideal)?
            .ok_or_else(|| Error::Invalid(format!("({ideal}) is not vertex splittable"))),
        AutoPlan::MaxVar => maxvar_plan(ideal),
        AutoPlan::Edge => edge_plan(ideal, &[]),
    }
}

/// Children of a variable split of the gcd-free part, for recursion.
fn var_children(base: &MonomialIdeal, i: usize) -> Result<(MonomialIdeal, MonomialIdeal, MonomialIdeal)> {
    let p = xi_partition(base, i)?;
    let meet = intersection_gens(&p.j, &p.k)?.ideal;
    Ok((p.j, p.k, meet))
}

fn cert_plan(ideal: &MonomialIdeal) -> Result<Option<SplitPlan>> {
    let (_, base) = ideal.factor_gcd();
    if base.q() <= 1 {
        return Ok(Some(SplitPlan::Leaf));
    }
    let Some(cert) = vertex_split(&base)? else {
        return Ok(None);
    };
    let crate::classes::SplitCertificate::Node { var, .. } = cert else {
        return Ok(Some(SplitPlan::Leaf));
    };
    let (j, k, meet) = var_children(&base, var)?;
    let (Some(pj), Some(pk), Some(pm)) = (cert_plan(&j)?, cert_plan(&k)?, cert_plan(&meet)?) else {
        return Ok(None);
    };
    Ok(Some(SplitPlan::split(Partition::Var(var), pj, pk, pm)))
}

/// Variables dividing some but not all generators, with their counts.
fn splitting_vars(base: &MonomialIdeal) -> Vec<(usize, usize)> {
    (0..base.n())
        .map(|i| (i, base.gens().iter().filter(|m| m.exponent(i) > 0).count()))
        .filter(|&(_, c)| c > 0 && c < base.q())
        .collect()
}

fn maxvar_plan(ideal: &MonomialIdeal) -> Result<SplitPlan> {
    let (_, base) = ideal.factor_gcd();
    if base.q() <= 2 {
        return Ok(SplitPlan::Leaf);
    }
    let Some(&(i, _)) = splitting_vars(&base)
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
    else {
        return Ok(SplitPlan::Leaf);
    };
    let (j, k, meet) = var_children(&base, i)?;
    Ok(SplitPlan::split(
        Partition::Var(i),
        maxvar_plan(&j)?,
        maxvar_plan(&k)?,
        maxvar_plan(&meet)?,
    ))
}

/// The graph of a squarefree quadratic ideal, or `None`.
fn as_graph(ideal: &MonomialIdeal) -> Option<Graph> {
    let mut edges = Vec::with_capacity(ideal.q());
    for m in ideal.gens() {
        if m.degree() != 2 || !m.is_squarefree() {
            return None;
        }
        let v: Vec<usize> = m.support().collect();
        edges.push((v[0], v[1]));
    }
    Graph::new(ideal.n(), edges).ok()
}

/// The split vertex for the edge recursion: the highest-index vertex whose
/// neighbours are pairwise non-adjacent, else the highest-index vertex of
/// maximum degree.
pub fn edge_split_vertex(g: &Graph) -> Option<usize> {
    let used: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    used.iter()
        .rev()
        .copied()
        .find(|&v| independent_neighbourhood(g, v).is_ok())
        .or_else(|| used.iter().rev().copied().max_by_key(|&v| g.degree(v)))
}

fn independent_neighbourhood(g: &Graph, v: usize) -> std::result::Result<(), (usize, usize)> {
    let nb = g.neighbors(v);
    for (x, &a) in nb.iter().enumerate() {
        for &b in &nb[x + 1..] {
            if g.has_edge(a, b) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

/// Edge strategy. `prefs` are the neighbours of an earlier split vertex;
/// the intersection ideals are split along them in order.
fn edge_plan(ideal: &MonomialIdeal, prefs: &[usize]) -> Result<SplitPlan> {
    let (_, base) = ideal.factor_gcd();
    if base.q() <= 1 {
        return Ok(SplitPlan::Leaf);
    }
    let candidates = splitting_vars(&base);
    let divides_some = |i: usize| candidates.iter().any(|&(v, _)| v == i);
    // Only the intersection inherits the neighbours of a graph split vertex;
    // along a chain of neighbour splits all three parts keep the rest.
    let recurse = |i: usize, parts: &[usize], meet_prefs: &[usize]| -> Result<SplitPlan> {
        let (j, k, meet) = var_children(&base, i)?;
        Ok(SplitPlan::split(
            Partition::Var(i),
            edge_plan(&j, parts)?,
            edge_plan(&k, parts)?,
            edge_plan(&meet, meet_prefs)?,
        ))
    };
    if let Some(pos) = prefs.iter().position(|&i| divides_some(i)) {
        let rest = &prefs[pos + 1..];
        return recurse(prefs[pos], rest, rest);
    }
    if let Some(m) = base.gens().iter().find(|m| m.degree() == 1) {
        let i = m.support().next().expect("a variable");
        return recurse(i, &[], &[]);
    }
    if let Some(g) = as_graph(&base) {
        if let Some(v) = edge_split_vertex(&g) {
            return recurse(v, &[], &g.neighbors(v));
        }
    }
    if base.q() > 24 {
        return maxvar_plan(&base);
    }
    Ok(SplitPlan::Leaf)
}

/// The pieces of the neighbourhood recursion at a vertex `v` whose
/// neighbours `x_{k_1}, …, x_{k_s}` are pairwise non-adjacent.
#[derive(Clone, Debug)]
pub struct EdgeSplit {
    pub vertex: usize,
    pub neighbours: Vec<usize>,
    /// `x_v (x_{k_1}, …, x_{k_s})`.
    pub j: MonomialIdeal,
    /// Edges avoiding `x_v`.
    pub k: MonomialIdeal,
    /// `M_k = (x_k x_v) ∩ [(edges avoiding N(v), N(k) and v) + (x_ℓ : ℓ ∈ N(k), ℓ ≠ v)]`.
    pub m: Vec<MonomialIdeal>,
    pub hypergraphs: Vec<HypergraphPiece>,
}

/// `I(H_T)` for a nonempty set `T` of neighbours.
#[derive(Clone, Debug)]
pub struct HypergraphPiece {
    /// Positions into `neighbours`.
    pub subset: Vec<usize>,
    /// `⋂_{t ∈ T} M_t` divided by `x_T x_v`.
    pub exact: MonomialIdeal,
    /// Surviving edges plus the transversal products `x_{ℓ_1}⋯x_{ℓ_m}`.
    pub formula: MonomialIdeal,
}

/// Intersection of two monomial ideals.
pub fn ideal_intersection(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    Ok(intersection_gens(a, b)?.ideal)
}

pub fn edge_split_recursion(g: &Graph, v: usize, limits: &Limits) -> Result<EdgeSplit> {
    let n = g.n();
    if v >= n {
        return Err(Error::Dimension {
            expected: n,
            found: v + 1,
        });
    }
    if let Err((a, b)) = independent_neighbourhood(g, v) {
        return Err(Error::Invalid(format!(
            "neighbours of x{} are not independent: x{}x{} is an edge",
            v + 1,
            a + 1,
            b + 1
        )));
    }
    let nb = g.neighbors(v);
    if nb.len() > 16 || (1usize << nb.len()) > limits.max_faces {
        return Err(Error::Capacity {
            what: "neighbour subsets",
            size: 1 << nb.len().min(63),
            cap: limits.max_faces.min(1 << 16),
            hint: "use split --auto edge",
        });
    }
    let edge = |a: usize, b: usize| Monomial::squarefree(n, [a, b]);
    let xv = Monomial::var(n, v);
    let j = MonomialIdeal::from_minimal(n, nb.iter().map(|&k| edge(k, v)).collect())?;
    let k = MonomialIdeal::from_minimal(
        n,
        g.edges()
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| edge(a, b))
            .collect(),
    )?;
    let mut excluded_v: BTreeSet<usize> = nb.iter().copied().collect();
    excluded_v.insert(v);
    let others = |k: usize| -> Vec<usize> { g.neighbors(k).into_iter().filter(|&l| l != v).collect() };
    let surviving_edges = |excl: &BTreeSet<usize>| -> Vec<Monomial> {
        g.edges()
            .iter()
            .filter(|(a, b)| !excl.contains(a) && !excl.contains(b))
            .map(|&(a, b)| edge(a, b))
            .collect()
    };
    let mut m = Vec::with_capacity(nb.len());
    for &kk in &nb {
        let mut excl = excluded_v.clone();
        excl.extend(g.neighbors(kk));
        let mut gens = surviving_edges(&excl);
        gens.extend(others(kk).into_iter().map(|l| Monomial::var(n, l)));
        let l_k = MonomialIdeal::minimalize(n, gens)?;
        let principal = MonomialIdeal::from_minimal(n, vec![edge(kk, v)])?;
        m.push(ideal_intersection(&principal, &l_k)?);
    }
    let mut hypergraphs = Vec::new();
    for bitset in 1u64..(1 << nb.len()) {
        let subset: Vec<usize> = (0..nb.len()).filter(|t| bitset >> t & 1 == 1).collect();
        let mut meet = m[subset[0]].clone();
        for &t in &subset[1..] {
            meet = ideal_intersection(&meet, &m[t])?;
        }
        let mut u = xv.clone();
        for &t in &subset {
            u = u.mul_var(nb[t])?;
        }
        let exact = MonomialIdeal::minimalize(
            n,
            meet.gens()
                .iter()
                .map(|g| g.div(&u).ok_or_else(|| Error::Internal("x_T x_v must divide".into())))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let mut excl = excluded_v.clone();
        for &t in &subset {
            excl.extend(g.neighbors(nb[t]));
        }
        let mut gens = surviving_edges(&excl);
        let mut products = vec![Monomial::one(n)];
        for &t in &subset {
            let choices = others(nb[t]);
            products = products
                .iter()
                .flat_map(|p| choices.iter().map(move |&l| p.lcm_unchecked(&Monomial::var(n, l))))
                .collect();
        }
        gens.extend(products);
        let formula = MonomialIdeal::minimalize(n, gens)?;
        hypergraphs.push(HypergraphPiece {
            subset,
            exact,
            formula,
        });
    }
    Ok(EdgeSplit {
        vertex: v,
        neighbours: nb,
        j,
        k,
        m,
        hypergraphs,
    })
}
