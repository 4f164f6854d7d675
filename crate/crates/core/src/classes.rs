//! Decision procedures for stable, strongly stable, lexsegment, linear
//! quotients, vertex splittable and componentwise linear ideals.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use crate::betti::betti_numbers;
use crate::error::{Error, Result};
use crate::ideal::{compositions, MonomialIdeal};
use crate::limits::Limits;
use crate::monomial::Monomial;

/// `x_i (m / x_{max(m)}) ∈ I` for every generator `m` and `i < max(m)`.
pub fn is_stable(ideal: &MonomialIdeal) -> Result<bool> {
    ideal.require_proper("is_stable")?;
    for m in ideal.gens() {
        let Some(j) = m.max_var() else { continue };
        let base = m.div_var(j).expect("x_max divides");
        for i in 0..j {
            if !ideal.contains(&base.mul_var(i)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `x_i (m / x_j) ∈ I` for every generator `m`, every `x_j | m` and `i < j`.
pub fn is_strongly_stable(ideal: &MonomialIdeal) -> Result<bool> {
    ideal.require_proper("is_strongly_stable")?;
    for m in ideal.gens() {
        for j in m.support().collect::<Vec<_>>() {
            let base = m.div_var(j).expect("x_j divides");
            for i in 0..j {
                if !ideal.contains(&base.mul_var(i)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every monomial of the same degree that is lex-greater than a generator
/// lies in `I`. Monomials are enumerated per generator degree, capped by
/// `limits.max_faces`.
pub fn is_lexsegment(ideal: &MonomialIdeal, limits: &Limits) -> Result<bool> {
    ideal.require_proper("is_lexsegment")?;
    let mut by_degree: HashMap<u64, Vec<&Monomial>> = HashMap::new();
    for m in ideal.gens() {
        by_degree.entry(m.degree()).or_default().push(m);
    }
    for (d, gens) in by_degree {
        let lowest = gens
            .iter()
            .min_by(|a, b| a.lex_cmp(b))
            .expect("nonempty degree class");
        let mut seen = 0usize;
        // Descending lex: stop once we pass the lex-smallest generator.
        for e in compositions(ideal.n(), d) {
            let m = Monomial::new(e)?;
            if m.lex_cmp(lowest) != std::cmp::Ordering::Greater {
                break;
            }
            seen += 1;
            if seen > limits.max_faces {
                return Err(Error::Capacity {
                    what: "monomials scanned for the lexsegment test",
                    size: seen,
                    cap: limits.max_faces,
                    hint: "raise MORSERES_MAX_FACES",
                });
            }
            if gens.iter().any(|g| m.lex_cmp(g) == std::cmp::Ordering::Greater)
                && !ideal.contains(&m)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The colon `((gens[s] : s ∈ chosen) : m)` is generated by variables.
fn colon_is_linear(ideal: &MonomialIdeal, chosen: &[usize], m: &Monomial) -> Result<bool> {
    let sub = ideal.select(chosen);
    let c = sub.colon(m)?;
    Ok(c.gens().iter().all(|g| g.degree() == 1))
}

/// An order `m_1, …, m_q` in which every colon `((m_1,…,m_{i−1}) : m_i)` is
/// generated by variables, or `None` if no such order exists.
///
/// Depth-first search over growing prefixes, trying generators by degree and
/// then lex order; prefix sets that cannot be completed are remembered.
pub fn linear_quotients_order(ideal: &MonomialIdeal) -> Result<Option<Vec<usize>>> {
    ideal.require_proper("linear_quotients_order")?;
    let q = ideal.q();
    let mut cand: Vec<usize> = (0..q).collect();
    cand.sort_by(|&a, &b| {
        let (ga, gb) = (ideal.gen(a), ideal.gen(b));
        ga.degree().cmp(&gb.degree()).then_with(|| gb.lex_cmp(ga))
    });
    let words = q.div_ceil(64);
    let mut dead: HashSet<Vec<u64>> = HashSet::new();
    let mut order: Vec<usize> = Vec::with_capacity(q);
    let mut set = vec![0u64; words];

    fn rec(
        ideal: &MonomialIdeal,
        cand: &[usize],
        order: &mut Vec<usize>,
        set: &mut Vec<u64>,
        dead: &mut HashSet<Vec<u64>>,
    ) -> Result<bool> {
        if order.len() == cand.len() {
            return Ok(true);
        }
        if dead.contains(set) {
            return Ok(false);
        }
        for &k in cand {
            if set[k / 64] >> (k % 64) & 1 == 1 {
                continue;
            }
            if !order.is_empty() && !colon_is_linear(ideal, order, ideal.gen(k))? {
                continue;
            }
            order.push(k);
            set[k / 64] |= 1 << (k % 64);
            if rec(ideal, cand, order, set, dead)? {
                return Ok(true);
            }
            order.pop();
            set[k / 64] &= !(1 << (k % 64));
        }
        dead.insert(set.clone());
        Ok(false)
    }

    Ok(rec(ideal, &cand, &mut order, &mut set, &mut dead)?.then_some(order))
}

/// Witness that an ideal is vertex splittable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitCertificate {
    /// Zero, unit or principal ideal.
    Leaf { ideal: MonomialIdeal },
    /// `I = x_var J + K` with `K ⊆ J` and `x_var` dividing no generator of `K`.
    Node {
        var: usize,
        ideal: MonomialIdeal,
        j: Box<SplitCertificate>,
        k: Box<SplitCertificate>,
    },
}

impl SplitCertificate {
    pub fn ideal(&self) -> &MonomialIdeal {
        match self {
            SplitCertificate::Leaf { ideal } | SplitCertificate::Node { ideal, .. } => ideal,
        }
    }

    /// Re-check every node: leaves are zero/unit/principal; at a node,
    /// `G(I) = G(x_i J) ⊔ G(K)`, `x_i` divides no generator of `K`, and
    /// `K ⊆ J`.
    pub fn validate(&self) -> std::result::Result<(), String> {
        match self {
            SplitCertificate::Leaf { ideal } => {
                if ideal.q() <= 1 || ideal.is_unit() {
                    Ok(())
                } else {
                    Err(format!("leaf ({ideal}) is not zero, unit or principal"))
                }
            }
            SplitCertificate::Node { var, ideal, j, k } => {
                let (jg, kg) = (j.ideal(), k.ideal());
                if kg.gens().iter().any(|m| m.exponent(*var) > 0) {
                    return Err(format!("x{} divides a generator of K = ({kg})", var + 1));
                }
                if !jg.contains_ideal(kg) {
                    return Err(format!("K = ({kg}) is not contained in J = ({jg})"));
                }
                let xj = jg
                    .scale(&Monomial::var(ideal.n(), *var))
                    .map_err(|e| e.to_string())?;
                let mut union: Vec<Monomial> = xj.gens().to_vec();
                union.extend(kg.gens().iter().cloned());
                let u = MonomialIdeal::minimalize(ideal.n(), union).map_err(|e| e.to_string())?;
                if u.q() != xj.q() + kg.q() || !u.same_gens(ideal) {
                    return Err(format!(
                        "G({ideal}) is not the disjoint union of G(x{}J) and G(K)",
                        var + 1
                    ));
                }
                j.validate()?;
                k.validate()
            }
        }
    }

    /// Nested JSON record with 1-based variable indices.
    pub fn to_json(&self) -> Value {
        match self {
            SplitCertificate::Leaf { ideal } => json!({
                "leaf": ideal.to_string(),
            }),
            SplitCertificate::Node { var, ideal, j, k } => json!({
                "var": var + 1,
                "ideal": ideal.to_string(),
                "J": j.to_json(),
                "K": k.to_json(),
            }),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SplitCertificate::Leaf { .. } => 0,
            SplitCertificate::Node { j, k, .. } => 1 + j.depth().max(k.depth()),
        }
    }
}

fn canonical(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut g = ideal.gens().to_vec();
    g.sort();
    g
}

/// `J = (m / x_i : x_i | m)` and `K = (m : x_i ∤ m)`, both order-preserving.
pub(crate) fn vertex_parts(ideal: &MonomialIdeal, i: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let (div, rest) = ideal.var_partition(i);
    let j = MonomialIdeal::minimalize(
        ideal.n(),
        div.iter()
            .map(|&k| ideal.gen(k).div_var(i).expect("divisible"))
            .collect(),
    )?;
    Ok((j, ideal.select(&rest)))
}

/// Search for a vertex splitting, trying variables in ascending order at
/// every node; results are memoized on generator sets.
pub fn vertex_split(ideal: &MonomialIdeal) -> Result<Option<SplitCertificate>> {
    // memo value: None = not splittable, Some(None) = leaf, Some(Some(i)) = split at x_i.
    let mut memo: HashMap<Vec<Monomial>, Option<Option<usize>>> = HashMap::new();

    fn decide(
        ideal: &MonomialIdeal,
        memo: &mut HashMap<Vec<Monomial>, Option<Option<usize>>>,
    ) -> Result<Option<Option<usize>>> {
        if ideal.q() <= 1 || ideal.is_unit() {
            return Ok(Some(None));
        }
        let key = canonical(ideal);
        if let Some(v) = memo.get(&key) {
            return Ok(*v);
        }
        let mut found = None;
        for i in 0..ideal.n() {
            let (div, _) = ideal.var_partition(i);
            if div.is_empty() {
                continue;
            }
            let (j, k) = vertex_parts(ideal, i)?;
            if j.q() != div.len() || !j.contains_ideal(&k) {
                continue;
            }
            if decide(&j, memo)?.is_some() && decide(&k, memo)?.is_some() {
                found = Some(Some(i));
                break;
            }
        }
        memo.insert(key, found);
        Ok(found)
    }

    fn build(
        ideal: &MonomialIdeal,
        memo: &mut HashMap<Vec<Monomial>, Option<Option<usize>>>,
    ) -> Result<SplitCertificate> {
        match decide(ideal, memo)? {
            Some(None) => Ok(SplitCertificate::Leaf {
                ideal: ideal.clone(),
            }),
            Some(Some(i)) => {
                let (j, k) = vertex_parts(ideal, i)?;
                Ok(SplitCertificate::Node {
                    var: i,
                    ideal: ideal.clone(),
                    j: Box::new(build(&j, memo)?),
                    k: Box::new(build(&k, memo)?),
                })
            }
            None => Err(Error::Internal("certificate rebuild failed".into())),
        }
    }

    if decide(ideal, &mut memo)?.is_none() {
        return Ok(None);
    }
    Ok(Some(build(ideal, &mut memo)?))
}

/// The smallest strongly stable ideal containing `monomials`: closed under
/// `m ↦ x_i m / x_j` for `x_j | m` and `i < j`.
pub fn borel_closure(n: usize, monomials: &[Monomial]) -> Result<MonomialIdeal> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue: Vec<Monomial> = Vec::new();
    for m in monomials {
        if m.n() != n {
            return Err(Error::Dimension {
                expected: n,
                found: m.n(),
            });
        }
        if seen.insert(m.clone()) {
            queue.push(m.clone());
        }
    }
    let mut k = 0;
    while k < queue.len() {
        let m = queue[k].clone();
        for j in m.support().collect::<Vec<_>>() {
            let base = m.div_var(j).expect("x_j divides");
            for i in 0..j {
                let moved = base.mul_var(i)?;
                if seen.insert(moved.clone()) {
                    queue.push(moved);
                }
            }
        }
        k += 1;
    }
    queue.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.lex_cmp(a)));
    MonomialIdeal::minimalize(n, queue)
}

/// `I_{(j)}`: the degree-`j` monomials of `I`, in generator-then-lex order.
pub fn degree_component(ideal: &MonomialIdeal, j: u64) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    for g in ideal.gens() {
        let d = g.degree();
        if d > j {
            continue;
        }
        for e in compositions(ideal.n(), j - d) {
            gens.push(g.mul(&Monomial::new(e)?)?);
        }
    }
    MonomialIdeal::minimalize(ideal.n(), gens)
}

/// Result of [`is_componentwise_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentwiseReport {
    pub linear: bool,
    /// Degrees `j` whose component `I_{(j)}` was tested.
    pub checked: Vec<u64>,
    /// First degree whose component has a nonlinear resolution.
    pub failing_degree: Option<u64>,
}

impl ComponentwiseReport {
    pub fn to_json(&self) -> Value {
        json!({
            "componentwise_linear": self.linear,
            "checked_degrees": self.checked,
            "failing_degree": self.failing_degree,
        })
    }
}

/// Tests `I_{(j)}` for a linear resolution for each `j` between the smallest
/// and largest generator degree `d`. Beyond `d`, `I_{(j+1)} = 𝔪 I_{(j)}`
/// and a linear resolution passes from one component to the next.
pub fn is_componentwise_linear(
    ideal: &MonomialIdeal,
    characteristic: u64,
    limits: &Limits,
) -> Result<ComponentwiseReport> {
    ideal.require_proper("is_componentwise_linear")?;
    let mut checked = Vec::new();
    for j in ideal.min_degree()..=ideal.max_degree() {
        checked.push(j);
        let comp = degree_component(ideal, j)?;
        let t = betti_numbers(&comp, characteristic, limits)?;
        // R/I_(j) has a linear resolution iff β_{i,α} = 0 unless |α| = j + i − 1.
        let nonlinear = t
            .entries()
            .any(|(i, a, _)| i > 0 && a.degree() != j + i as u64 - 1);
        if nonlinear {
            return Ok(ComponentwiseReport {
                linear: false,
                checked,
                failing_degree: Some(j),
            });
        }
    }
    Ok(ComponentwiseReport {
        linear: true,
        checked,
        failing_degree: None,
    })
}

/// All predicates at once, for reporting.
#[derive(Clone, Debug)]
pub struct Classification {
    pub stable: bool,
    pub strongly_stable: bool,
    pub lexsegment: bool,
    pub linear_quotients: Option<Vec<usize>>,
    pub vertex_splittable: Option<SplitCertificate>,
    pub componentwise_linear: ComponentwiseReport,
    pub squarefree: bool,
}

pub fn classify(ideal: &MonomialIdeal, characteristic: u64, limits: &Limits) -> Result<Classification> {
    Ok(Classification {
        stable: is_stable(ideal)?,
        strongly_stable: is_strongly_stable(ideal)?,
        lexsegment: is_lexsegment(ideal, limits)?,
        linear_quotients: linear_quotients_order(ideal)?,
        vertex_splittable: vertex_split(ideal)?,
        componentwise_linear: is_componentwise_linear(ideal, characteristic, limits)?,
        squarefree: ideal.is_squarefree(),
    })
}

impl Classification {
    /// Orders are reported 1-based.
    pub fn to_json(&self) -> Value {
        json!({
            "squarefree": self.squarefree,
            "stable": self.stable,
            "strongly_stable": self.strongly_stable,
            "lexsegment": self.lexsegment,
            "linear_quotients": self.linear_quotients.is_some(),
            "linear_quotients_order": self
                .linear_quotients
                .as_ref()
                .map(|o| o.iter().map(|k| k + 1).collect::<Vec<_>>()),
            "vertex_splittable": self.vertex_splittable.is_some(),
            "certificate": self.vertex_splittable.as_ref().map(SplitCertificate::to_json),
            "componentwise_linear": self.componentwise_linear.to_json(),
        })
    }
}
