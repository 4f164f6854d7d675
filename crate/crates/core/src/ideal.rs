//! Monomial ideals with an ordered generator list, plus constructors.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{parse_term, term_to_monomial, Monomial};

/// A monomial ideal given by an ordered list of generators.
///
/// The order of `gens` is part of the ideal's identity here: pruning is a
/// function of the generator order. Constructors that go through
/// [`MonomialIdeal::minimalize`] keep the first-seen order of survivors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<u64>>,
}

impl MonomialIdeal {
    /// Build from generators without minimalizing. Fails if any generator
    /// divides another or if ambient sizes disagree.
    pub fn from_minimal(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.n() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        for (a, ga) in gens.iter().enumerate() {
            for (b, gb) in gens.iter().enumerate() {
                if a != b && ga.divides(gb) {
                    return Err(Error::Invalid(format!(
                        "generator {gb} is divisible by generator {ga}"
                    )));
                }
            }
        }
        Ok(MonomialIdeal { n, gens })
    }

    /// Drop duplicates and non-minimal generators, keeping first-seen order.
    pub fn minimalize(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.n() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        let keep = minimal_positions(&gens);
        let gens = keep.into_iter().map(|i| gens[i].clone()).collect();
        Ok(MonomialIdeal { n, gens })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Monomial {
        &self.gens[i]
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Error unless the ideal is proper and nonzero.
    pub fn require_proper(&self, op: &'static str) -> Result<()> {
        if self.is_zero() {
            return Err(Error::DegenerateIdeal { op, kind: "zero" });
        }
        if self.is_unit() {
            return Err(Error::DegenerateIdeal { op, kind: "unit" });
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|m| self.contains(m))
    }

    /// Same generator set, ignoring order.
    pub fn same_gens(&self, other: &MonomialIdeal) -> bool {
        if self.n != other.n || self.q() != other.q() {
            return false;
        }
        let a: HashSet<&Monomial> = self.gens.iter().collect();
        other.gens.iter().all(|g| a.contains(g))
    }

    /// lcm of all generators (`1` for the zero ideal).
    pub fn lcm_all(&self) -> Monomial {
        let mut l = Monomial::one(self.n);
        for g in &self.gens {
            l.lcm_assign(g);
        }
        l
    }

    /// Largest exponent of `x_i` over the generators.
    pub fn max_exponent(&self, i: usize) -> u64 {
        self.gens.iter().map(|g| g.exponent(i)).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u64 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u64 {
        self.gens.iter().map(Monomial::degree).min().unwrap_or(0)
    }

    /// Reorder generators: position `k` of the result is `gens[perm[k]]`
    /// (0-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.q())?;
        Ok(MonomialIdeal {
            n: self.n,
            gens: perm.iter().map(|&i| self.gens[i].clone()).collect(),
        })
    }

    /// Subideal generated by the generators at the given 0-based positions,
    /// in the given order.
    pub fn select(&self, idx: &[usize]) -> Self {
        MonomialIdeal {
            n: self.n,
            gens: idx.iter().map(|&i| self.gens[i].clone()).collect(),
        }
    }

    /// Re-embed into a larger (or equal) ambient ring.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.with_n(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal { n, gens })
    }

    /// Generators of `I` dividing `m`, in their original order.
    pub fn restrict_leq(&self, m: &Monomial) -> Result<Self> {
        if m.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: m.n(),
            });
        }
        Ok(MonomialIdeal {
            n: self.n,
            gens: self.gens.iter().filter(|g| g.divides(m)).cloned().collect(),
        })
    }

    /// `(I : m)`, generated by `m_j / gcd(m_j, m)`.
    pub fn colon(&self, m: &Monomial) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.div_gcd(m))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// Split generator positions into those divisible by `x_i` and the rest.
    pub fn var_partition(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        (0..self.q()).partition(|&k| self.gens[k].exponent(i) > 0)
    }

    /// Divide every generator by the gcd of all generators; returns the gcd
    /// and the quotient ideal.
    pub fn factor_gcd(&self) -> (Monomial, MonomialIdeal) {
        let Some(first) = self.gens.first() else {
            return (Monomial::one(self.n), self.clone());
        };
        let mut g = first.clone();
        for m in &self.gens[1..] {
            g = g.gcd(m).expect("same ambient");
        }
        let gens = self
            .gens
            .iter()
            .map(|m| m.div(&g).expect("gcd divides"))
            .collect();
        (g, MonomialIdeal { n: self.n, gens })
    }

    /// Multiply every generator by `m` (order preserved).
    pub fn scale(&self, m: &Monomial) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// `IJ`, products enumerated with `I`'s generator in the outer loop.
    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        let mut gens = Vec::with_capacity(self.q() * other.q());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// `I^r`, generators `m_1^{σ_1}⋯m_q^{σ_q}` with σ in descending lex order.
    pub fn power(&self, r: u64) -> Result<Self> {
        if r == 0 {
            return Ok(MonomialIdeal::unit(self.n));
        }
        let mut gens = Vec::new();
        for sigma in compositions(self.q(), r) {
            gens.push(self.power_product(&sigma)?);
        }
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// `m_1^{σ_1}⋯m_q^{σ_q}`.
    pub fn power_product(&self, sigma: &[u64]) -> Result<Monomial> {
        let mut acc = Monomial::one(self.n);
        for (g, &s) in self.gens.iter().zip(sigma) {
            if s > 0 {
                acc = acc.mul(&g.pow(s)?)?;
            }
        }
        Ok(acc)
    }

    /// `I^{[p^r]} = (m_1^{p^r}, …, m_q^{p^r})`.
    pub fn bracket_power(&self, p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let e = p
            .checked_pow(r)
            .ok_or(Error::Overflow("bracket power exponent"))?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.pow(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// `I + (x_1^{a_1}, …, x_n^{a_n})`, pure powers appended after `I`'s
    /// generators.
    pub fn artinian_add(&self, a: &[u64]) -> Result<Self> {
        if a.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: a.len(),
            });
        }
        if let Some(i) = a.iter().position(|&x| x == 0) {
            return Err(Error::Invalid(format!("exponent for x{} must be positive", i + 1)));
        }
        let mut gens = self.gens.clone();
        for (i, &ai) in a.iter().enumerate() {
            let mut e = vec![0; self.n];
            e[i] = ai;
            gens.push(Monomial::new(e)?);
        }
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// `I + (x_i^{d_i+1})` where `d_i` is the largest `x_i`-degree among the
    /// generators.
    pub fn artinian_closure(&self) -> Result<Self> {
        let a: Vec<u64> = (0..self.n).map(|i| self.max_exponent(i) + 1).collect();
        self.artinian_add(&a)
    }

    /// Sum of two ideals; generators of `self` first.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::minimalize(self.n, gens)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson {
            n: self.n,
            gens: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        })
        .expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: IdealJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let gens = j
            .gens
            .into_iter()
            .map(Monomial::new)
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::from_minimal(j.n, gens)
    }
}

/// Positions of a minimal generating subset, first occurrence kept.
pub(crate) fn minimal_positions(gens: &[Monomial]) -> Vec<usize> {
    let mut keep: Vec<usize> = Vec::with_capacity(gens.len());
    'outer: for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if j == i {
                continue;
            }
            if h.divides(g) && (h != g || j < i) {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}

/// `perm` lists each of `0..q` exactly once.
pub fn check_permutation(perm: &[usize], q: usize) -> Result<()> {
    if perm.len() != q {
        return Err(Error::Invalid(format!(
            "order has {} entries, expected {q}",
            perm.len()
        )));
    }
    let mut seen = vec![false; q];
    for &p in perm {
        if p >= q || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Invalid("order is not a permutation".into()));
        }
    }
    Ok(())
}

/// All `σ ∈ ℤ_{≥0}^q` with `|σ| = r`, in descending lex order.
pub fn compositions(q: usize, r: u64) -> Vec<Vec<u64>> {
    fn rec(q: usize, r: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() + 1 == q {
            prefix.push(r);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=r).rev() {
            prefix.push(a);
            rec(q, r - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if q == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(q, r, &mut Vec::with_capacity(q), &mut out);
    out
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for MonomialIdeal {
    /// Comma-separated generators; an `[n=…]` prefix appears when the ambient
    /// size is not the largest variable index used.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inferred = self
            .gens
            .iter()
            .filter_map(Monomial::max_var)
            .max()
            .map_or(0, |v| v + 1);
        if inferred != self.n {
            write!(f, "[n={}] ", self.n)?;
        }
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MonomialIdeal {
    type Err = Error;

    /// Parses the text format. Terms are separated by commas or newlines;
    /// `#` starts a comment. Input is minimalized, keeping first-seen order.
    fn from_str(s: &str) -> Result<Self> {
        let body: String = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(",");
        let mut body = body.trim().trim_start_matches(',').trim();
        let mut declared = None;
        if let Some(rest) = body.strip_prefix("[n=") {
            let (num, rest) = rest
                .split_once(']')
                .ok_or_else(|| Error::Parse("unterminated `[n=` header".into()))?;
            declared = Some(
                num.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad variable count `{num}`")))?,
            );
            body = rest.trim();
        }
        let terms: Vec<&str> = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        if terms.is_empty() {
            return Err(Error::Parse("no generators given (write `0` for the zero ideal)".into()));
        }
        if terms == ["0"] {
            return Ok(MonomialIdeal::zero(declared.unwrap_or(0)));
        }
        let parsed = terms
            .iter()
            .map(|t| parse_term(t))
            .collect::<Result<Vec<_>>>()?;
        let max = parsed
            .iter()
            .flat_map(|t| t.iter().map(|&(i, _)| i + 1))
            .max()
            .unwrap_or(0);
        let n = match declared {
            Some(n) if n < max => {
                return Err(Error::Dimension {
                    expected: n,
                    found: max,
                })
            }
            Some(n) => n,
            None => max,
        };
        let gens = parsed
            .iter()
            .map(|t| term_to_monomial(t, n))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(n, gens)
    }
}

/// A simple graph on vertices `0..n` (displayed as `x1..xn`) with an ordered
/// edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are 0-based vertex pairs; each is stored as `(min, max)`, in the
    /// given order. Self-loops and repeated edges are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::Invalid(format!("self-loop at x{}", a + 1)));
            }
            if a >= n || b >= n {
                return Err(Error::Invalid(format!(
                    "edge x{}x{} outside {n} vertices",
                    a + 1,
                    b + 1
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::Invalid(format!("repeated edge x{}x{}", e.0 + 1, e.1 + 1)));
            }
            norm.push(e);
        }
        Ok(Graph { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Same graph with edges in lexicographic order.
    pub fn sorted(mut self) -> Self {
        self.edges.sort_unstable();
        self
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.contains(&e)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match () {
                _ if a == v => Some(b),
                _ if b == v => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// The path `x1 - x2 - … - xn`.
    pub fn path(n: usize) -> Self {
        Graph {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// The cycle with edges `x1x2, …, x_{n-1}x_n, x_nx_1` in that order.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid("a cycle needs at least 3 vertices".into()));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Ok(Graph { n, edges })
    }

    /// Rim cycle on `x1..x_{n-1}` (cycle order) followed by spokes to the hub `x_n`.
    pub fn wheel(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Invalid("a wheel needs at least 4 vertices".into()));
        }
        let mut g = Graph::cycle(n - 1)?;
        g.n = n;
        g.edges.extend((0..n - 1).map(|i| (i, n - 1)));
        Ok(g)
    }

    /// `K_{a,b}` on parts `x1..xa` and `x_{a+1}..x_{a+b}`, edges in lex order.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::with_capacity(a * b);
        for i in 0..a {
            for j in a..a + b {
                edges.push((i, j));
            }
        }
        Graph { n: a + b, edges }
    }

    /// A tree from an edge list; rejects anything that is not a spanning tree.
    pub fn tree(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Graph::new(n, edges)?;
        if n > 0 && g.edges.len() != n - 1 {
            return Err(Error::Invalid(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                g.edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &g.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::Invalid("tree edges contain a cycle".into()));
            }
            parent[ra] = rb;
        }
        Ok(g)
    }

    /// The star `K_{1,k}` with center `x_{k+1}`.
    pub fn star(k: usize) -> Self {
        Graph {
            n: k + 1,
            edges: (0..k).map(|i| (i, k)).collect(),
        }
    }

    /// Edge ideal, one generator `x_ix_j` per edge in edge-list order.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let gens = self
            .edges
            .iter()
            .map(|&(a, b)| Monomial::squarefree(self.n, [a, b]))
            .collect();
        MonomialIdeal { n: self.n, gens }
    }
}

/// Edge ideal of a hypergraph: one squarefree generator per edge, minimalized.
pub fn hypergraph_edge_ideal(n: usize, edges: &[Vec<usize>]) -> Result<MonomialIdeal> {
    let mut gens = Vec::with_capacity(edges.len());
    for e in edges {
        if e.is_empty() {
            return Err(Error::Invalid("empty hyperedge".into()));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= n) {
            return Err(Error::Invalid(format!("vertex x{} outside {n} vertices", v + 1)));
        }
        gens.push(Monomial::squarefree(n, e.iter().copied()));
    }
    MonomialIdeal::minimalize(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> MonomialIdeal {
        s.parse().unwrap()
    }

    fn m(s: &str, n: usize) -> Monomial {
        s.parse::<Monomial>().unwrap().with_n(n).unwrap()
    }

    #[test]
    fn minimalize_keeps_first_order() {
        assert_eq!(id("x1, x1*x2, x2").to_string(), "x1, x2");
        assert_eq!(id("x1*x2, x2*x3").to_string(), "x1*x2, x2*x3");
        assert_eq!(id("x2, x1, x2").to_string(), "x2, x1");
    }

    #[test]
    fn restrict_leq_filters_divisors() {
        let i = id("x1*x2, x2*x3, x3*x4");
        assert_eq!(
            i.restrict_leq(&m("x1*x2*x3", 4)).unwrap().gens(),
            &[m("x1*x2", 4), m("x2*x3", 4)]
        );
        assert_eq!(i.restrict_leq(&i.lcm_all()).unwrap(), i);
        assert!(i.restrict_leq(&Monomial::one(4)).unwrap().is_zero());
    }

    #[test]
    fn colon_examples() {
        assert_eq!(id("x1*x2").colon(&m("x2", 2)).unwrap().gens(), &[m("x1", 2)]);
        let c = id("x1*x2, x1*x3").colon(&m("x2*x3", 3)).unwrap();
        assert_eq!(c.gens(), &[m("x1", 3)]);
        assert!(id("x1*x2, x2*x3, x3*x4").colon(&m("x3*x4", 4)).unwrap().is_unit());
    }

    #[test]
    fn constructors() {
        let b = id("x1*x2").bracket_power(2, 2).unwrap();
        assert_eq!(b.to_string(), "x1^4*x2^4");
        assert!(id("x1").bracket_power(4, 1).is_err());
        let a = id("x1*x2").artinian_add(&[3, 3]).unwrap();
        assert_eq!(a.to_string(), "x1*x2, x1^3, x2^3");
        assert!(id("x1*x2").artinian_add(&[0, 3]).is_err());
        let c = Graph::cycle(9).unwrap().edge_ideal();
        assert_eq!(
            c.to_string(),
            "x1*x2, x2*x3, x3*x4, x4*x5, x5*x6, x6*x7, x7*x8, x8*x9, x1*x9"
        );
        let i = id("x1*x2, x1*x3, x2*x3");
        assert_eq!(i.power(1).unwrap(), i);
        assert_eq!(i.product(&MonomialIdeal::unit(3)).unwrap(), i);
        assert_eq!(i.power(2).unwrap().q(), 6);
    }

    #[test]
    fn graphs_reject_bad_input() {
        assert!(Graph::new(3, vec![(1, 1)]).is_err());
        assert!(Graph::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::tree(4, vec![(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Graph::tree(4, vec![(0, 1), (1, 2), (1, 3)]).is_ok());
    }

    #[test]
    fn wheel_and_bipartite() {
        let w = Graph::wheel(5).unwrap();
        assert_eq!(w.edges().len(), 8);
        assert_eq!(w.neighbors(4), vec![0, 1, 2, 3]);
        assert_eq!(Graph::complete_bipartite(2, 3).edges().len(), 6);
    }

    #[test]
    fn text_round_trip() {
        for s in ["x1*x2, x3^2*x5", "[n=6] x1*x2", "0", "[n=3] 0", "1", "[n=2] 1"] {
            assert_eq!(id(s).to_string(), s);
        }
        assert!("".parse::<MonomialIdeal>().is_err());
        assert!("# nothing\n".parse::<MonomialIdeal>().is_err());
        assert!("[n=2] x3".parse::<MonomialIdeal>().is_err());
        let multi = id("# triangle\nx1*x2\nx1*x3 # second\nx2*x3\n");
        assert_eq!(multi.to_string(), "x1*x2, x1*x3, x2*x3");
    }

    #[test]
    fn json_round_trip() {
        let i = id("[n=4] x1^2*x2, x3");
        let j = i.to_json();
        assert_eq!(j, serde_json::json!({"n": 4, "gens": [[2, 1, 0, 0], [0, 0, 1, 0]]}));
        assert_eq!(MonomialIdeal::from_json(&j).unwrap(), i);
    }

    #[test]
    fn compositions_descending_lex() {
        let c = compositions(3, 2);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![2, 0, 0]);
        assert_eq!(c[5], vec![0, 0, 2]);
    }
}
