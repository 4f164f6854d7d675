//! Helpers shared by the integration tests: seeded ideal generators, the
//! structural checks every matching must pass, and an oracle built on the
//! lcm lattice that shares no code with the library's Betti routines.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use morse_res::taylor::bits;
use morse_res::{
    critical_cells, morse_differential, pruned_betti, verify_complex, verify_matching, BettiTable,
    Cell, ComplexCheck, GradedComplex, Matching, Monomial, MonomialIdeal,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_squarefree(rng: &mut ChaCha8Rng, n_max: usize, q_max: usize) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(2..=n_max);
        let q = rng.gen_range(1..=q_max);
        let gens: Vec<Monomial> = (0..q)
            .map(|_| {
                let mut e = vec![0; n];
                while e.iter().all(|&x| x == 0) {
                    for x in e.iter_mut() {
                        *x = rng.gen_bool(0.4) as u64;
                    }
                }
                Monomial::new(e).unwrap()
            })
            .collect();
        let i = MonomialIdeal::minimalize(n, gens).unwrap();
        if i.q() >= 1 {
            return i;
        }
    }
}

pub fn random_monomials(rng: &mut ChaCha8Rng, n: usize, count: usize, max_deg: u64) -> Vec<Monomial> {
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            let mut e = vec![0; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            Monomial::new(e).unwrap()
        })
        .collect()
}

pub fn random_ideal(rng: &mut ChaCha8Rng, n_max: usize, q_max: usize, max_exp: u64) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=n_max);
        let q = rng.gen_range(1..=q_max);
        let gens: Vec<Monomial> = (0..q)
            .map(|_| {
                let mut e = vec![0; n];
                while e.iter().all(|&x| x == 0) {
                    for x in e.iter_mut() {
                        *x = rng.gen_range(0..=max_exp);
                    }
                }
                Monomial::new(e).unwrap()
            })
            .collect();
        let i = MonomialIdeal::minimalize(n, gens).unwrap();
        if i.q() >= 1 {
            return i;
        }
    }
}

/// Random recursive tree: vertex `v` attaches to a uniform earlier vertex.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// `Σ (−1)^{|σ|}` per multidegree.
pub fn euler(complex: &GradedComplex, cells: impl Iterator<Item = Cell>) -> BTreeMap<u32, i64> {
    let mut m = BTreeMap::new();
    for c in cells {
        *m.entry(complex.degree_id(c)).or_insert(0) += if c.count_ones() % 2 == 0 { 1 } else { -1 };
    }
    m.retain(|_, v| *v != 0);
    m
}

/// Structural checks on one matching. `oracle` is the Betti table of the
/// module the complex resolves; strand homology is compared when
/// `with_homology` is set. Returns the first failure.
pub fn check_matching(
    complex: &GradedComplex,
    matching: &Matching,
    oracle: &BettiTable,
    with_homology: bool,
) -> Result<(), String> {
    let p = oracle.characteristic();
    let report = verify_matching(complex, matching);
    if let Some(f) = report.failure {
        return Err(format!("matching rejected: {f}"));
    }
    let crit = critical_cells(complex, matching);
    if euler(complex, complex.cells()) != euler(complex, crit.iter().flatten().map(|g| g.cell)) {
        return Err("euler characteristics differ".into());
    }
    let pruned = pruned_betti(complex, matching, p);
    if !pruned.dominates(oracle) {
        return Err(format!("pruned counts below betti numbers: {:?}", pruned.differences(oracle)));
    }
    let morse = morse_differential(complex, matching).map_err(|e| e.to_string())?;
    if verify_complex(&morse) != ComplexCheck::Pass {
        return Err(format!("{:?}", verify_complex(&morse)));
    }
    if with_homology && !morse.strand_betti(p).same_counts(oracle) {
        return Err("strand homology differs from the oracle".into());
    }
    Ok(())
}

/// Betti numbers of `R/I` from the order complexes of open intervals
/// `(1, α)` of the lcm lattice: `β_{i,α} = dim H̃_{i−2}((1, α))`. Ranks are
/// taken mod `p`; characteristic 0 uses the prime `2^31 − 1`, which is exact
/// for these small complexes (no torsion of that size can occur).
pub fn lattice_betti(ideal: &MonomialIdeal, characteristic: u64) -> BettiTable {
    let p = if characteristic == 0 { 2_147_483_647 } else { characteristic };
    let q = ideal.q();
    let mut t = BettiTable::new(ideal.n(), characteristic);
    t.add(0, Monomial::one(ideal.n()), 1);
    let mut lattice: Vec<Monomial> = Vec::new();
    for s in 1u64..(1 << q) {
        let m = bits(s).fold(Monomial::one(ideal.n()), |a, k| a.lcm(ideal.gen(k)).unwrap());
        if !lattice.contains(&m) {
            lattice.push(m);
        }
    }
    for alpha in &lattice {
        let below: Vec<&Monomial> = lattice
            .iter()
            .filter(|m| *m != alpha && m.divides(alpha))
            .collect();
        // chains of the open interval, grouped by length
        let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = (0..below.len()).map(|k| vec![k]).collect();
        while !frontier.is_empty() {
            chains.push(frontier.clone());
            let mut next = Vec::new();
            for c in &frontier {
                let top = below[*c.last().unwrap()];
                for (k, m) in below.iter().enumerate() {
                    if *m != top && top.divides(m) {
                        let mut d = c.clone();
                        d.push(k);
                        next.push(d);
                    }
                }
            }
            frontier = next;
        }
        // chains[l] holds chains with l elements, i.e. (l−1)-faces; the
        // empty chain gives reduced homology.
        let dims: Vec<usize> = chains.iter().map(|c| c.len()).collect();
        let dims = {
            let mut d = dims;
            d[0] = 1;
            d
        };
        let index: Vec<HashMap<&Vec<usize>, usize>> = chains
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(k, c)| (c, k)).collect())
            .collect();
        let rank = |l: usize| -> usize {
            // boundary from chains with l elements to chains with l−1 elements
            if l == 0 || l >= chains.len() {
                return 0;
            }
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for c in &chains[l] {
                let mut row = vec![0u64; dims[l - 1]];
                for drop in 0..c.len() {
                    let face: Vec<usize> =
                        c.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &x)| x).collect();
                    let col = if l == 1 { 0 } else { index[l - 1][&face] };
                    row[col] = if drop % 2 == 0 { 1 } else { p - 1 };
                }
                rows.push(row);
            }
            rank_mod(rows, p)
        };
        for l in 0..chains.len() {
            let h = dims[l] - rank(l) - rank(l + 1);
            if h > 0 {
                // l elements: dimension l−1, homological index i = l + 1
                t.add(l + 1, alpha.clone(), h as u64);
            }
        }
    }
    t
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}
