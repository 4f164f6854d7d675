//! Exact matrix ranks over ℚ and 𝔽_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Sparse integer matrix given by triplets; repeated positions add up.
#[derive(Clone, Debug, Default)]
pub struct Triplets<T> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, T)>,
}

impl<T> Triplets<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        Triplets {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, r: usize, c: usize, v: T) {
        self.entries.push((r, c, v));
    }
}

/// Rank over ℚ (`characteristic == 0`) or 𝔽_p.
pub fn rank_i64(m: &Triplets<i64>, characteristic: u64) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if characteristic == 0 {
        let rows = sparse_rows(m.rows, m.entries.iter().map(|&(r, c, v)| (r, c, v as i128)), |a, b| {
            a.checked_add(b)
        });
        match rows.and_then(|rows| rank_sparse_int(rows, m.cols)) {
            Some(r) => r,
            None => {
                let mut dense = vec![vec![BigInt::zero(); m.cols]; m.rows];
                for &(r, c, v) in &m.entries {
                    dense[r][c] += v;
                }
                bareiss_big(dense)
            }
        }
    } else {
        let p = characteristic;
        let rows = sparse_rows(
            m.rows,
            m.entries
                .iter()
                .map(|&(r, c, v)| (r, c, v.rem_euclid(p as i64) as u64)),
            |a, b| Some(((a as u128 + b as u128) % p as u128) as u64),
        )
        .expect("modular sums do not overflow");
        rank_sparse_mod_p(rows, p)
    }
}

/// Rank over ℚ or 𝔽_p of a matrix with arbitrary-precision entries.
pub fn rank_big(m: &Triplets<BigInt>, characteristic: u64) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if characteristic == 0 {
        let small = m
            .entries
            .iter()
            .map(|(r, c, v)| v.to_i64().map(|x| (*r, *c, x as i128)))
            .collect::<Option<Vec<_>>>();
        let rows = small.and_then(|e| sparse_rows(m.rows, e.into_iter(), |a, b| a.checked_add(b)));
        match rows.and_then(|rows| rank_sparse_int(rows, m.cols)) {
            Some(r) => r,
            None => {
                let mut dense = vec![vec![BigInt::zero(); m.cols]; m.rows];
                for (r, c, v) in &m.entries {
                    dense[*r][*c] += v;
                }
                bareiss_big(dense)
            }
        }
    } else {
        let p = BigInt::from(characteristic);
        let q = characteristic;
        let rows = sparse_rows(
            m.rows,
            m.entries
                .iter()
                .map(|(r, c, v)| (*r, *c, v.mod_floor(&p).to_u64().expect("reduced below p"))),
            |a, b| Some(((a as u128 + b as u128) % q as u128) as u64),
        )
        .expect("modular sums do not overflow");
        rank_sparse_mod_p(rows, q)
    }
}

type SparseRow<T> = Vec<(usize, T)>;

/// Rows as sorted `(column, value)` lists, repeated positions summed and
/// zeros dropped; `None` if a sum overflows.
fn sparse_rows<T: Copy + Default + PartialEq>(
    rows: usize,
    entries: impl Iterator<Item = (usize, usize, T)>,
    add: impl Fn(T, T) -> Option<T>,
) -> Option<Vec<SparseRow<T>>> {
    let mut out: Vec<SparseRow<T>> = vec![Vec::new(); rows];
    for (r, c, v) in entries {
        out[r].push((c, v));
    }
    for row in &mut out {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: SparseRow<T> = Vec::with_capacity(row.len());
        for &(c, v) in row.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = add(last.1, v)?,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != T::default());
        *row = merged;
    }
    Some(out)
}

/// `target − f · pivot_row` on sorted sparse rows, zeros dropped.
fn axpy<T: Copy + Default + PartialEq>(
    target: &[(usize, T)],
    f: T,
    pivot: &[(usize, T)],
    sub: impl Fn(T, T, T) -> Option<T>,
) -> Option<SparseRow<T>> {
    let zero = T::default();
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let (c, v) = match (target.get(a), pivot.get(b)) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                a += 1;
                b += 1;
                (ca, sub(va, f, vb)?)
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                a += 1;
                (ca, va)
            }
            (Some(&(ca, va)), None) => {
                a += 1;
                (ca, va)
            }
            (_, Some(&(cb, vb))) => {
                b += 1;
                (cb, sub(zero, f, vb)?)
            }
            (None, None) => unreachable!(),
        };
        if v != zero {
            out.push((c, v));
        }
    }
    Some(out)
}

/// Sparse elimination on pivots accepted by `is_pivot`; returns the number
/// of pivots used and the rows left over. `factor(a, p)` is `a / p`.
fn sparse_eliminate<T: Copy + Default + PartialEq>(
    mut rows: Vec<SparseRow<T>>,
    cols: usize,
    is_pivot: impl Fn(T) -> bool,
    factor: impl Fn(T, T) -> T,
    sub: impl Fn(T, T, T) -> Option<T> + Copy,
) -> Option<(usize, Vec<SparseRow<T>>)> {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].push(r);
        }
    }
    let mut alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut rank = 0;
    loop {
        // Shortest live row with an admissible pivot, lightest column first.
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !alive[r] || best.is_some_and(|b| row.len() > b.0) {
                continue;
            }
            for &(c, v) in row {
                if is_pivot(v) {
                    let key = (row.len(), col_rows[c].len(), r, c);
                    if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        alive[pr] = false;
        let pv = pivot_row.iter().find(|e| e.0 == pc).expect("pivot present").1;
        let targets = std::mem::take(&mut col_rows[pc]);
        for r in targets {
            if !alive[r] {
                continue;
            }
            let Some(&(_, a)) = rows[r].iter().find(|e| e.0 == pc) else {
                continue;
            };
            let f = factor(a, pv);
            let new = axpy(&rows[r], f, &pivot_row, sub)?;
            for &(c, _) in &new {
                if c != pc && rows[r].binary_search_by_key(&c, |e| e.0).is_err() {
                    col_rows[c].push(r);
                }
            }
            rows[r] = new;
            if rows[r].is_empty() {
                alive[r] = false;
            }
        }
        rank += 1;
    }
    let rest = rows
        .into_iter()
        .zip(alive)
        .filter_map(|(r, a)| a.then_some(r))
        .collect();
    Some((rank, rest))
}

/// Exact rank over ℚ: unimodular sparse pivots first, then Bareiss on the
/// remaining core. `None` on i128 overflow.
fn rank_sparse_int(rows: Vec<SparseRow<i128>>, cols: usize) -> Option<usize> {
    let (rank, rest) = sparse_eliminate(
        rows,
        cols,
        |v| v == 1 || v == -1,
        |a, p| a * p,
        |x, f, y| x.checked_sub(f.checked_mul(y)?),
    )?;
    if rest.is_empty() {
        return Some(rank);
    }
    let used: Vec<usize> = {
        let mut c: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let mut dense = vec![vec![0i128; used.len()]; rest.len()];
    for (i, row) in rest.iter().enumerate() {
        for &(c, v) in row {
            dense[i][used.binary_search(&c).expect("collected")] = v;
        }
    }
    Some(rank + bareiss_i128(dense)?)
}

fn rank_sparse_mod_p(rows: Vec<SparseRow<u64>>, p: u64) -> usize {
    let cols = rows
        .iter()
        .flat_map(|r| r.iter().map(|e| e.0 + 1))
        .max()
        .unwrap_or(0);
    let mulmod = move |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (rank, rest) = sparse_eliminate(
        rows,
        cols,
        |v| v != 0,
        |a, piv| mulmod(a, pow_mod(piv, p - 2, p)),
        |x, f, y| Some((x + p - mulmod(f, y)) % p),
    )
    .expect("modular arithmetic does not overflow");
    debug_assert!(rest.is_empty());
    rank
}

/// Fraction-free elimination; `None` on i128 overflow.
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let p = a[r][c];
        for i in r + 1..rows {
            let f = a[i][c];
            for j in c + 1..cols {
                let x = p.checked_mul(a[i][j])?.checked_sub(f.checked_mul(a[r][j])?)?;
                a[i][j] = x / prev;
            }
            a[i][c] = 0;
        }
        prev = p;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let p = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let x = &p * &a[i][j] - &f * &a[r][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = p;
        r += 1;
    }
    r
}

#[cfg(test)]
fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for j in c..cols {
            a[r][j] = mulmod(a[r][j], inv);
        }
        for i in r + 1..rows {
            let f = a[i][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mulmod(f, a[r][j]);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}
