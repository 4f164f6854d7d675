//! Exact monomials `x^α` over a fixed number of variables.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x1^a1 * ... * xn^an`, stored as its exponent vector.
///
/// The ambient variable count is the length of the vector. Operations that
/// combine two monomials require equal lengths.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        exponents
            .iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e))
            .ok_or(Error::Overflow("total degree"))?;
        Ok(Monomial(exponents))
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Squarefree product of the given 0-based variables.
    pub fn squarefree(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut e = vec![0; n];
        for v in vars {
            e[v] = 1;
        }
        Monomial(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// 0-based indices of the variables dividing this monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Largest 0-based variable index dividing the monomial.
    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    fn check_dim(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub(crate) fn lcm_assign(&mut self, other: &Monomial) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = (*a).max(*b);
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        Ok(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect(),
        ))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        let e = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("monomial product"))?;
        Monomial::new(e)
    }

    /// Exact quotient `self / other`; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.n() != other.n() || !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// `self / gcd(self, other)`.
    pub fn div_gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        Ok(Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - a.min(b))
                .collect(),
        ))
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let e = self
            .0
            .iter()
            .map(|a| a.checked_mul(k))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("monomial power"))?;
        Monomial::new(e)
    }

    /// Multiply by `x_i` (0-based).
    pub fn mul_var(&self, i: usize) -> Result<Monomial> {
        let mut e = self.0.clone();
        e[i] = e[i].checked_add(1).ok_or(Error::Overflow("monomial product"))?;
        Monomial::new(e)
    }

    /// Divide by `x_i` if it divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Re-embed into `n` variables; extra trailing variables get exponent 0.
    pub fn with_n(&self, n: usize) -> Result<Monomial> {
        if n < self.n() && self.0[n..].iter().any(|&e| e > 0) {
            return Err(Error::Dimension {
                expected: n,
                found: self.n(),
            });
        }
        let mut e = self.0.clone();
        e.resize(n, 0);
        Ok(Monomial(e))
    }

    /// Lexicographic comparison with `x1 > x2 > ... > xn`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u64> {
        &mut self.0
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order (total degree first) then lex; used only for canonical sorting.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A parsed term before the ambient variable count is known:
/// `(variable index, exponent)` pairs.
pub(crate) fn parse_term(s: &str) -> Result<Vec<(usize, u64)>> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let e: u64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (v.trim(), e)
            }
            None => (factor, 1),
        };
        let idx = var
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| Error::Parse(format!("bad variable `{var}`, expected x1, x2, ...")))?;
        out.push((idx - 1, exp));
    }
    Ok(out)
}

pub(crate) fn term_to_monomial(term: &[(usize, u64)], n: usize) -> Result<Monomial> {
    let mut e = vec![0u64; n];
    for &(i, x) in term {
        if i >= n {
            return Err(Error::Dimension {
                expected: n,
                found: i + 1,
            });
        }
        e[i] = e[i]
            .checked_add(x)
            .ok_or(Error::Overflow("parsed exponent"))?;
    }
    Monomial::new(e)
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `x1^2*x3`; the ambient count is the largest index present.
    fn from_str(s: &str) -> Result<Self> {
        let term = parse_term(s)?;
        let n = term.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        term_to_monomial(&term, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str, n: usize) -> Monomial {
        s.parse::<Monomial>().unwrap().with_n(n).unwrap()
    }

    #[test]
    fn lcm_is_componentwise_max() {
        assert_eq!(m("x1*x2", 3).lcm(&m("x2*x3", 3)).unwrap(), m("x1*x2*x3", 3));
        let a = m("x1^3*x2", 2);
        assert_eq!(a.lcm(&a).unwrap(), a);
    }

    #[test]
    fn lcm_of_example_triple_is_all_variables() {
        let a = m("x1*x2*x8*x9*x10", 10);
        let b = m("x2*x3*x4*x5*x10", 10);
        let c = m("x5*x6*x7*x8*x10", 10);
        let l = a.lcm(&b).unwrap().lcm(&c).unwrap();
        assert_eq!(l, Monomial::squarefree(10, 0..10));
    }

    #[test]
    fn lcm_dimension_mismatch() {
        let err = m("x1", 2).lcm(&m("x1", 3)).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn display_and_parse() {
        let a = m("x3^2*x5", 5);
        assert_eq!(a.to_string(), "x3^2*x5");
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert!("y1".parse::<Monomial>().is_err());
        assert!("x0".parse::<Monomial>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let a = Monomial::new(vec![u64::MAX / 2 + 1]).unwrap();
        assert!(matches!(a.pow(2), Err(Error::Overflow(_))));
        assert!(Monomial::new(vec![u64::MAX, 1]).is_err());
    }

    #[test]
    fn div_gcd() {
        let a = m("x1*x2", 3);
        let b = m("x2*x3", 3);
        assert_eq!(a.div_gcd(&b).unwrap(), m("x1", 3));
        assert_eq!(a.div(&b), None);
    }
}
