//! Monomials in `n` variables with the graded lexicographic order
//! (total degree first, then variable 1 highest).
//!
//! This single ordering fixes the coordinatization of every jet space in the
//! crate, so that subspace bases computed in different runs line up exactly.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "monomial needs at least one variable");
        Monomial { exponents }
    }

    /// The constant monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n])
    }

    /// The variable `x_i`, `i` 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n, "variable index out of range");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Monomial::new(e)
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Exponent of `x_i`, `i` 1-based.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents[i - 1]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Multiply by `x_i` (1-based).
    pub fn bump(&self, i: usize) -> Monomial {
        let mut e = self.exponents.clone();
        e[i - 1] += 1;
        Monomial::new(e)
    }

    /// Divide by `x_i` (1-based); `None` if the exponent is zero.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exponents[i - 1] == 0 {
            return None;
        }
        let mut e = self.exponents.clone();
        e[i - 1] -= 1;
        Some(Monomial::new(e))
    }

    /// Componentwise quotient `self / other`; `None` if `other` does not divide.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut e = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial::new(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        // Within a degree the monomial with the larger exponent vector
        // (lexicographically, variable 1 first) comes earlier.
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('x'))
    }
}

impl Monomial {
    /// Render as e.g. `x1^2*x3` with the given variable letter; `1` for the
    /// constant monomial.
    pub fn display(&self, var: char) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{}{}", var, i + 1)),
                _ => parts.push(format!("{}{}^{}", var, i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials in `n` variables with `min_degree <= deg <= order`, in
/// graded-lex order. This is the coordinate basis used by every
/// `SubspaceBasis` over a jet space.
pub fn monomial_basis(n: usize, order: u32, min_degree: u32) -> Vec<Monomial> {
    assert!(min_degree <= order, "min_degree must not exceed order");
    let mut out = Vec::new();
    for d in min_degree..=order {
        push_degree(n, d, &mut out);
    }
    out
}

fn push_degree(n: usize, d: u32, out: &mut Vec<Monomial>) {
    let mut current = vec![0u32; n];
    fill(0, d, n, &mut current, out);
}

fn fill(pos: usize, remaining: u32, n: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    // descending exponent of the leading variable keeps graded-lex order
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(pos + 1, remaining - e, n, current, out);
    }
    current[pos] = 0;
}

/// Number of monomials of degree exactly `d` in `n` variables: C(d+n-1, n-1).
pub fn count_degree(n: usize, d: u32) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..n {
        num *= (d as u128) + i as u128;
        den *= i as u128;
    }
    (num / den) as usize
}

/// Number of monomials with `min_degree <= deg <= order`.
pub fn count_range(n: usize, order: u32, min_degree: u32) -> usize {
    (min_degree..=order).map(|d| count_degree(n, d)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_basis() {
        let b = monomial_basis(1, 3, 1);
        assert_eq!(b.len(), 3);
        assert_eq!(b[0], Monomial::new(vec![1]));
        assert_eq!(b[1], Monomial::new(vec![2]));
        assert_eq!(b[2], Monomial::new(vec![3]));
    }

    #[test]
    fn bivariate_graded_lex() {
        let b = monomial_basis(2, 2, 0);
        let expect: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        assert_eq!(b.len(), 6);
        for (m, e) in b.iter().zip(expect) {
            assert_eq!(m.exponents(), &e[..]);
        }
    }

    #[test]
    fn trivariate_count_brute_force() {
        // independent enumeration of exponent vectors
        let mut count = 0usize;
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                for c in 0..=4u32 {
                    let d = a + b + c;
                    if (1..=4).contains(&d) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 34);
        assert_eq!(monomial_basis(3, 4, 1).len(), 34);
        assert_eq!(count_range(3, 4, 1), 34);
    }

    #[test]
    fn counts_match_closed_form() {
        for n in 1..=4usize {
            for order in 0..=5u32 {
                for min in 0..=order {
                    assert_eq!(
                        monomial_basis(n, order, min).len(),
                        count_range(n, order, min)
                    );
                }
            }
        }
    }

    #[test]
    fn basis_is_sorted_and_unique() {
        let b = monomial_basis(3, 4, 0);
        for w in b.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}
