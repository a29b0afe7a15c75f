//! Truncated multivariate polynomials over exact rationals: the ring of
//! `k`-jets of function germs. Every operation is exact; products discard
//! monomials beyond the jet order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::germ::GermJet;
use crate::monomial::Monomial;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q_int(v: i64) -> Q {
    Q::from_integer(v.into())
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

#[derive(Clone, PartialEq, Eq)]
pub struct JetPoly {
    n: usize,
    order: u32,
    // zero coefficients are never stored
    coeffs: BTreeMap<Monomial, Q>,
}

impl JetPoly {
    pub fn zero(n: usize, order: u32) -> Self {
        JetPoly {
            n,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, order: u32, c: Q) -> Self {
        let mut p = JetPoly::zero(n, order);
        p.set_coeff(Monomial::one(n), c);
        p
    }

    pub fn one(n: usize, order: u32) -> Self {
        JetPoly::constant(n, order, Q::one())
    }

    /// The variable `x_i`, `i` 1-based.
    pub fn var(n: usize, order: u32, i: usize) -> Self {
        assert!(order >= 1, "order 0 jets cannot hold a variable");
        let mut p = JetPoly::zero(n, order);
        p.set_coeff(Monomial::var(n, i), Q::one());
        p
    }

    pub fn from_terms<I>(n: usize, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Q)>,
    {
        let mut p = JetPoly::zero(n, order);
        for (m, c) in terms {
            if m.nvars() != n {
                return Err(Error::DimensionMismatch(format!(
                    "monomial in {} variables in a {}-variable jet",
                    m.nvars(),
                    n
                )));
            }
            if m.degree() > order {
                return Err(Error::OrderMismatch(format!(
                    "monomial of degree {} exceeds jet order {}",
                    m.degree(),
                    order
                )));
            }
            let cur = p.coeff(&m) + c;
            p.set_coeff(m, cur);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.coeffs.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn set_coeff(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.n);
        debug_assert!(m.degree() <= self.order);
        if c.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.coeffs.iter()
    }

    /// Degree of the lowest nonzero term, `None` for the zero jet.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| m.degree()).min()
    }

    /// Degree of the highest stored term, `None` for the zero jet.
    pub fn top_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| m.degree()).max()
    }

    fn check_shape(&self, other: &JetPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.n, other.n
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(format!(
                "order {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &JetPoly) -> Result<JetPoly> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            let cur = out.coeff(m) + c;
            out.set_coeff(m.clone(), cur);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &JetPoly) -> Result<JetPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> JetPoly {
        let mut out = JetPoly::zero(self.n, self.order);
        for (m, c) in self.terms() {
            out.coeffs.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> JetPoly {
        if s.is_zero() {
            return JetPoly::zero(self.n, self.order);
        }
        let mut out = JetPoly::zero(self.n, self.order);
        for (m, c) in self.terms() {
            out.coeffs.insert(m.clone(), s * c);
        }
        out
    }

    /// Exact product truncated to the jet order.
    pub fn mul(&self, other: &JetPoly) -> Result<JetPoly> {
        self.check_shape(other)?;
        let mut out = JetPoly::zero(self.n, self.order);
        for (ma, ca) in self.terms() {
            if ma.degree() > self.order {
                continue;
            }
            for (mb, cb) in other.terms() {
                if ma.degree() + mb.degree() > self.order {
                    // terms() is graded-lex ascending, so all further mb are too big
                    break;
                }
                let m = ma.mul(mb);
                let cur = out.coeff(&m) + ca * cb;
                out.set_coeff(m, cur);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> JetPoly {
        let mut out = JetPoly::one(self.n, self.order);
        for _ in 0..e {
            out = out.mul(self).expect("same shape");
        }
        out
    }

    /// Exact partial derivative with respect to `x_i` (1-based). The result
    /// keeps the jet order `k`; its degree-`k` slice would need the
    /// (`k`+1)-jet of the input, so consumers mixing derivatives with
    /// products must compare at order `k - 1`.
    pub fn diff(&self, i: usize) -> JetPoly {
        assert!(1 <= i && i <= self.n, "variable index out of range");
        let mut out = JetPoly::zero(self.n, self.order);
        for (m, c) in self.terms() {
            let e = m.exponent(i);
            if e > 0 {
                let lowered = m.lower(i).unwrap();
                let cur = out.coeff(&lowered) + c * q_int(e as i64);
                out.set_coeff(lowered, cur);
            }
        }
        out
    }

    /// Truncate to a (lower or equal) jet order.
    pub fn truncated(&self, order: u32) -> JetPoly {
        let mut out = JetPoly::zero(self.n, order);
        for (m, c) in self.terms() {
            if m.degree() <= order {
                out.coeffs.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterpret at a higher jet order. Only exact (polynomial) germs may
    /// do this; for a genuine jet it would fabricate zero coefficients.
    pub fn with_order(&self, order: u32) -> JetPoly {
        assert!(order >= self.order, "use truncated() to lower the order");
        let mut out = self.clone();
        out.order = order;
        out
    }

    /// Homogeneous degree-`d` part, kept at the same order.
    pub fn homogeneous_part(&self, d: u32) -> JetPoly {
        let mut out = JetPoly::zero(self.n, self.order);
        for (m, c) in self.terms() {
            if m.degree() == d {
                out.coeffs.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Exact `k`-jet of `self ∘ inner`. Valid because the components of
    /// `inner` vanish at the origin: degree-`d` terms of `self` only
    /// contribute to degrees `>= d` of the composite.
    pub fn compose(&self, inner: &GermJet) -> Result<JetPoly> {
        if inner.target_dim() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "outer jet in {} variables composed with a germ into R^{}",
                self.n,
                inner.target_dim()
            )));
        }
        if inner.order() != self.order {
            return Err(Error::OrderMismatch(format!(
                "outer order {} vs inner order {}",
                self.order,
                inner.order()
            )));
        }
        for c in inner.components() {
            if !c.constant_term().is_zero() {
                return Err(Error::NonzeroConstant(
                    "composition requires the inner germ to vanish at 0".into(),
                ));
            }
        }
        let n_in = inner.source_dim();
        let order = self.order;
        // cache powers of each inner component
        let mut powers: Vec<Vec<JetPoly>> = inner
            .components()
            .iter()
            .map(|_| vec![JetPoly::one(n_in, order)])
            .collect();
        let power = |ci: usize, e: u32, powers: &mut Vec<Vec<JetPoly>>| -> JetPoly {
            while powers[ci].len() <= e as usize {
                let last = powers[ci].last().unwrap().clone();
                let next = last.mul(&inner.components()[ci]).expect("same shape");
                powers[ci].push(next);
            }
            powers[ci][e as usize].clone()
        };
        let mut out = JetPoly::zero(n_in, order);
        for (m, c) in self.terms() {
            let mut term = JetPoly::constant(n_in, order, c.clone());
            for (ci, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let p = power(ci, e, &mut powers);
                    term = term.mul(&p).expect("same shape");
                    if term.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&term).expect("same shape");
        }
        Ok(out)
    }

    /// Canonical text form in the parser grammar, using variable letter `var`.
    pub fn display(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mono = m.display(var);
            if mono == "1" {
                s.push_str(&format_q(&abs));
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format_q(&abs));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

/// Nearest double; the jet coefficients this crate produces are far from
/// the extremes where this would matter.
pub fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// `3`, `-1/4`, ... (integers without the denominator).
pub fn format_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Debug for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetPoly[n={},k={}]({})", self.n, self.order, self.display('x'))
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('x'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(src: &str, n: usize, k: u32) -> JetPoly {
        parse_poly(src, n, k).unwrap()
    }

    #[test]
    fn product_difference_of_squares() {
        let a = p("x1 + x2", 2, 2);
        let b = p("x1 - x2", 2, 2);
        assert_eq!(a.mul(&b).unwrap(), p("x1^2 - x2^2", 2, 2));
    }

    #[test]
    fn product_truncates() {
        let a = p("x1^2", 1, 3);
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn geometric_series_inverse() {
        let a = p("1 + x1", 1, 3);
        let b = p("1 - x1 + x1^2 - x1^3", 1, 3);
        assert_eq!(a.mul(&b).unwrap(), JetPoly::one(1, 3));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x1^2*x2", 2, 3).diff(1), p("2*x1*x2", 2, 3));
        assert!(p("x1^3", 2, 3).diff(2).is_zero());
        assert_eq!(p("3/2*x1^2 + x1*x2", 2, 2).diff(1), p("3*x1 + x2", 2, 2));
    }

    #[test]
    fn compose_examples() {
        let inner = GermJet::new_map(
            1,
            2,
            4,
            vec![p("x1 + x1^2", 1, 4), p("x1^3", 1, 4)],
        )
        .unwrap();
        let outer = p("x1*x2", 2, 4); // y1*y2
        assert_eq!(outer.compose(&inner).unwrap(), p("x1^4", 1, 4));

        let inner2 = GermJet::new_map(2, 2, 4, vec![p("x1^2", 2, 4), p("x1*x2", 2, 4)]).unwrap();
        let outer2 = p("x1 + x2^2", 2, 4);
        assert_eq!(outer2.compose(&inner2).unwrap(), p("x1^2 + x1^2*x2^2", 2, 4));

        // projection onto the first component
        let outer3 = p("x1", 2, 4);
        assert_eq!(outer3.compose(&inner2).unwrap(), p("x1^2", 2, 4));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let inner = GermJet::new_field(1, 2, 3, vec![p("1 + x1", 1, 3), p("x1", 1, 3)]).unwrap();
        let outer = p("x1", 2, 3);
        assert!(matches!(
            outer.compose(&inner),
            Err(Error::NonzeroConstant(_))
        ));
    }

    #[test]
    fn mismatch_errors() {
        let a = JetPoly::var(2, 3, 1);
        let b = JetPoly::var(3, 3, 1);
        assert!(a.add(&b).is_err());
        let c = JetPoly::var(2, 2, 1);
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn display_round_trip() {
        let src = "x1^2 + 3/2*x1*x2 - x2^3";
        let a = p(src, 2, 3);
        assert_eq!(a.display('x'), src);
        assert_eq!(p(&a.display('x'), 2, 3), a);
    }
}
