//! Double-precision jets: the numeric carrier for the invariants that need
//! square roots and k-th roots. Exactness is the other modules' job; here
//! comparisons always carry an explicit tolerance.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::germ::GermJet;
use crate::monomial::Monomial;
use crate::poly::JetPoly;

#[derive(Clone, Debug)]
pub struct NumericJet {
    n: usize,
    order: u32,
    terms: BTreeMap<Monomial, f64>,
}

impl NumericJet {
    pub fn zero(n: usize, order: u32) -> Self {
        NumericJet {
            n,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, order: u32, c: f64) -> Self {
        let mut j = NumericJet::zero(n, order);
        j.set_coeff(Monomial::one(n), c);
        j
    }

    pub fn var(n: usize, order: u32, i: usize) -> Self {
        let mut j = NumericJet::zero(n, order);
        j.set_coeff(Monomial::var(n, i), 1.0);
        j
    }

    pub fn from_jetpoly(p: &JetPoly) -> Self {
        let mut j = NumericJet::zero(p.nvars(), p.order());
        for (m, c) in p.terms() {
            let num = bigint_to_f64(c.numer());
            let den = bigint_to_f64(c.denom());
            j.set_coeff(m.clone(), num / den);
        }
        j
    }

    /// Univariate jet from the coefficient list `[c_0, c_1, ...]`.
    pub fn from_coeffs_1d(coeffs: &[f64]) -> Self {
        let order = (coeffs.len().max(1) - 1) as u32;
        let mut j = NumericJet::zero(1, order);
        for (d, &c) in coeffs.iter().enumerate() {
            j.set_coeff(Monomial::new(vec![d as u32]), c);
        }
        j
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    /// Univariate coefficient of `x^d`.
    pub fn coeff1(&self, d: u32) -> f64 {
        debug_assert_eq!(self.n, 1);
        self.coeff(&Monomial::new(vec![d]))
    }

    pub fn constant_term(&self) -> f64 {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn set_coeff(&mut self, m: Monomial, c: f64) {
        debug_assert_eq!(m.nvars(), self.n);
        debug_assert!(m.degree() <= self.order);
        if c == 0.0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &f64)> {
        self.terms.iter()
    }

    pub fn norm_inf(&self) -> f64 {
        self.terms.values().fold(0.0, |a, &b| a.max(b.abs()))
    }

    pub fn add(&self, other: &NumericJet) -> NumericJet {
        debug_assert_eq!(self.n, other.n);
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for (m, c) in other.terms() {
            if m.degree() <= order {
                let cur = out.coeff(m) + c;
                out.set_coeff(m.clone(), cur);
            }
        }
        out
    }

    pub fn sub(&self, other: &NumericJet) -> NumericJet {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> NumericJet {
        let mut out = NumericJet::zero(self.n, self.order);
        for (m, c) in self.terms() {
            out.set_coeff(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &NumericJet) -> NumericJet {
        debug_assert_eq!(self.n, other.n);
        let order = self.order.min(other.order);
        let mut out = NumericJet::zero(self.n, order);
        for (ma, ca) in self.terms() {
            if ma.degree() > order {
                continue;
            }
            for (mb, cb) in other.terms() {
                if ma.degree() + mb.degree() > order {
                    break;
                }
                let m = ma.mul(mb);
                let cur = out.coeff(&m) + ca * cb;
                out.set_coeff(m, cur);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> NumericJet {
        debug_assert!(self.order >= 1);
        let mut out = NumericJet::zero(self.n, self.order - 1);
        for (m, c) in self.terms() {
            let e = m.exponent(i);
            if e > 0 {
                let lowered = m.lower(i).unwrap();
                let cur = out.coeff(&lowered) + c * e as f64;
                out.set_coeff(lowered, cur);
            }
        }
        out
    }

    pub fn truncated(&self, order: u32) -> NumericJet {
        let mut out = NumericJet::zero(self.n, order.min(self.order));
        for (m, c) in self.terms() {
            if m.degree() <= out.order {
                out.set_coeff(m.clone(), *c);
            }
        }
        out
    }

    /// Univariate antiderivative with zero constant term.
    pub fn integrate(&self) -> NumericJet {
        debug_assert_eq!(self.n, 1);
        let mut out = NumericJet::zero(1, self.order + 1);
        for (m, c) in self.terms() {
            let d = m.degree();
            out.set_coeff(Monomial::new(vec![d + 1]), c / (d as f64 + 1.0));
        }
        out
    }

    /// Univariate division by `x^k`; coefficients below `x^k` are dropped
    /// (they are the caller's residual).
    pub fn shift_down(&self, k: u32) -> NumericJet {
        debug_assert_eq!(self.n, 1);
        let order = self.order.saturating_sub(k);
        let mut out = NumericJet::zero(1, order);
        for (m, c) in self.terms() {
            if m.degree() >= k {
                out.set_coeff(Monomial::new(vec![m.degree() - k]), *c);
            }
        }
        out
    }

    /// `self^e` for real `e`, via the binomial series on the unit part.
    /// The constant term must be positive.
    pub fn powf(&self, e: f64) -> Result<NumericJet> {
        let a0 = self.constant_term();
        if a0 <= 0.0 {
            return Err(Error::DegenerateGerm(
                "powf needs a positive constant term".into(),
            ));
        }
        let s = self.scale(1.0 / a0).sub(&NumericJet::constant(self.n, self.order, 1.0));
        let mut acc = NumericJet::constant(self.n, self.order, 1.0);
        let mut spow = NumericJet::constant(self.n, self.order, 1.0);
        let mut binom = 1.0f64;
        for m in 1..=self.order {
            spow = spow.mul(&s);
            binom *= (e - (m as f64 - 1.0)) / m as f64;
            if spow.terms.is_empty() {
                break;
            }
            acc = acc.add(&spow.scale(binom));
        }
        Ok(acc.scale(a0.powf(e)))
    }

    /// Real cube root; works for either sign of the constant term.
    pub fn cbrt(&self) -> Result<NumericJet> {
        let a0 = self.constant_term();
        if a0 == 0.0 {
            return Err(Error::DegenerateGerm(
                "cbrt needs a nonzero constant term".into(),
            ));
        }
        let sign = a0.signum();
        let pos = self.scale(sign).powf(1.0 / 3.0)?;
        Ok(pos.scale(sign))
    }

    pub fn recip(&self) -> Result<NumericJet> {
        let a0 = self.constant_term();
        if a0 == 0.0 {
            return Err(Error::DegenerateGerm("reciprocal of a jet vanishing at 0".into()));
        }
        // powf needs positivity; fold the sign out first
        let sign = a0.signum();
        Ok(self.scale(sign).powf(-1.0)?.scale(sign))
    }

    pub fn sqrt(&self) -> Result<NumericJet> {
        self.powf(0.5)
    }

    /// Substitute the components of `inner` (vanishing at 0) for the
    /// variables.
    pub fn compose(&self, inner: &NumericGerm) -> Result<NumericJet> {
        if inner.p != self.n {
            return Err(Error::DimensionMismatch(
                "composition target dimension mismatch".into(),
            ));
        }
        for c in &inner.components {
            if c.constant_term() != 0.0 {
                return Err(Error::NonzeroConstant(
                    "numeric composition requires the inner germ to vanish at 0".into(),
                ));
            }
        }
        let order = self.order.min(inner.order);
        let n_in = inner.n;
        let comps: Vec<NumericJet> = inner
            .components
            .iter()
            .map(|c| c.truncated(order))
            .collect();
        let mut out = NumericJet::zero(n_in, order);
        for (m, c) in self.terms() {
            if m.degree() > order {
                continue;
            }
            let mut term = NumericJet::constant(n_in, order, *c);
            for (ci, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&comps[ci]);
                }
                if term.terms.is_empty() {
                    break;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

fn bigint_to_f64(b: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}

/// A tuple of numeric jets: a map germ or curve in coordinates.
#[derive(Clone, Debug)]
pub struct NumericGerm {
    n: usize,
    p: usize,
    order: u32,
    components: Vec<NumericJet>,
}

impl NumericGerm {
    pub fn new(n: usize, p: usize, order: u32, components: Vec<NumericJet>) -> Self {
        assert_eq!(components.len(), p);
        let components = components
            .into_iter()
            .map(|c| {
                assert_eq!(c.nvars(), n);
                c.truncated(order)
            })
            .collect();
        NumericGerm {
            n,
            p,
            order,
            components,
        }
    }

    pub fn from_germ(g: &GermJet) -> Self {
        NumericGerm::new(
            g.source_dim(),
            g.target_dim(),
            g.order(),
            g.components().iter().map(NumericJet::from_jetpoly).collect(),
        )
    }

    pub fn identity(n: usize, order: u32) -> Self {
        NumericGerm::new(
            n,
            n,
            order,
            (1..=n).map(|i| NumericJet::var(n, order, i)).collect(),
        )
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn components(&self) -> &[NumericJet] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &NumericJet {
        &self.components[i]
    }

    pub fn compose(&self, inner: &NumericGerm) -> Result<NumericGerm> {
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(inner))
            .collect::<Result<Vec<_>>>()?;
        let order = comps.iter().map(|c| c.order()).min().unwrap_or(self.order);
        Ok(NumericGerm::new(inner.n, self.p, order, comps))
    }

    pub fn linear_image(&self, a: &[Vec<f64>]) -> NumericGerm {
        let rows = a.len();
        let comps: Vec<NumericJet> = (0..rows)
            .map(|i| {
                let mut acc = NumericJet::zero(self.n, self.order);
                for j in 0..self.p {
                    if a[i][j] != 0.0 {
                        acc = acc.add(&self.components[j].scale(a[i][j]));
                    }
                }
                acc
            })
            .collect();
        NumericGerm::new(self.n, rows, self.order, comps)
    }

    pub fn truncated(&self, order: u32) -> NumericGerm {
        NumericGerm::new(
            self.n,
            self.p,
            order.min(self.order),
            self.components.iter().map(|c| c.truncated(order)).collect(),
        )
    }

    /// Univariate derivative applied componentwise.
    pub fn derivative(&self) -> NumericGerm {
        debug_assert_eq!(self.n, 1);
        NumericGerm::new(
            1,
            self.p,
            self.order - 1,
            self.components.iter().map(|c| c.derivative(1)).collect(),
        )
    }

    pub fn norm_inf(&self) -> f64 {
        self.components
            .iter()
            .fold(0.0, |a, c| a.max(c.norm_inf()))
    }

    pub fn sub(&self, other: &NumericGerm) -> NumericGerm {
        debug_assert_eq!(self.p, other.p);
        let order = self.order.min(other.order);
        NumericGerm::new(
            self.n,
            self.p,
            order,
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    /// Compositional inverse of a germ `(R^n, 0) -> (R^n, 0)` with
    /// invertible linear part, by Newton-style iteration one degree at a
    /// time.
    pub fn invert(&self) -> Result<NumericGerm> {
        if self.n != self.p {
            return Err(Error::DimensionMismatch("inverse of a non-square germ".into()));
        }
        for c in &self.components {
            if c.constant_term() != 0.0 {
                return Err(Error::NonzeroConstant("inverse requires fixing 0".into()));
            }
        }
        let n = self.n;
        let order = self.order;
        // linear part and its inverse
        let mut l = vec![vec![0.0; n]; n];
        for (i, c) in self.components.iter().enumerate() {
            for j in 1..=n {
                l[i][j - 1] = c.coeff(&Monomial::var(n, j));
            }
        }
        let l_inv = invert_matrix_f64(&l).ok_or_else(|| {
            Error::DegenerateGerm("linear part is singular; no inverse germ".into())
        })?;
        let id = NumericGerm::identity(n, order);
        // start with the inverse of the linear part
        let mut phi = id.linear_image(&l_inv);
        for _ in 0..=order {
            // phi <- phi - L^{-1} (self ∘ phi - id)
            let err = self.compose(&phi)?.sub(&id);
            if err.norm_inf() == 0.0 {
                break;
            }
            let correction = err.linear_image(&l_inv);
            phi = phi.sub(&correction);
        }
        Ok(phi)
    }
}

pub fn invert_matrix_f64(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            m[i][col]
                .abs()
                .partial_cmp(&m[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        let pv = m[col][col];
        for x in m[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0.0 {
                let f = m[r][col];
                for c in 0..2 * n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn powf_matches_series() {
        // (1 + x)^(-3/2) = 1 - 3/2 x + 15/8 x^2 - 35/16 x^3 + ...
        let j = NumericJet::from_coeffs_1d(&[1.0, 1.0, 0.0, 0.0]);
        let r = j.powf(-1.5).unwrap();
        assert!(close(r.coeff1(0), 1.0, 1e-12));
        assert!(close(r.coeff1(1), -1.5, 1e-12));
        assert!(close(r.coeff1(2), 15.0 / 8.0, 1e-12));
        assert!(close(r.coeff1(3), -35.0 / 16.0, 1e-12));
    }

    #[test]
    fn cbrt_of_negative() {
        let j = NumericJet::from_coeffs_1d(&[-8.0, 1.0]);
        let r = j.cbrt().unwrap();
        assert!(close(r.coeff1(0), -2.0, 1e-12));
        // d/dx (x - 8)^(1/3) at 0 = 1/(3 * cbrt(64)) -> coefficient 1/12... via series:
        // (-8 + x)^(1/3) = -2 (1 - x/8)^(1/3) = -2 (1 - x/24 - ...) = -2 + x/12 + ...
        assert!(close(r.coeff1(1), 1.0 / 12.0, 1e-12));
    }

    #[test]
    fn univariate_inverse_round_trip() {
        let psi = NumericGerm::new(
            1,
            1,
            6,
            vec![NumericJet::from_coeffs_1d(&[0.0, 2.0, -1.0, 0.5, 0.0, 0.25, 0.0])],
        );
        let phi = psi.invert().unwrap();
        let comp = psi.compose(&phi).unwrap();
        let id = NumericGerm::identity(1, 6);
        assert!(comp.sub(&id).norm_inf() < 1e-12);
    }

    #[test]
    fn bivariate_inverse_round_trip() {
        let mut c1 = NumericJet::var(2, 4, 1);
        c1.set_coeff(Monomial::new(vec![0, 2]), 0.7);
        let mut c2 = NumericJet::var(2, 4, 2);
        c2.set_coeff(Monomial::new(vec![1, 1]), -0.3);
        c2 = c2.add(&NumericJet::var(2, 4, 1).scale(0.5));
        let psi = NumericGerm::new(2, 2, 4, vec![c1, c2]);
        let phi = psi.invert().unwrap();
        let comp = psi.compose(&phi).unwrap();
        let id = NumericGerm::identity(2, 4);
        assert!(comp.sub(&id).norm_inf() < 1e-12);
    }
}
