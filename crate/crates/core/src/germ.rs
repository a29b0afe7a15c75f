//! Jets of map germs `f: (R^n, 0) -> (R^p, 0)` and, with constants allowed,
//! jets of vector fields along a germ.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::JetPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct GermJet {
    n: usize,
    p: usize,
    order: u32,
    components: Vec<JetPoly>,
    /// Map germs must vanish at the origin; vector-field jets may not.
    constants_allowed: bool,
}

impl GermJet {
    /// A map germ: every component must have zero constant term.
    pub fn new_map(n: usize, p: usize, order: u32, components: Vec<JetPoly>) -> Result<Self> {
        let g = Self::build(n, p, order, components, false)?;
        Ok(g)
    }

    /// A vector-field jet: constant terms permitted.
    pub fn new_field(n: usize, p: usize, order: u32, components: Vec<JetPoly>) -> Result<Self> {
        Self::build(n, p, order, components, true)
    }

    fn build(
        n: usize,
        p: usize,
        order: u32,
        components: Vec<JetPoly>,
        constants_allowed: bool,
    ) -> Result<Self> {
        if components.len() != p {
            return Err(Error::DimensionMismatch(format!(
                "{} components for target dimension {}",
                components.len(),
                p
            )));
        }
        for c in &components {
            if c.nvars() != n {
                return Err(Error::DimensionMismatch(format!(
                    "component in {} variables, source dimension {}",
                    c.nvars(),
                    n
                )));
            }
            if c.order() != order {
                return Err(Error::OrderMismatch(format!(
                    "component order {} vs germ order {}",
                    c.order(),
                    order
                )));
            }
            if !constants_allowed && !c.constant_term().is_zero() {
                return Err(Error::NonzeroConstant(
                    "map germ component does not vanish at 0".into(),
                ));
            }
        }
        Ok(GermJet {
            n,
            p,
            order,
            components,
            constants_allowed,
        })
    }

    pub fn zero_map(n: usize, p: usize, order: u32) -> Self {
        GermJet::new_map(n, p, order, vec![JetPoly::zero(n, order); p]).unwrap()
    }

    pub fn zero_field(n: usize, p: usize, order: u32) -> Self {
        GermJet::new_field(n, p, order, vec![JetPoly::zero(n, order); p]).unwrap()
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let comps = (1..=n).map(|i| JetPoly::var(n, order, i)).collect();
        GermJet::new_map(n, n, order, comps).unwrap()
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

    pub fn constants_allowed(&self) -> bool {
        self.constants_allowed
    }

    pub fn components(&self) -> &[JetPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &JetPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Smallest valuation among the components; `None` for the zero jet.
    pub fn valuation(&self) -> Option<u32> {
        self.components.iter().filter_map(|c| c.valuation()).min()
    }

    /// Entry `(i, j)` is `∂f_i/∂x_j`; entries keep the germ's order, with the
    /// usual caveat that their top-degree slice is incomplete.
    pub fn jacobian(&self) -> Vec<Vec<JetPoly>> {
        (0..self.p)
            .map(|i| (1..=self.n).map(|j| self.components[i].diff(j)).collect())
            .collect()
    }

    /// `self ∘ inner`, exact at the common jet order.
    pub fn compose(&self, inner: &GermJet) -> Result<GermJet> {
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(inner))
            .collect::<Result<Vec<_>>>()?;
        GermJet::build(
            inner.source_dim(),
            self.p,
            self.order,
            comps,
            self.constants_allowed,
        )
    }

    /// Apply a constant linear map on the target: `A . f`.
    pub fn linear_image(&self, a: &RationalMatrix) -> Result<GermJet> {
        if a.cols() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {} columns applied to {} components",
                a.cols(),
                self.p
            )));
        }
        let mut comps = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            let mut acc = JetPoly::zero(self.n, self.order);
            for j in 0..self.p {
                acc = acc
                    .add(&self.components[j].scale(a.at(i, j)))
                    .expect("same shape");
            }
            comps.push(acc);
        }
        GermJet::build(self.n, a.rows(), self.order, comps, self.constants_allowed)
    }

    pub fn add(&self, other: &GermJet) -> Result<GermJet> {
        if self.p != other.p {
            return Err(Error::DimensionMismatch("component counts differ".into()));
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        GermJet::build(
            self.n,
            self.p,
            self.order,
            comps,
            self.constants_allowed || other.constants_allowed,
        )
    }

    pub fn scale(&self, s: &crate::poly::Q) -> GermJet {
        let comps = self.components.iter().map(|c| c.scale(s)).collect();
        GermJet::build(self.n, self.p, self.order, comps, self.constants_allowed).unwrap()
    }

    pub fn truncated(&self, order: u32) -> GermJet {
        let comps = self.components.iter().map(|c| c.truncated(order)).collect();
        GermJet::build(self.n, self.p, order, comps, self.constants_allowed).unwrap()
    }

    /// Reinterpret an exact polynomial germ at a higher order.
    pub fn with_order(&self, order: u32) -> GermJet {
        let comps = self.components.iter().map(|c| c.with_order(order)).collect();
        GermJet::build(self.n, self.p, order, comps, self.constants_allowed).unwrap()
    }

    /// Componentwise scalar multiplication by a jet.
    pub fn scalar_mul(&self, s: &JetPoly) -> Result<GermJet> {
        let comps = self
            .components
            .iter()
            .map(|c| c.mul(s))
            .collect::<Result<Vec<_>>>()?;
        GermJet::build(self.n, self.p, self.order, comps, true)
    }

    pub fn display(&self, var: char) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.display(var)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for GermJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GermJet[{}->{},k={}]{}",
            self.n,
            self.p,
            self.order,
            self.display('x')
        )
    }
}
