//! germlab-core: exact jet calculus for smooth map germs under equivalences
//! constrained by a linear group structure on the target.
//!
//! The crate computes, at finite jet order and in exact rational arithmetic:
//!
//! - the vector-field spaces attached to a linear Lie group `G ⊂ GL(p, R)`
//!   (fields whose Jacobian matrix lies pointwise in the Lie algebra), the
//!   function ring over which those fields form a module, and the linearity
//!   ("rigidity") test for `G`;
//! - tangent spaces, codimensions and relative moduli dimensions of map-germ
//!   jets under the group-constrained right-left actions and under
//!   right-equivalence paired with a constant matrix from `G`;
//! - plane-curve and surface normal forms and their differential invariants
//!   (curvature, frontal frame invariants, equi-affine curvature, graph
//!   normal form), in double precision where roots appear.
//!
//! Exactness is the point: every rank, dimension and subspace identity in
//! the first two layers is computed over arbitrary-precision rationals.

pub mod curve;
pub mod error;
pub mod germ;
pub mod gfields;
pub mod lie;
pub mod linalg;
pub mod monge;
pub mod monomial;
pub mod numjet;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod tangent;

pub use error::{Error, ParseError, Result};
pub use germ::GermJet;
pub use gfields::{GFieldSpace, GRingJet};
pub use lie::{GroupId, LieAlgebraSpec};
pub use linalg::{quotient_dim, RationalMatrix, SubspaceBasis};
pub use monomial::{monomial_basis, Monomial};
pub use parse::parse_poly;
pub use poly::{JetPoly, Q};
pub use tangent::{EquivalenceKind, ModuliPair, ModuliReport, TangentReport};
