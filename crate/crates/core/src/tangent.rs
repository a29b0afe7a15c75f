//! Tangent spaces of group-constrained orbits through a map-germ jet,
//! codimensions, relative moduli dimensions and the rigidity consequences.
//!
//! Every subspace here lives in the ambient of order-(k-1) jets of fields
//! along the germ: a k-jet of `f` determines the columns of its Jacobian
//! only to order k-1, so mixing orders silently is the main correctness
//! hazard. Reports carry the comparison order explicitly.

use crate::error::{Error, Result};
use crate::germ::GermJet;
use crate::gfields::{first_nonlinear_degree, theta_g_jet};
use crate::lie::{algebra_of, subalgebra_check, GroupId};
use crate::linalg::{quotient_dim, SubspaceBasis};
use crate::monomial::{count_range, monomial_basis};
use crate::poly::{JetPoly, Q};

use num_traits::Zero;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivalenceKind {
    /// Right action plus structure-preserving target diffeomorphism jets.
    AG,
    /// Right action plus one constant matrix from the group.
    RxG,
}

impl EquivalenceKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ag" => Ok(EquivalenceKind::AG),
            "rxg" => Ok(EquivalenceKind::RxG),
            _ => Err(Error::InvalidGroup(format!("unknown equivalence `{s}`"))),
        }
    }
}

impl std::fmt::Display for EquivalenceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquivalenceKind::AG => write!(f, "ag"),
            EquivalenceKind::RxG => write!(f, "rxg"),
        }
    }
}

fn ambient_label(n: usize, p: usize, kc: u32, min: u32) -> String {
    format!("theta_f[n={n},p={p},kc={kc},min={min}]")
}

fn ambient_dim(n: usize, p: usize, kc: u32, min: u32) -> usize {
    if min > kc {
        return 0;
    }
    p * count_range(n, kc, min)
}

/// Coordinates of a field-along-f jet in the order-`kc` ambient.
fn encode(v: &GermJet, kc: u32, min: u32) -> Vec<Q> {
    if min > kc {
        return Vec::new();
    }
    let n = v.source_dim();
    let p = v.target_dim();
    let monos = monomial_basis(n, kc, min);
    let mut out = vec![Q::zero(); p * monos.len()];
    for (c, comp) in v.components().iter().enumerate() {
        for (j, m) in monos.iter().enumerate() {
            let q = comp.coeff(m);
            if !q.is_zero() {
                out[c * monos.len() + j] = q;
            }
        }
    }
    out
}

fn check_shapes(f: &GermJet, g: GroupId) -> Result<()> {
    if f.target_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "germ into R^{} under a group acting on R^{}",
            f.target_dim(),
            g.ambient_dim()
        )));
    }
    Ok(())
}

fn prepare(f: &GermJet, k: u32) -> Result<GermJet> {
    if k < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: k });
    }
    if f.order() < k {
        return Err(Error::OrderTooSmall {
            needed: k,
            have: f.order(),
        });
    }
    Ok(f.truncated(k))
}

/// Image of `ζ ↦ df ∘ ζ` over source fields (vanishing at 0 unless
/// `extended`), spanned by the jets of `x^α ∂f/∂x_i` at comparison order
/// `k - 1`.
pub fn tf_image(f: &GermJet, k: u32, extended: bool) -> Result<SubspaceBasis> {
    let f = prepare(f, k)?;
    let n = f.source_dim();
    let p = f.target_dim();
    let kc = k - 1;
    let min = if extended { 0 } else { 1 };
    let label = ambient_label(n, p, kc, min);
    let dim = ambient_dim(n, p, kc, min);
    if dim == 0 {
        return Ok(SubspaceBasis::zero(0, label));
    }
    let jac = f.jacobian();
    let mut vectors = Vec::new();
    for i in 1..=n {
        let col: Vec<JetPoly> = (0..p).map(|r| jac[r][i - 1].clone()).collect();
        // generators x^α ∂f/∂x_i; degrees beyond kc truncate to zero
        for alpha in monomial_basis(n, kc, min) {
            let mut mono = JetPoly::zero(n, k);
            mono.set_coeff(alpha.clone(), Q::from_integer(1.into()));
            let comps: Vec<JetPoly> = col
                .iter()
                .map(|c| mono.mul(c).unwrap().truncated(kc))
                .collect();
            let v = GermJet::new_field(n, p, kc, comps).unwrap();
            vectors.push(encode(&v, kc, min));
        }
    }
    SubspaceBasis::span(vectors, dim, label)
}

/// Image of `ξ ↦ ξ ∘ f` over the group's field space (θ[G] when `extended`,
/// θ[G]₀ otherwise), at comparison order `k - 1`.
pub fn omega_image(f: &GermJet, g: GroupId, k: u32, extended: bool) -> Result<SubspaceBasis> {
    check_shapes(f, g)?;
    let f = prepare(f, k)?;
    let n = f.source_dim();
    let p = f.target_dim();
    let kc = k - 1;
    let min = if extended { 0 } else { 1 };
    let space = theta_g_jet(g, k, extended)?;
    let mut vectors = Vec::new();
    for xi in space.basis_fields() {
        let composed = xi.compose(&f)?;
        vectors.push(encode(&composed.truncated(kc), kc, min));
    }
    SubspaceBasis::span(vectors, ambient_dim(n, p, kc, min), ambient_label(n, p, kc, min))
}

/// Span of `X . f` over the algebra basis, at comparison order `k - 1`.
pub fn g_of_f(f: &GermJet, g: GroupId, k: u32, extended: bool) -> Result<SubspaceBasis> {
    check_shapes(f, g)?;
    let f = prepare(f, k)?;
    let n = f.source_dim();
    let p = f.target_dim();
    let kc = k - 1;
    let min = if extended { 0 } else { 1 };
    let alg = algebra_of(g)?;
    let mut vectors = Vec::new();
    for x in alg.basis() {
        let v = f.linear_image(x)?.truncated(kc);
        vectors.push(encode(&v, kc, min));
    }
    SubspaceBasis::span(vectors, ambient_dim(n, p, kc, min), ambient_label(n, p, kc, min))
}

/// `dim g - dim g(f)`: the matrices annihilating the germ, at the germ's
/// own jet order.
pub fn annihilator_dim(f: &GermJet, g: GroupId) -> Result<usize> {
    check_shapes(f, g)?;
    let k = f.order();
    let gf = g_of_f(f, g, k, true)?;
    Ok(algebra_of(g)?.dim() - gf.dim())
}

#[derive(Clone, Debug)]
pub struct TangentReport {
    pub germ: GermJet,
    pub group: GroupId,
    pub eq: EquivalenceKind,
    pub k: u32,
    pub comparison_order: u32,
    pub extended: bool,
    pub tf_dim: usize,
    pub omega_dim: usize,
    pub g_of_f_dim: usize,
    pub total_dim: usize,
    pub ambient_dim: usize,
    pub codim: usize,
    /// Equal codimension at orders k-1 and k. Heuristic evidence only: jet
    /// stabilization is not a finite-determinacy certificate.
    pub stabilized: bool,
}

/// The tangent subspace itself (sum of the pieces selected by `eq`).
pub fn tangent_subspace(
    f: &GermJet,
    g: GroupId,
    eq: EquivalenceKind,
    k: u32,
    extended: bool,
) -> Result<SubspaceBasis> {
    let tf = tf_image(f, k, extended)?;
    let other = match eq {
        EquivalenceKind::AG => omega_image(f, g, k, extended)?,
        EquivalenceKind::RxG => g_of_f(f, g, k, extended)?,
    };
    tf.sum(&other)
}

pub fn tangent(
    f: &GermJet,
    g: GroupId,
    eq: EquivalenceKind,
    k: u32,
    extended: bool,
) -> Result<TangentReport> {
    check_shapes(f, g)?;
    let tf = tf_image(f, k, extended)?;
    let omega = omega_image(f, g, k, extended)?;
    let gf = g_of_f(f, g, k, extended)?;
    let total = match eq {
        EquivalenceKind::AG => tf.sum(&omega)?,
        EquivalenceKind::RxG => tf.sum(&gf)?,
    };
    let amb = ambient_dim(
        f.source_dim(),
        f.target_dim(),
        k - 1,
        if extended { 0 } else { 1 },
    );
    let codim = quotient_dim(&total, amb);
    let stabilized = if k >= 2 {
        let prev = tangent_subspace(f, g, eq, k - 1, extended)?;
        let prev_amb = ambient_dim(
            f.source_dim(),
            f.target_dim(),
            k - 2,
            if extended { 0 } else { 1 },
        );
        quotient_dim(&prev, prev_amb) == codim
    } else {
        false
    };
    Ok(TangentReport {
        germ: f.clone(),
        group: g,
        eq,
        k,
        comparison_order: k - 1,
        extended,
        tf_dim: tf.dim(),
        omega_dim: omega.dim(),
        g_of_f_dim: gf.dim(),
        total_dim: total.dim(),
        ambient_dim: amb,
        codim,
        stabilized,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuliPair {
    /// T A[G](f) / T (RxG)(f), same group.
    AgVsRxg(GroupId),
    /// T A[G](f) / T A[H](f) for a subgroup H of G.
    AgVsAh(GroupId, GroupId),
    /// T (RxG)(f) / T (RxH)(f) for a subgroup H of G.
    RxgVsRxh(GroupId, GroupId),
}

impl std::fmt::Display for ModuliPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModuliPair::AgVsRxg(g) => write!(f, "ag-vs-rxg[{g}]"),
            ModuliPair::AgVsAh(g, h) => write!(f, "ag-vs-ah[{g};{h}]"),
            ModuliPair::RxgVsRxh(g, h) => write!(f, "rxg-vs-rxh[{g};{h}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuliReport {
    pub germ: GermJet,
    pub pair: ModuliPair,
    pub k: u32,
    pub comparison_order: u32,
    pub dim: usize,
    pub larger_dim: usize,
    pub smaller_dim: usize,
    /// `dim G - dim H` where the pair admits it.
    pub bound: Option<usize>,
    /// The quotient dimension identity from the defining exact sequence:
    /// dim(larger/smaller) = dim(W_G/W_H) - dim((tf ∩ W_G)/(tf ∩ W_H)).
    pub exact_sequence_ok: bool,
}

/// Relative infinitesimal moduli dimension at jet level. Non-extended
/// tangent spaces, comparison order `k - 1`.
pub fn moduli(f: &GermJet, pair: ModuliPair, k: u32) -> Result<ModuliReport> {
    let (g, h_opt) = match pair {
        ModuliPair::AgVsRxg(g) => (g, None),
        ModuliPair::AgVsAh(g, h) | ModuliPair::RxgVsRxh(g, h) => (g, Some(h)),
    };
    check_shapes(f, g)?;
    if let Some(h) = h_opt {
        if !subalgebra_check(h, g)? {
            return Err(Error::NotASubgroup(h.to_string(), g.to_string()));
        }
    }
    let tf = tf_image(f, k, false)?;
    let (w_big, w_small, bound) = match pair {
        ModuliPair::AgVsRxg(g) => (
            omega_image(f, g, k, false)?,
            g_of_f(f, g, k, false)?,
            None,
        ),
        ModuliPair::AgVsAh(g, h) => (
            omega_image(f, g, k, false)?,
            omega_image(f, h, k, false)?,
            None,
        ),
        ModuliPair::RxgVsRxh(g, h) => (
            g_of_f(f, g, k, false)?,
            g_of_f(f, h, k, false)?,
            Some(algebra_of(g)?.dim() - algebra_of(h)?.dim()),
        ),
    };
    if !w_big.contains_subspace(&w_small)? {
        return Err(Error::Internal(format!(
            "smaller part not contained in larger for {pair}"
        )));
    }
    let larger = tf.sum(&w_big)?;
    let smaller = tf.sum(&w_small)?;
    if !larger.contains_subspace(&smaller)? {
        return Err(Error::Internal(format!(
            "tangent containment violated for {pair}"
        )));
    }
    let dim = larger.dim() - smaller.dim();
    if let Some(b) = bound {
        if dim > b {
            return Err(Error::Internal(format!(
                "moduli dimension {dim} exceeds the group-dimension bound {b}"
            )));
        }
    }
    let meet_big = tf.intersection(&w_big)?;
    let meet_small = tf.intersection(&w_small)?;
    let exact_sequence_ok = dim
        == (w_big.dim() - w_small.dim()) - (meet_big.dim() - meet_small.dim());
    Ok(ModuliReport {
        germ: f.clone(),
        pair,
        k,
        comparison_order: k - 1,
        dim,
        larger_dim: larger.dim(),
        smaller_dim: smaller.dim(),
        bound,
        exact_sequence_ok,
    })
}

#[derive(Clone, Debug)]
pub struct RigidityGermResult {
    pub germ: GermJet,
    pub subspaces_equal: bool,
    pub moduli_dim: usize,
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub group: GroupId,
    pub k: u32,
    pub linear_only: bool,
    pub first_nonlinear_degree: Option<u32>,
    /// Populated when `linear_only`: per-germ literal subspace equality of
    /// the two tangent spaces and the moduli dimension (expected 0).
    pub germ_results: Vec<RigidityGermResult>,
    pub all_hold: bool,
}

/// When the group's field space is linear-only, the two tangent spaces
/// coincide and the relative moduli space vanishes; check this literally on
/// the sample germs. Otherwise report the first nonlinear degree.
pub fn rigidity_report(g: GroupId, k: u32, sample_germs: &[GermJet]) -> Result<RigidityReport> {
    let first_nl = first_nonlinear_degree(g, k)?;
    let linear_only = first_nl.is_none();
    let mut germ_results = Vec::new();
    let mut all_hold = true;
    if linear_only {
        for f in sample_germs {
            let ag = tangent_subspace(f, g, EquivalenceKind::AG, k, false)?;
            let rxg = tangent_subspace(f, g, EquivalenceKind::RxG, k, false)?;
            let subspaces_equal = ag == rxg;
            let m = moduli(f, ModuliPair::AgVsRxg(g), k)?;
            all_hold &= subspaces_equal && m.dim == 0;
            germ_results.push(RigidityGermResult {
                germ: f.clone(),
                subspaces_equal,
                moduli_dim: m.dim,
            });
        }
    }
    Ok(RigidityReport {
        group: g,
        k,
        linear_only,
        first_nonlinear_degree: first_nl,
        germ_results,
        all_hold,
    })
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub germ: GermJet,
    pub group: GroupId,
    pub eq: EquivalenceKind,
    pub extended: bool,
    /// (comparison order, codimension) rows.
    pub codims: Vec<(u32, usize)>,
    pub strictly_increasing: bool,
}

/// Codimension per comparison order 2..=k_max (each row uses the jet order
/// one above its comparison order, so the germ must carry order k_max + 1).
/// Monotone growth is evidence of infinite codimension, not a proof.
pub fn growth_probe(
    f: &GermJet,
    g: GroupId,
    eq: EquivalenceKind,
    extended: bool,
    k_max: u32,
) -> Result<GrowthReport> {
    if k_max < 2 {
        return Err(Error::OrderTooSmall {
            needed: 2,
            have: k_max,
        });
    }
    if f.order() < k_max + 1 {
        return Err(Error::OrderTooSmall {
            needed: k_max + 1,
            have: f.order(),
        });
    }
    let mut codims = Vec::new();
    for kc in 2..=k_max {
        let sub = tangent_subspace(f, g, eq, kc + 1, extended)?;
        let amb = ambient_dim(
            f.source_dim(),
            f.target_dim(),
            kc,
            if extended { 0 } else { 1 },
        );
        codims.push((kc, quotient_dim(&sub, amb)));
    }
    let strictly_increasing = codims.windows(2).all(|w| w[1].1 > w[0].1);
    Ok(GrowthReport {
        germ: f.clone(),
        group: g,
        eq,
        extended,
        codims,
        strictly_increasing,
    })
}
