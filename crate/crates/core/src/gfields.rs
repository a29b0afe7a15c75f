//! Vector-field spaces attached to a group structure on the target.
//!
//! For a linear Lie group `G` with algebra `g`, the space of interest is the
//! set of field jets `η` on `(R^p, 0)` whose Jacobian matrix lies in `g` at
//! every point; `θ[G]₀` is the sublocus vanishing at the origin. The
//! construction here is degree by degree: a homogeneous degree-`d` field has
//! an exactly known homogeneous degree-`(d-1)` Jacobian, so the membership
//! constraints are exact linear equations, never truncated.
//!
//! The module also computes the largest function-ring jet space over which
//! `θ[G]₀` is a module, and the closed-form generator bases that the generic
//! kernel construction is checked against.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::germ::GermJet;
use crate::lie::{algebra_of, GroupId};
use crate::linalg::{RowReducer, SubspaceBasis};
use crate::monomial::{monomial_basis, Monomial};
use crate::poly::{q_int, JetPoly, Q};

fn slice_label(p: usize, d: u32) -> String {
    format!("theta_slice[p={p},d={d}]")
}

fn ring_label(p: usize, k: u32) -> String {
    format!("ring_jets[p={p},k={k}]")
}

/// Coordinates of a homogeneous degree-`d` field: `p` components times the
/// degree-`d` monomials, component-major.
fn field_slice_coords(field: &GermJet, d: u32, monos: &[Monomial]) -> Vec<Q> {
    let p = field.target_dim();
    let mut v = vec![Q::zero(); p * monos.len()];
    for (c, comp) in field.components().iter().enumerate() {
        for (j, m) in monos.iter().enumerate() {
            debug_assert_eq!(m.degree(), d);
            let q = comp.coeff(m);
            if !q.is_zero() {
                v[c * monos.len() + j] = q;
            }
        }
    }
    v
}

// ---------------------------------------------------------------------------
// per-degree cache (in memory, optionally mirrored on disk)

type SliceKey = (GroupId, u32);

fn slice_cache() -> &'static Mutex<HashMap<SliceKey, Arc<SubspaceBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<SliceKey, Arc<SubspaceBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_dir() -> &'static Mutex<Option<PathBuf>> {
    static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| Mutex::new(None))
}

/// Point the per-degree field-space cache at a directory (the CLI wires this
/// to `GERMLAB_CACHE_DIR`). `None` keeps the cache in memory only.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir().lock().unwrap() = dir;
}

fn disk_path(key: &SliceKey) -> Option<PathBuf> {
    let dir = cache_dir().lock().unwrap().clone()?;
    let (g, d) = key;
    let name = format!("slice_{}_d{}.json", g.to_string().replace([':', ','], "_"), d);
    Some(dir.join(name))
}

fn disk_load(key: &SliceKey) -> Option<SubspaceBasis> {
    let path = disk_path(key)?;
    let text = std::fs::read_to_string(path).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    let ambient = v.get("ambient_dim")?.as_u64()? as usize;
    let label = v.get("label")?.as_str()?.to_string();
    let mut rows = Vec::new();
    for row in v.get("rows")?.as_array()? {
        let mut out = Vec::new();
        for entry in row.as_array()? {
            out.push(parse_q(entry.as_str()?)?);
        }
        if out.len() != ambient {
            return None;
        }
        rows.push(out);
    }
    SubspaceBasis::span(rows, ambient, label).ok()
}

fn disk_store(key: &SliceKey, basis: &SubspaceBasis) {
    let Some(path) = disk_path(key) else { return };
    let rows: Vec<Vec<String>> = basis
        .rows()
        .iter()
        .map(|r| r.iter().map(crate::poly::format_q).collect())
        .collect();
    let v = serde_json::json!({
        "ambient_dim": basis.ambient_dim(),
        "label": basis.ambient_label(),
        "rows": rows,
    });
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    let _ = std::fs::write(path, serde_json::to_string(&v).unwrap());
}

fn parse_q(s: &str) -> Option<Q> {
    if let Some((num, den)) = s.split_once('/') {
        let n: num_bigint::BigInt = num.parse().ok()?;
        let d: num_bigint::BigInt = den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: num_bigint::BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

// ---------------------------------------------------------------------------
// generic kernel construction

/// Homogeneous degree-`d` slice of the field space of `g`: for `d = 0` the
/// full constant-field space, for `d >= 1` the kernel of the linear system
/// requiring every coefficient matrix of the Jacobian to be annihilated by
/// the algebra's annihilators.
pub fn theta_g_degree(g: GroupId, d: u32) -> Result<Arc<SubspaceBasis>> {
    let key = (g, d);
    if let Some(hit) = slice_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    if let Some(loaded) = disk_load(&key) {
        let arc = Arc::new(loaded);
        slice_cache()
            .lock()
            .unwrap()
            .insert(key, arc.clone());
        return Ok(arc);
    }
    let basis = compute_slice(g, d)?;
    disk_store(&key, &basis);
    let arc = Arc::new(basis);
    slice_cache().lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

fn compute_slice(g: GroupId, d: u32) -> Result<SubspaceBasis> {
    g.validate()?;
    let p = g.ambient_dim();
    let label = slice_label(p, d);
    if d == 0 {
        return Ok(SubspaceBasis::full(p, label));
    }
    let monos = monomial_basis(p, d, d);
    let mcount = monos.len();
    let ambient = p * mcount;
    let alg = algebra_of(g)?;
    if alg.annihilators().is_empty() {
        return Ok(SubspaceBasis::full(ambient, label));
    }
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let lower = monomial_basis(p, d - 1, d - 1);
    let mut reducer = RowReducer::new(ambient);
    for ann in alg.annihilators() {
        for m in &lower {
            let mut row = vec![Q::zero(); ambient];
            let mut nonzero = false;
            for i in 0..p {
                for j in 1..=p {
                    let a = ann.at(i, j - 1);
                    if a.is_zero() {
                        continue;
                    }
                    let target = m.bump(j);
                    let col = i * mcount + index[&target];
                    row[col] = row[col].clone() + a * q_int((m.exponent(j) + 1) as i64);
                    nonzero = true;
                }
            }
            if nonzero {
                reducer.offer(row);
            }
        }
    }
    SubspaceBasis::span(reducer.kernel(), ambient, label)
}

/// The field space of `g` assembled over degrees `(0 or 1) ..= k`.
#[derive(Clone, Debug)]
pub struct GFieldSpace {
    group: GroupId,
    k: u32,
    include_constants: bool,
    per_degree: Vec<(u32, Arc<SubspaceBasis>)>,
    total_dim: usize,
}

impl GFieldSpace {
    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn include_constants(&self) -> bool {
        self.include_constants
    }

    pub fn per_degree(&self) -> &[(u32, Arc<SubspaceBasis>)] {
        &self.per_degree
    }

    pub fn degree_dim(&self, d: u32) -> usize {
        self.per_degree
            .iter()
            .find(|(deg, _)| *deg == d)
            .map_or(0, |(_, b)| b.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Materialize the basis as homogeneous vector-field jets of order `k`.
    pub fn basis_fields(&self) -> Vec<GermJet> {
        let p = self.group.ambient_dim();
        let mut out = Vec::with_capacity(self.total_dim);
        for (d, basis) in &self.per_degree {
            let monos = monomial_basis(p, *d, *d);
            for row in basis.rows() {
                let mut comps = Vec::with_capacity(p);
                for c in 0..p {
                    let mut poly = JetPoly::zero(p, self.k);
                    for (j, m) in monos.iter().enumerate() {
                        let q = row[c * monos.len() + j].clone();
                        if !q.is_zero() {
                            poly.set_coeff(m.clone(), q);
                        }
                    }
                    comps.push(poly);
                }
                out.push(GermJet::new_field(p, p, self.k, comps).unwrap());
            }
        }
        out
    }

    /// Slice-by-slice subspace equality.
    pub fn same_space(&self, other: &GFieldSpace) -> bool {
        if self.group.ambient_dim() != other.group.ambient_dim()
            || self.k != other.k
            || self.include_constants != other.include_constants
        {
            return false;
        }
        for d in if self.include_constants { 0 } else { 1 }..=self.k {
            let a = self.per_degree.iter().find(|(deg, _)| *deg == d);
            let b = other.per_degree.iter().find(|(deg, _)| *deg == d);
            match (a, b) {
                (Some((_, x)), Some((_, y))) => {
                    if x.as_ref() != y.as_ref() {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

/// Jet-order-`k` field space via the generic kernel, degree by degree.
pub fn theta_g_jet(g: GroupId, k: u32, include_constants: bool) -> Result<GFieldSpace> {
    if k < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: k });
    }
    let d0 = if include_constants { 0 } else { 1 };
    let mut per_degree = Vec::new();
    let mut total = 0usize;
    for d in d0..=k {
        let basis = theta_g_degree(g, d)?;
        total += basis.dim();
        per_degree.push((d, basis));
    }
    Ok(GFieldSpace {
        group: g,
        k,
        include_constants,
        per_degree,
        total_dim: total,
    })
}

// ---------------------------------------------------------------------------
// closed forms

/// Field space from the explicit generator formulas of the catalog.
/// Only the groups with a known closed form are supported; for `SL(p)` with
/// `p >= 3` and `Sp(2m)` with `m >= 2` the generic kernel is the only path.
pub fn closed_form_basis(g: GroupId, k: u32, include_constants: bool) -> Result<GFieldSpace> {
    if k < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: k });
    }
    g.validate()?;
    let p = g.ambient_dim();
    let d0 = if include_constants { 0 } else { 1 };
    let mut per_degree = Vec::new();
    let mut total = 0usize;
    for d in d0..=k {
        let vectors = if d == 0 {
            (0..p)
                .map(|c| {
                    let mut v = vec![Q::zero(); p];
                    v[c] = Q::one();
                    v
                })
                .collect()
        } else {
            closed_form_degree(g, d, k)?
                .iter()
                .map(|f| field_slice_coords(f, d, &monomial_basis(p, d, d)))
                .collect::<Vec<_>>()
        };
        let ambient = if d == 0 {
            p
        } else {
            p * monomial_basis(p, d, d).len()
        };
        let basis = SubspaceBasis::span(vectors, ambient, slice_label(p, d))?;
        total += basis.dim();
        per_degree.push((d, Arc::new(basis)));
    }
    Ok(GFieldSpace {
        group: g,
        k,
        include_constants,
        per_degree,
        total_dim: total,
    })
}

fn closed_form_degree(g: GroupId, d: u32, k: u32) -> Result<Vec<GermJet>> {
    debug_assert!(d >= 1);
    let p = g.ambient_dim();
    let mut out = Vec::new();
    let mono_fields = |out: &mut Vec<GermJet>, comps: &[usize], vars_lo: usize, vars_hi: usize| {
        // fields m(y) ∂/∂y_c with m a degree-d monomial in y_{vars_lo+1..vars_hi}
        for m in monomial_basis(p, d, d) {
            let supported = (0..p).all(|v| m.exponents()[v] == 0 || (vars_lo <= v && v < vars_hi));
            if !supported {
                continue;
            }
            for &c in comps {
                let mut polys = vec![JetPoly::zero(p, k); p];
                polys[c].set_coeff(m.clone(), Q::one());
                out.push(GermJet::new_field(p, p, k, polys).unwrap());
            }
        }
    };
    match g {
        GroupId::Gl(_) => {
            let all: Vec<usize> = (0..p).collect();
            mono_fields(&mut out, &all, 0, p);
        }
        GroupId::So(_) => {
            if d == 1 {
                for i in 0..p {
                    for j in i + 1..p {
                        // y_j ∂_i - y_i ∂_j
                        let mut polys = vec![JetPoly::zero(p, k); p];
                        polys[i].set_coeff(Monomial::var(p, j + 1), Q::one());
                        polys[j].set_coeff(Monomial::var(p, i + 1), -Q::one());
                        out.push(GermJet::new_field(p, p, k, polys).unwrap());
                    }
                }
            }
        }
        GroupId::SoCapTstar(p1, _) => {
            if d == 1 {
                let blocks = [(0usize, p1), (p1, p)];
                for (lo, hi) in blocks {
                    for i in lo..hi {
                        for j in i + 1..hi {
                            let mut polys = vec![JetPoly::zero(p, k); p];
                            polys[i].set_coeff(Monomial::var(p, j + 1), Q::one());
                            polys[j].set_coeff(Monomial::var(p, i + 1), -Q::one());
                            out.push(GermJet::new_field(p, p, k, polys).unwrap());
                        }
                    }
                }
            }
        }
        GroupId::Sl(2) | GroupId::Sp(2) => {
            // Hamiltonian fields of homogeneous degree-(d+1) generators
            for m in monomial_basis(2, d + 1, d + 1) {
                let mut h = JetPoly::zero(2, d + 1);
                h.set_coeff(m, Q::one());
                let f = hamiltonian_field(&h)?;
                out.push(f.with_order(k));
            }
        }
        GroupId::Dstar(p1, _) => {
            let b1: Vec<usize> = (0..p1).collect();
            let b2: Vec<usize> = (p1..p).collect();
            mono_fields(&mut out, &b1, 0, p1);
            mono_fields(&mut out, &b2, p1, p);
        }
        GroupId::TstarR(p1, _) => {
            let b1: Vec<usize> = (0..p1).collect();
            let b2: Vec<usize> = (p1..p).collect();
            mono_fields(&mut out, &b1, 0, p);
            mono_fields(&mut out, &b2, p1, p);
        }
        GroupId::Istar(p1, _) => {
            let b2: Vec<usize> = (p1..p).collect();
            mono_fields(&mut out, &b2, p1, p);
        }
        GroupId::AffinePlus(_) => {
            let all: Vec<usize> = (0..p).collect();
            mono_fields(&mut out, &all, 1, p);
        }
        GroupId::Lagr(_) => {
            let n = p / 2;
            // from y-components xi = y^m e_c, |m| = d
            for m in monomial_basis(p, d, d) {
                if (0..n).any(|v| m.exponents()[v] != 0) {
                    continue; // y-variables only
                }
                for c in 0..n {
                    let mut polys = vec![JetPoly::zero(p, k); p];
                    let xi = {
                        let mut q = JetPoly::zero(p, k);
                        q.set_coeff(m.clone(), Q::one());
                        q
                    };
                    polys[n + c] = xi.clone();
                    for i in 0..n {
                        // x-component i gets -(∂xi/∂y_i) * x_c
                        let dxi = xi.diff(n + i + 1);
                        let xc = JetPoly::var(p, k, c + 1);
                        polys[i] = polys[i].sub(&dxi.mul(&xc).unwrap()).unwrap();
                    }
                    out.push(GermJet::new_field(p, p, k, polys).unwrap());
                }
            }
            // from generators eta = y^m, |m| = d + 1 (in the maximal-ideal
            // square once d >= 1); built one order higher so the derivative
            // lands exactly in degree d
            for m in monomial_basis(p, d + 1, d + 1) {
                if (0..n).any(|v| m.exponents()[v] != 0) {
                    continue;
                }
                let mut eta = JetPoly::zero(p, d + 1);
                eta.set_coeff(m.clone(), Q::one());
                let mut polys = vec![JetPoly::zero(p, k); p];
                for i in 0..n {
                    polys[i] = eta.diff(n + i + 1).neg().truncated(d).with_order(k);
                }
                out.push(GermJet::new_field(p, p, k, polys).unwrap());
            }
        }
        GroupId::Trivial(_) => {}
        GroupId::Sl(_) | GroupId::Sp(_) => {
            return Err(Error::UnsupportedClosedForm(g.to_string()));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// divergence / Hamiltonian / differential-form correspondences

/// The Hamiltonian field `(-∂H/∂y₂, ∂H/∂y₁)` of a planar jet vanishing at 0.
/// Linear and injective; the result is one order lower than `H`.
pub fn hamiltonian_field(h: &JetPoly) -> Result<GermJet> {
    if h.nvars() != 2 {
        return Err(Error::DimensionMismatch(
            "Hamiltonian fields live on the plane".into(),
        ));
    }
    if !h.constant_term().is_zero() {
        return Err(Error::NonzeroConstant("Hamiltonian must vanish at 0".into()));
    }
    if h.order() < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: 0 });
    }
    let k = h.order() - 1;
    let c1 = h.diff(2).neg().truncated(k);
    let c2 = h.diff(1).truncated(k);
    GermJet::new_field(2, 2, k, vec![c1, c2])
}

/// `Σ ∂η_i/∂y_i`, one order lower than the field.
pub fn divergence(field: &GermJet) -> Result<JetPoly> {
    let p = field.target_dim();
    if field.source_dim() != p {
        return Err(Error::DimensionMismatch(
            "divergence needs a field on its own space".into(),
        ));
    }
    if field.order() < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: 0 });
    }
    let k = field.order() - 1;
    let mut acc = JetPoly::zero(p, k);
    for i in 0..p {
        acc = acc.add(&field.component(i).diff(i + 1).truncated(k)).unwrap();
    }
    Ok(acc)
}

/// Coefficients of the (p-1)-form attached to a field: entry `i` is
/// `(-1)^i η_{i+1}`, the coefficient of `dy₁∧…∧dŷ_{i+1}∧…∧dy_p`.
pub fn field_to_form(field: &GermJet) -> Vec<JetPoly> {
    field
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { c.neg() })
        .collect()
}

/// Coefficient of the exterior derivative of a (p-1)-form given by
/// `field_to_form` coefficients; equals the divergence of the source field.
pub fn form_exterior_coeff(coeffs: &[JetPoly]) -> Result<JetPoly> {
    let p = coeffs.len();
    if p == 0 {
        return Err(Error::DimensionMismatch("empty form".into()));
    }
    let order = coeffs[0].order();
    if order < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: 0 });
    }
    let k = order - 1;
    let mut acc = JetPoly::zero(coeffs[0].nvars(), k);
    for (i, c) in coeffs.iter().enumerate() {
        let term = c.diff(i + 1).truncated(k);
        acc = if i % 2 == 0 {
            acc.add(&term).unwrap()
        } else {
            acc.sub(&term).unwrap()
        };
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// the ring over which θ[G]₀ is a module

/// Jets of the maximal function subring with respect to `θ[G]₀`, at order
/// `k`: all jets `λ` such that every coefficient matrix of `η ⊗ ∇λ` that is
/// fully determined by the `k`-jet of `λ` is annihilated by the algebra's
/// annihilators, for every basis field `η`. The true ring is cut out by
/// infinitely many conditions, so this is a decreasing-in-`k`
/// over-approximation of its jet space.
#[derive(Clone, Debug)]
pub struct GRingJet {
    group: GroupId,
    k: u32,
    basis: SubspaceBasis,
}

impl GRingJet {
    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    /// Basis jets of order `k`.
    pub fn basis_jets(&self) -> Vec<JetPoly> {
        let p = self.group.ambient_dim();
        let monos = monomial_basis(p, self.k, 0);
        self.basis
            .rows()
            .iter()
            .map(|row| {
                let mut poly = JetPoly::zero(p, self.k);
                for (j, m) in monos.iter().enumerate() {
                    if !row[j].is_zero() {
                        poly.set_coeff(m.clone(), row[j].clone());
                    }
                }
                poly
            })
            .collect()
    }

    pub fn contains(&self, lambda: &JetPoly) -> Result<bool> {
        let p = self.group.ambient_dim();
        if lambda.nvars() != p || lambda.order() != self.k {
            return Err(Error::DimensionMismatch(
                "jet shape does not match the ring space".into(),
            ));
        }
        let monos = monomial_basis(p, self.k, 0);
        let mut v = vec![Q::zero(); monos.len()];
        for (j, m) in monos.iter().enumerate() {
            v[j] = lambda.coeff(m);
        }
        Ok(self.basis.contains_vector(&v))
    }
}

pub fn ring_eg_jet(g: GroupId, k: u32) -> Result<GRingJet> {
    if k < 1 {
        return Err(Error::OrderTooSmall { needed: 1, have: k });
    }
    let p = g.ambient_dim();
    let alg = algebra_of(g)?;
    let fields = theta_g_jet(g, k, false)?;
    let basis_fields = fields.basis_fields();

    // The constraint system splits by the degree of λ: a degree-e coefficient
    // matrix of η ⊗ ∇λ with η homogeneous of degree d only touches the
    // degree-(e - d + 1) slice of λ. Solve one slice at a time.
    let lam_monos = monomial_basis(p, k, 0);
    let index: HashMap<&Monomial, usize> =
        lam_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows_all: Vec<Vec<Q>> = Vec::new();
    for l in 1..=k {
        let slice_monos = monomial_basis(p, l, l);
        let slice_index: HashMap<&Monomial, usize> = slice_monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut reducer = RowReducer::new(slice_monos.len());
        'rows: for eta in &basis_fields {
            let d = eta.valuation().unwrap_or(0);
            if d == 0 {
                continue;
            }
            let e = l + d - 1; // degree of the constrained coefficient matrices
            debug_assert!(e <= d + k - 1);
            for ann in alg.annihilators() {
                for m in monomial_basis(p, e, e) {
                    let mut row = vec![Q::zero(); slice_monos.len()];
                    let mut nonzero = false;
                    for i in 0..p {
                        for j in 1..=p {
                            let a = ann.at(i, j - 1);
                            if a.is_zero() {
                                continue;
                            }
                            for (em, ce) in eta.component(i).terms() {
                                let Some(rm) = m.div(em) else { continue };
                                let beta = rm.bump(j);
                                debug_assert_eq!(beta.degree(), l);
                                let col = slice_index[&beta];
                                row[col] = row[col].clone()
                                    + a * ce * q_int((rm.exponent(j) + 1) as i64);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        reducer.offer(row);
                        if reducer.rank() == slice_monos.len() {
                            // slice already fully killed
                            break 'rows;
                        }
                    }
                }
            }
        }
        for kv in reducer.kernel() {
            // lift the slice vector into the full λ coordinate space
            let mut full = vec![Q::zero(); lam_monos.len()];
            for (j, m) in slice_monos.iter().enumerate() {
                if !kv[j].is_zero() {
                    full[index[m]] = kv[j].clone();
                }
            }
            rows_all.push(full);
        }
    }
    // constants are always in the ring
    let mut const_vec = vec![Q::zero(); lam_monos.len()];
    const_vec[0] = Q::one();
    rows_all.push(const_vec);
    let basis = SubspaceBasis::span(rows_all, lam_monos.len(), ring_label(p, k))?;
    Ok(GRingJet { group: g, k, basis })
}

// ---------------------------------------------------------------------------
// rigidity

/// True iff the field space has nothing beyond degree 1: the infinitesimal
/// form of "the only structure-preserving diffeomorphism jets are linear".
pub fn is_linear_only(g: GroupId, k: u32) -> Result<bool> {
    Ok(first_nonlinear_degree(g, k)?.is_none())
}

/// Smallest degree `2 <= d <= k` carrying a nonzero field slice.
pub fn first_nonlinear_degree(g: GroupId, k: u32) -> Result<Option<u32>> {
    if k < 2 {
        return Err(Error::OrderTooSmall { needed: 2, have: k });
    }
    for d in 2..=k {
        if theta_g_degree(g, d)?.dim() > 0 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Degree-by-degree membership of an arbitrary field jet.
pub fn field_in_theta(field: &GermJet, g: GroupId, include_constants: bool) -> Result<bool> {
    let p = g.ambient_dim();
    if field.target_dim() != p || field.source_dim() != p {
        return Err(Error::DimensionMismatch(
            "field does not live on the group's space".into(),
        ));
    }
    for d in 0..=field.order() {
        let monos = monomial_basis(p, d, d);
        let slice_field = GermJet::new_field(
            p,
            p,
            field.order(),
            field
                .components()
                .iter()
                .map(|c| c.homogeneous_part(d))
                .collect(),
        )
        .unwrap();
        if slice_field.is_zero() {
            continue;
        }
        if d == 0 {
            if !include_constants {
                return Ok(false);
            }
            continue;
        }
        let coords = field_slice_coords(&slice_field, d, &monos);
        if !theta_g_degree(g, d)?.contains_vector(&coords) {
            return Ok(false);
        }
    }
    Ok(true)
}
