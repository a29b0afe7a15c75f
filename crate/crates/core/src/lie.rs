//! Catalog of linear Lie groups `G ⊂ GL(p, R)`, represented infinitesimally
//! by their Lie algebras as exact linear subspaces of matrix space.
//!
//! Groups are never stored as point sets; everything downstream only needs
//! the algebra. Rational group *elements* are provided for the groups where
//! they are easy (shears, block matrices, rotations from Pythagorean
//! triples) so that action-invariance tests can transform germs exactly.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, SubspaceBasis};
use crate::poly::{q_ratio, Q};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GroupId {
    /// GL(p, R): no constraint.
    Gl(usize),
    /// SL(p, R): unit determinant.
    Sl(usize),
    /// SO(p): rotations.
    So(usize),
    /// Sp(2m, R): symplectic, argument is the (even) ambient dimension.
    Sp(usize),
    /// GL(p1) ⊕ GL(p2): block diagonal.
    Dstar(usize, usize),
    /// Block upper triangular with invertible diagonal blocks.
    TstarR(usize, usize),
    /// {I_{p1}} ⊕ GL(p2).
    Istar(usize, usize),
    /// (1⁺, GL(p2)): first row (1, b), lower-right block invertible; p = 1 + p2.
    AffinePlus(usize),
    /// Lagrangian subgroup L(2n) of Sp(2n); argument is the ambient 2n.
    Lagr(usize),
    /// SO(p1) ⊕ SO(p2) = SO(p) ∩ T*_r(p1, p2).
    SoCapTstar(usize, usize),
    /// {I_p}: the trivial group.
    Trivial(usize),
}

impl GroupId {
    /// Target-space dimension p the group acts on.
    pub fn ambient_dim(&self) -> usize {
        match *self {
            GroupId::Gl(p) | GroupId::Sl(p) | GroupId::So(p) | GroupId::Trivial(p) => p,
            GroupId::Sp(p) | GroupId::Lagr(p) => p,
            GroupId::Dstar(p1, p2) | GroupId::TstarR(p1, p2) | GroupId::Istar(p1, p2) => p1 + p2,
            GroupId::SoCapTstar(p1, p2) => p1 + p2,
            GroupId::AffinePlus(p2) => 1 + p2,
        }
    }

    /// dim G as a Lie group, by the closed-form count.
    pub fn lie_dim(&self) -> usize {
        match *self {
            GroupId::Gl(p) => p * p,
            GroupId::Sl(p) => p * p - 1,
            GroupId::So(p) => p * (p - 1) / 2,
            GroupId::Sp(p) => {
                let m = p / 2;
                m * (2 * m + 1)
            }
            GroupId::Dstar(p1, p2) => p1 * p1 + p2 * p2,
            GroupId::TstarR(p1, p2) => p1 * p1 + p1 * p2 + p2 * p2,
            GroupId::Istar(_, p2) => p2 * p2,
            GroupId::AffinePlus(p2) => p2 + p2 * p2,
            GroupId::Lagr(p) => {
                let m = p / 2;
                m * m + m * (m + 1) / 2
            }
            GroupId::SoCapTstar(p1, p2) => p1 * (p1 - 1) / 2 + p2 * (p2 - 1) / 2,
            GroupId::Trivial(_) => 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        match *self {
            GroupId::Gl(p) | GroupId::Sl(p) | GroupId::So(p) | GroupId::Trivial(p) => {
                if p == 0 {
                    return bad("ambient dimension must be positive".into());
                }
            }
            GroupId::Sp(p) | GroupId::Lagr(p) => {
                if p == 0 || p % 2 != 0 {
                    return bad(format!("ambient dimension {} must be even and positive", p));
                }
            }
            GroupId::Dstar(p1, p2)
            | GroupId::TstarR(p1, p2)
            | GroupId::Istar(p1, p2)
            | GroupId::SoCapTstar(p1, p2) => {
                if p1 == 0 || p2 == 0 {
                    return bad("block sizes must be positive".into());
                }
            }
            GroupId::AffinePlus(p2) => {
                if p2 == 0 {
                    return bad("block size must be positive".into());
                }
            }
        }
        Ok(())
    }

    /// Parse the CLI syntax: `gl:p`, `so:p`, `sp:2m`, `dstar:p1,p2`, ...
    pub fn parse(s: &str) -> Result<GroupId> {
        let err = || Error::InvalidGroup(format!("cannot parse group spec `{}`", s));
        let (name, args) = s.split_once(':').ok_or_else(err)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<_>>()?;
        let one = |f: fn(usize) -> GroupId| {
            if nums.len() == 1 {
                Ok(f(nums[0]))
            } else {
                Err(err())
            }
        };
        let two = |f: fn(usize, usize) -> GroupId| {
            if nums.len() == 2 {
                Ok(f(nums[0], nums[1]))
            } else {
                Err(err())
            }
        };
        let g = match name.trim() {
            "gl" => one(GroupId::Gl)?,
            "sl" => one(GroupId::Sl)?,
            "so" => one(GroupId::So)?,
            "sp" => one(GroupId::Sp)?,
            "dstar" => two(GroupId::Dstar)?,
            "tstar" => two(GroupId::TstarR)?,
            "istar" => two(GroupId::Istar)?,
            "affplus" => one(GroupId::AffinePlus)?,
            "lagr" => one(GroupId::Lagr)?,
            "socaptstar" => two(GroupId::SoCapTstar)?,
            "trivial" => one(GroupId::Trivial)?,
            _ => return Err(err()),
        };
        g.validate()?;
        Ok(g)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupId::Gl(p) => write!(f, "gl:{}", p),
            GroupId::Sl(p) => write!(f, "sl:{}", p),
            GroupId::So(p) => write!(f, "so:{}", p),
            GroupId::Sp(p) => write!(f, "sp:{}", p),
            GroupId::Dstar(a, b) => write!(f, "dstar:{},{}", a, b),
            GroupId::TstarR(a, b) => write!(f, "tstar:{},{}", a, b),
            GroupId::Istar(a, b) => write!(f, "istar:{},{}", a, b),
            GroupId::AffinePlus(b) => write!(f, "affplus:{}", b),
            GroupId::Lagr(p) => write!(f, "lagr:{}", p),
            GroupId::SoCapTstar(a, b) => write!(f, "socaptstar:{},{}", a, b),
            GroupId::Trivial(p) => write!(f, "trivial:{}", p),
        }
    }
}

/// A Lie algebra `g ⊂ M_p(R)` as an exact subspace: a canonical basis plus
/// the annihilating functionals (as p×p coefficient matrices) whose common
/// kernel is `g`.
#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    p: usize,
    basis: Vec<RationalMatrix>,
    annihilators: Vec<RationalMatrix>,
    span: SubspaceBasis,
}

fn matrix_space_label(p: usize) -> String {
    format!("mat[{p}x{p}]")
}

impl LieAlgebraSpec {
    fn from_generators(p: usize, generators: Vec<RationalMatrix>) -> Self {
        let vectors: Vec<Vec<Q>> = generators.iter().map(|m| m.flatten()).collect();
        let span = SubspaceBasis::span(vectors, p * p, matrix_space_label(p)).unwrap();
        let basis = span
            .rows()
            .iter()
            .map(|r| RationalMatrix::from_flat(p, r))
            .collect();
        // annihilators = null space of the flattened basis under the pairing
        // <A, X> = sum A_ij X_ij
        let flat = RationalMatrix::from_rows(span.rows().to_vec());
        let annihilators = if span.dim() == 0 {
            (0..p * p)
                .map(|i| {
                    let mut v = vec![Q::zero(); p * p];
                    v[i] = Q::one();
                    RationalMatrix::from_flat(p, &v)
                })
                .collect()
        } else {
            flat.kernel()
                .into_iter()
                .map(|v| RationalMatrix::from_flat(p, &v))
                .collect()
        };
        LieAlgebraSpec {
            p,
            basis,
            annihilators,
            span,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn annihilators(&self) -> &[RationalMatrix] {
        &self.annihilators
    }

    pub fn as_subspace(&self) -> &SubspaceBasis {
        &self.span
    }

    /// True iff every annihilator vanishes on `m`.
    pub fn contains_matrix(&self, m: &RationalMatrix) -> Result<bool> {
        if m.rows() != self.p || m.cols() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix tested against a {}x{} algebra",
                m.rows(),
                m.cols(),
                self.p,
                self.p
            )));
        }
        Ok(self.annihilators.iter().all(|a| pairing(a, m).is_zero()))
    }

    /// `[X, Y] ∈ g` for all basis pairs.
    pub fn commutator_closed(&self) -> bool {
        for x in &self.basis {
            for y in &self.basis {
                let c = x.commutator(y).unwrap();
                if !self.contains_matrix(&c).unwrap() {
                    return false;
                }
            }
        }
        true
    }
}

fn pairing(a: &RationalMatrix, m: &RationalMatrix) -> Q {
    let mut s = Q::zero();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let av = a.at(r, c);
            if !av.is_zero() {
                s += av * m.at(r, c);
            }
        }
    }
    s
}

fn unit(p: usize, i: usize, j: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(p, p);
    m.set(i, j, Q::one());
    m
}

/// The Lie algebra of a catalog group.
pub fn algebra_of(g: GroupId) -> Result<LieAlgebraSpec> {
    g.validate()?;
    let p = g.ambient_dim();
    let gens: Vec<RationalMatrix> = match g {
        GroupId::Gl(_) => (0..p)
            .flat_map(|i| (0..p).map(move |j| (i, j)))
            .map(|(i, j)| unit(p, i, j))
            .collect(),
        GroupId::Sl(_) => {
            let mut v: Vec<RationalMatrix> = (0..p)
                .flat_map(|i| (0..p).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| unit(p, i, j))
                .collect();
            for i in 0..p - 1 {
                let mut m = unit(p, i, i);
                m.set(i + 1, i + 1, -Q::one());
                v.push(m);
            }
            v
        }
        GroupId::So(_) => antisymmetric_block(p, 0, p),
        GroupId::Sp(_) => symplectic_gens(p / 2),
        GroupId::Dstar(p1, _) => {
            let mut v = full_block(p, 0, p1, 0, p1);
            v.extend(full_block(p, p1, p, p1, p));
            v
        }
        GroupId::TstarR(p1, _) => {
            let mut v = full_block(p, 0, p1, 0, p);
            v.extend(full_block(p, p1, p, p1, p));
            v
        }
        GroupId::Istar(p1, _) => full_block(p, p1, p, p1, p),
        GroupId::AffinePlus(_) => {
            let mut v = full_block(p, 0, 1, 1, p);
            v.extend(full_block(p, 1, p, 1, p));
            v
        }
        GroupId::Lagr(_) => lagrangian_gens(p / 2),
        GroupId::SoCapTstar(p1, _) => {
            let mut v = antisymmetric_block(p, 0, p1);
            v.extend(antisymmetric_block(p, p1, p));
            v
        }
        GroupId::Trivial(_) => Vec::new(),
    };
    let spec = LieAlgebraSpec::from_generators(p, gens);
    debug_assert_eq!(spec.dim(), g.lie_dim(), "catalog dimension formula for {g}");
    Ok(spec)
}

fn full_block(p: usize, r0: usize, r1: usize, c0: usize, c1: usize) -> Vec<RationalMatrix> {
    (r0..r1)
        .flat_map(|i| (c0..c1).map(move |j| (i, j)))
        .map(|(i, j)| unit(p, i, j))
        .collect()
}

fn antisymmetric_block(p: usize, lo: usize, hi: usize) -> Vec<RationalMatrix> {
    let mut v = Vec::new();
    for i in lo..hi {
        for j in i + 1..hi {
            let mut m = unit(p, i, j);
            m.set(j, i, -Q::one());
            v.push(m);
        }
    }
    v
}

/// sp(2m): block form [[A, B], [C, -A^t]] with B, C symmetric.
fn symplectic_gens(m: usize) -> Vec<RationalMatrix> {
    let p = 2 * m;
    let mut v = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let mut x = unit(p, i, j);
            x.set(m + j, m + i, -Q::one());
            v.push(x);
        }
    }
    for i in 0..m {
        for j in i..m {
            let mut b = unit(p, i, m + j);
            if i != j {
                b.set(j, m + i, Q::one());
            }
            v.push(b);
            let mut c = unit(p, m + i, j);
            if i != j {
                c.set(m + j, i, Q::one());
            }
            v.push(c);
        }
    }
    v
}

/// l(2n): block form [[-X^t, Y], [0, X]] with Y symmetric.
fn lagrangian_gens(n: usize) -> Vec<RationalMatrix> {
    let p = 2 * n;
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut m = unit(p, n + i, n + j);
            m.set(j, i, -Q::one());
            v.push(m);
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut y = unit(p, i, n + j);
            if i != j {
                y.set(j, n + i, Q::one());
            }
            v.push(y);
        }
    }
    v
}

/// `span(h) ⊆ span(g)`, both acting on the same target dimension.
pub fn subalgebra_check(h: GroupId, g: GroupId) -> Result<bool> {
    if h.ambient_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} acts on R^{}, {} on R^{}",
            h,
            h.ambient_dim(),
            g,
            g.ambient_dim()
        )));
    }
    let ha = algebra_of(h)?;
    let ga = algebra_of(g)?;
    ga.as_subspace().contains_subspace(ha.as_subspace())
}

/// Exact membership test for a *group element* (not the algebra), used to
/// validate sampled matrices.
pub fn group_contains(g: GroupId, a: &RationalMatrix) -> Result<bool> {
    let p = g.ambient_dim();
    if a.rows() != p || a.cols() != p {
        return Err(Error::DimensionMismatch("element size mismatch".into()));
    }
    let id = RationalMatrix::identity(p);
    let ok = match g {
        GroupId::Gl(_) => !a.det()?.is_zero(),
        GroupId::Sl(_) => a.det()?.is_one(),
        GroupId::So(_) => a.transpose().mul(a)? == id && a.det()?.is_one(),
        GroupId::Sp(_) => {
            let j = symplectic_j(p / 2);
            a.transpose().mul(&j)?.mul(a)? == j
        }
        GroupId::Dstar(p1, _) => {
            block_zero(a, p1, p, 0, p1) && block_zero(a, 0, p1, p1, p) && !a.det()?.is_zero()
        }
        GroupId::TstarR(p1, _) => block_zero(a, p1, p, 0, p1) && !a.det()?.is_zero(),
        GroupId::Istar(p1, _) => {
            block_zero(a, p1, p, 0, p1)
                && block_zero(a, 0, p1, p1, p)
                && (0..p1).all(|i| {
                    (0..p1).all(|j| {
                        if i == j {
                            a.at(i, j).is_one()
                        } else {
                            a.at(i, j).is_zero()
                        }
                    })
                })
                && !a.det()?.is_zero()
        }
        GroupId::AffinePlus(_) => {
            a.at(0, 0).is_one() && block_zero(a, 1, p, 0, 1) && !a.det()?.is_zero()
        }
        GroupId::Lagr(_) => {
            let j = symplectic_j(p / 2);
            a.transpose().mul(&j)?.mul(a)? == j && block_zero(a, p / 2, p, 0, p / 2)
        }
        GroupId::SoCapTstar(p1, _) => {
            group_contains(GroupId::So(p), a)? && block_zero(a, p1, p, 0, p1)
        }
        GroupId::Trivial(_) => *a == id,
    };
    Ok(ok)
}

fn block_zero(a: &RationalMatrix, r0: usize, r1: usize, c0: usize, c1: usize) -> bool {
    (r0..r1).all(|i| (c0..c1).all(|j| a.at(i, j).is_zero()))
}

pub fn symplectic_j(m: usize) -> RationalMatrix {
    let p = 2 * m;
    let mut j = RationalMatrix::zeros(p, p);
    for i in 0..m {
        j.set(i, m + i, Q::one());
        j.set(m + i, i, -Q::one());
    }
    j
}

const PYTHAGOREAN: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)];

/// A rational element of `G`, built from shears, rational rotations and
/// block assembly. Entries stay small so that exact arithmetic downstream
/// stays cheap.
pub fn sample_element<R: Rng>(g: GroupId, rng: &mut R) -> RationalMatrix {
    let p = g.ambient_dim();
    let a = match g {
        GroupId::Gl(_) => sample_gl(p, rng),
        GroupId::Sl(_) => sample_sl(p, rng),
        GroupId::So(_) => sample_so(p, rng),
        GroupId::Sp(_) => sample_sp(p / 2, rng),
        GroupId::Dstar(p1, p2) => {
            block_diag(&sample_gl(p1, rng), &sample_gl(p2, rng))
        }
        GroupId::TstarR(p1, p2) => {
            let mut m = block_diag(&sample_gl(p1, rng), &sample_gl(p2, rng));
            for i in 0..p1 {
                for j in p1..p1 + p2 {
                    m.set(i, j, small_q(rng));
                }
            }
            m
        }
        GroupId::Istar(p1, p2) => block_diag(&RationalMatrix::identity(p1), &sample_gl(p2, rng)),
        GroupId::AffinePlus(p2) => {
            let mut m = block_diag(&RationalMatrix::identity(1), &sample_gl(p2, rng));
            for j in 1..=p2 {
                m.set(0, j, small_q(rng));
            }
            m
        }
        GroupId::Lagr(_) => sample_lagr(p / 2, rng),
        GroupId::SoCapTstar(p1, p2) => block_diag(&sample_so(p1, rng), &sample_so(p2, rng)),
        GroupId::Trivial(_) => RationalMatrix::identity(p),
    };
    debug_assert!(group_contains(g, &a).unwrap(), "sampled element not in {g}");
    a
}

fn small_q<R: Rng>(rng: &mut R) -> Q {
    q_ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

fn small_nonzero<R: Rng>(rng: &mut R) -> Q {
    loop {
        let q = small_q(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let p = a.rows() + b.rows();
    let mut m = RationalMatrix::zeros(p, p);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.at(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.at(i, j).clone());
        }
    }
    m
}

fn shear(p: usize, i: usize, j: usize, c: Q) -> RationalMatrix {
    let mut m = RationalMatrix::identity(p);
    m.set(i, j, c);
    m
}

fn sample_sl<R: Rng>(p: usize, rng: &mut R) -> RationalMatrix {
    if p == 1 {
        return RationalMatrix::identity(1);
    }
    let mut m = RationalMatrix::identity(p);
    for _ in 0..3 {
        let i = rng.gen_range(0..p);
        let mut j = rng.gen_range(0..p);
        while j == i {
            j = rng.gen_range(0..p);
        }
        m = m.mul(&shear(p, i, j, small_nonzero(rng))).unwrap();
    }
    m
}

fn sample_gl<R: Rng>(p: usize, rng: &mut R) -> RationalMatrix {
    let mut m = sample_sl(p, rng);
    // stretch one axis so the determinant is not stuck at 1
    let mut d = RationalMatrix::identity(p);
    d.set(0, 0, small_nonzero(rng));
    m = m.mul(&d).unwrap();
    m
}

fn sample_so<R: Rng>(p: usize, rng: &mut R) -> RationalMatrix {
    if p == 1 {
        return RationalMatrix::identity(1);
    }
    let mut m = RationalMatrix::identity(p);
    for _ in 0..3 {
        let i = rng.gen_range(0..p);
        let mut j = rng.gen_range(0..p);
        while j == i {
            j = rng.gen_range(0..p);
        }
        let (a, b, c) = PYTHAGOREAN[rng.gen_range(0..PYTHAGOREAN.len())];
        let (cos, sin) = (q_ratio(a, c), q_ratio(b, c));
        let mut g = RationalMatrix::identity(p);
        g.set(i, i, cos.clone());
        g.set(j, j, cos);
        g.set(i, j, sin.clone());
        g.set(j, i, -sin);
        m = m.mul(&g).unwrap();
    }
    m
}

fn sample_sp<R: Rng>(m: usize, rng: &mut R) -> RationalMatrix {
    let p = 2 * m;
    let a = sample_sl(m, rng);
    let a_inv_t = a.inverse().unwrap().transpose();
    let mut out = block_diag(&a, &a_inv_t);
    // upper shear [[I, B], [0, I]] with B symmetric
    let mut b = RationalMatrix::identity(p);
    for i in 0..m {
        for j in i..m {
            let v = small_q(rng);
            b.set(i, m + j, v.clone());
            b.set(j, m + i, v);
        }
    }
    out = out.mul(&b).unwrap();
    out
}

fn sample_lagr<R: Rng>(n: usize, rng: &mut R) -> RationalMatrix {
    let c = sample_gl(n, rng);
    let ct_inv = c.transpose().inverse().unwrap();
    let mut d = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = small_q(rng);
            d.set(i, j, v.clone());
            d.set(j, i, v);
        }
    }
    let upper = ct_inv.mul(&d).unwrap();
    let mut out = block_diag(&ct_inv, &c);
    for i in 0..n {
        for j in 0..n {
            out.set(i, n + j, upper.at(i, j).clone());
        }
    }
    out
}

/// Groups available at a given target dimension, used to enumerate subgroup
/// pairs in reports and tests.
pub fn catalog_for_dim(p: usize) -> Vec<GroupId> {
    let mut v = vec![
        GroupId::Trivial(p),
        GroupId::So(p),
        GroupId::Sl(p),
        GroupId::Gl(p),
    ];
    if p % 2 == 0 {
        v.push(GroupId::Sp(p));
        v.push(GroupId::Lagr(p));
    }
    for p1 in 1..p {
        let p2 = p - p1;
        v.push(GroupId::Dstar(p1, p2));
        v.push(GroupId::TstarR(p1, p2));
        v.push(GroupId::Istar(p1, p2));
        v.push(GroupId::SoCapTstar(p1, p2));
    }
    if p >= 2 {
        v.push(GroupId::AffinePlus(p - 1));
    }
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn so2_basis() {
        let a = algebra_of(GroupId::So(2)).unwrap();
        assert_eq!(a.dim(), 1);
        let rot = RationalMatrix::from_i64(vec![vec![0, 1], vec![-1, 0]]);
        assert!(a.contains_matrix(&rot).unwrap());
    }

    #[test]
    fn catalog_dims_match_formulas() {
        for p in 1..=4 {
            for g in catalog_for_dim(p) {
                let a = algebra_of(g).unwrap();
                assert_eq!(a.dim(), g.lie_dim(), "{g}");
                assert_eq!(
                    a.dim() + a.annihilators().len(),
                    p * p,
                    "annihilator count for {g}"
                );
            }
        }
    }

    #[test]
    fn commutator_closure() {
        for p in 2..=4 {
            for g in catalog_for_dim(p) {
                assert!(algebra_of(g).unwrap().commutator_closed(), "{g}");
            }
        }
    }

    #[test]
    fn sp2_equals_sl2() {
        let sp = algebra_of(GroupId::Sp(2)).unwrap();
        let sl = algebra_of(GroupId::Sl(2)).unwrap();
        assert_eq!(sp.as_subspace(), sl.as_subspace());
        assert_eq!(sp.dim(), 3);
    }

    #[test]
    fn lagr2_block_form() {
        // matrices [[-x, y], [0, x]]
        let l = algebra_of(GroupId::Lagr(2)).unwrap();
        assert_eq!(l.dim(), 2);
        let m = RationalMatrix::from_i64(vec![vec![-3, 7], vec![0, 3]]);
        assert!(l.contains_matrix(&m).unwrap());
        let bad = RationalMatrix::from_i64(vec![vec![1, 0], vec![1, 1]]);
        assert!(!l.contains_matrix(&bad).unwrap());
        // [[0,1],[0,0]] is the x=0, y=1 case
        let nil = RationalMatrix::from_i64(vec![vec![0, 1], vec![0, 0]]);
        assert!(l.contains_matrix(&nil).unwrap());
    }

    #[test]
    fn membership_examples() {
        let sl2 = algebra_of(GroupId::Sl(2)).unwrap();
        assert!(sl2
            .contains_matrix(&RationalMatrix::from_i64(vec![vec![1, 0], vec![0, -1]]))
            .unwrap());
        let so3 = algebra_of(GroupId::So(3)).unwrap();
        assert!(!so3.contains_matrix(&RationalMatrix::identity(3)).unwrap());
    }

    #[test]
    fn subalgebra_relations() {
        assert!(subalgebra_check(GroupId::So(3), GroupId::Gl(3)).unwrap());
        assert!(!subalgebra_check(GroupId::Sl(2), GroupId::So(2)).unwrap());
        assert!(subalgebra_check(GroupId::SoCapTstar(1, 2), GroupId::So(3)).unwrap());
        assert!(subalgebra_check(GroupId::SoCapTstar(1, 2), GroupId::TstarR(1, 2)).unwrap());
        assert!(subalgebra_check(GroupId::Lagr(4), GroupId::Sp(4)).unwrap());
        assert!(subalgebra_check(GroupId::So(2), GroupId::Sl(2)).unwrap());
    }

    #[test]
    fn so_cap_tstar_is_the_intersection() {
        for (p1, p2) in [(1, 1), (1, 2), (2, 2)] {
            let so = algebra_of(GroupId::So(p1 + p2)).unwrap();
            let ts = algebra_of(GroupId::TstarR(p1, p2)).unwrap();
            let cap = algebra_of(GroupId::SoCapTstar(p1, p2)).unwrap();
            let meet = so.as_subspace().intersection(ts.as_subspace()).unwrap();
            assert_eq!(&meet, cap.as_subspace(), "p1={p1} p2={p2}");
        }
    }

    #[test]
    fn sampled_elements_satisfy_group_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let groups = [
            GroupId::Gl(2),
            GroupId::Sl(3),
            GroupId::So(3),
            GroupId::Sp(4),
            GroupId::Dstar(1, 2),
            GroupId::TstarR(1, 2),
            GroupId::Istar(1, 2),
            GroupId::AffinePlus(2),
            GroupId::Lagr(4),
            GroupId::SoCapTstar(1, 3),
            GroupId::Trivial(2),
        ];
        for g in groups {
            for _ in 0..10 {
                let a = sample_element(g, &mut rng);
                assert!(group_contains(g, &a).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "gl:2",
            "sl:3",
            "so:4",
            "sp:4",
            "dstar:1,2",
            "tstar:2,2",
            "istar:1,3",
            "affplus:2",
            "lagr:2",
            "socaptstar:1,3",
            "trivial:2",
        ] {
            let g = GroupId::parse(s).unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!(GroupId::parse("sp:3").is_err());
        assert!(GroupId::parse("nope:2").is_err());
    }
}
