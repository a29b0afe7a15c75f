//! Plane-curve geometry: singularity type of curve germs, the rotational
//! normal form, frontal frame invariants with their Frenet relations,
//! Euclidean and equi-affine curvature, and congruence testing by invariant
//! matching. Numeric (f64) throughout; the exact modules feed it.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::germ::GermJet;
use crate::monomial::Monomial;
use crate::numjet::{NumericGerm, NumericJet};
use crate::poly::JetPoly;

pub const DEFAULT_TOL: f64 = 1e-9;
/// Looser default for quantities amplified by high-order reparametrization.
pub const LOOSE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AkType {
    /// Derivatives through order k vanish at 0 and the (k+1)-st does not.
    Ak(u32),
    /// All derivatives up to the jet order vanish: type only bounded below
    /// by the truncation.
    AkGe(u32),
}

/// Singularity type of a univariate jet vanishing at 0.
pub fn ak_type(f: &JetPoly) -> Result<AkType> {
    if f.nvars() != 1 {
        return Err(Error::DimensionMismatch("ak_type takes univariate jets".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NonzeroConstant("ak_type needs f(0) = 0".into()));
    }
    match f.valuation() {
        Some(v) => Ok(AkType::Ak(v - 1)),
        None => Ok(AkType::AkGe(f.order())),
    }
}

/// Type of a curve germ (R,0) -> (R²,0): the smaller component valuation
/// decides k; when both components reach it, the first one anchors.
pub fn germ_ak_type(f: &GermJet) -> Result<(AkType, bool)> {
    if f.source_dim() != 1 || f.target_dim() != 2 {
        return Err(Error::DimensionMismatch("curve germs are 1 -> 2".into()));
    }
    let t1 = ak_type(f.component(0))?;
    let t2 = ak_type(f.component(1))?;
    match (t1, t2) {
        (AkType::Ak(a), AkType::Ak(b)) => {
            if a <= b {
                Ok((AkType::Ak(a), false))
            } else {
                Ok((AkType::Ak(b), true))
            }
        }
        (AkType::Ak(a), AkType::AkGe(_)) => Ok((AkType::Ak(a), false)),
        (AkType::AkGe(_), AkType::Ak(b)) => Ok((AkType::Ak(b), true)),
        (AkType::AkGe(a), AkType::AkGe(b)) => Ok((AkType::AkGe(a.min(b)), false)),
    }
}

#[derive(Clone, Debug)]
pub struct AkNormalForm {
    pub k: u32,
    pub sign: i32,
    /// The modulus germ h with second component x^{k+1} h(x).
    pub h: NumericJet,
    /// Right reparametrization jet carrying f onto the normal form.
    pub phi: NumericJet,
    /// Whether the quarter-turn swap was applied (second component anchored).
    pub rotated: bool,
    /// Max coefficient deviation of rotation·(f∘φ) from (±x^{k+1}, x^{k+1}h).
    pub residual: f64,
    pub normal_form: NumericGerm,
}

fn exact_jswap(f: &GermJet) -> GermJet {
    // (f1, f2) -> (f2, -f1)
    GermJet::new_map(
        1,
        2,
        f.order(),
        vec![f.component(1).clone(), f.component(0).neg()],
    )
    .unwrap()
}

impl NumericJet {
    fn lift(&self, order: u32) -> NumericJet {
        assert!(order >= self.order());
        let mut out = NumericJet::zero(self.nvars(), order);
        for (m, c) in self.terms() {
            out.set_coeff(m.clone(), *c);
        }
        out
    }

    /// x -> -x on a univariate jet.
    fn parity_flip(&self) -> NumericJet {
        debug_assert_eq!(self.nvars(), 1);
        let mut out = NumericJet::zero(1, self.order());
        for (m, c) in self.terms() {
            let s = if m.degree() % 2 == 1 { -c } else { *c };
            out.set_coeff(m.clone(), s);
        }
        out
    }
}

fn monomial_jet(order: u32, d: u32, c: f64) -> NumericJet {
    let mut j = NumericJet::zero(1, order);
    j.set_coeff(Monomial::new(vec![d]), c);
    j
}

/// Carry an A_k curve germ onto `(±x^{k+1}, x^{k+1} h(x))` by a right
/// reparametrization and, when the second component anchors, the
/// quarter-turn rotation.
pub fn ak_normalize(f: &GermJet) -> Result<AkNormalForm> {
    let (ty, rotated) = germ_ak_type(f)?;
    let k = match ty {
        AkType::Ak(k) => k,
        AkType::AkGe(b) => {
            return Err(Error::DegenerateGerm(format!(
                "no component attains a finite singularity type at this jet order (only A_>={b})"
            )))
        }
    };
    let n = f.order();
    if n < k + 2 {
        return Err(Error::OrderTooSmall {
            needed: k + 2,
            have: n,
        });
    }
    let oriented = if rotated { exact_jswap(f) } else { f.clone() };
    let nf = NumericGerm::from_germ(&oriented);
    let c = nf.component(0).coeff1(k + 1);
    debug_assert!(c != 0.0);
    let sign = if c > 0.0 { 1 } else { -1 };
    // solve f1(phi(x)) = sign * x^{k+1} degree by degree; each coefficient
    // is corrected from a fresh composition of the current candidate
    let target = monomial_jet(n, k + 1, sign as f64);
    let phi = solve_jet_equation(nf.component(0), &target, k + 1).ok_or_else(|| {
        Error::DegenerateGerm("no orientation-preserving normalization".into())
    })?;
    // compose at full order: coefficients through degree n only need phi
    // through degree n - k because the components have valuation k + 1
    let phi_germ = NumericGerm::new(1, 1, n, vec![phi.lift(n)]);
    let g = nf.compose(&phi_germ)?;
    let h = g.component(1).shift_down(k + 1);
    let target0 = monomial_jet(n, k + 1, sign as f64);
    let target1 = monomial_jet(n, k + 1, 1.0).mul(&h.lift(n));
    let residual = g
        .component(0)
        .sub(&target0)
        .norm_inf()
        .max(g.component(1).sub(&target1).norm_inf());
    let normal_form = NumericGerm::new(1, 2, n, vec![target0, target1]);
    Ok(AkNormalForm {
        k,
        sign,
        h,
        phi,
        rotated,
        residual,
        normal_form,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvariantKind {
    RegularCurvature,
    Frontal,
    Equiaffine,
}

#[derive(Clone, Debug)]
pub struct CurveInvariants {
    pub kind: InvariantKind,
    pub kappa: Option<NumericJet>,
    pub ell: Option<NumericJet>,
    pub beta: Option<NumericJet>,
    pub kappa_e: Option<NumericJet>,
    pub nu: Option<(NumericJet, NumericJet)>,
    pub mu: Option<(NumericJet, NumericJet)>,
    pub sign: i32,
    /// Worst Frenet relation residual (frontal kind).
    pub frenet_residual: f64,
    /// Frame-derived (ℓ, β) against their closed forms (frontal kind).
    pub closed_form_residual: f64,
}

/// Signed curvature jet of a regular curve germ, at order k - 2.
pub fn curvature(f: &GermJet) -> Result<NumericJet> {
    let nf = NumericGerm::from_germ(f);
    curvature_numeric(&nf)
}

fn curvature_numeric(nf: &NumericGerm) -> Result<NumericJet> {
    if nf.source_dim() != 1 || nf.target_dim() != 2 {
        return Err(Error::DimensionMismatch("curvature takes curve germs".into()));
    }
    let d1 = nf.derivative();
    let d2 = d1.derivative();
    let speed2 = d1.component(0).mul(d1.component(0)).add(&d1.component(1).mul(d1.component(1)));
    if speed2.constant_term() == 0.0 {
        return Err(Error::DegenerateGerm("curvature of a singular germ".into()));
    }
    let num = d1
        .component(0)
        .mul(d2.component(1))
        .sub(&d1.component(1).mul(d2.component(0)));
    Ok(num.mul(&speed2.powf(-1.5)?))
}

/// Frame invariants of a germ already in the rotational normal form
/// `(sign·x^{k+1}, x^{k+1} h)`. The Frenet relations and the closed forms
/// for (ℓ, β) are both evaluated; disagreement beyond `tol` is an error
/// because it signals a formula/implementation mismatch, not bad input.
pub fn frontal_invariants_from(k: u32, sign: i32, h: &NumericJet, tol: f64) -> Result<CurveInvariants> {
    let q = h.order();
    if q < 2 {
        return Err(Error::OrderTooSmall { needed: 2, have: q });
    }
    let s = sign as f64;
    let kp1 = k as f64 + 1.0;
    let x = NumericJet::var(1, q, 1);
    // D = (k+1) h + x h'
    let dj = h.scale(kp1).add(&x.mul(&h.derivative(1).lift(q)));
    let r2 = dj.mul(&dj).add(&NumericJet::constant(1, q, kp1 * kp1));
    let r = r2.sqrt()?;
    let r_inv = r.recip()?;
    let mu = (
        r_inv.scale(s * kp1),
        dj.mul(&r_inv),
    );
    let nu = (mu.1.scale(-1.0), mu.0.clone());
    // frame route
    let mu_dot = (mu.0.derivative(1), mu.1.derivative(1));
    let nu_dot = (nu.0.derivative(1), nu.1.derivative(1));
    let ell_frame = nu_dot.0.mul(&mu.0.truncated(q - 1)).add(&nu_dot.1.mul(&mu.1.truncated(q - 1)));
    // f = (s x^{k+1}, x^{k+1} h): f' = x^k (s (k+1), D)
    let n_f = q + k + 1;
    let f0 = monomial_jet(n_f, k + 1, s);
    let f1 = monomial_jet(n_f, k + 1, 1.0).mul(&h.lift(n_f));
    let fdot = (f0.derivative(1), f1.derivative(1));
    let beta_frame = fdot
        .0
        .mul(&mu.0.lift(n_f - 1))
        .add(&fdot.1.mul(&mu.1.lift(n_f - 1)));
    // closed forms: ell = -s (k+1) ((k+2) h' + x h'') / ((k+1)^2 + D^2),
    //               beta = x^k sqrt((k+1)^2 + D^2)
    let x_lower = NumericJet::var(1, q - 1, 1);
    let ddot = h
        .derivative(1)
        .scale(kp1 + 1.0)
        .add(&x_lower.mul(&h.derivative(1).derivative(1).lift(q - 1)));
    let ell_closed = ddot.scale(-s * kp1).mul(&r2.recip()?.truncated(q - 1));
    let beta_closed = monomial_jet(n_f - 1, k, 1.0).mul(&r.lift(n_f - 1));
    let cf_res = ell_frame
        .sub(&ell_closed)
        .norm_inf()
        .max(beta_frame.sub(&beta_closed).norm_inf());
    // Frenet: nu' = ell mu, mu' = -ell nu, f' = beta mu
    let fr1 = nu_dot
        .0
        .sub(&ell_frame.mul(&mu.0.truncated(q - 1)))
        .norm_inf()
        .max(nu_dot.1.sub(&ell_frame.mul(&mu.1.truncated(q - 1))).norm_inf());
    let fr2 = mu_dot
        .0
        .add(&ell_frame.mul(&nu.0.truncated(q - 1)))
        .norm_inf()
        .max(mu_dot.1.add(&ell_frame.mul(&nu.1.truncated(q - 1))).norm_inf());
    let fr3 = fdot
        .0
        .sub(&beta_frame.mul(&mu.0.lift(n_f - 1)))
        .norm_inf()
        .max(fdot.1.sub(&beta_frame.mul(&mu.1.lift(n_f - 1))).norm_inf());
    let frenet = fr1.max(fr2).max(fr3);
    if frenet > tol || cf_res > tol {
        return Err(Error::Internal(format!(
            "frontal invariant residual breach: frenet {frenet:.3e}, closed-form {cf_res:.3e}"
        )));
    }
    Ok(CurveInvariants {
        kind: InvariantKind::Frontal,
        kappa: None,
        ell: Some(ell_frame),
        beta: Some(beta_frame),
        kappa_e: None,
        nu: Some(nu),
        mu: Some(mu),
        sign,
        frenet_residual: frenet,
        closed_form_residual: cf_res,
    })
}

/// Frontal invariants of a curve germ, normalizing first when needed.
pub fn frontal_invariants(f: &GermJet, tol: f64) -> Result<(AkNormalForm, CurveInvariants)> {
    let nf = ak_normalize(f)?;
    let inv = frontal_invariants_from(nf.k, nf.sign, &nf.h, tol)?;
    Ok((nf, inv))
}

/// Equi-affine curvature as a jet in the equi-affine arclength σ (the
/// parameter with det(g_σ, g_σσ) = 1): κ^e = det(g_σσ, g_σσσ).
pub fn equiaffine_curvature(f: &GermJet) -> Result<NumericJet> {
    let nf = NumericGerm::from_germ(f);
    equiaffine_curvature_numeric(&nf).map(|(k, _, _)| k)
}

/// Also returns σ(t) and the unit-determinant check residual.
fn equiaffine_curvature_numeric(nf: &NumericGerm) -> Result<(NumericJet, NumericJet, f64)> {
    if nf.source_dim() != 1 || nf.target_dim() != 2 {
        return Err(Error::DimensionMismatch("equi-affine curvature takes curve germs".into()));
    }
    if nf.order() < 4 {
        return Err(Error::OrderTooSmall {
            needed: 4,
            have: nf.order(),
        });
    }
    let d1 = nf.derivative();
    let d2 = d1.derivative();
    let a = det2(&d1.truncated(d2.order()), &d2);
    if a.constant_term() == 0.0 {
        return Err(Error::DegenerateGerm(
            "inflection at the origin: equi-affine curvature undefined".into(),
        ));
    }
    let sigma = a.cbrt()?.integrate();
    let t_of_sigma = NumericGerm::new(1, 1, sigma.order(), vec![sigma.clone()])
        .invert()?;
    let g = nf.compose(&t_of_sigma)?;
    let g1 = g.derivative();
    let g2 = g1.derivative();
    let g3 = g2.derivative();
    let unit_check = det2(&g1.truncated(g2.order()), &g2)
        .sub(&NumericJet::constant(1, g2.order(), 1.0))
        .norm_inf();
    let kappa_e = det2(&g2.truncated(g3.order()), &g3);
    Ok((kappa_e, sigma, unit_check))
}

fn det2(a: &NumericGerm, b: &NumericGerm) -> NumericJet {
    a.component(0)
        .mul(b.component(1))
        .sub(&a.component(1).mul(b.component(0)))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CongruenceMode {
    Euclidean,
    Equiaffine,
}

#[derive(Clone, Debug)]
pub enum CongruenceResult {
    Match {
        phi: NumericJet,
        orientation: i32,
        residual: f64,
    },
    NoMatch {
        obstruction_degree: u32,
        best_residual: f64,
    },
}

/// Decide congruence of two curve germs by matching the complete invariant
/// of the chosen geometry, solving for the reparametrization jet degree by
/// degree. Regular curves match curvature against arclength; singular
/// curves of equal type match the frontal pair (ℓ, β) of their normal
/// forms.
pub fn congruence_test(
    f: &GermJet,
    g: &GermJet,
    mode: CongruenceMode,
    k: u32,
    tol: f64,
) -> Result<CongruenceResult> {
    match mode {
        CongruenceMode::Euclidean => euclidean_congruence(f, g, k, tol),
        CongruenceMode::Equiaffine => equiaffine_congruence(f, g, k, tol),
    }
}

fn first_exceed(j: &NumericJet, tol: f64) -> Option<u32> {
    (0..=j.order()).find(|&d| j.coeff1(d).abs() > tol)
}

fn euclidean_congruence(f: &GermJet, g: &GermJet, k: u32, tol: f64) -> Result<CongruenceResult> {
    let nf = NumericGerm::from_germ(f);
    let ng = NumericGerm::from_germ(g);
    let f_reg = nf.derivative().norm_at_zero() > 1e-12;
    let g_reg = ng.derivative().norm_at_zero() > 1e-12;
    if f_reg != g_reg {
        return Ok(CongruenceResult::NoMatch {
            obstruction_degree: 0,
            best_residual: f64::INFINITY,
        });
    }
    if f_reg {
        regular_euclidean(&nf, &ng, k, tol)
    } else {
        frontal_euclidean(f, g, k, tol)
    }
}

impl NumericGerm {
    fn norm_at_zero(&self) -> f64 {
        self.components()
            .iter()
            .map(|c| c.constant_term().abs())
            .fold(0.0, f64::max)
    }
}

fn regular_euclidean(
    nf: &NumericGerm,
    ng: &NumericGerm,
    k: u32,
    tol: f64,
) -> Result<CongruenceResult> {
    let (kf, sf) = curvature_vs_arclength(nf)?;
    let (kg, sg) = curvature_vs_arclength(ng)?;
    let m = kf.order().min(kg.order()).min(k);
    let kf = kf.truncated(m);
    let kg = kg.truncated(m);
    // orientation +: κ̃_g(s) = κ̃_f(s); orientation -: κ̃_g(s) = -κ̃_f(-s)
    let diff_plus = kg.sub(&kf);
    let diff_minus = kg.add(&kf.parity_flip());
    let (orientation, diff) = if diff_plus.norm_inf() <= diff_minus.norm_inf() {
        (1, diff_plus)
    } else {
        (-1, diff_minus)
    };
    if diff.norm_inf() <= tol {
        let t_f = NumericGerm::new(1, 1, sf.order(), vec![sf]).invert()?;
        let sg_signed = NumericGerm::new(1, 1, sg.order(), vec![sg.scale(orientation as f64)]);
        let phi = t_f.compose(&sg_signed)?.component(0).clone();
        // residual on the defining relation κ_g = sig(φ) κ_f(φ(x))
        let kappa_f = curvature_numeric(nf)?;
        let kappa_g = curvature_numeric(ng)?;
        let phi_germ = NumericGerm::new(1, 1, phi.order(), vec![phi.clone()]);
        let composed = kappa_f.compose(&phi_germ)?.scale(orientation as f64);
        let cmp_order = composed.order().min(kappa_g.order()).min(k);
        let residual = kappa_g
            .truncated(cmp_order)
            .sub(&composed.truncated(cmp_order))
            .norm_inf()
            .max(diff.norm_inf());
        Ok(CongruenceResult::Match {
            phi,
            orientation,
            residual,
        })
    } else {
        let d_plus = first_exceed(&kg.sub(&kf), tol).unwrap_or(0);
        let d_minus = first_exceed(&kg.add(&kf.parity_flip()), tol).unwrap_or(0);
        Ok(CongruenceResult::NoMatch {
            obstruction_degree: d_plus.max(d_minus),
            best_residual: diff.norm_inf(),
        })
    }
}

/// κ as a jet in the (signed) arclength, plus the arclength jet itself.
fn curvature_vs_arclength(nf: &NumericGerm) -> Result<(NumericJet, NumericJet)> {
    let d1 = nf.derivative();
    let speed2 = d1.component(0).mul(d1.component(0)).add(&d1.component(1).mul(d1.component(1)));
    let speed = speed2.sqrt()?;
    let s = speed.integrate();
    let kappa = curvature_numeric(nf)?;
    let t_of_s = NumericGerm::new(1, 1, s.order(), vec![s.clone()]).invert()?;
    let k_tilde = kappa.compose(&t_of_s)?;
    Ok((k_tilde, s))
}

fn exact_parity_flip(f: &GermJet) -> GermJet {
    let comps = f
        .components()
        .iter()
        .map(|c| {
            let mut out = JetPoly::zero(1, c.order());
            for (m, q) in c.terms() {
                let v = if m.degree() % 2 == 1 { -q.clone() } else { q.clone() };
                out.set_coeff(m.clone(), v);
            }
            out
        })
        .collect();
    GermJet::new_map(1, 2, f.order(), comps).unwrap()
}

fn frontal_euclidean(f: &GermJet, g: &GermJet, k: u32, tol: f64) -> Result<CongruenceResult> {
    let mut best_no_match = (0u32, f64::INFINITY);
    for orientation in [1i32, -1] {
        let g_try = if orientation == 1 {
            g.clone()
        } else {
            exact_parity_flip(g)
        };
        match frontal_match(f, &g_try, k, tol)? {
            FrontalOutcome::Match { phi, residual } => {
                let phi = if orientation == 1 {
                    phi
                } else {
                    phi.parity_flip()
                };
                return Ok(CongruenceResult::Match {
                    phi,
                    orientation,
                    residual,
                });
            }
            FrontalOutcome::NoMatch {
                obstruction_degree,
                best_residual,
            } => {
                if best_residual < best_no_match.1 {
                    best_no_match = (obstruction_degree, best_residual);
                }
                best_no_match.0 = best_no_match.0.max(obstruction_degree);
            }
        }
    }
    Ok(CongruenceResult::NoMatch {
        obstruction_degree: best_no_match.0,
        best_residual: best_no_match.1,
    })
}

enum FrontalOutcome {
    Match { phi: NumericJet, residual: f64 },
    NoMatch { obstruction_degree: u32, best_residual: f64 },
}

/// Orientation-preserving frontal matching: carries both germs to normal
/// form, solves the β-integral equation for the reparametrization and
/// verifies the ℓ-equation as the residual.
fn frontal_match(f: &GermJet, g: &GermJet, k_cap: u32, tol: f64) -> Result<FrontalOutcome> {
    let nf_f = ak_normalize(f)?;
    let nf_g = ak_normalize(g)?;
    if nf_f.k != nf_g.k {
        return Ok(FrontalOutcome::NoMatch {
            obstruction_degree: 0,
            best_residual: f64::INFINITY,
        });
    }
    let k = nf_f.k;
    let inv_f = frontal_invariants_from(k, nf_f.sign, &nf_f.h, LOOSE_TOL)?;
    let inv_g = frontal_invariants_from(k, nf_g.sign, &nf_g.h, LOOSE_TOL)?;
    let (beta_f, ell_f) = (inv_f.beta.unwrap(), inv_f.ell.unwrap());
    let (beta_g, ell_g) = (inv_g.beta.unwrap(), inv_g.ell.unwrap());
    let s_f = beta_f.integrate();
    let s_g = beta_g.integrate();
    // solve S_f(ρ) = S_g with ρ'(0) > 0
    let Some(rho) = solve_jet_equation(&s_f, &s_g, k + 1) else {
        return Ok(FrontalOutcome::NoMatch {
            obstruction_degree: k + 1,
            best_residual: f64::INFINITY,
        });
    };
    // verify the ℓ part: ρ'(x) ℓ_f(ρ(x)) = ℓ_g(x)
    let m = ell_f.order().min(ell_g.order()).min(rho.order().saturating_sub(1)).min(k_cap);
    let rho_germ = NumericGerm::new(1, 1, rho.order(), vec![rho.clone()]);
    let lhs = ell_f
        .compose(&rho_germ)?
        .truncated(m)
        .mul(&rho.derivative(1).truncated(m));
    let residual_l = lhs.sub(&ell_g.truncated(m)).norm_inf();
    // β part of the matching relation, near zero by construction
    let lhs_b = beta_f
        .compose(&rho_germ)?
        .truncated(m)
        .mul(&rho.derivative(1).truncated(m));
    let residual_b = lhs_b.sub(&beta_g.truncated(m)).norm_inf();
    let residual = residual_l.max(residual_b);
    if residual > tol {
        return Ok(FrontalOutcome::NoMatch {
            obstruction_degree: first_exceed(&lhs.sub(&ell_g.truncated(m)), tol).unwrap_or(0),
            best_residual: residual,
        });
    }
    // overall φ with f∘φ = A·g: φ = φ_f ∘ ρ ∘ φ_g^{-1}
    let phi_f = NumericGerm::new(1, 1, nf_f.phi.order(), vec![nf_f.phi.clone()]);
    let phi_g = NumericGerm::new(1, 1, nf_g.phi.order(), vec![nf_g.phi.clone()]);
    let phi_g_inv = phi_g.invert()?;
    let total = phi_f.compose(&rho_germ)?.compose(&phi_g_inv)?;
    Ok(FrontalOutcome::Match {
        phi: total.component(0).clone(),
        residual,
    })
}

/// Solve `a(ρ(x)) = b(x)` for a jet `ρ` with `ρ'(0) > 0`, where both sides
/// have exact valuation `v`. Returns `None` when no real orientation-
/// preserving solution exists at the leading order.
fn solve_jet_equation(a: &NumericJet, b: &NumericJet, v: u32) -> Option<NumericJet> {
    let m_ord = a.order().min(b.order());
    let ca = a.coeff1(v);
    let cb = b.coeff1(v);
    if ca == 0.0 || cb == 0.0 {
        return None;
    }
    let ratio = cb / ca;
    let rho1 = if v % 2 == 1 {
        // odd valuation: unique real root, sign preserved
        ratio.signum() * ratio.abs().powf(1.0 / v as f64)
    } else {
        if ratio <= 0.0 {
            return None;
        }
        ratio.powf(1.0 / v as f64)
    };
    if rho1 <= 0.0 {
        return None;
    }
    let rho_order = m_ord - v + 1;
    let mut rho = monomial_jet(rho_order, 1, rho1);
    let lead = v as f64 * ca * rho1.powi(v as i32 - 1);
    for m in 2..=rho_order {
        let rho_germ = NumericGerm::new(1, 1, m_ord, vec![rho.lift(m_ord)]);
        let comp = a.compose(&rho_germ).ok()?;
        let d = v - 1 + m;
        if d > m_ord {
            break;
        }
        let delta = b.coeff1(d) - comp.coeff1(d);
        let cur = rho.coeff1(m);
        rho.set_coeff(Monomial::new(vec![m]), cur + delta / lead);
    }
    Some(rho)
}

fn equiaffine_congruence(f: &GermJet, g: &GermJet, k: u32, tol: f64) -> Result<CongruenceResult> {
    let nf = NumericGerm::from_germ(f);
    let ng = NumericGerm::from_germ(g);
    let (kf, sigma_f, unit_f) = equiaffine_curvature_numeric(&nf)?;
    let (kg, sigma_g, unit_g) = equiaffine_curvature_numeric(&ng)?;
    if unit_f.max(unit_g) > LOOSE_TOL {
        return Err(Error::Internal(format!(
            "equi-affine arclength normalization failed: {:.3e}",
            unit_f.max(unit_g)
        )));
    }
    let m = kf.order().min(kg.order()).min(k);
    let diff_plus = kg.truncated(m).sub(&kf.truncated(m));
    let diff_minus = kg.truncated(m).sub(&kf.truncated(m).parity_flip());
    let (orient, diff) = if diff_plus.norm_inf() <= diff_minus.norm_inf() {
        (1, diff_plus)
    } else {
        (-1, diff_minus)
    };
    if diff.norm_inf() <= tol {
        let t_f = NumericGerm::new(1, 1, sigma_f.order(), vec![sigma_f]).invert()?;
        let sg_signed = NumericGerm::new(1, 1, sigma_g.order(), vec![sigma_g.scale(orient as f64)]);
        let phi = t_f.compose(&sg_signed)?.component(0).clone();
        Ok(CongruenceResult::Match {
            phi,
            orientation: orient,
            residual: diff.norm_inf(),
        })
    } else {
        Ok(CongruenceResult::NoMatch {
            obstruction_degree: first_exceed(&diff, tol).unwrap_or(0),
            best_residual: diff.norm_inf(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn curve(k: u32, c1: &str, c2: &str) -> GermJet {
        GermJet::new_map(
            1,
            2,
            k,
            vec![parse_poly(c1, 1, k).unwrap(), parse_poly(c2, 1, k).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn ak_type_examples() {
        let f = parse_poly("x1^3", 1, 6).unwrap();
        assert_eq!(ak_type(&f).unwrap(), AkType::Ak(2));
        let g = parse_poly("x1^2 + x1^5", 1, 6).unwrap();
        assert_eq!(ak_type(&g).unwrap(), AkType::Ak(1));
        let z = JetPoly::zero(1, 6);
        assert_eq!(ak_type(&z).unwrap(), AkType::AkGe(6));
    }

    #[test]
    fn ak_normalize_already_normal() {
        let f = curve(8, "x1^2", "x1^4");
        let nf = ak_normalize(&f).unwrap();
        assert_eq!(nf.k, 1);
        assert_eq!(nf.sign, 1);
        assert!(!nf.rotated);
        assert!(nf.residual < 1e-12);
        // h = x^2
        assert!((nf.h.coeff1(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ak_normalize_with_reparametrization() {
        let f = curve(8, "x1^2 + x1^3", "x1^4");
        let nf = ak_normalize(&f).unwrap();
        assert_eq!(nf.k, 1);
        assert!(nf.residual < 1e-9, "residual {}", nf.residual);
        // φ'(0) = 1 for a unit leading coefficient
        assert!((nf.phi.coeff1(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ak_normalize_swap_case() {
        let f = curve(8, "x1^4", "-1*x1^3");
        let nf = ak_normalize(&f).unwrap();
        assert_eq!(nf.k, 2);
        assert!(nf.rotated);
        assert_eq!(nf.sign, -1);
        // h(x) = -x per the quarter-turn bookkeeping
        assert!((nf.h.coeff1(1) + 1.0).abs() < 1e-9, "h = {:?}", nf.h);
        assert!(nf.residual < 1e-9);
    }

    #[test]
    fn curvature_examples() {
        let line = curve(6, "x1", "0*x1");
        assert!(curvature(&line).unwrap().norm_inf() < 1e-12);

        let parabola = curve(6, "x1", "x1^2");
        let k = curvature(&parabola).unwrap();
        assert!((k.coeff1(0) - 2.0).abs() < 1e-12);

        // unit circle through 0: (sin x, 1 - cos x)
        let circle = curve(
            8,
            "x1 - 1/6*x1^3 + 1/120*x1^5 - 1/5040*x1^7",
            "1/2*x1^2 - 1/24*x1^4 + 1/720*x1^6 - 1/40320*x1^8",
        );
        let kc = curvature(&circle).unwrap();
        assert!((kc.coeff1(0) - 1.0).abs() < 1e-9);
        for d in 1..=4 {
            assert!(kc.coeff1(d).abs() < 1e-6, "d={d}: {}", kc.coeff1(d));
        }
    }

    #[test]
    fn frontal_h_zero() {
        // f = (x^2, 0): mu = (1, 0), ell = 0, beta = 2x
        let inv = frontal_invariants_from(1, 1, &NumericJet::zero(1, 6), DEFAULT_TOL).unwrap();
        assert!(inv.ell.as_ref().unwrap().norm_inf() < 1e-12);
        let beta = inv.beta.unwrap();
        assert!((beta.coeff1(1) - 2.0).abs() < 1e-12);
        let mu = inv.mu.unwrap();
        assert!((mu.0.constant_term() - 1.0).abs() < 1e-12);
        assert!(mu.1.norm_inf() < 1e-12);
    }

    #[test]
    fn frontal_k2_linear_h() {
        // k = 2, h = x: ℓ(0) = -sign·(k+1)((k+2)h'(0))/((k+1)^2) = -s·12/9
        let mut h = NumericJet::zero(1, 6);
        h.set_coeff(Monomial::new(vec![1]), 1.0);
        let inv = frontal_invariants_from(2, 1, &h, DEFAULT_TOL).unwrap();
        let ell = inv.ell.unwrap();
        assert!((ell.coeff1(0) + 4.0 / 3.0).abs() < 1e-12, "{}", ell.coeff1(0));
        // β has a zero of order exactly k
        let beta = inv.beta.unwrap();
        assert!(beta.coeff1(0).abs() < 1e-12);
        assert!(beta.coeff1(1).abs() < 1e-12);
        assert!(beta.coeff1(2).abs() > 1.0);
    }

    #[test]
    fn equiaffine_parabola_and_line() {
        let parabola = curve(8, "x1", "x1^2");
        let ke = equiaffine_curvature(&parabola).unwrap();
        assert!(ke.norm_inf() < 1e-9, "{:?}", ke);

        let line = curve(8, "x1", "0*x1");
        assert!(matches!(
            equiaffine_curvature(&line),
            Err(Error::DegenerateGerm(_))
        ));
    }

    #[test]
    fn equiaffine_ellipse_value() {
        // (a sin t, b(1 - cos t)), a = 2, b = 1/2: κ^e(0) = (ab)^{-2/3} = 1
        let a = 2.0f64;
        let b = 0.5f64;
        let f = curve(
            8,
            "2*x1 - 1/3*x1^3 + 1/60*x1^5 - 1/2520*x1^7",
            "1/4*x1^2 - 1/48*x1^4 + 1/1440*x1^6 - 1/80640*x1^8",
        );
        let ke = equiaffine_curvature(&f).unwrap();
        let expect = (a * b).powf(-2.0 / 3.0);
        assert!((ke.coeff1(0) - expect).abs() < 1e-6, "{}", ke.coeff1(0));
    }

    #[test]
    fn congruence_identity_match() {
        let f = curve(8, "x1", "x1^2 + x1^3");
        let r = congruence_test(&f, &f, CongruenceMode::Euclidean, 5, LOOSE_TOL).unwrap();
        match r {
            CongruenceResult::Match { phi, residual, orientation } => {
                assert_eq!(orientation, 1);
                assert!(residual < 1e-9);
                assert!((phi.coeff1(1) - 1.0).abs() < 1e-9);
            }
            other => panic!("expected match, got {other:?}"),
        }
    }

    #[test]
    fn congruence_detects_mismatch() {
        let f = curve(8, "x1", "x1^2");
        let g = curve(8, "x1", "x1^3");
        let r = congruence_test(&f, &g, CongruenceMode::Euclidean, 5, LOOSE_TOL).unwrap();
        match r {
            CongruenceResult::NoMatch { obstruction_degree, .. } => {
                assert_eq!(obstruction_degree, 0);
            }
            other => panic!("expected no-match, got {other:?}"),
        }
    }
}
